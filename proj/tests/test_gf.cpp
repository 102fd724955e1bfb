#include <gtest/gtest.h>

#include <random>

#include "plab/errors.hpp"
#include "plab/gf.hpp"

using namespace plab;

namespace {

// Reference arithmetic over F_p[t]/(f) on coefficient vectors, written
// without the library's tables.
struct PolyOracle {
  std::uint32_t p;
  std::vector<std::uint32_t> f;  // monic, constant term first

  std::vector<std::uint32_t> decode(std::uint32_t a) const {
    std::vector<std::uint32_t> c(f.size() - 1);
    for (auto& x : c) {
      x = a % p;
      a /= p;
    }
    return c;
  }
  std::uint32_t encode(const std::vector<std::uint32_t>& c) const {
    std::uint32_t v = 0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * p + c[i];
    return v;
  }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    const auto x = decode(a);
    const auto y = decode(b);
    const std::size_t h = x.size();
    std::vector<std::uint32_t> prod(2 * h, 0);
    for (std::size_t i = 0; i < h; ++i) {
      for (std::size_t j = 0; j < h; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
    }
    for (std::size_t d = 2 * h - 1; d >= h; --d) {
      const std::uint32_t c = prod[d];
      if (c == 0) continue;
      for (std::size_t k = 0; k <= h; ++k) prod[d - h + k] = (prod[d - h + k] + p * p - c * f[k] % p) % p;
    }
    prod.resize(h);
    return encode(prod);
  }
};

// Irreducibility by exhaustive search for a monic factor of degree <= h/2.
bool brute_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& f) {
  const std::size_t h = f.size() - 1;
  for (std::size_t d = 1; d <= h / 2; ++d) {
    std::uint32_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint32_t code = 0; code < count; ++code) {
      std::vector<std::uint32_t> g(d + 1, 0);
      std::uint32_t c = code;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = c % p;
        c /= p;
      }
      g[d] = 1;
      std::vector<std::uint32_t> r = f;
      for (std::size_t top = h; top >= d; --top) {
        const std::uint32_t lead = r[top];
        if (lead != 0) {
          for (std::size_t k = 0; k <= d; ++k) r[top - d + k] = (r[top - d + k] + p * p - lead * g[k] % p) % p;
        }
        if (top == d) break;
      }
      bool zero = true;
      for (std::size_t i = 0; i < d; ++i) zero = zero && r[i] == 0;
      if (zero) return false;
    }
  }
  return true;
}

std::vector<std::uint32_t> smallest_irreducible(std::uint32_t p, std::uint32_t h) {
  std::uint32_t count = 1;
  for (std::uint32_t i = 0; i < h; ++i) count *= p;
  for (std::uint32_t code = 0; code < count; ++code) {
    std::vector<std::uint32_t> f(h + 1, 0);
    std::uint32_t c = code;
    for (std::uint32_t i = 0; i < h; ++i) {
      f[i] = c % p;
      c /= p;
    }
    f[h] = 1;
    if (brute_irreducible(p, f)) return f;
  }
  return {};
}

const std::vector<std::pair<std::uint32_t, std::uint32_t>> kSmallFields = {
    {2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}, {2, 4}, {5, 2}, {3, 3}, {2, 5}, {7, 2}, {2, 6}};

}  // namespace

TEST(Gf, Gf4AdditionExamples) {
  auto f = Field::create(2, 2);
  EXPECT_EQ(f->add(2, 2), 0u);  // t + t
  EXPECT_EQ(f->add(1, 2), 3u);  // 1 + t = t + 1
  auto f7 = Field::create(7, 1);
  EXPECT_EQ(f7->add(5, 4), 2u);
}

TEST(Gf, Gf4MultiplicationTableMatchesOracle) {
  auto f = Field::create(2, 2);
  ASSERT_EQ(f->irreducible(), (std::vector<std::uint32_t>{1, 1, 1}));
  const PolyOracle o{2, {1, 1, 1}};
  for (Elem a = 0; a < 4; ++a) {
    for (Elem b = 0; b < 4; ++b) EXPECT_EQ(f->mul(a, b), o.mul(a, b)) << a << "*" << b;
  }
  EXPECT_EQ(f->mul(2, 2), 3u);  // t^2 = t + 1
}

TEST(Gf, IdentityAndAbsorbingElement) {
  for (auto [p, h] : kSmallFields) {
    auto f = Field::create(p, h);
    for (Elem x = 0; x < f->size(); ++x) {
      EXPECT_EQ(f->mul(x, 1), x);
      EXPECT_EQ(f->mul(x, 0), 0u);
    }
  }
}

TEST(Gf, InverseExamples) {
  auto f = Field::create(2, 2);
  Elem found = 0;
  for (Elem y = 0; y < 4; ++y) {
    if (f->mul(2, y) == 1) found = y;
  }
  EXPECT_EQ(found, 3u);
  EXPECT_EQ(f->inv(2), found);
  auto f7 = Field::create(7, 1);
  EXPECT_EQ((2 * 4) % 7, 1);
  EXPECT_EQ(f7->inv(2), 4u);
  EXPECT_EQ(f7->inv(1), 1u);
  EXPECT_THROW(f7->inv(0), DomainError);
}

TEST(Gf, FrobeniusExamples) {
  auto f = Field::create(2, 2);
  EXPECT_EQ(f->frobenius(2, 1), f->mul(2, 2));
  EXPECT_EQ(f->frobenius(2, 1), 3u);
  auto f64 = Field::create(2, 6);
  for (Elem x = 0; x < 64; ++x) {
    EXPECT_EQ(f64->frobenius(x, 0), x);
    EXPECT_EQ(f64->frobenius(f64->frobenius(f64->frobenius(x, 2), 2), 2), x);
  }
  EXPECT_THROW(f64->frobenius(3, 6), UsageError);
}

TEST(Gf, SubfieldExamples) {
  auto f4 = Field::create(2, 2);
  EXPECT_EQ(f4->subfield_elements(1), (std::vector<Elem>{0, 1}));
  auto f64 = Field::create(2, 6);
  EXPECT_EQ(f64->subfield_elements(2).size(), 4u);
  std::size_t fixed = 0;
  for (Elem x = 0; x < 64; ++x) fixed += f64->pow(x, 8) == x ? 1 : 0;
  EXPECT_EQ(fixed, 8u);
  EXPECT_EQ(f64->subfield_elements(3).size(), fixed);
  EXPECT_THROW(f64->subfield_elements(4), UsageError);
}

TEST(Gf, FieldAxiomsExhaustive) {
  for (auto [p, h] : kSmallFields) {
    auto f = Field::create(p, h);
    const Elem n = f->size();
    for (Elem a = 0; a < n; ++a) {
      if (a != 0) EXPECT_EQ(f->mul(a, f->inv(a)), 1u);
      EXPECT_EQ(f->add(a, f->neg(a)), 0u);
      for (Elem b = 0; b < n; ++b) {
        EXPECT_EQ(f->mul(a, b), f->mul_poly(a, b));
        EXPECT_EQ(f->add(a, b), f->add_poly(a, b));
        for (Elem c = 0; c < n; c += (n > 16 ? 5 : 1)) {
          ASSERT_EQ(f->mul(f->mul(a, b), c), f->mul(a, f->mul(b, c)));
          ASSERT_EQ(f->add(f->add(a, b), c), f->add(a, f->add(b, c)));
          ASSERT_EQ(f->mul(a, f->add(b, c)), f->add(f->mul(a, b), f->mul(a, c)));
        }
      }
    }
  }
}

TEST(Gf, TableArithmeticMatchesIndependentOracle) {
  for (auto [p, h] : kSmallFields) {
    auto f = Field::create(p, h);
    const PolyOracle o{p, f->irreducible()};
    for (Elem a = 0; a < f->size(); ++a) {
      for (Elem b = 0; b < f->size(); ++b) ASSERT_EQ(f->mul(a, b), o.mul(a, b));
    }
  }
}

TEST(Gf, FrobeniusIsAutomorphism) {
  for (auto [p, h] : kSmallFields) {
    auto f = Field::create(p, h);
    for (std::uint32_t e = 0; e < h; ++e) {
      for (Elem a = 0; a < f->size(); ++a) {
        for (Elem b = 0; b < f->size(); ++b) {
          ASSERT_EQ(f->frobenius(f->mul(a, b), e), f->mul(f->frobenius(a, e), f->frobenius(b, e)));
          ASSERT_EQ(f->frobenius(f->add(a, b), e), f->add(f->frobenius(a, e), f->frobenius(b, e)));
        }
      }
    }
  }
}

TEST(Gf, DefaultPolynomialIsSmallestIrreducible) {
  for (auto [p, h] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{
           {2, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 6}, {2, 8}, {3, 2}, {3, 3}, {3, 4}, {5, 2}, {7, 2}, {11, 2}}) {
    auto f = Field::create(p, h);
    EXPECT_EQ(f->irreducible(), smallest_irreducible(p, h)) << p << "^" << h;
  }
}

TEST(Gf, EncodingIsBijection) {
  for (auto [p, h] : kSmallFields) {
    auto f = Field::create(p, h);
    for (Elem a = 0; a < f->size(); ++a) {
      const auto c = f->coefficients(a);
      ASSERT_EQ(c.size(), h);
      for (auto x : c) ASSERT_LT(x, p);
      ASSERT_EQ(f->from_coefficients(c), a);
    }
  }
}

TEST(Gf, ParseAndOverride) {
  auto f = Field::parse("2^4/irr=19");
  EXPECT_EQ(f->size(), 16u);
  EXPECT_EQ(f->irreducible_code(), 19u);
  EXPECT_EQ(f->description(), "2^4/irr=19");
  EXPECT_EQ(Field::parse("16")->size(), 16u);
  EXPECT_EQ(Field::parse("3^2")->size(), 9u);
  // x^4 + x^3 + 1 = 25 is irreducible too
  auto g = Field::parse("2^4/irr=25");
  EXPECT_FALSE(g->same_as(*f));
  EXPECT_THROW(Field::parse("2^2/irr=5"), UsageError);  // t^2 + 1 = (t + 1)^2
  EXPECT_THROW(Field::parse("6"), UsageError);
  EXPECT_THROW(Field::parse("2^x"), UsageError);
  EXPECT_THROW(Field::parse("2^4/poly=19"), UsageError);
  EXPECT_THROW(Field::create(4, 1), UsageError);
}

TEST(Gf, PrimePowerHelpers) {
  EXPECT_TRUE(is_prime(2));
  EXPECT_TRUE(is_prime(97));
  EXPECT_FALSE(is_prime(1));
  EXPECT_FALSE(is_prime(91));
  EXPECT_EQ(prime_power(64), (std::pair<std::uint32_t, std::uint32_t>{2, 6}));
  EXPECT_EQ(prime_power(25), (std::pair<std::uint32_t, std::uint32_t>{5, 2}));
  EXPECT_EQ(prime_power(12).first, 0u);
}

TEST(Gf, TraceToPrimeField) {
  auto f = Field::create(2, 4);
  for (Elem x : f->subfield_elements(2)) {
    const Elem t = f->trace(x, 2);
    EXPECT_EQ(t, f->add(x, f->frobenius(x, 1)));
    EXPECT_LT(t, 2u);
  }
}

TEST(Gf, CheckedElementsRejectMixedFields) {
  auto a = Field::create(2, 2);
  auto b = Field::create(2, 3);
  FieldElement x(*a, 2);
  FieldElement y(*b, 2);
  EXPECT_THROW(x + y, UsageError);
  EXPECT_THROW(x * y, UsageError);
  EXPECT_EQ((x * x).value(), 3u);
  EXPECT_EQ(x.inv().value(), 3u);
  EXPECT_THROW(FieldElement(*a, 4), UsageError);
  EXPECT_THROW(FieldElement(*a, 0).inv(), DomainError);
}
