#include "plab/gf.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

#include "plab/errors.hpp"

namespace plab {

namespace {

constexpr std::uint32_t kMaxFieldSize = 1u << 30;
constexpr std::uint32_t kTableLimit = 1u << 22;
constexpr std::uint32_t kAddTableLimit = 2500;

using Poly = std::vector<std::uint32_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo the monic polynomial m over F_p.
Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const std::uint64_t lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      const std::uint64_t sub = (lead * m[i]) % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < e; ++i) r *= b;
  return r;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t parse_uint(std::string_view s, std::string_view what) {
  std::uint64_t v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) {
    throw UsageError("malformed " + std::string(what) + ": '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint64_t n) {
  if (n < 2) return {0, 0};
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) p = n;
  std::uint32_t h = 0;
  while (n % p == 0) {
    n /= p;
    ++h;
  }
  if (n != 1) return {0, 0};
  return {static_cast<std::uint32_t>(p), h};
}

bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> poly) {
  Poly f(poly.begin(), poly.end());
  trim(f);
  if (f.size() < 2) return false;
  const std::size_t deg = f.size() - 1;
  if (deg == 1) return true;
  if (f[0] == 0) return false;
  // Every monic divisor of degree d, encoded as p^d + r with r < p^d.
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    const std::uint64_t count = ipow(p, static_cast<std::uint32_t>(d));
    for (std::uint64_t r = 0; r < count; ++r) {
      Poly g(d + 1, 0);
      std::uint64_t x = r;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(x % p);
        x /= p;
      }
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

Field::Field(std::uint32_t p, std::uint32_t h, std::vector<std::uint32_t> irr)
    : p_(p), h_(h), irr_(std::move(irr)) {
  pow_p_.resize(h_ + 1);
  pow_p_[0] = 1;
  for (std::uint32_t i = 1; i <= h_; ++i) pow_p_[i] = pow_p_[i - 1] * p_;
  size_ = pow_p_[h_];
  build_tables();
}

std::shared_ptr<const Field> Field::create(std::uint32_t p, std::uint32_t h) {
  if (!is_prime(p)) throw UsageError("field characteristic " + std::to_string(p) + " is not prime");
  if (h < 1) throw UsageError("extension degree must be at least 1");
  if (ipow(p, h) > kMaxFieldSize) throw UsageError("field too large");
  const std::uint64_t count = ipow(p, h);
  for (std::uint64_t r = 0; r < count; ++r) {
    Poly f(h + 1, 0);
    std::uint64_t x = r;
    for (std::uint32_t i = 0; i < h; ++i) {
      f[i] = static_cast<std::uint32_t>(x % p);
      x /= p;
    }
    f[h] = 1;
    if (is_irreducible(p, f)) {
      return std::shared_ptr<const Field>(new Field(p, h, std::move(f)));
    }
  }
  throw ConstructionError("no irreducible polynomial found");  // unreachable
}

std::shared_ptr<const Field> Field::create(std::uint32_t p, std::uint32_t h,
                                            std::vector<std::uint32_t> irreducible) {
  if (!is_prime(p)) throw UsageError("field characteristic " + std::to_string(p) + " is not prime");
  if (h < 1) throw UsageError("extension degree must be at least 1");
  if (ipow(p, h) > kMaxFieldSize) throw UsageError("field too large");
  if (irreducible.size() != h + 1 || irreducible.back() != 1) {
    throw UsageError("defining polynomial must be monic of degree " + std::to_string(h));
  }
  for (auto c : irreducible) {
    if (c >= p) throw UsageError("polynomial coefficient out of range");
  }
  if (!is_irreducible(p, irreducible)) throw UsageError("defining polynomial is reducible");
  return std::shared_ptr<const Field>(new Field(p, h, std::move(irreducible)));
}

std::shared_ptr<const Field> Field::parse(std::string_view description) {
  std::string_view head = description;
  std::string_view irr_part;
  if (auto slash = description.find('/'); slash != std::string_view::npos) {
    head = description.substr(0, slash);
    irr_part = description.substr(slash + 1);
    if (irr_part.substr(0, 4) != "irr=") throw UsageError("expected 'irr=' in field description");
    irr_part.remove_prefix(4);
  }
  std::uint32_t p = 0;
  std::uint32_t h = 0;
  if (auto caret = head.find('^'); caret != std::string_view::npos) {
    p = static_cast<std::uint32_t>(parse_uint(head.substr(0, caret), "field characteristic"));
    h = static_cast<std::uint32_t>(parse_uint(head.substr(caret + 1), "extension degree"));
  } else {
    auto [pp, hh] = prime_power(parse_uint(head, "field order"));
    if (pp == 0) throw UsageError("field order '" + std::string(head) + "' is not a prime power");
    p = pp;
    h = hh;
  }
  if (irr_part.empty()) return create(p, h);
  if (!is_prime(p) || h < 1 || ipow(p, h) > kMaxFieldSize) throw UsageError("invalid field parameters");
  std::uint64_t code = parse_uint(irr_part, "polynomial encoding");
  Poly f;
  while (code > 0) {
    f.push_back(static_cast<std::uint32_t>(code % p));
    code /= p;
  }
  return create(p, h, std::move(f));
}

std::shared_ptr<const Field> Field::of_order(std::uint64_t n) {
  auto [p, h] = prime_power(n);
  if (p == 0) throw UsageError(std::to_string(n) + " is not a prime power");
  return create(p, h);
}

std::uint64_t Field::irreducible_code() const {
  std::uint64_t code = 0;
  for (std::size_t i = irr_.size(); i-- > 0;) code = code * p_ + irr_[i];
  return code;
}

std::string Field::description() const {
  return std::to_string(p_) + "^" + std::to_string(h_) + "/irr=" + std::to_string(irreducible_code());
}

bool Field::same_as(const Field& other) const {
  return this == &other || (p_ == other.p_ && h_ == other.h_ && irr_ == other.irr_);
}

std::vector<std::uint32_t> Field::coefficients(Elem a) const {
  std::vector<std::uint32_t> c(h_);
  for (std::uint32_t i = 0; i < h_; ++i) {
    c[i] = a % p_;
    a /= p_;
  }
  return c;
}

Elem Field::from_coefficients(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() > h_) throw UsageError("too many coefficients for field element");
  Elem v = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    if (coeffs[i] >= p_) throw UsageError("coefficient out of range");
    v = v * p_ + coeffs[i];
  }
  return v;
}

Elem Field::add_poly(Elem a, Elem b) const {
  if (p_ == 2) return a ^ b;
  Elem r = 0;
  for (std::uint32_t i = 0; i < h_; ++i) {
    const std::uint32_t d = (a % p_ + b % p_) % p_;
    r += d * pow_p_[i];
    a /= p_;
    b /= p_;
  }
  return r;
}

Elem Field::mul_poly(Elem a, Elem b) const {
  const auto ca = coefficients(a);
  const auto cb = coefficients(b);
  Poly prod(2 * h_, 0);
  for (std::uint32_t i = 0; i < h_; ++i) {
    if (ca[i] == 0) continue;
    for (std::uint32_t j = 0; j < h_; ++j) {
      prod[i + j] = static_cast<std::uint32_t>(
          (prod[i + j] + static_cast<std::uint64_t>(ca[i]) * cb[j]) % p_);
    }
  }
  Poly r = poly_mod(std::move(prod), irr_, p_);
  r.resize(h_, 0);
  return from_coefficients(r);
}

void Field::build_tables() {
  // Smallest element of order size - 1, by the polynomial route.
  const std::uint64_t order = size_ - 1;
  const auto factors = prime_factors(order);
  auto slow_pow = [this](Elem a, std::uint64_t e) {
    Elem r = 1;
    while (e > 0) {
      if (e & 1) r = mul_poly(r, a);
      a = mul_poly(a, a);
      e >>= 1;
    }
    return r;
  };
  for (Elem g = 1; g < size_; ++g) {
    bool primitive = true;
    for (auto r : factors) {
      if (slow_pow(g, order / r) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      generator_ = g;
      break;
    }
  }
  if (size_ == 2) generator_ = 1;
  if (size_ > kTableLimit) return;

  exp_.assign(2 * order, 0);
  log_.assign(size_, 0);
  Elem x = 1;
  for (std::uint64_t i = 0; i < order; ++i) {
    exp_[i] = x;
    exp_[i + order] = x;
    log_[x] = static_cast<std::uint32_t>(i);
    x = mul_poly(x, generator_);
  }
  if (p_ != 2 && size_ <= kAddTableLimit) {
    add_table_.resize(static_cast<std::size_t>(size_) * size_);
    for (Elem a = 0; a < size_; ++a) {
      for (Elem b = 0; b < size_; ++b) add_table_[static_cast<std::size_t>(a) * size_ + b] = add_poly(a, b);
    }
  }
  if (p_ != 2) {
    neg_table_.resize(size_);
    for (Elem a = 0; a < size_; ++a) {
      Elem r = 0;
      Elem t = a;
      for (std::uint32_t i = 0; i < h_; ++i) {
        r += ((p_ - t % p_) % p_) * pow_p_[i];
        t /= p_;
      }
      neg_table_[a] = r;
    }
  }
  tables_ = true;
}

Elem Field::add(Elem a, Elem b) const {
  if (p_ == 2) return a ^ b;
  if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * size_ + b];
  return add_poly(a, b);
}

Elem Field::neg(Elem a) const {
  if (p_ == 2) return a;
  if (!neg_table_.empty()) return neg_table_[a];
  Elem r = 0;
  for (std::uint32_t i = 0; i < h_; ++i) {
    r += ((p_ - a % p_) % p_) * pow_p_[i];
    a /= p_;
  }
  return r;
}

Elem Field::mul(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  if (tables_) return exp_[log_[a] + log_[b]];
  return mul_poly(a, b);
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw DomainError("inverse of zero");
  if (tables_) return a == 1 ? 1 : exp_[(size_ - 1) - log_[a]];
  return pow(a, size_ - 2);
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  if (tables_) {
    const std::uint64_t order = size_ - 1;
    return exp_[(static_cast<std::uint64_t>(log_[a]) * (e % order)) % order];
  }
  Elem r = 1;
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Elem Field::frobenius(Elem a, std::uint32_t e) const {
  if (e >= h_) throw UsageError("frobenius exponent index out of range");
  return pow(a, pow_p_[e]);
}

Elem Field::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

std::vector<Elem> Field::subfield_elements(std::uint32_t d) const {
  if (d == 0 || h_ % d != 0) {
    throw UsageError("subfield degree " + std::to_string(d) + " does not divide " + std::to_string(h_));
  }
  std::vector<Elem> out;
  out.reserve(pow_p_[d]);
  for (Elem x = 0; x < size_; ++x) {
    if (pow(x, pow_p_[d]) == x) out.push_back(x);
  }
  return out;
}

bool Field::in_subfield(Elem a, std::uint32_t d) const {
  if (d == 0 || h_ % d != 0) throw UsageError("subfield degree does not divide extension degree");
  return pow(a, pow_p_[d]) == a;
}

Elem Field::trace(Elem a, std::uint32_t d) const {
  if (!in_subfield(a, d)) throw UsageError("trace argument not in the requested subfield");
  Elem t = 0;
  Elem x = a;
  for (std::uint32_t i = 0; i < d; ++i) {
    t = add(t, x);
    x = pow(x, p_);
  }
  return t;
}

FieldElement::FieldElement(const Field& field, Elem value) : field_(&field), value_(value) {
  if (value >= field.size()) throw UsageError("element encoding out of range");
}

void FieldElement::check_same(const FieldElement& o) const {
  if (!field_->same_as(*o.field_)) throw UsageError("field elements belong to different fields");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_same(o);
  return {*field_, field_->add(value_, o.value_)};
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  check_same(o);
  return {*field_, field_->sub(value_, o.value_)};
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_same(o);
  return {*field_, field_->mul(value_, o.value_)};
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
  check_same(o);
  return {*field_, field_->div(value_, o.value_)};
}

FieldElement FieldElement::operator-() const { return {*field_, field_->neg(value_)}; }
FieldElement FieldElement::inv() const { return {*field_, field_->inv(value_)}; }
FieldElement FieldElement::frobenius(std::uint32_t e) const { return {*field_, field_->frobenius(value_, e)}; }
FieldElement FieldElement::pow(std::uint64_t e) const { return {*field_, field_->pow(value_, e)}; }

bool FieldElement::operator==(const FieldElement& o) const {
  return field_->same_as(*o.field_) && value_ == o.value_;
}

}  // namespace plab
