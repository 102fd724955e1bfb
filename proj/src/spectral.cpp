#include "plab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "plab/errors.hpp"

namespace plab {

IntMatrix IntMatrix::identity(std::size_t dim) {
  IntMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (dim_ != o.dim_) throw UsageError("matrix dimension mismatch");
  IntMatrix r(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t k = 0; k < dim_; ++k) {
      const std::int64_t a = at(i, k);
      if (a == 0) continue;
      const std::int64_t* row = &o.data_[k * dim_];
      std::int64_t* out = &r.data_[i * dim_];
      for (std::size_t j = 0; j < dim_; ++j) out[j] += a * row[j];
    }
  }
  return r;
}

IntMatrix IntMatrix::shifted(std::int64_t c) const {
  IntMatrix r = *this;
  for (std::size_t i = 0; i < dim_; ++i) r.at(i, i) -= c;
  return r;
}

std::int64_t IntMatrix::trace() const {
  std::int64_t t = 0;
  for (std::size_t i = 0; i < dim_; ++i) t += at(i, i);
  return t;
}

bool IntMatrix::is_symmetric() const {
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = i + 1; j < dim_; ++j) {
      if (at(i, j) != at(j, i)) return false;
    }
  }
  return true;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](std::int64_t v) { return v == 0; });
}

std::int64_t IntMatrix::row_sum(std::size_t i) const {
  std::int64_t s = 0;
  for (std::size_t j = 0; j < dim_; ++j) s += at(i, j);
  return s;
}

IntMatrix adjacency_matrix(const PolarityOracle& g) {
  if (g.num_points() > kMaxDenseDimension) {
    throw UsageError("refusing a dense adjacency matrix of dimension " + std::to_string(g.num_points()));
  }
  IntMatrix a(g.num_points());
  std::vector<PointId> nb;
  for (PointId x = 0; x < g.num_points(); ++x) {
    g.neighbours(x, nb);
    for (PointId y : nb) a.at(x, y) = 1;
  }
  return a;
}

SpectrumClaim unitary_spectrum_claim(std::int64_t q) {
  const std::int64_t q2 = q * q;
  const std::int64_t q4 = q2 * q2;
  return {{{Rational(q2 + 1), 1}, {Rational(q), (q4 + 2 * q2 - q) / 2}, {Rational(-q), (q4 + q) / 2}}};
}

SpectrumVerdict verify_spectrum(const IntMatrix& a, const SpectrumClaim& claim) {
  SpectrumVerdict v;
  for (const auto& e : claim.entries) {
    if (!e.eigenvalue.is_integer()) throw UsageError("claimed eigenvalues must be integers");
  }
  const auto n = static_cast<std::int64_t>(a.dim());

  // Trace system first: cheap and independent of the product.
  std::int64_t msum = 0;
  std::int64_t t1 = 0;
  std::int64_t t2 = 0;
  for (const auto& e : claim.entries) {
    const std::int64_t lam = e.eigenvalue.num();
    msum += e.multiplicity;
    t1 += e.multiplicity * lam;
    t2 += e.multiplicity * lam * lam;
  }
  v.dimension_matches = msum == n;
  v.trace_matches = a.trace() == t1;
  // tr(A^2) = sum_ij a_ij a_ji
  std::int64_t tr_sq = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) tr_sq += a.at(i, j) * a.at(j, i);
  }
  v.trace_sq_matches = tr_sq == t2;

  IntMatrix prod = IntMatrix::identity(a.dim());
  for (const auto& e : claim.entries) prod = prod * a.shifted(e.eigenvalue.num());
  v.annihilated = prod.is_zero();

  if (!v.annihilated) {
    v.failure = "annihilating product is nonzero";
  } else if (!v.dimension_matches) {
    v.failure = "multiplicities do not sum to the dimension";
  } else if (!v.trace_matches) {
    v.failure = "trace(A) does not match sum of m_i lambda_i";
  } else if (!v.trace_sq_matches) {
    v.failure = "trace(A^2) does not match sum of m_i lambda_i^2";
  }
  v.verified = v.failure.empty();
  return v;
}

RationalMatrix quotient_matrix(const IntMatrix& a, const std::vector<VertexSet>& partition) {
  std::vector<int> part_of(a.dim(), -1);
  for (std::size_t i = 0; i < partition.size(); ++i) {
    if (partition[i].universe() != a.dim()) throw UsageError("partition part has the wrong universe");
    if (partition[i].empty()) throw UsageError("partition parts must be nonempty");
    for (PointId x : partition[i]) {
      if (part_of[x] != -1) throw UsageError("partition parts overlap");
      part_of[x] = static_cast<int>(i);
    }
  }
  if (std::find(part_of.begin(), part_of.end(), -1) != part_of.end()) {
    throw UsageError("partition does not cover every vertex");
  }
  const std::size_t m = partition.size();
  std::vector<std::vector<std::int64_t>> block(m, std::vector<std::int64_t>(m, 0));
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) block[part_of[i]][part_of[j]] += a.at(i, j);
  }
  RationalMatrix b(m, std::vector<Rational>(m));
  for (std::size_t i = 0; i < m; ++i) {
    const auto sz = static_cast<std::int64_t>(partition[i].size());
    for (std::size_t j = 0; j < m; ++j) b[i][j] = Rational(block[i][j], sz);
  }
  return b;
}

RationalMatrix extremal_quotient_matrix(std::int64_t q) {
  const std::int64_t q2 = q * q;
  return {{Rational(1), Rational(q2 + q, 2), Rational(q2 - q, 2)},
          {Rational(q + 1), Rational(q2 - q, 2), Rational(q2 - q, 2)},
          {Rational(q + 1), Rational(q2 + q, 2), Rational(q2 - 3 * q, 2)}};
}

std::vector<Rational> characteristic_polynomial_3x3(const RationalMatrix& b) {
  if (b.size() != 3 || b[0].size() != 3 || b[1].size() != 3 || b[2].size() != 3) {
    throw UsageError("expected a 3x3 matrix");
  }
  const Rational tr = b[0][0] + b[1][1] + b[2][2];
  const Rational minors = (b[0][0] * b[1][1] - b[0][1] * b[1][0]) + (b[0][0] * b[2][2] - b[0][2] * b[2][0]) +
                          (b[1][1] * b[2][2] - b[1][2] * b[2][1]);
  const Rational det = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) -
                       b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0]) +
                       b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
  // x^3 - tr x^2 + minors x - det
  return {-det, minors, -tr, Rational(1)};
}

namespace {

Rational eval(const std::vector<Rational>& poly, const Rational& x) {
  Rational r;
  for (std::size_t i = poly.size(); i-- > 0;) r = r * x + poly[i];
  return r;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  n = n < 0 ? -n : n;
  std::vector<std::int64_t> d;
  for (std::int64_t i = 1; i * i <= n; ++i) {
    if (n % i == 0) {
      d.push_back(i);
      if (i != n / i) d.push_back(n / i);
    }
  }
  return d;
}

// Rational root of a polynomial with rational coefficients, if any.
std::optional<Rational> rational_root(const std::vector<Rational>& poly) {
  if (poly[0] == Rational(0)) return Rational(0);
  std::int64_t l = 1;
  for (const auto& c : poly) l = std::lcm(l, c.den());
  std::vector<std::int64_t> ints;
  for (const auto& c : poly) ints.push_back((c * Rational(l)).num());
  for (std::int64_t p : divisors(ints.front())) {
    for (std::int64_t q : divisors(ints.back())) {
      for (std::int64_t s : {1, -1}) {
        const Rational r(s * p, q);
        if (eval(poly, r) == Rational(0)) return r;
      }
    }
  }
  return std::nullopt;
}

// Synthetic division by (x - r).
std::vector<Rational> deflate(const std::vector<Rational>& poly, const Rational& r) {
  const std::size_t n = poly.size() - 1;
  std::vector<Rational> out(n);
  Rational carry = poly[n];
  for (std::size_t i = n; i-- > 0;) {
    out[i] = carry;
    carry = poly[i] + carry * r;
  }
  return out;
}

std::vector<std::complex<double>> durand_kerner(const std::vector<Rational>& poly) {
  const std::size_t deg = poly.size() - 1;
  std::vector<std::complex<double>> c;
  for (const auto& x : poly) c.emplace_back(x.to_double(), 0.0);
  auto f = [&](std::complex<double> z) {
    std::complex<double> r = 0;
    for (std::size_t i = c.size(); i-- > 0;) r = r * z + c[i];
    return r;
  };
  std::vector<std::complex<double>> z(deg);
  const std::complex<double> seed(0.4, 0.9);
  for (std::size_t i = 0; i < deg; ++i) z[i] = std::pow(seed, static_cast<double>(i));
  for (int it = 0; it < 500; ++it) {
    for (std::size_t i = 0; i < deg; ++i) {
      std::complex<double> den = 1;
      for (std::size_t j = 0; j < deg; ++j) {
        if (j != i) den *= z[i] - z[j];
      }
      if (std::abs(den) > 0) z[i] -= f(z[i]) / den;
    }
  }
  return z;
}

}  // namespace

CubicRoots eigenvalues_3x3(const RationalMatrix& b) {
  const auto poly = characteristic_polynomial_3x3(b);
  CubicRoots out;
  out.numeric = durand_kerner(poly);
  std::vector<Rational> cur = poly;
  std::vector<Rational> roots;
  while (cur.size() > 1) {
    auto r = rational_root(cur);
    if (!r) break;
    roots.push_back(*r);
    cur = deflate(cur, *r);
  }
  if (roots.size() == 3) {
    std::sort(roots.begin(), roots.end());
    out.exact = true;
    out.roots = std::move(roots);
  }
  return out;
}

EmlGap eml_gap(std::int64_t set_size, std::int64_t twice_edges, std::int64_t d, std::int64_t n, std::int64_t lambda) {
  if (n <= 0) throw UsageError("graph must have vertices");
  const Rational s(set_size);
  const Rational lhs = (Rational(twice_edges) - Rational(d) * s * s / Rational(n)).abs();
  const Rational rhs = Rational(lambda) * s * (Rational(1) - s / Rational(n));
  return {lhs, rhs};
}

EmlGap eml_gap(const PolarityGraph& g, const VertexSet& s) {
  for (PointId x : s) {
    if (g.is_absolute(x)) throw UsageError("the mixing inequality is taken over non-absolute vertices only");
  }
  const auto q = static_cast<std::int64_t>(g.q());
  const std::int64_t d = q * q - q;
  const std::int64_t n = q * q * q * q - q * q * q + q * q;
  const auto twice_e = static_cast<std::int64_t>(e_count(g, s, s));
  return eml_gap(static_cast<std::int64_t>(s.size()), twice_e, d, n, q);
}

std::int64_t upper_bound(std::int64_t q) { return (q * q * q * q + q) / 2; }

bool check_bound(std::int64_t q, const VertexSet& s) { return static_cast<std::int64_t>(s.size()) <= upper_bound(q); }

}  // namespace plab
