#pragma once

// Exact spectral checks: annihilating-polynomial spectrum verification,
// quotient matrices of partitions, 3x3 characteristic polynomials and the
// expander mixing inequality. No floating point on any verification path.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "plab/polarity.hpp"
#include "plab/rational.hpp"
#include "plab/vertex_set.hpp"

namespace plab {

class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, 0) {}
  static IntMatrix identity(std::size_t dim);

  std::size_t dim() const { return dim_; }
  std::int64_t& at(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  std::int64_t at(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

  IntMatrix operator*(const IntMatrix& o) const;
  // A - c I
  IntMatrix shifted(std::int64_t c) const;
  std::int64_t trace() const;
  bool is_symmetric() const;
  bool is_zero() const;
  std::int64_t row_sum(std::size_t i) const;

 private:
  std::size_t dim_ = 0;
  std::vector<std::int64_t> data_;
};

inline constexpr std::size_t kMaxDenseDimension = 5000;

// Symmetric 0/1 matrix, diagonal 1 exactly at absolute points. UsageError
// above kMaxDenseDimension points.
IntMatrix adjacency_matrix(const PolarityOracle& g);

struct SpectrumClaim {
  struct Entry {
    Rational eigenvalue;
    std::int64_t multiplicity;
  };
  std::vector<Entry> entries;
};

// {q^2 + 1, q, -q} with multiplicities {1, (q^4 + 2q^2 - q)/2, (q^4 + q)/2}.
SpectrumClaim unitary_spectrum_claim(std::int64_t q);

struct SpectrumVerdict {
  bool verified = false;
  bool annihilated = false;        // prod (A - lambda_i I) = 0
  bool dimension_matches = false;  // sum m_i = dim
  bool trace_matches = false;      // tr A = sum m_i lambda_i
  bool trace_sq_matches = false;   // tr A^2 = sum m_i lambda_i^2
  std::string failure;             // first failing condition, empty on success
};

// UsageError when a claimed eigenvalue is not an integer.
SpectrumVerdict verify_spectrum(const IntMatrix& a, const SpectrumClaim& claim);

using RationalMatrix = std::vector<std::vector<Rational>>;

// b_ij = e(part_i, part_j) / |part_i| for a partition of the matrix indices.
// UsageError unless the parts are nonempty, disjoint and cover everything.
RationalMatrix quotient_matrix(const IntMatrix& a, const std::vector<VertexSet>& partition);

// The quotient of a hypothetical extremal set S against {U, S, R}:
// rows (1, (q^2+q)/2, (q^2-q)/2), (q+1, (q^2-q)/2, (q^2-q)/2),
// (q+1, (q^2+q)/2, (q^2-3q)/2).
RationalMatrix extremal_quotient_matrix(std::int64_t q);

// Coefficients of det(x I - B), constant term first (monic, length 4).
std::vector<Rational> characteristic_polynomial_3x3(const RationalMatrix& b);

struct CubicRoots {
  bool exact = false;           // all three roots rational
  std::vector<Rational> roots;  // with multiplicity, ascending, when exact
  std::vector<std::complex<double>> numeric;  // always filled
};

CubicRoots eigenvalues_3x3(const RationalMatrix& b);

struct EmlGap {
  Rational lhs;
  Rational rhs;
  bool holds() const { return lhs <= rhs; }
};

// |2e(S) - d|S|^2/n| and lambda |S| (1 - |S|/n).
EmlGap eml_gap(std::int64_t set_size, std::int64_t twice_edges, std::int64_t d, std::int64_t n, std::int64_t lambda);

// The inequality on Gamma (non-absolute vertices): d = q^2 - q,
// n = q^4 - q^3 + q^2, lambda = q, 2e(S) counted inside Gamma.
// UsageError when S touches an absolute point.
EmlGap eml_gap(const PolarityGraph& g, const VertexSet& s);

std::int64_t upper_bound(std::int64_t q);
bool check_bound(std::int64_t q, const VertexSet& s);

}  // namespace plab
