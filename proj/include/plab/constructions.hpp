#pragma once

// Triangle-free sets built from the Hermitian pencil
//   U_lambda : lambda X^(q+1) + X^q Y + X Y^q + Z^(q+1) = 0,  lambda in F_q,
// whose members pairwise meet only in U_2 = (0,1,0), together with the
// checks run against them.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "plab/polarity.hpp"
#include "plab/vertex_set.hpp"

namespace plab {

// An F_p-hyperplane of F_q (the subfield of GF(q^2)), stored as the kernel
// of the functional x -> Tr(w x) with dual vector w != 0.
class Hyperplane {
 public:
  Hyperplane(const PolarityGraph& g, Elem dual);

  Elem dual() const { return dual_; }
  bool contains(Elem x) const;
  const std::vector<Elem>& elements() const { return elements_; }
  bool admissible() const { return !contains(1); }

 private:
  const Field* field_;
  std::uint32_t subfield_degree_;
  Elem dual_;
  std::vector<Elem> elements_;
};

// Hyperplanes avoiding 1, one per kernel, by increasing dual encoding.
std::vector<Hyperplane> admissible_hyperplanes(const PolarityGraph& g);

enum class GoodSetKind { EvenHyperplane, OddCoset, Explicit };

struct GoodSet {
  std::vector<Elem> lambda;  // ascending
  GoodSetKind kind = GoodSetKind::Explicit;
  std::optional<Elem> hyperplane;  // dual vector of the hyperplane used, if any
};

std::vector<Elem> subfield_q(const PolarityGraph& g);

// A triple (repetition allowed) with l1 l2 + l2 l3 + l1 l3 = 0, or nullopt
// when lambda is good. UsageError for elements outside F_q \ {0}.
std::optional<std::array<Elem, 3>> good_set_violation(const PolarityGraph& g, const std::vector<Elem>& lambda);
inline bool is_good(const PolarityGraph& g, const std::vector<Elem>& lambda) {
  return !good_set_violation(g, lambda);
}

// Elementwise inverse; UsageError when 0 is present.
std::vector<Elem> invert_set(const Field& f, const std::vector<Elem>& x);
// Three elements (repetition allowed) summing to zero, if any.
std::optional<std::array<Elem, 3>> zero_sum_triple(const Field& f, const std::vector<Elem>& x);

// q even: invert_set({h + 1 : h in H}). Without a dual vector the first
// admissible hyperplane is used. UsageError for odd q or 1 in H.
GoodSet good_set_even(const PolarityGraph& g, std::optional<Elem> hyperplane_dual = std::nullopt);
// q odd, p = 3k +- 1: size k q / p. UsageError for even q, ConstructionError
// for p = 3.
GoodSet good_set_odd(const PolarityGraph& g);

struct SigmaSet {
  VertexSet points;
  std::vector<Elem> lambda;
  PointId excluded = 0;  // U_2
};

PointId u2_point(const PolarityGraph& g);

// Union of U_lambda \ {U_2}. UsageError when lambda is not good;
// ConstructionError when the union does not have |lambda| q^3 points.
SigmaSet build_sigma(const PolarityGraph& g, const std::vector<Elem>& lambda);
inline SigmaSet build_sigma(const PolarityGraph& g, const GoodSet& s) { return build_sigma(g, s.lambda); }

// The q^3 matrices rows (1,0,0), (a,1,-b^q), (b,0,1) with (1,a,b) on U_0,
// acting on column vectors.
std::vector<Mat3> k_group(const PolarityGraph& g);
// g^T M conj(g) = c M for some nonzero c.
bool preserves_form(const PolarityGraph& g, const Mat3& m);
PointId apply(const PolarityGraph& g, const Mat3& m, PointId x);

// q odd, P non-absolute: non-absolute points other than P on the q + 1
// tangents through P, plus the non-absolute points of P^perp.
VertexSet tangent_cone_set(const PolarityGraph& g, PointId p);
std::vector<LineId> tangent_lines_through(const PolarityGraph& g, PointId p);

struct RegularityReport {
  std::map<std::uint32_t, std::uint64_t> degree_histogram;
  std::uint32_t expected_degree = 0;  // q(q-1)/2
  bool regular = false;
  bool one_neighbour_on_own_curve = false;
};

RegularityReport verify_regularity(const PolarityGraph& g, const SigmaSet& sigma);

struct LineSpectrum {
  std::vector<std::uint32_t> counts;  // |x^perp cap S| indexed by pole x
  std::map<std::uint32_t, std::uint64_t> histogram;
};

LineSpectrum intersection_spectrum(const PolarityGraph& g, const VertexSet& s);

// Case analysis for Sigma with |Lambda| = q/2, q even:
// (q^2-q)/2 on Sigma, (q^2+q)/2 off Sigma and off X = 0, q^2/2 on X = 0
// away from U_2, 0 at U_2. Returns the first pole breaking it.
std::optional<PointId> sigma_line_case_violation(const PolarityGraph& g, const SigmaSet& sigma);

struct ParityReport {
  bool holds = false;
  std::map<std::uint32_t, std::uint64_t> histogram;  // |T cap Sigma| -> triangles
  std::optional<Triangle> offending;
};

// Every triangle of the plane meets Sigma in 0 or 2 vertices.
ParityReport triangle_parity_check(const PolarityGraph& g, const VertexSet& sigma);

struct MaximalityReport {
  bool maximal = false;
  std::optional<PointId> extendable;
};

MaximalityReport maximality_check(const PolarityGraph& g, const VertexSet& s);

// nullopt when the induced subgraph is acyclic.
std::optional<std::uint32_t> set_girth(const PolarityGraph& g, const VertexSet& s);

// Girth of Sigma from one BFS root per pencil member, after verifying that
// K acts on Sigma by graph automorphisms with those roots' orbits covering
// Sigma. ConstructionError if that verification fails.
std::optional<std::uint32_t> sigma_girth_by_orbits(const PolarityGraph& g, const SigmaSet& sigma);

struct Girth5Attempt {
  Elem hyperplane;
  std::optional<std::uint32_t> girth;
};

struct Girth5Result {
  bool found = false;
  std::optional<GoodSet> good_set;
  std::vector<Girth5Attempt> attempts;
};

// q even, q >= 4: admissible hyperplanes in increasing dual order until
// Sigma has girth 5.
Girth5Result girth5_search(const PolarityGraph& g);

// q even, a != 0, a != b, a, b in H: b avoids the roots of
// X^2 + (a+1)X + a^3, X^3 + aX + a(a+1) and X^2 + (a+1)X + a^2 + a + 1, and
// (a^2 b + a b^2 + a b + 1) / (a^2 + b^2 + a b + a + b + 1) lies in H.
bool five_cycle_witness(const PolarityGraph& g, const Hyperplane& h, Elem a, Elem b);

// P1, P2, R, Q2, Q1 built from lambda_1 = 1/(1+a), lambda_2 = 1/(1+b).
std::array<PointId, 5> five_cycle_points(const PolarityGraph& g, Elem a, Elem b);

}  // namespace plab
