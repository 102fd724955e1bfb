#pragma once

// Figueroa planes of order n = s^3 built over PG(2, n), the polarity they
// inherit from a commuting unitary polarity, and the transfer of
// triangle-free sets.
//
// alpha is the collineation x -> x^s on coordinates. Point types: O1 fixed,
// O2 with x, x^alpha, x^alpha^2 distinct and collinear, O3 otherwise (dually
// L1, L2, L3). mu sends an O3 point to the line x^alpha x^alpha^2 and an L3
// line to the point l^alpha cap l^alpha^2. A point P and line l are
// Figueroa-incident iff l^mu lies on P^mu when both have type 3, and
// classically incident otherwise.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "plab/polarity.hpp"
#include "plab/vertex_set.hpp"

namespace plab {

class FigueroaPlane {
 public:
  // UsageError unless the field degree is a multiple of 3.
  explicit FigueroaPlane(Plane plane);

  const Plane& plane() const { return plane_; }
  std::uint32_t order() const { return plane_.order(); }
  std::uint32_t size() const { return plane_.size(); }
  std::uint32_t alpha_exponent() const { return alpha_e_; }

  PointId alpha_point(PointId x) const { return alpha_pt_[x]; }
  LineId alpha_line(LineId l) const { return alpha_ln_[l]; }
  // 1, 2 or 3.
  int point_type(PointId x) const { return pt_type_[x]; }
  int line_type(LineId l) const { return ln_type_[l]; }
  // UsageError unless the argument has type 3.
  LineId mu_point(PointId x) const;
  PointId mu_line(LineId l) const;

  bool incident(PointId p, LineId l) const;
  // Points of the Figueroa line l, ascending; dually.
  std::span<const PointId> points_on(LineId l) const { return span_of(line_pts_off_, line_pts_, l); }
  std::span<const LineId> lines_through(PointId p) const { return span_of(point_lns_off_, point_lns_, p); }
  // DomainError when a == b.
  LineId join(PointId a, PointId b) const;
  PointId meet(LineId a, LineId b) const;

  std::map<int, std::uint32_t> point_type_counts() const;
  std::map<int, std::uint32_t> line_type_counts() const;

 private:
  static std::span<const std::uint32_t> span_of(const std::vector<std::uint32_t>& off,
                                                const std::vector<std::uint32_t>& data, std::uint32_t i) {
    return {data.data() + off[i], data.data() + off[i + 1]};
  }

  Plane plane_;
  std::uint32_t alpha_e_ = 0;
  std::vector<PointId> alpha_pt_;
  std::vector<LineId> alpha_ln_;
  std::vector<std::uint8_t> pt_type_;
  std::vector<std::uint8_t> ln_type_;
  std::vector<LineId> mu_pt_;  // kNone off O3
  std::vector<PointId> mu_ln_;
  std::vector<std::uint32_t> line_pts_off_;
  std::vector<PointId> line_pts_;
  std::vector<std::uint32_t> point_lns_off_;
  std::vector<LineId> point_lns_;
};

struct CollineationReport {
  bool order_three = false;        // alpha^3 = id on points and lines
  bool subplane_size = false;      // n^(2/3) + n^(1/3) + 1 fixed points
  bool mu_involutory = false;      // mu(mu(x)) = x on O3 and L3
  bool mu_equivariant = false;     // mu(x^alpha) = mu(x)^alpha
  bool types_alpha_invariant = false;
  bool ok() const { return order_three && subplane_size && mu_involutory && mu_equivariant && types_alpha_invariant; }
};

CollineationReport check_collineation(const FigueroaPlane& f);

struct AxiomReport {
  bool passed = false;
  std::uint64_t pairs_checked = 0;
  bool line_sizes_ok = false;  // every line has n + 1 points and dually
  std::string failure;
};

// Exhaustive: every point pair on exactly one line and every line pair
// through exactly one point, via pair counters.
AxiomReport verify_axioms_full(const FigueroaPlane& f);
// Random point pairs and line pairs, `samples` of each.
AxiomReport verify_axioms_sampled(const FigueroaPlane& f, std::uint64_t samples, std::mt19937_64& rng);

// alpha rho = rho alpha on every point.
bool commutes(const FigueroaPlane& f, const UnitaryPolarity& rho);

struct TypePreservationReport {
  bool absolute_alpha_invariant = false;  // X^alpha = X
  bool point_types = false;               // P in O_i iff P^rho in L_i
  bool line_types = false;                // l in L_i iff l^rho in O_i
  bool mu_rho_points = false;             // P^(mu rho) = P^(rho mu) on O3
  bool mu_rho_lines = false;              // on L3
  bool ok() const { return absolute_alpha_invariant && point_types && line_types && mu_rho_points && mu_rho_lines; }
  // Name of the first failing item, empty when ok.
  std::string first_failure() const;
};

TypePreservationReport type_preservation_check(const FigueroaPlane& f, const UnitaryPolarity& rho);
// Same items with the two mu checks restricted to `samples` random elements.
TypePreservationReport type_preservation_check_sampled(const FigueroaPlane& f, const UnitaryPolarity& rho,
                                                       std::uint32_t samples, std::mt19937_64& rng);

// The polarity graph of rho_F: x ~ y iff y lies on the Figueroa line with the
// id of x^rho. ConstructionError unless rho commutes with alpha.
class FigueroaGraph final : public PolarityOracle {
 public:
  FigueroaGraph(std::shared_ptr<const FigueroaPlane> plane, UnitaryPolarity rho);

  const FigueroaPlane& figueroa() const { return *plane_; }
  const UnitaryPolarity& rho() const { return rho_; }

  std::uint32_t num_points() const override { return plane_->size(); }
  std::uint32_t order() const override { return plane_->order(); }
  bool is_absolute(PointId x) const override { return absolute_[x] != 0; }
  void neighbours(PointId x, std::vector<PointId>& out) const override;
  bool adjacent(PointId x, PointId y) const override { return plane_->incident(y, polar_[x]); }
  PointId common_neighbour(PointId x, PointId y) const override;
  using PolarityOracle::neighbours;

  LineId polar_line(PointId x) const { return polar_[x]; }
  PointId pole_point(LineId l) const { return pole_[l]; }

 private:
  std::shared_ptr<const FigueroaPlane> plane_;
  UnitaryPolarity rho_;
  std::vector<LineId> polar_;
  std::vector<PointId> pole_;
  std::vector<std::uint8_t> absolute_;
};

struct PolarityReport {
  bool involutory = false;           // pole(polar(x)) = x and dually
  bool incidence_preserving = false; // P on l iff l^rho_F on P^rho_F
  std::uint32_t absolute_count = 0;
  bool absolute_set_matches = false; // (X cap O1) u (X cap O2) u {x^(mu rho) : x in X cap O3}
};

PolarityReport check_rho_f(const FigueroaGraph& gf, const PolarityGraph& g);

// Any two L3 lines through an O2 point have mu-images joined by an L2 line.
struct MuJoinReport {
  bool holds = false;
  std::uint64_t pairs = 0;
};
MuJoinReport mu_join_check(const FigueroaPlane& f);

struct TransferResult {
  VertexSet z_f;
  std::uint32_t in_o1 = 0;
  std::uint32_t in_o2 = 0;
  std::uint32_t in_o3 = 0;
  bool non_absolute = false;  // w.r.t. rho_F
  bool triangle_free = false; // w.r.t. rho_F, checked directly
};

// Z_F = (Z cap O1) u {x^(mu rho) : x in Z cap O3}. UsageError unless Z is
// non-absolute and triangle-free for rho.
TransferResult z_transfer(const FigueroaGraph& gf, const PolarityGraph& g, const VertexSet& z);

// |Sigma cap O2| predicted from the classification of the L1 lines by their
// poles (in Sigma, off Sigma and off X = 0, on X = 0, U_2) using the line
// intersection formulas in the plane and in the fixed subplane.
struct O2CaseSum {
  std::map<std::string, std::uint32_t> lines_per_case;
  std::map<std::string, std::uint32_t> contribution_per_case;
  std::uint64_t predicted = 0;
  std::uint64_t direct = 0;  // |Sigma cap O2| counted
};
O2CaseSum o2_case_sum(const FigueroaPlane& f, const PolarityGraph& g, const VertexSet& sigma);

struct TriangleTransferReport {
  std::uint64_t rho_triangles = 0;
  std::uint64_t rho_f_triangles = 0;
  bool counts_match = false;
  bool mixed_map_identically = false;  // >= 2 vertices in O1 u O2
  bool o3_map_via_mu = false;          // all in O3: {(x_i^rho)^mu}
  bool two_o1_forces_o1 = false;
  bool one_o1_forces_o12 = false;
  bool ok() const {
    return counts_match && mixed_map_identically && o3_map_via_mu && two_o1_forces_o1 && one_o1_forces_o12;
  }
};
TriangleTransferReport self_polar_triangle_transfer_check(const FigueroaGraph& gf, const PolarityGraph& g);

// GF(q^6), PG(2, q^6), the standard unitary polarity, the Figueroa plane and
// rho_F.
struct FigueroaInstance {
  std::shared_ptr<const Field> field;
  std::shared_ptr<PolarityGraph> desarguesian;
  std::shared_ptr<const FigueroaPlane> plane;
  std::shared_ptr<FigueroaGraph> graph;
};
FigueroaInstance make_figueroa_instance(std::uint32_t base_q);

}  // namespace plab
