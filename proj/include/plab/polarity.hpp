#pragma once

// Unitary polarities of PG(2, q^2) and the polarity graph as an adjacency
// oracle.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "plab/gf.hpp"
#include "plab/plane.hpp"

namespace plab {

// x -> x^perp given by a Hermitian form matrix M: the polar line of the
// point with coordinate vector v is M * conj(v), conj(x) = x^q.
class UnitaryPolarity {
 public:
  // The form with rows (0,1,0), (1,0,0), (0,0,1): (x,y,z) -> [y^q, x^q, z^q].
  explicit UnitaryPolarity(Plane plane);
  // UsageError unless the plane order is a square and M is a nonsingular
  // Hermitian matrix (M^T = conj(M)).
  UnitaryPolarity(Plane plane, const Mat3& form);

  static Mat3 standard_form() { return {Triple{0, 1, 0}, Triple{1, 0, 0}, Triple{0, 0, 1}}; }

  const Plane& plane() const { return plane_; }
  const Mat3& form() const { return form_; }
  bool is_standard() const { return form_ == standard_form(); }
  std::uint32_t q() const { return q_; }
  std::uint32_t conj_exponent() const { return conj_e_; }
  Elem conj(Elem x) const { return plane_.field().frobenius(x, conj_e_); }

  Line polar(const Point& p) const;
  Point pole(const Line& l) const;
  LineId polar(PointId p) const { return plane_.id(polar(plane_.point(p))); }
  PointId pole(LineId l) const { return plane_.id(pole(plane_.line(l))); }
  bool is_absolute(const Point& p) const { return plane_.incident(p, polar(p)); }

 private:
  Plane plane_;
  Mat3 form_;
  Mat3 form_inv_;
  std::uint32_t q_ = 0;
  std::uint32_t conj_e_ = 0;
};

using Triangle = std::array<PointId, 3>;

// Polarity graph of a projective plane: vertices are points, x ~ y iff
// x lies on the polar line of y. Loops sit exactly at absolute points.
// Lines are identified with their poles throughout, so |l cap S| for the
// line l = x^perp is reported under the index x.
class PolarityOracle {
 public:
  virtual ~PolarityOracle() = default;

  virtual std::uint32_t num_points() const = 0;
  virtual bool is_absolute(PointId x) const = 0;
  // Points of the polar line of x, ascending (x itself when absolute).
  virtual void neighbours(PointId x, std::vector<PointId>& out) const = 0;
  virtual bool adjacent(PointId x, PointId y) const = 0;
  // The unique point on both polar lines; requires x != y.
  virtual PointId common_neighbour(PointId x, PointId y) const = 0;
  // Order of the plane.
  virtual std::uint32_t order() const = 0;

  std::vector<PointId> neighbours(PointId x) const {
    std::vector<PointId> out;
    neighbours(x, out);
    return out;
  }
  std::vector<PointId> absolute_points() const;
  std::vector<PointId> non_absolute_points() const;
};

// The polarity graph DUP(q^2) of PG(2, q^2) under a unitary polarity.
class PolarityGraph final : public PolarityOracle {
 public:
  explicit PolarityGraph(UnitaryPolarity polarity);

  const UnitaryPolarity& polarity() const { return polarity_; }
  const Plane& plane() const { return polarity_.plane(); }
  std::uint32_t q() const { return polarity_.q(); }

  std::uint32_t num_points() const override { return plane().size(); }
  std::uint32_t order() const override { return plane().order(); }
  bool is_absolute(PointId x) const override { return absolute_[x] != 0; }
  void neighbours(PointId x, std::vector<PointId>& out) const override;
  bool adjacent(PointId x, PointId y) const override;
  PointId common_neighbour(PointId x, PointId y) const override;
  using PolarityOracle::neighbours;

  LineId polar_line(PointId x) const { return polar_[x]; }
  PointId pole_point(LineId l) const { return pole_[l]; }

 private:
  UnitaryPolarity polarity_;
  std::vector<LineId> polar_;
  std::vector<PointId> pole_;
  std::vector<std::uint8_t> absolute_;
};

// Closed forms: q^3 + 1 and q^3 (q^2 - q + 1)(q - 1) / 6.
std::uint64_t expected_absolute_count(std::uint64_t q);
std::uint64_t expected_triangle_count(std::uint64_t q);

// Points of lambda X^(q+1) + X^q Y + X Y^q + Z^(q+1) = 0 (standard form only).
// DomainError unless lambda lies in F_q.
std::vector<PointId> hermitian_curve_points(const PolarityGraph& g, Elem lambda);

// lambda with P on U_lambda, or nullopt for points of X = 0 (standard form).
std::optional<Elem> pencil_parameter(const PolarityGraph& g, PointId p);

}  // namespace plab
