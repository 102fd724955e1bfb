#include "plab/polarity.hpp"

#include <algorithm>

#include "plab/errors.hpp"

namespace plab {

namespace {

std::uint32_t square_root_exponent(const Plane& plane) {
  const std::uint32_t h = plane.field().degree();
  if (h % 2 != 0) {
    throw UsageError("unitary polarity needs a plane of square order, got " + std::to_string(plane.order()));
  }
  return h / 2;
}

}  // namespace

UnitaryPolarity::UnitaryPolarity(Plane plane) : UnitaryPolarity(std::move(plane), standard_form()) {}

UnitaryPolarity::UnitaryPolarity(Plane plane, const Mat3& form) : plane_(std::move(plane)), form_(form) {
  const Field& f = plane_.field();
  conj_e_ = square_root_exponent(plane_);
  q_ = 1;
  for (std::uint32_t i = 0; i < conj_e_; ++i) q_ *= f.characteristic();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (form_[i][j] >= f.size()) throw UsageError("form matrix entry is not a field element");
    }
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (form_[j][i] != conj(form_[i][j])) throw UsageError("form matrix is not Hermitian");
    }
  }
  if (mat_det(f, form_) == 0) throw UsageError("form matrix is singular");
  form_inv_ = mat_inverse(f, form_);
}

Line UnitaryPolarity::polar(const Point& p) const {
  const Triple v{conj(p.c[0]), conj(p.c[1]), conj(p.c[2])};
  return {*plane_.normalize(plane_.apply(form_, v))};
}

Point UnitaryPolarity::pole(const Line& l) const {
  const Triple w = plane_.apply(form_inv_, l.c);
  return {*plane_.normalize({conj(w[0]), conj(w[1]), conj(w[2])})};
}

std::vector<PointId> PolarityOracle::absolute_points() const {
  std::vector<PointId> out;
  for (PointId x = 0; x < num_points(); ++x) {
    if (is_absolute(x)) out.push_back(x);
  }
  return out;
}

std::vector<PointId> PolarityOracle::non_absolute_points() const {
  std::vector<PointId> out;
  for (PointId x = 0; x < num_points(); ++x) {
    if (!is_absolute(x)) out.push_back(x);
  }
  return out;
}

PolarityGraph::PolarityGraph(UnitaryPolarity polarity) : polarity_(std::move(polarity)) {
  const Plane& pl = plane();
  const std::uint32_t n = pl.size();
  polar_.resize(n);
  pole_.resize(n);
  absolute_.resize(n);
  for (PointId x = 0; x < n; ++x) {
    const Point p = pl.point(x);
    const Line l = polarity_.polar(p);
    polar_[x] = pl.id(l);
    absolute_[x] = pl.incident(p, l) ? 1 : 0;
  }
  for (PointId x = 0; x < n; ++x) pole_[polar_[x]] = x;
}

void PolarityGraph::neighbours(PointId x, std::vector<PointId>& out) const { plane().points_on(polar_[x], out); }

bool PolarityGraph::adjacent(PointId x, PointId y) const { return plane().incident(y, polar_[x]); }

PointId PolarityGraph::common_neighbour(PointId x, PointId y) const { return plane().meet(polar_[x], polar_[y]); }

std::uint64_t expected_absolute_count(std::uint64_t q) { return q * q * q + 1; }

std::uint64_t expected_triangle_count(std::uint64_t q) {
  return q * q * q * (q * q - q + 1) * (q - 1) / 6;
}

std::vector<PointId> hermitian_curve_points(const PolarityGraph& g, Elem lambda) {
  if (!g.polarity().is_standard()) throw UsageError("the Hermitian pencil is defined for the standard form");
  const Field& f = g.plane().field();
  if (lambda >= f.size() || !f.in_subfield(lambda, g.polarity().conj_exponent())) {
    throw DomainError("pencil parameter must lie in F_q");
  }
  std::vector<PointId> out;
  for (PointId x = 0; x < g.num_points(); ++x) {
    const Point p = g.plane().point(x);
    const auto& [X, Y, Z] = p.c;
    const auto& pol = g.polarity();
    Elem v = f.mul(pol.conj(X), Y);
    v = f.add(v, f.mul(X, pol.conj(Y)));
    v = f.add(v, f.mul(pol.conj(Z), Z));
    v = f.add(v, f.mul(lambda, f.mul(pol.conj(X), X)));
    if (v == 0) out.push_back(x);
  }
  return out;
}

std::optional<Elem> pencil_parameter(const PolarityGraph& g, PointId x) {
  if (!g.polarity().is_standard()) throw UsageError("the Hermitian pencil is defined for the standard form");
  const Field& f = g.plane().field();
  const Point p = g.plane().point(x);
  if (p.c[0] == 0) return std::nullopt;
  // X = 1 after normalization: lambda = -(Y + Y^q + Z^(q+1)).
  const auto& pol = g.polarity();
  Elem v = f.add(p.c[1], pol.conj(p.c[1]));
  v = f.add(v, f.mul(pol.conj(p.c[2]), p.c[2]));
  return f.neg(v);
}

}  // namespace plab
