#include "plab/constructions.hpp"

#include <algorithm>
#include <limits>

#include "plab/errors.hpp"

namespace plab {

namespace {

std::uint32_t half_degree(const PolarityGraph& g) { return g.plane().field().degree() / 2; }

void require_subfield_nonzero(const PolarityGraph& g, Elem x) {
  if (x == 0 || !g.plane().field().in_subfield(x, half_degree(g))) {
    throw UsageError("element " + std::to_string(x) + " is not in F_q \\ {0}");
  }
}

bool q_even(const PolarityGraph& g) { return g.plane().field().characteristic() == 2; }

std::vector<Elem> sorted_unique(std::vector<Elem> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

Hyperplane::Hyperplane(const PolarityGraph& g, Elem dual)
    : field_(&g.plane().field()), subfield_degree_(half_degree(g)), dual_(dual) {
  require_subfield_nonzero(g, dual);
  for (Elem x : field_->subfield_elements(subfield_degree_)) {
    if (contains(x)) elements_.push_back(x);
  }
}

bool Hyperplane::contains(Elem x) const { return field_->trace(field_->mul(dual_, x), subfield_degree_) == 0; }

std::vector<Hyperplane> admissible_hyperplanes(const PolarityGraph& g) {
  const Field& f = g.plane().field();
  const std::uint32_t p = f.characteristic();
  std::vector<Hyperplane> out;
  for (Elem w : f.subfield_elements(half_degree(g))) {
    if (w == 0) continue;
    // w and c w (c in F_p^*) have the same kernel; keep the smallest.
    bool smallest = true;
    for (std::uint32_t c = 2; c < p; ++c) {
      if (f.mul(f.from_int(c), w) < w) smallest = false;
    }
    if (!smallest) continue;
    Hyperplane h(g, w);
    if (h.admissible()) out.push_back(std::move(h));
  }
  return out;
}

std::vector<Elem> subfield_q(const PolarityGraph& g) { return g.plane().field().subfield_elements(half_degree(g)); }

std::optional<std::array<Elem, 3>> good_set_violation(const PolarityGraph& g, const std::vector<Elem>& lambda) {
  for (Elem x : lambda) require_subfield_nonzero(g, x);
  const Field& f = g.plane().field();
  const auto l = sorted_unique(lambda);
  for (std::size_t i = 0; i < l.size(); ++i) {
    for (std::size_t j = i; j < l.size(); ++j) {
      const Elem ij = f.mul(l[i], l[j]);
      const Elem s = f.add(l[i], l[j]);
      for (std::size_t k = j; k < l.size(); ++k) {
        if (f.add(ij, f.mul(s, l[k])) == 0) return std::array<Elem, 3>{l[i], l[j], l[k]};
      }
    }
  }
  return std::nullopt;
}

std::vector<Elem> invert_set(const Field& f, const std::vector<Elem>& x) {
  std::vector<Elem> out;
  out.reserve(x.size());
  for (Elem v : x) {
    if (v == 0) throw UsageError("cannot invert a set containing 0");
    out.push_back(f.inv(v));
  }
  return sorted_unique(std::move(out));
}

std::optional<std::array<Elem, 3>> zero_sum_triple(const Field& f, const std::vector<Elem>& x) {
  const auto l = sorted_unique(x);
  for (std::size_t i = 0; i < l.size(); ++i) {
    for (std::size_t j = i; j < l.size(); ++j) {
      const Elem s = f.add(l[i], l[j]);
      for (std::size_t k = j; k < l.size(); ++k) {
        if (f.add(s, l[k]) == 0) return std::array<Elem, 3>{l[i], l[j], l[k]};
      }
    }
  }
  return std::nullopt;
}

GoodSet good_set_even(const PolarityGraph& g, std::optional<Elem> hyperplane_dual) {
  if (!q_even(g)) throw UsageError("good_set_even needs q even");
  std::optional<Hyperplane> h;
  if (hyperplane_dual) {
    h.emplace(g, *hyperplane_dual);
    if (!h->admissible()) throw UsageError("hyperplane " + std::to_string(*hyperplane_dual) + " contains 1");
  } else {
    auto all = admissible_hyperplanes(g);
    h.emplace(std::move(all.front()));
  }
  const Field& f = g.plane().field();
  std::vector<Elem> shifted;
  for (Elem x : h->elements()) shifted.push_back(f.add(x, 1));
  GoodSet out{invert_set(f, shifted), GoodSetKind::EvenHyperplane, h->dual()};
  if (out.lambda.size() != g.q() / 2) throw ConstructionError("good set has the wrong size");
  if (auto t = good_set_violation(g, out.lambda)) throw ConstructionError("constructed set is not good");
  return out;
}

GoodSet good_set_odd(const PolarityGraph& g) {
  const Field& f = g.plane().field();
  const std::uint32_t p = f.characteristic();
  if (p == 2) throw UsageError("good_set_odd needs q odd");
  if (p == 3) {
    throw ConstructionError("no pencil good set exists in characteristic 3 (every triple (l,l,l) vanishes); "
                            "use the tangent-cone construction instead");
  }
  std::vector<Elem> base;
  if (p % 3 == 1) {
    const std::uint32_t k = (p - 1) / 3;
    for (std::uint32_t i = 1; i <= k; ++i) base.push_back(f.from_int(i));
  } else {
    const std::uint32_t k = (p + 1) / 3;
    for (std::uint32_t i = k; i <= 2 * k - 1; ++i) base.push_back(f.from_int(i));
  }
  std::vector<Elem> bar;
  std::optional<Elem> dual;
  if (half_degree(g) == 1) {
    bar = base;
  } else {
    const auto all = admissible_hyperplanes(g);
    const Hyperplane& a = all.front();
    dual = a.dual();
    for (Elem x : a.elements()) {
      for (Elem l : base) bar.push_back(f.add(x, l));
    }
  }
  GoodSet out{invert_set(f, bar), GoodSetKind::OddCoset, dual};
  const std::size_t k = base.size();
  if (out.lambda.size() != k * g.q() / p) throw ConstructionError("good set has the wrong size");
  if (good_set_violation(g, out.lambda)) throw ConstructionError("constructed set is not good");
  return out;
}

PointId u2_point(const PolarityGraph& g) { return g.plane().point_id({0, 1, 0}); }

SigmaSet build_sigma(const PolarityGraph& g, const std::vector<Elem>& lambda) {
  if (auto t = good_set_violation(g, lambda)) {
    throw UsageError("lambda is not good: (" + std::to_string((*t)[0]) + "," + std::to_string((*t)[1]) + "," +
                     std::to_string((*t)[2]) + ") satisfies l1 l2 + l2 l3 + l1 l3 = 0");
  }
  const auto l = sorted_unique(lambda);
  const PointId u2 = u2_point(g);
  std::vector<std::uint8_t> seen(g.num_points(), 0);
  std::vector<PointId> ids;
  std::size_t raw = 0;
  for (Elem x : l) {
    for (PointId v : hermitian_curve_points(g, x)) {
      if (v == u2) continue;
      ++raw;
      if (!seen[v]) {
        seen[v] = 1;
        ids.push_back(v);
      }
    }
  }
  const std::uint64_t q = g.q();
  if (ids.size() != raw || ids.size() != l.size() * q * q * q) {
    throw ConstructionError("pencil union has " + std::to_string(ids.size()) + " points, expected " +
                            std::to_string(l.size() * q * q * q));
  }
  return {VertexSet(g.num_points(), std::move(ids)), l, u2};
}

std::vector<Mat3> k_group(const PolarityGraph& g) {
  const Field& f = g.plane().field();
  const std::uint32_t q = g.q();
  std::vector<Mat3> out;
  for (Elem b = 0; b < f.size(); ++b) {
    const Elem bq = g.polarity().conj(b);
    const Elem norm = f.mul(b, bq);
    for (Elem a = 0; a < f.size(); ++a) {
      if (f.add(f.add(a, g.polarity().conj(a)), norm) != 0) continue;
      out.push_back({Triple{1, 0, 0}, Triple{a, 1, f.neg(bq)}, Triple{b, 0, 1}});
    }
  }
  if (out.size() != static_cast<std::size_t>(q) * q * q) throw ConstructionError("K has the wrong order");
  return out;
}

bool preserves_form(const PolarityGraph& g, const Mat3& m) {
  const Field& f = g.plane().field();
  const Mat3& form = g.polarity().form();
  Mat3 mt{};
  Mat3 mc{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      mt[i][j] = m[j][i];
      mc[i][j] = g.polarity().conj(m[i][j]);
    }
  }
  const Mat3 n = mat_mul(f, mat_mul(f, mt, form), mc);
  std::optional<Elem> scale;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (form[i][j] == 0) {
        if (n[i][j] != 0) return false;
        continue;
      }
      const Elem c = f.div(n[i][j], form[i][j]);
      if (c == 0 || (scale && *scale != c)) return false;
      scale = c;
    }
  }
  return true;
}

PointId apply(const PolarityGraph& g, const Mat3& m, PointId x) {
  return g.plane().point_id(g.plane().apply(m, g.plane().point(x).c));
}

std::vector<LineId> tangent_lines_through(const PolarityGraph& g, PointId p) {
  std::vector<LineId> out;
  std::vector<PointId> pts;
  for (LineId l : g.plane().lines_through(p)) {
    g.plane().points_on(l, pts);
    const auto abs = std::count_if(pts.begin(), pts.end(), [&](PointId x) { return g.is_absolute(x); });
    if (abs == 1) out.push_back(l);
  }
  return out;
}

VertexSet tangent_cone_set(const PolarityGraph& g, PointId p) {
  if (q_even(g)) throw UsageError("tangent_cone_set needs q odd");
  if (p >= g.num_points() || g.is_absolute(p)) throw UsageError("tangent_cone_set needs a non-absolute point");
  VertexSet s(g.num_points());
  std::vector<PointId> pts;
  for (LineId l : tangent_lines_through(g, p)) {
    g.plane().points_on(l, pts);
    for (PointId x : pts) {
      if (x != p && !g.is_absolute(x)) s.insert(x);
    }
  }
  g.neighbours(p, pts);
  for (PointId x : pts) {
    if (!g.is_absolute(x)) s.insert(x);
  }
  return s;
}

RegularityReport verify_regularity(const PolarityGraph& g, const SigmaSet& sigma) {
  RegularityReport r;
  const std::uint32_t q = g.q();
  r.expected_degree = q * (q - 1) / 2;
  const auto& deg = sigma.points.degrees(g);
  r.degree_histogram = histogram(deg);
  r.regular = r.degree_histogram.size() == 1 && r.degree_histogram.begin()->first == r.expected_degree;
  r.one_neighbour_on_own_curve = true;
  std::vector<PointId> nb;
  for (PointId v : sigma.points) {
    const auto lv = pencil_parameter(g, v);
    g.neighbours(v, nb);
    std::uint32_t same = 0;
    for (PointId y : nb) {
      if (y != v && sigma.points.contains(y) && pencil_parameter(g, y) == lv) ++same;
    }
    if (same != 1) {
      r.one_neighbour_on_own_curve = false;
      break;
    }
  }
  return r;
}

LineSpectrum intersection_spectrum(const PolarityGraph& g, const VertexSet& s) {
  LineSpectrum out;
  out.counts = s.pole_counts(g);
  out.histogram = histogram(out.counts);
  return out;
}

std::optional<PointId> sigma_line_case_violation(const PolarityGraph& g, const SigmaSet& sigma) {
  const std::uint32_t q = g.q();
  if (!q_even(g) || sigma.lambda.size() != q / 2) throw UsageError("the case analysis needs q even and |lambda| = q/2");
  const auto& counts = sigma.points.pole_counts(g);
  for (PointId x = 0; x < g.num_points(); ++x) {
    std::uint32_t want;
    if (x == sigma.excluded) {
      want = 0;
    } else if (sigma.points.contains(x)) {
      want = (q * q - q) / 2;
    } else if (g.plane().point(x).c[0] == 0) {
      want = q * q / 2;
    } else {
      want = (q * q + q) / 2;
    }
    if (counts[x] != want) return x;
  }
  return std::nullopt;
}

ParityReport triangle_parity_check(const PolarityGraph& g, const VertexSet& sigma) {
  ParityReport r;
  r.holds = true;
  for (const Triangle& t : triangles(g)) {
    const std::uint32_t k = (sigma.contains(t[0]) ? 1 : 0) + (sigma.contains(t[1]) ? 1 : 0) + (sigma.contains(t[2]) ? 1 : 0);
    ++r.histogram[k];
    if (k != 0 && k != 2 && r.holds) {
      r.holds = false;
      r.offending = t;
    }
  }
  return r;
}

MaximalityReport maximality_check(const PolarityGraph& g, const VertexSet& s) {
  MaximalityReport r;
  r.extendable = extendable_vertex(g, s);
  r.maximal = !r.extendable;
  return r;
}

std::optional<std::uint32_t> set_girth(const PolarityGraph& g, const VertexSet& s) {
  return girth(induced_subgraph(g, s));
}

std::optional<std::uint32_t> sigma_girth_by_orbits(const PolarityGraph& g, const SigmaSet& sigma) {
  if (!g.polarity().is_standard()) throw UsageError("orbit girth needs the standard form");
  const auto k = k_group(g);
  for (const Mat3& m : k) {
    if (!preserves_form(g, m)) throw ConstructionError("K element does not preserve the Hermitian form");
  }
  for (const Mat3& m : k) {
    for (PointId s : sigma.points) {
      if (!sigma.points.contains(apply(g, m, s))) throw ConstructionError("K does not preserve Sigma");
    }
  }
  const auto h = induced_subgraph(g, sigma.points);
  std::vector<std::uint32_t> roots;
  std::size_t covered = 0;
  std::vector<std::uint8_t> hit(g.num_points(), 0);
  for (Elem l : sigma.lambda) {
    std::optional<PointId> rep;
    for (PointId s : sigma.points) {
      if (pencil_parameter(g, s) == l) {
        rep = s;
        break;
      }
    }
    if (!rep) throw ConstructionError("pencil member missing from Sigma");
    for (const Mat3& m : k) {
      const PointId y = apply(g, m, *rep);
      if (!hit[y]) {
        hit[y] = 1;
        ++covered;
      }
    }
    const auto pos = std::lower_bound(h.vertices.begin(), h.vertices.end(), *rep) - h.vertices.begin();
    roots.push_back(static_cast<std::uint32_t>(pos));
  }
  if (covered != sigma.points.size()) throw ConstructionError("K-orbits of the roots do not cover Sigma");
  return girth(h, roots);
}

Girth5Result girth5_search(const PolarityGraph& g) {
  if (!q_even(g) || g.q() < 4) throw UsageError("girth5_search needs q even and q >= 4");
  Girth5Result r;
  for (const Hyperplane& h : admissible_hyperplanes(g)) {
    GoodSet gs = good_set_even(g, h.dual());
    const SigmaSet sigma = build_sigma(g, gs);
    const auto gi = sigma_girth_by_orbits(g, sigma);
    r.attempts.push_back({h.dual(), gi});
    if (gi && *gi == 5) {
      r.found = true;
      r.good_set = std::move(gs);
      break;
    }
  }
  return r;
}

bool five_cycle_witness(const PolarityGraph& g, const Hyperplane& h, Elem a, Elem b) {
  if (!q_even(g)) throw UsageError("five_cycle_witness needs q even");
  if (a == 0 || a == b || !h.contains(a) || !h.contains(b)) {
    throw UsageError("five_cycle_witness needs a != 0, a != b and a, b in H");
  }
  const Field& f = g.plane().field();
  const Elem a1 = f.add(a, 1);
  const Elem a2 = f.mul(a, a);
  const Elem b2 = f.mul(b, b);
  const Elem ab = f.mul(a, b);
  const Elem e1 = f.add(f.add(b2, f.mul(a1, b)), f.mul(a2, a));
  const Elem e2 = f.add(f.add(f.mul(b2, b), ab), f.mul(a, a1));
  const Elem e3 = f.add(f.add(b2, f.mul(a1, b)), f.add(f.add(a2, a), 1));
  if (e1 == 0 || e2 == 0 || e3 == 0) return false;
  const Elem num = f.add(f.add(f.mul(a2, b), f.mul(a, b2)), f.add(ab, 1));
  const Elem den = f.add(f.add(f.add(a2, b2), f.add(ab, a)), f.add(b, 1));
  if (den == 0) return false;
  return h.contains(f.div(num, den));
}

std::array<PointId, 5> five_cycle_points(const PolarityGraph& g, Elem a, Elem b) {
  if (!q_even(g) || a == b) throw UsageError("five_cycle_points needs q even and a != b");
  const Field& f = g.plane().field();
  const auto& pol = g.polarity();
  const Elem l1 = f.inv(f.add(1, a));
  const Elem l2 = f.inv(f.add(1, b));
  std::optional<Elem> x1;
  std::optional<Elem> z;
  const Elem norm_target = f.add(l1, l2);
  for (Elem x = 0; x < f.size() && (!x1 || !z); ++x) {
    if (!x1 && f.add(x, pol.conj(x)) == l1) x1 = x;
    if (!z && f.mul(x, pol.conj(x)) == norm_target) z = x;
  }
  if (!x1 || !z) throw ConstructionError("trace or norm preimage not found");
  const Elem x1q = pol.conj(*x1);
  const Plane& pl = g.plane();
  const PointId p1 = pl.point_id({1, *x1, 0});
  const PointId p2 = pl.point_id({1, x1q, 0});
  const PointId q1 = pl.point_id({1, x1q, *z});
  const PointId q2 = pl.point_id({1, f.add(*x1, norm_target), *z});
  const PointId r = pl.point_id({1, *x1, f.div(l2, pol.conj(*z))});
  return {p1, p2, r, q2, q1};
}

}  // namespace plab
