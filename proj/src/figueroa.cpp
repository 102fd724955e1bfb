#include "plab/figueroa.hpp"

#include <algorithm>
#include <limits>

#include "plab/errors.hpp"

namespace plab {

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

Triple frob(const Field& f, const Triple& t, std::uint32_t e) {
  return {f.frobenius(t[0], e), f.frobenius(t[1], e), f.frobenius(t[2], e)};
}

// First common element of two ascending lists.
std::optional<std::uint32_t> first_common(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return a[i];
    if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return std::nullopt;
}

std::uint32_t common_count(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  std::uint32_t c = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++c;
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return c;
}

void build_transpose(std::uint32_t n, const std::vector<std::uint32_t>& off, const std::vector<std::uint32_t>& data,
                     std::vector<std::uint32_t>& t_off, std::vector<std::uint32_t>& t_data) {
  t_off.assign(n + 1, 0);
  for (std::uint32_t v : data) ++t_off[v + 1];
  for (std::uint32_t i = 0; i < n; ++i) t_off[i + 1] += t_off[i];
  t_data.assign(data.size(), 0);
  std::vector<std::uint32_t> fill(t_off.begin(), t_off.end() - 1);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t k = off[i]; k < off[i + 1]; ++k) t_data[fill[data[k]]++] = i;
  }
}

}  // namespace

FigueroaPlane::FigueroaPlane(Plane plane) : plane_(std::move(plane)) {
  const Field& f = plane_.field();
  if (f.degree() % 3 != 0) throw UsageError("Figueroa planes need an order that is a cube");
  alpha_e_ = f.degree() / 3;
  const std::uint32_t n = plane_.size();

  alpha_pt_.resize(n);
  alpha_ln_.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    alpha_pt_[i] = plane_.point_id(frob(f, plane_.point(i).c, alpha_e_));
    alpha_ln_[i] = plane_.line_id(frob(f, plane_.line(i).c, alpha_e_));
  }

  pt_type_.resize(n);
  ln_type_.resize(n);
  mu_pt_.assign(n, kNone);
  mu_ln_.assign(n, kNone);
  for (std::uint32_t i = 0; i < n; ++i) {
    const PointId a1 = alpha_pt_[i];
    if (a1 == i) {
      pt_type_[i] = 1;
    } else {
      const PointId a2 = alpha_pt_[a1];
      const LineId l = plane_.join(i, a1);
      if (plane_.incident(a2, l)) {
        pt_type_[i] = 2;
      } else {
        pt_type_[i] = 3;
        mu_pt_[i] = plane_.join(a1, a2);
      }
    }
    const LineId b1 = alpha_ln_[i];
    if (b1 == i) {
      ln_type_[i] = 1;
    } else {
      const LineId b2 = alpha_ln_[b1];
      const PointId x = plane_.meet(i, b1);
      if (plane_.incident(x, b2)) {
        ln_type_[i] = 2;
      } else {
        ln_type_[i] = 3;
        mu_ln_[i] = plane_.meet(b1, b2);
      }
    }
  }

  // The line whose mu-image is a given point.
  std::vector<LineId> mu_ln_inv(n, kNone);
  for (LineId l = 0; l < n; ++l) {
    if (mu_ln_[l] == kNone) continue;
    if (mu_ln_inv[mu_ln_[l]] != kNone) throw ConstructionError("mu is not injective on L3");
    mu_ln_inv[mu_ln_[l]] = l;
  }

  // O3 members of each L3 line: P with l^mu on P^mu.
  std::vector<std::vector<PointId>> extra(n);
  std::vector<PointId> pts;
  for (PointId p = 0; p < n; ++p) {
    if (pt_type_[p] != 3) continue;
    plane_.points_on(mu_pt_[p], pts);
    for (PointId m : pts) {
      const LineId l = mu_ln_inv[m];
      if (l != kNone) extra[l].push_back(p);
    }
  }

  line_pts_off_.assign(1, 0);
  for (LineId l = 0; l < n; ++l) {
    plane_.points_on(l, pts);
    const std::size_t start = line_pts_.size();
    for (PointId p : pts) {
      if (ln_type_[l] != 3 || pt_type_[p] != 3) line_pts_.push_back(p);
    }
    if (ln_type_[l] == 3) line_pts_.insert(line_pts_.end(), extra[l].begin(), extra[l].end());
    std::sort(line_pts_.begin() + static_cast<std::ptrdiff_t>(start), line_pts_.end());
    line_pts_off_.push_back(static_cast<std::uint32_t>(line_pts_.size()));
  }
  build_transpose(n, line_pts_off_, line_pts_, point_lns_off_, point_lns_);
}

LineId FigueroaPlane::mu_point(PointId x) const {
  if (pt_type_.at(x) != 3) throw UsageError("mu is defined on O3 points only");
  return mu_pt_[x];
}

PointId FigueroaPlane::mu_line(LineId l) const {
  if (ln_type_.at(l) != 3) throw UsageError("mu is defined on L3 lines only");
  return mu_ln_[l];
}

bool FigueroaPlane::incident(PointId p, LineId l) const {
  if (pt_type_[p] == 3 && ln_type_[l] == 3) return plane_.incident(mu_ln_[l], mu_pt_[p]);
  return plane_.incident(p, l);
}

LineId FigueroaPlane::join(PointId a, PointId b) const {
  if (a == b) throw DomainError("join of a point with itself");
  auto c = first_common(lines_through(a), lines_through(b));
  if (!c) throw ConstructionError("two points without a common Figueroa line");
  return *c;
}

PointId FigueroaPlane::meet(LineId a, LineId b) const {
  if (a == b) throw DomainError("meet of a line with itself");
  auto c = first_common(points_on(a), points_on(b));
  if (!c) throw ConstructionError("two lines without a common Figueroa point");
  return *c;
}

std::map<int, std::uint32_t> FigueroaPlane::point_type_counts() const {
  std::map<int, std::uint32_t> m;
  for (auto t : pt_type_) ++m[t];
  return m;
}

std::map<int, std::uint32_t> FigueroaPlane::line_type_counts() const {
  std::map<int, std::uint32_t> m;
  for (auto t : ln_type_) ++m[t];
  return m;
}

CollineationReport check_collineation(const FigueroaPlane& f) {
  CollineationReport r;
  const std::uint32_t n = f.size();
  r.order_three = true;
  r.mu_involutory = true;
  r.mu_equivariant = true;
  r.types_alpha_invariant = true;
  std::uint32_t fixed = 0;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (f.alpha_point(f.alpha_point(f.alpha_point(i))) != i || f.alpha_line(f.alpha_line(f.alpha_line(i))) != i) {
      r.order_three = false;
    }
    if (f.alpha_point(i) == i) ++fixed;
    if (f.point_type(i) != f.point_type(f.alpha_point(i)) || f.line_type(i) != f.line_type(f.alpha_line(i))) {
      r.types_alpha_invariant = false;
    }
    if (f.point_type(i) == 3) {
      const LineId m = f.mu_point(i);
      if (f.line_type(m) != 3 || f.mu_line(m) != i) r.mu_involutory = false;
      if (f.mu_point(f.alpha_point(i)) != f.alpha_line(m)) r.mu_equivariant = false;
    }
    if (f.line_type(i) == 3) {
      const PointId m = f.mu_line(i);
      if (f.point_type(m) != 3 || f.mu_point(m) != i) r.mu_involutory = false;
      if (f.mu_line(f.alpha_line(i)) != f.alpha_point(m)) r.mu_equivariant = false;
    }
  }
  // n = s^3: the fixed subplane has order s.
  std::uint32_t s = 1;
  while (s * s * s < f.order()) ++s;
  r.subplane_size = s * s * s == f.order() && fixed == s * s + s + 1;
  return r;
}

namespace {

bool pair_counts_once(std::uint32_t n, const std::vector<std::span<const std::uint32_t>>& blocks, std::uint64_t& pairs,
                      std::string& failure, const char* what) {
  const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  std::vector<std::uint8_t> count(total, 0);
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.size(); ++i) {
      const std::uint64_t a = b[i];
      for (std::size_t j = i + 1; j < b.size(); ++j) {
        const std::uint64_t c = b[j];
        auto& slot = count[a * (2 * n - a - 1) / 2 + (c - a - 1)];
        if (slot < 255) ++slot;
      }
    }
  }
  pairs += total;
  for (std::uint64_t k = 0; k < total; ++k) {
    if (count[k] != 1) {
      failure = std::string(what) + " pair covered " + std::to_string(count[k]) + " times";
      return false;
    }
  }
  return true;
}

}  // namespace

AxiomReport verify_axioms_full(const FigueroaPlane& f) {
  AxiomReport r;
  const std::uint32_t n = f.size();
  r.line_sizes_ok = true;
  std::vector<std::span<const std::uint32_t>> lines;
  std::vector<std::span<const std::uint32_t>> pencils;
  for (std::uint32_t i = 0; i < n; ++i) {
    lines.push_back(f.points_on(i));
    pencils.push_back(f.lines_through(i));
    if (lines.back().size() != f.order() + 1 || pencils.back().size() != f.order() + 1) r.line_sizes_ok = false;
  }
  if (!r.line_sizes_ok) {
    r.failure = "a line or pencil has the wrong size";
    return r;
  }
  r.passed = pair_counts_once(n, lines, r.pairs_checked, r.failure, "point") &&
             pair_counts_once(n, pencils, r.pairs_checked, r.failure, "line");
  return r;
}

AxiomReport verify_axioms_sampled(const FigueroaPlane& f, std::uint64_t samples, std::mt19937_64& rng) {
  AxiomReport r;
  const std::uint32_t n = f.size();
  r.line_sizes_ok = true;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (f.points_on(i).size() != f.order() + 1 || f.lines_through(i).size() != f.order() + 1) r.line_sizes_ok = false;
  }
  if (!r.line_sizes_ok) {
    r.failure = "a line or pencil has the wrong size";
    return r;
  }
  std::uniform_int_distribution<std::uint32_t> pick(0, n - 1);
  for (std::uint64_t s = 0; s < samples; ++s) {
    const std::uint32_t a = pick(rng);
    std::uint32_t b = pick(rng);
    while (b == a) b = pick(rng);
    if (common_count(f.lines_through(a), f.lines_through(b)) != 1) {
      r.failure = "points " + std::to_string(a) + " and " + std::to_string(b) + " are not on exactly one line";
      return r;
    }
    if (common_count(f.points_on(a), f.points_on(b)) != 1) {
      r.failure = "lines " + std::to_string(a) + " and " + std::to_string(b) + " do not meet exactly once";
      return r;
    }
    r.pairs_checked += 2;
  }
  r.passed = true;
  return r;
}

bool commutes(const FigueroaPlane& f, const UnitaryPolarity& rho) {
  for (PointId x = 0; x < f.size(); ++x) {
    if (f.alpha_line(rho.polar(x)) != rho.polar(f.alpha_point(x))) return false;
  }
  return true;
}

std::string TypePreservationReport::first_failure() const {
  if (!absolute_alpha_invariant) return "absolute points are not alpha-invariant";
  if (!point_types) return "rho does not send O_i to L_i";
  if (!line_types) return "rho does not send L_i to O_i";
  if (!mu_rho_points) return "mu rho != rho mu on O3";
  if (!mu_rho_lines) return "mu rho != rho mu on L3";
  return {};
}

namespace {

TypePreservationReport type_preservation_impl(const FigueroaPlane& f, const UnitaryPolarity& rho,
                                              const std::vector<std::uint32_t>* sample) {
  TypePreservationReport r;
  const std::uint32_t n = f.size();
  std::vector<LineId> polar(n);
  std::vector<PointId> pole(n);
  std::vector<std::uint8_t> absolute(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    polar[i] = rho.polar(i);
    pole[i] = rho.pole(i);
  }
  for (std::uint32_t i = 0; i < n; ++i) absolute[i] = f.plane().incident(i, polar[i]);

  r.absolute_alpha_invariant = true;
  r.point_types = true;
  r.line_types = true;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (absolute[i] != absolute[f.alpha_point(i)]) r.absolute_alpha_invariant = false;
    if (f.point_type(i) != f.line_type(polar[i])) r.point_types = false;
    if (f.line_type(i) != f.point_type(pole[i])) r.line_types = false;
  }
  r.mu_rho_points = true;
  r.mu_rho_lines = true;
  auto check = [&](std::uint32_t i) {
    if (f.point_type(i) == 3) {
      if (f.line_type(polar[i]) != 3 || pole[f.mu_point(i)] != f.mu_line(polar[i])) r.mu_rho_points = false;
    }
    if (f.line_type(i) == 3) {
      if (f.point_type(pole[i]) != 3 || polar[f.mu_line(i)] != f.mu_point(pole[i])) r.mu_rho_lines = false;
    }
  };
  if (sample) {
    for (std::uint32_t i : *sample) check(i);
  } else {
    for (std::uint32_t i = 0; i < n; ++i) check(i);
  }
  return r;
}

}  // namespace

TypePreservationReport type_preservation_check(const FigueroaPlane& f, const UnitaryPolarity& rho) {
  return type_preservation_impl(f, rho, nullptr);
}

TypePreservationReport type_preservation_check_sampled(const FigueroaPlane& f, const UnitaryPolarity& rho,
                                                       std::uint32_t samples, std::mt19937_64& rng) {
  std::vector<std::uint32_t> o3;
  std::vector<std::uint32_t> l3;
  for (std::uint32_t i = 0; i < f.size(); ++i) {
    if (f.point_type(i) == 3) o3.push_back(i);
    if (f.line_type(i) == 3) l3.push_back(i);
  }
  std::vector<std::uint32_t> pick;
  if (!o3.empty()) {
    std::uniform_int_distribution<std::size_t> d(0, o3.size() - 1);
    for (std::uint32_t s = 0; s < samples; ++s) pick.push_back(o3[d(rng)]);
  }
  if (!l3.empty()) {
    std::uniform_int_distribution<std::size_t> d(0, l3.size() - 1);
    for (std::uint32_t s = 0; s < samples; ++s) pick.push_back(l3[d(rng)]);
  }
  return type_preservation_impl(f, rho, &pick);
}

FigueroaGraph::FigueroaGraph(std::shared_ptr<const FigueroaPlane> plane, UnitaryPolarity rho)
    : plane_(std::move(plane)), rho_(std::move(rho)) {
  if (!plane_->plane().field().same_as(rho_.plane().field())) throw UsageError("polarity and plane use different fields");
  if (!commutes(*plane_, rho_)) throw ConstructionError("the polarity does not commute with alpha");
  const std::uint32_t n = plane_->size();
  polar_.resize(n);
  pole_.resize(n);
  absolute_.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    polar_[i] = rho_.polar(i);
    pole_[i] = rho_.pole(i);
  }
  for (std::uint32_t i = 0; i < n; ++i) absolute_[i] = plane_->incident(i, polar_[i]) ? 1 : 0;
}

void FigueroaGraph::neighbours(PointId x, std::vector<PointId>& out) const {
  const auto pts = plane_->points_on(polar_[x]);
  out.assign(pts.begin(), pts.end());
}

PointId FigueroaGraph::common_neighbour(PointId x, PointId y) const { return plane_->meet(polar_[x], polar_[y]); }

PolarityReport check_rho_f(const FigueroaGraph& gf, const PolarityGraph& g) {
  PolarityReport r;
  const FigueroaPlane& f = gf.figueroa();
  const std::uint32_t n = f.size();
  r.involutory = true;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (gf.pole_point(gf.polar_line(i)) != i || gf.polar_line(gf.pole_point(i)) != i) r.involutory = false;
  }
  // Flags map injectively to flags; equal finite counts give the converse.
  r.incidence_preserving = true;
  for (LineId l = 0; l < n && r.incidence_preserving; ++l) {
    for (PointId p : f.points_on(l)) {
      if (!f.incident(gf.pole_point(l), gf.polar_line(p))) {
        r.incidence_preserving = false;
        break;
      }
    }
  }
  std::vector<PointId> predicted;
  for (PointId x = 0; x < n; ++x) {
    if (gf.is_absolute(x)) ++r.absolute_count;
    if (!g.is_absolute(x)) continue;
    if (f.point_type(x) == 3) {
      predicted.push_back(g.pole_point(f.mu_point(x)));
    } else {
      predicted.push_back(x);
    }
  }
  std::sort(predicted.begin(), predicted.end());
  r.absolute_set_matches = predicted == gf.absolute_points();
  return r;
}

MuJoinReport mu_join_check(const FigueroaPlane& f) {
  MuJoinReport r;
  r.holds = true;
  const Plane& pl = f.plane();
  std::vector<LineId> through;
  std::vector<LineId> l3;
  for (PointId p = 0; p < f.size(); ++p) {
    if (f.point_type(p) != 2) continue;
    pl.lines_through(p, through);
    l3.clear();
    for (LineId l : through) {
      if (f.line_type(l) == 3) l3.push_back(l);
    }
    for (std::size_t i = 0; i < l3.size(); ++i) {
      for (std::size_t j = i + 1; j < l3.size(); ++j) {
        ++r.pairs;
        const PointId a = f.mu_line(l3[i]);
        const PointId b = f.mu_line(l3[j]);
        if (a == b || f.line_type(pl.join(a, b)) != 2) r.holds = false;
      }
    }
  }
  return r;
}

TransferResult z_transfer(const FigueroaGraph& gf, const PolarityGraph& g, const VertexSet& z) {
  if (z.universe() != g.num_points() || g.num_points() != gf.num_points()) {
    throw UsageError("set and planes have different point counts");
  }
  for (PointId x : z) {
    if (g.is_absolute(x)) throw UsageError("transfer needs a set of non-absolute points");
  }
  if (find_triangle(g, z)) throw UsageError("transfer needs a triangle-free set");
  const FigueroaPlane& f = gf.figueroa();
  TransferResult r;
  std::vector<PointId> ids;
  for (PointId x : z) {
    switch (f.point_type(x)) {
      case 1:
        ++r.in_o1;
        ids.push_back(x);
        break;
      case 2:
        ++r.in_o2;
        break;
      default:
        ++r.in_o3;
        ids.push_back(g.pole_point(f.mu_point(x)));
        break;
    }
  }
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) throw ConstructionError("transfer map is not injective");
  r.z_f = VertexSet(g.num_points(), std::move(ids));
  r.non_absolute = std::none_of(r.z_f.begin(), r.z_f.end(), [&](PointId x) { return gf.is_absolute(x); });
  r.triangle_free = r.non_absolute && !find_triangle(gf, r.z_f);
  return r;
}

O2CaseSum o2_case_sum(const FigueroaPlane& f, const PolarityGraph& g, const VertexSet& sigma) {
  const std::uint64_t big = g.q();
  std::uint64_t small = 1;
  while (small * small * small < big) ++small;
  if (small * small * small != big) throw UsageError("the plane order must be q^6");
  const PointId u2 = g.plane().point_id({0, 1, 0});
  O2CaseSum r;
  const std::map<std::string, std::uint64_t> value = {
      {"in_sigma", (big * big - big) / 2 - (small * small - small) / 2},
      {"off", (big * big + big) / 2 - (small * small + small) / 2},
      {"axis", big * big / 2 - small * small / 2},
      {"u2", 0},
  };
  for (LineId l = 0; l < f.size(); ++l) {
    if (f.line_type(l) != 1) continue;
    const PointId x = g.pole_point(l);
    std::string c;
    if (x == u2) {
      c = "u2";
    } else if (sigma.contains(x)) {
      c = "in_sigma";
    } else if (g.plane().point(x).c[0] == 0) {
      c = "axis";
    } else {
      c = "off";
    }
    ++r.lines_per_case[c];
    r.contribution_per_case[c] = static_cast<std::uint32_t>(value.at(c));
    r.predicted += value.at(c);
  }
  for (PointId x : sigma) r.direct += f.point_type(x) == 2 ? 1 : 0;
  return r;
}

TriangleTransferReport self_polar_triangle_transfer_check(const FigueroaGraph& gf, const PolarityGraph& g) {
  const FigueroaPlane& f = gf.figueroa();
  TriangleTransferReport r;
  const auto tr = triangles(g);
  const auto tf = triangles(gf);
  r.rho_triangles = tr.size();
  r.rho_f_triangles = tf.size();
  r.counts_match = tr.size() == tf.size();

  auto is_triangle_f = [&](PointId a, PointId b, PointId c) {
    return a != b && b != c && a != c && !gf.is_absolute(a) && !gf.is_absolute(b) && !gf.is_absolute(c) &&
           gf.adjacent(a, b) && gf.adjacent(b, c) && gf.adjacent(a, c);
  };
  r.mixed_map_identically = true;
  r.o3_map_via_mu = true;
  for (const Triangle& t : tr) {
    int o12 = 0;
    for (PointId x : t) o12 += f.point_type(x) != 3 ? 1 : 0;
    if (o12 >= 2) {
      if (!is_triangle_f(t[0], t[1], t[2])) r.mixed_map_identically = false;
    } else if (o12 == 0) {
      PointId m[3];
      for (int i = 0; i < 3; ++i) m[i] = f.mu_line(g.polar_line(t[i]));
      if (!is_triangle_f(m[0], m[1], m[2])) r.o3_map_via_mu = false;
    }
  }
  r.two_o1_forces_o1 = true;
  r.one_o1_forces_o12 = true;
  for (const auto* list : {&tr, &tf}) {
    for (const Triangle& t : *list) {
      int o1 = 0;
      int o3 = 0;
      for (PointId x : t) {
        o1 += f.point_type(x) == 1 ? 1 : 0;
        o3 += f.point_type(x) == 3 ? 1 : 0;
      }
      if (o1 >= 2 && o1 != 3) r.two_o1_forces_o1 = false;
      if (o1 >= 1 && o3 > 0) r.one_o1_forces_o12 = false;
    }
  }
  return r;
}

FigueroaInstance make_figueroa_instance(std::uint32_t base_q) {
  const auto [p, h] = prime_power(base_q);
  if (p == 0) throw UsageError("base q must be a prime power");
  FigueroaInstance inst;
  inst.field = Field::create(p, 6 * h);
  Plane plane(inst.field);
  inst.desarguesian = std::make_shared<PolarityGraph>(UnitaryPolarity(plane));
  inst.plane = std::make_shared<const FigueroaPlane>(plane);
  inst.graph = std::make_shared<FigueroaGraph>(inst.plane, UnitaryPolarity(plane));
  return inst;
}

}  // namespace plab
