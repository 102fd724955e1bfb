#include <gtest/gtest.h>

#include <random>
#include <set>

#include "plab/constructions.hpp"
#include "plab/errors.hpp"
#include "plab/figueroa.hpp"

using namespace plab;

namespace {

const FigueroaInstance& instance() {
  static const FigueroaInstance inst = make_figueroa_instance(2);
  return inst;
}

Point frob(const Plane& pl, const Point& p, std::uint32_t e) {
  const auto& f = pl.field();
  return Point{{f.frobenius(p.c[0], e), f.frobenius(p.c[1], e), f.frobenius(p.c[2], e)}};
}

// Type of a point from the definition: fixed, collinear orbit, or triangle.
int classify(const Plane& pl, PointId x, std::uint32_t e) {
  const Point p = pl.point(x);
  const Point a = frob(pl, p, e);
  if (a == p) return 1;
  const Point b = frob(pl, a, e);
  return pl.incident(b, pl.join(p, a)) ? 2 : 3;
}

bool independent_incidence(const Plane& pl, std::uint32_t e, PointId p, LineId l) {
  const auto& f = pl.field();
  const Point pt = pl.point(p);
  const Line ln = pl.line(l);
  if (classify(pl, p, e) != 3) return pl.incident(pt, ln);
  const Line la{{f.frobenius(ln.c[0], e), f.frobenius(ln.c[1], e), f.frobenius(ln.c[2], e)}};
  if (la == ln) return pl.incident(pt, ln);
  const Line lb{{f.frobenius(la.c[0], e), f.frobenius(la.c[1], e), f.frobenius(la.c[2], e)}};
  const Point m = pl.meet(la, lb);
  if (pl.incident(m, ln)) return pl.incident(pt, ln);  // L2
  const Point a = frob(pl, pt, e);
  const Line pmu = pl.join(a, frob(pl, a, e));
  return pl.incident(pl.meet(la, lb), pmu);
}

Mat3 non_commuting_form(const Field& f) {
  // a diagonal entry in F_8 but outside F_4: Hermitian for x -> x^8, not
  // fixed by x -> x^4
  for (Elem w : f.subfield_elements(3)) {
    if (!f.in_subfield(w, 2)) return {Triple{0, 1, 0}, Triple{1, 0, 0}, Triple{0, 0, w}};
  }
  return {};
}

}  // namespace

TEST(Figueroa, TypeCounts) {
  const auto& fp = *instance().plane;
  const auto& pl = fp.plane();
  EXPECT_EQ(fp.order(), 64u);
  EXPECT_EQ(fp.alpha_exponent(), 2u);
  std::map<int, std::uint32_t> direct;
  for (PointId x = 0; x < pl.size(); ++x) {
    const int t = classify(pl, x, fp.alpha_exponent());
    ASSERT_EQ(fp.point_type(x), t);
    ++direct[t];
  }
  EXPECT_EQ(direct[1], 21u);
  EXPECT_EQ(direct[1] + direct[2] + direct[3], 4161u);
  EXPECT_EQ(fp.point_type_counts(), direct);
  EXPECT_EQ(fp.line_type_counts(), direct);
  // subplane points have coordinates in F_4
  for (PointId x = 0; x < pl.size(); ++x) {
    bool sub = true;
    for (Elem c : pl.point(x).c) sub = sub && pl.field().in_subfield(c, 2);
    ASSERT_EQ(sub, fp.point_type(x) == 1);
  }
}

TEST(Figueroa, Collineation) {
  const auto& fp = *instance().plane;
  const auto r = check_collineation(fp);
  EXPECT_TRUE(r.order_three);
  EXPECT_TRUE(r.subplane_size);
  EXPECT_TRUE(r.mu_involutory);
  EXPECT_TRUE(r.mu_equivariant);
  EXPECT_TRUE(r.types_alpha_invariant);
  for (PointId x = 0; x < fp.size(); ++x) {
    ASSERT_EQ(fp.alpha_point(fp.alpha_point(fp.alpha_point(x))), x);
    ASSERT_EQ(fp.point_type(fp.alpha_point(x)), fp.point_type(x));
  }
}

TEST(Figueroa, MuMaps) {
  const auto& fp = *instance().plane;
  const auto& pl = fp.plane();
  for (PointId x = 0; x < fp.size(); ++x) {
    if (fp.point_type(x) != 3) {
      EXPECT_THROW(fp.mu_point(x), UsageError);
      continue;
    }
    const PointId a = fp.alpha_point(x);
    const PointId b = fp.alpha_point(a);
    const LineId l = fp.mu_point(x);
    ASSERT_EQ(l, pl.join(a, b));
    ASSERT_EQ(fp.line_type(l), 3);
    ASSERT_EQ(fp.mu_line(l), x);
    ASSERT_EQ(fp.mu_point(a), fp.alpha_line(l));
  }
  for (LineId l = 0; l < fp.size(); ++l) {
    if (fp.line_type(l) != 3) continue;
    ASSERT_EQ(fp.mu_point(fp.mu_line(l)), l);
  }
}

TEST(Figueroa, IncidenceMatchesRule) {
  const auto& fp = *instance().plane;
  const auto& pl = fp.plane();
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::uint32_t> pick(0, fp.size() - 1);
  std::size_t twisted = 0;
  for (int s = 0; s < 40000; ++s) {
    const PointId p = pick(rng);
    const LineId l = pick(rng);
    ASSERT_EQ(fp.incident(p, l), independent_incidence(pl, fp.alpha_exponent(), p, l));
    twisted += fp.point_type(p) == 3 && fp.line_type(l) == 3;
  }
  EXPECT_GT(twisted, 0u);
  // O1 points keep classical incidence with every line
  for (PointId p = 0; p < fp.size(); ++p) {
    if (fp.point_type(p) != 1) continue;
    for (LineId l = 0; l < fp.size(); l += 7) ASSERT_EQ(fp.incident(p, l), pl.incident(p, l));
  }
}

TEST(Figueroa, LineSizesAndStorage) {
  const auto& fp = *instance().plane;
  for (LineId l = 0; l < fp.size(); ++l) {
    const auto pts = fp.points_on(l);
    ASSERT_EQ(pts.size(), 65u);
    for (PointId p : pts) ASSERT_TRUE(fp.incident(p, l));
    ASSERT_EQ(fp.lines_through(l).size(), 65u);
  }
}

TEST(Figueroa, AxiomsFull) {
  const auto r = verify_axioms_full(*instance().plane);
  EXPECT_TRUE(r.passed) << r.failure;
  EXPECT_TRUE(r.line_sizes_ok);
  EXPECT_EQ(r.pairs_checked, 2ull * 4161 * 4160 / 2);
}

TEST(Figueroa, AxiomsSampledAndJoins) {
  const auto& fp = *instance().plane;
  std::mt19937_64 rng(17);
  const auto r = verify_axioms_sampled(fp, 5000, rng);
  EXPECT_TRUE(r.passed) << r.failure;
  std::uniform_int_distribution<std::uint32_t> pick(0, fp.size() - 1);
  for (int s = 0; s < 2000; ++s) {
    const PointId a = pick(rng);
    const PointId b = pick(rng);
    if (a == b) continue;
    const LineId l = fp.join(a, b);
    ASSERT_TRUE(fp.incident(a, l));
    ASSERT_TRUE(fp.incident(b, l));
    const PointId m = fp.meet(a, b);
    ASSERT_TRUE(fp.incident(m, a));
    ASSERT_TRUE(fp.incident(m, b));
  }
  EXPECT_THROW(fp.join(5, 5), DomainError);
}

TEST(Figueroa, TypePreservation) {
  const auto& inst = instance();
  const auto& rho = inst.desarguesian->polarity();
  EXPECT_TRUE(commutes(*inst.plane, rho));
  const auto r = type_preservation_check(*inst.plane, rho);
  EXPECT_TRUE(r.ok()) << r.first_failure();
  EXPECT_TRUE(r.first_failure().empty());
  std::mt19937_64 rng(1);
  EXPECT_TRUE(type_preservation_check_sampled(*inst.plane, rho, 100, rng).ok());
}

TEST(Figueroa, NonCommutingPolarityRejected) {
  const auto& inst = instance();
  const Mat3 m = non_commuting_form(*inst.field);
  ASSERT_NE(m[2][2], 0u);
  UnitaryPolarity bad(inst.plane->plane(), m);
  EXPECT_FALSE(commutes(*inst.plane, bad));
  const auto r = type_preservation_check(*inst.plane, bad);
  EXPECT_FALSE(r.absolute_alpha_invariant);
  EXPECT_EQ(r.first_failure(), "absolute points are not alpha-invariant");
  EXPECT_THROW(FigueroaGraph(inst.plane, bad), ConstructionError);
}

TEST(Figueroa, RhoF) {
  const auto& inst = instance();
  const auto& gf = *inst.graph;
  const auto r = check_rho_f(gf, *inst.desarguesian);
  EXPECT_TRUE(r.involutory);
  EXPECT_TRUE(r.incidence_preserving);
  EXPECT_TRUE(r.absolute_set_matches);
  EXPECT_EQ(r.absolute_count, 513u);
  // absolute points recounted from the Figueroa incidence
  std::uint32_t count = 0;
  for (PointId x = 0; x < gf.num_points(); ++x) {
    const bool a = inst.plane->incident(x, gf.polar_line(x));
    ASSERT_EQ(a, gf.is_absolute(x));
    count += a;
  }
  EXPECT_EQ(count, 8u * 8 * 8 + 1);
  // O1 and O2 points keep their classical polar lines
  for (PointId x = 0; x < gf.num_points(); ++x) {
    if (inst.plane->point_type(x) != 3) ASSERT_EQ(gf.polar_line(x), inst.desarguesian->polar_line(x));
  }
}

TEST(Figueroa, MuImagesJoinedByL2Line) {
  const auto r = mu_join_check(*instance().plane);
  EXPECT_TRUE(r.holds);
  EXPECT_GT(r.pairs, 0u);
}

TEST(Figueroa, SelfPolarTrianglesCorrespond) {
  const auto& inst = instance();
  const auto r = self_polar_triangle_transfer_check(*inst.graph, *inst.desarguesian);
  EXPECT_EQ(r.rho_triangles, 34048u);
  EXPECT_EQ(r.rho_triangles, expected_triangle_count(8));
  EXPECT_EQ(r.rho_f_triangles, 34048u);
  EXPECT_TRUE(r.ok());
}

TEST(Figueroa, ZTransferOrder64Instance) {
  const auto& inst = instance();
  const auto& g = *inst.desarguesian;
  const auto sigma = build_sigma(g, good_set_even(g));
  ASSERT_EQ(sigma.points.size(), 2048u);
  const auto t = z_transfer(*inst.graph, g, sigma.points);
  const std::uint64_t q = 2;
  const std::uint64_t q4 = q * q * q * q;
  EXPECT_EQ(t.z_f.size(), (q4 * q4 * q4 - q4 * (q4 - 1) * (q * q + 1)) / 2);
  EXPECT_EQ(t.z_f.size(), 1448u);
  EXPECT_EQ(t.in_o2, 600u);
  EXPECT_EQ(t.z_f.size(), sigma.points.size() - t.in_o2);
  EXPECT_TRUE(t.non_absolute);
  EXPECT_TRUE(t.triangle_free);

  // triangle-freeness again, from raw Figueroa adjacency only
  const auto& gf = *inst.graph;
  const auto& ids = t.z_f.ids();
  std::vector<std::vector<std::uint32_t>> nb(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    ASSERT_FALSE(inst.plane->incident(ids[i], gf.polar_line(ids[i])));
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      if (inst.plane->incident(ids[j], gf.polar_line(ids[i]))) {
        nb[i].push_back(j);
        nb[j].push_back(i);
      }
    }
  }
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (auto j : nb[i]) {
      std::vector<std::uint32_t> both;
      std::set_intersection(nb[i].begin(), nb[i].end(), nb[j].begin(), nb[j].end(), std::back_inserter(both));
      ASSERT_TRUE(both.empty());
    }
  }

  const auto cs = o2_case_sum(*inst.plane, g, sigma.points);
  EXPECT_EQ(cs.direct, 600u);
  EXPECT_EQ(cs.predicted, 600u);
  // 8 * 27 + 8 * 33 + 4 * 30 + 0
  EXPECT_EQ(8 * 27 + 8 * 33 + 4 * 30, 600);
  std::uint64_t sum = 0;
  for (const auto& [name, n] : cs.lines_per_case) sum += std::uint64_t(n) * cs.contribution_per_case.at(name);
  EXPECT_EQ(sum, cs.predicted);
}

TEST(Figueroa, ZTransferEdgeCases) {
  const auto& inst = instance();
  const auto& g = *inst.desarguesian;
  const auto empty = z_transfer(*inst.graph, g, VertexSet(g.num_points()));
  EXPECT_TRUE(empty.z_f.empty());
  EXPECT_THROW(z_transfer(*inst.graph, g, absolute_set(g)), UsageError);
  const auto t = triangles(g).front();
  EXPECT_THROW(z_transfer(*inst.graph, g, VertexSet(g.num_points(), {t[0], t[1], t[2]})), UsageError);
}

TEST(Figueroa, RequiresCubeDegree) {
  EXPECT_THROW(FigueroaPlane(Plane(Field::of_order(16))), UsageError);
  FigueroaPlane small(Plane(Field::of_order(8)));
  EXPECT_EQ(small.point_type_counts().at(1), 7u);
  EXPECT_TRUE(verify_axioms_full(small).passed);
}
