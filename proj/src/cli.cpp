#include "plab/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "plab/constructions.hpp"
#include "plab/errors.hpp"
#include "plab/figueroa.hpp"
#include "plab/search.hpp"
#include "plab/setfile.hpp"
#include "plab/spectral.hpp"

namespace plab::cli {

using Json = nlohmann::ordered_json;

namespace {

struct RunConfig {
  std::uint32_t q = 0;
  std::string field;  // optional override "p^h/irr=<enc>" for GF(q^2)
  std::uint32_t base_q = 2;
  std::string set_path;
  std::string out_path;
  std::string checks = "triangle-free,regularity,spectrum,parity,maximal,girth";
  std::optional<std::uint32_t> hyperplane;
  bool odd = false;
  bool exact = false;
  bool heuristic = false;
  bool perturb = false;
  bool full = false;
  std::uint64_t sample = 0;
  double time_limit = 0;
  std::uint64_t seed = 1;
  std::uint64_t samples = 1000;
  std::uint32_t threads = 1;
  std::string q_list = "2,3,4";
  bool include_figueroa = false;
};

class VerificationFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::shared_ptr<const Field> field_for(const RunConfig& cfg) {
  if (!cfg.field.empty()) {
    auto f = Field::parse(cfg.field);
    if (cfg.q != 0 && f->size() != static_cast<std::uint64_t>(cfg.q) * cfg.q) {
      throw UsageError("field " + cfg.field + " does not have order q^2 = " + std::to_string(cfg.q * cfg.q));
    }
    if (f->degree() % 2 != 0) throw UsageError("the field must have square order");
    return f;
  }
  if (cfg.q < 2) throw UsageError("--q is required (a prime power >= 2)");
  const auto [p, h] = prime_power(cfg.q);
  if (p == 0) throw UsageError(std::to_string(cfg.q) + " is not a prime power");
  return Field::create(p, 2 * h);
}

PolarityGraph make_graph(const RunConfig& cfg) { return PolarityGraph(UnitaryPolarity(Plane(field_for(cfg)))); }

Json elems(const std::vector<Elem>& v) {
  Json a = Json::array();
  for (Elem x : v) a.push_back(x);
  return a;
}

template <typename K, typename V>
Json hist(const std::map<K, V>& m) {
  Json o = Json::object();
  for (const auto& [k, v] : m) o[std::to_string(k)] = v;
  return o;
}

Json point_list(const Plane& pl, std::span<const PointId> ids) {
  Json a = Json::array();
  for (PointId x : ids) a.push_back(pl.format(pl.point(x)));
  return a;
}

std::int64_t iq(const PolarityGraph& g) { return g.q(); }

// ---- graph ---------------------------------------------------------------

Json graph_stats(const PolarityGraph& g) {
  const std::int64_t q = iq(g);
  const auto abs = g.absolute_points();
  const auto tri = triangles(g);
  std::map<std::uint32_t, std::uint64_t> degrees;
  std::vector<PointId> nb;
  for (PointId x = 0; x < g.num_points(); ++x) {
    if (g.is_absolute(x)) continue;
    g.neighbours(x, nb);
    std::uint32_t d = 0;
    for (PointId y : nb) d += g.is_absolute(y) ? 0 : 1;
    ++degrees[d];
  }
  Json j;
  j["q"] = q;
  j["field"] = g.plane().field().description();
  j["vertices"] = g.num_points();
  j["absolute"] = abs.size();
  j["non_absolute"] = g.num_points() - abs.size();
  j["triangles"] = tri.size();
  j["gamma_degrees"] = hist(degrees);
  const bool regular = degrees.size() == 1 && degrees.begin()->first == q * q - q;
  j["gamma_regular"] = regular;
  j["regularity"] = {{"degree", regular ? degrees.begin()->first : 0}, {"regular", regular}};
  j["expected"] = {{"absolute", expected_absolute_count(q)},
                   {"triangles", expected_triangle_count(q)},
                   {"gamma_vertices", q * q * q * q - q * q * q + q * q},
                   {"gamma_degree", q * q - q}};
  j["counts_match"] = abs.size() == expected_absolute_count(q) && tri.size() == expected_triangle_count(q) &&
                      static_cast<std::int64_t>(g.num_points() - abs.size()) == q * q * q * q - q * q * q + q * q &&
                      regular;
  return j;
}

VertexSet load_set(const RunConfig& cfg, const Plane& plane, PlaneKind* kind = nullptr) {
  if (cfg.set_path.empty()) throw UsageError("--set is required");
  const SetFile f = read_set_file(cfg.set_path);
  if (kind) *kind = f.plane;
  return to_vertex_set(f, plane);
}

Json check_set(const PolarityOracle& g, const VertexSet& s, const Plane& plane) {
  Json j;
  j["size"] = s.size();
  const bool abs_free = std::none_of(s.begin(), s.end(), [&](PointId x) { return g.is_absolute(x); });
  j["absolute_free"] = abs_free;
  if (!abs_free) {
    j["triangle_free"] = false;
    return j;
  }
  const auto t = find_triangle(g, s);
  j["triangle_free"] = !t;
  if (t) j["witness"] = point_list(plane, *t);
  j["twice_edges"] = e_count(g, s, s);
  const auto& deg = s.degrees(g);
  if (!deg.empty()) {
    j["degrees_min"] = *std::min_element(deg.begin(), deg.end());
    j["degrees_max"] = *std::max_element(deg.begin(), deg.end());
  }
  j["line_spectrum"] = hist(histogram(s.pole_counts(g)));
  const std::int64_t q = std::llround(std::sqrt(static_cast<double>(g.order())));
  j["bound"] = upper_bound(q);
  j["within_bound"] = static_cast<std::int64_t>(s.size()) <= upper_bound(q);
  if (!t) {
    const auto ext = extendable_vertex(g, s);
    j["maximal"] = !ext;
    if (ext) j["extendable"] = plane.format(plane.point(*ext));
  }
  return j;
}

// ---- spectrum ------------------------------------------------------------

Json rational_matrix(const RationalMatrix& m) {
  Json a = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(x.str());
    a.push_back(r);
  }
  return a;
}

Json rationals(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

bool quotient_matches(std::int64_t q, const std::vector<Rational>& poly) {
  // (x - q^2 - 1)(x + q)^2
  const Rational a(q * q + 1);
  const Rational b(q);
  const std::vector<Rational> want = {-(a * b * b), b * b - Rational(2) * a * b, Rational(2) * b - a, Rational(1)};
  return poly == want;
}

Json spectrum_report(const PolarityGraph& g, bool perturb, bool& ok) {
  const std::int64_t q = iq(g);
  SpectrumClaim claim = unitary_spectrum_claim(q);
  if (perturb) {
    claim.entries[1].multiplicity += 1;
    claim.entries[2].multiplicity -= 1;
  }
  const auto a = adjacency_matrix(g);
  const auto v = verify_spectrum(a, claim);
  Json j;
  j["q"] = q;
  j["dimension"] = a.dim();
  Json c = Json::array();
  for (const auto& e : claim.entries) c.push_back({{"eigenvalue", e.eigenvalue.str()}, {"multiplicity", e.multiplicity}});
  j["claim"] = c;
  Json ev = Json::array();
  Json mult = Json::array();
  for (const auto& e : claim.entries) {
    ev.push_back(e.eigenvalue.str());
    mult.push_back(e.multiplicity);
  }
  j["eigenvalues"] = ev;
  j["multiplicities"] = mult;
  j["perturbed"] = perturb;
  j["verified"] = v.verified;
  j["annihilated"] = v.annihilated;
  j["dimension_matches"] = v.dimension_matches;
  j["trace_matches"] = v.trace_matches;
  j["trace_sq_matches"] = v.trace_sq_matches;
  if (!v.failure.empty()) j["failure"] = v.failure;
  const auto b = extremal_quotient_matrix(q);
  const auto poly = characteristic_polynomial_3x3(b);
  const auto roots = eigenvalues_3x3(b);
  const bool qm = quotient_matches(q, poly);
  j["quotient"] = {{"matrix", rational_matrix(b)},
                   {"characteristic_polynomial", rationals(poly)},
                   {"roots", rationals(roots.roots)},
                   {"exact", roots.exact},
                   {"matches", qm}};
  ok = v.verified && qm;
  return j;
}

// ---- eml -----------------------------------------------------------------

Json eml_report(const PolarityGraph& g, std::uint64_t samples, std::uint64_t seed, bool& ok) {
  const auto gamma = g.non_absolute_points();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> size_d(1, gamma.size());
  ok = true;
  std::optional<Rational> min_slack;
  Json worst;
  std::vector<PointId> pool = gamma;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const std::size_t k = size_d(rng);
    std::shuffle(pool.begin(), pool.end(), rng);
    VertexSet s(g.num_points(), std::vector<PointId>(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k)));
    const EmlGap gap = eml_gap(g, s);
    if (!gap.holds()) ok = false;
    const Rational slack = gap.rhs - gap.lhs;
    if (!min_slack || slack < *min_slack) {
      min_slack = slack;
      worst = {{"size", k}, {"lhs", gap.lhs.str()}, {"rhs", gap.rhs.str()}};
    }
  }
  Json j;
  j["q"] = iq(g);
  j["samples"] = samples;
  j["seed"] = seed;
  j["all_hold"] = ok;
  if (min_slack) {
    j["min_slack"] = min_slack->str();
    j["tightest"] = worst;
  }
  return j;
}

// ---- goodset / sigma -----------------------------------------------------

const char* kind_name(GoodSetKind k) {
  switch (k) {
    case GoodSetKind::EvenHyperplane:
      return "even-hyperplane";
    case GoodSetKind::OddCoset:
      return "odd-coset";
    default:
      return "explicit";
  }
}

GoodSet default_good_set(const PolarityGraph& g, const RunConfig& cfg) {
  const bool even = g.plane().field().characteristic() == 2;
  if (cfg.odd && even) throw UsageError("--odd needs q odd");
  if (even) return good_set_even(g, cfg.hyperplane);
  if (cfg.hyperplane) throw UsageError("--hyperplane applies to q even only");
  return good_set_odd(g);
}

Json goodset_json(const PolarityGraph& g, const GoodSet& s) {
  Json j;
  j["q"] = iq(g);
  j["kind"] = kind_name(s.kind);
  j["lambda"] = elems(s.lambda);
  j["size"] = s.lambda.size();
  if (s.hyperplane) j["hyperplane"] = *s.hyperplane;
  j["good"] = is_good(g, s.lambda);
  return j;
}

SigmaSet sigma_from_set(const PolarityGraph& g, const VertexSet& s) {
  std::vector<Elem> lambda;
  for (PointId x : s) {
    auto l = pencil_parameter(g, x);
    if (!l) throw UsageError("point " + g.plane().format(g.plane().point(x)) + " lies on X = 0");
    lambda.push_back(*l);
  }
  std::sort(lambda.begin(), lambda.end());
  lambda.erase(std::unique(lambda.begin(), lambda.end()), lambda.end());
  return {s, lambda, u2_point(g)};
}

Json sigma_verify(const PolarityGraph& g, const SigmaSet& sigma, const std::string& checks, bool& ok) {
  ok = true;
  Json j;
  j["q"] = iq(g);
  j["size"] = sigma.points.size();
  j["lambda"] = elems(sigma.lambda);
  std::stringstream ss(checks);
  std::string item;
  const bool even_half = g.plane().field().characteristic() == 2 && sigma.lambda.size() == g.q() / 2;
  bool triangle_free = false;
  Json results = Json::object();
  std::vector<std::string> names;
  while (std::getline(ss, item, ',')) names.push_back(item);
  for (const auto& name : names) {
    if (name == "triangle-free") {
      const auto t = find_triangle(g, sigma.points);
      triangle_free = !t;
      results[name] = {{"pass", !t}};
      if (t) results[name]["triangle"] = point_list(g.plane(), *t);
      ok = ok && !t;
    } else if (name == "regularity") {
      const auto r = verify_regularity(g, sigma);
      const bool pass = !even_half || (r.regular && r.one_neighbour_on_own_curve);
      results[name] = {{"pass", pass},
                       {"expected_degree", r.expected_degree},
                       {"degree_histogram", hist(r.degree_histogram)},
                       {"one_neighbour_on_own_curve", r.one_neighbour_on_own_curve},
                       {"applies", even_half}};
      ok = ok && pass;
    } else if (name == "spectrum") {
      const auto sp = intersection_spectrum(g, sigma.points);
      Json r = {{"histogram", hist(sp.histogram)}, {"applies", even_half}};
      bool pass = true;
      if (even_half) {
        const auto bad = sigma_line_case_violation(g, sigma);
        pass = !bad;
        if (bad) r["violating_pole"] = g.plane().format(g.plane().point(*bad));
      }
      r["pass"] = pass;
      results[name] = r;
      ok = ok && pass;
    } else if (name == "parity") {
      const auto p = triangle_parity_check(g, sigma.points);
      const bool pass = !even_half || p.holds;
      results[name] = {{"pass", pass}, {"histogram", hist(p.histogram)}, {"applies", even_half}};
      ok = ok && pass;
    } else if (name == "maximal") {
      if (!triangle_free && find_triangle(g, sigma.points)) {
        results[name] = {{"pass", false}, {"reason", "set is not triangle-free"}};
        ok = false;
        continue;
      }
      const auto m = maximality_check(g, sigma.points);
      const bool pass = !even_half || m.maximal;
      results[name] = {{"pass", pass}, {"maximal", m.maximal}, {"applies", even_half}};
      if (m.extendable) results[name]["extendable"] = g.plane().format(g.plane().point(*m.extendable));
      ok = ok && pass;
    } else if (name == "girth") {
      const auto gi = set_girth(g, sigma.points);
      Json r;
      if (gi) {
        r["girth"] = *gi;
      } else {
        r["girth"] = "acyclic";
      }
      r["pass"] = true;
      results[name] = r;
    } else {
      throw UsageError("unknown check '" + name + "'");
    }
  }
  j["checks"] = results;
  j["passed"] = ok;
  return j;
}

// ---- search --------------------------------------------------------------

Json search_report(const PolarityGraph& g, const RunConfig& cfg, bool& ok) {
  if (cfg.exact && cfg.heuristic) throw UsageError("--exact and --heuristic are exclusive");
  SearchOptions opt;
  const bool exact = cfg.exact || (!cfg.heuristic && g.q() <= 3);
  opt.mode = exact ? SearchMode::Exact : SearchMode::Heuristic;
  opt.time_limit_seconds = cfg.time_limit;
  opt.seed = cfg.seed;
  const auto r = max_triangle_free(g, opt);
  const bool witness_ok = is_triangle_free(g, r.witness) && r.witness.size() == r.max;
  ok = witness_ok && static_cast<std::int64_t>(r.max) <= r.bound;
  Json j;
  j["q"] = iq(g);
  j["mode"] = exact ? "exact" : "heuristic";
  j["max"] = r.max;
  j["optimal"] = r.optimal;
  j["timed_out"] = r.timed_out;
  j["bound"] = r.bound;
  j["strictly_below_bound"] = static_cast<std::int64_t>(r.max) < r.bound;
  j["witness_triangle_free"] = witness_ok;
  j["nodes"] = r.nodes;
  if (!cfg.out_path.empty()) {
    write_set_file(cfg.out_path, g.plane(), r.witness);
    j["witness_file"] = cfg.out_path;
  } else {
    j["witness_file"] = nullptr;
  }
  return j;
}

// ---- figueroa ------------------------------------------------------------

Json figueroa_build(const FigueroaInstance& inst, bool& ok) {
  const FigueroaPlane& f = *inst.plane;
  Json j;
  j["base_q"] = std::llround(std::cbrt(static_cast<double>(inst.desarguesian->q())));
  j["order"] = f.order();
  j["points"] = f.size();
  j["field"] = inst.field->description();
  j["point_types"] = hist(f.point_type_counts());
  j["line_types"] = hist(f.line_type_counts());
  const auto c = check_collineation(f);
  j["collineation"] = {{"order_three", c.order_three},
                       {"subplane_size", c.subplane_size},
                       {"mu_involutory", c.mu_involutory},
                       {"mu_equivariant", c.mu_equivariant},
                       {"types_alpha_invariant", c.types_alpha_invariant}};
  const auto t = type_preservation_check(f, inst.desarguesian->polarity());
  j["type_preservation"] = {{"absolute_alpha_invariant", t.absolute_alpha_invariant},
                            {"point_types", t.point_types},
                            {"line_types", t.line_types},
                            {"mu_rho_points", t.mu_rho_points},
                            {"mu_rho_lines", t.mu_rho_lines}};
  const auto r = check_rho_f(*inst.graph, *inst.desarguesian);
  j["rho_f"] = {{"involutory", r.involutory},
                {"incidence_preserving", r.incidence_preserving},
                {"absolute", r.absolute_count},
                {"absolute_set_matches", r.absolute_set_matches}};
  ok = c.ok() && t.ok() && r.involutory && r.incidence_preserving && r.absolute_set_matches &&
       r.absolute_count == inst.desarguesian->absolute_points().size();
  j["passed"] = ok;
  return j;
}

VertexSet default_sigma(const PolarityGraph& g) { return build_sigma(g, good_set_even(g)).points; }

Json figueroa_transfer(const FigueroaInstance& inst, const VertexSet& z, const std::string& out, bool& ok) {
  const auto r = z_transfer(*inst.graph, *inst.desarguesian, z);
  Json j;
  j["input_size"] = z.size();
  j["size"] = r.z_f.size();
  j["in_o1"] = r.in_o1;
  j["in_o2"] = r.in_o2;
  j["in_o3"] = r.in_o3;
  j["non_absolute"] = r.non_absolute;
  j["triangle_free"] = r.triangle_free;
  j["size_identity"] = r.z_f.size() == z.size() - r.in_o2;
  ok = r.non_absolute && r.triangle_free && r.z_f.size() == z.size() - r.in_o2;
  if (!out.empty()) {
    write_set_file(out, inst.plane->plane(), r.z_f, PlaneKind::Figueroa);
    j["out"] = out;
  }
  return j;
}

Json axioms_json(const AxiomReport& a) {
  Json j = {{"passed", a.passed}, {"pairs_checked", a.pairs_checked}, {"line_sizes_ok", a.line_sizes_ok}};
  if (!a.failure.empty()) j["failure"] = a.failure;
  return j;
}

// ---- suite ---------------------------------------------------------------

class Suite {
 public:
  void item(const std::string& name, std::int64_t q, const std::function<bool(Json&)>& body) {
    const auto start = std::chrono::steady_clock::now();
    Json detail = Json::object();
    bool pass = false;
    try {
      pass = body(detail);
    } catch (const std::exception& e) {
      detail["error"] = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    Json it = {{"name", name}, {"q", q}, {"pass", pass}, {"seconds", secs}, {"detail", detail}};
    items_.push_back(it);
    all_ = all_ && pass;
  }
  Json report() const { return {{"items", items_}, {"passed", all_}}; }
  bool passed() const { return all_; }

 private:
  Json items_ = Json::array();
  bool all_ = true;
};

Json run_suite(const RunConfig& cfg, bool& ok) {
  std::vector<std::uint32_t> qs;
  std::stringstream ss(cfg.q_list);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      qs.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
    } catch (const std::exception&) {
      throw UsageError("bad --q-list entry '" + tok + "'");
    }
    if (prime_power(qs.back()).first == 0 || qs.back() > 16) throw UsageError("--q-list entries must be prime powers <= 16");
  }
  Suite s;
  for (std::uint32_t q : qs) {
    RunConfig c;
    c.q = q;
    const PolarityGraph g = make_graph(c);
    const bool even = g.plane().field().characteristic() == 2;
    s.item("counts", q, [&](Json& d) {
      d = graph_stats(g);
      return d["counts_match"].get<bool>();
    });
    if (g.num_points() <= 1000) {
      s.item("spectrum", q, [&](Json& d) {
        bool good = false;
        d = spectrum_report(g, false, good);
        return good;
      });
      s.item("spectrum_perturbed_rejected", q, [&](Json& d) {
        bool good = true;
        d = spectrum_report(g, true, good);
        return !d["verified"].get<bool>();
      });
    }
    s.item("quotient", q, [&](Json& d) {
      const auto poly = characteristic_polynomial_3x3(extremal_quotient_matrix(q));
      d["characteristic_polynomial"] = rationals(poly);
      return quotient_matches(q, poly);
    });
    if (g.num_points() <= 1000) {
      s.item("eml", q, [&](Json& d) {
        bool good = false;
        d = eml_report(g, 200, 1, good);
        return good;
      });
    }
    if (even) {
      s.item("sigma", q, [&](Json& d) {
        const SigmaSet sigma = build_sigma(g, good_set_even(g));
        bool good = false;
        d = sigma_verify(g, sigma, "triangle-free,regularity,spectrum,parity,maximal", good);
        return good && sigma.points.size() == static_cast<std::size_t>(q) * q * q * q / 2;
      });
      s.item("negative_parity", q, [&](Json& d) {
        SigmaSet sigma = build_sigma(g, good_set_even(g));
        const PointId out = sigma.points.ids().front();
        PointId in = 0;
        while (g.is_absolute(in) || sigma.points.contains(in)) ++in;
        sigma.points.erase(out);
        sigma.points.insert(in);
        const auto p = triangle_parity_check(g, sigma.points);
        d["histogram"] = hist(p.histogram);
        return !p.holds;
      });
      if (q >= 4 && q <= 16) {
        s.item("girth5", q, [&](Json& d) {
          const auto r = girth5_search(g);
          Json a = Json::array();
          for (const auto& at : r.attempts) {
            a.push_back({{"hyperplane", at.hyperplane}, {"girth", at.girth ? Json(*at.girth) : Json("acyclic")}});
          }
          d["attempts"] = a;
          return r.found;
        });
      }
    } else {
      if (g.plane().field().characteristic() != 3) {
        s.item("odd_sigma", q, [&](Json& d) {
          const GoodSet gs = good_set_odd(g);
          const SigmaSet sigma = build_sigma(g, gs);
          d = goodset_json(g, gs);
          d["sigma_size"] = sigma.points.size();
          const bool tf = is_triangle_free(g, sigma.points);
          d["triangle_free"] = tf;
          return tf && d["good"].get<bool>();
        });
      }
      s.item("tangent_cone", q, [&](Json& d) {
        const auto t = tangent_cone_set(g, g.non_absolute_points().front());
        const std::int64_t qq = q;
        d["size"] = t.size();
        d["expected"] = qq * qq * qq + 2 * qq * qq - 2 * qq - 1;
        const bool tf = is_triangle_free(g, t);
        d["triangle_free"] = tf;
        return tf && static_cast<std::int64_t>(t.size()) == qq * qq * qq + 2 * qq * qq - 2 * qq - 1;
      });
    }
    if (q <= 3) {
      s.item("search_strict", q, [&](Json& d) {
        bool good = false;
        RunConfig sc;
        sc.exact = true;
        d = search_report(g, sc, good);
        return good && d["optimal"].get<bool>() && d["strictly_below_bound"].get<bool>();
      });
    }
  }
  if (cfg.include_figueroa) {
    const FigueroaInstance inst = make_figueroa_instance(2);
    s.item("figueroa_planes", 2, [&](Json& d) {
      bool good = false;
      d = figueroa_build(inst, good);
      return good;
    });
    s.item("figueroa_axioms", 2, [&](Json& d) {
      const auto a = verify_axioms_full(*inst.plane);
      d = axioms_json(a);
      return a.passed;
    });
    s.item("figueroa_triangles", 2, [&](Json& d) {
      const auto t = self_polar_triangle_transfer_check(*inst.graph, *inst.desarguesian);
      d = {{"rho", t.rho_triangles}, {"rho_f", t.rho_f_triangles}};
      return t.ok();
    });
    s.item("figueroa_transfer", 2, [&](Json& d) {
      bool good = false;
      d = figueroa_transfer(inst, default_sigma(*inst.desarguesian), "", good);
      return good && d["size"].get<std::uint64_t>() == 1448;
    });
    s.item("figueroa_noncommuting_rejected", 2, [&](Json& d) {
      const Field& f = *inst.field;
      Elem w = 2;
      while (!f.in_subfield(w, 3) || f.in_subfield(w, 1)) ++w;
      const Mat3 form = {Triple{0, 1, 0}, Triple{1, 0, 0}, Triple{0, 0, w}};
      try {
        FigueroaGraph bad(inst.plane, UnitaryPolarity(inst.plane->plane(), form));
      } catch (const ConstructionError& e) {
        d["error"] = e.what();
        return true;
      }
      return false;
    });
  }
  ok = s.passed();
  return s.report();
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Unitary polarity graphs and their triangle-free sets", "polarity-lab"};
  app.require_subcommand(1);
  RunConfig cfg;
  if (const char* env = std::getenv("POLARITY_LAB_THREADS")) {
    try {
      cfg.threads = static_cast<std::uint32_t>(std::stoul(env));
    } catch (const std::exception&) {
      err << "ignoring malformed POLARITY_LAB_THREADS\n";
    }
  }
  app.add_option("--threads", cfg.threads, "Worker threads (scans run on one thread)")->check(CLI::PositiveNumber);
  std::function<int()> action;

  auto add_q = [&](CLI::App* c) {
    c->add_option("--q", cfg.q, "q, for PG(2, q^2)");
    c->add_option("--field", cfg.field, "GF(q^2) as p^h/irr=<enc>");
  };
  auto verdict = [&](const Json& j, bool ok) {
    emit(out, j);
    return ok ? kExitOk : kExitVerificationFailed;
  };

  auto* field = app.add_subcommand("field", "Describe GF(q^2)");
  add_q(field);
  field->callback([&] {
    action = [&] {
      const auto f = field_for(cfg);
      Json j;
      j["description"] = f->description();
      j["characteristic"] = f->characteristic();
      j["degree"] = f->degree();
      j["size"] = f->size();
      j["irreducible"] = f->irreducible();
      j["irreducible_code"] = f->irreducible_code();
      j["primitive_element"] = f->primitive_element();
      return verdict(j, true);
    };
  });

  auto* graph = app.add_subcommand("graph", "Polarity graph statistics");
  graph->require_subcommand(1);
  auto* stats = graph->add_subcommand("stats", "Vertex, absolute point and triangle counts");
  add_q(stats);
  stats->callback([&] {
    action = [&] {
      const auto g = make_graph(cfg);
      const Json j = graph_stats(g);
      return verdict(j, j["counts_match"].get<bool>());
    };
  });
  auto* check = graph->add_subcommand("check-set", "Triangle-freeness and maximality of a set file");
  add_q(check);
  check->add_option("--set", cfg.set_path, "Set file")->required();
  check->callback([&] {
    action = [&] {
      const auto g = make_graph(cfg);
      const VertexSet s = load_set(cfg, g.plane());
      const Json j = check_set(g, s, g.plane());
      return verdict(j, j["triangle_free"].get<bool>());
    };
  });

  auto* spectrum = app.add_subcommand("spectrum", "Exact spectrum and quotient-matrix checks");
  add_q(spectrum);
  spectrum->add_flag("--perturb", cfg.perturb, "Shift one multiplicity (negative control)");
  spectrum->callback([&] {
    action = [&] {
      const auto g = make_graph(cfg);
      bool ok = false;
      const Json j = spectrum_report(g, cfg.perturb, ok);
      return verdict(j, ok);
    };
  });

  auto* eml = app.add_subcommand("eml", "Expander mixing inequality on random subsets");
  add_q(eml);
  eml->add_option("--samples", cfg.samples, "Number of random subsets");
  eml->add_option("--seed", cfg.seed, "Random seed");
  eml->add_option("--set", cfg.set_path, "Evaluate one set file instead");
  eml->callback([&] {
    action = [&] {
      const auto g = make_graph(cfg);
      if (!cfg.set_path.empty()) {
        const VertexSet s = load_set(cfg, g.plane());
        const EmlGap gap = eml_gap(g, s);
        Json j = {{"q", iq(g)}, {"size", s.size()}, {"lhs", gap.lhs.str()}, {"rhs", gap.rhs.str()}, {"holds", gap.holds()}};
        return verdict(j, gap.holds());
      }
      bool ok = false;
      const Json j = eml_report(g, cfg.samples, cfg.seed, ok);
      return verdict(j, ok);
    };
  });

  auto* goodset = app.add_subcommand("goodset", "Good sets of pencil parameters");
  add_q(goodset);
  goodset->add_flag("--odd", cfg.odd, "Use the odd-q construction");
  goodset->add_option("--hyperplane", cfg.hyperplane, "Dual vector of the hyperplane (q even)");
  goodset->callback([&] {
    action = [&] {
      const auto g = make_graph(cfg);
      const GoodSet s = default_good_set(g, cfg);
      const Json j = goodset_json(g, s);
      return verdict(j, j["good"].get<bool>());
    };
  });

  auto* sigma = app.add_subcommand("sigma", "The pencil union Sigma");
  sigma->require_subcommand(1);
  auto* sbuild = sigma->add_subcommand("build", "Build Sigma from a good set");
  add_q(sbuild);
  sbuild->add_option("--hyperplane", cfg.hyperplane, "Dual vector of the hyperplane (q even)");
  sbuild->add_option("--out", cfg.out_path, "Write the set file here");
  sbuild->callback([&] {
    action = [&] {
      const auto g = make_graph(cfg);
      const GoodSet gs = default_good_set(g, cfg);
      const SigmaSet s = build_sigma(g, gs);
      const auto reg = verify_regularity(g, s);
      const bool tf = is_triangle_free(g, s.points);
      Json j;
      j["q"] = iq(g);
      j["size"] = s.points.size();
      j["lambda"] = elems(s.lambda);
      if (reg.degree_histogram.size() == 1) {
        j["regular"] = reg.degree_histogram.begin()->first;
      } else {
        j["regular"] = nullptr;
      }
      j["triangle_free"] = tf;
      if (!cfg.out_path.empty()) {
        write_set_file(cfg.out_path, g.plane(), s.points);
        j["out"] = cfg.out_path;
      }
      return verdict(j, tf);
    };
  });
  auto* sverify = sigma->add_subcommand("verify", "Run the Sigma checks on a set file");
  add_q(sverify);
  sverify->add_option("--set", cfg.set_path, "Set file")->required();
  sverify->add_option("--checks", cfg.checks, "Comma-separated checks");
  sverify->callback([&] {
    action = [&] {
      const auto g = make_graph(cfg);
      const SigmaSet s = sigma_from_set(g, load_set(cfg, g.plane()));
      bool ok = false;
      const Json j = sigma_verify(g, s, cfg.checks, ok);
      return verdict(j, ok);
    };
  });

  auto* search = app.add_subcommand("search", "Largest triangle-free sets");
  search->require_subcommand(1);
  auto* smax = search->add_subcommand("max", "Branch and bound (q <= 3) or local search");
  add_q(smax);
  smax->add_flag("--exact", cfg.exact, "Exact branch and bound");
  smax->add_flag("--heuristic", cfg.heuristic, "Local search from a construction");
  smax->add_option("--time-limit", cfg.time_limit, "Seconds; 0 for none")->check(CLI::NonNegativeNumber);
  smax->add_option("--seed", cfg.seed, "Seed for the heuristic");
  smax->add_option("--out", cfg.out_path, "Write the witness set file here");
  smax->callback([&] {
    action = [&] {
      const auto g = make_graph(cfg);
      bool ok = false;
      const Json j = search_report(g, cfg, ok);
      return verdict(j, ok);
    };
  });

  auto* fig = app.add_subcommand("figueroa", "Figueroa plane of order q^3 over GF(q^6)");
  fig->require_subcommand(1);
  auto* fbuild = fig->add_subcommand("build", "Types, mu, and the inherited polarity");
  fbuild->add_option("--base-q", cfg.base_q, "Base q");
  fbuild->callback([&] {
    action = [&] {
      const auto inst = make_figueroa_instance(cfg.base_q);
      bool ok = false;
      const Json j = figueroa_build(inst, ok);
      return verdict(j, ok);
    };
  });
  auto* ftransfer = fig->add_subcommand("transfer", "Transfer a triangle-free set to the Figueroa plane");
  ftransfer->add_option("--base-q", cfg.base_q, "Base q");
  ftransfer->add_option("--set", cfg.set_path, "Desarguesian set file (default: Sigma)");
  ftransfer->add_option("--out", cfg.out_path, "Write Z_F here");
  ftransfer->callback([&] {
    action = [&] {
      const auto inst = make_figueroa_instance(cfg.base_q);
      VertexSet z;
      if (cfg.set_path.empty()) {
        z = default_sigma(*inst.desarguesian);
      } else {
        PlaneKind kind = PlaneKind::Desarguesian;
        z = load_set(cfg, inst.desarguesian->plane(), &kind);
        if (kind != PlaneKind::Desarguesian) throw UsageError("transfer expects a Desarguesian set");
      }
      bool ok = false;
      const Json j = figueroa_transfer(inst, z, cfg.out_path, ok);
      return verdict(j, ok);
    };
  });
  auto* faxioms = fig->add_subcommand("verify-axioms", "Projective plane axioms for the Figueroa incidence");
  faxioms->add_option("--base-q", cfg.base_q, "Base q");
  auto* sample_opt = faxioms->add_option("--sample", cfg.sample, "Random pairs to test");
  auto* full_opt = faxioms->add_flag("--full", cfg.full, "Every pair");
  sample_opt->excludes(full_opt);
  faxioms->add_option("--seed", cfg.seed, "Random seed for --sample");
  faxioms->callback([&] {
    action = [&] {
      const auto inst = make_figueroa_instance(cfg.base_q);
      AxiomReport a;
      std::string mode;
      if (cfg.sample > 0) {
        std::mt19937_64 rng(cfg.seed);
        a = verify_axioms_sampled(*inst.plane, cfg.sample, rng);
        mode = "sample";
      } else {
        a = verify_axioms_full(*inst.plane);
        mode = "full";
      }
      Json j = axioms_json(a);
      j["mode"] = mode;
      j["order"] = inst.plane->order();
      return verdict(j, a.passed);
    };
  });

  auto* suite = app.add_subcommand("suite", "Run every check and report pass/fail per item");
  suite->add_option("--q-list", cfg.q_list, "Comma-separated q values");
  suite->add_flag("--include-figueroa", cfg.include_figueroa, "Add the order-64 Figueroa instance");
  suite->callback([&] {
    action = [&] {
      bool ok = false;
      const Json j = run_suite(cfg, ok);
      return verdict(j, ok);
    };
  });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (!action) {
    err << "error: no subcommand\n";
    return kExitUsage;
  }
  try {
    return action();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConstructionError& e) {
    err << "construction failed: " << e.what() << '\n';
    return kExitVerificationFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitVerificationFailed;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace plab::cli
