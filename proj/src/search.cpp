#include "plab/search.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <numeric>
#include <random>

#include "plab/constructions.hpp"
#include "plab/errors.hpp"

namespace plab {

namespace {

using Clock = std::chrono::steady_clock;

std::vector<std::array<std::uint32_t, 3>> local_triangles(const PolarityGraph& g, const std::vector<PointId>& vertices) {
  std::vector<std::uint32_t> local(g.num_points(), 0);
  for (std::uint32_t i = 0; i < vertices.size(); ++i) local[vertices[i]] = i;
  std::vector<std::array<std::uint32_t, 3>> out;
  for (const Triangle& t : triangles(g)) out.push_back({local[t[0]], local[t[1]], local[t[2]]});
  return out;
}

VertexSet seed_set(const PolarityGraph& g) {
  if (g.plane().field().characteristic() == 2) return build_sigma(g, good_set_even(g)).points;
  const auto na = g.non_absolute_points();
  return tangent_cone_set(g, na.front());
}

class BranchAndBound {
 public:
  BranchAndBound(std::uint32_t n, const std::vector<std::array<std::uint32_t, 3>>& tris, std::int64_t cap,
                 double limit)
      : n_(n), cap_(cap), limit_(limit), start_(Clock::now()) {
    by_vertex_.resize(n);
    for (const auto& t : tris) {
      const std::uint64_t m = bit(t[0]) | bit(t[1]) | bit(t[2]);
      tri_.push_back(m);
      for (std::uint32_t v : t) by_vertex_[v].push_back(m);
    }
  }

  void set_incumbent(std::uint64_t mask) {
    best_ = mask;
    best_size_ = std::popcount(mask);
  }

  void run() {
    const std::uint64_t all = n_ == 64 ? ~0ULL : ((1ULL << n_) - 1);
    recurse(0, all);
  }

  std::uint64_t best() const { return best_; }
  std::uint64_t nodes() const { return nodes_; }
  bool timed_out() const { return timed_out_; }

 private:
  static std::uint64_t bit(std::uint32_t v) { return 1ULL << v; }

  // Forces: a triangle with two included vertices excludes the third.
  bool propagate(std::uint64_t& inc, std::uint64_t& cand) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::uint64_t t : tri_) {
        const std::uint64_t in = t & inc;
        if (in == t) return false;
        if (std::popcount(in) == 2 && (t & cand)) {
          cand &= ~t;
          changed = true;
        }
      }
    }
    return true;
  }

  std::int64_t upper_bound(std::uint64_t inc, std::uint64_t cand, std::uint32_t& branch) const {
    const std::uint64_t live = inc | cand;
    std::vector<std::uint32_t> deg;
    std::uint32_t residual = 0;
    std::uint64_t used = 0;
    std::int64_t packing = 0;
    std::uint32_t best_deg = 0;
    branch = 64;
    for (std::uint64_t t : tri_) {
      if ((t & live) != t) continue;
      ++residual;
      const std::uint64_t c = t & cand;
      if ((c & used) == 0) {
        used |= c;
        ++packing;
      }
    }
    if (residual == 0) return std::popcount(live);
    for (std::uint64_t rest = cand; rest; rest &= rest - 1) {
      const auto v = static_cast<std::uint32_t>(std::countr_zero(rest));
      std::uint32_t d = 0;
      for (std::uint64_t t : by_vertex_[v]) d += (t & live) == t ? 1 : 0;
      if (d > best_deg) {
        best_deg = d;
        branch = v;
      }
      if (d > 0) deg.push_back(d);
    }
    // Each removal kills at most its residual degree.
    std::sort(deg.rbegin(), deg.rend());
    std::int64_t needed = 0;
    std::uint32_t acc = 0;
    for (std::uint32_t d : deg) {
      if (acc >= residual) break;
      acc += d;
      ++needed;
    }
    return std::popcount(live) - std::max(needed, packing);
  }

  void recurse(std::uint64_t inc, std::uint64_t cand) {
    if (timed_out_) return;
    ++nodes_;
    if (limit_ > 0 && (nodes_ & 1023) == 0 &&
        std::chrono::duration<double>(Clock::now() - start_).count() > limit_) {
      timed_out_ = true;
      return;
    }
    if (!propagate(inc, cand)) return;
    std::uint32_t v = 64;
    const std::int64_t ub = std::min(upper_bound(inc, cand, v), cap_);
    if (ub <= best_size_) return;
    if (v == 64) {
      // No residual triangle: everything left can be included.
      set_incumbent(inc | cand);
      return;
    }
    const std::uint64_t b = bit(v);
    recurse(inc | b, cand & ~b);
    recurse(inc, cand & ~b);
  }

  std::uint32_t n_;
  std::int64_t cap_;
  double limit_;
  Clock::time_point start_;
  std::vector<std::uint64_t> tri_;
  std::vector<std::vector<std::uint64_t>> by_vertex_;
  std::uint64_t best_ = 0;
  std::int64_t best_size_ = -1;
  std::uint64_t nodes_ = 0;
  bool timed_out_ = false;
};

SearchResult heuristic(const PolarityGraph& g, const SearchInstance& inst, const SearchOptions& opt) {
  const auto start = Clock::now();
  const auto n = static_cast<std::uint32_t>(inst.vertices.size());
  std::vector<std::vector<std::uint32_t>> by_vertex(n);
  for (std::uint32_t i = 0; i < inst.triangles.size(); ++i) {
    for (std::uint32_t v : inst.triangles[i]) by_vertex[v].push_back(i);
  }
  std::vector<std::uint32_t> local(g.num_points(), 0);
  for (std::uint32_t i = 0; i < n; ++i) local[inst.vertices[i]] = i;

  std::vector<std::uint8_t> in(n, 0);
  // conflicts[v]: triangles through v whose other two vertices are in S.
  std::vector<std::uint32_t> conflicts(n, 0);
  std::uint32_t size = 0;
  auto others_in = [&](std::uint32_t t, std::uint32_t v) {
    std::uint32_t c = 0;
    for (std::uint32_t w : inst.triangles[t]) c += (w != v && in[w]) ? 1 : 0;
    return c;
  };
  auto add = [&](std::uint32_t v) {
    for (std::uint32_t t : by_vertex[v]) {
      for (std::uint32_t w : inst.triangles[t]) {
        if (w != v && others_in(t, w) == 1 && !in[w]) ++conflicts[w];
      }
    }
    in[v] = 1;
    ++size;
  };
  auto remove = [&](std::uint32_t v) {
    in[v] = 0;
    --size;
    for (std::uint32_t t : by_vertex[v]) {
      for (std::uint32_t w : inst.triangles[t]) {
        if (w != v && !in[w] && others_in(t, w) == 1) --conflicts[w];
      }
    }
    conflicts[v] = 0;
    for (std::uint32_t t : by_vertex[v]) conflicts[v] += others_in(t, v) == 2 ? 1 : 0;
  };
  for (PointId x : inst.incumbent) add(local[x]);

  std::mt19937_64 rng(opt.seed);
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto fill = [&](std::uint32_t skip) {
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::uint32_t> added;
    for (std::uint32_t v : order) {
      if (v != skip && !in[v] && conflicts[v] == 0) {
        add(v);
        added.push_back(v);
      }
    }
    return added;
  };
  fill(n);
  std::vector<std::uint8_t> best_in = in;
  std::uint32_t best = size;
  std::uniform_int_distribution<std::uint32_t> pick(0, n - 1);
  bool timed_out = false;
  for (std::uint64_t round = 0; round < opt.heuristic_rounds; ++round) {
    if (opt.time_limit_seconds > 0 &&
        std::chrono::duration<double>(Clock::now() - start).count() > opt.time_limit_seconds) {
      timed_out = true;
      break;
    }
    std::uint32_t u = pick(rng);
    while (!in[u]) u = pick(rng);
    remove(u);
    const auto added = fill(u);
    if (size < best) {
      for (std::uint32_t v : added) remove(v);
      add(u);
    } else if (size > best) {
      best = size;
      best_in = in;
    }
  }
  std::vector<PointId> ids;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (best_in[i]) ids.push_back(inst.vertices[i]);
  }
  SearchResult r;
  r.max = best;
  r.witness = VertexSet(g.num_points(), std::move(ids));
  r.optimal = false;
  r.timed_out = timed_out;
  r.nodes = opt.heuristic_rounds;
  r.bound = inst.bound;
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

}  // namespace

SearchInstance make_search_instance(const PolarityGraph& g) {
  SearchInstance inst;
  inst.q = g.q();
  inst.vertices = g.non_absolute_points();
  inst.triangles = local_triangles(g, inst.vertices);
  inst.incumbent = seed_set(g);
  const std::int64_t q = g.q();
  inst.bound = (q * q * q * q + q) / 2;
  return inst;
}

HittingStructure hitting_structure(const PolarityGraph& g) {
  HittingStructure h;
  const auto vertices = g.non_absolute_points();
  const auto tris = local_triangles(g, vertices);
  h.triangle_count = tris.size();
  h.membership.assign(vertices.size(), 0);
  std::vector<std::vector<std::uint32_t>> by_vertex(vertices.size());
  for (std::uint32_t i = 0; i < tris.size(); ++i) {
    for (std::uint32_t v : tris[i]) {
      ++h.membership[v];
      by_vertex[v].push_back(i);
      ++h.incidences;
    }
  }
  h.membership_histogram = histogram(h.membership);
  // Pairs sharing a vertex, counted through that vertex; all others share 0.
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> shared;
  for (const auto& list : by_vertex) {
    for (std::size_t i = 0; i < list.size(); ++i) {
      for (std::size_t j = i + 1; j < list.size(); ++j) ++shared[{list[i], list[j]}];
    }
  }
  std::uint64_t touching = 0;
  for (const auto& [pair, c] : shared) {
    ++h.intersection_histogram[c];
    ++touching;
  }
  const std::uint64_t t = tris.size();
  h.intersection_histogram[0] += t * (t - 1) / 2 - touching;
  if (h.intersection_histogram[0] == 0) h.intersection_histogram.erase(0);
  return h;
}

SearchResult max_triangle_free(const PolarityGraph& g, const SearchOptions& options) {
  SearchInstance inst = make_search_instance(g);
  if (options.mode == SearchMode::Heuristic) return heuristic(g, inst, options);

  const auto n = static_cast<std::uint32_t>(inst.vertices.size());
  if (n > 64) throw UsageError("exact search supports at most 64 non-absolute vertices (q <= 3)");
  const auto start = Clock::now();

  // perm[i]: internal position of vertex index i.
  std::vector<std::uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  if (options.shuffle_seed) {
    std::mt19937_64 rng(*options.shuffle_seed);
    std::shuffle(perm.begin(), perm.end(), rng);
  }
  std::vector<std::array<std::uint32_t, 3>> tris;
  for (const auto& t : inst.triangles) tris.push_back({perm[t[0]], perm[t[1]], perm[t[2]]});

  BranchAndBound bb(n, tris, inst.bound, options.time_limit_seconds);
  std::vector<std::uint32_t> local(g.num_points(), 0);
  for (std::uint32_t i = 0; i < n; ++i) local[inst.vertices[i]] = i;
  std::uint64_t seed_mask = 0;
  for (PointId x : inst.incumbent) seed_mask |= 1ULL << perm[local[x]];
  bb.set_incumbent(seed_mask);
  bb.run();

  std::vector<PointId> ids;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (bb.best() >> perm[i] & 1ULL) ids.push_back(inst.vertices[i]);
  }
  SearchResult r;
  r.max = static_cast<std::uint32_t>(ids.size());
  r.witness = VertexSet(g.num_points(), std::move(ids));
  r.timed_out = bb.timed_out();
  r.optimal = !r.timed_out;
  r.nodes = bb.nodes();
  r.bound = inst.bound;
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

}  // namespace plab
