#include "plab/vertex_set.hpp"

#include <algorithm>
#include <limits>

#include "plab/errors.hpp"

namespace plab {

VertexSet::VertexSet(std::uint32_t universe) : universe_(universe), member_(universe, 0) {}

VertexSet::VertexSet(std::uint32_t universe, std::vector<PointId> ids)
    : universe_(universe), ids_(std::move(ids)), member_(universe, 0) {
  std::sort(ids_.begin(), ids_.end());
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (ids_[i] >= universe_) throw UsageError("vertex id " + std::to_string(ids_[i]) + " out of range");
    if (i > 0 && ids_[i] == ids_[i - 1]) throw UsageError("repeated vertex id " + std::to_string(ids_[i]));
    member_[ids_[i]] = 1;
  }
}

bool VertexSet::insert(PointId x) {
  if (x >= universe_) throw UsageError("vertex id out of range");
  if (member_[x]) return false;
  member_[x] = 1;
  ids_.insert(std::lower_bound(ids_.begin(), ids_.end(), x), x);
  invalidate();
  return true;
}

bool VertexSet::erase(PointId x) {
  if (!contains(x)) return false;
  member_[x] = 0;
  ids_.erase(std::lower_bound(ids_.begin(), ids_.end(), x));
  invalidate();
  return true;
}

void VertexSet::invalidate() const {
  degrees_.reset();
  pole_counts_.reset();
  cache_owner_ = nullptr;
}

void VertexSet::check_oracle(const PolarityOracle& g) const {
  if (g.num_points() != universe_) throw UsageError("vertex set and graph have different point counts");
  if (cache_owner_ != &g) {
    degrees_.reset();
    pole_counts_.reset();
    cache_owner_ = &g;
  }
}

const std::vector<std::uint32_t>& VertexSet::degrees(const PolarityOracle& g) const {
  check_oracle(g);
  if (!degrees_) {
    std::vector<std::uint32_t> d;
    d.reserve(ids_.size());
    std::vector<PointId> nb;
    for (PointId x : ids_) {
      g.neighbours(x, nb);
      std::uint32_t c = 0;
      for (PointId y : nb) c += (y != x && member_[y]) ? 1 : 0;
      d.push_back(c);
    }
    degrees_ = std::move(d);
  }
  return *degrees_;
}

const std::vector<std::uint32_t>& VertexSet::pole_counts(const PolarityOracle& g) const {
  check_oracle(g);
  if (!pole_counts_) {
    // s lies on x^perp exactly when x lies on s^perp.
    std::vector<std::uint32_t> c(universe_, 0);
    std::vector<PointId> nb;
    for (PointId s : ids_) {
      g.neighbours(s, nb);
      for (PointId x : nb) ++c[x];
    }
    pole_counts_ = std::move(c);
  }
  return *pole_counts_;
}

VertexSet all_non_absolute(const PolarityOracle& g) { return {g.num_points(), g.non_absolute_points()}; }

VertexSet absolute_set(const PolarityOracle& g) { return {g.num_points(), g.absolute_points()}; }

std::vector<Triangle> triangles(const PolarityOracle& g) {
  std::vector<Triangle> out;
  std::vector<PointId> nb;
  for (PointId x = 0; x < g.num_points(); ++x) {
    if (g.is_absolute(x)) continue;
    g.neighbours(x, nb);
    for (PointId y : nb) {
      if (y <= x || g.is_absolute(y)) continue;
      const PointId z = g.common_neighbour(x, y);
      if (z > y && !g.is_absolute(z)) out.push_back({x, y, z});
    }
  }
  return out;
}

std::optional<Triangle> find_triangle(const PolarityOracle& g, const VertexSet& s) {
  if (s.universe() != g.num_points()) throw UsageError("vertex set and graph have different point counts");
  for (PointId x : s) {
    if (g.is_absolute(x)) throw UsageError("set contains the absolute point " + std::to_string(x));
  }
  std::vector<PointId> nb;
  for (PointId x : s) {
    g.neighbours(x, nb);
    for (PointId y : nb) {
      if (y <= x || !s.contains(y)) continue;
      const PointId z = g.common_neighbour(x, y);
      if (z != x && z != y && s.contains(z)) {
        Triangle t{x, y, z};
        std::sort(t.begin(), t.end());
        return t;
      }
    }
  }
  return std::nullopt;
}

std::uint64_t e_count(const PolarityOracle& g, const VertexSet& s, const VertexSet& t) {
  if (s.universe() != g.num_points() || t.universe() != g.num_points()) {
    throw UsageError("vertex set and graph have different point counts");
  }
  std::uint64_t e = 0;
  std::vector<PointId> nb;
  for (PointId x : s) {
    g.neighbours(x, nb);
    for (PointId y : nb) e += t.contains(y) ? 1 : 0;
  }
  return e;
}

std::optional<PointId> extendable_vertex(const PolarityOracle& g, const VertexSet& s) {
  if (find_triangle(g, s)) throw UsageError("maximality is only defined for triangle-free sets");
  std::vector<PointId> nb;
  for (PointId v = 0; v < g.num_points(); ++v) {
    if (g.is_absolute(v) || s.contains(v)) continue;
    g.neighbours(v, nb);
    bool blocked = false;
    for (PointId y : nb) {
      if (y == v || !s.contains(y)) continue;
      const PointId z = g.common_neighbour(v, y);
      if (z != v && z != y && s.contains(z)) {
        blocked = true;
        break;
      }
    }
    if (!blocked) return v;
  }
  return std::nullopt;
}

InducedSubgraph induced_subgraph(const PolarityOracle& g, const VertexSet& s) {
  InducedSubgraph h;
  h.vertices = s.ids();
  std::vector<std::uint32_t> local(g.num_points(), std::numeric_limits<std::uint32_t>::max());
  for (std::uint32_t i = 0; i < h.vertices.size(); ++i) local[h.vertices[i]] = i;
  h.offsets.reserve(h.vertices.size() + 1);
  h.offsets.push_back(0);
  std::vector<PointId> nb;
  for (PointId x : h.vertices) {
    g.neighbours(x, nb);
    for (PointId y : nb) {
      if (y != x && s.contains(y)) h.adjacency.push_back(local[y]);
    }
    h.offsets.push_back(static_cast<std::uint32_t>(h.adjacency.size()));
  }
  return h;
}

std::optional<std::uint32_t> girth(const InducedSubgraph& h, std::span<const std::uint32_t> roots) {
  const auto n = static_cast<std::uint32_t>(h.size());
  constexpr std::uint32_t kUnseen = std::numeric_limits<std::uint32_t>::max();
  std::uint32_t best = kUnseen;
  std::vector<std::uint32_t> dist(n, kUnseen);
  std::vector<std::uint32_t> parent(n, kUnseen);
  std::vector<std::uint32_t> queue;
  queue.reserve(n);

  auto bfs = [&](std::uint32_t root) {
    queue.clear();
    queue.push_back(root);
    dist[root] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::uint32_t u = queue[head];
      if (best != kUnseen && 2 * dist[u] + 1 >= best) break;
      for (std::uint32_t w : h.neighbours(u)) {
        if (dist[w] == kUnseen) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          queue.push_back(w);
        } else if (parent[u] != w) {
          best = std::min(best, dist[u] + dist[w] + 1);
        }
      }
    }
    for (std::uint32_t v : queue) {
      dist[v] = kUnseen;
      parent[v] = kUnseen;
    }
  };

  if (roots.empty()) {
    for (std::uint32_t r = 0; r < n; ++r) bfs(r);
  } else {
    for (std::uint32_t r : roots) {
      if (r >= n) throw UsageError("girth root out of range");
      bfs(r);
    }
  }
  if (best == kUnseen) return std::nullopt;
  return best;
}

}  // namespace plab
