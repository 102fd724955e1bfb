#pragma once

// Point sets of a polarity graph and the scans run over them: triangle
// search, edge counts, line intersection numbers, maximality and girth.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "plab/polarity.hpp"

namespace plab {

class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::uint32_t universe);
  // UsageError on an out-of-range or repeated id.
  VertexSet(std::uint32_t universe, std::vector<PointId> ids);

  std::uint32_t universe() const { return universe_; }
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  bool contains(PointId x) const { return x < universe_ && member_[x] != 0; }
  const std::vector<PointId>& ids() const { return ids_; }
  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }

  bool insert(PointId x);
  bool erase(PointId x);

  bool operator==(const VertexSet& o) const { return universe_ == o.universe_ && ids_ == o.ids_; }

  // d_S(x) for each member x in ids() order; x itself is not counted.
  const std::vector<std::uint32_t>& degrees(const PolarityOracle& g) const;
  // |x^perp cap S| for every point x of the plane.
  const std::vector<std::uint32_t>& pole_counts(const PolarityOracle& g) const;

 private:
  void invalidate() const;
  void check_oracle(const PolarityOracle& g) const;

  std::uint32_t universe_ = 0;
  std::vector<PointId> ids_;
  std::vector<std::uint8_t> member_;

  // Filled lazily by one writer; dropped on mutation.
  mutable const PolarityOracle* cache_owner_ = nullptr;
  mutable std::optional<std::vector<std::uint32_t>> degrees_;
  mutable std::optional<std::vector<std::uint32_t>> pole_counts_;
};

VertexSet all_non_absolute(const PolarityOracle& g);
VertexSet absolute_set(const PolarityOracle& g);

// Every triangle {x < y < z} of the polarity graph exactly once.
std::vector<Triangle> triangles(const PolarityOracle& g);

// First triangle inside S (smallest vertex first), nullopt when triangle-free.
// UsageError when S contains an absolute point.
std::optional<Triangle> find_triangle(const PolarityOracle& g, const VertexSet& s);
inline bool is_triangle_free(const PolarityOracle& g, const VertexSet& s) { return !find_triangle(g, s); }

// Ordered adjacent pairs (s, t); loops count once.
std::uint64_t e_count(const PolarityOracle& g, const VertexSet& s, const VertexSet& t);

// A non-absolute vertex outside S whose addition keeps S triangle-free.
// UsageError when S itself is not triangle-free.
std::optional<PointId> extendable_vertex(const PolarityOracle& g, const VertexSet& s);

// Simple graph induced on S, vertices renumbered by position in S.ids().
struct InducedSubgraph {
  std::vector<PointId> vertices;
  std::vector<std::uint32_t> offsets;
  std::vector<std::uint32_t> adjacency;

  std::size_t size() const { return vertices.size(); }
  std::span<const std::uint32_t> neighbours(std::uint32_t v) const {
    return {adjacency.data() + offsets[v], adjacency.data() + offsets[v + 1]};
  }
  std::uint32_t degree(std::uint32_t v) const { return offsets[v + 1] - offsets[v]; }
};

InducedSubgraph induced_subgraph(const PolarityOracle& g, const VertexSet& s);

// Shortest cycle length, nullopt for a forest. With `roots` the BFS is run
// only from those local vertices: the result is the shortest cycle through
// any root, which equals the girth when every vertex is mapped onto some
// root by an automorphism.
std::optional<std::uint32_t> girth(const InducedSubgraph& h, std::span<const std::uint32_t> roots = {});

template <typename T>
std::map<T, std::uint64_t> histogram(const std::vector<T>& values) {
  std::map<T, std::uint64_t> h;
  for (const auto& v : values) ++h[v];
  return h;
}

}  // namespace plab
