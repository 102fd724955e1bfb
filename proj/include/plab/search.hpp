#pragma once

// Largest triangle-free sets of non-absolute points on small polarity
// graphs: branch and bound up to 64 vertices, local search beyond.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "plab/polarity.hpp"
#include "plab/vertex_set.hpp"

namespace plab {

struct SearchInstance {
  std::uint32_t q = 0;
  std::vector<PointId> vertices;                         // non-absolute ids, ascending
  std::vector<std::array<std::uint32_t, 3>> triangles;   // indices into vertices
  VertexSet incumbent;                                   // triangle-free seed
  std::int64_t bound = 0;                                // (q^4 + q) / 2
};

// The incumbent is Sigma for q even and a tangent-cone set for q odd.
SearchInstance make_search_instance(const PolarityGraph& g);

struct HittingStructure {
  std::vector<std::uint32_t> membership;  // triangles through each non-absolute vertex
  std::map<std::uint32_t, std::uint64_t> membership_histogram;
  // Shared vertex counts over unordered pairs of distinct triangles.
  std::map<std::uint32_t, std::uint64_t> intersection_histogram;
  std::uint64_t incidences = 0;
  std::uint64_t triangle_count = 0;
};

HittingStructure hitting_structure(const PolarityGraph& g);

enum class SearchMode { Exact, Heuristic };

struct SearchOptions {
  SearchMode mode = SearchMode::Exact;
  double time_limit_seconds = 0;  // 0: none
  std::uint64_t seed = 1;         // heuristic mode only
  // Permute the internal vertex order before searching (exact mode too).
  std::optional<std::uint64_t> shuffle_seed;
  std::uint64_t heuristic_rounds = 20000;
};

struct SearchResult {
  std::uint32_t max = 0;
  VertexSet witness;
  bool optimal = false;
  bool timed_out = false;
  std::uint64_t nodes = 0;
  std::int64_t bound = 0;
  double seconds = 0;
};

// Exact mode needs at most 64 non-absolute vertices (q = 2, 3); UsageError
// otherwise.
SearchResult max_triangle_free(const PolarityGraph& g, const SearchOptions& options = {});

}  // namespace plab
