#pragma once

// Point-set files:
//
//   field=2^4/irr=19
//   plane=desarguesian        (optional; or figueroa)
//   1,0,3
//   ...
//
// one normalized point per line as decimal field encodings.

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "plab/gf.hpp"
#include "plab/plane.hpp"
#include "plab/vertex_set.hpp"

namespace plab {

enum class PlaneKind { Desarguesian, Figueroa };

std::string to_string(PlaneKind k);

struct SetFile {
  std::shared_ptr<const Field> field;
  PlaneKind plane = PlaneKind::Desarguesian;
  std::vector<Triple> points;
};

void write_set_file(std::ostream& out, const Plane& plane, const VertexSet& s,
                    PlaneKind kind = PlaneKind::Desarguesian);
void write_set_file(const std::string& path, const Plane& plane, const VertexSet& s,
                    PlaneKind kind = PlaneKind::Desarguesian);

// UsageError on a malformed header, an invalid or unnormalized point, or a
// repeated point.
SetFile read_set_file(std::istream& in);
SetFile read_set_file(const std::string& path);

// UsageError when the file's field differs from the plane's.
VertexSet to_vertex_set(const SetFile& file, const Plane& plane);

}  // namespace plab
