#include "plab/setfile.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "plab/errors.hpp"

namespace plab {

std::string to_string(PlaneKind k) { return k == PlaneKind::Figueroa ? "figueroa" : "desarguesian"; }

void write_set_file(std::ostream& out, const Plane& plane, const VertexSet& s, PlaneKind kind) {
  if (s.universe() != plane.size()) throw UsageError("set and plane have different point counts");
  out << "field=" << plane.field().description() << '\n';
  out << "plane=" << to_string(kind) << '\n';
  for (PointId x : s) out << plane.format(plane.point(x)) << '\n';
}

void write_set_file(const std::string& path, const Plane& plane, const VertexSet& s, PlaneKind kind) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  write_set_file(out, plane, s, kind);
  if (!out) throw UsageError("write to " + path + " failed");
}

namespace {

std::string trimmed(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  return s.substr(i);
}

}  // namespace

SetFile read_set_file(std::istream& in) {
  SetFile f;
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  std::optional<Plane> plane;
  std::set<Triple> seen;
  while (std::getline(in, line)) {
    ++lineno;
    line = trimmed(line);
    if (line.empty() || line.front() == '#') continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (!header) {
      if (line.rfind("field=", 0) != 0) throw UsageError(where + "expected a field= header");
      f.field = Field::parse(line.substr(6));
      plane.emplace(f.field);
      header = true;
      continue;
    }
    if (line.rfind("plane=", 0) == 0) {
      const std::string kind = line.substr(6);
      if (!f.points.empty()) throw UsageError(where + "plane= must precede the points");
      if (kind == "desarguesian") {
        f.plane = PlaneKind::Desarguesian;
      } else if (kind == "figueroa") {
        f.plane = PlaneKind::Figueroa;
      } else {
        throw UsageError(where + "unknown plane kind '" + kind + "'");
      }
      continue;
    }
    Point p;
    try {
      p = plane->parse_point(line);
    } catch (const std::exception& e) {
      throw UsageError(where + e.what());
    }
    if (plane->format(p) != line) throw UsageError(where + "point '" + line + "' is not normalized");
    if (!seen.insert(p.c).second) throw UsageError(where + "repeated point " + line);
    f.points.push_back(p.c);
  }
  if (!header) throw UsageError("set file has no field= header");
  return f;
}

SetFile read_set_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  return read_set_file(in);
}

VertexSet to_vertex_set(const SetFile& file, const Plane& plane) {
  if (!file.field->same_as(plane.field())) {
    throw UsageError("set file field " + file.field->description() + " differs from " + plane.field().description());
  }
  std::vector<PointId> ids;
  ids.reserve(file.points.size());
  for (const Triple& t : file.points) ids.push_back(plane.id(Point{t}));
  return {plane.size(), std::move(ids)};
}

}  // namespace plab
