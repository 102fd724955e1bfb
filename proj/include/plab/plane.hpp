#pragma once

// The Desarguesian projective plane PG(2, n) over GF(n).
//
// Points and lines are normalized homogeneous triples, first nonzero
// coordinate equal to 1. Both carry a dense id equal to their position in
// the ascending order of the encoding x n^2 + y n + z:
//   (0,0,1) -> 0,  (0,1,z) -> 1 + z,  (1,y,z) -> 1 + n + y n + z.

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "plab/gf.hpp"

namespace plab {

using Triple = std::array<Elem, 3>;
using PointId = std::uint32_t;
using LineId = std::uint32_t;

struct Point {
  Triple c{};
  auto operator<=>(const Point&) const = default;
};

struct Line {
  Triple c{};
  auto operator<=>(const Line&) const = default;
};

class Plane {
 public:
  explicit Plane(std::shared_ptr<const Field> field);

  const Field& field() const { return *field_; }
  const std::shared_ptr<const Field>& field_ptr() const { return field_; }
  std::uint32_t order() const { return n_; }
  // Number of points, equal to the number of lines.
  std::uint32_t size() const { return size_; }

  std::optional<Triple> normalize(Triple t) const;
  Point point(PointId id) const { return {triple_of(id)}; }
  Line line(LineId id) const { return {triple_of(id)}; }
  PointId id(const Point& p) const { return id_of(p.c); }
  LineId id(const Line& l) const { return id_of(l.c); }
  // Normalizes first; DomainError on the zero triple.
  PointId point_id(const Triple& raw) const;
  LineId line_id(const Triple& raw) const;

  bool incident(const Point& p, const Line& l) const;
  bool incident(PointId p, LineId l) const { return incident(point(p), line(l)); }
  Line join(const Point& a, const Point& b) const;  // DomainError when a == b
  Point meet(const Line& a, const Line& b) const;   // DomainError when a == b
  LineId join(PointId a, PointId b) const { return id(join(point(a), point(b))); }
  PointId meet(LineId a, LineId b) const { return id(meet(line(a), line(b))); }

  // The n + 1 points of a line (ascending ids); dually the lines on a point.
  void points_on(LineId l, std::vector<PointId>& out) const;
  std::vector<PointId> points_on(LineId l) const;
  void lines_through(PointId p, std::vector<LineId>& out) const { points_on(p, out); }
  std::vector<LineId> lines_through(PointId p) const { return points_on(p); }

  std::vector<Point> enumerate_points() const;
  std::vector<Line> enumerate_lines() const;

  // "x,y,z" and "[a,b,c]" with decimal element encodings.
  std::string format(const Point& p) const;
  std::string format(const Line& l) const;
  Point parse_point(std::string_view text) const;
  Line parse_line(std::string_view text) const;

  Triple apply(const std::array<Triple, 3>& m, const Triple& v) const;

 private:
  Triple triple_of(std::uint32_t id) const;
  std::uint32_t id_of(const Triple& t) const;
  Triple cross(const Triple& a, const Triple& b) const;
  Triple parse_triple(std::string_view text) const;

  std::shared_ptr<const Field> field_;
  std::uint32_t n_;
  std::uint32_t size_;
};

using Mat3 = std::array<Triple, 3>;

Mat3 mat_mul(const Field& f, const Mat3& a, const Mat3& b);
Elem mat_det(const Field& f, const Mat3& m);
// DomainError when singular.
Mat3 mat_inverse(const Field& f, const Mat3& m);
Mat3 mat_identity();

}  // namespace plab
