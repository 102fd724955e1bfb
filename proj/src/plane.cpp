#include "plab/plane.hpp"

#include <algorithm>
#include <charconv>

#include "plab/errors.hpp"

namespace plab {

Plane::Plane(std::shared_ptr<const Field> field) : field_(std::move(field)) {
  if (!field_) throw UsageError("plane needs a field");
  n_ = field_->size();
  const std::uint64_t s = static_cast<std::uint64_t>(n_) * n_ + n_ + 1;
  if (s > 0xffffffffull) throw UsageError("plane too large for dense ids");
  size_ = static_cast<std::uint32_t>(s);
}

std::optional<Triple> Plane::normalize(Triple t) const {
  const Field& f = *field_;
  for (int i = 0; i < 3; ++i) {
    if (t[i] != 0) {
      if (t[i] == 1) return t;
      const Elem s = f.inv(t[i]);
      for (int j = i; j < 3; ++j) t[j] = f.mul(t[j], s);
      return t;
    }
  }
  return std::nullopt;
}

Triple Plane::triple_of(std::uint32_t id) const {
  if (id >= size_) throw UsageError("point/line id out of range");
  if (id == 0) return {0, 0, 1};
  if (id <= n_) return {0, 1, id - 1};
  const std::uint32_t r = id - 1 - n_;
  return {1, r / n_, r % n_};
}

std::uint32_t Plane::id_of(const Triple& t) const {
  if (t[0] == 1) return 1 + n_ + t[1] * n_ + t[2];
  if (t[0] == 0 && t[1] == 1) return 1 + t[2];
  if (t[0] == 0 && t[1] == 0 && t[2] == 1) return 0;
  throw UsageError("triple is not normalized");
}

PointId Plane::point_id(const Triple& raw) const {
  auto t = normalize(raw);
  if (!t) throw DomainError("zero triple is not a point");
  return id_of(*t);
}

LineId Plane::line_id(const Triple& raw) const {
  auto t = normalize(raw);
  if (!t) throw DomainError("zero triple is not a line");
  return id_of(*t);
}

bool Plane::incident(const Point& p, const Line& l) const {
  const Field& f = *field_;
  Elem s = f.mul(p.c[0], l.c[0]);
  s = f.add(s, f.mul(p.c[1], l.c[1]));
  s = f.add(s, f.mul(p.c[2], l.c[2]));
  return s == 0;
}

Triple Plane::cross(const Triple& a, const Triple& b) const {
  const Field& f = *field_;
  return {f.sub(f.mul(a[1], b[2]), f.mul(a[2], b[1])),
          f.sub(f.mul(a[2], b[0]), f.mul(a[0], b[2])),
          f.sub(f.mul(a[0], b[1]), f.mul(a[1], b[0]))};
}

Line Plane::join(const Point& a, const Point& b) const {
  if (a == b) throw DomainError("join of a point with itself");
  return {*normalize(cross(a.c, b.c))};
}

Point Plane::meet(const Line& a, const Line& b) const {
  if (a == b) throw DomainError("meet of a line with itself");
  return {*normalize(cross(a.c, b.c))};
}

void Plane::points_on(LineId l, std::vector<PointId>& out) const {
  const Field& f = *field_;
  const Triple t = triple_of(l);
  out.clear();
  out.reserve(n_ + 1);
  if (t[0] == 1) {
    // (-b - s c, 1, s) for s in F, plus (-c, 0, 1).
    const Elem nb = f.neg(t[1]);
    const Elem nc = f.neg(t[2]);
    for (Elem s = 0; s < n_; ++s) out.push_back(point_id({f.add(nb, f.mul(s, nc)), 1, s}));
    out.push_back(point_id({nc, 0, 1}));
  } else if (t[1] == 1) {
    // (1, -c s, s) for s in F, plus (0, -c, 1).
    const Elem nc = f.neg(t[2]);
    for (Elem s = 0; s < n_; ++s) out.push_back(id_of({1, f.mul(nc, s), s}));
    out.push_back(point_id({0, nc, 1}));
  } else {
    for (Elem s = 0; s < n_; ++s) out.push_back(id_of({1, s, 0}));
    out.push_back(id_of({0, 1, 0}));
  }
  std::sort(out.begin(), out.end());
}

std::vector<PointId> Plane::points_on(LineId l) const {
  std::vector<PointId> out;
  points_on(l, out);
  return out;
}

std::vector<Point> Plane::enumerate_points() const {
  std::vector<Point> out;
  out.reserve(size_);
  for (std::uint32_t i = 0; i < size_; ++i) out.push_back(point(i));
  return out;
}

std::vector<Line> Plane::enumerate_lines() const {
  std::vector<Line> out;
  out.reserve(size_);
  for (std::uint32_t i = 0; i < size_; ++i) out.push_back(line(i));
  return out;
}

std::string Plane::format(const Point& p) const {
  return std::to_string(p.c[0]) + "," + std::to_string(p.c[1]) + "," + std::to_string(p.c[2]);
}

std::string Plane::format(const Line& l) const {
  return "[" + std::to_string(l.c[0]) + "," + std::to_string(l.c[1]) + "," + std::to_string(l.c[2]) + "]";
}

Triple Plane::parse_triple(std::string_view text) const {
  Triple t{};
  for (int i = 0; i < 3; ++i) {
    auto comma = text.find(',');
    std::string_view part = i < 2 ? text.substr(0, comma) : text;
    if (i < 2 && comma == std::string_view::npos) throw UsageError("expected three comma-separated coordinates");
    while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
    while (!part.empty() && (part.back() == ' ' || part.back() == '\r')) part.remove_suffix(1);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc() || ptr != part.data() + part.size()) {
      throw UsageError("malformed coordinate '" + std::string(part) + "'");
    }
    if (v >= n_) throw UsageError("coordinate " + std::to_string(v) + " is not a field element");
    t[i] = static_cast<Elem>(v);
    if (i < 2) text.remove_prefix(comma + 1);
  }
  return t;
}

Point Plane::parse_point(std::string_view text) const {
  auto t = normalize(parse_triple(text));
  if (!t) throw UsageError("zero triple is not a point");
  return {*t};
}

Line Plane::parse_line(std::string_view text) const {
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') throw UsageError("line must be written [a,b,c]");
  auto t = normalize(parse_triple(text.substr(1, text.size() - 2)));
  if (!t) throw UsageError("zero triple is not a line");
  return {*t};
}

Triple Plane::apply(const Mat3& m, const Triple& v) const {
  const Field& f = *field_;
  Triple r{};
  for (int i = 0; i < 3; ++i) {
    r[i] = f.add(f.add(f.mul(m[i][0], v[0]), f.mul(m[i][1], v[1])), f.mul(m[i][2], v[2]));
  }
  return r;
}

Mat3 mat_identity() { return {Triple{1, 0, 0}, Triple{0, 1, 0}, Triple{0, 0, 1}}; }

Mat3 mat_mul(const Field& f, const Mat3& a, const Mat3& b) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Elem s = 0;
      for (int k = 0; k < 3; ++k) s = f.add(s, f.mul(a[i][k], b[k][j]));
      r[i][j] = s;
    }
  }
  return r;
}

Elem mat_det(const Field& f, const Mat3& m) {
  auto minor = [&](int r0, int r1, int c0, int c1) {
    return f.sub(f.mul(m[r0][c0], m[r1][c1]), f.mul(m[r0][c1], m[r1][c0]));
  };
  Elem d = f.mul(m[0][0], minor(1, 2, 1, 2));
  d = f.sub(d, f.mul(m[0][1], minor(1, 2, 0, 2)));
  d = f.add(d, f.mul(m[0][2], minor(1, 2, 0, 1)));
  return d;
}

Mat3 mat_inverse(const Field& f, const Mat3& m) {
  const Elem det = mat_det(f, m);
  if (det == 0) throw DomainError("singular matrix");
  const Elem s = f.inv(det);
  Mat3 r{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      // Cofactor of entry (j, i).
      const int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
      const int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      const Elem c = f.sub(f.mul(m[r0][c0], m[r1][c1]), f.mul(m[r0][c1], m[r1][c0]));
      r[i][j] = f.mul(c, s);
    }
  }
  return r;
}

}  // namespace plab
