#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "plab/constructions.hpp"
#include "plab/errors.hpp"
#include "plab/setfile.hpp"

using namespace plab;

namespace {

PolarityGraph make_graph(std::uint32_t q) {
  return PolarityGraph(UnitaryPolarity(Plane(Field::of_order(std::uint64_t(q) * q))));
}

SetFile parse(const std::string& text) {
  std::istringstream in(text);
  return read_set_file(in);
}

}  // namespace

TEST(SetFile, RoundTripSigma) {
  auto g = make_graph(4);
  const auto sigma = build_sigma(g, good_set_even(g)).points;
  std::ostringstream out;
  write_set_file(out, g.plane(), sigma);
  const std::string text = out.str();
  EXPECT_EQ(text.rfind("field=2^4/irr=19\nplane=desarguesian\n", 0), 0u);
  const auto back = parse(text);
  EXPECT_EQ(back.plane, PlaneKind::Desarguesian);
  EXPECT_EQ(back.points.size(), 128u);
  EXPECT_EQ(to_vertex_set(back, g.plane()), sigma);
}

TEST(SetFile, RoundTripThroughDisk) {
  auto g = make_graph(3);
  VertexSet s(g.num_points(), {0, 5, 17, 90});
  const auto path = (std::filesystem::temp_directory_path() / "plab_setfile_test.txt").string();
  write_set_file(path, g.plane(), s, PlaneKind::Figueroa);
  const auto back = read_set_file(path);
  EXPECT_EQ(back.plane, PlaneKind::Figueroa);
  EXPECT_EQ(to_vertex_set(back, g.plane()), s);
  std::filesystem::remove(path);
  EXPECT_THROW(read_set_file(path), UsageError);
}

TEST(SetFile, CommentsAndBlankLines) {
  const auto f = parse("# a set\nfield=2^2/irr=7\n\n1,0,0\n# middle\n0,1,3\n");
  EXPECT_EQ(f.points.size(), 2u);
  EXPECT_EQ(f.field->size(), 4u);
}

TEST(SetFile, Errors) {
  EXPECT_THROW(parse(""), UsageError);
  EXPECT_THROW(parse("1,0,0\n"), UsageError);
  EXPECT_THROW(parse("field=6\n"), UsageError);
  EXPECT_THROW(parse("field=2^2/irr=7\nplane=hyperbolic\n"), UsageError);
  EXPECT_THROW(parse("field=2^2/irr=7\n1,0,0\nplane=figueroa\n"), UsageError);
  EXPECT_THROW(parse("field=2^2/irr=7\n2,0,0\n"), UsageError);  // not normalized
  EXPECT_THROW(parse("field=2^2/irr=7\n0,0,0\n"), UsageError);
  EXPECT_THROW(parse("field=2^2/irr=7\n1,0,4\n"), UsageError);  // not a field element
  EXPECT_THROW(parse("field=2^2/irr=7\n1,0\n"), UsageError);
  EXPECT_THROW(parse("field=2^2/irr=7\n1,0,1\n1,0,1\n"), UsageError);
  const auto f = parse("field=2^2/irr=7\n1,0,1\n");
  auto g = make_graph(3);
  EXPECT_THROW(to_vertex_set(f, g.plane()), UsageError);
}
