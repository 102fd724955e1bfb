#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "json.hpp"

#include "plab/cli.hpp"
#include "plab/setfile.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  json j() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = plab::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string tmp(const std::string& name) { return (std::filesystem::temp_directory_path() / name).string(); }

// Enough of JSON Schema for the checked-in files: type, required,
// properties, additionalProperties, items, enum, pattern.
bool type_ok(const json& v, const std::string& t) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "integer") return v.is_number_integer();
  if (t == "number") return v.is_number();
  if (t == "boolean") return v.is_boolean();
  if (t == "null") return v.is_null();
  return false;
}

void validate(const json& v, const json& s, const std::string& path, std::vector<std::string>& errors) {
  if (s.contains("type")) {
    bool ok = false;
    if (s["type"].is_array()) {
      for (const auto& t : s["type"]) ok = ok || type_ok(v, t.get<std::string>());
    } else {
      ok = type_ok(v, s["type"].get<std::string>());
    }
    if (!ok) {
      errors.push_back(path + ": wrong type");
      return;
    }
  }
  if (s.contains("enum")) {
    bool found = false;
    for (const auto& e : s["enum"]) found = found || e == v;
    if (!found) errors.push_back(path + ": not in enum");
  }
  if (s.contains("pattern") && v.is_string() && !std::regex_match(v.get<std::string>(), std::regex(s["pattern"].get<std::string>())))
    errors.push_back(path + ": pattern mismatch '" + v.get<std::string>() + "'");
  if (v.is_object()) {
    if (s.contains("required"))
      for (const auto& r : s["required"])
        if (!v.contains(r.get<std::string>())) errors.push_back(path + ": missing " + r.get<std::string>());
    for (const auto& [k, x] : v.items()) {
      if (s.contains("properties") && s["properties"].contains(k)) {
        validate(x, s["properties"][k], path + "." + k, errors);
      } else if (s.contains("additionalProperties")) {
        const auto& ap = s["additionalProperties"];
        if (ap.is_boolean()) {
          if (!ap.get<bool>()) errors.push_back(path + ": unexpected " + k);
        } else {
          validate(x, ap, path + "." + k, errors);
        }
      }
    }
  }
  if (v.is_array() && s.contains("items"))
    for (std::size_t i = 0; i < v.size(); ++i) validate(v[i], s["items"], path + "[" + std::to_string(i) + "]", errors);
}

std::vector<std::string> check_schema(const std::string& name, const json& v) {
  std::ifstream in(std::string(PLAB_SCHEMA_DIR) + "/" + name + ".json");
  EXPECT_TRUE(in.good()) << name;
  const json s = json::parse(in);
  std::vector<std::string> errors;
  validate(v, s, name, errors);
  return errors;
}

json without_seconds(json j) {
  if (j.is_object()) {
    j.erase("seconds");
    for (auto& [k, v] : j.items()) v = without_seconds(v);
  } else if (j.is_array()) {
    for (auto& v : j) v = without_seconds(v);
  }
  return j;
}

}  // namespace

TEST(Cli, GraphStatsAtThree) {
  const auto r = run({"graph", "stats", "--q", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.j();
  EXPECT_EQ(j["vertices"], 91);
  EXPECT_EQ(j["absolute"], 28);
  EXPECT_EQ(j["triangles"], 63);
  EXPECT_EQ(j["regularity"]["degree"], 6);
  EXPECT_TRUE(j["regularity"]["regular"].get<bool>());
}

TEST(Cli, SigmaBuildAtFour) {
  const auto path = tmp("plab_cli_sigma4.txt");
  const auto r = run({"sigma", "build", "--q", "4", "--out", path});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.j();
  EXPECT_EQ(j["size"], 128);
  EXPECT_EQ(j["regular"], 6);
  EXPECT_TRUE(j["triangle_free"].get<bool>());
  const auto v = run({"sigma", "verify", "--q", "4", "--set", path});
  ASSERT_EQ(v.code, 0) << v.err;
  EXPECT_TRUE(v.j()["passed"].get<bool>());
  EXPECT_EQ(v.j()["checks"]["girth"]["girth"], 5);
  std::filesystem::remove(path);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"graph", "stats", "--q", "3", "--bogus"}).code, 2);
  EXPECT_EQ(run({"nonsense"}).code, 2);
  EXPECT_EQ(run({"graph", "stats", "--q", "6"}).code, 2);
  EXPECT_EQ(run({"graph", "check-set", "--q", "2"}).code, 2);
  EXPECT_EQ(run({"graph", "check-set", "--q", "2", "--set", tmp("plab_does_not_exist.txt")}).code, 2);
  const auto p = run({"spectrum", "--q", "2", "--perturb"});
  EXPECT_EQ(p.code, 1);
  EXPECT_FALSE(p.j()["verified"].get<bool>());
  const auto g9 = run({"goodset", "--q", "9"});
  EXPECT_EQ(g9.code, 1);
  EXPECT_NE(g9.err.find("tangent-cone"), std::string::npos);
  EXPECT_EQ(run({"search", "max", "--q", "4", "--exact"}).code, 2);
}

TEST(Cli, FieldOverride) {
  const auto r = run({"field", "--q", "4", "--field", "2^4/irr=25"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.j()["irreducible_code"], 25);
  EXPECT_EQ(run({"field", "--q", "4", "--field", "2^4/irr=21"}).code, 2);  // (t^2 + t + 1)^2
  EXPECT_EQ(run({"field", "--q", "4", "--field", "2^3/irr=11"}).code, 2);  // wrong order
}

TEST(Cli, CheckSetFindsTriangle) {
  // every non-absolute point of PG(2,4) is a set with triangles
  const auto path = tmp("plab_cli_tri.txt");
  plab::PolarityGraph g(plab::UnitaryPolarity(plab::Plane(plab::Field::of_order(4))));
  plab::write_set_file(path, g.plane(), plab::all_non_absolute(g));
  const auto chk = run({"graph", "check-set", "--q", "2", "--set", path});
  ASSERT_EQ(chk.code, 1) << chk.err;
  const auto j = chk.j();
  EXPECT_FALSE(j["triangle_free"].get<bool>());
  ASSERT_EQ(j["witness"].size(), 3u);
  EXPECT_EQ(j["degrees_min"], 2);
  EXPECT_EQ(j["degrees_max"], 2);
  EXPECT_TRUE(check_schema("graph-check-set", j).empty());
  std::filesystem::remove(path);
}

TEST(Cli, OutputsMatchSchemas) {
  const auto s2 = tmp("plab_cli_s2.txt");
  const auto zf = tmp("plab_cli_zf.txt");
  const std::vector<std::pair<std::string, std::vector<std::string>>> cases = {
      {"field", {"field", "--q", "8"}},
      {"graph-stats", {"graph", "stats", "--q", "4"}},
      {"sigma-build", {"sigma", "build", "--q", "2", "--out", s2}},
      {"graph-check-set", {"graph", "check-set", "--q", "2", "--set", s2}},
      {"sigma-verify", {"sigma", "verify", "--q", "2", "--set", s2}},
      {"spectrum", {"spectrum", "--q", "3"}},
      {"spectrum", {"spectrum", "--q", "2", "--perturb"}},
      {"eml-samples", {"eml", "--q", "2", "--samples", "20"}},
      {"eml-set", {"eml", "--q", "2", "--set", s2}},
      {"goodset", {"goodset", "--q", "8"}},
      {"goodset", {"goodset", "--q", "7", "--odd"}},
      {"search-max", {"search", "max", "--q", "2"}},
      {"search-max", {"search", "max", "--q", "4", "--heuristic"}},
      {"figueroa-build", {"figueroa", "build", "--base-q", "2"}},
      {"figueroa-verify-axioms", {"figueroa", "verify-axioms", "--sample", "50"}},
      {"figueroa-transfer", {"figueroa", "transfer", "--out", zf}},
      {"suite", {"suite", "--q-list", "2"}},
  };
  for (const auto& [schema, args] : cases) {
    const auto r = run(args);
    ASSERT_TRUE(r.code == 0 || r.code == 1) << args[0] << ": " << r.err;
    const auto errors = check_schema(schema, r.j());
    EXPECT_TRUE(errors.empty()) << schema << ": " << (errors.empty() ? "" : errors.front());
  }
  // the validator does reject bad documents
  EXPECT_FALSE(check_schema("graph-stats", json{{"q", 3}}).empty());
  EXPECT_FALSE(check_schema("eml-set", json{{"q", 2}, {"size", 1}, {"lhs", 0.5}, {"rhs", "1"}, {"holds", true}}).empty());
  std::filesystem::remove(s2);
  std::filesystem::remove(zf);
}

TEST(Cli, RationalsAreStrings) {
  const auto r = run({"eml", "--q", "3", "--samples", "10"});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.j()["min_slack"].is_string());
}

TEST(Cli, FigueroaTransferWritesSetFile) {
  const auto zf = tmp("plab_cli_zf2.txt");
  const auto r = run({"figueroa", "transfer", "--base-q", "2", "--out", zf});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.j()["size"], 1448);
  EXPECT_TRUE(r.j()["triangle_free"].get<bool>());
  std::ifstream in(zf);
  std::string header, kind;
  std::getline(in, header);
  std::getline(in, kind);
  EXPECT_EQ(header, "field=2^6/irr=67");
  EXPECT_EQ(kind, "plane=figueroa");
  std::size_t lines = 0;
  for (std::string l; std::getline(in, l);) lines += !l.empty();
  EXPECT_EQ(lines, 1448u);
  // feeding it back through the transfer input is rejected: it lives on the Figueroa plane
  EXPECT_EQ(run({"figueroa", "transfer", "--base-q", "2", "--set", zf}).code, 2);
  std::filesystem::remove(zf);
}

TEST(Cli, SuiteIsIdempotent) {
  const auto a = run({"suite"});
  const auto b = run({"suite"});
  ASSERT_EQ(a.code, 0) << a.err;
  ASSERT_EQ(b.code, 0);
  EXPECT_TRUE(a.j()["passed"].get<bool>());
  EXPECT_EQ(without_seconds(a.j()), without_seconds(b.j()));
  std::set<int> qs;
  const auto items = a.j()["items"];
  for (const auto& item : items)
    if (item.contains("q")) qs.insert(item["q"].get<int>());
  EXPECT_EQ(qs, (std::set<int>{2, 3, 4}));
}

TEST(Cli, ThreadsOption) {
  EXPECT_EQ(run({"--threads", "2", "graph", "stats", "--q", "2"}).code, 0);
}
