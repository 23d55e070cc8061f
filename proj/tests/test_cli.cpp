#include "ihc/cli.hpp"

#include <gtest/gtest.h>
#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = ihc::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / ("ihc_test_" + name + ".json");
  std::ofstream(path) << text;
  return path.string();
}

std::map<std::string, std::string> fields(const std::string& line) {
  std::map<std::string, std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) {
    auto eq = tok.find('=');
    if (eq != std::string::npos) out[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return out;
}

std::vector<std::map<std::string, std::string>> lines_with(const std::string& text, const std::string& prefix) {
  std::vector<std::map<std::string, std::string>> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line))
    if (line.rfind(prefix + " ", 0) == 0 || line.rfind(prefix + "=", 0) == 0) out.push_back(fields(line));
  return out;
}

std::string num(const nlohmann::json& j) { return j.is_null() ? "-" : j.dump(); }
std::string yes_no(const nlohmann::json& j) { return j.get<bool>() ? "yes" : "no"; }

}  // namespace

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"verify-hodge", "--example", "p112"}).code, 0);
  EXPECT_EQ(run({"verify-hodge", "--example", "cube-face-fan"}).code, 0);
  EXPECT_EQ(run({"verify-hodge", "--example", "no-such-fan"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"ih-dims", "--example", "p2"}).code, 0);
  EXPECT_EQ(run({"report", "--example", "p1xp1"}).code, 0);
  EXPECT_EQ(run({"validate", "--example", "cube-face-fan"}).code, 0);
}

TEST(Cli, UnknownExampleIsReported) {
  auto r = run({"examples", "emit", "no-such-fan"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("no-such-fan"), std::string::npos);
}

TEST(Cli, EmitProjectivePlaneVerbatim) {
  auto r = run({"examples", "emit", "p2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "{\n"
            "  \"name\": \"p2\",\n"
            "  \"n\": 2,\n"
            "  \"rays\": [\n"
            "    [1, 0],\n"
            "    [0, 1],\n"
            "    [-1, -1]\n"
            "  ],\n"
            "  \"max_cones\": [\n"
            "    [0, 1],\n"
            "    [1, 2],\n"
            "    [2, 0]\n"
            "  ]\n"
            "}\n");
}

TEST(Cli, EmitWeightedPlaneRays) {
  auto r = run({"examples", "emit", "p112"});
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["rays"], nlohmann::json::parse("[[1,0],[0,1],[-1,-2]]"));
}

TEST(Cli, EmittedFilesReadBack) {
  auto text = run({"examples", "emit", "octahedron-normal-fan-variant"}).out;
  auto path = write_temp("octa", text);
  auto from_file = run({"ih-dims", path, "--format", "machine"});
  auto builtin = run({"ih-dims", "--example", "octahedron-normal-fan-variant", "--format", "machine"});
  EXPECT_EQ(from_file.code, 0);
  EXPECT_EQ(from_file.out, builtin.out);
}

TEST(Cli, ListHasCatalogColumns) {
  auto r = run({"examples", "list"});
  EXPECT_EQ(r.code, 0);
  std::istringstream is(r.out);
  std::string line;
  int entries = 0;
  bool has_four_dim_simplicial = false;
  while (std::getline(is, line)) {
    ++entries;
    auto f = fields(line);
    EXPECT_TRUE(f.count("n") && f.count("simplicial")) << line;
    if (f["n"] == "4" && f["simplicial"] == "yes") has_four_dim_simplicial = true;
  }
  EXPECT_GE(entries, 8);
  EXPECT_TRUE(has_four_dim_simplicial);
  auto machine = nlohmann::json::parse(run({"examples", "list", "--format", "machine"}).out);
  EXPECT_EQ(machine.size(), static_cast<std::size_t>(entries));
}

TEST(Cli, DegreeBoundValidation) {
  EXPECT_EQ(run({"ih-dims", "--example", "p2", "--degree-bound", "3"}).code, 2);
  EXPECT_EQ(run({"ih-dims", "--example", "p2", "--degree-bound", "2"}).code, 2);
  EXPECT_EQ(run({"ih-dims", "--example", "p2", "--degree-bound", "-4"}).code, 2);
  EXPECT_EQ(run({"ih-dims", "--example", "p2", "--degree-bound", "6"}).code, 0);
}

TEST(Cli, FloatsAreRejectedWithPosition) {
  auto path = write_temp("float", "{\n  \"n\": 2,\n  \"rays\": [[1, 0], [0, 1.5]],\n  \"max_cones\": [[0, 1]]\n}\n");
  auto r = run({"validate", path});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
}

TEST(Cli, MalformedFiles) {
  EXPECT_EQ(run({"validate", write_temp("garbage", "{ not json")}).code, 2);
  EXPECT_EQ(run({"validate", write_temp("extra", R"({"n":1,"rays":[[1],[-1]],"max_cones":[[0],[1]],"x":1})")}).code, 2);
  EXPECT_EQ(run({"validate", "/nonexistent/fan.json"}).code, 2);
  auto overlap = run({"validate", write_temp("overlap", R"({"n":2,"rays":[[1,0],[0,1],[1,1],[-1,2]],"max_cones":[[0,1],[2,3]]})")});
  EXPECT_EQ(overlap.code, 2);
  EXPECT_NE(overlap.err.find("{0,1}"), std::string::npos) << overlap.err;
}

TEST(Cli, HalfPlaneFailsValidation) {
  auto path = write_temp("half", R"({"n":2,"rays":[[1,0],[0,1],[-1,0]],"max_cones":[[0,1],[1,2]]})");
  auto r = run({"validate", path});
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.out.find("complete=no"), std::string::npos);
  EXPECT_NE(run({"verify-hodge", path}).code, 0);
}

TEST(Cli, SkipSheaf) {
  auto p2 = run({"verify-hodge", "--example", "p2", "--skip-sheaf"});
  EXPECT_EQ(p2.code, 0);
  EXPECT_NE(p2.out.find("verdict=pass"), std::string::npos);
  // no exact oracle for classes on non-simplicial fans without the sheaf
  auto cube = run({"verify-hodge", "--example", "cube-face-fan", "--skip-sheaf"});
  EXPECT_EQ(cube.code, 1);
  EXPECT_NE(cube.out.find("UNDETERMINED"), std::string::npos);
}

TEST(Cli, SheafDebugGoesToStderr) {
  auto plain = run({"ih-dims", "--example", "p2"});
  auto debug = run({"ih-dims", "--example", "p2", "--emit-sheaf-debug"});
  EXPECT_EQ(plain.out, debug.out);
  EXPECT_FALSE(debug.err.empty());
}

TEST(CliProperty, TextAndMachineReportsCarryTheSameNumbers) {
  for (const std::string name : {"p112", "p1xp1", "cube-face-fan", "weighted-p1112"}) {
    auto text = run({"verify-hodge", "--example", name}).out;
    auto j = nlohmann::json::parse(run({"verify-hodge", "--example", name, "--format", "machine"}).out);

    auto rows = lines_with(text, "k");
    ASSERT_EQ(rows.size(), j["degrees"].size()) << name;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& d = j["degrees"][i];
      for (const char* key : {"k", "d_gpoly", "d_sheaf", "d_sr", "hodge_rank"}) EXPECT_EQ(rows[i][key], num(d[key])) << name;
      EXPECT_EQ(rows[i]["verdict"], d["verdict"].get<std::string>());
    }
    auto classes = lines_with(text, "class");
    ASSERT_EQ(classes.size(), j["cycle_classes"].size()) << name;
    for (std::size_t i = 0; i < classes.size(); ++i) {
      const auto& c = j["cycle_classes"][i];
      EXPECT_EQ(classes[i]["cone"], num(c["cone"]));
      EXPECT_EQ(classes[i]["k"], num(c["k"]));
      EXPECT_EQ(classes[i]["multiplicity"], c["multiplicity"].is_null() ? "-" : c["multiplicity"].get<std::string>());
      EXPECT_EQ(classes[i]["smooth"], yes_no(c["smooth"]));
      EXPECT_EQ(classes[i]["supported_dim"], num(c["supported_dim"]));
      EXPECT_EQ(classes[i]["class_dim"], num(c["class_dim"]));
    }
    auto lef = lines_with(text, "lefschetz");
    ASSERT_EQ(lef.size(), j["lefschetz"].size()) << name;
    for (std::size_t i = 0; i < lef.size(); ++i)
      for (const char* key : {"k", "power", "rank", "expected"}) EXPECT_EQ(lef[i][key], num(j["lefschetz"][i][key]));
    auto props = lines_with(text, "property");
    ASSERT_EQ(props.size(), j["properties"].size()) << name;
    for (std::size_t i = 0; i < props.size(); ++i) {
      EXPECT_EQ(props[i]["name"], j["properties"][i]["name"].get<std::string>());
      EXPECT_EQ(props[i]["status"], j["properties"][i]["status"].get<std::string>());
    }
    EXPECT_EQ(lines_with(text, "verdict").at(0)["verdict"], j["verdict"].get<std::string>());
  }
}

TEST(CliProperty, MachineOutputIsDeterministic) {
  for (const std::string name : {"p2", "hirzebruch-2", "octahedron-normal-fan-variant"}) {
    auto a = run({"verify-hodge", "--example", name, "--format", "machine"});
    auto b = run({"verify-hodge", "--example", name, "--format", "machine"});
    EXPECT_EQ(a.out, b.out) << name;
    EXPECT_EQ(a.out.find("seconds"), std::string::npos);
  }
}
