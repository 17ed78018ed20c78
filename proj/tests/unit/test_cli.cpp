#include "doctest.h"

#include <sstream>

#include "cli.hpp"
#include "json.hpp"
#include "support/synthetic.hpp"
#include "support/tempdir.hpp"

using namespace planwise;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "planwise");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("unknown planner is a usage error") {
  testing::TempDir dir;
  testing::write_project(dir.path(), testing::planted_project(1, 60, 2));
  const auto r = invoke({"plan", "--planner", "gale", "--train", (dir / "planted-1.0.csv").string(), "--test",
                         (dir / "planted-1.1.csv").string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("gale") != std::string::npos);
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
}

TEST_CASE("plan writes one plan per test class") {
  testing::TempDir dir;
  const auto project = testing::planted_project(2, 120, 2);
  testing::write_project(dir.path(), project);
  const auto train = (dir / "planted-1.0.csv").string();
  const auto test = (dir / "planted-1.1.csv").string();
  for (const char* planner : {"xtree", "alves", "shatnawi", "oliveira"}) {
    const auto r = invoke({"plan", "--planner", planner, "--train", train, "--test", test});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.is_array());
    CHECK(j.size() == 120);
    CHECK(j[0]["schema_version"] == 1);
    CHECK(j[0]["planner"] == planner);
    CHECK(j[0]["class"] == project.versions[1].records[0].name);
  }
  const auto csv = invoke({"plan", "--train", train, "--test", test, "--format", "csv"});
  REQUIRE(csv.code == 0);
  CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 121);
  CHECK(csv.out.rfind("class,wmc,", 0) == 0);
}

TEST_CASE("reruns are byte-identical") {
  testing::TempDir dir;
  testing::write_project(dir / "proj", testing::planted_project(3, 150, 4));
  const auto a = invoke({"evaluate", "--project", (dir / "proj").string(), "--planner", "all", "--out",
                         (dir / "a").string()});
  const auto b = invoke({"evaluate", "--project", (dir / "proj").string(), "--planner", "all", "--out",
                         (dir / "b").string()});
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.err.find("skipping belltree") != std::string::npos);
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(dir / "a")) {
    ++files;
    CHECK(testing::slurp(entry.path()) == testing::slurp(dir / "b" / entry.path().filename()));
  }
  // 4 planners x 2 windows x (json + curve) + summary
  CHECK(files == 17);
  const auto summary = testing::slurp(dir / "a" / "summary.csv");
  CHECK(std::count(summary.begin(), summary.end(), '\n') == 9);
}

TEST_CASE("evaluate needs three releases") {
  testing::TempDir dir;
  testing::write_project(dir / "proj", testing::planted_project(3, 40, 2));
  const auto r = invoke({"evaluate", "--project", (dir / "proj").string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("2 version(s)") != std::string::npos);
  CHECK(invoke({"evaluate"}).code == 2);
}

TEST_CASE("belltree without bellwether data is a usage error") {
  testing::TempDir dir;
  testing::write_project(dir / "proj", testing::planted_project(3, 40, 3));
  CHECK(invoke({"evaluate", "--project", (dir / "proj").string(), "--planner", "belltree"}).code == 2);
}

TEST_CASE("evaluate with a bellwether file") {
  testing::TempDir dir;
  testing::write_project(dir / "proj", testing::planted_project(4, 80, 3));
  testing::write_release(dir / "bell.csv", testing::planted_release(99, 200, "2.0", 0, "bell"));
  const auto r = invoke({"evaluate", "--project", (dir / "proj").string(), "--planner", "belltree",
                         "--bellwether", (dir / "bell.csv").string()});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.size() == 1);
  CHECK(j[0]["planner"] == "belltree");
}

TEST_CASE("bellwether command on a toy community") {
  testing::TempDir dir;
  for (const auto& p : testing::planted_community(1).projects) testing::write_project(dir / p.name, p);
  const auto r = invoke({"bellwether", "--community", dir.path().string()});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["bellwether"] == "exemplar");
  CHECK(r.err.find("bellwether: exemplar") != std::string::npos);
}

TEST_CASE("malformed csv names the file") {
  testing::TempDir dir;
  {
    std::ofstream f(dir / "broken-1.0.csv");
    f << "name,wmc,bug\nA,notanumber,0\n";
  }
  testing::write_release(dir / "ok-1.0.csv", testing::planted_release(1, 30, "1.0", 0));
  const auto r = invoke({"plan", "--train", (dir / "ok-1.0.csv").string(), "--test",
                         (dir / "broken-1.0.csv").string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("broken-1.0.csv") != std::string::npos);
  const auto missing = invoke({"plan", "--train", (dir / "nope.csv").string(), "--test",
                               (dir / "ok-1.0.csv").string()});
  CHECK(missing.code == 1);
  CHECK(missing.err.find("nope.csv") != std::string::npos);
}

TEST_CASE("help lists defaults") {
  const auto r = invoke({"plan", "--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("--gamma") != std::string::npos);
  CHECK(r.out.find("0.5") != std::string::npos);
  CHECK(r.out.find("20180801") != std::string::npos);
}

TEST_CASE("thresholds and tree dumps") {
  testing::TempDir dir;
  testing::write_release(dir / "t-1.0.csv", testing::planted_release(5, 300, "1.0", 0));
  const auto t = invoke({"thresholds", "--planner", "oliveira", "--train", (dir / "t-1.0.csv").string()});
  REQUIRE(t.code == 0);
  CHECK(nlohmann::json::parse(t.out)["rules"].size() == 20);
  CHECK(invoke({"thresholds", "--planner", "xtree", "--train", (dir / "t-1.0.csv").string()}).code == 2);
  const auto tree = invoke({"tree", "--train", (dir / "t-1.0.csv").string(), "--out", (dir / "tree.json").string()});
  REQUIRE(tree.code == 0);
  const auto j = nlohmann::json::parse(testing::slurp(dir / "tree.json"));
  CHECK(j.contains("root"));
}
