#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "planwise/data_model.hpp"
#include "support/synthetic.hpp"

using namespace planwise;

namespace {

const char* kHeader =
    "name,version,name,wmc,dit,noc,cbo,rfc,lcom,ca,ce,npm,lcom3,loc,dam,moa,mfa,cam,ic,cbm,amc,max_cc,avg_cc,bug\n";

std::string row(const std::string& cls, int bug, double fill = 1.0) {
  std::ostringstream s;
  s << "ant,1.7," << cls;
  for (int i = 0; i < 20; ++i) s << ',' << fill + i;
  s << ',' << bug << '\n';
  return s.str();
}

VersionedDataset parse(const std::string& text, std::vector<std::string>* warnings = nullptr) {
  std::istringstream in(text);
  return parse_csv(in, "ant-1.7.csv", warnings);
}

std::string error_of(const std::string& text) {
  try {
    parse(text);
  } catch (const LoadError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("jureczko layout: project and class share the name header") {
  auto d = parse(std::string(kHeader) + row("org.A", 3) + row("org.B", 0));
  CHECK(d.project == "ant");
  CHECK(d.version == "1.7");
  REQUIRE(d.records.size() == 2);
  CHECK(d.records[0].name == "org.A");
  CHECK(d.records[0].defects == 3);
  CHECK(d.records[0][Metric::wmc] == 1.0);
  CHECK(d.records[0][Metric::avg_cc] == 20.0);
  CHECK(d.records[1].defects == 0);
}

TEST_CASE("header aliases and case-insensitive metric names") {
  const std::string text =
      "$name,WMC,DIT,NOC,CBO,RFC,LCOM,CA,CE,NPM,LCOM3,LOC,DAM,MOA,MFA,CAM,IC,CBM,AMC,Max_CC,Avg_CC,extra,$<bugs\n"
      "x.Y,1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,zzz,2\n";
  std::vector<std::string> warnings;
  auto d = parse(text, &warnings);
  CHECK(d.records.at(0).name == "x.Y");
  CHECK(d.records.at(0)[Metric::max_cc] == 19.0);
  CHECK(d.records.at(0).defects == 2);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("extra") != std::string::npos);
}

TEST_CASE("load errors name the row and column") {
  CHECK(error_of(kHeader).find("empty dataset") != std::string::npos);
  CHECK(error_of("").find("empty dataset") != std::string::npos);

  std::string missing = kHeader;
  missing.replace(missing.find(",loc,"), 5, ",xyz,");
  missing += row("a", 0);
  CHECK(error_of(missing).find("missing column 'loc'") != std::string::npos);

  auto bad = std::string(kHeader) + row("a", 0) + "ant,1.7,b,1,2,x,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,0\n";
  auto msg = error_of(bad);
  CHECK(msg.find("row 3") != std::string::npos);
  CHECK(msg.find("column 'noc'") != std::string::npos);

  auto dup = std::string(kHeader) + row("a", 0) + row("a", 1);
  msg = error_of(dup);
  CHECK(msg.find("duplicate class 'a'") != std::string::npos);
  CHECK(msg.find("row 3") != std::string::npos);

  auto empty_cell = std::string(kHeader) + "ant,1.7,c,1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,,0\n";
  CHECK(error_of(empty_cell).find("column 'avg_cc'") != std::string::npos);

  auto negative = std::string(kHeader) + row("a", -1);
  CHECK(error_of(negative).find("negative") != std::string::npos);

  std::string half = row("a", 0);
  half.replace(half.rfind(",0"), 2, ",0.5");
  CHECK(error_of(std::string(kHeader) + half).find("not an integer") != std::string::npos);
}

TEST_CASE("write then parse is the identity on records") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1000.0);
  std::uniform_int_distribution<int> bugs(0, 9);
  for (int trial = 0; trial < 20; ++trial) {
    VersionedDataset d;
    d.project = "proj";
    d.version = "2.0";
    for (int i = 0; i < 30; ++i) {
      ClassRecord r;
      r.name = "pkg.C" + std::to_string(i);
      for (auto& v : r.metrics) v = trial % 2 ? std::round(u(rng)) : u(rng);
      r.defects = bugs(rng);
      d.records.push_back(r);
    }
    std::stringstream buf;
    write_csv(buf, d);
    auto back = parse_csv(buf, "proj-2.0.csv");
    CHECK(back.project == d.project);
    CHECK(back.version == d.version);
    REQUIRE(back.records.size() == d.records.size());
    for (std::size_t i = 0; i < d.records.size(); ++i) {
      CHECK(back.records[i].name == d.records[i].name);
      CHECK(back.records[i].metrics == d.records[i].metrics);
      CHECK(back.records[i].defects == d.records[i].defects);
    }
  }
}

TEST_CASE("diff_versions examples") {
  using testing::make_record;
  SUBCASE("identical versions keep everything") {
    auto d = testing::make_dataset({make_record("a", 3), make_record("b", 7)});
    for (double eps : {0.0, 0.1, 2.0}) {
      for (const auto& [name, v] : diff_versions(d, d, eps)) CHECK(v == no_change());
    }
  }
  SUBCASE("loc 100 -> 150 is an increase") {
    auto a = make_record("a");
    auto b = make_record("a");
    a[Metric::loc] = 100;
    b[Metric::loc] = 150;
    auto diff = diff_versions(testing::make_dataset({a}), testing::make_dataset({b}), 0.0);
    CHECK(diff.at("a")[index_of(Metric::loc)] == Direction::increase);
  }
  SUBCASE("three-class grid computed by hand") {
    // x: wmc 10->12 (+), loc 200->150 (-), rfc 30->31 (+ at eps 0, keep at eps 0.05)
    // y: all metrics 5 -> 5 except cbo 5->0 (-)
    // z: only in the old version; w: only in the new version
    auto x0 = make_record("x", 10), x1 = make_record("x", 10);
    x0[Metric::wmc] = 10; x1[Metric::wmc] = 12;
    x0[Metric::loc] = 200; x1[Metric::loc] = 150;
    x0[Metric::rfc] = 30; x1[Metric::rfc] = 31;
    auto y0 = make_record("y", 5), y1 = make_record("y", 5);
    y1[Metric::cbo] = 0;
    auto old_v = testing::make_dataset({x0, y0, make_record("z")});
    auto new_v = testing::make_dataset({make_record("w"), y1, x1});

    auto expect_x = no_change();
    expect_x[index_of(Metric::wmc)] = Direction::increase;
    expect_x[index_of(Metric::loc)] = Direction::decrease;
    expect_x[index_of(Metric::rfc)] = Direction::increase;
    auto expect_y = no_change();
    expect_y[index_of(Metric::cbo)] = Direction::decrease;

    auto diff = diff_versions(old_v, new_v, 0.0);
    REQUIRE(diff.size() == 2);
    CHECK(compact_row(diff.at("x")) == compact_row(expect_x));
    CHECK(compact_row(diff.at("y")) == compact_row(expect_y));

    expect_x[index_of(Metric::rfc)] = Direction::keep;
    CHECK(compact_row(diff_versions(old_v, new_v, 0.05).at("x")) == compact_row(expect_x));
  }
  SUBCASE("disjoint names give an empty map") {
    CHECK(diff_versions(testing::make_dataset({make_record("a")}), testing::make_dataset({make_record("b")})).empty());
  }
}

TEST_CASE("diff_versions is antisymmetric at epsilon 0") {
  auto flip = [](Direction d) {
    return d == Direction::increase ? Direction::decrease : d == Direction::decrease ? Direction::increase : d;
  };
  auto a = testing::planted_release(1, 50, "1", 0);
  auto b = testing::planted_release(2, 50, "2", 1);
  auto forward = diff_versions(a, b);
  auto backward = diff_versions(b, a);
  REQUIRE(forward.size() == 50);
  for (const auto& [name, v] : forward) {
    const auto& w = backward.at(name);
    for (std::size_t m = 0; m < kMetricCount; ++m) CHECK(w[m] == flip(v[m]));
  }
}

TEST_CASE("version labels sort naturally") {
  CHECK(version_less("1.9", "1.10"));
  CHECK(version_less("1.2", "1.2.1"));
  CHECK_FALSE(version_less("2.0", "1.7"));
  CHECK(version_less("ant-1.3", "ant-1.4"));
}

TEST_CASE("project and community directories") {
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "planwise_dm_test";
  fs::remove_all(root);
  fs::create_directories(root / "ant");
  fs::create_directories(root / "bee");
  for (auto [dir, ver] : {std::pair{"ant", "1.10"}, {"ant", "1.9"}, {"bee", "2.0"}}) {
    std::ofstream f(root / dir / (std::string(dir) + "-" + ver + ".csv"));
    f << "name,version,name,wmc,dit,noc,cbo,rfc,lcom,ca,ce,npm,lcom3,loc,dam,moa,mfa,cam,ic,cbm,amc,max_cc,avg_cc,bug\n";
    f << dir << ',' << ver << ",c1";
    for (int i = 0; i < 20; ++i) f << ",1";
    f << ",0\n";
  }
  auto project = load_project(root / "ant");
  REQUIRE(project.versions.size() == 2);
  CHECK(project.name == "ant");
  CHECK(project.versions[0].version == "1.9");
  CHECK(project.versions[1].version == "1.10");
  CHECK(project.versions[1].released_order == 1);

  auto community = load_community(root);
  REQUIRE(community.projects.size() == 2);
  CHECK(community.projects[1].name == "bee");

  auto pooled = pool(project);
  CHECK(pooled.records.size() == 2);
  CHECK(pooled.records[0].name == "1.9/c1");
  fs::remove_all(root);
}

TEST_CASE("jureczko ant-1.7 row count" * doctest::skip(std::getenv("PLANWISE_CORPUS") == nullptr)) {
  const std::filesystem::path dir = std::getenv("PLANWISE_CORPUS");
  auto d = load_csv(dir / "ant" / "ant-1.7.csv");
  CHECK(d.records.size() == 745);
}
