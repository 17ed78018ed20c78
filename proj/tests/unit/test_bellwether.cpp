#include "doctest.h"

#include <algorithm>
#include <random>

#include "planwise/bellwether.hpp"
#include "support/synthetic.hpp"

using namespace planwise;

namespace {

Project single_release(std::string name, std::vector<ClassRecord> recs) {
  Project p;
  p.name = name;
  p.versions.push_back(testing::make_dataset(std::move(recs), "1.0", name));
  return p;
}

std::vector<ClassRecord> loc_driven(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> u(0, 100);
  std::vector<ClassRecord> out;
  for (std::size_t i = 0; i < n; ++i) {
    auto r = testing::make_record("C" + std::to_string(i));
    for (auto& v : r.metrics) v = u(rng);
    r.defects = r[Metric::loc] > 50 ? 2 : 0;
    out.push_back(r);
  }
  return out;
}

}  // namespace

TEST_CASE("g-score") {
  CHECK(*g_score({8, 1, 9, 2}) == doctest::Approx(2 * 0.8 * 0.9 / 1.7));
  CHECK(*g_score({5, 0, 5, 0}) == 1.0);
  CHECK(*g_score({0, 5, 0, 5}) == 0.0);
  CHECK_FALSE(g_score({0, 3, 7, 0}).has_value());
  CHECK_FALSE(g_score({3, 0, 0, 7}).has_value());
  CHECK(*f1_score({8, 2, 9, 2}) == doctest::Approx(0.8));
  CHECK_THROWS(quality_measure("auc"));
}

TEST_CASE("two equally good projects tie to the smaller name") {
  Community c;
  c.projects.push_back(single_release("zeta", loc_driven(1, 200)));
  c.projects.push_back(single_release("alpha", loc_driven(2, 200)));
  const auto report = discover(c);
  CHECK(report.projects == std::vector<std::string>{"alpha", "zeta"});
  CHECK(*report.scores[0][1] == 1.0);
  CHECK(*report.scores[1][0] == 1.0);
  CHECK_FALSE(report.scores[0][0].has_value());
  CHECK(report.bellwether == "alpha");
}

TEST_CASE("planted exemplar is found") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto report = discover(testing::planted_community(seed));
    CHECK(report.bellwether == "exemplar");
  }
}

TEST_CASE("discovery ignores project order") {
  auto c = testing::planted_community(3);
  const auto a = discover(c);
  std::reverse(c.projects.begin(), c.projects.end());
  const auto b = discover(c);
  CHECK(a.bellwether == b.bellwether);
  CHECK(a.projects == b.projects);
  CHECK(a.scores == b.scores);
}

TEST_CASE("removing another project keeps the exemplar") {
  auto c = testing::planted_community(4);
  c.projects.erase(c.projects.begin() + 1);
  CHECK(discover(c).bellwether == "exemplar");
  Community lonely;
  lonely.projects.push_back(c.projects.front());
  CHECK_THROWS_AS(discover(lonely), std::invalid_argument);
}

TEST_CASE("belltree is xtree on the bellwether data") {
  const auto data = testing::planted_release(6, 300, "1", 0, "lucene");
  const auto tree = train_tree(data);
  const auto other = testing::planted_release(7, 100, "2", 1, "ant");
  for (const auto& r : other.records) {
    const Plan b = belltree_plan(data, r);
    const Plan x = xtree_plan(tree, r);
    CHECK(b.planner == "belltree");
    CHECK(b.directions() == x.directions());
  }
}

TEST_CASE("validation keeps a bellwether whose plans help") {
  BellwetherReport report;
  KTestResult r;
  r.aupec_reduced = 59;
  r.aupec_increased = 9;
  CHECK(validate(report, r) == ValidationDecision::keep);
  r.aupec_increased = 59;
  CHECK(validate(report, r) == ValidationDecision::rediscover);
  r.aupec_reduced.reset();
  CHECK(validate(report, r) == ValidationDecision::rediscover);
  CHECK(to_string(ValidationDecision::keep) == "keep");
}
