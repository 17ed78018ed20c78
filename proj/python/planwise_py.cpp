#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "planwise/bellwether.hpp"
#include "planwise/discretize.hpp"
#include "planwise/eval.hpp"
#include "planwise/planners.hpp"
#include "planwise/serialize.hpp"
#include "planwise/stats.hpp"

namespace py = pybind11;
using namespace planwise;

namespace {

ActionVector parse_row(const std::string& row) {
  if (row.size() != kMetricCount) {
    throw std::invalid_argument("expected " + std::to_string(kMetricCount) + " action characters");
  }
  ActionVector v;
  for (std::size_t i = 0; i < kMetricCount; ++i) v[i] = direction_from_char(row[i]);
  return v;
}

std::vector<Direction> parse_any(const std::string& row) {
  std::vector<Direction> v;
  for (char c : row) v.push_back(direction_from_char(c));
  return v;
}

VersionedDataset load_pooled(const std::vector<std::filesystem::path>& paths) {
  if (paths.size() == 1 && !std::filesystem::is_directory(paths.front())) return load_csv(paths.front());
  std::vector<VersionedDataset> parts;
  std::string name;
  for (const auto& p : paths) {
    if (std::filesystem::is_directory(p)) {
      Project proj = load_project(p);
      name = proj.name;
      for (auto& v : proj.versions) parts.push_back(std::move(v));
    } else {
      parts.push_back(load_csv(p));
      name = parts.back().project;
    }
  }
  return pool(parts, name);
}

PlannerKind kind_of(const std::string& name) {
  auto k = planner_from_name(name);
  if (!k) throw std::invalid_argument("unknown planner '" + name + "'");
  return *k;
}

}  // namespace

PYBIND11_MODULE(_planwise, m) {
  m.doc() = "Defect-reduction planning: XTREE, BELLTREE, threshold baselines and the K-test";

  m.def("overlap", [](const std::string& developer, const std::string& planner) {
    return overlap(parse_any(developer), parse_any(planner));
  }, py::arg("developer"), py::arg("planner"));

  m.def("simpson", [](const std::vector<double>& xs, const std::vector<double>& ys) {
    return stats::simpson_integrate(xs, ys);
  }, py::arg("xs"), py::arg("ys"));

  m.def("fit_logistic", [](const std::vector<double>& x, const std::vector<int>& y) {
    const auto f = stats::fit_univariate_logistic(x, y);
    py::dict d;
    d["alpha"] = f.alpha;
    d["beta"] = f.beta;
    d["beta_se"] = f.beta_se;
    d["p_value"] = f.p_value;
    d["converged"] = f.converged;
    d["iterations"] = f.iterations;
    return d;
  }, py::arg("x"), py::arg("y"));

  m.def("mdlp_cuts", [](const std::vector<double>& values, const std::vector<int>& labels) {
    return mdlp_cuts(values, labels);
  }, py::arg("values"), py::arg("labels"));

  m.def("varl", &varl, py::arg("alpha"), py::arg("beta"), py::arg("p1"));

  m.def("changes", [](const std::string& row) {
    Plan p;
    const auto v = parse_row(row);
    for (std::size_t i = 0; i < kMetricCount; ++i) p.actions[i].direction = v[i];
    return changes_count(p);
  }, py::arg("row"));

  m.def("_plan_json", [](const std::vector<std::filesystem::path>& train, const std::filesystem::path& test,
                         const std::string& planner, double gamma, std::uint64_t seed) {
    PlannerParams params;
    params.gamma = gamma;
    params.seed = seed;
    const auto p = make_planner(kind_of(planner), load_pooled(train), params);
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : load_csv(test).records) arr.push_back(to_json(p->plan(r)));
    return arr.dump();
  }, py::arg("train"), py::arg("test"), py::arg("planner") = "xtree", py::arg("gamma") = 0.5,
     py::arg("seed") = kDefaultSeed);

  m.def("_discover_json", [](const std::filesystem::path& community, const std::string& quality) {
    return to_json(discover(load_community(community), quality)).dump();
  }, py::arg("community"), py::arg("quality") = "g");

  m.def("_evaluate_json", [](const std::filesystem::path& project, const std::string& planner, double epsilon) {
    const PlannerKind kind = kind_of(planner);
    if (kind == PlannerKind::belltree) throw std::invalid_argument("belltree needs bellwether data; use the CLI");
    PlannerFactory f = [kind](const VersionedDataset& d) { return make_planner(kind, d); };
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : ktest_windows(load_project(project), f, epsilon)) arr.push_back(to_json(r));
    return arr.dump();
  }, py::arg("project"), py::arg("planner") = "xtree", py::arg("epsilon") = 0.0);

  m.attr("METRICS") = [] {
    py::list names;
    for (auto n : kMetricNames) names.append(std::string(n));
    return names;
  }();
  m.attr("DEFAULT_SEED") = kDefaultSeed;

  py::register_exception<LoadError>(m, "LoadError", PyExc_ValueError);
}
