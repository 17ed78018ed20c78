#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "planwise/bellwether.hpp"
#include "planwise/data_model.hpp"
#include "planwise/eval.hpp"
#include "planwise/planners.hpp"
#include "planwise/serialize.hpp"

namespace planwise::cli {
namespace {

namespace fs = std::filesystem;

struct RunConfig {
  std::string planner = "xtree";
  double gamma = 0.5;
  double percentile = 70.0;
  double p0 = 0.05;
  double p1 = 0.05;
  double min_compliance = 90.0;
  double tail = 90.0;
  int max_depth = 10;
  int min_leaf = 0;
  double epsilon = 0.0;
  std::uint64_t seed = kDefaultSeed;
  std::string quality = "g";
  std::vector<std::string> train;
  std::string test;
  std::string community;
  std::string project;
  std::vector<std::string> versions;
  std::string bellwether;
  std::string out;
  std::string format = "json";

  PlannerParams params() const {
    PlannerParams p;
    p.gamma = gamma;
    p.percentile = percentile;
    p.p0 = p0;
    p.p1 = p1;
    p.min_compliance = min_compliance;
    p.tail = tail;
    p.tree.max_depth = max_depth;
    p.tree.min_leaf = min_leaf;
    p.seed = seed;
    return p;
  }
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Writes through a temporary file so readers never see partial output.
void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary);
    if (!f) throw std::runtime_error(path.string() + ": cannot open for writing");
    f << content;
    if (!f) throw std::runtime_error(path.string() + ": write failed");
  }
  fs::rename(tmp, path);
}

void emit(const RunConfig& cfg, const std::string& content, std::ostream& out) {
  if (cfg.out.empty() || cfg.out == "-") {
    out << content;
  } else {
    write_file(cfg.out, content);
  }
}

void report_warnings(const std::vector<std::string>& warnings, std::ostream& err) {
  for (const auto& w : warnings) err << "warning: " << w << '\n';
}

VersionedDataset load_training(const std::vector<std::string>& paths, std::vector<std::string>& warnings) {
  if (paths.size() == 1 && !fs::is_directory(paths.front())) return load_csv(paths.front(), &warnings);
  std::vector<VersionedDataset> parts;
  std::string name;
  for (const auto& p : paths) {
    if (fs::is_directory(p)) {
      Project proj = load_project(p, &warnings);
      name = proj.name;
      for (auto& v : proj.versions) parts.push_back(std::move(v));
    } else {
      parts.push_back(load_csv(p, &warnings));
      name = parts.back().project;
    }
  }
  return pool(parts, name);
}

PlannerKind parse_planner(const std::string& name) {
  auto kind = planner_from_name(name);
  if (!kind) throw UsageError("unknown planner '" + name + "'");
  return *kind;
}

std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

// ---- commands ---------------------------------------------------------------------

int cmd_plan(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const PlannerKind kind = parse_planner(cfg.planner);
  std::vector<std::string> warnings;
  const VersionedDataset train = load_training(cfg.train, warnings);
  const VersionedDataset test = load_csv(cfg.test, &warnings);
  report_warnings(warnings, err);

  const auto planner = make_planner(kind, train, cfg.params());
  std::vector<Plan> plans;
  plans.reserve(test.records.size());
  for (const auto& r : test.records) plans.push_back(planner->plan(r));

  if (cfg.format == "csv") {
    emit(cfg, plans_compact(plans), out);
  } else {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& p : plans) {
      nlohmann::ordered_json j;
      j["schema_version"] = kSchemaVersion;
      j.update(to_json(p));
      arr.push_back(std::move(j));
    }
    emit(cfg, dump(arr), out);
  }
  return 0;
}

int cmd_bellwether(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<std::string> warnings;
  const Community community = load_community(cfg.community, &warnings);
  report_warnings(warnings, err);
  if (community.projects.size() < 2) {
    throw std::runtime_error(cfg.community + ": bellwether discovery needs at least two projects");
  }
  TreeParams tree;
  tree.max_depth = cfg.max_depth;
  tree.min_leaf = cfg.min_leaf;
  const auto report = discover(community, cfg.quality, tree);
  emit(cfg, dump(to_json(report)), out);
  err << "bellwether: " << report.bellwether << '\n';
  return 0;
}

struct Cell {
  std::string key;
  KTestResult result;
};

std::string format_aupec(const std::optional<double>& v) {
  if (!v) return "n/a";
  std::ostringstream s;
  s << std::fixed << std::setprecision(1) << *v;
  return s.str();
}

int cmd_evaluate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<std::string> warnings;
  Project project;
  if (!cfg.project.empty()) {
    project = load_project(cfg.project, &warnings);
  } else if (!cfg.versions.empty()) {
    std::vector<fs::path> files(cfg.versions.begin(), cfg.versions.end());
    project = load_versions(files, &warnings);
  } else {
    throw UsageError("evaluate needs --project DIR or --versions FILE...");
  }
  if (project.versions.size() < 3) {
    throw std::runtime_error("project '" + project.name + "' has " + std::to_string(project.versions.size()) +
                             " version(s); the K-test trains on one release, plans for the next and "
                             "validates on the one after, so at least 3 are required");
  }

  std::vector<PlannerKind> kinds;
  if (cfg.planner == "all") {
    for (auto k : kAllPlanners) {
      if (k == PlannerKind::belltree && cfg.bellwether.empty()) {
        err << "note: skipping belltree (no --bellwether data given)\n";
        continue;
      }
      kinds.push_back(k);
    }
  } else {
    kinds.push_back(parse_planner(cfg.planner));
  }

  std::optional<VersionedDataset> bellwether_data;
  if (std::find(kinds.begin(), kinds.end(), PlannerKind::belltree) != kinds.end()) {
    if (cfg.bellwether.empty()) throw UsageError("belltree needs --bellwether PATH");
    bellwether_data = load_training({cfg.bellwether}, warnings);
  }
  report_warnings(warnings, err);

  const PlannerParams params = cfg.params();
  std::vector<std::future<std::vector<KTestResult>>> jobs;
  for (auto kind : kinds) {
    jobs.push_back(std::async(std::launch::async, [&, kind] {
      PlannerFactory factory;
      if (kind == PlannerKind::belltree) {
        const DecisionTree tree = train_tree(*bellwether_data, params.tree);
        factory = [tree, &params](const VersionedDataset&) {
          return std::make_unique<TreePlanner>(tree, "belltree", params.gamma, params.seed);
        };
      } else {
        factory = [kind, &params](const VersionedDataset& train) { return make_planner(kind, train, params); };
      }
      return ktest_windows(project, factory, cfg.epsilon);
    }));
  }
  std::vector<Cell> cells;
  for (auto& job : jobs) {
    for (auto& r : job.get()) {
      std::string key = r.project + "_" + r.train_version + "-" + r.plan_version + "-" + r.validate_version + "_" +
                        r.planner;
      cells.push_back({std::move(key), std::move(r)});
    }
  }

  std::ostringstream summary;
  summary << "project,train,plan,validate,planner,aupec_reduced,aupec_increased,median_changes,matched_classes\n";
  std::ostringstream table;
  table << std::left << std::setw(14) << "project" << std::setw(22) << "window" << std::setw(10) << "planner"
        << std::right << std::setw(10) << "AUPEC-" << std::setw(10) << "AUPEC+" << std::setw(10) << "changes"
        << '\n';
  for (const auto& c : cells) {
    const auto& r = c.result;
    summary << r.project << ',' << r.train_version << ',' << r.plan_version << ',' << r.validate_version << ','
            << r.planner << ',' << (r.aupec_reduced ? nlohmann::json(*r.aupec_reduced).dump() : "") << ','
            << (r.aupec_increased ? nlohmann::json(*r.aupec_increased).dump() : "") << ','
            << nlohmann::json(r.changes.median).dump() << ',' << r.matched_classes << '\n';
    table << std::left << std::setw(14) << r.project << std::setw(22)
          << (r.train_version + ">" + r.plan_version + ">" + r.validate_version) << std::setw(10) << r.planner
          << std::right << std::setw(10) << format_aupec(r.aupec_reduced) << std::setw(10)
          << format_aupec(r.aupec_increased) << std::setw(10) << r.changes.median << '\n';
  }

  if (cfg.out.empty() || cfg.out == "-") {
    if (cfg.format == "csv") {
      out << summary.str();
    } else {
      auto arr = nlohmann::ordered_json::array();
      for (const auto& c : cells) arr.push_back(to_json(c.result));
      out << dump(arr);
    }
  } else {
    const fs::path dir(cfg.out);
    for (const auto& c : cells) {
      write_file(dir / (c.key + ".json"), dump(to_json(c.result)));
      write_file(dir / (c.key + ".curve.csv"), curve_csv(c.result.curve));
    }
    write_file(dir / "summary.csv", summary.str());
    out << table.str();
  }
  return 0;
}

int cmd_thresholds(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const PlannerKind kind = parse_planner(cfg.planner);
  if (kind == PlannerKind::xtree || kind == PlannerKind::belltree) {
    throw UsageError("thresholds: planner must be alves, shatnawi or oliveira");
  }
  std::vector<std::string> warnings;
  const VersionedDataset train = load_training(cfg.train, warnings);
  report_warnings(warnings, err);
  const auto rules = derive_thresholds(kind, train, cfg.params());
  if (cfg.format == "csv") {
    std::ostringstream s;
    s << "metric,upper,p\n";
    for (const auto& r : rules) {
      s << name_of(r.metric) << ',' << nlohmann::json(r.upper).dump() << ','
        << (r.p_fraction ? nlohmann::json(*r.p_fraction).dump() : "") << '\n';
    }
    emit(cfg, s.str(), out);
  } else {
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["planner"] = cfg.planner;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : rules) arr.push_back(to_json(r));
    j["rules"] = std::move(arr);
    emit(cfg, dump(j), out);
  }
  return 0;
}

int cmd_tree(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<std::string> warnings;
  const VersionedDataset train = load_training(cfg.train, warnings);
  report_warnings(warnings, err);
  emit(cfg, dump(to_json(train_tree(train, cfg.params().tree))), out);
  return 0;
}

void add_tree_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--max-depth", cfg.max_depth, "Maximum tree depth")
      ->capture_default_str()->envname("PLANWISE_MAX_DEPTH")->check(CLI::PositiveNumber);
  cmd->add_option("--min-leaf", cfg.min_leaf, "Minimum records per leaf (0 = max(5, N/50))")
      ->capture_default_str()->envname("PLANWISE_MIN_LEAF")->check(CLI::NonNegativeNumber);
}

void add_planner_options(CLI::App* cmd, RunConfig& cfg, bool allow_all) {
  std::vector<std::string> names;
  for (auto k : kAllPlanners) names.emplace_back(planner_name(k));
  if (allow_all) names.emplace_back("all");
  cmd->add_option("--planner", cfg.planner, "Planner")
      ->capture_default_str()->envname("PLANWISE_PLANNER")->check(CLI::IsMember(names));
  cmd->add_option("--gamma", cfg.gamma, "XTREE improvement factor")
      ->capture_default_str()->envname("PLANWISE_GAMMA")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--percentile", cfg.percentile, "Alves percentile")
      ->capture_default_str()->envname("PLANWISE_PERCENTILE")->check(CLI::Range(0.0, 100.0));
  cmd->add_option("--p0", cfg.p0, "Shatnawi p0")->capture_default_str()->envname("PLANWISE_P0");
  cmd->add_option("--p1", cfg.p1, "Shatnawi p1")->capture_default_str()->envname("PLANWISE_P1");
  cmd->add_option("--min-compliance", cfg.min_compliance, "Oliveira Min%")
      ->capture_default_str()->envname("PLANWISE_MIN_COMPLIANCE");
  cmd->add_option("--tail", cfg.tail, "Oliveira tail percentile")->capture_default_str()->envname("PLANWISE_TAIL");
  cmd->add_option("--seed", cfg.seed, "Random seed")->capture_default_str()->envname("PLANWISE_SEED");
  add_tree_options(cmd, cfg);
}

void add_output_options(CLI::App* cmd, RunConfig& cfg, const std::string& out_help) {
  cmd->add_option("--out", cfg.out, out_help)->envname("PLANWISE_OUT");
  cmd->add_option("--format", cfg.format, "Output format")
      ->capture_default_str()->envname("PLANWISE_FORMAT")->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"planwise: learn and evaluate defect-reduction plans from versioned code metrics"};
  app.require_subcommand(1);

  auto* plan = app.add_subcommand("plan", "Write one plan per class of a test release");
  add_planner_options(plan, cfg, false);
  plan->add_option("--train", cfg.train, "Training CSV(s) or project directory; several are pooled")->required();
  plan->add_option("--test", cfg.test, "Release to plan for")->required();
  add_output_options(plan, cfg, "Output file (default stdout)");

  auto* bell = app.add_subcommand("bellwether", "Find the bellwether project of a community");
  bell->add_option("--community", cfg.community, "Directory with one subdirectory of CSVs per project")->required();
  bell->add_option("--quality", cfg.quality, "Prediction quality measure")
      ->capture_default_str()->envname("PLANWISE_QUALITY")->check(CLI::IsMember({"g", "f1"}));
  add_tree_options(bell, cfg);
  bell->add_option("--out", cfg.out, "Output file (default stdout)")->envname("PLANWISE_OUT");

  auto* evaluate = app.add_subcommand("evaluate", "Run the K-test over every consecutive release window");
  add_planner_options(evaluate, cfg, true);
  evaluate->add_option("--project", cfg.project, "Project directory of release CSVs");
  evaluate->add_option("--versions", cfg.versions, "Release CSVs in release order");
  evaluate->add_option("--bellwether", cfg.bellwether, "Bellwether CSV or project directory (belltree)");
  evaluate->add_option("--epsilon", cfg.epsilon, "Relative tolerance when diffing releases")
      ->capture_default_str()->envname("PLANWISE_EPSILON")->check(CLI::NonNegativeNumber);
  add_output_options(evaluate, cfg, "Output directory (default: results to stdout)");

  auto* thresholds = app.add_subcommand("thresholds", "Dump the rules of a threshold planner");
  add_planner_options(thresholds, cfg, false);
  thresholds->add_option("--train", cfg.train, "Training CSV(s)")->required();
  add_output_options(thresholds, cfg, "Output file (default stdout)");

  auto* tree = app.add_subcommand("tree", "Dump the decision tree learned from training data");
  tree->add_option("--train", cfg.train, "Training CSV(s)")->required();
  add_tree_options(tree, cfg);
  tree->add_option("--out", cfg.out, "Output file (default stdout)")->envname("PLANWISE_OUT");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*plan) return cmd_plan(cfg, out, err);
    if (*bell) return cmd_bellwether(cfg, out, err);
    if (*evaluate) return cmd_evaluate(cfg, out, err);
    if (*thresholds) return cmd_thresholds(cfg, out, err);
    if (*tree) return cmd_tree(cfg, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace planwise::cli
