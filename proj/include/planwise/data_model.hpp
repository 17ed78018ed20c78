#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "planwise/action.hpp"
#include "planwise/metrics.hpp"

namespace planwise {

// Raised for any malformed dataset input. The message names the source,
// and where applicable the offending row (1-based, header = row 1) and column.
class LoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ClassRecord {
  std::string name;
  PerMetric<double> metrics{};
  int defects = 0;

  double operator[](Metric m) const { return metrics[index_of(m)]; }
  double& operator[](Metric m) { return metrics[index_of(m)]; }
  bool defective() const { return defects > 0; }
};

struct VersionedDataset {
  std::string project;
  std::string version;
  int released_order = 0;
  std::vector<ClassRecord> records;

  const ClassRecord* find(std::string_view class_name) const;
  long total_defects() const;
};

struct Project {
  std::string name;
  std::vector<VersionedDataset> versions;  // strictly increasing released_order
};

struct Community {
  std::vector<Project> projects;
};

// Parses one release in the PROMISE/Jureczko layout. `source` is used in
// error messages. Unknown columns are reported through `warnings`.
VersionedDataset parse_csv(std::istream& in, std::string_view source,
                           std::vector<std::string>* warnings = nullptr);
VersionedDataset load_csv(const std::filesystem::path& path,
                          std::vector<std::string>* warnings = nullptr);

// Writes the canonical layout: name,version,class,<20 metrics>,bug.
void write_csv(std::ostream& out, const VersionedDataset& data);

// Loads every *.csv in `dir` as one project ordered by version label.
Project load_project(const std::filesystem::path& dir,
                     std::vector<std::string>* warnings = nullptr);
// Loads every subdirectory of `dir` as a project, sorted by name.
Community load_community(const std::filesystem::path& dir,
                         std::vector<std::string>* warnings = nullptr);

// Builds a project from an explicit, already ordered list of files.
Project load_versions(const std::vector<std::filesystem::path>& files,
                      std::vector<std::string>* warnings = nullptr);

// Throws LoadError if a project is empty or not strictly ordered.
void validate(const Project& project);
void validate(const Community& community);

// All versions concatenated into one dataset. Class names are prefixed with
// the version label so they stay unique.
VersionedDataset pool(const Project& project);
VersionedDataset pool(const std::vector<VersionedDataset>& versions, std::string project_name);

// Natural ordering of version labels ("1.10" after "1.9").
bool version_less(std::string_view a, std::string_view b);

// Per-metric direction of change for every class present in both releases.
// A metric is '+' if new > old*(1+epsilon), '-' if new < old*(1-epsilon).
std::map<std::string, ActionVector> diff_versions(const VersionedDataset& old_version,
                                                  const VersionedDataset& new_version,
                                                  double epsilon = 0.0);

Direction diff_metric(double old_value, double new_value, double epsilon);

}  // namespace planwise
