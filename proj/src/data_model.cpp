#include "planwise/data_model.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_set>

namespace planwise {
namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
    } else {
      cell.push_back(c);
    }
  }
  cells.push_back(std::move(cell));
  return cells;
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

// "$<bug" -> "bug", "Max_CC" -> "max_cc"
std::string normalize_header(std::string_view raw) {
  std::string h = trim(raw);
  std::size_t start = 0;
  while (start < h.size() && std::string_view("$<>?!@").find(h[start]) != std::string_view::npos)
    ++start;
  h = h.substr(start);
  for (auto& c : h) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return h;
}

std::optional<double> parse_number(const std::string& cell) {
  std::string s = trim(cell);
  if (s.empty()) return std::nullopt;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value)) return std::nullopt;
  return value;
}

// "ant-1.7" -> {"ant", "1.7"}
std::pair<std::string, std::string> split_stem(const std::string& stem) {
  auto dash = stem.rfind('-');
  if (dash != std::string::npos && dash + 1 < stem.size() &&
      std::isdigit(static_cast<unsigned char>(stem[dash + 1]))) {
    return {stem.substr(0, dash), stem.substr(dash + 1)};
  }
  return {stem, stem};
}

std::string stem_of(std::string_view source) {
  return std::filesystem::path(std::string(source)).stem().string();
}

}  // namespace

const ClassRecord* VersionedDataset::find(std::string_view class_name) const {
  for (const auto& r : records)
    if (r.name == class_name) return &r;
  return nullptr;
}

long VersionedDataset::total_defects() const {
  long total = 0;
  for (const auto& r : records) total += r.defects;
  return total;
}

VersionedDataset parse_csv(std::istream& in, std::string_view source,
                           std::vector<std::string>* warnings) {
  const std::string src(source);
  std::string line;
  if (!std::getline(in, line)) throw LoadError(src + ": empty dataset");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);

  const auto header = split_csv_line(line);
  std::optional<std::size_t> project_col, class_col, version_col, defect_col;
  PerMetric<std::optional<std::size_t>> metric_col{};
  std::vector<std::size_t> name_cols;

  for (std::size_t c = 0; c < header.size(); ++c) {
    const std::string h = normalize_header(header[c]);
    if (h == "name") {
      name_cols.push_back(c);
    } else if (h == "name.1" || h == "class" || h == "class_name") {
      class_col = c;
    } else if (h == "version") {
      version_col = c;
    } else if (h == "bug" || h == "bugs" || h == "defects") {
      defect_col = c;
    } else if (auto m = metric_from_name(h)) {
      metric_col[index_of(*m)] = c;
    } else if (warnings) {
      warnings->push_back(src + ": ignoring column '" + trim(header[c]) + "'");
    }
  }
  // Jureczko files carry the project name and the class name under the same
  // "name" header; the later one is the class.
  if (!class_col && !name_cols.empty()) {
    class_col = name_cols.back();
    if (name_cols.size() > 1) project_col = name_cols.front();
  } else if (class_col && !name_cols.empty()) {
    project_col = name_cols.front();
  }

  if (!class_col) throw LoadError(src + ": missing column 'name'");
  if (!defect_col) throw LoadError(src + ": missing column 'bug'");
  for (std::size_t i = 0; i < kMetricCount; ++i) {
    if (!metric_col[i])
      throw LoadError(src + ": missing column '" + std::string(kMetricNames[i]) + "'");
  }

  auto [stem_project, stem_version] = split_stem(stem_of(source));
  VersionedDataset data;
  data.project = stem_project;
  data.version = stem_version;

  std::unordered_set<std::string> seen;
  std::size_t row = 1;
  bool first = true;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const auto cells = split_csv_line(line);
    auto cell = [&](std::size_t col, std::string_view column) -> const std::string& {
      if (col >= cells.size() || trim(cells[col]).empty()) {
        throw LoadError(src + ": row " + std::to_string(row) + ", column '" +
                        std::string(column) + "': missing value");
      }
      return cells[col];
    };
    auto number = [&](std::size_t col, std::string_view column) {
      const auto& text = cell(col, column);
      auto v = parse_number(text);
      if (!v) {
        throw LoadError(src + ": row " + std::to_string(row) + ", column '" +
                        std::string(column) + "': not a number '" + trim(text) + "'");
      }
      if (*v < 0) {
        throw LoadError(src + ": row " + std::to_string(row) + ", column '" +
                        std::string(column) + "': negative value");
      }
      return *v;
    };

    ClassRecord rec;
    rec.name = trim(cell(*class_col, "name"));
    for (std::size_t i = 0; i < kMetricCount; ++i) rec.metrics[i] = number(*metric_col[i], kMetricNames[i]);
    const double bugs = number(*defect_col, "bug");
    if (bugs != std::floor(bugs)) {
      throw LoadError(src + ": row " + std::to_string(row) + ", column 'bug': not an integer");
    }
    rec.defects = static_cast<int>(bugs);
    if (!seen.insert(rec.name).second) {
      throw LoadError(src + ": row " + std::to_string(row) + ", column 'name': duplicate class '" +
                      rec.name + "'");
    }
    if (first) {
      if (project_col && *project_col < cells.size() && !trim(cells[*project_col]).empty())
        data.project = trim(cells[*project_col]);
      if (version_col && *version_col < cells.size() && !trim(cells[*version_col]).empty())
        data.version = trim(cells[*version_col]);
      first = false;
    }
    data.records.push_back(std::move(rec));
  }
  if (data.records.empty()) throw LoadError(src + ": empty dataset");
  return data;
}

VersionedDataset load_csv(const std::filesystem::path& path, std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw LoadError(path.string() + ": cannot open file");
  return parse_csv(in, path.string(), warnings);
}

void write_csv(std::ostream& out, const VersionedDataset& data) {
  out << "name,version,name";
  for (auto n : kMetricNames) out << ',' << n;
  out << ",bug\n";
  std::ostringstream cell;
  cell.precision(17);
  for (const auto& r : data.records) {
    out << data.project << ',' << data.version << ',' << r.name;
    for (double v : r.metrics) {
      cell.str({});
      cell << v;
      out << ',' << cell.str();
    }
    out << ',' << r.defects << '\n';
  }
}

bool version_less(std::string_view a, std::string_view b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const bool da = std::isdigit(static_cast<unsigned char>(a[i]));
    const bool db = std::isdigit(static_cast<unsigned char>(b[j]));
    if (da && db) {
      std::size_t ei = i, ej = j;
      while (ei < a.size() && std::isdigit(static_cast<unsigned char>(a[ei]))) ++ei;
      while (ej < b.size() && std::isdigit(static_cast<unsigned char>(b[ej]))) ++ej;
      auto na = a.substr(i, ei - i), nb = b.substr(j, ej - j);
      while (na.size() > 1 && na.front() == '0') na.remove_prefix(1);
      while (nb.size() > 1 && nb.front() == '0') nb.remove_prefix(1);
      if (na.size() != nb.size()) return na.size() < nb.size();
      if (na != nb) return na < nb;
      i = ei;
      j = ej;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  return a.size() - i < b.size() - j;
}

Project load_versions(const std::vector<std::filesystem::path>& files,
                      std::vector<std::string>* warnings) {
  Project project;
  for (const auto& f : files) project.versions.push_back(load_csv(f, warnings));
  if (!project.versions.empty()) project.name = project.versions.front().project;
  for (std::size_t i = 0; i < project.versions.size(); ++i) {
    project.versions[i].released_order = static_cast<int>(i);
  }
  return project;
}

Project load_project(const std::filesystem::path& dir, std::vector<std::string>* warnings) {
  if (!std::filesystem::is_directory(dir)) throw LoadError(dir.string() + ": not a directory");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
  }
  std::vector<VersionedDataset> versions;
  for (const auto& f : files) versions.push_back(load_csv(f, warnings));
  std::sort(versions.begin(), versions.end(), [](const auto& a, const auto& b) {
    return version_less(a.version, b.version);
  });
  Project project;
  project.name = dir.filename().string();
  if (project.name.empty()) project.name = dir.parent_path().filename().string();
  for (std::size_t i = 0; i < versions.size(); ++i) {
    if (i > 0 && versions[i].version == versions[i - 1].version) {
      throw LoadError(dir.string() + ": duplicate version '" + versions[i].version + "'");
    }
    versions[i].released_order = static_cast<int>(i);
    versions[i].project = project.name;
  }
  project.versions = std::move(versions);
  validate(project);
  return project;
}

Community load_community(const std::filesystem::path& dir, std::vector<std::string>* warnings) {
  if (!std::filesystem::is_directory(dir)) throw LoadError(dir.string() + ": not a directory");
  std::vector<std::filesystem::path> subdirs;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_directory()) subdirs.push_back(entry.path());
  }
  std::sort(subdirs.begin(), subdirs.end());
  Community community;
  for (const auto& d : subdirs) community.projects.push_back(load_project(d, warnings));
  validate(community);
  return community;
}

void validate(const Project& project) {
  if (project.versions.empty()) throw LoadError("project '" + project.name + "' has no versions");
  for (std::size_t i = 0; i < project.versions.size(); ++i) {
    if (project.versions[i].records.empty()) {
      throw LoadError("project '" + project.name + "' version '" + project.versions[i].version +
                      "': empty dataset");
    }
    if (i > 0 && project.versions[i].released_order <= project.versions[i - 1].released_order) {
      throw LoadError("project '" + project.name + "': versions not strictly ordered");
    }
  }
}

void validate(const Community& community) {
  if (community.projects.empty()) throw LoadError("community has no projects");
  std::set<std::string> names;
  for (const auto& p : community.projects) {
    validate(p);
    if (!names.insert(p.name).second) throw LoadError("duplicate project '" + p.name + "'");
  }
}

VersionedDataset pool(const std::vector<VersionedDataset>& versions, std::string project_name) {
  VersionedDataset out;
  out.project = std::move(project_name);
  out.version = "pooled";
  for (const auto& v : versions) {
    for (const auto& r : v.records) {
      ClassRecord copy = r;
      copy.name = v.version + "/" + r.name;
      out.records.push_back(std::move(copy));
    }
  }
  return out;
}

VersionedDataset pool(const Project& project) { return pool(project.versions, project.name); }

Direction diff_metric(double old_value, double new_value, double epsilon) {
  if (new_value > old_value * (1.0 + epsilon)) return Direction::increase;
  if (new_value < old_value * (1.0 - epsilon)) return Direction::decrease;
  return Direction::keep;
}

std::map<std::string, ActionVector> diff_versions(const VersionedDataset& old_version,
                                                  const VersionedDataset& new_version,
                                                  double epsilon) {
  if (epsilon < 0) throw std::invalid_argument("diff_versions: epsilon must be >= 0");
  std::map<std::string, const ClassRecord*> after;
  for (const auto& r : new_version.records) after.emplace(r.name, &r);
  std::map<std::string, ActionVector> out;
  for (const auto& before : old_version.records) {
    auto it = after.find(before.name);
    if (it == after.end()) continue;
    ActionVector v;
    for (std::size_t m = 0; m < kMetricCount; ++m) {
      v[m] = diff_metric(before.metrics[m], it->second->metrics[m], epsilon);
    }
    out.emplace(before.name, v);
  }
  return out;
}

}  // namespace planwise
