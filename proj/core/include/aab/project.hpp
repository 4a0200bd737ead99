#ifndef AAB_PROJECT_HPP
#define AAB_PROJECT_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aab/errors.hpp"
#include "aab/mixdesign.hpp"

namespace aab::project {

/// Data files bound to one mix. The mix parameters come from the canonical
/// id scheme; flow-curve runs are keyed by the w/s ratio they were measured
/// at and thermograms by curing age.
struct MixBinding {
  std::string id;
  double ws = 0.45;
  std::vector<std::pair<double, std::filesystem::path>> flow_runs;
  std::vector<std::pair<int, std::filesystem::path>> thermograms;
  std::optional<std::filesystem::path> eds;
  std::optional<std::filesystem::path> strength;
};

/// A batch-analysis project: one registry, a list of bound mixes and the
/// report parameters. Parsed from the same line-oriented section format as
/// the registry, with `[project]` and `[mix]` sections.
struct Project {
  std::filesystem::path registry_path;
  std::optional<std::filesystem::path> output_dir;
  std::optional<double> binder_kg_per_m3;  ///< enables the cost section
  mixdesign::Grade grade = mixdesign::Grade::industrial;
  double calcite_fraction = 0.10;
  std::vector<MixBinding> mixes;
};

Project load_project(const std::filesystem::path& path);
Project parse_project(std::istream& in, const std::string& origin,
                      const std::filesystem::path& base_dir);

/// Checks that every referenced file exists and every mix id parses and is
/// unique. All problems are collected into one Errc::project_validation
/// message; nothing is analysed past a failed validation.
void validate_project(const Project& project);

}  // namespace aab::project

#endif  // AAB_PROJECT_HPP
