#include "aab/project.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace aab::project {

namespace {

std::string trim(const std::string& s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& text, const std::string& where) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    fail(Errc::parse_error, where + ": expected a number, got '" + text + "'");
  }
  return v;
}

int to_int(const std::string& text, const std::string& where) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    fail(Errc::parse_error, where + ": expected an integer, got '" + text + "'");
  }
  return v;
}

}  // namespace

Project parse_project(std::istream& in, const std::string& origin,
                      const std::filesystem::path& base_dir) {
  Project project;
  MixBinding mix;
  enum class Section { none, project, mix } section = Section::none;

  auto resolve = [&](const std::string& value) {
    std::filesystem::path p(value);
    return p.is_absolute() ? p : base_dir / p;
  };
  auto flush_mix = [&] {
    if (section == Section::mix) project.mixes.push_back(std::move(mix));
  };

  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const std::string where = origin + ":" + std::to_string(lineno);

    if (line == "[project]") {
      flush_mix();
      section = Section::project;
      continue;
    }
    if (line == "[mix]") {
      flush_mix();
      mix = MixBinding{};
      section = Section::mix;
      continue;
    }

    auto eq = line.find('=');
    if (eq == std::string::npos) {
      fail(Errc::parse_error, where + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty()) {
      fail(Errc::parse_error, where + ": empty value for '" + key + "'");
    }

    if (section == Section::project) {
      if (key == "registry") project.registry_path = resolve(value);
      else if (key == "output") project.output_dir = resolve(value);
      else if (key == "binder_kg_m3") project.binder_kg_per_m3 = to_double(value, where);
      else if (key == "grade") project.grade = mixdesign::grade_from_name(value);
      else if (key == "calcite_fraction")
        project.calcite_fraction = to_double(value, where);
      else
        fail(Errc::parse_error, where + ": unknown project key '" + key + "'");
    } else if (section == Section::mix) {
      // Keys with an @ suffix carry a parameter: rheo@<ws>, tga@<age_days>.
      const auto at = key.find('@');
      const std::string base_key = at == std::string::npos ? key : key.substr(0, at);
      const std::string param = at == std::string::npos ? "" : key.substr(at + 1);
      if (base_key == "id") mix.id = value;
      else if (base_key == "ws") mix.ws = to_double(value, where);
      else if (base_key == "rheo") {
        if (param.empty()) fail(Errc::parse_error, where + ": rheo needs @<ws>");
        mix.flow_runs.emplace_back(to_double(param, where), resolve(value));
      } else if (base_key == "tga") {
        if (param.empty()) fail(Errc::parse_error, where + ": tga needs @<age>");
        mix.thermograms.emplace_back(to_int(param, where), resolve(value));
      } else if (base_key == "eds") {
        mix.eds = resolve(value);
      } else if (base_key == "strength") {
        mix.strength = resolve(value);
      } else {
        fail(Errc::parse_error, where + ": unknown mix key '" + key + "'");
      }
    } else {
      fail(Errc::parse_error, where + ": key outside a section");
    }
  }
  flush_mix();

  if (project.registry_path.empty()) {
    fail(Errc::parse_error, origin + ": [project] must set a registry path");
  }
  return project;
}

Project load_project(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    fail(Errc::parse_error, "cannot open project file " + path.string());
  }
  return parse_project(in, path.string(), path.parent_path());
}

void validate_project(const Project& project) {
  std::vector<std::string> problems;

  auto check_file = [&](const std::filesystem::path& p) {
    if (!std::filesystem::is_regular_file(p)) {
      problems.push_back("missing file: " + p.string());
    }
  };

  check_file(project.registry_path);
  if (project.binder_kg_per_m3 && !(*project.binder_kg_per_m3 > 0.0)) {
    problems.push_back("binder_kg_m3 must be positive");
  }

  std::set<std::string> ids;
  for (const MixBinding& mix : project.mixes) {
    if (mix.id.empty()) {
      problems.push_back("mix section without an id");
      continue;
    }
    if (!ids.insert(mix.id).second) {
      problems.push_back("duplicate mix id: " + mix.id);
    }
    try {
      mixdesign::design_from_id(mix.id, mix.ws);
    } catch (const Error& e) {
      problems.push_back(mix.id + ": " + e.what());
    }
    for (const auto& [ws, path] : mix.flow_runs) {
      if (!(ws > 0.0)) problems.push_back(mix.id + ": non-positive rheo w/s");
      check_file(path);
    }
    for (const auto& [age, path] : mix.thermograms) {
      if (age <= 0) problems.push_back(mix.id + ": non-positive tga age");
      check_file(path);
    }
    if (mix.eds) check_file(*mix.eds);
    if (mix.strength) check_file(*mix.strength);
  }

  if (!problems.empty()) {
    std::ostringstream os;
    os << problems.size() << " problem(s):";
    for (const std::string& p : problems) os << "\n  - " << p;
    fail(Errc::project_validation, os.str());
  }
}

}  // namespace aab::project
