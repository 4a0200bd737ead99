#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "aab/materials.hpp"

namespace aab::materials {

namespace {

std::string trim(std::string_view s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

double parse_number(const std::string& text, const std::string& where) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    fail(Errc::parse_error, where + ": expected a number, got '" + text + "'");
  }
  return value;
}

struct SectionBuilder {
  MaterialSpec spec;
  OxideComposition comp;
  bool has_comp_key = false;
  bool has_id = false;

  bool set_oxide(const std::string& key, double value) {
    double* slot = nullptr;
    if (key == "CaO") slot = &comp.cao;
    else if (key == "SiO2") slot = &comp.sio2;
    else if (key == "Al2O3") slot = &comp.al2o3;
    else if (key == "MgO") slot = &comp.mgo;
    else if (key == "MnO") slot = &comp.mno;
    else if (key == "K2O") slot = &comp.k2o;
    else if (key == "Na2O") slot = &comp.na2o;
    else if (key == "Fe2O3") slot = &comp.fe2o3;
    else if (key == "TiO2") slot = &comp.tio2;
    else if (key == "P2O5") slot = &comp.p2o5;
    else if (key == "SO3") slot = &comp.so3;
    else if (key == "loi") slot = &comp.loi;
    if (!slot) return false;
    *slot = value;
    has_comp_key = true;
    return true;
  }

  MaterialSpec finish(const std::string& origin) {
    if (!has_id) {
      fail(Errc::parse_error, origin + ": material section without an id");
    }
    if (has_comp_key) spec.composition = comp;
    return std::move(spec);
  }
};

}  // namespace

MaterialRegistry parse_registry(std::istream& in, const std::string& origin) {
  std::vector<MaterialSpec> materials;
  SectionBuilder builder;
  bool in_section = false;

  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) {
      raw.erase(hash);
    }
    const std::string line = trim(raw);
    if (line.empty()) continue;

    const std::string where = origin + ":" + std::to_string(lineno);

    if (line == "[material]") {
      if (in_section) materials.push_back(builder.finish(where));
      builder = SectionBuilder{};
      in_section = true;
      continue;
    }
    if (!in_section) {
      fail(Errc::parse_error, where + ": key outside a [material] section");
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

    if (key == "id") {
      builder.spec.id = value;
      builder.has_id = true;
    } else if (key == "role") {
      builder.spec.role = role_from_name(value);
    } else if (key == "density_kg_m3") {
      builder.spec.density_kg_m3 = parse_number(value, where);
    } else if (key == "blaine_m2_kg") {
      builder.spec.blaine_m2_kg = parse_number(value, where);
    } else if (key == "unit_cost_per_kg") {
      builder.spec.unit_cost_per_kg = parse_number(value, where);
    } else if (key == "tga_ref") {
      std::istringstream parts(value);
      std::string w105, w635, w1000;
      if (!std::getline(parts, w105, ',') || !std::getline(parts, w635, ',') ||
          !std::getline(parts, w1000)) {
        fail(Errc::parse_error, where + ": tga_ref needs w105,w635,w1000");
      }
      AnhydrousTgaRef ref;
      ref.w105_ug = parse_number(trim(w105), where);
      ref.w635_ug = parse_number(trim(w635), where);
      ref.w1000_ug = parse_number(trim(w1000), where);
      builder.spec.anhydrous_ref = ref;
    } else if (builder.set_oxide(key, parse_number(value, where))) {
      // oxide or loi handled
    } else {
      fail(Errc::parse_error, where + ": unknown key '" + key + "'");
    }
  }
  if (in_section) materials.push_back(builder.finish(origin));

  return MaterialRegistry::from_materials(std::move(materials));
}

MaterialRegistry load_registry(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    fail(Errc::parse_error, "cannot open registry file " + path.string());
  }
  return parse_registry(in, path.string());
}

}  // namespace aab::materials
