#include "aab/materials.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace aab::materials {

namespace {
constexpr double kClosureLimitPct = 105.0;
constexpr double kBasicityTol = 1e-9;
constexpr double kLimeSilicaGuideline = 1.4;
}  // namespace

double OxideComposition::oxide_sum() const {
  return cao + sio2 + al2o3 + mgo + mno + k2o + na2o + fe2o3 + tio2 + p2o5 +
         so3;
}

void OxideComposition::validate() const {
  const double entries[] = {cao, sio2, al2o3, mgo,  mno, k2o,
                            na2o, fe2o3, tio2, p2o5, so3};
  for (double v : entries) {
    if (!(v >= 0.0 && v <= 100.0)) {
      fail(Errc::invalid_composition,
           "oxide percentage " + std::to_string(v) + " outside [0, 100]");
    }
  }
  if (!(loi >= 0.0)) {
    fail(Errc::invalid_composition, "negative LOI");
  }
  const double closure = oxide_sum() + loi;
  if (closure > kClosureLimitPct) {
    std::ostringstream os;
    os << "oxides + LOI sum to " << closure << "%, above the "
       << kClosureLimitPct << "% closure limit";
    fail(Errc::invalid_composition, os.str());
  }
}

const char* role_name(Role role) noexcept {
  switch (role) {
    case Role::precursor: return "precursor";
    case Role::mineral_additive: return "mineral_additive";
    case Role::activator: return "activator";
    case Role::aggregate: return "aggregate";
  }
  return "?";
}

Role role_from_name(std::string_view name) {
  if (name == "precursor") return Role::precursor;
  if (name == "mineral_additive") return Role::mineral_additive;
  if (name == "activator") return Role::activator;
  if (name == "aggregate") return Role::aggregate;
  fail(Errc::parse_error, "unknown material role '" + std::string(name) + "'");
}

void AnhydrousTgaRef::validate() const {
  if (!(w1000_ug > 0.0)) {
    fail(Errc::invalid_material, "anhydrous reference mass must stay positive");
  }
  if (!(w105_ug >= w635_ug && w635_ug >= w1000_ug)) {
    fail(Errc::invalid_material,
         "anhydrous reference masses must be non-increasing on heating");
  }
}

void MaterialSpec::validate() const {
  if (id.empty()) {
    fail(Errc::invalid_material, "material id must not be empty");
  }
  if (!(density_kg_m3 > 0.0)) {
    fail(Errc::invalid_material, id + ": density must be positive");
  }
  if (blaine_m2_kg && !(*blaine_m2_kg > 0.0)) {
    fail(Errc::invalid_material, id + ": Blaine fineness must be positive");
  }
  if (unit_cost_per_kg && !(*unit_cost_per_kg >= 0.0)) {
    fail(Errc::invalid_material, id + ": unit cost must be non-negative");
  }
  if (!composition && role != Role::aggregate) {
    fail(Errc::invalid_material,
         id + ": oxide composition required for non-aggregate materials");
  }
  if (composition) {
    composition->validate();
  }
  if (anhydrous_ref) {
    anhydrous_ref->validate();
  }
}

MaterialRegistry MaterialRegistry::from_materials(
    std::vector<MaterialSpec> materials) {
  MaterialRegistry registry;
  for (auto& m : materials) {
    m.validate();
    auto [it, inserted] = registry.materials_.emplace(m.id, std::move(m));
    if (!inserted) {
      fail(Errc::duplicate_id, "material '" + it->first + "' defined twice");
    }
  }
  return registry;
}

const MaterialSpec* MaterialRegistry::find(std::string_view id) const noexcept {
  auto it = materials_.find(id);
  return it == materials_.end() ? nullptr : &it->second;
}

const MaterialSpec& MaterialRegistry::require(std::string_view id) const {
  if (const MaterialSpec* m = find(id)) return *m;
  fail(Errc::unknown_material, "material '" + std::string(id) + "' not in registry");
}

bool MaterialRegistry::contains(std::string_view id) const noexcept {
  return find(id) != nullptr;
}

std::vector<std::string> MaterialRegistry::ids() const {
  std::vector<std::string> out;
  out.reserve(materials_.size());
  for (const auto& [id, _] : materials_) out.push_back(id);
  return out;
}

double modulus_of_basicity(const OxideComposition& comp) {
  const double acidic = comp.sio2 + comp.al2o3;
  if (acidic <= 0.0) {
    fail(Errc::zero_acidic_oxides, "SiO2 + Al2O3 must be positive");
  }
  return (comp.cao + comp.mgo) / acidic;
}

double lime_silica_ratio(const OxideComposition& comp) {
  if (comp.sio2 <= 0.0) {
    fail(Errc::zero_silica, "SiO2 must be positive");
  }
  return comp.cao / comp.sio2;
}

PrecursorCheck precursor_check(const OxideComposition& comp) {
  PrecursorCheck check;
  check.basicity = modulus_of_basicity(comp);
  check.lime_silica = lime_silica_ratio(comp);
  check.verdict = check.basicity >= 1.0 - kBasicityTol ? Verdict::suitable
                                                       : Verdict::unsuitable;
  if (check.lime_silica < kLimeSilicaGuideline) {
    std::ostringstream os;
    os << "CaO/SiO2 = " << check.lime_silica << " is below the "
       << kLimeSilicaGuideline << " guideline";
    check.note = os.str();
  }
  return check;
}

}  // namespace aab::materials
