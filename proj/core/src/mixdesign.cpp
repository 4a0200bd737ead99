#include "aab/mixdesign.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace aab::mixdesign {

namespace {

constexpr double kFracTol = 1e-9;

// Prints 10 as "10" and 7.5 as "7.5"; ids stay readable for integral
// percentages without dragging a formatting library in.
std::string pct_token(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

double parse_pct_token(std::string_view text, std::string_view id) {
  try {
    size_t consumed = 0;
    const std::string s(text);
    const double v = std::stod(s, &consumed);
    if (consumed != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(Errc::invalid_mix, "cannot parse mix id '" + std::string(id) + "'");
  }
}

}  // namespace

const char* mode_name(Mode mode) noexcept {
  switch (mode) {
    case Mode::solid_activators: return "solid_activators";
    case Mode::control_naoh_solution: return "control_naoh_solution";
    case Mode::premixed_soda_ash: return "premixed_soda_ash";
  }
  return "?";
}

Mode mode_from_name(std::string_view name) {
  if (name == "solid_activators" || name == "solid") return Mode::solid_activators;
  if (name == "control_naoh_solution" || name == "control")
    return Mode::control_naoh_solution;
  if (name == "premixed_soda_ash" || name == "premixed")
    return Mode::premixed_soda_ash;
  fail(Errc::parse_error, "unknown mixing mode '" + std::string(name) + "'");
}

const char* grade_name(Grade grade) noexcept {
  return grade == Grade::industrial ? "industrial" : "analytical";
}

Grade grade_from_name(std::string_view name) {
  if (name == "industrial") return Grade::industrial;
  if (name == "analytical") return Grade::analytical;
  fail(Errc::parse_error, "unknown grade '" + std::string(name) + "'");
}

ActivatorDosage activator_dosage(double target_naoh_pct) {
  if (target_naoh_pct < 0.0) {
    fail(Errc::negative_dosage, "target NaOH percentage must be non-negative");
  }
  return {kHlPerNaoh * target_naoh_pct, kSaPerNaoh * target_naoh_pct};
}

void MixDesign::validate() const {
  if (std::abs(sf_frac_pct + ggbfs_frac_pct - 100.0) > kFracTol) {
    fail(Errc::invalid_mix, id + ": SF + GGBFS fractions must total 100%");
  }
  if (sf_frac_pct < 0.0 || ggbfs_frac_pct < 0.0) {
    fail(Errc::invalid_mix, id + ": negative binder fraction");
  }
  if (target_naoh_pct < 0.0) {
    fail(Errc::invalid_mix, id + ": negative NaOH target");
  }
  if (w_s < 0.0) {
    fail(Errc::invalid_mix, id + ": negative water/solids ratio");
  }
  if (mode == Mode::control_naoh_solution) {
    if (hl_dosage_pct != 0.0 || sa_dosage_pct != 0.0) {
      fail(Errc::invalid_mix, id + ": control mode carries no HL/SA dosage");
    }
  } else {
    const ActivatorDosage expected = activator_dosage(target_naoh_pct);
    if (std::abs(hl_dosage_pct - expected.hl_pct) > kFracTol ||
        std::abs(sa_dosage_pct - expected.sa_pct) > kFracTol) {
      fail(Errc::invalid_mix,
           id + ": HL/SA dosages inconsistent with the 74/80 and 106/80 rule");
    }
  }
}

std::string design_id(double sf_frac_pct, double target_naoh_pct, Mode mode) {
  std::string id = "SF" + pct_token(sf_frac_pct) + "NH" + pct_token(target_naoh_pct);
  if (mode == Mode::control_naoh_solution) id += "_C";
  if (mode == Mode::premixed_soda_ash) id += "_PM";
  return id;
}

MixDesign make_design(double sf_frac_pct, double target_naoh_pct, double w_s,
                      Mode mode) {
  MixDesign d;
  d.mode = mode;
  d.sf_frac_pct = sf_frac_pct;
  d.ggbfs_frac_pct = 100.0 - sf_frac_pct;
  d.target_naoh_pct = target_naoh_pct;
  d.w_s = w_s;
  if (mode != Mode::control_naoh_solution) {
    const ActivatorDosage dosage = activator_dosage(target_naoh_pct);
    d.hl_dosage_pct = dosage.hl_pct;
    d.sa_dosage_pct = dosage.sa_pct;
  }
  d.id = design_id(sf_frac_pct, target_naoh_pct, mode);
  d.validate();
  return d;
}

MixDesign design_from_id(std::string_view id, double w_s) {
  std::string_view rest = id;
  Mode mode = Mode::solid_activators;
  if (rest.ends_with("_C")) {
    mode = Mode::control_naoh_solution;
    rest.remove_suffix(2);
  } else if (rest.ends_with("_PM")) {
    mode = Mode::premixed_soda_ash;
    rest.remove_suffix(3);
  }
  if (!rest.starts_with("SF")) {
    fail(Errc::invalid_mix, "mix id '" + std::string(id) + "' must start with SF");
  }
  rest.remove_prefix(2);
  const auto nh = rest.find("NH");
  if (nh == std::string_view::npos) {
    fail(Errc::invalid_mix, "mix id '" + std::string(id) + "' lacks an NH part");
  }
  const double sf = parse_pct_token(rest.substr(0, nh), id);
  const double target = parse_pct_token(rest.substr(nh + 2), id);
  return make_design(sf, target, w_s, mode);
}

double water_mass_kg(const MixDesign& design, double binder_mass_kg) {
  if (!(binder_mass_kg > 0.0)) {
    fail(Errc::invalid_argument, "binder mass must be positive");
  }
  double solids = binder_mass_kg;
  if (design.mode != Mode::control_naoh_solution) {
    solids +=
        binder_mass_kg * (design.hl_dosage_pct + design.sa_dosage_pct) / 100.0;
  }
  return design.w_s * solids;
}

std::vector<MixDesign> build_mix_table(const std::vector<double>& sf_fracs,
                                       const std::vector<double>& targets,
                                       const std::vector<double>& ws_values,
                                       const std::vector<Mode>& modes) {
  if (sf_fracs.empty() || targets.empty() || ws_values.empty() || modes.empty()) {
    fail(Errc::invalid_argument, "mix table inputs must be non-empty");
  }
  std::vector<MixDesign> table;
  std::set<std::string> seen;
  for (Mode mode : modes) {
    for (double target : targets) {
      for (double sf : sf_fracs) {
        for (double ws : ws_values) {
          MixDesign d = make_design(sf, target, ws, mode);
          if (!seen.insert(d.id).second) {
            fail(Errc::duplicate_id, "mix id '" + d.id + "' generated twice");
          }
          table.push_back(std::move(d));
        }
      }
    }
  }
  return table;
}

namespace {

CostLine make_line(const materials::MaterialRegistry& registry,
                   const std::string& material_id, double dosage_pct,
                   double binder_kg_per_m3) {
  const materials::MaterialSpec& spec = registry.require(material_id);
  if (!spec.unit_cost_per_kg) {
    fail(Errc::missing_unit_cost,
         "material '" + material_id + "' has no unit cost");
  }
  CostLine line;
  line.material_id = material_id;
  line.dosage_pct = dosage_pct;
  line.unit_cost_per_kg = *spec.unit_cost_per_kg;
  line.cost_per_m3 =
      binder_kg_per_m3 * dosage_pct / 100.0 * line.unit_cost_per_kg;
  return line;
}

}  // namespace

CostBreakdown activator_cost(const MixDesign& design,
                             const materials::MaterialRegistry& registry,
                             double binder_kg_per_m3, Grade grade) {
  if (binder_kg_per_m3 < 0.0) {
    fail(Errc::invalid_argument, "binder mass must be non-negative");
  }
  CostBreakdown breakdown;
  breakdown.binder_kg_per_m3 = binder_kg_per_m3;

  if (design.mode == Mode::control_naoh_solution) {
    breakdown.lines.push_back(make_line(registry, kNaohId,
                                        design.target_naoh_pct,
                                        binder_kg_per_m3));
  } else if (grade == Grade::industrial) {
    breakdown.lines.push_back(make_line(registry, kHydratedLimeId,
                                        design.hl_dosage_pct, binder_kg_per_m3));
    breakdown.lines.push_back(make_line(registry, kSodaAshId,
                                        design.sa_dosage_pct, binder_kg_per_m3));
  } else {
    breakdown.lines.push_back(make_line(registry, kLimeAnalyticalId,
                                        design.hl_dosage_pct, binder_kg_per_m3));
    breakdown.lines.push_back(make_line(registry, kSodaAshAnalyticalId,
                                        design.sa_dosage_pct, binder_kg_per_m3));
  }

  for (const CostLine& line : breakdown.lines) {
    breakdown.total_per_m3 += line.cost_per_m3;
  }
  return breakdown;
}

}  // namespace aab::mixdesign
