#ifndef AAB_MIXDESIGN_HPP
#define AAB_MIXDESIGN_HPP

#include <string>
#include <string_view>
#include <vector>

#include "aab/materials.hpp"

namespace aab::mixdesign {

// Registry ids the dosing and costing conventions are written against.
inline constexpr const char* kGgbfsId = "GGBFS";
inline constexpr const char* kSilicaFumeId = "SF";
inline constexpr const char* kHydratedLimeId = "HL";
inline constexpr const char* kSodaAshId = "SA";
inline constexpr const char* kNaohId = "NaOH";
inline constexpr const char* kSodaAshAnalyticalId = "Na2CO3";
inline constexpr const char* kLimeAnalyticalId = "CaOH2";

// Molar-mass ratios behind the equivalent-NaOH dosing rule:
// Ca(OH)2 / 2NaOH = 74/80 and Na2CO3 / 2NaOH = 106/80.
inline constexpr double kHlPerNaoh = 74.0 / 80.0;
inline constexpr double kSaPerNaoh = 106.0 / 80.0;

enum class Mode { solid_activators, control_naoh_solution, premixed_soda_ash };

const char* mode_name(Mode mode) noexcept;
Mode mode_from_name(std::string_view name);

struct ActivatorDosage {
  double hl_pct = 0.0;
  double sa_pct = 0.0;
};

/// Hydrated lime and soda ash dosages, percent of binder, needed to generate
/// the targeted equivalent-NaOH percentage in situ.
/// Throws Errc::negative_dosage for negative targets.
ActivatorDosage activator_dosage(double target_naoh_pct);

struct MixDesign {
  std::string id;
  Mode mode = Mode::solid_activators;
  double sf_frac_pct = 0.0;
  double ggbfs_frac_pct = 100.0;
  double target_naoh_pct = 0.0;
  double hl_dosage_pct = 0.0;  ///< 0 in control mode
  double sa_dosage_pct = 0.0;  ///< 0 in control mode; dissolved in premixed mode
  double w_s = 0.45;           ///< water / total solids
  double sand_per_binder = 3.0;

  void validate() const;
};

/// Canonical id for a design: SF{sf}NH{target} with suffix _C (control) or
/// _PM (premixed soda ash).
std::string design_id(double sf_frac_pct, double target_naoh_pct, Mode mode);

/// Builds a design from its parameters, filling dosages per mode.
MixDesign make_design(double sf_frac_pct, double target_naoh_pct, double w_s,
                      Mode mode);

/// Recovers parameters from an id in the canonical scheme.
MixDesign design_from_id(std::string_view id, double w_s = 0.45);

/// Water demand for a batch. Solid and premixed modes count HL + SA in the
/// solids; control mode pre-dissolves the NaOH, so the solids set is the
/// binder alone.
double water_mass_kg(const MixDesign& design, double binder_mass_kg);

/// Cartesian product of the inputs with ids from the canonical scheme.
/// Throws Errc::duplicate_id when the scheme collides (for example two w/s
/// values, which the id does not encode).
std::vector<MixDesign> build_mix_table(const std::vector<double>& sf_fracs,
                                       const std::vector<double>& targets,
                                       const std::vector<double>& ws_values,
                                       const std::vector<Mode>& modes);

// ---------------------------------------------------------------------------
// Activator costing
// ---------------------------------------------------------------------------

/// Chemical grade used when pricing solid or premixed activators. Control
/// mode always doses analytical NaOH.
enum class Grade { industrial, analytical };

const char* grade_name(Grade grade) noexcept;
Grade grade_from_name(std::string_view name);

struct CostLine {
  std::string material_id;
  double dosage_pct = 0.0;  ///< percent of binder mass
  double unit_cost_per_kg = 0.0;
  double cost_per_m3 = 0.0;
};

struct CostBreakdown {
  std::vector<CostLine> lines;
  double total_per_m3 = 0.0;
  double binder_kg_per_m3 = 0.0;
};

/// Activator cost per cubic metre. Unit costs come from the registry;
/// Errc::missing_unit_cost names the offending material.
CostBreakdown activator_cost(const MixDesign& design,
                             const materials::MaterialRegistry& registry,
                             double binder_kg_per_m3,
                             Grade grade = Grade::industrial);

}  // namespace aab::mixdesign

#endif  // AAB_MIXDESIGN_HPP
