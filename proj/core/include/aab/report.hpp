#ifndef AAB_REPORT_HPP
#define AAB_REPORT_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <json.hpp>

#include "aab/calibration.hpp"
#include "aab/csv.hpp"
#include "aab/microanalysis.hpp"
#include "aab/mixdesign.hpp"
#include "aab/project.hpp"
#include "aab/rheology.hpp"
#include "aab/thermo.hpp"

namespace aab::project {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Deterministic serialization helpers
// ---------------------------------------------------------------------------

/// Rounds to 6 significant digits (round half to even) so identical inputs
/// serialize byte-identically across runs.
double round6(double value);

/// FNV-1a 64-bit digest, hex encoded; embedded in reports for provenance.
std::string fnv1a64_hex(const void* data, std::size_t size);
std::string digest_file(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Report sections
// ---------------------------------------------------------------------------

struct RheoSection {
  double ws = 0.45;
  std::vector<io::FlowRun> runs;
  std::vector<rheology::RheoFit> fits;  ///< modified Bingham, one per run
  std::optional<rheology::FitAggregate> aggregate;
  std::optional<rheology::HysteresisResult> hysteresis;
  std::optional<rheology::ProtocolCheck> protocol;
};

struct ThermoSection {
  int age_days = 0;
  thermo::MassLossProfile profile;
  double ldc_a = 0.0;
  thermo::BoundWaterReport bound_water;
  thermo::HydroxideReport hydroxides;
  std::vector<thermo::DtgPeak> dtg_peaks;
  std::vector<std::pair<double, double>> dtg;  ///< temperature, -dm/dT
};

struct EdsSection {
  std::vector<micro::EdsComposition> compositions;
  /// (age, pair label, value) for the default Ca/Si, Na/Ca, Mg/Al set.
  std::vector<std::tuple<int, std::string, double>> ratios;
  /// (pair label, early age, late age, percent change)
  std::vector<std::tuple<std::string, int, int, double>> deltas;
};

struct StrengthSection {
  micro::StrengthSeries series;
  std::optional<double> increment_28_to_120_pct;
};

struct MixSection {
  mixdesign::MixDesign design;
  std::optional<mixdesign::CostBreakdown> cost;
  std::vector<RheoSection> rheo;
  std::vector<ThermoSection> thermo;
  std::optional<EdsSection> eds;
  std::optional<StrengthSection> strength;
  std::vector<std::string> errors;  ///< per-section failures, batch continues
};

struct Report {
  std::string tool_version;
  std::vector<std::pair<std::string, std::string>> input_digests;  ///< path, digest
  std::vector<MixSection> mixes;  ///< sorted by mix id

  bool complete() const;
};

/// Runs every bound analysis. Throws Errc::project_validation before any
/// analysis when the project does not validate; analysis failures inside a
/// section are recorded in that mix's error list instead of aborting.
Report run_project(const Project& project);

/// Deterministic JSON rendering: insertion-ordered keys, floats at 6
/// significant digits.
json report_to_json(const Report& report);

// ---------------------------------------------------------------------------
// Plot data
// ---------------------------------------------------------------------------

enum class PlotKind { flow_curve, strength_dev, dtg };

PlotKind plot_kind_from_name(std::string_view name);

/// Tidy long-format CSV (`series,x,y`). Throws Errc::missing_section when no
/// mix carries the requested section.
std::string emit_plot_data(const Report& report, PlotKind kind);

}  // namespace aab::project

#endif  // AAB_REPORT_HPP
