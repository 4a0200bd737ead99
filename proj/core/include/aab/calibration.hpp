#ifndef AAB_CALIBRATION_HPP
#define AAB_CALIBRATION_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aab/thermo.hpp"

namespace aab::thermo::calib {

/// One reading of the present-study mass-balance deduction. The published
/// expression leaves the sample basis and unit conventions open; these axes
/// span the documented possibilities.
struct Interpretation {
  enum class Basis { paste, mortar };            ///< sand in the sample mass?
  enum class Water { included, excluded };       ///< mix water in the sample mass?
  enum class LoiUnits { percent, fraction };
  enum class XBasis { binder, total_solids };    ///< replacement-level denominator
  enum class WbBasis { per_total_solids, per_binder };

  Basis basis = Basis::mortar;
  Water water = Water::excluded;
  LoiUnits units = LoiUnits::percent;
  XBasis xbasis = XBasis::binder;
  WbBasis wbasis = WbBasis::per_binder;

  std::string label() const;
};

std::vector<Interpretation> documented_interpretations();

/// Everything the deduction needs for one mix, plus the target value the
/// interpretation is judged against.
struct MixInputs {
  std::string mix_id;
  MassLossProfile profile;
  double ldc_a = 0.0;
  double sf_frac = 0.0;          ///< fraction of binder, 0..1
  double hl_dosage = 0.0;        ///< fraction of binder, 0..1
  double sa_dosage = 0.0;
  double ws = 0.45;              ///< water / total solids
  double sand_per_binder = 3.0;
  double loi_ggbfs = 0.0;        ///< percent values as assayed
  double loi_sf = 0.0;
  double loi_sa = 0.0;
  double loi_hl = 0.0;
  double target_wb = 0.0;
};

/// Context realising one interpretation for one mix.
LoiContext make_context(const MixInputs& mix, const Interpretation& interp);

struct MixResult {
  std::string mix_id;
  double predicted_wb = 0.0;
  double residual = 0.0;          ///< predicted - target
  double model_deduction = 0.0;   ///< deduction under this interpretation
  double implied_deduction = 0.0; ///< deduction the target would require
};

struct InterpretationResult {
  Interpretation interpretation;
  std::vector<MixResult> per_mix;
  double max_abs_residual = 0.0;
};

/// Outcome of the brute-force search. `match` is the best interpretation
/// whose residuals all fall within the tolerance, if any exists; the
/// implied-deduction table quantifies the gap either way.
struct CalibrationReport {
  std::vector<InterpretationResult> results;  ///< sorted, best first
  std::optional<Interpretation> match;
  double tolerance = 0.05;
  double implied_min = 0.0;
  double implied_max = 0.0;
};

CalibrationReport calibrate_present_study(std::span<const MixInputs> mixes,
                                          double tolerance = 0.05);

}  // namespace aab::thermo::calib

#endif  // AAB_CALIBRATION_HPP
