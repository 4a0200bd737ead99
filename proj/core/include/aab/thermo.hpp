#ifndef AAB_THERMO_HPP
#define AAB_THERMO_HPP

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aab/errors.hpp"
#include "aab/materials.hpp"

namespace aab::thermo {

// ---------------------------------------------------------------------------
// Thermograms
// ---------------------------------------------------------------------------

struct TgaSample {
  double temperature_c;
  double mass_ug;
};

/// A temperature-mass trace. Temperatures must be strictly increasing and
/// the mass positive; local upticks up to 0.5% are tolerated as balance
/// noise, but the net mass loss must be non-negative.
class Thermogram {
public:
  Thermogram(std::string sample_id, std::vector<TgaSample> samples);

  /// Linear interpolation between samples, exact at sample points.
  /// Throws Errc::out_of_range outside the recorded span.
  double mass_at(double temperature_c) const;

  std::span<const TgaSample> samples() const noexcept { return samples_; }
  const std::string& sample_id() const noexcept { return sample_id_; }
  double min_temp() const noexcept { return samples_.front().temperature_c; }
  double max_temp() const noexcept { return samples_.back().temperature_c; }

private:
  std::string sample_id_;
  std::vector<TgaSample> samples_;
};

// ---------------------------------------------------------------------------
// Segmentation
// ---------------------------------------------------------------------------

struct TempRange {
  double lo_c = 0.0;
  double hi_c = 0.0;
};

enum class SchemeName { bhatty, pane_hansen, monteagudo, deboucha, present_study };

const char* scheme_name(SchemeName name) noexcept;
SchemeName scheme_from_name(std::string_view name);

/// Temperature windows attributed to dehydration (ldh), dehydroxylation
/// (ldx) and decarbonation (ldc). Only the present-study scheme carries a
/// free-water window below 105 C; its windows are fixed at construction.
struct SegmentationScheme {
  SchemeName name = SchemeName::present_study;
  std::optional<TempRange> free_water;
  std::vector<TempRange> ldh_ranges;
  std::vector<TempRange> ldx_ranges;
  TempRange ldc_range;

  static SegmentationScheme standard(SchemeName name);
  void validate() const;
};

/// Normalised mass losses, percent. Free water (ldh_a) is normalised by the
/// mass at the start of the free-water window; every later loss uses the
/// 105 C mass. Both reference masses are recorded so losses can be rebased.
struct MassLossProfile {
  double ldh_a = 0.0;  ///< free water
  double ldh_b = 0.0;
  double ldh_c = 0.0;
  double ldx_a = 0.0;
  double ldx_b = 0.0;
  double ldc = 0.0;
  double ref_initial_ug = 0.0;
  double ref_w105_ug = 0.0;

  double ldh() const { return ldh_b + ldh_c; }
  double ldx() const { return ldx_a + ldx_b; }
};

MassLossProfile segment_losses(const Thermogram& gram,
                               const SegmentationScheme& scheme);

// ---------------------------------------------------------------------------
// Anhydrous decarbonation correction
// ---------------------------------------------------------------------------

/// Decarbonation loss of an unreacted raw material,
/// 100 * (w635 - w1000) / w105.
double anhydrous_ldca(const materials::AnhydrousTgaRef& ref);

/// Dosage-weighted anhydrous correction for a blend. Parts are per 100 of
/// binder; binder parts must total 100 and activator parts ride on top.
/// Throws Errc::unknown_material for parts without a reference value.
double mix_ldca(const std::map<std::string, double>& parts_per_100_binder,
                const std::map<std::string, double>& ldca_by_material);

// ---------------------------------------------------------------------------
// Bound water
// ---------------------------------------------------------------------------

/// Explicit inputs of the mass-balance deduction used by the Deboucha and
/// present-study expressions. All quantities are plain numbers taken at face
/// value; unit conventions (fraction vs percent) are the caller's choice and
/// the calibration utility enumerates the documented readings.
struct LoiContext {
  double m_s = 1.0;     ///< sample mass, grams
  double m_b = 0.0;     ///< binder grams per gram of sample
  double x_sf = 0.0;    ///< additive and activator replacement levels
  double x_sa = 0.0;
  double x_hl = 0.0;
  double x_ggbfs = 0.0;
  double w_b = 0.0;     ///< water-to-binder ratio entering the mass balance
  double loi_precursor = 0.0;
  double loi_sf = 0.0;
  double loi_sa = 0.0;
  double loi_hl = 0.0;
};

struct MassBalance {
  double m_precursor = 0.0;
  double m_additive = 0.0;
};

/// m_precursor = (m_s - m_b (x_SF + x_SA + x_HL + W/B)) / (1 + LOI_precursor)
/// m_additive  = (m_s - m_b (x_GGBFS + W/B)) / (1 + LOI_SF + LOI_SA + LOI_HL)
MassBalance mass_balance(const LoiContext& ctx);

double loi_deduction_present_study(const LoiContext& ctx);
double loi_deduction_deboucha(const LoiContext& ctx);

/// Bound water per the selected method's expression:
///   bhatty         Ldh + Ldx + 0.41 Ldc
///   pane_hansen    Ldh + Ldx + (Ldc - Ldc_a)
///   monteagudo     Ldh + Ldx + 0.41 (Ldc - Ldc_a)
///   deboucha       monteagudo minus the LOI mass-balance deduction
///   present_study  Ldh + Ldx + 1.025 (Ldc - Ldc_a) minus the deduction
/// The last two throw Errc::missing_loi_context without a context.
double bound_water(const MassLossProfile& profile, double ldc_a_pct,
                   SchemeName method,
                   const std::optional<LoiContext>& loi_ctx = std::nullopt);

/// Per-method bound water with the deduction inputs echoed.
struct BoundWaterReport {
  double ldc_a = 0.0;
  std::map<SchemeName, double> wb;
  std::optional<LoiContext> context;
  std::optional<double> deduction_present_study;
  std::optional<double> deduction_deboucha;
};

BoundWaterReport bound_water_report(
    const MassLossProfile& profile, double ldc_a_pct,
    const std::optional<LoiContext>& loi_ctx = std::nullopt);

// ---------------------------------------------------------------------------
// Correction factor and free hydroxides
// ---------------------------------------------------------------------------

/// Which carbonated-brucite contribution joins the carbonated-portlandite
/// 0.41 term: the full 0.41, the half-weight 0.205, or their sum (the
/// published total of 1.025).
enum class BruciteShare { both, full, half };

/// Correction applied to (Ldc - Ldc_a), reduced by the calcite weight
/// fraction produced by the initial ion exchange: 1.025 - calcite at the
/// default share.
double correction_factor(double calcite_fraction,
                         BruciteShare share = BruciteShare::both);

enum class MhVariant { eq_ldxa, total_ldx };

const char* mh_variant_name(MhVariant variant) noexcept;
MhVariant mh_variant_from_name(std::string_view name);

/// Free portlandite, brucite and gibbsite from the dehydroxylation and
/// decarbonation losses. The brucite estimate admits two readings of its
/// Ldx argument; total_ldx is the default. The gibbsite expression is
/// evaluated verbatim and routinely goes negative on real profiles, which
/// ah_negative flags rather than hides.
struct HydroxideReport {
  double ch_free = 0.0;
  double mh_free = 0.0;
  double ah_free = 0.0;
  double calcite_fraction = 0.0;
  MhVariant mh_variant = MhVariant::total_ldx;
  bool ah_negative = false;
};

HydroxideReport free_hydroxides(const MassLossProfile& profile, double ldc_a_pct,
                                double calcite_fraction,
                                MhVariant mh_variant = MhVariant::total_ldx);

// ---------------------------------------------------------------------------
// Derivative thermogravimetry
// ---------------------------------------------------------------------------

struct DtgPeak {
  double temperature_c = 0.0;
  double magnitude = 0.0;  ///< -dm/dT at the peak, ug per C (positive = loss)
};

/// Central-difference dm/dT smoothed by a moving average over `window_c`
/// degrees; local maxima of the mass-loss rate are reported as endothermic
/// decomposition peaks. Throws Errc::window_too_large when the window
/// exceeds the recorded span.
std::vector<DtgPeak> dtg_peaks(const Thermogram& gram, double window_c = 10.0);

/// Smoothed -dm/dT at the interior sample temperatures (plot backing data).
std::vector<std::pair<double, double>> dtg_series(const Thermogram& gram,
                                                  double window_c = 10.0);

}  // namespace aab::thermo

#endif  // AAB_THERMO_HPP
