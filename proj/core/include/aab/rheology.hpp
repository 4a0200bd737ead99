#ifndef AAB_RHEOLOGY_HPP
#define AAB_RHEOLOGY_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aab/errors.hpp"

namespace aab::rheology {

// ---------------------------------------------------------------------------
// Flow curves
// ---------------------------------------------------------------------------

enum class Branch { up, down };

const char* branch_name(Branch branch) noexcept;

struct FlowPoint {
  double shear_rate;    ///< 1/s
  double shear_stress;  ///< Pa
  double hold_time_s;   ///< dwell at this rate step
};

/// One branch of a stepped-ramp flow curve. Construction enforces at least
/// four points (a quadratic fit plus one residual degree of freedom) and a
/// strictly monotone shear-rate sequence matching the branch direction.
class FlowCurve {
public:
  FlowCurve(std::vector<FlowPoint> points, Branch branch);

  std::span<const FlowPoint> points() const noexcept { return points_; }
  Branch branch() const noexcept { return branch_; }
  std::size_t size() const noexcept { return points_.size(); }

  double min_rate() const noexcept;
  double max_rate() const noexcept;

private:
  std::vector<FlowPoint> points_;
  Branch branch_;
};

// ---------------------------------------------------------------------------
// Model fits
// ---------------------------------------------------------------------------

enum class Model { bingham, modified_bingham, herschel_bulkley };
enum class Behavior { shear_thinning, shear_thickening, bingham_plastic };

const char* model_name(Model model) noexcept;
Model model_from_name(std::string_view name);
const char* behavior_name(Behavior behavior) noexcept;

/// Result of fitting tau = tau0 + mu_p * rate + c * rate^2 (bingham forces
/// c = 0). Herschel-Bulkley fits tau = tau0 + k * rate^n instead and stores
/// the consistency and exponent in hb_k / hb_n.
struct RheoFit {
  Model model = Model::modified_bingham;
  double tau0_pa = 0.0;
  double mu_p_pa_s = 0.0;
  double c_pa_s2 = 0.0;
  double hb_k = 0.0;
  double hb_n = 0.0;
  double r2 = 0.0;
  Behavior behavior = Behavior::bingham_plastic;
  bool low_r2 = false;          ///< set when r2 <= 0.95, the quality bar
  bool negative_yield = false;  ///< Herschel-Bulkley fitted tau0 < 0

  double predict(double shear_rate) const;
};

/// Linear least squares on the descending branch, intercept + slope.
RheoFit fit_bingham(const FlowCurve& curve);

/// Quadratic least squares on the descending branch via normal equations.
/// The sign of c / mu_p classifies shear thinning (< 0), shear thickening
/// (> 0) or Bingham plastic (= 0 within 1e-9).
RheoFit fit_modified_bingham(const FlowCurve& curve);

/// tau = tau0 + k * rate^n fitted by a golden-section search on
/// n in [0.1, 2] with an inner linear solve for (tau0, k). A negative fitted
/// yield stress sets negative_yield instead of erroring; it is a documented
/// failure mode of this model family on paste data.
RheoFit fit_herschel_bulkley(const FlowCurve& curve);

// ---------------------------------------------------------------------------
// Shear protocol
// ---------------------------------------------------------------------------

struct ProtocolSpec {
  double ramp_floor = 0.0;     ///< 1/s
  double ramp_ceiling = 100.0; ///< 1/s
  double hold_s = 20.0;        ///< dwell per rate step
};

struct ProtocolCheck {
  bool conforming = true;
  std::vector<std::string> deviations;
};

/// Checks ramp endpoints and per-step holds against the protocol. Deviations
/// are reported, never rejected. Throws Errc::empty_branch when a branch is
/// missing.
ProtocolCheck validate_protocol(const std::optional<FlowCurve>& up,
                                const std::optional<FlowCurve>& down,
                                const ProtocolSpec& spec = {});

// ---------------------------------------------------------------------------
// Thixotropy
// ---------------------------------------------------------------------------

enum class LoopSign { thixotropic, rheopectic };

const char* loop_sign_name(LoopSign sign) noexcept;

struct HysteresisResult {
  double loop_area_pa_per_s = 0.0;
  LoopSign sign = LoopSign::thixotropic;
};

/// Integral of (tau_up - tau_down) over the shared shear-rate range. Both
/// branches are evaluated as piecewise-linear interpolants on the merged
/// knot set, so the trapezoid sum is the exact integral of the difference
/// and swapping branches negates the area. A positive area (up branch above
/// down) reads as thixotropic breakdown.
HysteresisResult hysteresis_area(const FlowCurve& up, const FlowCurve& down);

// ---------------------------------------------------------------------------
// Replicate runs
// ---------------------------------------------------------------------------

/// Mean of coefficients across replicate fits of one model, with sample
/// standard deviations (zero for a single run).
struct FitAggregate {
  RheoFit mean;
  double sd_tau0 = 0.0;
  double sd_mu_p = 0.0;
  double sd_c = 0.0;
  int n_runs = 0;
};

FitAggregate aggregate_fits(std::span<const RheoFit> fits);

}  // namespace aab::rheology

#endif  // AAB_RHEOLOGY_HPP
