#ifndef AAB_ERRORS_HPP
#define AAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace aab {

/// Error conditions raised by the library. Every throw site attaches one of
/// these codes so callers can branch without parsing messages.
enum class Errc {
  invalid_argument,
  parse_error,

  // materials
  zero_acidic_oxides,
  zero_silica,
  invalid_composition,
  invalid_material,
  duplicate_id,
  unknown_material,

  // mix design
  negative_dosage,
  missing_unit_cost,
  invalid_mix,

  // rheology
  empty_branch,
  invalid_curve,
  singular_system,
  no_convergence,
  no_overlap,

  // thermogravimetry
  invalid_thermogram,
  out_of_range,
  invalid_scheme,
  missing_loi_context,
  window_too_large,

  // microanalysis
  zero_denominator,
  zero_early_ratio,
  mismatched_sample,
  invalid_record,

  // project runner
  project_validation,
  missing_section,
};

inline const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::parse_error: return "ParseError";
    case Errc::zero_acidic_oxides: return "ZeroAcidicOxides";
    case Errc::zero_silica: return "ZeroSilica";
    case Errc::invalid_composition: return "InvalidComposition";
    case Errc::invalid_material: return "InvalidMaterial";
    case Errc::duplicate_id: return "DuplicateId";
    case Errc::unknown_material: return "UnknownMaterial";
    case Errc::negative_dosage: return "NegativeDosage";
    case Errc::missing_unit_cost: return "MissingUnitCost";
    case Errc::invalid_mix: return "InvalidMix";
    case Errc::empty_branch: return "EmptyBranch";
    case Errc::invalid_curve: return "InvalidCurve";
    case Errc::singular_system: return "SingularSystem";
    case Errc::no_convergence: return "NoConvergence";
    case Errc::no_overlap: return "NoOverlap";
    case Errc::invalid_thermogram: return "InvalidThermogram";
    case Errc::out_of_range: return "OutOfRange";
    case Errc::invalid_scheme: return "InvalidScheme";
    case Errc::missing_loi_context: return "MissingLOIContext";
    case Errc::window_too_large: return "WindowTooLarge";
    case Errc::zero_denominator: return "ZeroDenominator";
    case Errc::zero_early_ratio: return "ZeroEarlyRatio";
    case Errc::mismatched_sample: return "MismatchedSample";
    case Errc::invalid_record: return "InvalidRecord";
    case Errc::project_validation: return "ProjectValidation";
    case Errc::missing_section: return "MissingSection";
  }
  return "Error";
}

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace aab

#endif  // AAB_ERRORS_HPP
