#ifndef AAB_MICROANALYSIS_HPP
#define AAB_MICROANALYSIS_HPP

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aab/errors.hpp"

namespace aab::micro {

enum class Element { C, O, Na, Mg, Al, Si, Ca, Mn, Fe };

inline constexpr std::size_t kElementCount = 9;

const char* element_name(Element e) noexcept;
Element element_from_name(std::string_view name);

/// Averaged EDS spot analysis of one sample at one age, atomic percent.
struct EdsComposition {
  std::string sample_id;
  int age_days = 0;
  std::array<double, kElementCount> atomic_pct{};
  int n_points = 1;  ///< spot analyses averaged into this row

  double at(Element e) const { return atomic_pct[static_cast<std::size_t>(e)]; }
  double& at(Element e) { return atomic_pct[static_cast<std::size_t>(e)]; }
  double total() const;
  void validate() const;
};

/// Atomic-percent ratio. Throws Errc::zero_denominator.
double molar_ratio(const EdsComposition& comp, Element num, Element den);

/// Percent change of a ratio between two ages of the same sample,
/// 100 (r_late - r_early) / r_early.
double ratio_delta_pct(const EdsComposition& early, const EdsComposition& late,
                       Element num, Element den);

// ---------------------------------------------------------------------------
// Strength development
// ---------------------------------------------------------------------------

struct StrengthRecord {
  std::string sample_id;
  int age_days = 0;  ///< one of the 7 / 28 / 120 day test ages
  double strength_mpa = 0.0;
  int n_cubes = 3;

  void validate() const;
};

/// 100 (s120 - s28) / s28. Throws Errc::mismatched_sample unless both
/// records belong to the same sample at 28 and 120 days.
double strength_increment_pct(const StrengthRecord& r28,
                              const StrengthRecord& r120);

struct StrengthSeries {
  std::string sample_id;
  std::vector<StrengthRecord> records;  ///< age-sorted
  bool monotone = true;                 ///< flags non-monotone development
};

/// Groups records per sample, sorted by age, ready for plot emission.
std::vector<StrengthSeries> development_curve(
    std::span<const StrengthRecord> records);

}  // namespace aab::micro

#endif  // AAB_MICROANALYSIS_HPP
