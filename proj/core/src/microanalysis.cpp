#include "aab/microanalysis.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace aab::micro {

namespace {

// EDS rows averaged over many spots routinely close a few percent above 100;
// accept that slop but reject gross errors.
constexpr double kClosureLimitPct = 110.0;

constexpr const char* kNames[kElementCount] = {"C",  "O",  "Na", "Mg", "Al",
                                               "Si", "Ca", "Mn", "Fe"};

const std::array<int, 3> kTestAges = {7, 28, 120};

}  // namespace

const char* element_name(Element e) noexcept {
  return kNames[static_cast<std::size_t>(e)];
}

Element element_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kElementCount; ++i) {
    if (name == kNames[i]) return static_cast<Element>(i);
  }
  fail(Errc::parse_error, "unknown element '" + std::string(name) + "'");
}

double EdsComposition::total() const {
  double sum = 0.0;
  for (double v : atomic_pct) sum += v;
  return sum;
}

void EdsComposition::validate() const {
  for (std::size_t i = 0; i < kElementCount; ++i) {
    if (atomic_pct[i] < 0.0) {
      fail(Errc::invalid_record, sample_id + ": negative atomic percent for " +
                                     kNames[i]);
    }
  }
  if (total() > kClosureLimitPct) {
    std::ostringstream os;
    os << sample_id << ": atomic percentages total " << total()
       << "%, above the " << kClosureLimitPct << "% closure limit";
    fail(Errc::invalid_record, os.str());
  }
  if (n_points < 1) {
    fail(Errc::invalid_record, sample_id + ": n_points must be at least 1");
  }
}

double molar_ratio(const EdsComposition& comp, Element num, Element den) {
  const double d = comp.at(den);
  if (d <= 0.0) {
    fail(Errc::zero_denominator,
         comp.sample_id + ": " + element_name(den) + " is zero");
  }
  return comp.at(num) / d;
}

double ratio_delta_pct(const EdsComposition& early, const EdsComposition& late,
                       Element num, Element den) {
  const double r_early = molar_ratio(early, num, den);
  const double r_late = molar_ratio(late, num, den);
  if (r_early == 0.0) {
    fail(Errc::zero_early_ratio,
         early.sample_id + ": early-age ratio is zero, delta undefined");
  }
  return 100.0 * (r_late - r_early) / r_early;
}

void StrengthRecord::validate() const {
  if (!(strength_mpa > 0.0)) {
    fail(Errc::invalid_record, sample_id + ": strength must be positive");
  }
  if (std::find(kTestAges.begin(), kTestAges.end(), age_days) ==
      kTestAges.end()) {
    fail(Errc::invalid_record,
         sample_id + ": age " + std::to_string(age_days) +
             " d is not one of the 7/28/120 d test ages");
  }
  if (n_cubes < 1) {
    fail(Errc::invalid_record, sample_id + ": n_cubes must be at least 1");
  }
}

double strength_increment_pct(const StrengthRecord& r28,
                              const StrengthRecord& r120) {
  if (r28.sample_id != r120.sample_id) {
    fail(Errc::mismatched_sample, "records belong to different samples: '" +
                                      r28.sample_id + "' vs '" +
                                      r120.sample_id + "'");
  }
  if (r28.age_days != 28 || r120.age_days != 120) {
    fail(Errc::mismatched_sample,
         r28.sample_id + ": increment is defined between 28 and 120 days");
  }
  return 100.0 * (r120.strength_mpa - r28.strength_mpa) / r28.strength_mpa;
}

std::vector<StrengthSeries> development_curve(
    std::span<const StrengthRecord> records) {
  std::map<std::string, StrengthSeries> by_sample;
  for (const StrengthRecord& r : records) {
    StrengthSeries& series = by_sample[r.sample_id];
    series.sample_id = r.sample_id;
    series.records.push_back(r);
  }
  std::vector<StrengthSeries> out;
  out.reserve(by_sample.size());
  for (auto& [_, series] : by_sample) {
    std::sort(series.records.begin(), series.records.end(),
              [](const StrengthRecord& a, const StrengthRecord& b) {
                return a.age_days < b.age_days;
              });
    for (std::size_t i = 1; i < series.records.size(); ++i) {
      if (series.records[i].strength_mpa < series.records[i - 1].strength_mpa) {
        series.monotone = false;
      }
    }
    out.push_back(std::move(series));
  }
  return out;
}

}  // namespace aab::micro
