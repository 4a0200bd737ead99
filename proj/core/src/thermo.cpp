#include "aab/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace aab::thermo {

namespace {

constexpr double kNoiseTolerance = 0.005;  // local mass upticks up to 0.5%
constexpr double kLaterLossRefTemp = 105.0;
constexpr double kBhattyLdcFactor = 0.41;
constexpr double kPresentLdcFactor = 1.025;

// Molar masses as used by the hydroxide expressions.
constexpr double kMmPortlandite = 74.09;
constexpr double kMmWater = 18.01;
constexpr double kMmCo2 = 44.01;
constexpr double kMmBrucite = 58.32;
constexpr double kMmGibbsite = 78.0;

double loss_pct(const Thermogram& gram, const TempRange& range, double ref_ug) {
  return 100.0 * (gram.mass_at(range.lo_c) - gram.mass_at(range.hi_c)) / ref_ug;
}

}  // namespace

Thermogram::Thermogram(std::string sample_id, std::vector<TgaSample> samples)
    : sample_id_(std::move(sample_id)), samples_(std::move(samples)) {
  if (samples_.size() < 2) {
    fail(Errc::invalid_thermogram, sample_id_ + ": needs at least 2 samples");
  }
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!(samples_[i].mass_ug > 0.0)) {
      fail(Errc::invalid_thermogram, sample_id_ + ": mass must be positive");
    }
    if (i > 0) {
      if (!(samples_[i].temperature_c > samples_[i - 1].temperature_c)) {
        fail(Errc::invalid_thermogram,
             sample_id_ + ": temperatures must be strictly increasing");
      }
      if (samples_[i].mass_ug >
          samples_[i - 1].mass_ug * (1.0 + kNoiseTolerance)) {
        std::ostringstream os;
        os << sample_id_ << ": mass rises by more than "
           << kNoiseTolerance * 100 << "% at "
           << samples_[i].temperature_c << " C";
        fail(Errc::invalid_thermogram, os.str());
      }
    }
  }
  if (samples_.back().mass_ug > samples_.front().mass_ug) {
    fail(Errc::invalid_thermogram, sample_id_ + ": net mass loss is negative");
  }
}

double Thermogram::mass_at(double temperature_c) const {
  if (temperature_c < min_temp() || temperature_c > max_temp()) {
    std::ostringstream os;
    os << sample_id_ << ": " << temperature_c << " C outside the recorded span ["
       << min_temp() << ", " << max_temp() << "]";
    fail(Errc::out_of_range, os.str());
  }
  auto it = std::lower_bound(
      samples_.begin(), samples_.end(), temperature_c,
      [](const TgaSample& s, double t) { return s.temperature_c < t; });
  if (it->temperature_c == temperature_c) return it->mass_ug;
  const TgaSample& hi = *it;
  const TgaSample& lo = *(it - 1);
  const double t = (temperature_c - lo.temperature_c) /
                   (hi.temperature_c - lo.temperature_c);
  return lo.mass_ug + t * (hi.mass_ug - lo.mass_ug);
}

const char* scheme_name(SchemeName name) noexcept {
  switch (name) {
    case SchemeName::bhatty: return "bhatty";
    case SchemeName::pane_hansen: return "pane_hansen";
    case SchemeName::monteagudo: return "monteagudo";
    case SchemeName::deboucha: return "deboucha";
    case SchemeName::present_study: return "present_study";
  }
  return "?";
}

SchemeName scheme_from_name(std::string_view name) {
  if (name == "bhatty") return SchemeName::bhatty;
  if (name == "pane_hansen") return SchemeName::pane_hansen;
  if (name == "monteagudo") return SchemeName::monteagudo;
  if (name == "deboucha") return SchemeName::deboucha;
  if (name == "present_study") return SchemeName::present_study;
  fail(Errc::parse_error, "unknown scheme '" + std::string(name) + "'");
}

SegmentationScheme SegmentationScheme::standard(SchemeName name) {
  SegmentationScheme s;
  s.name = name;
  switch (name) {
    case SchemeName::bhatty:
      s.ldh_ranges = {{105, 440}};
      s.ldx_ranges = {{440, 580}};
      s.ldc_range = {580, 1000};
      break;
    case SchemeName::pane_hansen:
      s.ldh_ranges = {{140, 440}};
      s.ldx_ranges = {{440, 520}};
      s.ldc_range = {520, 1100};
      break;
    case SchemeName::monteagudo:
      s.ldh_ranges = {{105, 410}};
      s.ldx_ranges = {{430, 530}};
      s.ldc_range = {530, 1100};
      break;
    case SchemeName::deboucha:
      s.ldh_ranges = {{105, 400}};
      s.ldx_ranges = {{400, 600}};
      s.ldc_range = {600, 1000};
      break;
    case SchemeName::present_study:
      s.free_water = TempRange{32, 105};
      s.ldh_ranges = {{105, 150}, {150, 230}};
      s.ldx_ranges = {{230, 420}, {420, 635}};
      s.ldc_range = {635, 1000};
      break;
  }
  return s;
}

void SegmentationScheme::validate() const {
  std::vector<TempRange> all;
  if (free_water) all.push_back(*free_water);
  all.insert(all.end(), ldh_ranges.begin(), ldh_ranges.end());
  all.insert(all.end(), ldx_ranges.begin(), ldx_ranges.end());
  all.push_back(ldc_range);

  for (const TempRange& r : all) {
    if (!(r.lo_c < r.hi_c)) {
      fail(Errc::invalid_scheme, "temperature range must satisfy lo < hi");
    }
  }
  for (std::size_t i = 1; i < all.size(); ++i) {
    if (all[i].lo_c < all[i - 1].hi_c) {
      fail(Errc::invalid_scheme,
           "temperature ranges must be ascending and non-overlapping");
    }
  }
  if (ldh_ranges.empty() || ldh_ranges.size() > 2 || ldx_ranges.empty() ||
      ldx_ranges.size() > 2) {
    fail(Errc::invalid_scheme, "expected one or two ldh and ldx ranges");
  }
  if (name == SchemeName::present_study) {
    const SegmentationScheme ref = standard(SchemeName::present_study);
    auto same = [](const TempRange& a, const TempRange& b) {
      return a.lo_c == b.lo_c && a.hi_c == b.hi_c;
    };
    bool ok = free_water && same(*free_water, *ref.free_water) &&
              ldh_ranges.size() == 2 && ldx_ranges.size() == 2 &&
              same(ldh_ranges[0], ref.ldh_ranges[0]) &&
              same(ldh_ranges[1], ref.ldh_ranges[1]) &&
              same(ldx_ranges[0], ref.ldx_ranges[0]) &&
              same(ldx_ranges[1], ref.ldx_ranges[1]) &&
              same(ldc_range, ref.ldc_range);
    if (!ok) {
      fail(Errc::invalid_scheme, "present-study windows are fixed");
    }
  }
}

MassLossProfile segment_losses(const Thermogram& gram,
                               const SegmentationScheme& scheme) {
  scheme.validate();

  MassLossProfile profile;
  profile.ref_initial_ug = scheme.free_water
                               ? gram.mass_at(scheme.free_water->lo_c)
                               : gram.samples().front().mass_ug;
  profile.ref_w105_ug = gram.mass_at(kLaterLossRefTemp);

  if (scheme.free_water) {
    profile.ldh_a = loss_pct(gram, *scheme.free_water, profile.ref_initial_ug);
  }
  profile.ldh_b = loss_pct(gram, scheme.ldh_ranges[0], profile.ref_w105_ug);
  if (scheme.ldh_ranges.size() > 1) {
    profile.ldh_c = loss_pct(gram, scheme.ldh_ranges[1], profile.ref_w105_ug);
  }
  profile.ldx_a = loss_pct(gram, scheme.ldx_ranges[0], profile.ref_w105_ug);
  if (scheme.ldx_ranges.size() > 1) {
    profile.ldx_b = loss_pct(gram, scheme.ldx_ranges[1], profile.ref_w105_ug);
  }
  profile.ldc = loss_pct(gram, scheme.ldc_range, profile.ref_w105_ug);
  return profile;
}

double anhydrous_ldca(const materials::AnhydrousTgaRef& ref) {
  ref.validate();
  return 100.0 * (ref.w635_ug - ref.w1000_ug) / ref.w105_ug;
}

double mix_ldca(const std::map<std::string, double>& parts_per_100_binder,
                const std::map<std::string, double>& ldca_by_material) {
  double weighted = 0.0;
  double binder_total = 0.0;
  for (const auto& [id, parts] : parts_per_100_binder) {
    if (parts < 0.0) {
      fail(Errc::invalid_argument, "negative dosage for '" + id + "'");
    }
    auto it = ldca_by_material.find(id);
    if (it == ldca_by_material.end()) {
      fail(Errc::unknown_material, "no anhydrous reference for '" + id + "'");
    }
    weighted += parts * it->second;
    // Binder components sit inside the 100 parts; activator dosages ride on
    // top. The two binder ids are GGBFS and SF by convention.
    if (id == "GGBFS" || id == "SF") binder_total += parts;
  }
  if (std::abs(binder_total - 100.0) > 1e-9) {
    fail(Errc::invalid_argument, "binder parts must total 100 per 100 binder");
  }
  return weighted / 100.0;
}

MassBalance mass_balance(const LoiContext& ctx) {
  MassBalance mb;
  mb.m_precursor = (ctx.m_s - ctx.m_b * (ctx.x_sf + ctx.x_sa + ctx.x_hl + ctx.w_b)) /
                   (1.0 + ctx.loi_precursor);
  mb.m_additive = (ctx.m_s - ctx.m_b * (ctx.x_ggbfs + ctx.w_b)) /
                  (1.0 + ctx.loi_sf + ctx.loi_sa + ctx.loi_hl);
  return mb;
}

double loi_deduction_present_study(const LoiContext& ctx) {
  const MassBalance mb = mass_balance(ctx);
  return mb.m_precursor * ctx.loi_precursor +
         mb.m_additive * (ctx.loi_sf + ctx.loi_sa + ctx.loi_hl);
}

double loi_deduction_deboucha(const LoiContext& ctx) {
  // Deboucha's two-component balance: the additive slot lumps the mineral
  // additive and both chemical activators, the drift term is zero (the
  // operator reported negligible crucible heating).
  const double x_additive = ctx.x_sf + ctx.x_sa + ctx.x_hl;
  const double loi_additive = ctx.loi_sf + ctx.loi_sa + ctx.loi_hl;
  const double m_c = (ctx.m_s - ctx.m_b * (x_additive + ctx.w_b)) /
                     (1.0 + ctx.loi_precursor);
  const double m_a = (ctx.m_s - ctx.m_b * ((1.0 - x_additive) + ctx.w_b)) /
                     (1.0 + loi_additive);
  return m_c * ctx.loi_precursor + m_a * loi_additive;
}

double bound_water(const MassLossProfile& profile, double ldc_a_pct,
                   SchemeName method,
                   const std::optional<LoiContext>& loi_ctx) {
  const double ldh = profile.ldh();
  const double ldx = profile.ldx();
  const double corrected = profile.ldc - ldc_a_pct;
  switch (method) {
    case SchemeName::bhatty:
      return ldh + ldx + kBhattyLdcFactor * profile.ldc;
    case SchemeName::pane_hansen:
      return ldh + ldx + corrected;
    case SchemeName::monteagudo:
      return ldh + ldx + kBhattyLdcFactor * corrected;
    case SchemeName::deboucha:
      if (!loi_ctx) {
        fail(Errc::missing_loi_context,
             "the deboucha method needs the LOI mass-balance context");
      }
      return ldh + ldx + kBhattyLdcFactor * corrected -
             loi_deduction_deboucha(*loi_ctx);
    case SchemeName::present_study:
      if (!loi_ctx) {
        fail(Errc::missing_loi_context,
             "the present-study method needs the LOI mass-balance context");
      }
      return ldh + ldx + kPresentLdcFactor * corrected -
             loi_deduction_present_study(*loi_ctx);
  }
  fail(Errc::invalid_argument, "unknown bound-water method");
}

BoundWaterReport bound_water_report(const MassLossProfile& profile,
                                    double ldc_a_pct,
                                    const std::optional<LoiContext>& loi_ctx) {
  BoundWaterReport report;
  report.ldc_a = ldc_a_pct;
  report.wb[SchemeName::bhatty] = bound_water(profile, ldc_a_pct, SchemeName::bhatty);
  report.wb[SchemeName::pane_hansen] =
      bound_water(profile, ldc_a_pct, SchemeName::pane_hansen);
  report.wb[SchemeName::monteagudo] =
      bound_water(profile, ldc_a_pct, SchemeName::monteagudo);
  if (loi_ctx) {
    report.context = loi_ctx;
    report.wb[SchemeName::deboucha] =
        bound_water(profile, ldc_a_pct, SchemeName::deboucha, loi_ctx);
    report.wb[SchemeName::present_study] =
        bound_water(profile, ldc_a_pct, SchemeName::present_study, loi_ctx);
    report.deduction_present_study = loi_deduction_present_study(*loi_ctx);
    report.deduction_deboucha = loi_deduction_deboucha(*loi_ctx);
  }
  return report;
}

double correction_factor(double calcite_fraction, BruciteShare share) {
  if (calcite_fraction < 0.0 || calcite_fraction > 1.0) {
    fail(Errc::invalid_argument, "calcite fraction must lie in [0, 1]");
  }
  double base = 0.41;  // carbonated portlandite
  switch (share) {
    case BruciteShare::both: base += 0.41 + 0.205; break;
    case BruciteShare::full: base += 0.41; break;
    case BruciteShare::half: base += 0.205; break;
  }
  return base - calcite_fraction;
}

const char* mh_variant_name(MhVariant variant) noexcept {
  return variant == MhVariant::eq_ldxa ? "eq_ldxa" : "total_ldx";
}

MhVariant mh_variant_from_name(std::string_view name) {
  if (name == "eq_ldxa" || name == "ldxa") return MhVariant::eq_ldxa;
  if (name == "total_ldx" || name == "total") return MhVariant::total_ldx;
  fail(Errc::parse_error, "unknown MH variant '" + std::string(name) + "'");
}

HydroxideReport free_hydroxides(const MassLossProfile& profile,
                                double ldc_a_pct, double calcite_fraction,
                                MhVariant mh_variant) {
  if (calcite_fraction < 0.0 || calcite_fraction > 1.0) {
    fail(Errc::invalid_argument, "calcite fraction must lie in [0, 1]");
  }
  const double corrected = profile.ldc - ldc_a_pct;

  HydroxideReport report;
  report.calcite_fraction = calcite_fraction;
  report.mh_variant = mh_variant;

  report.ch_free = (kMmPortlandite / kMmWater) * profile.ldx_b +
                   (kMmPortlandite / kMmCo2 - calcite_fraction) * corrected;

  const double mh_ldx =
      mh_variant == MhVariant::total_ldx ? profile.ldx() : profile.ldx_a;
  report.mh_free =
      (kMmBrucite / kMmWater) * mh_ldx + (kMmBrucite / kMmCo2) * corrected;

  report.ah_free = (kMmGibbsite / kMmWater) * profile.ldx_a - report.mh_free;
  report.ah_negative = report.ah_free < 0.0;
  return report;
}

namespace {

std::vector<std::pair<double, double>> smoothed_loss_rate(
    const Thermogram& gram, double window_c) {
  const auto samples = gram.samples();
  if (samples.size() < 3) {
    fail(Errc::invalid_argument, "derivative needs at least 3 samples");
  }
  if (!(window_c >= 0.0)) {
    fail(Errc::invalid_argument, "window must be non-negative");
  }
  if (window_c > gram.max_temp() - gram.min_temp()) {
    fail(Errc::window_too_large, "smoothing window exceeds the recorded span");
  }

  // Central differences at interior samples, then a temperature-windowed
  // moving average.
  std::vector<double> temp(samples.size() - 2);
  std::vector<double> raw(samples.size() - 2);
  for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
    temp[i - 1] = samples[i].temperature_c;
    raw[i - 1] = (samples[i + 1].mass_ug - samples[i - 1].mass_ug) /
                 (samples[i + 1].temperature_c - samples[i - 1].temperature_c);
  }

  std::vector<std::pair<double, double>> out(temp.size());
  const double half = window_c / 2.0;
  for (std::size_t i = 0; i < temp.size(); ++i) {
    double sum = 0.0;
    int count = 0;
    for (std::size_t j = 0; j < temp.size(); ++j) {
      if (std::abs(temp[j] - temp[i]) <= half) {
        sum += raw[j];
        ++count;
      }
    }
    out[i] = {temp[i], -sum / count};  // mass-loss rate, positive when losing
  }
  return out;
}

}  // namespace

std::vector<std::pair<double, double>> dtg_series(const Thermogram& gram,
                                                  double window_c) {
  return smoothed_loss_rate(gram, window_c);
}

std::vector<DtgPeak> dtg_peaks(const Thermogram& gram, double window_c) {
  const auto series = smoothed_loss_rate(gram, window_c);
  std::vector<DtgPeak> peaks;
  for (std::size_t i = 1; i + 1 < series.size(); ++i) {
    if (series[i].second > series[i - 1].second &&
        series[i].second > series[i + 1].second) {
      peaks.push_back({series[i].first, series[i].second});
    }
  }
  return peaks;
}

}  // namespace aab::thermo
