#include "aab/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace aab::thermo::calib {

namespace {
constexpr double kPresentLdcFactor = 1.025;
}

std::string Interpretation::label() const {
  std::string out;
  out += basis == Basis::paste ? "paste" : "mortar";
  out += water == Water::included ? "+water" : "-water";
  out += units == LoiUnits::percent ? "|loi-pct" : "|loi-frac";
  out += xbasis == XBasis::binder ? "|x-binder" : "|x-solids";
  out += wbasis == WbBasis::per_total_solids ? "|wb-solids" : "|wb-binder";
  return out;
}

std::vector<Interpretation> documented_interpretations() {
  std::vector<Interpretation> all;
  for (auto basis : {Interpretation::Basis::paste, Interpretation::Basis::mortar})
    for (auto water :
         {Interpretation::Water::included, Interpretation::Water::excluded})
      for (auto units : {Interpretation::LoiUnits::percent,
                         Interpretation::LoiUnits::fraction})
        for (auto xbasis : {Interpretation::XBasis::binder,
                            Interpretation::XBasis::total_solids})
          for (auto wbasis : {Interpretation::WbBasis::per_total_solids,
                              Interpretation::WbBasis::per_binder})
            all.push_back({basis, water, units, xbasis, wbasis});
  return all;
}

LoiContext make_context(const MixInputs& mix, const Interpretation& interp) {
  const double activators = mix.hl_dosage + mix.sa_dosage;
  const double solids = 1.0 + activators;              // per gram of binder
  const double water_mass = mix.ws * solids;

  double sample = solids;
  if (interp.basis == Interpretation::Basis::mortar) {
    sample += mix.sand_per_binder;
  }
  if (interp.water == Interpretation::Water::included) {
    sample += water_mass;
  }

  LoiContext ctx;
  ctx.m_s = 1.0;
  ctx.m_b = 1.0 / sample;  // binder = GGBFS + SF

  const double xdiv =
      interp.xbasis == Interpretation::XBasis::total_solids ? solids : 1.0;
  ctx.x_sf = mix.sf_frac / xdiv;
  ctx.x_sa = mix.sa_dosage / xdiv;
  ctx.x_hl = mix.hl_dosage / xdiv;
  ctx.x_ggbfs = (1.0 - mix.sf_frac) / xdiv;

  ctx.w_b = interp.wbasis == Interpretation::WbBasis::per_total_solids
                ? mix.ws
                : water_mass;

  const double u =
      interp.units == Interpretation::LoiUnits::percent ? 1.0 : 0.01;
  ctx.loi_precursor = mix.loi_ggbfs * u;
  ctx.loi_sf = mix.loi_sf * u;
  ctx.loi_sa = mix.loi_sa * u;
  ctx.loi_hl = mix.loi_hl * u;
  return ctx;
}

CalibrationReport calibrate_present_study(std::span<const MixInputs> mixes,
                                          double tolerance) {
  if (mixes.empty()) {
    fail(Errc::invalid_argument, "calibration needs at least one mix");
  }

  CalibrationReport report;
  report.tolerance = tolerance;

  // The deduction a target implies does not depend on the interpretation.
  report.implied_min = std::numeric_limits<double>::infinity();
  report.implied_max = -std::numeric_limits<double>::infinity();
  std::vector<double> implied(mixes.size());
  for (std::size_t i = 0; i < mixes.size(); ++i) {
    const MixInputs& m = mixes[i];
    const double base = m.profile.ldh() + m.profile.ldx() +
                        kPresentLdcFactor * (m.profile.ldc - m.ldc_a);
    implied[i] = base - m.target_wb;
    report.implied_min = std::min(report.implied_min, implied[i]);
    report.implied_max = std::max(report.implied_max, implied[i]);
  }

  for (const Interpretation& interp : documented_interpretations()) {
    InterpretationResult res;
    res.interpretation = interp;
    for (std::size_t i = 0; i < mixes.size(); ++i) {
      const MixInputs& m = mixes[i];
      const LoiContext ctx = make_context(m, interp);
      MixResult mr;
      mr.mix_id = m.mix_id;
      mr.model_deduction = loi_deduction_present_study(ctx);
      mr.implied_deduction = implied[i];
      mr.predicted_wb =
          bound_water(m.profile, m.ldc_a, SchemeName::present_study, ctx);
      mr.residual = mr.predicted_wb - m.target_wb;
      res.max_abs_residual =
          std::max(res.max_abs_residual, std::abs(mr.residual));
      res.per_mix.push_back(std::move(mr));
    }
    report.results.push_back(std::move(res));
  }

  std::stable_sort(report.results.begin(), report.results.end(),
                   [](const InterpretationResult& a, const InterpretationResult& b) {
                     if (a.max_abs_residual != b.max_abs_residual)
                       return a.max_abs_residual < b.max_abs_residual;
                     return a.interpretation.label() < b.interpretation.label();
                   });

  if (!report.results.empty() &&
      report.results.front().max_abs_residual <= tolerance) {
    report.match = report.results.front().interpretation;
  }
  return report;
}

}  // namespace aab::thermo::calib
