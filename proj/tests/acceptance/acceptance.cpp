// Acceptance suite: runs every release criterion at its pinned tolerance and
// prints one PASS/FAIL line per criterion. Exits non-zero when any fail.

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "aab/calibration.hpp"
#include "aab/materials.hpp"
#include "aab/microanalysis.hpp"
#include "aab/mixdesign.hpp"
#include "aab/rheology.hpp"
#include "aab/thermo.hpp"
#include "support/fixtures.hpp"

using namespace aab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Checker {
  Outcome& out;
  std::ostringstream detail;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      out.pass = false;
      if (detail.tellp() > 0) detail << "; ";
      detail << what;
    }
  }
  void expect_near(double got, double want, double tol, const std::string& what) {
    if (!(std::abs(got - want) <= tol)) {
      out.pass = false;
      if (detail.tellp() > 0) detail << "; ";
      detail << what << " = " << got << ", expected " << want << " +/- " << tol;
    }
  }
  void note(const std::string& text) {
    if (detail.tellp() > 0) detail << "; ";
    detail << text;
  }
};

materials::MaterialRegistry data_registry() {
  return materials::load_registry(
      std::filesystem::path(AAB_TEST_DATA_DIR) / "materials.cfg");
}

// --------------------------------------------------------------------------
// 1. Activator stoichiometry
// --------------------------------------------------------------------------
Outcome criterion_stoichiometry() {
  Outcome out;
  Checker c{out};
  const double expected[4][3] = {{6, 5.55, 7.95},
                                 {8, 7.41, 10.59},
                                 {10, 9.26, 13.25},
                                 {12, 11.11, 15.90}};
  for (const auto& row : expected) {
    const auto d = mixdesign::activator_dosage(row[0]);
    c.expect_near(d.hl_pct, row[1], 0.01 + 1e-12, "HL @ target " + std::to_string(int(row[0])));
    c.expect_near(d.sa_pct, row[2], 0.01 + 1e-12, "SA @ target " + std::to_string(int(row[0])));
  }
  out.detail = c.detail.str();
  if (out.pass) out.detail = "all eight dosage pairs within 0.01 pct points";
  return out;
}

// --------------------------------------------------------------------------
// 2. Precursor indices
// --------------------------------------------------------------------------
Outcome criterion_precursor() {
  Outcome out;
  Checker c{out};
  const auto check = materials::precursor_check(fixtures::ggbfs_oxides());
  c.expect_near(check.basicity, 1.14, 0.01, "modulus of basicity");
  c.expect_near(check.lime_silica, 1.36, 0.01, "CaO/SiO2");
  c.expect(check.verdict == materials::Verdict::suitable, "slag must verify as precursor");
  out.detail = c.detail.str();
  if (out.pass) out.detail = "B and CaO/SiO2 match the slag characterization";
  return out;
}

// --------------------------------------------------------------------------
// 3. Activator costing
// --------------------------------------------------------------------------
Outcome criterion_costing() {
  Outcome out;
  Checker c{out};
  const auto registry = data_registry();
  const double binder = 571.4;
  const auto solid = mixdesign::make_design(10, 10, 0.45,
                                            mixdesign::Mode::solid_activators);
  const auto control = mixdesign::make_design(
      10, 10, 0.45, mixdesign::Mode::control_naoh_solution);

  const double industrial =
      mixdesign::activator_cost(solid, registry, binder,
                                mixdesign::Grade::industrial).total_per_m3;
  const double naoh =
      mixdesign::activator_cost(control, registry, binder).total_per_m3;
  const double analytical =
      mixdesign::activator_cost(solid, registry, binder,
                                mixdesign::Grade::analytical).total_per_m3;
  c.expect_near(industrial, 3428.49, 3428.49 * 0.005, "industrial INR/m3");
  c.expect_near(naoh, 39426.60, 39426.60 * 0.005, "control-NaOH INR/m3");
  c.expect_near(analytical, 63115.13, 63115.13 * 0.005, "analytical INR/m3");

  std::mt19937 rng(42);
  std::uniform_real_distribution<double> mass(1.0, 3000.0);
  for (int i = 0; i < 200; ++i) {
    const double b = mass(rng);
    const double ind = mixdesign::activator_cost(
        solid, registry, b, mixdesign::Grade::industrial).total_per_m3;
    const double ctl = mixdesign::activator_cost(control, registry, b).total_per_m3;
    const double ana = mixdesign::activator_cost(
        solid, registry, b, mixdesign::Grade::analytical).total_per_m3;
    c.expect(ana > ctl && ctl > ind, "cost ordering at binder mass " + std::to_string(b));
    if (!out.pass) break;
  }
  out.detail = c.detail.str();
  if (out.pass) {
    out.detail = "three grade totals within 0.5%, ordering holds for any binder mass";
  }
  return out;
}

// --------------------------------------------------------------------------
// 4. Anhydrous decarbonation references
// --------------------------------------------------------------------------
Outcome criterion_anhydrous_ldca() {
  Outcome out;
  Checker c{out};
  const double expected[4] = {1.387, 0.934, 4.902, 0.508};
  const char* ids[4] = {"GGBFS", "SF", "SA", "HL"};
  for (int i = 0; i < 4; ++i) {
    c.expect_near(thermo::anhydrous_ldca(fixtures::anhydrous_refs().at(ids[i])),
                  expected[i], 0.003, std::string("LdCa of ") + ids[i]);
  }
  out.detail = c.detail.str();
  if (out.pass) out.detail = "all four raw-material LdCa values within 0.003";
  return out;
}

// --------------------------------------------------------------------------
// 5. Blend corrections
// --------------------------------------------------------------------------
Outcome criterion_mix_ldca() {
  Outcome out;
  Checker c{out};
  const auto ldca = fixtures::anhydrous_ldca_values();
  struct Row {
    const char* id;
    double ggbfs, sf, hl, sa, expected;
  };
  // dosage sheet as recorded: the larger part is the soda ash
  const Row rows[] = {
      {"SF10NH8", 90, 10, 7.4, 10.4, 1.889},
      {"SF20NH8", 80, 20, 7.4, 10.4, 1.843},
      {"SF10NH10", 90, 10, 9.25, 13.25, 2.038},
      {"SF20NH10", 80, 20, 9.25, 13.25, 1.993},
  };
  for (const auto& row : rows) {
    const double got = thermo::mix_ldca({{"GGBFS", row.ggbfs},
                                         {"SF", row.sf},
                                         {"HL", row.hl},
                                         {"SA", row.sa}},
                                        ldca);
    c.expect_near(got, row.expected, 0.003, std::string("Ldc_a of ") + row.id);
  }
  out.detail = c.detail.str();
  if (out.pass) out.detail = "all four blend Ldc_a values within 0.003";
  return out;
}

// --------------------------------------------------------------------------
// 6. Segment losses
// --------------------------------------------------------------------------
Outcome criterion_segment_losses() {
  Outcome out;
  Checker c{out};
  const auto scheme =
      thermo::SegmentationScheme::standard(thermo::SchemeName::present_study);
  struct Row {
    const char* id;
    double v[6];
  };
  const Row rows[] = {
      {"SF10NH8", {2.543, 1.398, 1.264, 3.906, 4.214, 2.890}},
      {"SF20NH8", {3.141, 1.259, 1.015, 1.760, 3.389, 1.080}},
      {"SF10NH10", {4.971, 2.095, 1.690, 2.938, 5.526, 1.783}},
      {"SF20NH10", {3.379, 1.287, 1.270, 2.436, 3.882, 3.100}},
  };
  for (const auto& row : rows) {
    const auto p = thermo::segment_losses(fixtures::thermogram(row.id), scheme);
    const double got[6] = {p.ldh_a, p.ldh_b, p.ldh_c, p.ldx_a, p.ldx_b, p.ldc};
    const char* names[6] = {"Ldha", "Ldhb", "Ldhc", "Ldxa", "Ldxb", "Ldc"};
    for (int i = 0; i < 6; ++i) {
      c.expect_near(got[i], row.v[i], 0.005,
                    std::string(row.id) + " " + names[i]);
    }
  }
  out.detail = c.detail.str();
  if (out.pass) out.detail = "all 24 loss entries within 0.005 under the W32/W105 split";
  return out;
}

// --------------------------------------------------------------------------
// 7. Bound water
// --------------------------------------------------------------------------
Outcome criterion_bound_water() {
  Outcome out;
  Checker c{out};
  const auto scheme =
      thermo::SegmentationScheme::standard(thermo::SchemeName::present_study);
  const auto ldca = fixtures::anhydrous_ldca_values();

  struct Row {
    const char* id;
    double bhatty, pane, monteagudo, present;
  };
  const Row rows[] = {
      {"SF10NH8", 11.966, 11.773, 11.188, 10.578},
      {"SF20NH8", 7.866, 6.650, 7.106, 5.408},
      {"SF10NH10", 12.979, 11.994, 12.144, 10.783},
      {"SF20NH10", 10.145, 9.981, 9.328, 8.802},
  };

  std::vector<thermo::calib::MixInputs> inputs;
  for (const auto& row : rows) {
    const auto params = fixtures::mix_params(row.id);
    const auto profile = thermo::segment_losses(fixtures::thermogram(row.id), scheme);
    const double hl = 0.925 * params.target_naoh_pct;
    const double sa = 1.325 * params.target_naoh_pct;
    const double ldc_a = thermo::mix_ldca({{"GGBFS", 100.0 - params.sf_pct},
                                           {"SF", params.sf_pct},
                                           {"HL", hl},
                                           {"SA", sa}},
                                          ldca);
    c.expect_near(thermo::bound_water(profile, ldc_a, thermo::SchemeName::bhatty),
                  row.bhatty, 0.02, std::string(row.id) + " bhatty");
    c.expect_near(
        thermo::bound_water(profile, ldc_a, thermo::SchemeName::pane_hansen),
        row.pane, 0.02, std::string(row.id) + " pane_hansen");
    c.expect_near(
        thermo::bound_water(profile, ldc_a, thermo::SchemeName::monteagudo),
        row.monteagudo, 0.02, std::string(row.id) + " monteagudo");

    thermo::calib::MixInputs in;
    in.mix_id = row.id;
    in.profile = profile;
    in.ldc_a = ldc_a;
    in.sf_frac = params.sf_pct / 100.0;
    in.hl_dosage = hl / 100.0;
    in.sa_dosage = sa / 100.0;
    in.ws = 0.45;
    in.sand_per_binder = 3.0;
    in.loi_ggbfs = 2.74;
    in.loi_sf = 3.41;
    in.loi_sa = 41.5;
    in.loi_hl = 25.69;
    in.target_wb = row.present;
    inputs.push_back(std::move(in));
  }

  // Present-study column is conditional: either a documented interpretation
  // reproduces all four values within 0.05, or the report must quantify the
  // deduction gap. A silent mismatch fails.
  const auto report = thermo::calib::calibrate_present_study(inputs, 0.05);
  std::ostringstream ps;
  if (report.match) {
    ps << "present-study matched by '" << report.match->label()
       << "' (max |residual| " << report.results.front().max_abs_residual << ")";
    c.expect(report.results.front().max_abs_residual <= 0.05,
             "matched interpretation must sit within 0.05");
  } else {
    ps << "present-study unmatched; implied deduction gap "
       << report.implied_min << ".." << report.implied_max << " pct";
    c.expect(report.implied_max >= report.implied_min,
             "calibration must quantify the gap");
  }
  c.expect(report.implied_min > 1.0 && report.implied_max < 1.5,
           "implied deduction must stay in the documented 1.2 pct band");
  c.note(ps.str());
  out.detail = c.detail.str();
  return out;
}

// --------------------------------------------------------------------------
// 8. Free hydroxides
// --------------------------------------------------------------------------
Outcome criterion_hydroxides() {
  Outcome out;
  Checker c{out};
  const auto scheme =
      thermo::SegmentationScheme::standard(thermo::SchemeName::present_study);
  const auto ldca = fixtures::anhydrous_ldca_values();
  struct Row {
    const char* id;
    double ch, mh;
  };
  const Row rows[] = {
      {"SF10NH8", 18.91, 27.51},
      {"SF20NH8", 12.72, 15.73},
      {"SF10NH10", 22.34, 27.10},
      {"SF20NH10", 17.69, 21.78},
  };
  for (const auto& row : rows) {
    const auto params = fixtures::mix_params(row.id);
    const auto profile =
        thermo::segment_losses(fixtures::thermogram(row.id), scheme);
    const double ldc_a =
        thermo::mix_ldca({{"GGBFS", 100.0 - params.sf_pct},
                          {"SF", params.sf_pct},
                          {"HL", 0.925 * params.target_naoh_pct},
                          {"SA", 1.325 * params.target_naoh_pct}},
                         ldca);
    const auto h = thermo::free_hydroxides(profile, ldc_a, 0.10,
                                           thermo::MhVariant::total_ldx);
    c.expect_near(h.ch_free, row.ch, 0.05, std::string(row.id) + " CH");
    c.expect_near(h.mh_free, row.mh, 0.25, std::string(row.id) + " MH");
    // The gibbsite expression is reported verbatim; on these profiles it is
    // negative and must say so.
    c.expect(h.ah_negative && h.ah_free < 0.0,
             std::string(row.id) + " AH must carry the negative-value flag");
  }
  out.detail = c.detail.str();
  if (out.pass) {
    out.detail =
        "CH within 0.05 at calcite 0.10, MH within 0.25 (total-Ldx variant), "
        "AH emitted verbatim with its diagnostic flag";
  }
  return out;
}

// --------------------------------------------------------------------------
// 9. Strength increments
// --------------------------------------------------------------------------
Outcome criterion_strength() {
  Outcome out;
  Checker c{out};
  struct Row {
    const char* id;
    double s28, s120, increment;
  };
  const Row rows[] = {
      {"SF10NH8", 29.76, 31.37, 5.41},
      {"SF20NH8", 30.74, 31.57, 2.70},
      {"SF10NH10", 35.10, 41.33, 17.75},
      {"SF20NH10", 32.82, 39.17, 19.35},
  };
  for (const auto& row : rows) {
    const double got = micro::strength_increment_pct(
        {row.id, 28, row.s28, 3}, {row.id, 120, row.s120, 3});
    c.expect_near(got, row.increment, 0.02, std::string(row.id) + " increment");
  }
  out.detail = c.detail.str();
  if (out.pass) out.detail = "all four late-age increments within 0.02 pct points";
  return out;
}

// --------------------------------------------------------------------------
// 10. EDS deltas and ratio band
// --------------------------------------------------------------------------
Outcome criterion_eds() {
  Outcome out;
  Checker c{out};
  using micro::Element;
  const auto early = fixtures::eds("SF10NH10", 7);
  const auto late = fixtures::eds("SF10NH10", 28);
  c.expect_near(micro::ratio_delta_pct(early, late, Element::Ca, Element::Si),
                -43.1, 0.2, "Ca/Si 7->28d");
  c.expect_near(micro::ratio_delta_pct(early, late, Element::Na, Element::Ca),
                116.0, 1.0, "Na/Ca 7->28d");

  for (const auto& id : fixtures::mix_ids()) {
    for (int age : {7, 28}) {
      const auto comp = fixtures::eds(id, age);
      if (comp.at(Element::Al) <= 0.0) continue;
      const double r = micro::molar_ratio(comp, Element::Mg, Element::Al);
      std::ostringstream what;
      what << "Mg/Al of " << id << " @ " << age << "d";
      c.expect(r >= 0.1 && r <= 0.6,
               what.str() + " = " + std::to_string(r) + " outside [0.1, 0.6]");
    }
  }
  out.detail = c.detail.str();
  if (out.pass) out.detail = "both deltas match and every Mg/Al sits in band";
  return out;
}

// --------------------------------------------------------------------------
// 11. Rheology fitting properties
// --------------------------------------------------------------------------
Outcome criterion_rheology() {
  Outcome out;
  Checker c{out};
  std::mt19937 rng(42);
  // parameter magnitudes span the measured paste ranges
  std::uniform_real_distribution<double> tau0_dist(1.5, 320.0);
  std::uniform_real_distribution<double> mu_dist(0.3, 4.0);
  std::uniform_real_distribution<double> c_dist(-0.01, 0.01);

  std::vector<double> rates;
  for (double g = 0; g <= 100; g += 2.5) rates.push_back(g);
  const double n_pts = static_cast<double>(rates.size());

  // noise-free generate-then-refit
  for (int i = 0; i < 100 && out.pass; ++i) {
    const double t0 = tau0_dist(rng), mu = mu_dist(rng), cc = c_dist(rng);
    const auto fit =
        rheology::fit_modified_bingham(fixtures::mb_down_curve(t0, mu, cc, rates));
    c.expect_near(fit.tau0_pa, t0, 1e-6, "noise-free tau0");
    c.expect_near(fit.mu_p_pa_s, mu, 1e-6, "noise-free mu_p");
    c.expect_near(fit.c_pa_s2, cc, 1e-6, "noise-free c");
    const double ratio = cc / mu;
    const auto expected = ratio < -1e-9 ? rheology::Behavior::shear_thinning
                          : ratio > 1e-9 ? rheology::Behavior::shear_thickening
                                         : rheology::Behavior::bingham_plastic;
    c.expect(fit.behavior == expected, "classification must follow sign(c/mu_p)");
  }

  // gaussian noise: the ensemble-mean recovery error stays within 3 sigma/sqrt(n)
  const double sigma = 0.1;
  const double bound = 3.0 * sigma / std::sqrt(n_pts);
  std::normal_distribution<double> noise(0.0, sigma);
  double bias_t0 = 0, bias_mu = 0, bias_c = 0;
  int r2_ordering_violations = 0;
  const int n_curves = 100;
  for (int i = 0; i < n_curves; ++i) {
    const double t0 = tau0_dist(rng), mu = mu_dist(rng), cc = c_dist(rng);
    std::vector<rheology::FlowPoint> pts;
    for (auto it = rates.rbegin(); it != rates.rend(); ++it) {
      const double g = *it;
      pts.push_back({g, t0 + mu * g + cc * g * g + noise(rng), 20});
    }
    const rheology::FlowCurve curve(pts, rheology::Branch::down);
    const auto mb = rheology::fit_modified_bingham(curve);
    const auto b = rheology::fit_bingham(curve);
    bias_t0 += mb.tau0_pa - t0;
    bias_mu += mb.mu_p_pa_s - mu;
    bias_c += mb.c_pa_s2 - cc;
    if (mb.r2 < b.r2 - 1e-12) ++r2_ordering_violations;
  }
  bias_t0 /= n_curves;
  bias_mu /= n_curves;
  bias_c /= n_curves;
  c.expect(std::abs(bias_t0) <= bound, "mean tau0 recovery exceeds 3 sigma/sqrt(n)");
  c.expect(std::abs(bias_mu) <= bound, "mean mu_p recovery exceeds 3 sigma/sqrt(n)");
  c.expect(std::abs(bias_c) <= bound, "mean c recovery exceeds 3 sigma/sqrt(n)");
  c.expect(r2_ordering_violations == 0, "nested-model R2 ordering violated");

  // identical branches enclose zero area
  std::vector<rheology::FlowPoint> up_pts, down_pts;
  for (double g : rates) up_pts.push_back({g, 2 + 1.5 * g, 20});
  for (auto it = rates.rbegin(); it != rates.rend(); ++it) {
    down_pts.push_back({*it, 2 + 1.5 * *it, 20});
  }
  const auto loop =
      rheology::hysteresis_area(rheology::FlowCurve(up_pts, rheology::Branch::up),
                                rheology::FlowCurve(down_pts, rheology::Branch::down));
  c.expect(loop.loop_area_pa_per_s == 0.0, "identical branches must enclose 0");

  out.detail = c.detail.str();
  if (out.pass) {
    std::ostringstream os;
    os << "refit exact to 1e-6; mean noisy recovery within " << bound
       << " over 100 curves; R2 nesting and zero-loop checks hold";
    out.detail = os.str();
  }
  return out;
}

// --------------------------------------------------------------------------
// 12. Mass conservation across segments
// --------------------------------------------------------------------------
Outcome criterion_conservation() {
  Outcome out;
  Checker c{out};
  const auto scheme =
      thermo::SegmentationScheme::standard(thermo::SchemeName::present_study);
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> drop(0.0, 40.0);
  for (int trial = 0; trial < 100 && out.pass; ++trial) {
    std::vector<thermo::TgaSample> samples;
    double mass = 12000.0 + drop(rng) * 20;
    for (double t = 27; t <= 1000; t += 7) {
      samples.push_back({t, mass});
      mass -= drop(rng);
    }
    const thermo::Thermogram gram("synthetic", samples);
    const auto p = thermo::segment_losses(gram, scheme);
    const double lost_ug = p.ldh_a / 100.0 * p.ref_initial_ug +
                           (p.ldh_b + p.ldh_c + p.ldx_a + p.ldx_b + p.ldc) /
                               100.0 * p.ref_w105_ug;
    const double expected = gram.mass_at(32) - gram.mass_at(1000);
    c.expect(std::abs(lost_ug - expected) <= 1e-9 * gram.mass_at(32),
             "re-normalized losses must sum to the span total");
  }
  out.detail = c.detail.str();
  if (out.pass) out.detail = "100 synthetic thermograms conserve mass to 1e-9";
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "activator stoichiometry", criterion_stoichiometry},
      {2, "precursor indices", criterion_precursor},
      {3, "activator costing", criterion_costing},
      {4, "anhydrous LdCa", criterion_anhydrous_ldca},
      {5, "blend Ldc_a", criterion_mix_ldca},
      {6, "segment losses", criterion_segment_losses},
      {7, "bound water", criterion_bound_water},
      {8, "free hydroxides", criterion_hydroxides},
      {9, "strength increments", criterion_strength},
      {10, "EDS ratios", criterion_eds},
      {11, "rheology fitting", criterion_rheology},
      {12, "mass conservation", criterion_conservation},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    Outcome out;
    try {
      out = criterion.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("unexpected error: ") + e.what();
    }
    if (!out.pass) ++failures;
    std::printf("%s  criterion %2d  %-24s  %s\n", out.pass ? "PASS" : "FAIL",
                criterion.number, criterion.name, out.detail.c_str());
  }
  if (failures > 0) {
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return 1;
  }
  std::printf("all %zu criteria passed\n", criteria.size());
  return 0;
}
