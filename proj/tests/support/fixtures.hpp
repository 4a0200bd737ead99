// Shared test fixtures: characterization data for the four raw materials and
// the four mortar mixes the regression values are pinned against.
#ifndef AAB_TESTS_FIXTURES_HPP
#define AAB_TESTS_FIXTURES_HPP

#include <array>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "aab/materials.hpp"
#include "aab/microanalysis.hpp"
#include "aab/rheology.hpp"
#include "aab/thermo.hpp"

// Absolute-tolerance comparison; the regression values carry absolute error
// bars, not relative ones.
#define CHECK_NEAR(a, b, tol) CHECK(std::abs((a) - (b)) <= (tol))
#define REQUIRE_NEAR(a, b, tol) REQUIRE(std::abs((a) - (b)) <= (tol))

namespace fixtures {

// ---------------------------------------------------------------------------
// Raw material oxide assays
// ---------------------------------------------------------------------------

inline aab::materials::OxideComposition ggbfs_oxides() {
  aab::materials::OxideComposition c;
  c.cao = 43.78; c.sio2 = 32.08; c.al2o3 = 11.2; c.mgo = 5.82; c.mno = 0.84;
  c.k2o = 0.42; c.na2o = 0.03; c.fe2o3 = 0.75; c.tio2 = 0.87; c.p2o5 = 1.33;
  c.so3 = 1.65; c.loi = 2.74;
  return c;
}

inline aab::materials::OxideComposition silica_fume_oxides() {
  aab::materials::OxideComposition c;
  c.cao = 3.81; c.sio2 = 84.12; c.al2o3 = 0.15; c.mgo = 1.43; c.mno = 1.15;
  c.k2o = 2.7; c.na2o = 0.02; c.fe2o3 = 2.64; c.tio2 = 0.4; c.p2o5 = 0.72;
  c.so3 = 0.33; c.loi = 3.41;
  return c;
}

inline aab::materials::OxideComposition hydrated_lime_oxides() {
  aab::materials::OxideComposition c;
  c.cao = 72.8; c.sio2 = 1.47; c.al2o3 = 0.87; c.mgo = 1.53; c.mno = 0.06;
  c.k2o = 0.04; c.fe2o3 = 0.36; c.tio2 = 0.02; c.so3 = 0.15; c.loi = 25.69;
  return c;
}

// ---------------------------------------------------------------------------
// Anhydrous TGA references (mass in micrograms at 105 / 635 / 1000 C)
// ---------------------------------------------------------------------------

inline const std::map<std::string, aab::materials::AnhydrousTgaRef>&
anhydrous_refs() {
  static const std::map<std::string, aab::materials::AnhydrousTgaRef> refs = {
      {"GGBFS", {10945.2253, 10860.1317, 10708.356}},
      {"SF", {14627.3584, 14306.9814, 14170.3682}},
      {"SA", {14241.13, 14219.17, 13521.13}},
      {"HL", {5433.272, 4110.166, 4082.571}},
  };
  return refs;
}

inline std::map<std::string, double> anhydrous_ldca_values() {
  std::map<std::string, double> out;
  for (const auto& [id, ref] : anhydrous_refs()) {
    out[id] = aab::thermo::anhydrous_ldca(ref);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Hardened-sample thermograms (mass in micrograms at the window boundaries)
// ---------------------------------------------------------------------------

inline const std::vector<std::string>& mix_ids() {
  static const std::vector<std::string> ids = {"SF10NH8", "SF20NH8",
                                               "SF10NH10", "SF20NH10"};
  return ids;
}

inline aab::thermo::Thermogram thermogram(const std::string& mix_id) {
  static const std::map<std::string, std::array<double, 7>> weights = {
      {"SF10NH8",
       {12866.57, 12539.35, 12364.07, 12205.64, 11715.84, 11187.45, 10825.05}},
      {"SF20NH8",
       {12454.08, 12062.84, 11910.97, 11788.55, 11576.26, 11167.40, 11037.15}},
      {"SF10NH10",
       {12408.41, 11791.61, 11544.55, 11345.30, 10998.91, 10347.33, 10137.07}},
      {"SF20NH10",
       {12547.22, 12123.28, 11967.29, 11813.33, 11518.06, 11047.50, 10671.72}},
  };
  static const std::array<double, 7> temps = {32, 105, 150, 230, 420, 635, 1000};
  const auto& w = weights.at(mix_id);
  std::vector<aab::thermo::TgaSample> samples;
  for (std::size_t i = 0; i < temps.size(); ++i) {
    samples.push_back({temps[i], w[i]});
  }
  return aab::thermo::Thermogram(mix_id, std::move(samples));
}

/// Binder fraction and NaOH target behind each canonical mix id.
struct MixParams {
  double sf_pct;
  double target_naoh_pct;
};

inline MixParams mix_params(const std::string& mix_id) {
  static const std::map<std::string, MixParams> params = {
      {"SF10NH8", {10, 8}},
      {"SF20NH8", {20, 8}},
      {"SF10NH10", {10, 10}},
      {"SF20NH10", {20, 10}},
  };
  return params.at(mix_id);
}

// ---------------------------------------------------------------------------
// EDS spot averages, atomic percent (C O Na Mg Al Si Ca Mn Fe)
// ---------------------------------------------------------------------------

inline aab::micro::EdsComposition eds(const std::string& mix_id, int age_days) {
  static const std::map<std::pair<std::string, int>, std::array<double, 9>>
      rows = {
          {{"SF10NH8", 7}, {4.72, 23.00, 4.48, 3.14, 8.40, 24.31, 26.66, 1.52, 1.62}},
          {{"SF20NH8", 7}, {6.85, 29.45, 2.18, 2.55, 6.17, 18.85, 29.17, 1.17, 1.44}},
          {{"SF10NH10", 7}, {4.52, 26.39, 4.36, 0.29, 12.39, 20.22, 29.00, 1.37, 1.89}},
          {{"SF20NH10", 7}, {7.28, 14.21, 0.23, 0.12, 0.51, 48.94, 26.62, 1.23, 0.87}},
          {{"SF10NH8", 28}, {13.56, 21.46, 4.64, 2.43, 7.01, 18.41, 16.76, 12.87, 0.11}},
          {{"SF20NH8", 28}, {6.29, 13.08, 2.16, 2.91, 5.99, 23.85, 21.58, 20.62, 0.16}},
          {{"SF10NH10", 28}, {19.07, 16.16, 5.53, 3.63, 7.93, 20.87, 17.03, 15.71, 0.15}},
          {{"SF20NH10", 28}, {8.24, 26.73, 3.51, 1.47, 4.40, 24.57, 21.92, 9.13, 0.04}},
      };
  aab::micro::EdsComposition comp;
  comp.sample_id = mix_id;
  comp.age_days = age_days;
  comp.atomic_pct = rows.at({mix_id, age_days});
  comp.n_points = 20;
  comp.validate();
  return comp;
}

// ---------------------------------------------------------------------------
// Strength records, MPa
// ---------------------------------------------------------------------------

inline std::vector<aab::micro::StrengthRecord> strength_records() {
  return {
      {"SF10NH8", 7, 25.93, 3},   {"SF10NH8", 28, 29.76, 3},
      {"SF10NH8", 120, 31.37, 3}, {"SF20NH8", 7, 25.23, 3},
      {"SF20NH8", 28, 30.74, 3},  {"SF20NH8", 120, 31.57, 3},
      {"SF10NH10", 7, 29.97, 3},  {"SF10NH10", 28, 35.10, 3},
      {"SF10NH10", 120, 41.33, 3},{"SF20NH10", 7, 27.9, 3},
      {"SF20NH10", 28, 32.82, 3}, {"SF20NH10", 120, 39.17, 3},
  };
}

// ---------------------------------------------------------------------------
// Flow-curve helpers
// ---------------------------------------------------------------------------

/// Descending stepped ramp sampled from tau = tau0 + mu_p g + c g^2 at the
/// given shear rates (listed low to high, emitted high to low).
inline aab::rheology::FlowCurve mb_down_curve(double tau0, double mu_p, double c,
                                              const std::vector<double>& rates,
                                              double hold_s = 20.0) {
  std::vector<aab::rheology::FlowPoint> points;
  for (auto it = rates.rbegin(); it != rates.rend(); ++it) {
    const double g = *it;
    points.push_back({g, tau0 + mu_p * g + c * g * g, hold_s});
  }
  return aab::rheology::FlowCurve(std::move(points), aab::rheology::Branch::down);
}

}  // namespace fixtures

#endif  // AAB_TESTS_FIXTURES_HPP
