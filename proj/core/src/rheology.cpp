#include "aab/rheology.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace aab::rheology {

namespace {

constexpr double kPivotTol = 1e-12;
constexpr double kRatioTol = 1e-9;
constexpr double kR2QualityBar = 0.95;
constexpr double kTinyVariance = 1e-30;

// Gaussian elimination with partial pivoting on the n x n normal equations.
// The smallest pivot is checked against kPivotTol relative to the largest
// initial matrix entry; three-parameter systems on a few dozen points need
// nothing heavier.
template <std::size_t N>
std::array<double, N> solve_normal(std::array<std::array<double, N>, N> a,
                                   std::array<double, N> b) {
  double scale = 0.0;
  for (const auto& row : a)
    for (double v : row) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) fail(Errc::singular_system, "normal equations are all zero");

  for (std::size_t col = 0; col < N; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < N; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (std::abs(a[pivot][col]) < kPivotTol * scale) {
      fail(Errc::singular_system,
           "rank-deficient system: shear rates are not distinct enough");
    }
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = col + 1; r < N; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < N; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::array<double, N> x{};
  for (std::size_t i = N; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < N; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return x;
}

struct PolyFitResult {
  double coef[3] = {0.0, 0.0, 0.0};  // tau0, mu_p, c
  double ss_res = 0.0;
  double r2 = 0.0;
};

double r_squared(double ss_res, double ss_tot) {
  if (ss_tot <= kTinyVariance) return ss_res <= kTinyVariance ? 1.0 : 0.0;
  return 1.0 - ss_res / ss_tot;
}

// Polynomial least squares in the shear rate, degree 1 or 2. Rates are
// normalised by their largest magnitude before forming the normal equations;
// raw powers of rates up to 100/s would otherwise cost several digits.
PolyFitResult fit_polynomial(std::span<const FlowPoint> pts, int degree) {
  const std::size_t n = pts.size();
  double scale = 0.0;
  for (const FlowPoint& p : pts) scale = std::max(scale, std::abs(p.shear_rate));
  if (scale == 0.0) {
    fail(Errc::singular_system, "all shear rates are zero");
  }

  double mean_y = 0.0;
  for (const FlowPoint& p : pts) mean_y += p.shear_stress;
  mean_y /= static_cast<double>(n);

  PolyFitResult out;
  const int terms = degree + 1;
  std::array<std::array<double, 3>, 3> ata{};
  std::array<double, 3> atb{};
  for (const FlowPoint& p : pts) {
    const double u = p.shear_rate / scale;
    const double basis[3] = {1.0, u, u * u};
    for (int i = 0; i < terms; ++i) {
      atb[i] += basis[i] * p.shear_stress;
      for (int j = 0; j < terms; ++j) ata[i][j] += basis[i] * basis[j];
    }
  }

  std::array<double, 3> scaled{};
  if (degree == 1) {
    std::array<std::array<double, 2>, 2> a{{{ata[0][0], ata[0][1]},
                                            {ata[1][0], ata[1][1]}}};
    const auto x = solve_normal<2>(a, {atb[0], atb[1]});
    scaled = {x[0], x[1], 0.0};
  } else {
    const auto x = solve_normal<3>(ata, atb);
    scaled = x;
  }
  out.coef[0] = scaled[0];
  out.coef[1] = scaled[1] / scale;
  out.coef[2] = scaled[2] / (scale * scale);

  double ss_tot = 0.0;
  for (const FlowPoint& p : pts) {
    const double pred = out.coef[0] + out.coef[1] * p.shear_rate +
                        out.coef[2] * p.shear_rate * p.shear_rate;
    const double r = p.shear_stress - pred;
    out.ss_res += r * r;
    const double d = p.shear_stress - mean_y;
    ss_tot += d * d;
  }
  out.r2 = r_squared(out.ss_res, ss_tot);
  return out;
}

Behavior classify(double mu_p, double c) {
  if (mu_p == 0.0) {
    if (c > kRatioTol) return Behavior::shear_thickening;
    if (c < -kRatioTol) return Behavior::shear_thinning;
    return Behavior::bingham_plastic;
  }
  const double ratio = c / mu_p;
  if (ratio > kRatioTol) return Behavior::shear_thickening;
  if (ratio < -kRatioTol) return Behavior::shear_thinning;
  return Behavior::bingham_plastic;
}

void require_descending(const FlowCurve& curve, const char* what) {
  if (curve.branch() != Branch::down) {
    fail(Errc::invalid_curve,
         std::string(what) + " expects the descending branch");
  }
}

// Piecewise-linear evaluation over a branch; knots may run in either
// direction, so sort an index view by rate once.
struct Interpolant {
  std::vector<double> x, y;

  explicit Interpolant(std::span<const FlowPoint> pts) {
    std::vector<std::size_t> order(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return pts[a].shear_rate < pts[b].shear_rate;
    });
    x.reserve(pts.size());
    y.reserve(pts.size());
    for (std::size_t i : order) {
      x.push_back(pts[i].shear_rate);
      y.push_back(pts[i].shear_stress);
    }
  }

  double at(double q) const {
    auto it = std::lower_bound(x.begin(), x.end(), q);
    if (it == x.begin()) return y.front();
    if (it == x.end()) return y.back();
    const std::size_t hi = static_cast<std::size_t>(it - x.begin());
    const std::size_t lo = hi - 1;
    const double t = (q - x[lo]) / (x[hi] - x[lo]);
    return y[lo] + t * (y[hi] - y[lo]);
  }
};

}  // namespace

const char* branch_name(Branch branch) noexcept {
  return branch == Branch::up ? "up" : "down";
}

FlowCurve::FlowCurve(std::vector<FlowPoint> points, Branch branch)
    : points_(std::move(points)), branch_(branch) {
  if (points_.size() < 4) {
    fail(Errc::invalid_curve, "a flow curve needs at least 4 points");
  }
  for (const FlowPoint& p : points_) {
    if (p.shear_rate < 0.0 || p.shear_stress < 0.0) {
      fail(Errc::invalid_curve, "shear rate and stress must be non-negative");
    }
    if (!(p.hold_time_s > 0.0)) {
      fail(Errc::invalid_curve, "hold time must be positive");
    }
  }
  for (std::size_t i = 1; i < points_.size(); ++i) {
    const bool ok = branch_ == Branch::up
                        ? points_[i].shear_rate > points_[i - 1].shear_rate
                        : points_[i].shear_rate < points_[i - 1].shear_rate;
    if (!ok) {
      fail(Errc::invalid_curve,
           std::string("shear rate must be strictly ") +
               (branch_ == Branch::up ? "increasing" : "decreasing") +
               " within the " + branch_name(branch_) + " branch");
    }
  }
}

double FlowCurve::min_rate() const noexcept {
  return branch_ == Branch::up ? points_.front().shear_rate
                               : points_.back().shear_rate;
}

double FlowCurve::max_rate() const noexcept {
  return branch_ == Branch::up ? points_.back().shear_rate
                               : points_.front().shear_rate;
}

const char* model_name(Model model) noexcept {
  switch (model) {
    case Model::bingham: return "bingham";
    case Model::modified_bingham: return "modified_bingham";
    case Model::herschel_bulkley: return "herschel_bulkley";
  }
  return "?";
}

Model model_from_name(std::string_view name) {
  if (name == "bingham") return Model::bingham;
  if (name == "modified_bingham" || name == "mb") return Model::modified_bingham;
  if (name == "herschel_bulkley" || name == "hb") return Model::herschel_bulkley;
  fail(Errc::parse_error, "unknown model '" + std::string(name) + "'");
}

const char* behavior_name(Behavior behavior) noexcept {
  switch (behavior) {
    case Behavior::shear_thinning: return "shear_thinning";
    case Behavior::shear_thickening: return "shear_thickening";
    case Behavior::bingham_plastic: return "bingham_plastic";
  }
  return "?";
}

double RheoFit::predict(double shear_rate) const {
  if (model == Model::herschel_bulkley) {
    return tau0_pa + hb_k * std::pow(shear_rate, hb_n);
  }
  return tau0_pa + mu_p_pa_s * shear_rate + c_pa_s2 * shear_rate * shear_rate;
}

RheoFit fit_bingham(const FlowCurve& curve) {
  require_descending(curve, "fit_bingham");
  const PolyFitResult res = fit_polynomial(curve.points(), 1);
  RheoFit fit;
  fit.model = Model::bingham;
  fit.tau0_pa = res.coef[0];
  fit.mu_p_pa_s = res.coef[1];
  fit.c_pa_s2 = 0.0;
  fit.r2 = res.r2;
  fit.low_r2 = fit.r2 <= kR2QualityBar;
  fit.behavior = Behavior::bingham_plastic;
  return fit;
}

RheoFit fit_modified_bingham(const FlowCurve& curve) {
  require_descending(curve, "fit_modified_bingham");
  const PolyFitResult res = fit_polynomial(curve.points(), 2);
  RheoFit fit;
  fit.model = Model::modified_bingham;
  fit.tau0_pa = res.coef[0];
  fit.mu_p_pa_s = res.coef[1];
  fit.c_pa_s2 = res.coef[2];
  fit.r2 = res.r2;
  fit.low_r2 = fit.r2 <= kR2QualityBar;
  fit.behavior = classify(fit.mu_p_pa_s, fit.c_pa_s2);
  return fit;
}

namespace {

struct HbTrial {
  double tau0 = 0.0;
  double k = 0.0;
  double ss_res = 0.0;
  double r2 = 0.0;
};

HbTrial hb_inner_fit(std::span<const FlowPoint> pts, double n) {
  double scale = 0.0;
  for (const FlowPoint& p : pts) scale = std::max(scale, p.shear_rate);
  const double scale_n = std::pow(scale, n);

  std::array<std::array<double, 2>, 2> ata{};
  std::array<double, 2> atb{};
  double mean_y = 0.0;
  for (const FlowPoint& p : pts) mean_y += p.shear_stress;
  mean_y /= static_cast<double>(pts.size());

  for (const FlowPoint& p : pts) {
    const double u = std::pow(p.shear_rate / scale, n);  // 0^n = 0 for n > 0
    const double basis[2] = {1.0, u};
    for (int i = 0; i < 2; ++i) {
      atb[i] += basis[i] * p.shear_stress;
      for (int j = 0; j < 2; ++j) ata[i][j] += basis[i] * basis[j];
    }
  }
  const auto x = solve_normal<2>(ata, atb);

  HbTrial trial;
  trial.tau0 = x[0];
  trial.k = x[1] / scale_n;
  double ss_tot = 0.0;
  for (const FlowPoint& p : pts) {
    const double pred = trial.tau0 + trial.k * std::pow(p.shear_rate, n);
    const double r = p.shear_stress - pred;
    trial.ss_res += r * r;
    const double d = p.shear_stress - mean_y;
    ss_tot += d * d;
  }
  trial.r2 = r_squared(trial.ss_res, ss_tot);
  return trial;
}

}  // namespace

RheoFit fit_herschel_bulkley(const FlowCurve& curve) {
  const auto pts = curve.points();
  if (pts.size() < 5) {
    fail(Errc::invalid_curve, "Herschel-Bulkley needs at least 5 points");
  }

  constexpr double kLo = 0.1;
  constexpr double kHi = 2.0;
  constexpr double kTermination = 1e-4;
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;

  auto objective = [&](double n) { return hb_inner_fit(pts, n).ss_res; };

  double a = kLo, b = kHi;
  double c = b - phi * (b - a);
  double d = a + phi * (b - a);
  double fc = objective(c);
  double fd = objective(d);
  int guard = 0;
  while (b - a > kTermination) {
    if (!std::isfinite(fc) && !std::isfinite(fd)) {
      fail(Errc::no_convergence,
           "exponent search could not bracket a finite minimum");
    }
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = objective(d);
    }
    if (++guard > 200) {
      fail(Errc::no_convergence, "exponent search failed to terminate");
    }
  }
  const double n = 0.5 * (a + b);
  const HbTrial best = hb_inner_fit(pts, n);
  if (!std::isfinite(best.ss_res)) {
    fail(Errc::no_convergence, "exponent search landed on a non-finite fit");
  }

  RheoFit fit;
  fit.model = Model::herschel_bulkley;
  fit.tau0_pa = best.tau0;
  fit.hb_k = best.k;
  fit.hb_n = n;
  fit.r2 = best.r2;
  fit.low_r2 = fit.r2 <= kR2QualityBar;
  fit.negative_yield = fit.tau0_pa < 0.0;
  if (n > 1.0 + kRatioTol) fit.behavior = Behavior::shear_thickening;
  else if (n < 1.0 - kRatioTol) fit.behavior = Behavior::shear_thinning;
  else fit.behavior = Behavior::bingham_plastic;
  return fit;
}

ProtocolCheck validate_protocol(const std::optional<FlowCurve>& up,
                                const std::optional<FlowCurve>& down,
                                const ProtocolSpec& spec) {
  if (!up || up->size() == 0) {
    fail(Errc::empty_branch, "up branch missing");
  }
  if (!down || down->size() == 0) {
    fail(Errc::empty_branch, "down branch missing");
  }

  ProtocolCheck check;
  auto flag = [&](std::string msg) {
    check.conforming = false;
    check.deviations.push_back(std::move(msg));
  };
  auto near = [](double a, double b) { return std::abs(a - b) <= 1e-9; };

  auto check_endpoints = [&](const FlowCurve& curve, const char* name,
                             double start, double end) {
    const auto pts = curve.points();
    if (!near(pts.front().shear_rate, start)) {
      std::ostringstream os;
      os << name << " branch starts at " << pts.front().shear_rate
         << " 1/s, expected " << start;
      flag(os.str());
    }
    if (!near(pts.back().shear_rate, end)) {
      std::ostringstream os;
      if (pts.back().shear_rate < end) {
        os << name << " branch ramp ceiling " << pts.back().shear_rate << " < "
           << end;
      } else {
        os << name << " branch ends at " << pts.back().shear_rate
           << " 1/s, expected " << end;
      }
      flag(os.str());
    }
  };
  // The up branch climbs floor -> ceiling, the down branch returns.
  check_endpoints(*up, "up", spec.ramp_floor, spec.ramp_ceiling);
  check_endpoints(*down, "down", spec.ramp_ceiling, spec.ramp_floor);

  auto check_holds = [&](const FlowCurve& curve, const char* name) {
    const auto pts = curve.points();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (!near(pts[i].hold_time_s, spec.hold_s)) {
        std::ostringstream os;
        os << name << " branch step " << i + 1 << " at " << pts[i].shear_rate
           << " 1/s held " << pts[i].hold_time_s << " s, expected "
           << spec.hold_s;
        flag(os.str());
      }
    }
  };
  check_holds(*up, "up");
  check_holds(*down, "down");
  return check;
}

const char* loop_sign_name(LoopSign sign) noexcept {
  return sign == LoopSign::thixotropic ? "thixotropic" : "rheopectic";
}

HysteresisResult hysteresis_area(const FlowCurve& up, const FlowCurve& down) {
  const double lo = std::max(up.min_rate(), down.min_rate());
  const double hi = std::min(up.max_rate(), down.max_rate());
  if (!(lo < hi)) {
    fail(Errc::no_overlap, "branches share no shear-rate range");
  }

  const Interpolant fu(up.points());
  const Interpolant fd(down.points());

  std::vector<double> knots;
  knots.push_back(lo);
  knots.push_back(hi);
  for (double x : fu.x)
    if (x > lo && x < hi) knots.push_back(x);
  for (double x : fd.x)
    if (x > lo && x < hi) knots.push_back(x);
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

  double area = 0.0;
  double prev_x = knots.front();
  double prev_diff = fu.at(prev_x) - fd.at(prev_x);
  for (std::size_t i = 1; i < knots.size(); ++i) {
    const double x = knots[i];
    const double diff = fu.at(x) - fd.at(x);
    area += 0.5 * (prev_diff + diff) * (x - prev_x);
    prev_x = x;
    prev_diff = diff;
  }

  HysteresisResult result;
  result.loop_area_pa_per_s = area;
  result.sign = area >= 0.0 ? LoopSign::thixotropic : LoopSign::rheopectic;
  return result;
}

FitAggregate aggregate_fits(std::span<const RheoFit> fits) {
  if (fits.empty()) {
    fail(Errc::invalid_argument, "no fits to aggregate");
  }
  const Model model = fits.front().model;
  for (const RheoFit& f : fits) {
    if (f.model != model) {
      fail(Errc::invalid_argument, "cannot aggregate fits of different models");
    }
  }

  FitAggregate agg;
  agg.n_runs = static_cast<int>(fits.size());
  double s_tau0 = 0, s_mu = 0, s_c = 0, s_k = 0, s_n = 0, s_r2 = 0;
  for (const RheoFit& f : fits) {
    s_tau0 += f.tau0_pa;
    s_mu += f.mu_p_pa_s;
    s_c += f.c_pa_s2;
    s_k += f.hb_k;
    s_n += f.hb_n;
    s_r2 += f.r2;
  }
  const double n = static_cast<double>(fits.size());
  agg.mean.model = model;
  agg.mean.tau0_pa = s_tau0 / n;
  agg.mean.mu_p_pa_s = s_mu / n;
  agg.mean.c_pa_s2 = s_c / n;
  agg.mean.hb_k = s_k / n;
  agg.mean.hb_n = s_n / n;
  agg.mean.r2 = s_r2 / n;
  agg.mean.low_r2 = agg.mean.r2 <= kR2QualityBar;
  agg.mean.negative_yield = agg.mean.tau0_pa < 0.0;
  agg.mean.behavior = model == Model::herschel_bulkley
                          ? fits.front().behavior
                          : classify(agg.mean.mu_p_pa_s, agg.mean.c_pa_s2);

  if (fits.size() > 1) {
    double v_tau0 = 0, v_mu = 0, v_c = 0;
    for (const RheoFit& f : fits) {
      v_tau0 += (f.tau0_pa - agg.mean.tau0_pa) * (f.tau0_pa - agg.mean.tau0_pa);
      v_mu += (f.mu_p_pa_s - agg.mean.mu_p_pa_s) * (f.mu_p_pa_s - agg.mean.mu_p_pa_s);
      v_c += (f.c_pa_s2 - agg.mean.c_pa_s2) * (f.c_pa_s2 - agg.mean.c_pa_s2);
    }
    agg.sd_tau0 = std::sqrt(v_tau0 / (n - 1.0));
    agg.sd_mu_p = std::sqrt(v_mu / (n - 1.0));
    agg.sd_c = std::sqrt(v_c / (n - 1.0));
  }
  return agg;
}

}  // namespace aab::rheology
