// Command-line front end: mix design and costing, flow-curve fitting,
// thermogravimetric analysis, EDS bookkeeping and batch project runs.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "aab/calibration.hpp"
#include "aab/csv.hpp"
#include "aab/materials.hpp"
#include "aab/microanalysis.hpp"
#include "aab/mixdesign.hpp"
#include "aab/project.hpp"
#include "aab/report.hpp"
#include "aab/rheology.hpp"
#include "aab/thermo.hpp"
#include "aab/version.hpp"

namespace {

using aab::Errc;
using aab::Error;
using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitAnalysis = 3;

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::singular_system:
    case Errc::no_convergence:
    case Errc::no_overlap:
    case Errc::out_of_range:
    case Errc::window_too_large:
    case Errc::missing_section:
    case Errc::zero_denominator:
    case Errc::zero_early_ratio:
      return kExitAnalysis;
    default:
      return kExitValidation;
  }
}

double r6(double v) { return aab::project::round6(v); }

void emit(const json& j, bool as_csv) {
  if (!as_csv) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  // flat key,value rendering for scripts that want columns
  std::cout << "key,value\n";
  std::function<void(const json&, const std::string&)> walk =
      [&](const json& node, const std::string& prefix) {
        if (node.is_object()) {
          for (const auto& [k, v] : node.items()) {
            walk(v, prefix.empty() ? k : prefix + "." + k);
          }
        } else if (node.is_array()) {
          int i = 0;
          for (const auto& v : node) walk(v, prefix + "[" + std::to_string(i++) + "]");
        } else {
          std::cout << prefix << ',' << node.dump() << '\n';
        }
      };
  walk(j, "");
}

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

// ---------------------------------------------------------------------------
// mix table / mix cost
// ---------------------------------------------------------------------------

struct MixTableOpts {
  std::string sf = "10,20";
  std::string naoh = "6,8,10,12";
  std::string ws = "0.45";
  std::string mode = "solid";
  bool as_json = false;
};

int run_mix_table(const MixTableOpts& opts) {
  const auto table = aab::mixdesign::build_mix_table(
      parse_list(opts.sf), parse_list(opts.naoh), parse_list(opts.ws),
      {aab::mixdesign::mode_from_name(opts.mode)});
  if (opts.as_json) {
    json rows = json::array();
    for (const auto& d : table) {
      rows.push_back({{"id", d.id},
                      {"mode", aab::mixdesign::mode_name(d.mode)},
                      {"sf_pct", r6(d.sf_frac_pct)},
                      {"ggbfs_pct", r6(d.ggbfs_frac_pct)},
                      {"target_naoh_pct", r6(d.target_naoh_pct)},
                      {"hl_pct", r6(d.hl_dosage_pct)},
                      {"sa_pct", r6(d.sa_dosage_pct)},
                      {"ws", r6(d.w_s)}});
    }
    std::cout << rows.dump(2) << '\n';
  } else {
    std::cout << "id,mode,sf_pct,ggbfs_pct,target_naoh_pct,hl_pct,sa_pct,ws\n";
    for (const auto& d : table) {
      std::cout << d.id << ',' << aab::mixdesign::mode_name(d.mode) << ','
                << aab::io::format_double(d.sf_frac_pct) << ','
                << aab::io::format_double(d.ggbfs_frac_pct) << ','
                << aab::io::format_double(d.target_naoh_pct) << ','
                << aab::io::format_double(d.hl_dosage_pct) << ','
                << aab::io::format_double(d.sa_dosage_pct) << ','
                << aab::io::format_double(d.w_s) << '\n';
    }
  }
  return kExitOk;
}

struct MixCostOpts {
  std::string design;
  double binder_kg = 571.4;
  double ws = 0.45;
  std::string registry = "data/materials.cfg";
  std::string grade = "industrial";
  bool as_csv = false;
};

int run_mix_cost(const MixCostOpts& opts) {
  const auto registry = aab::materials::load_registry(opts.registry);
  const auto design = aab::mixdesign::design_from_id(opts.design, opts.ws);
  const auto cost = aab::mixdesign::activator_cost(
      design, registry, opts.binder_kg,
      aab::mixdesign::grade_from_name(opts.grade));

  json j;
  j["design"] = design.id;
  j["mode"] = aab::mixdesign::mode_name(design.mode);
  j["grade"] = opts.grade;
  j["binder_kg_per_m3"] = r6(cost.binder_kg_per_m3);
  j["lines"] = json::array();
  for (const auto& line : cost.lines) {
    j["lines"].push_back({{"material", line.material_id},
                          {"dosage_pct", r6(line.dosage_pct)},
                          {"unit_cost_per_kg", r6(line.unit_cost_per_kg)},
                          {"cost_per_m3", r6(line.cost_per_m3)}});
  }
  j["total_per_m3"] = r6(cost.total_per_m3);
  emit(j, opts.as_csv);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// rheo fit
// ---------------------------------------------------------------------------

struct RheoFitOpts {
  std::string model = "mb";
  std::string input;
  bool as_csv = false;
};

json fit_json(const aab::rheology::RheoFit& fit) {
  json j;
  j["model"] = aab::rheology::model_name(fit.model);
  j["tau0_pa"] = r6(fit.tau0_pa);
  if (fit.model == aab::rheology::Model::herschel_bulkley) {
    j["k_pa_sn"] = r6(fit.hb_k);
    j["n"] = r6(fit.hb_n);
    j["negative_yield"] = fit.negative_yield;
  } else {
    j["mu_p_pa_s"] = r6(fit.mu_p_pa_s);
    j["c_pa_s2"] = r6(fit.c_pa_s2);
  }
  j["r2"] = r6(fit.r2);
  j["behavior"] = aab::rheology::behavior_name(fit.behavior);
  j["low_r2"] = fit.low_r2;
  return j;
}

int run_rheo_fit(const RheoFitOpts& opts) {
  const auto run = aab::io::load_flow_run(opts.input);
  if (!run.down) {
    aab::fail(Errc::empty_branch, "input carries no descending branch");
  }
  const auto model = aab::rheology::model_from_name(opts.model);
  aab::rheology::RheoFit fit;
  switch (model) {
    case aab::rheology::Model::bingham:
      fit = aab::rheology::fit_bingham(*run.down);
      break;
    case aab::rheology::Model::modified_bingham:
      fit = aab::rheology::fit_modified_bingham(*run.down);
      break;
    case aab::rheology::Model::herschel_bulkley:
      fit = aab::rheology::fit_herschel_bulkley(*run.down);
      break;
  }
  json j = fit_json(fit);
  if (run.up) {
    const auto protocol = aab::rheology::validate_protocol(run.up, run.down);
    j["protocol"] = {{"conforming", protocol.conforming},
                     {"deviations", protocol.deviations}};
    const auto loop = aab::rheology::hysteresis_area(*run.up, *run.down);
    j["hysteresis"] = {{"loop_area_pa_per_s", r6(loop.loop_area_pa_per_s)},
                       {"sign", aab::rheology::loop_sign_name(loop.sign)}};
  }
  emit(j, opts.as_csv);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// tga analyze / tga calibrate
// ---------------------------------------------------------------------------

struct TgaAnalyzeOpts {
  std::string input;
  std::string sample_id;
  std::string scheme = "present_study";
  std::string registry;
  std::string mix;
  double ws = 0.45;
  double ldca_override = -1;
  double calcite = 0.10;
  std::string mh_variant = "total_ldx";
  double window = 10.0;
  bool as_csv = false;
};

int run_tga_analyze(const TgaAnalyzeOpts& opts) {
  const std::string sample_id =
      !opts.sample_id.empty() ? opts.sample_id
      : !opts.mix.empty()     ? opts.mix
                              : std::filesystem::path(opts.input).stem().string();
  const auto gram = aab::io::load_thermogram(opts.input, sample_id);
  const auto scheme = aab::thermo::SegmentationScheme::standard(
      aab::thermo::scheme_from_name(opts.scheme));
  const auto profile = aab::thermo::segment_losses(gram, scheme);

  json j;
  j["sample"] = sample_id;
  j["scheme"] = opts.scheme;
  j["mass_loss"] = {{"ldh_a", r6(profile.ldh_a)},   {"ldh_b", r6(profile.ldh_b)},
                    {"ldh_c", r6(profile.ldh_c)},   {"ldx_a", r6(profile.ldx_a)},
                    {"ldx_b", r6(profile.ldx_b)},   {"ldc", r6(profile.ldc)},
                    {"ref_initial_ug", r6(profile.ref_initial_ug)},
                    {"ref_w105_ug", r6(profile.ref_w105_ug)}};

  // Ldc_a needs either an explicit value or a registry plus a mix id.
  std::optional<double> ldc_a;
  std::optional<aab::thermo::LoiContext> ctx;
  if (opts.ldca_override >= 0) ldc_a = opts.ldca_override;
  if (!opts.registry.empty() && !opts.mix.empty()) {
    const auto registry = aab::materials::load_registry(opts.registry);
    const auto design = aab::mixdesign::design_from_id(opts.mix, opts.ws);
    if (!ldc_a) {
      std::map<std::string, double> ldca_by_mat;
      for (const char* id : {"GGBFS", "SF", "HL", "SA"}) {
        const auto& spec = registry.require(id);
        if (!spec.anhydrous_ref) {
          aab::fail(Errc::unknown_material,
                    std::string(id) + " lacks a tga_ref in the registry");
        }
        ldca_by_mat[id] = aab::thermo::anhydrous_ldca(*spec.anhydrous_ref);
      }
      ldc_a = aab::thermo::mix_ldca({{"GGBFS", design.ggbfs_frac_pct},
                                     {"SF", design.sf_frac_pct},
                                     {"HL", design.hl_dosage_pct},
                                     {"SA", design.sa_dosage_pct}},
                                    ldca_by_mat);
    }
    aab::thermo::calib::MixInputs inputs;
    inputs.sf_frac = design.sf_frac_pct / 100.0;
    inputs.hl_dosage = design.hl_dosage_pct / 100.0;
    inputs.sa_dosage = design.sa_dosage_pct / 100.0;
    inputs.ws = design.w_s;
    inputs.sand_per_binder = design.sand_per_binder;
    inputs.loi_ggbfs = registry.require("GGBFS").composition->loi;
    inputs.loi_sf = registry.require("SF").composition->loi;
    inputs.loi_sa = registry.require("SA").composition->loi;
    inputs.loi_hl = registry.require("HL").composition->loi;
    ctx = aab::thermo::calib::make_context(inputs,
                                           aab::thermo::calib::Interpretation{});
  }

  if (ldc_a) {
    const auto bw = aab::thermo::bound_water_report(profile, *ldc_a, ctx);
    json wj;
    wj["ldc_a"] = r6(bw.ldc_a);
    json methods;
    for (const auto& [method, value] : bw.wb) {
      methods[aab::thermo::scheme_name(method)] = r6(value);
    }
    wj["wb_pct"] = std::move(methods);
    if (bw.deduction_present_study) {
      wj["loi_deduction_present_study"] = r6(*bw.deduction_present_study);
    }
    j["bound_water"] = std::move(wj);
    j["correction_factor"] = r6(aab::thermo::correction_factor(opts.calcite));

    const auto h = aab::thermo::free_hydroxides(
        profile, *ldc_a, opts.calcite,
        aab::thermo::mh_variant_from_name(opts.mh_variant));
    j["hydroxides"] = {{"ch_free_pct", r6(h.ch_free)},
                       {"mh_free_pct", r6(h.mh_free)},
                       {"ah_free_pct", r6(h.ah_free)},
                       {"calcite_fraction", r6(h.calcite_fraction)},
                       {"mh_variant", aab::thermo::mh_variant_name(h.mh_variant)},
                       {"ah_negative", h.ah_negative}};
  }

  if (gram.samples().size() >= 3) {
    j["dtg_peaks"] = json::array();
    for (const auto& p : aab::thermo::dtg_peaks(gram, opts.window)) {
      j["dtg_peaks"].push_back({{"temperature_c", r6(p.temperature_c)},
                                {"magnitude", r6(p.magnitude)}});
    }
  }
  emit(j, opts.as_csv);
  return kExitOk;
}

struct TgaCalibrateOpts {
  std::string project;
  std::vector<std::string> targets;
  double tolerance = 0.05;
  bool as_csv = false;
};

int run_tga_calibrate(const TgaCalibrateOpts& opts) {
  const auto project = aab::project::load_project(opts.project);
  aab::project::validate_project(project);
  const auto registry = aab::materials::load_registry(project.registry_path);

  std::map<std::string, double> targets;
  for (const auto& spec : opts.targets) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) {
      aab::fail(Errc::invalid_argument,
                "targets look like MIXID=value, got '" + spec + "'");
    }
    targets[spec.substr(0, eq)] = std::stod(spec.substr(eq + 1));
  }

  std::map<std::string, double> ldca_by_mat;
  for (const char* id : {"GGBFS", "SF", "HL", "SA"}) {
    ldca_by_mat[id] =
        aab::thermo::anhydrous_ldca(*registry.require(id).anhydrous_ref);
  }

  const auto scheme = aab::thermo::SegmentationScheme::standard(
      aab::thermo::SchemeName::present_study);
  std::vector<aab::thermo::calib::MixInputs> inputs;
  for (const auto& mix : project.mixes) {
    auto it = targets.find(mix.id);
    if (it == targets.end() || mix.thermograms.empty()) continue;
    const auto design = aab::mixdesign::design_from_id(mix.id, mix.ws);
    aab::thermo::calib::MixInputs in;
    in.mix_id = mix.id;
    in.profile = aab::thermo::segment_losses(
        aab::io::load_thermogram(mix.thermograms.front().second, mix.id), scheme);
    in.ldc_a = aab::thermo::mix_ldca({{"GGBFS", design.ggbfs_frac_pct},
                                      {"SF", design.sf_frac_pct},
                                      {"HL", design.hl_dosage_pct},
                                      {"SA", design.sa_dosage_pct}},
                                     ldca_by_mat);
    in.sf_frac = design.sf_frac_pct / 100.0;
    in.hl_dosage = design.hl_dosage_pct / 100.0;
    in.sa_dosage = design.sa_dosage_pct / 100.0;
    in.ws = design.w_s;
    in.sand_per_binder = design.sand_per_binder;
    in.loi_ggbfs = registry.require("GGBFS").composition->loi;
    in.loi_sf = registry.require("SF").composition->loi;
    in.loi_sa = registry.require("SA").composition->loi;
    in.loi_hl = registry.require("HL").composition->loi;
    in.target_wb = it->second;
    inputs.push_back(std::move(in));
  }
  if (inputs.empty()) {
    aab::fail(Errc::invalid_argument,
              "no project mix matches a target; nothing to calibrate");
  }

  const auto report =
      aab::thermo::calib::calibrate_present_study(inputs, opts.tolerance);

  json j;
  j["tolerance"] = report.tolerance;
  j["matched"] = report.match.has_value();
  if (report.match) j["interpretation"] = report.match->label();
  j["implied_deduction_pct"] = {{"min", r6(report.implied_min)},
                                {"max", r6(report.implied_max)}};
  j["rankings"] = json::array();
  for (const auto& res : report.results) {
    json rj;
    rj["interpretation"] = res.interpretation.label();
    rj["max_abs_residual"] = r6(res.max_abs_residual);
    rj["per_mix"] = json::array();
    for (const auto& mr : res.per_mix) {
      rj["per_mix"].push_back({{"mix", mr.mix_id},
                               {"predicted_wb", r6(mr.predicted_wb)},
                               {"residual", r6(mr.residual)},
                               {"model_deduction", r6(mr.model_deduction)},
                               {"implied_deduction", r6(mr.implied_deduction)}});
    }
    j["rankings"].push_back(std::move(rj));
  }
  emit(j, opts.as_csv);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// eds ratios / strength increments
// ---------------------------------------------------------------------------

struct EdsOpts {
  std::string input;
  std::string pairs = "Ca/Si,Na/Ca,Mg/Al";
  std::string delta;
  std::string sample;
  bool as_json = false;
};

int run_eds_ratios(const EdsOpts& opts) {
  const auto rows = aab::io::load_eds(opts.input);

  std::vector<std::pair<aab::micro::Element, aab::micro::Element>> pairs;
  {
    std::stringstream ss(opts.pairs);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto slash = item.find('/');
      if (slash == std::string::npos) {
        aab::fail(Errc::invalid_argument, "pairs look like Ca/Si, got '" + item + "'");
      }
      pairs.emplace_back(aab::micro::element_from_name(item.substr(0, slash)),
                         aab::micro::element_from_name(item.substr(slash + 1)));
    }
  }

  json out = json::array();
  auto pair_label = [](auto n, auto d) {
    return std::string(aab::micro::element_name(n)) + "/" +
           aab::micro::element_name(d);
  };

  if (opts.delta.empty()) {
    for (const auto& row : rows) {
      if (!opts.sample.empty() && row.sample_id != opts.sample) continue;
      for (auto [n, d] : pairs) {
        out.push_back({{"sample", row.sample_id},
                       {"age_days", row.age_days},
                       {"pair", pair_label(n, d)},
                       {"value", r6(aab::micro::molar_ratio(row, n, d))}});
      }
    }
  } else {
    const auto colon = opts.delta.find(':');
    if (colon == std::string::npos) {
      aab::fail(Errc::invalid_argument, "delta looks like 7:28");
    }
    const int early_age = std::stoi(opts.delta.substr(0, colon));
    const int late_age = std::stoi(opts.delta.substr(colon + 1));
    std::map<std::string, const aab::micro::EdsComposition*> early, late;
    for (const auto& row : rows) {
      if (!opts.sample.empty() && row.sample_id != opts.sample) continue;
      if (row.age_days == early_age) early[row.sample_id] = &row;
      if (row.age_days == late_age) late[row.sample_id] = &row;
    }
    for (const auto& [id, e] : early) {
      auto it = late.find(id);
      if (it == late.end()) continue;
      for (auto [n, d] : pairs) {
        out.push_back(
            {{"sample", id},
             {"pair", pair_label(n, d)},
             {"from_age_days", early_age},
             {"to_age_days", late_age},
             {"change_pct", r6(aab::micro::ratio_delta_pct(*e, *it->second, n, d))}});
      }
    }
  }

  if (opts.as_json) {
    std::cout << out.dump(2) << '\n';
  } else if (opts.delta.empty()) {
    std::cout << "sample,age_days,pair,value\n";
    for (const auto& row : out) {
      std::cout << row["sample"].get<std::string>() << ',' << row["age_days"]
                << ',' << row["pair"].get<std::string>() << ',' << row["value"]
                << '\n';
    }
  } else {
    std::cout << "sample,pair,from_age_days,to_age_days,change_pct\n";
    for (const auto& row : out) {
      std::cout << row["sample"].get<std::string>() << ','
                << row["pair"].get<std::string>() << ',' << row["from_age_days"]
                << ',' << row["to_age_days"] << ',' << row["change_pct"] << '\n';
    }
  }
  return kExitOk;
}

struct StrengthOpts {
  std::string input;
  int from_age = 28;
  int to_age = 120;
  bool as_json = false;
};

int run_strength_increments(const StrengthOpts& opts) {
  const auto rows = aab::io::load_strength(opts.input);
  const auto series = aab::micro::development_curve(rows);

  json out = json::array();
  for (const auto& s : series) {
    const aab::micro::StrengthRecord* from = nullptr;
    const aab::micro::StrengthRecord* to = nullptr;
    for (const auto& rec : s.records) {
      if (rec.age_days == opts.from_age) from = &rec;
      if (rec.age_days == opts.to_age) to = &rec;
    }
    if (!from || !to) continue;
    out.push_back({{"sample", s.sample_id},
                   {"strength_from_mpa", r6(from->strength_mpa)},
                   {"strength_to_mpa", r6(to->strength_mpa)},
                   {"increment_pct",
                    r6(aab::micro::strength_increment_pct(*from, *to))},
                   {"monotone", s.monotone}});
  }
  if (opts.as_json) {
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << "sample,strength_from_mpa,strength_to_mpa,increment_pct,monotone\n";
    for (const auto& row : out) {
      std::cout << row["sample"].get<std::string>() << ','
                << row["strength_from_mpa"] << ',' << row["strength_to_mpa"]
                << ',' << row["increment_pct"] << ','
                << (row["monotone"].get<bool>() ? "true" : "false") << '\n';
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// project run / plot emit
// ---------------------------------------------------------------------------

struct ProjectOpts {
  std::string file;
  std::string out_dir;
};

int run_project_cmd(const ProjectOpts& opts) {
  auto project = aab::project::load_project(opts.file);
  if (!opts.out_dir.empty()) project.output_dir = opts.out_dir;
  const auto report = aab::project::run_project(project);
  const auto j = aab::project::report_to_json(report);
  if (project.output_dir) {
    std::filesystem::create_directories(*project.output_dir);
    const auto path = *project.output_dir / "report.json";
    std::ofstream(path) << j.dump(2) << '\n';
    std::cout << "report written to " << path.string() << '\n';
  } else {
    std::cout << j.dump(2) << '\n';
  }
  return report.complete() ? kExitOk : kExitAnalysis;
}

struct PlotOpts {
  std::string project;
  std::string kind = "strength_dev";
  std::string out;
};

int run_plot_emit(const PlotOpts& opts) {
  const auto project = aab::project::load_project(opts.project);
  const auto report = aab::project::run_project(project);
  const std::string csv = aab::project::emit_plot_data(
      report, aab::project::plot_kind_from_name(opts.kind));
  if (opts.out.empty()) {
    std::cout << csv;
  } else {
    std::ofstream(opts.out) << csv;
    std::cout << "plot data written to " << opts.out << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analytics for alkali-activated slag binders: mix stoichiometry "
               "and costing, flow-curve fitting, thermogravimetric bound-water "
               "estimation and strength bookkeeping"};
  app.set_version_flag("--version", aab::kVersion);
  app.require_subcommand(1);

  // ---- mix ----
  auto* mix = app.add_subcommand("mix", "Mix design tables and activator costs");
  mix->require_subcommand(1);

  MixTableOpts table_opts;
  auto* mix_table = mix->add_subcommand("table", "Emit a mix design table");
  mix_table->add_option("--sf", table_opts.sf, "Silica fume percentages");
  mix_table->add_option("--naoh", table_opts.naoh, "Targeted NaOH percentages");
  mix_table->add_option("--ws", table_opts.ws, "Water/solids ratios");
  mix_table->add_option("--mode", table_opts.mode, "solid|control|premixed");
  mix_table->add_flag("--json", table_opts.as_json, "JSON instead of CSV");
  mix_table->callback([&] { std::exit(run_mix_table(table_opts)); });

  MixCostOpts cost_opts;
  auto* mix_cost = mix->add_subcommand("cost", "Activator cost per cubic metre");
  mix_cost->add_option("--design", cost_opts.design, "Mix id, e.g. SF10NH10")
      ->required();
  mix_cost->add_option("--binder-kg", cost_opts.binder_kg, "Binder mass per m3");
  mix_cost->add_option("--ws", cost_opts.ws, "Water/solids ratio");
  mix_cost->add_option("--registry", cost_opts.registry, "Materials registry")
      ->required();
  mix_cost->add_option("--grade", cost_opts.grade, "industrial|analytical");
  mix_cost->add_flag("--csv", cost_opts.as_csv, "Flat CSV instead of JSON");
  mix_cost->callback([&] { std::exit(run_mix_cost(cost_opts)); });

  // ---- rheo ----
  auto* rheo = app.add_subcommand("rheo", "Flow-curve model fitting");
  rheo->require_subcommand(1);
  RheoFitOpts rheo_opts;
  auto* rheo_fit = rheo->add_subcommand("fit", "Fit a yield-stress model");
  rheo_fit->add_option("--model", rheo_opts.model, "mb|bingham|hb");
  rheo_fit->add_option("--input", rheo_opts.input, "Flow-run CSV")->required();
  rheo_fit->add_flag("--csv", rheo_opts.as_csv, "Flat CSV instead of JSON");
  rheo_fit->add_flag("--json", [](std::int64_t) {}, "JSON output (default)");
  rheo_fit->callback([&] { std::exit(run_rheo_fit(rheo_opts)); });

  // ---- tga ----
  auto* tga = app.add_subcommand("tga", "Thermogravimetric analysis");
  tga->require_subcommand(1);

  TgaAnalyzeOpts tga_opts;
  auto* tga_analyze = tga->add_subcommand("analyze", "Segment losses, bound water, hydroxides");
  tga_analyze->add_option("--input", tga_opts.input, "Thermogram CSV")->required();
  tga_analyze->add_option("--id", tga_opts.sample_id, "Sample id (default: mix or file stem)");
  tga_analyze->add_option("--scheme", tga_opts.scheme,
                          "bhatty|pane_hansen|monteagudo|deboucha|present_study");
  tga_analyze->add_option("--ldca-registry", tga_opts.registry, "Materials registry");
  tga_analyze->add_option("--mix", tga_opts.mix, "Mix id for dosage-weighted Ldc_a");
  tga_analyze->add_option("--ws", tga_opts.ws, "Water/solids ratio of the mix");
  tga_analyze->add_option("--ldca", tga_opts.ldca_override, "Explicit Ldc_a override");
  tga_analyze->add_option("--calcite", tga_opts.calcite, "Calcite weight fraction");
  tga_analyze->add_option("--mh-variant", tga_opts.mh_variant, "total_ldx|eq_ldxa");
  tga_analyze->add_option("--window", tga_opts.window, "DTG smoothing window, C");
  tga_analyze->add_flag("--csv", tga_opts.as_csv, "Flat CSV instead of JSON");
  tga_analyze->add_flag("--json", [](std::int64_t) {}, "JSON output (default)");
  tga_analyze->callback([&] { std::exit(run_tga_analyze(tga_opts)); });

  TgaCalibrateOpts calib_opts;
  auto* tga_calibrate = tga->add_subcommand(
      "calibrate", "Search documented mass-balance readings against target bound water");
  tga_calibrate->add_option("--project", calib_opts.project, "Project file")->required();
  tga_calibrate->add_option("--target", calib_opts.targets,
                            "MIXID=wb_pct, repeatable")->required();
  tga_calibrate->add_option("--tolerance", calib_opts.tolerance, "Match tolerance");
  tga_calibrate->add_flag("--csv", calib_opts.as_csv, "Flat CSV instead of JSON");
  tga_calibrate->callback([&] { std::exit(run_tga_calibrate(calib_opts)); });

  // ---- eds ----
  auto* eds = app.add_subcommand("eds", "EDS atomic-percent bookkeeping");
  eds->require_subcommand(1);
  EdsOpts eds_opts;
  auto* eds_ratios = eds->add_subcommand("ratios", "Molar ratios and age deltas");
  eds_ratios->add_option("--input", eds_opts.input, "EDS CSV")->required();
  eds_ratios->add_option("--pairs", eds_opts.pairs, "Comma list like Ca/Si,Na/Ca");
  eds_ratios->add_option("--delta", eds_opts.delta, "Age pair like 7:28");
  eds_ratios->add_option("--sample", eds_opts.sample, "Restrict to one sample id");
  eds_ratios->add_flag("--json", eds_opts.as_json, "JSON instead of CSV");
  eds_ratios->callback([&] { std::exit(run_eds_ratios(eds_opts)); });

  // ---- strength ----
  auto* strength = app.add_subcommand("strength", "Strength development records");
  strength->require_subcommand(1);
  StrengthOpts strength_opts;
  auto* increments = strength->add_subcommand("increments", "Percent gains between ages");
  increments->add_option("--input", strength_opts.input, "Strength CSV")->required();
  increments->add_option("--from", strength_opts.from_age, "早 age (default 28)");
  increments->add_option("--to", strength_opts.to_age, "Late age (default 120)");
  increments->add_flag("--json", strength_opts.as_json, "JSON instead of CSV");
  increments->callback([&] { std::exit(run_strength_increments(strength_opts)); });

  // ---- project ----
  auto* project = app.add_subcommand("project", "Batch analysis projects");
  project->require_subcommand(1);
  ProjectOpts project_opts;
  auto* project_run = project->add_subcommand("run", "Run every bound analysis");
  project_run->add_option("--file", project_opts.file, "Project file")->required();
  project_run->add_option("--out", project_opts.out_dir, "Output directory");
  project_run->callback([&] { std::exit(run_project_cmd(project_opts)); });

  // ---- plot ----
  auto* plot = app.add_subcommand("plot", "Plot-data emission");
  plot->require_subcommand(1);
  PlotOpts plot_opts;
  auto* plot_emit = plot->add_subcommand("emit", "Tidy series,x,y CSV");
  plot_emit->add_option("--project", plot_opts.project, "Project file")->required();
  plot_emit->add_option("--kind", plot_opts.kind, "flow_curve|strength_dev|dtg");
  plot_emit->add_option("--out", plot_opts.out, "Output file (default stdout)");
  plot_emit->callback([&] { std::exit(run_plot_emit(plot_opts)); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitOk;
}
