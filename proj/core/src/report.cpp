#include "aab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "aab/version.hpp"

namespace aab::project {

// ---------------------------------------------------------------------------
// Determinism helpers
// ---------------------------------------------------------------------------

double round6(double value) {
  if (!std::isfinite(value)) return value;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return std::strtod(buf, nullptr);
}

std::string fnv1a64_hex(const void* data, std::size_t size) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (std::size_t i = 0; i < size; ++i) {
    hash ^= bytes[i];
    hash *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

std::string digest_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail(Errc::parse_error, "cannot open " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string content = ss.str();
  return fnv1a64_hex(content.data(), content.size());
}

bool Report::complete() const {
  for (const MixSection& mix : mixes) {
    if (!mix.errors.empty()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Analysis
// ---------------------------------------------------------------------------

namespace {

// Default reading of the bound-water mass balance, the one the calibration
// utility ranks closest to the published values: mortar sample basis without
// the mix water, LOIs in percent, replacement levels as binder fractions and
// the water ratio rebased to the binder.
thermo::LoiContext default_loi_context(const mixdesign::MixDesign& design,
                                       const materials::MaterialRegistry& reg) {
  thermo::calib::MixInputs inputs;
  inputs.sf_frac = design.sf_frac_pct / 100.0;
  inputs.hl_dosage = design.hl_dosage_pct / 100.0;
  inputs.sa_dosage = design.sa_dosage_pct / 100.0;
  inputs.ws = design.w_s;
  inputs.sand_per_binder = design.sand_per_binder;
  inputs.loi_ggbfs = reg.require(mixdesign::kGgbfsId).composition->loi;
  inputs.loi_sf = reg.require(mixdesign::kSilicaFumeId).composition->loi;
  inputs.loi_sa = reg.require(mixdesign::kSodaAshId).composition->loi;
  inputs.loi_hl = reg.require(mixdesign::kHydratedLimeId).composition->loi;
  return thermo::calib::make_context(inputs, thermo::calib::Interpretation{});
}

double registry_mix_ldca(const mixdesign::MixDesign& design,
                         const materials::MaterialRegistry& reg) {
  std::map<std::string, double> ldca;
  for (const char* id : {mixdesign::kGgbfsId, mixdesign::kSilicaFumeId,
                         mixdesign::kHydratedLimeId, mixdesign::kSodaAshId}) {
    const materials::MaterialSpec& spec = reg.require(id);
    if (!spec.anhydrous_ref) {
      fail(Errc::unknown_material,
           std::string("material '") + id + "' lacks an anhydrous tga_ref");
    }
    ldca[id] = thermo::anhydrous_ldca(*spec.anhydrous_ref);
  }
  const std::map<std::string, double> parts = {
      {mixdesign::kGgbfsId, design.ggbfs_frac_pct},
      {mixdesign::kSilicaFumeId, design.sf_frac_pct},
      {mixdesign::kHydratedLimeId, design.hl_dosage_pct},
      {mixdesign::kSodaAshId, design.sa_dosage_pct}};
  return thermo::mix_ldca(parts, ldca);
}

RheoSection analyse_rheo(double ws,
                         const std::vector<std::filesystem::path>& files) {
  RheoSection section;
  section.ws = ws;
  for (const auto& file : files) {
    io::FlowRun run = io::load_flow_run(file);
    if (run.down) {
      section.fits.push_back(rheology::fit_modified_bingham(*run.down));
    }
    if (run.up && run.down) {
      section.protocol = rheology::validate_protocol(run.up, run.down);
      section.hysteresis = rheology::hysteresis_area(*run.up, *run.down);
    }
    section.runs.push_back(std::move(run));
  }
  if (section.fits.empty()) {
    fail(Errc::empty_branch, "no descending branch to fit");
  }
  if (section.fits.size() > 1) {
    section.aggregate = rheology::aggregate_fits(section.fits);
  }
  return section;
}

ThermoSection analyse_thermo(const mixdesign::MixDesign& design,
                             const materials::MaterialRegistry& registry,
                             int age_days, const std::filesystem::path& file,
                             double calcite_fraction) {
  ThermoSection section;
  section.age_days = age_days;
  const thermo::Thermogram gram = io::load_thermogram(file, design.id);
  const auto scheme =
      thermo::SegmentationScheme::standard(thermo::SchemeName::present_study);
  section.profile = thermo::segment_losses(gram, scheme);
  section.ldc_a = registry_mix_ldca(design, registry);
  section.bound_water = thermo::bound_water_report(
      section.profile, section.ldc_a, default_loi_context(design, registry));
  section.hydroxides = thermo::free_hydroxides(section.profile, section.ldc_a,
                                               calcite_fraction);
  if (gram.samples().size() >= 3) {
    section.dtg_peaks = thermo::dtg_peaks(gram);
    section.dtg = thermo::dtg_series(gram);
  }
  return section;
}

EdsSection analyse_eds(const std::string& mix_id,
                       const std::filesystem::path& file) {
  EdsSection section;
  for (auto& comp : io::load_eds(file)) {
    if (comp.sample_id == mix_id) section.compositions.push_back(std::move(comp));
  }
  if (section.compositions.empty()) {
    fail(Errc::missing_section, "no EDS rows for sample '" + mix_id + "'");
  }
  std::sort(section.compositions.begin(), section.compositions.end(),
            [](const auto& a, const auto& b) { return a.age_days < b.age_days; });

  using micro::Element;
  const std::pair<Element, Element> pairs[] = {{Element::Ca, Element::Si},
                                               {Element::Na, Element::Ca},
                                               {Element::Mg, Element::Al}};
  auto label = [](Element n, Element d) {
    return std::string(micro::element_name(n)) + "/" + micro::element_name(d);
  };
  for (const auto& comp : section.compositions) {
    for (auto [n, d] : pairs) {
      if (comp.at(d) > 0.0) {
        section.ratios.emplace_back(comp.age_days, label(n, d),
                                    micro::molar_ratio(comp, n, d));
      }
    }
  }
  for (std::size_t i = 0; i + 1 < section.compositions.size(); ++i) {
    const auto& early = section.compositions[i];
    const auto& late = section.compositions[i + 1];
    for (auto [n, d] : pairs) {
      if (early.at(d) > 0.0 && late.at(d) > 0.0 &&
          micro::molar_ratio(early, n, d) != 0.0) {
        section.deltas.emplace_back(
            label(n, d), early.age_days, late.age_days,
            micro::ratio_delta_pct(early, late, n, d));
      }
    }
  }
  return section;
}

StrengthSection analyse_strength(const std::string& mix_id,
                                 const std::filesystem::path& file) {
  std::vector<micro::StrengthRecord> mine;
  for (auto& rec : io::load_strength(file)) {
    if (rec.sample_id == mix_id) mine.push_back(std::move(rec));
  }
  if (mine.empty()) {
    fail(Errc::missing_section, "no strength rows for sample '" + mix_id + "'");
  }
  StrengthSection section;
  section.series = micro::development_curve(mine).front();

  const micro::StrengthRecord* r28 = nullptr;
  const micro::StrengthRecord* r120 = nullptr;
  for (const auto& rec : section.series.records) {
    if (rec.age_days == 28) r28 = &rec;
    if (rec.age_days == 120) r120 = &rec;
  }
  if (r28 && r120) {
    section.increment_28_to_120_pct = micro::strength_increment_pct(*r28, *r120);
  }
  return section;
}

}  // namespace

Report run_project(const Project& project) {
  validate_project(project);

  Report report;
  report.tool_version = kVersion;

  // Digest every input up front, sorted by path for stable output.
  std::vector<std::filesystem::path> inputs{project.registry_path};
  for (const MixBinding& mix : project.mixes) {
    for (const auto& [_, p] : mix.flow_runs) inputs.push_back(p);
    for (const auto& [_, p] : mix.thermograms) inputs.push_back(p);
    if (mix.eds) inputs.push_back(*mix.eds);
    if (mix.strength) inputs.push_back(*mix.strength);
  }
  std::sort(inputs.begin(), inputs.end());
  inputs.erase(std::unique(inputs.begin(), inputs.end()), inputs.end());
  for (const auto& p : inputs) {
    report.input_digests.emplace_back(p.string(), digest_file(p));
  }

  const materials::MaterialRegistry registry =
      materials::load_registry(project.registry_path);

  std::vector<MixBinding> bindings = project.mixes;
  std::sort(bindings.begin(), bindings.end(),
            [](const MixBinding& a, const MixBinding& b) { return a.id < b.id; });

  for (const MixBinding& binding : bindings) {
    MixSection section;
    section.design = mixdesign::design_from_id(binding.id, binding.ws);
    auto guard = [&](const char* what, auto&& fn) {
      try {
        fn();
      } catch (const Error& e) {
        section.errors.push_back(std::string(what) + ": " + e.what());
      }
    };

    if (project.binder_kg_per_m3) {
      guard("cost", [&] {
        section.cost = mixdesign::activator_cost(
            section.design, registry, *project.binder_kg_per_m3, project.grade);
      });
    }

    std::map<double, std::vector<std::filesystem::path>> runs_by_ws;
    for (const auto& [ws, path] : binding.flow_runs) {
      runs_by_ws[ws].push_back(path);
    }
    for (const auto& [ws, files] : runs_by_ws) {
      guard("rheology", [&] { section.rheo.push_back(analyse_rheo(ws, files)); });
    }

    auto thermograms = binding.thermograms;
    std::sort(thermograms.begin(), thermograms.end());
    for (const auto& [age, file] : thermograms) {
      guard("thermo", [&] {
        section.thermo.push_back(analyse_thermo(section.design, registry, age,
                                                file, project.calcite_fraction));
      });
    }

    if (binding.eds) {
      guard("eds", [&] { section.eds = analyse_eds(binding.id, *binding.eds); });
    }
    if (binding.strength) {
      guard("strength", [&] {
        section.strength = analyse_strength(binding.id, *binding.strength);
      });
    }
    report.mixes.push_back(std::move(section));
  }
  return report;
}

// ---------------------------------------------------------------------------
// JSON rendering
// ---------------------------------------------------------------------------

namespace {

json fit_to_json(const rheology::RheoFit& fit) {
  json j;
  j["model"] = rheology::model_name(fit.model);
  j["tau0_pa"] = round6(fit.tau0_pa);
  if (fit.model == rheology::Model::herschel_bulkley) {
    j["k_pa_sn"] = round6(fit.hb_k);
    j["n"] = round6(fit.hb_n);
  } else {
    j["mu_p_pa_s"] = round6(fit.mu_p_pa_s);
    j["c_pa_s2"] = round6(fit.c_pa_s2);
  }
  j["r2"] = round6(fit.r2);
  j["behavior"] = rheology::behavior_name(fit.behavior);
  j["low_r2"] = fit.low_r2;
  if (fit.negative_yield) j["negative_yield"] = true;
  return j;
}

json cost_to_json(const mixdesign::CostBreakdown& cost) {
  json j;
  j["binder_kg_per_m3"] = round6(cost.binder_kg_per_m3);
  j["lines"] = json::array();
  for (const auto& line : cost.lines) {
    json lj;
    lj["material"] = line.material_id;
    lj["dosage_pct"] = round6(line.dosage_pct);
    lj["unit_cost_per_kg"] = round6(line.unit_cost_per_kg);
    lj["cost_per_m3"] = round6(line.cost_per_m3);
    j["lines"].push_back(std::move(lj));
  }
  j["total_per_m3"] = round6(cost.total_per_m3);
  return j;
}

json profile_to_json(const thermo::MassLossProfile& p) {
  json j;
  j["ldh_a"] = round6(p.ldh_a);
  j["ldh_b"] = round6(p.ldh_b);
  j["ldh_c"] = round6(p.ldh_c);
  j["ldx_a"] = round6(p.ldx_a);
  j["ldx_b"] = round6(p.ldx_b);
  j["ldc"] = round6(p.ldc);
  j["ref_initial_ug"] = round6(p.ref_initial_ug);
  j["ref_w105_ug"] = round6(p.ref_w105_ug);
  return j;
}

json loi_context_to_json(const thermo::LoiContext& ctx) {
  json j;
  j["m_s"] = round6(ctx.m_s);
  j["m_b"] = round6(ctx.m_b);
  j["x_sf"] = round6(ctx.x_sf);
  j["x_sa"] = round6(ctx.x_sa);
  j["x_hl"] = round6(ctx.x_hl);
  j["x_ggbfs"] = round6(ctx.x_ggbfs);
  j["w_b"] = round6(ctx.w_b);
  j["loi_precursor"] = round6(ctx.loi_precursor);
  j["loi_sf"] = round6(ctx.loi_sf);
  j["loi_sa"] = round6(ctx.loi_sa);
  j["loi_hl"] = round6(ctx.loi_hl);
  return j;
}

json bound_water_to_json(const thermo::BoundWaterReport& bw) {
  json j;
  j["ldc_a"] = round6(bw.ldc_a);
  json methods;
  for (const auto& [method, value] : bw.wb) {
    methods[thermo::scheme_name(method)] = round6(value);
  }
  j["wb_pct"] = std::move(methods);
  if (bw.deduction_present_study) {
    j["loi_deduction_present_study"] = round6(*bw.deduction_present_study);
  }
  if (bw.deduction_deboucha) {
    j["loi_deduction_deboucha"] = round6(*bw.deduction_deboucha);
  }
  if (bw.context) j["loi_context"] = loi_context_to_json(*bw.context);
  return j;
}

json hydroxides_to_json(const thermo::HydroxideReport& h) {
  json j;
  j["ch_free_pct"] = round6(h.ch_free);
  j["mh_free_pct"] = round6(h.mh_free);
  j["ah_free_pct"] = round6(h.ah_free);
  j["calcite_fraction"] = round6(h.calcite_fraction);
  j["mh_variant"] = thermo::mh_variant_name(h.mh_variant);
  j["ah_negative"] = h.ah_negative;
  return j;
}

json design_to_json(const mixdesign::MixDesign& d) {
  json j;
  j["id"] = d.id;
  j["mode"] = mixdesign::mode_name(d.mode);
  j["sf_frac_pct"] = round6(d.sf_frac_pct);
  j["ggbfs_frac_pct"] = round6(d.ggbfs_frac_pct);
  j["target_naoh_pct"] = round6(d.target_naoh_pct);
  j["hl_dosage_pct"] = round6(d.hl_dosage_pct);
  j["sa_dosage_pct"] = round6(d.sa_dosage_pct);
  j["w_s"] = round6(d.w_s);
  j["sand_per_binder"] = round6(d.sand_per_binder);
  return j;
}

}  // namespace

json report_to_json(const Report& report) {
  json j;
  j["tool"] = {{"name", "aab"}, {"version", report.tool_version}};
  j["inputs"] = json::array();
  for (const auto& [path, digest] : report.input_digests) {
    j["inputs"].push_back({{"path", path}, {"fnv1a64", digest}});
  }
  j["complete"] = report.complete();

  j["mixes"] = json::array();
  for (const MixSection& mix : report.mixes) {
    json mj;
    mj["design"] = design_to_json(mix.design);
    if (mix.cost) mj["cost"] = cost_to_json(*mix.cost);

    if (!mix.rheo.empty()) {
      mj["rheology"] = json::array();
      for (const RheoSection& r : mix.rheo) {
        json rj;
        rj["ws"] = round6(r.ws);
        rj["fits"] = json::array();
        for (const auto& fit : r.fits) rj["fits"].push_back(fit_to_json(fit));
        if (r.aggregate) {
          json aj;
          aj["mean"] = fit_to_json(r.aggregate->mean);
          aj["sd_tau0"] = round6(r.aggregate->sd_tau0);
          aj["sd_mu_p"] = round6(r.aggregate->sd_mu_p);
          aj["sd_c"] = round6(r.aggregate->sd_c);
          aj["n_runs"] = r.aggregate->n_runs;
          rj["aggregate"] = std::move(aj);
        }
        if (r.hysteresis) {
          rj["hysteresis"] = {
              {"loop_area_pa_per_s", round6(r.hysteresis->loop_area_pa_per_s)},
              {"sign", rheology::loop_sign_name(r.hysteresis->sign)}};
        }
        if (r.protocol) {
          rj["protocol"] = {{"conforming", r.protocol->conforming},
                            {"deviations", r.protocol->deviations}};
        }
        mj["rheology"].push_back(std::move(rj));
      }
    }

    if (!mix.thermo.empty()) {
      mj["thermo"] = json::array();
      for (const ThermoSection& t : mix.thermo) {
        json tj;
        tj["age_days"] = t.age_days;
        tj["mass_loss"] = profile_to_json(t.profile);
        tj["bound_water"] = bound_water_to_json(t.bound_water);
        tj["hydroxides"] = hydroxides_to_json(t.hydroxides);
        if (!t.dtg_peaks.empty()) {
          tj["dtg_peaks"] = json::array();
          for (const auto& p : t.dtg_peaks) {
            tj["dtg_peaks"].push_back({{"temperature_c", round6(p.temperature_c)},
                                       {"magnitude", round6(p.magnitude)}});
          }
        }
        mj["thermo"].push_back(std::move(tj));
      }
    }

    if (mix.eds) {
      json ej;
      ej["ratios"] = json::array();
      for (const auto& [age, pair, value] : mix.eds->ratios) {
        ej["ratios"].push_back(
            {{"age_days", age}, {"pair", pair}, {"value", round6(value)}});
      }
      ej["deltas"] = json::array();
      for (const auto& [pair, early, late, pct] : mix.eds->deltas) {
        ej["deltas"].push_back({{"pair", pair},
                                {"from_age_days", early},
                                {"to_age_days", late},
                                {"change_pct", round6(pct)}});
      }
      mj["eds"] = std::move(ej);
    }

    if (mix.strength) {
      json sj;
      sj["series"] = json::array();
      for (const auto& rec : mix.strength->series.records) {
        sj["series"].push_back({{"age_days", rec.age_days},
                                {"strength_mpa", round6(rec.strength_mpa)}});
      }
      sj["monotone"] = mix.strength->series.monotone;
      if (mix.strength->increment_28_to_120_pct) {
        sj["increment_28_to_120_pct"] =
            round6(*mix.strength->increment_28_to_120_pct);
      }
      mj["strength"] = std::move(sj);
    }

    if (!mix.errors.empty()) mj["errors"] = mix.errors;
    j["mixes"].push_back(std::move(mj));
  }
  return j;
}

// ---------------------------------------------------------------------------
// Plot data
// ---------------------------------------------------------------------------

PlotKind plot_kind_from_name(std::string_view name) {
  if (name == "flow_curve") return PlotKind::flow_curve;
  if (name == "strength_dev") return PlotKind::strength_dev;
  if (name == "dtg") return PlotKind::dtg;
  fail(Errc::parse_error, "unknown plot kind '" + std::string(name) + "'");
}

std::string emit_plot_data(const Report& report, PlotKind kind) {
  std::ostringstream out;
  out << "series,x,y\n";
  bool any = false;

  auto row = [&](const std::string& series, double x, double y) {
    out << series << ',' << io::format_double(x) << ',' << io::format_double(y)
        << '\n';
    any = true;
  };

  for (const MixSection& mix : report.mixes) {
    if (kind == PlotKind::flow_curve) {
      for (const RheoSection& r : mix.rheo) {
        for (std::size_t k = 0; k < r.runs.size(); ++k) {
          auto dump = [&](const rheology::FlowCurve& curve) {
            std::ostringstream label;
            label << mix.design.id << "|ws=" << r.ws << "|run" << k + 1 << '|'
                  << rheology::branch_name(curve.branch());
            for (const auto& p : curve.points()) {
              row(label.str(), p.shear_rate, p.shear_stress);
            }
          };
          if (r.runs[k].up) dump(*r.runs[k].up);
          if (r.runs[k].down) dump(*r.runs[k].down);
        }
      }
    } else if (kind == PlotKind::strength_dev) {
      if (mix.strength) {
        for (const auto& rec : mix.strength->series.records) {
          row(mix.design.id, rec.age_days, rec.strength_mpa);
        }
      }
    } else {
      for (const ThermoSection& t : mix.thermo) {
        if (t.dtg.empty()) continue;
        std::ostringstream label;
        label << mix.design.id << '|' << t.age_days << 'd';
        for (const auto& [temp, rate] : t.dtg) row(label.str(), temp, rate);
      }
    }
  }

  if (!any) {
    fail(Errc::missing_section, "report carries no data for this plot kind");
  }
  return out.str();
}

}  // namespace aab::project
