#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "aab/report.hpp"
#include "aab/version.hpp"
#include "support/fixtures.hpp"

using namespace aab;
using namespace aab::project;

namespace {

const std::filesystem::path kData(AAB_TEST_DATA_DIR);

Project demo_project() { return load_project(kData / "project.cfg"); }

}  // namespace

TEST_CASE("project parsing and validation") {
  const auto project = demo_project();
  CHECK(project.registry_path == kData / "materials.cfg");
  REQUIRE(project.mixes.size() == 4);
  CHECK(project.mixes[0].id == "SF10NH8");
  CHECK(project.mixes[0].flow_runs.size() == 1);
  CHECK(project.mixes[0].flow_runs[0].first == 0.45);
  CHECK(project.mixes[0].thermograms[0].first == 28);
  CHECK(project.binder_kg_per_m3 == 571.4);
  CHECK_NOTHROW(validate_project(project));

  SUBCASE("missing files are listed by path") {
    auto broken = project;
    broken.mixes[1].thermograms[0].second = kData / "tga" / "nope.csv";
    try {
      validate_project(broken);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::project_validation);
      CHECK(std::string(e.what()).find("nope.csv") != std::string::npos);
    }
  }
  SUBCASE("duplicate mix ids are rejected") {
    auto broken = project;
    broken.mixes[1].id = broken.mixes[0].id;
    CHECK_THROWS_AS(validate_project(broken), Error);
  }
  SUBCASE("mix ids must parse") {
    auto broken = project;
    broken.mixes[2].id = "NOTAMIX";
    CHECK_THROWS_AS(validate_project(broken), Error);
  }
  SUBCASE("unknown keys fail at parse time") {
    std::istringstream in("[project]\nregistry = r.cfg\nfrobnicate = 1\n");
    CHECK_THROWS_AS(parse_project(in, "inline", "."), Error);
  }
}

TEST_CASE("run_project aggregates every bound analysis") {
  const auto report = run_project(demo_project());
  REQUIRE(report.mixes.size() == 4);
  CHECK(report.complete());
  CHECK(report.tool_version == std::string(kVersion));
  CHECK(report.input_digests.size() >= 10);

  // mixes arrive sorted by id
  CHECK(report.mixes[0].design.id == "SF10NH10");
  CHECK(report.mixes[3].design.id == "SF20NH8");

  for (const MixSection& mix : report.mixes) {
    CHECK(mix.cost.has_value());
    REQUIRE(mix.rheo.size() == 1);
    CHECK(mix.rheo[0].fits.size() == 1);
    CHECK(mix.rheo[0].hysteresis.has_value());
    CHECK(mix.rheo[0].hysteresis->loop_area_pa_per_s > 0);
    REQUIRE(mix.thermo.size() == 1);
    CHECK(mix.eds.has_value());
    CHECK(mix.strength.has_value());
    CHECK(mix.strength->increment_28_to_120_pct.has_value());
    CHECK(mix.errors.empty());
  }

  SUBCASE("bound water reproduces the published table through the file path") {
    struct Row {
      const char* id;
      double bhatty, pane, monteagudo;
    };
    const Row rows[] = {
        {"SF10NH8", 11.966, 11.773, 11.188},
        {"SF20NH8", 7.866, 6.650, 7.106},
        {"SF10NH10", 12.979, 11.994, 12.144},
        {"SF20NH10", 10.145, 9.981, 9.328},
    };
    for (const auto& row : rows) {
      const auto it =
          std::find_if(report.mixes.begin(), report.mixes.end(),
                       [&](const MixSection& m) { return m.design.id == row.id; });
      REQUIRE(it != report.mixes.end());
      const auto& wb = it->thermo[0].bound_water.wb;
      CHECK_NEAR(wb.at(thermo::SchemeName::bhatty), row.bhatty, 0.02);
      CHECK_NEAR(wb.at(thermo::SchemeName::pane_hansen), row.pane, 0.02);
      CHECK_NEAR(wb.at(thermo::SchemeName::monteagudo), row.monteagudo, 0.02);
    }
  }
}

TEST_CASE("validation failure aborts before analysis") {
  auto project = demo_project();
  project.mixes[0].eds = kData / "eds" / "missing.csv";
  CHECK_THROWS_AS(run_project(project), Error);
}

TEST_CASE("partial failures are recorded per section") {
  auto project = demo_project();
  // bind a thermogram that stops short of the decarbonation window
  const auto truncated = kData / "tga" / "SF10NH8.csv";
  std::ifstream in(truncated);
  std::ostringstream keep;
  std::string line;
  int n = 0;
  while (std::getline(in, line) && n < 5) {
    keep << line << '\n';
    ++n;
  }
  const auto tmp = std::filesystem::temp_directory_path() / "truncated_tga.csv";
  std::ofstream(tmp) << keep.str();
  project.mixes[0].thermograms[0].second = tmp;

  const auto report = run_project(project);
  CHECK_FALSE(report.complete());
  const auto& failed =
      *std::find_if(report.mixes.begin(), report.mixes.end(),
                    [](const MixSection& m) { return !m.errors.empty(); });
  CHECK(failed.design.id == "SF10NH8");
  REQUIRE(failed.errors.size() == 1);
  CHECK(failed.errors[0].find("thermo") == 0);
  // the rest of the batch still ran
  CHECK(failed.strength.has_value());
  std::filesystem::remove(tmp);
}

TEST_CASE("report json is deterministic") {
  const auto project = demo_project();
  const std::string a = report_to_json(run_project(project)).dump(2);
  const std::string b = report_to_json(run_project(project)).dump(2);
  CHECK(a == b);

  SUBCASE("permuting mix bindings changes nothing") {
    auto permuted = project;
    std::swap(permuted.mixes[0], permuted.mixes[3]);
    std::swap(permuted.mixes[1], permuted.mixes[2]);
    CHECK(report_to_json(run_project(permuted)).dump(2) == a);
  }
  SUBCASE("floats carry six significant digits") {
    CHECK(round6(2.5432104) == 2.54321);
    CHECK(round6(12866.5712) == 12866.6);
    CHECK(round6(0.0) == 0.0);
    CHECK(round6(-1.23456789e-7) == -1.23457e-7);
  }
}

TEST_CASE("plot emission") {
  const auto report = run_project(demo_project());

  SUBCASE("strength series row count") {
    const std::string csv = emit_plot_data(report, PlotKind::strength_dev);
    // header + 4 mixes x 3 ages
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 13);
  }
  SUBCASE("dtg series emits per thermogram") {
    const std::string csv = emit_plot_data(report, PlotKind::dtg);
    CHECK(csv.find("SF10NH8|28d") != std::string::npos);
  }
  SUBCASE("flow curves round trip through the emitted csv") {
    const std::string csv = emit_plot_data(report, PlotKind::flow_curve);
    // pull the down branch of SF10NH8 run 1 back out of the tidy rows
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);  // header
    std::vector<rheology::FlowPoint> pts;
    while (std::getline(in, line)) {
      const std::string tag = "SF10NH8|ws=0.45|run1|down,";
      if (line.rfind(tag, 0) == 0) {
        const auto rest = line.substr(tag.size());
        const auto comma = rest.find(',');
        pts.push_back({std::stod(rest.substr(0, comma)),
                       std::stod(rest.substr(comma + 1)), 20.0});
      }
    }
    REQUIRE(pts.size() >= 4);
    const rheology::FlowCurve again(pts, rheology::Branch::down);
    const auto refit = rheology::fit_modified_bingham(again);
    const auto& original =
        std::find_if(report.mixes.begin(), report.mixes.end(),
                     [](const MixSection& m) { return m.design.id == "SF10NH8"; })
            ->rheo[0]
            .fits[0];
    CHECK_NEAR(refit.tau0_pa, original.tau0_pa, 1e-9);
    CHECK_NEAR(refit.mu_p_pa_s, original.mu_p_pa_s, 1e-9);
    CHECK_NEAR(refit.c_pa_s2, original.c_pa_s2, 1e-9);
  }
  SUBCASE("kinds without data raise missing_section") {
    Report empty;
    try {
      emit_plot_data(empty, PlotKind::dtg);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::missing_section);
    }
  }
}

TEST_CASE("digests are content hashes") {
  const char payload[] = "hello";
  CHECK(fnv1a64_hex(payload, 5) == "a430d84680aabd0b");
  const auto tmp = std::filesystem::temp_directory_path() / "digest_probe.txt";
  std::ofstream(tmp) << "hello";
  CHECK(digest_file(tmp) == "a430d84680aabd0b");
  std::filesystem::remove(tmp);
}
