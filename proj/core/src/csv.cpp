#include "aab/csv.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

namespace aab::io {

namespace {

std::string trim(const std::string& s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double to_double(const std::string& text, const std::string& where) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    fail(Errc::parse_error, where + ": expected a number, got '" + text + "'");
  }
  return v;
}

int to_int(const std::string& text, const std::string& where) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    fail(Errc::parse_error, where + ": expected an integer, got '" + text + "'");
  }
  return v;
}

// Reads rows, checks the header, hands each data row to `consume`.
template <typename Fn>
void for_each_row(std::istream& in, const std::string& origin,
                  const std::string& expected_header, std::size_t n_cols,
                  Fn&& consume) {
  std::string line;
  if (!std::getline(in, line)) {
    fail(Errc::parse_error, origin + ": empty file");
  }
  if (trim(line) != expected_header) {
    fail(Errc::parse_error,
         origin + ": header must be '" + expected_header + "'");
  }
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const std::string where = origin + ":" + std::to_string(lineno);
    auto cells = split_row(line);
    if (cells.size() != n_cols) {
      fail(Errc::parse_error, where + ": expected " + std::to_string(n_cols) +
                                  " columns, got " +
                                  std::to_string(cells.size()));
    }
    consume(where, cells);
  }
}

std::ifstream open_or_fail(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    fail(Errc::parse_error, "cannot open " + path.string());
  }
  return in;
}

}  // namespace

std::string format_double(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  (void)ec;
  return std::string(buf, ptr);
}

FlowRun parse_flow_run(std::istream& in, const std::string& origin) {
  std::vector<rheology::FlowPoint> up_points, down_points;
  for_each_row(in, origin, "shear_rate_per_s,shear_stress_pa,hold_time_s,branch",
               4, [&](const std::string& where, const auto& cells) {
                 rheology::FlowPoint p{to_double(cells[0], where),
                                       to_double(cells[1], where),
                                       to_double(cells[2], where)};
                 if (cells[3] == "up") up_points.push_back(p);
                 else if (cells[3] == "down") down_points.push_back(p);
                 else
                   fail(Errc::parse_error,
                        where + ": branch must be 'up' or 'down'");
               });
  FlowRun run;
  if (!up_points.empty()) {
    run.up = rheology::FlowCurve(std::move(up_points), rheology::Branch::up);
  }
  if (!down_points.empty()) {
    run.down =
        rheology::FlowCurve(std::move(down_points), rheology::Branch::down);
  }
  return run;
}

FlowRun load_flow_run(const std::filesystem::path& path) {
  auto in = open_or_fail(path);
  return parse_flow_run(in, path.string());
}

void write_flow_run(std::ostream& out, const FlowRun& run) {
  out << "shear_rate_per_s,shear_stress_pa,hold_time_s,branch\n";
  auto dump = [&](const rheology::FlowCurve& curve) {
    for (const auto& p : curve.points()) {
      out << format_double(p.shear_rate) << ',' << format_double(p.shear_stress)
          << ',' << format_double(p.hold_time_s) << ','
          << rheology::branch_name(curve.branch()) << '\n';
    }
  };
  if (run.up) dump(*run.up);
  if (run.down) dump(*run.down);
}

thermo::Thermogram parse_thermogram(std::istream& in, const std::string& origin,
                                    const std::string& sample_id) {
  std::vector<thermo::TgaSample> samples;
  for_each_row(in, origin, "temperature_c,mass_ug", 2,
               [&](const std::string& where, const auto& cells) {
                 samples.push_back({to_double(cells[0], where),
                                    to_double(cells[1], where)});
               });
  return thermo::Thermogram(sample_id, std::move(samples));
}

thermo::Thermogram load_thermogram(const std::filesystem::path& path,
                                   const std::string& sample_id) {
  auto in = open_or_fail(path);
  return parse_thermogram(in, path.string(), sample_id);
}

std::vector<micro::EdsComposition> parse_eds(std::istream& in,
                                             const std::string& origin) {
  std::vector<micro::EdsComposition> rows;
  for_each_row(in, origin, "sample_id,age_days,C,O,Na,Mg,Al,Si,Ca,Mn,Fe,n_points",
               12, [&](const std::string& where, const auto& cells) {
                 micro::EdsComposition comp;
                 comp.sample_id = cells[0];
                 comp.age_days = to_int(cells[1], where);
                 for (std::size_t i = 0; i < micro::kElementCount; ++i) {
                   comp.atomic_pct[i] = to_double(cells[2 + i], where);
                 }
                 comp.n_points = to_int(cells[11], where);
                 comp.validate();
                 rows.push_back(std::move(comp));
               });
  return rows;
}

std::vector<micro::EdsComposition> load_eds(const std::filesystem::path& path) {
  auto in = open_or_fail(path);
  return parse_eds(in, path.string());
}

std::vector<micro::StrengthRecord> parse_strength(std::istream& in,
                                                  const std::string& origin) {
  std::vector<micro::StrengthRecord> rows;
  for_each_row(in, origin, "sample_id,age_days,strength_mpa", 3,
               [&](const std::string& where, const auto& cells) {
                 micro::StrengthRecord rec;
                 rec.sample_id = cells[0];
                 rec.age_days = to_int(cells[1], where);
                 rec.strength_mpa = to_double(cells[2], where);
                 rec.validate();
                 rows.push_back(std::move(rec));
               });
  return rows;
}

std::vector<micro::StrengthRecord> load_strength(
    const std::filesystem::path& path) {
  auto in = open_or_fail(path);
  return parse_strength(in, path.string());
}

}  // namespace aab::io
