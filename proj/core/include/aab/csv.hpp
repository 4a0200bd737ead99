#ifndef AAB_CSV_HPP
#define AAB_CSV_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "aab/microanalysis.hpp"
#include "aab/rheology.hpp"
#include "aab/thermo.hpp"

namespace aab::io {

/// Shortest round-trip decimal representation of a double. Plot and raw-data
/// CSV files use this so re-ingesting a file reproduces the exact values.
std::string format_double(double value);

/// Both branches of one rheometer run. Header:
/// shear_rate_per_s,shear_stress_pa,hold_time_s,branch
struct FlowRun {
  std::optional<rheology::FlowCurve> up;
  std::optional<rheology::FlowCurve> down;
};

FlowRun load_flow_run(const std::filesystem::path& path);
FlowRun parse_flow_run(std::istream& in, const std::string& origin);
void write_flow_run(std::ostream& out, const FlowRun& run);

/// Header: temperature_c,mass_ug with strictly ascending temperatures.
thermo::Thermogram load_thermogram(const std::filesystem::path& path,
                                   const std::string& sample_id);
thermo::Thermogram parse_thermogram(std::istream& in, const std::string& origin,
                                    const std::string& sample_id);

/// Header: sample_id,age_days,C,O,Na,Mg,Al,Si,Ca,Mn,Fe,n_points
std::vector<micro::EdsComposition> load_eds(const std::filesystem::path& path);
std::vector<micro::EdsComposition> parse_eds(std::istream& in,
                                             const std::string& origin);

/// Header: sample_id,age_days,strength_mpa
std::vector<micro::StrengthRecord> load_strength(
    const std::filesystem::path& path);
std::vector<micro::StrengthRecord> parse_strength(std::istream& in,
                                                  const std::string& origin);

}  // namespace aab::io

#endif  // AAB_CSV_HPP
