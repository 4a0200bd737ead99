#ifndef AAB_MATERIALS_HPP
#define AAB_MATERIALS_HPP

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aab/errors.hpp"

namespace aab::materials {

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

/// Oxide assay of a raw material, percent by mass. Oxides absent from an
/// input record default to 0 (below detection limit).
struct OxideComposition {
  double cao = 0.0;
  double sio2 = 0.0;
  double al2o3 = 0.0;
  double mgo = 0.0;
  double mno = 0.0;
  double k2o = 0.0;
  double na2o = 0.0;
  double fe2o3 = 0.0;
  double tio2 = 0.0;
  double p2o5 = 0.0;
  double so3 = 0.0;
  double loi = 0.0;  ///< loss on ignition, percent by mass

  double oxide_sum() const;

  /// Throws Errc::invalid_composition unless every entry lies in [0, 100]
  /// and oxides + LOI close to within 105% (analytical rounding slack).
  void validate() const;
};

enum class Role { precursor, mineral_additive, activator, aggregate };

const char* role_name(Role role) noexcept;
Role role_from_name(std::string_view name);

/// Mass readings of an unreacted raw material at the three reference
/// temperatures used for the decarbonation correction.
struct AnhydrousTgaRef {
  double w105_ug = 0.0;
  double w635_ug = 0.0;
  double w1000_ug = 0.0;

  /// Mass must be positive and non-increasing on heating.
  void validate() const;
};

struct MaterialSpec {
  std::string id;
  Role role = Role::precursor;
  std::optional<OxideComposition> composition;  ///< required unless aggregate
  double density_kg_m3 = 0.0;
  std::optional<double> blaine_m2_kg;
  std::optional<double> unit_cost_per_kg;
  std::optional<AnhydrousTgaRef> anhydrous_ref;

  void validate() const;
};

/// Immutable lookup table of raw materials. All accessors are const and the
/// registry never mutates after construction, so concurrent readers are safe.
class MaterialRegistry {
public:
  MaterialRegistry() = default;
  static MaterialRegistry from_materials(std::vector<MaterialSpec> materials);

  const MaterialSpec* find(std::string_view id) const noexcept;
  /// Throws Errc::unknown_material when absent.
  const MaterialSpec& require(std::string_view id) const;
  bool contains(std::string_view id) const noexcept;
  std::size_t size() const noexcept { return materials_.size(); }
  std::vector<std::string> ids() const;  ///< sorted

private:
  std::map<std::string, MaterialSpec, std::less<>> materials_;
};

/// Parses the line-oriented registry format: `[material]` starts a section,
/// `key = value` pairs fill it, `#` begins a comment. Recognised keys:
/// id, role, density_kg_m3, blaine_m2_kg, unit_cost_per_kg, loi,
/// tga_ref=w105,w635,w1000 and the oxide keys (CaO, SiO2, Al2O3, MgO, MnO,
/// K2O, Na2O, Fe2O3, TiO2, P2O5, SO3). Unknown keys fail loudly.
MaterialRegistry load_registry(const std::filesystem::path& path);
MaterialRegistry parse_registry(std::istream& in, const std::string& origin);

// ---------------------------------------------------------------------------
// Precursor suitability indices
// ---------------------------------------------------------------------------

/// Modulus of basicity B = (CaO + MgO) / (SiO2 + Al2O3).
/// Throws Errc::zero_acidic_oxides when the denominator vanishes.
double modulus_of_basicity(const OxideComposition& comp);

/// CaO / SiO2. Throws Errc::zero_silica when SiO2 = 0.
double lime_silica_ratio(const OxideComposition& comp);

enum class Verdict { suitable, unsuitable };

struct PrecursorCheck {
  Verdict verdict = Verdict::unsuitable;
  double basicity = 0.0;
  double lime_silica = 0.0;
  std::string note;  ///< filled when CaO/SiO2 falls below the 1.4 guideline
};

/// A slag is accepted as precursor when it is neutral (B = 1) or basic
/// (B > 1); the verdict depends only on the sign of B - 1 within 1e-9.
PrecursorCheck precursor_check(const OxideComposition& comp);

}  // namespace aab::materials

#endif  // AAB_MATERIALS_HPP
