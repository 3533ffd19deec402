#pragma once

// Constructible sheaves at the level of Euler characteristics.
//
// A sheaf is a stratification with, per stratum, the compactly supported
// Euler characteristic chi_c(S) and the Euler characteristic e_S of the
// stalks along S.  Characteristic cycles are never built; everything the
// localization formulas need is the multiplicity vector
//
//   m_k(X) = chi(M, F_{O_k}) = sum_S chi_c(S cap O_k) * e_S
//
// over the Bialynicki-Birula cells O_k of X's chamber.

#include <map>
#include <string>
#include <vector>

#include "gkmloc/models.hpp"
#include "gkmloc/weights.hpp"

namespace gkmloc {

struct Stratum {
  std::string name;
  long long chi_c = 0;
  long long stalk_euler = 0;
  /// Torus-orbit strata of toric models: the coordinate support in each
  /// projective factor.  Empty for other strata.
  std::vector<std::vector<int>> orbit;

  friend bool operator==(const Stratum&, const Stratum&) = default;
};

enum class SheafKind { constant, orbit, preset, custom };

std::string to_string(SheafKind kind);
SheafKind parse_sheaf_kind(const std::string& text);

/// table[fixed point][stratum] = chi_c(S cap O_p)
using CellTable = std::map<std::string, std::map<std::string, long long>>;
/// fixed point -> Euler characteristic of the costalk of F|O_p at p.
using CostalkTable = std::map<std::string, long long>;

/// Key under which a chamber-independent costalk table is stored.
inline const std::string kAnyChamber = "*";

struct ConstructibleSheaf {
  SheafKind kind = SheafKind::custom;
  std::string preset_name;
  std::vector<Stratum> strata;
  /// Per-chamber cell tables (preset and custom sheaves); keyed by chamber_key.
  std::map<std::string, CellTable> cell_tables;
  /// Per-chamber costalk data, or one table under kAnyChamber.
  std::map<std::string, CostalkTable> costalk_tables;

  const Stratum& stratum(const std::string& name) const;

  friend bool operator==(const ConstructibleSheaf&, const ConstructibleSheaf&) = default;
};

/// Constant sheaf C_M: one stratum "M" with chi_c = #fixed points.
ConstructibleSheaf constant_sheaf(const GKMModel& model);

/// Torus orbits of a toric model as per-factor coordinate supports, in a
/// fixed order (lexicographic per factor).
std::vector<std::vector<std::vector<int>>> torus_orbits(const GKMModel& model);
std::string orbit_name(const std::vector<std::vector<int>>& orbit);

/// Sheaf constant along torus orbits with the given stalk Euler
/// characteristics (keyed by orbit_name; missing orbits get 0).
ConstructibleSheaf orbit_sheaf(const GKMModel& model, const std::map<std::string, long long>& stalk_euler);

/// Extension by zero of the constant sheaf on the upper half-plane of CP^1,
/// stratified by the SL(2,R)-orbits: upper disk, circle RP^1, lower disk.
/// Tables are keyed by the chambers of `model`, which must be a CP^1 model.
ConstructibleSheaf cp1_upper_halfplane(const GKMModel& model);

/// Builds a preset by name ("constant", "cp1-upper-halfplane").
ConstructibleSheaf preset_sheaf(const std::string& name, const GKMModel& model);

long long euler_characteristic(const ConstructibleSheaf& sheaf);

ConstructibleSheaf shift(const ConstructibleSheaf& sheaf, int k);
/// Models the middle term of a triangle F' -> F -> F''.  Stratifications
/// must agree (names and chi_c).
ConstructibleSheaf add(const ConstructibleSheaf& a, const ConstructibleSheaf& b);

struct MultiplicityVector {
  std::string chamber;
  std::vector<std::string> fixed_points;
  std::vector<long long> m;

  long long total() const;
  long long at(const std::string& fixed_point) const;

  friend bool operator==(const MultiplicityVector&, const MultiplicityVector&) = default;
};

/// Global formula: m_k = sum_S chi_c(S cap O_k) e_S.
MultiplicityVector multiplicities(const GKMModel& model, const ConstructibleSheaf& sheaf, const CartanElement& X,
                                  Slice slice = Slice::split);

/// Local formula: the stored costalk Euler characteristics.  Only sheaves
/// carrying costalk data support this.
MultiplicityVector multiplicities_local(const GKMModel& model, const ConstructibleSheaf& sheaf,
                                        const CartanElement& X, Slice slice = Slice::split);

}  // namespace gkmloc
