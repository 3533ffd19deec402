#pragma once

// Bialynicki-Birula decomposition per chamber.  Cells are never realized as
// sets; we keep their dimensions and their chi_c-intersections with strata.

#include <string>
#include <vector>

#include "gkmloc/models.hpp"
#include "gkmloc/sheaves.hpp"

namespace gkmloc {

struct BBCell {
  std::string fixed_point;
  int dim_minus = 0;
  std::vector<Weight> negative_weights;

  friend bool operator==(const BBCell&, const BBCell&) = default;
};

struct BBDecomposition {
  std::string chamber;
  std::vector<BBCell> cells;

  friend bool operator==(const BBDecomposition&, const BBDecomposition&) = default;
};

/// Attracting cells of the one-parameter subgroup selected by X: at p the
/// cell is modeled on the span of the tangent weights that are negative on X.
BBDecomposition bb_decompose(const GKMModel& model, const CartanElement& X, Slice slice = Slice::split);

/// chi_c(S cap O_p) for every fixed point p and stratum S in X's chamber.
/// Built-in kinds are computed; preset/custom tables are looked up and
/// validated.
CellTable cell_intersection_table(const GKMModel& model, const ConstructibleSheaf& sheaf, const CartanElement& X,
                                  Slice slice = Slice::split);

/// Checks a supplied table: every fixed point and stratum present,
///   sum_p table[p][S] = chi_c(S)                for each S,
///   sum_p sum_S table[p][S] e_S = sum_S chi_c(S) e_S.
/// Throws InconsistentSheafError naming the violated identity.
void validate_cell_table(const GKMModel& model, const ConstructibleSheaf& sheaf, const std::string& chamber,
                         const CellTable& table);

/// Validates every stored table of the sheaf (also rejects malformed chamber keys).
void validate_sheaf(const GKMModel& model, const ConstructibleSheaf& sheaf);

}  // namespace gkmloc
