#include "gkmloc/bb.hpp"

#include <algorithm>

#include "gkmloc/errors.hpp"

namespace gkmloc {

BBDecomposition bb_decompose(const GKMModel& model, const CartanElement& X, Slice slice) {
  BBDecomposition out;
  out.chamber = chamber_key(model.delta(), X, slice);
  for (const auto& p : model.fixed_points()) {
    BBCell cell;
    cell.fixed_point = p.name;
    for (const auto& beta : p.tangent_weights) {
      if (slice_part(eval_weight(beta, X), slice) < 0) cell.negative_weights.push_back(beta);
    }
    cell.dim_minus = static_cast<int>(cell.negative_weights.size());
    out.cells.push_back(std::move(cell));
  }
  return out;
}

namespace {

// O_S cap O_p for a coordinate orbit S and the cell of p is either empty or
// all of O_S (p's coordinate is the top one of S along X), and O_S is a
// product of (C^*)^{|S_b|-1}.  chi_c is 1 iff every factor is a point.
long long orbit_cell_chi_c(const GKMModel& model, const FixedPoint& p, const Stratum& s, const CartanElement& X,
                           Slice slice) {
  const auto& blocks = model.blocks();
  int torus_factors = 0;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& support = s.orbit.at(b);
    int top = -1;
    Rational top_value;
    for (int j : support) {
      Rational v = slice_part(eval_weight(blocks[b][j], X), slice);
      if (top < 0 || v > top_value) {
        top = j;
        top_value = v;
      }
    }
    if (top != p.coordinate_index.at(b)) return 0;
    torus_factors += static_cast<int>(support.size()) - 1;
  }
  return torus_factors == 0 ? 1 : 0;
}

}  // namespace

CellTable cell_intersection_table(const GKMModel& model, const ConstructibleSheaf& sheaf, const CartanElement& X,
                                  Slice slice) {
  const std::string chamber = chamber_key(model.delta(), X, slice);
  CellTable table;
  switch (sheaf.kind) {
    case SheafKind::constant:
      for (const auto& p : model.fixed_points()) {
        for (const auto& s : sheaf.strata) table[p.name][s.name] = 1;
      }
      return table;
    case SheafKind::orbit:
      if (!model.is_toric()) throw UnsupportedSheafError("orbit sheaves need a toric (CP^n product) model");
      for (const auto& p : model.fixed_points()) {
        for (const auto& s : sheaf.strata) {
          if (s.orbit.size() != model.blocks().size()) {
            throw UnsupportedSheafError("stratum '" + s.name + "' is not a torus orbit of this model");
          }
          table[p.name][s.name] = orbit_cell_chi_c(model, p, s, X, slice);
        }
      }
      return table;
    case SheafKind::preset:
    case SheafKind::custom: {
      auto it = sheaf.cell_tables.find(chamber);
      if (it == sheaf.cell_tables.end()) {
        throw UnsupportedSheafError("sheaf has no cell table for chamber '" + chamber + "'");
      }
      validate_cell_table(model, sheaf, chamber, it->second);
      return it->second;
    }
  }
  return table;
}

void validate_cell_table(const GKMModel& model, const ConstructibleSheaf& sheaf, const std::string& chamber,
                         const CellTable& table) {
  for (const auto& [fp, row] : table) {
    if (!model.index_of(fp)) {
      throw InconsistentSheafError("chamber '" + chamber + "': unknown fixed point '" + fp + "' in cell table");
    }
    for (const auto& [name, value] : row) {
      (void)value;
      auto found = std::find_if(sheaf.strata.begin(), sheaf.strata.end(),
                                [&](const Stratum& s) { return s.name == name; });
      if (found == sheaf.strata.end()) {
        throw InconsistentSheafError("chamber '" + chamber + "': unknown stratum '" + name + "' in cell table");
      }
    }
  }
  auto entry = [&](const std::string& fp, const std::string& s) -> long long {
    auto row = table.find(fp);
    if (row == table.end()) return 0;
    auto cell = row->second.find(s);
    return cell == row->second.end() ? 0 : cell->second;
  };

  long long lhs_total = 0;
  long long rhs_total = 0;
  for (const auto& s : sheaf.strata) {
    long long column = 0;
    for (const auto& p : model.fixed_points()) column += entry(p.name, s.name);
    if (column != s.chi_c) {
      throw InconsistentSheafError("chamber '" + chamber + "': sum_p chi_c(" + s.name + " cap O_p) = " +
                                   std::to_string(column) + " but chi_c(" + s.name + ") = " +
                                   std::to_string(s.chi_c));
    }
    lhs_total += column * s.stalk_euler;
    rhs_total += s.chi_c * s.stalk_euler;
  }
  if (lhs_total != rhs_total) {
    throw InconsistentSheafError("chamber '" + chamber + "': sum_p sum_S chi_c(S cap O_p) e_S = " +
                                 std::to_string(lhs_total) + " but sum_S chi_c(S) e_S = " +
                                 std::to_string(rhs_total));
  }
}

void validate_sheaf(const GKMModel& model, const ConstructibleSheaf& sheaf) {
  const std::size_t width = hyperplanes(model.delta()).size();
  auto check_key = [&](const std::string& key) {
    bool ok = key.size() == width && std::all_of(key.begin(), key.end(), [](char c) { return c == '+' || c == '-'; });
    if (!ok) {
      throw InconsistentSheafError("chamber key '" + key + "' is not a sign string of length " +
                                   std::to_string(width));
    }
  };
  for (const auto& [key, table] : sheaf.cell_tables) {
    check_key(key);
    validate_cell_table(model, sheaf, key, table);
  }
  for (const auto& [key, costalk] : sheaf.costalk_tables) {
    if (key != kAnyChamber) check_key(key);
    for (const auto& [fp, value] : costalk) {
      (void)value;
      if (!model.index_of(fp)) {
        throw InconsistentSheafError("costalk table '" + key + "': unknown fixed point '" + fp + "'");
      }
    }
  }
}

}  // namespace gkmloc
