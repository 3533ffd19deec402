#include "gkmloc/sheaves.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "gkmloc/bb.hpp"
#include "gkmloc/errors.hpp"

namespace gkmloc {

std::string to_string(SheafKind kind) {
  switch (kind) {
    case SheafKind::constant: return "constant";
    case SheafKind::orbit: return "orbit";
    case SheafKind::preset: return "preset";
    case SheafKind::custom: return "custom";
  }
  return "custom";
}

SheafKind parse_sheaf_kind(const std::string& text) {
  if (text == "constant") return SheafKind::constant;
  if (text == "orbit") return SheafKind::orbit;
  if (text == "preset") return SheafKind::preset;
  if (text == "custom") return SheafKind::custom;
  throw InvalidInputError("unknown sheaf kind '" + text + "'");
}

const Stratum& ConstructibleSheaf::stratum(const std::string& name) const {
  for (const auto& s : strata) {
    if (s.name == name) return s;
  }
  throw InvalidInputError("no stratum named '" + name + "'");
}

ConstructibleSheaf constant_sheaf(const GKMModel& model) {
  ConstructibleSheaf sheaf;
  sheaf.kind = SheafKind::constant;
  // chi(M) as a sum over the BB cells, each an affine space.
  sheaf.strata.push_back({"M", static_cast<long long>(model.fixed_points().size()), 1, {}});
  // Restricted to a cell C^d the constant sheaf has costalk C[-2d] at the
  // origin: Euler characteristic 1 in every chamber.
  CostalkTable costalk;
  for (const auto& p : model.fixed_points()) costalk[p.name] = 1;
  sheaf.costalk_tables[kAnyChamber] = std::move(costalk);
  return sheaf;
}

namespace {

void subsets_of(int size, std::vector<int>& current, int next, std::vector<std::vector<int>>& out) {
  for (int j = next; j < size; ++j) {
    current.push_back(j);
    out.push_back(current);
    subsets_of(size, current, j + 1, out);
    current.pop_back();
  }
}

std::vector<std::vector<int>> nonempty_subsets(int size) {
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  subsets_of(size, current, 0, out);
  return out;
}

}  // namespace

std::vector<std::vector<std::vector<int>>> torus_orbits(const GKMModel& model) {
  if (!model.is_toric()) throw UnsupportedSheafError("torus orbits need a toric (CP^n product) model");
  std::vector<std::vector<std::vector<int>>> orbits{{}};
  for (const auto& block : model.blocks()) {
    std::vector<std::vector<std::vector<int>>> next;
    for (const auto& prefix : orbits) {
      for (const auto& subset : nonempty_subsets(static_cast<int>(block.size()))) {
        auto extended = prefix;
        extended.push_back(subset);
        next.push_back(std::move(extended));
      }
    }
    orbits = std::move(next);
  }
  return orbits;
}

std::string orbit_name(const std::vector<std::vector<int>>& orbit) {
  std::string out;
  for (std::size_t b = 0; b < orbit.size(); ++b) {
    if (b) out += "x";
    out += "{";
    for (std::size_t k = 0; k < orbit[b].size(); ++k) {
      if (k) out += ",";
      out += std::to_string(orbit[b][k]);
    }
    out += "}";
  }
  return out;
}

ConstructibleSheaf orbit_sheaf(const GKMModel& model, const std::map<std::string, long long>& stalk_euler) {
  ConstructibleSheaf sheaf;
  sheaf.kind = SheafKind::orbit;
  std::set<std::string> known;
  for (const auto& orbit : torus_orbits(model)) {
    Stratum s;
    s.name = orbit_name(orbit);
    bool point = std::all_of(orbit.begin(), orbit.end(), [](const auto& support) { return support.size() == 1; });
    s.chi_c = point ? 1 : 0;  // (C^*)^k has chi_c = 0 for k > 0
    auto it = stalk_euler.find(s.name);
    s.stalk_euler = it == stalk_euler.end() ? 0 : it->second;
    s.orbit = orbit;
    known.insert(s.name);
    sheaf.strata.push_back(std::move(s));
  }
  for (const auto& [name, value] : stalk_euler) {
    (void)value;
    if (!known.count(name)) throw InvalidInputError("'" + name + "' is not a torus orbit of this model");
  }
  // Local route: the costalk of F|O_p at p is its stalk at p corrected by the
  // Euler characteristic of the link.  Inside a cell the strata are
  // coordinate orbits, conic with links of chi = 0, so only the stalk on the
  // point orbit {p} survives.
  CostalkTable costalk;
  for (const auto& p : model.fixed_points()) {
    std::vector<std::vector<int>> point_orbit;
    for (int index : p.coordinate_index) point_orbit.push_back({index});
    costalk[p.name] = sheaf.stratum(orbit_name(point_orbit)).stalk_euler;
  }
  sheaf.costalk_tables[kAnyChamber] = std::move(costalk);
  return sheaf;
}

ConstructibleSheaf cp1_upper_halfplane(const GKMModel& model) {
  if (model.dim() != 1 || model.fixed_points().size() != 2) {
    throw UnsupportedSheafError("cp1-upper-halfplane needs a CP^1 model");
  }
  const auto walls = hyperplanes(model.delta());
  if (walls.size() != 1) throw UnsupportedSheafError("cp1-upper-halfplane needs a single wall");
  const Weight& h = walls.front();

  ConstructibleSheaf sheaf;
  sheaf.kind = SheafKind::preset;
  sheaf.preset_name = "cp1-upper-halfplane";
  sheaf.strata = {{"upper", 1, 1, {}}, {"circle", 0, 0, {}}, {"lower", 1, 0, {}}};

  // Both fixed points lie on the circle.  In a chamber the point whose
  // tangent weight is negative there owns the big cell CP^1 minus a point,
  // which meets the circle in a line (chi_c = -1); the other cell is the
  // remaining point of the circle.
  for (int sign : {1, -1}) {
    const std::string key = sign > 0 ? "+" : "-";
    const Weight negative = sign > 0 ? -h : h;
    CellTable table;
    CostalkTable costalk;
    for (const auto& p : model.fixed_points()) {
      bool big = p.tangent_weights.front() == negative;
      table[p.name] = big ? std::map<std::string, long long>{{"upper", 1}, {"circle", -1}, {"lower", 1}}
                          : std::map<std::string, long long>{{"upper", 0}, {"circle", 1}, {"lower", 0}};
      // Costalk at a boundary point of the half-plane along the big cell is
      // chi(F_p) - chi(link) = 0 - (0 - 1) = 1; the point cell sees the zero stalk.
      costalk[p.name] = big ? 1 : 0;
    }
    sheaf.cell_tables[key] = std::move(table);
    sheaf.costalk_tables[key] = std::move(costalk);
  }
  return sheaf;
}

ConstructibleSheaf preset_sheaf(const std::string& name, const GKMModel& model) {
  if (name == "constant") return constant_sheaf(model);
  if (name == "cp1-upper-halfplane") return cp1_upper_halfplane(model);
  throw InvalidInputError("unknown sheaf preset '" + name + "'");
}

long long euler_characteristic(const ConstructibleSheaf& sheaf) {
  long long chi = 0;
  for (const auto& s : sheaf.strata) chi += s.chi_c * s.stalk_euler;
  return chi;
}

ConstructibleSheaf shift(const ConstructibleSheaf& sheaf, int k) {
  if (k % 2 == 0) return sheaf;
  ConstructibleSheaf out = sheaf;
  for (auto& s : out.strata) s.stalk_euler = -s.stalk_euler;
  for (auto& [key, table] : out.costalk_tables) {
    for (auto& [fp, value] : table) value = -value;
  }
  return out;
}

namespace {

std::optional<CostalkTable> costalk_for(const ConstructibleSheaf& sheaf, const std::string& chamber) {
  if (auto it = sheaf.costalk_tables.find(chamber); it != sheaf.costalk_tables.end()) return it->second;
  if (auto it = sheaf.costalk_tables.find(kAnyChamber); it != sheaf.costalk_tables.end()) return it->second;
  return std::nullopt;
}

bool same_stratification(const ConstructibleSheaf& a, const ConstructibleSheaf& b) {
  if (a.strata.size() != b.strata.size()) return false;
  for (std::size_t k = 0; k < a.strata.size(); ++k) {
    const auto& s = a.strata[k];
    const auto& t = b.strata[k];
    if (s.name != t.name || s.chi_c != t.chi_c || s.orbit != t.orbit) return false;
  }
  return true;
}

}  // namespace

ConstructibleSheaf add(const ConstructibleSheaf& a, const ConstructibleSheaf& b) {
  if (!same_stratification(a, b)) {
    throw IncompatibleStratificationError("cannot add sheaves with different stratifications");
  }
  const bool computed_a = a.kind == SheafKind::constant || a.kind == SheafKind::orbit;
  const bool computed_b = b.kind == SheafKind::constant || b.kind == SheafKind::orbit;
  if (a.kind != b.kind && (computed_a || computed_b)) {
    throw IncompatibleStratificationError("cannot add a " + to_string(a.kind) + " sheaf to a " + to_string(b.kind) +
                                          " sheaf");
  }

  ConstructibleSheaf out = a;
  if (a.kind != b.kind || a.preset_name != b.preset_name) {
    out.kind = SheafKind::custom;
    out.preset_name.clear();
  }
  for (std::size_t k = 0; k < out.strata.size(); ++k) out.strata[k].stalk_euler += b.strata[k].stalk_euler;

  // Cell tables are stratification data: they must agree where both exist.
  for (const auto& [key, table] : b.cell_tables) {
    auto [it, inserted] = out.cell_tables.emplace(key, table);
    if (!inserted && it->second != table) {
      throw IncompatibleStratificationError("cell tables disagree in chamber '" + key + "'");
    }
  }

  std::set<std::string> keys;
  for (const auto& [key, t] : a.costalk_tables) keys.insert(key);
  for (const auto& [key, t] : b.costalk_tables) keys.insert(key);
  out.costalk_tables.clear();
  for (const auto& key : keys) {
    auto ta = costalk_for(a, key);
    auto tb = costalk_for(b, key);
    if (!ta || !tb) continue;
    CostalkTable sum = *ta;
    for (const auto& [fp, value] : *tb) sum[fp] += value;
    out.costalk_tables[key] = std::move(sum);
  }
  return out;
}

long long MultiplicityVector::total() const {
  long long sum = 0;
  for (long long v : m) sum += v;
  return sum;
}

long long MultiplicityVector::at(const std::string& fixed_point) const {
  for (std::size_t k = 0; k < fixed_points.size(); ++k) {
    if (fixed_points[k] == fixed_point) return m[k];
  }
  throw InvalidInputError("no fixed point named '" + fixed_point + "'");
}

MultiplicityVector multiplicities(const GKMModel& model, const ConstructibleSheaf& sheaf, const CartanElement& X,
                                  Slice slice) {
  const CellTable table = cell_intersection_table(model, sheaf, X, slice);
  MultiplicityVector out;
  out.chamber = chamber_key(model.delta(), X, slice);
  for (const auto& p : model.fixed_points()) {
    long long m = 0;
    if (auto row = table.find(p.name); row != table.end()) {
      for (const auto& s : sheaf.strata) {
        if (auto cell = row->second.find(s.name); cell != row->second.end()) m += cell->second * s.stalk_euler;
      }
    }
    out.fixed_points.push_back(p.name);
    out.m.push_back(m);
  }
  return out;
}

MultiplicityVector multiplicities_local(const GKMModel& model, const ConstructibleSheaf& sheaf,
                                        const CartanElement& X, Slice slice) {
  MultiplicityVector out;
  out.chamber = chamber_key(model.delta(), X, slice);
  auto costalk = costalk_for(sheaf, out.chamber);
  if (!costalk) {
    throw UnsupportedSheafError("sheaf carries no costalk data for chamber '" + out.chamber + "'");
  }
  for (const auto& p : model.fixed_points()) {
    auto it = costalk->find(p.name);
    if (it == costalk->end()) throw UnsupportedSheafError("no costalk value for fixed point '" + p.name + "'");
    out.fixed_points.push_back(p.name);
    out.m.push_back(it->second);
  }
  return out;
}

}  // namespace gkmloc
