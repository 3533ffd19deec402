#include "gkmloc/scene.hpp"

#include <fstream>
#include <sstream>

#include "gkmloc/errors.hpp"

namespace gkmloc {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw InvalidInputError("expected a rational string or integer, got " + j.dump());
}

std::vector<Rational> rationals_from_json(const json& j) {
  if (!j.is_array()) throw InvalidInputError("expected an array of rationals, got " + j.dump());
  std::vector<Rational> out;
  for (const auto& x : j) out.push_back(rational_from_json(x));
  return out;
}

ordered_json rationals_to_json(const std::vector<Rational>& v) {
  ordered_json out = ordered_json::array();
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

Weight weight_from_json(const json& j) {
  if (!j.is_array()) throw InvalidInputError("expected a weight (integer array), got " + j.dump());
  std::vector<std::int64_t> c;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw InvalidInputError("weight coefficients must be integers: " + j.dump());
    c.push_back(x.get<std::int64_t>());
  }
  return Weight(std::move(c));
}

std::vector<Weight> weights_from_json(const json& j) {
  if (!j.is_array()) throw InvalidInputError("expected an array of weights, got " + j.dump());
  std::vector<Weight> out;
  for (const auto& w : j) out.push_back(weight_from_json(w));
  return out;
}

ordered_json weights_to_json(const std::vector<Weight>& ws) {
  ordered_json out = ordered_json::array();
  for (const auto& w : ws) out.push_back(w.coeffs());
  return out;
}

const json& require(const json& j, const char* key, const char* where) {
  if (!j.is_object() || !j.contains(key)) {
    throw InvalidInputError(std::string(where) + ": missing field '" + key + "'");
  }
  return j.at(key);
}

template <typename T>
T get_as(const json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw InvalidInputError(std::string("bad value for ") + what + ": " + j.dump());
  }
}

GKMModel explicit_model(const json& j, ModelKind kind) {
  const int rank = get_as<int>(require(j, "rank", "manifold"), "rank");
  const int dim = get_as<int>(require(j, "dim", "manifold"), "dim");
  std::vector<FixedPoint> points;
  for (const auto& fp : require(j, "fixed_points", "manifold")) {
    FixedPoint p;
    p.name = get_as<std::string>(require(fp, "name", "fixed point"), "name");
    p.tangent_weights = weights_from_json(require(fp, "tangent_weights", "fixed point"));
    p.hamiltonian = fp.contains("hamiltonian") ? rationals_from_json(fp.at("hamiltonian"))
                                                : std::vector<Rational>(rank, Rational(0));
    if (fp.contains("coordinate_index")) p.coordinate_index = get_as<std::vector<int>>(fp.at("coordinate_index"), "coordinate_index");
    points.push_back(std::move(p));
  }
  std::vector<std::vector<Weight>> blocks;
  if (j.contains("blocks")) {
    for (const auto& b : j.at("blocks")) blocks.push_back(weights_from_json(b));
  }
  return GKMModel(kind, rank, dim, std::move(points), std::move(blocks));
}

}  // namespace

std::string to_string(Slice slice) { return slice == Slice::split ? "split" : "compact"; }

Slice parse_slice(const std::string& text) {
  if (text == "split") return Slice::split;
  if (text == "compact") return Slice::compact;
  throw InvalidInputError("slice must be 'split' or 'compact', got '" + text + "'");
}

GKMModel model_from_json(const json& j) {
  if (!j.is_object()) throw InvalidInputError("manifold must be an object");
  const ModelKind kind = parse_model_kind(get_as<std::string>(require(j, "kind", "manifold"), "kind"));
  if (j.contains("fixed_points")) return explicit_model(j, kind);
  switch (kind) {
    case ModelKind::cpn: {
      const int n = get_as<int>(require(j, "n", "manifold"), "n");
      if (!j.contains("coordinate_weights")) {
        if (j.contains("hamiltonian_levels")) {
          throw InvalidInputError("hamiltonian_levels given without coordinate_weights");
        }
        return build_cpn(n);
      }
      std::vector<Weight> a = weights_from_json(j.at("coordinate_weights"));
      std::vector<std::vector<Rational>> levels;
      if (j.contains("hamiltonian_levels")) {
        for (const auto& level : j.at("hamiltonian_levels")) levels.push_back(rationals_from_json(level));
      } else {
        // 2 a_i - (1,...,1): compatible with the tangent weights.
        for (const auto& w : a) {
          std::vector<Rational> level;
          for (std::size_t k = 0; k < w.rank(); ++k) level.push_back(Rational(2 * w[k] - 1));
          levels.push_back(std::move(level));
        }
      }
      return build_cpn(n, std::move(a), std::move(levels));
    }
    case ModelKind::flag3:
      if (j.contains("lambda")) return build_flag3(rationals_from_json(j.at("lambda")));
      return build_flag3();
    case ModelKind::product: {
      const json& factors = require(j, "factors", "manifold");
      if (!factors.is_array() || factors.size() < 2) throw InvalidInputError("product needs at least two factors");
      GKMModel out = model_from_json(factors.at(0));
      for (std::size_t k = 1; k < factors.size(); ++k) out = build_product(out, model_from_json(factors.at(k)));
      return out;
    }
    case ModelKind::custom:
      return explicit_model(j, kind);
  }
  throw InvalidInputError("unsupported manifold");
}

ordered_json model_to_json(const GKMModel& model) {
  ordered_json j;
  j["kind"] = to_string(model.kind());
  j["rank"] = model.rank();
  j["dim"] = model.dim();
  ordered_json points = ordered_json::array();
  for (const auto& p : model.fixed_points()) {
    ordered_json fp;
    fp["name"] = p.name;
    fp["tangent_weights"] = weights_to_json(p.tangent_weights);
    fp["hamiltonian"] = rationals_to_json(p.hamiltonian);
    if (!p.coordinate_index.empty()) fp["coordinate_index"] = p.coordinate_index;
    points.push_back(std::move(fp));
  }
  j["fixed_points"] = std::move(points);
  if (model.is_toric()) {
    ordered_json blocks = ordered_json::array();
    for (const auto& b : model.blocks()) blocks.push_back(weights_to_json(b));
    j["blocks"] = std::move(blocks);
  }
  return j;
}

namespace {

CellTable cell_table_from_json(const json& j) {
  CellTable table;
  for (const auto& [fp, row] : j.items()) {
    for (const auto& [stratum, value] : row.items()) table[fp][stratum] = get_as<long long>(value, "cell table entry");
  }
  return table;
}

CostalkTable costalk_from_json(const json& j) {
  CostalkTable table;
  for (const auto& [fp, value] : j.items()) table[fp] = get_as<long long>(value, "costalk entry");
  return table;
}

}  // namespace

ConstructibleSheaf sheaf_from_json(const json& j, const GKMModel& model) {
  if (!j.is_object()) throw InvalidInputError("sheaf must be an object");
  const SheafKind kind = parse_sheaf_kind(get_as<std::string>(require(j, "kind", "sheaf"), "kind"));
  ConstructibleSheaf sheaf;
  if (j.contains("strata")) {
    sheaf.kind = kind;
    if (j.contains("preset_name")) sheaf.preset_name = get_as<std::string>(j.at("preset_name"), "preset_name");
    for (const auto& s : j.at("strata")) {
      Stratum stratum;
      stratum.name = get_as<std::string>(require(s, "name", "stratum"), "name");
      stratum.chi_c = get_as<long long>(require(s, "chi_c", "stratum"), "chi_c");
      stratum.stalk_euler = get_as<long long>(require(s, "stalk_euler", "stratum"), "stalk_euler");
      if (s.contains("orbit")) stratum.orbit = get_as<std::vector<std::vector<int>>>(s.at("orbit"), "orbit");
      for (const auto& other : sheaf.strata) {
        if (other.name == stratum.name) throw InvalidInputError("duplicate stratum name '" + stratum.name + "'");
      }
      sheaf.strata.push_back(std::move(stratum));
    }
    if (j.contains("cell_tables")) {
      for (const auto& [key, table] : j.at("cell_tables").items()) sheaf.cell_tables[key] = cell_table_from_json(table);
    }
    if (j.contains("costalk_tables")) {
      for (const auto& [key, table] : j.at("costalk_tables").items()) {
        sheaf.costalk_tables[key] = costalk_from_json(table);
      }
    }
  } else {
    switch (kind) {
      case SheafKind::constant:
        sheaf = constant_sheaf(model);
        break;
      case SheafKind::orbit: {
        std::map<std::string, long long> e;
        if (j.contains("stalk_euler")) {
          for (const auto& [name, value] : j.at("stalk_euler").items()) e[name] = get_as<long long>(value, "stalk_euler");
        }
        sheaf = orbit_sheaf(model, e);
        break;
      }
      case SheafKind::preset:
        sheaf = preset_sheaf(get_as<std::string>(require(j, "name", "sheaf"), "name"), model);
        break;
      case SheafKind::custom:
        throw InvalidInputError("custom sheaf needs 'strata'");
    }
  }
  if (j.contains("shift")) sheaf = shift(sheaf, get_as<int>(j.at("shift"), "shift"));
  return sheaf;
}

ordered_json sheaf_to_json(const ConstructibleSheaf& sheaf) {
  ordered_json j;
  j["kind"] = to_string(sheaf.kind);
  if (!sheaf.preset_name.empty()) j["preset_name"] = sheaf.preset_name;
  ordered_json strata = ordered_json::array();
  for (const auto& s : sheaf.strata) {
    ordered_json o;
    o["name"] = s.name;
    o["chi_c"] = s.chi_c;
    o["stalk_euler"] = s.stalk_euler;
    if (!s.orbit.empty()) o["orbit"] = s.orbit;
    strata.push_back(std::move(o));
  }
  j["strata"] = std::move(strata);
  if (!sheaf.cell_tables.empty()) {
    ordered_json tables = ordered_json::object();
    for (const auto& [key, table] : sheaf.cell_tables) {
      ordered_json t = ordered_json::object();
      for (const auto& [fp, row] : table) {
        ordered_json r = ordered_json::object();
        for (const auto& [name, value] : row) r[name] = value;
        t[fp] = std::move(r);
      }
      tables[key] = std::move(t);
    }
    j["cell_tables"] = std::move(tables);
  }
  if (!sheaf.costalk_tables.empty()) {
    ordered_json tables = ordered_json::object();
    for (const auto& [key, table] : sheaf.costalk_tables) {
      ordered_json t = ordered_json::object();
      for (const auto& [fp, value] : table) t[fp] = value;
      tables[key] = std::move(t);
    }
    j["costalk_tables"] = std::move(tables);
  }
  return j;
}

CartanElement cartan_from_json(const json& j, int rank) {
  if (j.is_string()) {
    CartanElement X = parse_cartan(j.get<std::string>());
    if (static_cast<int>(X.rank()) != rank) throw DimensionError("X has the wrong rank");
    return X;
  }
  if (!j.is_object()) throw InvalidInputError("X must be an object {re, im} or a string");
  std::vector<Rational> re = j.contains("re") ? rationals_from_json(j.at("re")) : std::vector<Rational>(rank);
  std::vector<Rational> im = j.contains("im") ? rationals_from_json(j.at("im")) : std::vector<Rational>(rank);
  if (static_cast<int>(re.size()) != rank || static_cast<int>(im.size()) != rank) {
    throw DimensionError("X has length " + std::to_string(re.size()) + "/" + std::to_string(im.size()) +
                         ", model rank is " + std::to_string(rank));
  }
  return CartanElement(std::move(re), std::move(im));
}

ordered_json cartan_to_json(const CartanElement& X) {
  ordered_json j;
  j["re"] = rationals_to_json(X.re);
  j["im"] = rationals_to_json(X.im);
  return j;
}

Scene scene_from_json(const json& j) {
  if (!j.is_object()) throw InvalidInputError("scene must be a JSON object");
  GKMModel model = model_from_json(require(j, "manifold", "scene"));
  ConstructibleSheaf sheaf = j.contains("sheaf") ? sheaf_from_json(j.at("sheaf"), model) : constant_sheaf(model);
  Scene scene{std::move(model), std::move(sheaf), std::nullopt, Slice::split, kGaussBonnetTolerance};
  if (j.contains("X")) scene.X = cartan_from_json(j.at("X"), scene.model.rank());
  if (j.contains("options")) {
    const json& options = j.at("options");
    if (options.contains("slice")) scene.slice = parse_slice(get_as<std::string>(options.at("slice"), "slice"));
    if (options.contains("tolerance") && options.at("tolerance").contains("gauss_bonnet")) {
      scene.gauss_bonnet_tolerance = get_as<double>(options.at("tolerance").at("gauss_bonnet"), "tolerance");
    }
  }
  return scene;
}

ordered_json scene_to_json(const Scene& scene) {
  ordered_json j;
  j["manifold"] = model_to_json(scene.model);
  j["sheaf"] = sheaf_to_json(scene.sheaf);
  if (scene.X) j["X"] = cartan_to_json(*scene.X);
  j["options"]["slice"] = to_string(scene.slice);
  j["options"]["tolerance"]["gauss_bonnet"] = scene.gauss_bonnet_tolerance;
  return j;
}

json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t offset = e.byte == 0 ? 0 : e.byte - 1;
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t k = 0; k < offset && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw InvalidInputError(origin + ":" + std::to_string(line) + ":" + std::to_string(column) +
                            ": malformed JSON: " + e.what());
  }
}

Scene load_scene(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInputError("cannot open scene file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return scene_from_json(parse_json_text(buffer.str(), path));
}

ComplexRational parse_complex_rational(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s.empty()) throw InvalidInputError("empty complex number");
  auto i_pos = s.find('i');
  if (i_pos == std::string::npos) return {parse_rational(s), 0};
  if (s.find('i', i_pos + 1) != std::string::npos) throw InvalidInputError("malformed complex number '" + s + "'");

  // Split into real part and signed imaginary part at the sign preceding 'i'.
  std::size_t split = i_pos;
  if (split > 0 && (s[split - 1] == '+' || s[split - 1] == '-')) --split;
  std::string real_part = s.substr(0, split);
  std::string sign = (split < i_pos) ? s.substr(split, 1) : "";
  std::string magnitude = s.substr(i_pos + 1);
  if (!real_part.empty() && split == i_pos) throw InvalidInputError("malformed complex number '" + s + "'");
  if (magnitude.empty()) magnitude = "1";
  Rational im = parse_rational(magnitude);
  if (sign == "-") im = -im;
  Rational re = real_part.empty() ? Rational(0) : parse_rational(real_part);
  return {re, im};
}

CartanElement parse_cartan(std::string_view text) {
  std::vector<Rational> re;
  std::vector<Rational> im;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = text.find(',', start);
    auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    ComplexRational z = parse_complex_rational(piece);
    re.push_back(z.re);
    im.push_back(z.im);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return CartanElement(std::move(re), std::move(im));
}

}  // namespace gkmloc
