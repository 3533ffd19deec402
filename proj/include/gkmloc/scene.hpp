#pragma once

// Scene files: a model, a sheaf, an evaluation point and options, as JSON.
// Rationals travel as strings ("3/7") so nothing is rounded.

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "gkmloc/localize.hpp"
#include "gkmloc/models.hpp"
#include "gkmloc/sheaves.hpp"
#include "gkmloc/weights.hpp"

namespace gkmloc {

struct Scene {
  GKMModel model;
  ConstructibleSheaf sheaf;
  std::optional<CartanElement> X;
  Slice slice = Slice::split;
  double gauss_bonnet_tolerance = kGaussBonnetTolerance;
};

GKMModel model_from_json(const nlohmann::json& j);
/// Explicit form (all fixed-point data), tagged with the model's kind.
nlohmann::ordered_json model_to_json(const GKMModel& model);

ConstructibleSheaf sheaf_from_json(const nlohmann::json& j, const GKMModel& model);
nlohmann::ordered_json sheaf_to_json(const ConstructibleSheaf& sheaf);

CartanElement cartan_from_json(const nlohmann::json& j, int rank);
nlohmann::ordered_json cartan_to_json(const CartanElement& X);

Scene scene_from_json(const nlohmann::json& j);
nlohmann::ordered_json scene_to_json(const Scene& scene);

/// Parses JSON text; syntax errors become InvalidInputError with line and column.
nlohmann::json parse_json_text(const std::string& text, const std::string& origin);
Scene load_scene(const std::string& path);

/// Comma-separated complex rationals: "1", "-3/7", "i", "i2/3", "1/2-i3".
CartanElement parse_cartan(std::string_view text);
ComplexRational parse_complex_rational(std::string_view text);

std::string to_string(Slice slice);
Slice parse_slice(const std::string& text);

}  // namespace gkmloc
