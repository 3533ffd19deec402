#include <doctest.h>

#include <random>

#include "gkmloc/bb.hpp"
#include "gkmloc/errors.hpp"
#include "gkmloc/scene.hpp"
#include "support.hpp"

using namespace gkmloc;
using nlohmann::json;

namespace {

const std::string kScenes = GKMLOC_SCENES_DIR;

Scene reload(const Scene& s) { return scene_from_json(json::parse(scene_to_json(s).dump())); }

}  // namespace

TEST_CASE("parse_cartan") {
  CHECK(parse_cartan("1,-3/7") == CartanElement::real({Rational(1), Rational(-3, 7)}));
  CHECK(parse_cartan("i1") == CartanElement::imaginary({Rational(1)}));
  CHECK(parse_cartan("i") == CartanElement::imaginary({Rational(1)}));
  CHECK(parse_cartan("-i2/3") == CartanElement::imaginary({Rational(-2, 3)}));
  CHECK(parse_cartan("1/2-i3, 2+i") == CartanElement({Rational(1, 2), Rational(2)}, {Rational(-3), Rational(1)}));
  CHECK(parse_cartan("0.5") == CartanElement::real({Rational(1, 2)}));
  CHECK_THROWS_AS(parse_cartan("1,,2"), InvalidInputError);
  CHECK_THROWS_AS(parse_cartan("i1i"), InvalidInputError);
  CHECK_THROWS_AS(parse_cartan("2i"), InvalidInputError);
}

TEST_CASE("shipped scenes load") {
  const Scene half = load_scene(kScenes + "/cp1-halfplane.json");
  CHECK(half.slice == Slice::compact);
  REQUIRE(half.X.has_value());
  CHECK(multiplicities(half.model, half.sheaf, *half.X, half.slice).m == std::vector<long long>{1, 0});

  const Scene orbit = load_scene(kScenes + "/cp2-orbit.json");
  CHECK(orbit.sheaf.kind == SheafKind::orbit);
  CHECK(euler_characteristic(orbit.sheaf) == 2);

  const Scene flag = load_scene(kScenes + "/flag3-constant.json");
  CHECK(flag.model.kind() == ModelKind::flag3);
  CHECK(flag.gauss_bonnet_tolerance == 1e-9);
  CHECK(gauss_bonnet(flag.model, flag.sheaf, *flag.X, flag.slice).match);
}

TEST_CASE("built-in models and sheaves round-trip exactly") {
  std::mt19937_64 rng(61);
  const GKMModel cp1 = build_cpn(1);
  std::vector<Scene> scenes;
  for (const auto& model : {build_cpn(1), build_cpn(3), build_flag3(), build_product(build_cpn(1), build_cpn(2)),
                            build_cpn(2, {Weight{0, 0}, Weight{1, 0}, Weight{0, 1}},
                                      {{Rational(0), Rational(0)}, {Rational(1, 3), Rational(0)}, {Rational(0), Rational(7, 5)}})}) {
    scenes.push_back({model, constant_sheaf(model), std::nullopt, Slice::split, 1e-9});
    if (model.is_toric()) {
      std::map<std::string, long long> e;
      for (const auto& orbit : torus_orbits(model)) e[orbit_name(orbit)] = std::uniform_int_distribution<int>(-3, 3)(rng);
      scenes.push_back({model, shift(orbit_sheaf(model, e), 1), std::nullopt, Slice::split, 1e-9});
    }
  }
  scenes.push_back({cp1, cp1_upper_halfplane(cp1), CartanElement({Rational(1, 3)}, {Rational(-2)}), Slice::compact, 1e-7});

  for (const auto& scene : scenes) {
    const Scene back = reload(scene);
    CHECK(back.model == scene.model);
    CHECK(back.sheaf == scene.sheaf);
    CHECK(back.X == scene.X);
    CHECK(back.slice == scene.slice);
    CHECK(back.gauss_bonnet_tolerance == scene.gauss_bonnet_tolerance);
    for (const auto& X : chamber_representatives(scene.model.delta(), scene.model.rank(), scene.slice)) {
      CHECK(multiplicities(back.model, back.sheaf, X, back.slice) == multiplicities(scene.model, scene.sheaf, X, scene.slice));
      CHECK(bb_decompose(back.model, X, back.slice) == bb_decompose(scene.model, X, scene.slice));
      for (std::size_t k = 0; k < scene.model.fixed_points().size(); ++k) CHECK(back.model.den(k, X) == scene.model.den(k, X));
      const auto a = main_localize(back.model, back.sheaf, euler_form_class(back.model), X, back.slice);
      const auto b = main_localize(scene.model, scene.sheaf, euler_form_class(scene.model), X, scene.slice);
      CHECK(a.value == b.value);
    }
  }
}

TEST_CASE("descriptor forms") {
  const json cpn = json::parse(R"({"kind":"cpn","n":2})");
  CHECK(model_from_json(cpn) == build_cpn(2));
  const json cp1 = json::parse(R"({"kind":"cpn","n":1,"coordinate_weights":[[0],[1]]})");
  CHECK(model_from_json(cp1) == build_cpn(1));
  const json product = json::parse(R"({"kind":"product","factors":[{"kind":"cpn","n":1},{"kind":"cpn","n":1}]})");
  CHECK(model_from_json(product) == build_product(build_cpn(1), build_cpn(1)));
  const json flag = json::parse(R"({"kind":"flag3","lambda":["3","1/2","-1"]})");
  CHECK(model_from_json(flag) == build_flag3({Rational(3), Rational(1, 2), Rational(-1)}));
  const json custom = json::parse(R"({"kind":"custom","rank":1,"dim":1,"fixed_points":[
      {"name":"north","tangent_weights":[[-2]],"hamiltonian":["1"]},
      {"name":"south","tangent_weights":[[2]],"hamiltonian":["-1"]}]})");
  const GKMModel m = model_from_json(custom);
  CHECK(m.kind() == ModelKind::custom);
  CHECK(m.fixed_point(0).name == "north");
  CHECK_FALSE(m.is_toric());

  const json shifted = json::parse(R"({"kind":"constant","shift":3})");
  CHECK(euler_characteristic(sheaf_from_json(shifted, build_cpn(2))) == -3);
  const json preset = json::parse(R"({"kind":"preset","name":"cp1-upper-halfplane"})");
  CHECK(sheaf_from_json(preset, build_cpn(1)) == cp1_upper_halfplane(build_cpn(1)));

  CHECK_THROWS_AS(model_from_json(json::parse(R"({"kind":"torus"})")), InvalidInputError);
  CHECK_THROWS_AS(model_from_json(json::parse(R"({"kind":"cpn"})")), InvalidInputError);
  CHECK_THROWS_AS(model_from_json(json::parse(R"({"kind":"cpn","n":1,"coordinate_weights":[[1],[1]]})")),
                  DegenerateActionError);
  CHECK_THROWS_AS(sheaf_from_json(json::parse(R"({"kind":"custom"})"), build_cpn(1)), InvalidInputError);
  CHECK_THROWS_AS(cartan_from_json(json::parse(R"({"re":["1","2"]})"), 1), DimensionError);
  CHECK_THROWS_AS(cartan_from_json(json::parse(R"({"re":["x"]})"), 1), InvalidInputError);
  CHECK(cartan_from_json(json::parse(R"({"re":["3/7"]})"), 1) == CartanElement::real({Rational(3, 7)}));
}

TEST_CASE("malformed JSON reports line and column") {
  try {
    parse_json_text("{\n  \"manifold\": {\n    \"kind\": cpn\n}", "scene.json");
    FAIL("expected InvalidInputError");
  } catch (const InvalidInputError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("scene.json:3:") != std::string::npos);
  }
  CHECK_THROWS_AS(load_scene("/nonexistent/scene.json"), InvalidInputError);
}
