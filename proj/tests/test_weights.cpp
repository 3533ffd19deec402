#include <doctest.h>

#include <algorithm>
#include <random>

#include "gkmloc/errors.hpp"
#include "gkmloc/models.hpp"
#include "gkmloc/weights.hpp"
#include "support.hpp"

using namespace gkmloc;

namespace {

CartanElement X_of(std::initializer_list<long> re, std::initializer_list<long> im = {}) {
  std::vector<Rational> r(re.begin(), re.end());
  std::vector<Rational> i(im.begin(), im.end());
  if (i.empty()) i.assign(r.size(), Rational(0));
  return CartanElement(r, i);
}

}  // namespace

TEST_CASE("parse_rational accepts integers, fractions and decimals") {
  CHECK(parse_rational("3") == Rational(3));
  CHECK(parse_rational("-3/7") == Rational(-3, 7));
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational(" -1.5 ") == Rational(-3, 2));
  CHECK_THROWS_AS(parse_rational(""), InvalidInputError);
  CHECK_THROWS_AS(parse_rational("1/0"), InvalidInputError);
  CHECK_THROWS_AS(parse_rational("abc"), InvalidInputError);
  CHECK_THROWS_AS(parse_rational("1/2/3"), InvalidInputError);
}

TEST_CASE("complex rational arithmetic is exact") {
  ComplexRational a(Rational(1, 2), 1);
  ComplexRational b(0, 2);
  CHECK(a * b == ComplexRational(-2, 1));
  CHECK((a * b) / b == a);
  CHECK(i_power(1) == ComplexRational(0, 1));
  CHECK(i_power(2) == ComplexRational(-1));
  CHECK(i_power(-1) == ComplexRational(0, -1));
  CHECK(i_power(7) == i_power(3));
  CHECK_THROWS_AS(a / ComplexRational(), SingularEvaluationError);
}

TEST_CASE("eval_weight examples") {
  CHECK(eval_weight(Weight{1, 0}, X_of({2, 5}, {1, 0})) == ComplexRational(2, 1));
  CHECK(eval_weight(Weight{0, 0, 0}, X_of({4, -1, 9}, {1, 1, 1})).is_zero());
  CHECK(eval_weight(Weight{1, -1}, X_of({3, 1})) == ComplexRational(2));
  CHECK_THROWS_AS(eval_weight(Weight{1, 0}, X_of({1})), DimensionError);
}

TEST_CASE("eval_class examples") {
  ClassExpr e;
  ClassTerm exp_term;
  exp_term.exponent = {Rational(1)};
  e.terms.push_back(exp_term);
  CHECK(eval_class(e, X_of({0})) == std::complex<double>(1.0, 0.0));

  ClassExpr linear;
  ClassTerm t;
  t.power_of_i = 1;
  t.numerator = {Weight{1}};
  linear.terms.push_back(t);
  CHECK(eval_class(linear, X_of({2})) == std::complex<double>(0.0, 2.0));

  ClassExpr inverse;
  ClassTerm inv;
  inv.denominator = {Weight{1}};
  inverse.terms.push_back(inv);
  CHECK_THROWS_AS(eval_class(inverse, X_of({0})), SingularEvaluationError);
  try {
    eval_class(inverse, X_of({0}));
  } catch (const SingularEvaluationError& err) {
    CHECK(std::string(err.what()).find("(1)") != std::string::npos);
  }
}

TEST_CASE("is_regular examples") {
  const std::vector<Weight> delta{Weight{1}, Weight{-1}};
  CHECK(is_regular(delta, X_of({1})).regular);
  auto report = is_regular(delta, X_of({0}));
  CHECK_FALSE(report.regular);
  CHECK(report.violations == std::vector<Weight>{Weight{1}, Weight{-1}});

  const GKMModel cp2 = build_cpn(2);
  auto cp2_report = is_regular(cp2.delta(), X_of({0, 1, 1}));
  CHECK_FALSE(cp2_report.regular);
  auto v = cp2_report.violations;
  std::sort(v.begin(), v.end());
  CHECK(v == std::vector<Weight>{Weight{0, -1, 1}, Weight{0, 1, -1}});

  CHECK_THROWS_AS(is_regular(std::vector<Weight>{}, X_of({1})), InvalidInputError);
  CHECK_THROWS_AS(is_regular(std::vector<Weight>{Weight{0}}, X_of({1})), InvalidInputError);
}

TEST_CASE("chamber_id examples") {
  const std::vector<Weight> delta{Weight{1}, Weight{-1}};
  CHECK(chamber_id(delta, X_of({2})) == std::vector<int>{1, -1});
  CHECK(chamber_id(delta, X_of({-2})) == std::vector<int>{-1, 1});
  CHECK_THROWS_AS(chamber_id(delta, X_of({0}, {1})), OnWallError);
  // Compact slice reads the imaginary part.
  CHECK(chamber_id(delta, X_of({0}, {1}), Slice::compact) == std::vector<int>{1, -1});
  CHECK(chamber_key(delta, X_of({2})) == "+");
  CHECK(sign_string(std::vector<int>{1, -1, 1}) == "+-+");
}

TEST_CASE("canonical order is descending lexicographic and deduplicated") {
  std::vector<Weight> ws{Weight{0, 1}, Weight{1, 0}, Weight{-1, 0}, Weight{0, 1}, Weight{1, -1}};
  CHECK(canonical_order(ws) == std::vector<Weight>{Weight{1, 0}, Weight{1, -1}, Weight{0, 1}, Weight{-1, 0}});
  CHECK(hyperplanes(ws) == std::vector<Weight>{Weight{1, 0}, Weight{1, -1}, Weight{0, 1}});
  CHECK(Weight{0, -2, 3}.hyperplane_representative() == Weight{0, 2, -3});
}

TEST_CASE("eval_weight is bilinear over exact rationals") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> c(-9, 9);
  for (int trial = 0; trial < 100; ++trial) {
    Weight a{c(rng), c(rng), c(rng)};
    Weight b{c(rng), c(rng), c(rng)};
    CartanElement X = test_support::random_real(rng, 3);
    for (auto& q : X.im) q = test_support::random_rational(rng);
    const Rational s = test_support::random_rational(rng);
    CHECK(eval_weight(a + b, X) == eval_weight(a, X) + eval_weight(b, X));
    CHECK(eval_weight(a, X.scaled(s)) == ComplexRational(s) * eval_weight(a, X));
  }
}

TEST_CASE("chamber_id is invariant under positive scaling") {
  std::mt19937_64 rng(12);
  const GKMModel flag = build_flag3();
  for (int trial = 0; trial < 100; ++trial) {
    CartanElement X = test_support::random_regular(rng, flag.delta(), 3);
    Rational a(std::uniform_int_distribution<int>(1, 50)(rng), std::uniform_int_distribution<int>(1, 50)(rng));
    CHECK(chamber_id(flag.delta(), X) == chamber_id(flag.delta(), X.scaled(a)));
  }
}

TEST_CASE("projecting X onto a hyperplane of delta makes it singular") {
  std::mt19937_64 rng(13);
  const GKMModel cp2 = build_cpn(2);
  for (int trial = 0; trial < 100; ++trial) {
    CartanElement X = test_support::random_regular(rng, cp2.delta(), 3);
    CHECK(is_regular(cp2.delta(), X).regular);
    for (const auto& beta : cp2.delta()) {
      // X - (beta(X) / |beta|^2) beta
      Rational norm = 0;
      for (std::size_t j = 0; j < beta.rank(); ++j) norm += Rational(beta[j] * beta[j]);
      const Rational coeff = eval_weight(beta, X).re / norm;
      CartanElement P = X;
      for (std::size_t j = 0; j < beta.rank(); ++j) P.re[j] -= coeff * beta[j];
      auto report = is_regular(cp2.delta(), P);
      CHECK_FALSE(report.regular);
      CHECK(std::find(report.violations.begin(), report.violations.end(), beta) != report.violations.end());
    }
  }
}
