#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gkmloc/errors.hpp"
#include "gkmloc/localize.hpp"
#include "gkmloc/oracle.hpp"

using namespace gkmloc;
using namespace gkmloc::oracle;

namespace {

constexpr double kPi = std::numbers::pi;

double closed_form(double t) { return t == 0 ? 4 * kPi : 2 * kPi * (std::exp(t) - std::exp(-t)) / t; }

}  // namespace

TEST_CASE("Gauss-Legendre nodes integrate polynomials exactly") {
  for (int n : {1, 2, 5, 16, 64}) {
    const auto [x, w] = gauss_legendre(n, -1.0, 3.0);
    double sum_w = 0, moment = 0;
    for (int k = 0; k < n; ++k) {
      sum_w += w[k];
      moment += w[k] * std::pow(x[k], 2 * n - 1);
    }
    CHECK(sum_w == doctest::Approx(4.0).epsilon(1e-13));
    const double exact = (std::pow(3.0, 2 * n) - 1.0) / (2 * n);
    CHECK(moment == doctest::Approx(exact).epsilon(1e-11));
  }
  CHECK_THROWS_AS(gauss_legendre(0, 0, 1), InvalidInputError);
}

TEST_CASE("quadrature_cp1 examples") {
  CHECK(std::abs(quadrature_cp1(1.0) - 2 * kPi * (std::exp(1.0) - std::exp(-1.0))) < 1e-8);
  CHECK(std::abs(quadrature_cp1(0.0) - 4 * kPi) < 1e-10);
  CHECK(std::abs(quadrature_cp1(2.0) - closed_form(2.0)) < 1e-6);
  CHECK_THROWS_AS(quadrature_cp1(1.0, {4, 256, QuadratureScheme::gauss_legendre}), InvalidInputError);
  CHECK_THROWS_AS(quadrature_cp1(1.0, {256, 7, QuadratureScheme::midpoint}), InvalidInputError);
}

TEST_CASE("quadrature error shrinks under refinement") {
  // Gauss-Legendre is already at round-off for N = 32, so the refinement
  // property is checked on the midpoint rule.
  for (int n : {32, 64, 128}) {
    const double coarse = std::abs(quadrature_cp1(1.0, {n, n, QuadratureScheme::midpoint}) - closed_form(1.0));
    const double fine = std::abs(quadrature_cp1(1.0, {2 * n, 2 * n, QuadratureScheme::midpoint}) - closed_form(1.0));
    CHECK(fine < coarse);
  }
  CHECK(std::abs(quadrature_cp1(1.0, {32, 32, QuadratureScheme::gauss_legendre}) - closed_form(1.0)) < 1e-11);
}

TEST_CASE("gaussian_fiber_integral examples") {
  const std::complex<double> I(0, 1);
  CHECK(std::abs(gaussian_fiber_integral(1.0) - (-2.0 * kPi * I)) < 1e-4);
  CHECK(std::abs(gaussian_fiber_integral(I) - std::complex<double>(-2 * kPi, 0)) < 1e-4);
  CHECK(std::abs(gaussian_fiber_integral(2.0) - (-kPi * I)) < 1e-4);
  CHECK_THROWS_AS(gaussian_fiber_integral(0.0), SingularEvaluationError);
  CHECK_THROWS_AS(gaussian_fiber_integral(1.0, 1.0, 400), InvalidInputError);
  CHECK(min_truncation_radius(4.0) == doctest::Approx(3.0));
}

TEST_CASE("gaussian_fiber_integral scales like 1/beta") {
  for (std::complex<double> beta : {std::complex<double>(1, 0), {0, 1}, {1, 1}, {-2, 0.5}}) {
    const auto base = gaussian_fiber_integral(beta);
    for (double a : {0.5, 2.0, 3.7}) {
      CHECK(std::abs(gaussian_fiber_integral(a * beta) - base / a) < 1e-4);
    }
  }
}

TEST_CASE("the Liouville calibration is the only unit that matches quadrature") {
  const GKMModel cp1 = build_cpn(1);
  const std::complex<double> I(0, 1);
  int matches = 0;
  std::complex<double> winner;
  for (std::complex<double> kappa : {std::complex<double>(1, 0), std::complex<double>(-1, 0), I, -I}) {
    bool all = true;
    for (double t : {0.5, 1.0, 2.0}) {
      const auto bv = bv_localize(cp1, exp_hamiltonian_class(cp1, 1), CartanElement::real({Rational(t)}));
      const double q = quadrature_cp1(t, {256, 256, QuadratureScheme::gauss_legendre});
      all = all && std::abs(kappa * bv.value - q) / std::abs(q) < 1e-5;
    }
    if (all) {
      ++matches;
      winner = kappa;
    }
  }
  CHECK(matches == 1);
  CHECK(winner == liouville_calibration(1));
}

TEST_CASE("dh_pushforward_cp1 is uniform and deterministic") {
  const PushforwardReport r = dh_pushforward_cp1(200000, 7, 20, 1);
  CHECK(r.seed == 7);
  CHECK(r.samples == 200000);
  REQUIRE(r.bins.size() == 20);
  CHECK(r.bins.front().lo == -1.0);
  CHECK(r.bins.back().hi == 1.0);
  CHECK(r.total_mass == doctest::Approx(4 * kPi).epsilon(1e-12));
  CHECK(r.ks_distance < 0.01);
  CHECK(std::abs(r.mean) < 0.005);
  for (const auto& b : r.bins) CHECK(std::abs(b.mass - 4 * kPi / 20) < 0.05 * (4 * kPi / 20));

  const PushforwardReport again = dh_pushforward_cp1(200000, 7, 20, 3);
  CHECK(again.ks_distance == r.ks_distance);
  CHECK(again.mean == r.mean);
  for (std::size_t k = 0; k < r.bins.size(); ++k) CHECK(again.bins[k].mass == r.bins[k].mass);

  CHECK(dh_pushforward_cp1(200000, 8, 20, 1).mean != r.mean);
  CHECK_THROWS_AS(dh_pushforward_cp1(9999, 1), InvalidInputError);
  CHECK_THROWS_AS(dh_pushforward_cp1(10000, 1, 0), InvalidInputError);
}

TEST_CASE("dh_inversion_check examples") {
  const InversionReport r = dh_inversion_check({0.5, 1.0, 2.0});
  REQUIRE(r.rows.size() == 3);
  for (const auto& row : r.rows) CHECK(row.rel_error < 1e-6);
  CHECK(r.max_rel_error < 1e-6);
  CHECK(r.rows[1].quadrature == doctest::Approx(closed_form(1.0)).epsilon(1e-12));
  CHECK(dh_inversion_check({}).rows.empty());
  CHECK_THROWS_AS(dh_inversion_check({0.0}), InvalidInputError);
}
