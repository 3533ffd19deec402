#include "gkmloc/localize.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numbers>
#include <random>

#include "gkmloc/errors.hpp"

namespace gkmloc {

std::complex<double> Prefactor::value() const {
  return static_cast<double>(sign) * std::pow(2.0 * std::numbers::pi, two_pi_power) *
         gkmloc::i_power(this->i_power).to_complex();
}

std::complex<double> LocalizationResult::recompute() const {
  std::complex<double> sum{0.0, 0.0};
  for (const auto& t : terms) sum += static_cast<double>(t.m) * t.numerator / t.den;
  return prefactor.value() * sum;
}

namespace {

void require_regular(const GKMModel& model, const CartanElement& X) {
  if (static_cast<int>(X.rank()) != model.rank()) {
    throw DimensionError("X has rank " + std::to_string(X.rank()) + ", model has rank " +
                         std::to_string(model.rank()));
  }
  auto report = is_regular(model.delta(), X);
  if (!report.regular) {
    throw SingularEvaluationError("X=" + to_string(X) + " is not regular: weight " +
                                  to_string(report.violations.front()) + " vanishes");
  }
}

// sum_p m_p alpha(p) / Den_p(X), each term divided exactly before the
// exponential is applied.  Fixed summation order (fixed-point order).
LocalizationResult localized_sum(const GKMModel& model, const FixedPointClass& cls, const CartanElement& X,
                                 const std::vector<long long>& m, Prefactor prefactor) {
  if (cls.size() != model.fixed_points().size()) {
    throw DimensionError("class has " + std::to_string(cls.size()) + " restrictions, model has " +
                         std::to_string(model.fixed_points().size()) + " fixed points");
  }
  LocalizationResult result;
  result.prefactor = prefactor;
  std::complex<double> sum{0.0, 0.0};
  for (std::size_t k = 0; k < cls.size(); ++k) {
    const ComplexRational den = model.den(k, X);
    std::complex<double> contribution{0.0, 0.0};
    for (const auto& term : cls[k].terms) {
      std::complex<double> ratio = (eval_term_algebraic(term, X) / den).to_complex();
      if (!term.exponent.empty()) ratio *= std::exp(eval_linear_form(term.exponent, X).to_complex());
      contribution += ratio;
    }
    sum += static_cast<double>(m[k]) * contribution;
    result.terms.push_back({model.fixed_point(k).name, m[k], eval_class(cls[k], X), den.to_complex()});
  }
  result.value = prefactor.value() * sum;
  return result;
}

Prefactor master_prefactor(int n) {
  // (-2 pi i)^n
  return {n, n % 4, n % 2 == 0 ? 1 : -1};
}

}  // namespace

LocalizationResult bv_localize(const GKMModel& model, const FixedPointClass& cls, const CartanElement& X) {
  require_regular(model, X);
  const std::vector<long long> ones(model.fixed_points().size(), 1);
  // (-2 pi)^n * i^n: the det^{1/2}(L_p) = Den_p / i^n substitution.
  LocalizationResult result = localized_sum(model, cls, X, ones, master_prefactor(model.dim()));
  result.off_slice = std::any_of(X.re.begin(), X.re.end(), [](const Rational& q) { return q != 0; });
  return result;
}

LocalizationResult main_localize(const GKMModel& model, const ConstructibleSheaf& sheaf, const FixedPointClass& cls,
                                 const CartanElement& X, Slice slice) {
  require_regular(model, X);
  const MultiplicityVector m = multiplicities(model, sheaf, X, slice);
  return localized_sum(model, cls, X, m.m, master_prefactor(model.dim()));
}

GaussBonnetResult gauss_bonnet(const GKMModel& model, const ConstructibleSheaf& sheaf, const CartanElement& X,
                               Slice slice, double tolerance) {
  const auto result = main_localize(model, sheaf, euler_form_class(model), X, slice);
  GaussBonnetResult out;
  out.localized = result.value / std::pow(2.0 * std::numbers::pi, model.dim());
  out.combinatorial = euler_characteristic(sheaf);
  out.match = std::abs(out.localized - static_cast<double>(out.combinatorial)) < tolerance;
  return out;
}

LocalizationResult dh_fourier(const GKMModel& model, const ConstructibleSheaf& sheaf, const CartanElement& X,
                              Slice slice) {
  LocalizationResult result = main_localize(model, sheaf, exp_hamiltonian_class(model, 1), X, slice);
  const int n = model.dim();
  result.prefactor.i_power = (result.prefactor.i_power + kLiouvilleCalibrationIPower * n) % 4;
  if (result.prefactor.i_power >= 2) {
    result.prefactor.i_power -= 2;
    result.prefactor.sign = -result.prefactor.sign;
  }
  result.value *= liouville_calibration(n);
  return result;
}

ComplexRational inverse_den_sum(const GKMModel& model, const CartanElement& X) {
  require_regular(model, X);
  ComplexRational sum;
  for (std::size_t k = 0; k < model.fixed_points().size(); ++k) sum += ComplexRational(1) / model.den(k, X);
  return sum;
}

namespace {

using IntPoint = std::vector<std::int64_t>;

std::int64_t dot(const Weight& h, const IntPoint& v) {
  std::int64_t s = 0;
  for (std::size_t j = 0; j < v.size(); ++j) s += h[j] * v[j];
  return s;
}

// Sign string of v against the walls, or empty if v lies on a wall.
std::string key_of(const std::vector<Weight>& walls, const IntPoint& v) {
  std::string key;
  for (const auto& h : walls) {
    std::int64_t s = dot(h, v);
    if (s == 0) return {};
    key += s > 0 ? '+' : '-';
  }
  return key;
}

// A small integer point in the same chamber as v (same direction, rounded at
// increasing resolutions), or v itself.
IntPoint shrink(const std::vector<Weight>& walls, const IntPoint& v, const std::string& key) {
  std::int64_t biggest = 0;
  for (auto x : v) biggest = std::max(biggest, x < 0 ? -x : x);
  if (biggest == 0) return v;
  for (long double resolution : {50.0L, 500.0L, 5000.0L, 50000.0L, 500000.0L}) {
    if (resolution >= static_cast<long double>(biggest)) break;
    IntPoint w(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) w[j] = std::llround(static_cast<long double>(v[j]) * resolution / biggest);
    if (key_of(walls, w) == key) return w;
  }
  return v;
}

CartanElement to_cartan(const IntPoint& v, Slice slice) {
  std::vector<Rational> coords(v.begin(), v.end());
  return slice == Slice::split ? CartanElement::real(std::move(coords)) : CartanElement::imaginary(std::move(coords));
}

}  // namespace

std::vector<CartanElement> chamber_representatives(const std::vector<Weight>& delta, int rank, Slice slice,
                                                   std::uint64_t seed) {
  const std::vector<Weight> walls = hyperplanes(delta);
  for (const auto& h : walls) {
    if (static_cast<int>(h.rank()) != rank) throw DimensionError("wall rank differs from torus rank");
    if (h.is_zero()) throw InvalidInputError("zero weight in weight set");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> coord(-60, 60);
  std::uniform_int_distribution<std::int64_t> jitter(-3, 3);

  std::map<std::string, IntPoint> found;
  std::deque<IntPoint> frontier;
  auto consider = [&](const IntPoint& v) {
    std::string key = key_of(walls, v);
    if (key.empty() || found.count(key)) return;
    IntPoint small = shrink(walls, v, key);
    found.emplace(key, small);
    frontier.push_back(small);
  };

  const std::size_t h = walls.size();
  const std::size_t samples = 400 + 40 * (std::size_t{1} << std::min<std::size_t>(h, 10));
  for (std::size_t s = 0; s < samples; ++s) {
    IntPoint v(rank);
    for (auto& x : v) x = coord(rng);
    consider(v);
  }

  // Cross every wall of every chamber found: project onto the wall
  // (scaled to stay integral), step off to both sides, jitter inside it.
  constexpr std::int64_t kScale = 64;
  constexpr std::int64_t kMaxCoordinate = 1'000'000'000;
  while (!frontier.empty()) {
    IntPoint v = frontier.front();
    frontier.pop_front();
    if (std::any_of(v.begin(), v.end(), [](std::int64_t x) { return x > kMaxCoordinate || x < -kMaxCoordinate; })) {
      continue;
    }
    for (const auto& wall : walls) {
      std::int64_t hh = dot(wall, IntPoint(wall.coeffs().begin(), wall.coeffs().end()));
      std::int64_t hv = dot(wall, v);
      IntPoint on_wall(rank);
      for (int j = 0; j < rank; ++j) on_wall[j] = hh * v[j] - hv * wall[j];
      for (int attempt = 0; attempt < 8; ++attempt) {
        IntPoint r(rank);
        for (auto& x : r) x = jitter(rng);
        std::int64_t rh = dot(wall, r);
        for (int side : {1, -1}) {
          IntPoint c(rank);
          for (int j = 0; j < rank; ++j) c[j] = kScale * kScale * on_wall[j] + kScale * (hh * r[j] - rh * wall[j]) + side * wall[j];
          consider(c);
        }
      }
    }
  }

  std::vector<CartanElement> reps;
  reps.reserve(found.size());
  for (const auto& [key, v] : found) reps.push_back(to_cartan(v, slice));
  return reps;
}

std::vector<ChamberRow> chamber_scan(const GKMModel& model, const ConstructibleSheaf& sheaf,
                                     const FixedPointClass& cls, Slice slice, std::uint64_t seed) {
  std::vector<ChamberRow> rows;
  for (const auto& X : chamber_representatives(model.delta(), model.rank(), slice, seed)) {
    ChamberRow row;
    row.sample = X;
    row.m = multiplicities(model, sheaf, X, slice);
    row.chamber = row.m.chamber;
    row.total = row.m.total();
    row.value = main_localize(model, sheaf, cls, X, slice).value;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace gkmloc
