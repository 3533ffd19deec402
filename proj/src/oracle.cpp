#include "gkmloc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>
#include <string>
#include <thread>

#include "gkmloc/errors.hpp"
#include "gkmloc/localize.hpp"

namespace gkmloc::oracle {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n, double a, double b) {
  if (n < 1) throw InvalidInputError("Gauss-Legendre rule needs n >= 1");
  std::vector<double> nodes(n);
  std::vector<double> weights(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double derivative = 0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      derivative = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / derivative;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double w = 2.0 / ((1.0 - x * x) * derivative * derivative);
    nodes[i] = mid - half * x;
    nodes[n - 1 - i] = mid + half * x;
    weights[i] = weights[n - 1 - i] = half * w;
  }
  return {nodes, weights};
}

double quadrature_cp1(double t, const QuadratureSpec& spec) {
  if (spec.n_theta < 8 || spec.n_phi < 8) throw InvalidInputError("quadrature grid must be at least 8x8");
  std::vector<double> theta;
  std::vector<double> w_theta;
  if (spec.scheme == QuadratureScheme::gauss_legendre) {
    std::tie(theta, w_theta) = gauss_legendre(spec.n_theta, 0.0, kPi);
  } else {
    const double h = kPi / spec.n_theta;
    for (int i = 0; i < spec.n_theta; ++i) {
      theta.push_back((i + 0.5) * h);
      w_theta.push_back(h);
    }
  }
  const double h_phi = 2.0 * kPi / spec.n_phi;
  double total = 0.0;
  for (int j = 0; j < spec.n_phi; ++j) {
    double ring = 0.0;
    for (std::size_t i = 0; i < theta.size(); ++i) {
      ring += w_theta[i] * std::exp(t * std::cos(theta[i])) * std::sin(theta[i]);
    }
    total += h_phi * ring;
  }
  return total;
}

double min_truncation_radius(std::complex<double> beta) { return 6.0 / std::sqrt(std::abs(beta)); }

std::complex<double> gaussian_fiber_integral(std::complex<double> beta, double radius, int grid) {
  const double modulus = std::abs(beta);
  if (modulus == 0.0) throw SingularEvaluationError("gaussian fiber integral at beta = 0");
  if (radius < min_truncation_radius(beta) * (1.0 - 1e-12)) {
    throw InvalidInputError("truncation radius " + std::to_string(radius) + " below 6/sqrt|beta| = " +
                            std::to_string(min_truncation_radius(beta)));
  }
  if (grid < 8) throw InvalidInputError("gaussian fiber grid must be at least 8");
  const double h = 2.0 * radius / grid;
  const double r2 = radius * radius;
  double mass = 0.0;
  for (int a = 0; a < grid; ++a) {
    const double x = -radius + (a + 0.5) * h;
    double row = 0.0;
    for (int b = 0; b < grid; ++b) {
      const double v = -radius + (b + 0.5) * h;
      const double rr = x * x + v * v;
      if (rr < r2) row += std::exp(-modulus * rr);
    }
    mass += row * h * h;
  }
  // dy ^ dybar = -2i dx ^ dv
  return std::conj(beta) / modulus * std::complex<double>(0.0, -2.0) * mass;
}

std::complex<double> gaussian_fiber_integral(std::complex<double> beta) {
  if (std::abs(beta) == 0.0) throw SingularEvaluationError("gaussian fiber integral at beta = 0");
  return gaussian_fiber_integral(beta, min_truncation_radius(beta), 400);
}

int default_threads() {
  if (const char* env = std::getenv("GKMLOC_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

PushforwardReport dh_pushforward_cp1(long long samples, std::uint64_t seed, int bins, int threads) {
  if (samples < 10000) throw InvalidInputError("dh pushforward needs at least 10^4 samples");
  if (bins < 1) throw InvalidInputError("histogram needs at least one bin");
  if (threads <= 0) threads = default_threads();

  constexpr int kBatches = 64;
  std::vector<std::vector<double>> heights(kBatches);
  auto run_batch = [&](int b) {
    long long count = samples / kBatches + (b < samples % kBatches ? 1 : 0);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(b)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal(0.0, 1.0);
    auto& out = heights[b];
    out.reserve(count);
    while (static_cast<long long>(out.size()) < count) {
      double x = normal(rng), y = normal(rng), z = normal(rng);
      double r = std::sqrt(x * x + y * y + z * z);
      if (r == 0.0) continue;
      out.push_back(z / r);
    }
  };
  std::vector<std::thread> pool;
  for (int tid = 0; tid < std::min(threads, kBatches); ++tid) {
    pool.emplace_back([&, tid] {
      for (int b = tid; b < kBatches; b += threads) run_batch(b);
    });
  }
  for (auto& th : pool) th.join();

  PushforwardReport report;
  report.seed = seed;
  report.samples = samples;
  const double unit_mass = 4.0 * kPi / static_cast<double>(samples);
  std::vector<long long> counts(bins, 0);
  std::vector<double> all;
  all.reserve(samples);
  double sum = 0.0;
  for (const auto& batch : heights) {
    double batch_sum = 0.0;
    for (double h : batch) {
      int k = std::clamp(static_cast<int>((h + 1.0) / 2.0 * bins), 0, bins - 1);
      ++counts[k];
      batch_sum += h;
    }
    sum += batch_sum;
    all.insert(all.end(), batch.begin(), batch.end());
  }
  for (int k = 0; k < bins; ++k) {
    report.bins.push_back({-1.0 + 2.0 * k / bins, -1.0 + 2.0 * (k + 1) / bins, counts[k] * unit_mass});
    report.total_mass += counts[k] * unit_mass;
  }
  report.mean = sum / static_cast<double>(samples);

  std::sort(all.begin(), all.end());
  const double n = static_cast<double>(all.size());
  double ks = 0.0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    double cdf = (all[i] + 1.0) / 2.0;
    ks = std::max({ks, std::abs((i + 1) / n - cdf), std::abs(cdf - i / n)});
  }
  report.ks_distance = ks;
  return report;
}

InversionReport dh_inversion_check(const std::vector<double>& t_values) {
  InversionReport report;
  if (t_values.empty()) return report;
  const GKMModel model = build_cpn(1);
  const ConstructibleSheaf sheaf = constant_sheaf(model);
  const auto [nodes, weights] = gauss_legendre(64, -1.0, 1.0);
  for (double t : t_values) {
    if (t == 0.0) throw InvalidInputError("t = 0 is not a regular element");
    if (!std::isfinite(t)) throw InvalidInputError("t must be finite");
    const CartanElement X = CartanElement::real({Rational(t)});
    InversionRow row;
    row.t = t;
    row.transform = dh_fourier(model, sheaf, X).value.real();
    for (std::size_t k = 0; k < nodes.size(); ++k) row.quadrature += weights[k] * 2.0 * kPi * std::exp(t * nodes[k]);
    row.rel_error = std::abs(row.transform - row.quadrature) / std::abs(row.quadrature);
    report.max_rel_error = std::max(report.max_rel_error, row.rel_error);
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace gkmloc::oracle
