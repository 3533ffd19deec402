#pragma once

// Independent numerical oracles: direct quadrature on CP^1 = S^2, the
// Gaussian fiber integral at a fixed point, and Monte-Carlo
// Duistermaat-Heckman pushforward.  None of this goes through the
// localization code except dh_inversion_check, which compares against it.

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

namespace gkmloc::oracle {

enum class QuadratureScheme { midpoint, gauss_legendre };

struct QuadratureSpec {
  int n_theta = 256;
  int n_phi = 256;
  QuadratureScheme scheme = QuadratureScheme::gauss_legendre;
};

/// Nodes and weights of the n-point Gauss-Legendre rule on [a, b].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n, double a, double b);

/// Integral of e^{t H} omega over S^2 with H = cos(theta),
/// omega = sin(theta) dtheta dphi.  Gauss-Legendre or midpoint in theta,
/// trapezoid in phi.  Grids below 8 are refused.
double quadrature_cp1(double t, const QuadratureSpec& spec = {});

/// Smallest admissible truncation radius: 6 / sqrt|beta|.
double min_truncation_radius(std::complex<double> beta);

/// 2-D quadrature over the disk |y| < radius of
///   e^{-|beta| |y|^2} (conj(beta)/|beta|) dy ^ dybar,  dy ^ dybar = -2i dx ^ dv,
/// which tends to -2 pi i / beta.  Midpoint rule on a grid x grid square.
std::complex<double> gaussian_fiber_integral(std::complex<double> beta, double radius, int grid = 400);
std::complex<double> gaussian_fiber_integral(std::complex<double> beta);

struct HistogramBin {
  double lo = 0;
  double hi = 0;
  double mass = 0;
};

struct PushforwardReport {
  std::uint64_t seed = 0;
  long long samples = 0;
  std::vector<HistogramBin> bins;
  /// sup |F_empirical - F_uniform| on [-1, 1].
  double ks_distance = 0;
  double mean = 0;
  double total_mass = 0;
};

/// Pushes the Liouville (area) measure of S^2 forward under H = z.  Points
/// are drawn as normalized Gaussian vectors in fixed batches with per-batch
/// seeds, so the result does not depend on `threads` (0 = GKMLOC_THREADS or 1).
PushforwardReport dh_pushforward_cp1(long long samples, std::uint64_t seed, int bins = 20, int threads = 0);

struct InversionRow {
  double t = 0;
  double transform = 0;   // dh_fourier on CP^1, constant sheaf, levels +-1
  double quadrature = 0;  // int_{-1}^{1} e^{t h} 2 pi dh
  double rel_error = 0;
};

struct InversionReport {
  std::vector<InversionRow> rows;
  double max_rel_error = 0;
};

InversionReport dh_inversion_check(const std::vector<double>& t_values);

/// Thread count from GKMLOC_THREADS (default 1).
int default_threads();

}  // namespace gkmloc::oracle
