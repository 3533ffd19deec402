#pragma once

// Fixed-point localization.  One master formula
//
//   F_alpha(X) = (-2 pi i)^n  sum_k  m_k(X) alpha(X)_[0](x_k) / Den_{x_k}(X)
//
// with m_k from the sheaves module.  The Berline-Vergne sum is the m = 1
// case written as (-2 pi)^n sum alpha i^n / Den.  The Duistermaat-Heckman
// transform multiplies the master formula for exp(J + omega) by the
// Liouville calibration kappa^n (see models.hpp), giving the (-2 pi)^n form.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "gkmloc/models.hpp"
#include "gkmloc/sheaves.hpp"

namespace gkmloc {

/// sign * (2 pi)^two_pi_power * i^i_power
struct Prefactor {
  int two_pi_power = 0;
  int i_power = 0;
  int sign = 1;

  std::complex<double> value() const;
};

struct LocalizationTerm {
  std::string fixed_point;
  long long m = 1;
  std::complex<double> numerator;
  std::complex<double> den;
};

struct LocalizationResult {
  std::complex<double> value;
  std::vector<LocalizationTerm> terms;
  Prefactor prefactor;
  /// bv_localize only: X was not purely imaginary (off the compact slice).
  bool off_slice = false;

  /// prefactor * sum m numerator / den, summed in term order.
  std::complex<double> recompute() const;
};

/// Berline-Vergne: (-2 pi)^n sum_p alpha(p) i^n / Den_p(X).
/// Throws SingularEvaluationError for irregular X.
LocalizationResult bv_localize(const GKMModel& model, const FixedPointClass& cls, const CartanElement& X);

LocalizationResult main_localize(const GKMModel& model, const ConstructibleSheaf& sheaf, const FixedPointClass& cls,
                                 const CartanElement& X, Slice slice = Slice::split);

struct GaussBonnetResult {
  std::complex<double> localized;
  long long combinatorial = 0;
  bool match = false;
};

inline constexpr double kGaussBonnetTolerance = 1e-9;

/// localized = main_localize(euler form) / (2 pi)^n against chi(M, F).
GaussBonnetResult gauss_bonnet(const GKMModel& model, const ConstructibleSheaf& sheaf, const CartanElement& X,
                               Slice slice = Slice::split, double tolerance = kGaussBonnetTolerance);

/// Fourier transform of the Duistermaat-Heckman measure at X:
/// (-2 pi)^n sum_p m_p e^{<X, J(p)>} / Den_p(X).
LocalizationResult dh_fourier(const GKMModel& model, const ConstructibleSheaf& sheaf, const CartanElement& X,
                              Slice slice = Slice::split);

/// Exact sum_p 1/Den_p(X).
ComplexRational inverse_den_sum(const GKMModel& model, const CartanElement& X);

/// One representative X per realizable chamber of the wall arrangement of
/// delta on the given slice, ordered by chamber key.  Found by seeded random
/// rational sampling plus wall crossings from every chamber found.
std::vector<CartanElement> chamber_representatives(const std::vector<Weight>& delta, int rank, Slice slice,
                                                   std::uint64_t seed = 1);

struct ChamberRow {
  std::string chamber;
  CartanElement sample;
  MultiplicityVector m;
  std::complex<double> value;
  long long total = 0;
};

std::vector<ChamberRow> chamber_scan(const GKMModel& model, const ConstructibleSheaf& sheaf,
                                     const FixedPointClass& cls, Slice slice = Slice::split,
                                     std::uint64_t seed = 1);

}  // namespace gkmloc
