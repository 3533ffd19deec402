#pragma once

// Combinatorial (GKM-style) models of smooth projective torus manifolds:
// isolated fixed points with their tangent weights and moment-map values.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "gkmloc/weights.hpp"

namespace gkmloc {

struct FixedPoint {
  std::string name;
  std::vector<Weight> tangent_weights;
  /// Moment-map value J(p) as a linear form on the Cartan algebra.
  std::vector<Rational> hamiltonian;
  /// For toric (products of CP^n) models: the coordinate index of p in each
  /// projective factor.  Empty otherwise.
  std::vector<int> coordinate_index;

  friend bool operator==(const FixedPoint&, const FixedPoint&) = default;
};

enum class ModelKind { cpn, flag3, product, custom };

std::string to_string(ModelKind kind);
ModelKind parse_model_kind(const std::string& text);

class GKMModel {
 public:
  /// Validates: every fixed point has `dim` nonzero weights of rank `rank`,
  /// Hamiltonians of length `rank`, and names are unique.
  /// `blocks` holds the coordinate weights of each projective factor
  /// (embedded in the full rank) for toric models.
  GKMModel(ModelKind kind, int rank, int dim, std::vector<FixedPoint> fixed_points,
           std::vector<std::vector<Weight>> blocks = {});

  ModelKind kind() const { return kind_; }
  int rank() const { return rank_; }
  int dim() const { return dim_; }
  const std::vector<FixedPoint>& fixed_points() const { return fixed_points_; }
  const FixedPoint& fixed_point(std::size_t k) const { return fixed_points_.at(k); }
  /// Delta: every tangent weight that occurs, in canonical order.
  const std::vector<Weight>& delta() const { return delta_; }
  const std::vector<std::vector<Weight>>& blocks() const { return blocks_; }
  bool is_toric() const { return !blocks_.empty(); }

  std::optional<std::size_t> index_of(const std::string& name) const;

  /// Den_p(X) = product of the tangent weights of p evaluated at X.
  ComplexRational den(std::size_t k, const CartanElement& X) const;

  friend bool operator==(const GKMModel&, const GKMModel&) = default;

 private:
  ModelKind kind_;
  int rank_;
  int dim_;
  std::vector<FixedPoint> fixed_points_;
  std::vector<Weight> delta_;
  std::vector<std::vector<Weight>> blocks_;
};

/// CP^n with coordinate weights a_0..a_n: fixed points p_i with tangent
/// weights {a_j - a_i : j != i} and J(p_i) = levels[i].
GKMModel build_cpn(int n, std::vector<Weight> coordinate_weights,
                   std::vector<std::vector<Rational>> hamiltonian_levels);
/// Defaults.  n = 1: rank 1, a = ((0),(1)), levels ((-1),(1)).  n >= 2:
/// rank n+1, a_i = e_i, levels 2 a_i - (1,...,1).
GKMModel build_cpn(int n);

/// Full flag variety of C^3, fixed points indexed by permutations, with
/// J(w) = w . lambda for a strictly dominant lambda.
GKMModel build_flag3(std::vector<Rational> lambda = {2, 1, 0});

GKMModel build_product(const GKMModel& a, const GKMModel& b);

/// Fixed-point restrictions alpha(X)_[0](p), aligned with model.fixed_points().
using FixedPointClass = std::vector<ClassExpr>;

FixedPointClass unit_class(const GKMModel& model);
/// Equivariant Euler form: i^n Den_p(X) at p.
FixedPointClass euler_form_class(const GKMModel& model);
/// exp(J + omega): e^{t <X, J(p)>} at p.
FixedPointClass exp_hamiltonian_class(const GKMModel& model, const Rational& t);

/// Orientation calibration between the localization master formula and the
/// real Liouville integral: kappa = i^kLiouvilleCalibrationIPower per complex
/// dimension, fixed once against the CP^1 quadrature oracle.
inline constexpr int kLiouvilleCalibrationIPower = 3;  // kappa = -i

/// kappa^n.
std::complex<double> liouville_calibration(int n);

}  // namespace gkmloc
