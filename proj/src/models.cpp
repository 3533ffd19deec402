#include "gkmloc/models.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "gkmloc/errors.hpp"

namespace gkmloc {

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::cpn: return "cpn";
    case ModelKind::flag3: return "flag3";
    case ModelKind::product: return "product";
    case ModelKind::custom: return "custom";
  }
  return "custom";
}

ModelKind parse_model_kind(const std::string& text) {
  if (text == "cpn") return ModelKind::cpn;
  if (text == "flag3") return ModelKind::flag3;
  if (text == "product") return ModelKind::product;
  if (text == "custom") return ModelKind::custom;
  throw InvalidInputError("unknown manifold kind '" + text + "'");
}

GKMModel::GKMModel(ModelKind kind, int rank, int dim, std::vector<FixedPoint> fixed_points,
                   std::vector<std::vector<Weight>> blocks)
    : kind_(kind), rank_(rank), dim_(dim), fixed_points_(std::move(fixed_points)), blocks_(std::move(blocks)) {
  if (rank_ < 1) throw InvalidInputError("torus rank must be positive");
  if (dim_ < 0) throw InvalidInputError("dimension must be non-negative");
  if (fixed_points_.empty()) throw InvalidInputError("model has no fixed points");

  std::set<std::string> names;
  std::vector<Weight> all;
  for (const auto& p : fixed_points_) {
    if (!names.insert(p.name).second) throw InvalidInputError("duplicate fixed point name '" + p.name + "'");
    if (static_cast<int>(p.tangent_weights.size()) != dim_) {
      throw InvalidInputError("fixed point '" + p.name + "' has " + std::to_string(p.tangent_weights.size()) +
                              " tangent weights, expected " + std::to_string(dim_));
    }
    if (static_cast<int>(p.hamiltonian.size()) != rank_) {
      throw DimensionError("hamiltonian of '" + p.name + "' has wrong length");
    }
    for (const auto& beta : p.tangent_weights) {
      if (static_cast<int>(beta.rank()) != rank_) {
        throw DimensionError("tangent weight " + to_string(beta) + " at '" + p.name + "' has wrong rank");
      }
      if (beta.is_zero()) throw InvalidInputError("zero tangent weight at '" + p.name + "'");
      all.push_back(beta);
    }
    if (!blocks_.empty() && p.coordinate_index.size() != blocks_.size()) {
      throw InvalidInputError("fixed point '" + p.name + "' lacks coordinate indices");
    }
  }
  delta_ = canonical_order(all);
}

std::optional<std::size_t> GKMModel::index_of(const std::string& name) const {
  for (std::size_t k = 0; k < fixed_points_.size(); ++k) {
    if (fixed_points_[k].name == name) return k;
  }
  return std::nullopt;
}

ComplexRational GKMModel::den(std::size_t k, const CartanElement& X) const {
  ComplexRational d{1};
  for (const auto& beta : fixed_points_.at(k).tangent_weights) d *= eval_weight(beta, X);
  return d;
}

GKMModel build_cpn(int n, std::vector<Weight> a, std::vector<std::vector<Rational>> levels) {
  if (n < 1) throw InvalidInputError("CP^n needs n >= 1");
  if (static_cast<int>(a.size()) != n + 1) throw InvalidInputError("CP^n needs n+1 coordinate weights");
  if (levels.size() != a.size()) throw InvalidInputError("CP^n needs n+1 hamiltonian levels");
  const std::size_t rank = a.front().rank();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].rank() != rank) throw DimensionError("coordinate weights have different ranks");
    for (std::size_t j = 0; j < i; ++j) {
      if (a[i] == a[j]) {
        throw DegenerateActionError("coordinate weights a_" + std::to_string(j) + " and a_" + std::to_string(i) +
                                    " coincide; fixed points are not isolated");
      }
    }
  }
  std::vector<FixedPoint> points;
  for (int i = 0; i <= n; ++i) {
    FixedPoint p;
    p.name = "p" + std::to_string(i);
    for (int j = 0; j <= n; ++j) {
      if (j != i) p.tangent_weights.push_back(a[j] - a[i]);
    }
    p.hamiltonian = levels[i];
    p.coordinate_index = {i};
    points.push_back(std::move(p));
  }
  return GKMModel(ModelKind::cpn, static_cast<int>(rank), n, std::move(points), {std::move(a)});
}

GKMModel build_cpn(int n) {
  if (n == 1) return build_cpn(1, {Weight{0}, Weight{1}}, {{Rational(-1)}, {Rational(1)}});
  if (n < 1) throw InvalidInputError("CP^n needs n >= 1");
  const std::size_t rank = n + 1;
  std::vector<Weight> a;
  std::vector<std::vector<Rational>> levels;
  for (std::size_t i = 0; i < rank; ++i) {
    a.push_back(Weight::unit(rank, i));
    std::vector<Rational> level(rank, Rational(-1));
    level[i] = 1;
    levels.push_back(std::move(level));
  }
  return build_cpn(n, std::move(a), std::move(levels));
}

GKMModel build_flag3(std::vector<Rational> lambda) {
  if (lambda.size() != 3) throw DimensionError("flag3 needs a rank-3 dominant weight");
  if (!(lambda[0] > lambda[1] && lambda[1] > lambda[2])) {
    throw InvalidInputError("flag3 needs a strictly dominant lambda (l1 > l2 > l3)");
  }
  std::array<int, 3> w{0, 1, 2};
  std::vector<FixedPoint> points;
  do {
    FixedPoint p;
    p.name = "w" + std::to_string(w[0] + 1) + std::to_string(w[1] + 1) + std::to_string(w[2] + 1);
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) p.tangent_weights.push_back(Weight::unit(3, w[j]) - Weight::unit(3, w[i]));
    }
    p.hamiltonian.assign(3, Rational(0));
    for (int i = 0; i < 3; ++i) p.hamiltonian[w[i]] = lambda[i];
    points.push_back(std::move(p));
  } while (std::next_permutation(w.begin(), w.end()));
  return GKMModel(ModelKind::flag3, 3, 3, std::move(points));
}

namespace {

Weight embed(const Weight& w, std::size_t offset, std::size_t rank) {
  std::vector<std::int64_t> c(rank, 0);
  for (std::size_t j = 0; j < w.rank(); ++j) c[offset + j] = w[j];
  return Weight(std::move(c));
}

}  // namespace

GKMModel build_product(const GKMModel& a, const GKMModel& b) {
  const std::size_t rank = a.rank() + b.rank();
  std::vector<FixedPoint> points;
  for (const auto& p : a.fixed_points()) {
    for (const auto& q : b.fixed_points()) {
      FixedPoint pq;
      pq.name = p.name + "." + q.name;
      for (const auto& beta : p.tangent_weights) pq.tangent_weights.push_back(embed(beta, 0, rank));
      for (const auto& beta : q.tangent_weights) pq.tangent_weights.push_back(embed(beta, a.rank(), rank));
      pq.hamiltonian = p.hamiltonian;
      pq.hamiltonian.insert(pq.hamiltonian.end(), q.hamiltonian.begin(), q.hamiltonian.end());
      if (a.is_toric() && b.is_toric()) {
        pq.coordinate_index = p.coordinate_index;
        pq.coordinate_index.insert(pq.coordinate_index.end(), q.coordinate_index.begin(), q.coordinate_index.end());
      }
      points.push_back(std::move(pq));
    }
  }
  std::vector<std::vector<Weight>> blocks;
  if (a.is_toric() && b.is_toric()) {
    for (const auto& block : a.blocks()) {
      auto& out = blocks.emplace_back();
      for (const auto& w : block) out.push_back(embed(w, 0, rank));
    }
    for (const auto& block : b.blocks()) {
      auto& out = blocks.emplace_back();
      for (const auto& w : block) out.push_back(embed(w, a.rank(), rank));
    }
  }
  return GKMModel(ModelKind::product, static_cast<int>(rank), a.dim() + b.dim(), std::move(points),
                  std::move(blocks));
}

FixedPointClass unit_class(const GKMModel& model) {
  return FixedPointClass(model.fixed_points().size(), ClassExpr::constant(ComplexRational(1)));
}

FixedPointClass euler_form_class(const GKMModel& model) {
  FixedPointClass cls;
  for (const auto& p : model.fixed_points()) {
    ClassTerm term;
    term.power_of_i = model.dim();
    term.numerator = p.tangent_weights;
    cls.push_back(ClassExpr{{term}});
  }
  return cls;
}

FixedPointClass exp_hamiltonian_class(const GKMModel& model, const Rational& t) {
  FixedPointClass cls;
  for (const auto& p : model.fixed_points()) {
    ClassTerm term;
    term.exponent = p.hamiltonian;
    for (auto& c : term.exponent) c *= t;
    cls.push_back(ClassExpr{{term}});
  }
  return cls;
}

std::complex<double> liouville_calibration(int n) {
  return i_power(kLiouvilleCalibrationIPower * n).to_complex();
}

}  // namespace gkmloc
