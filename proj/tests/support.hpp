#pragma once

#include <random>
#include <vector>

#include "gkmloc/models.hpp"
#include "gkmloc/weights.hpp"

namespace test_support {

using gkmloc::CartanElement;
using gkmloc::Rational;

inline Rational random_rational(std::mt19937_64& rng, int num = 40, int den = 7) {
  std::uniform_int_distribution<int> n(-num, num);
  std::uniform_int_distribution<int> d(1, den);
  return Rational(n(rng), d(rng));
}

inline CartanElement random_real(std::mt19937_64& rng, std::size_t rank) {
  std::vector<Rational> re;
  for (std::size_t j = 0; j < rank; ++j) re.push_back(random_rational(rng));
  return CartanElement::real(std::move(re));
}

/// Random X on the split slice that is off every wall of delta.
inline CartanElement random_regular(std::mt19937_64& rng, const std::vector<gkmloc::Weight>& delta, std::size_t rank) {
  while (true) {
    CartanElement X = random_real(rng, rank);
    bool ok = true;
    for (const auto& beta : delta) ok = ok && gkmloc::eval_weight(beta, X).re != 0;
    if (ok) return X;
  }
}

inline CartanElement random_complex_regular(std::mt19937_64& rng, const std::vector<gkmloc::Weight>& delta,
                                            std::size_t rank) {
  while (true) {
    CartanElement X = random_real(rng, rank);
    for (std::size_t j = 0; j < rank; ++j) X.im[j] = random_rational(rng);
    bool ok = true;
    for (const auto& beta : delta) ok = ok && gkmloc::eval_weight(beta, X).re != 0;
    if (ok) return X;
  }
}

}  // namespace test_support

#include <map>
#include <string>

#include "gkmloc/localize.hpp"

namespace test_support {

/// `count` random regular X in every realizable chamber (split slice).
inline std::map<std::string, std::vector<CartanElement>> samples_per_chamber(const gkmloc::GKMModel& model,
                                                                          std::size_t count, std::mt19937_64& rng) {
  std::map<std::string, std::vector<CartanElement>> out;
  for (const auto& X : gkmloc::chamber_representatives(model.delta(), model.rank(), gkmloc::Slice::split)) {
    out[gkmloc::chamber_key(model.delta(), X)].push_back(X);
  }
  for (int guard = 0; guard < 200000; ++guard) {
    bool done = true;
    for (const auto& [key, xs] : out) done = done && xs.size() >= count;
    if (done) break;
    CartanElement X = random_regular(rng, model.delta(), model.rank());
    auto& bucket = out[gkmloc::chamber_key(model.delta(), X)];
    if (bucket.size() < count) bucket.push_back(std::move(X));
  }
  return out;
}

}  // namespace test_support
