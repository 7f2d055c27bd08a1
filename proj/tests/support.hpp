// Shared fixtures for the unit tests.
#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "apxbsp/spectrum.hpp"

namespace testing {

inline constexpr double pi = std::numbers::pi;

inline apxbsp::ExponentLadder arithmetic(int size) {
  return apxbsp::make_ladder(apxbsp::SpectrumKind::arithmetic, size, 1);
}

/// Pair +-n only, lambda_n = lambda.
inline apxbsp::Spectrum pair(int n, double lambda, apxbsp::Complex plus, apxbsp::Complex minus,
                             double p) {
  return apxbsp::Spectrum({{-n, -lambda, minus}, {n, lambda, plus}}, p);
}

/// Random spectrum on a given ladder with moderate coefficients.
inline apxbsp::Spectrum random_on(const apxbsp::ExponentLadder& ladder, apxbsp::Rng& rng,
                                  double p) {
  std::vector<apxbsp::Complex> pos, neg;
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    pos.emplace_back(rng.uniform(-1, 1), rng.uniform(-1, 1));
    neg.emplace_back(rng.uniform(-1, 1), rng.uniform(-1, 1));
  }
  return apxbsp::spectrum_on_ladder(ladder, pos, neg, {rng.uniform(-1, 1), 0.0}, p);
}

}  // namespace testing
