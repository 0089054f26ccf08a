// Copyright 2026 The axial-sampler Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <span>

#include "axial/error.hpp"

// The variate generators below are written out rather than taken from
// <random> because the standard distributions are implementation-defined and
// would break stream reproducibility across toolchains.

namespace axial {

template <class G>
concept WordSource = requires(G& g) {
  { g.next_u64() } -> std::same_as<std::uint64_t>;
};

/// Uniform on [0, 1) with 53 random bits. Consumes one word.
template <WordSource G>
double uniform01(G& rng) {
  return static_cast<double>(rng.next_u64() >> 11) * 0x1.0p-53;
}

/// Uniform on the open interval (0, 1). Consumes one word.
template <WordSource G>
double uniform_open01(G& rng) {
  return (static_cast<double>(rng.next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

/// Fair sign in {-1, +1}. Consumes one word.
template <WordSource G>
int draw_sign(G& rng) {
  return (rng.next_u64() >> 63) != 0 ? 1 : -1;
}

/// Index i with probability weights[i] / sum(weights), by inverse-CDF walk on
/// a single uniform. Zero-weight entries are never returned.
template <WordSource G>
std::size_t draw_categorical(std::span<const double> weights, G& rng) {
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w)) throw Error(ErrorCode::NegativeWeight, "non-finite weight");
    if (w < 0.0) throw Error(ErrorCode::NegativeWeight, "negative weight");
    total += w;
  }
  if (!(total > 0.0)) throw Error(ErrorCode::AllZeroWeights, "weights sum to zero");

  const double target = uniform01(rng) * total;
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    last_positive = i;
    cumulative += weights[i];
    if (target < cumulative) return i;
  }
  return last_positive;  // target rounded past the final partial sum
}

/// Standard normal by the Marsaglia polar method; the second variate of each
/// accepted pair is discarded so the stream carries no hidden state.
template <WordSource G>
double draw_normal(G& rng) {
  for (;;) {
    const double u = 2.0 * uniform01(rng) - 1.0;
    const double v = 2.0 * uniform01(rng) - 1.0;
    const double s = u * u + v * v;
    if (s >= 1.0 || s == 0.0) continue;
    return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

/// Gamma(shape, 1). Marsaglia-Tsang squeeze for shape >= 1; for shape < 1
/// the boost Gamma(shape + 1) * U^(1/shape).
template <WordSource G>
double draw_gamma(double shape, G& rng) {
  if (!(shape > 0.0) || !std::isfinite(shape))
    throw Error(ErrorCode::InvalidShape, "gamma shape must be positive and finite");
  if (shape < 1.0) {
    const double g = draw_gamma(shape + 1.0, rng);
    return g * std::pow(uniform_open01(rng), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = draw_normal(rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform_open01(rng);
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

/// Beta(alpha, beta) as X / (X + Y) with X ~ Gamma(alpha), Y ~ Gamma(beta).
template <WordSource G>
double draw_beta(double alpha, double beta, G& rng) {
  if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta))
    throw Error(ErrorCode::InvalidShape, "beta shapes must be positive and finite");
  const double x = draw_gamma(alpha, rng);
  const double y = draw_gamma(beta, rng);
  return x / (x + y);
}

/// Uniform point on S^{p-1} as a normalized standard Gaussian vector.
template <WordSource G>
void draw_uniform_sphere(std::span<double> out, G& rng) {
  for (;;) {
    double ss = 0.0;
    for (double& v : out) {
      v = draw_normal(rng);
      ss += v * v;
    }
    if (ss == 0.0) continue;
    const double inv = 1.0 / std::sqrt(ss);
    for (double& v : out) v *= inv;
    return;
  }
}

}  // namespace axial
