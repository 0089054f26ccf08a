// Copyright 2026 The axial-sampler Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Correctness machinery that does not go through the conditional-Beta
// sampler: a rejection-sampling oracle, closed-form moments and t_1 marginal,
// and Kolmogorov-Smirnov statistics.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include <boost/math/special_functions/beta.hpp>
#include <nlohmann/json.hpp>

#include "axial/distributions.hpp"
#include "axial/error.hpp"
#include "axial/matrix.hpp"
#include "axial/rng.hpp"
#include "axial/sampler.hpp"

namespace axial {

/// Two-sided KS critical coefficient at alpha ~= 0.001.
inline constexpr double kKsCoefficient = 1.95;

inline double ks_threshold(std::size_t n) {
  return kKsCoefficient / std::sqrt(static_cast<double>(n));
}

inline double ks_threshold(std::size_t n, std::size_t m) {
  const double dn = static_cast<double>(n);
  const double dm = static_cast<double>(m);
  return kKsCoefficient * std::sqrt((dn + dm) / (dn * dm));
}

/// sup_x |F_n(x) - F(x)| for the empirical CDF of `samples`.
inline double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

/// Two-sample statistic sup_x |F_n(x) - G_m(x)|; ties are stepped together.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

/// Regularized incomplete beta I_x(alpha, beta), the Beta(alpha, beta) CDF.
inline double beta_cdf(double x, double alpha, double beta) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return boost::math::ibeta(alpha, beta, x);
}

/// Law of t_1 = u_1 in the eigenframe: t_1^2 is the mixture
///   π1 Beta(3/2, (p-1)/2) + π2 Beta(1/2, (p+1)/2),
/// π1 = λ_1 / Σλ, π2 = 1 - π1, and the sign of t_1 is fair.
class MarginalT1Density {
 public:
  MarginalT1Density(std::size_t p, std::span<const double> eigenvalues) : p_(p) {
    if (p < 3 || eigenvalues.size() != p)
      throw Error(ErrorCode::InconsistentState, "t_1 marginal needs p >= 3 eigenvalues");
    double total = 0.0;
    for (double l : eigenvalues) total += l;
    if (!(total > 0.0)) throw Error(ErrorCode::ZeroTrace, "trace must be positive");
    double tail = 0.0;
    for (std::size_t k = 1; k < p; ++k) tail += eigenvalues[k];
    weights_ = {eigenvalues[0] / total, tail / total};
  }

  double weight_quadratic() const noexcept { return weights_[0]; }
  double weight_tail() const noexcept { return weights_[1]; }

  double pdf(double t) const {
    if (std::abs(t) > 1.0) return 0.0;
    const double pd = static_cast<double>(p_);
    const double s = 1.0 - t * t;
    const double quad = t * t * std::pow(s, 0.5 * (pd - 3.0)) / boost::math::beta(1.5, 0.5 * (pd - 1.0));
    const double tail = std::pow(s, 0.5 * (pd - 1.0)) / boost::math::beta(0.5, 0.5 * (pd + 1.0));
    return weights_[0] * quad + weights_[1] * tail;
  }

  /// CDF of t_1 on [-1, 1].
  double cdf(double t) const {
    if (t <= -1.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double pd = static_cast<double>(p_);
    const double y = t * t;
    const double h = weights_[0] * beta_cdf(y, 1.5, 0.5 * (pd - 1.0)) +
                     weights_[1] * beta_cdf(y, 0.5, 0.5 * (pd + 1.0));
    return t < 0.0 ? 0.5 * (1.0 - h) : 0.5 * (1.0 + h);
  }

 private:
  std::size_t p_;
  std::array<double, 2> weights_{};
};

struct RejectionResult {
  SampleBatch batch;
  std::uint64_t attempts = 0;
  double acceptance_rate() const {
    return static_cast<double>(batch.count) / static_cast<double>(attempts);
  }
};

inline constexpr std::uint64_t kMaxOracleAttempts = 10'000'000;

/// Independent exact sampler: propose x uniform on the sphere and accept with
/// probability x^T A x / λ_max. Draw i uses its own stream, keyed apart from
/// the conditional sampler's streams for the same seed.
inline RejectionResult rejection_sample(const AxialDensity& density, std::size_t n,
                                        std::uint64_t seed) {
  const double lambda_max = density.lambda_max();
  if (!(lambda_max > 0.0)) throw Error(ErrorCode::ZeroTrace, "largest eigenvalue must be positive");
  const std::size_t p = density.dim();
  RejectionResult out;
  out.batch.dim = p;
  out.batch.count = n;
  out.batch.vectors = Matrix(n, p);
  out.batch.seed = seed;
  out.batch.matrix_fingerprint = fingerprint(density.matrix().values());
  const std::uint64_t key = mix_seed(seed ^ 0x0AC1E5A3u);
  for (std::size_t i = 0; i < n; ++i) {
    RngStream rng(key, i);
    auto x = out.batch.vectors.row(i);
    std::uint64_t tries = 0;
    for (;;) {
      if (++tries > kMaxOracleAttempts)
        throw Error(ErrorCode::OracleStalled, "rejection oracle exceeded attempt limit");
      draw_uniform_sphere(x, rng);
      if (uniform01(rng) * lambda_max < density.matrix().quadratic_form(x)) break;
    }
    out.attempts += tries;
  }
  return out;
}

/// s(x) = x^T A x for every row, snapped to a grid of 1e-12 λ_max so that
/// rounding noise does not register as a difference in law (s is constant
/// when A ∝ I).
inline std::vector<double> quadratic_form_values(const AxialDensity& density,
                                                 const SampleBatch& batch) {
  const double step = 1e-12 * density.lambda_max();
  std::vector<double> s(batch.count);
  for (std::size_t i = 0; i < batch.count; ++i)
    s[i] = std::round(density.matrix().quadratic_form(batch.row(i)) / step) * step;
  return s;
}

/// E[x x^T] = R diag((tr Λ + 2 λ_i) / ((p + 2) tr Λ)) R^T.
inline Matrix second_moment_closed_form(const AxialDensity& density) {
  const auto& dec = density.decomposition();
  const std::size_t p = dec.dim();
  const double tr = dec.trace();
  std::vector<double> diag(p);
  for (std::size_t i = 0; i < p; ++i)
    diag[i] = (tr + 2.0 * dec.eigenvalues[i]) / ((static_cast<double>(p) + 2.0) * tr);
  return dec.rotation * Matrix::diagonal(diag) * dec.rotation.transpose();
}

/// (1/n) Σ x x^T over the rows of a batch.
inline Matrix empirical_second_moment(const SampleBatch& batch) {
  const std::size_t p = batch.dim;
  Matrix m(p, p);
  for (std::size_t r = 0; r < batch.count; ++r) {
    const auto x = batch.row(r);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = i; j < p; ++j) m(i, j) += x[i] * x[j];
  }
  const double inv = 1.0 / static_cast<double>(batch.count);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i; j < p; ++j) {
      m(i, j) *= inv;
      m(j, i) = m(i, j);
    }
  return m;
}

/// Mean of density_value over n uniform-sphere draws; estimates ∫ f dσ = 1.
inline double density_normalization(const AxialDensity& density, std::size_t n,
                                    std::uint64_t seed) {
  RngStream rng(mix_seed(seed ^ 0xD3A5u), 0);
  std::vector<double> x(density.dim());
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    draw_uniform_sphere(std::span<double>(x), rng);
    sum += density.density_value(x);
  }
  return sum / static_cast<double>(n);
}

struct ValidationReport {
  std::string name;
  double statistic = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::size_t n = 0;
  std::uint64_t seed = 0;
};

inline nlohmann::json to_json(const ValidationReport& r) {
  return {{"name", r.name}, {"statistic", r.statistic}, {"threshold", r.threshold},
          {"pass", r.pass}, {"n", r.n},                 {"seed", r.seed}};
}

inline ValidationReport make_report(std::string name, double statistic, double threshold,
                                    std::size_t n, std::uint64_t seed) {
  return {std::move(name), statistic, threshold, statistic <= threshold, n, seed};
}

/// Runs the full check suite on n draws. One report per check:
///   unit_norm, support, t1_marginal_ks (phi_star_ks when p = 2),
///   oracle_ks, second_moment, density_normalization, axial_symmetry.
inline std::vector<ValidationReport> validate_all(const AxialDensity& density, std::size_t n,
                                                  std::uint64_t seed, unsigned threads = 1) {
  if (n < 10) throw Error(ErrorCode::InconsistentState, "validation needs n >= 10");
  const std::size_t p = density.dim();
  std::vector<ValidationReport> reports;

  const SampleBatch batch = sample(density, n, seed, {.capture_traces = true, .threads = threads});

  double worst_norm = 0.0;
  std::size_t outside_support = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = batch.row(i);
    worst_norm = std::max(worst_norm, std::abs(norm(x) - 1.0));
    if (!(density.matrix().quadratic_form(x) > 0.0)) ++outside_support;
  }
  reports.push_back(make_report("unit_norm", worst_norm, 1e-10, n, seed));
  reports.push_back(make_report("support", static_cast<double>(outside_support), 0.0, n, seed));

  const auto& lambda = density.decomposition().eigenvalues;
  if (p >= 3) {
    const MarginalT1Density marginal(p, lambda);
    std::vector<double> t1(n);
    for (std::size_t i = 0; i < n; ++i) t1[i] = batch.traces[i].t.front();
    reports.push_back(make_report("t1_marginal_ks",
                                  ks_statistic(std::move(t1), [&](double t) { return marginal.cdf(t); }),
                                  ks_threshold(n), n, seed));
  } else {
    const AngleCoefficients coef(0.0, 1.0, lambda[0], lambda[1]);
    std::vector<double> phi(n);
    for (std::size_t i = 0; i < n; ++i) phi[i] = batch.traces[i].phi_star;
    reports.push_back(make_report("phi_star_ks",
                                  ks_statistic(std::move(phi), [&](double f) { return 4.0 * coef.cdf(f); }),
                                  ks_threshold(n), n, seed));
  }

  const RejectionResult oracle = rejection_sample(density, n, seed);
  reports.push_back(make_report("oracle_ks",
                                ks_two_sample(quadratic_form_values(density, batch),
                                              quadratic_form_values(density, oracle.batch)),
                                ks_threshold(n, n), n, seed));

  const double moment_err =
      max_abs_diff(empirical_second_moment(batch), second_moment_closed_form(density));
  reports.push_back(make_report("second_moment", moment_err,
                                5.0 / std::sqrt(static_cast<double>(n)), n, seed));

  // Var[f(X)] <= max f under the uniform law, since E[f] = 1.
  const double f_max = static_cast<double>(p) * density.lambda_max() / density.trace();
  reports.push_back(make_report("density_normalization",
                                std::abs(density_normalization(density, n, seed) - 1.0),
                                4.0 * std::sqrt(f_max / static_cast<double>(n)), n, seed));

  const double inv_sqrt_p = 1.0 / std::sqrt(static_cast<double>(p));
  double sign_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double dot = 0.0;
    for (double v : batch.row(i)) dot += v * inv_sqrt_p;
    sign_sum += (dot > 0.0) - (dot < 0.0);
  }
  reports.push_back(make_report("axial_symmetry", std::abs(sign_sum / static_cast<double>(n)),
                                4.0 / std::sqrt(static_cast<double>(n)), n, seed));
  return reports;
}

}  // namespace axial
