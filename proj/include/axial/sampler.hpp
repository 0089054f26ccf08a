// Copyright 2026 The axial-sampler Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Exact sampler for f(x) ∝ x^T A x on the unit sphere S^{p-1}.
//
// Sampling happens in the eigenframe of A = R Λ R^T. A point u on the sphere
// is parameterized by t_1..t_{p-2} in [-1, 1] and an angle φ:
//
//   u_j     = sqrt(b_j) t_j              j = 1..p-2
//   u_{p-1} = sqrt(b_{p-1}) cos φ
//   u_p     = sqrt(b_{p-1}) sin φ
//
// with b_1 = 1, b_{j+1} = b_j (1 - t_j^2) and a_1 = 0,
// a_{j+1} = a_j + λ_j b_j t_j^2. Each t_j^2 given its predecessors is a
// three-component Beta mixture, and φ is drawn by inverting its CDF on one
// quadrant. The draw is x = R u.
//
// Indices below are zero-based: level k handles t_{k+1}.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <numbers>
#include <span>
#include <thread>
#include <utility>
#include <vector>

#include "axial/distributions.hpp"
#include "axial/error.hpp"
#include "axial/matrix.hpp"
#include "axial/rng.hpp"
#include "axial/spectral.hpp"

namespace axial {

/// Running (a_j, b_j) pair. Starts at a = 0, b = 1.
struct RecurrenceState {
  double a = 0.0;
  double b = 1.0;

  /// State after accepting t at a level with eigenvalue lambda.
  RecurrenceState advance(double t, double lambda) const {
    const double tt = t * t;
    return {a + lambda * b * tt, b * (1.0 - tt)};
  }
};

/// Mixture components for t_j^2, in the order of the mixing weights.
enum class Component : int { Constant = 1, Quadratic = 2, Tail = 3 };

/// Beta shapes (alpha, beta) of component `c` at zero-based level k.
inline std::pair<double, double> component_shapes(Component c, std::size_t p, std::size_t level) {
  const double m = static_cast<double>(p - level - 1);  // p - j
  switch (c) {
    case Component::Constant: return {0.5, 0.5 * m};
    case Component::Quadratic: return {1.5, 0.5 * m};
    case Component::Tail: return {0.5, 0.5 * (m + 2.0)};
  }
  return {0.0, 0.0};
}

/// Normalized mixing weights (constant, quadratic, tail) for t_{level+1}:
///   a (p-j+1) : b λ_j : b Σ_{k>j} λ_k
/// `suffix_sums` must hold at least level + 2 entries.
inline std::array<double, 3> mixture_weights(std::size_t level, RecurrenceState state,
                                             std::span<const double> eigenvalues,
                                             std::span<const double> suffix_sums) {
  const std::size_t p = eigenvalues.size();
  if (level + 3 > p || suffix_sums.size() < level + 2)
    throw Error(ErrorCode::InconsistentState, "mixture level out of range");
  const std::array<double, 3> raw = {state.a * static_cast<double>(p - level),
                                     state.b * eigenvalues[level],
                                     state.b * suffix_sums[level + 1]};
  const double total = raw[0] + raw[1] + raw[2];
  if (!(total > 0.0) || !std::isfinite(total))
    throw Error(ErrorCode::DegenerateState, "mixture weights vanish (a_j = b_j = 0)");
  return {raw[0] / total, raw[1] / total, raw[2] / total};
}

/// One conditional draw of t_j and the random choices behind it.
struct TDraw {
  double t = 0.0;
  Component choice = Component::Constant;
  double beta_value = 0.0;
  int sign = 1;
  RecurrenceState next;
};

/// Draws t_{level+1} | t_1..t_level. RNG use: one categorical word, the beta
/// variate, one sign word.
template <WordSource G>
TDraw draw_t(std::size_t level, RecurrenceState state, std::span<const double> eigenvalues,
             std::span<const double> suffix_sums, G& rng) {
  const auto weights = mixture_weights(level, state, eigenvalues, suffix_sums);
  TDraw d;
  d.choice = static_cast<Component>(static_cast<int>(draw_categorical(weights, rng)) + 1);
  const auto [alpha, beta] = component_shapes(d.choice, eigenvalues.size(), level);
  d.beta_value = draw_beta(alpha, beta, rng);
  d.sign = draw_sign(rng);
  d.t = d.sign * std::sqrt(d.beta_value);
  d.next = state.advance(d.t, eigenvalues[level]);
  return d;
}

/// Coefficients of the last-angle CDF F(φ) = (φ + (c1/c2) sin 2φ) / 2π.
struct AngleCoefficients {
  double c1;  ///< b (λ_{p-1} - λ_p) / 4
  double c2;  ///< a + b (λ_{p-1} + λ_p) / 2

  AngleCoefficients(double a, double b, double lambda_pm1, double lambda_p)
      : c1(0.25 * b * (lambda_pm1 - lambda_p)), c2(a + 0.5 * b * (lambda_pm1 + lambda_p)) {}

  double cdf(double phi) const {
    return (phi + c1 * std::sin(2.0 * phi) / c2) / (2.0 * std::numbers::pi);
  }
  double pdf(double phi) const {
    return (1.0 + 2.0 * c1 * std::cos(2.0 * phi) / c2) / (2.0 * std::numbers::pi);
  }
};

inline constexpr double kAngleBisectionWidth = 1e-13;
inline constexpr double kAngleResidualTolerance = 1e-12;

/// Root φ* in [0, π/2] of F(φ*) = U/4. F is nondecreasing there because
/// |2 c1 / c2| <= 1 for nonnegative eigenvalues, so bisection always brackets.
inline double solve_phi_star(double a, double b, double lambda_pm1, double lambda_p, double u) {
  const AngleCoefficients coef(a, b, lambda_pm1, lambda_p);
  if (!(coef.c2 > 0.0) || !std::isfinite(coef.c2))
    throw Error(ErrorCode::DegenerateAngle, "angle normalizer a + b(λ_{p-1}+λ_p)/2 is not positive");
  constexpr double kHalfPi = 0.5 * std::numbers::pi;
  if (u <= 0.0) return 0.0;
  if (std::abs(coef.c1) / coef.c2 < 1e-14) return kHalfPi * u;

  const double target = 0.25 * u;
  double lo = 0.0;
  double hi = kHalfPi;
  while (hi - lo > kAngleBisectionWidth) {
    const double mid = 0.5 * (lo + hi);
    if (coef.cdf(mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  const double root = 0.5 * (lo + hi);
  if (std::abs(coef.cdf(root) - target) > kAngleResidualTolerance)
    throw Error(ErrorCode::DegenerateAngle, "angle root residual too large");
  return root;
}

/// Maps φ* to one of {φ*, -φ*, π+φ*, π-φ*} (mod 2π) with equal probability.
/// Consumes one word.
template <WordSource G>
double randomize_quadrant(double phi_star, G& rng) {
  constexpr double kPi = std::numbers::pi;
  switch (rng.next_u64() >> 62) {
    case 0: return phi_star;
    case 1: return phi_star == 0.0 ? 0.0 : 2.0 * kPi - phi_star;
    case 2: return kPi + phi_star;
    default: return kPi - phi_star;
  }
}

/// Builds u from t_1..t_{p-2}, φ and b_1..b_{p-1}. `out` has p entries.
inline void assemble_u(std::span<const double> t, double phi, std::span<const double> b,
                       std::span<double> out) {
  const std::size_t p = out.size();
  if (p < 2 || t.size() + 2 != p || b.size() + 1 != p)
    throw Error(ErrorCode::InconsistentState, "t, b and u lengths do not agree");
  if (b[0] != 1.0) throw Error(ErrorCode::InconsistentState, "b_1 must be 1");
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (std::abs(b[k + 1] - b[k] * (1.0 - t[k] * t[k])) > 1e-12)
      throw Error(ErrorCode::InconsistentState, "b does not follow b_{j+1} = b_j (1 - t_j^2)");
    out[k] = std::sqrt(b[k]) * t[k];
  }
  const double r = std::sqrt(b[p - 2]);
  out[p - 2] = r * std::cos(phi);
  out[p - 1] = r * std::sin(phi);
}

inline std::vector<double> assemble_u(std::span<const double> t, double phi,
                                      std::span<const double> b) {
  std::vector<double> u(t.size() + 2);
  assemble_u(t, phi, b, u);
  return u;
}

/// Everything one draw decided, for tests and the --trace output.
struct DrawTrace {
  std::vector<double> t;               ///< t_1..t_{p-2}
  std::vector<int> mixture_choice;     ///< X_j in {1, 2, 3}
  std::vector<double> beta_value;      ///< B*_j
  std::vector<int> sign;               ///< D_j
  std::vector<double> a;               ///< a_1..a_{p-1}, in units of λ_max
  std::vector<double> b;               ///< b_1..b_{p-1}
  double u_phi = 0.0;                  ///< U_{p-1}
  double phi_star = 0.0;
  double phi = 0.0;
  std::vector<double> u;
  std::vector<double> x;
};

/// Fingerprint of a matrix: FNV-1a over the dimension and the IEEE bit
/// patterns of the entries, row-major.
inline std::uint64_t fingerprint(const Matrix& m) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&h](std::uint64_t word) {
    for (int i = 0; i < 8; ++i) {
      h ^= (word >> (8 * i)) & 0xffu;
      h *= 0x100000001b3ull;
    }
  };
  mix(m.rows());
  for (double v : m.data()) mix(std::bit_cast<std::uint64_t>(v));
  return h;
}

struct SampleBatch {
  std::size_t dim = 0;
  std::size_t count = 0;
  Matrix vectors;  ///< count x dim, one draw per row
  std::uint64_t seed = 0;
  std::uint64_t matrix_fingerprint = 0;
  std::vector<DrawTrace> traces;  ///< empty unless requested

  std::span<const double> row(std::size_t i) const { return vectors.row(i); }
};

struct SampleOptions {
  bool capture_traces = false;
  /// Worker threads; 0 or 1 runs on the calling thread. Output is identical
  /// for every value.
  unsigned threads = 1;
};

/// The density p/tr(A) x^T A x with respect to the uniform probability
/// measure on S^{p-1}, together with the eigenframe the sampler works in.
class AxialDensity {
 public:
  explicit AxialDensity(const SymmetricMatrix& matrix)
      : AxialDensity(eigen_decompose(matrix), matrix) {}

  /// Uses the given eigenbasis as is; A is rebuilt as R Λ R^T.
  static AxialDensity from_decomposition(SpectralDecomposition decomposition) {
    Matrix a = decomposition.reconstruct();
    const std::size_t p = a.rows();
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = i + 1; j < p; ++j) a(j, i) = a(i, j);
    return AxialDensity(std::move(decomposition), ingest_matrix(a));
  }

  std::size_t dim() const noexcept { return decomposition_.dim(); }
  const SpectralDecomposition& decomposition() const noexcept { return decomposition_; }
  const SymmetricMatrix& matrix() const noexcept { return matrix_; }
  std::span<const double> eigenvalues() const noexcept { return decomposition_.eigenvalues; }
  /// λ / λ_max, the spectrum the sampler works with. Every sampling step is
  /// homogeneous of degree 0 in Λ, so this only removes the overall scale.
  std::span<const double> relative_eigenvalues() const noexcept { return relative_; }
  double lambda_max() const noexcept { return decomposition_.eigenvalues.front(); }
  double trace() const noexcept { return trace_; }
  /// Concentration of the axial cardioid form 1 + κ(x^T A x - tr(A)/p) that
  /// reduces to this density; κ tr(A) / p = 1.
  double kappa() const noexcept { return norm_const_; }
  double norm_const() const noexcept { return norm_const_; }

  double density_value(std::span<const double> x) const {
    if (x.size() != dim()) throw Error(ErrorCode::InconsistentState, "vector has wrong dimension");
    if (!(std::abs(norm(x) - 1.0) < 1e-8))
      throw Error(ErrorCode::NotOnSphere, "vector is not unit norm");
    return norm_const_ * matrix_.quadratic_form(x);
  }

  /// Reusable buffers for allocation-free draws.
  struct Workspace {
    std::vector<double> t, b, u;
    explicit Workspace(std::size_t p) : t(p - 2), b(p - 1), u(p) {}
  };

  /// One draw into `x`. RNG use is fixed: per level the categorical word,
  /// the beta variate and a sign word; then U_{p-1}; then the quadrant word.
  template <WordSource G>
  void draw(G& rng, std::span<double> x, Workspace& ws, DrawTrace* trace = nullptr) const {
    const std::size_t p = dim();
    const auto& lambda = relative_;
    const auto& suffix = relative_suffix_;
    if (trace) *trace = DrawTrace{};

    RecurrenceState state;
    ws.b[0] = 1.0;
    for (std::size_t k = 0; k + 2 < p; ++k) {
      if (trace) {
        trace->a.push_back(state.a);
        trace->b.push_back(state.b);
      }
      const TDraw d = draw_t(k, state, lambda, suffix, rng);
      ws.t[k] = d.t;
      state = d.next;
      ws.b[k + 1] = state.b;
      if (trace) {
        trace->t.push_back(d.t);
        trace->mixture_choice.push_back(static_cast<int>(d.choice));
        trace->beta_value.push_back(d.beta_value);
        trace->sign.push_back(d.sign);
      }
    }

    const double u_phi = uniform01(rng);
    const double phi_star = solve_phi_star(state.a, state.b, lambda[p - 2], lambda[p - 1], u_phi);
    const double phi = randomize_quadrant(phi_star, rng);

    // Equivalent to assemble_u without the consistency checks, which hold by
    // construction here.
    for (std::size_t k = 0; k + 2 < p; ++k) ws.u[k] = std::sqrt(ws.b[k]) * ws.t[k];
    const double r = std::sqrt(ws.b[p - 2]);
    ws.u[p - 2] = r * std::cos(phi);
    ws.u[p - 1] = r * std::sin(phi);
    multiply(decomposition_.rotation, ws.u, x);

    if (trace) {
      trace->a.push_back(state.a);
      trace->b.push_back(state.b);
      trace->u_phi = u_phi;
      trace->phi_star = phi_star;
      trace->phi = phi;
      trace->u = ws.u;
      trace->x.assign(x.begin(), x.end());
    }
  }

 private:
  AxialDensity(SpectralDecomposition decomposition, SymmetricMatrix matrix)
      : decomposition_(std::move(decomposition)),
        matrix_(std::move(matrix)),
        trace_(matrix_.values().trace()),
        norm_const_(static_cast<double>(dim()) / trace_) {
    if (!(trace_ > 0.0)) throw Error(ErrorCode::ZeroTrace, "trace must be positive");
    relative_ = decomposition_.eigenvalues;
    for (double& l : relative_) l /= lambda_max();
    relative_suffix_ = suffix_sums_of(relative_);
  }

  SpectralDecomposition decomposition_;
  SymmetricMatrix matrix_;
  double trace_;
  double norm_const_;
  std::vector<double> relative_;
  std::vector<double> relative_suffix_;
};

/// n independent draws. Draw i reads RngStream(seed, i), so the batch does not
/// depend on how draws are split across threads.
inline SampleBatch sample(const AxialDensity& density, std::size_t n, std::uint64_t seed,
                          const SampleOptions& options = {}) {
  if (n == 0) throw Error(ErrorCode::InconsistentState, "sample count must be at least 1");
  const std::size_t p = density.dim();
  SampleBatch batch;
  batch.dim = p;
  batch.count = n;
  batch.vectors = Matrix(n, p);
  batch.seed = seed;
  batch.matrix_fingerprint = fingerprint(density.matrix().values());
  if (options.capture_traces) batch.traces.resize(n);

  auto run = [&](std::size_t begin, std::size_t end) {
    AxialDensity::Workspace ws(p);
    for (std::size_t i = begin; i < end; ++i) {
      RngStream rng(seed, i);
      density.draw(rng, batch.vectors.row(i), ws,
                   options.capture_traces ? &batch.traces[i] : nullptr);
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(options.threads, 1, n);
  if (workers == 1) {
    run(0, n);
    return batch;
  }

  std::vector<std::jthread> pool;
  std::vector<std::exception_ptr> errors(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, w, begin, end] {
      try {
        run(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  pool.clear();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return batch;
}

}  // namespace axial
