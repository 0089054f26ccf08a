// Copyright 2026 The axial-sampler Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "axial/error.hpp"
#include "axial/matrix.hpp"

namespace axial {

/// Eigenvalues in [-kPsdTolerance * max(1, lambda_max), 0) are clamped to 0.
inline constexpr double kPsdTolerance = 1e-10;
/// Largest accepted asymmetry relative to max|A|.
inline constexpr double kAsymmetryTolerance = 1e-6;

/// A symmetric matrix that passed ingest: square, p >= 2, finite, and exactly
/// symmetric. Positive semi-definiteness is checked by eigen_decompose.
class SymmetricMatrix {
 public:
  const Matrix& values() const noexcept { return values_; }
  std::size_t dim() const noexcept { return values_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return values_(i, j); }
  /// max |A - A^T| / 2 of the raw input.
  double asymmetry() const noexcept { return asymmetry_; }

  /// Quadratic form x^T A x.
  double quadratic_form(std::span<const double> x) const {
    const std::size_t p = dim();
    double acc = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
      const auto r = values_.row(i);
      double ri = 0.0;
      for (std::size_t j = 0; j < p; ++j) ri += r[j] * x[j];
      acc += x[i] * ri;
    }
    return acc;
  }

 private:
  friend SymmetricMatrix ingest_matrix(const Matrix& raw);
  SymmetricMatrix(Matrix values, double asymmetry)
      : values_(std::move(values)), asymmetry_(asymmetry) {}

  Matrix values_;
  double asymmetry_ = 0.0;
};

inline SymmetricMatrix ingest_matrix(const Matrix& raw) {
  if (raw.rows() != raw.cols())
    throw Error(ErrorCode::NonSquare, "matrix is " + std::to_string(raw.rows()) + "x" +
                                          std::to_string(raw.cols()));
  const std::size_t p = raw.rows();
  if (p < 2) throw Error(ErrorCode::DimensionTooSmall, "dimension must be at least 2");
  for (double v : raw.data())
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "matrix has non-finite entries");

  Matrix sym(p, p);
  double asym = 0.0;
  for (std::size_t i = 0; i < p; ++i) {
    sym(i, i) = raw(i, i);
    for (std::size_t j = i + 1; j < p; ++j) {
      const double avg = 0.5 * (raw(i, j) + raw(j, i));
      asym = std::max(asym, 0.5 * std::abs(raw(i, j) - raw(j, i)));
      sym(i, j) = avg;
      sym(j, i) = avg;
    }
  }
  if (asym > kAsymmetryTolerance * raw.max_abs())
    throw Error(ErrorCode::AsymmetryTooLarge,
                "max |A - A^T|/2 = " + std::to_string(asym) + " exceeds tolerance");
  return SymmetricMatrix(std::move(sym), asym);
}

inline SymmetricMatrix ingest_matrix(const std::vector<std::vector<double>>& rows) {
  const std::size_t p = rows.size();
  for (const auto& r : rows)
    if (r.size() != p)
      throw Error(ErrorCode::NonSquare, "row length " + std::to_string(r.size()) +
                                            " does not match row count " + std::to_string(p));
  Matrix m(p, p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) m(i, j) = rows[i][j];
  return ingest_matrix(m);
}

/// A = R diag(lambda) R^T with lambda in descending order.
struct SpectralDecomposition {
  Matrix rotation;                  ///< columns are eigenvectors
  std::vector<double> eigenvalues;  ///< descending, all >= 0
  /// suffix_sums[j] = sum_{k >= j} eigenvalues[k]; one extra trailing zero so
  /// suffix_sums[p] is valid.
  std::vector<double> suffix_sums;

  std::size_t dim() const noexcept { return eigenvalues.size(); }
  double trace() const noexcept { return suffix_sums.front(); }

  Matrix reconstruct() const {
    const std::size_t p = dim();
    Matrix out(p, p);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < p; ++j) {
        double acc = 0.0;
        for (std::size_t k = 0; k < p; ++k)
          acc += rotation(i, k) * eigenvalues[k] * rotation(j, k);
        out(i, j) = acc;
      }
    return out;
  }
};

inline std::vector<double> suffix_sums_of(const std::vector<double>& eigenvalues) {
  std::vector<double> sums(eigenvalues.size() + 1, 0.0);
  for (std::size_t j = eigenvalues.size(); j-- > 0;) sums[j] = sums[j + 1] + eigenvalues[j];
  return sums;
}

/// Assembles a decomposition from given eigenpairs, sorting to descending
/// order and applying the PSD clamp. Used by eigen_decompose and by callers
/// that already hold an eigenbasis.
inline SpectralDecomposition make_decomposition(Matrix rotation, std::vector<double> eigenvalues) {
  const std::size_t p = eigenvalues.size();
  if (rotation.rows() != p || rotation.cols() != p)
    throw Error(ErrorCode::InconsistentState, "rotation shape does not match eigenvalue count");
  if (p < 2) throw Error(ErrorCode::DimensionTooSmall, "dimension must be at least 2");

  std::vector<std::size_t> order(p);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return eigenvalues[a] > eigenvalues[b]; });

  SpectralDecomposition out{Matrix(p, p), std::vector<double>(p), {}};
  for (std::size_t k = 0; k < p; ++k) {
    out.eigenvalues[k] = eigenvalues[order[k]];
    for (std::size_t i = 0; i < p; ++i) out.rotation(i, k) = rotation(i, order[k]);
  }

  const double band = kPsdTolerance * std::max(1.0, out.eigenvalues.front());
  for (double& lambda : out.eigenvalues) {
    if (lambda < -band)
      throw Error(ErrorCode::NotPositiveSemiDefinite,
                  "eigenvalue " + std::to_string(lambda) + " is negative");
    if (lambda < 0.0) lambda = 0.0;
  }
  out.suffix_sums = suffix_sums_of(out.eigenvalues);
  if (!(out.trace() > 0.0)) throw Error(ErrorCode::ZeroTrace, "trace must be positive");
  return out;
}

namespace detail {

// One cyclic Jacobi sweep over the strict upper triangle in row order.
// Returns the number of rotations applied.
inline int jacobi_sweep(Matrix& a, Matrix& v, int sweep, double scale) {
  const std::size_t n = a.rows();
  int rotations = 0;
  for (std::size_t p = 0; p + 1 < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      const double apq = a(p, q);
      if (apq == 0.0) continue;
      const double app = a(p, p);
      const double aqq = a(q, q);
      const double g = 100.0 * std::abs(apq);
      // Off-diagonal below the rounding of both diagonal entries, or
      // negligible against the whole matrix: drop it.
      if ((sweep > 3 && std::abs(app) + g == std::abs(app) && std::abs(aqq) + g == std::abs(aqq)) ||
          std::abs(apq) <= 1e-18 * scale) {
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        continue;
      }

      const double h = aqq - app;
      double t;
      if (std::abs(h) + g == std::abs(h)) {
        t = apq / h;
      } else {
        const double theta = 0.5 * h / apq;
        t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        if (theta < 0.0) t = -t;
      }
      const double c = 1.0 / std::sqrt(1.0 + t * t);
      const double s = t * c;
      const double tau = s / (1.0 + c);

      a(p, p) = app - t * apq;
      a(q, q) = aqq + t * apq;
      a(p, q) = 0.0;
      a(q, p) = 0.0;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == p || r == q) continue;
        const double arp = a(r, p);
        const double arq = a(r, q);
        const double new_rp = arp - s * (arq + tau * arp);
        const double new_rq = arq + s * (arp - tau * arq);
        a(r, p) = new_rp;
        a(p, r) = new_rp;
        a(r, q) = new_rq;
        a(q, r) = new_rq;
      }
      for (std::size_t r = 0; r < n; ++r) {
        const double vrp = v(r, p);
        const double vrq = v(r, q);
        v(r, p) = vrp - s * (vrq + tau * vrp);
        v(r, q) = vrq + s * (vrp - tau * vrq);
      }
      ++rotations;
    }
  }
  return rotations;
}

}  // namespace detail

/// Cyclic Jacobi eigendecomposition. Fixed sweep order and no pivot
/// randomization, so identical input gives identical bits.
inline SpectralDecomposition eigen_decompose(const SymmetricMatrix& input) {
  constexpr int kMaxSweeps = 100;
  const std::size_t n = input.dim();
  Matrix a = input.values();
  Matrix v = Matrix::identity(n);

  double frob = 0.0;
  for (double x : a.data()) frob += x * x;
  frob = std::sqrt(frob);

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (detail::jacobi_sweep(a, v, sweep, frob) == 0) break;
  }

  std::vector<double> eigenvalues(n);
  for (std::size_t i = 0; i < n; ++i) eigenvalues[i] = a(i, i);
  return make_decomposition(std::move(v), std::move(eigenvalues));
}

}  // namespace axial
