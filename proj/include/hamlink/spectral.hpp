#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "hamlink/matrix.hpp"
#include "hamlink/periodic_sequence.hpp"

namespace hamlink {

inline void check_m(long m) {
  if (m < kMinPeriod) throw std::invalid_argument("m: must be >= 5");
}

inline void check_n0(long m, long n0) {
  check_m(m);
  if (n0 < 3 || n0 > m - 2) {
    throw std::invalid_argument("n0: must satisfy 3 <= n0 <= m-2");
  }
}

/**
 * The circulant second-difference matrix: 2 on the diagonal, −1 on the
 * super/sub-diagonals and in the (1,M)/(M,1) corners. Satisfies
 * uᵀAu = Σ_{s=1}^{M} (Δu_s)² with row sums zero, so (1,…,1) spans its kernel.
 */
inline Matrix build_A(long m) {
  check_m(m);
  Matrix a(m);
  for (long i = 0; i < m; ++i) {
    a(i, i) = 2.0;
    a(i, (i + 1) % m) = -1.0;
    a(i, (i + m - 1) % m) = -1.0;
  }
  return a;
}

struct SpectrumA {
  std::vector<double> eigenvalues;  // sorted ascending, closed form
  double lambda_min;                // smallest nonzero: 2(1 − cos(2π/M))
  double lambda_max;
};

/// Closed-form circulant spectrum {2 − 2cos(2πj/M) : j = 0..M−1}.
inline SpectrumA spectrum_A(long m) {
  check_m(m);
  SpectrumA s;
  s.eigenvalues.reserve(static_cast<std::size_t>(m));
  for (long j = 0; j < m; ++j) {
    s.eigenvalues.push_back(
        2.0 - 2.0 * std::cos(2.0 * std::numbers::pi * static_cast<double>(j) /
                             static_cast<double>(m)));
  }
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end());
  s.lambda_min = 2.0 * (1.0 - std::cos(2.0 * std::numbers::pi / static_cast<double>(m)));
  s.lambda_max = s.eigenvalues.back();
  return s;
}

struct MatrixL {
  Matrix l_matrix;
  double gamma_min;  // smallest positive eigenvalue, verified to equal 1
};

/**
 * L encodes Σ v_s² + 2 v_{n0−1} v_{n0} as vᵀLv: the identity with the 2×2
 * block at rows/cols (n0−1, n0) replaced by all-ones. Its spectrum is
 * {0, 2} ∪ {1 ×(M−2)}; γ_min is computed by the eigensolver and checked
 * against 1 rather than hardcoded.
 */
inline MatrixL build_L(long m, long n0) {
  check_n0(m, n0);
  Matrix l = Matrix::identity(m);
  const long i = n0 - 2;  // 0-based row of index n0−1
  const long j = n0 - 1;
  l(i, j) = 1.0;
  l(j, i) = 1.0;

  const auto eigs = jacobi_eigenvalues(l);
  double gamma_min = 0.0;
  for (double ev : eigs) {
    if (ev > 1e-9) {
      gamma_min = ev;
      break;
    }
  }
  if (std::abs(gamma_min - 1.0) > 1e-10) {
    throw std::logic_error("build_L: smallest positive eigenvalue differs from 1");
  }
  // full spectrum check: {0, 1×(M−2), 2}
  if (std::abs(eigs.front()) > 1e-10 || std::abs(eigs.back() - 2.0) > 1e-10) {
    throw std::logic_error("build_L: spectrum is not {0, 1^(M-2), 2}");
  }
  for (std::size_t k = 1; k + 1 < eigs.size(); ++k) {
    if (std::abs(eigs[k] - 1.0) > 1e-10) {
      throw std::logic_error("build_L: spectrum is not {0, 1^(M-2), 2}");
    }
  }
  return MatrixL{l, gamma_min};
}

/**
 * Spectral data for a given (M, n0): the matrices A and L, the closed-form
 * eigenvalue extremes, and orthonormal bases realizing E_M = Y ⊕ Z with
 * Z = span{(1,…,1), e_{n0}} and Y its orthogonal complement
 * {u : Σu_j = 0, u_{n0} = 0}. K = span{(1,…,1)} sits inside Z.
 */
struct SpectralData {
  long m = 0;
  long n0 = 0;
  Matrix a_matrix;
  Matrix l_matrix;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double gamma_min = 0.0;
  std::vector<std::vector<double>> basis_z;  // 2 orthonormal vectors
  std::vector<std::vector<double>> basis_y;  // M−2 orthonormal vectors

  std::vector<double> project_z(const std::vector<double>& u) const {
    return project(basis_z, u);
  }
  std::vector<double> project_y(const std::vector<double>& u) const {
    return project(basis_y, u);
  }

  /// Assemble Σ coeff[k]·basis_y[k]; coefficients live in R^{M−2}.
  std::vector<double> from_y_coords(const std::vector<double>& coeff) const {
    std::vector<double> u(static_cast<std::size_t>(m), 0.0);
    for (std::size_t k = 0; k < basis_y.size(); ++k) {
      for (std::size_t i = 0; i < u.size(); ++i) u[i] += coeff[k] * basis_y[k][i];
    }
    return u;
  }

  std::vector<double> from_z_coords(double c0, double c1) const {
    std::vector<double> u(static_cast<std::size_t>(m), 0.0);
    for (std::size_t i = 0; i < u.size(); ++i) {
      u[i] = c0 * basis_z[0][i] + c1 * basis_z[1][i];
    }
    return u;
  }

private:
  static std::vector<double> project(const std::vector<std::vector<double>>& basis,
                                     const std::vector<double>& u) {
    std::vector<double> p(u.size(), 0.0);
    for (const auto& b : basis) {
      double dot = 0.0;
      for (std::size_t i = 0; i < u.size(); ++i) dot += b[i] * u[i];
      for (std::size_t i = 0; i < u.size(); ++i) p[i] += dot * b[i];
    }
    return p;
  }
};

inline SpectralData decompose(long m, long n0) {
  check_n0(m, n0);
  SpectralData sd;
  sd.m = m;
  sd.n0 = n0;
  sd.a_matrix = build_A(m);
  const auto spec = spectrum_A(m);
  sd.lambda_min = spec.lambda_min;
  sd.lambda_max = spec.lambda_max;
  auto l = build_L(m, n0);
  sd.l_matrix = l.l_matrix;
  sd.gamma_min = l.gamma_min;

  const auto md = static_cast<std::size_t>(m);
  const double inv_sqrt_m = 1.0 / std::sqrt(static_cast<double>(m));

  // z1 = normalized constants; z2 = e_{n0} Gram–Schmidt'ed against z1.
  std::vector<double> z1(md, inv_sqrt_m);
  std::vector<double> z2(md, -1.0 / static_cast<double>(m));
  z2[static_cast<std::size_t>(n0 - 1)] += 1.0;
  {
    double nrm = 0.0;
    for (double x : z2) nrm += x * x;
    nrm = std::sqrt(nrm);
    for (double& x : z2) x /= nrm;
  }
  sd.basis_z = {z1, z2};

  // Y basis: modified Gram–Schmidt over the coordinate vectors, dropping
  // anything that collapses after projection against Z and earlier picks.
  sd.basis_y.reserve(md - 2);
  for (long j = 0; j < m && sd.basis_y.size() < md - 2; ++j) {
    std::vector<double> v(md, 0.0);
    v[static_cast<std::size_t>(j)] = 1.0;
    auto strip = [&](const std::vector<double>& b) {
      double dot = 0.0;
      for (std::size_t i = 0; i < md; ++i) dot += b[i] * v[i];
      for (std::size_t i = 0; i < md; ++i) v[i] -= dot * b[i];
    };
    strip(z1);
    strip(z2);
    for (const auto& b : sd.basis_y) strip(b);
    for (const auto& b : sd.basis_y) strip(b);  // second pass for orthogonality
    strip(z1);
    strip(z2);
    double nrm = 0.0;
    for (double x : v) nrm += x * x;
    nrm = std::sqrt(nrm);
    if (nrm < 1e-8) continue;
    for (double& x : v) x /= nrm;
    sd.basis_y.push_back(std::move(v));
  }
  if (sd.basis_y.size() != md - 2) {
    throw std::logic_error("decompose: failed to build Y basis of dimension M-2");
  }
  return sd;
}

}  // namespace hamlink
