#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace hamlink {

/// Dense row-major square matrix, sized for desk-scale spectral work (M ≤ 64
/// in practice; nothing enforces an upper bound).
class Matrix {
public:
  Matrix() : n_(0) {}
  explicit Matrix(long n) : n_(n), data_(static_cast<std::size_t>(n * n), 0.0) {
    if (n <= 0) throw std::invalid_argument("Matrix: dimension must be positive");
  }

  long size() const { return n_; }

  double& operator()(long i, long j) { return data_[idx(i, j)]; }
  double operator()(long i, long j) const { return data_[idx(i, j)]; }

  std::vector<double> multiply(const std::vector<double>& x) const {
    std::vector<double> y(static_cast<std::size_t>(n_), 0.0);
    for (long i = 0; i < n_; ++i) {
      double s = 0.0;
      for (long j = 0; j < n_; ++j) s += (*this)(i, j) * x[static_cast<std::size_t>(j)];
      y[static_cast<std::size_t>(i)] = s;
    }
    return y;
  }

  double quadratic_form(const std::vector<double>& x) const {
    double s = 0.0;
    for (long i = 0; i < n_; ++i) {
      double row = 0.0;
      for (long j = 0; j < n_; ++j) row += (*this)(i, j) * x[static_cast<std::size_t>(j)];
      s += x[static_cast<std::size_t>(i)] * row;
    }
    return s;
  }

  static Matrix identity(long n) {
    Matrix m(n);
    for (long i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return std::sqrt(s);
  }

private:
  std::size_t idx(long i, long j) const {
    return static_cast<std::size_t>(i * n_ + j);
  }

  long n_;
  std::vector<double> data_;
};

struct EigenSystem {
  std::vector<double> eigenvalues;            // ascending
  std::vector<std::vector<double>> eigenvectors;  // eigenvectors[k] pairs with eigenvalues[k]
};

/**
 * Cyclic Jacobi rotations for a dense symmetric matrix. Sweeps continue until
 * the off-diagonal Frobenius norm drops below 1e−13 times the matrix norm.
 * Deterministic, and accurate to near machine precision at these sizes.
 */
inline EigenSystem jacobi_eigensystem(const Matrix& a_in, long max_sweeps = 64) {
  const long n = a_in.size();
  Matrix a = a_in;
  Matrix v = Matrix::identity(n);

  auto off_norm = [&]() {
    double s = 0.0;
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  const double stop = 1e-13 * (a.frobenius_norm() + 1e-300);
  for (long sweep = 0; sweep < max_sweeps && off_norm() > stop; ++sweep) {
    for (long p = 0; p < n - 1; ++p) {
      for (long q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) == 0.0) continue;
        const double app = a(p, p), aqq = a(q, q);
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (long k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (long k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (long k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<long> order(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  for (long i = 0; i < n; ++i) {  // insertion sort keeps ties deterministic
    long k = i;
    for (long j = i + 1; j < n; ++j) {
      if (a(order[static_cast<std::size_t>(j)], order[static_cast<std::size_t>(j)]) <
          a(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]))
        k = j;
    }
    std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(k)]);
  }

  EigenSystem out;
  out.eigenvalues.resize(static_cast<std::size_t>(n));
  out.eigenvectors.assign(static_cast<std::size_t>(n),
                          std::vector<double>(static_cast<std::size_t>(n)));
  for (long i = 0; i < n; ++i) {
    const long src = order[static_cast<std::size_t>(i)];
    out.eigenvalues[static_cast<std::size_t>(i)] = a(src, src);
    for (long k = 0; k < n; ++k)
      out.eigenvectors[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = v(k, src);
  }
  return out;
}

inline std::vector<double> jacobi_eigenvalues(const Matrix& a) {
  return jacobi_eigensystem(a).eigenvalues;
}

/// Gaussian elimination with partial pivoting; empty optional on a pivot
/// smaller than 1e−12 times the matrix scale.
inline std::optional<std::vector<double>> solve_linear(Matrix a, std::vector<double> rhs) {
  const long n = a.size();
  const double scale = a.frobenius_norm() + 1e-300;
  for (long col = 0; col < n; ++col) {
    long piv = col;
    for (long r = col + 1; r < n; ++r) {
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    }
    if (std::abs(a(piv, col)) < 1e-12 * scale) return std::nullopt;
    if (piv != col) {
      for (long c = 0; c < n; ++c) std::swap(a(col, c), a(piv, c));
      std::swap(rhs[static_cast<std::size_t>(col)], rhs[static_cast<std::size_t>(piv)]);
    }
    for (long r = col + 1; r < n; ++r) {
      const double f = a(r, col) / a(col, col);
      if (f == 0.0) continue;
      for (long c = col; c < n; ++c) a(r, c) -= f * a(col, c);
      rhs[static_cast<std::size_t>(r)] -= f * rhs[static_cast<std::size_t>(col)];
    }
  }
  std::vector<double> x(static_cast<std::size_t>(n), 0.0);
  for (long r = n - 1; r >= 0; --r) {
    double s = rhs[static_cast<std::size_t>(r)];
    for (long c = r + 1; c < n; ++c) s -= a(r, c) * x[static_cast<std::size_t>(c)];
    x[static_cast<std::size_t>(r)] = s / a(r, r);
  }
  return x;
}

}  // namespace hamlink
