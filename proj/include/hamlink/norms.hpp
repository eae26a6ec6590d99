#pragma once

#include <cmath>
#include <stdexcept>

#include "hamlink/periodic_sequence.hpp"

namespace hamlink {

/**
 * Equivalence constants for ‖·‖_β against the Euclidean norm on E_M:
 * c1·‖u‖ ≤ ‖u‖_β ≤ c2·‖u‖ for every u. The stored constants are sharp:
 * for β ≥ 2, c1 = M^{1/β−1/2} (equality at constant sequences) and
 * c2 = 1 (equality at single spikes); the roles swap for β < 2.
 */
struct NormPair {
  double c1;
  double c2;
  double beta;
};

inline double norm2(const PeriodicSequence& u) {
  double s = 0.0;
  for (double x : u.values()) s += x * x;
  return std::sqrt(s);
}

inline double norm_beta(const PeriodicSequence& u, double beta) {
  if (beta < 1.0) {
    throw std::invalid_argument("norm_beta: beta must be >= 1");
  }
  double s = 0.0;
  for (double x : u.values()) s += std::pow(std::abs(x), beta);
  return std::pow(s, 1.0 / beta);
}

inline NormPair norm_equivalence_constants(long m, double beta) {
  if (beta < 1.0) {
    throw std::invalid_argument("norm_equivalence_constants: beta must be >= 1");
  }
  const double p = std::pow(static_cast<double>(m), 1.0 / beta - 0.5);
  return NormPair{std::min(1.0, p), std::max(1.0, p), beta};
}

struct Norms {
  double norm2;
  double norm_beta;
  NormPair pair;
};

/// Both norms of u plus the sharp sandwich constants for this (M, β).
inline Norms norms(const PeriodicSequence& u, double beta) {
  return Norms{norm2(u), norm_beta(u, beta),
               norm_equivalence_constants(u.period(), beta)};
}

}  // namespace hamlink
