#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "hamlink/periodic_sequence.hpp"
#include "hamlink/spectral.hpp"

namespace hamlink {

struct PotentialFlags {
  bool autonomous = false;        // no n-dependence
  bool even = false;              // F(n,−x,−y,−z) = F(n,x,y,z)
  bool shift_invariant = false;   // F(n+1,·) = F(n,·)
};

/**
 * The potential F(n, x, y, z) of the system together with its analytic
 * gradient (∂F/∂x, ∂F/∂y, ∂F/∂z). eval must be M-periodic in n; the flags
 * declare symmetries the construction guarantees. When the potential is of
 * the form F ≤ −d1·(|x|^β+|y|^β+|z|^β) by construction, d4_form is set and
 * (d4_d1, d4_beta) carry witnesses for that bound.
 */
struct PotentialSpec {
  long period = 0;
  std::function<double(long n, double x, double y, double z)> eval;
  std::function<std::array<double, 3>(long n, double x, double y, double z)> grad;
  PotentialFlags flags;
  bool d4_form = false;
  double d4_d1 = 0.0;
  double d4_beta = 0.0;
};

/// |x|^p with sign-correct derivative p|x|^{p−1}sign(x); C¹ at 0 for p > 2.
inline double abs_pow(double x, double p) { return std::pow(std::abs(x), p); }

inline double abs_pow_deriv(double x, double p) {
  if (x == 0.0) return 0.0;
  return p * std::pow(std::abs(x), p - 1.0) * (x > 0.0 ? 1.0 : -1.0);
}

/**
 * Example potential F = −2b(1 − cos(2π/M))·(|x|^β + |y|^β + |z|^β)
 *                     = −b·λ_min·(|x|^β + |y|^β + |z|^β).
 * Autonomous and even; needs β > 2 so the gradient is continuous at 0.
 */
inline PotentialSpec example31_potential(double b, double beta, long m) {
  if (b <= 0.0) throw std::invalid_argument("b: must be > 0");
  if (beta <= 2.0) throw std::invalid_argument("beta: must be > 2");
  check_m(m);
  const double lam = 2.0 * (1.0 - std::cos(2.0 * std::numbers::pi / static_cast<double>(m)));
  const double coeff = -b * lam;

  PotentialSpec f;
  f.period = m;
  f.eval = [coeff, beta](long, double x, double y, double z) {
    return coeff * (abs_pow(x, beta) + abs_pow(y, beta) + abs_pow(z, beta));
  };
  f.grad = [coeff, beta](long, double x, double y, double z) {
    return std::array<double, 3>{coeff * abs_pow_deriv(x, beta),
                                 coeff * abs_pow_deriv(y, beta),
                                 coeff * abs_pow_deriv(z, beta)};
  };
  f.flags = PotentialFlags{true, true, true};
  f.d4_form = true;
  f.d4_d1 = b * lam;
  f.d4_beta = beta;
  return f;
}

// --- table potentials -------------------------------------------------------

enum class TermArg { X, Y, Z, XY, YZ };
enum class TermKind { AbsPow, Square, Cross };
enum class TermModulation { None, Cos, Sin };

/// One summand of a table potential: coeff · base(args) · modulation(n).
struct PotentialTerm {
  TermArg arg = TermArg::X;
  TermKind kind = TermKind::AbsPow;
  double coeff = 0.0;
  double power = 0.0;  // AbsPow only; must be > 2
  TermModulation modulation = TermModulation::None;
};

struct PotentialDefinition {
  long period = 0;
  std::vector<PotentialTerm> terms;
};

inline void validate_term(const PotentialTerm& t) {
  switch (t.kind) {
    case TermKind::AbsPow:
      if (t.arg != TermArg::X && t.arg != TermArg::Y && t.arg != TermArg::Z)
        throw std::invalid_argument("term: abspow arg must be one of x|y|z");
      if (t.power <= 2.0)
        throw std::invalid_argument("term: abspow power must be > 2");
      break;
    case TermKind::Square:
      if (t.arg != TermArg::X && t.arg != TermArg::Y && t.arg != TermArg::Z)
        throw std::invalid_argument("term: square arg must be one of x|y|z");
      break;
    case TermKind::Cross:
      if (t.arg != TermArg::XY && t.arg != TermArg::YZ)
        throw std::invalid_argument("term: cross arg must be xy or yz");
      break;
  }
}

/**
 * Builds a PotentialSpec from a closed-form term list. Every admissible term
 * is even in (x,y,z), so the evenness flag is always set; autonomy holds when
 * no term carries a cos/sin modulation in n.
 */
inline PotentialSpec table_potential(const PotentialDefinition& def) {
  check_m(def.period);
  for (const auto& t : def.terms) validate_term(t);

  const long m = def.period;
  const auto terms = def.terms;
  const double w = 2.0 * std::numbers::pi / static_cast<double>(m);

  auto modulation = [w](const PotentialTerm& t, long n) {
    switch (t.modulation) {
      case TermModulation::Cos: return std::cos(w * static_cast<double>(n));
      case TermModulation::Sin: return std::sin(w * static_cast<double>(n));
      default: return 1.0;
    }
  };

  PotentialSpec f;
  f.period = m;
  f.eval = [terms, modulation](long n, double x, double y, double z) {
    double s = 0.0;
    for (const auto& t : terms) {
      double base = 0.0;
      const double v = (t.arg == TermArg::X) ? x : (t.arg == TermArg::Y) ? y : z;
      switch (t.kind) {
        case TermKind::AbsPow: base = abs_pow(v, t.power); break;
        case TermKind::Square: base = v * v; break;
        case TermKind::Cross:  base = (t.arg == TermArg::XY) ? x * y : y * z; break;
      }
      s += t.coeff * base * modulation(t, n);
    }
    return s;
  };
  f.grad = [terms, modulation](long n, double x, double y, double z) {
    std::array<double, 3> g{0.0, 0.0, 0.0};
    for (const auto& t : terms) {
      const double c = t.coeff * modulation(t, n);
      switch (t.kind) {
        case TermKind::AbsPow: {
          const int k = (t.arg == TermArg::X) ? 0 : (t.arg == TermArg::Y) ? 1 : 2;
          const double v = (k == 0) ? x : (k == 1) ? y : z;
          g[static_cast<std::size_t>(k)] += c * abs_pow_deriv(v, t.power);
          break;
        }
        case TermKind::Square: {
          const int k = (t.arg == TermArg::X) ? 0 : (t.arg == TermArg::Y) ? 1 : 2;
          const double v = (k == 0) ? x : (k == 1) ? y : z;
          g[static_cast<std::size_t>(k)] += c * 2.0 * v;
          break;
        }
        case TermKind::Cross:
          if (t.arg == TermArg::XY) {
            g[0] += c * y;
            g[1] += c * x;
          } else {
            g[1] += c * z;
            g[2] += c * y;
          }
          break;
      }
    }
    return g;
  };

  bool autonomous = true;
  for (const auto& t : terms) {
    if (t.modulation != TermModulation::None) autonomous = false;
  }
  f.flags = PotentialFlags{autonomous, true, autonomous};

  // D4 shape: pure negative abspow terms with one common exponent that cover
  // all three arguments.
  bool shaped = !terms.empty() && autonomous;
  double common_power = terms.empty() ? 0.0 : terms.front().power;
  std::array<double, 3> arg_coeff{0.0, 0.0, 0.0};
  for (const auto& t : terms) {
    if (t.kind != TermKind::AbsPow || t.coeff >= 0.0 || t.power != common_power) {
      shaped = false;
      break;
    }
    const int k = (t.arg == TermArg::X) ? 0 : (t.arg == TermArg::Y) ? 1 : 2;
    arg_coeff[static_cast<std::size_t>(k)] += t.coeff;
  }
  if (shaped && arg_coeff[0] < 0.0 && arg_coeff[1] < 0.0 && arg_coeff[2] < 0.0) {
    f.d4_form = true;
    f.d4_beta = common_power;
    f.d4_d1 = std::min({-arg_coeff[0], -arg_coeff[1], -arg_coeff[2]});
  }
  return f;
}

/// The term list encoding example31_potential(b, beta, m) through the grammar.
inline PotentialDefinition example31_definition(double b, double beta, long m) {
  check_m(m);
  const double lam = 2.0 * (1.0 - std::cos(2.0 * std::numbers::pi / static_cast<double>(m)));
  PotentialDefinition def;
  def.period = m;
  for (TermArg arg : {TermArg::X, TermArg::Y, TermArg::Z}) {
    def.terms.push_back(PotentialTerm{arg, TermKind::AbsPow, -b * lam, beta,
                                      TermModulation::None});
  }
  return def;
}

}  // namespace hamlink
