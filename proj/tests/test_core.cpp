#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "hamlink/norms.hpp"
#include "hamlink/periodic_sequence.hpp"
#include "hamlink/rng.hpp"

using namespace hamlink;

namespace {

PeriodicSequence random_sequence(long m, RngStream& rng, double scale = 2.0) {
  std::vector<double> v(static_cast<std::size_t>(m));
  for (double& x : v) x = scale * rng.gaussian();
  return PeriodicSequence(std::move(v));
}

}  // namespace

TEST_CASE("periodic sequence enforces M >= 5 and wraps indices") {
  CHECK_THROWS_AS(PeriodicSequence({1.0, 2.0, 3.0, 4.0}), std::invalid_argument);
  CHECK_THROWS_AS(PeriodicSequence::zeros(4), std::invalid_argument);

  const PeriodicSequence u({10.0, 20.0, 30.0, 40.0, 50.0});
  CHECK(u.period() == 5);
  CHECK(u[1] == 10.0);
  CHECK(u[5] == 50.0);
  for (long n = -7; n <= 12; ++n) {
    CHECK(u[n] == u[n + 5]);  // exact periodicity
  }
  CHECK(u[0] == 50.0);
  CHECK(u[6] == 10.0);
}

TEST_CASE("forward difference matches hand evaluation") {
  // constant sequence -> exactly zero, no rounding
  const auto c = PeriodicSequence::constant(5, 3.7);
  const auto dc = forward_difference(c);
  for (double x : dc.values()) CHECK(x == 0.0);

  const PeriodicSequence u({1.0, 2.0, 3.0, 4.0, 5.0});
  const auto d = forward_difference(u);
  const std::vector<double> expected{1.0, 1.0, 1.0, 1.0, -4.0};
  CHECK(d.values() == expected);

  const auto e3 = PeriodicSequence::unit(6, 3);
  const auto de = forward_difference(e3);
  CHECK(de[2] == 1.0);
  CHECK(de[3] == -1.0);
  for (long n : {1L, 4L, 5L, 6L}) CHECK(de[n] == 0.0);
}

TEST_CASE("forward difference entries sum to zero") {
  auto rng = RngStream(11);
  for (long m : {5L, 6L, 10L, 32L}) {
    for (int rep = 0; rep < 50; ++rep) {
      const auto u = random_sequence(m, rng);
      const auto du = forward_difference(u);
      double sum = 0.0;
      for (double x : du.values()) sum += x;
      CHECK(std::abs(sum) < 1e-12);
    }
  }
}

TEST_CASE("second difference matches hand evaluation") {
  const auto dconst = second_difference(PeriodicSequence::constant(7, -2.5));
  for (double x : dconst.values()) {
    CHECK(x == 0.0);
  }

  const auto e1 = PeriodicSequence::unit(5, 1);
  const std::vector<double> spike{-2.0, 1.0, 0.0, 0.0, 1.0};
  CHECK(second_difference(e1).values() == spike);

  // linear-in-index: zero away from the seam, +-M at the seam positions
  const PeriodicSequence lin({1.0, 2.0, 3.0, 4.0, 5.0});
  const std::vector<double> seam{5.0, 0.0, 0.0, 0.0, -5.0};
  CHECK(second_difference(lin).values() == seam);
}

TEST_CASE("second difference equals shifted double forward difference") {
  auto rng = RngStream(12);
  for (long m : {5L, 8L, 13L}) {
    const auto u = random_sequence(m, rng);
    const auto dd = forward_difference(forward_difference(u));
    const auto d2 = second_difference(u);
    // d2[n] = Delta^2 u_{n-1} = dd[n-1]
    for (long n = 1; n <= m; ++n) {
      CHECK(d2[n] == Catch::Approx(dd[n - 1]).margin(1e-15));
    }
  }
}

TEST_CASE("norms and sharp equivalence constants") {
  CHECK_THROWS_AS(norm_beta(PeriodicSequence::zeros(5), 0.5), std::invalid_argument);
  CHECK_THROWS_AS(norms(PeriodicSequence::zeros(5), 0.99), std::invalid_argument);

  const auto zero = PeriodicSequence::zeros(5);
  const auto nz = norms(zero, 3.0);
  CHECK(nz.norm2 == 0.0);
  CHECK(nz.norm_beta == 0.0);

  // constants achieve the lower bound C1*||u||
  const auto ones = PeriodicSequence::constant(5, 1.0);
  const auto n1 = norms(ones, 3.0);
  CHECK(n1.norm2 == Catch::Approx(std::sqrt(5.0)).epsilon(1e-14));
  CHECK(n1.norm_beta == Catch::Approx(std::pow(5.0, 1.0 / 3.0)).epsilon(1e-14));
  CHECK(n1.pair.c1 == Catch::Approx(std::pow(5.0, 1.0 / 3.0 - 0.5)).epsilon(1e-14));
  CHECK(n1.pair.c2 == 1.0);
  CHECK(n1.norm_beta == Catch::Approx(n1.pair.c1 * n1.norm2).epsilon(1e-13));

  // spikes achieve the upper bound C2*||u||
  const auto spike = PeriodicSequence::unit(5, 1);
  const auto n2 = norms(spike, 3.0);
  CHECK(n2.norm2 == 1.0);
  CHECK(n2.norm_beta == 1.0);
  CHECK(n2.norm_beta == Catch::Approx(n2.pair.c2 * n2.norm2));
}

TEST_CASE("norm sandwich holds on random sequences") {
  auto rng = RngStream(13);
  for (long m : {5L, 6L, 10L, 32L}) {
    for (double beta : {2.5, 3.0, 4.0}) {
      for (int rep = 0; rep < 1000; ++rep) {
        const auto u = random_sequence(m, rng);
        const auto n = norms(u, beta);
        CHECK(n.pair.c1 * n.norm2 - n.norm_beta <= 1e-12 * (1.0 + n.norm2));
        CHECK(n.norm_beta - n.pair.c2 * n.norm2 <= 1e-12 * (1.0 + n.norm2));
      }
    }
  }
}

TEST_CASE("summation by parts: sum of squared differences as a bilinear form") {
  auto rng = RngStream(14);
  for (long m : {5L, 6L, 10L, 32L}) {
    for (int rep = 0; rep < 1000; ++rep) {
      const auto u = random_sequence(m, rng);
      const auto d = forward_difference(u);
      double lhs = 0.0;
      for (double x : d.values()) lhs += x * x;
      double rhs = 0.0;
      for (long s = 1; s <= m; ++s) rhs += 2.0 * u[s] * u[s] - 2.0 * u[s] * u[s + 1];
      CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(lhs)));
    }
  }
}
