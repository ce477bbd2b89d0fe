#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "ccm/numerics.hpp"

using namespace ccm;

TEST_CASE("radial integral closed forms against trivial values") {
  // int_0^1 t^2 dt with no pole
  CHECK(radial_integral({4, 1.0, 0.0}) == Catch::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(radial_integral({2, 1.0, 0.0}) == Catch::Approx(1.0).epsilon(1e-14));
  CHECK(radial_integral({6, 1.0, 0.0}) == Catch::Approx(0.2).epsilon(1e-14));
  // int_0^1 k^2/(k^2+1) dk = 1 - pi/4
  CHECK(radial_integral({2, 1.0, 1.0}) ==
        Catch::Approx(0.21460183660255169).epsilon(1e-14));
  // dominated-integrand limit: ~ L^3/(3 chi^2)
  const double big = 1e8;
  CHECK(radial_integral({2, 1.0, big}) ==
        Catch::Approx(1.0 / (3.0 * big * big)).epsilon(1e-6));
}

TEST_CASE("radial integral errors") {
  CHECK_THROWS_AS(radial_integral({0, 1.0, 0.0}), divergent_integral_error);
  CHECK_THROWS_AS(radial_integral({3, 1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(radial_integral({2, -1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(radial_integral({2, 1.0, -0.5}), std::invalid_argument);
}

TEST_CASE("radial integral agrees with quadrature across pole scales") {
  for (int p : {0, 2, 4, 6}) {
    for (double ratio : {0.0, 1e-6, 0.1, 1.0, 10.0}) {
      if (p == 0 && ratio == 0.0) continue;
      for (double L : {0.7, 1.0, 3.2}) {
        const double chi = ratio * L;
        const double closed = radial_integral({p, L, chi});
        const double quad = quadrature(
            [&](double k) { return std::pow(k, p) / (k * k + chi * chi); }, 0.0, L, 1e-13);
        INFO("p=" << p << " ratio=" << ratio << " L=" << L);
        CHECK(closed == Catch::Approx(quad).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("radial integral monotonicity") {
  // decreasing in chi, increasing in Lambda
  for (int p : {2, 4, 6}) {
    double prev = radial_integral({p, 2.0, 0.0});
    for (double chi : {0.01, 0.1, 1.0, 5.0, 50.0}) {
      const double cur = radial_integral({p, 2.0, chi});
      CHECK(cur < prev);
      prev = cur;
    }
    CHECK(radial_integral({p, 2.5, 1.0}) > radial_integral({p, 2.0, 1.0}));
  }
}

TEST_CASE("find_root basics") {
  auto sqrt2 = find_root([](double x) { return x * x - 2.0; }, {1.0, 2.0, 1e-12, 200});
  CHECK(sqrt2 == Catch::Approx(std::sqrt(2.0)).margin(1e-10));

  // quadratic whose positive root is the critical coupling
  auto gcr = find_root([](double g) { return g * g - 13.0 / 4.0 * g - 2.0; }, {3.0, 5.0, 1e-13, 200});
  CHECK(gcr == Catch::Approx(3.77921).margin(1e-5));

  CHECK_THROWS_AS(find_root([](double x) { return x * x + 1.0; }, {0.0, 1.0, 1e-12, 100}),
                  bracket_error);
  CHECK_THROWS_AS(find_root([](double x) { return x; }, {-1.0, 2.0, 1e-12, 0}),
                  convergence_error);
}

TEST_CASE("find_root is deterministic") {
  auto f = [](double x) { return std::cos(x) - x; };
  const double a = find_root(f, {0.0, 1.0, 1e-14, 300});
  const double b = find_root(f, {0.0, 1.0, 1e-14, 300});
  CHECK(a == b);  // bit-identical
}

TEST_CASE("quadrature on known integrals") {
  CHECK(quadrature([](double) { return 1.0; }, 0.0, 1.0, 1e-12) ==
        Catch::Approx(1.0).epsilon(1e-12));
  CHECK(quadrature([](double t) { return std::sin(t); }, 0.0, kPi, 1e-13) ==
        Catch::Approx(2.0).epsilon(1e-12));
  // int_0^1 t^4/(t^2 + 1/4) dt against the closed form
  const double closed = radial_integral({4, 1.0, 0.5});
  CHECK(quadrature([](double t) { return t * t * t * t / (t * t + 0.25); }, 0.0, 1.0, 1e-13) ==
        Catch::Approx(closed).epsilon(1e-10));
}

TEST_CASE("quadrature properties on random smooth integrands") {
  std::mt19937 rng(123);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = coef(rng), b = coef(rng), c = coef(rng), d = coef(rng);
    // exact cubic integral on [0, 2]
    auto poly = [&](double t) { return a + b * t + c * t * t + d * t * t * t; };
    const double exact = 2.0 * a + 2.0 * b + 8.0 / 3.0 * c + 4.0 * d;
    CHECK(quadrature(poly, 0.0, 2.0, 1e-12) == Catch::Approx(exact).margin(1e-10));
  }
}
