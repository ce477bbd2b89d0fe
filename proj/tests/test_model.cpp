#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ccm/model.hpp"

using namespace ccm;

TEST_CASE("free limit of the physical scheme") {
  const ModelScheme s = scheme_from_physical(1.0, 0.0);
  CHECK(s.bare.m == Catch::Approx(1.0));
  CHECK(s.g == 0.0);
  CHECK(s.k2_avg == Catch::Approx(2.0));
  CHECK(s.Lambda == Catch::Approx(std::sqrt(10.0 / 3.0)));
}

TEST_CASE("piercing point G = 8") {
  const ModelScheme s = scheme_from_physical(1.0, 8.0);
  // m = (M/2)(1 + sqrt(9)) = 2, g = 4; checked against the defining relation
  // M = m / (1 + g/(2 m c^2))
  CHECK(s.g == Catch::Approx(4.0));
  CHECK(s.bare.m == Catch::Approx(2.0));
  CHECK(s.bare.m / (1.0 + s.g / (2.0 * s.bare.m)) == Catch::Approx(1.0).epsilon(1e-14));
  const MassGapReport r = masses_and_gaps(s);
  CHECK(r.alpha == Catch::Approx(0.0).margin(1e-14));
  CHECK(r.regime == Regime::piercing);
  CHECK(std::isinf(r.m_Atilde));
}

TEST_CASE("scheme invariants hold for a range of couplings") {
  for (double G : {0.0, 0.3, 1.0, 2.0, 3.77, 8.0, 24.0, 100.0}) {
    const ModelScheme s = scheme_from_physical(1.3, G, 0.9);
    const double c2 = s.c * s.c;
    CHECK(s.Lambda * s.Lambda == Catch::Approx(5.0 / 3.0 * s.k2_avg).epsilon(1e-13));
    CHECK(s.bare.lambda * std::pow(s.Lambda, 3) ==
          Catch::Approx(6.0 * kPi * kPi * s.g).epsilon(1e-13));
    CHECK(s.k2_avg ==
          Catch::Approx(s.M * s.M * c2 * (1.0 + G + std::sqrt(1.0 + G))).epsilon(1e-13));
    CHECK(s.bare.m == Catch::Approx(0.5 * s.M * (1.0 + std::sqrt(1.0 + G))).epsilon(1e-13));
    if (G > 0.0) CHECK(s.G == Catch::Approx(2.0 * s.g / (s.M * c2)).epsilon(1e-13));
  }
}

TEST_CASE("renormalize round-trips with the physical scheme") {
  for (double G : {0.0, 0.01, 0.5, 2.0, 10.0, 100.0}) {
    const ModelScheme phys = scheme_from_physical(1.0, G);
    const ModelScheme back = renormalize(phys.bare);
    CHECK(back.M == Catch::Approx(phys.M).epsilon(1e-10));
    CHECK(back.k2_avg == Catch::Approx(phys.k2_avg).epsilon(1e-10));
    if (G > 0.0) CHECK(back.G == Catch::Approx(phys.G).epsilon(1e-10));
  }
}

TEST_CASE("renormalize free limit and leading series behaviour") {
  BareParams free_b{1.0, 1.0, 0.0};
  const ModelScheme s0 = renormalize(free_b);
  CHECK(s0.M == Catch::Approx(1.0));
  CHECK(s0.g == 0.0);
  CHECK(s0.Lambda == Catch::Approx(std::sqrt(10.0 / 3.0)).epsilon(1e-13));

  // g/(2 m c^2 a0) -> 1 and Lambda/(sqrt(10/3) m c) -> 1, each with O(a0) error
  double prev_g_err = 1e300, prev_l_err = 1e300;
  for (double a0 : {1e-3, 1e-4, 1e-5}) {
    BareParams b{1.0, 1.0, a0 * 12.0 * kPi * kPi / std::pow(10.0 / 3.0, 1.5)};
    CHECK(alpha0(b) == Catch::Approx(a0).epsilon(1e-12));
    const ModelScheme s = renormalize(b);
    const double g_err = std::abs(s.g / (2.0 * b.m * a0) - 1.0);
    const double l_err = std::abs(s.Lambda / (std::sqrt(10.0 / 3.0) * b.m) - 1.0);
    CHECK(g_err < 10.0 * a0);  // slope is finite (measured ~1.5)
    CHECK(l_err < 10.0 * a0);  // slope is finite (measured ~0.5)
    CHECK(g_err < prev_g_err);
    CHECK(l_err < prev_l_err);
    prev_g_err = g_err;
    prev_l_err = l_err;
  }
}

TEST_CASE("series coefficients are fitted and reported, not assumed") {
  const SeriesFit f = fit_series();
  // the fitted linear coefficients are stable, finite numbers; the printed
  // values (9 and 3) are reported alongside for comparison
  CHECK(f.g_c1 == Catch::Approx(1.5).margin(0.05));
  CHECK(f.lambda_c1 == Catch::Approx(0.5).margin(0.02));
  CHECK(f.printed_g_c1 == 9.0);
  CHECK(f.printed_lambda_c1 == 3.0);
}

TEST_CASE("spectrum branches") {
  const ModelScheme free_s = scheme_from_physical(1.0, 0.0);
  CHECK(spectrum(SpectrumBranch::A, 0.0, free_s) == Catch::Approx(1.0));

  // B branch gap is exactly M c^2 and the k-dependence is k^2/2M
  for (double G : {0.0, 1.0, 5.0, 20.0}) {
    const ModelScheme s = scheme_from_physical(1.0, G);
    CHECK(spectrum(SpectrumBranch::B, 0.0, s) == Catch::Approx(1.0).epsilon(1e-12));
    const double k = 0.7;
    CHECK(spectrum(SpectrumBranch::B, k, s) - spectrum(SpectrumBranch::B, 0.0, s) ==
          Catch::Approx(k * k / (2.0 * s.M)).epsilon(1e-12));
  }

  // E_A(0) = M c^2 (1 - 2G)
  const ModelScheme s2 = scheme_from_physical(1.0, 2.0);
  CHECK(spectrum(SpectrumBranch::A, 0.0, s2) == Catch::Approx(-3.0).epsilon(1e-12));
  // E_Atilde(0) = M c^2 (2G - sqrt(1+G))
  CHECK(spectrum(SpectrumBranch::Atilde, 0.0, s2) ==
        Catch::Approx(4.0 - std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("mass and gap report") {
  SECTION("hole at G = 0") {
    const MassGapReport r = masses_and_gaps(scheme_from_physical(1.0, 0.0));
    CHECK(r.regime == Regime::hole);
    CHECK(r.m_A == Catch::Approx(1.0));
  }
  SECTION("G = 24 gives m_Atilde = 3 m_A") {
    const MassGapReport r = masses_and_gaps(scheme_from_physical(1.0, 24.0));
    CHECK(r.alpha == Catch::Approx(2.0).epsilon(1e-13));
    CHECK(r.m_Atilde == Catch::Approx(3.0 * r.m_A).epsilon(1e-13));
    CHECK(r.regime == Regime::particle);
  }
  SECTION("m_A equals M for every scheme") {
    for (double G : {0.0, 0.5, 3.0, 8.0, 42.0}) {
      const ModelScheme s = scheme_from_physical(1.7, G);
      CHECK(masses_and_gaps(s).m_A == Catch::Approx(s.M).epsilon(1e-13));
    }
  }
  SECTION("alpha > 0 iff G > 8") {
    CHECK(masses_and_gaps(scheme_from_physical(1.0, 7.9)).alpha < 0.0);
    CHECK(masses_and_gaps(scheme_from_physical(1.0, 8.1)).alpha > 0.0);
  }
  SECTION("gap sum identity") {
    for (double G : {0.0, 1.5, 2.0, 3.0, 5.0, 8.0, 10.0}) {
      const MassGapReport r = masses_and_gaps(scheme_from_physical(1.0, G));
      CHECK(r.gap_sum == Catch::Approx(r.gap_sum_check).margin(1e-12));
      // equivalently M c^2 (1 - sqrt(1+G))
      CHECK(r.gap_sum == Catch::Approx(1.0 - std::sqrt(1.0 + G)).margin(1e-12));
    }
  }
}

TEST_CASE("vacuum energy density and critical coupling") {
  CHECK(vacuum_energy_density(scheme_from_physical(1.0, 0.0)) == Catch::Approx(4.0));
  CHECK(vacuum_energy_density(scheme_from_physical(1.0, 8.0)) == Catch::Approx(-6.0));

  const double gcr = critical_coupling();
  CHECK(gcr == Catch::Approx(3.77921).margin(1e-5));
  CHECK(std::abs(gcr - 3.75) / 3.75 < 0.01);
  CHECK(vacuum_energy_density(scheme_from_physical(1.0, gcr)) == Catch::Approx(0.0).margin(1e-10));
  // the two parameterizations agree everywhere (checked internally, sampled here)
  for (double G : {0.1, 1.0, 4.0, 30.0}) CHECK_NOTHROW(vacuum_energy_density(scheme_from_physical(2.0, G, 1.3)));
}

TEST_CASE("phase classification") {
  CHECK(classify_phase(0.0) == Phase::symmetric_preferred);
  CHECK(classify_phase(8.0) == Phase::broken_preferred);
  CHECK(classify_phase(critical_coupling()) == Phase::critical);
}
