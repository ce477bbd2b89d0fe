#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ccm/bound_state.hpp"
#include "ccm/numerics.hpp"

using namespace ccm;

TEST_CASE("integrals identity and free limit") {
  const ModelScheme s = scheme_from_physical(1.0, 2.0);
  const double chi = s.Lambda / 3.8;
  const IntegralsI I = integrals_I(s, chi);
  const double m2c2 = 4.0 * s.bare.m * s.bare.m * s.c * s.c;
  CHECK(I.I1 - m2c2 * I.I3 - I.I4 == Catch::Approx(0.0).margin(1e-14));
  CHECK(I.I1 > 0.0);
  CHECK(I.I2 > 0.0);
  CHECK(I.I3 > 0.0);
  CHECK(I.I4 > 0.0);

  const ModelScheme free_s = scheme_from_physical(1.0, 0.0);
  const IntegralsI I0 = integrals_I(free_s, 0.3);
  CHECK(I0.I1 == 0.0);
  CHECK(I0.I4 == 0.0);
}

TEST_CASE("integrals match the adaptive-quadrature oracle") {
  const ModelScheme s = scheme_from_physical(1.0, 2.0);
  const double chi = s.Lambda / 3.8;
  const IntegralsI I = integrals_I(s, chi);
  const double beta = 1.0 / (4.0 * s.bare.m * s.bare.m);
  const double kap = s.bare.lambda * s.M / (kPi * kPi);
  auto den = [&](double k) { return k * k + chi * chi; };
  const double q1 =
      kap * quadrature([&](double k) { return (1.0 + beta * k * k) * k * k / den(k); }, 0.0,
                       s.Lambda, 1e-13);
  const double q2 =
      kap * quadrature([&](double k) { return (1.0 + beta * k * k) * std::pow(k, 4) / den(k); },
                       0.0, s.Lambda, 1e-13);
  const double q3 = kap * beta * quadrature([&](double k) { return k * k / den(k); }, 0.0,
                                            s.Lambda, 1e-13);
  const double q4 = kap * beta * quadrature([&](double k) { return std::pow(k, 4) / den(k); },
                                            0.0, s.Lambda, 1e-13);
  CHECK(I.I1 == Catch::Approx(q1).epsilon(1e-9));
  CHECK(I.I2 == Catch::Approx(q2).epsilon(1e-9));
  CHECK(I.I3 == Catch::Approx(q3).epsilon(1e-9));
  CHECK(I.I4 == Catch::Approx(q4).epsilon(1e-9));
  // frozen values for this scheme
  CHECK(I.I1 == Catch::Approx(0.72933180933935262).epsilon(1e-12));
  CHECK(I.I2 == Catch::Approx(2.8696071821160311).epsilon(1e-12));
  CHECK(I.I3 == Catch::Approx(0.066693761046489876).epsilon(1e-12));
  CHECK(I.I4 == Catch::Approx(0.23152279979263608).epsilon(1e-12));
}

TEST_CASE("determinant: free value and sign change around the G=2 root") {
  const ModelScheme free_s = scheme_from_physical(1.0, 0.0);
  CHECK(isoscalar_determinant(free_s, 0.5) == Catch::Approx(1.0));

  const ModelScheme s = scheme_from_physical(1.0, 2.0);
  const double d3 = isoscalar_determinant(s, s.Lambda / 3.0);
  const double d5 = isoscalar_determinant(s, s.Lambda / 5.0);
  CHECK(d3 * d5 < 0.0);  // brackets the published z(2) = 3.8
}

TEST_CASE("transcendental residual near published roots") {
  // z(5) = 1.85 published; corrected coefficient puts the root there
  CHECK(std::abs(transcendental_residual(5.0, 1.85)) / std::pow(1.85, 3) < 1e-2);
  // frozen root values
  for (auto [G, z] : {std::pair{2.0, 3.9888910774621183},
                      std::pair{5.0, 1.8516204297923591},
                      std::pair{10.0, 1.4447267548958848}}) {
    CHECK(transcendental_residual(G, z) == Catch::Approx(0.0).margin(1e-9 * z * z * z));
  }
  // printed coefficient stays below threshold: no root, residual negative for all z
  for (double z : {0.5, 1.0, 5.0, 50.0})
    CHECK(transcendental_residual(5.0, z, C1Variant::printed) < 0.0);
}

TEST_CASE("isoscalar solver reproduces frozen roots and cross-checks") {
  for (auto [G, zref] : {std::pair{2.0, 3.9888910774621183},
                         std::pair{5.0, 1.8516204297923591},
                         std::pair{10.0, 1.4447267548958848}}) {
    const BoundStateResult r = solve_isoscalar(scheme_from_physical(1.0, G));
    REQUIRE(r.exists);
    CHECK(r.z == Catch::Approx(zref).epsilon(1e-8));
    CHECK(r.diagnostics.eq3_rel_residual < 1e-8);
    CHECK(r.diagnostics.tan_rel_residual < 1e-8);
    // chi^2 = M (2 M c^2 - mu)
    CHECK(r.chi * r.chi == Catch::Approx(1.0 * (2.0 - r.mu0)).epsilon(1e-10));
  }
}

TEST_CASE("existence threshold") {
  for (double G : {0.5, 1.0, 1.1}) {
    const BoundStateResult r = solve_isoscalar(scheme_from_physical(1.0, G));
    CHECK_FALSE(r.exists);
    CHECK(r.diagnostics.c1 < 1.0);
    CHECK(!r.diagnostics.note.empty());
  }
  for (double G : {1.2, 1.5, 2.0}) {
    CHECK(solve_isoscalar(scheme_from_physical(1.0, G)).exists);
  }
}

TEST_CASE("triple equivalence across couplings") {
  for (double G : {1.5, 2.0, 3.0, 5.0, 8.0, 10.0}) {
    const BoundStateResult r = solve_isoscalar(scheme_from_physical(1.0, G));
    REQUIRE(r.exists);
    CHECK(r.diagnostics.eq3_rel_residual < 1e-6);
    CHECK(r.diagnostics.tan_rel_residual < 1e-6);
  }
}

TEST_CASE("isovector channel never binds") {
  // closed-form value at G = 2, chi = 0
  CHECK(isovector_rhs(2.0, 0.0) == Catch::Approx(0.1786327949540818).epsilon(1e-12));
  // monotone decreasing in chi
  CHECK(isovector_rhs(3.0, 1.0) < isovector_rhs(3.0, 0.0));
  // approaches 2/3 from below as G -> inf at chi = 0
  CHECK(isovector_rhs(1e6, 0.0) < 2.0 / 3.0);
  CHECK(isovector_rhs(1e6, 0.0) == Catch::Approx(2.0 / 3.0).margin(2e-3));

  for (double G : {0.5, 2.0, 5.0, 1e3, 1e6}) {
    const BoundStateResult r = solve_isovector(scheme_from_physical(1.0, G));
    CHECK_FALSE(r.exists);
    CHECK(r.diagnostics.sup_isovector_rhs < 2.0 / 3.0);
  }
}

TEST_CASE("isovector bound stays below 2/3 on a log grid") {
  double sup = 0.0;
  for (int gi = 0; gi <= 40; ++gi) {
    const double G = std::pow(10.0, -3.0 + 9.0 * gi / 40.0);
    for (int xi = 0; xi <= 20; ++xi) {
      const double x = (xi == 0) ? 0.0 : std::pow(10.0, -3.0 + 4.0 * (xi - 1) / 19.0);
      sup = std::max(sup, isovector_rhs(G, x));
    }
  }
  CHECK(sup < 2.0 / 3.0);
  CHECK(sup > 0.6);  // the bound is approached
}

TEST_CASE("z(G) is monotone decreasing and bounded by the asymptote") {
  double prev = 1e300;
  for (double G : {1.3, 1.6, 2.0, 3.0, 5.0, 10.0, 50.0, 1e3, 1e6}) {
    const BoundStateResult r = solve_isoscalar(scheme_from_physical(1.0, G));
    REQUIRE(r.exists);
    CHECK(r.z < prev);
    CHECK(r.z > std::sqrt(5.0 / 6.0));
    prev = r.z;
  }
}

TEST_CASE("table rows against published values") {
  const auto rows = table1(published_G_grid());
  for (const auto& row : rows) {
    REQUIRE(row.exists);
    REQUIRE(row.z_published.has_value());
    INFO("G = " << row.G << " z = " << row.z << " published " << *row.z_published);
    CHECK(*row.rel_deviation < 0.08);
  }
  // near-threshold row agrees with the asymptotic estimate z ~ c1 pi / (2(c1-1))
  const double c1 = tan_c1(1.2);
  CHECK(rows.front().z == Catch::Approx(c1 * kPi / (2.0 * (c1 - 1.0))).epsilon(0.01));
}

TEST_CASE("wavefunction null space and kernel self-consistency") {
  const ModelScheme s = scheme_from_physical(1.0, 5.0);
  const BoundStateResult r = solve_isoscalar(s);
  REQUIRE(r.exists);
  const TwoBodySector sec = TwoBodySector::restored(s);
  const Wavefunction w = wavefunction(s, r, sec);
  CHECK(w.coeff_A == 1.0);
  CHECK(std::isfinite(w.coeff_B));
  CHECK(w.l2_norm > 0.0);
  // denominator never vanishes for chi^2 > 0
  for (double k = 0.0; k <= s.Lambda; k += s.Lambda / 8.0) CHECK(std::isfinite(w(k)));
  const double worst = wavefunction_selfconsistency(s, w, sec);
  CHECK(worst < 1e-6);
  // away from the root the same reconstruction must fail
  BoundStateResult off = r;
  off.chi = 0.5 * r.chi;
  const Wavefunction wrong{Channel::isoscalar, 1.0, w.coeff_B, off.chi, sec.M_pair, 0.0};
  CHECK(wavefunction_selfconsistency(s, wrong, sec) > 1e-3);
}

TEST_CASE("wavefunction requires an existing bound state") {
  const ModelScheme s = scheme_from_physical(1.0, 1.0);
  const BoundStateResult r = solve_isoscalar(s);
  CHECK_THROWS_AS(wavefunction(s, r, TwoBodySector::restored(s)), std::invalid_argument);
}

TEST_CASE("broken-sector channels solve through the same machinery") {
  const ModelScheme s = scheme_from_physical(1.0, 5.0);
  // AA pair: propagator mass m_A = M, gap 2 E_A(0); the determinant is still
  // a function with a root in (0, 1.2 Lambda) for this coupling
  const TwoBodySector aa = TwoBodySector::broken_AA(s);
  CHECK(aa.M_pair == Catch::Approx(s.M));
  const BoundStateResult r = solve_isoscalar(s, aa, false);
  CHECK(r.exists);
  CHECK(r.mu0 == Catch::Approx(aa.E0_sum - r.chi * r.chi / aa.M_pair).epsilon(1e-12));
  // mixed pair flips the density-vertex sign
  CHECK(TwoBodySector::broken_AAt(s).density_sign == -1.0);
}
