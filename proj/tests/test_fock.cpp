#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ccm/discrete_kernel.hpp"
#include "ccm/fock/oracle.hpp"

using namespace ccm;
using namespace ccm::fock;

namespace {
const BareParams kBare{1.0, 1.0, 0.35};

AmplitudePair violating_pair() {
  AmplitudePair p;
  p.f << 1.0, 0.0;
  p.g << 0.6, -0.8;  // unit norm, overlap 0.6
  return p;
}
}  // namespace

TEST_CASE("mode sets") {
  const ModeSet one = ModeSet::line(1, 0.9, 1.7);
  CHECK(one.size() == 1);
  CHECK(one.coord(0) == Coord{0, 0, 0});
  const ModeSet two = ModeSet::line(2, 0.9, 1.7);
  CHECK(two.size() == 2);
  CHECK(two.negated(0) == 1);
  CHECK_THROWS_AS(ModeSet({{1, 0, 0}}, 1.0, 1.0), std::invalid_argument);       // not closed
  CHECK_THROWS_AS(ModeSet({{0, 0, 0}, {0, 0, 0}}, 1.0, 1.0), std::invalid_argument);  // dup
  CHECK_THROWS_AS(FockSpace(ModeSet::line(4)), dimension_budget_error);
}

TEST_CASE("ladder operators satisfy the canonical anticommutation relations") {
  for (int n : {1, 2}) {
    const FockSpace fs(ModeSet::line(n, 0.9, 1.7));
    CHECK(car_residual(fs) < 1e-13);
    // nilpotency and number spectrum
    const SpMat a2 = SpMat(fs.a(0, 0) * fs.a(0, 0));
    CHECK(frobenius(a2) == 0.0);
    const DenseMat num = DenseMat(SpMat(fs.at(1, 0) * fs.a(1, 0)));
    Eigen::SelfAdjointEigenSolver<DenseMat> es(num);
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
      const double v = es.eigenvalues()(i);
      CHECK((std::abs(v) < 1e-14 || std::abs(v - 1.0) < 1e-14));
    }
  }
}

TEST_CASE("amplitude parametrization satisfies the canonical constraints") {
  const AmplitudePair origin = amplitudes_from_angles(0.0, 0.0, 0.0);
  CHECK(origin.f(0) == Complex(1.0, 0.0));
  CHECK(origin.f(1) == Complex(0.0, 0.0));
  CHECK(origin.g(0) == Complex(0.0, 0.0));
  CHECK(origin.g(1) == Complex(-1.0, 0.0));
  for (double th : {0.0, 0.37, 1.2}) {
    for (double psi : {-0.8, 0.3}) {
      for (double phi : {0.0, 0.45, 2.2}) {
        const AmplitudePair p = amplitudes_from_angles(th, psi, phi);
        CHECK(p.completeness_residual() < 1e-15);
        CHECK(p.orthogonality_residual() < 1e-15);
        CHECK(p.norm_residual() < 1e-15);
      }
    }
  }
  // rotated amplitudes inherit the constraints
  const AmplitudePair rot =
      rotated_amplitudes(amplitudes_from_angles(0.37, -0.8, 0.45), 0.53, -0.21, 1.13, 0.35);
  CHECK(rot.completeness_residual() < 1e-14);
  CHECK(rot.orthogonality_residual() < 1e-14);
}

TEST_CASE("fluctuation Hamiltonian vanishes exactly on the constraint manifold") {
  const FockSpace fs(ModeSet::line(2, 0.9, 1.7));
  const auto H = build_hamiltonian(fs, kBare, amplitudes_from_angles(0.37, -0.8, 0.45));
  CHECK(frobenius(H.fluctuation) < 1e-12);
  CHECK(frobenius(SpMat(H.normal - SpMat(H.normal.adjoint()))) < 1e-12);

  // constant violating pair
  const auto Hbad = build_hamiltonian(fs, kBare, violating_pair());
  CHECK(frobenius(Hbad.fluctuation) > 1e-3);
  const SpMat tot = Hbad.total();
  CHECK(frobenius(SpMat(tot - SpMat(tot.adjoint()))) < 1e-12);  // total stays hermitian

  // momentum-dependent amplitudes violating orthogonality at one mode
  std::vector<AmplitudePair> per_mode(2, amplitudes_from_angles(0.37, -0.8, 0.45));
  per_mode[1] = violating_pair();
  const auto Hmix = build_hamiltonian(fs, kBare, AmplitudeSet(std::move(per_mode)));
  CHECK(frobenius(Hmix.fluctuation) > 1e-3);
}

TEST_CASE("H is independent of which constraint-satisfying amplitudes built it") {
  const FockSpace fs(ModeSet::line(2, 0.9, 1.7));
  const auto H1 = build_hamiltonian(fs, kBare, amplitudes_from_angles(0.37, -0.8, 0.45));
  const auto H2 = build_hamiltonian(fs, kBare, amplitudes_from_angles(1.1, 0.2, -0.7));
  CHECK(frobenius(SpMat(H1.total() - H2.total())) < 1e-12);
}

TEST_CASE("free Hamiltonian is diagonal in the number basis") {
  const FockSpace fs(ModeSet::line(2, 0.9, 1.7));
  const BareParams free_bare{1.0, 1.0, 0.0};
  const SpMat H = build_hamiltonian(fs, free_bare, amplitudes_from_angles(0.2, 0.0, 0.0)).total();
  const DenseMat Hd = DenseMat(H);
  CHECK((Hd - DenseMat(Hd.diagonal().asDiagonal())).cwiseAbs().maxCoeff() < 1e-14);
  // one-particle eigenvalues are eps(k) + vacuum constant
  const auto rep = verify_spectra(fs, free_bare, AmplitudeSet(fs.modes(), amplitudes_from_angles(0.2, 0.0, 0.0)));
  CHECK(rep.max_energy_formula_mismatch < 1e-13);
}

TEST_CASE("vacuum and one-particle states are exact eigenvectors") {
  for (int n : {1, 2}) {
    const FockSpace fs(ModeSet::line(n, 0.9, 1.7));
    const AmplitudeSet amps(fs.modes(), amplitudes_from_angles(0.37, -0.8, 0.45));
    const auto rep = verify_spectra(fs, kBare, amps);
    CHECK(rep.vacuum_residual < 1e-12);
    CHECK(rep.vacuum_energy == Catch::Approx(rep.vacuum_energy_expected).margin(1e-11));
    CHECK(rep.max_one_particle_residual < 1e-12);
    CHECK(rep.max_energy_formula_mismatch < 1e-11);
    CHECK(rep.affine_fit_residual < 1e-10);
    CHECK(rep.max_two_particle_block_residual < 1e-12);
  }
}

TEST_CASE("charge algebra closes and the vacuum carries the broken charge") {
  for (int n : {1, 2}) {
    const FockSpace fs(ModeSet::line(n, 0.9, 1.7));
    const AmplitudeSet amps(fs.modes(), amplitudes_from_angles(0.37, -0.8, 0.45));
    const SpMat H = build_hamiltonian(fs, kBare, amps).total();
    const ChargeSet cs = build_charges(fs, 0.35);
    const auto rep = verify_charge_algebra(fs, H, cs);
    CHECK(rep.max_su2q_residual < 1e-12);
    CHECK(rep.max_isospin_residual < 1e-12);
    CHECK(rep.max_mixed_residual < 1e-12);
    CHECK(rep.max_h_commutator_residual < 1e-12);
    CHECK(rep.max_hermiticity_defect < 1e-12);
    CHECK(rep.q3_vacuum == Catch::Approx(-double(n)).margin(1e-13));
    CHECK(rep.q12_vacuum < 1e-13);
  }
}

TEST_CASE("multiplet structure") {
  for (int n : {1, 2}) {
    const FockSpace fs(ModeSet::line(n, 0.9, 1.7));
    const ChargeSet cs = build_charges(fs, 0.35);
    const auto rep = multiplet_analysis(fs, cs);
    CHECK(rep.vacuum_casimir == Catch::Approx(n * (n + 1.0)).margin(1e-11));
    CHECK(rep.vacuum_casimir_residual < 1e-11);
    CHECK(rep.qminus_vacuum_norm < 1e-13);
    CHECK(rep.ladder_levels_nonzero == 2 * n);
    CHECK(rep.ladder_top_norm < 1e-11);
    CHECK(rep.max_ladder_q3_error < 1e-11);
    CHECK(rep.one_particle_casimir == Catch::Approx((n - 0.5) * (n + 0.5)).margin(1e-11));
    CHECK(rep.one_particle_q3 == Catch::Approx(-n + 0.5).margin(1e-13));
    CHECK(rep.one_particle_qminus_norm < 1e-13);
    CHECK(rep.two_excitation_casimir == Catch::Approx((n - 1.0) * n).margin(1e-11));
  }
}

TEST_CASE("Bogoliubov transform: identity at zero angle, restoration at pi/2") {
  const FockSpace fs(ModeSet::line(2, 0.9, 1.7));
  CHECK(frobenius(SpMat(bogoliubov_btilde(fs, 0, 0, 0.0, 0.6) - fs.ta(0, 0))) == 0.0);
  // pi/2 maps the Atilde-filled state to the transformed vacuum
  const DenseVec bvac = fs.atilde_filled();
  for (int al = 0; al < 2; ++al)
    for (int j = 0; j < 2; ++j) {
      CHECK((bogoliubov_btilde(fs, al, j, kPi / 2.0, 0.6) * bvac).norm() < 1e-14);
      CHECK((fs.a(al, j) * bvac).norm() == 0.0);
    }
  const AmplitudeSet amps(fs.modes(), amplitudes_from_angles(0.37, -0.8, 0.45));
  const auto rep = verify_restoration(fs, kBare, amps, 0.6, 0.35);
  CHECK(rep.bogoliubov_car_residual < 1e-13);
  CHECK(rep.generator_match < 1e-12);
  CHECK(rep.q_annihilation < 1e-12);
  CHECK(rep.t_annihilation < 1e-12);
  CHECK(rep.h_bvac_norm < 1e-12);
  CHECK(rep.casimir_bvac_norm < 1e-12);
  CHECK(rep.max_b_particle_residual < 1e-12);
  CHECK(rep.max_degeneracy_gap < 1e-12);
  CHECK(rep.max_energy_formula_mismatch < 1e-11);
  CHECK(rep.q3_b == Catch::Approx(0.5).margin(1e-13));
  CHECK(rep.q3_btilde == Catch::Approx(-0.5).margin(1e-13));
}

TEST_CASE("two-particle blocks match the discrete degenerate kernel") {
  const FockSpace fs(ModeSet::line(2, 0.9, 1.7));
  const AmplitudeSet amps(fs.modes(), amplitudes_from_angles(0.2, 0.1, -0.4));
  for (auto block : {PairBlock::BB, PairBlock::BtildeBtilde, PairBlock::BBtilde, PairBlock::AA,
                     PairBlock::AtildeAtilde, PairBlock::AAtilde}) {
    const auto rep = two_particle_oracle(fs, kBare, amps, block, 0.6);
    INFO("block " << to_string(block));
    CHECK(rep.block_invariance_residual < 1e-12);
    CHECK(rep.kernel_vs_block < 1e-10);
  }
  CHECK(restored_isospectrality(fs, kBare, amps, 0.6) < 1e-12);
}

TEST_CASE("free coupling: two-particle levels are sums of one-particle energies") {
  const FockSpace fs(ModeSet::line(2, 0.9, 1.7));
  const BareParams free_bare{1.0, 1.0, 0.0};
  const AmplitudeSet amps(fs.modes(), amplitudes_from_angles(0.0, 0.0, 0.0));
  const auto rep = two_particle_oracle(fs, free_bare, amps, PairBlock::AA, 0.0);
  const double e1 = free_bare.m + fs.modes().momentum(0).squaredNorm() / (2.0 * free_bare.m);
  CHECK(spectral_set_distance(rep.block_evals, {2.0 * e1}) < 1e-12);
}

TEST_CASE("mixed pair resolves to the symmetric propagator") {
  const FockSpace fs(ModeSet::line(2, 0.9, 1.7));
  const AmplitudeSet amps(fs.modes(), amplitudes_from_angles(0.2, 0.1, -0.4));
  const auto rep = two_particle_oracle(fs, kBare, amps, PairBlock::AAtilde);
  REQUIRE(rep.propagator_match_symmetric.has_value());
  REQUIRE(rep.propagator_match_printed.has_value());
  CHECK(*rep.propagator_match_symmetric < 1e-10);
  CHECK(*rep.propagator_match_printed > 1e-3);  // the printed reading does not fit
}

TEST_CASE("form invariance of H under the hidden symmetry") {
  const FockSpace fs(ModeSet::line(2, 0.9, 1.7));
  const AmplitudePair amps = amplitudes_from_angles(0.37, -0.8, 0.45);
  SECTION("identity at zero angles") {
    const auto rep = form_invariance_check(fs, kBare, amps, 0.0, 0.0, 0.0, 0.35);
    CHECK(rep.rebuilt_h_difference < 1e-12);
  }
  SECTION("generic angles") {
    const auto rep = form_invariance_check(fs, kBare, amps, 0.53, -0.21, 1.13, 0.35);
    CHECK(rep.rotated_constraint_residual < 1e-14);
    CHECK(rep.rebuilt_h_difference < 1e-12);
    CHECK(rep.rebuilt_fluctuation_norm < 1e-12);
  }
}

TEST_CASE("transcribed expansion: number-conserving part matches, fluctuation part is reported") {
  const FockSpace fs(ModeSet::line(2, 0.9, 1.7));
  SECTION("constraint-satisfying amplitudes") {
    const AmplitudeSet amps(fs.modes(), amplitudes_from_angles(0.37, -0.8, 0.45));
    const auto rep = compare_transcription(fs, kBare, amps);
    CHECK(rep.normal_diff < 1e-10);
    CHECK(rep.fluctuation_diff < 1e-12);  // both sides vanish
  }
  SECTION("violating amplitudes localize the printed fluctuation-term defects") {
    const AmplitudeSet amps(fs.modes(), violating_pair());
    const auto rep = compare_transcription(fs, kBare, amps);
    CHECK(rep.normal_diff < 1e-10);  // the number-conserving expansion is faithful
    // the printed fluctuation expansion differs from the field-level result
    // and is not even hermitian; reported, never corrected
    CHECK(rep.fluctuation_diff > 1e-3);
    CHECK(rep.transcribed_fluct_hermiticity_defect > 1e-3);
    CHECK(rep.field_fluct_hermiticity_defect < 1e-12);
  }
}

TEST_CASE("discrete kernel channels on three modes") {
  // three modes exercise a nontrivial isovector (odd) channel
  const ModeSet md = ModeSet::line(3, 0.8, 1.3);
  const auto res = discrete_two_particle(md, kBare, PairKind::BB);
  CHECK(res.isoscalar.size() == 2);  // even functions on {0, +-k}
  CHECK(res.isovector.size() == 1);
  const FockSpace fs(md);
  const AmplitudeSet amps(fs.modes(), amplitudes_from_angles(0.37, -0.8, 0.45));
  const auto rep = two_particle_oracle(fs, kBare, amps, PairBlock::BB, 0.6);
  CHECK(rep.kernel_vs_block < 1e-10);
}
