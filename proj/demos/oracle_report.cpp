// Exact-diagonalization oracle on two momentum modes: charge algebra,
// restoration, and two-particle kernel agreement.
#include <cstdio>

#include "ccm/fock/oracle.hpp"

int main() {
  using namespace ccm;
  const BareParams bare{1.0, 1.0, 0.35};
  const fock::FockSpace fs(fock::ModeSet::line(2, 0.9, 1.7));
  const fock::AmplitudeSet amps(fs.modes(), fock::amplitudes_from_angles(0.37, -0.8, 0.45));

  std::printf("CAR residual:              %.3e\n", fock::car_residual(fs));
  const auto H = fock::build_hamiltonian(fs, bare, amps);
  std::printf("fluctuation norm:          %.3e\n", fock::frobenius(H.fluctuation));

  const fock::ChargeSet cs = fock::build_charges(fs);
  const auto alg = fock::verify_charge_algebra(fs, H.total(), cs);
  std::printf("su(2)_Q algebra residual:  %.3e\n", alg.max_su2q_residual);
  std::printf("<0|Q3|0>:                  %+.1f (modes: %d)\n", alg.q3_vacuum, fs.modes().size());

  const auto rest = fock::verify_restoration(fs, bare, amps, 0.6);
  std::printf("B-vacuum charge residual:  %.3e\n", rest.q_annihilation);
  std::printf("E_B vs E_Btilde gap:       %.3e\n", rest.max_degeneracy_gap);

  const auto two = fock::two_particle_oracle(fs, bare, amps, fock::PairBlock::BB, 0.6);
  std::printf("kernel vs block (BB):      %.3e\n", two.kernel_vs_block);
  std::printf("lowest pair level:         %.6f\n", two.block_evals.front());
  return 0;
}
