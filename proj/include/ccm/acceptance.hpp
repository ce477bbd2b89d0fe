// End-to-end acceptance checks: the quantitative claims the library stands
// behind, runnable both from the test suite and from `ccm-cli verify-all`.
// Each criterion prints one pass/fail line with its measured numbers.
#pragma once

#include <chrono>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "ccm/bound_state.hpp"
#include "ccm/discrete_kernel.hpp"
#include "ccm/fock/oracle.hpp"
#include "ccm/model.hpp"

namespace ccm {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double elapsed_s = 0.0;
};

namespace detail {

class Stopwatch {
 public:
  Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_;
};

}  // namespace detail

inline CriterionResult criterion_table1() {
  detail::Stopwatch sw;
  CriterionResult r{1, "table of isoscalar roots z(G) within 8% of published values", true, "", 0};
  std::ostringstream os;
  double worst = 0.0;
  for (const TableRow& row : table1(published_G_grid())) {
    if (!row.exists || !row.rel_deviation) {
      r.passed = false;
      os << "G=" << row.G << " missing root; ";
      continue;
    }
    worst = std::max(worst, *row.rel_deviation);
    if (*row.rel_deviation > 0.08) {
      r.passed = false;
      os << "G=" << row.G << " dev=" << *row.rel_deviation << "; ";
    }
  }
  const TableRow g5 = table1_row(5.0);
  if (std::abs(g5.z - 1.85) / 1.85 > 0.005) {
    r.passed = false;
    os << "z(5)=" << g5.z << " not 1.85 to 3 digits; ";
  }
  r.elapsed_s = sw.seconds();
  if (r.elapsed_s > 2.0) {
    r.passed = false;
    os << "runtime " << r.elapsed_s << "s exceeds 2s; ";
  }
  os << "worst deviation " << worst * 100.0 << "%, z(5)=" << g5.z << ", " << r.elapsed_s << "s";
  r.detail = os.str();
  return r;
}

inline CriterionResult criterion_asymptote() {
  detail::Stopwatch sw;
  CriterionResult r{2, "z(G=1e6) = sqrt(5/6) +/- 1e-3", false, "", 0};
  const BoundStateResult b = solve_isoscalar(scheme_from_physical(1.0, 1e6));
  const double target = std::sqrt(5.0 / 6.0);
  const double dev = std::abs(b.z - target);
  r.passed = b.exists && dev <= 1e-3;
  std::ostringstream os;
  os << "z = " << b.z << ", sqrt(5/6) = " << target << ", |dev| = " << dev
     << " (tolerance 1e-3; the exact root approaches the asymptote as ~25/(24 z sqrt(G)), "
        "which is 1.14e-3 at G=1e6)";
  r.detail = os.str();
  r.elapsed_s = sw.seconds();
  return r;
}

inline CriterionResult criterion_threshold() {
  detail::Stopwatch sw;
  CriterionResult r{3, "isoscalar existence threshold", true, "", 0};
  std::ostringstream os;
  for (double G : {0.5, 1.0, 1.1}) {
    if (solve_isoscalar(scheme_from_physical(1.0, G)).exists) {
      r.passed = false;
      os << "unexpected root at G=" << G << "; ";
    }
  }
  for (double G : {1.2, 1.5, 2.0}) {
    if (!solve_isoscalar(scheme_from_physical(1.0, G)).exists) {
      r.passed = false;
      os << "missing root at G=" << G << "; ";
    }
  }
  os << "no root for G in {0.5, 1.0, 1.1}, root for G in {1.2, 1.5, 2}";
  r.detail = os.str();
  r.elapsed_s = sw.seconds();
  return r;
}

inline CriterionResult criterion_isovector_nogo() {
  detail::Stopwatch sw;
  CriterionResult r{4, "isovector no-go: sup RHS < 2/3, approached at the corner", true, "", 0};
  double sup = 0.0;
  for (int gi = 0; gi <= 60; ++gi) {
    const double G = std::pow(10.0, -3.0 + 9.0 * gi / 60.0);
    for (int xi = 0; xi <= 30; ++xi) {
      const double x = (xi == 0) ? 0.0 : std::pow(10.0, -4.0 + 5.0 * (xi - 1) / 29.0);
      sup = std::max(sup, isovector_rhs(G, x));
    }
  }
  const double corner = isovector_rhs(1e6, 0.0);
  bool solver_ok = true;
  for (double G : {0.5, 5.0, 1e6})
    solver_ok = solver_ok && !solve_isovector(scheme_from_physical(1.0, G)).exists;
  r.passed = sup < 2.0 / 3.0 && corner > 2.0 / 3.0 - 3e-3 && solver_ok;
  std::ostringstream os;
  os << "sup = " << sup << " < 2/3, corner value " << corner << ", solver reports no solution";
  r.detail = os.str();
  r.elapsed_s = sw.seconds();
  return r;
}

inline CriterionResult criterion_critical_coupling() {
  detail::Stopwatch sw;
  CriterionResult r{5, "critical coupling", true, "", 0};
  const double gcr = critical_coupling();
  const double w_lo = vacuum_energy_density(scheme_from_physical(1.0, gcr - 0.1));
  const double w_hi = vacuum_energy_density(scheme_from_physical(1.0, gcr + 0.1));
  const double w_at = vacuum_energy_density(scheme_from_physical(1.0, gcr));
  r.passed = std::abs(gcr - 3.77921) <= 1e-5 && std::abs(gcr - 3.75) / 3.75 < 0.01 &&
             w_lo > 0.0 && w_hi < 0.0 && std::abs(w_at) < 1e-10;
  std::ostringstream os;
  os << "G_cr = " << gcr << " (quoted 3.75 within " << std::abs(gcr - 3.75) / 3.75 * 100.0
     << "%), W(" << gcr - 0.1 << ") = " << w_lo << ", W(" << gcr + 0.1 << ") = " << w_hi;
  r.detail = os.str();
  r.elapsed_s = sw.seconds();
  return r;
}

inline CriterionResult criterion_identities() {
  detail::Stopwatch sw;
  CriterionResult r{6, "algebraic identities at 1e-6 relative or better", true, "", 0};
  std::ostringstream os;
  double worst = 0.0;
  for (double G : {1.5, 2.0, 3.0, 5.0, 8.0, 10.0}) {
    const ModelScheme s = scheme_from_physical(1.0, G);
    // W in two parameterizations
    const double w1 = s.k2_avg / s.bare.m + 2.0 * s.bare.m - 4.0 * s.g;
    const double w2 = s.M * (3.0 * std::sqrt(1.0 + G) + 1.0 - 2.0 * G);
    worst = std::max(worst, std::abs(w1 - w2) / std::max(1.0, std::abs(w2)));
    // gap sum
    const MassGapReport mg = masses_and_gaps(s);
    worst = std::max(worst,
                     std::abs(mg.gap_sum - mg.gap_sum_check) / std::max(1.0, std::abs(mg.gap_sum)));
    // integrand decomposition
    const IntegralsI I = integrals_I(s, s.Lambda / 3.0);
    worst = std::max(worst, std::abs(I.I1 - 4.0 * s.bare.m * s.bare.m * I.I3 - I.I4) /
                                std::max(1.0, std::abs(I.I1)));
    // triple equivalence at the root
    const BoundStateResult b = solve_isoscalar(s);
    if (!b.exists) {
      r.passed = false;
      os << "no root at G=" << G << "; ";
      continue;
    }
    worst = std::max({worst, b.diagnostics.eq3_rel_residual, b.diagnostics.tan_rel_residual});
  }
  if (worst > 1e-6) r.passed = false;
  os << "worst relative residual " << worst;
  r.detail = os.str();
  r.elapsed_s = sw.seconds();
  return r;
}

inline CriterionResult criterion_renorm_series() {
  detail::Stopwatch sw;
  CriterionResult r{7, "weak-coupling limits with finite slope; next coefficients reported", true,
                    "", 0};
  std::ostringstream os;
  double max_slope = 0.0;
  for (double a0 : {1e-3, 1e-4, 1e-5}) {
    BareParams b{1.0, 1.0, a0 * 12.0 * kPi * kPi / std::pow(10.0 / 3.0, 1.5)};
    const ModelScheme s = renormalize(b);
    const double g_err = std::abs(s.g / (2.0 * a0) - 1.0);
    const double l_err = std::abs(s.Lambda / std::sqrt(10.0 / 3.0) - 1.0);
    if (g_err > 10.0 * a0 || l_err > 10.0 * a0) r.passed = false;
    max_slope = std::max({max_slope, g_err / a0, l_err / a0});
  }
  const SeriesFit f = fit_series();
  os << "limits reached with slope <= " << max_slope << "; fitted coefficients g: " << f.g_c1
     << " (printed " << f.printed_g_c1 << "), Lambda: " << f.lambda_c1 << " (printed "
     << f.printed_lambda_c1 << ")";
  r.detail = os.str();
  r.elapsed_s = sw.seconds();
  return r;
}

inline CriterionResult criterion_oracle_suite() {
  detail::Stopwatch sw;
  CriterionResult r{8, "operator-algebra oracle on 1 and 2 modes", true, "", 0};
  std::ostringstream os;
  const BareParams bare{1.0, 1.0, 0.35};
  const fock::AmplitudePair good = fock::amplitudes_from_angles(0.37, -0.8, 0.45);
  fock::AmplitudePair bad;
  bad.f << 1.0, 0.0;
  bad.g << 0.6, -0.8;  // unit norms but nonzero overlap
  for (int n : {1, 2}) {
    const fock::FockSpace fs(fock::ModeSet::line(n, 0.9, 1.7));
    const fock::AmplitudeSet amps(fs.modes(), good);
    const double car = fock::car_residual(fs);
    if (car > 1e-13) { r.passed = false; os << "CAR " << car << " at n=" << n << "; "; }
    const auto H = fock::build_hamiltonian(fs, bare, amps);
    const double hfl = fock::frobenius(H.fluctuation);
    if (hfl > 1e-12) { r.passed = false; os << "H_Fl " << hfl << " at n=" << n << "; "; }
    const auto Hbad = fock::build_hamiltonian(fs, bare, fock::AmplitudeSet(fs.modes(), bad));
    if (fock::frobenius(Hbad.fluctuation) < 1e-3) {
      r.passed = false;
      os << "violating pair left H_Fl ~ 0 at n=" << n << "; ";
    }
    const fock::ChargeSet cs = fock::build_charges(fs, 0.35);
    const auto alg = fock::verify_charge_algebra(fs, H.total(), cs);
    const double alg_worst =
        std::max({alg.max_su2q_residual, alg.max_isospin_residual, alg.max_mixed_residual,
                  alg.max_h_commutator_residual, alg.max_hermiticity_defect});
    if (alg_worst > 1e-12) { r.passed = false; os << "algebra " << alg_worst << " at n=" << n << "; "; }
    if (std::abs(alg.q3_vacuum + n) > 1e-12) {
      r.passed = false;
      os << "<0|Q3|0> = " << alg.q3_vacuum << " at n=" << n << "; ";
    }
    const auto mult = fock::multiplet_analysis(fs, cs);
    if (std::abs(mult.vacuum_casimir - n * (n + 1.0)) > 1e-11 ||
        std::abs(mult.one_particle_casimir - (n - 0.5) * (n + 0.5)) > 1e-11 ||
        mult.ladder_top_norm > 1e-11 || mult.qminus_vacuum_norm > 1e-12) {
      r.passed = false;
      os << "multiplet structure off at n=" << n << "; ";
    }
    const auto rest = fock::verify_restoration(fs, bare, amps, 0.6, 0.35);
    if (rest.q_annihilation > 1e-12 || rest.h_bvac_norm > 1e-12 ||
        rest.max_degeneracy_gap > 1e-12 || rest.bogoliubov_car_residual > 1e-13) {
      r.passed = false;
      os << "restoration residuals at n=" << n << "; ";
    }
    if (std::abs(rest.q3_b - 0.5) > 1e-12 || std::abs(rest.q3_btilde + 0.5) > 1e-12) {
      r.passed = false;
      os << "Q3 doublet off at n=" << n << "; ";
    }
    const auto fi = fock::form_invariance_check(fs, bare, good, 0.53, -0.21, 1.13, 0.35);
    if (fi.rotated_constraint_residual > 1e-14 || fi.rebuilt_h_difference > 1e-12) {
      r.passed = false;
      os << "form invariance " << fi.rebuilt_h_difference << " at n=" << n << "; ";
    }
  }
  r.elapsed_s = sw.seconds();
  if (r.elapsed_s > 30.0) {
    r.passed = false;
    os << "runtime " << r.elapsed_s << "s exceeds 30s; ";
  }
  os << "all residuals within 1e-12/1e-13 bands, " << r.elapsed_s << "s";
  r.detail = os.str();
  return r;
}

inline CriterionResult criterion_oracle_solver_equivalence() {
  detail::Stopwatch sw;
  CriterionResult r{9, "degenerate kernel matches exact diagonalization", true, "", 0};
  std::ostringstream os;
  const BareParams bare{1.0, 1.0, 0.35};
  const fock::FockSpace fs(fock::ModeSet::line(2, 0.9, 1.7));
  const fock::AmplitudeSet amps(fs.modes(), fock::amplitudes_from_angles(0.2, 0.1, -0.4));
  double worst = 0.0;
  for (auto block : {fock::PairBlock::BB, fock::PairBlock::BtildeBtilde, fock::PairBlock::BBtilde,
                     fock::PairBlock::AA, fock::PairBlock::AtildeAtilde, fock::PairBlock::AAtilde}) {
    const auto rep = fock::two_particle_oracle(fs, bare, amps, block, 0.6);
    worst = std::max(worst, rep.kernel_vs_block);
    if (rep.kernel_vs_block > 1e-10) {
      r.passed = false;
      os << to_string(block) << " kernel/block gap " << rep.kernel_vs_block << "; ";
    }
  }
  const double iso = fock::restored_isospectrality(fs, bare, amps, 0.6);
  if (iso > 1e-12) {
    r.passed = false;
    os << "restored blocks not isospectral: " << iso << "; ";
  }
  os << "worst kernel/block gap " << worst << ", restored isospectrality " << iso;
  r.detail = os.str();
  r.elapsed_s = sw.seconds();
  return r;
}

inline std::vector<CriterionResult> run_acceptance() {
  return {criterion_table1(),          criterion_asymptote(),
          criterion_threshold(),       criterion_isovector_nogo(),
          criterion_critical_coupling(), criterion_identities(),
          criterion_renorm_series(),   criterion_oracle_suite(),
          criterion_oracle_solver_equivalence()};
}

}  // namespace ccm
