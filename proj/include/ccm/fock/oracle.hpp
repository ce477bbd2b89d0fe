// Verification reports for the exact-diagonalization oracle: eigenstate
// structure of H, charge algebra, multiplet classification, Bogoliubov
// symmetry restoration, two-particle blocks against the discrete degenerate
// kernel, and literal form invariance of the Hamiltonian.
#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "ccm/discrete_kernel.hpp"
#include "ccm/fock/amplitudes.hpp"
#include "ccm/fock/charges.hpp"
#include "ccm/fock/hamiltonian.hpp"
#include "ccm/fock/space.hpp"

namespace ccm::fock {

inline double rayleigh(const SpMat& H, const DenseVec& v) {
  return (v.adjoint() * (H * v))(0).real() / v.squaredNorm();
}

inline double eigen_residual(const SpMat& H, const DenseVec& v) {
  const DenseVec hv = H * v;
  const double e = (v.adjoint() * hv)(0).real() / v.squaredNorm();
  return (hv - e * v).norm() / v.norm();
}

// Orthonormal basis of the span of the given vectors (rank-revealing).
inline DenseMat orthonormal_span(const std::vector<DenseVec>& vecs, double rank_tol = 1e-9) {
  DenseMat M(vecs.front().size(), static_cast<int>(vecs.size()));
  for (int c = 0; c < M.cols(); ++c) M.col(c) = vecs[static_cast<std::size_t>(c)];
  Eigen::JacobiSVD<DenseMat> svd(M, Eigen::ComputeThinU);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > rank_tol * svd.singularValues()(0)) ++rank;
  return svd.matrixU().leftCols(rank);
}

// Two-sided set distance between eigenvalue lists (multiplicity-insensitive).
inline double spectral_set_distance(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) return a.empty() && b.empty() ? 0.0 : 1e300;
  auto one_way = [](const std::vector<double>& x, const std::vector<double>& y) {
    double worst = 0.0;
    for (double xv : x) {
      double best = 1e300;
      for (double yv : y) best = std::min(best, std::abs(xv - yv));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_way(a, b), one_way(b, a));
}

// ---------------------------------------------------------------------------
// One-particle spectra and block structure
// ---------------------------------------------------------------------------

struct SpectraReport {
  double vacuum_energy = 0.0;
  double vacuum_energy_expected = 0.0;
  double vacuum_residual = 0.0;
  double max_one_particle_residual = 0.0;
  double max_energy_formula_mismatch = 0.0;  // against the discrete closed forms
  double affine_fit_residual = 0.0;          // E vs k^2 linearity, per species
  double max_two_particle_block_residual = 0.0;
};

inline SpectraReport verify_spectra(const FockSpace& fs, const BareParams& bare,
                                    const AmplitudeSet& amps) {
  const ModeSet& md = fs.modes();
  const int n = md.size();
  const SpMat H = build_hamiltonian(fs, bare, amps).total();
  SpectraReport rep;
  const DenseVec vac = fs.vacuum();
  rep.vacuum_energy = rayleigh(H, vac);
  rep.vacuum_energy_expected = discrete_vacuum_energy(md, bare);
  rep.vacuum_residual = eigen_residual(H, vac);

  std::vector<double> k2s, eAs, eAts;
  for (int j = 0; j < n; ++j) {
    const Eigen::Vector3d k = md.momentum(j);
    for (int al = 0; al < 2; ++al) {
      const DenseVec sA = fs.at(al, j) * vac;
      const DenseVec sT = fs.tat(al, j) * vac;
      rep.max_one_particle_residual =
          std::max({rep.max_one_particle_residual, eigen_residual(H, sA), eigen_residual(H, sT)});
      const double eA = rayleigh(H, sA) - rep.vacuum_energy;
      const double eT = rayleigh(H, sT) - rep.vacuum_energy;
      rep.max_energy_formula_mismatch = std::max(
          {rep.max_energy_formula_mismatch,
           std::abs(eA - discrete_energy(PairKind::AA, k, md, bare)),
           std::abs(eT - discrete_energy(PairKind::AtildeAtilde, k, md, bare))});
      if (al == 0) {
        k2s.push_back(k.squaredNorm());
        eAs.push_back(eA);
        eAts.push_back(eT);
      }
    }
  }
  // least-squares affine fit E = a + b k^2
  auto affine_residual = [&](const std::vector<double>& es) {
    const int m = static_cast<int>(es.size());
    if (m < 3) return 0.0;  // fit is exact
    double sx = 0, sxx = 0, sy = 0, sxy = 0;
    for (int i = 0; i < m; ++i) {
      sx += k2s[static_cast<std::size_t>(i)];
      sxx += k2s[static_cast<std::size_t>(i)] * k2s[static_cast<std::size_t>(i)];
      sy += es[static_cast<std::size_t>(i)];
      sxy += k2s[static_cast<std::size_t>(i)] * es[static_cast<std::size_t>(i)];
    }
    const double det = m * sxx - sx * sx;
    const double b = (m * sxy - sx * sy) / det;
    const double a = (sy - b * sx) / m;
    double worst = 0.0;
    for (int i = 0; i < m; ++i)
      worst = std::max(worst,
                       std::abs(es[static_cast<std::size_t>(i)] -
                                (a + b * k2s[static_cast<std::size_t>(i)])));
    return worst;
  };
  rep.affine_fit_residual = std::max(affine_residual(eAs), affine_residual(eAts));

  // two-particle subspaces at fixed total momentum are H-invariant
  for (int kind = 0; kind < 3; ++kind) {
    std::vector<std::pair<Coord, std::vector<DenseVec>>> groups;
    for (int j1 = 0; j1 < n; ++j1)
      for (int j2 = 0; j2 < n; ++j2)
        for (int a1 = 0; a1 < 2; ++a1)
          for (int a2 = 0; a2 < 2; ++a2) {
            const SpMat& c1 = (kind == 2) ? fs.tat(a1, j1) : fs.at(a1, j1);
            const SpMat& c2 = (kind == 0) ? fs.at(a2, j2) : fs.tat(a2, j2);
            DenseVec v = c1 * (c2 * vac);
            if (v.norm() < 1e-12) continue;
            const Coord p = md.coord(j1) + md.coord(j2);
            bool found = false;
            for (auto& [pc, vs] : groups)
              if (pc == p) {
                vs.push_back(v);
                found = true;
              }
            if (!found) groups.push_back({p, {v}});
          }
    for (const auto& [pc, vs] : groups) {
      const DenseMat Qb = orthonormal_span(vs);
      const DenseMat HQ = H * Qb;
      const double res = (HQ - Qb * (Qb.adjoint() * HQ)).cwiseAbs().maxCoeff();
      rep.max_two_particle_block_residual = std::max(rep.max_two_particle_block_residual, res);
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Charge algebra
// ---------------------------------------------------------------------------

struct ChargeAlgebraReport {
  double max_su2q_residual = 0.0;
  double max_isospin_residual = 0.0;
  double max_mixed_residual = 0.0;    // [Q_i, T_j]
  double max_h_commutator_residual = 0.0;
  double max_hermiticity_defect = 0.0;
  double q3_vacuum = 0.0;
  double q12_vacuum = 0.0;  // max |<0|Q_1|0>|, |<0|Q_2|0>|
};

inline ChargeAlgebraReport verify_charge_algebra(const FockSpace& fs, const SpMat& H,
                                                 const ChargeSet& cs) {
  using namespace std::complex_literals;
  ChargeAlgebraReport rep;
  const std::array<const SpMat*, 3> Q = {&cs.Q1, &cs.Q2, &cs.Q3};
  auto lev = [](int i, int j, int k) { return double((i - j) * (j - k) * (k - i)) / 2.0; };
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      SpMat targetQ = fs.zero(), targetT = fs.zero();
      for (int k = 0; k < 3; ++k) {
        if (lev(i, j, k) != 0.0) {
          targetQ += lev(i, j, k) * *Q[static_cast<std::size_t>(k)];
          targetT += lev(i, j, k) * cs.T[static_cast<std::size_t>(k)];
        }
      }
      rep.max_su2q_residual =
          std::max(rep.max_su2q_residual,
                   frobenius(SpMat(commutator(*Q[static_cast<std::size_t>(i)],
                                              *Q[static_cast<std::size_t>(j)]) -
                                   1i * targetQ)));
      rep.max_isospin_residual =
          std::max(rep.max_isospin_residual,
                   frobenius(SpMat(commutator(cs.T[static_cast<std::size_t>(i)],
                                              cs.T[static_cast<std::size_t>(j)]) -
                                   1i * targetT)));
      rep.max_mixed_residual =
          std::max(rep.max_mixed_residual,
                   frobenius(commutator(*Q[static_cast<std::size_t>(i)],
                                        cs.T[static_cast<std::size_t>(j)])));
    }
    rep.max_h_commutator_residual =
        std::max({rep.max_h_commutator_residual,
                  frobenius(commutator(H, *Q[static_cast<std::size_t>(i)])),
                  frobenius(commutator(H, cs.T[static_cast<std::size_t>(i)]))});
    rep.max_hermiticity_defect = std::max(
        {rep.max_hermiticity_defect,
         frobenius(SpMat(*Q[static_cast<std::size_t>(i)] -
                         SpMat(Q[static_cast<std::size_t>(i)]->adjoint()))),
         frobenius(SpMat(cs.T[static_cast<std::size_t>(i)] -
                         SpMat(cs.T[static_cast<std::size_t>(i)].adjoint())))});
  }
  rep.max_h_commutator_residual =
      std::max(rep.max_h_commutator_residual, frobenius(commutator(H, cs.Q_U1)));
  const DenseVec vac = fs.vacuum();
  rep.q3_vacuum = rayleigh(cs.Q3, vac);
  rep.q12_vacuum = std::max(std::abs((vac.adjoint() * (cs.Q1 * vac))(0)),
                            std::abs((vac.adjoint() * (cs.Q2 * vac))(0)));
  return rep;
}

// ---------------------------------------------------------------------------
// Multiplet classification
// ---------------------------------------------------------------------------

struct MultipletReport {
  double vacuum_casimir = 0.0;        // expect n(n+1)
  double vacuum_casimir_residual = 0.0;
  double qminus_vacuum_norm = 0.0;    // expect 0
  int ladder_levels_nonzero = 0;      // expect 2n
  double ladder_top_norm = 0.0;       // (Q+)^{2n+1}|0>, expect 0
  double max_ladder_q3_error = 0.0;   // Q3 on (Q+)^j|0> is -n + j
  double one_particle_casimir = 0.0;  // expect (n-1/2)(n+1/2)
  double one_particle_q3 = 0.0;       // expect -n + 1/2
  double one_particle_qminus_norm = 0.0;
  double two_excitation_casimir = 0.0;  // expect (n-1)n
};

inline MultipletReport multiplet_analysis(const FockSpace& fs, const ChargeSet& cs) {
  MultipletReport rep;
  const int n = fs.modes().size();
  const SpMat Q2m = cs.casimir();
  const SpMat Qp = cs.q_plus(), Qm = cs.q_minus();
  const DenseVec vac = fs.vacuum();
  rep.vacuum_casimir = rayleigh(Q2m, vac);
  rep.vacuum_casimir_residual = eigen_residual(Q2m, vac);
  rep.qminus_vacuum_norm = (Qm * vac).norm();
  DenseVec st = vac;
  for (int step = 1; step <= 2 * n + 1; ++step) {
    st = Qp * st;
    const double nr = st.norm();
    if (step <= 2 * n) {
      if (nr > 1e-12) {
        ++rep.ladder_levels_nonzero;
        rep.max_ladder_q3_error =
            std::max(rep.max_ladder_q3_error, std::abs(rayleigh(cs.Q3, st) - (-n + step)));
      }
    } else {
      rep.ladder_top_norm = nr;
    }
  }
  const DenseVec one = fs.at(0, 0) * vac;
  rep.one_particle_casimir = rayleigh(Q2m, one);
  rep.one_particle_q3 = rayleigh(cs.Q3, one);
  rep.one_particle_qminus_norm = (Qm * one).norm();
  const DenseVec two =
      (n >= 2) ? DenseVec(fs.at(0, 0) * (fs.at(0, 1) * vac)) : DenseVec(fs.at(0, 0) * (fs.at(1, 0) * vac));
  rep.two_excitation_casimir = rayleigh(Q2m, two);
  return rep;
}

// ---------------------------------------------------------------------------
// Bogoliubov restoration at omega = pi/2
// ---------------------------------------------------------------------------

struct RestorationReport {
  double bogoliubov_car_residual = 0.0;  // CAR of transformed ladders
  double generator_match = 0.0;          // closed form vs U+ tA U
  double q_annihilation = 0.0;           // max over Q1,Q2,Q3,Q_U1 of ||Q |0>_B||
  double t_annihilation = 0.0;
  double h_bvac_norm = 0.0;              // ||H |0>_B|| (eigenvalue is exactly 0)
  double casimir_bvac_norm = 0.0;        // singlet
  double max_b_particle_residual = 0.0;
  double max_degeneracy_gap = 0.0;       // |E_B - E_Btilde|
  double max_energy_formula_mismatch = 0.0;
  double q3_b = 0.0;                     // expect +1/2
  double q3_btilde = 0.0;                // expect -1/2
};

inline RestorationReport verify_restoration(const FockSpace& fs, const BareParams& bare,
                                            const AmplitudeSet& amps, double phi,
                                            double omega_phase = 0.0) {
  const ModeSet& md = fs.modes();
  const int n = md.size();
  const SpMat H = build_hamiltonian(fs, bare, amps).total();
  const ChargeSet cs = build_charges(fs, omega_phase);
  RestorationReport rep;

  // CAR after transform, at a generic angle, and generator consistency
  const double w_test = 0.7234;
  {
    std::vector<SpMat> bt;
    for (int al = 0; al < 2; ++al)
      for (int j = 0; j < n; ++j) bt.push_back(bogoliubov_btilde(fs, al, j, w_test, phi));
    const SpMat id = fs.identity();
    for (std::size_t i = 0; i < bt.size(); ++i)
      for (std::size_t j = 0; j < bt.size(); ++j) {
        SpMat ac = anticommutator(bt[i], SpMat(bt[j].adjoint()));
        if (i == j) ac = SpMat(ac - id);
        rep.bogoliubov_car_residual = std::max(
            {rep.bogoliubov_car_residual, frobenius(ac), frobenius(anticommutator(bt[i], bt[j]))});
      }
    const DenseMat U = unitary_from_generator(bogoliubov_generator(fs, phi), w_test);
    for (int al = 0; al < 2; ++al)
      for (int j = 0; j < n; ++j) {
        const DenseMat lhs = U.adjoint() * DenseMat(fs.ta(al, j)) * U;
        const DenseMat rhs = DenseMat(bogoliubov_btilde(fs, al, j, w_test, phi));
        rep.generator_match = std::max(rep.generator_match, (lhs - rhs).cwiseAbs().maxCoeff());
      }
  }

  const DenseVec bvac = fs.atilde_filled();
  rep.q_annihilation = std::max({(cs.Q1 * bvac).norm(), (cs.Q2 * bvac).norm(),
                                 (cs.Q3 * bvac).norm(), (cs.Q_U1 * bvac).norm()});
  for (const auto& t : cs.T) rep.t_annihilation = std::max(rep.t_annihilation, (t * bvac).norm());
  rep.h_bvac_norm = (H * bvac).norm();
  rep.casimir_bvac_norm = (cs.casimir() * bvac).norm();

  const double w = kPi / 2.0;
  for (int j = 0; j < n; ++j) {
    const Eigen::Vector3d k = md.momentum(j);
    const double e_expect = discrete_energy(PairKind::BB, k, md, bare);
    for (int al = 0; al < 2; ++al) {
      const DenseVec b_state = fs.at(al, j) * bvac;  // B+ = A+
      const DenseVec bt_state = SpMat(bogoliubov_btilde(fs, al, j, w, phi).adjoint()) * bvac;
      rep.max_b_particle_residual = std::max(
          {rep.max_b_particle_residual, eigen_residual(H, b_state), eigen_residual(H, bt_state)});
      const double eb = rayleigh(H, b_state), ebt = rayleigh(H, bt_state);
      rep.max_degeneracy_gap = std::max(rep.max_degeneracy_gap, std::abs(eb - ebt));
      rep.max_energy_formula_mismatch =
          std::max({rep.max_energy_formula_mismatch, std::abs(eb - e_expect)});
      if (j == 0 && al == 0) {
        rep.q3_b = rayleigh(cs.Q3, b_state);
        rep.q3_btilde = rayleigh(cs.Q3, bt_state);
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Two-particle zero-momentum blocks vs the discrete degenerate kernel
// ---------------------------------------------------------------------------

enum class PairBlock { BB, BtildeBtilde, BBtilde, AA, AtildeAtilde, AAtilde };

inline const char* to_string(PairBlock b) {
  switch (b) {
    case PairBlock::BB: return "BB";
    case PairBlock::BtildeBtilde: return "BtBt";
    case PairBlock::BBtilde: return "BBt";
    case PairBlock::AA: return "AA";
    case PairBlock::AtildeAtilde: return "AtAt";
    case PairBlock::AAtilde: return "AAt";
  }
  return "?";
}

struct TwoParticleReport {
  PairBlock block = PairBlock::BB;
  std::vector<double> block_evals;   // measured from the sector vacuum
  std::vector<double> kernel_evals;  // degenerate-kernel prediction
  double kernel_vs_block = 0.0;      // two-sided set distance
  double block_invariance_residual = 0.0;
  // Mixed broken pair only: set distances under the two propagator readings.
  std::optional<double> propagator_match_symmetric;  // E_A + E_Atilde
  std::optional<double> propagator_match_printed;    // E_Atilde + E_Atilde
};

inline TwoParticleReport two_particle_oracle(const FockSpace& fs, const BareParams& bare,
                                             const AmplitudeSet& amps, PairBlock block,
                                             double phi = 0.0) {
  const ModeSet& md = fs.modes();
  const int n = md.size();
  const SpMat H = build_hamiltonian(fs, bare, amps).total();
  TwoParticleReport rep;
  rep.block = block;

  const bool restored =
      block == PairBlock::BB || block == PairBlock::BtildeBtilde || block == PairBlock::BBtilde;
  const DenseVec base_vac = restored ? fs.atilde_filled() : fs.vacuum();
  const double vac_energy = rayleigh(H, base_vac);

  auto creator = [&](bool tilde, int al, int j) -> SpMat {
    if (!restored) return tilde ? fs.tat(al, j) : fs.at(al, j);
    if (!tilde) return fs.at(al, j);  // B+ = A+
    return SpMat(bogoliubov_btilde(fs, al, j, kPi / 2.0, phi).adjoint());
  };
  const bool first_tilde = (block == PairBlock::BtildeBtilde || block == PairBlock::AtildeAtilde);
  const bool second_tilde = (block != PairBlock::BB && block != PairBlock::AA);

  std::vector<DenseVec> states;
  for (int j = 0; j < n; ++j) {
    const int jm = md.negated(j);
    for (int a1 = 0; a1 < 2; ++a1)
      for (int a2 = 0; a2 < 2; ++a2) {
        DenseVec v = creator(first_tilde, a1, j) * (creator(second_tilde, a2, jm) * base_vac);
        if (v.norm() > 1e-12) states.push_back(v);
      }
  }
  const DenseMat Qb = orthonormal_span(states);
  const DenseMat HQ = H * Qb;
  rep.block_invariance_residual = (HQ - Qb * (Qb.adjoint() * HQ)).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<DenseMat> es(DenseMat(Qb.adjoint() * HQ));
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    rep.block_evals.push_back(es.eigenvalues()(i) - vac_energy);

  // kernel prediction
  auto flatten = [](const DiscreteKernelResult& r) {
    std::vector<double> v = r.all;
    v.insert(v.end(), r.isoscalar.begin(), r.isoscalar.end());
    v.insert(v.end(), r.isovector.begin(), r.isovector.end());
    std::sort(v.begin(), v.end());
    return v;
  };
  PairKind kind;
  switch (block) {
    case PairBlock::BB:
    case PairBlock::BtildeBtilde:
    case PairBlock::BBtilde:
      kind = PairKind::BB;
      break;
    case PairBlock::AA:
      kind = PairKind::AA;
      break;
    case PairBlock::AtildeAtilde:
      kind = PairKind::AtildeAtilde;
      break;
    case PairBlock::AAtilde:
      kind = PairKind::AAtilde;
      break;
  }
  rep.kernel_evals = flatten(discrete_two_particle(md, bare, kind));
  rep.kernel_vs_block = spectral_set_distance(rep.kernel_evals, rep.block_evals);
  if (block == PairBlock::AAtilde) {
    rep.propagator_match_symmetric = rep.kernel_vs_block;
    rep.propagator_match_printed = spectral_set_distance(
        flatten(discrete_two_particle_mixed(md, bare, PairKind::AtildeAtilde,
                                            PairKind::AtildeAtilde)),
        rep.block_evals);
  }
  return rep;
}

// Isospectrality of the three restored-sector pair blocks.
inline double restored_isospectrality(const FockSpace& fs, const BareParams& bare,
                                      const AmplitudeSet& amps, double phi = 0.0) {
  const auto bb = two_particle_oracle(fs, bare, amps, PairBlock::BB, phi);
  const auto tt = two_particle_oracle(fs, bare, amps, PairBlock::BtildeBtilde, phi);
  const auto bt = two_particle_oracle(fs, bare, amps, PairBlock::BBtilde, phi);
  return std::max(spectral_set_distance(bb.block_evals, tt.block_evals),
                  spectral_set_distance(bb.block_evals, bt.block_evals));
}

// ---------------------------------------------------------------------------
// Form invariance under the hidden symmetry
// ---------------------------------------------------------------------------

struct FormInvarianceReport {
  double rotated_constraint_residual = 0.0;  // (N, M) satisfy the constraints
  double rebuilt_h_difference = 0.0;         // H(N, M, U+LU) vs H(f, g, L)
  double rebuilt_fluctuation_norm = 0.0;
};

inline FormInvarianceReport form_invariance_check(const FockSpace& fs, const BareParams& bare,
                                                  const AmplitudePair& amps, double alpha,
                                                  double beta, double gamma,
                                                  double omega_phase = 0.0) {
  FormInvarianceReport rep;
  const AmplitudePair rot = rotated_amplitudes(amps, alpha, beta, gamma, omega_phase);
  rep.rotated_constraint_residual =
      std::max({rot.completeness_residual(), rot.orthogonality_residual()});
  const ChargeSet cs = build_charges(fs, omega_phase);
  const DenseMat U = group_element(cs, alpha, beta, gamma);
  const LadderSet rotated = LadderSet::standard(fs).conjugated(U);
  const HamiltonianParts H0 = build_hamiltonian(fs, bare, AmplitudeSet(fs.modes(), amps));
  const HamiltonianParts H1 =
      build_hamiltonian(fs, bare, AmplitudeSet(fs.modes(), rot), rotated);
  rep.rebuilt_h_difference = frobenius(SpMat(H1.total() - H0.total()));
  rep.rebuilt_fluctuation_norm = frobenius(H1.fluctuation);
  return rep;
}

}  // namespace ccm::fock
