// Conserved charges of the model: the hidden-symmetry pair charges Q1, Q2 and
// counting charge Q3, the isospin generators T_i, and the U(1) charge; plus
// the Bogoliubov transformation that saturates the vacuum with isosinglet
// pairs.
//
// The isospin generators are built from the field-level definition
// (1/2) int Psi+ tau^i Psi, which puts the Atilde bilinear in the order
// tau_{ab} tA_a tA+_b; only with this ordering do all seven charges close the
// su(2) x su(2) x u(1) algebra.
#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "ccm/fock/hamiltonian.hpp"
#include "ccm/fock/space.hpp"

namespace ccm::fock {

struct ChargeSet {
  SpMat Q1, Q2, Q3, Q_U1;
  std::array<SpMat, 3> T;
  double omega_phase = 0.0;

  SpMat casimir() const { return SpMat(SpMat(Q1 * Q1) + SpMat(Q2 * Q2) + SpMat(Q3 * Q3)); }
  SpMat q_plus() const { return SpMat(Q1 + Complex(0.0, 1.0) * Q2); }
  SpMat q_minus() const { return SpMat(Q1 - Complex(0.0, 1.0) * Q2); }
};

inline ChargeSet build_charges(const FockSpace& fs, double omega_phase = 0.0) {
  using namespace std::complex_literals;
  const ModeSet& md = fs.modes();
  const int n = md.size();
  ChargeSet cs;
  cs.omega_phase = omega_phase;
  cs.Q1 = fs.zero();
  cs.Q2 = fs.zero();
  cs.Q3 = fs.zero();
  cs.Q_U1 = fs.zero();
  for (auto& t : cs.T) t = fs.zero();
  const Complex eiw = std::exp(1i * omega_phase);
  const std::array<Eigen::Matrix2cd, 3> tau = {
      (Eigen::Matrix2cd() << 0, 1, 1, 0).finished(),
      (Eigen::Matrix2cd() << 0, Complex(0, -1), Complex(0, 1), 0).finished(),
      (Eigen::Matrix2cd() << 1, 0, 0, -1).finished()};
  for (int j = 0; j < n; ++j) {
    const int jm = md.negated(j);
    for (int al = 0; al < 2; ++al) {
      const SpMat pair_c = SpMat(fs.at(al, j) * fs.tat(al, jm));  // A+(k) tA+(-k)
      const SpMat pair_a = SpMat(fs.ta(al, jm) * fs.a(al, j));    // tA(-k) A(k)
      cs.Q1 += 0.5i * (eiw * pair_c - std::conj(eiw) * pair_a);
      cs.Q2 += 0.5 * (eiw * pair_c + std::conj(eiw) * pair_a);
      cs.Q3 += 0.5 * (SpMat(fs.at(al, j) * fs.a(al, j)) - SpMat(fs.ta(al, j) * fs.tat(al, j)));
      cs.Q_U1 += SpMat(fs.at(al, j) * fs.a(al, j)) + SpMat(fs.ta(al, j) * fs.tat(al, j));
      for (int i = 0; i < 3; ++i)
        for (int be = 0; be < 2; ++be)
          if (tau[i](al, be) != 0.0)
            cs.T[i] += 0.5 * tau[i](al, be) *
                       (SpMat(fs.at(al, j) * fs.a(be, j)) + SpMat(fs.ta(al, j) * fs.tat(be, j)));
    }
  }
  return cs;
}

// ---------------------------------------------------------------------------
// Bogoliubov sector
// ---------------------------------------------------------------------------

inline constexpr std::array<std::array<double, 2>, 2> kEps = {{{0.0, 1.0}, {-1.0, 0.0}}};

// tB_alpha(k) = cos(w) tA_alpha(k) - e^{i phi} sin(w) eps_{alpha beta} tA+_beta(-k)
inline SpMat bogoliubov_btilde(const FockSpace& fs, int alpha, int j, double omega, double phi) {
  using namespace std::complex_literals;
  const int jm = fs.modes().negated(j);
  SpMat out = SpMat(std::cos(omega) * fs.ta(alpha, j));
  for (int be = 0; be < 2; ++be)
    if (kEps[alpha][be] != 0.0)
      out -= std::exp(1i * phi) * std::sin(omega) * kEps[alpha][be] * fs.tat(be, jm);
  return out;
}

// Hermitian generator whose exponential produces the transform above:
// (i/2) sum_k eps_{ab} [e^{i phi} tA+_a(k) tA+_b(-k) + e^{-i phi} tA_a(k) tA_b(-k)]
inline SpMat bogoliubov_generator(const FockSpace& fs, double phi) {
  using namespace std::complex_literals;
  const ModeSet& md = fs.modes();
  SpMat q = fs.zero();
  for (int j = 0; j < md.size(); ++j) {
    const int jm = md.negated(j);
    for (int al = 0; al < 2; ++al)
      for (int be = 0; be < 2; ++be) {
        if (kEps[al][be] == 0.0) continue;
        q += 0.5i * kEps[al][be] *
             (std::exp(1i * phi) * SpMat(fs.tat(al, j) * fs.tat(be, jm)) +
              std::exp(-1i * phi) * SpMat(fs.ta(al, j) * fs.ta(be, jm)));
      }
  }
  return q;
}

// U = exp(i angle * generator) for a Hermitian generator, via eigendecomposition.
inline DenseMat unitary_from_generator(const SpMat& hermitian_generator, double angle) {
  using namespace std::complex_literals;
  DenseMat g = DenseMat(hermitian_generator);
  Eigen::SelfAdjointEigenSolver<DenseMat> es(g);
  DenseVec phase = (1i * angle * es.eigenvalues().array().cast<Complex>()).exp();
  return es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
}

// Group element of the hidden symmetry, U(alpha, beta, gamma).
inline DenseMat group_element(const ChargeSet& cs, double alpha, double beta, double gamma) {
  return unitary_from_generator(cs.Q3, gamma) * unitary_from_generator(cs.Q2, beta) *
         unitary_from_generator(cs.Q1, alpha);
}

// Ladder set of the restored sector at rotation angle omega: B = A,
// tB from the closed form above.
inline LadderSet bogoliubov_ladders(const FockSpace& fs, double omega, double phi) {
  LadderSet L = LadderSet::standard(fs);
  const int n = fs.modes().size();
  for (int al = 0; al < 2; ++al)
    for (int j = 0; j < n; ++j) {
      L.ta[al][j] = bogoliubov_btilde(fs, al, j, omega, phi);
      L.tat[al][j] = SpMat(L.ta[al][j].adjoint());
    }
  return L;
}

}  // namespace ccm::fock
