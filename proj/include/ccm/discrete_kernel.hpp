// Degenerate-kernel two-particle problem with sums in place of integrals, on
// an explicit finite momentum set.  This is the continuum solver's reduction
// re-derived for a discrete mode set; the exact-diagonalization oracle must
// reproduce its eigenvalues on the zero-total-momentum block.
//
// On the mode set, the one-particle corrections take the continuum form with
// g -> g_d = lambda n / Omega and <k^2> -> sum k^2 / n.
#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "ccm/fock/modes.hpp"
#include "ccm/model.hpp"

namespace ccm {

enum class PairKind { BB, AA, AtildeAtilde, AAtilde };

struct DiscreteModel {
  double g_d = 0.0;
  double k2_d = 0.0;

  DiscreteModel(const fock::ModeSet& md, const BareParams& bare) {
    const int n = md.size();
    g_d = bare.lambda * n / md.omega_volume();
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += md.momentum(j).squaredNorm();
    k2_d = s / n;
  }
};

// One-particle energies on the mode set, measured from the vacuum eigenvalue.
inline double discrete_energy(PairKind kind_of_branch, const Eigen::Vector3d& k,
                              const fock::ModeSet& md, const BareParams& bare) {
  const DiscreteModel dm(md, bare);
  const double m = bare.m, c = bare.c;
  const double eps = k.squaredNorm() / (2.0 * m) + m * c * c;
  const double shift = dm.g_d * (k.squaredNorm() + dm.k2_d) / (4.0 * m * m * c * c);
  switch (kind_of_branch) {
    case PairKind::AA:
      return eps + shift - 5.0 * dm.g_d;
    case PairKind::AtildeAtilde:
      return -eps + shift + 3.0 * dm.g_d;
    case PairKind::BB:
      return eps + shift - dm.g_d;
    default:
      throw std::invalid_argument("discrete_energy: mixed pair is not a branch");
  }
}

inline double discrete_vacuum_energy(const fock::ModeSet& md, const BareParams& bare) {
  const int n = md.size();
  double e = 0.0;
  for (int j = 0; j < n; ++j)
    e += 2.0 * (md.momentum(j).squaredNorm() / (2.0 * bare.m) + bare.m * bare.c * bare.c);
  return e - 4.0 * double(n) * n * bare.lambda / md.omega_volume();
}

struct DiscreteKernelResult {
  std::vector<double> isoscalar;  // even-parity channel eigenvalues
  std::vector<double> isovector;  // odd-parity channel eigenvalues
  std::vector<double> all;        // mixed pair: no parity constraint
};

// Mixed pair with explicit branch choices for the two propagators (used to
// settle which one-particle energies enter the A-Atilde pair).
inline DiscreteKernelResult discrete_two_particle_mixed(const fock::ModeSet& md,
                                                        const BareParams& bare, PairKind branch1,
                                                        PairKind branch2) {
  const int n = md.size();
  const double beta = 1.0 / (4.0 * bare.m * bare.m * bare.c * bare.c);
  const double co = 2.0 * bare.lambda / md.omega_volume();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const Eigen::Vector3d k = md.momentum(i);
    A(i, i) += discrete_energy(branch1, k, md, bare) + discrete_energy(branch2, -k, md, bare);
    for (int l = 0; l < n; ++l) {
      const Eigen::Vector3d q = md.momentum(l);
      A(i, l) += co * (1.0 - (k + q).squaredNorm() * beta);
    }
  }
  DiscreteKernelResult out;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
  out.all.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);
  return out;
}

// P = 0 two-particle eigenvalues from the degenerate kernel,
//   mu phi(k) = [E1(k) + E2(-k)] phi(k) + s (2 lambda/Omega)
//               sum_q [s' + (k+q)^2/(4 m^2 c^2)] phi(q),
// with (s, s') = (-1, +1) for same-kind pairs and (+1, -1) for the mixed
// A-Atilde pair (density-vertex sign flip).  Energies exclude the vacuum
// constant.
inline DiscreteKernelResult discrete_two_particle(const fock::ModeSet& md, const BareParams& bare,
                                                  PairKind kind) {
  const int n = md.size();
  const double beta = 1.0 / (4.0 * bare.m * bare.m * bare.c * bare.c);
  const double co = 2.0 * bare.lambda / md.omega_volume();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  auto E1 = [&](const Eigen::Vector3d& k) {
    switch (kind) {
      case PairKind::BB: return discrete_energy(PairKind::BB, k, md, bare);
      case PairKind::AA: return discrete_energy(PairKind::AA, k, md, bare);
      case PairKind::AtildeAtilde: return discrete_energy(PairKind::AtildeAtilde, k, md, bare);
      case PairKind::AAtilde: return discrete_energy(PairKind::AA, k, md, bare);
    }
    return 0.0;
  };
  auto E2 = [&](const Eigen::Vector3d& k) {
    return kind == PairKind::AAtilde ? discrete_energy(PairKind::AtildeAtilde, k, md, bare)
                                     : E1(k);
  };
  const double mixed = (kind == PairKind::AAtilde) ? -1.0 : 1.0;
  for (int i = 0; i < n; ++i) {
    const Eigen::Vector3d k = md.momentum(i);
    A(i, i) += E1(k) + E2(-k);
    for (int l = 0; l < n; ++l) {
      const Eigen::Vector3d q = md.momentum(l);
      const double vtx = 1.0 + (k + q).squaredNorm() * beta;
      // same kind: -co*vtx ; mixed: +co*(1 - (k+q)^2 beta) = +co*(2 - vtx)
      A(i, l) += mixed > 0 ? -co * vtx : co * (2.0 - vtx);
    }
  }
  DiscreteKernelResult out;
  if (kind == PairKind::AAtilde) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
    out.all.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);
    return out;
  }
  // parity-adapted orthonormal bases
  std::vector<Eigen::VectorXd> even, odd;
  std::vector<bool> used(n, false);
  for (int j = 0; j < n; ++j) {
    if (used[j]) continue;
    const int jm = md.negated(j);
    used[j] = true;
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    if (jm == j) {
      e(j) = 1.0;
      even.push_back(e);
    } else {
      used[jm] = true;
      e(j) = M_SQRT1_2;
      e(jm) = M_SQRT1_2;
      even.push_back(e);
      Eigen::VectorXd o = Eigen::VectorXd::Zero(n);
      o(j) = M_SQRT1_2;
      o(jm) = -M_SQRT1_2;
      odd.push_back(o);
    }
  }
  auto project = [&](const std::vector<Eigen::VectorXd>& basis) {
    std::vector<double> evs;
    if (basis.empty()) return evs;
    Eigen::MatrixXd B(n, static_cast<int>(basis.size()));
    for (int c = 0; c < B.cols(); ++c) B.col(c) = basis[static_cast<std::size_t>(c)];
    Eigen::MatrixXd sub = B.transpose() * A * B;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sub);
    evs.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    return evs;
  };
  out.isoscalar = project(even);
  out.isovector = project(odd);
  return out;
}

}  // namespace ccm
