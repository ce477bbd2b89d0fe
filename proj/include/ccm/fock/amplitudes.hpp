// Amplitude pairs (f, g) multiplying the A and Atilde~dagger parts of the
// field, the canonical constraints they must satisfy, and the angle
// parametrization of the constraint manifold.
#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "ccm/fock/modes.hpp"

namespace ccm::fock {

struct AmplitudePair {
  Eigen::Vector2cd f = Eigen::Vector2cd(1.0, 0.0);
  Eigen::Vector2cd g = Eigen::Vector2cd(0.0, -1.0);

  // || f f^+ + g g^+ - I ||
  double completeness_residual() const {
    Eigen::Matrix2cd m = f * f.adjoint() + g * g.adjoint() - Eigen::Matrix2cd::Identity();
    return m.norm();
  }
  // | sum_b f^b conj(g^b) |
  double orthogonality_residual() const { return std::abs(g.dot(f)); }
  double norm_residual() const {
    return std::max(std::abs(f.squaredNorm() - 1.0), std::abs(g.squaredNorm() - 1.0));
  }
  bool satisfies_constraints(double tol = 1e-12) const {
    return completeness_residual() < tol && orthogonality_residual() < tol;
  }
};

// Three-angle parametrization of the constraint manifold.  At theta = psi =
// phi = 0 this is f = (1, 0), g = (0, -1).
inline AmplitudePair amplitudes_from_angles(double theta, double psi, double phi) {
  using namespace std::complex_literals;
  AmplitudePair p;
  const std::complex<double> ep = std::exp(1i * phi), eps = std::exp(1i * psi);
  p.f << ep * eps * std::cos(theta), -ep * std::conj(eps) * std::sin(theta);
  p.g << -std::conj(ep) * eps * std::sin(theta), -std::conj(ep) * std::conj(eps) * std::cos(theta);
  return p;
}

// Amplitudes rotated by the hidden-symmetry group element
// U(alpha, beta, gamma) = e^{i gamma Q3} e^{i beta Q2} e^{i alpha Q1};
// they satisfy the same constraints for any angles.
inline AmplitudePair rotated_amplitudes(const AmplitudePair& p, double alpha, double beta,
                                        double gamma, double omega_phase) {
  using namespace std::complex_literals;
  AmplitudePair out;
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  const double cb = std::cos(beta), sb = std::sin(beta);
  const std::complex<double> u = ca * cb + 1i * sa * sb;
  const std::complex<double> v = sa * cb + 1i * ca * sb;
  out.f = std::exp(-1i * gamma) * u * p.f - std::exp(-1i * (omega_phase - gamma)) * v * p.g;
  out.g = std::exp(1i * gamma) * std::conj(u) * p.g +
          std::exp(1i * (omega_phase - gamma)) * std::conj(v) * p.f;
  return out;
}

// Per-mode amplitudes; momentum independence is what makes the fluctuation
// Hamiltonian vanish, so violating sets are first-class citizens here.
class AmplitudeSet {
 public:
  AmplitudeSet(const ModeSet& modes, AmplitudePair constant)
      : pairs_(static_cast<std::size_t>(modes.size()), constant) {}
  explicit AmplitudeSet(std::vector<AmplitudePair> per_mode) : pairs_(std::move(per_mode)) {}

  const AmplitudePair& at(int j) const { return pairs_[static_cast<std::size_t>(j)]; }
  int size() const { return static_cast<int>(pairs_.size()); }

  bool all_satisfy(double tol = 1e-12) const {
    for (const auto& p : pairs_)
      if (!p.satisfies_constraints(tol)) return false;
    return true;
  }

 private:
  std::vector<AmplitudePair> pairs_;
};

}  // namespace ccm::fock
