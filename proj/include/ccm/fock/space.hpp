// Jordan-Wigner realization of the fermionic ladder operators on a finite
// mode set.  Global mode ordering is species-major, then isospin, then
// momentum index; this fixes every matrix sign convention in the oracle.
#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "ccm/fock/modes.hpp"

namespace ccm::fock {

using Complex = std::complex<double>;
using SpMat = Eigen::SparseMatrix<Complex>;
using DenseMat = Eigen::MatrixXcd;
using DenseVec = Eigen::VectorXcd;

enum class Species : int { A = 0, Atilde = 1 };

struct dimension_budget_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class FockSpace {
 public:
  explicit FockSpace(ModeSet modes) : modes_(std::move(modes)) {
    const int n = modes_.size();
    if (4 * n > 12)
      throw dimension_budget_error("FockSpace: 4*n_modes exceeds the 12-mode matrix budget");
    n_fermion_ = 4 * n;
    dim_ = std::int64_t(1) << n_fermion_;
    build();
  }

  const ModeSet& modes() const { return modes_; }
  std::int64_t dim() const { return dim_; }

  int fermion_index(Species s, int alpha, int j) const {
    const int n = modes_.size();
    return static_cast<int>(s) * 2 * n + alpha * n + j;
  }

  // annihilators / creators
  const SpMat& a(int alpha, int j) const { return low_[fermion_index(Species::A, alpha, j)]; }
  const SpMat& at(int alpha, int j) const { return raise_[fermion_index(Species::A, alpha, j)]; }
  const SpMat& ta(int alpha, int j) const {
    return low_[fermion_index(Species::Atilde, alpha, j)];
  }
  const SpMat& tat(int alpha, int j) const {
    return raise_[fermion_index(Species::Atilde, alpha, j)];
  }
  const SpMat& lower(int fermion_idx) const { return low_[fermion_idx]; }
  const SpMat& raiser(int fermion_idx) const { return raise_[fermion_idx]; }
  int fermion_count() const { return n_fermion_; }

  SpMat identity() const {
    SpMat id(dim_, dim_);
    id.setIdentity();
    return id;
  }
  SpMat zero() const { return SpMat(dim_, dim_); }

  // |0>: all occupations empty
  DenseVec vacuum() const {
    DenseVec v = DenseVec::Zero(dim_);
    v(0) = 1.0;
    return v;
  }

  // fully Atilde-occupied basis state (the omega = pi/2 Bogoliubov vacuum, up
  // to phase)
  DenseVec atilde_filled() const {
    std::int64_t idx = 0;
    const int n = modes_.size();
    for (int b = 2 * n; b < 4 * n; ++b) idx |= (std::int64_t(1) << b);
    DenseVec v = DenseVec::Zero(dim_);
    v(idx) = 1.0;
    return v;
  }

 private:
  void build() {
    low_.reserve(n_fermion_);
    raise_.reserve(n_fermion_);
    for (int i = 0; i < n_fermion_; ++i) {
      std::vector<Eigen::Triplet<Complex>> trips;
      trips.reserve(static_cast<std::size_t>(dim_ / 2));
      const std::int64_t bit = std::int64_t(1) << i;
      const std::int64_t below = bit - 1;
      for (std::int64_t st = 0; st < dim_; ++st) {
        if (st & bit) {
          const int parity = __builtin_popcountll(static_cast<unsigned long long>(st & below));
          const double sign = (parity % 2 == 0) ? 1.0 : -1.0;
          trips.emplace_back(static_cast<int>(st & ~bit), static_cast<int>(st), Complex(sign));
        }
      }
      SpMat m(dim_, dim_);
      m.setFromTriplets(trips.begin(), trips.end());
      low_.push_back(m);
      raise_.push_back(SpMat(m.adjoint()));
    }
  }

  ModeSet modes_;
  int n_fermion_ = 0;
  std::int64_t dim_ = 0;
  std::vector<SpMat> low_, raise_;
};

inline double frobenius(const SpMat& m) { return m.norm(); }

inline SpMat anticommutator(const SpMat& x, const SpMat& y) { return SpMat(x * y + y * x); }
inline SpMat commutator(const SpMat& x, const SpMat& y) { return SpMat(x * y - y * x); }

// Largest CAR violation over all ladder pairs, in Frobenius norm (which bounds
// the operator norm from above).
inline double car_residual(const FockSpace& fs) {
  double worst = 0.0;
  const int nf = fs.fermion_count();
  SpMat id = fs.identity();
  for (int i = 0; i < nf; ++i) {
    for (int j = 0; j < nf; ++j) {
      SpMat ac = anticommutator(fs.lower(i), fs.raiser(j));
      if (i == j) ac = SpMat(ac - id);
      worst = std::max(worst, frobenius(ac));
      worst = std::max(worst, frobenius(anticommutator(fs.lower(i), fs.lower(j))));
    }
  }
  return worst;
}

}  // namespace ccm::fock
