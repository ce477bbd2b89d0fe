// Finite momentum mode sets for the exact-diagonalization oracle.  Momenta are
// stored as integer lattice coordinates times a spacing so that momentum
// conservation is exact.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace ccm::fock {

using Coord = std::array<int, 3>;

inline Coord operator+(const Coord& a, const Coord& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Coord operator-(const Coord& a, const Coord& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline Coord operator-(const Coord& a) { return {-a[0], -a[1], -a[2]}; }

class ModeSet {
 public:
  // d = 1 or 3; coords must be closed under negation and duplicate-free.
  ModeSet(std::vector<Coord> coords, double spacing, double omega_volume, int d = 1)
      : coords_(std::move(coords)), dk_(spacing), omega_(omega_volume), dim_(d) {
    if (dim_ != 1 && dim_ != 3) throw std::invalid_argument("ModeSet: d must be 1 or 3");
    if (!(dk_ > 0.0)) throw std::invalid_argument("ModeSet: spacing must be positive");
    if (!(omega_ > 0.0)) throw std::invalid_argument("ModeSet: omega_volume must be positive");
    if (coords_.empty()) throw std::invalid_argument("ModeSet: empty momentum set");
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (find(-coords_[i]) < 0)
        throw std::invalid_argument("ModeSet: set must be closed under negation");
      for (std::size_t j = i + 1; j < coords_.size(); ++j)
        if (coords_[i] == coords_[j]) throw std::invalid_argument("ModeSet: duplicate momentum");
    }
  }

  // Symmetric 1-d grid with n momenta: {0}, {-1,1}, {-1,0,1}, ...
  static ModeSet line(int n_modes, double spacing = 1.0, double omega_volume = 1.0) {
    if (n_modes < 1) throw std::invalid_argument("ModeSet::line: need at least one mode");
    std::vector<Coord> cs;
    const int half = n_modes / 2;
    if (n_modes % 2 == 1) cs.push_back({0, 0, 0});
    for (int i = 1; i <= half; ++i) {
      cs.push_back({-i, 0, 0});
      cs.push_back({i, 0, 0});
    }
    return ModeSet(std::move(cs), spacing, omega_volume, 1);
  }

  int size() const { return static_cast<int>(coords_.size()); }
  int dimension() const { return dim_; }
  double spacing() const { return dk_; }
  double omega_volume() const { return omega_; }
  const Coord& coord(int j) const { return coords_[static_cast<std::size_t>(j)]; }

  Eigen::Vector3d momentum(int j) const {
    const Coord& c = coords_[static_cast<std::size_t>(j)];
    return Eigen::Vector3d(c[0] * dk_, c[1] * dk_, c[2] * dk_);
  }

  int find(const Coord& c) const {
    for (std::size_t j = 0; j < coords_.size(); ++j)
      if (coords_[j] == c) return static_cast<int>(j);
    return -1;
  }
  int negated(int j) const { return find(-coords_[static_cast<std::size_t>(j)]); }

  // All momentum transfers q - k, k + q, -(k + q) between set members.
  std::vector<Coord> transfers() const {
    std::vector<Coord> out;
    auto add = [&](const Coord& c) {
      for (const Coord& e : out)
        if (e == c) return;
      out.push_back(c);
    };
    for (const Coord& a : coords_)
      for (const Coord& b : coords_) {
        add(b - a);
        add(a + b);
        add(-(a + b));
      }
    return out;
  }

 private:
  std::vector<Coord> coords_;
  double dk_;
  double omega_;
  int dim_;
};

}  // namespace ccm::fock
