// First-principles construction of the model Hamiltonian on a finite mode set:
// the discretized field is substituted into H = int [Psi+ eps(p) Psi
// - lambda J^mu J_mu], with Kronecker deltas in place of momentum delta
// functions and 1/Omega in place of (2 pi)^-3.  The density and current are
// assembled as operator-valued Fourier components rho(P), J(P); every product
// is classified by particle-number balance, which yields the normal /
// fluctuation split without transcribing the expanded normal-ordered form.
//
// A literal transcription of that expanded form is kept alongside as a
// diagnostic comparator (build_normal_transcription /
// build_fluctuation_transcription); differences are reported, never patched.
#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "ccm/fock/amplitudes.hpp"
#include "ccm/fock/space.hpp"
#include "ccm/model.hpp"

namespace ccm::fock {

// Ladder matrices the builder acts through; replaceable so the same
// construction can run on unitarily rotated operators.
struct LadderSet {
  // indexed [alpha][j]
  std::vector<std::vector<SpMat>> a, at, ta, tat;

  static LadderSet standard(const FockSpace& fs) {
    LadderSet L;
    const int n = fs.modes().size();
    L.a.resize(2);
    L.at.resize(2);
    L.ta.resize(2);
    L.tat.resize(2);
    for (int al = 0; al < 2; ++al)
      for (int j = 0; j < n; ++j) {
        L.a[al].push_back(fs.a(al, j));
        L.at[al].push_back(fs.at(al, j));
        L.ta[al].push_back(fs.ta(al, j));
        L.tat[al].push_back(fs.tat(al, j));
      }
    return L;
  }

  LadderSet conjugated(const DenseMat& U) const {
    LadderSet out;
    const DenseMat Ud = U.adjoint();
    auto rot = [&](const std::vector<std::vector<SpMat>>& src) {
      std::vector<std::vector<SpMat>> dst(src.size());
      for (std::size_t al = 0; al < src.size(); ++al)
        for (const SpMat& m : src[al]) dst[al].push_back(DenseMat(Ud * m * U).sparseView(1.0, 1e-300));
      return dst;
    };
    out.a = rot(a);
    out.at = rot(at);
    out.ta = rot(ta);
    out.tat = rot(tat);
    return out;
  }
};

struct HamiltonianParts {
  SpMat normal;        // particle-number-balanced part
  SpMat fluctuation;   // the rest; vanishes for constant constraint-satisfying amplitudes
  SpMat total() const { return SpMat(normal + fluctuation); }
};

namespace detail {

// rho(P) and J(P) split by pair balance: '0' = number conserving, '+' = pair
// creating (a+ ta+), '-' = pair annihilating (ta a).
struct RhoJ {
  std::array<SpMat, 3> rho;                  // [balance class]
  std::array<std::array<SpMat, 3>, 3> cur;   // [component][balance class]
};

inline int class_index(char c) { return c == '0' ? 0 : (c == '+' ? 1 : 2); }
inline int class_balance(int idx) { return idx == 0 ? 0 : (idx == 1 ? 2 : -2); }

inline RhoJ build_rho_j(const FockSpace& fs, const LadderSet& L, const AmplitudeSet& amps,
                        const BareParams& bare, const Coord& P) {
  const ModeSet& md = fs.modes();
  const int n = md.size();
  const double mc2 = 2.0 * bare.m * bare.c;
  RhoJ out;
  for (auto& r : out.rho) r = fs.zero();
  for (auto& comp : out.cur)
    for (auto& r : comp) r = fs.zero();
  const Eigen::Vector3d Pk(P[0] * md.spacing(), P[1] * md.spacing(), P[2] * md.spacing());
  for (int j = 0; j < n; ++j) {
    const Eigen::Vector3d k = md.momentum(j);
    const auto& fj = amps.at(j).f;
    const auto& gj = amps.at(j).g;
    // a+(k) a(k+P)
    if (int q = md.find(md.coord(j) + P); q >= 0) {
      const Complex amp = fj.dot(amps.at(q).f);
      const Eigen::Vector3d vert = (2.0 * k + Pk) / mc2;
      for (int al = 0; al < 2; ++al) {
        SpMat b = SpMat(L.at[al][j] * L.a[al][q]);
        out.rho[0] += amp * b;
        for (int c = 0; c < md.dimension(); ++c) out.cur[c][0] += amp * vert[c] * b;
      }
    }
    // a+(k) ta+(-k-P)
    if (int q = md.find(-(md.coord(j) + P)); q >= 0) {
      const Complex amp = fj.dot(amps.at(q).g);
      const Eigen::Vector3d vert = (2.0 * k + Pk) / mc2;
      for (int al = 0; al < 2; ++al) {
        SpMat b = SpMat(L.at[al][j] * L.tat[al][q]);
        out.rho[1] += amp * b;
        for (int c = 0; c < md.dimension(); ++c) out.cur[c][1] += amp * vert[c] * b;
      }
    }
    // ta(k) a(P-k)
    if (int q = md.find(P - md.coord(j)); q >= 0) {
      const Complex amp = gj.dot(amps.at(q).f);
      const Eigen::Vector3d vert = (Pk - 2.0 * k) / mc2;
      for (int al = 0; al < 2; ++al) {
        SpMat b = SpMat(L.ta[al][j] * L.a[al][q]);
        out.rho[2] += amp * b;
        for (int c = 0; c < md.dimension(); ++c) out.cur[c][2] += amp * vert[c] * b;
      }
    }
    // ta(k) ta+(k-P)
    if (int q = md.find(md.coord(j) - P); q >= 0) {
      const Complex amp = gj.dot(amps.at(q).g);
      const Eigen::Vector3d vert = -(2.0 * k - Pk) / mc2;
      for (int al = 0; al < 2; ++al) {
        SpMat b = SpMat(L.ta[al][j] * L.tat[al][q]);
        out.rho[0] += amp * b;
        for (int c = 0; c < md.dimension(); ++c) out.cur[c][0] += amp * vert[c] * b;
      }
    }
  }
  return out;
}

}  // namespace detail

inline HamiltonianParts build_hamiltonian(const FockSpace& fs, const BareParams& bare,
                                          const AmplitudeSet& amps, const LadderSet& L) {
  validate(bare);
  const ModeSet& md = fs.modes();
  const int n = md.size();
  HamiltonianParts H;
  H.normal = fs.zero();
  H.fluctuation = fs.zero();

  // kinetic term; the cross pieces carry sum_a conj(f^a(k)) g^a(-k) and are
  // the fluctuation part of the bilocal form
  for (int j = 0; j < n; ++j) {
    const double e = bare_epsilon(md.momentum(j).norm(), bare);
    const int jm = md.negated(j);
    const Complex ff = amps.at(j).f.dot(amps.at(j).f);
    const Complex gg = amps.at(j).g.dot(amps.at(j).g);
    const Complex fg = amps.at(j).f.dot(amps.at(jm).g);
    const Complex gf = amps.at(j).g.dot(amps.at(jm).f);
    for (int al = 0; al < 2; ++al) {
      H.normal += e * ff * SpMat(L.at[al][j] * L.a[al][j]);
      H.normal += e * gg * SpMat(L.ta[al][j] * L.tat[al][j]);
      if (fg != 0.0) H.fluctuation += e * fg * SpMat(L.at[al][j] * L.tat[al][jm]);
      if (gf != 0.0) H.fluctuation += e * gf * SpMat(L.ta[al][j] * L.a[al][jm]);
    }
  }

  // interaction: -(lambda/Omega) sum_P [rho(P) rho(-P) - J(P).J(-P)]
  const std::vector<Coord> transfers = md.transfers();
  std::map<Coord, detail::RhoJ> cache;
  for (const Coord& P : transfers) cache.emplace(P, detail::build_rho_j(fs, L, amps, bare, P));
  const double coupling = bare.lambda / md.omega_volume();
  for (const Coord& P : transfers) {
    const auto& rj1 = cache.at(P);
    const auto& rj2 = cache.at(-P);
    for (int c1 = 0; c1 < 3; ++c1) {
      for (int c2 = 0; c2 < 3; ++c2) {
        if (rj1.rho[c1].nonZeros() == 0 && rj2.rho[c2].nonZeros() == 0) continue;
        SpMat term = SpMat(rj1.rho[c1] * rj2.rho[c2]);
        for (int comp = 0; comp < md.dimension(); ++comp)
          term -= SpMat(rj1.cur[comp][c1] * rj2.cur[comp][c2]);
        term = SpMat(-coupling * term);
        if (detail::class_balance(c1) + detail::class_balance(c2) == 0)
          H.normal += term;
        else
          H.fluctuation += term;
      }
    }
  }
  return H;
}

inline HamiltonianParts build_hamiltonian(const FockSpace& fs, const BareParams& bare,
                                          const AmplitudeSet& amps) {
  return build_hamiltonian(fs, bare, amps, LadderSet::standard(fs));
}

inline HamiltonianParts build_hamiltonian(const FockSpace& fs, const BareParams& bare,
                                          const AmplitudePair& constant_amps) {
  return build_hamiltonian(fs, bare, AmplitudeSet(fs.modes(), constant_amps));
}

// ---------------------------------------------------------------------------
// Literal transcription of the expanded normal-ordered Hamiltonian, term group
// by term group, for comparison against the field-level construction above.
// Group names follow the order of appearance in the expansion.
// ---------------------------------------------------------------------------

using TermGroups = std::map<std::string, SpMat>;

inline TermGroups build_normal_transcription(const FockSpace& fs, const BareParams& bare,
                                             const AmplitudeSet& amps) {
  const ModeSet& md = fs.modes();
  const int n = md.size();
  const double beta = 1.0 / (4.0 * bare.m * bare.m * bare.c * bare.c);
  const double co = bare.lambda / md.omega_volume();
  TermGroups g;
  SpMat kin = fs.zero();
  for (int j = 0; j < n; ++j) {
    const double e = bare_epsilon(md.momentum(j).norm(), bare);
    for (int al = 0; al < 2; ++al)
      kin += e * SpMat(fs.at(al, j) * fs.a(al, j)) + e * SpMat(fs.ta(al, j) * fs.tat(al, j));
  }
  g["kinetic"] = kin;
  SpMat T1 = fs.zero(), T2 = fs.zero(), T3 = fs.zero(), T4 = fs.zero(), T5 = fs.zero();
  const SpMat id = fs.identity();
  auto F = [&](int i) { return amps.at(i).f; };
  auto G = [&](int i) { return amps.at(i).g; };
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < n; ++i2)
      for (int i3 = 0; i3 < n; ++i3)
        for (int i4 = 0; i4 < n; ++i4) {
          const Coord c1 = md.coord(i1), c2 = md.coord(i2), c3 = md.coord(i3), c4 = md.coord(i4);
          const Eigen::Vector3d k1 = md.momentum(i1), k2 = md.momentum(i2), k3 = md.momentum(i3),
                                k4 = md.momentum(i4);
          const bool d23 = (c2 == c3), d14 = (c1 == c4), d34 = (c3 == c4), d12 = (c1 == c2);
          if ((c1 - c2) + (c3 - c4) == Coord{0, 0, 0}) {
            const double vtx = 1.0 - (k1 + k2).dot(k3 + k4) * beta;
            const Complex af = F(i1).dot(F(i2)) * F(i3).dot(F(i4));
            const Complex ag = G(i1).dot(G(i2)) * G(i3).dot(G(i4));
            for (int al = 0; al < 2; ++al) {
              for (int be = 0; be < 2; ++be) {
                T1 += af * vtx *
                      SpMat(-SpMat(fs.at(al, i1) * fs.at(be, i3)) *
                            SpMat(fs.a(al, i2) * fs.a(be, i4)));
                T2 += ag * vtx *
                      SpMat(-SpMat(fs.tat(al, i2) * fs.tat(be, i4)) *
                            SpMat(fs.ta(al, i1) * fs.ta(be, i3)));
              }
              if (d23) T1 += af * vtx * SpMat(fs.at(al, i1) * fs.a(al, i4));
              if (d14) T2 += ag * vtx * SpMat(fs.tat(al, i2) * fs.ta(al, i3));
              if (d34) T2 += -2.0 * ag * vtx * SpMat(fs.tat(al, i2) * fs.ta(al, i1));
              if (d12) T2 += -2.0 * ag * vtx * SpMat(fs.tat(al, i4) * fs.ta(al, i3));
            }
            if (d12 && d34) T2 += 4.0 * ag * vtx * id;
          }
          if ((c3 - c4) - (c1 - c2) == Coord{0, 0, 0}) {
            const double vtx = 1.0 + (k1 + k2).dot(k3 + k4) * beta;
            const Complex am = F(i1).dot(F(i2)) * G(i3).dot(G(i4));
            for (int al = 0; al < 2; ++al) {
              for (int be = 0; be < 2; ++be)
                T3 += 2.0 * am * vtx *
                      SpMat(SpMat(fs.at(al, i1) * fs.tat(be, i4)) *
                            SpMat(fs.a(al, i2) * fs.ta(be, i3)));
              if (d34) T3 += 4.0 * am * vtx * SpMat(fs.at(al, i1) * fs.a(al, i2));
            }
          }
          if ((c1 + c2) - (c3 + c4) == Coord{0, 0, 0}) {
            const double vtx = 1.0 + (k1 - k2).dot(k3 - k4) * beta;
            const Complex am = F(i1).dot(G(i2)) * G(i3).dot(F(i4));
            for (int al = 0; al < 2; ++al) {
              for (int be = 0; be < 2; ++be) {
                const SpMat quart = SpMat(SpMat(fs.at(al, i1) * fs.tat(al, i2)) *
                                          SpMat(fs.ta(be, i3) * fs.a(be, i4)));
                T4 += am * vtx * quart;
                T5 += am * vtx * quart;
              }
              if (d23) T5 += -am * vtx * SpMat(fs.at(al, i1) * fs.a(al, i4));
              if (d14) T5 += -am * vtx * SpMat(fs.tat(al, i2) * fs.ta(al, i3));
            }
            if (d14 && d23) T5 += 2.0 * am * vtx * id;
          }
        }
  g["T1_AAAA"] = SpMat(-co * T1);
  g["T2_tAtAtAtA"] = SpMat(-co * T2);
  g["T3_AtA_density"] = SpMat(-co * T3);
  g["T4_AtAtAA"] = SpMat(-co * T4);
  g["T5_AtAtAA_contact"] = SpMat(-co * T5);
  return g;
}

inline TermGroups build_fluctuation_transcription(const FockSpace& fs, const BareParams& bare,
                                                  const AmplitudeSet& amps) {
  const ModeSet& md = fs.modes();
  const int n = md.size();
  const double beta = 1.0 / (4.0 * bare.m * bare.m * bare.c * bare.c);
  const double co = bare.lambda / md.omega_volume();
  TermGroups g;
  SpMat G1 = fs.zero(), G2 = fs.zero(), G3 = fs.zero(), G4 = fs.zero(), G5 = fs.zero(),
        G6 = fs.zero();
  auto F = [&](int i) { return amps.at(i).f; };
  auto Gg = [&](int i) { return amps.at(i).g; };
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < n; ++i2)
      for (int i3 = 0; i3 < n; ++i3)
        for (int i4 = 0; i4 < n; ++i4) {
          const Coord c1 = md.coord(i1), c2 = md.coord(i2), c3 = md.coord(i3), c4 = md.coord(i4);
          const Eigen::Vector3d k1 = md.momentum(i1), k2 = md.momentum(i2), k3 = md.momentum(i3),
                                k4 = md.momentum(i4);
          const Coord zero{0, 0, 0};
          if ((c1 - c2) + c3 + c4 == zero) {
            const double vtx = 1.0 - (k1 + k2).dot(k3 - k4) * beta;
            const Complex am = F(i1).dot(F(i2)) * F(i3).dot(Gg(i4));
            for (int al = 0; al < 2; ++al) {
              for (int be = 0; be < 2; ++be)
                G1 += 2.0 * am * vtx *
                      SpMat(SpMat(fs.at(al, i1) * fs.at(be, i3)) *
                            SpMat(fs.tat(be, i4) * fs.a(al, i2)));
              if (c2 == c3) G1 += am * vtx * SpMat(fs.at(al, i1) * fs.tat(al, i4));
            }
          }
          if (c1 + c2 - c3 + c4 == zero) {
            const double vtx = 1.0 - (k2 - k1).dot(k3 + k4) * beta;
            const Complex am = Gg(i1).dot(F(i2)) * F(i3).dot(F(i4));
            for (int al = 0; al < 2; ++al) {
              for (int be = 0; be < 2; ++be)
                G2 += 2.0 * am * vtx *
                      SpMat(SpMat(fs.tat(be, i3) * fs.ta(al, i1)) *
                            SpMat(fs.a(al, i2) * fs.a(be, i4)));
              if (c2 == c3) G2 += am * vtx * SpMat(fs.ta(al, i1) * fs.a(al, i4));
            }
          }
          if (c1 - c2 - c3 - c4 == zero) {
            const double vtx = 1.0 - (k1 + k2).dot(k3 - k4) * beta;
            const Complex am = Gg(i1).dot(Gg(i2)) * F(i3).dot(Gg(i4));
            for (int al = 0; al < 2; ++al) {
              for (int be = 0; be < 2; ++be)
                G3 += -2.0 * am * vtx *
                      SpMat(SpMat(fs.tat(al, i2) * fs.at(be, i3)) *
                            SpMat(fs.tat(be, i4) * fs.ta(al, i1)));
              if (c1 == c4) G3 += am * vtx * SpMat(fs.tat(al, i2) * fs.at(al, i3));
              if (c1 == c2) G3 += 4.0 * am * vtx * SpMat(fs.at(al, i3) * fs.tat(al, i4));
            }
          }
          if (c1 + c2 + c3 - c4 == zero) {
            const double vtx = 1.0 + (k1 - k2).dot(k3 + k4) * beta;
            const Complex am = Gg(i1).dot(F(i2)) * Gg(i3).dot(Gg(i4));
            for (int al = 0; al < 2; ++al) {
              for (int be = 0; be < 2; ++be)
                G4 += -2.0 * am * vtx *
                      SpMat(SpMat(fs.tat(be, i4) * fs.ta(al, i1)) *
                            SpMat(fs.a(al, i2) * fs.ta(be, i3)));
              if (c1 == c4) G4 += am * vtx * SpMat(fs.a(al, i2) * fs.ta(al, i3));
              if (c3 == c4) G4 += 4.0 * am * vtx * SpMat(fs.ta(al, i1) * fs.a(al, i2));
            }
          }
          if (c1 + c2 + c3 + c4 == zero) {
            const double vtx = 1.0 - (k1 - k2).dot(k3 - k4) * beta;
            const Complex amA = F(i1).dot(Gg(i2)) * F(i3).dot(Gg(i4));
            const Complex amB = Gg(i1).dot(F(i2)) * Gg(i3).dot(F(i4));
            for (int al = 0; al < 2; ++al)
              for (int be = 0; be < 2; ++be) {
                G5 += amA * vtx *
                      SpMat(SpMat(fs.at(al, i1) * fs.tat(al, i2)) *
                            SpMat(fs.at(be, i3) * fs.tat(be, i4)));
                G6 += amB * vtx *
                      SpMat(SpMat(fs.ta(al, i1) * fs.a(al, i2)) *
                            SpMat(fs.ta(be, i3) * fs.a(be, i4)));
              }
          }
        }
  g["G1_AAtAA"] = SpMat(-co * G1);
  g["G2_tAtAAA"] = SpMat(-co * G2);
  g["G3_tAAtAtA"] = SpMat(-co * G3);
  g["G4_tAtAAtA"] = SpMat(-co * G4);
  g["G5_pair_pair_create"] = SpMat(-co * G5);
  g["G6_pair_pair_annihilate"] = SpMat(-co * G6);
  return g;
}

struct TranscriptionReport {
  std::map<std::string, double> group_norms;
  double normal_diff = 0.0;        // || transcribed H_N - field-level H_N ||
  double fluctuation_diff = 0.0;   // || transcribed H_Fl - field-level H_Fl ||
  double transcribed_fluct_hermiticity_defect = 0.0;
  double field_fluct_hermiticity_defect = 0.0;
};

inline TranscriptionReport compare_transcription(const FockSpace& fs, const BareParams& bare,
                                                 const AmplitudeSet& amps) {
  const HamiltonianParts fp = build_hamiltonian(fs, bare, amps);
  const TermGroups hn = build_normal_transcription(fs, bare, amps);
  const TermGroups hf = build_fluctuation_transcription(fs, bare, amps);
  TranscriptionReport rep;
  SpMat hn_sum = fs.zero(), hf_sum = fs.zero();
  for (const auto& [name, m] : hn) {
    rep.group_norms[name] = frobenius(m);
    hn_sum += m;
  }
  for (const auto& [name, m] : hf) {
    rep.group_norms[name] = frobenius(m);
    hf_sum += m;
  }
  rep.normal_diff = frobenius(SpMat(hn_sum - fp.normal));
  rep.fluctuation_diff = frobenius(SpMat(hf_sum - fp.fluctuation));
  rep.transcribed_fluct_hermiticity_defect = frobenius(SpMat(hf_sum - SpMat(hf_sum.adjoint())));
  rep.field_fluct_hermiticity_defect =
      frobenius(SpMat(fp.fluctuation - SpMat(fp.fluctuation.adjoint())));
  return rep;
}

}  // namespace ccm::fock
