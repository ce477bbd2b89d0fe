// Reproduce the isoscalar bound-state table z(G) and print the wavefunction
// coefficients at one coupling.
#include <cstdio>

#include "ccm/bound_state.hpp"

int main() {
  using namespace ccm;
  std::printf("#  G      z(G)     published   dev%%\n");
  for (const TableRow& row : table1(published_G_grid())) {
    std::printf("%5.2f  %9.4f  %9.3f  %6.2f\n", row.G, row.z, row.z_published.value_or(0.0),
                100.0 * row.rel_deviation.value_or(0.0));
  }
  const ModelScheme s = scheme_from_physical(1.0, 5.0);
  const BoundStateResult r = solve_isoscalar(s);
  const Wavefunction w = wavefunction(s, r);
  std::printf("# G=5: chi/Lambda = %.6f, mu(0) = %.6f Mc^2, B/A = %.6f\n", r.chi / s.Lambda, r.mu0,
              w.coeff_B / w.coeff_A);
  return 0;
}
