// Scan the vacuum energy density across the coupling and locate the phase
// boundary.
#include <cstdio>

#include "ccm/model.hpp"

int main() {
  using namespace ccm;
  std::printf("# G   W0*V*/V [Mc^2]   phase\n");
  for (double G = 0.0; G <= 8.0; G += 0.5) {
    const ModelScheme s = scheme_from_physical(1.0, G);
    std::printf("%5.2f  %12.6f   %s\n", G, vacuum_energy_density(s), to_string(classify_phase(G)));
  }
  std::printf("# critical coupling: %.6f\n", critical_coupling());
  return 0;
}
