// Minimal library usage: build the four spectral triples at a small
// truncation, check the axioms, and print the bottom of each Dirac spectrum.

#include <cstdio>

#include "nctorus/axioms.hpp"
#include "nctorus/spectra.hpp"

int main() {
  using namespace nctorus;
  const PhaseAngle lambda(generic_lambda_turns());

  for (SpinStructure spin : all_spin_structures()) {
    const SpectralTripleBundle bundle =
        make_bundle(Truncation(4, spin), lambda, RealStructureParams{}, DiracParams{});
    const AxiomReport report = run_axiom_suite(bundle);
    const SpectrumTable table = dirac_spectrum_blocks(bundle);

    std::printf("spin %s  axioms %s  kernel dim %ld  lowest |e|:", spin.label().c_str(),
                report.all_pass() ? "ok" : "FAILED", kernel_dimension(table));
    for (double e : distinct_abs_eigenvalues(table, 5)) std::printf(" %.6f", e);
    std::printf("\n");
  }
  return 0;
}
