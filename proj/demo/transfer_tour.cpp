// Builds a few family members and prints their invariants and transfers.
#include <iostream>

#include "maxclass5/maxclass5.hpp"

using namespace maxclass5;

namespace {

void show(const PresentationParams& p) {
  const PcGroup g = build_group(p);
  const GroupAnalysis a = analyze(g);
  const StructureReport s = structure_report(g, a);
  const auto maps = maximal_transfers(g, a);
  std::cout << family_label(g, a).text() << "  order 5^" << g.n() << ", class "
            << s.nilpotency_class << ", k = " << s.defect_k << ", chi_2 = H_"
            << s.chi2_index << ", exp(gamma_2) = " << s.gamma2_exponent << "\n";
  for (int i = 0; i < 6; ++i) {
    std::cout << "  H_" << i + 1 << ": H/H' " << s.subgroup_types[i].to_string()
              << ", V to gamma_2 " << (maps[i].trivial ? "trivial" : "nontrivial") << "\n";
  }
  const Classification c = classify_by_transfers(g.n(), fingerprint(maps));
  std::cout << "  predicted:";
  if (c.candidates.empty()) std::cout << " none (" << c.diagnostic << ")";
  for (std::size_t i = 0; i < c.candidates.size() && i < 6; ++i) {
    std::cout << " " << c.candidates[i].text();
  }
  if (c.candidates.size() > 6) std::cout << " ... (" << c.candidates.size() << " labels)";
  std::cout << "\n";
  if (g.n() >= 7) {
    const KernelImage ki = transfer_kernel_image(g, maps[0]);
    std::cout << "  V_{H_1}: |ker| = " << ki.kernel.order() << ", |im| = " << ki.image.order()
              << "\n";
  }
}

}  // namespace

int main() {
  show(validate_params({5, 4, 0, 0, {}}));
  show(validate_params({5, 6, 0, 1, {1}}));
  show(validate_params({5, 7, 0, 0, {}}));
  show(validate_params({5, 7, 0, 0, {2}}));
}
