#pragma once

#include <string>

#include "support/generators.hpp"

namespace finsp::testsupport {

struct PropertyResult {
  bool ok = true;
  int instances = 0;
  std::string detail;  // first failure
};

// acceptance item 5: each suite runs on randomized instances, exact arithmetic
PropertyResult prop_minimal_open_acyclic_and_dim_vanishing(unsigned seed, int instances);
PropertyResult prop_standard_complex_ddzero(unsigned seed, int instances);
PropertyResult prop_exact_vs_window(unsigned seed, int instances);
PropertyResult prop_extension_preserves_qc(unsigned seed, int instances);
PropertyResult prop_edge_vs_paranoid(unsigned seed, int instances);
PropertyResult prop_stein(unsigned seed, int morphisms);
PropertyResult prop_fibered_universal(unsigned seed, int instances);
PropertyResult prop_weak_equivalence_roundtrip(unsigned seed, int instances);

// acceptance item 6
PropertyResult prop_refinement_pairs(unsigned seed, int pairs);

// additional cross-checks from the module invariants
PropertyResult prop_semi_separated_implies_schematic(unsigned seed, int instances);
PropertyResult prop_schematic_local(unsigned seed, int instances);
PropertyResult prop_affine_open_iff_acyclic(unsigned seed, int instances);
PropertyResult prop_projection_formula(unsigned seed, int instances);
PropertyResult prop_topological_schematic_rule(unsigned seed, int instances);
PropertyResult prop_core_preserves_homology(unsigned seed, int instances);
PropertyResult prop_snf_certificates(unsigned seed, int instances);
PropertyResult prop_pole_algebra_closure(unsigned seed, int instances);
PropertyResult prop_pullback_preserves_qc(unsigned seed, int instances);
PropertyResult prop_minimum_sections_roundtrip(unsigned seed, int instances);

}  // namespace finsp::testsupport
