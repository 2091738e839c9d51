#pragma once

#include "finsp/predicates.hpp"

namespace finsp {

// Chart-and-gluing description of the glued spectrum of a rational-universe
// space: one affine chart per point, one classified gluing map per Hasse
// edge. Adding finitely many poles removes finitely many closed points (an
// open immersion); jumping to the full function field is a flat monomorphism
// that is not open.
struct Gluing {
  int from = -1, to = -1;  // chart indices: Spec O_from -> Spec O_to, to <= from
  enum class Class { identity, open_immersion, flat_mono_not_open };
  Class cls = Class::identity;
  PoleSet removed;  // open immersions: the places added from `to` to `from`

  std::string class_string() const {
    switch (cls) {
      case Class::identity: return "identity";
      case Class::open_immersion: return "open-immersion";
      case Class::flat_mono_not_open: return "flat-mono-not-open";
    }
    return "?";
  }
};

struct SchemeDescriptor {
  std::vector<PoleSet> charts;  // per point: Spec of the stalk ring
  std::vector<Gluing> gluings;  // per Hasse edge
  bool is_scheme = true;
  std::vector<PoleSet> global_sections;  // one entry per connected component
  bool affine_collapse = false;
  PoleSet collapse_ring;  // when affine and connected: the single chart Spec A
};

PredicateVerdict has_open_restrictions(const Space& X);

SchemeDescriptor spec_export(const Space& X);

// Chart-level witness that the spectra of the source and target of a weak
// equivalence agree: over each target point, the glued sub-descriptor of the
// source presents the target chart.
struct RefinementWitness {
  struct PerPoint {
    int target_point = -1;
    std::vector<int> preimage_points;
    PoleSet chart;  // the target chart, equal to the sections over the preimage
  };
  std::vector<PerPoint> identifications;
};
RefinementWitness refinement_equivalence(const Morphism& f);

}  // namespace finsp
