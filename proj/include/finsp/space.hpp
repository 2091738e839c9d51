#pragma once

#include <optional>
#include <string>
#include <vector>

#include "finsp/poset.hpp"
#include "finsp/rational.hpp"

namespace finsp {

enum class UniverseKind { topological, rational };

struct Universe {
  UniverseKind kind = UniverseKind::topological;
  // topological: constant base ring Z, or a field
  bool z_base = true;
  FieldSpec base_field;
  // rational: field and declared places
  PlaceList places;

  friend bool operator==(const Universe& a, const Universe& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == UniverseKind::topological)
      return a.z_base == b.z_base && (a.z_base || a.base_field == b.base_field);
    return a.places == b.places;
  }
};

// A ringed finite space. In the rational universe the stalk at p is the
// subring of k(x) with poles confined to stalk_poles[p]; all restriction maps
// are the canonical inclusions, so they are flat and every valid space is a
// finite space.
struct Space {
  FinitePoset poset;
  Universe universe;
  std::vector<PoleSet> stalk_poles;  // rational universe only; size == points

  bool rational() const { return universe.kind == UniverseKind::rational; }
  const PoleSet& poles(int p) const { return stalk_poles[p]; }

  // monotonicity of stalks along the order (checked on Hasse edges)
  void validate() const;
};

// Sections of the structure sheaf over one connected component: the
// intersection of the stalk pole sets.
PoleSet section_poles(const Space& X, const std::vector<int>& component);

struct Morphism {
  Space source, target;
  std::vector<int> point_map;  // source point -> target point

  void validate() const;
  OpenSet preimage(const OpenSet& V) const;  // open of the source
  static Morphism identity(const Space& X);
  static Morphism to_point(const Space& X, const Space& pt);
  // open inclusion U -> X; U becomes its own space
  static Morphism open_inclusion(const Space& X, const OpenSet& U);
};

// The open subspace on an up-set (labels kept; minimal opens agree with the
// ambient ones).
Space open_subspace(const Space& X, const OpenSet& U, std::vector<int>* point_of_sub = nullptr);

// Ringed quotient attached to a finite covering by opens: poset from the
// covering quotient, stalk at a class [s] the sections over U^s.
struct CoveringModel {
  Space model;
  Morphism projection;  // X -> model
};
CoveringModel covering_model(const Space& X, const std::vector<OpenSet>& cover);

// The comparison morphism between the models of a covering and a finer one
// (every U^s of `fine` inside the corresponding U^s of `coarse`).
Morphism refinement_morphism(const Space& X, const std::vector<OpenSet>& coarse,
                             const std::vector<OpenSet>& fine);

}  // namespace finsp
