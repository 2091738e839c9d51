#pragma once

#include "finsp/cohomology.hpp"

namespace finsp {

struct Obligation {
  std::string what;
  bool ok = true;
  std::string evidence;
};

struct PredicateVerdict {
  enum class V { yes, no, unknown };
  V v = V::yes;
  std::vector<Obligation> obligations;
  std::string counterexample;  // first failing obligation when v == no

  bool is_true() const { return v == V::yes; }
  bool is_false() const { return v == V::no; }
  bool is_unknown() const { return v == V::unknown; }
  int exit_code() const { return v == V::yes ? 0 : v == V::no ? 1 : 2; }
  std::string verdict_string() const {
    return v == V::yes ? "true" : v == V::no ? "false" : "unknown";
  }
};

PredicateVerdict is_schematic(const Space& X, bool paranoid = false);
PredicateVerdict is_schematic_open(const Space& X, const OpenSet& U, bool paranoid = false);

PredicateVerdict is_semi_separated(const Space& X, bool paranoid = false);

enum class MorphismMode { schematic, locally_acyclic };
PredicateVerdict is_schematic_morphism(const Morphism& f, MorphismMode mode = MorphismMode::schematic,
                                       bool paranoid = false);

PredicateVerdict is_affine(const Space& X);
PredicateVerdict is_affine_open(const Space& X, const OpenSet& U);

enum class AffineMorphismMode { affine, weak_equivalence };
PredicateVerdict is_affine_morphism(const Morphism& f, AffineMorphismMode mode);

// Factors a schematic morphism between schematic spaces through the space
// carrying the direct image ring: f = a o f_prime with f_prime carrying
// sections onto the intermediate structure sheaf and a the identity on points.
struct SteinFactorization {
  Space intermediate;
  Morphism f_prime;  // X -> intermediate
  Morphism a;        // intermediate -> Y, identity on points
};
SteinFactorization stein_factorization(const Morphism& f);

struct FiberedProduct {
  Space Z;
  Morphism proj_x, proj_y;
  PredicateVerdict z_schematic;
  PredicateVerdict proj_x_schematic, proj_y_schematic;
};
FiberedProduct fibered_product(const Morphism& f, const Morphism& g);

bool space_equal(const Space& A, const Space& B);

// Homology of the order complex (the topological-universe oracle).
std::vector<AbelianInvariants> order_complex_homology(const FinitePoset& X);

}  // namespace finsp
