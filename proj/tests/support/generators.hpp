#pragma once

#include <random>
#include <string>
#include <vector>

#include "finsp/json_io.hpp"
#include "finsp/predicates.hpp"

namespace finsp::testsupport {

using Rng = std::mt19937_64;

std::string fixture_path(const std::string& name);
Space load_fixture(const std::string& name);
SheafDescriptor load_fixture_sheaf(const std::string& name, const Space& X);
Morphism load_fixture_morphism(const std::string& name);

FinitePoset random_poset(Rng& rng, int max_points);
Space random_topological_space(Rng& rng, int max_points);
Space random_rational_space(Rng& rng, int max_points);

// chain-shaped spaces are always schematic; general randoms are filtered
Space random_chain_space(Rng& rng, int max_points);
Space random_schematic_rational_space(Rng& rng, int max_points);

// valid sheaves of every kind the universe supports (not necessarily qc)
std::vector<SheafDescriptor> sheaf_samples(Rng& rng, const Space& X);

// quasi-coherent module library: structure, tildes, and the fractional
// monomial twists with exponents bounded by max_exp
std::vector<SheafDescriptor> qc_library(Rng& rng, const Space& X, int max_exp);

// schematic morphisms between schematic spaces (identities, open inclusions,
// maps to a point, model refinements, fibered-product projections)
std::vector<Morphism> schematic_morphisms(Rng& rng, int want);

// weak equivalences (verified) built from covering refinements and collapses
std::vector<Morphism> weak_equivalences(Rng& rng, int want);

std::vector<OpenSet> random_cover(Rng& rng, const FinitePoset& P);

Morphism compose(const Morphism& g, const Morphism& f);  // g o f

}  // namespace finsp::testsupport
