#pragma once

#include <string>

#include "finsp/cohomology.hpp"
#include "finsp/predicates.hpp"
#include "finsp/scheme.hpp"

namespace finsp {

// "k", "k[x]", "k[1/x]", "k[x,1/x]", "k(x)" or a generic sections name.
std::string ring_name(const PoleSet& T, const PlaceList& pl);

// One line per degree; recognizes reports that present a pole ring or the
// polar quotient k(x)/k[x] and prints their names.
std::string render_report(const CohomologyReport& r, const Space& X, int only_degree = -1);

std::string render_window(const WindowReport& w);
std::string render_verdict(const std::string& predicate, const PredicateVerdict& v);
std::string render_scheme(const SchemeDescriptor& d, const Space& X);
std::string render_group(const AbelianInvariants& g);

}  // namespace finsp
