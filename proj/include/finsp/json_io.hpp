#pragma once

#include <json.hpp>

#include "finsp/scheme.hpp"

namespace finsp {

using Json = nlohmann::ordered_json;

Space parse_space(const Json& doc);
Space load_space(const std::string& path);
SheafDescriptor parse_sheaf(const Json& doc, const Space& X);
SheafDescriptor load_sheaf(const std::string& path, const Space& X);
// source/target may be inline space documents or file path strings
Morphism parse_morphism(const Json& doc, const std::string& base_dir = "");
Morphism load_morphism(const std::string& path);
std::vector<OpenSet> parse_covering(const Json& doc, const FinitePoset& P);
std::vector<OpenSet> load_covering(const std::string& path, const FinitePoset& P);

Json pole_set_json(const PoleSet& t, const PlaceList& pl);
Json space_to_json(const Space& X);
Json poset_to_json(const FinitePoset& P);
Json morphism_to_json(const Morphism& f);
Json sheaf_to_json(const SheafDescriptor& F, const Space& X);
Json report_to_json(const CohomologyReport& r);
Json window_to_json(const WindowReport& w);
Json verdict_to_json(const std::string& predicate, const PredicateVerdict& v, bool full = false);
Json scheme_to_json(const SchemeDescriptor& d, const Space& X);
Json stein_to_json(const SteinFactorization& s);
Json witness_to_json(const RefinementWitness& w, const Morphism& f);
Json hdi_to_json(const HigherDirectImage& h, const Morphism& f);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& doc);

}  // namespace finsp
