#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "finsp/matrix.hpp"

namespace finsp {

// A finite T0 topological space, i.e. a finite poset. Opens are up-sets and
// U_p = {q : p <= q} is the minimal open containing p. Construction from
// generating relations computes the transitive closure, collapses preorder
// cycles (T0-fication, classes labeled by their lexicographically least
// member) and caches the Hasse diagram and the dimension (longest strict
// chain length).
class FinitePoset {
 public:
  FinitePoset() = default;

  static FinitePoset from_relations(std::vector<std::string> points,
                                    const std::vector<std::pair<std::string, std::string>>& rels);
  // Trusted constructor from a reflexive-transitive-antisymmetric matrix.
  static FinitePoset from_leq(std::vector<std::string> points,
                              std::vector<std::vector<bool>> leq);

  std::size_t size() const { return points_.size(); }
  const std::vector<std::string>& points() const { return points_; }
  const std::string& label(int i) const { return points_[i]; }
  int index_of(const std::string& name) const;  // -1 if absent
  int index_or_throw(const std::string& name) const;

  bool leq(int a, int b) const { return leq_[a][b]; }
  bool less(int a, int b) const { return a != b && leq_[a][b]; }
  const std::vector<std::pair<int, int>>& hasse() const { return hasse_; }
  int dim() const { return dim_; }

  // Original label -> representative after T0-fication.
  const std::map<std::string, std::string>& point_classes() const { return t0_class_; }

  std::vector<int> up_set(int p) const;    // sorted
  std::vector<int> down_set(int p) const;  // sorted

  FinitePoset induced(const std::vector<int>& members) const;

 private:
  std::vector<std::string> points_;  // sorted, unique
  std::vector<std::vector<bool>> leq_;
  std::vector<std::pair<int, int>> hasse_;
  int dim_ = 0;
  std::map<std::string, std::string> t0_class_;

  void finish();  // hasse + dim from leq
};

// An up-set of a poset, kept as a sorted index list.
struct OpenSet {
  const FinitePoset* X = nullptr;
  std::vector<int> members;  // sorted

  static OpenSet whole(const FinitePoset& X);
  static OpenSet make(const FinitePoset& X, std::vector<int> members);  // validates up-set
  bool contains(int p) const;
  std::size_t size() const { return members.size(); }
};

OpenSet minimal_open(const FinitePoset& X, int p);
OpenSet minimal_open(const FinitePoset& X, const std::string& p);
OpenSet intersect(const OpenSet& a, const OpenSet& b);
bool subset(const OpenSet& a, const OpenSet& b);

using Chain = std::vector<int>;  // strictly increasing points

// All strict (n+1)-chains inside U, lexicographic in member order.
std::vector<Chain> enumerate_chains(const OpenSet& U, int n);

int open_dim(const OpenSet& U);  // longest chain length inside U

// Connected components of U under comparability zigzags; each sorted,
// components ordered by smallest member.
std::vector<std::vector<int>> components(const OpenSet& U);

bool has_minimum(const OpenSet& U, int* min_point = nullptr);
bool component_has_maximum(const FinitePoset& X, const std::vector<int>& comp);

// Cartesian product with componentwise order; labels "(x,y)".
FinitePoset product_poset(const FinitePoset& X, const FinitePoset& Y,
                          std::vector<std::pair<int, int>>* pair_of_point = nullptr);

struct CoveringQuotient {
  FinitePoset quotient;
  std::vector<int> projection;  // carrier point -> quotient point
};

// Finite space attached to a finite covering: points are classes of
// U^s = intersection of the covering opens through s, ordered by reverse
// inclusion of the U^s.
CoveringQuotient quotient_by_covering(const FinitePoset& carrier,
                                      const std::vector<std::vector<int>>& cover);

// Homotopy core by repeated removal of beat points (a point whose strict
// up-set has a minimum or whose strict down-set has a maximum). Removal order
// is lexicographic, so the result is reproducible.
FinitePoset core_reduction(const FinitePoset& X);

// Boundary matrices of the order complex (simplicial chains on strict
// chains): d_n : C_n -> C_{n-1}. Used as the homology oracle.
std::vector<IntMat> order_complex_boundaries(const FinitePoset& X);

}  // namespace finsp
