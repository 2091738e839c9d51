#include "finsp/space.hpp"

#include <algorithm>

namespace finsp {

void Space::validate() const {
  if (universe.kind == UniverseKind::rational) {
    if (stalk_poles.size() != poset.size())
      throw input_error("space: stalk count does not match point count");
    for (auto [p, q] : poset.hasse())
      if (!stalk_poles[p].subset_of(stalk_poles[q]))
        throw input_error("space: pole sets not monotone on edge " + poset.label(p) + " <= " +
                          poset.label(q) + " (" +
                          pole_set_to_string(stalk_poles[p], universe.places) +
                          " is not contained in " +
                          pole_set_to_string(stalk_poles[q], universe.places) + ")");
  }
}

PoleSet section_poles(const Space& X, const std::vector<int>& component) {
  PoleSet t = PoleSet::make_all();
  for (int p : component) t = t.intersect(X.poles(p));
  return t;
}

void Morphism::validate() const {
  if (!(source.universe == target.universe))
    throw input_error("morphism: source and target universes differ");
  if (point_map.size() != source.poset.size())
    throw input_error("morphism: point map size mismatch");
  for (int y : point_map)
    if (y < 0 || static_cast<std::size_t>(y) >= target.poset.size())
      throw input_error("morphism: point map out of range");
  for (std::size_t a = 0; a < source.poset.size(); ++a)
    for (std::size_t b = 0; b < source.poset.size(); ++b)
      if (source.poset.leq(static_cast<int>(a), static_cast<int>(b)) &&
          !target.poset.leq(point_map[a], point_map[b]))
        throw input_error("morphism: point map is not monotone at " +
                          source.poset.label(static_cast<int>(a)));
  if (source.universe.kind == UniverseKind::rational) {
    for (std::size_t x = 0; x < source.poset.size(); ++x)
      if (!target.poles(point_map[x]).subset_of(source.poles(static_cast<int>(x))))
        throw input_error("morphism: pole constraint fails at " +
                          source.poset.label(static_cast<int>(x)) + ": target stalk " +
                          pole_set_to_string(target.poles(point_map[x]), target.universe.places) +
                          " not contained in " +
                          pole_set_to_string(source.poles(static_cast<int>(x)),
                                             source.universe.places));
  }
}

OpenSet Morphism::preimage(const OpenSet& V) const {
  std::vector<int> mem;
  for (std::size_t x = 0; x < source.poset.size(); ++x)
    if (V.contains(point_map[x])) mem.push_back(static_cast<int>(x));
  OpenSet u;
  u.X = &source.poset;
  u.members = std::move(mem);
  return u;
}

Morphism Morphism::identity(const Space& X) {
  Morphism f;
  f.source = X;
  f.target = X;
  for (std::size_t i = 0; i < X.poset.size(); ++i) f.point_map.push_back(static_cast<int>(i));
  return f;
}

Morphism Morphism::to_point(const Space& X, const Space& pt) {
  if (pt.poset.size() != 1) throw input_error("to_point: target is not punctual");
  Morphism f;
  f.source = X;
  f.target = pt;
  f.point_map.assign(X.poset.size(), 0);
  f.validate();
  return f;
}

Morphism Morphism::open_inclusion(const Space& X, const OpenSet& U) {
  Morphism f;
  std::vector<int> of_sub;
  f.source = open_subspace(X, U, &of_sub);
  f.target = X;
  f.point_map = of_sub;
  return f;
}

Space open_subspace(const Space& X, const OpenSet& U, std::vector<int>* point_of_sub) {
  Space S;
  S.poset = X.poset.induced(U.members);
  S.universe = X.universe;
  if (X.rational()) {
    S.stalk_poles.resize(U.members.size());
    for (std::size_t i = 0; i < U.members.size(); ++i) {
      int sub = S.poset.index_or_throw(X.poset.label(U.members[i]));
      S.stalk_poles[sub] = X.poles(U.members[i]);
    }
  }
  if (point_of_sub) {
    point_of_sub->assign(U.members.size(), -1);
    for (std::size_t i = 0; i < U.members.size(); ++i) {
      int sub = S.poset.index_or_throw(X.poset.label(U.members[i]));
      (*point_of_sub)[sub] = U.members[i];
    }
  }
  return S;
}

CoveringModel covering_model(const Space& X, const std::vector<OpenSet>& cover) {
  std::vector<std::vector<int>> raw;
  for (const OpenSet& u : cover) raw.push_back(u.members);
  CoveringQuotient q = quotient_by_covering(X.poset, raw);

  Space M;
  M.poset = q.quotient;
  M.universe = X.universe;
  if (X.rational()) {
    // stalk at [s]: sections over U^s, i.e. the intersection of the stalk
    // poles over the class's common refinement open
    M.stalk_poles.assign(M.poset.size(), PoleSet::make_all());
    // recompute U^s per class from the projection: U^s = preimage of U_[s]
    for (std::size_t cls = 0; cls < M.poset.size(); ++cls) {
      OpenSet ucls = minimal_open(M.poset, static_cast<int>(cls));
      PoleSet t = PoleSet::make_all();
      for (std::size_t s = 0; s < X.poset.size(); ++s)
        if (ucls.contains(q.projection[s])) t = t.intersect(X.poles(static_cast<int>(s)));
      M.stalk_poles[cls] = t;
    }
  }
  M.validate();

  Morphism pi;
  pi.source = X;
  pi.target = M;
  pi.point_map = q.projection;
  pi.validate();
  return CoveringModel{std::move(M), std::move(pi)};
}

Morphism refinement_morphism(const Space& X, const std::vector<OpenSet>& coarse,
                             const std::vector<OpenSet>& fine) {
  auto u_of = [&](const std::vector<OpenSet>& cover) {
    std::vector<std::vector<int>> out(X.poset.size());
    for (std::size_t s = 0; s < X.poset.size(); ++s) {
      std::vector<int> acc;
      bool covered = false;
      for (const OpenSet& m : cover) {
        if (!m.contains(static_cast<int>(s))) continue;
        if (!covered) {
          acc = m.members;
          covered = true;
        } else {
          std::vector<int> tmp;
          std::set_intersection(acc.begin(), acc.end(), m.members.begin(), m.members.end(),
                                std::back_inserter(tmp));
          acc = std::move(tmp);
        }
      }
      if (!covered)
        throw input_error("cover does not cover the carrier: point " +
                          X.poset.label(static_cast<int>(s)));
      out[s] = std::move(acc);
    }
    return out;
  };
  auto uc = u_of(coarse), uf = u_of(fine);
  for (std::size_t s = 0; s < X.poset.size(); ++s)
    if (!std::includes(uc[s].begin(), uc[s].end(), uf[s].begin(), uf[s].end()))
      throw input_error("refinement_morphism: second cover is not a refinement at point " +
                        X.poset.label(static_cast<int>(s)));

  CoveringModel mc = covering_model(X, coarse);
  CoveringModel mf = covering_model(X, fine);
  Morphism f;
  f.source = mf.model;
  f.target = mc.model;
  f.point_map.assign(mf.model.poset.size(), -1);
  for (std::size_t s = 0; s < X.poset.size(); ++s) {
    int a = mf.projection.point_map[s];
    int b = mc.projection.point_map[s];
    if (f.point_map[a] >= 0 && f.point_map[a] != b)
      throw std::logic_error("refinement_morphism: projection not well-defined");
    f.point_map[a] = b;
  }
  f.validate();
  return f;
}

}  // namespace finsp
