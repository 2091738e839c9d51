#include "finsp/poset.hpp"

#include <algorithm>
#include <set>

namespace finsp {

int FinitePoset::index_of(const std::string& name) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), name);
  if (it != points_.end() && *it == name) return static_cast<int>(it - points_.begin());
  auto cls = t0_class_.find(name);
  if (cls != t0_class_.end() && cls->second != name) return index_of(cls->second);
  return -1;
}

int FinitePoset::index_or_throw(const std::string& name) const {
  int i = index_of(name);
  if (i < 0) throw input_error("unknown point identifier: " + name);
  return i;
}

void FinitePoset::finish() {
  const std::size_t n = points_.size();
  hasse_.clear();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b || !leq_[a][b]) continue;
      bool cover = true;
      for (std::size_t m = 0; m < n && cover; ++m)
        if (m != a && m != b && leq_[a][m] && leq_[m][b]) cover = false;
      if (cover) hasse_.emplace_back(static_cast<int>(a), static_cast<int>(b));
    }
  std::sort(hasse_.begin(), hasse_.end());
  // longest chain length via DP over the DAG
  std::vector<int> depth(n, 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto [a, b] : hasse_)
      if (depth[b] < depth[a] + 1) {
        depth[b] = depth[a] + 1;
        changed = true;
      }
  }
  dim_ = 0;
  for (std::size_t i = 0; i < n; ++i) dim_ = std::max(dim_, depth[i]);
}

FinitePoset FinitePoset::from_relations(
    std::vector<std::string> raw_points,
    const std::vector<std::pair<std::string, std::string>>& rels) {
  std::sort(raw_points.begin(), raw_points.end());
  raw_points.erase(std::unique(raw_points.begin(), raw_points.end()), raw_points.end());
  const std::size_t n = raw_points.size();
  auto idx = [&](const std::string& s) {
    auto it = std::lower_bound(raw_points.begin(), raw_points.end(), s);
    if (it == raw_points.end() || *it != s) throw input_error("relation mentions unknown point: " + s);
    return static_cast<std::size_t>(it - raw_points.begin());
  };
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) le[i][i] = true;
  for (auto& [a, b] : rels) le[idx(a)][idx(b)] = true;
  // transitive closure
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (le[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (le[k][j]) le[i][j] = true;

  // T0-fication: collapse i <= j <= i onto the lexicographically least label
  std::vector<int> rep(n);
  for (std::size_t i = 0; i < n; ++i) {
    rep[i] = static_cast<int>(i);
    for (std::size_t j = 0; j < i; ++j)
      if (le[i][j] && le[j][i]) {
        rep[i] = rep[j];
        break;
      }
  }
  std::vector<std::string> pts;
  std::vector<std::size_t> class_of(n);
  std::map<int, std::size_t> seen;
  for (std::size_t i = 0; i < n; ++i) {
    auto it = seen.find(rep[i]);
    if (it == seen.end()) {
      seen[rep[i]] = pts.size();
      class_of[i] = pts.size();
      pts.push_back(raw_points[rep[i]]);
    } else {
      class_of[i] = it->second;
    }
  }
  FinitePoset X;
  X.points_ = pts;  // already sorted: representatives appear in sorted raw order
  const std::size_t m = pts.size();
  X.leq_.assign(m, std::vector<bool>(m, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (le[i][j]) X.leq_[class_of[i]][class_of[j]] = true;
  for (std::size_t i = 0; i < n; ++i) X.t0_class_[raw_points[i]] = pts[class_of[i]];
  X.finish();
  return X;
}

FinitePoset FinitePoset::from_leq(std::vector<std::string> points,
                                  std::vector<std::vector<bool>> leq) {
  FinitePoset X;
  X.points_ = std::move(points);
  X.leq_ = std::move(leq);
  for (const auto& p : X.points_) X.t0_class_[p] = p;
  X.finish();
  return X;
}

std::vector<int> FinitePoset::up_set(int p) const {
  std::vector<int> out;
  for (std::size_t q = 0; q < size(); ++q)
    if (leq_[p][q]) out.push_back(static_cast<int>(q));
  return out;
}

std::vector<int> FinitePoset::down_set(int p) const {
  std::vector<int> out;
  for (std::size_t q = 0; q < size(); ++q)
    if (leq_[q][p]) out.push_back(static_cast<int>(q));
  return out;
}

FinitePoset FinitePoset::induced(const std::vector<int>& members) const {
  std::vector<std::string> pts;
  for (int i : members) pts.push_back(points_[i]);
  std::vector<std::vector<bool>> le(members.size(), std::vector<bool>(members.size(), false));
  for (std::size_t a = 0; a < members.size(); ++a)
    for (std::size_t b = 0; b < members.size(); ++b) le[a][b] = leq_[members[a]][members[b]];
  return from_leq(std::move(pts), std::move(le));
}

OpenSet OpenSet::whole(const FinitePoset& X) {
  OpenSet u;
  u.X = &X;
  for (std::size_t i = 0; i < X.size(); ++i) u.members.push_back(static_cast<int>(i));
  return u;
}

OpenSet OpenSet::make(const FinitePoset& X, std::vector<int> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  for (int p : members)
    for (std::size_t q = 0; q < X.size(); ++q)
      if (X.leq(p, static_cast<int>(q)) &&
          !std::binary_search(members.begin(), members.end(), static_cast<int>(q)))
        throw input_error("set is not open: contains " + X.label(p) + " but not " +
                          X.label(static_cast<int>(q)));
  OpenSet u;
  u.X = &X;
  u.members = std::move(members);
  return u;
}

bool OpenSet::contains(int p) const {
  return std::binary_search(members.begin(), members.end(), p);
}

OpenSet minimal_open(const FinitePoset& X, int p) {
  OpenSet u;
  u.X = &X;
  u.members = X.up_set(p);
  return u;
}

OpenSet minimal_open(const FinitePoset& X, const std::string& p) {
  return minimal_open(X, X.index_or_throw(p));
}

OpenSet intersect(const OpenSet& a, const OpenSet& b) {
  OpenSet u;
  u.X = a.X;
  std::set_intersection(a.members.begin(), a.members.end(), b.members.begin(), b.members.end(),
                        std::back_inserter(u.members));
  return u;
}

bool subset(const OpenSet& a, const OpenSet& b) {
  return std::includes(b.members.begin(), b.members.end(), a.members.begin(), a.members.end());
}

std::vector<Chain> enumerate_chains(const OpenSet& U, int n) {
  if (n < 0) throw input_error("chain length must be nonnegative");
  std::vector<Chain> out;
  Chain cur;
  // indices are sorted, so DFS emits lexicographic order
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (static_cast<int>(cur.size()) == n + 1) {
      out.push_back(cur);
      return;
    }
    for (std::size_t k = start; k < U.members.size(); ++k) {
      int q = U.members[k];
      if (!cur.empty() && !U.X->less(cur.back(), q)) continue;
      cur.push_back(q);
      self(self, k + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

int open_dim(const OpenSet& U) {
  int d = 0;
  while (!enumerate_chains(U, d + 1).empty()) ++d;
  return U.members.empty() ? -1 : d;
}

std::vector<std::vector<int>> components(const OpenSet& U) {
  const std::size_t n = U.members.size();
  std::vector<int> comp(n, -1);
  int c = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<std::size_t> stack{s};
    comp[s] = c;
    while (!stack.empty()) {
      std::size_t a = stack.back();
      stack.pop_back();
      for (std::size_t b = 0; b < n; ++b) {
        if (comp[b] >= 0) continue;
        if (U.X->leq(U.members[a], U.members[b]) || U.X->leq(U.members[b], U.members[a])) {
          comp[b] = c;
          stack.push_back(b);
        }
      }
    }
    ++c;
  }
  std::vector<std::vector<int>> out(c);
  for (std::size_t i = 0; i < n; ++i) out[comp[i]].push_back(U.members[i]);
  return out;
}

bool has_minimum(const OpenSet& U, int* min_point) {
  for (int p : U.members) {
    bool is_min = true;
    for (int q : U.members)
      if (!U.X->leq(p, q)) {
        is_min = false;
        break;
      }
    if (is_min) {
      if (min_point) *min_point = p;
      return true;
    }
  }
  return false;
}

bool component_has_maximum(const FinitePoset& X, const std::vector<int>& comp) {
  for (int g : comp) {
    bool is_max = true;
    for (int q : comp)
      if (!X.leq(q, g)) {
        is_max = false;
        break;
      }
    if (is_max) return true;
  }
  return false;
}

FinitePoset product_poset(const FinitePoset& X, const FinitePoset& Y,
                          std::vector<std::pair<int, int>>* pair_of_point) {
  std::vector<std::pair<std::string, std::pair<int, int>>> labeled;
  for (std::size_t i = 0; i < X.size(); ++i)
    for (std::size_t j = 0; j < Y.size(); ++j)
      labeled.push_back({"(" + X.label(static_cast<int>(i)) + "," + Y.label(static_cast<int>(j)) + ")",
                         {static_cast<int>(i), static_cast<int>(j)}});
  std::sort(labeled.begin(), labeled.end());
  std::vector<std::string> pts;
  std::vector<std::pair<int, int>> pairs;
  for (auto& [name, pr] : labeled) {
    pts.push_back(name);
    pairs.push_back(pr);
  }
  const std::size_t n = pts.size();
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      le[a][b] = X.leq(pairs[a].first, pairs[b].first) && Y.leq(pairs[a].second, pairs[b].second);
  if (pair_of_point) *pair_of_point = pairs;
  return FinitePoset::from_leq(std::move(pts), std::move(le));
}

CoveringQuotient quotient_by_covering(const FinitePoset& carrier,
                                      const std::vector<std::vector<int>>& cover) {
  const std::size_t n = carrier.size();
  std::vector<std::set<int>> u_of(n);
  for (std::size_t s = 0; s < n; ++s) {
    bool covered = false;
    std::set<int> acc;
    for (const auto& member : cover) {
      if (std::find(member.begin(), member.end(), static_cast<int>(s)) == member.end()) continue;
      if (!covered) {
        acc.insert(member.begin(), member.end());
        covered = true;
      } else {
        std::set<int> tmp;
        for (int t : member)
          if (acc.count(t)) tmp.insert(t);
        acc = std::move(tmp);
      }
    }
    if (!covered)
      throw input_error("cover does not cover the carrier: point " +
                        carrier.label(static_cast<int>(s)) + " uncovered");
    u_of[s] = std::move(acc);
  }
  // classes: equal U^s; representative = lexicographically least member label,
  // which is the smallest index since points are sorted
  std::vector<int> cls(n, -1);
  std::vector<std::size_t> reps;
  for (std::size_t s = 0; s < n; ++s) {
    if (cls[s] >= 0) continue;
    cls[s] = static_cast<int>(reps.size());
    for (std::size_t t = s + 1; t < n; ++t)
      if (cls[t] < 0 && u_of[t] == u_of[s]) cls[t] = cls[s];
    reps.push_back(s);
  }
  std::vector<std::string> pts;
  for (std::size_t r : reps) pts.push_back(carrier.label(static_cast<int>(r)));
  // quotient points must be listed sorted; reps are in increasing index order
  // and carrier labels are sorted, so pts is sorted already
  const std::size_t m = reps.size();
  std::vector<std::vector<bool>> le(m, std::vector<bool>(m, false));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      le[a][b] = std::includes(u_of[reps[a]].begin(), u_of[reps[a]].end(), u_of[reps[b]].begin(),
                               u_of[reps[b]].end());
  CoveringQuotient out;
  out.quotient = FinitePoset::from_leq(std::move(pts), std::move(le));
  out.projection.assign(n, -1);
  for (std::size_t s = 0; s < n; ++s) out.projection[s] = cls[s];
  return out;
}

FinitePoset core_reduction(const FinitePoset& Xin) {
  FinitePoset X = Xin;
  while (true) {
    int beat = -1;
    for (std::size_t p = 0; p < X.size() && beat < 0; ++p) {
      std::vector<int> up, down;
      for (std::size_t q = 0; q < X.size(); ++q) {
        if (q == p) continue;
        if (X.leq(static_cast<int>(p), static_cast<int>(q))) up.push_back(static_cast<int>(q));
        if (X.leq(static_cast<int>(q), static_cast<int>(p))) down.push_back(static_cast<int>(q));
      }
      bool up_min = false, down_max = false;
      for (int m : up) {
        bool ok = true;
        for (int q : up)
          if (!X.leq(m, q)) ok = false;
        if (ok) { up_min = true; break; }
      }
      for (int m : down) {
        bool ok = true;
        for (int q : down)
          if (!X.leq(q, m)) ok = false;
        if (ok) { down_max = true; break; }
      }
      if ((!up.empty() && up_min) || (!down.empty() && down_max)) beat = static_cast<int>(p);
    }
    if (beat < 0) break;
    std::vector<int> keep;
    for (std::size_t q = 0; q < X.size(); ++q)
      if (static_cast<int>(q) != beat) keep.push_back(static_cast<int>(q));
    X = X.induced(keep);
  }
  return X;
}

std::vector<IntMat> order_complex_boundaries(const FinitePoset& X) {
  OpenSet whole = OpenSet::whole(X);
  std::vector<std::vector<Chain>> chains;
  for (int n = 0;; ++n) {
    auto cs = enumerate_chains(whole, n);
    if (cs.empty()) break;
    chains.push_back(std::move(cs));
  }
  std::vector<IntMat> boundaries;
  for (std::size_t n = 1; n < chains.size(); ++n) {
    std::map<Chain, std::size_t> index;
    for (std::size_t i = 0; i < chains[n - 1].size(); ++i) index[chains[n - 1][i]] = i;
    IntMat d(chains[n - 1].size(), chains[n].size());
    for (std::size_t j = 0; j < chains[n].size(); ++j) {
      const Chain& c = chains[n][j];
      for (std::size_t drop = 0; drop < c.size(); ++drop) {
        Chain sub;
        for (std::size_t t = 0; t < c.size(); ++t)
          if (t != drop) sub.push_back(c[t]);
        d(index.at(sub), j) += (drop % 2 == 0) ? Int(1) : Int(-1);
      }
    }
    boundaries.push_back(std::move(d));
  }
  return boundaries;
}

}  // namespace finsp
