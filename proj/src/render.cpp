#include "finsp/render.hpp"

#include <algorithm>
#include <sstream>

namespace finsp {

std::string ring_name(const PoleSet& T, const PlaceList& pl) {
  if (T.all) return "k(x)";
  if (T.empty()) return "k";
  bool has_zero = pl.zero >= 0 && T.contains(pl.zero);
  bool has_inf = pl.infinity >= 0 && T.contains(pl.infinity);
  std::size_t extras = T.s.size() - (has_zero ? 1 : 0) - (has_inf ? 1 : 0);
  if (extras == 0) {
    if (has_inf && !has_zero) return "k[x]";
    if (has_zero && !has_inf) return "k[1/x]";
    if (has_zero && has_inf) return "k[x,1/x]";
  }
  return "sections with poles in " + pole_set_to_string(T, pl);
}

namespace {

struct PieceSig {
  std::string label;
  long dim;
  bool omega;
  long count;
  friend bool operator<(const PieceSig& a, const PieceSig& b) {
    return std::tie(a.label, a.dim, a.omega, a.count) < std::tie(b.label, b.dim, b.omega, b.count);
  }
  friend bool operator==(const PieceSig& a, const PieceSig& b) {
    return a.label == b.label && a.dim == b.dim && a.omega == b.omega &&
           (a.omega || a.count == b.count);
  }
};

std::vector<PieceSig> signature(const std::vector<ReportPiece>& ps) {
  std::vector<PieceSig> out;
  for (const ReportPiece& p : ps) out.push_back({p.label, p.dim, p.mult.omega, p.mult.count});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PieceSig> ring_signature(const PoleSet& T, const PlaceList& pl) {
  std::vector<PieceSig> out;
  out.push_back({"constant", 1, false, 1});
  auto add_place = [&](int i) {
    if (i == pl.zero || i == pl.infinity) {
      out.push_back({"place:" + pl.places[i].name, 1, true, 0});
    } else {
      out.push_back({"place:" + pl.places[i].name, pl.places[i].degree(), true, 0});
    }
  };
  if (T.all) {
    for (std::size_t i = 0; i < pl.places.size(); ++i) add_place(static_cast<int>(i));
    out.push_back({"UNLISTED", 1, true, 0});
  } else {
    for (int i : T.s) add_place(i);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// the polar part of k(x) beyond k[x]: every finite place plus UNLISTED
std::vector<PieceSig> quotient_signature(const PlaceList& pl) {
  std::vector<PieceSig> out;
  for (std::size_t i = 0; i < pl.places.size(); ++i) {
    int ii = static_cast<int>(i);
    if (ii == pl.infinity) continue;
    long dim = ii == pl.zero ? 1 : pl.places[i].degree();
    out.push_back({"place:" + pl.places[i].name, dim, true, 0});
  }
  out.push_back({"UNLISTED", 1, true, 0});
  std::sort(out.begin(), out.end());
  return out;
}

std::string degree_name(const std::vector<ReportPiece>& ps, const PlaceList& pl) {
  if (ps.empty()) return "0";
  std::vector<PieceSig> sig = signature(ps);
  std::vector<PoleSet> candidates;
  candidates.push_back(PoleSet{});
  if (pl.infinity >= 0) {
    PoleSet t;
    t.s.insert(pl.infinity);
    candidates.push_back(t);
  }
  if (pl.zero >= 0) {
    PoleSet t;
    t.s.insert(pl.zero);
    candidates.push_back(t);
    if (pl.infinity >= 0) {
      t.s.insert(pl.infinity);
      candidates.push_back(t);
    }
  }
  candidates.push_back(PoleSet::make_all());
  for (const PoleSet& T : candidates)
    if (sig == ring_signature(T, pl)) return ring_name(T, pl);
  if (sig == quotient_signature(pl)) return "k(x)/k[x]";
  return "";
}

std::string piece_line(const ReportPiece& p) {
  std::ostringstream os;
  os << p.label << ": dim " << p.dim;
  if (p.mult.omega)
    os << " x omega";
  else if (p.mult.count != 1)
    os << " x " << p.mult.count;
  return os.str();
}

}  // namespace

std::string render_group(const AbelianInvariants& g) {
  if (g.trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  if (g.free_rank == 1) {
    os << "Z";
    first = false;
  } else if (g.free_rank > 1) {
    os << "Z^" << g.free_rank;
    first = false;
  }
  for (const Int& t : g.torsion) {
    if (!first) os << " (+) ";
    os << "Z/" << t.str();
    first = false;
  }
  return os.str();
}

std::string render_report(const CohomologyReport& r, const Space& X, int only_degree) {
  std::ostringstream os;
  for (std::size_t i = 0; i < std::max<std::size_t>(r.degrees(), only_degree >= 0 ? only_degree + 1 : 0);
       ++i) {
    if (only_degree >= 0 && static_cast<std::size_t>(only_degree) != i) continue;
    os << "H^" << i << " = ";
    if (r.zbased) {
      os << (i < r.groups.size() ? render_group(r.groups[i]) : "0") << "\n";
      continue;
    }
    const std::vector<ReportPiece> empty;
    const std::vector<ReportPiece>& ps = i < r.pieces.size() ? r.pieces[i] : empty;
    std::string name =
        X.universe.kind == UniverseKind::rational ? degree_name(ps, X.universe.places) : "";
    if (ps.empty()) {
      os << "0\n";
    } else if (!name.empty()) {
      os << name << "\n";
    } else {
      os << "{ ";
      for (std::size_t k = 0; k < ps.size(); ++k) {
        if (k) os << "; ";
        os << piece_line(ps[k]);
      }
      os << " }\n";
    }
  }
  return os.str();
}

std::string render_window(const WindowReport& w) {
  std::ostringstream os;
  os << "window N=" << w.N << (w.stabilized ? " (stabilized)" : " (NOT stabilized)") << "\n";
  os << "totals per degree:";
  for (long t : w.totals) os << " " << t;
  os << "\n";
  for (auto& [name, levels] : w.families) {
    // families with all-zero dims are omitted
    bool any = false;
    for (const auto& dims : levels)
      for (long d : dims) any = any || d != 0;
    if (!any) continue;
    os << "  " << name << ":";
    for (std::size_t l = 0; l < levels.size(); ++l) {
      os << " [";
      for (std::size_t i = 0; i < levels[l].size(); ++i) {
        if (i) os << ",";
        os << levels[l][i];
      }
      os << "]";
    }
    os << "\n";
  }
  return os.str();
}

std::string render_verdict(const std::string& predicate, const PredicateVerdict& v) {
  std::ostringstream os;
  os << predicate << ": " << v.verdict_string() << " (" << v.obligations.size()
     << " obligations checked)\n";
  if (v.is_false()) os << "counterexample: " << v.counterexample << "\n";
  return os.str();
}

std::string render_scheme(const SchemeDescriptor& d, const Space& X) {
  const PlaceList& pl = X.universe.places;
  std::ostringstream os;
  os << (d.is_scheme ? "scheme" : "locally ringed space, not a scheme") << "\n";
  os << "charts:\n";
  for (std::size_t t = 0; t < d.charts.size(); ++t)
    os << "  Spec " << ring_name(d.charts[t], pl) << "  at point "
       << X.poset.label(static_cast<int>(t)) << "\n";
  os << "gluings:\n";
  for (const Gluing& g : d.gluings) {
    os << "  Spec " << ring_name(d.charts[g.from], pl) << " -> Spec " << ring_name(d.charts[g.to], pl)
       << "  [" << g.class_string();
    if (g.cls == Gluing::Class::open_immersion)
      os << ", removes " << pole_set_to_string(g.removed, pl);
    os << "]\n";
  }
  os << "global sections: ";
  for (std::size_t c = 0; c < d.global_sections.size(); ++c) {
    if (c) os << " x ";
    os << ring_name(d.global_sections[c], pl);
  }
  os << "\n";
  if (d.affine_collapse)
    os << "affine collapse: Spec " << ring_name(d.collapse_ring, pl) << "\n";
  return os.str();
}

}  // namespace finsp
