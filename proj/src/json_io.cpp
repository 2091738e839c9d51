#include "finsp/json_io.hpp"

#include <fstream>

namespace finsp {

namespace {

std::string dir_of(const std::string& path) {
  auto slash = path.find_last_of('/');
  return slash == std::string::npos ? std::string() : path.substr(0, slash + 1);
}

FieldSpec parse_field(const Json& j) {
  FieldSpec f;
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "Q") return f;
    if (s.size() > 1 && (s[0] == 'F' || s[0] == 'f')) {
      f.kind = FieldSpec::Kind::Fp;
      f.p = std::stoull(s.substr(1));
    } else {
      throw input_error("unknown field: " + s);
    }
  } else if (j.is_object() && j.contains("p")) {
    f.kind = FieldSpec::Kind::Fp;
    f.p = j.at("p").get<std::uint64_t>();
  } else {
    throw input_error("malformed field specification");
  }
  if (f.kind == FieldSpec::Kind::Fp) {
    if (f.p > (1ull << 31)) throw input_error("field characteristic exceeds 2^31");
    if (!is_prime_u64(f.p)) throw input_error("field characteristic is not prime");
  }
  return f;
}

PlaceList default_places(const FieldSpec& f) {
  PlaceList pl;
  pl.field = f;
  pl.add_place(pl.make_finite_place("x", "zero", false));
  pl.add_place(pl.make_finite_place("x-1", "one", false));
  Place inf;
  inf.at_infinity = true;
  inf.name = "inf";
  pl.add_place(inf);
  return pl;
}

PlaceList parse_places(const Json& universe) {
  PlaceList pl;
  pl.field = universe.contains("field") ? parse_field(universe.at("field")) : FieldSpec{};
  if (!universe.contains("places")) return default_places(pl.field);
  for (const Json& pj : universe.at("places")) {
    std::string kind = pj.value("kind", "finite");
    std::string name = pj.value("name", "");
    if (kind == "infinity") {
      Place p;
      p.at_infinity = true;
      p.name = name.empty() ? "inf" : name;
      pl.add_place(p);
    } else if (kind == "finite") {
      pl.add_place(pl.make_finite_place(pj.at("poly").get<std::string>(), name,
                                        pj.value("attested", false)));
    } else {
      throw input_error("unknown place kind: " + kind);
    }
  }
  return pl;
}

PoleSet parse_pole_set(const Json& j, const PlaceList& pl) {
  if (j.is_string()) {
    if (j.get<std::string>() == "ALL") return PoleSet::make_all();
    throw input_error("malformed pole set: " + j.get<std::string>());
  }
  PoleSet t;
  for (const Json& e : j) t.s.insert(pl.index_or_throw(e.get<std::string>()));
  return t;
}

IntMat parse_matrix(const Json& j, std::size_t rows, std::size_t cols, const std::string& what) {
  IntMat m(rows, cols);
  if (j.size() != rows) throw input_error(what + ": expected " + std::to_string(rows) + " rows");
  for (std::size_t i = 0; i < rows; ++i) {
    if (j[i].size() != cols)
      throw input_error(what + ": expected " + std::to_string(cols) + " columns");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = Int(j[i][k].get<long long>());
  }
  return m;
}

Json matrix_json(const IntMat& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    rows.push_back(row);
  }
  return rows;
}

Entry parse_entry(const Json& j, const PlaceList& pl) {
  if (j.contains("zero") && j.at("zero").get<bool>()) return Entry::zero_entry();
  if (j.contains("ring")) {
    return Entry::ring(parse_pole_set(j.at("ring"), pl));
  }
  long a = j.value("exp", 0L);
  const Json& poles = j.at("poles");
  if (poles.is_string() && poles.get<std::string>() == "ALL")
    return Entry::ring(PoleSet::make_all());
  bool has_zero = false, has_inf = false;
  for (const Json& e : poles) {
    std::string s = e.get<std::string>();
    int idx = pl.index_of(s);
    if (s == "inf" || s == "infinity" || (idx >= 0 && idx == pl.infinity)) has_inf = true;
    else if (s == "zero" || (idx >= 0 && idx == pl.zero)) has_zero = true;
    else throw input_error("fractional-monomial pole set must lie in {zero, inf}: " + s);
  }
  return Entry::mono_interval(has_zero ? std::nullopt : std::optional<long>(a),
                              has_inf ? std::nullopt : std::optional<long>(a));
}

Json entry_json(const Entry& e, const PlaceList& pl) {
  Json j;
  switch (e.kind) {
    case Entry::Kind::zero:
      j["zero"] = true;
      return j;
    case Entry::Kind::ring:
      j["ring"] = pole_set_json(e.ring_poles, pl).at("poles");
      return j;
    case Entry::Kind::mono: {
      long a = 0;
      Json poles = Json::array();
      if (e.lo_unbounded && e.hi_unbounded) {
        poles.push_back("zero");
        poles.push_back("inf");
      } else if (e.lo_unbounded) {
        a = e.hi;
        poles.push_back("zero");
      } else if (e.hi_unbounded) {
        a = e.lo;
        poles.push_back("inf");
      } else if (e.lo == e.hi) {
        a = e.lo;
      } else {
        throw unrepresentable_error(
            "monomial span of finite length > 1 has no exponent/pole-set form");
      }
      j["exp"] = a;
      j["poles"] = poles;
      return j;
    }
  }
  return j;
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw input_error("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

void write_json_file(const std::string& path, const Json& doc) {
  std::ofstream out(path);
  if (!out) throw input_error("cannot open output file: " + path);
  out << doc.dump(2) << "\n";
}

Space parse_space(const Json& doc) {
  if (!doc.is_object() || !doc.contains("points"))
    throw input_error("space document needs a points array");
  Space X;
  const Json& uni = doc.contains("universe") ? doc.at("universe") : Json::object();
  std::string kind = uni.is_object() ? uni.value("kind", "topological") : "topological";
  std::vector<std::string> ids;
  for (const Json& pj : doc.at("points"))
    ids.push_back(pj.is_string() ? pj.get<std::string>() : pj.at("id").get<std::string>());
  std::vector<std::pair<std::string, std::string>> rels;
  if (doc.contains("relations"))
    for (const Json& r : doc.at("relations"))
      rels.push_back({r[0].get<std::string>(), r[1].get<std::string>()});
  X.poset = FinitePoset::from_relations(ids, rels);

  if (kind == "topological") {
    X.universe.kind = UniverseKind::topological;
    if (uni.contains("base") && !(uni.at("base").is_string() && uni.at("base") == "Z")) {
      X.universe.z_base = false;
      X.universe.base_field = parse_field(uni.at("base").is_object() && uni.at("base").contains("field")
                                              ? uni.at("base").at("field")
                                              : uni.at("base"));
    }
    return X;
  }
  if (kind != "rational") throw input_error("unknown universe kind: " + kind);
  X.universe.kind = UniverseKind::rational;
  X.universe.places = parse_places(uni);

  // stalk poles per T0 class: every original point of a class must agree
  X.stalk_poles.assign(X.poset.size(), PoleSet{});
  std::vector<bool> seen(X.poset.size(), false);
  for (const Json& pj : doc.at("points")) {
    if (pj.is_string()) throw input_error("rational-universe points need pole sets");
    std::string id = pj.at("id").get<std::string>();
    int idx = X.poset.index_or_throw(id);
    PoleSet t = parse_pole_set(pj.value("poles", Json::array()), X.universe.places);
    if (seen[idx] && !(X.stalk_poles[idx] == t))
      throw input_error("points identified by T0-fication carry different pole sets: " + id);
    X.stalk_poles[idx] = t;
    seen[idx] = true;
  }
  X.validate();
  return X;
}

Space load_space(const std::string& path) { return parse_space(read_json_file(path)); }

SheafDescriptor parse_sheaf(const Json& doc, const Space& X) {
  std::string kind = doc.value("kind", "structure");
  if (kind == "structure") return SheafDescriptor::structure(X);
  if (kind == "pattern") {
    std::vector<bool> v(X.poset.size(), false);
    for (const Json& e : doc.at("set")) v[X.poset.index_or_throw(e.get<std::string>())] = true;
    return SheafDescriptor::pattern_sheaf(X, v);
  }
  if (kind == "fracmono") {
    if (!X.rational()) throw input_error("fracmono sheaf needs the rational universe");
    std::vector<Json> summands;
    if (doc.contains("summands"))
      for (const Json& s : doc.at("summands")) summands.push_back(s);
    else
      summands.push_back(doc.at("data"));
    RationalSheaf s;
    s.pieces.resize(X.poset.size());
    for (const Json& sm : summands) {
      for (std::size_t t = 0; t < X.poset.size(); ++t) {
        const std::string& id = X.poset.label(static_cast<int>(t));
        if (sm.contains(id))
          s.pieces[t].push_back(parse_entry(sm.at(id), X.universe.places));
        else
          s.pieces[t].push_back(Entry::zero_entry());
      }
    }
    std::size_t k = summands.size();
    for (auto e : X.poset.hasse()) {
      std::vector<int> src(k);
      for (std::size_t j = 0; j < k; ++j)
        src[j] = s.pieces[e.first][j].kind == Entry::Kind::zero ? -1 : static_cast<int>(j);
      s.edge_src[e] = std::move(src);
    }
    return SheafDescriptor::rational_sheaf(X, std::move(s));
  }
  if (kind == "polering") {
    if (!X.rational()) throw input_error("polering sheaf needs the rational universe");
    RationalSheaf s;
    s.pieces.resize(X.poset.size());
    const Json& data = doc.at("data");
    for (std::size_t t = 0; t < X.poset.size(); ++t) {
      const std::string& id = X.poset.label(static_cast<int>(t));
      if (!data.contains(id)) throw input_error("polering sheaf: missing point " + id);
      s.pieces[t].push_back(Entry::ring(parse_pole_set(data.at(id), X.universe.places)));
    }
    for (auto e : X.poset.hasse()) s.edge_src[e] = {0};
    return SheafDescriptor::rational_sheaf(X, std::move(s));
  }
  if (kind == "abelian") {
    AbelianSheaf s;
    const Json& stalks = doc.at("stalks");
    s.stalks.resize(X.poset.size());
    for (std::size_t t = 0; t < X.poset.size(); ++t) {
      const std::string& id = X.poset.label(static_cast<int>(t));
      if (!stalks.contains(id)) throw input_error("abelian sheaf: missing stalk at " + id);
      const Json& st = stalks.at(id);
      std::size_t gens = st.at("gens").get<std::size_t>();
      const Json& rels = st.contains("rels") ? st.at("rels") : Json::array();
      IntMat r(gens, rels.size());
      for (std::size_t c = 0; c < rels.size(); ++c) {
        if (rels[c].size() != gens) throw input_error("abelian sheaf: relation length mismatch");
        for (std::size_t i = 0; i < gens; ++i) r(i, c) = Int(rels[c][i].get<long long>());
      }
      s.stalks[t] = FpModule{gens, std::move(r)};
    }
    for (const Json& rj : doc.at("restrictions")) {
      int from = X.poset.index_or_throw(rj.at("from").get<std::string>());
      int to = X.poset.index_or_throw(rj.at("to").get<std::string>());
      s.edge_restriction[{from, to}] = parse_matrix(
          rj.at("matrix"), s.stalks[to].gens, s.stalks[from].gens, "abelian restriction");
    }
    for (auto e : X.poset.hasse())
      if (!s.edge_restriction.count(e))
        throw input_error("abelian sheaf: missing restriction on edge " +
                          X.poset.label(e.first) + " <= " + X.poset.label(e.second));
    return SheafDescriptor::abelian(X, s);
  }
  throw input_error("unknown sheaf kind: " + kind);
}

SheafDescriptor load_sheaf(const std::string& path, const Space& X) {
  return parse_sheaf(read_json_file(path), X);
}

Morphism parse_morphism(const Json& doc, const std::string& base_dir) {
  Morphism f;
  auto load_side = [&](const Json& side) {
    if (side.is_string()) return load_space(base_dir + side.get<std::string>());
    return parse_space(side);
  };
  f.source = load_side(doc.at("source"));
  f.target = load_side(doc.at("target"));
  f.point_map.assign(f.source.poset.size(), -1);
  for (auto& [from, to] : doc.at("map").items()) {
    int x = f.source.poset.index_or_throw(from);
    f.point_map[x] = f.target.poset.index_or_throw(to.get<std::string>());
  }
  for (std::size_t x = 0; x < f.source.poset.size(); ++x)
    if (f.point_map[x] < 0)
      throw input_error("morphism: no image for point " +
                        f.source.poset.label(static_cast<int>(x)));
  f.validate();
  return f;
}

Morphism load_morphism(const std::string& path) {
  return parse_morphism(read_json_file(path), dir_of(path));
}

std::vector<OpenSet> parse_covering(const Json& doc, const FinitePoset& P) {
  const Json& cov = doc.contains("cover") ? doc.at("cover") : doc;
  std::vector<OpenSet> out;
  for (const Json& member : cov) {
    std::vector<int> pts;
    for (const Json& e : member) pts.push_back(P.index_or_throw(e.get<std::string>()));
    out.push_back(OpenSet::make(P, pts));
  }
  if (out.empty()) throw input_error("covering: empty cover");
  return out;
}

std::vector<OpenSet> load_covering(const std::string& path, const FinitePoset& P) {
  return parse_covering(read_json_file(path), P);
}

Json pole_set_json(const PoleSet& t, const PlaceList& pl) {
  Json j;
  if (t.all) {
    j["poles"] = "ALL";
    return j;
  }
  Json arr = Json::array();
  for (int i : t.s) arr.push_back(pl.places[i].name);
  j["poles"] = arr;
  return j;
}

Json space_to_json(const Space& X) {
  Json j;
  Json uni;
  if (X.universe.kind == UniverseKind::topological) {
    uni["kind"] = "topological";
    if (X.universe.z_base)
      uni["base"] = "Z";
    else
      uni["base"] = X.universe.base_field.name();
  } else {
    uni["kind"] = "rational";
    uni["field"] = X.universe.places.field.name();
    Json places = Json::array();
    for (const Place& p : X.universe.places.places) {
      Json pj;
      pj["name"] = p.name;
      if (p.at_infinity) {
        pj["kind"] = "infinity";
      } else {
        pj["kind"] = "finite";
        pj["poly"] = p.poly_string();
      }
      places.push_back(pj);
    }
    uni["places"] = places;
  }
  j["universe"] = uni;
  Json points = Json::array();
  for (std::size_t t = 0; t < X.poset.size(); ++t) {
    Json pj;
    pj["id"] = X.poset.label(static_cast<int>(t));
    if (X.rational()) pj["poles"] = pole_set_json(X.poles(static_cast<int>(t)), X.universe.places).at("poles");
    points.push_back(pj);
  }
  j["points"] = points;
  Json rels = Json::array();
  for (auto [p, q] : X.poset.hasse()) {
    Json r = Json::array();
    r.push_back(X.poset.label(p));
    r.push_back(X.poset.label(q));
    rels.push_back(r);
  }
  j["relations"] = rels;
  return j;
}

Json poset_to_json(const FinitePoset& P) {
  Json j;
  j["points"] = P.points();
  Json rels = Json::array();
  for (auto [p, q] : P.hasse()) {
    Json r = Json::array();
    r.push_back(P.label(p));
    r.push_back(P.label(q));
    rels.push_back(r);
  }
  j["relations"] = rels;
  return j;
}

Json morphism_to_json(const Morphism& f) {
  Json j;
  j["source"] = space_to_json(f.source);
  j["target"] = space_to_json(f.target);
  Json map;
  for (std::size_t x = 0; x < f.source.poset.size(); ++x)
    map[f.source.poset.label(static_cast<int>(x))] = f.target.poset.label(f.point_map[x]);
  j["map"] = map;
  return j;
}

Json sheaf_to_json(const SheafDescriptor& F, const Space& X) {
  Json j;
  switch (F.kind) {
    case SheafDescriptor::Kind::structure:
      j["kind"] = "structure";
      return j;
    case SheafDescriptor::Kind::pattern: {
      j["kind"] = "pattern";
      Json set = Json::array();
      for (std::size_t t = 0; t < F.pattern.size(); ++t)
        if (F.pattern[t]) set.push_back(X.poset.label(static_cast<int>(t)));
      j["set"] = set;
      return j;
    }
    case SheafDescriptor::Kind::rational: {
      j["kind"] = "rational-pieces";
      if (F.rat.klinear) j["klinear"] = true;
      Json pieces;
      for (std::size_t t = 0; t < X.poset.size(); ++t) {
        Json per = Json::array();
        for (const Entry& e : F.rat.pieces[t]) per.push_back(entry_json(e, X.universe.places));
        pieces[X.poset.label(static_cast<int>(t))] = per;
      }
      j["pieces"] = pieces;
      Json edges = Json::array();
      for (auto& [e, src] : F.rat.edge_src) {
        Json ej;
        ej["from"] = X.poset.label(e.first);
        ej["to"] = X.poset.label(e.second);
        ej["sources"] = src;
        edges.push_back(ej);
      }
      j["edges"] = edges;
      return j;
    }
    case SheafDescriptor::Kind::abelian: {
      j["kind"] = "abelian";
      Json stalks;
      for (std::size_t t = 0; t < X.poset.size(); ++t) {
        Json st;
        st["gens"] = F.ab.stalks[t].gens;
        Json rels = Json::array();
        for (std::size_t c = 0; c < F.ab.stalks[t].rels.cols(); ++c) {
          Json col = Json::array();
          for (std::size_t i = 0; i < F.ab.stalks[t].gens; ++i)
            col.push_back(F.ab.stalks[t].rels(i, c).str());
          rels.push_back(col);
        }
        st["rels"] = rels;
        stalks[X.poset.label(static_cast<int>(t))] = st;
      }
      j["stalks"] = stalks;
      Json restr = Json::array();
      for (auto& [e, m] : F.ab.edge_restriction) {
        Json rj;
        rj["from"] = X.poset.label(e.first);
        rj["to"] = X.poset.label(e.second);
        rj["matrix"] = matrix_json(m);
        restr.push_back(rj);
      }
      j["restrictions"] = restr;
      return j;
    }
  }
  return j;
}

Json report_to_json(const CohomologyReport& r) {
  Json j;
  j["dim"] = r.top;
  Json degrees = Json::array();
  for (std::size_t i = 0; i < r.degrees(); ++i) {
    Json dj;
    dj["degree"] = i;
    if (r.zbased) {
      Json g;
      g["rank"] = r.groups[i].free_rank;
      Json tor = Json::array();
      for (const Int& t : r.groups[i].torsion) tor.push_back(t.str());
      g["torsion"] = tor;
      dj["group"] = g;
    } else {
      Json pieces = Json::array();
      for (const ReportPiece& p : r.pieces[i]) {
        Json pj;
        pj["pattern"] = p.label;
        pj["dim"] = p.dim;
        if (p.mult.omega)
          pj["multiplicity"] = "omega";
        else
          pj["multiplicity"] = p.mult.count;
        pieces.push_back(pj);
      }
      dj["pieces"] = pieces;
    }
    degrees.push_back(dj);
  }
  j["degrees"] = degrees;
  return j;
}

Json window_to_json(const WindowReport& w) {
  Json j;
  j["window"] = w.N;
  j["stabilized"] = w.stabilized;
  j["totals"] = w.totals;
  Json fams;
  for (auto& [name, levels] : w.families) {
    Json lv = Json::array();
    for (const auto& dims : levels) lv.push_back(dims);
    fams[name] = lv;
  }
  j["families"] = fams;
  return j;
}

Json verdict_to_json(const std::string& predicate, const PredicateVerdict& v, bool full) {
  Json j;
  j["predicate"] = predicate;
  if (v.is_unknown())
    j["verdict"] = "unknown";
  else
    j["verdict"] = v.is_true();
  j["obligations"] = v.obligations.size();
  if (v.is_false())
    j["counterexample"] = v.counterexample;
  else
    j["counterexample"] = nullptr;
  if (full) {
    Json obs = Json::array();
    for (const Obligation& o : v.obligations) {
      Json oj;
      oj["check"] = o.what;
      oj["ok"] = o.ok;
      if (!o.evidence.empty()) oj["evidence"] = o.evidence;
      obs.push_back(oj);
    }
    j["detail"] = obs;
  }
  return j;
}

Json scheme_to_json(const SchemeDescriptor& d, const Space& X) {
  const PlaceList& pl = X.universe.places;
  Json j;
  Json charts = Json::array();
  for (std::size_t t = 0; t < d.charts.size(); ++t) {
    Json cj;
    cj["point"] = X.poset.label(static_cast<int>(t));
    cj["ring"] = pole_set_json(d.charts[t], pl);
    charts.push_back(cj);
  }
  j["charts"] = charts;
  Json gl = Json::array();
  for (const Gluing& g : d.gluings) {
    Json gj;
    gj["from"] = X.poset.label(g.from);
    gj["to"] = X.poset.label(g.to);
    gj["class"] = g.class_string();
    if (g.cls == Gluing::Class::open_immersion)
      gj["removed"] = pole_set_json(g.removed, pl).at("poles");
    gl.push_back(gj);
  }
  j["gluings"] = gl;
  j["is_scheme"] = d.is_scheme;
  if (d.global_sections.size() == 1) {
    j["global_sections"] = pole_set_json(d.global_sections.front(), pl);
  } else {
    Json comps = Json::array();
    for (const PoleSet& t : d.global_sections) comps.push_back(pole_set_json(t, pl));
    j["global_sections"] = Json{{"components", comps}};
  }
  if (d.affine_collapse) j["affine_collapse"] = pole_set_json(d.collapse_ring, pl);
  return j;
}

Json stein_to_json(const SteinFactorization& s) {
  Json j;
  j["intermediate"] = space_to_json(s.intermediate);
  j["f_prime"] = morphism_to_json(s.f_prime);
  j["a"] = morphism_to_json(s.a);
  return j;
}

Json witness_to_json(const RefinementWitness& w, const Morphism& f) {
  Json j;
  Json ids = Json::array();
  for (const auto& pp : w.identifications) {
    Json pj;
    pj["point"] = f.target.poset.label(pp.target_point);
    Json pre = Json::array();
    for (int t : pp.preimage_points) pre.push_back(f.source.poset.label(t));
    pj["preimage"] = pre;
    pj["chart"] = pole_set_json(pp.chart, f.target.universe.places);
    ids.push_back(pj);
  }
  j["identifications"] = ids;
  j["equivalent"] = true;
  return j;
}

Json hdi_to_json(const HigherDirectImage& h, const Morphism& f) {
  Json j;
  j["degree"] = h.degree;
  Json stalks;
  for (std::size_t y = 0; y < h.stalk_reports.size(); ++y)
    stalks[f.target.poset.label(static_cast<int>(y))] = report_to_json(h.stalk_reports[y]);
  j["stalks"] = stalks;
  j["quasi_coherent"] = h.qc;
  if (!h.qc) j["counterexample"] = h.counterexample;
  return j;
}

}  // namespace finsp
