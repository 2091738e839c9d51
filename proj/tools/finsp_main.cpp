#include <CLI11.hpp>

#include <iostream>

#include "finsp/json_io.hpp"
#include "finsp/render.hpp"

using namespace finsp;

namespace {

struct Output {
  std::string path;     // -o target, empty for stdout
  std::string format;   // "pretty" or "json"

  void emit(const Json& j, const std::string& pretty) const {
    if (!path.empty()) {
      write_json_file(path, j);
      if (!pretty.empty()) std::cout << pretty;
      return;
    }
    if (format == "json")
      std::cout << j.dump(2) << "\n";
    else
      std::cout << pretty;
  }
};

int run(int argc, char** argv) {
  CLI::App app{"exact cohomology and structure checks for ringed finite spaces"};
  app.require_subcommand(1);

  std::string space_path, sheaf_path, covering_path, morphism_path, out_path;
  std::string open_point, degree_arg = "all", mode = "exact", format = "pretty", property;
  std::string predicate, left_path, right_path, over_path;
  int window_n = 20;
  bool paranoid = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "pretty or json")->check(CLI::IsMember({"pretty", "json"}));
    cmd->add_option("-o,--output", out_path, "write the JSON result to this file");
  };

  CLI::App* validate = app.add_subcommand("validate", "parse and validate a space document");
  validate->add_option("space", space_path)->required();
  add_common(validate);

  CLI::App* coh = app.add_subcommand("cohomology", "sheaf cohomology of an open subset");
  coh->add_option("space", space_path)->required();
  coh->add_option("--open", open_point, "restrict to the minimal open of this point");
  coh->add_option("--sheaf", sheaf_path, "sheaf document (default: structure sheaf)");
  coh->add_option("--degree", degree_arg, "a degree, or 'all'");
  coh->add_option("--mode", mode)->check(CLI::IsMember({"exact", "window"}));
  coh->add_option("--window", window_n, "window size for --mode window");
  add_common(coh);

  CLI::App* check = app.add_subcommand("check", "decide a structural predicate");
  check->add_option("predicate", predicate)
      ->required()
      ->check(CLI::IsMember({"schematic", "semi-separated", "affine", "finite"}));
  check->add_option("space", space_path)->required();
  check->add_flag("--paranoid", paranoid, "check all comparable pairs, not only Hasse edges");
  add_common(check);

  CLI::App* mcheck = app.add_subcommand("morphism-check", "decide a property of a morphism");
  mcheck->add_option("morphism", morphism_path)->required();
  mcheck->add_option("--property", property)
      ->required()
      ->check(CLI::IsMember({"schematic", "locally-acyclic", "affine", "weak-equivalence"}));
  mcheck->add_flag("--paranoid", paranoid);
  add_common(mcheck);

  CLI::App* stein = app.add_subcommand("stein", "Stein factorization of a schematic morphism");
  stein->add_option("morphism", morphism_path)->required();
  add_common(stein);

  CLI::App* product = app.add_subcommand("product", "fibered product of two morphisms over a base");
  product->add_option("left", left_path)->required();
  product->add_option("right", right_path)->required();
  product->add_option("--over", over_path, "base space document")->required();
  add_common(product);

  CLI::App* model = app.add_subcommand("model", "finite model attached to a covering by opens");
  model->add_option("space", space_path)->required();
  model->add_option("covering", covering_path)->required();
  add_common(model);

  CLI::App* spec = app.add_subcommand("spec-export", "chart/gluing descriptor of the glued spectrum");
  spec->add_option("space", space_path)->required();
  add_common(spec);

  CLI::App* core = app.add_subcommand("core", "homotopy core by beat-point removal");
  core->add_option("space", space_path)->required();
  add_common(core);

  CLI11_PARSE(app, argc, argv);
  Output out{out_path, format};

  if (validate->parsed()) {
    Space X = load_space(space_path);
    Json j;
    j["valid"] = true;
    j["points"] = X.poset.size();
    j["dimension"] = X.poset.dim();
    j["universe"] = X.universe.kind == UniverseKind::rational ? "rational" : "topological";
    j["finite_space"] = true;  // restrictions are canonical inclusions, hence flat
    std::ostringstream os;
    os << "valid space with " << X.poset.size() << " points, dimension " << X.poset.dim() << "\n"
       << "finite space: yes\n";
    out.emit(j, os.str());
    return 0;
  }

  if (coh->parsed()) {
    Space X = load_space(space_path);
    SheafDescriptor F =
        sheaf_path.empty() ? SheafDescriptor::structure(X) : load_sheaf(sheaf_path, X);
    OpenSet U = open_point.empty() ? OpenSet::whole(X.poset)
                                   : minimal_open(X.poset, open_point);
    int only_degree = degree_arg == "all" ? -1 : std::stoi(degree_arg);
    if (mode == "window") {
      WindowReport w = window_cohomology(X, U, F, window_n);
      out.emit(window_to_json(w), render_window(w));
      return 0;
    }
    CohomologyReport r = sheaf_cohomology(X, U, F);
    Json j = report_to_json(r);
    if (only_degree >= 0) {
      Json sliced = j;
      Json degs = Json::array();
      for (const Json& d : j.at("degrees"))
        if (d.at("degree").get<int>() == only_degree) degs.push_back(d);
      sliced["degrees"] = degs;
      j = sliced;
    }
    out.emit(j, render_report(r, X, only_degree));
    return 0;
  }

  if (check->parsed()) {
    Space X = load_space(space_path);
    if (predicate == "finite") {
      Json j;
      j["predicate"] = "finite";
      j["verdict"] = true;
      j["obligations"] = X.poset.hasse().size();
      j["counterexample"] = nullptr;
      out.emit(j, "finite space: true (restrictions are canonical inclusions, hence flat)\n");
      return 0;
    }
    PredicateVerdict v;
    if (predicate == "schematic") v = is_schematic(X, paranoid);
    else if (predicate == "semi-separated") v = is_semi_separated(X, paranoid);
    else v = is_affine(X);
    out.emit(verdict_to_json(predicate, v), render_verdict(predicate, v));
    return v.exit_code();
  }

  if (mcheck->parsed()) {
    Morphism f = load_morphism(morphism_path);
    PredicateVerdict v;
    if (property == "schematic") v = is_schematic_morphism(f, MorphismMode::schematic, paranoid);
    else if (property == "locally-acyclic")
      v = is_schematic_morphism(f, MorphismMode::locally_acyclic, paranoid);
    else if (property == "affine") v = is_affine_morphism(f, AffineMorphismMode::affine);
    else v = is_affine_morphism(f, AffineMorphismMode::weak_equivalence);
    out.emit(verdict_to_json(property, v), render_verdict(property, v));
    return v.exit_code();
  }

  if (stein->parsed()) {
    Morphism f = load_morphism(morphism_path);
    SteinFactorization s = stein_factorization(f);
    std::ostringstream os;
    os << "intermediate space stalks:\n";
    for (std::size_t y = 0; y < s.intermediate.poset.size(); ++y) {
      os << "  " << s.intermediate.poset.label(static_cast<int>(y)) << ": ";
      if (s.intermediate.rational())
        os << ring_name(s.intermediate.poles(static_cast<int>(y)),
                        s.intermediate.universe.places);
      else
        os << (s.intermediate.universe.z_base ? "Z" : s.intermediate.universe.base_field.name());
      os << "\n";
    }
    out.emit(stein_to_json(s), os.str());
    return 0;
  }

  if (product->parsed()) {
    Space S = load_space(over_path);
    auto load_leg = [&](const std::string& path) -> Morphism {
      Json doc = read_json_file(path);
      if (doc.contains("map")) return parse_morphism(doc, std::string());
      // a bare space over a punctual base: the canonical morphism
      Space X = parse_space(doc);
      if (S.poset.size() != 1)
        throw input_error("product: " + path +
                          " is a space document but the base is not punctual");
      return Morphism::to_point(X, S);
    };
    Morphism f = load_leg(left_path);
    Morphism g = load_leg(right_path);
    if (!space_equal(f.target, S) || !space_equal(g.target, S))
      throw input_error("product: morphism targets must equal the base space");
    FiberedProduct fp = fibered_product(f, g);
    Json j;
    j["space"] = space_to_json(fp.Z);
    j["proj_left"] = morphism_to_json(fp.proj_x);
    j["proj_right"] = morphism_to_json(fp.proj_y);
    j["schematic"] = verdict_to_json("schematic", fp.z_schematic);
    j["proj_left_schematic"] = verdict_to_json("schematic", fp.proj_x_schematic);
    j["proj_right_schematic"] = verdict_to_json("schematic", fp.proj_y_schematic);
    std::ostringstream os;
    os << "fibered product has " << fp.Z.poset.size() << " points\n"
       << render_verdict("schematic", fp.z_schematic);
    out.emit(j, os.str());
    return 0;
  }

  if (model->parsed()) {
    Space X = load_space(space_path);
    std::vector<OpenSet> cover = load_covering(covering_path, X.poset);
    CoveringModel m = covering_model(X, cover);
    Json j;
    j["space"] = space_to_json(m.model);
    Json proj;
    for (std::size_t s = 0; s < X.poset.size(); ++s)
      proj[X.poset.label(static_cast<int>(s))] =
          m.model.poset.label(m.projection.point_map[s]);
    j["projection"] = proj;
    std::ostringstream os;
    os << "model has " << m.model.poset.size() << " points\n";
    out.emit(j, os.str());
    return 0;
  }

  if (spec->parsed()) {
    Space X = load_space(space_path);
    SchemeDescriptor d = spec_export(X);
    out.emit(scheme_to_json(d, X), render_scheme(d, X));
    return 0;
  }

  if (core->parsed()) {
    Space X = load_space(space_path);
    FinitePoset c = core_reduction(X.poset);
    Json j;
    j["core"] = poset_to_json(c);
    Json profile;
    profile["points"] = c.size();
    std::vector<std::pair<int, int>> degs(c.size(), {0, 0});
    for (auto [p, q] : c.hasse()) {
      ++degs[p].second;
      ++degs[q].first;
    }
    std::sort(degs.begin(), degs.end());
    Json dj = Json::array();
    for (auto [down, up] : degs) dj.push_back(Json::array({down, up}));
    profile["degree_sequence"] = dj;
    j["profile"] = profile;
    std::ostringstream os;
    os << "core has " << c.size() << " points\n";
    out.emit(j, os.str());
    return 0;
  }

  return 3;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const unrepresentable_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
