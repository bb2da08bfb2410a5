// Command-line front end: validation, multiplicative-section solving,
// cohomology, crossed modules, Morita checks, weak fibre products and the
// example generators, all over one-file JSON workspaces.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "multsec/document.hpp"
#include "multsec/generators.hpp"
#include "multsec/linf.hpp"

using namespace multsec;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitMalformed = 2;

struct Options {
  std::string input;
  std::string name;
  std::string name2;
  std::string format = "json";
  uint64_t seed = 0;
  std::string check_level = "full";
};

CheckLevel level_of(const Options& o) {
  return o.check_level == "fast" ? CheckLevel::fast : CheckLevel::full;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open input file '" + path + "'");
  return json::parse(in);  // json::parse_error carries byte position
}

void emit(const json& j, const Options& o) {
  if (o.format == "text") {
    std::ostringstream out;
    std::function<void(const json&, int)> walk = [&](const json& v, int depth) {
      std::string pad(2 * static_cast<size_t>(depth), ' ');
      if (v.is_object()) {
        for (const auto& [k, val] : v.items()) {
          if (val.is_primitive())
            out << pad << k << ": " << val.dump() << "\n";
          else {
            out << pad << k << ":\n";
            walk(val, depth + 1);
          }
        }
      } else if (v.is_array()) {
        for (const auto& val : v) {
          if (val.is_primitive())
            out << pad << "- " << val.dump() << "\n";
          else {
            out << pad << "-\n";
            walk(val, depth + 1);
          }
        }
      } else {
        out << pad << v.dump() << "\n";
      }
    };
    walk(j, 0);
    std::cout << out.str();
  } else {
    std::cout << j.dump(2) << "\n";
  }
}

json core_section_to_json(const RepUTH& r, const CoreSection& c) {
  json out = json::object();
  for (int x = 0; x < r.g.n_objects(); ++x)
    out[r.g.objects[x]] = vector_to_json(c.at[x]);
  return out;
}

json mult_section_to_json(const RepUTH& r, const MultSection& m) {
  json out;
  json kappa = json::object(), e = json::object();
  for (int a = 0; a < r.g.n_arrows(); ++a)
    kappa[r.g.arrows[a].id] = vector_to_json(m.kappa[a]);
  for (int x = 0; x < r.g.n_objects(); ++x)
    e[r.g.objects[x]] = vector_to_json(m.e[x]);
  out["kappa"] = std::move(kappa);
  out["e"] = std::move(e);
  return out;
}

int cmd_validate(const Options& o) {
  Workspace w = workspace_from_json(load_json(o.input));
  Report r;
  if (o.name.empty()) {
    r = validate_workspace(w, level_of(o));
  } else if (w.groupoids.count(o.name)) {
    r = validate_groupoid(w.groupoid(o.name));
  } else if (w.reps.count(o.name)) {
    r = validate_rep(w.reps.at(o.name), level_of(o));
  } else if (w.las.count(o.name)) {
    r = validate_la(w.la(o.name));
  } else if (w.vb_morphisms.count(o.name)) {
    const auto& e = w.vb_morphisms.at(o.name);
    r = validate_vb_morphism(e.m, w.rep(e.source), w.rep(e.target));
  } else if (w.functors.count(o.name)) {
    const auto& e = w.functors.at(o.name);
    r = validate_functor(e.f, w.groupoid(e.source), w.groupoid(e.target));
  } else {
    throw std::invalid_argument("no object named '" + o.name + "'");
  }
  json out;
  out["valid"] = r.ok();
  out["violations"] = r.violations;
  emit(out, o);
  return r.ok() ? kExitOk : kExitInvalid;
}

// Loads a rep and refuses to compute on invalid input.
const RepUTH& checked_rep(const Workspace& w, const std::string& name,
                          const Options& o) {
  const RepUTH& r = w.rep(name);
  Report chk = validate_rep(r, level_of(o));
  if (!chk.ok())
    throw std::runtime_error("rep '" + name + "' is invalid:\n" + chk.summary());
  return r;
}

int cmd_sections(const Options& o) {
  Workspace w = workspace_from_json(load_json(o.input));
  const RepUTH& r = checked_rep(w, o.name, o);
  MultSectionSpace s = solve_mult_sections(r);
  json out;
  out["dim_Gamma_mult"] = s.dim();
  json basis = json::array();
  for (int j = 0; j < s.dim(); ++j)
    basis.push_back(mult_section_to_json(
        r, decode_section(r, s.layout, column_of(s.space.basis, j))));
  out["basis"] = std::move(basis);
  emit(out, o);
  return kExitOk;
}

int cmd_cohomology(const Options& o) {
  Workspace w = workspace_from_json(load_json(o.input));
  const RepUTH& r = checked_rep(w, o.name, o);
  SectionComplex k = build_complex(r);
  TwoTermCohomology h = cohomology(r, k);
  json out;
  out["dim_Gamma_mult"] = k.deg1_dim();
  out["dim_H0"] = h.dim_h0();
  out["dim_H1"] = h.dim_h1();
  json h0 = json::array();
  for (int j = 0; j < h.dim_h0(); ++j)
    h0.push_back(core_section_to_json(
        r, decode_core(r, k.core, column_of(h.h0.basis, j))));
  out["H0_basis"] = std::move(h0);
  json h1 = json::array();
  for (int j = 0; j < h.dim_h1(); ++j)
    h1.push_back(mult_section_to_json(
        r, decode_section(r, k.deg1.layout,
                          mat_vec(k.deg1.space.basis,
                                  column_of(h.h1.representatives, j)))));
  out["H1_reps"] = std::move(h1);
  emit(out, o);
  return kExitOk;
}

int cmd_xmod(const Options& o) {
  Workspace w = workspace_from_json(load_json(o.input));
  const LAGroupoid& l = w.la(o.name);
  Report chk = validate_la(l);
  if (!chk.ok())
    throw std::runtime_error("la '" + o.name + "' is invalid:\n" + chk.summary());
  SectionComplex k = build_complex(l.rep);
  XMod x = crossed_module(l, k);
  HLieAlgebras h = h_lie_algebras(x);
  json out;
  out["dim_g"] = x.g.dim;
  out["dim_h"] = x.h.dim;
  out["g"] = lie_to_json(x.g);
  out["h"] = lie_to_json(x.h);
  out["partial"] = matrix_to_json(x.partial);
  json phi = json::array();
  for (const auto& m : x.phi) phi.push_back(matrix_to_json(m));
  out["phi"] = std::move(phi);
  out["dim_H0"] = h.coh.dim_h0();
  out["dim_H1"] = h.coh.dim_h1();
  out["H1_bracket"] = lie_to_json(h.h1);
  emit(out, o);
  return kExitOk;
}

int cmd_morita(const Options& o) {
  Workspace w = workspace_from_json(load_json(o.input));
  const auto& e = w.vb_morphisms.at(o.name);
  const RepUTH& src = checked_rep(w, e.source, o);
  const RepUTH& tgt = checked_rep(w, e.target, o);
  MoritaHIso h = morita_h_iso(e.m, src, tgt);
  json out;
  out["vb_morita"] = h.morita;
  if (h.morita) {
    out["H0_iso"] = matrix_to_json(h.h.h0);
    out["H1_iso"] = matrix_to_json(h.h.h1);
  } else {
    out["violations"] = h.report.violations;
  }
  emit(out, o);
  return kExitOk;
}

int cmd_zigzag(const Options& o, const std::string& chain) {
  Workspace w = workspace_from_json(load_json(o.input));
  std::vector<std::pair<std::string, bool>> entries;  // name, forward
  std::stringstream ss(chain);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    bool forward = true;
    if (!tok.empty() && tok[0] == '~') {
      forward = false;
      tok = tok.substr(1);
    }
    if (tok.empty()) throw std::invalid_argument("empty zigzag entry");
    entries.emplace_back(tok, forward);
  }
  if (entries.empty()) throw std::invalid_argument("empty zigzag");
  // Each entry contributes its cohomology isomorphism; backward entries are
  // inverted at the level of cohomology matrices.
  RatMatrix h0, h1;
  bool first = true;
  std::string at;  // current rep name
  json steps = json::array();
  for (const auto& [name, forward] : entries) {
    const auto& e = w.vb_morphisms.at(name);
    const RepUTH& src = checked_rep(w, e.source, o);
    const RepUTH& tgt = checked_rep(w, e.target, o);
    std::string from = forward ? e.source : e.target;
    std::string to = forward ? e.target : e.source;
    if (!first && from != at)
      throw std::invalid_argument("zigzag does not chain at '" + name + "'");
    MoritaHIso h = morita_h_iso(e.m, src, tgt);
    if (!h.morita)
      throw std::runtime_error("zigzag entry '" + name +
                               "' is not a VB-Morita map:\n" +
                               h.report.summary());
    RatMatrix s0 = forward ? h.h.h0 : inverse(h.h.h0);
    RatMatrix s1 = forward ? h.h.h1 : inverse(h.h.h1);
    if (first) {
      h0 = s0;
      h1 = s1;
      first = false;
    } else {
      h0 = s0 * h0;
      h1 = s1 * h1;
    }
    at = to;
    steps.push_back({{"name", name}, {"forward", forward}});
  }
  json out;
  out["entries"] = std::move(steps);
  out["H0_iso"] = matrix_to_json(h0);
  out["H1_iso"] = matrix_to_json(h1);
  emit(out, o);
  return kExitOk;
}

int cmd_wfp(const Options& o) {
  Workspace w = workspace_from_json(load_json(o.input));
  const auto& left = w.vb_morphisms.at(o.name);
  const auto& right = w.vb_morphisms.at(o.name2);
  if (left.target != right.target)
    throw std::invalid_argument("the two morphisms must share a target");
  const RepUTH& rv = checked_rep(w, left.source, o);
  const RepUTH& rv2 = checked_rep(w, right.source, o);
  const RepUTH& rw = checked_rep(w, left.target, o);
  VBWeakFibreProduct p = vb_weak_fibre_product(left.m, rv, right.m, rv2, rw);
  Workspace out;
  out.groupoids.emplace("P", p.rep.g);
  out.groupoids.emplace("GL", rv.g);
  out.groupoids.emplace("GR", rv2.g);
  out.reps.emplace("Product", p.rep);
  out.rep_base["Product"] = "P";
  out.reps.emplace("Left", rv);
  out.rep_base["Left"] = "GL";
  out.reps.emplace("Right", rv2);
  out.rep_base["Right"] = "GR";
  out.functors["ToLeftBase"] = {p.to_left.base, "P", "GL"};
  out.functors["ToRightBase"] = {p.to_right.base, "P", "GR"};
  out.vb_morphisms["ToLeft"] = {p.to_left, "Product", "Left", "ToLeftBase"};
  out.vb_morphisms["ToRight"] = {p.to_right, "Product", "Right", "ToRightBase"};
  emit(workspace_to_json(out), o);
  return kExitOk;
}

RatMatrix parse_matrix_flag(const std::string& text, const char* what) {
  if (text.empty()) throw std::invalid_argument(std::string(what) + " required");
  return RatMatrix::parse(text);
}

int parse_group_flag(const std::string& text) {
  if (text.size() < 2 || (text[0] != 'z' && text[0] != 'Z'))
    throw std::invalid_argument("--group looks like z2, z3, ...");
  return std::stoi(text.substr(1));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "multsec: exact calculator for split VB-groupoids over finite "
      "groupoids, their multiplicative sections, cohomology, crossed "
      "modules and Morita machinery"};
  app.require_subcommand(1);

  Options o;
  std::string chain, gen_name, base = "group", group = "z2", lie = "sl2";
  std::string matrix, matrix_c, matrix_e, perm, cover;
  int n = 2, rank = 1;

  auto add_common = [&](CLI::App* cmd, bool needs_input) {
    auto* in = cmd->add_option("--input", o.input, "workspace document path");
    if (needs_input) in->required();
    cmd->add_option("--format", o.format, "json|text")
        ->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--seed", o.seed, "seed for randomized data");
    cmd->add_option("--check-level", o.check_level, "fast|full")
        ->check(CLI::IsMember({"fast", "full"}));
  };

  auto* validate = app.add_subcommand("validate", "run validators");
  add_common(validate, true);
  validate->add_option("--name", o.name, "validate one object only");

  auto* sections = app.add_subcommand("sections", "solve multiplicative sections");
  add_common(sections, true);
  sections->add_option("--name", o.name, "rep name")->required();

  auto* cohomology = app.add_subcommand("cohomology", "H0/H1 of the section complex");
  add_common(cohomology, true);
  cohomology->add_option("--name", o.name, "rep name")->required();

  auto* xmod = app.add_subcommand("xmod", "crossed module of an LA structure");
  add_common(xmod, true);
  xmod->add_option("--name", o.name, "LA name")->required();

  auto* morita = app.add_subcommand("morita", "VB-Morita check and cohomology isomorphisms");
  add_common(morita, true);
  morita->add_option("--name", o.name, "morphism name")->required();

  auto* zigzag = app.add_subcommand("zigzag", "compose cohomology isomorphisms along a chain");
  add_common(zigzag, true);
  zigzag->add_option("--chain", chain, "comma list of morphisms, ~ prefixes backward entries")
      ->required();

  auto* wfp = app.add_subcommand("wfp", "weak fibre product of two morphisms");
  add_common(wfp, true);
  wfp->add_option("--name", o.name, "first morphism")->required();
  wfp->add_option("--name2", o.name2, "second morphism")->required();

  auto* gen = app.add_subcommand("gen", "emit an example workspace");
  add_common(gen, false);
  gen->add_option("generator", gen_name, "generator name")->required()
      ->check(CLI::IsMember({"group_as_groupoid", "pair", "action", "cech",
                             "rep-of-group", "type1", "type0",
                             "two-vector-space", "direct-sum",
                             "la-from-group-action-on-lie-algebra-bundle"}));
  gen->add_option("--n", n, "size parameter");
  gen->add_option("--rank", rank, "fibre rank");
  gen->add_option("--base", base, "pair|group");
  gen->add_option("--group", group, "cyclic group, e.g. z2");
  gen->add_option("--lie", lie, "sl2|heis3|abelianN");
  gen->add_option("--matrix", matrix, "matrix literal, rows ;-separated");
  gen->add_option("--matrixC", matrix_c, "matrix literal for the core action");
  gen->add_option("--matrixE", matrix_e, "matrix literal for the side action");
  gen->add_option("--perm", perm, "comma list: generator images of the points");
  gen->add_option("--cover", cover, "comma list of fibre labels");
  gen->add_option("--name", o.name, "first summand (direct-sum)");
  gen->add_option("--name2", o.name2, "second summand (direct-sum)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) return cmd_validate(o);
    if (*sections) return cmd_sections(o);
    if (*cohomology) return cmd_cohomology(o);
    if (*xmod) return cmd_xmod(o);
    if (*morita) return cmd_morita(o);
    if (*zigzag) return cmd_zigzag(o, chain);
    if (*wfp) return cmd_wfp(o);
    if (*gen) {
      Workspace w;
      if (gen_name == "group_as_groupoid") {
        w = gen_group_as_groupoid(parse_group_flag(group));
      } else if (gen_name == "pair") {
        w = gen_pair(n);
      } else if (gen_name == "action") {
        std::vector<int> p;
        std::stringstream ss(perm);
        std::string tok;
        while (std::getline(ss, tok, ',')) p.push_back(std::stoi(tok));
        w = gen_action(parse_group_flag(group), p);
      } else if (gen_name == "cech") {
        std::vector<std::string> labels;
        std::stringstream ss(cover);
        std::string tok;
        while (std::getline(ss, tok, ',')) labels.push_back(tok);
        w = gen_cech(labels);
      } else if (gen_name == "rep-of-group") {
        w = gen_rep_of_group(parse_group_flag(group),
                             parse_matrix_flag(matrix, "--matrix"));
      } else if (gen_name == "type1") {
        w = gen_type1(base, n, rank);
      } else if (gen_name == "type0") {
        w = gen_type0(parse_group_flag(group),
                      parse_matrix_flag(matrix_c, "--matrixC"),
                      parse_matrix_flag(matrix_e, "--matrixE"), o.seed);
      } else if (gen_name == "two-vector-space") {
        w = gen_two_vector_space(parse_matrix_flag(matrix, "--matrix"));
      } else if (gen_name == "direct-sum") {
        Workspace in;
        std::string a = o.name, b = o.name2;
        if (o.input.empty()) {
          // built-in example pair: swap rep of Z/2 plus a rank-1 type-1 rep
          in = gen_rep_of_group(2, RatMatrix::parse("0 1; 1 0"));
          Workspace t1 = gen_type1("group", 2, 1);
          in.reps.emplace("T", t1.reps.at("R"));
          in.rep_base["T"] = "G";
          if (a.empty()) a = "R";
          if (b.empty()) b = "T";
        } else {
          in = workspace_from_json(load_json(o.input));
        }
        w = gen_direct_sum(in, a, b);
      } else {
        RatMatrix m = matrix.empty() ? sl2_involution()
                                     : RatMatrix::parse(matrix);
        w = gen_la_action(parse_group_flag(group), lie, m);
      }
      Report chk = validate_workspace(w, level_of(o));
      if (!chk.ok()) {
        std::cerr << "generated workspace fails validation:\n" << chk.summary();
        return kExitInvalid;
      }
      emit(workspace_to_json(w), o);
      return kExitOk;
    }
  } catch (const json::parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitMalformed;
}
