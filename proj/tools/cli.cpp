#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "scltopo/fixtures.hpp"
#include "scltopo/normalize.hpp"
#include "scltopo/veriharness.hpp"

namespace scltopo {

namespace {

using nlohmann::json;

struct Output {
  std::string text;
  json data = json::object();
  int status = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Parse, "cannot write " + path);
  out << text;
}

TwoComplex load_complex(const std::string& path) { return build_complex(parse_2cx(read_file(path))); }

std::string yes_no(bool b) { return b ? "yes" : "no"; }

json rationals(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

json homology_json(const HomologySummary& h) {
  json a = json::array();
  for (const auto& d : h.degrees) {
    json t = json::array();
    for (const auto& x : d.torsion) t.push_back(to_string(x));
    a.push_back({{"rank", d.rank}, {"torsion", t}});
  }
  return a;
}

/// Loop term `[k*]e1+ e2- ...`.
LoopTerm parse_loop(const TwoComplex& target, const std::string& text) {
  int coefficient = 1;
  std::string word = text;
  if (auto star = text.find('*'); star != std::string::npos) {
    try {
      coefficient = std::stoi(text.substr(0, star));
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, "bad loop coefficient in '" + text + "'");
    }
    word = text.substr(star + 1);
  }
  std::istringstream in(word);
  std::string tok;
  LoopTerm term;
  term.coefficient = coefficient;
  while (in >> tok) {
    if (tok.size() < 2 || (tok.back() != '+' && tok.back() != '-'))
      throw Error(ErrorKind::Parse, "signed edge needs a +/- suffix: " + tok);
    auto e = target.find_edge(tok.substr(0, tok.size() - 1));
    if (!e) throw Error(ErrorKind::UnknownCell, "no edge '" + tok.substr(0, tok.size() - 1) + "'");
    term.word.push_back({*e, tok.back() == '-' ? -1 : 1});
  }
  if (term.word.empty() || !target.is_closed_path(term.word))
    throw Error(ErrorKind::InvalidChain, "loop '" + text + "' is not a closed edge path");
  return term;
}

std::string basis_letters(const std::string& csv) {
  std::string out;
  std::istringstream in(csv);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (tok.size() != 1 || tok[0] < 'a' || tok[0] > 'z') throw Error(ErrorKind::Parse, "basis letters are single lowercase letters");
    out += tok;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Commands

Output cmd_check(const std::string& path, Ring ring) {
  const TwoComplex x = load_complex(path);
  Output o;
  const auto sr = surface_check(x);
  const auto sl = has_small_links(x);
  const bool orientable = is_orientable(x, ring).has_value();
  std::ostringstream t;
  t << "vertices " << x.vertex_count() << "\nedges " << x.edge_count() << "\nfaces " << x.face_count() << "\neuler "
    << euler_characteristic(x) << "\nsurface " << yes_no(sr.is_surface) << '\n';
  json witnesses = json::array();
  for (const auto& w : sr.witnesses) {
    t << "  vertex " << x.vertex_name(w.vertex) << ": " << w.reason << '\n';
    witnesses.push_back({{"vertex", x.vertex_name(w.vertex)}, {"reason", w.reason}});
  }
  t << "small links " << yes_no(sl.small);
  if (sl.witness_edge) t << " (edge " << x.edge(*sl.witness_edge).name << ")";
  t << "\norientable over " << to_string(ring) << ' ' << yes_no(orientable) << '\n';
  o.text = t.str();
  o.data = {{"vertices", x.vertex_count()}, {"edges", x.edge_count()},   {"faces", x.face_count()},
            {"euler", euler_characteristic(x)}, {"surface", sr.is_surface}, {"surface_witnesses", witnesses},
            {"small_links", sl.small},        {"orientable", orientable}, {"ring", to_string(ring)}};
  o.status = sr.is_surface && sl.small && orientable ? 0 : 1;
  return o;
}

Output cmd_homology(const std::string& path, const std::string& rel, const std::vector<std::string>& cone, Ring ring) {
  const TwoComplex x = load_complex(path);
  Output o;
  if (!rel.empty() && !cone.empty()) throw Error(ErrorKind::Parse, "--rel and --cone are exclusive");
  if (!cone.empty()) {
    std::vector<LoopTerm> loops;
    for (const auto& c : cone) loops.push_back(parse_loop(x, c));
    const auto rep = cone_homology(x, loops);
    std::ostringstream t;
    t << rep.summary.to_text();
    json images = json::array();
    for (std::size_t k = 0; k < rep.boundary_images.size(); ++k) {
      t << "basis " << k << " boundary degrees";
      for (const auto& d : rep.boundary_images[k]) t << ' ' << to_string(d);
      t << '\n';
      images.push_back(rationals(rep.boundary_images[k]));
    }
    t << "boundary injective " << yes_no(rep.boundary_injective) << '\n';
    o.text = t.str();
    o.data = {{"kind", "cone"}, {"homology", homology_json(rep.summary)}, {"boundary_images", images},
              {"boundary_injective", rep.boundary_injective}};
    return o;
  }
  if (!rel.empty()) {
    const Subcomplex y = parse_cells(x, read_file(rel));
    const auto h = relative_homology(x, y, ring);
    o.text = h.to_text();
    o.data = {{"kind", "relative"}, {"ring", to_string(ring)}, {"homology", homology_json(h)}};
    return o;
  }
  const auto h = homology(x, ring);
  o.text = h.to_text();
  o.data = {{"kind", "absolute"}, {"ring", to_string(ring)}, {"homology", homology_json(h)}};
  return o;
}

json surface_summary(const AdmissibleSurface& s, std::ostringstream& t) {
  const auto deg = degree(s);
  const auto r = ratio(s);
  const auto pf = pushforward_class(s);
  t << "pieces " << s.vpiece_count() << ' ' << s.hpiece_count() << ' ' << s.fpiece_count() << "\neuler "
    << s.euler_characteristic() << "\nreduced euler " << reduced_euler(s) << "\ncircuits " << s.circuits().size()
    << "\ndegree";
  for (int d : deg.per_circle) t << ' ' << d;
  t << "\nratio " << (r ? to_string(*r) : "undefined") << "\nclass";
  for (const auto& c : pf.coordinates) t << ' ' << to_string(c);
  t << '\n';
  return {{"vpieces", s.vpiece_count()},
          {"hpieces", s.hpiece_count()},
          {"fpieces", s.fpiece_count()},
          {"euler", s.euler_characteristic()},
          {"reduced_euler", reduced_euler(s)},
          {"circuits", s.circuits().size()},
          {"degrees", deg.per_circle},
          {"ratio", r ? json(to_string(*r)) : json(nullptr)},
          {"class", rationals(pf.coordinates)}};
}

json form_json(const StandardFormReport& r) {
  return {{"disc_sphere_free", r.disc_sphere_free}, {"monotone", r.monotone},
          {"connected_links", r.connected_links},   {"non_folded", r.non_folded},
          {"orientation_perfect", r.orientation_perfect}, {"standard", r.standard()}};
}

Output cmd_adm(const std::string& action, const std::string& path, const std::string& eps, const std::string& output) {
  const AdmissibleSurface s = build_admissible(parse_adm(read_file(path)));
  Output o;
  std::ostringstream t;
  if (action == "validate") {
    t << "valid\n";
    o.data = surface_summary(s, t);
    o.data["valid"] = true;
  } else if (action == "report") {
    o.data = surface_summary(s, t);
    const auto r = standard_form_report(s);
    t << r.to_text();
    o.data["form"] = form_json(r);
  } else if (action == "normalize" || action == "promote") {
    AdmissibleSurface result = s;
    MoveLog log;
    if (action == "normalize") {
      auto nf = make_standard_form(s);
      result = nf.surface;
      log = nf.log;
    } else {
      if (eps.empty()) throw Error(ErrorKind::Parse, "promote needs --eps p/q");
      auto p = promote_orientation_perfect(s, parse_rational(eps));
      result = p.surface;
      log = p.log;
      t << "cover degree " << p.cover_degree << "\ngluings " << p.gluings << '\n';
      o.data["cover_degree"] = p.cover_degree;
      o.data["gluings"] = p.gluings;
    }
    t << log.to_text();
    json moves = json::array();
    for (const auto& e : log.entries) moves.push_back(e.to_text());
    o.data["moves"] = moves;
    o.data["result"] = surface_summary(result, t);
    const auto r = standard_form_report(result);
    t << r.to_text();
    o.data["form"] = form_json(r);
    const std::string adm = print_adm(result.data());
    if (output.empty()) {
      t << "---\n" << adm;
      o.data["adm"] = adm;
    } else {
      write_file(output, adm);
    }
  } else {
    throw Error(ErrorKind::Parse, "unknown adm action '" + action + "'");
  }
  o.text = t.str();
  return o;
}

json lp_json(const RationalLp& lp) {
  json rows = json::array();
  for (const auto& row : lp.rows) {
    json r = json::array();
    for (std::size_t j = 0; j < row.size(); ++j)
      if (row[j] != 0) r.push_back({j, to_string(row[j])});
    rows.push_back(r);
  }
  return {{"variables", lp.variables}, {"objective", rationals(lp.objective)}, {"rows", rows},
          {"rhs", rationals(lp.rhs)},   {"row_names", lp.row_names}};
}

std::vector<Rational> parse_rationals(const json& a) {
  std::vector<Rational> out;
  for (const auto& x : a) out.push_back(parse_rational(x.get<std::string>()));
  return out;
}

RationalLp lp_from_json(const json& j) {
  RationalLp lp;
  lp.variables = j.at("variables").get<std::vector<std::string>>();
  lp.objective = parse_rationals(j.at("objective"));
  lp.rhs = parse_rationals(j.at("rhs"));
  lp.row_names = j.at("row_names").get<std::vector<std::string>>();
  for (const auto& r : j.at("rows")) {
    std::vector<Rational> row(lp.variables.size());
    for (const auto& entry : r) row.at(entry.at(0).get<std::size_t>()) = parse_rational(entry.at(1).get<std::string>());
    lp.rows.push_back(std::move(row));
  }
  if (lp.objective.size() != lp.variables.size() || lp.rhs.size() != lp.rows.size())
    throw Error(ErrorKind::Parse, "certificate LP has inconsistent sizes");
  return lp;
}

Output cmd_scl(const std::string& chain_text, const std::string& basis, const std::string& compare, int sandwich,
               const std::string& certificate) {
  Output o;
  std::ostringstream t;
  if (sandwich > 0) {
    const TwoComplex x = fixtures::sg1b(sandwich);
    const auto rot = RotStructure::balanced(x);
    const AdmissibleSurface w = build_admissible(fixtures::sg1b_itself(sandwich));
    const auto s = bavard_sandwich(rot, w.data().chain, &w);
    t << "rot " << to_string(s.rot) << "\nlower " << to_string(s.lower) << "\nupper " << to_string(*s.upper)
      << "\nexact " << yes_no(s.exact()) << '\n';
    o.data = {{"genus", sandwich}, {"rot", to_string(s.rot)}, {"lower", to_string(s.lower)},
              {"upper", to_string(*s.upper)}, {"exact", s.exact()}};
    o.status = s.exact() ? 0 : 1;
    o.text = t.str();
    return o;
  }
  if (chain_text.empty()) throw Error(ErrorKind::Parse, "scl needs a chain or --sandwich");
  const OneChain chain = parse_chain(chain_text, basis_letters(basis));
  if (!compare.empty()) {
    const auto r = scl_compare_under_inclusion(chain, basis_letters(compare));
    auto v = [](bool inf, const Rational& x) { return inf ? std::string("inf") : to_string(x); };
    t << "sub " << v(r.sub_infinite, r.sub_value) << "\nambient " << v(r.ambient_infinite, r.ambient_value)
      << "\ngap " << to_string(r.gap) << "\nmonotone " << yes_no(r.monotone) << "\nequal " << yes_no(r.equal) << '\n';
    o.data = {{"sub", v(r.sub_infinite, r.sub_value)}, {"ambient", v(r.ambient_infinite, r.ambient_value)},
              {"gap", to_string(r.gap)}, {"monotone", r.monotone}, {"equal", r.equal}};
    o.status = r.monotone && r.equal ? 0 : 1;
    o.text = t.str();
    return o;
  }
  const SclResult r = scl_lp(chain);
  const std::string value = r.infinite ? "inf" : to_string(r.value);
  o.text = value + '\n';
  o.data = {{"chain", print_chain(chain)}, {"basis", chain.basis}, {"value", value},
            {"rectangles", r.rectangles}, {"pieces", r.pieces}};
  if (!certificate.empty()) {
    if (r.infinite) throw Error(ErrorKind::Precondition, "no certificate for a chain that is not a boundary");
    json c = {{"chain", print_chain(chain)},
              {"basis", chain.basis},
              {"value", value},
              {"lp", lp_json(r.lp)},
              {"primal", rationals(r.certificate.primal)},
              {"dual", rationals(r.certificate.dual)},
              {"optimum", to_string(r.certificate.optimum)}};
    write_file(certificate, c.dump(1) + '\n');
  }
  return o;
}

Output cmd_verify(const std::string& path) {
  json c;
  try {
    c = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("certificate is not JSON: ") + e.what());
  }
  Output o;
  try {
    const RationalLp lp = lp_from_json(c.at("lp"));
    LpCertificate cert;
    cert.status = LpStatus::Optimal;
    cert.primal = parse_rationals(c.at("primal"));
    cert.dual = parse_rationals(c.at("dual"));
    cert.optimum = parse_rational(c.at("optimum").get<std::string>());
    const auto rep = replay(lp, cert);
    // The program must be the one the chain determines.
    const OneChain chain = parse_chain(c.at("chain").get<std::string>(), c.at("basis").get<std::string>());
    const bool same_program = lp_json(scl_lp(chain).lp) == c.at("lp");
    const bool value_ok = parse_rational(c.at("value").get<std::string>()) == cert.optimum;
    std::ostringstream t;
    t << "primal feasible " << yes_no(rep.primal_feasible) << "\ndual feasible " << yes_no(rep.dual_feasible)
      << "\nobjective matches " << yes_no(rep.objective_matches) << "\nstrong duality " << yes_no(rep.strong_duality)
      << "\nprogram matches chain " << yes_no(same_program) << "\nvalue " << to_string(cert.optimum) << '\n';
    o.text = t.str();
    o.data = {{"primal_feasible", rep.primal_feasible}, {"dual_feasible", rep.dual_feasible},
              {"objective_matches", rep.objective_matches}, {"strong_duality", rep.strong_duality},
              {"program_matches_chain", same_program}, {"value", to_string(cert.optimum)}};
    o.status = rep.ok() && same_program && value_ok ? 0 : 1;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("malformed certificate: ") + e.what());
  }
  return o;
}

json containment_json(const ContainmentReport& r) {
  json faces = json::array();
  for (const auto& [f, in] : r.face_verdicts) faces.push_back({f, in});
  return {{"mode", to_string(r.mode)},
          {"hypothesis", r.hypothesis},
          {"relative_h2", r.relative_h2},
          {"class_outside", r.class_outside},
          {"small_links", r.small_links},
          {"orientable", r.orientable},
          {"claim_boundary", r.claim_boundary},
          {"claim_no_isolated", r.claim_no_isolated},
          {"face_verdicts", faces},
          {"proof_contained", r.proof_contained},
          {"direct_contained", r.direct_contained},
          {"agree", r.agree()},
          {"verdict", r.verdict()}};
}

Output cmd_verify_main(const std::string& surface, const std::string& sub, const std::string& mode, Ring ring) {
  const AdmissibleSurface s = build_admissible(parse_adm(read_file(surface)));
  const Subcomplex t = parse_cells(s.target(), read_file(sub));
  const auto r = verify_theorem_main(s, t, ring, parse_mode(mode));
  Output o;
  o.text = r.to_text(s.target());
  o.data = containment_json(r);
  if (!r.agree()) throw Error(ErrorKind::Internal, "proof path and direct inspection disagree");
  o.status = r.verdict() == "contained" ? 0 : 1;
  return o;
}

Output cmd_harness(const std::string& which, int genus, const std::vector<std::string>& chains) {
  Output o;
  if (which == "A") {
    const TwoComplex s = fixtures::nested_pair(genus);
    const Subcomplex t = fixtures::nested_inner(s);
    std::vector<OneChain> corpus;
    if (chains.empty()) {
      corpus = theorem_a_corpus(genus);
      const auto extra = theorem_a_non_boundaries(genus);
      corpus.insert(corpus.end(), extra.begin(), extra.end());
    } else {
      std::string letters;
      for (int i = 0; i < 2 * genus; ++i) letters += static_cast<char>('a' + i);
      for (const auto& c : chains) corpus.push_back(parse_chain(c, letters));
    }
    const auto r = theorem_a_harness(s, t, corpus);
    o.text = r.to_text();
    json rows = json::array();
    for (const auto& row : r.rows)
      rows.push_back({{"chain", print_chain(row.chain)},
                      {"image", print_chain(row.image)},
                      {"sub", row.sub.infinite ? "inf" : to_string(row.sub.value)},
                      {"ambient", row.ambient.infinite ? "inf" : to_string(row.ambient.value)},
                      {"consistent", row.consistent()}});
    o.data = {{"harness", "A"}, {"genus", genus}, {"injective", r.injectivity.injective()}, {"rows", rows},
              {"ok", r.ok()}};
    o.status = r.ok() ? 0 : 1;
  } else if (which == "B") {
    const TwoComplex s = fixtures::closed_s3();
    const Subcomplex t = fixtures::closed_s3_t(s);
    const auto b = theorem_b_harness(s, t, {{"t_itself", fixtures::t_itself()}});
    const auto e = non_isometry_example();
    o.text = b.to_text() + "--\n" + e.to_text();
    json ws = json::array();
    for (const auto& w : b.witnesses)
      ws.push_back({{"name", w.name}, {"sub_bound", to_string(w.sub_bound)}, {"ambient_bound", to_string(w.ambient_bound)},
                    {"sub_class", rationals(w.sub_coordinates)}, {"ambient_class", rationals(w.ambient_coordinates)},
                    {"class_matches", w.coordinates_match}});
    o.data = {{"harness", "B"},
              {"sub_rank", b.sub_rank},
              {"ambient_rank", b.ambient_rank},
              {"image_rank", b.image_rank},
              {"witnesses", ws},
              {"scope", b.scope},
              {"example",
               {{"h1_injective", e.injectivity.injective()},
                {"relative_h2", e.injectivity.relative_h2},
                {"t_class", rationals(e.t_coordinates)},
                {"sigma_class", rationals(e.sigma_coordinates)},
                {"fundamental_image", rationals(e.fundamental_image)},
                {"differ_by_fundamental", e.classes_differ_by_fundamental}}},
              {"ok", b.ok() && e.ok()}};
    o.status = b.ok() && e.ok() ? 0 : 1;
  } else {
    throw Error(ErrorKind::Parse, "harness is A or B");
  }
  return o;
}

Output cmd_fixtures(const std::string& action, const std::string& name) {
  Output o;
  std::ostringstream t;
  if (action == "list") {
    json cx = json::array(), sf = json::array(), sb = json::array();
    for (const auto& c : fixtures::complex_registry()) {
      t << "complex " << c.name << '\n';
      cx.push_back(c.name);
    }
    for (const auto& c : fixtures::subcomplex_registry()) {
      t << "cells " << c.name << " in " << c.complex << '\n';
      sb.push_back(c.name);
    }
    for (const auto& s : fixtures::surface_registry()) {
      t << "surface " << s.name << '\n';
      sf.push_back(s.name);
    }
    o.data = {{"complexes", cx}, {"cells", sb}, {"surfaces", sf}};
  } else if (action == "dump") {
    for (const auto& c : fixtures::complex_registry())
      if (c.name == name) t << print_2cx(c.make());
    for (const auto& c : fixtures::subcomplex_registry())
      if (c.name == name)
        for (const auto& p : fixtures::complex_registry())
          if (p.name == c.complex) {
            const TwoComplex x = p.make();
            t << print_cells(x, c.make(x));
          }
    for (const auto& s : fixtures::surface_registry())
      if (s.name == name) t << print_adm(s.make());
    if (t.str().empty()) throw Error(ErrorKind::UnknownCell, "no fixture named '" + name + "'");
    o.data = {{"name", name}, {"text", t.str()}};
  } else {
    throw Error(ErrorKind::Parse, "fixtures action is list or dump");
  }
  o.text = t.str();
  return o;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact verification toolkit for scl and admissible surfaces in 2-complexes", "scltopo"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string ring_text = "q", out_format = "text";
  app.add_option("--ring", ring_text, "coefficient ring: z or q")->check(CLI::IsMember({"z", "q"}));
  app.add_option("--out", out_format, "output format: text or json")->check(CLI::IsMember({"text", "json"}));

  std::string file, rel, action, eps, output, chain, basis, compare, certificate, surface, sub, mode = "standard",
                                                                                                 which, name;
  std::vector<std::string> cone, chains;
  int sandwich = 0, genus = 1;

  auto* check = app.add_subcommand("check", "surface, small-links and orientability checks of a .2cx complex");
  check->add_option("complex", file)->required();
  auto* hom = app.add_subcommand("homology", "absolute, relative (--rel complex cells) or cone (--cone loop) homology");
  hom->add_option("complex", file)->required();
  bool relative = false;
  hom->add_option("cells", rel, "subcomplex .cells file (with --rel)");
  hom->add_flag("--rel", relative, "relative homology of (complex, cells)");
  hom->add_option("--cone", cone, "loop term [k*]e1+ e2- ...");
  auto* adm = app.add_subcommand("adm", "admissible surfaces: validate, report, normalize, promote");
  adm->add_option("action", action)->required()->check(CLI::IsMember({"validate", "report", "normalize", "promote"}));
  adm->add_option("surface", file)->required();
  adm->add_option("--eps", eps, "promotion accuracy p/q");
  adm->add_option("--output,-o", output, "write the resulting .adm here");
  auto* scl = app.add_subcommand("scl", "scl of a chain, a compare under inclusion, or the Bavard sandwich");
  scl->add_option("chain", chain);
  scl->add_option("--basis", basis, "comma-separated generator letters");
  scl->add_option("--compare", compare, "ambient basis letters, comma-separated");
  scl->add_option("--sandwich", sandwich, "genus g: certify scl of the boundary of Sg1b(g)");
  scl->add_option("--certificate", certificate, "write the LP certificate as JSON");
  auto* verify = app.add_subcommand("verify", "replay an scl certificate exactly");
  verify->add_option("certificate", file)->required();
  auto* vmain = app.add_subcommand("verify-main", "containment verifier for a standard-form surface");
  vmain->add_option("--surface", surface)->required();
  vmain->add_option("--sub", sub, "subcomplex .cells file over the surface's target")->required();
  vmain->add_option("--mode", mode)->check(CLI::IsMember({"standard", "perfect"}));
  auto* harness = app.add_subcommand("harness", "isometric-embedding harnesses A and B");
  harness->add_option("which", which)->required()->check(CLI::IsMember({"A", "B"}));
  harness->add_option("--genus", genus, "harness A: inner genus 1 or 2")->check(CLI::Range(1, 2));
  harness->add_option("--chain", chains, "harness A: chain over the inner letters");
  auto* fix = app.add_subcommand("fixtures", "list or dump built-in fixtures");
  fix->add_option("action", action)->required()->check(CLI::IsMember({"list", "dump"}));
  fix->add_option("name", name);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    const Ring ring = parse_ring(ring_text);
    Output o;
    if (*check) o = cmd_check(file, ring);
    else if (*hom) {
      if (relative != !rel.empty()) throw Error(ErrorKind::Parse, "--rel takes the complex and a .cells file");
      o = cmd_homology(file, rel, cone, ring);
    }
    else if (*adm) o = cmd_adm(action, file, eps, output);
    else if (*scl) o = cmd_scl(chain, basis, compare, sandwich, certificate);
    else if (*verify) o = cmd_verify(file);
    else if (*vmain) o = cmd_verify_main(surface, sub, mode, ring);
    else if (*harness) o = cmd_harness(which, genus, chains);
    else if (*fix) o = cmd_fixtures(action, name);
    if (out_format == "json") {
      o.data["exit_status"] = o.status;
      out << o.data.dump(2) << '\n';
    } else {
      out << o.text;
    }
    return o.status;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return e.kind() == ErrorKind::Internal ? 3 : 2;
  }
}

}  // namespace scltopo
