#include "scltopo/veriharness.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <sstream>

#include "scltopo/fixtures.hpp"

namespace scltopo {

namespace {

/// Signed generator: +(g+1) or -(g+1).
using GenWord = std::vector<int>;

GenWord gen_inverse(const GenWord& w) {
  GenWord out(w.rbegin(), w.rend());
  for (auto& x : out) x = -x;
  return out;
}

std::string join_rationals(const std::vector<Rational>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
  return s + ")";
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::vector<int> inverse_map(const std::vector<int>& forward, int parent_size) {
  std::vector<int> inv(parent_size, -1);
  for (std::size_t i = 0; i < forward.size(); ++i) inv[forward[i]] = static_cast<int>(i);
  return inv;
}

int lookup(const std::vector<int>& inv, int id, const char* what) {
  if (id < 0 || id >= static_cast<int>(inv.size()) || inv[id] < 0)
    throw Error(ErrorKind::Precondition, std::string("surface has a piece over a ") + what + " outside the subcomplex");
  return inv[id];
}

}  // namespace

// ---------------------------------------------------------------------------
// Spine bases

std::string FreeBasis::letters() const {
  std::string s;
  for (std::size_t i = 0; i < generators.size(); ++i) s += static_cast<char>('a' + i);
  return s;
}

std::string FreeBasis::path_word(const EdgeWord& path) const {
  std::string w;
  for (const auto& se : path) w += se.sign > 0 ? edge_words.at(se.edge) : inverse_word(edge_words.at(se.edge));
  return free_reduce(w);
}

EdgeWord FreeBasis::generator_loop(const TwoComplex& complex, int letter) const {
  const SignedEdge se{generators.at(letter), 1};
  EdgeWord loop = tree_paths.at(complex.tail(se));
  loop.push_back(se);
  const EdgeWord& back = tree_paths.at(complex.head(se));
  for (auto it = back.rbegin(); it != back.rend(); ++it) loop.push_back(it->inverse());
  return loop;
}

FreeBasis spine_basis(const TwoComplex& complex) {
  const int nv = complex.vertex_count(), ne = complex.edge_count();
  if (nv == 0) throw Error(ErrorKind::Precondition, "empty complex has no fundamental group");
  FreeBasis basis;
  basis.base = 0;
  basis.tree_paths.assign(nv, {});
  std::vector<std::vector<int>> incident(nv);
  for (int e = 0; e < ne; ++e) {
    incident[complex.edge(e).source].push_back(e);
    if (complex.edge(e).target != complex.edge(e).source) incident[complex.edge(e).target].push_back(e);
  }
  std::vector<bool> seen(nv, false), tree(ne, false);
  std::deque<int> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int e : incident[v]) {
      const auto& ec = complex.edge(e);
      const SignedEdge se{e, ec.source == v ? 1 : -1};
      const int w = complex.head(se);
      if (seen[w]) continue;
      seen[w] = true;
      tree[e] = true;
      basis.tree_paths[w] = basis.tree_paths[v];
      basis.tree_paths[w].push_back(se);
      queue.push_back(w);
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw Error(ErrorKind::Precondition, "complex is disconnected");

  // Relations in the non-tree edges, then collapses along free edges.
  std::vector<int> gen_of_edge(ne, -1), edge_of_gen;
  for (int e = 0; e < ne; ++e)
    if (!tree[e]) {
      gen_of_edge[e] = static_cast<int>(edge_of_gen.size());
      edge_of_gen.push_back(e);
    }
  const int ng = static_cast<int>(edge_of_gen.size());
  std::vector<GenWord> relations;
  for (const auto& face : complex.faces()) {
    GenWord r;
    for (const auto& se : face.word)
      if (gen_of_edge[se.edge] >= 0) r.push_back(se.sign * (gen_of_edge[se.edge] + 1));
    relations.push_back(std::move(r));
  }
  std::vector<bool> face_alive(relations.size(), true), gen_alive(ng, true);
  std::vector<std::optional<GenWord>> expression(ng);
  std::vector<int> order;
  while (true) {
    std::vector<int> total(ng, 0);
    for (std::size_t f = 0; f < relations.size(); ++f)
      if (face_alive[f])
        for (int x : relations[f]) ++total[std::abs(x) - 1];
    bool moved = false;
    for (std::size_t f = 0; f < relations.size() && !moved; ++f) {
      if (!face_alive[f]) continue;
      const auto& r = relations[f];
      for (std::size_t i = 0; i < r.size() && !moved; ++i) {
        const int g = std::abs(r[i]) - 1;
        if (total[g] != 1) continue;
        GenWord rest(r.begin() + static_cast<long>(i) + 1, r.end());
        rest.insert(rest.end(), r.begin(), r.begin() + static_cast<long>(i));
        expression[g] = r[i] > 0 ? gen_inverse(rest) : rest;
        face_alive[f] = false;
        gen_alive[g] = false;
        order.push_back(g);
        moved = true;
      }
    }
    if (!moved) break;
  }
  if (std::find(face_alive.begin(), face_alive.end(), true) != face_alive.end())
    throw Error(ErrorKind::Precondition, "complex does not collapse onto a graph");

  std::vector<int> letter_of_gen(ng, -1);
  for (int g = 0; g < ng; ++g)
    if (gen_alive[g]) {
      letter_of_gen[g] = static_cast<int>(basis.generators.size());
      basis.generators.push_back(edge_of_gen[g]);
    }
  if (basis.generators.size() > 26) throw Error(ErrorKind::Precondition, "free basis needs more than 26 letters");
  std::vector<std::string> gen_word(ng);
  for (int g = 0; g < ng; ++g)
    if (gen_alive[g]) gen_word[g] = std::string(1, static_cast<char>('a' + letter_of_gen[g]));
  // Later eliminations only mention generators alive at their time.
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    std::string w;
    for (int x : *expression[*it]) {
      const auto& sub = gen_word[std::abs(x) - 1];
      w += x > 0 ? sub : inverse_word(sub);
    }
    gen_word[*it] = free_reduce(w);
  }
  basis.edge_words.assign(ne, "");
  for (int e = 0; e < ne; ++e)
    if (gen_of_edge[e] >= 0) basis.edge_words[e] = gen_word[gen_of_edge[e]];
  return basis;
}

std::string InclusionWordMap::map_word(std::string_view word) const {
  std::string out;
  for (char ch : word) {
    const bool inv = ch >= 'A' && ch <= 'Z';
    const int letter = (inv ? ch - 'A' : ch - 'a');
    if (letter < 0 || letter >= static_cast<int>(images.size()))
      throw Error(ErrorKind::Parse, std::string("letter outside the subcomplex basis: ") + ch);
    out += inv ? inverse_word(images[letter]) : images[letter];
  }
  return cyclic_reduce(free_reduce(out));
}

OneChain InclusionWordMap::map_chain(const OneChain& chain) const {
  OneChain out;
  out.basis = ambient_basis.letters();
  for (const auto& t : chain.terms) {
    const std::string w = map_word(t.word);
    if (w.empty()) continue;
    out.terms.push_back({t.coefficient, w});
  }
  return out;
}

InclusionWordMap inclusion_word_map(const TwoComplex& ambient, const Subcomplex& sub) {
  if (!sub.is_subcomplex_of(ambient)) throw Error(ErrorKind::NotSubcomplex, "T is not a subcomplex of S");
  InclusionWordMap map;
  map.sub = extract(ambient, sub);
  map.sub_basis = spine_basis(map.sub.complex);
  map.ambient_basis = spine_basis(ambient);
  // The conjugating path from the ambient base to the sub base is trivial in
  // the ambient letters, since tree edges read as the empty word.
  for (std::size_t k = 0; k < map.sub_basis.generators.size(); ++k) {
    EdgeWord loop = map.sub_basis.generator_loop(map.sub.complex, static_cast<int>(k));
    for (auto& se : loop) se.edge = map.sub.edge_map[se.edge];
    EdgeWord to_base = map.ambient_basis.tree_paths[map.sub.vertex_map[map.sub_basis.base]];
    EdgeWord full = to_base;
    full.insert(full.end(), loop.begin(), loop.end());
    for (auto it = to_base.rbegin(); it != to_base.rend(); ++it) full.push_back(it->inverse());
    map.images.push_back(map.ambient_basis.path_word(full));
  }
  return map;
}

// ---------------------------------------------------------------------------
// H1-injectivity

std::string InjectivityReport::to_text() const {
  std::ostringstream s;
  s << "H1(T;Q) rank " << h1_sub << "\nH1(S;Q) rank " << h1_ambient << "\nimage rank " << image_rank
    << "\ninjective " << yes_no(injective()) << "\nH2(S,T;Q) rank " << relative_h2 << "\nboundary of S nonempty "
    << yes_no(ambient_has_boundary) << "\nimplication " << (ambient_has_boundary ? yes_no(implication_holds()) : "n/a")
    << '\n';
  return s.str();
}

InjectivityReport check_h1_injectivity(const TwoComplex& ambient, const Subcomplex& sub) {
  if (!sub.is_subcomplex_of(ambient)) throw Error(ErrorKind::NotSubcomplex, "T is not a subcomplex of S");
  InjectivityReport rep;
  rep.h1_sub = homology(extract(ambient, sub).complex, Ring::Q).rank(1);
  rep.h1_ambient = homology(ambient, Ring::Q).rank(1);
  rep.image_rank = h1_inclusion_rank(ambient, sub);
  rep.relative_h2 = relative_homology(ambient, sub, Ring::Q).rank(2);
  rep.ambient_has_boundary = !boundary_subcomplex(ambient).empty();
  if (!rep.implication_holds())
    throw Error(ErrorKind::Internal, "H1-injective inclusion into a surface with boundary has H2(S,T) != 0");
  return rep;
}

// ---------------------------------------------------------------------------
// Moving surfaces between a subcomplex and its parent

namespace {

AdmissibleData remap_surface(const AdmissibleData& data, TwoComplex target, const std::vector<int>& vmap,
                             const std::vector<int>& emap, const std::vector<int>& fmap) {
  AdmissibleData out = data;
  out.target = std::move(target);
  for (auto& term : out.chain)
    for (auto& se : term.word) se.edge = lookup(emap, se.edge, "edge");
  for (auto& v : out.vpieces) v.vertex = lookup(vmap, v.vertex, "vertex");
  for (auto& h : out.hpieces) h.edge = lookup(emap, h.edge, "edge");
  for (auto& f : out.fpieces) f.face = lookup(fmap, f.face, "face");
  for (auto& b : out.boundary) {
    ChainVec track(b.track.ring());
    for (const auto& [face, c] : b.track.terms()) track.add(lookup(fmap, face, "face"), c);
    b.track = track;
  }
  return out;
}

}  // namespace

AdmissibleData restrict_surface(const AdmissibleData& data, const InducedComplex& sub) {
  const TwoComplex& parent = data.target;
  return remap_surface(data, sub.complex, inverse_map(sub.vertex_map, parent.vertex_count()),
                       inverse_map(sub.edge_map, parent.edge_count()), inverse_map(sub.face_map, parent.face_count()));
}

AdmissibleData transport_surface(const AdmissibleData& data, const InducedComplex& sub, const TwoComplex& parent) {
  return remap_surface(data, parent, sub.vertex_map, sub.edge_map, sub.face_map);
}

// ---------------------------------------------------------------------------
// Containment verifier

std::string to_string(ContainmentMode mode) { return mode == ContainmentMode::Standard ? "standard" : "perfect"; }

ContainmentMode parse_mode(std::string_view text) {
  if (text == "standard") return ContainmentMode::Standard;
  if (text == "perfect") return ContainmentMode::Perfect;
  throw Error(ErrorKind::Parse, "mode must be standard or perfect: " + std::string(text));
}

std::string ContainmentReport::verdict() const {
  if (!hypothesis) return "hypothesis fails";
  return direct_contained ? "contained" : "not contained";
}

namespace {

std::string cell_list(const std::vector<int>& ids, const std::function<std::string(int)>& name) {
  std::string s;
  for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? " " : "") + name(ids[i]);
  return s.empty() ? "-" : s;
}

}  // namespace

std::string ContainmentReport::to_text(const TwoComplex& ambient) const {
  auto vname = [&](int v) { return ambient.vertex_name(v); };
  auto ename = [&](int e) { return ambient.edge(e).name; };
  auto fname = [&](int f) { return ambient.face(f).name; };
  std::ostringstream s;
  s << "mode " << to_string(mode) << "\nring " << scltopo::to_string(ring) << '\n';
  s << "S0 vertices " << cell_list(image.vertices, vname) << "\nS0 edges " << cell_list(image.edges, ename)
    << "\nS0 faces " << cell_list(image.faces, fname) << '\n';
  s << "T0 vertices " << cell_list(image_in_sub.vertices, vname) << "\nT0 edges "
    << cell_list(image_in_sub.edges, ename) << "\nT0 faces " << cell_list(image_in_sub.faces, fname) << '\n';
  s << "S0 small links " << yes_no(small_links) << "\nS0 orientable " << yes_no(orientable) << '\n';
  if (mode == ContainmentMode::Standard)
    s << "hypothesis H2(S,T) = 0: " << yes_no(hypothesis) << " (rank " << relative_h2 << ")\n";
  else
    s << "hypothesis class vanishes in H2(S,T): " << yes_no(hypothesis) << " (faces outside T "
      << cell_list(class_outside, fname) << ")\n";
  s << "claim boundary covered by free sides " << yes_no(claim_boundary) << " (uncovered "
    << cell_list(uncovered_edges, ename) << ")\n";
  s << "claim no isolated cells " << yes_no(claim_no_isolated) << '\n';
  for (const auto& [f, in] : face_verdicts) s << "face " << fname(f) << (in ? " in T" : " outside T") << '\n';
  s << "proof path contained " << yes_no(proof_contained) << "\ndirect check contained " << yes_no(direct_contained)
    << "\nagree " << yes_no(agree()) << "\nverdict " << verdict() << '\n';
  return s.str();
}

ContainmentReport verify_theorem_main(const AdmissibleSurface& surface, const Subcomplex& sub, Ring ring,
                                      ContainmentMode mode) {
  const TwoComplex& S = surface.target();
  if (!sub.is_subcomplex_of(S)) throw Error(ErrorKind::NotSubcomplex, "T is not a subcomplex of the target");
  const auto sf = standard_form_report(surface);
  std::string missing;
  if (!sf.non_folded) missing += " non_folded";
  if (!sf.connected_links) missing += " connected_links";
  if (!sf.disc_sphere_free) missing += " disc_sphere_free";
  if (mode == ContainmentMode::Perfect && !sf.orientation_perfect) missing += " orientation_perfect";
  if (!missing.empty()) throw Error(ErrorKind::Precondition, "surface is not in " + to_string(mode) + " form:" + missing);
  for (const auto& term : surface.data().chain)
    for (const auto& se : term.word)
      if (!sub.has_edge(se.edge)) throw Error(ErrorKind::Precondition, "chain leaves T along edge " + S.edge(se.edge).name);
  for (const auto& c : surface.circuits()) {
    for (const auto& se : c.word)
      if (!sub.has_edge(se.edge)) throw Error(ErrorKind::Precondition, "boundary of the surface leaves T along edge " + S.edge(se.edge).name);
    if (c.vpiece && !sub.has_vertex(surface.data().vpieces[*c.vpiece].vertex))
      throw Error(ErrorKind::Precondition, "boundary of the surface leaves T at a vertex");
  }

  ContainmentReport rep;
  rep.mode = mode;
  rep.ring = ring;
  const auto& d = surface.data();
  CellSet pieces;
  for (const auto& v : d.vpieces) pieces.vertices.push_back(v.vertex);
  for (const auto& h : d.hpieces) pieces.edges.push_back(h.edge);
  for (const auto& f : d.fpieces) pieces.faces.push_back(f.face);
  const Subcomplex s0 = induced_subcomplex(S, pieces);
  const Subcomplex t0 = subcomplex_intersection(s0, sub);
  rep.image = s0.cells();
  rep.image_in_sub = t0.cells();

  const InducedComplex x0 = extract(S, s0);
  rep.small_links = has_small_links(x0.complex).small;
  rep.orientable = is_orientable(x0.complex, ring).has_value();

  // Homological hypothesis.
  ChainVec lifted = pushforward_class(surface).two_chain;
  for (const auto& b : d.boundary)
    for (const auto& [face, c] : b.track.terms()) lifted.add(face, c);
  if (mode == ContainmentMode::Standard) {
    rep.relative_h2 = relative_homology(S, sub, ring).rank(2);
    rep.hypothesis = rep.relative_h2 == 0;
  } else {
    for (const auto& [face, c] : lifted.terms())
      if (!sub.has_face(face)) rep.class_outside.push_back(face);
    rep.hypothesis = rep.class_outside.empty();
  }

  // Claim: edges of dS0 are covered by free long sides of handles.
  const Subcomplex dx0 = boundary_subcomplex(x0.complex);
  rep.claim_boundary = true;
  for (int e = 0; e < x0.complex.edge_count(); ++e) {
    if (!dx0.has_edge(e)) continue;
    const int pe = x0.edge_map[e];
    const bool covered = std::any_of(d.hpieces.begin(), d.hpieces.end(), [&](const HPiece& h) {
      return h.edge == pe && (!h.left || !h.right);
    });
    if (!covered) {
      rep.claim_boundary = false;
      rep.uncovered_edges.push_back(pe);
    }
  }

  // Claim: no isolated 0- or 1-cells in S0.
  std::vector<bool> vertex_hit(x0.complex.vertex_count(), false), edge_hit(x0.complex.edge_count(), false);
  for (const auto& face : x0.complex.faces())
    for (const auto& se : face.word) {
      edge_hit[se.edge] = true;
      vertex_hit[x0.complex.tail(se)] = true;
    }
  rep.claim_no_isolated = std::find(vertex_hit.begin(), vertex_hit.end(), false) == vertex_hit.end() &&
                          std::find(edge_hit.begin(), edge_hit.end(), false) == edge_hit.end();

  // Proof path.
  if (rep.hypothesis && rep.claim_boundary && rep.claim_no_isolated && rep.small_links && rep.orientable) {
    if (mode == ContainmentMode::Standard) {
      CellSet t0_cells;
      const auto inv_v = inverse_map(x0.vertex_map, S.vertex_count());
      const auto inv_e = inverse_map(x0.edge_map, S.edge_count());
      const auto inv_f = inverse_map(x0.face_map, S.face_count());
      for (int v : rep.image_in_sub.vertices) t0_cells.vertices.push_back(inv_v[v]);
      for (int e : rep.image_in_sub.edges) t0_cells.edges.push_back(inv_e[e]);
      for (int f : rep.image_in_sub.faces) t0_cells.faces.push_back(inv_f[f]);
      const Subcomplex y0 = induced_subcomplex(x0.complex, t0_cells);
      SupportLemmaVerdict lemma;
      try {
        lemma = check_support_lemma(x0.complex, y0, ring);
      } catch (const Error& e) {
        throw Error(ErrorKind::Internal, std::string("support lemma preconditions fail on S0: ") + e.what());
      }
      if (!lemma.hypothesis_holds)
        throw Error(ErrorKind::Internal, "H2(S0,T0) != 0 although H2(S,T) = 0");
      for (int f = 0; f < x0.complex.face_count(); ++f) rep.face_verdicts.emplace_back(x0.face_map[f], y0.has_face(f));
    } else {
      // Orientation-perfect: every face of S0 carries a nonzero coefficient,
      // and the class has no support outside T.
      for (int f : rep.image.faces)
        rep.face_verdicts.emplace_back(f, lifted.coefficient(f) != 0 && rep.class_outside.empty());
    }
    rep.proof_contained = std::all_of(rep.face_verdicts.begin(), rep.face_verdicts.end(),
                                      [](const auto& fv) { return fv.second; });
  }

  // Direct inspection of every piece.
  rep.direct_contained =
      std::all_of(d.vpieces.begin(), d.vpieces.end(), [&](const VPiece& v) { return sub.has_vertex(v.vertex); }) &&
      std::all_of(d.hpieces.begin(), d.hpieces.end(), [&](const HPiece& h) { return sub.has_edge(h.edge); }) &&
      std::all_of(d.fpieces.begin(), d.fpieces.end(), [&](const FPiece& f) { return sub.has_face(f.face); });
  return rep;
}

// ---------------------------------------------------------------------------
// scl under inclusion

namespace {

std::string scl_text(const SclResult& r) { return r.infinite ? "inf" : r.value.get_str(); }

bool is_boundary(const OneChain& chain) {
  const auto h = homology_class(chain);
  return std::all_of(h.begin(), h.end(), [](const Integer& x) { return x == 0; });
}

std::vector<OneChain> parse_all(const std::vector<std::string>& texts, int genus) {
  std::string letters;
  for (int i = 0; i < 2 * genus; ++i) letters += static_cast<char>('a' + i);
  std::vector<OneChain> out;
  for (const auto& t : texts) out.push_back(parse_chain(t, letters));
  return out;
}

}  // namespace

bool TheoremARow::consistent() const {
  if (sub.infinite != ambient.infinite) return false;
  return sub.infinite || sub.value == ambient.value;
}

bool TheoremAReport::ok() const {
  if (!injectivity.injective()) return false;
  return std::all_of(rows.begin(), rows.end(),
                     [](const TheoremARow& r) { return r.consistent() && r.boundary != r.sub.infinite; });
}

std::string TheoremAReport::to_text() const {
  std::ostringstream s;
  s << injectivity.to_text() << "T letters " << sub_letters << "\nS letters " << ambient_letters << '\n';
  for (std::size_t k = 0; k < images.size(); ++k) s << static_cast<char>('a' + k) << " -> " << images[k] << '\n';
  for (const auto& r : rows)
    s << print_chain(r.chain) << " -> " << print_chain(r.image) << ": " << scl_text(r.sub) << " vs "
      << scl_text(r.ambient) << (r.consistent() ? " ok" : " FAIL") << '\n';
  s << "result " << (ok() ? "isometric on all chains" : "FAIL") << '\n';
  return s.str();
}

TheoremAReport theorem_a_harness(const TwoComplex& ambient, const Subcomplex& sub, const std::vector<OneChain>& chains) {
  TheoremAReport rep;
  rep.injectivity = check_h1_injectivity(ambient, sub);
  const auto map = inclusion_word_map(ambient, sub);
  rep.sub_letters = map.sub_basis.letters();
  rep.ambient_letters = map.ambient_basis.letters();
  rep.images = map.images;
  for (const auto& chain : chains) {
    TheoremARow row;
    row.chain = chain;
    row.chain.basis = rep.sub_letters;
    row.image = map.map_chain(row.chain);
    row.boundary = is_boundary(row.chain);
    row.sub = scl_lp(row.chain);
    row.ambient = scl_lp(row.image);
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

std::vector<OneChain> theorem_a_corpus(int genus) {
  if (genus == 1)
    return parse_all({"[a,b]", "[a,b]^2", "[a^2,b]", "[a,b^2]", "[a,b][a,B]", "a + b + AB", "aab + AB + A",
                      "[a,b] + [a^2,b]", "aa + 2*A", "ab + aB + 2*A", "abAAB + a", "[a,bab]"},
                     1);
  if (genus == 2)
    return parse_all({"[a,b][c,d]", "[a,b] + [c,d]", "[a,c]", "[a,c][b,d]", "[ab,c]", "ab + cd + ABCD",
                      "a + c + CA", "[a,b]^2", "abcdABCD", "[a,d] + [b,c]", "aab + AB + A", "[a,b] + [b,c]"},
                     2);
  throw Error(ErrorKind::Precondition, "corpus exists for genus 1 and 2");
}

std::vector<OneChain> theorem_a_non_boundaries(int genus) {
  if (genus == 1) return parse_all({"a", "ab", "[a,b]a", "a + b"}, 1);
  if (genus == 2) return parse_all({"a", "cd", "[a,b]c", "a + b + c"}, 2);
  throw Error(ErrorKind::Precondition, "corpus exists for genus 1 and 2");
}

// ---------------------------------------------------------------------------
// Relative classes under inclusion

namespace {

Rational norm_bound(const AdmissibleSurface& surface) {
  const auto deg = degree(surface);
  if (!deg.scl_admissible) throw Error(ErrorKind::Precondition, "witness degree is not uniform and positive");
  return ratio_of(-2 * reduced_euler(surface), *deg.n);
}

std::vector<LoopTerm> restrict_loops(const std::vector<LoopTerm>& loops, const InducedComplex& sub, int parent_edges) {
  const auto inv = inverse_map(sub.edge_map, parent_edges);
  std::vector<LoopTerm> out = loops;
  for (auto& t : out)
    for (auto& se : t.word) se.edge = lookup(inv, se.edge, "edge");
  return out;
}

}  // namespace

bool TheoremBReport::ok() const {
  if (!injective()) return false;
  for (const auto& w : witnesses) {
    if (w.sub_bound != w.ambient_bound || !w.coordinates_match) return false;
    if (w.containment && !(w.containment->direct_contained && w.containment->agree())) return false;
  }
  return true;
}

std::string TheoremBReport::to_text() const {
  std::ostringstream s;
  s << "H2(T,c;Q) rank " << sub_rank << "\nH2(S,c;Q) rank " << ambient_rank << "\nimage rank " << image_rank
    << "\ninjective " << yes_no(injective()) << '\n';
  for (const auto& w : witnesses) {
    s << "witness " << w.name << ": bound in T " << w.sub_bound.get_str() << ", in S " << w.ambient_bound.get_str()
      << ", class in T " << join_rationals(w.sub_coordinates) << ", in S " << join_rationals(w.ambient_coordinates)
      << ", transported class " << (w.coordinates_match ? "matches" : "MISMATCH");
    if (w.containment) s << ", containment " << w.containment->verdict();
    s << '\n';
  }
  s << "scope " << scope << "\nresult " << (ok() ? "ok" : "FAIL") << '\n';
  return s.str();
}

TheoremBReport theorem_b_harness(const TwoComplex& ambient, const Subcomplex& sub,
                                 const std::vector<std::pair<std::string, AdmissibleData>>& witnesses) {
  if (witnesses.empty()) throw Error(ErrorKind::Precondition, "no witness surfaces");
  if (!sub.is_subcomplex_of(ambient)) throw Error(ErrorKind::NotSubcomplex, "T is not a subcomplex of S");
  const auto& loops = witnesses.front().second.chain;
  const InducedComplex ind = extract(ambient, sub);
  const auto sub_loops = restrict_loops(loops, ind, ambient.edge_count());
  const ConeComplex cone_t(ind.complex, sub_loops), cone_s(ambient, loops);

  auto iota = [&](const std::vector<Rational>& t_chain) {
    ChainVec faces(Ring::Q);
    for (int f = 0; f < ind.complex.face_count(); ++f)
      if (t_chain[f] != 0) faces.add(ind.face_map[f], t_chain[f]);
    return cone_s.coordinates(cone_s.two_chain(faces, cone_t.boundary_degrees(t_chain)));
  };

  TheoremBReport rep;
  rep.sub_rank = cone_t.h2_rank();
  rep.ambient_rank = cone_s.h2_rank();
  RatMatrix images(rep.ambient_rank, rep.sub_rank);
  std::vector<std::vector<Rational>> columns;
  for (int k = 0; k < rep.sub_rank; ++k) {
    columns.push_back(iota(cone_t.h2_basis()[k]));
    for (int r = 0; r < rep.ambient_rank; ++r) images(r, k) = columns.back()[r];
  }
  rep.image_rank = rank(images);
  rep.scope =
      "bound transport and injectivity of H2(T,c) -> H2(S,c) only; the relative Gromov norm itself is not computed";

  for (const auto& [name, data] : witnesses) {
    if (data.chain.size() != loops.size())
      throw Error(ErrorKind::Precondition, "witnesses must share one chain");
    for (std::size_t i = 0; i < loops.size(); ++i)
      if (data.chain[i].coefficient != loops[i].coefficient || data.chain[i].word != loops[i].word)
        throw Error(ErrorKind::Precondition, "witnesses must share one chain");
    TheoremBWitness w;
    w.name = name;
    const AdmissibleSurface in_t = build_admissible(restrict_surface(data, ind));
    const AdmissibleSurface in_s = build_admissible(transport_surface(in_t.data(), ind, ambient));
    w.sub_bound = norm_bound(in_t);
    w.ambient_bound = norm_bound(in_s);
    w.sub_coordinates = pushforward_class(in_t).coordinates;
    w.ambient_coordinates = pushforward_class(in_s).coordinates;
    std::vector<Rational> expected(rep.ambient_rank);
    for (int k = 0; k < rep.sub_rank; ++k)
      for (int r = 0; r < rep.ambient_rank; ++r) expected[r] += w.sub_coordinates[k] * columns[k][r];
    w.coordinates_match = expected == w.ambient_coordinates;
    const auto sf = standard_form_report(in_s);
    if (sf.standard() && sf.orientation_perfect)
      w.containment = verify_theorem_main(in_s, sub, Ring::Q, ContainmentMode::Perfect);
    rep.witnesses.push_back(std::move(w));
  }
  return rep;
}

std::optional<ChainVec> h2_generator(const TwoComplex& complex) {
  const auto kernel = kernel_basis(to_rational(boundary_matrices(complex).d2));
  if (kernel.size() != 1) return std::nullopt;
  ChainVec z(Ring::Q);
  for (int f = 0; f < complex.face_count(); ++f)
    if (kernel[0][f] != 0) z.add(f, kernel[0][f]);
  return z;
}

std::string NonIsometryReport::to_text() const {
  std::ostringstream s;
  s << injectivity.to_text() << "class of T-itself " << join_rationals(t_coordinates) << "\nclass of sigma-genus-1 "
    << join_rationals(sigma_coordinates) << "\nimage of [S] " << join_rationals(fundamental_image)
    << "\nclasses differ by [S] " << yes_no(classes_differ_by_fundamental) << "\nresult "
    << (ok() ? "reproduced" : "FAIL") << '\n';
  return s.str();
}

NonIsometryReport non_isometry_example() {
  const TwoComplex s = fixtures::closed_s3();
  const Subcomplex t = fixtures::closed_s3_t(s);
  NonIsometryReport rep;
  rep.injectivity = check_h1_injectivity(s, t);
  const AdmissibleSurface t_itself = build_admissible(fixtures::t_itself());
  const AdmissibleSurface sigma = build_admissible(fixtures::sigma_genus1());
  rep.t_coordinates = pushforward_class(t_itself).coordinates;
  rep.sigma_coordinates = pushforward_class(sigma).coordinates;
  const auto z = h2_generator(s);
  if (!z) throw Error(ErrorKind::Internal, "closed genus-3 surface must have H2 of rank one");
  rep.fundamental_image = ConeComplex(s, t_itself.data().chain).image_of_absolute(*z);
  std::vector<Rational> diff(rep.t_coordinates.size()), neg(rep.fundamental_image.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = rep.t_coordinates[i] - rep.sigma_coordinates[i];
  for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -rep.fundamental_image[i];
  rep.classes_differ_by_fundamental = diff == rep.fundamental_image || diff == neg;
  return rep;
}

}  // namespace scltopo
