#include "scltopo/fixtures.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace scltopo::fixtures {

namespace {

TwoComplex from_text(const std::string& text) { return build_complex(parse_2cx(text)); }

std::string commutators(int first, int last) {
  std::string w;
  for (int i = first; i <= last; ++i) {
    const std::string a = "a" + std::to_string(i), b = "b" + std::to_string(i);
    w += " " + a + "+ " + b + "+ " + a + "- " + b + "-";
  }
  return w;
}

std::string generators(int first, int last) {
  std::string out;
  for (int i = first; i <= last; ++i)
    for (const char* x : {"a", "b"}) out += std::string("edge ") + x + std::to_string(i) + " v v\n";
  return out;
}

template <typename Piece>
std::string fresh(const std::vector<Piece>& pieces, const std::string& prefix) {
  for (std::size_t i = pieces.size();; ++i) {
    std::string name = prefix + std::to_string(i);
    if (std::none_of(pieces.begin(), pieces.end(), [&](const Piece& p) { return p.name == name; })) return name;
  }
}

int edge_id(const TwoComplex& X, const std::string& name) {
  auto e = X.find_edge(name);
  if (!e) throw Error(ErrorKind::UnknownCell, "unknown edge '" + name + "'");
  return *e;
}

int face_id(const TwoComplex& X, const std::string& name) {
  auto f = X.find_face(name);
  if (!f) throw Error(ErrorKind::UnknownCell, "unknown face '" + name + "'");
  return *f;
}

}  // namespace

TwoComplex torus() { return from_text("vertex v\nedge a v v\nedge b v v\nface f = a+ b+ a- b-\n"); }
TwoComplex rp2() { return from_text("vertex v\nedge a v v\nface f = a+ a+\n"); }
TwoComplex disc() {
  return from_text("vertex x\nvertex y\nvertex z\nedge p x y\nedge q y z\nedge r z x\nface f = p+ q+ r+\n");
}
TwoComplex sphere() {
  return from_text(
      "vertex x\nvertex y\nvertex z\nedge p x y\nedge q y z\nedge r z x\n"
      "face n = p+ q+ r+\nface s = r- q- p-\n");
}

TwoComplex sg1b(int g) {
  if (g < 1) throw Error(ErrorKind::Precondition, "genus must be positive");
  return from_text("vertex v\n" + generators(1, g) + "edge c v v\nface f =" + commutators(1, g) + " c-\n");
}

TwoComplex closed_surface(int g) {
  if (g < 1) throw Error(ErrorKind::Precondition, "genus must be positive");
  return from_text("vertex v\n" + generators(1, g) + "face f =" + commutators(1, g) + "\n");
}

TwoComplex closed_s3() {
  return from_text("vertex v\n" + generators(1, 2) + "edge c v v\n" + generators(3, 3) + "face f1 =" + commutators(1, 2) +
                   " c-\nface f2 = c+" + commutators(3, 3) + "\n");
}

TwoComplex nested_pair(int g) {
  if (g < 1) throw Error(ErrorKind::Precondition, "genus must be positive");
  return from_text("vertex v\n" + generators(1, g + 1) + "edge d v v\nedge c v v\nface g1 =" + commutators(1, g) +
                   " d-\nface g2 = d+" + commutators(g + 1, g + 1) + " c-\n");
}

TwoComplex fan(int spokes) {
  if (spokes < 3) throw Error(ErrorKind::Precondition, "a fan needs at least three spokes");
  std::ostringstream t;
  t << "vertex v\n";
  for (int i = 0; i < spokes; ++i) t << "vertex u" << i << '\n';
  for (int i = 0; i < spokes; ++i) t << "vertex w" << i << '\n';
  for (int i = 0; i < spokes; ++i) t << "edge e" << i << " v u" << i << '\n';
  for (int i = 0; i < spokes; ++i) t << "edge r" << i << " u" << i << " u" << (i + 1) % spokes << '\n';
  for (int i = 0; i < spokes; ++i) t << "edge s" << i << " u" << i << " w" << i << '\n';
  for (int i = 0; i < spokes; ++i) t << "edge o" << i << " w" << i << " w" << (i + 1) % spokes << '\n';
  for (int i = 0; i < spokes; ++i) t << "face t" << i << " = e" << i << "+ r" << i << "+ e" << (i + 1) % spokes << "-\n";
  for (int i = 0; i < spokes; ++i)
    t << "face q" << i << " = s" << i << "+ o" << i << "+ s" << (i + 1) % spokes << "- r" << i << "-\n";
  return from_text(t.str());
}

TwoComplex fan_square() { return fan(4); }

TwoComplex three_squares() {
  std::ostringstream t;
  t << "vertex p\nvertex q\n";
  for (int i = 0; i < 3; ++i) t << "vertex x" << i << "\nvertex y" << i << '\n';
  t << "edge s p q\n";
  for (int i = 0; i < 3; ++i)
    t << "edge u" << i << " q x" << i << "\nedge w" << i << " x" << i << " y" << i << "\nedge z" << i << " y" << i
      << " p\n";
  for (int i = 0; i < 3; ++i) t << "face q" << i << " = s+ u" << i << "+ w" << i << "+ z" << i << "+\n";
  return from_text(t.str());
}

TwoComplex pinched_triangles() {
  return from_text(
      "vertex o\nvertex x1\nvertex y1\nvertex x2\nvertex y2\n"
      "edge p1 o x1\nedge q1 x1 y1\nedge r1 y1 o\nedge p2 o x2\nedge q2 x2 y2\nedge r2 y2 o\n"
      "face f1 = p1+ q1+ r1+\nface f2 = p2+ q2+ r2+\n");
}

TwoComplex torus_plus_rp2() { return disjoint_union(torus(), rp2()); }

Subcomplex face_closure(const TwoComplex& complex, const std::vector<std::string>& faces) {
  CellSet cells;
  for (const auto& f : faces) cells.faces.push_back(face_id(complex, f));
  return induced_subcomplex(complex, cells);
}

Subcomplex closed_s3_t(const TwoComplex& s3) { return face_closure(s3, {"f1"}); }
Subcomplex closed_s3_sigma(const TwoComplex& s3) { return face_closure(s3, {"f2"}); }
Subcomplex nested_inner(const TwoComplex& pair) { return face_closure(pair, {"g1"}); }

LoopTerm loop(const TwoComplex& target, int coefficient, const std::string& signed_edges) {
  LoopTerm term;
  term.coefficient = coefficient;
  std::istringstream in(signed_edges);
  std::string tok;
  while (in >> tok) term.word.push_back({edge_id(target, tok.substr(0, tok.size() - 1)), tok.back() == '-' ? -1 : 1});
  return term;
}

AdmissibleData surface_over(const TwoComplex& target, std::vector<LoopTerm> chain,
                            const std::vector<std::pair<std::string, int>>& faces) {
  AdmissibleData d;
  d.target = target;
  d.chain = std::move(chain);
  std::vector<int> handle_of(target.edge_count(), -1);
  std::vector<bool> used(target.edge_count(), false);
  for (const auto& [name, sign] : faces)
    for (const auto& se : target.face(face_id(target, name)).word) used[se.edge] = true;
  for (int e = 0; e < target.edge_count(); ++e)
    if (used[e]) {
      handle_of[e] = static_cast<int>(d.hpieces.size());
      d.hpieces.push_back({target.edge(e).name, e, std::nullopt, std::nullopt});
    }
  for (const auto& [name, sign] : faces) {
    FPiece f;
    f.face = face_id(target, name);
    f.name = name;
    while (std::any_of(d.fpieces.begin(), d.fpieces.end(), [&](const FPiece& p) { return p.name == f.name; })) f.name += "'";
    f.sign = sign;
    for (const auto& se : target.face(f.face).word) f.handles.push_back(handle_of[se.edge]);
    d.fpieces.push_back(std::move(f));
  }
  glue_sides(d);
  complete_vpieces(d);
  infer_boundary(d);
  return d;
}

AdmissibleData t_itself() {
  const TwoComplex s = closed_s3();
  return surface_over(s, {loop(s, 1, "c+")}, {{"f1", 1}});
}

AdmissibleData sigma_genus1() {
  const TwoComplex s = closed_s3();
  return surface_over(s, {loop(s, 1, "c+")}, {{"f2", -1}});
}

AdmissibleData closed_mirror() {
  const TwoComplex s = closed_s3();
  return surface_over(s, {loop(s, 1, "c+")}, {{"f1", -1}, {"f2", -1}});
}

AdmissibleData trivial_annulus() {
  AdmissibleData d;
  d.target = closed_s3();
  d.chain = {loop(d.target, 1, "c+")};
  d.hpieces.push_back({"c", edge_id(d.target, "c"), std::nullopt, std::nullopt});
  const int v = *d.target.find_vertex("v");
  d.vpieces.push_back({"D0", v, {{0, 0}, {0, 1}}, {std::nullopt, std::nullopt}});
  infer_boundary(d);
  return d;
}

AdmissibleData fold() {
  AdmissibleData base = t_itself();
  const int c = edge_id(base.target, "c");
  int handle = 0;
  while (base.hpieces[handle].edge != c) ++handle;
  return add_bubble(base, handle, Side::L, face_id(base.target, "f2"), 0);
}

AdmissibleData double_fold() {
  AdmissibleData d = trivial_annulus();
  const int f2 = face_id(d.target, "f2");
  d = add_bubble(d, 0, Side::L, f2, 0);
  return add_bubble(d, 0, Side::R, f2, 0);
}

AdmissibleData figlnk() {
  AdmissibleData d;
  d.target = fan_square();
  const TwoComplex& S = d.target;
  auto handle = [&](const std::string& name, const std::string& edge) {
    d.hpieces.push_back({name, edge_id(S, edge), std::nullopt, std::nullopt});
    return static_cast<int>(d.hpieces.size()) - 1;
  };
  std::vector<int> r(4), s(4), o(4);
  for (int i = 0; i < 4; ++i) {
    const std::string x = std::to_string(i);
    r[i] = handle("hr" + x, "r" + x);
    s[i] = handle("hs" + x, "s" + x);
    o[i] = handle("ho" + x, "o" + x);
  }
  const int h0 = handle("h0", "e0"), h1 = handle("h1", "e1"), h2 = handle("h2", "e2"), h3 = handle("h3", "e3");
  const int g2 = handle("g2", "r2");
  for (int i = 0; i < 4; ++i)
    d.fpieces.push_back({"Q" + std::to_string(i), face_id(S, "q" + std::to_string(i)), 1, {s[i], o[i], s[(i + 1) % 4], r[i]}});
  d.fpieces.push_back({"A", face_id(S, "t0"), 1, {h0, r[0], h1}});
  d.fpieces.push_back({"B", face_id(S, "t2"), -1, {h2, g2, h3}});
  glue_sides(d);
  d.vpieces.push_back(make_vpiece(d, "D", *S.find_vertex("v"), {{h0, 0}, {h3, 0}}));
  complete_vpieces(d);
  for (const auto& c : AdmissibleSurface::trace(d)) d.chain.push_back({1, c.word});
  infer_boundary(d);
  return d;
}

AdmissibleData t_itself_nested(int g) {
  const TwoComplex s = nested_pair(g);
  return surface_over(s, {loop(s, 1, "d+")}, {{"g1", 1}});
}

AdmissibleData nested_fold(int g) {
  AdmissibleData base = t_itself_nested(g);
  const int d = edge_id(base.target, "d");
  int handle = 0;
  while (base.hpieces[handle].edge != d) ++handle;
  return add_bubble(base, handle, Side::L, face_id(base.target, "g2"), 0);
}

AdmissibleData sg1b_itself(int g) {
  const TwoComplex s = sg1b(g);
  return surface_over(s, {loop(s, 1, "c+")}, {{"f", 1}});
}

AdmissibleData disc_over_vertex(const AdmissibleData& base, int vertex) {
  AdmissibleData d = base;
  VPiece p;
  p.name = fresh(d.vpieces, "P");
  p.vertex = vertex;
  d.vpieces.push_back(std::move(p));
  BoundaryAssignment ba;
  ba.anchor.vpiece = static_cast<int>(d.vpieces.size()) - 1;
  ba.circle = 0;
  ba.degree = 0;
  d.boundary.push_back(ba);
  return d;
}

AdmissibleData add_bubble(const AdmissibleData& data, int handle, Side side, int face, int position) {
  AdmissibleData d = data;
  const TwoComplex& S = d.target;
  const auto& word = S.face(face).word;
  const int m = static_cast<int>(word.size());
  if (position < 0 || position >= m || word[position].edge != d.hpieces.at(handle).edge)
    throw Error(ErrorKind::Precondition, "bubble face does not run along the handle's edge at that position");
  if ((side == Side::L ? d.hpieces[handle].left : d.hpieces[handle].right))
    throw Error(ErrorKind::Precondition, "bubble must sit on a free handle side");
  const int eps = (side == Side::L) == (word[position].sign > 0) ? 1 : -1;

  // Runs of each vertex disc start at ends whose preceding arc is free.
  std::vector<std::vector<HandleEnd>> starts(d.vpieces.size());
  for (std::size_t vi = 0; vi < d.vpieces.size(); ++vi) {
    const VPiece& v = d.vpieces[vi];
    const std::size_t n = v.ends.size();
    for (std::size_t t = 0; t < n; ++t)
      if (!v.gaps[(t + n - 1) % n]) starts[vi].push_back(v.ends[t]);
  }
  const int y = static_cast<int>(d.hpieces.size());
  d.hpieces.push_back({fresh(d.hpieces, "y"), d.hpieces[handle].edge, std::nullopt, std::nullopt});
  FPiece outer{fresh(d.fpieces, "p"), face, eps, {}};
  FPiece inner{"", face, -eps, {}};
  for (int k = 0; k < m; ++k) {
    if (k == position) {
      outer.handles.push_back(handle);
      inner.handles.push_back(y);
      continue;
    }
    const int h = static_cast<int>(d.hpieces.size());
    d.hpieces.push_back({fresh(d.hpieces, "b"), word[k].edge, std::nullopt, std::nullopt});
    outer.handles.push_back(h);
    inner.handles.push_back(h);
  }
  d.fpieces.push_back(outer);
  inner.name = fresh(d.fpieces, "q");
  d.fpieces.push_back(inner);
  glue_sides(d);

  const int moved_end = side == Side::L ? 1 : 0;  // end whose preceding side is `side`
  std::vector<VPiece> rebuilt;
  for (std::size_t vi = 0; vi < d.vpieces.size(); ++vi) {
    if (starts[vi].empty()) {
      rebuilt.push_back(d.vpieces[vi]);
      continue;
    }
    for (auto& s : starts[vi])
      if (s == HandleEnd{handle, moved_end}) s = {y, moved_end};
    rebuilt.push_back(make_vpiece(d, d.vpieces[vi].name, d.vpieces[vi].vertex, starts[vi]));
  }
  d.vpieces = std::move(rebuilt);
  complete_vpieces(d);
  for (auto& ba : d.boundary)
    if (ba.anchor.vpiece < 0 && ba.anchor.handle == handle && ba.anchor.side == side) ba.anchor.handle = y;
  return d;
}

AdmissibleData random_fold(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)); };
  AdmissibleData d;
  switch (pick(5)) {
    case 0: d = t_itself(); break;
    case 1: d = sigma_genus1(); break;
    case 2: d = disjoint_union(t_itself(), sigma_genus1()); break;
    case 3: d = t_itself_nested(1); break;
    default: d = sg1b_itself(2); break;
  }
  const std::size_t bubbles = 1 + pick(3);
  for (std::size_t b = 0; b < bubbles; ++b) {
    std::vector<std::pair<int, Side>> free_sides;
    for (int h = 0; h < static_cast<int>(d.hpieces.size()); ++h) {
      if (!d.hpieces[h].left) free_sides.emplace_back(h, Side::L);
      if (!d.hpieces[h].right) free_sides.emplace_back(h, Side::R);
    }
    if (free_sides.empty()) break;
    const auto [h, side] = free_sides[pick(free_sides.size())];
    std::vector<std::pair<int, int>> spots;
    for (int f = 0; f < d.target.face_count(); ++f) {
      const auto& w = d.target.face(f).word;
      for (int k = 0; k < static_cast<int>(w.size()); ++k)
        if (w[k].edge == d.hpieces[h].edge) spots.emplace_back(f, k);
    }
    if (spots.empty()) continue;
    const auto [f, k] = spots[pick(spots.size())];
    d = add_bubble(d, h, side, f, k);
  }
  return d;
}

const std::vector<NamedComplex>& complex_registry() {
  static const std::vector<NamedComplex> registry = {
      {"torus", torus},
      {"rp2", rp2},
      {"disc", disc},
      {"sphere", sphere},
      {"sg1b1", [] { return sg1b(1); }},
      {"sg1b2", [] { return sg1b(2); }},
      {"sg1b3", [] { return sg1b(3); }},
      {"closed1", [] { return closed_surface(1); }},
      {"closed2", [] { return closed_surface(2); }},
      {"closed3", [] { return closed_surface(3); }},
      {"closed_s3", closed_s3},
      {"nested1", [] { return nested_pair(1); }},
      {"nested2", [] { return nested_pair(2); }},
      {"fan_square", fan_square},
      {"fan_hexagon", [] { return fan(6); }},
      {"three_squares", three_squares},
      {"pinched_triangles", pinched_triangles},
      {"torus_plus_rp2", torus_plus_rp2},
  };
  return registry;
}

const std::vector<NamedSurface>& surface_registry() {
  static const std::vector<NamedSurface> registry = {
      {"t_itself", t_itself},
      {"sigma_genus1", sigma_genus1},
      {"closed_mirror", closed_mirror},
      {"t_itself_plus_mirror", [] { return disjoint_union(t_itself(), closed_mirror()); }},
      {"t_itself_plus_sigma", [] { return disjoint_union(t_itself(), sigma_genus1()); }},
      {"t_itself_plus_disc", [] { return disc_over_vertex(t_itself(), 0); }},
      {"t_itself_double", [] { return disjoint_union(t_itself(), t_itself()); }},
      {"trivial_annulus", trivial_annulus},
      {"fold", fold},
      {"double_fold", double_fold},
      {"figlnk", figlnk},
      {"t_itself_nested1", [] { return t_itself_nested(1); }},
      {"t_itself_nested2", [] { return t_itself_nested(2); }},
      {"nested_fold1", [] { return nested_fold(1); }},
      {"nested_fold2", [] { return nested_fold(2); }},
      {"sg1b_itself1", [] { return sg1b_itself(1); }},
      {"sg1b_itself2", [] { return sg1b_itself(2); }},
      {"sg1b_itself3", [] { return sg1b_itself(3); }},
  };
  return registry;
}

const std::vector<NamedSubcomplex>& subcomplex_registry() {
  static const std::vector<NamedSubcomplex> registry = {
      {"closed_s3_t", "closed_s3", closed_s3_t},
      {"closed_s3_sigma", "closed_s3", closed_s3_sigma},
      {"nested1_inner", "nested1", nested_inner},
      {"nested2_inner", "nested2", nested_inner},
  };
  return registry;
}

}  // namespace scltopo::fixtures
