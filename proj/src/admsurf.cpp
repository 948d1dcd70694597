#include "scltopo/admsurf.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace scltopo {

namespace {

Error invalid(const std::string& why) { return Error(ErrorKind::InvalidSurface, why); }

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

EdgeWord loop_word(const LoopTerm& term) {
  EdgeWord w;
  const int reps = term.coefficient > 0 ? term.coefficient : -term.coefficient;
  for (int r = 0; r < reps; ++r) {
    if (term.coefficient > 0) {
      w.insert(w.end(), term.word.begin(), term.word.end());
    } else {
      for (auto it = term.word.rbegin(); it != term.word.rend(); ++it) w.push_back(it->inverse());
    }
  }
  return w;
}

EdgeWord power(const EdgeWord& w, int d) {
  EdgeWord out;
  for (int r = 0; r < (d > 0 ? d : -d); ++r) {
    if (d > 0) {
      out.insert(out.end(), w.begin(), w.end());
    } else {
      for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
    }
  }
  return out;
}

bool cyclically_equal(const EdgeWord& a, const EdgeWord& b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  EdgeWord doubled = a;
  doubled.insert(doubled.end(), a.begin(), a.end());
  return std::search(doubled.begin(), doubled.end(), b.begin(), b.end()) != doubled.end();
}

Side after_side(int end) { return end == 0 ? Side::L : Side::R; }
Side before_side(int end) { return end == 0 ? Side::R : Side::L; }

const std::optional<SideRef>& side_ref(const HPiece& h, Side s) { return s == Side::L ? h.left : h.right; }

}  // namespace

Side glued_side(const TwoComplex& target, const FPiece& f, int k) {
  return target.face(f.face).word.at(k).sign * f.sign > 0 ? Side::L : Side::R;
}

AdmissibleSurface::AdmissibleSurface(AdmissibleData data) : AdmissibleSurface(std::move(data), true) {}

std::vector<Circuit> AdmissibleSurface::trace(AdmissibleData data) {
  return AdmissibleSurface(std::move(data), false).circuits_;
}

AdmissibleSurface::AdmissibleSurface(AdmissibleData data, bool check_boundary_data) : data_(std::move(data)) {
  validate();
  trace_circuits();
  if (!check_boundary_data) return;
  check_boundary();
  find_components();
  const TwoComplex assembled = assemble(*this);
  if (scltopo::euler_characteristic(assembled) != euler_characteristic())
    throw Error(ErrorKind::Internal, "piece Euler characteristic disagrees with the assembled surface");
  if (!surface_check(assembled).is_surface) throw Error(ErrorKind::Internal, "assembled surface fails surface_check");
}

void AdmissibleSurface::validate() {
  const TwoComplex& S = data_.target;
  if (!surface_check(S).is_surface) throw invalid("target is not a surface");
  {
    ChainVec ones(Ring::Z);
    for (int f = 0; f < S.face_count(); ++f) ones.add(f, 1);
    if (S.face_count() > 0 && !is_orientation_witness(S, ones))
      throw invalid("target must be oriented with every face carrying sign +1");
  }
  for (const auto& term : data_.chain) {
    if (term.coefficient == 0 || term.word.empty()) throw invalid("empty chain term");
    for (const auto& se : term.word)
      if (se.edge < 0 || se.edge >= S.edge_count()) throw invalid("chain uses an unknown edge");
    if (!S.is_closed_path(term.word)) throw invalid("chain term is not a closed edge path");
  }

  const int H = hpiece_count();
  for (const auto& h : data_.hpieces)
    if (h.edge < 0 || h.edge >= S.edge_count()) throw invalid("handle '" + h.name + "' over unknown edge");

  for (int fi = 0; fi < fpiece_count(); ++fi) {
    const FPiece& f = data_.fpieces[fi];
    if (f.face < 0 || f.face >= S.face_count()) throw invalid("cellular disc '" + f.name + "' over unknown face");
    if (f.sign != 1 && f.sign != -1) throw invalid("cellular disc '" + f.name + "' sign must be +1 or -1");
    const auto& word = S.face(f.face).word;
    if (f.handles.size() != word.size())
      throw invalid("cellular disc '" + f.name + "' needs one handle per side of its face");
    for (std::size_t k = 0; k < word.size(); ++k) {
      const int h = f.handles[k];
      if (h < 0 || h >= H) throw invalid("cellular disc '" + f.name + "' references an unknown handle");
      if (data_.hpieces[h].edge != word[k].edge)
        throw invalid("cellular disc '" + f.name + "' side " + std::to_string(k) + " glued to a handle over the wrong edge");
      const Side g = glued_side(S, f, static_cast<int>(k));
      const SideRef me{fi, static_cast<int>(k)};
      const auto& here = side_ref(data_.hpieces[h], g);
      const auto& there = side_ref(data_.hpieces[h], g == Side::L ? Side::R : Side::L);
      if (!(here && *here == me)) {
        if (there && *there == me)
          throw invalid("orientation inconsistency: cellular disc '" + f.name + "' glued to the wrong side of handle '" +
                        data_.hpieces[h].name + "'");
        throw invalid("non-involutive gluing between cellular disc '" + f.name + "' and handle '" +
                      data_.hpieces[h].name + "'");
      }
    }
  }
  for (int hi = 0; hi < H; ++hi) {
    const HPiece& h = data_.hpieces[hi];
    for (Side s : {Side::L, Side::R}) {
      const auto& ref = side_ref(h, s);
      if (!ref) continue;
      if (ref->fpiece < 0 || ref->fpiece >= fpiece_count()) throw invalid("handle '" + h.name + "' glued to unknown disc");
      const FPiece& f = data_.fpieces[ref->fpiece];
      if (ref->side < 0 || ref->side >= static_cast<int>(f.handles.size()) || f.handles[ref->side] != hi)
        throw invalid("non-involutive gluing at handle '" + h.name + "'");
      if (glued_side(S, f, ref->side) != s)
        throw invalid("orientation inconsistency at handle '" + h.name + "'");
    }
  }

  end_location_.assign(2 * H, {-1, -1});
  std::vector<std::vector<bool>> corner_seen(fpiece_count());
  for (int fi = 0; fi < fpiece_count(); ++fi) corner_seen[fi].assign(data_.fpieces[fi].handles.size(), false);
  for (int vi = 0; vi < vpiece_count(); ++vi) {
    const VPiece& v = data_.vpieces[vi];
    if (v.vertex < 0 || v.vertex >= S.vertex_count()) throw invalid("vertex disc '" + v.name + "' over unknown vertex");
    if (v.ends.size() != v.gaps.size()) throw invalid("vertex disc '" + v.name + "' slot list is malformed");
    const int n = static_cast<int>(v.ends.size());
    for (int t = 0; t < n; ++t) {
      const HandleEnd he = v.ends[t];
      if (he.handle < 0 || he.handle >= H || (he.end != 0 && he.end != 1))
        throw invalid("vertex disc '" + v.name + "' references an unknown handle end");
      auto& loc = end_location_[2 * he.handle + he.end];
      if (loc.first >= 0) throw invalid("handle end used twice: '" + data_.hpieces[he.handle].name + "'");
      loc = {vi, t};
      const EdgeCell& e = S.edge(data_.hpieces[he.handle].edge);
      if ((he.end == 0 ? e.source : e.target) != v.vertex)
        throw invalid("handle '" + data_.hpieces[he.handle].name + "' end does not lie over vertex disc '" + v.name + "'");
    }
    for (int t = 0; t < n; ++t) {
      const auto& gap = v.gaps[t];
      const HandleEnd cur = v.ends[t], next = v.ends[(t + 1) % n];
      const bool after_glued = side_ref(data_.hpieces[cur.handle], after_side(cur.end)).has_value();
      const bool before_glued = side_ref(data_.hpieces[next.handle], before_side(next.end)).has_value();
      if (!gap) {
        if (after_glued || before_glued) throw invalid("vertex disc '" + v.name + "' has a free arc next to a glued side");
        continue;
      }
      if (gap->fpiece < 0 || gap->fpiece >= fpiece_count()) throw invalid("corner of unknown cellular disc");
      const FPiece& f = data_.fpieces[gap->fpiece];
      const auto& word = S.face(f.face).word;
      const int m = static_cast<int>(word.size());
      const int k = gap->corner;
      if (k < 0 || k >= m) throw invalid("corner index out of range for '" + f.name + "'");
      if (corner_seen[gap->fpiece][k]) throw invalid("corner used twice for '" + f.name + "'");
      corner_seen[gap->fpiece][k] = true;
      if (S.tail(word[k]) != v.vertex) throw invalid("corner of '" + f.name + "' placed at the wrong vertex");
      const int km = (k + m - 1) % m;
      const HandleEnd side_k{f.handles[k], word[k].sign > 0 ? 0 : 1};
      const HandleEnd side_km{f.handles[km], word[km].sign > 0 ? 1 : 0};
      const bool ok = f.sign > 0 ? (cur == side_k && next == side_km) : (cur == side_km && next == side_k);
      if (!ok) throw invalid("corner " + std::to_string(k) + " of '" + f.name + "' is not between its two handles");
    }
  }
  for (int i = 0; i < 2 * H; ++i)
    if (end_location_[i].first < 0)
      throw invalid("handle '" + data_.hpieces[i / 2].name + "' end " + std::to_string(i % 2) + " not attached");
  for (int fi = 0; fi < fpiece_count(); ++fi)
    for (std::size_t k = 0; k < corner_seen[fi].size(); ++k)
      if (!corner_seen[fi][k]) throw invalid("corner " + std::to_string(k) + " of '" + data_.fpieces[fi].name + "' missing");
}

void AdmissibleSurface::trace_circuits() {
  const int H = hpiece_count();
  auto index = [](int h, Side s) { return 2 * h + (s == Side::L ? 0 : 1); };
  std::vector<int> next(2 * H, -1);
  for (int h = 0; h < H; ++h)
    for (Side s : {Side::L, Side::R}) {
      if (side_ref(data_.hpieces[h], s)) continue;
      const int arrive = s == Side::L ? 1 : 0;
      const auto [vi, t] = locate({h, arrive});
      const VPiece& v = data_.vpieces[vi];
      const int n = static_cast<int>(v.ends.size());
      const int prev = (t + n - 1) % n;
      if (v.gaps[prev]) throw Error(ErrorKind::Internal, "boundary walk reached a corner");
      const HandleEnd p = v.ends[prev];
      next[index(h, s)] = index(p.handle, after_side(p.end));
    }
  std::vector<bool> seen(2 * H, false);
  for (int start = 0; start < 2 * H; ++start) {
    if (next[start] < 0 || seen[start]) continue;
    Circuit c;
    for (int d = start; !seen[d]; d = next[d]) {
      if (next[d] < 0) throw Error(ErrorKind::Internal, "boundary walk left the free sides");
      seen[d] = true;
      const Dart dart{d / 2, d % 2 == 0 ? Side::L : Side::R};
      c.darts.push_back(dart);
      c.word.push_back({data_.hpieces[dart.handle].edge, dart.side == Side::L ? 1 : -1});
    }
    if (!c.darts.empty() && next[index(c.darts.back().handle, c.darts.back().side)] != start)
      throw Error(ErrorKind::Internal, "boundary walk is not a permutation");
    circuits_.push_back(std::move(c));
  }
  for (int vi = 0; vi < vpiece_count(); ++vi)
    if (data_.vpieces[vi].ends.empty()) {
      Circuit c;
      c.vpiece = vi;
      circuits_.push_back(std::move(c));
    }
}

void AdmissibleSurface::check_boundary() {
  const TwoComplex& S = data_.target;
  std::map<std::pair<int, int>, int> dart_circuit;  // (handle, side) -> circuit
  std::map<int, int> disc_circuit;
  for (int c = 0; c < static_cast<int>(circuits_.size()); ++c) {
    for (const auto& d : circuits_[c].darts) dart_circuit[{d.handle, d.side == Side::L ? 0 : 1}] = c;
    if (circuits_[c].vpiece) disc_circuit[*circuits_[c].vpiece] = c;
  }
  for (int a = 0; a < static_cast<int>(data_.boundary.size()); ++a) {
    const auto& ba = data_.boundary[a];
    int c = -1;
    if (ba.anchor.vpiece >= 0) {
      auto it = disc_circuit.find(ba.anchor.vpiece);
      if (it == disc_circuit.end()) throw invalid("boundary anchor is not a handle-less vertex disc");
      c = it->second;
    } else {
      auto it = dart_circuit.find({ba.anchor.handle, ba.anchor.side == Side::L ? 0 : 1});
      if (it == dart_circuit.end()) throw invalid("boundary anchor is not a free handle side");
      c = it->second;
    }
    if (circuits_[c].assignment >= 0) throw invalid("boundary circuit assigned twice");
    circuits_[c].assignment = a;
    if (ba.circle < 0 || ba.circle >= circle_count()) throw invalid("boundary assigned to an unknown circle");
    if (circuits_[c].word.empty() ? ba.degree != 0 : ba.degree == 0)
      throw invalid("boundary degree must be nonzero exactly for circuits with a nonempty word");
  }
  for (const auto& c : circuits_)
    if (c.assignment < 0) throw invalid("unassigned boundary circuit");

  for (const auto& c : circuits_) {
    const auto& ba = data_.boundary[c.assignment];
    const EdgeWord w = loop_word(data_.chain[ba.circle]);
    if (ba.track.empty()) {
      if (!cyclically_equal(c.word, power(w, ba.degree)))
        throw invalid("boundary word does not match circle " + std::to_string(ba.circle) + " to degree " +
                      std::to_string(ba.degree));
      continue;
    }
    ChainVec lhs(Ring::Z), rhs(Ring::Z);
    for (const auto& se : c.word) lhs.add(se.edge, se.sign);
    for (const auto& se : w) rhs.add(se.edge, ba.degree * se.sign);
    rhs -= boundary_of_faces(S, ba.track);
    if (!(lhs == rhs))
      throw invalid("boundary circuit is not homotopic to circle " + std::to_string(ba.circle) + " along its track");
  }
}

void AdmissibleSurface::find_components() {
  const int V = vpiece_count(), H = hpiece_count(), F = fpiece_count();
  UnionFind uf(V + H + F);
  for (int h = 0; h < H; ++h) {
    uf.unite(V + h, locate({h, 0}).first);
    uf.unite(V + h, locate({h, 1}).first);
  }
  for (int f = 0; f < F; ++f)
    for (int h : data_.fpieces[f].handles) uf.unite(V + H + f, V + h);
  std::map<int, int> label;
  vpiece_component_.assign(V, -1);
  for (int v = 0; v < V; ++v) {
    auto [it, inserted] = label.emplace(uf.find(v), static_cast<int>(components_.size()));
    if (inserted) components_.emplace_back();
    components_[it->second].vpieces.push_back(v);
    vpiece_component_[v] = it->second;
  }
  for (int h = 0; h < H; ++h) components_[label.at(uf.find(V + h))].hpieces.push_back(h);
  for (int f = 0; f < F; ++f) components_[label.at(uf.find(V + H + f))].fpieces.push_back(f);
}

AdmissibleSurface build_admissible(AdmissibleData data) { return AdmissibleSurface(std::move(data)); }

TwoComplex assemble(const AdmissibleSurface& surface) {
  const auto& d = surface.data();
  const int H = surface.hpiece_count();
  std::vector<std::string> vnames;
  auto point = [](int h, int end, Side s) { return 4 * h + 2 * end + (s == Side::L ? 1 : 0); };
  for (int h = 0; h < H; ++h)
    for (int end = 0; end < 2; ++end)
      for (char s : {'R', 'L'}) vnames.push_back("p" + std::to_string(h) + "." + std::to_string(end) + s);
  std::vector<EdgeCell> edges;
  std::vector<FaceCell> faces;
  // Edge ids: R_h = 4h, L_h = 4h+1, s(h,0) = 4h+2, s(h,1) = 4h+3.
  for (int h = 0; h < H; ++h) {
    const std::string hs = std::to_string(h);
    edges.push_back({point(h, 0, Side::R), point(h, 1, Side::R), "R" + hs});
    edges.push_back({point(h, 0, Side::L), point(h, 1, Side::L), "L" + hs});
    edges.push_back({point(h, 0, Side::R), point(h, 0, Side::L), "s" + hs + ".0"});
    edges.push_back({point(h, 1, Side::R), point(h, 1, Side::L), "s" + hs + ".1"});
    faces.push_back({{{4 * h, 1}, {4 * h + 3, 1}, {4 * h + 1, -1}, {4 * h + 2, -1}}, "H" + hs});
  }
  std::map<std::pair<int, int>, int> corner_edge;  // (fpiece, corner) -> gap edge
  for (int vi = 0; vi < surface.vpiece_count(); ++vi) {
    const VPiece& v = d.vpieces[vi];
    const std::string vs = std::to_string(vi);
    if (v.ends.empty()) {
      const int p = static_cast<int>(vnames.size());
      vnames.push_back("q" + vs);
      edges.push_back({p, p, "o" + vs});
      faces.push_back({{{static_cast<int>(edges.size()) - 1, 1}}, "V" + vs});
      continue;
    }
    const int n = static_cast<int>(v.ends.size());
    FaceCell face{{}, "V" + vs};
    for (int t = 0; t < n; ++t) {
      const HandleEnd cur = v.ends[t], nxt = v.ends[(t + 1) % n];
      const int gap = static_cast<int>(edges.size());
      edges.push_back({point(cur.handle, cur.end, after_side(cur.end)), point(nxt.handle, nxt.end, before_side(nxt.end)),
                       "g" + vs + "." + std::to_string(t)});
      if (v.gaps[t]) corner_edge[{v.gaps[t]->fpiece, v.gaps[t]->corner}] = gap;
      face.word.push_back({4 * cur.handle + 2 + cur.end, cur.end == 0 ? 1 : -1});
      face.word.push_back({gap, 1});
    }
    faces.push_back(std::move(face));
  }
  const TwoComplex& S = surface.target();
  for (int fi = 0; fi < surface.fpiece_count(); ++fi) {
    const FPiece& f = d.fpieces[fi];
    const int m = static_cast<int>(f.handles.size());
    FaceCell face{{}, "F" + std::to_string(fi)};
    auto side_edge = [&](int k) -> SignedEdge {
      return glued_side(S, f, k) == Side::L ? SignedEdge{4 * f.handles[k] + 1, 1} : SignedEdge{4 * f.handles[k], -1};
    };
    if (f.sign > 0) {
      for (int k = 0; k < m; ++k) {
        face.word.push_back(side_edge(k));
        face.word.push_back({corner_edge.at({fi, (k + 1) % m}), -1});
      }
    } else {
      for (int k = m - 1; k >= 0; --k) {
        face.word.push_back(side_edge(k));
        face.word.push_back({corner_edge.at({fi, k}), -1});
      }
    }
    faces.push_back(std::move(face));
  }
  return TwoComplex(std::move(vnames), std::move(edges), std::move(faces));
}

int reduced_euler(const AdmissibleSurface& surface) {
  int total = 0;
  for (const auto& c : surface.components()) total += std::min(0, c.euler());
  return total;
}

DegreeInfo degree(const AdmissibleSurface& surface) {
  DegreeInfo info;
  info.per_circle.assign(surface.circle_count(), 0);
  for (const auto& ba : surface.data().boundary) info.per_circle[ba.circle] += ba.degree;
  if (!info.per_circle.empty() &&
      std::all_of(info.per_circle.begin(), info.per_circle.end(), [&](int x) { return x == info.per_circle[0]; }))
    info.n = info.per_circle[0];
  info.scl_admissible = info.n && *info.n > 0;
  return info;
}

PushforwardClass pushforward_class(const AdmissibleSurface& surface) {
  const auto& d = surface.data();
  ConeComplex cone(d.target, d.chain);
  PushforwardClass out;
  out.two_chain = ChainVec(Ring::Z);
  for (const auto& f : d.fpieces) out.two_chain.add(f.face, f.sign);
  ChainVec lifted = out.two_chain;
  for (const auto& ba : d.boundary) lifted -= ba.track;
  const auto info = degree(surface);
  for (int x : info.per_circle) out.degrees.emplace_back(x);
  out.cone_cycle = cone.two_chain(lifted, out.degrees);
  if (!cone.is_cycle(out.cone_cycle)) throw invalid("boundary data cannot close the cone cycle");
  out.coordinates = cone.coordinates(out.cone_cycle);
  return out;
}

BarComplex collapse(const AdmissibleSurface& surface) {
  const auto& d = surface.data();
  const TwoComplex& S = surface.target();
  BarComplex bar;
  std::vector<std::string> vnames;
  for (const auto& v : d.vpieces) {
    vnames.push_back(v.name);
    bar.vertex_map.push_back(v.vertex);
  }
  std::vector<EdgeCell> edges;
  for (int h = 0; h < surface.hpiece_count(); ++h) {
    edges.push_back({surface.locate({h, 0}).first, surface.locate({h, 1}).first, d.hpieces[h].name});
    bar.edge_map.push_back(d.hpieces[h].edge);
  }
  std::vector<FaceCell> faces;
  for (const auto& f : d.fpieces) {
    FaceCell face{{}, f.name};
    const auto& word = S.face(f.face).word;
    for (std::size_t k = 0; k < word.size(); ++k) face.word.push_back({f.handles[k], word[k].sign});
    faces.push_back(std::move(face));
    bar.face_map.push_back(f.face);
    bar.face_sign.push_back(f.sign);
  }
  bar.complex = TwoComplex(std::move(vnames), std::move(edges), std::move(faces));
  for (int v = 0; v < bar.complex.vertex_count(); ++v) bar.link_components.push_back(link_graph(bar.complex, v).component_count());
  return bar;
}

std::string StandardFormReport::to_text() const {
  std::ostringstream out;
  auto list = [&](const std::vector<int>& xs) {
    std::string s = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
    return s + "]";
  };
  out << "transverse " << (transverse ? "yes" : "no") << '\n';
  out << "incompressible_certified " << (incompressible_certified ? "yes" : "no") << '\n';
  out << "disc_sphere_free " << (disc_sphere_free ? "yes" : "no") << ' ' << list(trivial_components) << '\n';
  out << "monotone " << (monotone ? "yes" : "no") << ' ' << list(non_monotone_circles) << '\n';
  out << "connected_links " << (connected_links ? "yes" : "no") << ' ' << list(disconnected_vpieces) << '\n';
  out << "non_folded " << (non_folded ? "yes" : "no") << ' ' << list(folded_components) << '\n';
  out << "orientation_perfect " << (orientation_perfect ? "yes" : "no") << ' ' << list(mixed_faces) << '\n';
  return out.str();
}

StandardFormReport standard_form_report(const AdmissibleSurface& surface) {
  const auto& d = surface.data();
  StandardFormReport r;
  r.incompressible_certified = d.incompressible;
  const auto& comps = surface.components();
  for (int c = 0; c < static_cast<int>(comps.size()); ++c) {
    if (comps[c].euler() > 0) r.trivial_components.push_back(c);
    bool pos = false, neg = false;
    for (int f : comps[c].fpieces) (d.fpieces[f].sign > 0 ? pos : neg) = true;
    if (pos && neg) r.folded_components.push_back(c);
  }
  for (int i = 0; i < surface.circle_count(); ++i) {
    bool pos = false, neg = false;
    for (const auto& ba : d.boundary)
      if (ba.circle == i && ba.degree != 0) (ba.degree > 0 ? pos : neg) = true;
    if (pos && neg) r.non_monotone_circles.push_back(i);
  }
  const auto bar = collapse(surface);
  for (int v = 0; v < surface.vpiece_count(); ++v)
    if (bar.link_components[v] > 1) r.disconnected_vpieces.push_back(v);
  std::vector<int> face_signs(surface.target().face_count(), 0);
  for (const auto& f : d.fpieces) face_signs[f.face] |= f.sign > 0 ? 1 : 2;
  for (int f = 0; f < static_cast<int>(face_signs.size()); ++f)
    if (face_signs[f] == 3) r.mixed_faces.push_back(f);
  r.disc_sphere_free = r.trivial_components.empty();
  r.monotone = r.non_monotone_circles.empty();
  r.connected_links = r.disconnected_vpieces.empty();
  r.non_folded = r.folded_components.empty();
  r.orientation_perfect = r.mixed_faces.empty();
  if (r.orientation_perfect && r.connected_links && !r.non_folded)
    throw Error(ErrorKind::Internal, "orientation-perfect surface with connected links is folded");
  return r;
}

void glue_sides(AdmissibleData& data) {
  for (auto& h : data.hpieces) h.left = h.right = std::nullopt;
  for (int fi = 0; fi < static_cast<int>(data.fpieces.size()); ++fi) {
    const FPiece& f = data.fpieces[fi];
    for (int k = 0; k < static_cast<int>(f.handles.size()); ++k) {
      HPiece& h = data.hpieces.at(f.handles[k]);
      (glued_side(data.target, f, k) == Side::L ? h.left : h.right) = SideRef{fi, k};
    }
  }
}

std::optional<std::pair<CornerRef, HandleEnd>> corner_after(const AdmissibleData& data, HandleEnd end) {
  const auto& ref = side_ref(data.hpieces.at(end.handle), after_side(end.end));
  if (!ref) return std::nullopt;
  const FPiece& f = data.fpieces.at(ref->fpiece);
  const auto& word = data.target.face(f.face).word;
  const int m = static_cast<int>(word.size());
  const int j = ref->side;
  if (f.sign > 0) {
    const int km = (j + m - 1) % m;
    return std::pair{CornerRef{ref->fpiece, j}, HandleEnd{f.handles[km], word[km].sign > 0 ? 1 : 0}};
  }
  const int kp = (j + 1) % m;
  return std::pair{CornerRef{ref->fpiece, kp}, HandleEnd{f.handles[kp], word[kp].sign > 0 ? 0 : 1}};
}

VPiece make_vpiece(const AdmissibleData& data, std::string name, int vertex, const std::vector<HandleEnd>& starts) {
  VPiece v;
  v.name = std::move(name);
  v.vertex = vertex;
  const std::size_t limit = 2 * data.hpieces.size() + 1;
  for (HandleEnd cur : starts) {
    for (;;) {
      if (v.ends.size() > limit) throw Error(ErrorKind::InvalidSurface, "corner walk does not terminate");
      v.ends.push_back(cur);
      auto step = corner_after(data, cur);
      if (!step) {
        v.gaps.push_back(std::nullopt);
        break;
      }
      v.gaps.push_back(step->first);
      cur = step->second;
      if (cur == starts.front()) return v;  // closed cycle of corners
    }
  }
  return v;
}

void complete_vpieces(AdmissibleData& data) {
  const int H = static_cast<int>(data.hpieces.size());
  std::vector<bool> placed(2 * H, false);
  for (const auto& v : data.vpieces)
    for (const auto& he : v.ends) placed.at(2 * he.handle + he.end) = true;
  auto vertex_of = [&](HandleEnd he) {
    const EdgeCell& e = data.target.edge(data.hpieces[he.handle].edge);
    return he.end == 0 ? e.source : e.target;
  };
  auto fresh_name = [&]() {
    for (int i = static_cast<int>(data.vpieces.size());; ++i) {
      std::string name = "D" + std::to_string(i);
      if (std::none_of(data.vpieces.begin(), data.vpieces.end(), [&](const VPiece& v) { return v.name == name; }))
        return name;
    }
  };
  auto add = [&](HandleEnd start) {
    VPiece v = make_vpiece(data, fresh_name(), vertex_of(start), {start});
    for (const auto& he : v.ends) {
      if (placed[2 * he.handle + he.end]) throw invalid("handle end reached twice while completing vertex discs");
      placed[2 * he.handle + he.end] = true;
    }
    data.vpieces.push_back(std::move(v));
  };
  for (int pass = 0; pass < 2; ++pass)
    for (int h = 0; h < H; ++h)
      for (int end = 0; end < 2; ++end) {
        if (placed[2 * h + end]) continue;
        const bool free_before = !side_ref(data.hpieces[h], before_side(end)).has_value();
        if (pass == 0 ? free_before : true) add({h, end});
      }
}

void infer_boundary(AdmissibleData& data) {
  data.boundary.clear();
  for (const auto& c : AdmissibleSurface::trace(data)) {
    BoundaryAssignment ba;
    if (c.vpiece) {
      ba.anchor.vpiece = *c.vpiece;
      ba.circle = 0;
      ba.degree = 0;
      data.boundary.push_back(ba);
      continue;
    }
    ba.anchor.handle = c.darts.front().handle;
    ba.anchor.side = c.darts.front().side;
    bool found = false;
    for (int i = 0; i < static_cast<int>(data.chain.size()) && !found; ++i) {
      const EdgeWord w = loop_word(data.chain[i]);
      if (w.empty() || c.word.size() % w.size() != 0) continue;
      const int d = static_cast<int>(c.word.size() / w.size());
      for (int deg : {d, -d})
        if (!found && cyclically_equal(c.word, power(w, deg))) {
          ba.circle = i;
          ba.degree = deg;
          found = true;
        }
    }
    if (!found) throw invalid("boundary circuit matches no circle of the chain");
    data.boundary.push_back(ba);
  }
}

AdmissibleData disjoint_union(const AdmissibleData& a, const AdmissibleData& b) {
  if (print_2cx(a.target) != print_2cx(b.target)) throw invalid("disjoint union needs a common target");
  if (a.chain.size() != b.chain.size()) throw invalid("disjoint union needs a common chain");
  for (std::size_t i = 0; i < a.chain.size(); ++i)
    if (a.chain[i].coefficient != b.chain[i].coefficient || a.chain[i].word != b.chain[i].word)
      throw invalid("disjoint union needs a common chain");
  AdmissibleData out = a;
  const int V = static_cast<int>(a.vpieces.size()), H = static_cast<int>(a.hpieces.size()),
            F = static_cast<int>(a.fpieces.size());
  auto rename = [](const std::string& name, auto& existing) {
    std::string n = name;
    while (std::any_of(existing.begin(), existing.end(), [&](const auto& p) { return p.name == n; })) n += "'";
    return n;
  };
  for (auto v : b.vpieces) {
    v.name = rename(v.name, out.vpieces);
    for (auto& he : v.ends) he.handle += H;
    for (auto& g : v.gaps)
      if (g) g->fpiece += F;
    out.vpieces.push_back(std::move(v));
  }
  for (auto h : b.hpieces) {
    h.name = rename(h.name, out.hpieces);
    if (h.left) h.left->fpiece += F;
    if (h.right) h.right->fpiece += F;
    out.hpieces.push_back(std::move(h));
  }
  for (auto f : b.fpieces) {
    f.name = rename(f.name, out.fpieces);
    for (auto& h : f.handles) h += H;
    out.fpieces.push_back(std::move(f));
  }
  for (auto ba : b.boundary) {
    if (ba.anchor.vpiece >= 0) ba.anchor.vpiece += V;
    else ba.anchor.handle += H;
    out.boundary.push_back(ba);
  }
  out.incompressible = a.incompressible && b.incompressible;
  return out;
}

void assign_all_boundary(AdmissibleData& data, int circle, int degree) {
  data.boundary.clear();
  for (const auto& c : AdmissibleSurface::trace(data)) {
    BoundaryAssignment ba;
    if (c.vpiece) {
      ba.anchor.vpiece = *c.vpiece;
      ba.degree = 0;
    } else {
      ba.anchor.handle = c.darts.front().handle;
      ba.anchor.side = c.darts.front().side;
      ba.degree = degree;
    }
    ba.circle = circle;
    data.boundary.push_back(ba);
  }
}

std::vector<bool> boundary_vertex_mask(const TwoComplex& target) { return boundary_subcomplex(target).vertex_mask(); }

}  // namespace scltopo
