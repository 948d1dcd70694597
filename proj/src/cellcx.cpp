#include "scltopo/cellcx.hpp"

#include <algorithm>
#include <numeric>

namespace scltopo {

namespace {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent_[a] = b;
  }

 private:
  std::vector<int> parent_;
};

std::vector<int> mask_to_ids(const std::vector<bool>& mask) {
  std::vector<int> ids;
  for (int i = 0; i < static_cast<int>(mask.size()); ++i)
    if (mask[i]) ids.push_back(i);
  return ids;
}

}  // namespace

TwoComplex::TwoComplex(std::vector<std::string> vertex_names, std::vector<EdgeCell> edges,
                       std::vector<FaceCell> faces)
    : vertex_names_(std::move(vertex_names)), edges_(std::move(edges)), faces_(std::move(faces)) {
  const int nv = vertex_count();
  for (int e = 0; e < edge_count(); ++e) {
    const auto& ed = edges_[e];
    if (ed.source < 0 || ed.source >= nv || ed.target < 0 || ed.target >= nv)
      throw Error(ErrorKind::InvalidComplex, "edge '" + ed.name + "' has a dangling endpoint");
  }
  for (const auto& f : faces_) {
    if (f.word.empty()) throw Error(ErrorKind::InvalidComplex, "face '" + f.name + "' has an empty word");
    for (const auto& se : f.word)
      if (se.edge < 0 || se.edge >= edge_count() || (se.sign != 1 && se.sign != -1))
        throw Error(ErrorKind::InvalidComplex, "face '" + f.name + "' uses an undeclared edge");
    if (!is_closed_path(f.word))
      throw Error(ErrorKind::InvalidComplex, "face '" + f.name + "' does not close up");
  }
}

bool TwoComplex::is_closed_path(const EdgeWord& word) const {
  if (word.empty()) return false;
  for (std::size_t k = 0; k < word.size(); ++k) {
    const auto& next = word[(k + 1) % word.size()];
    if (head(word[k]) != tail(next)) return false;
  }
  return true;
}

std::optional<int> TwoComplex::find_vertex(std::string_view name) const {
  for (int i = 0; i < vertex_count(); ++i)
    if (vertex_names_[i] == name) return i;
  return std::nullopt;
}

std::optional<int> TwoComplex::find_edge(std::string_view name) const {
  for (int i = 0; i < edge_count(); ++i)
    if (edges_[i].name == name) return i;
  return std::nullopt;
}

std::optional<int> TwoComplex::find_face(std::string_view name) const {
  for (int i = 0; i < face_count(); ++i)
    if (faces_[i].name == name) return i;
  return std::nullopt;
}

std::vector<int> TwoComplex::side_incidences() const {
  std::vector<int> count(edges_.size(), 0);
  for (const auto& f : faces_)
    for (const auto& se : f.word) ++count[se.edge];
  return count;
}

// ---------------------------------------------------------------------------
// Links

std::optional<int> LinkGraph::index_of(SignedEdge half_edge) const {
  for (int i = 0; i < static_cast<int>(vertices.size()); ++i)
    if (vertices[i] == half_edge) return i;
  return std::nullopt;
}

std::vector<int> LinkGraph::degrees() const {
  std::vector<int> deg(vertices.size(), 0);
  for (const auto& e : edges) {
    ++deg[e.a];
    ++deg[e.b];
  }
  return deg;
}

std::vector<int> LinkGraph::component_labels() const {
  const int n = static_cast<int>(vertices.size());
  UnionFind uf(n);
  for (const auto& e : edges) uf.unite(e.a, e.b);
  std::vector<int> label(n, -1), root_label(n, -1);
  int next = 0;
  for (int i = 0; i < n; ++i) {
    int r = uf.find(i);
    if (root_label[r] < 0) root_label[r] = next++;
    label[i] = root_label[r];
  }
  return label;
}

int LinkGraph::component_count() const {
  auto labels = component_labels();
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

LinkGraph link_graph(const TwoComplex& complex, int vertex) {
  if (vertex < 0 || vertex >= complex.vertex_count())
    throw Error(ErrorKind::UnknownCell, "unknown vertex id " + std::to_string(vertex));
  LinkGraph link;
  link.base = vertex;
  for (int e = 0; e < complex.edge_count(); ++e) {
    if (complex.edge(e).source == vertex) link.vertices.push_back({e, 1});
    if (complex.edge(e).target == vertex) link.vertices.push_back({e, -1});
  }
  for (int f = 0; f < complex.face_count(); ++f) {
    const auto& word = complex.face(f).word;
    const int d = static_cast<int>(word.size());
    for (int k = 0; k < d; ++k) {
      if (complex.tail(word[k]) != vertex) continue;
      const SignedEdge outgoing = word[k];
      const SignedEdge incoming_reversed = word[(k + d - 1) % d].inverse();
      link.edges.push_back({*link.index_of(outgoing), *link.index_of(incoming_reversed), f, k});
    }
  }
  return link;
}

SmallLinksReport has_small_links(const TwoComplex& complex) {
  const auto count = complex.side_incidences();
  for (int e = 0; e < complex.edge_count(); ++e)
    if (count[e] > 2) return {false, e};
  return {true, std::nullopt};
}

bool links_are_arcs_and_circles(const TwoComplex& complex) {
  for (int v = 0; v < complex.vertex_count(); ++v) {
    for (int d : link_graph(complex, v).degrees())
      if (d > 2) return false;
  }
  return true;
}

SurfaceReport surface_check(const TwoComplex& complex) {
  SurfaceReport report;
  for (int v = 0; v < complex.vertex_count(); ++v) {
    const LinkGraph link = link_graph(complex, v);
    const auto deg = link.degrees();
    auto fail = [&](std::string reason) {
      report.is_surface = false;
      report.witnesses.push_back({v, std::move(reason)});
    };
    if (link.vertices.empty() || link.edges.empty()) {
      fail("degenerate link");
      continue;
    }
    if (std::any_of(deg.begin(), deg.end(), [](int d) { return d > 2; })) {
      fail("link vertex of degree > 2");
      continue;
    }
    if (link.component_count() != 1) {
      fail("disconnected link");
      continue;
    }
    const auto ends = std::count(deg.begin(), deg.end(), 1);
    if (ends == 2) {
      report.boundary_vertices.push_back(v);
    } else if (ends != 0) {
      fail("link is not an arc or a circle");
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Subcomplexes

Subcomplex::Subcomplex(const TwoComplex& parent)
    : vertices_(parent.vertex_count(), false),
      edges_(parent.edge_count(), false),
      faces_(parent.face_count(), false) {}

CellSet Subcomplex::cells() const { return {mask_to_ids(vertices_), mask_to_ids(edges_), mask_to_ids(faces_)}; }

bool Subcomplex::empty() const { return cell_count() == 0; }

std::size_t Subcomplex::cell_count() const {
  return std::count(vertices_.begin(), vertices_.end(), true) + std::count(edges_.begin(), edges_.end(), true) +
         std::count(faces_.begin(), faces_.end(), true);
}

bool Subcomplex::is_subcomplex_of(const TwoComplex& parent) const {
  if (static_cast<int>(vertices_.size()) != parent.vertex_count() ||
      static_cast<int>(edges_.size()) != parent.edge_count() || static_cast<int>(faces_.size()) != parent.face_count())
    return false;
  for (int e = 0; e < parent.edge_count(); ++e)
    if (edges_[e] && (!vertices_[parent.edge(e).source] || !vertices_[parent.edge(e).target])) return false;
  for (int f = 0; f < parent.face_count(); ++f)
    if (faces_[f])
      for (const auto& se : parent.face(f).word)
        if (!edges_[se.edge]) return false;
  return true;
}

bool Subcomplex::contains(const Subcomplex& other) const {
  auto sub = [](const std::vector<bool>& big, const std::vector<bool>& small) {
    if (big.size() != small.size()) return false;
    for (std::size_t i = 0; i < big.size(); ++i)
      if (small[i] && !big[i]) return false;
    return true;
  };
  return sub(vertices_, other.vertices_) && sub(edges_, other.edges_) && sub(faces_, other.faces_);
}

Subcomplex induced_subcomplex(const TwoComplex& complex, const CellSet& cells) {
  Subcomplex sub(complex);
  for (int v : cells.vertices) {
    if (v < 0 || v >= complex.vertex_count()) throw Error(ErrorKind::UnknownCell, "unknown vertex id " + std::to_string(v));
    sub.vertices_[v] = true;
  }
  for (int e : cells.edges) {
    if (e < 0 || e >= complex.edge_count()) throw Error(ErrorKind::UnknownCell, "unknown edge id " + std::to_string(e));
    sub.edges_[e] = true;
  }
  for (int f : cells.faces) {
    if (f < 0 || f >= complex.face_count()) throw Error(ErrorKind::UnknownCell, "unknown face id " + std::to_string(f));
    sub.faces_[f] = true;
    for (const auto& se : complex.face(f).word) sub.edges_[se.edge] = true;
  }
  for (int e = 0; e < complex.edge_count(); ++e)
    if (sub.edges_[e]) {
      sub.vertices_[complex.edge(e).source] = true;
      sub.vertices_[complex.edge(e).target] = true;
    }
  return sub;
}

Subcomplex full_subcomplex(const TwoComplex& complex) {
  Subcomplex sub(complex);
  std::fill(sub.vertices_.begin(), sub.vertices_.end(), true);
  std::fill(sub.edges_.begin(), sub.edges_.end(), true);
  std::fill(sub.faces_.begin(), sub.faces_.end(), true);
  return sub;
}

Subcomplex boundary_subcomplex(const TwoComplex& complex) {
  const auto count = complex.side_incidences();
  CellSet cells;
  for (int e = 0; e < complex.edge_count(); ++e)
    if (count[e] == 1) cells.edges.push_back(e);
  return induced_subcomplex(complex, cells);
}

Subcomplex subcomplex_union(const Subcomplex& a, const Subcomplex& b) {
  Subcomplex out = a;
  for (std::size_t i = 0; i < out.vertices_.size(); ++i) out.vertices_[i] = a.vertices_[i] || b.vertices_.at(i);
  for (std::size_t i = 0; i < out.edges_.size(); ++i) out.edges_[i] = a.edges_[i] || b.edges_.at(i);
  for (std::size_t i = 0; i < out.faces_.size(); ++i) out.faces_[i] = a.faces_[i] || b.faces_.at(i);
  return out;
}

Subcomplex subcomplex_intersection(const Subcomplex& a, const Subcomplex& b) {
  Subcomplex out = a;
  for (std::size_t i = 0; i < out.vertices_.size(); ++i) out.vertices_[i] = a.vertices_[i] && b.vertices_.at(i);
  for (std::size_t i = 0; i < out.edges_.size(); ++i) out.edges_[i] = a.edges_[i] && b.edges_.at(i);
  for (std::size_t i = 0; i < out.faces_.size(); ++i) out.faces_[i] = a.faces_[i] && b.faces_.at(i);
  return out;
}

InducedComplex extract(const TwoComplex& parent, const Subcomplex& sub) {
  if (!sub.is_subcomplex_of(parent)) throw Error(ErrorKind::NotSubcomplex, "cell set is not a subcomplex");
  InducedComplex out;
  std::vector<int> vnew(parent.vertex_count(), -1), enew(parent.edge_count(), -1);
  std::vector<std::string> names;
  for (int v = 0; v < parent.vertex_count(); ++v)
    if (sub.has_vertex(v)) {
      vnew[v] = static_cast<int>(out.vertex_map.size());
      out.vertex_map.push_back(v);
      names.push_back(parent.vertex_name(v));
    }
  std::vector<EdgeCell> edges;
  for (int e = 0; e < parent.edge_count(); ++e)
    if (sub.has_edge(e)) {
      enew[e] = static_cast<int>(out.edge_map.size());
      out.edge_map.push_back(e);
      const auto& ed = parent.edge(e);
      edges.push_back({vnew[ed.source], vnew[ed.target], ed.name});
    }
  std::vector<FaceCell> faces;
  for (int f = 0; f < parent.face_count(); ++f)
    if (sub.has_face(f)) {
      out.face_map.push_back(f);
      FaceCell fc{{}, parent.face(f).name};
      for (const auto& se : parent.face(f).word) fc.word.push_back({enew[se.edge], se.sign});
      faces.push_back(std::move(fc));
    }
  out.complex = TwoComplex(std::move(names), std::move(edges), std::move(faces));
  return out;
}

std::vector<CellSet> connected_components(const TwoComplex& complex) {
  UnionFind uf(complex.vertex_count());
  for (const auto& e : complex.edges()) uf.unite(e.source, e.target);
  std::vector<int> comp_of_root(complex.vertex_count(), -1);
  std::vector<CellSet> comps;
  for (int v = 0; v < complex.vertex_count(); ++v) {
    int r = uf.find(v);
    if (comp_of_root[r] < 0) {
      comp_of_root[r] = static_cast<int>(comps.size());
      comps.emplace_back();
    }
    comps[comp_of_root[r]].vertices.push_back(v);
  }
  for (int e = 0; e < complex.edge_count(); ++e)
    comps[comp_of_root[uf.find(complex.edge(e).source)]].edges.push_back(e);
  for (int f = 0; f < complex.face_count(); ++f)
    comps[comp_of_root[uf.find(complex.tail(complex.face(f).word.front()))]].faces.push_back(f);
  return comps;
}

int euler_characteristic(const TwoComplex& complex) {
  return complex.vertex_count() - complex.edge_count() + complex.face_count();
}

int reduced_euler(const TwoComplex& complex) {
  if (!surface_check(complex).is_surface)
    throw Error(ErrorKind::NotSurface, "reduced Euler characteristic needs a surface");
  int total = 0;
  for (const auto& c : connected_components(complex)) {
    int chi = static_cast<int>(c.vertices.size()) - static_cast<int>(c.edges.size()) + static_cast<int>(c.faces.size());
    total += std::min(0, chi);
  }
  return total;
}

TwoComplex disjoint_union(const TwoComplex& a, const TwoComplex& b) {
  std::vector<std::string> names;
  std::vector<EdgeCell> edges;
  std::vector<FaceCell> faces;
  auto append = [&](const TwoComplex& x, const std::string& suffix) {
    const int v0 = static_cast<int>(names.size());
    const int e0 = static_cast<int>(edges.size());
    for (int v = 0; v < x.vertex_count(); ++v) names.push_back(x.vertex_name(v) + suffix);
    for (const auto& e : x.edges()) edges.push_back({e.source + v0, e.target + v0, e.name + suffix});
    for (const auto& f : x.faces()) {
      FaceCell fc{{}, f.name + suffix};
      for (const auto& se : f.word) fc.word.push_back({se.edge + e0, se.sign});
      faces.push_back(std::move(fc));
    }
  };
  append(a, "_1");
  append(b, "_2");
  return TwoComplex(std::move(names), std::move(edges), std::move(faces));
}

}  // namespace scltopo
