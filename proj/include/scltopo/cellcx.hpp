// Finite combinatorial 2-complexes: cells, vertex links, boundary and
// subcomplexes, and the surface / small-links criteria.
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scltopo/arith.hpp"

namespace scltopo {

/// An oriented edge occurrence: `sign` is +1 for the edge as declared and
/// -1 for its reverse.
struct SignedEdge {
  int edge = 0;
  int sign = 1;

  SignedEdge inverse() const { return {edge, -sign}; }
  friend bool operator==(const SignedEdge&, const SignedEdge&) = default;
  friend auto operator<=>(const SignedEdge&, const SignedEdge&) = default;
};

using EdgeWord = std::vector<SignedEdge>;

struct EdgeCell {
  int source = 0;
  int target = 0;
  std::string name;
};

struct FaceCell {
  EdgeWord word;
  std::string name;
  std::size_t degree() const { return word.size(); }
};

/// Name-based description, as read from a `.2cx` file.
struct ComplexSpec {
  struct EdgeDecl {
    std::string name, source, target;
  };
  struct FaceDecl {
    std::string name;
    std::vector<std::pair<std::string, int>> word;
  };
  std::vector<std::string> vertices;
  std::vector<EdgeDecl> edges;
  std::vector<FaceDecl> faces;
};

/// Immutable finite 2-complex whose 2-cells are attached along closed edge
/// paths. Ids are dense indices in input order.
class TwoComplex {
 public:
  TwoComplex() = default;
  /// Validates every invariant; throws Error(InvalidComplex) on failure.
  TwoComplex(std::vector<std::string> vertex_names, std::vector<EdgeCell> edges,
             std::vector<FaceCell> faces);

  int vertex_count() const { return static_cast<int>(vertex_names_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int face_count() const { return static_cast<int>(faces_.size()); }

  const std::string& vertex_name(int v) const { return vertex_names_.at(v); }
  const EdgeCell& edge(int e) const { return edges_.at(e); }
  const FaceCell& face(int f) const { return faces_.at(f); }
  const std::vector<EdgeCell>& edges() const { return edges_; }
  const std::vector<FaceCell>& faces() const { return faces_; }

  std::optional<int> find_vertex(std::string_view name) const;
  std::optional<int> find_edge(std::string_view name) const;
  std::optional<int> find_face(std::string_view name) const;

  /// Vertex at which the signed edge starts / ends.
  int tail(SignedEdge se) const { return se.sign > 0 ? edges_[se.edge].source : edges_[se.edge].target; }
  int head(SignedEdge se) const { return se.sign > 0 ? edges_[se.edge].target : edges_[se.edge].source; }

  /// Number of (face, side) incidences of each edge, with multiplicity.
  std::vector<int> side_incidences() const;

  /// True when `word` is a nonempty closed edge path.
  bool is_closed_path(const EdgeWord& word) const;

 private:
  std::vector<std::string> vertex_names_;
  std::vector<EdgeCell> edges_;
  std::vector<FaceCell> faces_;
};

TwoComplex build_complex(const ComplexSpec& spec);
ComplexSpec parse_2cx(std::string_view text);
/// Canonical text; parse_2cx(print_2cx(X)) rebuilds X and prints identically.
std::string print_2cx(const TwoComplex& complex);

/// Link of a vertex. Link vertices are the half-edges leaving the base vertex
/// (a loop contributes two); each corner of a face at the base vertex gives
/// one link edge, tagged with its provenance.
struct LinkGraph {
  struct Edge {
    int a = 0;  // index into vertices: out(e_k)
    int b = 0;  // index into vertices: out(e_{k-1}^{-1})
    int face = 0;
    int corner = 0;
  };
  int base = 0;
  std::vector<SignedEdge> vertices;
  std::vector<Edge> edges;

  std::optional<int> index_of(SignedEdge half_edge) const;
  std::vector<int> degrees() const;
  /// Component label per link vertex, labels 0.. in order of first vertex.
  std::vector<int> component_labels() const;
  int component_count() const;
};

LinkGraph link_graph(const TwoComplex& complex, int vertex);

struct SmallLinksReport {
  bool small = true;
  std::optional<int> witness_edge;
};

/// Edge-count formulation: every edge has at most two side-incidences.
SmallLinksReport has_small_links(const TwoComplex& complex);
/// Link formulation: every vertex link is a disjoint union of arcs and circles.
bool links_are_arcs_and_circles(const TwoComplex& complex);

struct SurfaceReport {
  bool is_surface = true;
  std::vector<int> boundary_vertices;
  struct Witness {
    int vertex;
    std::string reason;
  };
  std::vector<Witness> witnesses;
};

SurfaceReport surface_check(const TwoComplex& complex);

/// A set of cells of a parent complex; closed under taking faces when it is
/// a genuine subcomplex.
struct CellSet {
  std::vector<int> vertices;
  std::vector<int> edges;
  std::vector<int> faces;
};

class Subcomplex {
 public:
  Subcomplex() = default;
  /// Empty subcomplex of `parent`.
  explicit Subcomplex(const TwoComplex& parent);

  bool has_vertex(int v) const { return vertices_.at(v); }
  bool has_edge(int e) const { return edges_.at(e); }
  bool has_face(int f) const { return faces_.at(f); }
  const std::vector<bool>& vertex_mask() const { return vertices_; }
  const std::vector<bool>& edge_mask() const { return edges_; }
  const std::vector<bool>& face_mask() const { return faces_; }

  CellSet cells() const;
  bool empty() const;
  std::size_t cell_count() const;
  /// True when the masks are closed and sized for `parent`.
  bool is_subcomplex_of(const TwoComplex& parent) const;
  bool contains(const Subcomplex& other) const;

  friend bool operator==(const Subcomplex&, const Subcomplex&) = default;

  friend Subcomplex induced_subcomplex(const TwoComplex&, const CellSet&);
  friend Subcomplex boundary_subcomplex(const TwoComplex&);
  friend Subcomplex subcomplex_union(const Subcomplex&, const Subcomplex&);
  friend Subcomplex subcomplex_intersection(const Subcomplex&, const Subcomplex&);
  friend Subcomplex full_subcomplex(const TwoComplex&);

 private:
  std::vector<bool> vertices_, edges_, faces_;
};

/// Closure of `cells` under the face-boundary and edge-endpoint relations.
Subcomplex induced_subcomplex(const TwoComplex& complex, const CellSet& cells);
Subcomplex full_subcomplex(const TwoComplex& complex);
/// Edges with exactly one (face, side) incidence, plus their endpoints.
Subcomplex boundary_subcomplex(const TwoComplex& complex);
Subcomplex subcomplex_union(const Subcomplex& a, const Subcomplex& b);
Subcomplex subcomplex_intersection(const Subcomplex& a, const Subcomplex& b);

/// A subcomplex realized as a complex of its own, with maps back to the
/// parent's ids.
struct InducedComplex {
  TwoComplex complex;
  std::vector<int> vertex_map, edge_map, face_map;  // new id -> parent id
};
InducedComplex extract(const TwoComplex& parent, const Subcomplex& sub);

/// `.cells` text: `vertex|edge|face <name>` lines; the result is their closure.
Subcomplex parse_cells(const TwoComplex& complex, std::string_view text);
/// One line per cell of `sub`, vertices then edges then faces.
std::string print_cells(const TwoComplex& complex, const Subcomplex& sub);

/// Components ordered by their lowest vertex id.
std::vector<CellSet> connected_components(const TwoComplex& complex);

int euler_characteristic(const TwoComplex& complex);
/// Sum of min(0, chi) over components; requires a surface.
int reduced_euler(const TwoComplex& complex);

TwoComplex disjoint_union(const TwoComplex& a, const TwoComplex& b);

}  // namespace scltopo
