// Transverse admissible surfaces built from vertex discs (vpieces), 1-handles
// (hpieces) and cellular discs (fpieces), and their analysis.
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scltopo/cellcx.hpp"
#include "scltopo/homlin.hpp"

namespace scltopo {

enum class Side { L, R };  // left / right of the handle's edge, read forward

/// End 0 of a handle sits over the source of its edge, end 1 over the target.
struct HandleEnd {
  int handle = 0;
  int end = 0;
  friend bool operator==(const HandleEnd&, const HandleEnd&) = default;
};

struct CornerRef {
  int fpiece = 0;
  int corner = 0;  // corner k sits at the tail of the face's k-th letter
  friend bool operator==(const CornerRef&, const CornerRef&) = default;
};

struct SideRef {
  int fpiece = 0;
  int side = 0;
  friend bool operator==(const SideRef&, const SideRef&) = default;
};

/// A vertex disc. `ends[t]` is followed counterclockwise by `gaps[t]`, which is
/// either a free boundary arc (nullopt) or a corner of a cellular disc.
struct VPiece {
  std::string name;
  int vertex = 0;
  std::vector<HandleEnd> ends;
  std::vector<std::optional<CornerRef>> gaps;
};

struct HPiece {
  std::string name;
  int edge = 0;
  std::optional<SideRef> left, right;
};

struct FPiece {
  std::string name;
  int face = 0;
  int sign = 1;
  std::vector<int> handles;  // handle glued along side k, aligned with the face word
};

/// Identifies one boundary circuit: a free long side of a handle, or a
/// handle-less vertex disc.
struct Anchor {
  int handle = -1;
  Side side = Side::L;
  int vpiece = -1;
  friend bool operator==(const Anchor&, const Anchor&) = default;
};

struct BoundaryAssignment {
  Anchor anchor;
  int circle = 0;
  int degree = 1;
  /// 2-chain K of the target with word = degree * circle word - dK, recording
  /// how far the circuit has been homotoped off the circle (empty = none).
  ChainVec track{Ring::Z};
};

/// Raw piece data; may be invalid until wrapped in an AdmissibleSurface.
struct AdmissibleData {
  TwoComplex target;
  std::vector<LoopTerm> chain;
  std::vector<VPiece> vpieces;
  std::vector<HPiece> hpieces;
  std::vector<FPiece> fpieces;
  std::vector<BoundaryAssignment> boundary;
  bool incompressible = true;  // certified input attribute, not decided
};

/// One free boundary dart: a handle side traversed along (L) or against (R)
/// its edge.
struct Dart {
  int handle = 0;
  Side side = Side::L;
};

struct Circuit {
  std::vector<Dart> darts;
  std::optional<int> vpiece;  // set for a handle-less vertex disc
  EdgeWord word;              // read with the surface on the right
  int assignment = -1;        // index into boundary
};

/// Side of hpiece `h` that side `k` of fpiece `f` glues to.
Side glued_side(const TwoComplex& target, const FPiece& f, int k);

class AdmissibleSurface {
 public:
  /// Validates all gluing, orientation and boundary invariants; throws
  /// Error(InvalidSurface) on failure.
  explicit AdmissibleSurface(AdmissibleData data);
  /// Validates pieces and traces circuits without checking boundary data.
  static std::vector<Circuit> trace(AdmissibleData data);

  const AdmissibleData& data() const { return data_; }
  const TwoComplex& target() const { return data_.target; }
  int vpiece_count() const { return static_cast<int>(data_.vpieces.size()); }
  int hpiece_count() const { return static_cast<int>(data_.hpieces.size()); }
  int fpiece_count() const { return static_cast<int>(data_.fpieces.size()); }
  int circle_count() const { return static_cast<int>(data_.chain.size()); }

  const std::vector<Circuit>& circuits() const { return circuits_; }
  /// (vpiece, slot) holding each handle end.
  std::pair<int, int> locate(HandleEnd he) const { return end_location_.at(2 * he.handle + he.end); }

  int euler_characteristic() const { return vpiece_count() - hpiece_count() + fpiece_count(); }
  /// Piece ids per connected component, ordered by lowest vpiece id.
  struct Component {
    std::vector<int> vpieces, hpieces, fpieces;
    int euler() const {
      return static_cast<int>(vpieces.size()) - static_cast<int>(hpieces.size()) + static_cast<int>(fpieces.size());
    }
  };
  const std::vector<Component>& components() const { return components_; }
  int component_of_vpiece(int v) const { return vpiece_component_.at(v); }

 private:
  AdmissibleSurface(AdmissibleData data, bool check_boundary_data);
  void validate();
  void trace_circuits();
  void check_boundary();
  void find_components();

  AdmissibleData data_;
  std::vector<std::pair<int, int>> end_location_;
  std::vector<Circuit> circuits_;
  std::vector<Component> components_;
  std::vector<int> vpiece_component_;
};

AdmissibleSurface build_admissible(AdmissibleData data);

/// `.adm` text: the target complex (`vertex`/`edge`/`face`), `loop` chain
/// terms, then `vdisc`, `handle`, `cdisc` and `bdry` stanzas.
AdmissibleData parse_adm(std::string_view text);
std::string print_adm(const AdmissibleData& data);

/// Assembled surface: every piece subdivided into an honest 2-cell.
TwoComplex assemble(const AdmissibleSurface& surface);

int reduced_euler(const AdmissibleSurface& surface);

struct DegreeInfo {
  std::vector<int> per_circle;
  std::optional<int> n;  // common value, when all circles agree
  bool scl_admissible = false;  // common value exists and is positive
};
DegreeInfo degree(const AdmissibleSurface& surface);

struct PushforwardClass {
  ChainVec two_chain;                 // sum of sign * face over fpieces
  std::vector<Rational> cone_cycle;   // closed up with the boundary degrees
  std::vector<Rational> coordinates;  // in the cone's H2 basis
  std::vector<Rational> degrees;      // per circle
};
PushforwardClass pushforward_class(const AdmissibleSurface& surface);

struct BarComplex {
  TwoComplex complex;
  std::vector<int> vertex_map, edge_map, face_map;  // into the target
  std::vector<int> face_sign;
  /// Link component count at each vertex (= vpiece); 0 for a bare vertex.
  std::vector<int> link_components;
};
BarComplex collapse(const AdmissibleSurface& surface);

struct StandardFormReport {
  bool transverse = true;
  bool incompressible_certified = true;
  bool disc_sphere_free = true;
  bool monotone = true;
  bool connected_links = true;
  bool non_folded = true;
  bool orientation_perfect = true;
  std::vector<int> trivial_components;  // component indices with chi > 0
  std::vector<int> non_monotone_circles;
  std::vector<int> disconnected_vpieces;
  std::vector<int> folded_components;
  std::vector<int> mixed_faces;  // target faces with fpieces of both signs
  bool standard() const { return disc_sphere_free && connected_links && non_folded; }
  std::string to_text() const;
};
StandardFormReport standard_form_report(const AdmissibleSurface& surface);

// Construction helpers.

/// Sets every handle side reference from the fpieces' handle lists.
void glue_sides(AdmissibleData& data);
/// Corner following a handle end counterclockwise, and the end after it, when
/// the end's after-side is glued.
std::optional<std::pair<CornerRef, HandleEnd>> corner_after(const AdmissibleData& data, HandleEnd end);
/// Vertex disc whose slots follow corners from each start until a free side,
/// the resulting runs joined by free arcs in the given order.
VPiece make_vpiece(const AdmissibleData& data, std::string name, int vertex, const std::vector<HandleEnd>& starts);
/// Places every handle end not yet in a vertex disc: each maximal run of
/// corners starting at a free side becomes its own disc, then each closed
/// cycle of corners.
void complete_vpieces(AdmissibleData& data);
/// Assigns each boundary circuit to the first circle whose word, to some
/// power, it matches (empty circuits get circle 0, degree 0).
void infer_boundary(AdmissibleData& data);
/// Disjoint union of two surfaces over the same target and chain.
AdmissibleData disjoint_union(const AdmissibleData& a, const AdmissibleData& b);
/// Assigns every boundary circuit, in trace order, to `circle` with `degree`
/// (0 for empty circuits).
void assign_all_boundary(AdmissibleData& data, int circle, int degree);

/// Target vertices lying on the boundary of the target surface.
std::vector<bool> boundary_vertex_mask(const TwoComplex& target);

}  // namespace scltopo
