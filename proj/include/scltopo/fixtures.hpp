// Named complexes and admissible surfaces used by tests, harnesses and the CLI.
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "scltopo/admsurf.hpp"
#include "scltopo/cellcx.hpp"

namespace scltopo::fixtures {

// Complexes.
TwoComplex torus();
TwoComplex rp2();
/// Triangle with three vertices.
TwoComplex disc();
/// Two triangles glued along their boundary.
TwoComplex sphere();
/// One vertex, face [a1,b1]...[ag,bg] c^-1.
TwoComplex sg1b(int g);
/// One vertex, face [a1,b1]...[ag,bg].
TwoComplex closed_surface(int g);
/// Genus-3 closed surface: f1 = [a1,b1][a2,b2] c^-1, f2 = c [a3,b3].
TwoComplex closed_s3();
/// Genus g+1 with boundary c: g1 = [a1,b1]...[ag,bg] d^-1, g2 = d [a,b] c^-1.
TwoComplex nested_pair(int g);
/// Fan with a collar: centre v, triangles t_i = e_i r_i e_{i+1}^-1 around v,
/// quadrilaterals q_i = s_i o_i s_{i+1}^-1 r_i^-1 outside the rim.
TwoComplex fan(int spokes);
TwoComplex fan_square();
/// Three squares sharing one edge.
TwoComplex three_squares();
/// Two triangles meeting in a single vertex.
TwoComplex pinched_triangles();
TwoComplex torus_plus_rp2();

/// Closure of the named faces.
Subcomplex face_closure(const TwoComplex& complex, const std::vector<std::string>& faces);
/// T = closure of f1 in closed_s3().
Subcomplex closed_s3_t(const TwoComplex& s3);
/// Closure of f2 in closed_s3().
Subcomplex closed_s3_sigma(const TwoComplex& s3);
/// Closure of g1 in nested_pair(g).
Subcomplex nested_inner(const TwoComplex& pair);

// Surfaces.

/// One handle per edge of the given faces, one cellular disc per (face, sign),
/// vertex discs completed and boundary inferred from the chain.
AdmissibleData surface_over(const TwoComplex& target, std::vector<LoopTerm> chain,
                            const std::vector<std::pair<std::string, int>>& faces);
LoopTerm loop(const TwoComplex& target, int coefficient, const std::string& signed_edges);

/// Sg1b(2)-part of closed_s3() as an admissible surface for the loop c.
AdmissibleData t_itself();
/// Genus one, one boundary component, over f2 with sign -1.
AdmissibleData sigma_genus1();
/// Closed genus-3 surface over closed_s3() with both faces at sign -1.
AdmissibleData closed_mirror();
/// t_itself() with a bubble folded over f2 on the free side of c.
AdmissibleData fold();
/// Annulus over c with a bubble on each side.
AdmissibleData double_fold();
/// Annulus over c in closed_s3() with no cellular discs.
AdmissibleData trivial_annulus();
/// Annulus over fan_square() whose central vertex disc carries two
/// opposite-sign discs in distinct link components.
AdmissibleData figlnk();
/// Inner surface of nested_pair(g) as an admissible surface for d.
AdmissibleData t_itself_nested(int g);
/// t_itself_nested(g) with a bubble folded over g2 on the free side of d.
AdmissibleData nested_fold(int g);
/// Sg1b(g) as an admissible surface over itself for c.
AdmissibleData sg1b_itself(int g);
/// Handle-less vertex disc over `vertex`.
AdmissibleData disc_over_vertex(const AdmissibleData& base, int vertex);

/// Glues a cancelling pair of cellular discs over `face` onto the free `side`
/// of `handle` (the face word must contain the handle's edge with a matching
/// sign); the outer disc takes a fresh handle for that side.
AdmissibleData add_bubble(const AdmissibleData& data, int handle, Side side, int face, int position);
/// Random base surface carrying 1..3 bubbles; deterministic in `seed`.
AdmissibleData random_fold(std::uint64_t seed);

struct NamedComplex {
  std::string name;
  std::function<TwoComplex()> make;
};
struct NamedSurface {
  std::string name;
  std::function<AdmissibleData()> make;
};
struct NamedSubcomplex {
  std::string name;
  std::string complex;  // registry name of the parent
  std::function<Subcomplex(const TwoComplex&)> make;
};
const std::vector<NamedComplex>& complex_registry();
const std::vector<NamedSurface>& surface_registry();
const std::vector<NamedSubcomplex>& subcomplex_registry();

}  // namespace scltopo::fixtures
