// Rewriting moves on admissible surfaces: trivial-component removal, fold
// elimination, the connected-links move, boundary thickening, standard form
// and asymptotic promotion to orientation-perfect form, with an audit log.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scltopo/admsurf.hpp"

namespace scltopo {

struct SurfaceMetrics {
  int chi_minus = 0;         // reduced Euler characteristic (<= 0)
  std::vector<int> degrees;  // per circle
  int positive = 0, negative = 0;
  int link_excess = 0;  // sum over vertex discs of (link components - 1)
  int vpieces = 0;
  std::vector<Rational> coordinates;  // pushforward class in H2(S, c; Q)

  static SurfaceMetrics of(const AdmissibleSurface& surface);
  int fpieces() const { return positive + negative; }
};

enum class ClassChange { Kept, Scaled, Changed };

struct MoveEntry {
  std::string name;
  std::string args;
  SurfaceMetrics before, after;
  ClassChange class_change = ClassChange::Kept;
  std::string to_text() const;
};

struct MoveLog {
  std::vector<MoveEntry> entries;
  bool empty() const { return entries.empty(); }
  void append(const MoveLog& other) { entries.insert(entries.end(), other.entries.begin(), other.entries.end()); }
  /// One `move ...` line per entry.
  std::string to_text() const;
};

/// Pieces of the chosen components, renumbered, with their boundary data.
AdmissibleData extract_components(const AdmissibleSurface& surface, const std::vector<int>& components);

/// Drops every component with chi > 0; refuses (MoveNotApplicable) when that
/// would change the pushforward class.
AdmissibleSurface remove_trivial_components(const AdmissibleSurface& surface, MoveLog* log = nullptr);

/// Lowest pair (positive, negative) of cellular discs over one face sharing a
/// handle, if any.
std::optional<std::pair<int, int>> find_fold(const AdmissibleSurface& surface);

/// Deletes two adjacent opposite cellular discs over one face and splices
/// their remaining sides pairwise.
AdmissibleSurface eliminate_fold(const AdmissibleSurface& surface, int d1, int d2, MoveLog* log = nullptr);

enum class LinkPolicy { Positive, Negative };

/// Joins two link components of vertex disc `vpiece` by sweeping the lowest
/// free arc of the disc across the faces around its vertex, adding cellular
/// discs of the policy's sign.
AdmissibleSurface connect_link(const AdmissibleSurface& surface, int vpiece, LinkPolicy policy = LinkPolicy::Positive,
                               MoveLog* log = nullptr);

/// Glues a collar onto every boundary edge; cells of the input keep their ids.
TwoComplex thicken_boundary(const TwoComplex& target);
/// Same pieces over a target containing the old one with the same ids.
AdmissibleSurface retarget(const AdmissibleSurface& surface, const TwoComplex& target);

struct NormalForm {
  AdmissibleSurface surface;
  MoveLog log;
};
/// Alternates trivial-component removal, the connected-links move and fold
/// elimination until the surface is disc/sphere-free, non-folded and has
/// connected links.
NormalForm make_standard_form(const AdmissibleSurface& surface);

/// Lexicographic termination potential of make_standard_form.
std::vector<int> standard_form_potential(const SurfaceMetrics& m);

/// Degree-N cover: a connected cyclic cover of each component when one
/// exists, disjoint copies otherwise.
AdmissibleSurface cyclic_cover(const AdmissibleSurface& surface, int n, MoveLog* log = nullptr);

/// Removes non-adjacent opposite discs d1, d2 over one face and glues the two
/// resulting boundary circles.
AdmissibleSurface glue_opposite(const AdmissibleSurface& surface, int d1, int d2, MoveLog* log = nullptr);

/// Reduced Euler characteristic of the complex obtained from the assembled
/// surface by removing d1, d2 and identifying their boundary circles.
int glued_complex_chi_minus(const AdmissibleSurface& surface, int d1, int d2);

struct Promotion {
  AdmissibleSurface surface;
  MoveLog log;
  int cover_degree = 1;
  int gluings = 0;
  std::optional<Rational> ratio_before, ratio_after;
  /// ratio_before + 2 * gluings / (cover_degree * n).
  std::optional<Rational> bound;
};
Promotion promote_orientation_perfect(const AdmissibleSurface& surface, const Rational& eps);

/// -chi^-(S) / n(S), when the common degree n is positive.
std::optional<Rational> ratio(const AdmissibleSurface& surface);

struct ComponentChoice {
  AdmissibleSurface surface;
  int component = 0;
  Rational ratio;
};
ComponentChoice best_connected_component(const AdmissibleSurface& surface);

}  // namespace scltopo
