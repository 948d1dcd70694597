// Stable commutator length of integral chains in free groups: exact LP value
// with a replayable certificate, surface upper bounds, and the cellular-area
// rotation quasimorphism as an independent lower bound.
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scltopo/admsurf.hpp"
#include "scltopo/rational_lp.hpp"

namespace scltopo {

/// Words use one lowercase letter per generator and the uppercase letter for
/// its inverse.
struct ChainTerm {
  int coefficient = 1;
  std::string word;
  friend bool operator==(const ChainTerm&, const ChainTerm&) = default;
};

struct OneChain {
  std::string basis;  // ordered generator letters
  std::vector<ChainTerm> terms;
};

std::string free_reduce(std::string_view word);
std::string cyclic_reduce(std::string_view word);
std::string inverse_word(std::string_view word);
bool cyclic_equal(std::string_view a, std::string_view b);

/// Grammar: terms separated by `+`/`-`, each `[k*]word`; a word is a product
/// of letters, `[u,v]` commutators and `(u)` groups, each optionally raised to
/// `^k`. Words are cyclically reduced and terms equal up to cyclic rotation
/// (or inversion, with the sign flipped) are merged. An empty `basis` means
/// the letters that occur, sorted.
OneChain parse_chain(std::string_view text, std::string_view basis = {});
std::string print_chain(const OneChain& chain);

/// Coefficient-weighted exponent sum per basis generator.
std::vector<Integer> homology_class(const OneChain& chain);

struct SclResult {
  bool infinite = false;
  Rational value;
  RationalLp lp;
  LpCertificate certificate;
  /// Rectangle variables and non-rectangle piece variables.
  int rectangles = 0, pieces = 0;
};

/// Piece families for the scl LP. Polygons lists every simple cycle of
/// rectangle sides and is exponential in the chain length; Triangles cuts each
/// polygon into a fan from its lowest corner, so pieces are monogons, bigons
/// and triangles glued along diagonals, polynomially many.
enum class SclMethod { Triangles, Polygons };

/// scl in the free group on the chain's basis. The LP ranges over surfaces
/// glued from rectangles (pairs of inverse letters) and disc pieces along
/// rectangle sides; the objective is -chi / 2 with every letter covered
/// coefficient-many times. The polygon family refuses chains past a fixed
/// cycle budget with a Precondition error.
SclResult scl_lp(const OneChain& chain, SclMethod method = SclMethod::Triangles);

/// -chi^-(S) / 2n(S); Precondition error unless the degree is uniform and
/// positive.
Rational scl_upper_from_surface(const AdmissibleSurface& surface);

/// Face areas in units of pi on a surface with H2 = 0.
struct RotStructure {
  TwoComplex surface;
  std::vector<Rational> weights;
  /// Weight proportional to (degree - 2), scaled to total -2 chi.
  static RotStructure balanced(const TwoComplex& surface);
  /// Throws Precondition when weights are not positive, do not sum to
  /// -2 chi, or H2 is nonzero.
  void validate() const;
};

/// Area of the unique 2-chain bounded by the loops (read with the surface on
/// the right), divided by 2 pi.
Rational rot_value(const RotStructure& rot, const std::vector<LoopTerm>& chain);

struct Sandwich {
  Rational rot;
  Rational lower;                // |rot| / 2
  std::optional<Rational> upper;  // from the witness
  bool exact() const { return upper && *upper == lower; }
};
Sandwich bavard_sandwich(const RotStructure& rot, const std::vector<LoopTerm>& chain,
                         const AdmissibleSurface* witness = nullptr);

struct InclusionReport {
  Rational sub_value, ambient_value, gap;
  bool sub_infinite = false, ambient_infinite = false;
  bool monotone = false;  // ambient <= sub
  bool equal = false;
};
/// scl of `chain` over its own basis and over `ambient` (which must contain
/// it).
InclusionReport scl_compare_under_inclusion(const OneChain& chain, std::string_view ambient);

}  // namespace scltopo
