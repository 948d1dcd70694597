// Executable verifiers: containment of standard-form admissible surfaces in a
// subsurface, H1-injectivity of inclusions, and the scl / relative-norm
// isometry harnesses built on free bases read off spines.
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scltopo/admsurf.hpp"
#include "scltopo/sclopt.hpp"

namespace scltopo {

/// Free basis of pi_1 of a complex that collapses onto a graph: a breadth-first
/// maximal tree from the lowest vertex is contracted, and 2-cells are removed
/// together with an edge they traverse exactly once that no other remaining
/// 2-cell traverses. Surviving edges become letters a, b, ... in edge order.
struct FreeBasis {
  int base = 0;
  std::vector<int> generators;          // edge id per letter
  std::vector<std::string> edge_words;  // word in the letters per edge
  std::vector<EdgeWord> tree_paths;     // tree path from the base per vertex
  std::string letters() const;
  /// Word of an edge path (free-reduced).
  std::string path_word(const EdgeWord& path) const;
  /// Based loop that the letter's edge closes up with the tree.
  EdgeWord generator_loop(const TwoComplex& complex, int letter) const;
};

/// Throws Precondition when the complex is disconnected, does not collapse
/// onto a graph, or needs more than 26 letters.
FreeBasis spine_basis(const TwoComplex& complex);

/// pi_1(T) -> pi_1(S) in the spine bases of T (as its own complex) and S.
struct InclusionWordMap {
  InducedComplex sub;
  FreeBasis sub_basis, ambient_basis;
  std::vector<std::string> images;  // per letter of sub_basis
  std::string map_word(std::string_view word) const;
  OneChain map_chain(const OneChain& chain) const;
};
InclusionWordMap inclusion_word_map(const TwoComplex& ambient, const Subcomplex& sub);

struct InjectivityReport {
  int h1_sub = 0, h1_ambient = 0, image_rank = 0;
  int relative_h2 = 0;
  bool ambient_has_boundary = false;
  bool injective() const { return image_rank == h1_sub; }
  /// Injective with nonempty boundary forces H2(S, T; Q) = 0.
  bool implication_holds() const { return !ambient_has_boundary || !injective() || relative_h2 == 0; }
  std::string to_text() const;
};
/// Throws Internal if the implication fails on a pair with boundary.
InjectivityReport check_h1_injectivity(const TwoComplex& ambient, const Subcomplex& sub);

/// Moves a surface whose pieces all lie over `sub` onto the extracted
/// complex; Precondition error otherwise.
AdmissibleData restrict_surface(const AdmissibleData& data, const InducedComplex& sub);
/// Inverse of restrict_surface: re-targets a surface over the extracted
/// complex into its parent.
AdmissibleData transport_surface(const AdmissibleData& data, const InducedComplex& sub, const TwoComplex& parent);

enum class ContainmentMode { Standard, Perfect };
std::string to_string(ContainmentMode mode);
ContainmentMode parse_mode(std::string_view text);

struct ContainmentReport {
  ContainmentMode mode = ContainmentMode::Standard;
  Ring ring = Ring::Q;
  CellSet image;        // S0
  CellSet image_in_sub;  // T0 = S0 n T
  bool small_links = false;
  bool orientable = false;
  bool hypothesis = false;
  int relative_h2 = 0;                // H2(S, T) rank (mode standard)
  std::vector<int> class_outside;     // faces outside T carrying the class (mode perfect)
  bool claim_boundary = false;        // every edge of dS0 carries a free handle side
  std::vector<int> uncovered_edges;
  bool claim_no_isolated = false;     // every 0/1-cell of S0 meets a 2-cell of S0
  std::vector<std::pair<int, bool>> face_verdicts;  // S0 face, lies in T (proof path)
  bool proof_contained = false;
  bool direct_contained = false;
  /// The proof path concludes only under the hypothesis.
  bool agree() const { return !hypothesis || proof_contained == direct_contained; }
  /// "contained", "hypothesis fails" or "not contained".
  std::string verdict() const;
  std::string to_text(const TwoComplex& ambient) const;
};

/// Runs the containment argument for a standard-form surface whose boundary
/// maps into T, then rechecks the image cell by cell. Precondition errors for
/// an unmet standard-form requirement or boundary outside T; a failed
/// homological hypothesis is a negative verdict.
ContainmentReport verify_theorem_main(const AdmissibleSurface& surface, const Subcomplex& sub, Ring ring,
                                      ContainmentMode mode);

struct TheoremARow {
  OneChain chain, image;
  bool boundary = false;  // zero class in H1
  SclResult sub, ambient;
  bool consistent() const;  // equal values, or infinite on both sides
};
struct TheoremAReport {
  InjectivityReport injectivity;
  std::string sub_letters, ambient_letters;
  std::vector<std::string> images;
  std::vector<TheoremARow> rows;
  bool ok() const;
  std::string to_text() const;
};
/// Chains are written in the spine letters of T.
TheoremAReport theorem_a_harness(const TwoComplex& ambient, const Subcomplex& sub, const std::vector<OneChain>& chains);
/// Homologically trivial chains (words of length <= 8) in 2*genus letters.
std::vector<OneChain> theorem_a_corpus(int genus);
/// Chains that are not boundaries; infinite on both sides.
std::vector<OneChain> theorem_a_non_boundaries(int genus);

struct TheoremBWitness {
  std::string name;
  Rational sub_bound, ambient_bound;  // -2 chi^- / n on each side
  std::vector<Rational> sub_coordinates, ambient_coordinates;
  bool coordinates_match = false;     // ambient = iota(sub)
  std::optional<ContainmentReport> containment;  // mode perfect, when the class hypothesis applies
};
struct TheoremBReport {
  int sub_rank = 0, ambient_rank = 0, image_rank = 0;
  std::vector<TheoremBWitness> witnesses;
  std::string scope;
  bool injective() const { return image_rank == sub_rank; }
  bool ok() const;
  std::string to_text() const;
};
/// Witnesses are surfaces over the ambient complex lying in T; each is
/// restricted to T and transported back. The norm itself is not computed.
TheoremBReport theorem_b_harness(const TwoComplex& ambient, const Subcomplex& sub,
                                 const std::vector<std::pair<std::string, AdmissibleData>>& witnesses);

/// Fundamental-class generator of H2(S; Q), when rank one.
std::optional<ChainVec> h2_generator(const TwoComplex& complex);

struct NonIsometryReport {
  InjectivityReport injectivity;
  std::vector<Rational> t_coordinates, sigma_coordinates, fundamental_image;
  bool classes_differ_by_fundamental = false;
  bool ok() const {
    return injectivity.injective() && injectivity.relative_h2 == 1 && classes_differ_by_fundamental;
  }
  std::string to_text() const;
};
/// The closed genus-3 example: T = closure of f1, witnesses T-itself and the
/// genus-one surface over f2.
NonIsometryReport non_isometry_example();

}  // namespace scltopo
