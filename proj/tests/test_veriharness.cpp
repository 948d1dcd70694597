#include <doctest.h>

#include "scltopo/normalize.hpp"
#include "scltopo/veriharness.hpp"
#include "support.hpp"

using namespace scltopo;
namespace fx = scltopo::fixtures;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::Internal;
}

Subcomplex edge_sub(const TwoComplex& x, const std::string& edge) {
  CellSet cells;
  cells.edges = {*x.find_edge(edge)};
  return induced_subcomplex(x, cells);
}

std::vector<std::string> boundary_edge_names(const TwoComplex& x) {
  std::vector<std::string> out;
  for (int e : boundary_subcomplex(x).cells().edges) out.push_back(x.edge(e).name);
  return out;
}

}  // namespace

TEST_CASE("fixture self-checks") {
  const TwoComplex s = fx::closed_s3();
  CHECK(euler_characteristic(s) == -4);
  const auto h = homology(s, Ring::Q);
  CHECK(h.rank(1) == 6);
  CHECK(h.rank(2) == 1);
  const TwoComplex t = extract(s, fx::closed_s3_t(s)).complex;
  CHECK(euler_characteristic(t) == -3);
  CHECK(boundary_edge_names(t) == std::vector<std::string>{"c"});
  const TwoComplex sigma = extract(s, fx::closed_s3_sigma(s)).complex;
  CHECK(euler_characteristic(sigma) == -1);
  CHECK(boundary_edge_names(sigma) == std::vector<std::string>{"c"});
  for (const auto& n : fx::surface_registry()) CHECK_NOTHROW(build_admissible(n.make()));
  for (const auto& n : fx::subcomplex_registry()) {
    const TwoComplex* parent = nullptr;
    TwoComplex x;
    for (const auto& c : fx::complex_registry())
      if (c.name == n.complex) {
        x = c.make();
        parent = &x;
      }
    REQUIRE(parent);
    CHECK_NOTHROW(n.make(x));
  }
}

TEST_CASE("spine bases") {
  CHECK(spine_basis(fx::sg1b(1)).letters() == "ab");
  CHECK(kind_of([] { spine_basis(fx::torus()); }) == ErrorKind::Precondition);
  const TwoComplex s2 = fx::sg1b(2);
  const FreeBasis b = spine_basis(s2);
  CHECK(b.letters() == "abcd");
  CHECK(b.edge_words[*s2.find_edge("c")] == "abABcdCD");
  CHECK(spine_basis(fx::disc()).letters().empty());
  CHECK(kind_of([] { spine_basis(fx::closed_surface(1)); }) == ErrorKind::Precondition);
  CHECK(kind_of([] { spine_basis(fx::torus_plus_rp2()); }) == ErrorKind::Precondition);
  for (int letter = 0; letter < 4; ++letter) {
    const EdgeWord loop = b.generator_loop(s2, letter);
    CHECK(b.path_word(loop) == std::string(1, b.letters()[letter]));
  }
}

TEST_CASE("inclusion word maps") {
  for (int g = 1; g <= 2; ++g) {
    const TwoComplex s = fx::nested_pair(g);
    const auto map = inclusion_word_map(s, fx::nested_inner(s));
    CHECK(map.sub_basis.letters().size() == static_cast<std::size_t>(2 * g));
    CHECK(map.ambient_basis.letters().size() == static_cast<std::size_t>(2 * g + 2));
    for (std::size_t i = 0; i < map.images.size(); ++i)
      CHECK(map.images[i] == std::string(1, map.sub_basis.letters()[i]));
  }
}

TEST_CASE("H1 injectivity") {
  const TwoComplex s3 = fx::closed_s3();
  const auto closed = check_h1_injectivity(s3, fx::closed_s3_t(s3));
  CHECK(closed.injective());
  CHECK(closed.relative_h2 == 1);
  CHECK_FALSE(closed.ambient_has_boundary);

  for (int g = 1; g <= 2; ++g) {
    const TwoComplex n = fx::nested_pair(g);
    const auto r = check_h1_injectivity(n, fx::nested_inner(n));
    CHECK(r.injective());
    CHECK(r.relative_h2 == 0);
    CHECK(r.ambient_has_boundary);
  }

  const TwoComplex s1 = fx::sg1b(1);
  const auto spine = check_h1_injectivity(s1, edge_sub(s1, "c"));
  CHECK_FALSE(spine.injective());
  CHECK(spine.h1_sub == 1);
  CHECK(spine.image_rank == 0);
  CHECK(spine.implication_holds());
}

TEST_CASE("property: H1-injective pairs with boundary have H2(S,T) = 0") {
  std::mt19937_64 rng(13);
  int injective = 0;
  for (const auto& x : testing::all_complexes()) {
    if (boundary_subcomplex(x).empty() || connected_components(x).size() != 1) continue;
    for (int i = 0; i < 20; ++i) {
      const Subcomplex y = testing::random_subcomplex(x, rng, 0.5);
      const auto r = check_h1_injectivity(x, y);
      CHECK(r.implication_holds());
      if (r.injective()) {
        ++injective;
        CHECK(relative_homology(x, y, Ring::Q).rank(2) == 0);
      }
    }
  }
  CHECK(injective > 0);
}

TEST_CASE("containment on pairs with H2(S,T) = 0") {
  for (int g = 1; g <= 2; ++g) {
    const TwoComplex s = fx::nested_pair(g);
    const Subcomplex t = fx::nested_inner(s);
    std::vector<AdmissibleSurface> surfaces;
    const AdmissibleSurface base = build_admissible(fx::t_itself_nested(g));
    surfaces.push_back(base);
    surfaces.push_back(cyclic_cover(base, 2));
    surfaces.push_back(build_admissible(disjoint_union(base.data(), base.data())));
    surfaces.push_back(make_standard_form(build_admissible(fx::nested_fold(g))).surface);
    for (const auto& surface : surfaces) {
      for (Ring ring : {Ring::Q, Ring::Z}) {
        const auto r = verify_theorem_main(surface, t, ring, ContainmentMode::Standard);
        CHECK(r.hypothesis);
        CHECK(r.relative_h2 == 0);
        CHECK(r.small_links);
        CHECK(r.orientable);
        CHECK(r.claim_boundary);
        CHECK(r.claim_no_isolated);
        CHECK(r.proof_contained);
        CHECK(r.direct_contained);
        CHECK(r.agree());
        CHECK(r.verdict() == "contained");
      }
      const auto p = verify_theorem_main(surface, t, Ring::Q, ContainmentMode::Perfect);
      CHECK(p.agree());
      CHECK(p.verdict() == "contained");
    }
    const AdmissibleSurface folded = build_admissible(fx::nested_fold(g));
    CHECK(kind_of([&] { verify_theorem_main(folded, t, Ring::Q, ContainmentMode::Standard); }) ==
          ErrorKind::Precondition);
  }
}

TEST_CASE("containment on the closed genus-three example") {
  const TwoComplex s3 = fx::closed_s3();
  const Subcomplex t = fx::closed_s3_t(s3);
  const AdmissibleSurface ti = build_admissible(fx::t_itself());
  const auto standard = verify_theorem_main(ti, t, Ring::Q, ContainmentMode::Standard);
  CHECK_FALSE(standard.hypothesis);
  CHECK(standard.relative_h2 == 1);
  CHECK(standard.verdict() == "hypothesis fails");
  CHECK(standard.direct_contained);
  CHECK(standard.agree());

  const auto perfect = verify_theorem_main(ti, t, Ring::Q, ContainmentMode::Perfect);
  CHECK(perfect.hypothesis);
  CHECK(perfect.class_outside.empty());
  CHECK(perfect.verdict() == "contained");
  CHECK(perfect.agree());

  const AdmissibleSurface sigma = build_admissible(fx::sigma_genus1());
  for (auto mode : {ContainmentMode::Standard, ContainmentMode::Perfect}) {
    const auto r = verify_theorem_main(sigma, t, Ring::Q, mode);
    CHECK_FALSE(r.hypothesis);
    CHECK_FALSE(r.direct_contained);
    CHECK(r.verdict() == "hypothesis fails");
  }

  CHECK(kind_of([&] { verify_theorem_main(ti, edge_sub(s3, "a1"), Ring::Q, ContainmentMode::Standard); }) ==
        ErrorKind::Precondition);
  CHECK(parse_mode("perfect") == ContainmentMode::Perfect);
  CHECK(to_string(ContainmentMode::Standard) == "standard");
  CHECK_THROWS_AS(parse_mode("loose"), Error);
}

TEST_CASE("Theorem A harness") {
  for (int g = 1; g <= 2; ++g) {
    const TwoComplex s = fx::nested_pair(g);
    const auto corpus = theorem_a_corpus(g);
    CHECK(corpus.size() >= 10);
    for (const auto& c : corpus)
      for (const auto& t : c.terms) CHECK(t.word.size() <= 8);
    const auto report = theorem_a_harness(s, fx::nested_inner(s), corpus);
    CHECK(report.ok());
    CHECK(report.injectivity.injective());
    for (const auto& row : report.rows) {
      CHECK(row.boundary);
      CHECK_FALSE(row.sub.infinite);
      CHECK(row.sub.value == row.ambient.value);
    }
    const auto non = theorem_a_harness(s, fx::nested_inner(s), theorem_a_non_boundaries(g));
    CHECK(non.ok());
    for (const auto& row : non.rows) {
      CHECK_FALSE(row.boundary);
      CHECK(row.sub.infinite);
      CHECK(row.ambient.infinite);
    }
  }
  const TwoComplex p1 = fx::nested_pair(1);
  const auto one = theorem_a_harness(p1, fx::nested_inner(p1), {parse_chain("[a,b]")});
  CHECK(one.rows[0].sub.value == ratio_of(1, 2));
  CHECK(one.rows[0].ambient.value == ratio_of(1, 2));
  const TwoComplex p2 = fx::nested_pair(2);
  const auto two = theorem_a_harness(p2, fx::nested_inner(p2), {parse_chain("[a,b][c,d]")});
  CHECK(two.rows[0].sub.value == ratio_of(3, 2));
  CHECK(two.rows[0].ambient.value == ratio_of(3, 2));
}

TEST_CASE("Theorem B harness") {
  const TwoComplex s3 = fx::closed_s3();
  const auto report = theorem_b_harness(s3, fx::closed_s3_t(s3), {{"t_itself", fx::t_itself()}});
  CHECK(report.sub_rank == 1);
  CHECK(report.ambient_rank == 2);
  CHECK(report.image_rank == 1);
  CHECK(report.injective());
  REQUIRE(report.witnesses.size() == 1);
  const auto& w = report.witnesses[0];
  CHECK(w.sub_bound == 6);
  CHECK(w.ambient_bound == 6);
  CHECK(w.coordinates_match);
  CHECK(report.ok());
  CHECK_FALSE(report.scope.empty());
}

TEST_CASE("non-isometry example") {
  const auto r = non_isometry_example();
  CHECK(r.injectivity.injective());
  CHECK(r.injectivity.relative_h2 == 1);
  CHECK(r.t_coordinates == std::vector<Rational>{0, 1});
  CHECK(r.sigma_coordinates == std::vector<Rational>{-1, 1});
  CHECK(r.fundamental_image == std::vector<Rational>{1, 0});
  CHECK(r.classes_differ_by_fundamental);
  CHECK(r.ok());
  const auto gen = h2_generator(fx::closed_s3());
  REQUIRE(gen);
  CHECK(gen->support().size() == 2);
  CHECK_FALSE(h2_generator(fx::sg1b(2)));
}
