#include <doctest.h>

#include "scltopo/homlin.hpp"
#include "support.hpp"

using namespace scltopo;
namespace fx = scltopo::fixtures;

namespace {

IntMatrix from_rows(const std::vector<std::vector<int>>& rows) {
  IntMatrix m(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
  return m;
}

/// rank of the loop classes in H1(X; Q), from scratch.
int loop_image_rank(const TwoComplex& x, const std::vector<LoopTerm>& loops) {
  const auto d = boundary_matrices(x);
  RatMatrix b = to_rational(d.d2);
  RatMatrix both(x.edge_count(), x.face_count() + static_cast<int>(loops.size()));
  for (int r = 0; r < x.edge_count(); ++r)
    for (int c = 0; c < x.face_count(); ++c) both(r, c) = b(r, c);
  for (std::size_t i = 0; i < loops.size(); ++i)
    for (const auto& se : loops[i].word) both(se.edge, x.face_count() + static_cast<int>(i)) += se.sign * loops[i].coefficient;
  return rank(both) - rank(b);
}

}  // namespace

TEST_CASE("boundary matrices") {
  const auto t = boundary_matrices(fx::torus());
  CHECK(t.d2.is_zero());
  CHECK(t.d1.is_zero());
  const auto p = boundary_matrices(fx::rp2());
  CHECK(p.d2(0, 0) == 2);
  const auto d = boundary_matrices(fx::disc());
  CHECK(rank(to_rational(d.d2)) == 1);
  for (const auto& x : testing::all_complexes()) {
    const auto m = boundary_matrices(x);
    CHECK((m.d1 * m.d2).is_zero());
  }
}

TEST_CASE("Smith normal form examples") {
  const auto r = smith_normal_form(from_rows({{2, 4}, {6, 8}}));
  CHECK(r.diagonal() == std::vector<Integer>{2, 4});
  CHECK(smith_normal_form(IntMatrix(3, 2)).D.is_zero());
  const auto id = smith_normal_form(IntMatrix::identity(4));
  CHECK(id.D == IntMatrix::identity(4));
  CHECK(id.U == IntMatrix::identity(4));
  CHECK(id.V == IntMatrix::identity(4));
  const auto empty = smith_normal_form(IntMatrix(0, 3));
  CHECK(empty.D.rows() == 0);
}

TEST_CASE("property: SNF identities on random integer matrices") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> dim(1, 12);
  for (int i = 0; i < 120; ++i) {
    const IntMatrix m = testing::random_int_matrix(rng, dim(rng), dim(rng));
    const auto r = smith_normal_form(m);
    CHECK(r.U * m * r.V == r.D);
    CHECK(abs(determinant(r.U)) == 1);
    CHECK(abs(determinant(r.V)) == 1);
    CHECK(testing::is_diagonal_chain(r.D));
  }
}

TEST_CASE("absolute homology") {
  for (int g = 1; g <= 3; ++g) {
    const auto h = homology(fx::closed_surface(g), Ring::Q);
    CHECK(h.rank(0) == 1);
    CHECK(h.rank(1) == 2 * g);
    CHECK(h.rank(2) == 1);
  }
  CHECK(homology(fx::rp2(), Ring::Q).rank(2) == 0);
  CHECK(homology(fx::rp2(), Ring::Q).rank(1) == 0);
  const auto z = homology(fx::rp2(), Ring::Z);
  CHECK(z.degrees[1].torsion == std::vector<Integer>{2});
  CHECK(z.rank(2) == 0);
  const auto s3 = homology(fx::closed_s3(), Ring::Q);
  CHECK(s3.rank(1) == 6);
  CHECK(s3.rank(2) == 1);
  CHECK(homology(fx::closed_s3(), Ring::Z).to_text() == "H0 rank 1 torsion []\nH1 rank 6 torsion []\nH2 rank 1 torsion []\n");
  for (const auto& x : testing::all_complexes()) CHECK(homology(x, Ring::Z).degrees[2].torsion.empty());
}

TEST_CASE("relative homology") {
  const TwoComplex s3 = fx::closed_s3();
  CHECK(relative_homology(s3, fx::closed_s3_t(s3), Ring::Q).rank(2) == 1);
  const TwoComplex n2 = fx::nested_pair(2);
  CHECK(relative_homology(n2, fx::nested_inner(n2), Ring::Q).rank(2) == 0);
  for (const auto& x : testing::all_complexes()) {
    const auto h = relative_homology(x, full_subcomplex(x), Ring::Z);
    for (int n = 0; n <= 2; ++n) {
      CHECK(h.rank(n) == 0);
      CHECK(h.degrees[n].torsion.empty());
    }
  }
  Subcomplex foreign(fx::torus());
  CHECK_THROWS_AS(relative_homology(s3, foreign, Ring::Q), Error);
}

TEST_CASE("mapping cone homology") {
  const TwoComplex s1 = fx::sg1b(1);
  const auto r = cone_homology(s1, {fx::loop(s1, 1, "c+")});
  CHECK(r.summary.rank(2) == 1);
  CHECK(r.boundary_injective);
  const TwoComplex t = fx::closed_surface(1);
  CHECK(cone_homology(t, {}).summary.rank(2) == 1);
  const TwoComplex s3 = fx::closed_s3();
  const ConeComplex cone(s3, {fx::loop(s3, 1, "c+")});
  CHECK(cone.h2_rank() == 2);
  CHECK((cone.d1() * cone.d2()).is_zero());
  const TwoComplex d = fx::disc();
  CHECK_THROWS_AS(ConeComplex(d, {fx::loop(d, 1, "p+")}), Error);
  CHECK_THROWS_AS(ConeComplex(s3, {LoopTerm{1, {}}}), Error);
}

TEST_CASE("property: cone rank bookkeeping on fixture surfaces") {
  for (const auto& named : fx::surface_registry()) {
    const auto data = named.make();
    const ConeComplex cone(data.target, data.chain);
    const int h2 = homology(data.target, Ring::Q).rank(2);
    const int kernel = static_cast<int>(data.chain.size()) - loop_image_rank(data.target, data.chain);
    CHECK(cone.h2_rank() == h2 + kernel);
    CHECK(cone.absolute_h2_rank() == h2);
    CHECK(cone.gamma_kernel_rank() == kernel);
  }
}

TEST_CASE("orientability") {
  const TwoComplex c2 = fx::closed_surface(2);
  const auto beta = is_orientable(c2, Ring::Z);
  REQUIRE(beta);
  CHECK(is_orientation_witness(c2, *beta));
  CHECK(boundary_of_faces(c2, *beta).empty());
  CHECK_FALSE(is_orientable(fx::rp2(), Ring::Q));
  const TwoComplex d = fx::disc();
  const auto bd = is_orientable(d, Ring::Z);
  REQUIRE(bd);
  CHECK(bd->support() == std::vector<int>{0});
}

TEST_CASE("property: closed connected surfaces are Q-orientable iff b2 = 1") {
  for (const auto& x : testing::all_complexes()) {
    const auto sc = surface_check(x);
    if (!sc.is_surface || !sc.boundary_vertices.empty() || connected_components(x).size() != 1) continue;
    CHECK(is_orientable(x, Ring::Q).has_value() == (homology(x, Ring::Q).rank(2) == 1));
  }
}

TEST_CASE("property: Euler-Poincare on 200 random subcomplex pairs") {
  std::mt19937_64 rng(7);
  const auto all = testing::all_complexes();
  for (int i = 0; i < 200; ++i) {
    const TwoComplex& x = all[i % all.size()];
    const Subcomplex y = testing::random_subcomplex(x, rng);
    CHECK(testing::alternating_sum(homology(x, Ring::Q)) == euler_characteristic(x));
    CHECK(testing::alternating_sum(relative_homology(x, y, Ring::Q)) ==
          euler_characteristic(x) - euler_characteristic(extract(x, y).complex));
  }
}

TEST_CASE("property: subcomplexes of orientable small-links complexes are orientable") {
  std::mt19937_64 rng(5);
  for (const auto& x : testing::all_complexes()) {
    if (!has_small_links(x).small) continue;
    for (Ring ring : {Ring::Z, Ring::Q}) {
      const auto beta = is_orientable(x, ring);
      if (!beta) continue;
      for (int i = 0; i < 10; ++i) {
        const auto sub = extract(x, testing::random_subcomplex(x, rng, 0.6));
        CHECK(is_orientable(sub.complex, ring).has_value());
        ChainVec truncated(ring);
        for (std::size_t f = 0; f < sub.face_map.size(); ++f)
          truncated.add(static_cast<int>(f), beta->coefficient(sub.face_map[f]));
        CHECK(is_orientation_witness(sub.complex, truncated));
      }
    }
  }
}

TEST_CASE("property: excision injectivity H2(X0,Y0) -> H2(X,Y)") {
  std::mt19937_64 rng(9);
  for (const auto& x : testing::all_complexes()) {
    if (!surface_check(x).is_surface) continue;
    for (int i = 0; i < 10; ++i) {
      const Subcomplex x0 = testing::random_subcomplex(x, rng, 0.6);
      const Subcomplex y = testing::random_subcomplex(x, rng, 0.3);
      const auto ind = extract(x, x0);
      const Subcomplex y0 = testing::restrict_to(x, ind, subcomplex_intersection(y, x0));
      CHECK(relative_h2_inclusion_rank(x, x0, y) == relative_homology(ind.complex, y0, Ring::Q).rank(2));
    }
  }
}

TEST_CASE("support lemma") {
  const TwoComplex t = fx::closed_surface(1);
  CellSet skeleton;
  for (int e = 0; e < t.edge_count(); ++e) skeleton.edges.push_back(e);
  const auto v = check_support_lemma(t, induced_subcomplex(t, skeleton), Ring::Q);
  CHECK_FALSE(v.hypothesis_holds);
  CHECK(v.h2_rank == 1);
  const TwoComplex d = fx::disc();
  const auto w = check_support_lemma(d, full_subcomplex(d), Ring::Z);
  CHECK(w.hypothesis_holds);
  CHECK(w.contains_all_faces);
  const auto closed = check_support_lemma(t, full_subcomplex(t), Ring::Q);
  REQUIRE(closed.equals_whole_surface);
  CHECK(*closed.equals_whole_surface);
  const TwoComplex n2 = fx::nested_pair(2);
  CHECK_THROWS_AS(check_support_lemma(n2, fx::nested_inner(n2), Ring::Q), Error);
  CHECK_THROWS_AS(check_support_lemma(fx::rp2(), full_subcomplex(fx::rp2()), Ring::Q), Error);
}

TEST_CASE("H1 inclusion ranks") {
  const TwoComplex s3 = fx::closed_s3();
  CHECK(h1_inclusion_rank(s3, fx::closed_s3_t(s3)) == 4);
  const TwoComplex t = fx::torus();
  CellSet one;
  one.edges = {0};
  CHECK(h1_inclusion_rank(t, induced_subcomplex(t, one)) == 1);
}

TEST_CASE("chain vectors store no zeros") {
  ChainVec c(Ring::Q);
  c.add(3, 2);
  c.add(3, -2);
  CHECK(c.empty());
  c.add(1, ratio_of(1, 2));
  CHECK(c.scaled(2).coefficient(1) == 1);
  CHECK((c - c).empty());
}
