#include <doctest.h>

#include <algorithm>

#include "scltopo/admsurf.hpp"
#include "scltopo/normalize.hpp"
#include "support.hpp"

using namespace scltopo;
namespace fx = scltopo::fixtures;

namespace {

std::vector<AdmissibleData> all_surfaces() {
  std::vector<AdmissibleData> out;
  for (const auto& s : fx::surface_registry()) out.push_back(s.make());
  for (std::uint64_t seed = 0; seed < 30; ++seed) out.push_back(fx::random_fold(seed));
  return out;
}

/// T-itself beside its mirror image: boundary circuits of degree +1 and -1 on c.
AdmissibleData opposite_pair() {
  const TwoComplex s = fx::closed_s3();
  return disjoint_union(fx::t_itself(), fx::surface_over(s, {fx::loop(s, 1, "c+")}, {{"f1", -1}}));
}

}  // namespace

TEST_CASE("T-itself and the genus-one surface") {
  const AdmissibleSurface t = build_admissible(fx::t_itself());
  CHECK(t.vpiece_count() == 1);
  CHECK(t.hpiece_count() == 5);
  CHECK(t.fpiece_count() == 1);
  CHECK(t.euler_characteristic() == -3);
  CHECK(reduced_euler(t) == -3);
  CHECK(degree(t).n == 1);
  CHECK(degree(t).scl_admissible);

  const AdmissibleSurface s = build_admissible(fx::sigma_genus1());
  CHECK(s.euler_characteristic() == -1);
  CHECK(s.fpiece_count() == 1);
  CHECK(s.data().fpieces[0].sign == -1);
}

TEST_CASE("invalid gluing is rejected") {
  AdmissibleData d = fx::t_itself();
  std::swap(d.fpieces[0].handles[0], d.fpieces[0].handles[1]);
  CHECK_THROWS_AS(build_admissible(d), Error);
  AdmissibleData e = fx::t_itself();
  e.fpieces[0].sign = -1;
  CHECK_THROWS_AS(build_admissible(e), Error);
  AdmissibleData f = fx::t_itself();
  f.boundary[0].degree = 2;
  CHECK_THROWS_AS(build_admissible(f), Error);
}

TEST_CASE("degree and reduced Euler characteristic") {
  const AdmissibleSurface dbl = build_admissible(disjoint_union(fx::t_itself(), fx::t_itself()));
  CHECK(reduced_euler(dbl) == -6);
  CHECK(degree(dbl).n == 2);
  const AdmissibleSurface same = build_admissible(disjoint_union(fx::t_itself(), fx::sigma_genus1()));
  CHECK(degree(same).per_circle == std::vector<int>{2});
  CHECK(degree(same).n == 2);
  const AdmissibleSurface mixed = build_admissible(opposite_pair());
  const auto deg = degree(mixed);
  CHECK(deg.per_circle == std::vector<int>{0});
  CHECK_FALSE(deg.scl_admissible);
}

TEST_CASE("pushforward classes") {
  const AdmissibleSurface t = build_admissible(fx::t_itself());
  const auto pt = pushforward_class(t);
  const int f1 = *t.target().find_face("f1"), f2 = *t.target().find_face("f2");
  CHECK(pt.two_chain.terms().size() == 1);
  CHECK(pt.two_chain.coefficient(f1) == 1);
  const AdmissibleSurface s = build_admissible(fx::sigma_genus1());
  const auto ps = pushforward_class(s);
  CHECK(ps.two_chain.coefficient(f2) == -1);
  // The classes differ by the image of the fundamental class.
  const ConeComplex cone(t.target(), t.data().chain);
  ChainVec fundamental(Ring::Q);
  fundamental.add(f1, 1);
  fundamental.add(f2, 1);
  const auto image = cone.image_of_absolute(fundamental);
  std::vector<Rational> diff(pt.coordinates.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = pt.coordinates[i] - ps.coordinates[i];
  CHECK(diff == image);

  const AdmissibleSurface cover = cyclic_cover(t, 2);
  const auto pc = pushforward_class(cover);
  CHECK(pc.two_chain.coefficient(f1) == 2);
  for (std::size_t i = 0; i < pt.coordinates.size(); ++i) CHECK(pc.coordinates[i] == 2 * pt.coordinates[i]);
}

TEST_CASE("collapse to the bar complex") {
  const AdmissibleSurface t = build_admissible(fx::t_itself());
  const auto bar = collapse(t);
  CHECK(bar.complex.vertex_count() == 1);
  CHECK(bar.complex.edge_count() == 5);
  CHECK(bar.complex.face_count() == 1);
  CHECK(bar.face_map == std::vector<int>{*t.target().find_face("f1")});
  CHECK(homology(bar.complex, Ring::Q).rank(1) == 4);

  const AdmissibleSurface lone = build_admissible(fx::disc_over_vertex(fx::trivial_annulus(), 0));
  const auto lb = collapse(lone);
  CHECK(lb.complex.vertex_count() == lone.vpiece_count());

  const AdmissibleSurface fig = build_admissible(fx::figlnk());
  const auto fb = collapse(fig);
  CHECK(*std::max_element(fb.link_components.begin(), fb.link_components.end()) == 2);
}

TEST_CASE("standard form predicates") {
  const auto t = standard_form_report(build_admissible(fx::t_itself()));
  CHECK(t.disc_sphere_free);
  CHECK(t.monotone);
  CHECK(t.connected_links);
  CHECK(t.non_folded);
  CHECK(t.orientation_perfect);

  const auto sigma = standard_form_report(build_admissible(disjoint_union(fx::t_itself(), fx::sigma_genus1())));
  CHECK(sigma.non_folded);
  CHECK(sigma.orientation_perfect);
  CHECK(sigma.monotone);

  const auto mixed = standard_form_report(build_admissible(opposite_pair()));
  CHECK(mixed.non_folded);
  CHECK_FALSE(mixed.orientation_perfect);
  CHECK_FALSE(mixed.monotone);
  CHECK(mixed.non_monotone_circles == std::vector<int>{0});

  const auto fig = standard_form_report(build_admissible(fx::figlnk()));
  CHECK_FALSE(fig.connected_links);
  CHECK_FALSE(fig.disconnected_vpieces.empty());

  const auto fold = standard_form_report(build_admissible(fx::fold()));
  CHECK_FALSE(fold.non_folded);
  CHECK_FALSE(fold.orientation_perfect);

  const auto disc = standard_form_report(build_admissible(fx::disc_over_vertex(fx::t_itself(), 0)));
  CHECK_FALSE(disc.disc_sphere_free);
}

TEST_CASE("adm text round trip is byte-stable") {
  for (const auto& d : all_surfaces()) {
    const std::string text = print_adm(d);
    const AdmissibleData back = parse_adm(text);
    CHECK(print_adm(back) == text);
    CHECK_NOTHROW(build_admissible(back));
  }
  CHECK_THROWS_AS(parse_adm("vdisc\n"), Error);
}

TEST_CASE("property: piece and assembled Euler characteristics agree; assembled surfaces are oriented") {
  for (const auto& d : all_surfaces()) {
    const AdmissibleSurface s = build_admissible(d);
    const TwoComplex a = assemble(s);
    CHECK(euler_characteristic(a) == s.euler_characteristic());
    CHECK(surface_check(a).is_surface);
    CHECK(is_orientable(a, Ring::Z).has_value());
    const auto bar = collapse(s);
    CHECK(bar.complex.vertex_count() == s.vpiece_count());
    CHECK(bar.complex.edge_count() == s.hpiece_count());
    CHECK(bar.complex.face_count() == s.fpiece_count());
  }
}

TEST_CASE("property: boundary of the pushforward class equals the degree vector") {
  for (const auto& d : all_surfaces()) {
    const AdmissibleSurface s = build_admissible(d);
    const auto pf = pushforward_class(s);
    const auto deg = degree(s);
    REQUIRE(pf.degrees.size() == deg.per_circle.size());
    for (std::size_t i = 0; i < pf.degrees.size(); ++i) CHECK(pf.degrees[i] == deg.per_circle[i]);
    const ConeComplex cone(s.target(), s.data().chain);
    CHECK(cone.is_cycle(pf.cone_cycle));
    CHECK(cone.boundary_degrees(pf.cone_cycle) == pf.degrees);
  }
}

TEST_CASE("property: orientation-perfect with connected links implies non-folded") {
  for (const auto& d : all_surfaces()) {
    const auto r = standard_form_report(build_admissible(d));
    if (r.orientation_perfect && r.connected_links) CHECK(r.non_folded);
  }
  // Without connected links the implication fails: FIGLNK mixes signs over distinct faces.
  const auto fig = standard_form_report(build_admissible(fx::figlnk()));
  CHECK(fig.orientation_perfect);
  CHECK_FALSE(fig.non_folded);
}
