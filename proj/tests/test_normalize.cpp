#include <doctest.h>

#include <algorithm>

#include "scltopo/normalize.hpp"
#include "support.hpp"

using namespace scltopo;
namespace fx = scltopo::fixtures;

namespace {

AdmissibleSurface surf(const AdmissibleData& d) { return build_admissible(d); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::Internal;
}

/// Boundary words up to rotation, sorted.
std::vector<std::vector<std::pair<int, int>>> boundary_words(const AdmissibleSurface& s) {
  std::vector<std::vector<std::pair<int, int>>> out;
  for (const auto& c : s.circuits()) {
    std::vector<std::pair<int, int>> w;
    for (const auto& se : c.word) w.emplace_back(se.edge, se.sign);
    std::vector<std::pair<int, int>> best = w;
    for (std::size_t r = 1; r < w.size(); ++r) {
      std::rotate(w.begin(), w.begin() + 1, w.end());
      best = std::min(best, w);
    }
    out.push_back(best);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int negatives(const AdmissibleSurface& s) {
  int n = 0;
  for (const auto& f : s.data().fpieces) n += f.sign < 0;
  return n;
}

int link_excess(const AdmissibleSurface& s) {
  int x = 0;
  for (int k : collapse(s).link_components) x += std::max(k - 1, 0);
  return x;
}

int find_vpiece(const AdmissibleSurface& s, const std::string& name) {
  for (int i = 0; i < s.vpiece_count(); ++i)
    if (s.data().vpieces[i].name == name) return i;
  FAIL("no vertex disc named " << name);
  return -1;
}

/// Log entries chain together and the last one matches the result.
void check_log(const MoveLog& log, const AdmissibleSurface& before, const AdmissibleSurface& after) {
  if (log.empty()) return;
  CHECK(log.entries.front().before.chi_minus == SurfaceMetrics::of(before).chi_minus);
  for (std::size_t i = 0; i + 1 < log.entries.size(); ++i) {
    const auto& a = log.entries[i].after;
    const auto& b = log.entries[i + 1].before;
    CHECK(a.chi_minus == b.chi_minus);
    CHECK(a.positive == b.positive);
    CHECK(a.negative == b.negative);
    CHECK(a.link_excess == b.link_excess);
  }
  const auto m = SurfaceMetrics::of(after);
  const auto& last = log.entries.back().after;
  CHECK(last.chi_minus == m.chi_minus);
  CHECK(last.degrees == m.degrees);
  CHECK(last.positive == m.positive);
  CHECK(last.negative == m.negative);
  CHECK(last.link_excess == m.link_excess);
  CHECK(last.coordinates == m.coordinates);
}

}  // namespace

TEST_CASE("remove_trivial_components") {
  const AdmissibleSurface t = surf(fx::t_itself());
  MoveLog log;
  const AdmissibleSurface same = remove_trivial_components(t, &log);
  CHECK(log.empty());
  CHECK(print_adm(same.data()) == print_adm(t.data()));

  const AdmissibleSurface with_disc = surf(fx::disc_over_vertex(fx::t_itself(), 0));
  const AdmissibleSurface cleaned = remove_trivial_components(with_disc, &log);
  CHECK(log.entries.size() == 1);
  CHECK(print_adm(cleaned.data()) == print_adm(t.data()));
  CHECK(SurfaceMetrics::of(cleaned).chi_minus == SurfaceMetrics::of(with_disc).chi_minus);
  CHECK(SurfaceMetrics::of(cleaned).coordinates == SurfaceMetrics::of(with_disc).coordinates);
}

TEST_CASE("eliminate_fold on the FOLD fixtures") {
  const AdmissibleSurface fold = surf(fx::fold());
  const auto pair = find_fold(fold);
  REQUIRE(pair);
  MoveLog log;
  const AdmissibleSurface out = eliminate_fold(fold, pair->first, pair->second, &log);
  CHECK(out.euler_characteristic() == fold.euler_characteristic());
  CHECK(out.fpiece_count() == fold.fpiece_count() - 2);
  CHECK(pushforward_class(out).two_chain.terms() == pushforward_class(fold).two_chain.terms());
  CHECK(boundary_words(out) == boundary_words(fold));
  CHECK_FALSE(find_fold(out));
  check_log(log, fold, out);

  AdmissibleSurface dbl = surf(fx::double_fold());
  for (int i = 0; i < 2; ++i) {
    const auto p = find_fold(dbl);
    REQUIRE(p);
    dbl = eliminate_fold(dbl, p->first, p->second);
  }
  CHECK(dbl.fpiece_count() == 0);
  CHECK(dbl.components().size() == 1);
  CHECK(dbl.euler_characteristic() == 0);
  CHECK(assemble(dbl).face_count() > 0);
  CHECK(surface_check(assemble(dbl)).is_surface);
  CHECK(boundary_words(dbl) == boundary_words(surf(fx::double_fold())));
}

TEST_CASE("eliminate_fold rejects ineligible pairs") {
  const AdmissibleSurface two = surf(disjoint_union(fx::t_itself(), fx::t_itself()));
  CHECK(kind_of([&] { eliminate_fold(two, 0, 1); }) == ErrorKind::MoveNotApplicable);
  const AdmissibleSurface mixed = surf(disjoint_union(fx::t_itself(), fx::sigma_genus1()));
  CHECK(kind_of([&] { eliminate_fold(mixed, 0, 1); }) == ErrorKind::MoveNotApplicable);
  const AdmissibleSurface mirror = surf(disjoint_union(fx::t_itself(), fx::closed_mirror()));
  CHECK_THROWS_AS(eliminate_fold(mirror, 0, 1), Error);
}

TEST_CASE("connect_link on FIGLNK") {
  const AdmissibleSurface fig = surf(fx::figlnk());
  const int D = find_vpiece(fig, "D");
  CHECK(collapse(fig).link_components[D] == 2);

  MoveLog log;
  const AdmissibleSurface pos = connect_link(fig, D, LinkPolicy::Positive, &log);
  CHECK(collapse(pos).link_components[D] == 1);
  CHECK(pos.fpiece_count() == fig.fpiece_count() + 2);
  CHECK(negatives(pos) == negatives(fig));
  CHECK(link_excess(pos) < link_excess(fig));
  CHECK(pushforward_class(pos).coordinates == pushforward_class(fig).coordinates);
  check_log(log, fig, pos);
  for (int v = 0; v < pos.vpiece_count(); ++v) CHECK(collapse(pos).link_components[v] <= 1);

  const AdmissibleSurface neg = connect_link(fig, D, LinkPolicy::Negative);
  CHECK(collapse(neg).link_components[D] == 1);
  CHECK(negatives(neg) > negatives(fig));
  CHECK(neg.fpiece_count() - fig.fpiece_count() == negatives(neg) - negatives(fig));
  CHECK(pushforward_class(neg).coordinates == pushforward_class(fig).coordinates);

  const AdmissibleSurface t = surf(fx::t_itself());
  CHECK(kind_of([&] { connect_link(t, 0); }) == ErrorKind::MoveNotApplicable);
}

TEST_CASE("thicken_boundary") {
  const TwoComplex d = fx::disc();
  const TwoComplex td = thicken_boundary(d);
  CHECK(surface_check(td).is_surface);
  CHECK(euler_characteristic(td) == 1);
  const auto mask = boundary_vertex_mask(td);
  for (int v = 0; v < d.vertex_count(); ++v) CHECK_FALSE(mask[v]);
  for (int e = 0; e < d.edge_count(); ++e) CHECK(td.edge(e).name == d.edge(e).name);

  const TwoComplex s = thicken_boundary(fx::sg1b(2));
  const auto h = homology(s, Ring::Q);
  CHECK(h.rank(0) == 1);
  CHECK(h.rank(1) == 4);
  CHECK(h.rank(2) == 0);

  const TwoComplex c = fx::closed_surface(1);
  CHECK(print_2cx(thicken_boundary(c)) == print_2cx(c));

  const AdmissibleSurface sg = surf(fx::sg1b_itself(2));
  const AdmissibleSurface moved = retarget(sg, thicken_boundary(sg.target()));
  CHECK(moved.euler_characteristic() == sg.euler_characteristic());
  CHECK(degree(moved).per_circle == degree(sg).per_circle);
}

TEST_CASE("make_standard_form examples") {
  const AdmissibleSurface t = surf(fx::t_itself());
  const auto nt = make_standard_form(t);
  CHECK(nt.log.empty());
  CHECK(print_adm(nt.surface.data()) == print_adm(t.data()));

  const AdmissibleSurface fig = surf(fx::figlnk());
  const auto nf = make_standard_form(fig);
  int links = 0, folds = 0;
  for (const auto& e : nf.log.entries) {
    links += e.name == "connect_link";
    folds += e.name == "eliminate_fold";
  }
  CHECK(links <= 2);
  CHECK(folds <= 1);
  CHECK(standard_form_report(nf.surface).standard());
  check_log(nf.log, fig, nf.surface);

  const AdmissibleSurface fold = surf(fx::fold());
  const auto nfold = make_standard_form(fold);
  REQUIRE_FALSE(nfold.log.empty());
  CHECK(nfold.log.entries.front().name == "eliminate_fold");
  CHECK(standard_form_report(nfold.surface).standard());
  CHECK(nfold.surface.euler_characteristic() == t.euler_characteristic());
  CHECK(pushforward_class(nfold.surface).coordinates == pushforward_class(t).coordinates);
}

TEST_CASE("property: random folds preserve chi, the two-chain and the boundary") {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const AdmissibleSurface s = surf(fx::random_fold(seed));
    const auto p = find_fold(s);
    REQUIRE(p);
    const AdmissibleSurface out = eliminate_fold(s, p->first, p->second);
    CHECK(out.euler_characteristic() == s.euler_characteristic());
    CHECK(pushforward_class(out).two_chain.terms() == pushforward_class(s).two_chain.terms());
    CHECK(boundary_words(out) == boundary_words(s));
    CHECK(out.fpiece_count() == s.fpiece_count() - 2);
  }
}

TEST_CASE("property: make_standard_form terminates with a decreasing potential") {
  std::vector<AdmissibleSurface> inputs;
  for (std::uint64_t seed = 0; seed < 60; ++seed) inputs.push_back(surf(fx::random_fold(seed)));
  for (const char* name : {"figlnk", "fold", "nested_fold1", "nested_fold2", "t_itself_plus_disc"})
    for (const auto& n : fx::surface_registry())
      if (n.name == name) inputs.push_back(surf(n.make()));
  for (const auto& s : inputs) {
    const auto nf = make_standard_form(s);
    CHECK(standard_form_report(nf.surface).standard());
    check_log(nf.log, s, nf.surface);
    const auto before = ratio(s), after = ratio(nf.surface);
    if (before && after) CHECK(*after <= *before);
    CHECK(SurfaceMetrics::of(nf.surface).coordinates == SurfaceMetrics::of(s).coordinates);
    for (const auto& e : nf.log.entries) {
      if (e.name == "connect_link") {
        CHECK(e.after.link_excess < e.before.link_excess);
        CHECK(e.after.negative <= e.before.negative);
      } else if (e.name == "eliminate_fold") {
        CHECK(e.after.negative == e.before.negative - 1);
      }
    }
    for (std::size_t i = 0; i + 2 <= nf.log.entries.size(); i += 2) {
      const auto next = i + 2 < nf.log.entries.size() ? standard_form_potential(nf.log.entries[i + 2].before)
                                                      : standard_form_potential(nf.log.entries.back().after);
      CHECK(next < standard_form_potential(nf.log.entries[i].before));
    }
  }
}

TEST_CASE("cyclic covers scale chi, n and the class") {
  for (const char* name : {"t_itself", "sigma_genus1", "t_itself_nested1", "figlnk"}) {
    for (const auto& n : fx::surface_registry()) {
      if (n.name != name) continue;
      const AdmissibleSurface s = surf(n.make());
      for (int N : {1, 2, 3}) {
        const AdmissibleSurface c = cyclic_cover(s, N);
        CHECK(c.euler_characteristic() == N * s.euler_characteristic());
        const auto ps = pushforward_class(s), pc = pushforward_class(c);
        for (std::size_t i = 0; i < ps.coordinates.size(); ++i) CHECK(pc.coordinates[i] == N * ps.coordinates[i]);
        for (std::size_t i = 0; i < ps.degrees.size(); ++i) CHECK(pc.degrees[i] == N * ps.degrees[i]);
      }
    }
  }
  CHECK_THROWS_AS(cyclic_cover(surf(fx::t_itself()), 0), Error);
}

TEST_CASE("promotion to orientation-perfect form") {
  const AdmissibleSurface m = surf(disjoint_union(fx::t_itself(), fx::closed_mirror()));
  REQUIRE_FALSE(standard_form_report(m).orientation_perfect);
  const auto p = promote_orientation_perfect(m, ratio_of(1, 10));
  CHECK(p.cover_degree == 10);
  CHECK(p.gluings == 1);
  REQUIRE(p.ratio_before);
  REQUIRE(p.bound);
  CHECK(*p.ratio_before == 7);
  CHECK(*p.bound == *p.ratio_before + ratio_of(1, 5));
  REQUIRE(p.ratio_after);
  CHECK(*p.ratio_after <= *p.bound);
  CHECK(standard_form_report(p.surface).orientation_perfect);
  CHECK(standard_form_report(p.surface).standard());
  for (const auto& e : p.log.entries)
    if (e.name == "glue") CHECK(e.before.chi_minus - e.after.chi_minus == 2);
  check_log(p.log, m, p.surface);

  const auto one = promote_orientation_perfect(m, 1);
  CHECK(one.cover_degree == 1);
  REQUIRE(one.bound);
  CHECK(*one.bound == *one.ratio_before + 2);
  CHECK(*one.ratio_after <= *one.bound);

  const AdmissibleSurface t = surf(fx::t_itself());
  const auto same = promote_orientation_perfect(t, ratio_of(1, 10));
  CHECK(same.log.empty());
  CHECK(print_adm(same.surface.data()) == print_adm(t.data()));
  CHECK_THROWS_AS(promote_orientation_perfect(t, 0), Error);
  CHECK_THROWS_AS(promote_orientation_perfect(t, -1), Error);
}

TEST_CASE("property: a glue step raises -chi^- by exactly two") {
  const AdmissibleSurface m = surf(disjoint_union(fx::t_itself(), fx::closed_mirror()));
  const AdmissibleSurface cover = cyclic_cover(m, 3);
  std::vector<int> comp(cover.fpiece_count());
  for (std::size_t c = 0; c < cover.components().size(); ++c)
    for (int f : cover.components()[c].fpieces) comp[f] = static_cast<int>(c);
  for (int d1 = 0; d1 < cover.fpiece_count(); ++d1)
    for (int d2 = 0; d2 < cover.fpiece_count(); ++d2) {
      const auto& a = cover.data().fpieces[d1];
      const auto& b = cover.data().fpieces[d2];
      if (a.face != b.face || a.sign != 1 || b.sign != -1) continue;
      if (comp[d1] == comp[d2]) continue;
      MoveLog log;
      const AdmissibleSurface g = glue_opposite(cover, d1, d2, &log);
      CHECK(glued_complex_chi_minus(cover, d1, d2) == reduced_euler(cover) - 2);
      REQUIRE_FALSE(log.empty());
      CHECK(log.entries.front().name == "glue");
      CHECK(log.entries.front().before.chi_minus - log.entries.front().after.chi_minus == 2);
      // The splice may compress further, never worse than the naive gluing.
      CHECK(reduced_euler(g) >= reduced_euler(cover) - 2);
      CHECK(degree(g).per_circle == degree(cover).per_circle);
      CHECK(pushforward_class(g).coordinates == pushforward_class(cover).coordinates);
    }
}

TEST_CASE("best connected component") {
  const AdmissibleSurface two = surf(disjoint_union(fx::t_itself(), fx::sigma_genus1()));
  const auto best = best_connected_component(two);
  CHECK(best.ratio == 1);
  CHECK(best.surface.fpiece_count() == 1);
  CHECK(best.surface.data().fpieces[0].sign == -1);
  CHECK(best.ratio <= *ratio(two));

  const AdmissibleSurface t = surf(fx::t_itself());
  CHECK(best_connected_component(t).ratio == 3);
  const AdmissibleSurface dbl = surf(disjoint_union(fx::t_itself(), fx::t_itself()));
  CHECK(best_connected_component(dbl).component == 0);
  CHECK_THROWS_AS(best_connected_component(surf(fx::trivial_annulus())), Error);
}
