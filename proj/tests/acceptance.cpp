// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "scltopo/normalize.hpp"
#include "scltopo/sclopt.hpp"
#include "scltopo/veriharness.hpp"
#include "support.hpp"

using namespace scltopo;
namespace fx = scltopo::fixtures;

namespace {

/// Collects failed checks for one criterion.
struct Ledger {
  std::vector<std::string> failures;
  int checks = 0;
  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) failures.push_back(what);
  }
};

bool run(int number, const std::string& title, const std::function<void(Ledger&)>& body) {
  Ledger l;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(l);
  } catch (const std::exception& e) {
    l.failures.push_back(std::string("exception: ") + e.what());
  }
  const auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  const bool ok = l.failures.empty();
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << number << ": " << title << " (" << l.checks << " checks, "
            << ms << " ms)\n";
  for (const auto& f : l.failures) std::cout << "  failed: " << f << '\n';
  return ok;
}

std::string str(const Rational& q) { return q.get_str(); }

void scl_values(Ledger& l) {
  const std::vector<std::pair<std::string, Rational>> cases = {{"[a,b]", ratio_of(1, 2)},
                                                                {"[a,b][c,d]", ratio_of(3, 2)}};
  for (const auto& [text, want] : cases) {
    const auto start = std::chrono::steady_clock::now();
    const auto r = scl_lp(parse_chain(text));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    l.expect(!r.infinite && r.value == want, "scl " + text + " = " + str(r.value) + ", want " + str(want));
    l.expect(replay(r.lp, r.certificate).ok(), "certificate for " + text + " replays");
    l.expect(secs < 10.0, "scl " + text + " under 10 s");
  }
}

void sandwich(Ledger& l) {
  for (int g = 1; g <= 3; ++g) {
    const TwoComplex s = fx::sg1b(g);
    const auto rot = RotStructure::balanced(s);
    rot.validate();
    const AdmissibleSurface witness = build_admissible(fx::sg1b_itself(g));
    const auto sw = bavard_sandwich(rot, witness.data().chain, &witness);
    const Rational want = ratio_of(2 * g - 1, 2);
    const std::string tag = "g = " + std::to_string(g);
    l.expect(sw.lower == want, tag + ": rot/2 = " + str(sw.lower));
    l.expect(sw.upper && *sw.upper == want, tag + ": surface bound");
    l.expect(sw.exact(), tag + ": sandwich closes");
  }
}

void theorem_a(Ledger& l) {
  for (int g = 1; g <= 2; ++g) {
    const TwoComplex s = fx::nested_pair(g);
    const auto corpus = theorem_a_corpus(g);
    const std::string tag = "Sg1b(" + std::to_string(g) + ") in Sg1b(" + std::to_string(g + 1) + ")";
    l.expect(corpus.size() >= 10, tag + ": corpus has at least 10 chains");
    for (const auto& c : corpus)
      for (const auto& t : c.terms) l.expect(t.word.size() <= 8, tag + ": word " + t.word + " has length <= 8");
    const auto report = theorem_a_harness(s, fx::nested_inner(s), corpus);
    for (const auto& row : report.rows) {
      const std::string name = print_chain(row.chain);
      l.expect(row.boundary, tag + ": " + name + " is null-homologous");
      l.expect(!row.sub.infinite && !row.ambient.infinite && row.sub.value == row.ambient.value,
               tag + ": " + name + " " + str(row.sub.value) + " vs " + str(row.ambient.value));
    }
    l.expect(report.ok(), tag + ": harness verdict");
  }
}

void non_isometry(Ledger& l) {
  const auto r = non_isometry_example();
  l.expect(r.injectivity.injective(), "H1(T;Q) -> H1(S;Q) injective");
  l.expect(r.injectivity.relative_h2 == 1, "H2(S,T;Q) has rank 1");
  std::vector<Rational> diff(r.t_coordinates.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = r.t_coordinates[i] - r.sigma_coordinates[i];
  l.expect(diff == r.fundamental_image, "classes differ by the image of [S]");
  l.expect(r.fundamental_image != std::vector<Rational>(diff.size(), 0), "image of [S] is nonzero");
  l.expect(r.ok(), "report verdict");
  const auto h = homology(fx::closed_s3(), Ring::Z);
  l.expect(h.rank(2) == 1 && h.degrees[2].torsion.empty(), "H2(S;Z) = Z");
}

void theorem_main(Ledger& l) {
  for (int g = 1; g <= 2; ++g) {
    const TwoComplex s = fx::nested_pair(g);
    const Subcomplex t = fx::nested_inner(s);
    const AdmissibleSurface base = build_admissible(fx::t_itself_nested(g));
    std::vector<std::pair<std::string, AdmissibleSurface>> surfaces = {
        {"t_itself", base},
        {"double cover", cyclic_cover(base, 2)},
        {"triple cover", cyclic_cover(base, 3)},
        {"two copies", build_admissible(disjoint_union(base.data(), base.data()))},
        {"normalized fold", make_standard_form(build_admissible(fx::nested_fold(g))).surface}};
    for (const auto& [name, surface] : surfaces) {
      const std::string tag = "nested" + std::to_string(g) + " " + name;
      l.expect(standard_form_report(surface).standard(), tag + ": standard form");
      for (Ring ring : {Ring::Q, Ring::Z})
        for (auto mode : {ContainmentMode::Standard, ContainmentMode::Perfect}) {
          const auto r = verify_theorem_main(surface, t, ring, mode);
          l.expect(r.hypothesis, tag + ": hypothesis holds");
          l.expect(r.agree(), tag + ": proof path and direct check agree");
          l.expect(r.verdict() == "contained", tag + ": verdict " + r.verdict());
        }
    }
  }
  const TwoComplex s3 = fx::closed_s3();
  const auto r =
      verify_theorem_main(build_admissible(fx::t_itself()), fx::closed_s3_t(s3), Ring::Q, ContainmentMode::Standard);
  l.expect(!r.hypothesis && r.relative_h2 == 1, "closed_s3: hypothesis fails");
  l.expect(r.verdict() == "hypothesis fails", "closed_s3: verdict " + r.verdict());
  l.expect(r.agree(), "closed_s3: agreement");
}

void rewriting(Ledger& l) {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const AdmissibleSurface s = build_admissible(fx::random_fold(seed));
    const auto p = find_fold(s);
    const std::string tag = "fold seed " + std::to_string(seed);
    l.expect(p.has_value(), tag + ": has a fold");
    if (!p) continue;
    const AdmissibleSurface out = eliminate_fold(s, p->first, p->second);
    l.expect(out.euler_characteristic() == s.euler_characteristic(), tag + ": chi preserved");
    l.expect(pushforward_class(out).two_chain.terms() == pushforward_class(s).two_chain.terms(),
             tag + ": two-chain preserved");
  }

  const AdmissibleSurface m = build_admissible(disjoint_union(fx::t_itself(), fx::closed_mirror()));
  int glues = 0;
  auto audit = [&](const MoveLog& log, const std::string& tag) {
    for (const auto& e : log.entries)
      if (e.name == "glue") {
        ++glues;
        l.expect(e.before.chi_minus - e.after.chi_minus == 2, tag + ": glue changes -chi^- by 2");
      }
  };
  for (const Rational& eps : {ratio_of(1, 10), ratio_of(1, 3), Rational(1)}) {
    const auto p = promote_orientation_perfect(m, eps);
    audit(p.log, "promotion eps " + str(eps));
    l.expect(p.ratio_after && p.bound && *p.ratio_after <= *p.bound, "promotion eps " + str(eps) + ": within bound");
  }
  const AdmissibleSurface cover = cyclic_cover(m, 3);
  std::vector<int> comp(cover.fpiece_count());
  for (std::size_t c = 0; c < cover.components().size(); ++c)
    for (int f : cover.components()[c].fpieces) comp[f] = static_cast<int>(c);
  for (int d1 = 0; d1 < cover.fpiece_count(); ++d1)
    for (int d2 = 0; d2 < cover.fpiece_count(); ++d2) {
      const auto& a = cover.data().fpieces[d1];
      const auto& b = cover.data().fpieces[d2];
      if (a.face != b.face || a.sign != 1 || b.sign != -1 || comp[d1] == comp[d2]) continue;
      MoveLog log;
      glue_opposite(cover, d1, d2, &log);
      audit(log, "glue " + std::to_string(d1) + "," + std::to_string(d2));
      l.expect(glued_complex_chi_minus(cover, d1, d2) == reduced_euler(cover) - 2, "glued complex loses 2");
    }
  l.expect(glues > 0, "at least one glue step audited");

  // Termination: every fold elimination removes a negative disc, and between
  // fold eliminations each link move removes one unit of link excess.
  std::vector<AdmissibleSurface> inputs;
  for (std::uint64_t seed = 0; seed < 120; ++seed) inputs.push_back(build_admissible(fx::random_fold(seed)));
  for (const char* name : {"figlnk", "fold", "nested_fold1", "nested_fold2", "t_itself_plus_disc"})
    for (const auto& n : fx::surface_registry())
      if (n.name == name) inputs.push_back(build_admissible(n.make()));
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const auto start = SurfaceMetrics::of(inputs[i]);
    const auto nf = make_standard_form(inputs[i]);
    const std::string tag = "standard form input " + std::to_string(i);
    l.expect(standard_form_report(nf.surface).standard(), tag + ": reaches standard form");
    int folds = 0, links = 0, budget = start.link_excess;
    bool within = true;
    for (const auto& e : nf.log.entries) {
      if (e.name == "eliminate_fold") {
        ++folds;
        budget = e.after.link_excess;
        links = 0;
      } else if (e.name == "connect_link") {
        if (++links > budget) within = false;
      }
      if (standard_form_potential(e.after) > standard_form_potential(e.before) && e.name != "eliminate_fold")
        within = false;
    }
    l.expect(folds <= start.negative, tag + ": fold eliminations bounded by negative discs");
    l.expect(within, tag + ": link moves bounded by link excess");
  }
}

void homology_engine(Ledger& l) {
  for (int g = 1; g <= 3; ++g) {
    const auto h = homology(fx::closed_surface(g), Ring::Z);
    l.expect(h.rank(0) == 1 && h.rank(1) == 2 * g && h.rank(2) == 1, "Betti numbers of closed genus " + std::to_string(g));
  }
  const auto rz = homology(fx::rp2(), Ring::Z);
  l.expect(rz.degrees[1].torsion == std::vector<Integer>{2} && rz.rank(1) == 0, "H1(RP2;Z) = Z/2");
  l.expect(homology(fx::rp2(), Ring::Q).rank(2) == 0, "b2(RP2;Q) = 0");

  std::mt19937_64 rng(7);
  const auto all = testing::all_complexes();
  for (int i = 0; i < 200; ++i) {
    const TwoComplex& x = all[i % all.size()];
    const Subcomplex y = testing::random_subcomplex(x, rng);
    l.expect(testing::alternating_sum(relative_homology(x, y, Ring::Q)) ==
                 euler_characteristic(x) - euler_characteristic(extract(x, y).complex),
             "Euler-Poincare pair " + std::to_string(i));
  }

  std::mt19937_64 mrng(2024);
  std::uniform_int_distribution<int> dim(1, 20);
  for (int i = 0; i < 500; ++i) {
    const IntMatrix m = testing::random_int_matrix(mrng, dim(mrng), dim(mrng));
    const auto r = smith_normal_form(m);
    const std::string tag = "SNF matrix " + std::to_string(i);
    l.expect(r.U * m * r.V == r.D, tag + ": U M V = D");
    l.expect(abs(determinant(r.U)) == 1 && abs(determinant(r.V)) == 1, tag + ": unimodular");
    l.expect(testing::is_diagonal_chain(r.D), tag + ": divisibility chain");
  }
}

void properties(Ledger& l) {
  for (int g = 1; g <= 2; ++g)
    for (const auto& c : theorem_a_corpus(g)) {
      OneChain squared = c;
      for (auto& t : squared.terms) t.word += t.word;
      const auto one = scl_lp(c), two = scl_lp(squared);
      l.expect(!one.infinite && !two.infinite && two.value == 2 * one.value,
               "scl(w^2) = 2 scl(w) for " + print_chain(c) + ": " + str(two.value) + " vs " + str(one.value));
    }

  for (const auto& x : testing::all_complexes()) {
    std::size_t link_edges = 0, degrees = 0;
    for (int v = 0; v < x.vertex_count(); ++v) link_edges += link_graph(x, v).edges.size();
    for (const auto& f : x.faces()) degrees += f.degree();
    l.expect(link_edges == degrees, "corner accounting");
  }

  std::mt19937_64 rng(11);
  for (const auto& x : testing::all_complexes()) {
    if (!has_small_links(x).small) continue;
    const auto beta = is_orientable(x, Ring::Z);
    for (int i = 0; i < 20; ++i) {
      const auto sub = extract(x, testing::random_subcomplex(x, rng, 0.5)).complex;
      l.expect(has_small_links(sub).small, "small links pass to subcomplexes");
      if (beta) l.expect(is_orientable(sub, Ring::Z).has_value(), "orientability passes to subcomplexes");
    }
  }
}

}  // namespace

int main() {
  bool ok = true;
  ok &= run(1, "exact scl values", scl_values);
  ok &= run(2, "Bavard sandwich on the boundary of Sg1b(g), g = 1..3", sandwich);
  ok &= run(3, "scl agrees under the nested basis inclusions", theorem_a);
  ok &= run(4, "non-isometric H1-injective pair on the closed genus-3 surface", non_isometry);
  ok &= run(5, "containment verifier", theorem_main);
  ok &= run(6, "rewriting accounting", rewriting);
  ok &= run(7, "homology engine", homology_engine);
  ok &= run(8, "property suites", properties);
  return ok ? 0 : 1;
}
