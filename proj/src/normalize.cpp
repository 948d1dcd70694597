#include "scltopo/normalize.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace scltopo {

namespace {

Error not_applicable(const std::string& why) { return Error(ErrorKind::MoveNotApplicable, why); }
Error internal(const std::string& why) { return Error(ErrorKind::Internal, why); }

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

Side after_side(int end) { return end == 0 ? Side::L : Side::R; }
int side_index(Side s) { return s == Side::L ? 0 : 1; }

std::string unique_name(std::string name, std::set<std::string>& used) {
  while (!used.insert(name).second) name += "'";
  return name;
}

std::string degrees_text(const std::vector<int>& degrees) {
  if (!degrees.empty() && std::all_of(degrees.begin(), degrees.end(), [&](int x) { return x == degrees[0]; }))
    return std::to_string(degrees[0]);
  std::string s = "[";
  for (std::size_t i = 0; i < degrees.size(); ++i) s += (i ? "," : "") + std::to_string(degrees[i]);
  return s + "]";
}

ClassChange compare_classes(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  if (a == b) return ClassChange::Kept;
  if (a.size() != b.size()) return ClassChange::Changed;
  std::optional<Rational> factor;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0 || b[i] == 0) {
      if (a[i] != b[i]) return ClassChange::Changed;
      continue;
    }
    const Rational f = b[i] / a[i];
    if (factor && *factor != f) return ClassChange::Changed;
    factor = f;
  }
  return factor && *factor > 0 ? ClassChange::Scaled : ClassChange::Changed;
}

void record(MoveLog* log, std::string name, std::string args, const SurfaceMetrics& before, const SurfaceMetrics& after) {
  if (!log) return;
  MoveEntry e{std::move(name), std::move(args), before, after, compare_classes(before.coordinates, after.coordinates)};
  log->entries.push_back(std::move(e));
}

}  // namespace

// ---------------------------------------------------------------------------
// Metrics and log

SurfaceMetrics SurfaceMetrics::of(const AdmissibleSurface& surface) {
  SurfaceMetrics m;
  m.chi_minus = reduced_euler(surface);
  m.degrees = degree(surface).per_circle;
  for (const auto& f : surface.data().fpieces) (f.sign > 0 ? m.positive : m.negative) += 1;
  for (int k : collapse(surface).link_components) m.link_excess += std::max(0, k - 1);
  m.vpieces = surface.vpiece_count();
  m.coordinates = pushforward_class(surface).coordinates;
  return m;
}

std::string MoveEntry::to_text() const {
  std::ostringstream out;
  out << "move " << name;
  if (!args.empty()) out << ' ' << args;
  out << " ; chi_minus " << before.chi_minus << " -> " << after.chi_minus;
  out << " ; n " << degrees_text(before.degrees) << " -> " << degrees_text(after.degrees);
  out << " ; fpieces +" << before.positive << "/-" << before.negative << " -> +" << after.positive << "/-"
      << after.negative;
  out << " ; links " << before.link_excess << " -> " << after.link_excess;
  out << " ; class "
      << (class_change == ClassChange::Kept ? "kept" : class_change == ClassChange::Scaled ? "scaled" : "changed");
  return out.str();
}

std::string MoveLog::to_text() const {
  std::string s;
  for (const auto& e : entries) s += e.to_text() + '\n';
  return s;
}

std::vector<int> standard_form_potential(const SurfaceMetrics& m) {
  return {m.negative, m.link_excess, m.fpieces(), m.vpieces};
}

std::optional<Rational> ratio(const AdmissibleSurface& surface) {
  const auto info = degree(surface);
  if (!info.n || *info.n <= 0) return std::nullopt;
  return ratio_of(-reduced_euler(surface), *info.n);
}

// ---------------------------------------------------------------------------
// Component extraction and trivial components

AdmissibleData extract_components(const AdmissibleSurface& surface, const std::vector<int>& components) {
  const auto& d = surface.data();
  const auto& comps = surface.components();
  std::vector<bool> keep_v(surface.vpiece_count(), false), keep_h(surface.hpiece_count(), false),
      keep_f(surface.fpiece_count(), false);
  for (int c : components) {
    for (int v : comps.at(c).vpieces) keep_v[v] = true;
    for (int h : comps.at(c).hpieces) keep_h[h] = true;
    for (int f : comps.at(c).fpieces) keep_f[f] = true;
  }
  auto renumber = [](const std::vector<bool>& keep) {
    std::vector<int> map(keep.size(), -1);
    int next = 0;
    for (std::size_t i = 0; i < keep.size(); ++i)
      if (keep[i]) map[i] = next++;
    return map;
  };
  const auto vmap = renumber(keep_v), hmap = renumber(keep_h), fmap = renumber(keep_f);
  AdmissibleData out;
  out.target = d.target;
  out.chain = d.chain;
  out.incompressible = d.incompressible;
  for (int v = 0; v < surface.vpiece_count(); ++v) {
    if (!keep_v[v]) continue;
    VPiece p = d.vpieces[v];
    for (auto& he : p.ends) he.handle = hmap[he.handle];
    for (auto& g : p.gaps)
      if (g) g->fpiece = fmap[g->fpiece];
    out.vpieces.push_back(std::move(p));
  }
  for (int h = 0; h < surface.hpiece_count(); ++h) {
    if (!keep_h[h]) continue;
    HPiece p = d.hpieces[h];
    if (p.left) p.left->fpiece = fmap[p.left->fpiece];
    if (p.right) p.right->fpiece = fmap[p.right->fpiece];
    out.hpieces.push_back(std::move(p));
  }
  for (int f = 0; f < surface.fpiece_count(); ++f) {
    if (!keep_f[f]) continue;
    FPiece p = d.fpieces[f];
    for (auto& h : p.handles) h = hmap[h];
    out.fpieces.push_back(std::move(p));
  }
  for (auto ba : d.boundary) {
    if (ba.anchor.vpiece >= 0) {
      if (!keep_v[ba.anchor.vpiece]) continue;
      ba.anchor.vpiece = vmap[ba.anchor.vpiece];
    } else {
      if (!keep_h[ba.anchor.handle]) continue;
      ba.anchor.handle = hmap[ba.anchor.handle];
    }
    out.boundary.push_back(std::move(ba));
  }
  return out;
}

AdmissibleSurface remove_trivial_components(const AdmissibleSurface& surface, MoveLog* log) {
  std::vector<int> kept, dropped;
  for (int c = 0; c < static_cast<int>(surface.components().size()); ++c)
    (surface.components()[c].euler() > 0 ? dropped : kept).push_back(c);
  if (dropped.empty()) return surface;
  AdmissibleSurface out(extract_components(surface, kept));
  const auto before = SurfaceMetrics::of(surface), after = SurfaceMetrics::of(out);
  if (before.coordinates != after.coordinates)
    throw not_applicable("removing the disc and sphere components would change the pushforward class");
  std::string args;
  for (int c : dropped) args += (args.empty() ? "" : ",") + std::to_string(c);
  record(log, "remove_trivial", args, before, after);
  return out;
}

// ---------------------------------------------------------------------------
// Splicing two opposite discs over one face

namespace {

/// Removes discs p (positive) and q (negative) over one face and identifies
/// side k of p with side k of q for every k. Handles merge along the removed
/// sides; a merged class with no surviving side disappears, and vertex discs
/// are re-traced through the merged handle ends.
AdmissibleData splice(const AdmissibleSurface& surface, int p, int q) {
  const auto& d = surface.data();
  const TwoComplex& S = d.target;
  const FPiece& P = d.fpieces.at(p);
  const FPiece& Q = d.fpieces.at(q);
  const int H = surface.hpiece_count(), F = surface.fpiece_count();
  const int m = static_cast<int>(P.handles.size());

  std::vector<std::array<bool, 2>> consumed(H, {false, false});
  UnionFind uf(H);
  for (int k = 0; k < m; ++k) {
    consumed[P.handles[k]][side_index(glued_side(S, P, k))] = true;
    consumed[Q.handles[k]][side_index(glued_side(S, Q, k))] = true;
    uf.unite(P.handles[k], Q.handles[k]);
  }
  std::vector<std::array<int, 2>> owner(H, {-1, -1});
  for (int h = 0; h < H; ++h)
    for (int s = 0; s < 2; ++s) {
      if (consumed[h][s]) continue;
      auto& o = owner[uf.find(h)][s];
      if (o >= 0) throw internal("spliced handle class keeps two sides with one label");
      o = h;
    }

  std::vector<int> fmap(F, -1);
  for (int f = 0, next = 0; f < F; ++f)
    if (f != p && f != q) fmap[f] = next++;
  auto remap_side = [&](std::optional<SideRef> r) {
    if (r) r->fpiece = fmap.at(r->fpiece);
    return r;
  };

  AdmissibleData out;
  out.target = d.target;
  out.chain = d.chain;
  out.incompressible = d.incompressible;
  std::vector<int> class_id(H, -1), class_root;
  for (int h = 0; h < H; ++h) {
    const int r = uf.find(h);
    const auto& o = owner[r];
    if (o[0] < 0 && o[1] < 0) continue;
    if (o[0] < 0 || o[1] < 0) throw internal("spliced handle class keeps a single side");
    if (class_id[r] >= 0) continue;
    class_id[r] = static_cast<int>(out.hpieces.size());
    class_root.push_back(r);
    out.hpieces.push_back({d.hpieces[h].name, d.hpieces[h].edge, remap_side(d.hpieces[o[0]].left),
                           remap_side(d.hpieces[o[1]].right)});
  }
  auto new_end = [&](HandleEnd he) -> std::optional<HandleEnd> {
    const int id = class_id[uf.find(he.handle)];
    if (id < 0) return std::nullopt;
    return HandleEnd{id, he.end};
  };

  const int NH = static_cast<int>(out.hpieces.size());
  std::vector<bool> visited(2 * NH, false);
  std::vector<int> vmap(surface.vpiece_count(), -1);
  std::set<std::string> used;
  for (int vi = 0; vi < surface.vpiece_count(); ++vi) {
    const VPiece& v = d.vpieces[vi];
    if (v.ends.empty()) {
      vmap[vi] = static_cast<int>(out.vpieces.size());
      VPiece copy = v;
      copy.name = unique_name(v.name, used);
      out.vpieces.push_back(std::move(copy));
      continue;
    }
    for (const auto& he : v.ends) {
      const auto start = new_end(he);
      if (!start || visited[2 * start->handle + start->end]) continue;
      VPiece nv;
      nv.name = unique_name(v.name, used);
      nv.vertex = v.vertex;
      HandleEnd cur = *start;
      do {
        visited[2 * cur.handle + cur.end] = true;
        const int o = owner[class_root[cur.handle]][side_index(after_side(cur.end))];
        const auto [ovi, ot] = surface.locate({o, cur.end});
        const VPiece& ov = d.vpieces[ovi];
        const auto& gap = ov.gaps[ot];
        if (gap && (gap->fpiece == p || gap->fpiece == q)) throw internal("surviving side faces a removed disc");
        nv.ends.push_back(cur);
        nv.gaps.push_back(gap ? std::optional<CornerRef>(CornerRef{fmap[gap->fpiece], gap->corner}) : std::nullopt);
        const auto nxt = new_end(ov.ends[(ot + 1) % ov.ends.size()]);
        if (!nxt) throw internal("vertex disc walk reached a vanished handle");
        cur = *nxt;
        if (nv.ends.size() > 2 * static_cast<std::size_t>(NH)) throw internal("vertex disc walk does not close");
      } while (!(cur == *start));
      out.vpieces.push_back(std::move(nv));
    }
  }
  for (int f = 0; f < F; ++f) {
    if (fmap[f] < 0) continue;
    FPiece np = d.fpieces[f];
    for (auto& h : np.handles) h = class_id[uf.find(h)];
    out.fpieces.push_back(std::move(np));
  }
  for (auto ba : d.boundary) {
    if (ba.anchor.vpiece >= 0) {
      ba.anchor.vpiece = vmap[ba.anchor.vpiece];
    } else {
      const int r = uf.find(ba.anchor.handle);
      if (class_id[r] < 0 || owner[r][side_index(ba.anchor.side)] != ba.anchor.handle)
        throw internal("boundary anchor lost in splice");
      ba.anchor.handle = class_id[r];
    }
    out.boundary.push_back(std::move(ba));
  }
  return out;
}

std::pair<int, int> opposite_pair(const AdmissibleSurface& surface, int d1, int d2) {
  const int F = surface.fpiece_count();
  if (d1 < 0 || d1 >= F || d2 < 0 || d2 >= F) throw Error(ErrorKind::UnknownCell, "unknown cellular disc");
  if (d1 == d2) throw not_applicable("a disc cannot be paired with itself");
  const auto& a = surface.data().fpieces[d1];
  const auto& b = surface.data().fpieces[d2];
  if (a.face != b.face) throw not_applicable("discs lie over different target faces");
  if (a.sign == b.sign) throw not_applicable("discs have the same orientation sign");
  return a.sign > 0 ? std::pair{d1, d2} : std::pair{d2, d1};
}

}  // namespace

std::optional<std::pair<int, int>> find_fold(const AdmissibleSurface& surface) {
  std::optional<std::pair<int, int>> best;
  const auto& d = surface.data();
  for (const auto& h : d.hpieces) {
    if (!h.left || !h.right) continue;
    const auto& a = d.fpieces[h.left->fpiece];
    const auto& b = d.fpieces[h.right->fpiece];
    if (a.face != b.face || a.sign == b.sign) continue;
    const std::pair<int, int> pair =
        a.sign > 0 ? std::pair{h.left->fpiece, h.right->fpiece} : std::pair{h.right->fpiece, h.left->fpiece};
    if (!best || pair < *best) best = pair;
  }
  return best;
}

AdmissibleSurface eliminate_fold(const AdmissibleSurface& surface, int d1, int d2, MoveLog* log) {
  const auto [p, q] = opposite_pair(surface, d1, d2);
  const auto& P = surface.data().fpieces[p];
  const auto& Q = surface.data().fpieces[q];
  const bool adjacent = std::any_of(P.handles.begin(), P.handles.end(), [&](int h) {
    return std::find(Q.handles.begin(), Q.handles.end(), h) != Q.handles.end();
  });
  if (!adjacent) throw not_applicable("discs are not adjacent through a common handle");
  AdmissibleSurface out(splice(surface, p, q));
  if (log) record(log, "eliminate_fold", P.name + " " + Q.name, SurfaceMetrics::of(surface), SurfaceMetrics::of(out));
  return out;
}

// ---------------------------------------------------------------------------
// Connected-links move

namespace {

struct Slot {
  HandleEnd end;
  std::optional<CornerRef> gap;
};

/// End of the handle on side `s` of a face word of length m that sits at
/// corner `c` (corner c is the tail of letter c, the head of letter c-1).
HandleEnd end_at_corner(const EdgeWord& word, const std::vector<int>& handles, int s, int c) {
  const int m = static_cast<int>(word.size());
  const bool at_tail = (c % m) == s;
  const int sign = word[s].sign;
  return {handles[s], at_tail ? (sign > 0 ? 0 : 1) : (sign > 0 ? 1 : 0)};
}

std::string fresh_name(const std::string& stem, std::set<std::string>& used) {
  for (int i = 0;; ++i) {
    std::string name = stem + std::to_string(i);
    if (used.insert(name).second) return name;
  }
}

ChainVec word_chain(const EdgeWord& word, int factor = 1) {
  ChainVec c(Ring::Z);
  for (const auto& se : word) c.add(se.edge, factor * se.sign);
  return c;
}

EdgeWord circle_word(const LoopTerm& term) {
  EdgeWord w;
  const int reps = std::abs(term.coefficient);
  for (int r = 0; r < reps; ++r) {
    if (term.coefficient > 0) {
      w.insert(w.end(), term.word.begin(), term.word.end());
    } else {
      for (auto it = term.word.rbegin(); it != term.word.rend(); ++it) w.push_back(it->inverse());
    }
  }
  return w;
}

}  // namespace

AdmissibleSurface connect_link(const AdmissibleSurface& surface, int vpiece, LinkPolicy policy, MoveLog* log) {
  const auto& d0 = surface.data();
  const TwoComplex& S = d0.target;
  if (vpiece < 0 || vpiece >= surface.vpiece_count()) throw Error(ErrorKind::UnknownCell, "unknown vertex disc");
  if (collapse(surface).link_components.at(vpiece) <= 1) throw not_applicable("link of the vertex disc is connected");
  const VPiece& D = d0.vpieces[vpiece];
  const int v = D.vertex;
  if (boundary_vertex_mask(S)[v])
    throw Error(ErrorKind::Precondition, "vertex disc lies over a boundary vertex of the target; thicken first");
  auto half = [&](HandleEnd he) { return SignedEdge{d0.hpieces[he.handle].edge, he.end == 0 ? 1 : -1}; };
  const int eps = policy == LinkPolicy::Positive ? 1 : -1;
  int total_corners = 0;
  for (const auto& f : S.faces()) total_corners += static_cast<int>(f.word.size());

  // Walk around v from half(from) to half(to) through face corners.
  struct Step {
    int face, corner;
  };
  auto walk = [&](HandleEnd from, HandleEnd to) {
    std::vector<Step> steps;
    SignedEdge cur = half(from);
    const SignedEdge goal = half(to);
    do {
      std::optional<Step> found;
      SignedEdge next{};
      for (int f = 0; f < S.face_count() && !found; ++f) {
        const auto& w = S.face(f).word;
        const int m = static_cast<int>(w.size());
        for (int k = 0; k < m && !found; ++k) {
          const SignedEdge before = w[(k - 1 + m) % m].inverse();
          if (eps > 0 && w[k] == cur) {
            found = Step{f, k};
            next = before;
          } else if (eps < 0 && before == cur) {
            found = Step{f, k};
            next = w[k];
          }
        }
      }
      if (!found) throw internal("no face corner continues the walk around the vertex");
      steps.push_back(*found);
      cur = next;
      if (static_cast<int>(steps.size()) > total_corners) throw internal("walk around the vertex does not close");
    } while (!(cur == goal));
    return steps;
  };

  // Shortest sweep over the free arcs joining two distinct handles.
  const int n = static_cast<int>(D.ends.size());
  std::optional<std::vector<Step>> steps;
  HandleEnd ha{}, hb{};
  for (int t = 0; t < n; ++t) {
    if (D.gaps[t] || D.ends[t].handle == D.ends[(t + 1) % n].handle) continue;
    auto candidate = walk(D.ends[t], D.ends[(t + 1) % n]);
    if (!steps || candidate.size() < steps->size()) {
      steps = std::move(candidate);
      ha = D.ends[t];
      hb = D.ends[(t + 1) % n];
    }
  }
  if (!steps) throw not_applicable("every free arc joins the two ends of a single handle");

  AdmissibleData d = d0;
  std::set<std::string> hnames, fnames, vnames;
  for (const auto& h : d.hpieces) hnames.insert(h.name);
  for (const auto& f : d.fpieces) fnames.insert(f.name);
  for (const auto& p : d.vpieces) vnames.insert(p.name);
  std::vector<std::vector<Slot>> discs;
  std::vector<std::pair<std::string, int>> disc_info;
  for (const auto& p : d.vpieces) {
    std::vector<Slot> slots;
    for (std::size_t i = 0; i < p.ends.size(); ++i) slots.push_back({p.ends[i], p.gaps[i]});
    discs.push_back(std::move(slots));
    disc_info.emplace_back(p.name, p.vertex);
  }
  auto find_slot = [&](HandleEnd he) -> std::pair<int, int> {
    for (int di = 0; di < static_cast<int>(discs.size()); ++di)
      for (int i = 0; i < static_cast<int>(discs[di].size()); ++i)
        if (discs[di][i].end == he) return {di, i};
    throw internal("handle end missing from every vertex disc");
  };
  auto new_handle = [&](int edge) {
    d.hpieces.push_back({fresh_name("n", hnames), edge, std::nullopt, std::nullopt});
    return static_cast<int>(d.hpieces.size()) - 1;
  };

  ChainVec swept(Ring::Z);
  int hcur = ha.handle;
  HandleEnd near = ha;
  const int ell = static_cast<int>(steps->size());
  for (int j = 0; j < ell; ++j) {
    const bool last = j + 1 == ell;
    const auto [f, k] = (*steps)[j];
    const auto& w = S.face(f).word;
    const int m = static_cast<int>(w.size());
    if (m < 3) throw Error(ErrorKind::Precondition, "connected-links move across a face with fewer than three sides");
    const int fi = static_cast<int>(d.fpieces.size());
    const int cur_side = eps > 0 ? k : (k - 1 + m) % m;
    const int next_side = eps > 0 ? (k - 1 + m) % m : k;
    std::vector<int> handles(m, -1);
    handles[cur_side] = hcur;
    handles[next_side] = last ? hb.handle : new_handle(w[next_side].edge);
    for (int s = 0; s < m; ++s)
      if (handles[s] < 0) handles[s] = new_handle(w[s].edge);
    d.fpieces.push_back({fresh_name("k", fnames), f, eps, handles});
    swept.add(f, eps);

    // Corner k joins the disc being swept.
    {
      const auto [di, i] = find_slot(near);
      auto& slots = discs[di];
      if (slots[i].gap) throw internal("swept arc is not free");
      slots[i].gap = CornerRef{fi, k};
      if (!last) {
        const HandleEnd nn = end_at_corner(w, handles, next_side, k);
        slots.insert(slots.begin() + i + 1, Slot{nn, std::nullopt});
        near = nn;
      } else if (!(slots[(i + 1) % slots.size()].end == hb)) {
        throw internal("swept arc does not end at the far handle");
      }
    }
    const int far_cur = ((eps > 0 ? k + 1 : k - 1) % m + m) % m;
    const int far_next = ((eps > 0 ? k - 1 : k + 1) % m + m) % m;
    for (int c = 0; c < m; ++c) {
      if (c == k) continue;
      const int sa = eps > 0 ? c : (c - 1 + m) % m;
      const int sb = eps > 0 ? (c - 1 + m) % m : c;
      const HandleEnd A = end_at_corner(w, handles, sa, c);
      const HandleEnd B = end_at_corner(w, handles, sb, c);
      const CornerRef corner{fi, c};
      if (c == far_cur && c != far_next) {
        const auto [di, i] = find_slot(B);
        auto& slots = discs[di];
        const int prev = (i - 1 + static_cast<int>(slots.size())) % static_cast<int>(slots.size());
        if (slots[prev].gap) throw internal("far corner of the swept handle is not free");
        slots.insert(slots.begin() + i, Slot{A, corner});
      } else if (c == far_next && last && c != far_cur) {
        const auto [di, i] = find_slot(A);
        auto& slots = discs[di];
        if (slots[i].gap) throw internal("far corner of the far handle is not free");
        const auto old = slots[i].gap;
        slots[i].gap = corner;
        slots.insert(slots.begin() + i + 1, Slot{B, old});
      } else {
        discs.push_back({Slot{A, corner}, Slot{B, std::nullopt}});
        disc_info.emplace_back(fresh_name("w", vnames), S.tail(w[c]));
      }
    }
    hcur = handles[next_side];
  }

  d.vpieces.clear();
  for (std::size_t di = 0; di < discs.size(); ++di) {
    VPiece p{disc_info[di].first, disc_info[di].second, {}, {}};
    for (const auto& s : discs[di]) {
      p.ends.push_back(s.end);
      p.gaps.push_back(s.gap);
    }
    d.vpieces.push_back(std::move(p));
  }
  glue_sides(d);

  // The circuit through the swept arc is replaced by the new one.
  int old_assignment = -1;
  const Side swept_side = after_side(ha.end);
  for (const auto& c : surface.circuits())
    for (const auto& dart : c.darts)
      if (dart.handle == ha.handle && dart.side == swept_side) old_assignment = c.assignment;
  if (old_assignment < 0) throw internal("swept arc lies on no boundary circuit");
  const BoundaryAssignment old = d.boundary[old_assignment];
  d.boundary.erase(d.boundary.begin() + old_assignment);
  std::set<std::pair<int, int>> anchored_darts;
  std::set<int> anchored_discs;
  for (const auto& ba : d.boundary) {
    if (ba.anchor.vpiece >= 0)
      anchored_discs.insert(ba.anchor.vpiece);
    else
      anchored_darts.insert({ba.anchor.handle, side_index(ba.anchor.side)});
  }
  std::vector<const Circuit*> fresh;
  const auto circuits = AdmissibleSurface::trace(d);
  for (const auto& c : circuits) {
    bool anchored = c.vpiece && anchored_discs.count(*c.vpiece);
    for (const auto& dart : c.darts) anchored = anchored || anchored_darts.count({dart.handle, side_index(dart.side)});
    if (!anchored) fresh.push_back(&c);
  }
  if (fresh.size() != 1) throw internal("connected-links move must leave exactly one new boundary circuit");
  const Circuit& nc = *fresh.front();
  BoundaryAssignment na = old;
  na.anchor = nc.vpiece ? Anchor{-1, Side::L, *nc.vpiece} : Anchor{nc.darts.front().handle, nc.darts.front().side, -1};
  const ChainVec lhs = word_chain(nc.word);
  const ChainVec base = word_chain(circle_word(d.chain[old.circle]), old.degree);
  std::optional<ChainVec> track;
  for (int s : {1, -1}) {
    const ChainVec candidate = old.track + swept.scaled(s);
    if (base - boundary_of_faces(S, candidate) == lhs) {
      track = candidate;
      break;
    }
  }
  if (!track) throw internal("new boundary circuit is not homologous to its circle");
  na.track = *track;
  d.boundary.insert(d.boundary.begin() + old_assignment, na);

  AdmissibleSurface out(std::move(d));
  const auto before = SurfaceMetrics::of(surface), after = SurfaceMetrics::of(out);
  if (before.coordinates != after.coordinates) throw internal("connected-links move changed the pushforward class");
  record(log, "connect_link", D.name + (eps > 0 ? " positive" : " negative"), before, after);
  return out;
}

// ---------------------------------------------------------------------------
// Collars

TwoComplex thicken_boundary(const TwoComplex& target) {
  const Subcomplex boundary = boundary_subcomplex(target);
  std::vector<std::string> vnames;
  std::vector<EdgeCell> edges = target.edges();
  std::vector<FaceCell> faces = target.faces();
  std::set<std::string> used;
  for (int v = 0; v < target.vertex_count(); ++v) {
    vnames.push_back(target.vertex_name(v));
    used.insert(target.vertex_name(v));
  }
  for (const auto& e : edges) used.insert(e.name);
  for (const auto& f : faces) used.insert(f.name);
  auto unique = [&](std::string name) { return unique_name(std::move(name), used); };

  std::vector<int> outer(target.vertex_count(), -1), spoke(target.vertex_count(), -1);
  for (int v = 0; v < target.vertex_count(); ++v) {
    if (!boundary.has_vertex(v)) continue;
    outer[v] = static_cast<int>(vnames.size());
    vnames.push_back(unique(target.vertex_name(v) + "'"));
    spoke[v] = static_cast<int>(edges.size());
    edges.push_back({v, outer[v], unique("sp_" + target.vertex_name(v))});
  }
  for (int e = 0; e < target.edge_count(); ++e) {
    if (!boundary.has_edge(e)) continue;
    std::optional<SignedEdge> b;
    for (const auto& f : target.faces())
      for (const auto& se : f.word)
        if (se.edge == e) b = se;
    if (!b) continue;  // isolated edge: no face to collar
    const int tv = target.tail(*b), hv = target.head(*b);
    const int oe = static_cast<int>(edges.size());
    edges.push_back({outer[tv], outer[hv], unique(target.edge(e).name + "'")});
    faces.push_back({{b->inverse(), SignedEdge{spoke[tv], 1}, SignedEdge{oe, 1}, SignedEdge{spoke[hv], -1}},
                     unique("collar_" + target.edge(e).name)});
  }
  TwoComplex out(std::move(vnames), std::move(edges), std::move(faces));
  if (!surface_check(out).is_surface) throw internal("collared target is not a surface");
  if (euler_characteristic(out) != euler_characteristic(target)) throw internal("collar changed the Euler characteristic");
  const auto h0 = homology(target, Ring::Q), h1 = homology(out, Ring::Q);
  for (int k = 0; k <= 2; ++k)
    if (h0.rank(k) != h1.rank(k)) throw internal("collar changed the homology");
  return out;
}

AdmissibleSurface retarget(const AdmissibleSurface& surface, const TwoComplex& target) {
  const TwoComplex& old = surface.target();
  bool ok = target.vertex_count() >= old.vertex_count() && target.edge_count() >= old.edge_count() &&
            target.face_count() >= old.face_count();
  for (int v = 0; ok && v < old.vertex_count(); ++v) ok = target.vertex_name(v) == old.vertex_name(v);
  for (int e = 0; ok && e < old.edge_count(); ++e)
    ok = target.edge(e).name == old.edge(e).name && target.edge(e).source == old.edge(e).source &&
         target.edge(e).target == old.edge(e).target;
  for (int f = 0; ok && f < old.face_count(); ++f) ok = target.face(f).word == old.face(f).word;
  if (!ok) throw Error(ErrorKind::Precondition, "new target does not extend the old one with the same cell ids");
  AdmissibleData d = surface.data();
  d.target = target;
  return AdmissibleSurface(std::move(d));
}

// ---------------------------------------------------------------------------
// Standard form

NormalForm make_standard_form(const AdmissibleSurface& surface) {
  std::optional<AdmissibleSurface> cur(surface);
  MoveLog log;
  auto potential = standard_form_potential(SurfaceMetrics::of(*cur));
  for (int iteration = 0;; ++iteration) {
    if (iteration > 100000) throw internal("standard form did not terminate");
    const auto& comps = cur->components();
    const bool trivial = std::any_of(comps.begin(), comps.end(), [](const auto& c) { return c.euler() > 0; });
    if (trivial) {
      cur.emplace(remove_trivial_components(*cur, &log));
    } else {
      const auto links = collapse(*cur).link_components;
      const auto it = std::find_if(links.begin(), links.end(), [](int k) { return k > 1; });
      if (it != links.end()) {
        const int vp = static_cast<int>(it - links.begin());
        if (boundary_vertex_mask(cur->target())[cur->data().vpieces[vp].vertex]) {
          const auto before = SurfaceMetrics::of(*cur);
          cur.emplace(retarget(*cur, thicken_boundary(cur->target())));
          record(&log, "thicken", cur->target().vertex_name(cur->data().vpieces[vp].vertex), before,
                 SurfaceMetrics::of(*cur));
        }
        cur.emplace(connect_link(*cur, vp, LinkPolicy::Positive, &log));
      } else if (const auto fold = find_fold(*cur)) {
        cur.emplace(eliminate_fold(*cur, fold->first, fold->second, &log));
      } else {
        break;
      }
    }
    const auto next = standard_form_potential(SurfaceMetrics::of(*cur));
    if (!(next < potential)) throw internal("standard-form potential did not decrease");
    potential = next;
  }
  return {std::move(*cur), std::move(log)};
}

// ---------------------------------------------------------------------------
// Cyclic covers

namespace {

/// Integer 1-cocycle on the bar graph (zero on a spanning forest) vanishing on
/// every cellular disc; the first kernel vector per component, made primitive.
std::vector<long> cover_cocycle(const AdmissibleSurface& surface) {
  const auto& d = surface.data();
  const TwoComplex& S = d.target;
  std::vector<long> phi(surface.hpiece_count(), 0);
  for (const auto& comp : surface.components()) {
    std::set<int> seen{comp.vpieces.front()};
    std::set<int> tree;
    std::vector<int> queue{comp.vpieces.front()};
    for (std::size_t qi = 0; qi < queue.size(); ++qi)
      for (const auto& he : d.vpieces[queue[qi]].ends) {
        const int other = surface.locate({he.handle, 1 - he.end}).first;
        if (seen.insert(other).second) {
          tree.insert(he.handle);
          queue.push_back(other);
        }
      }
    std::vector<int> free_handles;
    for (int h : comp.hpieces)
      if (!tree.count(h)) free_handles.push_back(h);
    if (free_handles.empty()) continue;
    std::map<int, int> column;
    for (std::size_t j = 0; j < free_handles.size(); ++j) column[free_handles[j]] = static_cast<int>(j);
    std::vector<Rational> vec;
    if (comp.fpieces.empty()) {
      vec.assign(free_handles.size(), 0);
      vec[0] = 1;
    } else {
      RatMatrix m(static_cast<int>(comp.fpieces.size()), static_cast<int>(free_handles.size()));
      for (std::size_t r = 0; r < comp.fpieces.size(); ++r) {
        const auto& f = d.fpieces[comp.fpieces[r]];
        const auto& word = S.face(f.face).word;
        for (std::size_t k = 0; k < word.size(); ++k) {
          const auto c = column.find(f.handles[k]);
          if (c != column.end()) m(static_cast<int>(r), c->second) += word[k].sign;
        }
      }
      const auto kernel = kernel_basis(m);
      if (kernel.empty()) continue;
      vec = kernel.front();
    }
    Integer lcm = 1, g = 0;
    for (const auto& x : vec) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
    std::vector<Integer> ints;
    for (const auto& x : vec) {
      const Rational y = x * lcm;
      ints.push_back(y.get_num());
      g = gcd(g, y.get_num());
    }
    for (std::size_t j = 0; j < ints.size(); ++j) phi[free_handles[j]] = Integer(ints[j] / g).get_si();
  }
  return phi;
}

}  // namespace

AdmissibleSurface cyclic_cover(const AdmissibleSurface& surface, int n, MoveLog* log) {
  if (n < 1) throw Error(ErrorKind::Precondition, "cover degree must be positive");
  if (n == 1) return surface;
  const auto& d = surface.data();
  const TwoComplex& S = d.target;
  const auto phi = cover_cocycle(surface);
  auto mod = [n](long x) { return static_cast<int>(((x % n) + n) % n); };
  auto copy_name = [](const std::string& name, int i) { return name + "." + std::to_string(i); };

  AdmissibleData out;
  out.target = d.target;
  out.chain = d.chain;
  out.incompressible = d.incompressible;
  for (const auto& h : d.hpieces)
    for (int i = 0; i < n; ++i) out.hpieces.push_back({copy_name(h.name, i), h.edge, std::nullopt, std::nullopt});
  std::vector<std::vector<long>> offsets(surface.fpiece_count());
  for (int fi = 0; fi < surface.fpiece_count(); ++fi) {
    const auto& f = d.fpieces[fi];
    const auto& word = S.face(f.face).word;
    long c = 0;
    for (std::size_t k = 0; k < word.size(); ++k) {
      offsets[fi].push_back(c);
      c += word[k].sign * phi[f.handles[k]];
    }
    if (c != 0) throw internal("cover cocycle does not vanish on a cellular disc");
    for (int i = 0; i < n; ++i) {
      FPiece copy{copy_name(f.name, i), f.face, f.sign, {}};
      for (std::size_t k = 0; k < word.size(); ++k) {
        const int h = f.handles[k];
        const long level = i + offsets[fi][k] - (word[k].sign > 0 ? 0 : phi[h]);
        copy.handles.push_back(h * n + mod(level));
      }
      out.fpieces.push_back(std::move(copy));
    }
  }
  for (const auto& v : d.vpieces)
    for (int j = 0; j < n; ++j) {
      VPiece copy{copy_name(v.name, j), v.vertex, {}, {}};
      for (std::size_t t = 0; t < v.ends.size(); ++t) {
        const auto he = v.ends[t];
        copy.ends.push_back({he.handle * n + mod(j - (he.end == 0 ? 0 : phi[he.handle])), he.end});
        if (const auto& g = v.gaps[t])
          copy.gaps.push_back(CornerRef{g->fpiece * n + mod(j - offsets[g->fpiece][g->corner]), g->corner});
        else
          copy.gaps.push_back(std::nullopt);
      }
      out.vpieces.push_back(std::move(copy));
    }
  glue_sides(out);

  std::map<std::pair<int, int>, int> dart_circuit;
  std::map<int, int> disc_circuit;
  const auto& old = surface.circuits();
  for (int c = 0; c < static_cast<int>(old.size()); ++c) {
    for (const auto& dart : old[c].darts) dart_circuit[{dart.handle, side_index(dart.side)}] = c;
    if (old[c].vpiece) disc_circuit[*old[c].vpiece] = c;
  }
  for (const auto& c : AdmissibleSurface::trace(out)) {
    BoundaryAssignment ba;
    int oc;
    int mult = 1;
    if (c.vpiece) {
      oc = disc_circuit.at(*c.vpiece / n);
      ba.anchor = Anchor{-1, Side::L, *c.vpiece};
    } else {
      const auto& first = c.darts.front();
      oc = dart_circuit.at({first.handle / n, side_index(first.side)});
      ba.anchor = Anchor{first.handle, first.side, -1};
      if (c.darts.size() % old[oc].darts.size() != 0) throw internal("lifted circuit length is not a multiple");
      mult = static_cast<int>(c.darts.size() / old[oc].darts.size());
    }
    const auto& base = d.boundary.at(old[oc].assignment);
    ba.circle = base.circle;
    ba.degree = base.degree * mult;
    ba.track = base.track.scaled(mult);
    out.boundary.push_back(std::move(ba));
  }
  AdmissibleSurface result(std::move(out));
  if (log) record(log, "cover", std::to_string(n), SurfaceMetrics::of(surface), SurfaceMetrics::of(result));
  return result;
}

// ---------------------------------------------------------------------------
// Gluing opposite discs

int glued_complex_chi_minus(const AdmissibleSurface& surface, int d1, int d2) {
  const auto [p, q] = opposite_pair(surface, d1, d2);
  const TwoComplex A = assemble(surface);
  const int base = surface.hpiece_count() + surface.vpiece_count();
  const auto& wp = A.face(base + p).word;
  const auto& wq = A.face(base + q).word;
  const int m = static_cast<int>(wp.size()) / 2;

  // Signed union-find on edges: parity[e] relates e to its root.
  const int E = A.edge_count();
  std::vector<int> parent(E), parity(E, 1);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::pair<int, int>(int)> find = [&](int e) -> std::pair<int, int> {
    if (parent[e] == e) return {e, 1};
    const auto [r, s] = find(parent[e]);
    parent[e] = r;
    parity[e] *= s;
    return {r, parity[e]};
  };
  UnionFind vertices(A.vertex_count());
  auto identify = [&](SignedEdge a, SignedEdge b) {
    vertices.unite(A.tail(a), A.tail(b));
    vertices.unite(A.head(a), A.head(b));
    const auto [ra, sa] = find(a.edge);
    const auto [rb, sb] = find(b.edge);
    const int rel = sa * a.sign * sb * b.sign;  // orientation of ra relative to rb
    if (ra == rb) {
      if (rel != 1) throw internal("gluing identifies an edge with its reverse");
      return;
    }
    parent[ra] = rb;
    parity[ra] = rel;
  };
  for (int k = 0; k < m; ++k) {
    identify(wp[2 * k], wq[2 * (m - 1 - k)].inverse());
    identify(wp[(2 * k + 2 * m - 1) % (2 * m)].inverse(), wq[2 * (m - 1 - k) + 1]);
  }

  std::map<int, int> vid, eid;
  std::vector<std::string> vnames;
  for (int v = 0; v < A.vertex_count(); ++v)
    if (vid.emplace(vertices.find(v), static_cast<int>(vnames.size())).second) vnames.push_back(A.vertex_name(vertices.find(v)));
  std::vector<EdgeCell> edges;
  for (int e = 0; e < E; ++e) {
    const int r = find(e).first;
    if (r != e) continue;
    eid[e] = static_cast<int>(edges.size());
    edges.push_back({vid.at(vertices.find(A.edge(e).source)), vid.at(vertices.find(A.edge(e).target)), A.edge(e).name});
  }
  std::vector<FaceCell> faces;
  for (int f = 0; f < A.face_count(); ++f) {
    if (f == base + p || f == base + q) continue;
    FaceCell face{{}, A.face(f).name};
    for (const auto& se : A.face(f).word) {
      const auto [r, s] = find(se.edge);
      face.word.push_back({eid.at(r), se.sign * s});
    }
    faces.push_back(std::move(face));
  }
  const TwoComplex glued(std::move(vnames), std::move(edges), std::move(faces));
  if (!surface_check(glued).is_surface) throw internal("glued complex is not a surface");
  return reduced_euler(glued);
}

AdmissibleSurface glue_opposite(const AdmissibleSurface& surface, int d1, int d2, MoveLog* log) {
  const auto [p, q] = opposite_pair(surface, d1, d2);
  const auto& P = surface.data().fpieces[p];
  const auto& Q = surface.data().fpieces[q];
  for (int h : P.handles)
    if (std::find(Q.handles.begin(), Q.handles.end(), h) != Q.handles.end())
      throw not_applicable("discs are adjacent; eliminate the fold instead");
  const int expected = glued_complex_chi_minus(surface, p, q);
  AdmissibleSurface out(splice(surface, p, q));
  if (log) {
    const auto before = SurfaceMetrics::of(surface), after = SurfaceMetrics::of(out);
    if (after.chi_minus == expected) {
      record(log, "glue", P.name + " " + Q.name, before, after);
    } else {
      SurfaceMetrics glued = after;
      glued.chi_minus = expected;
      record(log, "glue", P.name + " " + Q.name, before, glued);
      record(log, "compress", P.name + " " + Q.name, glued, after);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Promotion and component choice

Promotion promote_orientation_perfect(const AdmissibleSurface& surface, const Rational& eps) {
  if (eps <= 0) throw Error(ErrorKind::Precondition, "epsilon must be positive");
  Promotion out{surface, {}, 1, 0, ratio(surface), std::nullopt, std::nullopt};
  const auto report = standard_form_report(surface);
  if (report.orientation_perfect) {
    out.ratio_after = out.ratio_before;
    out.bound = out.ratio_before;
    return out;
  }
  if (!report.standard()) throw Error(ErrorKind::Precondition, "promotion requires a surface in standard form");
  const auto n = degree(surface).n;
  if (!n || *n <= 0) throw Error(ErrorKind::Precondition, "promotion requires a positive common degree");
  const Rational inverse = 1 / eps;
  Integer big_n;
  mpz_cdiv_q(big_n.get_mpz_t(), inverse.get_num_mpz_t(), inverse.get_den_mpz_t());
  out.cover_degree = static_cast<int>(big_n.get_si());

  std::optional<AdmissibleSurface> cur(cyclic_cover(surface, out.cover_degree, &out.log));
  while (true) {
    const auto& d = cur->data();
    std::vector<int> component_of(cur->fpiece_count(), -1);
    for (int c = 0; c < static_cast<int>(cur->components().size()); ++c)
      for (int f : cur->components()[c].fpieces) component_of[f] = c;
    std::optional<std::pair<int, int>> across, within;
    for (int a = 0; a < cur->fpiece_count(); ++a)
      for (int b = 0; b < cur->fpiece_count(); ++b) {
        if (d.fpieces[a].sign < 0 || d.fpieces[b].sign > 0 || d.fpieces[a].face != d.fpieces[b].face) continue;
        auto& slot = component_of[a] != component_of[b] ? across : within;
        if (!slot) slot = std::pair{a, b};
      }
    const auto pair = across ? across : within;
    if (!pair) break;
    cur.emplace(glue_opposite(*cur, pair->first, pair->second, &out.log));
    ++out.gluings;
    auto normal = make_standard_form(*cur);
    out.log.append(normal.log);
    cur.emplace(std::move(normal.surface));
  }
  out.surface = std::move(*cur);
  out.ratio_after = ratio(out.surface);
  out.bound = *out.ratio_before + ratio_of(2 * out.gluings, out.cover_degree * *n);
  if (!out.ratio_after || *out.ratio_after > *out.bound) throw internal("promotion exceeded its ratio bound");
  return out;
}

ComponentChoice best_connected_component(const AdmissibleSurface& surface) {
  std::optional<ComponentChoice> best;
  for (int c = 0; c < static_cast<int>(surface.components().size()); ++c) {
    AdmissibleSurface part(extract_components(surface, {c}));
    const auto n = degree(part).n;
    if (!n || *n <= 0) continue;
    const Rational r = ratio_of(-reduced_euler(part), *n);
    if (!best || r < best->ratio) best = ComponentChoice{std::move(part), c, r};
  }
  if (!best) throw Error(ErrorKind::Precondition, "no component has positive degree on the chain");
  return std::move(*best);
}

}  // namespace scltopo
