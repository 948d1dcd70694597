#include "scltopo/sclopt.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>

#include "scltopo/homlin.hpp"

namespace scltopo {

namespace {

Error parse_error(const std::string& why) { return Error(ErrorKind::Parse, why); }

char invert(char c) { return std::islower(static_cast<unsigned char>(c)) ? std::toupper(c) : std::tolower(c); }

class ChainParser {
 public:
  explicit ChainParser(std::string_view text) : text_(text) {}

  std::vector<ChainTerm> parse() {
    std::vector<ChainTerm> terms;
    skip();
    int sign = 1;
    if (peek() == '+' || peek() == '-') sign = take() == '-' ? -1 : 1;
    while (true) {
      skip();
      terms.push_back(term(sign));
      skip();
      if (done()) break;
      const char c = take();
      if (c != '+' && c != '-') throw parse_error(std::string("unexpected '") + c + "' in chain");
      sign = c == '-' ? -1 : 1;
    }
    return terms;
  }

 private:
  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }
  char take() {
    if (done()) throw parse_error("unexpected end of chain");
    return text_[pos_++];
  }
  void skip() {
    while (!done() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  void expect(char c) {
    skip();
    if (take() != c) throw parse_error(std::string("expected '") + c + "'");
  }
  int integer() {
    skip();
    const std::size_t start = pos_;
    while (!done() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw parse_error("expected an integer");
    if (pos_ - start > 9) throw parse_error("integer too large");
    return std::stoi(std::string(text_.substr(start, pos_ - start)));
  }

  ChainTerm term(int sign) {
    skip();
    int coeff = 1;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = integer();
      expect('*');
    }
    return {sign * coeff, word()};
  }

  std::string word() {
    std::string w;
    while (true) {
      skip();
      const char c = peek();
      if (done() || c == '+' || c == '-' || c == ',' || c == ']' || c == ')') break;
      w += factor();
    }
    return w;
  }

  std::string factor() {
    skip();
    const char c = take();
    std::string base;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      base = std::string(1, c);
    } else if (c == '[') {
      const std::string u = word();
      expect(',');
      const std::string v = word();
      expect(']');
      base = u + v + inverse_word(u) + inverse_word(v);
    } else if (c == '(') {
      base = word();
      expect(')');
    } else {
      throw parse_error(std::string("unexpected '") + c + "' in word");
    }
    skip();
    if (peek() != '^') return base;
    take();
    skip();
    bool inverse = false;
    if (peek() == '-') {
      take();
      inverse = true;
    }
    const int k = integer();
    std::string out;
    const std::string unit = inverse ? inverse_word(base) : base;
    for (int i = 0; i < k; ++i) out += unit;
    return out;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string free_reduce(std::string_view word) {
  std::string out;
  for (char c : word) {
    if (!out.empty() && out.back() == invert(c))
      out.pop_back();
    else
      out.push_back(c);
  }
  return out;
}

std::string cyclic_reduce(std::string_view word) {
  std::string w = free_reduce(word);
  std::size_t i = 0, j = w.size();
  while (j - i >= 2 && w[i] == invert(w[j - 1])) {
    ++i;
    --j;
  }
  return w.substr(i, j - i);
}

std::string inverse_word(std::string_view word) {
  std::string out(word.rbegin(), word.rend());
  for (char& c : out) c = invert(c);
  return out;
}

bool cyclic_equal(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  const std::string doubled = std::string(a) + std::string(a);
  return doubled.find(b) != std::string::npos;
}

OneChain parse_chain(std::string_view text, std::string_view basis) {
  ChainParser parser(text);
  OneChain chain;
  for (auto t : parser.parse()) {
    for (char c : t.word)
      if (!std::isalpha(static_cast<unsigned char>(c))) throw parse_error(std::string("unknown letter '") + c + "'");
    t.word = cyclic_reduce(t.word);
    if (t.word.empty()) throw parse_error("term reduces to the empty word");
    bool merged = false;
    for (auto& existing : chain.terms) {
      if (cyclic_equal(existing.word, t.word)) {
        existing.coefficient += t.coefficient;
        merged = true;
      } else if (cyclic_equal(existing.word, inverse_word(t.word))) {
        existing.coefficient -= t.coefficient;
        merged = true;
      }
      if (merged) break;
    }
    if (!merged) chain.terms.push_back(t);
  }
  std::erase_if(chain.terms, [](const ChainTerm& t) { return t.coefficient == 0; });
  if (chain.terms.empty()) throw parse_error("chain is zero after merging");

  std::set<char> letters;
  for (const auto& t : chain.terms)
    for (char c : t.word) letters.insert(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (basis.empty()) {
    chain.basis.assign(letters.begin(), letters.end());
  } else {
    std::set<char> seen;
    for (char c : basis)
      if (!std::islower(static_cast<unsigned char>(c)) || !seen.insert(c).second)
        throw parse_error("basis must list distinct lowercase letters");
    for (char c : letters)
      if (!seen.count(c)) throw parse_error(std::string("unknown letter '") + c + "'");
    chain.basis = std::string(basis);
  }
  return chain;
}

std::string print_chain(const OneChain& chain) {
  std::string out;
  for (std::size_t i = 0; i < chain.terms.size(); ++i) {
    const auto& t = chain.terms[i];
    const int a = std::abs(t.coefficient);
    if (i > 0)
      out += t.coefficient < 0 ? " - " : " + ";
    else if (t.coefficient < 0)
      out += "-";
    if (a != 1) out += std::to_string(a) + "*";
    out += t.word;
  }
  return out;
}

std::vector<Integer> homology_class(const OneChain& chain) {
  std::vector<Integer> out(chain.basis.size());
  for (const auto& t : chain.terms)
    for (char c : t.word) {
      const auto idx = chain.basis.find(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
      if (idx == std::string::npos) throw parse_error(std::string("letter '") + c + "' outside the basis");
      out[idx] += std::islower(static_cast<unsigned char>(c)) ? t.coefficient : -t.coefficient;
    }
  return out;
}

// ---------------------------------------------------------------------------
// The polygon LP

SclResult scl_lp(const OneChain& chain, SclMethod method) {
  SclResult res;
  const auto h = homology_class(chain);
  if (std::any_of(h.begin(), h.end(), [](const Integer& x) { return x != 0; })) {
    res.infinite = true;
    return res;
  }
  // Positions: every letter of every term, with positive multiplicity.
  struct Position {
    int term;
    char letter;
    int next, prev;
  };
  std::vector<Position> pos;
  std::vector<int> weight;
  for (std::size_t ti = 0; ti < chain.terms.size(); ++ti) {
    const auto& t = chain.terms[ti];
    if (t.coefficient == 0) continue;
    const std::string w = t.coefficient > 0 ? cyclic_reduce(t.word) : cyclic_reduce(inverse_word(t.word));
    if (w.empty()) throw Error(ErrorKind::Precondition, "chain term reduces to the empty word");
    const int base = static_cast<int>(pos.size()), len = static_cast<int>(w.size());
    for (int j = 0; j < len; ++j)
      pos.push_back({static_cast<int>(weight.size()), w[j], base + (j + 1) % len, base + (j - 1 + len) % len});
    weight.push_back(std::abs(t.coefficient));
  }
  const int P = static_cast<int>(pos.size());
  if (P == 0) return res;

  // Rectangles pair inverse letters; each has two oriented sides (p,q), (q,p).
  // Side (p,q) runs from corner p to corner prev(q) of the disc piece it
  // bounds, so there is at most one side from a corner u to a corner v.
  std::vector<std::pair<int, int>> sides;  // ordered pairs
  std::vector<std::vector<int>> side_from(P, std::vector<int>(P, -1));
  for (int p = 0; p < P; ++p)
    for (int q = 0; q < P; ++q)
      if (pos[q].letter == invert(pos[p].letter)) {
        side_from[p][pos[q].prev] = static_cast<int>(sides.size());
        sides.emplace_back(p, q);
      }

  // A disc piece: its rectangle sides, its objective coefficient -chi/2 and, for
  // triangles, the diagonals it uses (+1 leaving the fan corner, -1 entering).
  struct Piece {
    std::string name;
    std::vector<int> sides;
    Rational cost;
    std::vector<std::pair<std::pair<int, int>, int>> diagonals;
  };
  std::vector<Piece> pieces;
  const Rational half = ratio_of(-1, 2);  // a disc piece without diagonals
  if (method == SclMethod::Polygons) {
    // Simple cycles of the side graph, each listed once from its lowest corner.
    constexpr std::size_t kCycleLimit = 200000;
    std::vector<int> stack;
    std::vector<bool> on_path(P, false);
    std::function<void(int, int)> dfs = [&](int start, int v) {
      for (int w = start; w < P; ++w) {
        const int s = side_from[v][w];
        if (s < 0) continue;
        if (w == start) {
          stack.push_back(s);
          std::string name = "c";
          for (int x : stack) name += "_" + std::to_string(sides[x].first);
          pieces.push_back({name, stack, half, {}});
          stack.pop_back();
          if (pieces.size() > kCycleLimit) throw Error(ErrorKind::Precondition, "chain too large for the polygon LP");
        } else if (!on_path[w]) {
          on_path[w] = true;
          stack.push_back(s);
          dfs(start, w);
          stack.pop_back();
          on_path[w] = false;
        }
      }
    };
    for (int s = 0; s < P; ++s) {
      on_path[s] = true;
      dfs(s, s);
      on_path[s] = false;
    }
  } else {
    // A k-gon is a fan of k - 2 triangles (m, c_i, c_{i+1}) from its lowest
    // corner m; the middle edge is always a rectangle side, the outer edges are
    // sides or diagonals. Each piece adds 1 to chi and each diagonal, shared
    // by two triangles, subtracts 1, so a triangle with d diagonals costs (d - 2)/4.
    for (int u = 0; u < P; ++u) {
      if (side_from[u][u] >= 0) pieces.push_back({"m_" + std::to_string(u), {side_from[u][u]}, half, {}});
      for (int v = u + 1; v < P; ++v)
        if (side_from[u][v] >= 0 && side_from[v][u] >= 0)
          pieces.push_back({"b_" + std::to_string(u) + "_" + std::to_string(v), {side_from[u][v], side_from[v][u]}, half, {}});
    }
    for (int m = 0; m < P; ++m)
      for (int u = m + 1; u < P; ++u)
        for (int v = m + 1; v < P; ++v) {
          const int mid = side_from[u][v];
          if (u == v || mid < 0) continue;
          for (int first = 0; first < 2; ++first)
            for (int last = 0; last < 2; ++last) {
              const int in = side_from[m][u], out = side_from[v][m];
              if ((first == 0 && in < 0) || (last == 0 && out < 0)) continue;
              Piece t{"t_" + std::to_string(m) + "_" + std::to_string(u) + (first ? "d" : "s") + "_" +
                          std::to_string(v) + (last ? "d" : "s"),
                      {mid}, ratio_of(first + last - 2, 4), {}};
              if (first)
                t.diagonals.push_back({{m, u}, 1});
              else
                t.sides.push_back(in);
              if (last)
                t.diagonals.push_back({{m, v}, -1});
              else
                t.sides.push_back(out);
              pieces.push_back(std::move(t));
            }
        }
  }

  RationalLp& lp = res.lp;
  std::map<std::pair<int, int>, int> rect_var;
  for (int p = 0; p < P; ++p)
    for (int q = p + 1; q < P; ++q)
      if (pos[q].letter == invert(pos[p].letter)) {
        rect_var[{p, q}] = lp.add_variable("r" + std::to_string(p) + "_" + std::to_string(q), Rational(1, 2));
        ++res.rectangles;
      }
  std::vector<int> piece_var;
  for (const auto& pc : pieces) piece_var.push_back(lp.add_variable(pc.name, pc.cost));
  res.pieces = static_cast<int>(pieces.size());
  auto rect_of = [&](int p, int q) { return rect_var.at({std::min(p, q), std::max(p, q)}); };
  for (int p = 0; p < P; ++p) {
    std::vector<std::pair<int, Rational>> terms;
    for (int q = 0; q < P; ++q)
      if (pos[q].letter == invert(pos[p].letter)) terms.emplace_back(rect_of(p, q), 1);
    lp.add_constraint("cover" + std::to_string(p), terms, weight[pos[p].term]);
  }
  std::vector<std::vector<std::pair<int, Rational>>> side_terms(sides.size());
  std::map<std::pair<int, int>, std::vector<std::pair<int, Rational>>> diagonal_terms;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    for (int s : pieces[i].sides) side_terms[s].emplace_back(piece_var[i], 1);
    for (const auto& [d, sign] : pieces[i].diagonals) diagonal_terms[d].emplace_back(piece_var[i], sign);
  }
  for (std::size_t s = 0; s < sides.size(); ++s) {
    auto terms = side_terms[s];
    terms.emplace_back(rect_of(sides[s].first, sides[s].second), -1);
    lp.add_constraint("side" + std::to_string(sides[s].first) + "_" + std::to_string(sides[s].second), terms, 0);
  }
  for (const auto& [d, terms] : diagonal_terms)
    lp.add_constraint("diag" + std::to_string(d.first) + "_" + std::to_string(d.second), terms, 0);

  res.certificate = solve_lp(lp);
  if (res.certificate.status != LpStatus::Optimal)
    throw Error(ErrorKind::Internal, "scl LP is not solvable although the chain is a boundary");
  res.value = res.certificate.optimum;
  return res;
}

Rational scl_upper_from_surface(const AdmissibleSurface& surface) {
  const auto info = degree(surface);
  if (!info.n || *info.n <= 0)
    throw Error(ErrorKind::Precondition, "surface needs one positive degree on every circle");
  for (const auto& ba : surface.data().boundary)
    if (ba.degree < 0) throw Error(ErrorKind::Precondition, "surface is not monotone");
  return ratio_of(-reduced_euler(surface), 2 * *info.n);
}

// ---------------------------------------------------------------------------
// Rotation quasimorphism via cellular area

RotStructure RotStructure::balanced(const TwoComplex& surface) {
  RotStructure rot;
  rot.surface = surface;
  int total = 0;
  for (const auto& f : surface.faces()) total += static_cast<int>(f.degree()) - 2;
  const int chi = euler_characteristic(surface);
  if (total <= 0 || chi >= 0) throw Error(ErrorKind::Precondition, "balanced areas need faces of degree >= 3 and chi < 0");
  for (const auto& f : surface.faces()) rot.weights.push_back(ratio_of(-2 * chi * (static_cast<int>(f.degree()) - 2), total));
  rot.validate();
  return rot;
}

void RotStructure::validate() const {
  if (static_cast<int>(weights.size()) != surface.face_count())
    throw Error(ErrorKind::Precondition, "one area weight per face required");
  Rational total;
  for (const auto& w : weights) {
    if (w <= 0) throw Error(ErrorKind::Precondition, "area weights must be positive");
    total += w;
  }
  if (total != -2 * euler_characteristic(surface)) throw Error(ErrorKind::Precondition, "areas must sum to -2 chi");
  if (homology(surface, Ring::Q).rank(2) != 0) throw Error(ErrorKind::Precondition, "rot needs H2 = 0");
}

Rational rot_value(const RotStructure& rot, const std::vector<LoopTerm>& chain) {
  rot.validate();
  const TwoComplex& S = rot.surface;
  std::vector<Rational> c(S.edge_count());
  bool zero = true;
  for (const auto& t : chain)
    for (const auto& se : t.word) {
      if (se.edge < 0 || se.edge >= S.edge_count()) throw Error(ErrorKind::UnknownCell, "chain uses an unknown edge");
      // Read with the surface on the right: the chain equals minus d2 of b.
      c[se.edge] -= t.coefficient * se.sign;
    }
  for (const auto& x : c) zero = zero && x == 0;
  if (zero) return 0;
  const auto b = solve(to_rational(boundary_matrices(S).d2), c);
  if (!b) throw Error(ErrorKind::Precondition, "chain is not a cellular boundary");
  Rational area;
  for (int f = 0; f < S.face_count(); ++f) area += (*b)[f] * rot.weights[f];
  return area / 2;
}

Sandwich bavard_sandwich(const RotStructure& rot, const std::vector<LoopTerm>& chain, const AdmissibleSurface* witness) {
  Sandwich s;
  s.rot = rot_value(rot, chain);
  s.lower = abs(s.rot) / 2;
  if (witness) s.upper = scl_upper_from_surface(*witness);
  if (s.upper && *s.upper < s.lower) throw Error(ErrorKind::Internal, "witness bound lies below the rot lower bound");
  return s;
}

InclusionReport scl_compare_under_inclusion(const OneChain& chain, std::string_view ambient) {
  for (char c : chain.basis)
    if (ambient.find(c) == std::string_view::npos)
      throw Error(ErrorKind::Precondition, "ambient basis must contain the chain's basis");
  OneChain big = chain;
  big.basis = std::string(ambient);
  const auto small = scl_lp(chain);
  const auto large = scl_lp(big);
  InclusionReport rep;
  rep.sub_infinite = small.infinite;
  rep.ambient_infinite = large.infinite;
  rep.sub_value = small.value;
  rep.ambient_value = large.value;
  if (!small.infinite && !large.infinite) {
    rep.gap = small.value - large.value;
    rep.monotone = large.value <= small.value;
    rep.equal = large.value == small.value;
  } else {
    rep.monotone = small.infinite || !large.infinite;
    rep.equal = small.infinite == large.infinite;
  }
  return rep;
}

}  // namespace scltopo
