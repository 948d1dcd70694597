#include "scltopo/homlin.hpp"

#include <algorithm>
#include <sstream>

namespace scltopo {

std::string to_string(Ring ring) { return ring == Ring::Z ? "z" : "q"; }

Ring parse_ring(std::string_view text) {
  if (text == "z" || text == "Z") return Ring::Z;
  if (text == "q" || text == "Q") return Ring::Q;
  throw Error(ErrorKind::Parse, "unknown ring '" + std::string(text) + "' (expected z or q)");
}

// ---------------------------------------------------------------------------
// Rational linear algebra

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = Rational(m(i, j));
  return out;
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<int> rref(RatMatrix& a) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < a.cols() && row < a.rows(); ++col) {
    int p = -1;
    for (int i = row; i < a.rows(); ++i)
      if (a(i, col) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != row)
      for (int j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(row, j));
    const Rational inv = 1 / a(row, col);
    for (int j = col; j < a.cols(); ++j) a(row, j) *= inv;
    for (int i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col) == 0) continue;
      const Rational f = a(i, col);
      for (int j = col; j < a.cols(); ++j) a(i, j) -= f * a(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::vector<Integer> primitive_integer(const std::vector<Rational>& v) {
  Integer l = 1;
  for (const auto& x : v) {
    Integer d = x.get_den();
    Integer g = gcd(l, d);
    l = l / g * d;
  }
  std::vector<Integer> out(v.size());
  Integer g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rational s = v[i] * Rational(l);
    out[i] = s.get_num();
    g = gcd(g, out[i]);
  }
  if (g > 1)
    for (auto& x : out) x /= g;
  return out;
}

Integer abs_int(const Integer& x) { return x < 0 ? Integer(-x) : x; }

}  // namespace

int rank(const RatMatrix& m) {
  RatMatrix a = m;
  return static_cast<int>(rref(a).size());
}

std::vector<std::vector<Rational>> kernel_basis(const RatMatrix& m) {
  RatMatrix a = m;
  const auto pivots = rref(a);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (int free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(m.cols(), Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a(static_cast<int>(r), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<Rational>> solve(const RatMatrix& m, const std::vector<Rational>& b) {
  RatMatrix aug(m.rows(), m.cols() + 1);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b.at(i);
  }
  const auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  std::vector<Rational> x(m.cols(), Rational(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(static_cast<int>(r), m.cols());
  return x;
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::Internal, "determinant of a non-square matrix");
  RatMatrix a = to_rational(m);
  Rational det = 1;
  const int n = m.rows();
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i)
      if (a(i, c) != 0) {
        p = i;
        break;
      }
    if (p < 0) return 0;
    if (p != c) {
      for (int j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (int i = c + 1; i < n; ++i) {
      if (a(i, c) == 0) continue;
      const Rational f = a(i, c) / a(c, c);
      for (int j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det.get_num();
}

// ---------------------------------------------------------------------------
// Chains

Rational ChainVec::coefficient(int cell) const {
  auto it = terms_.find(cell);
  return it == terms_.end() ? Rational(0) : it->second;
}

void ChainVec::add(int cell, const Rational& value) {
  if (value == 0) return;
  auto [it, inserted] = terms_.emplace(cell, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0) terms_.erase(it);
  }
}

std::vector<int> ChainVec::support() const {
  std::vector<int> s;
  for (const auto& [cell, _] : terms_) s.push_back(cell);
  return s;
}

ChainVec& ChainVec::operator+=(const ChainVec& other) {
  for (const auto& [cell, v] : other.terms_) add(cell, v);
  return *this;
}

ChainVec& ChainVec::operator-=(const ChainVec& other) {
  for (const auto& [cell, v] : other.terms_) add(cell, -v);
  return *this;
}

ChainVec ChainVec::scaled(const Rational& factor) const {
  ChainVec out(ring_);
  for (const auto& [cell, v] : terms_) out.add(cell, v * factor);
  return out;
}

std::string print_chain(const ChainVec& chain, const std::vector<std::string>& names) {
  std::ostringstream out;
  for (const auto& [cell, v] : chain.terms())
    out << to_string(v) << ' ' << (cell < static_cast<int>(names.size()) ? names[cell] : std::to_string(cell)) << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// Smith normal form

std::vector<Integer> SnfResult::diagonal() const {
  std::vector<Integer> d;
  for (int i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
  return d;
}

SnfResult smith_normal_form(const IntMatrix& m) {
  const int rows = m.rows(), cols = m.cols();
  IntMatrix a = m;
  IntMatrix u = IntMatrix::identity(rows), v = IntMatrix::identity(cols);

  auto swap_rows = [&](int i, int j) {
    if (i == j) return;
    for (int c = 0; c < cols; ++c) std::swap(a(i, c), a(j, c));
    for (int c = 0; c < rows; ++c) std::swap(u(i, c), u(j, c));
  };
  auto swap_cols = [&](int i, int j) {
    if (i == j) return;
    for (int r = 0; r < rows; ++r) std::swap(a(r, i), a(r, j));
    for (int r = 0; r < cols; ++r) std::swap(v(r, i), v(r, j));
  };
  // row_i += q * row_j
  auto add_row = [&](int i, int j, const Integer& q) {
    for (int c = 0; c < cols; ++c) a(i, c) += q * a(j, c);
    for (int c = 0; c < rows; ++c) u(i, c) += q * u(j, c);
  };
  auto add_col = [&](int i, int j, const Integer& q) {
    for (int r = 0; r < rows; ++r) a(r, i) += q * a(r, j);
    for (int r = 0; r < cols; ++r) v(r, i) += q * v(r, j);
  };

  for (int t = 0; t < std::min(rows, cols); ++t) {
    int pr = -1, pc = -1;
    Integer best;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j) {
        if (a(i, j) == 0) continue;
        Integer x = abs_int(a(i, j));
        if (pr < 0 || x < best) {
          best = x;
          pr = i;
          pc = j;
        }
      }
    if (pr < 0) break;
    swap_rows(t, pr);
    swap_cols(t, pc);

    for (;;) {
      bool clean = true;
      for (int i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        Integer q = a(i, t) / a(t, t);
        if (q != 0) add_row(i, t, -q);
        if (a(i, t) != 0) clean = false;
      }
      for (int j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        Integer q = a(t, j) / a(t, t);
        if (q != 0) add_col(j, t, -q);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) {
        int br = t, bc = t;
        Integer bx = abs_int(a(t, t));
        for (int i = t + 1; i < rows; ++i)
          if (a(i, t) != 0 && abs_int(a(i, t)) < bx) {
            bx = abs_int(a(i, t));
            br = i;
            bc = t;
          }
        for (int j = t + 1; j < cols; ++j)
          if (a(t, j) != 0 && abs_int(a(t, j)) < bx) {
            bx = abs_int(a(t, j));
            br = t;
            bc = j;
          }
        swap_rows(t, br);
        swap_cols(t, bc);
        continue;
      }
      int bad_row = -1;
      for (int i = t + 1; i < rows && bad_row < 0; ++i)
        for (int j = t + 1; j < cols; ++j)
          if (a(i, j) % a(t, t) != 0) {
            bad_row = i;
            break;
          }
      if (bad_row < 0) break;
      add_row(t, bad_row, 1);
    }
    if (a(t, t) < 0) {
      for (int c = 0; c < cols; ++c) a(t, c) = -a(t, c);
      for (int c = 0; c < rows; ++c) u(t, c) = -u(t, c);
    }
  }
  return {std::move(u), std::move(a), std::move(v)};
}

// ---------------------------------------------------------------------------
// Cellular chains and homology

BoundaryMatrices boundary_matrices(const TwoComplex& complex) {
  BoundaryMatrices b{IntMatrix(complex.edge_count(), complex.face_count()),
                     IntMatrix(complex.vertex_count(), complex.edge_count())};
  for (int f = 0; f < complex.face_count(); ++f)
    for (const auto& se : complex.face(f).word) b.d2(se.edge, f) += se.sign;
  for (int e = 0; e < complex.edge_count(); ++e) {
    b.d1(complex.edge(e).target, e) += 1;
    b.d1(complex.edge(e).source, e) -= 1;
  }
  if (!(b.d1 * b.d2).is_zero()) throw Error(ErrorKind::Internal, "d1 * d2 != 0");
  return b;
}

ChainVec boundary_of_faces(const TwoComplex& complex, const ChainVec& two_chain) {
  ChainVec out(two_chain.ring());
  for (const auto& [f, c] : two_chain.terms())
    for (const auto& se : complex.face(f).word) out.add(se.edge, c * se.sign);
  return out;
}

std::string HomologySummary::to_text() const {
  std::ostringstream out;
  for (std::size_t n = 0; n < degrees.size(); ++n) {
    out << 'H' << n << " rank " << degrees[n].rank;
    if (ring == Ring::Z) {
      out << " torsion [";
      for (std::size_t i = 0; i < degrees[n].torsion.size(); ++i) out << (i ? "," : "") << degrees[n].torsion[i];
      out << ']';
    }
    out << '\n';
  }
  return out.str();
}

HomologySummary chain_homology(const std::vector<IntMatrix>& differentials, const std::vector<int>& dims, Ring ring) {
  const int top = static_cast<int>(dims.size()) - 1;
  std::vector<int> ranks(dims.size() + 1, 0);  // ranks[n] = rank d_n
  for (int n = 1; n <= top; ++n) ranks[n] = rank(to_rational(differentials.at(n - 1)));
  HomologySummary out;
  out.ring = ring;
  for (int n = 0; n <= top; ++n) {
    HomologySummary::Degree deg;
    deg.rank = dims[n] - ranks[n] - ranks[n + 1];
    if (ring == Ring::Z && n + 1 <= top) {
      for (const auto& d : smith_normal_form(differentials[n]).diagonal())
        if (d > 1) deg.torsion.push_back(d);
    }
    out.degrees.push_back(std::move(deg));
  }
  return out;
}

HomologySummary homology(const TwoComplex& complex, Ring ring) {
  const auto b = boundary_matrices(complex);
  return chain_homology({b.d1, b.d2}, {complex.vertex_count(), complex.edge_count(), complex.face_count()}, ring);
}

QuotientComplex quotient_complex(const TwoComplex& complex, const Subcomplex& sub) {
  if (!sub.is_subcomplex_of(complex)) throw Error(ErrorKind::NotSubcomplex, "cell set is not a subcomplex");
  QuotientComplex q;
  for (int v = 0; v < complex.vertex_count(); ++v)
    if (!sub.has_vertex(v)) q.vertices.push_back(v);
  for (int e = 0; e < complex.edge_count(); ++e)
    if (!sub.has_edge(e)) q.edges.push_back(e);
  for (int f = 0; f < complex.face_count(); ++f)
    if (!sub.has_face(f)) q.faces.push_back(f);
  const auto b = boundary_matrices(complex);
  q.d2 = IntMatrix(static_cast<int>(q.edges.size()), static_cast<int>(q.faces.size()));
  for (std::size_t i = 0; i < q.edges.size(); ++i)
    for (std::size_t j = 0; j < q.faces.size(); ++j) q.d2(i, j) = b.d2(q.edges[i], q.faces[j]);
  q.d1 = IntMatrix(static_cast<int>(q.vertices.size()), static_cast<int>(q.edges.size()));
  for (std::size_t i = 0; i < q.vertices.size(); ++i)
    for (std::size_t j = 0; j < q.edges.size(); ++j) q.d1(i, j) = b.d1(q.vertices[i], q.edges[j]);
  return q;
}

HomologySummary relative_homology(const TwoComplex& complex, const Subcomplex& sub, Ring ring) {
  const auto q = quotient_complex(complex, sub);
  return chain_homology({q.d1, q.d2},
                        {static_cast<int>(q.vertices.size()), static_cast<int>(q.edges.size()),
                         static_cast<int>(q.faces.size())},
                        ring);
}

std::vector<ChainVec> relative_h2_basis(const TwoComplex& complex, const Subcomplex& sub) {
  const auto q = quotient_complex(complex, sub);
  std::vector<ChainVec> out;
  for (const auto& v : kernel_basis(to_rational(q.d2))) {
    ChainVec c(Ring::Q);
    for (std::size_t j = 0; j < v.size(); ++j) c.add(q.faces[j], v[j]);
    out.push_back(std::move(c));
  }
  return out;
}

int h1_inclusion_rank(const TwoComplex& complex, const Subcomplex& sub) {
  if (!sub.is_subcomplex_of(complex)) throw Error(ErrorKind::NotSubcomplex, "cell set is not a subcomplex");
  const auto b = boundary_matrices(complex);
  // Cycles of the subcomplex, expressed in the parent's edge coordinates.
  std::vector<int> sub_edges;
  for (int e = 0; e < complex.edge_count(); ++e)
    if (sub.has_edge(e)) sub_edges.push_back(e);
  RatMatrix d1_sub(complex.vertex_count(), static_cast<int>(sub_edges.size()));
  for (int v = 0; v < complex.vertex_count(); ++v)
    for (std::size_t j = 0; j < sub_edges.size(); ++j) d1_sub(v, j) = b.d1(v, sub_edges[j]);
  const auto cycles = kernel_basis(d1_sub);
  const int E = complex.edge_count();
  RatMatrix boundaries = to_rational(b.d2);
  RatMatrix combined(E, boundaries.cols() + static_cast<int>(cycles.size()));
  for (int i = 0; i < E; ++i)
    for (int j = 0; j < boundaries.cols(); ++j) combined(i, j) = boundaries(i, j);
  for (std::size_t k = 0; k < cycles.size(); ++k)
    for (std::size_t j = 0; j < sub_edges.size(); ++j)
      combined(sub_edges[j], boundaries.cols() + static_cast<int>(k)) = cycles[k][j];
  return rank(combined) - rank(boundaries);
}

int relative_h2_inclusion_rank(const TwoComplex& complex, const Subcomplex& x0, const Subcomplex& y) {
  const Subcomplex y0 = subcomplex_intersection(y, x0);
  const auto small = extract(complex, x0);
  // Y0 inside the extracted copy of X0.
  CellSet y0_cells;
  for (std::size_t i = 0; i < small.vertex_map.size(); ++i)
    if (y0.has_vertex(small.vertex_map[i])) y0_cells.vertices.push_back(static_cast<int>(i));
  for (std::size_t i = 0; i < small.edge_map.size(); ++i)
    if (y0.has_edge(small.edge_map[i])) y0_cells.edges.push_back(static_cast<int>(i));
  for (std::size_t i = 0; i < small.face_map.size(); ++i)
    if (y0.has_face(small.face_map[i])) y0_cells.faces.push_back(static_cast<int>(i));
  const Subcomplex y0_small = induced_subcomplex(small.complex, y0_cells);
  const auto basis = relative_h2_basis(small.complex, y0_small);
  if (basis.empty()) return 0;
  // Push forward into the quotient C2(X)/C2(Y); relative 2-cycles there
  // have no boundaries to quotient by, so the image rank is a matrix rank.
  const auto q = quotient_complex(complex, y);
  std::vector<int> position(complex.face_count(), -1);
  for (std::size_t j = 0; j < q.faces.size(); ++j) position[q.faces[j]] = static_cast<int>(j);
  RatMatrix image(static_cast<int>(q.faces.size()), static_cast<int>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k)
    for (const auto& [f, c] : basis[k].terms()) {
      const int parent = small.face_map[f];
      if (position[parent] >= 0) image(position[parent], static_cast<int>(k)) += c;
    }
  RatMatrix d2q = to_rational(q.d2);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    for (int i = 0; i < d2q.rows(); ++i) {
      Rational s = 0;
      for (int j = 0; j < d2q.cols(); ++j) s += d2q(i, j) * image(j, static_cast<int>(k));
      if (s != 0) throw Error(ErrorKind::Internal, "pushed-forward relative cycle is not a cycle");
    }
  }
  return rank(image);
}

// ---------------------------------------------------------------------------
// Mapping cone

ConeComplex::ConeComplex(const TwoComplex& complex, std::vector<LoopTerm> loops) : loops_(std::move(loops)) {
  faces_ = complex.face_count();
  edges_ = complex.edge_count();
  vertices_ = complex.vertex_count();
  for (const auto& term : loops_) {
    if (term.coefficient == 0 || term.word.empty()) throw Error(ErrorKind::InvalidChain, "empty chain term");
    if (!complex.is_closed_path(term.word)) throw Error(ErrorKind::InvalidChain, "chain term is not a closed edge path");
    EdgeWord w;
    const int reps = term.coefficient > 0 ? term.coefficient : -term.coefficient;
    for (int r = 0; r < reps; ++r) {
      if (term.coefficient > 0) {
        w.insert(w.end(), term.word.begin(), term.word.end());
      } else {
        for (auto it = term.word.rbegin(); it != term.word.rend(); ++it) w.push_back(it->inverse());
      }
    }
    circle_offset_.push_back(circle_edges_);
    circle_len_.push_back(static_cast<int>(w.size()));
    circle_edges_ += static_cast<int>(w.size());
    circle_words_.push_back(std::move(w));
  }
  // C2 = C2(X) + C1(circles); C1 = C1(X) + C0(circles); C0 = C0(X).
  d2_ = IntMatrix(edges_ + circle_edges_, faces_ + circle_edges_);
  d1_ = IntMatrix(vertices_, edges_ + circle_edges_);
  const auto b = boundary_matrices(complex);
  for (int e = 0; e < edges_; ++e)
    for (int f = 0; f < faces_; ++f) d2_(e, f) = b.d2(e, f);
  for (int v = 0; v < vertices_; ++v)
    for (int e = 0; e < edges_; ++e) d1_(v, e) = b.d1(v, e);
  for (int i = 0; i < circle_count(); ++i) {
    const int len = circle_len_[i], off = circle_offset_[i];
    for (int j = 0; j < len; ++j) {
      const SignedEdge se = circle_words_[i][j];
      const int col = faces_ + off + j;  // circle edge j : vertex j -> vertex j+1
      d2_(se.edge, col) += se.sign;      // gamma
      d2_(edges_ + off + (j + 1) % len, col) -= 1;  // -d
      d2_(edges_ + off + j, col) += 1;
      d1_(complex.tail(se), edges_ + off + j) += 1;  // gamma on circle vertex j
    }
  }
  if (!(d1_ * d2_).is_zero()) throw Error(ErrorKind::Internal, "mapping cone: d o d != 0");

  h2_basis_ = kernel_basis(to_rational(d2_));
  absolute_h2_rank_ = static_cast<int>(kernel_basis(to_rational(b.d2)).size());
  RatMatrix bnd = to_rational(b.d2);
  RatMatrix combined(edges_, faces_ + circle_count());
  for (int e = 0; e < edges_; ++e)
    for (int f = 0; f < faces_; ++f) combined(e, f) = bnd(e, f);
  for (int i = 0; i < circle_count(); ++i)
    for (const auto& se : circle_words_[i]) combined(se.edge, faces_ + i) += se.sign;
  gamma_kernel_rank_ = circle_count() - (rank(combined) - rank(bnd));
  if (h2_rank() != absolute_h2_rank_ + gamma_kernel_rank_)
    throw Error(ErrorKind::Internal, "mapping cone: long exact sequence rank identity fails");
}

HomologySummary ConeComplex::homology(Ring ring) const {
  return chain_homology({d1_, d2_}, {vertices_, edges_ + circle_edges_, faces_ + circle_edges_}, ring);
}

std::vector<Rational> ConeComplex::two_chain(const ChainVec& faces, const std::vector<Rational>& degrees) const {
  if (static_cast<int>(degrees.size()) != circle_count())
    throw Error(ErrorKind::InvalidChain, "degree vector has the wrong length");
  std::vector<Rational> out(faces_ + circle_edges_, Rational(0));
  for (const auto& [f, c] : faces.terms()) out.at(f) = c;
  for (int i = 0; i < circle_count(); ++i)
    for (int j = 0; j < circle_len_[i]; ++j) out[faces_ + circle_offset_[i] + j] = degrees[i];
  return out;
}

bool ConeComplex::is_cycle(const std::vector<Rational>& chain) const {
  for (int r = 0; r < d2_.rows(); ++r) {
    Rational s = 0;
    for (int c = 0; c < d2_.cols(); ++c)
      if (d2_(r, c) != 0) s += d2_(r, c) * chain.at(c);
    if (s != 0) return false;
  }
  return true;
}

std::vector<Rational> ConeComplex::coordinates(const std::vector<Rational>& cycle) const {
  if (!is_cycle(cycle)) throw Error(ErrorKind::InvalidChain, "cone chain is not a cycle");
  RatMatrix basis(d2_.cols(), h2_rank());
  for (int k = 0; k < h2_rank(); ++k)
    for (int r = 0; r < d2_.cols(); ++r) basis(r, k) = h2_basis_[k][r];
  auto x = solve(basis, cycle);
  if (!x) throw Error(ErrorKind::Internal, "cycle outside the span of the H2 basis");
  return *x;
}

std::vector<Rational> ConeComplex::boundary_degrees(const std::vector<Rational>& chain) const {
  std::vector<Rational> out;
  for (int i = 0; i < circle_count(); ++i) out.push_back(chain.at(faces_ + circle_offset_[i]));
  return out;
}

std::vector<Rational> ConeComplex::image_of_absolute(const ChainVec& cycle) const {
  return coordinates(two_chain(cycle, std::vector<Rational>(circle_count(), Rational(0))));
}

ConeHomologyReport cone_homology(const TwoComplex& complex, const std::vector<LoopTerm>& loops) {
  ConeComplex cone(complex, loops);
  ConeHomologyReport report;
  report.summary = cone.homology(Ring::Q);
  report.h2_basis = cone.h2_basis();
  RatMatrix images(cone.circle_count(), cone.h2_rank());
  for (int k = 0; k < cone.h2_rank(); ++k) {
    auto deg = cone.boundary_degrees(cone.h2_basis()[k]);
    for (int i = 0; i < cone.circle_count(); ++i) images(i, k) = deg[i];
    report.boundary_images.push_back(std::move(deg));
  }
  report.boundary_injective = rank(images) == cone.h2_rank();
  return report;
}

// ---------------------------------------------------------------------------
// Orientability

bool is_orientation_witness(const TwoComplex& complex, const ChainVec& chain) {
  for (int f = 0; f < complex.face_count(); ++f)
    if (chain.coefficient(f) == 0) return false;
  const auto bnd = boundary_subcomplex(complex);
  const ChainVec d = boundary_of_faces(complex, chain);
  for (const auto& [e, c] : d.terms())
    if (!bnd.has_edge(e)) return false;
  return true;
}

std::optional<ChainVec> is_orientable(const TwoComplex& complex, Ring ring) {
  const auto bnd = boundary_subcomplex(complex);
  const auto q = quotient_complex(complex, bnd);
  // Relative cycles: faces are all kept (a boundary subcomplex has no faces).
  RatMatrix rel(static_cast<int>(q.edges.size()), complex.face_count());
  const auto b = boundary_matrices(complex);
  for (std::size_t i = 0; i < q.edges.size(); ++i)
    for (int f = 0; f < complex.face_count(); ++f) rel(i, f) = b.d2(q.edges[i], f);
  std::vector<std::vector<Integer>> basis;
  for (const auto& v : kernel_basis(rel)) basis.push_back(primitive_integer(v));
  if (complex.face_count() == 0) return ChainVec(ring);
  std::vector<bool> covered(complex.face_count(), false);
  Integer max_entry = 0;
  for (const auto& v : basis)
    for (int f = 0; f < complex.face_count(); ++f)
      if (v[f] != 0) {
        covered[f] = true;
        if (abs_int(v[f]) > max_entry) max_entry = abs_int(v[f]);
      }
  if (std::find(covered.begin(), covered.end(), false) != covered.end()) return std::nullopt;

  // Weights p, p^2, ... ; with p > 2 max|entry| no coordinate can cancel,
  // but every candidate is re-verified anyway.
  for (long p = 3;; p += 2) {
    bool prime = true;
    for (long d = 3; d * d <= p; d += 2)
      if (p % d == 0) prime = false;
    if (!prime) continue;
    ChainVec witness(ring);
    Integer weight = p;
    for (const auto& v : basis) {
      for (int f = 0; f < complex.face_count(); ++f)
        if (v[f] != 0) witness.add(f, Rational(weight * v[f]));
      weight *= p;
    }
    if (is_orientation_witness(complex, witness)) return witness;
    if (Integer(p) > 2 * max_entry + 1) throw Error(ErrorKind::Internal, "orientation witness search failed");
  }
}

SupportLemmaVerdict check_support_lemma(const TwoComplex& complex, const Subcomplex& sub, Ring ring) {
  if (!sub.is_subcomplex_of(complex)) throw Error(ErrorKind::NotSubcomplex, "Y is not a subcomplex of X");
  if (!sub.contains(boundary_subcomplex(complex)))
    throw Error(ErrorKind::Precondition, "boundary of X is not contained in Y");
  if (!is_orientable(complex, ring)) throw Error(ErrorKind::Precondition, "X is not orientable over " + to_string(ring));
  SupportLemmaVerdict verdict;
  verdict.h2_rank = relative_homology(complex, sub, ring).rank(2);
  verdict.hypothesis_holds = verdict.h2_rank == 0;
  verdict.contains_all_faces = true;
  for (int f = 0; f < complex.face_count(); ++f)
    if (!sub.has_face(f)) verdict.contains_all_faces = false;
  if (verdict.hypothesis_holds && !verdict.contains_all_faces)
    throw Error(ErrorKind::Internal, "support lemma contradicted: H2(X,Y) = 0 but a 2-cell lies outside Y");
  if (verdict.hypothesis_holds) {
    const auto report = surface_check(complex);
    if (report.is_surface && report.boundary_vertices.empty() && boundary_subcomplex(complex).empty())
      verdict.equals_whole_surface = sub == full_subcomplex(complex);
  }
  return verdict;
}

}  // namespace scltopo
