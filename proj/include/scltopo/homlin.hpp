// Exact linear algebra over Z and Q: cellular chain complexes, Smith normal
// form, absolute / relative / mapping-cone homology and orientability.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scltopo/arith.hpp"
#include "scltopo/cellcx.hpp"

namespace scltopo {

enum class Ring { Z, Q };
std::string to_string(Ring ring);
Ring parse_ring(std::string_view text);

template <typename T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}

  static DenseMatrix identity(int n) {
    DenseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  T& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  const T& operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

  bool is_zero() const {
    for (const auto& x : data_)
      if (x != 0) return false;
    return true;
  }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorKind::Internal, "matrix dimension mismatch");
    DenseMatrix out(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (int j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
      }
    return out;
  }
  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = DenseMatrix<Integer>;
using RatMatrix = DenseMatrix<Rational>;

RatMatrix to_rational(const IntMatrix& m);
int rank(const RatMatrix& m);
/// Basis of the right kernel, one vector per free column of the reduced row
/// echelon form (deterministic).
std::vector<std::vector<Rational>> kernel_basis(const RatMatrix& m);
/// Some x with m x = b, or nullopt.
std::optional<std::vector<Rational>> solve(const RatMatrix& m, const std::vector<Rational>& b);
Integer determinant(const IntMatrix& m);

/// Sparse chain: cell id -> coefficient, no stored zeros.
class ChainVec {
 public:
  explicit ChainVec(Ring ring = Ring::Z) : ring_(ring) {}
  Ring ring() const { return ring_; }
  const std::map<int, Rational>& terms() const { return terms_; }
  Rational coefficient(int cell) const;
  void add(int cell, const Rational& value);
  bool empty() const { return terms_.empty(); }
  std::vector<int> support() const;
  ChainVec& operator+=(const ChainVec& other);
  ChainVec& operator-=(const ChainVec& other);
  friend ChainVec operator+(ChainVec a, const ChainVec& b) { return a += b; }
  friend ChainVec operator-(ChainVec a, const ChainVec& b) { return a -= b; }
  ChainVec scaled(const Rational& factor) const;
  friend bool operator==(const ChainVec& a, const ChainVec& b) { return a.terms_ == b.terms_; }

 private:
  Ring ring_;
  std::map<int, Rational> terms_;
};

/// Chain-file lines `<coeff> <cell>`; cell names resolved by `lookup`.
std::string print_chain(const ChainVec& chain, const std::vector<std::string>& names);

struct SnfResult {
  IntMatrix U, D, V;  // U * M * V = D
  std::vector<Integer> diagonal() const;
};

/// Pivot rule: smallest nonzero |entry| in the active block, ties broken by
/// lowest row then lowest column.
SnfResult smith_normal_form(const IntMatrix& m);

struct BoundaryMatrices {
  IntMatrix d2;  // edges x faces
  IntMatrix d1;  // vertices x edges
};
BoundaryMatrices boundary_matrices(const TwoComplex& complex);
ChainVec boundary_of_faces(const TwoComplex& complex, const ChainVec& two_chain);

struct HomologySummary {
  struct Degree {
    int rank = 0;
    std::vector<Integer> torsion;
  };
  Ring ring = Ring::Q;
  std::vector<Degree> degrees;  // index = homological degree
  int rank(int degree) const { return degree < static_cast<int>(degrees.size()) ? degrees[degree].rank : 0; }
  std::string to_text() const;
};

/// Homology of a chain complex given its differentials d_n : C_n -> C_{n-1}
/// for n = 1..top, and the dimension of every C_n.
HomologySummary chain_homology(const std::vector<IntMatrix>& differentials, const std::vector<int>& dims, Ring ring);

HomologySummary homology(const TwoComplex& complex, Ring ring);
/// Homology of the quotient complex C(X)/C(Y).
HomologySummary relative_homology(const TwoComplex& complex, const Subcomplex& sub, Ring ring);

/// Relative chain complex C(X)/C(Y) with the surviving cell ids.
struct QuotientComplex {
  std::vector<int> vertices, edges, faces;  // parent ids kept
  IntMatrix d2, d1;
};
QuotientComplex quotient_complex(const TwoComplex& complex, const Subcomplex& sub);

/// Basis of H2(X, Y; Q) = ker of the relative d2, as 2-chains of X.
std::vector<ChainVec> relative_h2_basis(const TwoComplex& complex, const Subcomplex& sub);

/// Rank of H1(Y; Q) -> H1(X; Q) induced by inclusion.
int h1_inclusion_rank(const TwoComplex& complex, const Subcomplex& sub);

/// Rank of H2(X0, Y0; Q) -> H2(X, Y; Q) with Y0 = Y n X0.
int relative_h2_inclusion_rank(const TwoComplex& complex, const Subcomplex& x0, const Subcomplex& y);

/// A closed edge loop of the complex carrying an integer multiplicity, as the
/// terms of an integral 1-chain.
struct LoopTerm {
  int coefficient = 1;
  EdgeWord word;
};

/// Algebraic mapping cone of gamma: C(circles) -> C(X), one circle per term
/// subdivided to |word| * |coefficient| edges.
class ConeComplex {
 public:
  ConeComplex(const TwoComplex& complex, std::vector<LoopTerm> loops);

  int face_count() const { return faces_; }
  int circle_count() const { return static_cast<int>(circle_len_.size()); }
  const std::vector<LoopTerm>& loops() const { return loops_; }
  /// Edge word traced by circle i (the term's word to the power coefficient).
  const EdgeWord& circle_word(int i) const { return circle_words_.at(i); }

  const IntMatrix& d2() const { return d2_; }
  const IntMatrix& d1() const { return d1_; }

  HomologySummary homology(Ring ring) const;
  /// Basis of H2(X, c; Q) (= 2-cycles of the cone), canonical order.
  const std::vector<std::vector<Rational>>& h2_basis() const { return h2_basis_; }

  /// Cone 2-chain (b, sum_i s_i [S^1_i]).
  std::vector<Rational> two_chain(const ChainVec& faces, const std::vector<Rational>& degrees) const;
  bool is_cycle(const std::vector<Rational>& chain) const;
  /// Coordinates of a cone 2-cycle in h2_basis(); throws if not a cycle.
  std::vector<Rational> coordinates(const std::vector<Rational>& cycle) const;
  /// Degree vector of a cone 2-chain: image under H2(X,c) -> H1(circles).
  std::vector<Rational> boundary_degrees(const std::vector<Rational>& chain) const;
  /// Cone coordinates of the absolute 2-cycle z in H2(X).
  std::vector<Rational> image_of_absolute(const ChainVec& cycle) const;

  int h2_rank() const { return static_cast<int>(h2_basis_.size()); }
  int absolute_h2_rank() const { return absolute_h2_rank_; }
  /// Rank of ker(gamma_* : H1(circles) -> H1(X)).
  int gamma_kernel_rank() const { return gamma_kernel_rank_; }

 private:
  std::vector<LoopTerm> loops_;
  std::vector<EdgeWord> circle_words_;
  std::vector<int> circle_len_, circle_offset_;
  int faces_ = 0, edges_ = 0, vertices_ = 0, circle_edges_ = 0;
  IntMatrix d2_, d1_;
  std::vector<std::vector<Rational>> h2_basis_;
  int absolute_h2_rank_ = 0, gamma_kernel_rank_ = 0;
};

struct ConeHomologyReport {
  HomologySummary summary;
  std::vector<std::vector<Rational>> h2_basis;
  std::vector<std::vector<Rational>> boundary_images;  // per basis vector
  bool boundary_injective = false;
};
ConeHomologyReport cone_homology(const TwoComplex& complex, const std::vector<LoopTerm>& loops);

/// Full-support relative 2-cycle in Z2(X, dX), or nullopt.
std::optional<ChainVec> is_orientable(const TwoComplex& complex, Ring ring);
/// True when `chain` is a relative cycle mod the boundary with every face in
/// its support.
bool is_orientation_witness(const TwoComplex& complex, const ChainVec& chain);

struct SupportLemmaVerdict {
  bool hypothesis_holds = false;  // H2(X, Y) = 0
  int h2_rank = 0;
  bool contains_all_faces = false;
  /// Closed orientable surface specialization: Y is all of X.
  std::optional<bool> equals_whole_surface;
};

/// Checks that an orientable complex X and a subcomplex Y with dX in Y and
/// H2(X, Y) = 0 has every 2-cell in Y. Precondition violations throw
/// Error(Precondition) with distinct messages.
SupportLemmaVerdict check_support_lemma(const TwoComplex& complex, const Subcomplex& sub, Ring ring);

}  // namespace scltopo
