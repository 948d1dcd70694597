// Shared helpers for the test suites.
#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "scltopo/cellcx.hpp"
#include "scltopo/fixtures.hpp"
#include "scltopo/homlin.hpp"

namespace scltopo::testing {

/// Closure of a random cell selection, each cell kept with probability p.
inline Subcomplex random_subcomplex(const TwoComplex& x, std::mt19937_64& rng, double p = 0.4) {
  std::bernoulli_distribution keep(p);
  CellSet cells;
  for (int v = 0; v < x.vertex_count(); ++v)
    if (keep(rng)) cells.vertices.push_back(v);
  for (int e = 0; e < x.edge_count(); ++e)
    if (keep(rng)) cells.edges.push_back(e);
  for (int f = 0; f < x.face_count(); ++f)
    if (keep(rng)) cells.faces.push_back(f);
  return induced_subcomplex(x, cells);
}

/// Alternating sum of the ranks.
inline int alternating_sum(const HomologySummary& h) {
  int s = 0;
  for (int n = 0; n < static_cast<int>(h.degrees.size()); ++n) s += (n % 2 ? -1 : 1) * h.rank(n);
  return s;
}

inline std::vector<TwoComplex> all_complexes() {
  std::vector<TwoComplex> out;
  for (const auto& c : fixtures::complex_registry()) out.push_back(c.make());
  return out;
}

}  // namespace scltopo::testing

namespace scltopo::testing {

/// A subcomplex of the parent, intersected with `sub` and moved into the
/// extracted complex's ids.
inline Subcomplex restrict_to(const TwoComplex& parent, const InducedComplex& sub, const Subcomplex& y) {
  std::vector<int> iv(parent.vertex_count(), -1), ie(parent.edge_count(), -1), iff(parent.face_count(), -1);
  for (std::size_t i = 0; i < sub.vertex_map.size(); ++i) iv[sub.vertex_map[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < sub.edge_map.size(); ++i) ie[sub.edge_map[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < sub.face_map.size(); ++i) iff[sub.face_map[i]] = static_cast<int>(i);
  CellSet cells;
  const CellSet c = y.cells();
  for (int v : c.vertices)
    if (iv[v] >= 0) cells.vertices.push_back(iv[v]);
  for (int e : c.edges)
    if (ie[e] >= 0) cells.edges.push_back(ie[e]);
  for (int f : c.faces)
    if (iff[f] >= 0) cells.faces.push_back(iff[f]);
  return induced_subcomplex(sub.complex, cells);
}

/// Uniform random integer matrix with entries in [-range, range], about
/// half of them zero.
template <typename Rng>
IntMatrix random_int_matrix(Rng& rng, int rows, int cols, int range = 6) {
  std::uniform_int_distribution<int> val(-range, range);
  std::bernoulli_distribution zero(0.5);
  IntMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = zero(rng) ? 0 : val(rng);
  return m;
}

inline bool is_diagonal_chain(const IntMatrix& d) {
  for (int r = 0; r < d.rows(); ++r)
    for (int c = 0; c < d.cols(); ++c)
      if (r != c && d(r, c) != 0) return false;
  const int n = std::min(d.rows(), d.cols());
  for (int i = 0; i < n; ++i) {
    if (d(i, i) < 0) return false;
    if (i + 1 < n && d(i, i) == 0 && d(i + 1, i + 1) != 0) return false;
    if (i + 1 < n && d(i, i) != 0 && d(i + 1, i + 1) % d(i, i) != 0) return false;
  }
  return true;
}

}  // namespace scltopo::testing
