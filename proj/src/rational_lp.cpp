#include "scltopo/rational_lp.hpp"

#include <optional>

#include "scltopo/homlin.hpp"

namespace scltopo {

int RationalLp::add_variable(std::string name, const Rational& cost) {
  variables.push_back(std::move(name));
  objective.push_back(cost);
  for (auto& row : rows) row.emplace_back(0);
  return variable_count() - 1;
}

void RationalLp::add_constraint(std::string name, const std::vector<std::pair<int, Rational>>& terms,
                                const Rational& value) {
  std::vector<Rational> row(variables.size());
  for (const auto& [var, coeff] : terms) {
    if (var < 0 || var >= variable_count()) throw Error(ErrorKind::Internal, "constraint uses an unknown variable");
    row[var] += coeff;
  }
  rows.push_back(std::move(row));
  rhs.push_back(value);
  row_names.push_back(std::move(name));
}

namespace {

/// Dense tableau over columns 0..cols-1 with the right-hand side kept apart.
struct Tableau {
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  std::vector<int> basis;
  int pivots = 0;

  /// Nonzero columns of the last pivot row, shared with the cost update.
  std::vector<int> support;

  void pivot(int r, int c) {
    const Rational p = a[r][c];
    support.clear();
    for (std::size_t j = 0; j < a[r].size(); ++j)
      if (a[r][j] != 0) {
        a[r][j] /= p;
        support.push_back(static_cast<int>(j));
      }
    b[r] /= p;
    Rational f;
    for (int i = 0; i < static_cast<int>(a.size()); ++i) {
      if (i == r || a[i][c] == 0) continue;
      f = a[i][c];
      for (int j : support) a[i][j] -= f * a[r][j];
      b[i] -= f * b[r];
    }
    basis[r] = c;
    ++pivots;
  }

  /// Minimizes cost over columns allowed by `usable`; false when unbounded.
  /// Pricing takes the most negative reduced cost (lowest index on ties) and
  /// switches to Bland's rule after a degenerate pivot until the objective
  /// moves again, which rules out cycling.
  bool optimize(const std::vector<Rational>& cost, const std::vector<bool>& usable) {
    const int cols = static_cast<int>(cost.size());
    std::vector<Rational> reduced(cost);
    for (std::size_t i = 0; i < a.size(); ++i) {
      const Rational cb = cost[basis[i]];
      if (cb == 0) continue;
      for (int j = 0; j < cols; ++j)
        if (a[i][j] != 0) reduced[j] -= cb * a[i][j];
    }
    bool bland = false;
    while (true) {
      int enter = -1;
      for (int j = 0; j < cols; ++j) {
        if (!usable[j] || reduced[j] >= 0) continue;
        if (enter < 0 || (!bland && reduced[j] < reduced[enter])) enter = j;
        if (bland) break;
      }
      if (enter < 0) return true;
      int leave = -1;
      Rational best;
      for (int i = 0; i < static_cast<int>(a.size()); ++i) {
        if (a[i][enter] <= 0) continue;
        const Rational ratio = b[i] / a[i][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      bland = best == 0;
      pivot(leave, enter);
      const Rational f = reduced[enter];
      for (int j : support)
        if (j < cols) reduced[j] -= f * a[leave][j];
    }
  }
};

}  // namespace

LpCertificate solve_lp(const RationalLp& lp) {
  const int n = lp.variable_count(), m = lp.constraint_count();
  LpCertificate cert;
  Tableau t;
  t.a.assign(m, std::vector<Rational>(n + m));
  t.b.resize(m);
  t.basis.resize(m);
  for (int i = 0; i < m; ++i) {
    const int s = lp.rhs[i] < 0 ? -1 : 1;
    for (int j = 0; j < n; ++j) t.a[i][j] = s * lp.rows[i][j];
    t.a[i][n + i] = 1;
    t.b[i] = s * lp.rhs[i];
    t.basis[i] = n + i;
  }

  // Phase one: drive the artificial columns to zero.
  std::vector<Rational> phase1(n + m);
  for (int i = 0; i < m; ++i) phase1[n + i] = 1;
  t.optimize(phase1, std::vector<bool>(n + m, true));
  Rational infeasibility;
  for (int i = 0; i < m; ++i)
    if (t.basis[i] >= n) infeasibility += t.b[i];
  if (infeasibility != 0) {
    cert.status = LpStatus::Infeasible;
    cert.pivots = t.pivots;
    return cert;
  }
  std::vector<bool> redundant(m, false);
  for (int i = 0; i < m; ++i) {
    if (t.basis[i] < n) continue;
    int c = -1;
    for (int j = 0; j < n && c < 0; ++j)
      if (t.a[i][j] != 0) c = j;
    if (c >= 0)
      t.pivot(i, c);
    else
      redundant[t.basis[i] - n] = true;  // that original row depends on the others
  }

  // Phase two over the original columns.
  std::vector<Rational> cost(n + m);
  for (int j = 0; j < n; ++j) cost[j] = lp.objective[j];
  std::vector<bool> usable(n + m, false);
  for (int j = 0; j < n; ++j) usable[j] = true;
  if (!t.optimize(cost, usable)) {
    cert.status = LpStatus::Unbounded;
    cert.pivots = t.pivots;
    return cert;
  }
  cert.status = LpStatus::Optimal;
  cert.pivots = t.pivots;
  cert.primal.assign(n, 0);
  for (int i = 0; i < m; ++i)
    if (t.basis[i] < n) cert.primal[t.basis[i]] = t.b[i];
  for (int j = 0; j < n; ++j) cert.optimum += lp.objective[j] * cert.primal[j];

  // Duals: B^T y = c_B over the non-redundant rows of the original system.
  std::vector<int> live;
  for (int i = 0; i < m; ++i)
    if (!redundant[i]) live.push_back(i);
  RatMatrix bt(static_cast<int>(live.size()), static_cast<int>(live.size()));
  std::vector<Rational> cb(live.size());
  std::size_t col = 0;
  for (int i = 0; i < m; ++i) {
    const int var = t.basis[i];
    if (var >= n) continue;
    for (std::size_t r = 0; r < live.size(); ++r) bt(static_cast<int>(col), static_cast<int>(r)) = lp.rows[live[r]][var];
    cb[col] = lp.objective[var];
    ++col;
  }
  cert.dual.assign(m, 0);
  if (!live.empty()) {
    const auto y = solve(bt, cb);
    if (!y) throw Error(ErrorKind::Internal, "optimal basis is singular");
    for (std::size_t r = 0; r < live.size(); ++r) cert.dual[live[r]] = (*y)[r];
  }
  return cert;
}

ReplayReport replay(const RationalLp& lp, const LpCertificate& cert) {
  ReplayReport rep;
  const int n = lp.variable_count(), m = lp.constraint_count();
  if (cert.status != LpStatus::Optimal || static_cast<int>(cert.primal.size()) != n ||
      static_cast<int>(cert.dual.size()) != m)
    return rep;
  rep.primal_feasible = true;
  for (const auto& x : cert.primal)
    if (x < 0) rep.primal_feasible = false;
  for (int i = 0; i < m && rep.primal_feasible; ++i) {
    Rational lhs;
    for (int j = 0; j < n; ++j) lhs += lp.rows[i][j] * cert.primal[j];
    if (lhs != lp.rhs[i]) rep.primal_feasible = false;
  }
  rep.dual_feasible = true;
  for (int j = 0; j < n && rep.dual_feasible; ++j) {
    Rational reduced = lp.objective[j];
    for (int i = 0; i < m; ++i) reduced -= lp.rows[i][j] * cert.dual[i];
    if (reduced < 0) rep.dual_feasible = false;
  }
  Rational primal_value, dual_value;
  for (int j = 0; j < n; ++j) primal_value += lp.objective[j] * cert.primal[j];
  for (int i = 0; i < m; ++i) dual_value += lp.rhs[i] * cert.dual[i];
  rep.objective_matches = primal_value == cert.optimum;
  rep.strong_duality = dual_value == cert.optimum;
  return rep;
}

}  // namespace scltopo
