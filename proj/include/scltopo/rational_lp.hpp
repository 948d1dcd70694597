// Exact rational linear programs in equality form: minimize c.x subject to
// A x = b, x >= 0. Two-phase dense simplex (Dantzig pricing, Bland's rule
// after degenerate pivots) returning a primal point and a dual vector that
// certify optimality.
#pragma once

#include <string>
#include <vector>

#include "scltopo/arith.hpp"

namespace scltopo {

struct RationalLp {
  std::vector<std::string> variables;
  std::vector<Rational> objective;             // one entry per variable
  std::vector<std::vector<Rational>> rows;     // dense constraint rows
  std::vector<Rational> rhs;
  std::vector<std::string> row_names;

  int add_variable(std::string name, const Rational& cost);
  /// Adds sum coeff * x_var = value.
  void add_constraint(std::string name, const std::vector<std::pair<int, Rational>>& terms, const Rational& value);
  int variable_count() const { return static_cast<int>(variables.size()); }
  int constraint_count() const { return static_cast<int>(rows.size()); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpCertificate {
  LpStatus status = LpStatus::Infeasible;
  Rational optimum;
  std::vector<Rational> primal;  // per variable
  std::vector<Rational> dual;    // per constraint; c - A^T y >= 0 at optimality
  int pivots = 0;
};

LpCertificate solve_lp(const RationalLp& lp);

struct ReplayReport {
  bool primal_feasible = false;
  bool dual_feasible = false;
  bool objective_matches = false;  // c.x == optimum
  bool strong_duality = false;     // b.y == optimum
  bool ok() const { return primal_feasible && dual_feasible && objective_matches && strong_duality; }
};

/// Rechecks an Optimal certificate against the program exactly.
ReplayReport replay(const RationalLp& lp, const LpCertificate& certificate);

}  // namespace scltopo
