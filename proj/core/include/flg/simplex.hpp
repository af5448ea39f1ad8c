#pragma once
#include <optional>
#include <utility>
#include <vector>

#include "flg/scalar.hpp"

namespace flg {

/// Sparse linear constraint over nonnegative variables x_0 .. x_{n-1}:
/// sum of coeff * x  (= | <=)  rhs.
struct LinearConstraint {
  enum Relation { kEq, kLe };
  std::vector<std::pair<int, Scalar>> terms;
  Relation rel = kEq;
  Scalar rhs;
};

struct LinearSystem {
  int num_vars = 0;
  std::vector<LinearConstraint> rows;
};

/// Exact phase-1 simplex with Bland's rule. Returns a feasible point with
/// x >= 0, or nullopt when the system is infeasible.
std::optional<std::vector<Scalar>> find_feasible_point(const LinearSystem& sys);

struct LpOptimum {
  bool feasible = false;
  bool bounded = true;
  Scalar value;
  std::vector<Scalar> point;
};

/// Exact two-phase simplex maximizing a sparse linear objective over the
/// system (x >= 0 implicit).
LpOptimum maximize(const LinearSystem& sys,
                   const std::vector<std::pair<int, Scalar>>& objective);

}  // namespace flg
