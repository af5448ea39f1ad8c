#include "flg/simplex.hpp"

#include <algorithm>

#include "flg/errors.hpp"

namespace flg {

namespace {

// Dense tableau simplex over Scalar. Variables: the system's own, then one
// slack per <= row, then one artificial per row. Bland's rule throughout.
class Tableau {
 public:
  explicit Tableau(const LinearSystem& sys) : n_(sys.num_vars) {
    const int m = static_cast<int>(sys.rows.size());
    int slacks = 0;
    for (const auto& row : sys.rows)
      if (row.rel == LinearConstraint::kLe) ++slacks;
    cols_ = n_ + slacks + m;  // artificials come last
    first_artificial_ = n_ + slacks;
    a_.assign(m, std::vector<Scalar>(cols_ + 1));
    basis_.assign(m, -1);

    int next_slack = n_;
    for (int i = 0; i < m; ++i) {
      const auto& row = sys.rows[i];
      for (const auto& [var, coeff] : row.terms) {
        if (var < 0 || var >= n_) throw InputError("simplex: bad variable");
        a_[i][var] += coeff;
      }
      a_[i][cols_] = row.rhs;
      if (row.rel == LinearConstraint::kLe) a_[i][next_slack++] = Scalar(1);
      if (a_[i][cols_].sign() < 0)
        for (int j = 0; j <= cols_; ++j) a_[i][j] = -a_[i][j];
      a_[i][first_artificial_ + i] = Scalar(1);
      basis_[i] = first_artificial_ + i;
    }
  }

  // Minimizes the sum of artificials; true iff it reaches zero.
  bool phase1() {
    std::vector<Scalar> cost(cols_);
    for (int j = first_artificial_; j < cols_; ++j) cost[j] = Scalar(1);
    run(cost, /*limit_artificials=*/false);
    Scalar value = objective_value(cost);
    if (value.sign() != 0) return false;
    expel_artificials();
    return true;
  }

  // Minimizes `cost` over the original + slack variables. Returns false
  // when unbounded.
  bool phase2(const std::vector<Scalar>& cost) {
    std::vector<Scalar> padded = cost;
    padded.resize(cols_);
    return run(padded, /*limit_artificials=*/true);
  }

  std::vector<Scalar> point(int num_vars) const {
    std::vector<Scalar> x(num_vars);
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (basis_[i] >= 0 && basis_[i] < num_vars)
        x[basis_[i]] = a_[i][cols_];
    return x;
  }

  Scalar objective_value(const std::vector<Scalar>& cost) const {
    Scalar value;
    for (std::size_t i = 0; i < basis_.size(); ++i)
      value += cost[basis_[i]] * a_[i][cols_];
    return value;
  }

 private:
  // Reduced cost of column j under `cost`.
  Scalar reduced(const std::vector<Scalar>& cost, int j) const {
    Scalar r = cost[j];
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (!a_[i][j].is_zero()) r -= cost[basis_[i]] * a_[i][j];
    return r;
  }

  void pivot(int row, int col) {
    Scalar inv = Scalar(1) / a_[row][col];
    for (int j = 0; j <= cols_; ++j)
      if (!a_[row][j].is_zero()) a_[row][j] *= inv;
    for (std::size_t i = 0; i < a_.size(); ++i) {
      if (static_cast<int>(i) == row || a_[i][col].is_zero()) continue;
      Scalar factor = a_[i][col];
      for (int j = 0; j <= cols_; ++j)
        if (!a_[row][j].is_zero()) a_[i][j] -= factor * a_[row][j];
    }
    basis_[row] = col;
  }

  bool run(const std::vector<Scalar>& cost, bool limit_artificials) {
    const int usable = limit_artificials ? first_artificial_ : cols_;
    for (;;) {
      int entering = -1;
      for (int j = 0; j < usable; ++j) {
        if (reduced(cost, j).sign() < 0) {
          entering = j;
          break;  // Bland: smallest index
        }
      }
      if (entering < 0) return true;
      int leaving = -1;
      Scalar best_ratio;
      for (std::size_t i = 0; i < a_.size(); ++i) {
        if (a_[i][entering].sign() <= 0) continue;
        Scalar ratio = a_[i][cols_] / a_[i][entering];
        if (leaving < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leaving])) {
          leaving = static_cast<int>(i);
          best_ratio = ratio;
        }
      }
      if (leaving < 0) return false;  // unbounded
      pivot(leaving, entering);
    }
  }

  // After a zero-value phase 1, pivot artificials out of the basis; rows
  // with no usable column are redundant and can be neutralized.
  void expel_artificials() {
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (basis_[i] < first_artificial_) continue;
      int col = -1;
      for (int j = 0; j < first_artificial_; ++j)
        if (!a_[i][j].is_zero()) {
          col = j;
          break;
        }
      if (col >= 0) {
        pivot(static_cast<int>(i), col);
      } else {
        // Redundant row: everything is zero (rhs too, since phase 1 is 0).
        a_[i].assign(cols_ + 1, Scalar());
        a_[i][basis_[i]] = Scalar(1);
      }
    }
  }

  int n_;
  int cols_;
  int first_artificial_;
  std::vector<std::vector<Scalar>> a_;
  std::vector<int> basis_;
};

}  // namespace

std::optional<std::vector<Scalar>> find_feasible_point(const LinearSystem& sys) {
  Tableau tableau(sys);
  if (!tableau.phase1()) return std::nullopt;
  return tableau.point(sys.num_vars);
}

LpOptimum maximize(const LinearSystem& sys,
                   const std::vector<std::pair<int, Scalar>>& objective) {
  Tableau tableau(sys);
  LpOptimum result;
  if (!tableau.phase1()) return result;
  result.feasible = true;
  std::vector<Scalar> cost(sys.num_vars);
  for (const auto& [var, coeff] : objective) {
    if (var < 0 || var >= sys.num_vars)
      throw InputError("simplex: objective variable out of range");
    cost[var] -= coeff;  // maximize c.x == minimize -c.x
  }
  if (!tableau.phase2(cost)) {
    result.bounded = false;
    return result;
  }
  result.point = tableau.point(sys.num_vars);
  result.value = Scalar();
  for (const auto& [var, coeff] : objective)
    result.value += coeff * result.point[var];
  return result;
}

}  // namespace flg
