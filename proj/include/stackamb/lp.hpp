#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "stackamb/errors.hpp"
#include "stackamb/rational.hpp"

namespace stackamb {

enum class Sense { LessEq, Equal, GreaterEq };

struct LpRow {
  std::vector<Rat> coeffs;
  Sense sense = Sense::LessEq;
  Rat rhs;
};

// Per-variable bounds; nullopt means unbounded on that side.
struct VarBounds {
  std::optional<Rat> lower = Rat(0);
  std::optional<Rat> upper = std::nullopt;
};

// Dense exact-rational LP, maximizing objective . x.
struct LinearProgram {
  std::vector<Rat> objective;
  std::vector<LpRow> rows;
  std::vector<VarBounds> bounds;  // defaults to x >= 0 when empty

  std::size_t num_vars() const { return objective.size(); }

  void add_row(std::vector<Rat> coeffs, Sense sense, Rat rhs) {
    rows.push_back(LpRow{std::move(coeffs), sense, std::move(rhs)});
  }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Rat value;
  std::vector<Rat> point;
  std::vector<int> basis;  // final basic column indices, diagnostic only
};

namespace detail {

// Two-phase primal simplex on the standard form  max c.y, A y <= b, y >= 0.
// Bland's rule over the fixed column order keeps pivoting deterministic and
// cycle-free under exact arithmetic.
class SimplexTableau {
 public:
  SimplexTableau(const std::vector<std::vector<Rat>>& a,
                 const std::vector<Rat>& b, const std::vector<Rat>& c)
      : m_(a.size()), n_(c.size()) {
    cols_ = n_ + m_ + 1;  // structurals, slacks, artificial
    rhs_col_ = cols_;
    tab_.assign(m_ + 1, std::vector<Rat>(cols_ + 1));
    basis_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) tab_[i][j] = a[i][j];
      tab_[i][n_ + i] = 1;
      tab_[i][n_ + m_] = -1;
      tab_[i][rhs_col_] = b[i];
      basis_[i] = static_cast<int>(n_ + i);
    }
    objective_ = c;
  }

  // Returns false when infeasible.
  bool phase1() {
    std::size_t worst = m_;
    for (std::size_t i = 0; i < m_; ++i) {
      if (tab_[i][rhs_col_] < 0 && (worst == m_ || tab_[i][rhs_col_] < tab_[worst][rhs_col_]))
        worst = i;
    }
    if (worst == m_) return true;  // already feasible

    // Phase-1 objective: max -t where t is the artificial column.
    set_objective_row_for(artificial_col());
    pivot(worst, artificial_col());
    run();
    if (tab_[m_][rhs_col_] != 0) return false;  // optimum of -t is < 0
    // Drive the artificial variable out of the basis if it lingers at zero.
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] == static_cast<int>(artificial_col())) {
        for (std::size_t j = 0; j < n_ + m_; ++j) {
          if (tab_[i][j] != 0) {
            pivot(i, j);
            break;
          }
        }
        break;
      }
    }
    return true;
  }

  void phase2() {
    // Rebuild the objective row from the original costs and current basis.
    for (std::size_t j = 0; j <= cols_; ++j) tab_[m_][j] = 0;
    for (std::size_t j = 0; j < n_; ++j) tab_[m_][j] = -objective_[j];
    for (std::size_t i = 0; i < m_; ++i) {
      int bj = basis_[i];
      if (bj < static_cast<int>(n_) && objective_[bj] != 0) {
        const Rat cost = objective_[bj];
        for (std::size_t j = 0; j <= cols_; ++j) {
          if (tab_[i][j] != 0) tab_[m_][j] += cost * tab_[i][j];
        }
      }
    }
    tab_[m_][artificial_col()] = 0;
    forbid_artificial_ = true;
    unbounded_ = false;
    run();
  }

  bool unbounded() const { return unbounded_; }

  std::vector<Rat> solution() const {
    std::vector<Rat> y(n_ + m_);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] >= 0 && basis_[i] < static_cast<int>(n_ + m_))
        y[basis_[i]] = tab_[i][rhs_col_];
    }
    y.resize(n_);
    return y;
  }

  std::vector<int> basis() const { return basis_; }

 private:
  std::size_t artificial_col() const { return n_ + m_; }

  void set_objective_row_for(std::size_t col) {
    for (std::size_t j = 0; j <= cols_; ++j) tab_[m_][j] = 0;
    tab_[m_][col] = 1;  // reduced-cost row for max -t, stored negated below
  }

  void pivot(std::size_t row, std::size_t col) {
    const Rat p = tab_[row][col];
    for (std::size_t j = 0; j <= cols_; ++j) {
      if (tab_[row][j] != 0) tab_[row][j] /= p;
    }
    tab_[row][col] = 1;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == row) continue;
      const Rat f = tab_[i][col];
      if (f == 0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (tab_[row][j] != 0) tab_[i][j] -= f * tab_[row][j];
      }
      tab_[i][col] = 0;
    }
    basis_[row] = static_cast<int>(col);
  }

  // Bland's rule: entering column = lowest index with negative objective-row
  // coefficient (our row stores costs so that negative means improving);
  // leaving row = min ratio, ties by lowest basic variable index.
  void run() {
    const std::size_t limit = forbid_artificial_ ? n_ + m_ : n_ + m_ + 1;
    for (;;) {
      std::size_t enter = limit;
      for (std::size_t j = 0; j < limit; ++j) {
        if (tab_[m_][j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter == limit) return;  // optimal

      std::size_t leave = m_;
      Rat best_ratio;
      for (std::size_t i = 0; i < m_; ++i) {
        if (tab_[i][enter] <= 0) continue;
        Rat ratio = tab_[i][rhs_col_] / tab_[i][enter];
        if (leave == m_ || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == m_) {
        unbounded_ = true;
        return;
      }
      pivot(leave, enter);
    }
  }

  std::size_t m_, n_, cols_, rhs_col_;
  std::vector<std::vector<Rat>> tab_;
  std::vector<int> basis_;
  std::vector<Rat> objective_;
  bool forbid_artificial_ = false;
  bool unbounded_ = false;
};

}  // namespace detail

// Solves the LP exactly.  Deterministic: fixed column order, Bland pivoting,
// equality rows split into paired inequalities.
inline LpSolution lp_solve(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars();
  std::vector<VarBounds> bounds = lp.bounds;
  bounds.resize(n);

  // Variable substitutions to reach y >= 0 form.
  // kind 0: x = lower + y; kind 1: x = upper - y; kind 2: x = y+ - y-.
  struct Subst {
    int kind;
    Rat shift;
    std::size_t col, col2;
  };
  std::vector<Subst> subst(n);
  std::size_t ncols = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const auto& b = bounds[j];
    if (b.lower) {
      subst[j] = {0, *b.lower, ncols++, 0};
    } else if (b.upper) {
      subst[j] = {1, *b.upper, ncols++, 0};
    } else {
      subst[j] = {2, Rat(0), ncols, ncols + 1};
      ncols += 2;
    }
  }

  auto expand = [&](const std::vector<Rat>& coeffs, Rat& constant) {
    std::vector<Rat> out(ncols);
    for (std::size_t j = 0; j < n; ++j) {
      const Rat& c = coeffs[j];
      if (c == 0) continue;
      switch (subst[j].kind) {
        case 0:
          out[subst[j].col] += c;
          constant += c * subst[j].shift;
          break;
        case 1:
          out[subst[j].col] -= c;
          constant += c * subst[j].shift;
          break;
        default:
          out[subst[j].col] += c;
          out[subst[j].col2] -= c;
          break;
      }
    }
    return out;
  };

  std::vector<std::vector<Rat>> a;
  std::vector<Rat> rhs;
  auto push_le = [&](std::vector<Rat> row, Rat b) {
    a.push_back(std::move(row));
    rhs.push_back(std::move(b));
  };

  for (const auto& row : lp.rows) {
    if (row.coeffs.size() != n)
      throw PreconditionViolated("LP row width disagrees with objective length");
    Rat constant = 0;
    std::vector<Rat> r = expand(row.coeffs, constant);
    Rat b = row.rhs - constant;
    switch (row.sense) {
      case Sense::LessEq:
        push_le(r, b);
        break;
      case Sense::GreaterEq: {
        for (auto& v : r) v = -v;
        push_le(std::move(r), Rat(-b));
        break;
      }
      case Sense::Equal: {
        std::vector<Rat> neg = r;
        for (auto& v : neg) v = -v;
        push_le(std::move(r), b);
        push_le(std::move(neg), Rat(-b));
        break;
      }
    }
  }
  // Finite ranges on shifted variables become extra rows.
  for (std::size_t j = 0; j < n; ++j) {
    if (bounds[j].lower && bounds[j].upper) {
      std::vector<Rat> r(ncols);
      r[subst[j].col] = 1;
      push_le(std::move(r), Rat(*bounds[j].upper - *bounds[j].lower));
    }
  }

  Rat obj_constant = 0;
  std::vector<Rat> c = expand(lp.objective, obj_constant);

  detail::SimplexTableau tableau(a, rhs, c);
  LpSolution out;
  if (!tableau.phase1()) {
    out.status = LpStatus::Infeasible;
    return out;
  }
  tableau.phase2();
  if (tableau.unbounded()) {
    out.status = LpStatus::Unbounded;
    return out;
  }

  std::vector<Rat> y = tableau.solution();
  out.point.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    switch (subst[j].kind) {
      case 0:
        out.point[j] = subst[j].shift + y[subst[j].col];
        break;
      case 1:
        out.point[j] = subst[j].shift - y[subst[j].col];
        break;
      default:
        out.point[j] = y[subst[j].col] - y[subst[j].col2];
        break;
    }
  }
  out.status = LpStatus::Optimal;
  out.value = 0;
  for (std::size_t j = 0; j < n; ++j) out.value += lp.objective[j] * out.point[j];
  out.basis = tableau.basis();

  // Exact post-solve self-check: the returned point must satisfy every
  // constraint and bound.
  for (const auto& row : lp.rows) {
    Rat lhs = 0;
    for (std::size_t j = 0; j < n; ++j) lhs += row.coeffs[j] * out.point[j];
    bool ok = row.sense == Sense::LessEq    ? lhs <= row.rhs
              : row.sense == Sense::Equal   ? lhs == row.rhs
                                            : lhs >= row.rhs;
    if (!ok) throw InternalError("simplex returned an infeasible point");
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (bounds[j].lower && out.point[j] < *bounds[j].lower)
      throw InternalError("simplex violated a lower bound");
    if (bounds[j].upper && out.point[j] > *bounds[j].upper)
      throw InternalError("simplex violated an upper bound");
  }
  return out;
}

struct MatrixGameSolution {
  Rat value;
  std::vector<Rat> row_strategy;
  std::vector<Rat> col_strategy;
};

// Value and exact optimal strategies of the zero-sum matrix game where the
// row player maximizes payoff[i][j] and the column player minimizes.  Solved
// as a pair of LPs; the two optimal values must coincide exactly, which
// doubles as a duality self-check on every call.
inline MatrixGameSolution matrix_game_maximin(const std::vector<std::vector<Rat>>& payoff) {
  const std::size_t r = payoff.size();
  if (r == 0) throw PreconditionViolated("matrix game needs at least one row");
  const std::size_t c = payoff[0].size();
  if (c == 0) throw PreconditionViolated("matrix game needs at least one column");

  // Row player: max v  s.t.  sum_i x_i payoff[i][j] >= v for all j, x in simplex.
  LinearProgram row_lp;
  row_lp.objective.assign(r + 1, Rat(0));
  row_lp.objective[r] = 1;
  row_lp.bounds.assign(r + 1, VarBounds{});
  row_lp.bounds[r] = VarBounds{std::nullopt, std::nullopt};
  for (std::size_t j = 0; j < c; ++j) {
    std::vector<Rat> row(r + 1);
    for (std::size_t i = 0; i < r; ++i) row[i] = payoff[i][j];
    row[r] = -1;
    row_lp.add_row(std::move(row), Sense::GreaterEq, Rat(0));
  }
  {
    std::vector<Rat> ones(r + 1, Rat(1));
    ones[r] = 0;
    row_lp.add_row(std::move(ones), Sense::Equal, Rat(1));
  }
  LpSolution rs = lp_solve(row_lp);
  if (rs.status != LpStatus::Optimal)
    throw InternalError("matrix game row LP did not solve");

  // Column player: min w  s.t.  sum_j payoff[i][j] y_j <= w for all i.
  LinearProgram col_lp;
  col_lp.objective.assign(c + 1, Rat(0));
  col_lp.objective[c] = -1;
  col_lp.bounds.assign(c + 1, VarBounds{});
  col_lp.bounds[c] = VarBounds{std::nullopt, std::nullopt};
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<Rat> row(c + 1);
    for (std::size_t j = 0; j < c; ++j) row[j] = payoff[i][j];
    row[c] = -1;
    col_lp.add_row(std::move(row), Sense::LessEq, Rat(0));
  }
  {
    std::vector<Rat> ones(c + 1, Rat(1));
    ones[c] = 0;
    col_lp.add_row(std::move(ones), Sense::Equal, Rat(1));
  }
  LpSolution cs = lp_solve(col_lp);
  if (cs.status != LpStatus::Optimal)
    throw InternalError("matrix game column LP did not solve");

  MatrixGameSolution out;
  out.value = rs.point[r];
  if (out.value != cs.point[c])
    throw InternalError("matrix game primal/dual values disagree");
  out.row_strategy.assign(rs.point.begin(), rs.point.begin() + r);
  out.col_strategy.assign(cs.point.begin(), cs.point.begin() + c);
  return out;
}

}  // namespace stackamb
