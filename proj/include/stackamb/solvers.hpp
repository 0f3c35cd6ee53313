#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stackamb/commitment.hpp"
#include "stackamb/errors.hpp"
#include "stackamb/game.hpp"
#include "stackamb/interval_sweep.hpp"
#include "stackamb/landscape.hpp"
#include "stackamb/lp.hpp"
#include "stackamb/responses.hpp"

namespace stackamb {

inline constexpr long kDefaultBudget = 1'000'000;

// Result of one solver run.  The stored value is re-verified against
// evaluate_commitment at construction, so a report can never carry a stale
// or inconsistent number.
struct SolveReport {
  CommitmentSet commitment;
  Rat value;
  std::vector<ResponseOutcome> per_follower;
  long candidates_examined = 0;
  std::optional<Rat> epsilon_used;
  std::string mode;
};

inline SolveReport make_solve_report(const CoupledGame& game, CommitmentSet commitment,
                                     TieBreak t, std::string mode, long candidates,
                                     std::optional<Rat> expected_value = std::nullopt,
                                     std::optional<Rat> epsilon_used = std::nullopt) {
  Evaluation ev = evaluate_commitment(game, commitment, t);
  if (expected_value && ev.worst_case != *expected_value)
    throw InternalError("solver value disagrees with re-evaluation: " +
                        to_fraction_string(*expected_value) + " vs " +
                        to_fraction_string(ev.worst_case));
  SolveReport report{std::move(commitment), ev.worst_case, std::move(ev.responses),
                     candidates, std::move(epsilon_used), std::move(mode)};
  return report;
}

namespace detail {

// Breakpoint set M of the game: every follower's landscape breakpoints
// together with the domain endpoints.
inline std::vector<Rat> breakpoint_set(const CoupledGame& game) {
  std::vector<Rat> m = {Rat(0), Rat(1)};
  for (const auto& f : game.followers) {
    Landscape ls = compute_landscape(remove_weakly_dominated(f).reduced);
    for (const Rat& mu : ls.breakpoints) m.push_back(mu);
  }
  std::sort(m.begin(), m.end());
  m.erase(std::unique(m.begin(), m.end()), m.end());
  return m;
}

inline Rat min_gap(const std::vector<Rat>& sorted_points) {
  Rat gap = 1;
  for (std::size_t i = 0; i + 1 < sorted_points.size(); ++i)
    gap = std::min(gap, Rat(sorted_points[i + 1] - sorted_points[i]));
  return gap;
}

// Shifted endpoint candidates: breakpoints moved down (plus 1 - eps) and
// moved up (plus eps), clipped to [0, 1].
inline void append_eps_shifts(std::vector<Rat>& out, const std::vector<Rat>& m,
                              const Rat& eps) {
  for (const Rat& mu : m) {
    if (mu != 0) out.push_back(mu - eps);
    if (mu != 1) out.push_back(mu + eps);
  }
}

}  // namespace detail

// Approximately optimal interval commitment for a 2-action leader: sweep all
// endpoint pairs drawn from the breakpoints and their eps-shifts.  The
// requested eps is halved until it falls below half the smallest breakpoint
// gap; the value actually used is reported.  The returned value is within
// eps * k * C of the optimum, where C is the largest per-column leader
// payoff swing between the two leader actions.
inline SolveReport algorithm1(const CoupledGame& game, const Rat& eps, TieBreak t) {
  if (game.leader_action_count != 2)
    throw WrongLeaderActionCount("this solver needs a 2-action leader, got " +
                                 std::to_string(game.leader_action_count));
  if (eps <= 0) throw PreconditionViolated("epsilon must be positive");
  validate(game);

  std::vector<Rat> m = detail::breakpoint_set(game);
  const Rat bound = detail::min_gap(m) / 2;
  Rat used = eps;
  while (used >= bound) used /= 2;

  std::vector<Rat> candidates = m;
  detail::append_eps_shifts(candidates, m, used);

  detail::IntervalSweeper sweeper(game, t);
  sweeper.set_grid(std::move(candidates));
  auto winner = sweeper.run();
  return make_solve_report(game, CommitmentSet::interval(winner.lo, winner.hi), t,
                           "ambiguous-2xm", winner.examined, winner.value, used);
}

// Independent sweep over a uniform grid (plus the breakpoints and their
// shifts), for cross-checking the solver above.
inline SolveReport grid_oracle(const CoupledGame& game, const Rat& step, TieBreak t) {
  if (game.leader_action_count != 2)
    throw WrongLeaderActionCount("the grid oracle needs a 2-action leader");
  if (step <= 0) throw PreconditionViolated("step must be positive");
  validate(game);

  std::vector<Rat> m = detail::breakpoint_set(game);
  const Rat bound = detail::min_gap(m) / 2;
  Rat used = step;
  while (used >= bound) used /= 2;

  std::vector<Rat> candidates = m;
  for (Rat p = 0; p < 1; p += step) candidates.push_back(p);
  candidates.push_back(Rat(1));
  detail::append_eps_shifts(candidates, m, used);

  detail::IntervalSweeper sweeper(game, t);
  sweeper.set_grid(std::move(candidates));
  auto winner = sweeper.run();
  return make_solve_report(game, CommitmentSet::interval(winner.lo, winner.hi), t,
                           "grid-oracle", winner.examined, winner.value, used);
}

struct ClassicalResult {
  MixedStrategy strategy;
  Rat value;
  long patterns_examined = 0;
};

// Optimal classical commitment under strong (leader-favorable) tie-breaking:
// one LP per joint pure response pattern, maximizing the leader's payoff
// subject to each follower's incentive constraints.  Across equally good
// patterns the lexicographically smallest optimal strategy is reported.
inline ClassicalResult classical_coupled(const CoupledGame& game,
                                         long budget = kDefaultBudget) {
  validate(game);
  const std::size_t n = game.leader_action_count;

  long patterns = 1;
  for (const auto& f : game.followers) {
    const long mf = static_cast<long>(f.follower_actions());
    if (patterns > budget / mf)
      throw BudgetExceeded("response pattern count exceeds budget " +
                           std::to_string(budget));
    patterns *= mf;
  }

  std::optional<ClassicalResult> best;
  std::vector<std::size_t> pattern(game.k(), 0);
  long examined = 0;
  for (;;) {
    LinearProgram lp;
    lp.objective.assign(n, Rat(0));
    lp.bounds.assign(n, VarBounds{});
    for (std::size_t fi = 0; fi < game.k(); ++fi) {
      const auto& f = game.followers[fi];
      const std::size_t chosen = pattern[fi];
      for (std::size_t r = 0; r < n; ++r)
        lp.objective[r] += f.leader_payoff.at(r, chosen);
      for (std::size_t other = 0; other < f.follower_actions(); ++other) {
        if (other == chosen) continue;
        std::vector<Rat> row(n);
        for (std::size_t r = 0; r < n; ++r)
          row[r] = f.follower_payoff.at(r, chosen) - f.follower_payoff.at(r, other);
        lp.add_row(std::move(row), Sense::GreaterEq, Rat(0));
      }
    }
    lp.add_row(std::vector<Rat>(n, Rat(1)), Sense::Equal, Rat(1));

    LpSolution sol = lp_solve(lp);
    ++examined;
    if (sol.status == LpStatus::Optimal) {
      MixedStrategy p{std::move(sol.point)};
      if (!best || sol.value > best->value ||
          (sol.value == best->value && p < best->strategy)) {
        best = ClassicalResult{std::move(p), std::move(sol.value), 0};
      }
    }

    std::size_t i = 0;
    for (; i < pattern.size(); ++i) {
      if (++pattern[i] < game.followers[i].follower_actions()) break;
      pattern[i] = 0;
    }
    if (i == pattern.size()) break;
  }
  if (!best) throw InternalError("no feasible response pattern found");
  best->patterns_examined = examined;
  return *best;
}

struct DecoupledResult {
  std::vector<Rat> per_follower;
  Rat isv;
};

// Sum of each follower's standalone optimal classical Stackelberg value.
inline DecoupledResult decoupled_isv(const CoupledGame& game,
                                     long budget = kDefaultBudget) {
  validate(game);
  DecoupledResult out;
  out.isv = 0;
  for (std::size_t i = 0; i < game.k(); ++i) {
    Rat v = classical_coupled(game.restrict_to(i), budget).value;
    out.isv += v;
    out.per_follower.push_back(std::move(v));
  }
  return out;
}

// Exhaustive search over all nonempty sets of pure leader strategies.
// Ties prefer smaller sets, then lexicographically smaller index lists.
inline SolveReport pure_subset_bruteforce(const CoupledGame& game, TieBreak t,
                                          long budget = kDefaultBudget) {
  validate(game);
  const std::size_t n = game.leader_action_count;
  if (n >= 62 || ((1LL << n) - 1) > budget)
    throw BudgetExceeded("pure subset count exceeds budget " + std::to_string(budget));

  std::optional<Rat> best_value;
  std::vector<std::size_t> best_subset;
  long examined = 0;
  for (unsigned long long mask = 1; mask < (1ULL << n); ++mask) {
    std::vector<std::size_t> subset;
    for (std::size_t a = 0; a < n; ++a)
      if (mask & (1ULL << a)) subset.push_back(a);
    Evaluation ev =
        evaluate_commitment(game, CommitmentSet::pure_subset(n, subset), t);
    ++examined;
    bool better;
    if (!best_value) {
      better = true;
    } else if (ev.worst_case != *best_value) {
      better = ev.worst_case > *best_value;
    } else if (subset.size() != best_subset.size()) {
      better = subset.size() < best_subset.size();
    } else {
      better = std::lexicographical_compare(subset.begin(), subset.end(),
                                            best_subset.begin(), best_subset.end());
    }
    if (better) {
      best_value = ev.worst_case;
      best_subset = std::move(subset);
    }
  }
  return make_solve_report(game, CommitmentSet::pure_subset(n, best_subset), t,
                           "pure-subset", examined, best_value);
}

// An interval commitment is consistent when, with the followers' tie-broken
// responses fixed, the leader's total expected payoff is identical at both
// endpoints.
inline bool consistency_check(const CoupledGame& game, const CommitmentSet& interval,
                              TieBreak t) {
  if (game.leader_action_count != 2)
    throw WrongLeaderActionCount("consistency is defined for 2-action leaders");
  if (interval.kind() != CommitmentKind::Interval &&
      interval.kind() != CommitmentKind::Singleton)
    throw PreconditionViolated("consistency check expects an interval commitment");
  Evaluation ev = evaluate_commitment(game, interval, t);
  if (ev.extreme_totals.size() == 1) return true;
  return ev.extreme_totals[0] == ev.extreme_totals[1];
}

}  // namespace stackamb
