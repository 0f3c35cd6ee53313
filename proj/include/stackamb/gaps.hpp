#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stackamb/commitment.hpp"
#include "stackamb/game.hpp"
#include "stackamb/rational.hpp"
#include "stackamb/responses.hpp"
#include "stackamb/solvers.hpp"

namespace stackamb {

// G = |W|^sgn(W) / |V|^sgn(V); undefined when either value is zero.  The
// sign exponents make the ratio meaningful for negative payoffs: the
// magnitude of a negative value is inverted before comparing.
inline std::optional<Rat> ambiguity_gap(const Rat& w, const Rat& v) {
  if (w == 0 || v == 0) return std::nullopt;
  auto signed_power = [](const Rat& x) {
    return rat_sign(x) > 0 ? rat_abs(x) : Rat(1) / rat_abs(x);
  };
  return signed_power(w) / signed_power(v);
}

// C = W* / ISV; defined only when both are strictly positive.
inline std::optional<Rat> coupling_gap(const Rat& w, const Rat& isv) {
  if (w <= 0 || isv <= 0) return std::nullopt;
  return Rat(w / isv);
}

struct GapReport {
  Rat w_star;                    // best ambiguous value found
  std::string w_star_mode;       // which commitment family produced it
  CommitmentSet w_star_commitment = CommitmentSet::singleton(MixedStrategy({Rat(1)}));
  Rat v_star;                    // optimal classical value (strong tie-breaking)
  std::vector<Rat> isv_per_follower;
  Rat isv;
  std::optional<Rat> ambiguity;  // G, when defined
  std::optional<Rat> coupling;   // C, when defined
  bool ambiguity_advantage = false;
  bool coupling_advantage = false;
  // Zero-sum diagnostic: true when some single strategy is simultaneously
  // optimal in every follower's decoupled game (then coupling cannot help).
  bool common_optimum_found = false;
};

namespace detail {

// Searches for one classical strategy attaining every follower's decoupled
// optimum at once, by pairing optimal patterns across followers.
inline bool intersecting_optima(const CoupledGame& game,
                                const std::vector<Rat>& per_follower, long budget) {
  std::vector<std::vector<std::size_t>> optimal_patterns(game.k());
  long combos = 1;
  for (std::size_t fi = 0; fi < game.k(); ++fi) {
    const auto& f = game.followers[fi];
    for (std::size_t a = 0; a < f.follower_actions(); ++a) {
      LinearProgram lp;
      const std::size_t n = game.leader_action_count;
      lp.objective.assign(n, Rat(0));
      lp.bounds.assign(n, VarBounds{});
      for (std::size_t r = 0; r < n; ++r) lp.objective[r] = f.leader_payoff.at(r, a);
      for (std::size_t other = 0; other < f.follower_actions(); ++other) {
        if (other == a) continue;
        std::vector<Rat> row(n);
        for (std::size_t r = 0; r < n; ++r)
          row[r] = f.follower_payoff.at(r, a) - f.follower_payoff.at(r, other);
        lp.add_row(std::move(row), Sense::GreaterEq, Rat(0));
      }
      lp.add_row(std::vector<Rat>(n, Rat(1)), Sense::Equal, Rat(1));
      LpSolution sol = lp_solve(lp);
      if (sol.status == LpStatus::Optimal && sol.value == per_follower[fi])
        optimal_patterns[fi].push_back(a);
    }
    if (optimal_patterns[fi].empty()) return false;
    if (combos > budget / static_cast<long>(optimal_patterns[fi].size())) return false;
    combos *= static_cast<long>(optimal_patterns[fi].size());
  }

  std::vector<std::size_t> idx(game.k(), 0);
  for (;;) {
    LinearProgram lp;
    const std::size_t n = game.leader_action_count;
    lp.objective.assign(n, Rat(0));
    lp.bounds.assign(n, VarBounds{});
    for (std::size_t fi = 0; fi < game.k(); ++fi) {
      const auto& f = game.followers[fi];
      const std::size_t a = optimal_patterns[fi][idx[fi]];
      for (std::size_t other = 0; other < f.follower_actions(); ++other) {
        if (other == a) continue;
        std::vector<Rat> row(n);
        for (std::size_t r = 0; r < n; ++r)
          row[r] = f.follower_payoff.at(r, a) - f.follower_payoff.at(r, other);
        lp.add_row(std::move(row), Sense::GreaterEq, Rat(0));
      }
      std::vector<Rat> objective_row(n);
      for (std::size_t r = 0; r < n; ++r) objective_row[r] = f.leader_payoff.at(r, a);
      lp.add_row(std::move(objective_row), Sense::Equal, per_follower[fi]);
    }
    lp.add_row(std::vector<Rat>(n, Rat(1)), Sense::Equal, Rat(1));
    if (lp_solve(lp).status == LpStatus::Optimal) return true;

    std::size_t i = 0;
    for (; i < idx.size(); ++i) {
      if (++idx[i] < optimal_patterns[i].size()) break;
      idx[i] = 0;
    }
    if (i == idx.size()) break;
  }
  return false;
}

}  // namespace detail

// Full gap report: the classical optimum, the individualized value, and the
// best ambiguous value over the commitment families that apply to the game
// (full ambiguity always; interval search when the leader has two actions;
// pure subsets within budget).  W* is "best found", not claimed globally
// optimal beyond those families.
inline GapReport gap_report(const CoupledGame& game, TieBreak t, const Rat& eps,
                            long budget = kDefaultBudget) {
  validate(game);
  GapReport report;

  ClassicalResult classical = classical_coupled(game, budget);
  report.v_star = classical.value;
  DecoupledResult dec = decoupled_isv(game, budget);
  report.isv_per_follower = dec.per_follower;
  report.isv = dec.isv;

  CommitmentSet full = CommitmentSet::full_simplex(game.leader_action_count);
  Evaluation fullev = evaluate_commitment(game, full, t);
  report.w_star = fullev.worst_case;
  report.w_star_mode = "full-ambiguity";
  report.w_star_commitment = full;

  if (game.leader_action_count == 2) {
    SolveReport alg = algorithm1(game, eps, t);
    if (alg.value > report.w_star) {
      report.w_star = alg.value;
      report.w_star_mode = alg.mode;
      report.w_star_commitment = alg.commitment;
    }
  } else if (((1LL << game.leader_action_count) - 1) <= budget &&
             game.leader_action_count < 62) {
    SolveReport sub = pure_subset_bruteforce(game, t, budget);
    if (sub.value > report.w_star) {
      report.w_star = sub.value;
      report.w_star_mode = sub.mode;
      report.w_star_commitment = sub.commitment;
    }
  }

  report.ambiguity = ambiguity_gap(report.w_star, report.v_star);
  report.coupling = coupling_gap(report.w_star, report.isv);
  report.ambiguity_advantage = report.ambiguity && *report.ambiguity > 1;
  report.coupling_advantage = report.coupling && *report.coupling > 1;
  report.common_optimum_found =
      detail::intersecting_optima(game, dec.per_follower, budget);
  return report;
}

}  // namespace stackamb
