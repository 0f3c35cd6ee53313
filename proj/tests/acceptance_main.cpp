// Acceptance suite: one scenario per criterion, each printing a PASS/FAIL
// line with its runtime.  Everything is exact rational arithmetic, so all
// comparisons are equalities or strict bounds with zero tolerance.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "stackamb/example_games.hpp"
#include "stackamb/gaps.hpp"
#include "stackamb/hardness.hpp"
#include "stackamb/landscape.hpp"
#include "stackamb/solvers.hpp"
#include "test_util.hpp"

using namespace stackamb;

namespace {

struct Checker {
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  template <typename T, typename U>
  void expect_eq(const T& got, const U& want, const std::string& what) {
    if (!(got == want)) {
      std::ostringstream os;
      os << what << " (got " << got << ", want " << want << ")";
      failures.push_back(os.str());
    }
  }
  void expect_rat_eq(const Rat& got, const Rat& want, const std::string& what) {
    if (got != want)
      failures.push_back(what + " (got " + to_fraction_string(got) + ", want " +
                         to_fraction_string(want) + ")");
  }
};

const TieBreak kAllTieBreaks[] = {TieBreak::LeaderFavorable,
                                  TieBreak::LexicographicFirst,
                                  TieBreak::Adversarial};

Rat payoff_swing(const CoupledGame& game) {
  Rat c = 0;
  for (const auto& f : game.followers)
    for (std::size_t a = 0; a < f.follower_actions(); ++a)
      c = std::max(c, rat_abs(f.leader_payoff.at(1, a) - f.leader_payoff.at(0, a)));
  return c;
}

void criterion1(Checker& ck) {
  CoupledGame game = zs_gap_game(Rat(10));
  for (TieBreak t : kAllTieBreaks) {
    Evaluation full = evaluate_commitment(game, CommitmentSet::full_simplex(2), t);
    ck.expect_rat_eq(full.worst_case, Rat(-2), "full-simplex W");
  }
  ck.expect_rat_eq(classical_coupled(game).value, Rat(-10), "classical V*");
  auto gap = ambiguity_gap(Rat(-2), Rat(-10));
  ck.expect(gap.has_value(), "ambiguity gap defined");
  if (gap) ck.expect_rat_eq(*gap, Rat(5), "ambiguity gap");
  for (TieBreak t : kAllTieBreaks) {
    SolveReport r = algorithm1(game, Rat(1, 100), t);
    ck.expect(r.commitment.is_interval() && r.commitment.interval_lo() == Rat(0) &&
                  r.commitment.interval_hi() == Rat(1),
              "interval solver returns [0,1] (got " + r.commitment.describe() + ")");
  }
}

void criterion2(Checker& ck) {
  CoupledGame game = coupling_gap_game(Rat(10));
  for (TieBreak t : kAllTieBreaks) {
    Evaluation full = evaluate_commitment(game, CommitmentSet::full_simplex(2), t);
    ck.expect_rat_eq(full.worst_case, Rat(1), "full-simplex W");
  }
  DecoupledResult dec = decoupled_isv(game);
  ck.expect_rat_eq(dec.isv, Rat(1, 5), "ISV");
  ck.expect(dec.per_follower == std::vector<Rat>{Rat(1, 10), Rat(1, 10)},
            "per-follower decoupled values");
  auto c = coupling_gap(Rat(1), dec.isv);
  ck.expect(c.has_value(), "coupling gap defined");
  if (c) ck.expect_rat_eq(*c, Rat(5), "coupling gap");
}

void criterion3(Checker& ck) {
  CoupledGame game = frac_opt_game();
  SolveReport alg = algorithm1(game, Rat(1, 100), TieBreak::LeaderFavorable);
  ck.expect_rat_eq(alg.value, Rat(22, 5), "interval solver value");
  ck.expect(alg.commitment.is_interval() && alg.commitment.interval_lo() == Rat(2, 5) &&
                alg.commitment.interval_hi() == Rat(3, 5),
            "interval solver returns [2/5, 3/5] (got " + alg.commitment.describe() + ")");

  Evaluation full = evaluate_commitment(game, CommitmentSet::full_simplex(2),
                                        TieBreak::LeaderFavorable);
  ck.expect_rat_eq(full.worst_case, Rat(4), "full ambiguity W");

  SolveReport grid = grid_oracle(game, Rat(1, 100), TieBreak::LeaderFavorable);
  ck.expect_rat_eq(grid.value, Rat(22, 5), "grid oracle value");
  ck.expect(grid.commitment.is_interval() &&
                grid.commitment.interval_lo() == Rat(2, 5) &&
                grid.commitment.interval_hi() == Rat(3, 5),
            "grid oracle returns [2/5, 3/5] (got " + grid.commitment.describe() + ")");

  Rat classical = classical_coupled(game).value;
  ck.expect(classical < Rat(4), "classical value strictly below 4 (got " +
                                    to_fraction_string(classical) + ")");
  ck.expect(classical <= Rat(3), "classical value at most 3 (got " +
                                     to_fraction_string(classical) + ")");
}

void criterion4(Checker& ck) {
  CoupledGame game = pure_unbounded_game(Rat(100), Rat(1));
  for (TieBreak t : kAllTieBreaks) {
    SolveReport r = pure_subset_bruteforce(game, t);
    ck.expect_rat_eq(r.value, Rat(1), "best pure subset value");
    ck.expect(r.commitment.pure_actions() == std::vector<std::size_t>{0, 1},
              "best pure subset is {a0, a1} (got " + r.commitment.describe() + ")");
    Evaluation full = evaluate_commitment(game, CommitmentSet::full_simplex(3), t);
    ck.expect_rat_eq(full.worst_case, Rat(0), "full ambiguity value");
  }
  ck.expect_rat_eq(decoupled_isv(game).isv, Rat(1, 50), "ISV");
}

void criterion5(Checker& ck) {
  auto path = [](std::size_t n) {
    Graph g;
    g.vertex_count = n;
    for (std::size_t v = 1; v < n; ++v) g.add_edge(v, v + 1);
    return g;
  };
  auto cycle = [&](std::size_t n) {
    Graph g = path(n);
    g.add_edge(n, 1);
    return g;
  };
  auto star = [](std::size_t leaves) {
    Graph g;
    g.vertex_count = leaves + 1;
    for (std::size_t v = 2; v <= leaves + 1; ++v) g.add_edge(1, v);
    return g;
  };
  auto complete = [](std::size_t n) {
    Graph g;
    g.vertex_count = n;
    for (std::size_t u = 1; u <= n; ++u)
      for (std::size_t v = u + 1; v <= n; ++v) g.add_edge(u, v);
    return g;
  };

  std::vector<std::pair<std::string, Graph>> corpus;
  for (std::size_t n = 2; n <= 6; ++n) corpus.push_back({"P" + std::to_string(n), path(n)});
  for (std::size_t n = 3; n <= 6; ++n) corpus.push_back({"C" + std::to_string(n), cycle(n)});
  for (std::size_t l = 2; l <= 5; ++l)
    corpus.push_back({"S" + std::to_string(l), star(l)});
  for (std::size_t n = 2; n <= 6; ++n)
    corpus.push_back({"K" + std::to_string(n), complete(n)});

  std::mt19937 rng(26021);
  std::uniform_int_distribution<std::size_t> nd(2, 6);
  std::uniform_int_distribution<int> coin(0, 1);
  int added = 0;
  while (added < 20) {
    std::size_t n = nd(rng);
    Graph g;
    g.vertex_count = n;
    for (std::size_t u = 1; u <= n; ++u)
      for (std::size_t v = u + 1; v <= n; ++v)
        if (coin(rng)) g.add_edge(u, v);
    if (!g.connected() || g.edges.empty()) continue;
    corpus.push_back({"R" + std::to_string(added), g});
    ++added;
  }

  auto start = std::chrono::steady_clock::now();
  for (const auto& [name, g] : corpus) {
    std::size_t oracle = brute_force_min_vc(g).size();
    const Rat n(g.vertex_count);

    VertexCoverSolution pure = solve_vc_via_game(g, ReductionVariant::Pure);
    ck.expect(pure.cover.size() == oracle,
              name + ": pure-variant cover size (got " +
                  std::to_string(pure.cover.size()) + ", want " +
                  std::to_string(oracle) + ")");
    ck.expect_rat_eq(pure.leader_value, n + Rat(1, oracle), name + ": pure-variant value");

    VertexCoverSolution full = solve_vc_via_game(g, ReductionVariant::Full);
    ck.expect(full.cover.size() == oracle, name + ": full-variant cover size");
    ck.expect_rat_eq(full.leader_value, n * n * n + n + Rat(1, oracle),
                     name + ": full-variant value");
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  ck.expect(secs <= 60.0, "corpus runtime within 60 s (took " + std::to_string(secs) + ")");
}

void criterion6(Checker& ck) {
  std::mt19937 rng(26022);
  std::uniform_int_distribution<std::size_t> md(1, 5);
  for (int i = 0; i < 200; ++i) {
    CoupledGame g = testutil::random_game(rng, 2, 1, md(rng));
    Rat classical = classical_coupled(g).value;
    for (TieBreak t : kAllTieBreaks) {
      Rat ambiguous = algorithm1(g, Rat(1, 50), t).value;
      if (!(ambiguous <= classical)) {
        ck.expect(false, "game " + std::to_string(i) + ": ambiguous " +
                             to_fraction_string(ambiguous) + " exceeds classical " +
                             to_fraction_string(classical));
        return;
      }
    }
  }
}

void criterion7(Checker& ck) {
  std::mt19937 rng(26023);
  std::uniform_int_distribution<std::size_t> kd(1, 3), md(1, 4);
  int positive_samples = 0;
  for (int i = 0; i < 200; ++i) {
    bool positive_leader = i % 10 < 3;
    CoupledGame g = positive_leader
                        ? testutil::random_positive_leader_zero_sum(rng, 2, kd(rng), md(rng))
                        : testutil::random_game(rng, 2, kd(rng), md(rng), /*zero_sum=*/true);
    Rat isv = decoupled_isv(g).isv;
    for (TieBreak t : kAllTieBreaks) {
      Rat ambiguous = algorithm1(g, Rat(1, 50), t).value;
      if (!(ambiguous <= isv)) {
        ck.expect(false, "game " + std::to_string(i) + ": ambiguous value exceeds ISV");
        return;
      }
    }
    if (positive_leader) {
      ++positive_samples;
      Rat w = algorithm1(g, Rat(1, 50), TieBreak::LeaderFavorable).value;
      Rat v = classical_coupled(g).value;
      auto gap = ambiguity_gap(w, v);
      if (!gap || !(*gap <= Rat(g.k()))) {
        ck.expect(false, "game " + std::to_string(i) + ": gap exceeds follower count");
        return;
      }
    }
  }
  ck.expect(positive_samples >= 50, "positive-leader subsample size");
}

void criterion8(Checker& ck) {
  std::mt19937 rng(26024);
  std::uniform_int_distribution<std::size_t> md(2, 6);
  int tie_cases = 0;
  for (int i = 0; i < 200; ++i) {
    FollowerGame f =
        remove_weakly_dominated(testutil::random_follower(rng, 2, md(rng))).reduced;
    Rat lo = testutil::random_unit_rational(rng, 80);
    Rat hi = testutil::random_unit_rational(rng, 80);
    if (hi < lo) std::swap(lo, hi);

    IntervalResponse closed = interval_maxmin_response(f, lo, hi);
    ResponseOutcome lp =
        maxmin_response(CommitmentSet::interval(lo, hi), f, TieBreak::LexicographicFirst);
    if (closed.implied_value != lp.maxmin_value) {
      ck.expect(false, "follower " + std::to_string(i) + ": closed-form value " +
                           to_fraction_string(closed.implied_value) + " vs LP " +
                           to_fraction_string(lp.maxmin_value));
      return;
    }
    if (!closed.contains(lp.representative, f)) {
      ck.expect(false, "follower " + std::to_string(i) +
                           ": LP representative escapes the closed-form face");
      return;
    }

    // Wherever the commitment straddles the slope sign change, the tying mix
    // must equalize the endpoints exactly.
    Landscape ls = compute_landscape(f);
    if (ls.sign_change && lo < *ls.sign_change && *ls.sign_change < hi) {
      ++tie_cases;
      std::size_t ax = ls.negative_slope.back();
      std::size_t ay = ls.positive_slope.front();
      Rat nu = tying_point(line_of(f, ax), line_of(f, ay));
      std::vector<Rat> w(f.follower_actions(), Rat(0));
      w[ax] = Rat(1) - nu;
      w[ay] = nu;
      MixedStrategy tie{std::move(w)};
      Rat at_lo = expected_payoff(f.follower_payoff, MixedStrategy({Rat(1) - lo, lo}), tie);
      Rat at_hi = expected_payoff(f.follower_payoff, MixedStrategy({Rat(1) - hi, hi}), tie);
      if (at_lo != at_hi) {
        ck.expect(false, "follower " + std::to_string(i) + ": tying mix fails to equalize");
        return;
      }
    }
  }
  ck.expect(tie_cases >= 10, "straddling-case coverage (got " +
                                 std::to_string(tie_cases) + ")");
}

void criterion9(Checker& ck) {
  std::mt19937 rng(26025);
  std::uniform_int_distribution<std::size_t> kd(1, 3), md(1, 4);
  const Rat eps(1, 50);
  for (int i = 0; i < 100; ++i) {
    CoupledGame g = testutil::random_game(rng, 2, kd(rng), md(rng));
    Rat c = payoff_swing(g);
    Rat solver = algorithm1(g, eps, TieBreak::LeaderFavorable).value;
    Rat oracle = grid_oracle(g, Rat(1, 200), TieBreak::LeaderFavorable).value;
    if (!(solver >= oracle - eps * Rat(g.k()) * c)) {
      ck.expect(false, "game " + std::to_string(i) + ": solver " +
                           to_fraction_string(solver) + " below oracle " +
                           to_fraction_string(oracle) + " minus slack");
      return;
    }
  }
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* title;
    std::function<void(Checker&)> body;
  };
  const Entry criteria[] = {
      {1, "zero-sum ambiguity gap (D=10)", criterion1},
      {2, "coupling gap (D=10)", criterion2},
      {3, "fractional optimum", criterion3},
      {4, "pure-set structure (B=100, c=1)", criterion4},
      {5, "vertex-cover reductions on the graph corpus", criterion5},
      {6, "single-follower no-advantage (200 games)", criterion6},
      {7, "zero-sum no-coupling (200 games)", criterion7},
      {8, "closed-form/LP equivalence (200 followers)", criterion8},
      {9, "approximation guarantee (100 games)", criterion9},
  };

  int failed = 0;
  double total = 0;
  for (const auto& entry : criteria) {
    Checker ck;
    auto start = std::chrono::steady_clock::now();
    try {
      entry.body(ck);
    } catch (const std::exception& e) {
      ck.failures.push_back(std::string("exception: ") + e.what());
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    total += secs;
    std::printf("[%s] criterion %d: %-48s %7.2fs\n",
                ck.failures.empty() ? "PASS" : "FAIL", entry.id, entry.title, secs);
    for (const auto& f : ck.failures) std::printf("       - %s\n", f.c_str());
    if (!ck.failures.empty()) ++failed;
  }
  std::printf("%d/9 criteria passed (%.2fs total)\n", 9 - failed, total);
  return failed == 0 ? 0 : 1;
}
