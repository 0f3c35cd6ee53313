#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "stackamb/commitment.hpp"
#include "stackamb/example_games.hpp"
#include "stackamb/landscape.hpp"
#include "stackamb/responses.hpp"
#include "test_util.hpp"

using namespace stackamb;

namespace {

FollowerGame follower_from_columns(std::vector<std::vector<Rat>> cols) {
  std::vector<Rat> r0, r1;
  for (auto& c : cols) {
    r0.push_back(c[0]);
    r1.push_back(c[1]);
  }
  FollowerGame f;
  f.name = "F";
  f.follower_payoff = Matrix::from_rows({r0, r1});
  f.leader_payoff = f.follower_payoff;
  return f;
}

}  // namespace

TEST_CASE("dominance removal keeps envelope actions") {
  // All three actions of this follower own a piece of [0,1]: the pairwise
  // crossings sit at 1/5 and 2/5.
  CoupledGame fo = frac_opt_game();
  ReductionResult red = remove_weakly_dominated(fo.followers[0]);
  CHECK(red.kept == std::vector<std::size_t>{0, 1, 2});
  CHECK(red.removed.empty());

  // Duplicated column: the second copy goes.
  FollowerGame dup = follower_from_columns({{Rat(2), Rat(2)}, {Rat(2), Rat(2)}});
  ReductionResult dred = remove_weakly_dominated(dup);
  CHECK(dred.kept == std::vector<std::size_t>{0});
  CHECK(dred.removed == std::vector<std::size_t>{1});

  // The constant line 1 stays strictly below max(3-3p, 1+p) everywhere
  // (their crossing at p = 1/2 has height 3/2).
  FollowerGame below =
      follower_from_columns({{Rat(3), Rat(0)}, {Rat(1), Rat(2)}, {Rat(1), Rat(1)}});
  ReductionResult bred = remove_weakly_dominated(below);
  CHECK(bred.kept == std::vector<std::size_t>{0, 1});
  CHECK(bred.removed == std::vector<std::size_t>{2});
}

TEST_CASE("an action touching the envelope only at a point is removed") {
  // Lines 1-2p, -1+2p cross at 1/2 with height 0; the constant 0 line
  // touches exactly there and is never uniquely maximal.
  FollowerGame f =
      follower_from_columns({{Rat(1), Rat(-1)}, {Rat(0), Rat(0)}, {Rat(-1), Rat(1)}});
  ReductionResult red = remove_weakly_dominated(f);
  CHECK(red.kept == std::vector<std::size_t>{0, 2});
  CHECK(red.removed == std::vector<std::size_t>{1});
}

TEST_CASE("landscapes of the worked examples") {
  CoupledGame fo = frac_opt_game();
  Landscape l1 = compute_landscape(remove_weakly_dominated(fo.followers[0]).reduced);
  CHECK(l1.ordered_actions == std::vector<std::size_t>{0, 1, 2});
  CHECK(l1.breakpoints == std::vector<Rat>{Rat(1, 5), Rat(2, 5)});
  CHECK(l1.zero_slope == std::vector<std::size_t>{1});
  REQUIRE(l1.mu_minus_equal);
  REQUIRE(l1.mu_equal_plus);
  CHECK(*l1.mu_minus_equal == Rat(1, 5));
  CHECK(*l1.mu_equal_plus == Rat(2, 5));

  CoupledGame zs = zs_gap_game(Rat(10));
  Landscape l2 = compute_landscape(remove_weakly_dominated(zs.followers[0]).reduced);
  CHECK(l2.ordered_actions == std::vector<std::size_t>{0, 1});
  CHECK(l2.breakpoints == std::vector<Rat>{Rat(9, 10)});
  CHECK(l2.zero_slope == std::vector<std::size_t>{1});
  CHECK(l2.mu_minus_equal.has_value());
  CHECK_FALSE(l2.mu_equal_plus.has_value());

  FollowerGame identity = follower_from_columns({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}});
  Landscape l3 = compute_landscape(identity);
  CHECK(l3.breakpoints == std::vector<Rat>{Rat(1, 2)});
  CHECK(l3.zero_slope.empty());
  REQUIRE(l3.sign_change);
  CHECK(*l3.sign_change == Rat(1, 2));
}

TEST_CASE("breakpoint intervals tile the unit interval") {
  std::mt19937 rng(4040);
  for (int iter = 0; iter < 100; ++iter) {
    FollowerGame f = remove_weakly_dominated(testutil::random_follower(rng, 2, 6)).reduced;
    Landscape ls = compute_landscape(f);
    REQUIRE(ls.breakpoints.size() + 1 == ls.ordered_actions.size());
    Rat prev = 0;
    for (std::size_t i = 0; i < ls.ordered_actions.size(); ++i) {
      CHECK(ls.lo_of(i) == prev);
      CHECK(ls.lo_of(i) <= ls.hi_of(i));
      prev = ls.hi_of(i);
      if (i < ls.breakpoints.size()) {
        // Adjacent lines are exactly equal at the breakpoint.
        ActionLine a = line_of(f, ls.ordered_actions[i]);
        ActionLine b = line_of(f, ls.ordered_actions[i + 1]);
        CHECK(a.at(ls.breakpoints[i]) == b.at(ls.breakpoints[i]));
      }
    }
    CHECK(prev == Rat(1));
  }
}

TEST_CASE("tying point formula") {
  CHECK(tying_point(ActionLine{Rat(1), Rat(0)}, ActionLine{Rat(0), Rat(1)}) == Rat(1, 2));
  // Equalizing (1-nu)*3 = nu across the two leader rows gives nu = 3/4.
  CHECK(tying_point(ActionLine{Rat(3), Rat(0)}, ActionLine{Rat(0), Rat(1)}) == Rat(3, 4));
  CHECK(tying_point(ActionLine{Rat(1), Rat(0)}, ActionLine{Rat(0), Rat(10)}) == Rat(1, 11));
  CHECK_THROWS_AS(tying_point(ActionLine{Rat(0), Rat(1)}, ActionLine{Rat(0), Rat(1)}),
                  PreconditionViolated);
}

TEST_CASE("the tying mix equalizes both leader actions") {
  std::mt19937 rng(111);
  for (int iter = 0; iter < 60; ++iter) {
    ActionLine x{testutil::random_entry(rng), testutil::random_entry(rng)};
    ActionLine y{testutil::random_entry(rng), testutil::random_entry(rng)};
    if (!(x.w > x.v) || !(y.v > y.w)) continue;
    Rat nu = tying_point(x, y);
    CHECK(nu > 0);
    CHECK(nu < 1);
    // Expected payoff of (1-nu) x + nu y under either leader action.
    Rat under0 = (1 - nu) * x.w + nu * y.w;
    Rat under1 = (1 - nu) * x.v + nu * y.v;
    CHECK(under0 == under1);
  }
}

TEST_CASE("interval responses on the worked examples") {
  CoupledGame fo = frac_opt_game();
  FollowerGame f1 = remove_weakly_dominated(fo.followers[0]).reduced;

  // mu_-= = 1/5 < 2/5, so [2/5, 3/5] delegates to the best response at 2/5,
  // the face spanned by b2 and b3.
  IntervalResponse r = interval_maxmin_response(f1, Rat(2, 5), Rat(3, 5));
  REQUIRE(r.kind == IntervalResponse::Kind::BestResponseAt);
  CHECK(r.anchor == Rat(2, 5));
  CHECK(r.implied_value == Rat(0));
  CHECK(r.contains(MixedStrategy({Rat(0), Rat(1), Rat(0)}), f1));
  CHECK(r.contains(MixedStrategy({Rat(0), Rat(0), Rat(1)}), f1));
  CHECK(r.contains(MixedStrategy({Rat(0), Rat(1, 2), Rat(1, 2)}), f1));
  CHECK_FALSE(r.contains(MixedStrategy({Rat(1), Rat(0), Rat(0)}), f1));

  // [1/10, 9/10] brackets both flat-action breakpoints: the equalizer wins.
  IntervalResponse r2 = interval_maxmin_response(f1, Rat(1, 10), Rat(9, 10));
  REQUIRE(r2.kind == IntervalResponse::Kind::EqualizerAction);
  CHECK(r2.equal_action == 1);
  CHECK(r2.implied_value == Rat(0));

  // Symmetric game: straddling the sign change forces the tying mix.
  FollowerGame identity = follower_from_columns({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}});
  IntervalResponse r3 = interval_maxmin_response(identity, Rat(1, 4), Rat(3, 4));
  REQUIRE(r3.kind == IntervalResponse::Kind::TieSegment);
  CHECK(r3.t_lo == Rat(1, 2));
  CHECK(r3.t_hi == Rat(1, 2));
  CHECK(r3.contains(MixedStrategy({Rat(1, 2), Rat(1, 2)}), identity));
  CHECK_FALSE(r3.contains(MixedStrategy({Rat(1, 4), Rat(3, 4)}), identity));
}

TEST_CASE("closed form and LP agree on random reduced games") {
  std::mt19937 rng(7777);
  int segment_cases = 0;
  for (int iter = 0; iter < 220; ++iter) {
    FollowerGame f = remove_weakly_dominated(testutil::random_follower(rng, 2, 6)).reduced;
    Rat lo = testutil::random_unit_rational(rng);
    Rat hi = testutil::random_unit_rational(rng);
    if (hi < lo) std::swap(lo, hi);

    IntervalResponse closed = interval_maxmin_response(f, lo, hi);
    ResponseOutcome lp = maxmin_response(CommitmentSet::interval(lo, hi), f,
                                         TieBreak::LexicographicFirst);
    REQUIRE(closed.implied_value == lp.maxmin_value);
    REQUIRE(closed.contains(lp.representative, f));
    ResponseOutcome lp2 =
        maxmin_response(CommitmentSet::interval(lo, hi), f, TieBreak::LeaderFavorable);
    REQUIRE(closed.contains(lp2.representative, f));
    if (closed.kind == IntervalResponse::Kind::TieSegment) ++segment_cases;
  }
  CHECK(segment_cases > 5);
}

TEST_CASE("with no flat action the envelope has a unique minimizer") {
  std::mt19937 rng(31415);
  int checked = 0;
  for (int iter = 0; iter < 120 && checked < 30; ++iter) {
    FollowerGame f = remove_weakly_dominated(testutil::random_follower(rng, 2, 5)).reduced;
    Landscape ls = compute_landscape(f);
    if (!ls.sign_change) continue;
    ++checked;
    auto envelope = [&](const Rat& p) {
      Rat best = line_of(f, 0).at(p);
      for (std::size_t c = 1; c < f.follower_actions(); ++c)
        best = std::max(best, line_of(f, c).at(p));
      return best;
    };
    Rat at_min = envelope(*ls.sign_change);
    for (int s = 0; s <= 10; ++s) {
      Rat p(s, 10);
      if (p == *ls.sign_change) continue;
      CHECK(envelope(p) > at_min);
    }
  }
  CHECK(checked > 10);
}
