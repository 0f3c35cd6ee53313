#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "stackamb/commitment.hpp"
#include "stackamb/example_games.hpp"
#include "stackamb/game.hpp"
#include "stackamb/io.hpp"
#include "test_util.hpp"

using namespace stackamb;

TEST_CASE("well-formed games validate") {
  CoupledGame g;
  g.leader_action_count = 2;
  FollowerGame f;
  f.name = "F1";
  f.follower_payoff = Matrix::from_rows({{Rat(1), Rat(2)}, {Rat(3), Rat(4)}});
  f.leader_payoff = Matrix::from_rows({{Rat(0), Rat(1)}, {Rat(1), Rat(0)}});
  g.followers.push_back(f);
  CHECK_NOTHROW(validate(g));
}

TEST_CASE("row count mismatch is a dimension error") {
  CoupledGame g;
  g.leader_action_count = 2;
  FollowerGame f;
  f.name = "F1";
  f.follower_payoff =
      Matrix::from_rows({{Rat(1)}, {Rat(2)}, {Rat(3)}});  // 3 rows, 2 leader actions
  f.leader_payoff = f.follower_payoff;
  g.followers.push_back(f);
  try {
    validate(g);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.kind == ValidationKind::DimensionMismatch);
  }
}

TEST_CASE("zero followers is an empty list error") {
  CoupledGame g;
  g.leader_action_count = 2;
  try {
    validate(g);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.kind == ValidationKind::EmptyFollowerList);
  }
}

TEST_CASE("game files parse exactly") {
  const char* text = R"({
    "leader_actions": 2,
    "followers": [
      {"name": "F1",
       "follower_payoff": [[10, 1], [0, 1]],
       "leader_payoff": [[-10, -1], [0, -1]]},
      {"name": "F2",
       "follower_payoff": [[1, 0], [1, 10]],
       "leader_payoff": [[-1, 0], [-1, -10]]}
    ]
  })";
  CoupledGame g = parse_game(text);
  CHECK(g.k() == 2);
  CHECK(g.leader_action_count == 2);
  CHECK(g.is_zero_sum());
  CHECK(g.followers[0].follower_payoff.at(0, 0) == Rat(10));

  // This is exactly the zero-sum gap example at D = 10.
  CoupledGame reference = zs_gap_game(Rat(10));
  CHECK(g.followers[0].follower_payoff == reference.followers[0].follower_payoff);
  CHECK(g.followers[1].leader_payoff == reference.followers[1].leader_payoff);
}

TEST_CASE("decimal strings become exact rationals") {
  const char* text = R"({
    "leader_actions": 1,
    "followers": [
      {"follower_payoff": [["0.5"]], "leader_payoff": [["-2/3"]]}
    ]
  })";
  CoupledGame g = parse_game(text);
  CHECK(g.followers[0].follower_payoff.at(0, 0) == Rat(1, 2));
  CHECK(g.followers[0].leader_payoff.at(0, 0) == Rat(-2, 3));
}

TEST_CASE("malformed fractions and floats are rejected") {
  CHECK_THROWS_AS(parse_game(R"({"leader_actions": 1, "followers": [
      {"follower_payoff": [["3/"]], "leader_payoff": [[0]]}]})"),
                  SyntaxError);
  CHECK_THROWS_AS(parse_game(R"({"leader_actions": 1, "followers": [
      {"follower_payoff": [[0.25]], "leader_payoff": [[0]]}]})"),
                  ValidationError);
  CHECK_THROWS_AS(parse_game("{"), SyntaxError);
  try {
    parse_game("{\n  \"leader_actions\": 1,\n  ###\n}");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.line == 3);
  }
}

TEST_CASE("serialize/parse round trip is structurally identical") {
  std::mt19937 rng(42);
  for (int iter = 0; iter < 40; ++iter) {
    std::uniform_int_distribution<std::size_t> nd(1, 4), kd(1, 3);
    CoupledGame g = testutil::random_game(rng, nd(rng), kd(rng), 4);
    CoupledGame back = parse_game(serialize_game(g));
    REQUIRE(back.leader_action_count == g.leader_action_count);
    REQUIRE(back.k() == g.k());
    for (std::size_t i = 0; i < g.k(); ++i) {
      CHECK(back.followers[i].name == g.followers[i].name);
      CHECK(back.followers[i].follower_payoff == g.followers[i].follower_payoff);
      CHECK(back.followers[i].leader_payoff == g.followers[i].leader_payoff);
    }
  }
}

TEST_CASE("example generators match their defining tables") {
  CoupledGame zs = zs_gap_game(Rat(10));
  CHECK(zs.k() == 2);
  CHECK(zs.leader_action_count == 2);
  CHECK(zs.is_zero_sum());
  CHECK(zs.followers[0].follower_payoff ==
        Matrix::from_rows({{Rat(10), Rat(1)}, {Rat(0), Rat(1)}}));
  CHECK(zs.followers[1].follower_payoff ==
        Matrix::from_rows({{Rat(1), Rat(0)}, {Rat(1), Rat(10)}}));

  CoupledGame fo = frac_opt_game();
  CHECK(fo.followers[0].follower_payoff ==
        Matrix::from_rows({{Rat(1), Rat(0), Rat(-2, 3)}, {Rat(-4), Rat(0), Rat(1)}}));
  CHECK(fo.followers[1].follower_payoff ==
        Matrix::from_rows({{Rat(1), Rat(0), Rat(-4)}, {Rat(-2, 3), Rat(0), Rat(1)}}));
  CHECK(fo.followers[0].leader_payoff ==
        Matrix::from_rows({{Rat(0), Rat(2), Rat(0)}, {Rat(0), Rat(2), Rat(0)}}));
  CHECK(fo.followers[1].leader_payoff ==
        Matrix::from_rows({{Rat(0), Rat(3), Rat(0)}, {Rat(0), Rat(2), Rat(0)}}));

  CoupledGame pu = pure_unbounded_game(Rat(100), Rat(1));
  CHECK(pu.leader_action_count == 3);
  CHECK(pu.k() == 2);
  CHECK(pu.followers[0].follower_payoff ==
        Matrix::from_rows({{Rat(100), Rat(1)}, {Rat(0), Rat(1)}, {Rat(0), Rat(-1)}}));

  CoupledGame cg = coupling_gap_game(Rat(4));
  CHECK(cg.followers[0].follower_payoff.at(0, 0) == Rat(4));
  CHECK(cg.followers[1].follower_payoff.at(1, 1) == Rat(4));

  CHECK_THROWS_AS(make_example("nope", {}), UnknownExample);
  CHECK_THROWS_AS(make_example("zs-gap", {}), MissingParam);
}

TEST_CASE("the zero-sum example is zero-sum for every scale") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> num(-50, 50);
  std::uniform_int_distribution<int> den(1, 9);
  for (int i = 0; i < 50; ++i) {
    Rat d(num(rng), den(rng));
    CHECK(zs_gap_game(d).is_zero_sum());
  }
}

TEST_CASE("commitment sets reject duplicates and redundant points") {
  MixedStrategy a({Rat(1), Rat(0)});
  MixedStrategy b({Rat(0), Rat(1)});
  MixedStrategy mid({Rat(1, 2), Rat(1, 2)});
  CHECK_THROWS_AS(CommitmentSet::polytope({a, a}), PreconditionViolated);
  CHECK_THROWS_AS(CommitmentSet::polytope({a, b, mid}), PreconditionViolated);
  CHECK_NOTHROW(CommitmentSet::polytope({a, b}));

  // Three-dimensional case: the centroid is redundant.
  MixedStrategy e0 = MixedStrategy::pure(3, 0);
  MixedStrategy e1 = MixedStrategy::pure(3, 1);
  MixedStrategy e2 = MixedStrategy::pure(3, 2);
  MixedStrategy centroid = MixedStrategy::uniform(3);
  CHECK_THROWS_AS(CommitmentSet::polytope({e0, e1, e2, centroid}), PreconditionViolated);
  CHECK_NOTHROW(CommitmentSet::polytope({e0, e1, centroid}));
}

TEST_CASE("interval commitments store their endpoints") {
  CommitmentSet s = CommitmentSet::interval(Rat(1, 4), Rat(3, 4));
  CHECK(s.kind() == CommitmentKind::Interval);
  REQUIRE(s.size() == 2);
  CHECK(s.extreme_points()[0] == MixedStrategy({Rat(3, 4), Rat(1, 4)}));
  CHECK(s.extreme_points()[1] == MixedStrategy({Rat(1, 4), Rat(3, 4)}));

  CommitmentSet p = CommitmentSet::interval(Rat(1, 3), Rat(1, 3));
  CHECK(p.kind() == CommitmentKind::Singleton);
  CHECK_THROWS_AS(CommitmentSet::interval(Rat(1, 2), Rat(1, 4)), PreconditionViolated);
}

TEST_CASE("strategies must be distributions") {
  CHECK_THROWS_AS(MixedStrategy({Rat(1, 2), Rat(1, 4)}), ValidationError);
  CHECK_THROWS_AS(MixedStrategy({Rat(3, 2), Rat(-1, 2)}), ValidationError);
  CHECK_NOTHROW(MixedStrategy({Rat(1, 3), Rat(2, 3)}));
}
