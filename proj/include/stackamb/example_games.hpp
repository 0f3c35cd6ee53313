#pragma once

#include <map>
#include <string>
#include <vector>

#include "stackamb/errors.hpp"
#include "stackamb/game.hpp"
#include "stackamb/rational.hpp"

namespace stackamb {

// Named example generators.  Each one produces a small coupled game with a
// known structure: an unbounded ambiguity gap in a zero-sum setting, an
// unbounded coupling gap, a game whose best pure commitment set is a strict
// subset of the pure strategies, and a 2x3 game whose optimal interval
// commitment has fractional endpoints.

// Two zero-sum followers; the scale D separates the classical value (-D)
// from the full-ambiguity value (-2).
inline CoupledGame zs_gap_game(const Rat& d) {
  auto negate = [](const Matrix& m) {
    Matrix out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) out.at(r, c) = -m.at(r, c);
    return out;
  };
  CoupledGame g;
  g.leader_action_count = 2;
  FollowerGame f1;
  f1.name = "F1";
  f1.follower_payoff = Matrix::from_rows({{d, Rat(1)}, {Rat(0), Rat(1)}});
  f1.leader_payoff = negate(f1.follower_payoff);
  FollowerGame f2;
  f2.name = "F2";
  f2.follower_payoff = Matrix::from_rows({{Rat(1), Rat(0)}, {Rat(1), d}});
  f2.leader_payoff = negate(f2.follower_payoff);
  g.followers = {std::move(f1), std::move(f2)};
  return g;
}

// Same follower payoffs as zs_gap_game but general-sum leader payoffs; the
// coupled ambiguous value (1) beats the individualized value (2/D).
inline CoupledGame coupling_gap_game(const Rat& d) {
  CoupledGame g;
  g.leader_action_count = 2;
  FollowerGame f1;
  f1.name = "F1";
  f1.follower_payoff = Matrix::from_rows({{d, Rat(1)}, {Rat(0), Rat(1)}});
  f1.leader_payoff = Matrix::from_rows({{Rat(0), Rat(1)}, {Rat(0), Rat(0)}});
  FollowerGame f2;
  f2.name = "F2";
  f2.follower_payoff = Matrix::from_rows({{Rat(1), Rat(0)}, {Rat(1), d}});
  f2.leader_payoff = Matrix::from_rows({{Rat(0), Rat(0)}, {Rat(1), Rat(0)}});
  g.followers = {std::move(f1), std::move(f2)};
  return g;
}

// Three leader actions, two followers.  Committing to the pure pair {a0,a1}
// earns c; both the full pure set and every classical commitment do far
// worse for large B.
inline CoupledGame pure_unbounded_game(const Rat& b, const Rat& c) {
  CoupledGame g;
  g.leader_action_count = 3;
  FollowerGame f1;
  f1.name = "F1";
  f1.follower_payoff =
      Matrix::from_rows({{b, Rat(1)}, {Rat(0), Rat(1)}, {Rat(0), Rat(-1)}});
  f1.leader_payoff =
      Matrix::from_rows({{Rat(0), c}, {Rat(0), Rat(0)}, {Rat(0), Rat(0)}});
  FollowerGame f2;
  f2.name = "F2";
  f2.follower_payoff =
      Matrix::from_rows({{Rat(1), Rat(0)}, {Rat(1), b}, {Rat(-1), Rat(0)}});
  f2.leader_payoff =
      Matrix::from_rows({{Rat(0), Rat(0)}, {c, Rat(0)}, {Rat(0), Rat(0)}});
  g.followers = {std::move(f1), std::move(f2)};
  return g;
}

// 2x3 two-follower game whose optimal interval commitment is [2/5, 3/5].
inline CoupledGame frac_opt_game() {
  CoupledGame g;
  g.leader_action_count = 2;
  FollowerGame f1;
  f1.name = "F1";
  f1.follower_payoff =
      Matrix::from_rows({{Rat(1), Rat(0), Rat(-2, 3)}, {Rat(-4), Rat(0), Rat(1)}});
  f1.leader_payoff =
      Matrix::from_rows({{Rat(0), Rat(2), Rat(0)}, {Rat(0), Rat(2), Rat(0)}});
  FollowerGame f2;
  f2.name = "F2";
  f2.follower_payoff =
      Matrix::from_rows({{Rat(1), Rat(0), Rat(-4)}, {Rat(-2, 3), Rat(0), Rat(1)}});
  f2.leader_payoff =
      Matrix::from_rows({{Rat(0), Rat(3), Rat(0)}, {Rat(0), Rat(2), Rat(0)}});
  g.followers = {std::move(f1), std::move(f2)};
  return g;
}

// Dispatch by example name with named rational parameters.
inline CoupledGame make_example(const std::string& name,
                                const std::map<std::string, Rat>& params) {
  auto need = [&](const char* key) -> const Rat& {
    auto it = params.find(key);
    if (it == params.end())
      throw MissingParam("example '" + name + "' needs parameter " + key);
    return it->second;
  };
  if (name == "zs-gap") return zs_gap_game(need("D"));
  if (name == "coupling-gap") return coupling_gap_game(need("D"));
  if (name == "pure-unbounded") return pure_unbounded_game(need("B"), need("c"));
  if (name == "frac-opt") return frac_opt_game();
  throw UnknownExample("unknown example '" + name +
                       "'; known: zs-gap, coupling-gap, pure-unbounded, frac-opt");
}

}  // namespace stackamb
