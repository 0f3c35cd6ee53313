#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "stackamb/commitment.hpp"
#include "stackamb/errors.hpp"
#include "stackamb/game.hpp"
#include "stackamb/lp.hpp"
#include "stackamb/rational.hpp"

namespace stackamb {

enum class TieBreak { LeaderFavorable, LexicographicFirst, Adversarial };

inline const char* to_string(TieBreak t) {
  switch (t) {
    case TieBreak::LeaderFavorable: return "leader";
    case TieBreak::LexicographicFirst: return "lex";
    default: return "adversarial";
  }
}

// Argmax set of pure follower actions against a classical commitment p.
inline std::vector<std::size_t> best_response(const MixedStrategy& p,
                                              const FollowerGame& f) {
  if (p.size() != f.leader_actions())
    throw PreconditionViolated("strategy length does not match leader action count");
  std::vector<std::size_t> out;
  Rat best;
  for (std::size_t c = 0; c < f.follower_actions(); ++c) {
    Rat v = expected_column_payoff(f.follower_payoff, p, c);
    if (out.empty() || v > best) {
      best = v;
      out.assign(1, c);
    } else if (v == best) {
      out.push_back(c);
    }
  }
  return out;
}

namespace detail {

// The optimal maxmin face, as the constraint system
//   q in simplex(m),  reduced[e] . q >= value  for every commitment extreme e.
struct ResponseFace {
  std::vector<std::vector<Rat>> reduced;  // |extremes| x m, rows e . u_F
  Rat value;
  std::size_t m = 0;

  bool contains(const MixedStrategy& q) const {
    for (const auto& row : reduced) {
      Rat v = 0;
      for (std::size_t c = 0; c < m; ++c)
        if (q[c] != 0) v += row[c] * q[c];
      if (v < value) return false;
    }
    return true;
  }

  // Constraint rows of the face in m variables (simplex handled by caller).
  void append_rows(LinearProgram& lp) const {
    for (const auto& row : reduced) lp.add_row(row, Sense::GreaterEq, value);
    lp.add_row(std::vector<Rat>(m, Rat(1)), Sense::Equal, Rat(1));
  }
};

// Lexicographically maximal point of the face intersected with `extra`
// equality/inequality rows: maximize q_0, then q_1, ... by nested LPs.  This
// pins a unique canonical point of any face, independent of pivot order.
inline std::vector<Rat> lexmax_point(const ResponseFace& face,
                                     const std::vector<LpRow>& extra) {
  const std::size_t m = face.m;
  std::vector<Rat> fixed;
  Rat mass = 0;
  for (std::size_t c = 0; c < m; ++c) {
    if (mass == 1) {
      fixed.push_back(Rat(0));
      continue;
    }
    if (c + 1 == m) {
      fixed.push_back(Rat(1) - mass);
      break;
    }
    LinearProgram lp;
    lp.objective.assign(m, Rat(0));
    lp.objective[c] = 1;
    lp.bounds.assign(m, VarBounds{});
    face.append_rows(lp);
    for (const auto& row : extra) lp.rows.push_back(row);
    for (std::size_t i = 0; i < fixed.size(); ++i) {
      std::vector<Rat> r(m, Rat(0));
      r[i] = 1;
      lp.add_row(std::move(r), Sense::Equal, fixed[i]);
    }
    LpSolution sol = lp_solve(lp);
    if (sol.status != LpStatus::Optimal)
      throw InternalError("response face unexpectedly empty");
    fixed.push_back(sol.point[c]);
    mass += fixed.back();
  }
  return fixed;
}

// Leader payoff rows (one per commitment extreme) for one follower:
// leader_rows[e][a] = extreme_e . u_{L_F}[., a].
inline std::vector<std::vector<Rat>> leader_rows(std::span<const MixedStrategy> extremes,
                                                 const FollowerGame& f) {
  std::vector<std::vector<Rat>> rows;
  rows.reserve(extremes.size());
  for (const auto& e : extremes) {
    std::vector<Rat> row(f.follower_actions());
    for (std::size_t c = 0; c < f.follower_actions(); ++c)
      row[c] = expected_column_payoff(f.leader_payoff, e, c);
    rows.push_back(std::move(row));
  }
  return rows;
}

// Canonical representative of a face under a tie-breaking rule.  All rules
// resolve residual ties by the lexicographically maximal point, so the result
// is a function of the face and payoffs alone, not of pivot order.
inline std::vector<Rat> select_representative(const ResponseFace& face,
                                              const std::vector<std::vector<Rat>>& lrows,
                                              TieBreak t) {
  const std::size_t m = face.m;
  if (t == TieBreak::LexicographicFirst) return lexmax_point(face, {});

  if (t == TieBreak::LeaderFavorable) {
    // max z  s.t.  lrows[e] . q >= z, q in face.
    LinearProgram lp;
    lp.objective.assign(m + 1, Rat(0));
    lp.objective[m] = 1;
    lp.bounds.assign(m + 1, VarBounds{});
    lp.bounds[m] = VarBounds{std::nullopt, std::nullopt};
    for (const auto& row : face.reduced) {
      std::vector<Rat> r(row);
      r.push_back(Rat(0));
      lp.add_row(std::move(r), Sense::GreaterEq, face.value);
    }
    {
      std::vector<Rat> ones(m + 1, Rat(1));
      ones[m] = 0;
      lp.add_row(std::move(ones), Sense::Equal, Rat(1));
    }
    for (const auto& lr : lrows) {
      std::vector<Rat> r(lr);
      r.push_back(Rat(-1));
      lp.add_row(std::move(r), Sense::GreaterEq, Rat(0));
    }
    LpSolution sol = lp_solve(lp);
    if (sol.status != LpStatus::Optimal)
      throw InternalError("leader-favorable epigraph LP did not solve");
    const Rat tau = sol.point[m];
    std::vector<LpRow> extra;
    for (const auto& lr : lrows) extra.push_back(LpRow{lr, Sense::GreaterEq, tau});
    return lexmax_point(face, extra);
  }

  // Adversarial: minimize min_e lrows[e] . q over the face, i.e. the smallest
  // per-extreme minimum; residual ties again resolved lexicographically.
  std::optional<Rat> sigma;
  std::vector<Rat> minima(lrows.size());
  for (std::size_t e = 0; e < lrows.size(); ++e) {
    LinearProgram lp;
    lp.objective.resize(m);
    for (std::size_t c = 0; c < m; ++c) lp.objective[c] = -lrows[e][c];
    lp.bounds.assign(m, VarBounds{});
    face.append_rows(lp);
    LpSolution sol = lp_solve(lp);
    if (sol.status != LpStatus::Optimal)
      throw InternalError("adversarial LP did not solve");
    minima[e] = -sol.value;
    if (!sigma || minima[e] < *sigma) sigma = minima[e];
  }
  std::vector<Rat> best;
  for (std::size_t e = 0; e < lrows.size(); ++e) {
    if (minima[e] != *sigma) continue;
    std::vector<LpRow> extra{LpRow{lrows[e], Sense::Equal, *sigma}};
    std::vector<Rat> cand = lexmax_point(face, extra);
    if (best.empty() || cand > best) best = std::move(cand);
  }
  return best;
}

}  // namespace detail

// A follower's answer to an ambiguous commitment: the exact maxmin value, a
// tie-broken representative from the optimal response face, and which
// commitment extremes attain the inner minimum against it.  The face itself
// is kept so that the support can be computed on demand.
class ResponseOutcome {
 public:
  ResponseOutcome(Rat value, MixedStrategy representative,
                  detail::ResponseFace face, std::vector<std::size_t> active)
      : maxmin_value(std::move(value)),
        representative(std::move(representative)),
        active_leader_extremes(std::move(active)),
        face_(std::move(face)) {
    Rat lowest;
    bool first = true;
    for (const auto& row : face_.reduced) {
      Rat v = 0;
      for (std::size_t c = 0; c < face_.m; ++c)
        if (this->representative[c] != 0) v += row[c] * this->representative[c];
      if (first || v < lowest) lowest = v, first = false;
    }
    if (lowest != maxmin_value)
      throw InternalError("representative does not achieve the maxmin value");
  }

  Rat maxmin_value;
  MixedStrategy representative;
  std::vector<std::size_t> active_leader_extremes;

  // Actions carrying positive weight in some optimal response (one small LP
  // per action, so computed on request rather than stored).
  std::vector<std::size_t> support() const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < face_.m; ++c) {
      if (representative[c] > 0) {
        out.push_back(c);
        continue;
      }
      LinearProgram lp;
      lp.objective.assign(face_.m, Rat(0));
      lp.objective[c] = 1;
      lp.bounds.assign(face_.m, VarBounds{});
      face_.append_rows(lp);
      LpSolution sol = lp_solve(lp);
      if (sol.status != LpStatus::Optimal)
        throw InternalError("support LP did not solve");
      if (sol.value > 0) out.push_back(c);
    }
    return out;
  }

  const detail::ResponseFace& face() const { return face_; }

 private:
  detail::ResponseFace face_;
};

// Maxmin response of one follower to the commitment with the given extreme
// points: value via the reduced matrix game (exact LP), representative from
// the optimal face under the requested tie-breaking rule.
inline ResponseOutcome maxmin_response(std::span<const MixedStrategy> extremes,
                                       const FollowerGame& f, TieBreak t) {
  if (extremes.empty())
    throw PreconditionViolated("commitment needs at least one extreme point");
  const std::size_t m = f.follower_actions();

  detail::ResponseFace face;
  face.m = m;
  face.reduced.reserve(extremes.size());
  for (const auto& e : extremes) {
    if (e.size() != f.leader_actions())
      throw PreconditionViolated("extreme point length does not match leader actions");
    std::vector<Rat> row(m);
    for (std::size_t c = 0; c < m; ++c)
      row[c] = expected_column_payoff(f.follower_payoff, e, c);
    face.reduced.push_back(std::move(row));
  }

  // Follower maximizes over columns of the reduced matrix, the adversary
  // picks the extreme point: transpose so the maximizer is the row player.
  std::vector<std::vector<Rat>> transposed(m, std::vector<Rat>(extremes.size()));
  for (std::size_t e = 0; e < extremes.size(); ++e)
    for (std::size_t c = 0; c < m; ++c) transposed[c][e] = face.reduced[e][c];
  face.value = matrix_game_maximin(transposed).value;

  std::vector<Rat> rep =
      detail::select_representative(face, detail::leader_rows(extremes, f), t);

  std::vector<std::size_t> active;
  for (std::size_t e = 0; e < extremes.size(); ++e) {
    Rat v = 0;
    for (std::size_t c = 0; c < m; ++c)
      if (rep[c] != 0) v += face.reduced[e][c] * rep[c];
    if (v == face.value) active.push_back(e);
  }
  return ResponseOutcome(face.value, MixedStrategy(std::move(rep)), std::move(face),
                         std::move(active));
}

inline ResponseOutcome maxmin_response(const CommitmentSet& P, const FollowerGame& f,
                                       TieBreak t) {
  return maxmin_response(std::span<const MixedStrategy>(P.extreme_points()), f, t);
}

// Leader's worst-case payoff against the tie-broken responses, together with
// the per-follower outcomes and the per-extreme totals.
struct Evaluation {
  Rat worst_case;                    // W(s, P)
  std::vector<ResponseOutcome> responses;
  std::size_t argmin_extreme = 0;    // lowest index attaining the minimum
  std::vector<Rat> extreme_totals;

  Rat best_case() const {
    Rat best = extreme_totals.front();
    for (const Rat& v : extreme_totals)
      if (v > best) best = v;
    return best;
  }
};

inline Evaluation evaluate_commitment(const CoupledGame& game,
                                      std::span<const MixedStrategy> extremes,
                                      TieBreak t) {
  Evaluation ev;
  ev.responses.reserve(game.k());
  for (const auto& f : game.followers) ev.responses.push_back(maxmin_response(extremes, f, t));

  ev.extreme_totals.assign(extremes.size(), Rat(0));
  for (std::size_t fi = 0; fi < game.k(); ++fi) {
    const auto& f = game.followers[fi];
    const auto& rep = ev.responses[fi].representative;
    for (std::size_t e = 0; e < extremes.size(); ++e)
      ev.extreme_totals[e] += expected_payoff(f.leader_payoff, extremes[e], rep);
  }
  ev.argmin_extreme = 0;
  for (std::size_t e = 1; e < extremes.size(); ++e)
    if (ev.extreme_totals[e] < ev.extreme_totals[ev.argmin_extreme]) ev.argmin_extreme = e;
  ev.worst_case = ev.extreme_totals[ev.argmin_extreme];
  return ev;
}

inline Evaluation evaluate_commitment(const CoupledGame& game, const CommitmentSet& P,
                                      TieBreak t) {
  return evaluate_commitment(game, std::span<const MixedStrategy>(P.extreme_points()), t);
}

}  // namespace stackamb
