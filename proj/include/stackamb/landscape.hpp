#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "stackamb/errors.hpp"
#include "stackamb/game.hpp"
#include "stackamb/rational.hpp"

namespace stackamb {

// With two leader actions, a leader strategy is the weight p on the second
// action, and each follower action j is the line U_j(p) = (1-p) w_j + p v_j.
struct ActionLine {
  Rat w;  // payoff under leader action 0
  Rat v;  // payoff under leader action 1
  Rat at(const Rat& p) const { return w + p * (v - w); }
  Rat slope() const { return v - w; }
};

inline ActionLine line_of(const FollowerGame& f, std::size_t column) {
  if (f.leader_actions() != 2)
    throw PreconditionViolated("follower lines need a 2-action leader");
  return ActionLine{f.follower_payoff.at(0, column), f.follower_payoff.at(1, column)};
}

struct ReductionResult {
  FollowerGame reduced;
  std::vector<std::size_t> kept;     // original column indices, in order
  std::vector<std::size_t> removed;  // original column indices
};

// Keeps exactly the actions whose line is the unique maximum on some open
// subinterval of [0,1]; among identical lines the lowest column survives.
// Upper-envelope membership with positive length is the 2-row notion of
// weak-dominance removal the landscape needs.
inline ReductionResult remove_weakly_dominated(const FollowerGame& f) {
  if (f.leader_actions() != 2)
    throw PreconditionViolated("dominance removal is defined for 2-action leaders");
  const std::size_t m = f.follower_actions();
  std::vector<ActionLine> lines(m);
  for (std::size_t c = 0; c < m; ++c) lines[c] = line_of(f, c);

  // Representatives of identical-line groups (lowest index wins).
  std::vector<std::size_t> rep(m);
  for (std::size_t c = 0; c < m; ++c) {
    rep[c] = c;
    for (std::size_t d = 0; d < c; ++d) {
      if (lines[d].w == lines[c].w && lines[d].v == lines[c].v) {
        rep[c] = rep[d];
        break;
      }
    }
  }

  // Cell decomposition of [0,1] by all pairwise intersection points.
  std::vector<Rat> cuts = {Rat(0), Rat(1)};
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      Rat ds = lines[i].slope() - lines[j].slope();
      if (ds == 0) continue;
      Rat p = (lines[j].w - lines[i].w) / ds;
      if (p > 0 && p < 1) cuts.push_back(p);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<bool> keep(m, false);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Rat mid = (cuts[i] + cuts[i + 1]) / 2;
    std::size_t best = 0;
    for (std::size_t c = 1; c < m; ++c)
      if (lines[c].at(mid) > lines[best].at(mid)) best = c;
    keep[rep[best]] = true;  // no two distinct lines tie strictly inside a cell
  }

  ReductionResult out;
  std::vector<std::vector<Rat>> frows(2), lrows(2);
  for (std::size_t c = 0; c < m; ++c) {
    if (keep[c]) {
      out.kept.push_back(c);
      for (int r = 0; r < 2; ++r) {
        frows[r].push_back(f.follower_payoff.at(r, c));
        lrows[r].push_back(f.leader_payoff.at(r, c));
      }
    } else {
      out.removed.push_back(c);
    }
  }
  out.reduced.name = f.name;
  out.reduced.follower_payoff = Matrix::from_rows({frows[0], frows[1]});
  out.reduced.leader_payoff = Matrix::from_rows({lrows[0], lrows[1]});
  return out;
}

// Order structure of a dominance-reduced 2xm follower: actions sorted by
// strictly increasing slope, best-response breakpoints, slope-sign classes
// and the transition data around the sign change.
struct Landscape {
  std::vector<std::size_t> ordered_actions;  // column indices of the reduced game
  std::vector<Rat> breakpoints;              // mu_1 < ... < mu_{r-1}
  std::vector<std::size_t> negative_slope;   // A-
  std::vector<std::size_t> zero_slope;       // A= (at most one action)
  std::vector<std::size_t> positive_slope;   // A+

  // A= empty and both signs present: the slope sign change point mu_pm.
  std::optional<Rat> sign_change;
  // A= = {a_=}: the breakpoints around it; missing side means the equal
  // action's best-response interval reaches the domain boundary.
  std::optional<Rat> mu_minus_equal;  // U_x = U_= (exists iff A- nonempty)
  std::optional<Rat> mu_equal_plus;   // U_= = U_y (exists iff A+ nonempty)

  // BR^{-1}(ordered_actions[i]) = [lo_of(i), hi_of(i)].
  Rat lo_of(std::size_t i) const { return i == 0 ? Rat(0) : breakpoints[i - 1]; }
  Rat hi_of(std::size_t i) const {
    return i == breakpoints.size() ? Rat(1) : breakpoints[i];
  }
};

inline Landscape compute_landscape(const FollowerGame& reduced) {
  if (reduced.leader_actions() != 2)
    throw PreconditionViolated("landscape is defined for 2-action leaders");
  const std::size_t m = reduced.follower_actions();
  std::vector<ActionLine> lines(m);
  for (std::size_t c = 0; c < m; ++c) lines[c] = line_of(reduced, c);

  Landscape ls;
  ls.ordered_actions.resize(m);
  for (std::size_t c = 0; c < m; ++c) ls.ordered_actions[c] = c;
  std::sort(ls.ordered_actions.begin(), ls.ordered_actions.end(),
            [&](std::size_t a, std::size_t b) { return lines[a].slope() < lines[b].slope(); });
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const ActionLine& a = lines[ls.ordered_actions[i]];
    const ActionLine& b = lines[ls.ordered_actions[i + 1]];
    Rat ds = b.slope() - a.slope();
    if (ds == 0)
      throw PreconditionViolated("landscape input is not dominance-reduced (equal slopes)");
    Rat mu = (a.w - b.w) / ds;
    if (mu < 0 || mu > 1 || (i > 0 && mu < ls.breakpoints.back()))
      throw PreconditionViolated("landscape input is not dominance-reduced (bad breakpoints)");
    ls.breakpoints.push_back(std::move(mu));
  }

  for (std::size_t i = 0; i < m; ++i) {
    std::size_t a = ls.ordered_actions[i];
    int s = rat_sign(lines[a].slope());
    if (s < 0)
      ls.negative_slope.push_back(a);
    else if (s == 0)
      ls.zero_slope.push_back(a);
    else
      ls.positive_slope.push_back(a);
  }
  if (ls.zero_slope.size() > 1)
    throw PreconditionViolated("landscape input is not dominance-reduced (two flat actions)");

  const std::size_t nneg = ls.negative_slope.size();
  if (ls.zero_slope.empty()) {
    if (nneg > 0 && !ls.positive_slope.empty()) ls.sign_change = ls.breakpoints[nneg - 1];
  } else {
    if (nneg > 0) ls.mu_minus_equal = ls.breakpoints[nneg - 1];
    if (!ls.positive_slope.empty()) ls.mu_equal_plus = ls.breakpoints[nneg];
  }
  return ls;
}

// The mixture weight nu on the positively sloped action that makes the
// follower's expected payoff identical under both leader pure actions:
// nu = 1 / ((v_y - w_y)/(w_x - v_x) + 1).
inline Rat tying_point(const ActionLine& x_line, const ActionLine& y_line) {
  if (!(x_line.w > x_line.v))
    throw PreconditionViolated("tying point needs a negatively sloped first line");
  if (!(y_line.v > y_line.w))
    throw PreconditionViolated("tying point needs a positively sloped second line");
  return Rat(1) / ((y_line.v - y_line.w) / (x_line.w - x_line.v) + 1);
}

// Closed-form description of the maxmin response set to the interval
// commitment [lo, hi] on a dominance-reduced follower.
struct IntervalResponse {
  enum class Kind {
    BestResponseAt,  // the classical best-response face at `anchor`
    TieSegment,      // {(1-t) a_x + t a_y : t in [t_lo, t_hi]}
    EqualizerAction, // the single zero-slope action
  };
  Kind kind;
  Rat anchor;                    // BestResponseAt
  std::size_t x = 0, y = 0;      // TieSegment endpoints (reduced columns)
  Rat t_lo, t_hi;                // TieSegment range
  std::size_t equal_action = 0;  // EqualizerAction
  Rat implied_value;             // the follower's maxmin value this set attains

  // Exact membership test for a mixed response in the reduced action space.
  bool contains(const MixedStrategy& q, const FollowerGame& reduced) const {
    switch (kind) {
      case Kind::BestResponseAt: {
        MixedStrategy leader({Rat(1) - anchor, anchor});
        Rat value = expected_payoff(reduced.follower_payoff, leader, q);
        return value == implied_value;
      }
      case Kind::TieSegment: {
        for (std::size_t c = 0; c < q.size(); ++c)
          if (c != x && c != y && q[c] != 0) return false;
        return q[y] >= t_lo && q[y] <= t_hi;
      }
      default:
        return q.is_pure() && q[equal_action] == 1;
    }
  }
};

// Case analysis of BR^a([lo, hi]) for a dominance-reduced 2xm follower.
// With no zero-slope action and slopes of both signs present, writing mu_pm
// for the sign-change point and t_p = (1-p) a_x + p a_y:
//   (a) lo <= hi < mu_pm            -> BR(hi)
//   (b) lo <  hi =  mu_pm           -> {t_p : p in [0, nu]}
//   (c) lo =  hi =  mu_pm           -> BR(mu_pm)
//   (d) lo =  mu_pm < hi            -> {t_p : p in [nu, 1]}
//   (e) lo <  mu_pm < hi            -> {t_nu}
//   (f) mu_pm < lo                  -> BR(lo)
// With a zero-slope action a_= bracketed by mu_-= and mu_=+:
//   (a) lo <= hi < mu_=+            -> BR(hi)
//   (b) mu_-= < lo                  -> BR(lo)
//   (c) lo <= mu_-= < mu_=+ <= hi   -> {a_=}
// One-sided landscapes (all slopes <= 0 or all >= 0) reduce to BR(hi) or
// BR(lo) with the missing bracket treated as the domain boundary.
inline IntervalResponse interval_maxmin_response(const FollowerGame& reduced,
                                                 const Rat& lo, const Rat& hi) {
  if (lo < 0 || hi > 1 || lo > hi)
    throw PreconditionViolated("interval must satisfy 0 <= lo <= hi <= 1");
  Landscape ls = compute_landscape(reduced);

  auto envelope = [&](const Rat& p) {
    Rat best = line_of(reduced, 0).at(p);
    for (std::size_t c = 1; c < reduced.follower_actions(); ++c) {
      Rat v = line_of(reduced, c).at(p);
      if (v > best) best = v;
    }
    return best;
  };
  auto br_at = [&](const Rat& p) {
    IntervalResponse r;
    r.kind = IntervalResponse::Kind::BestResponseAt;
    r.anchor = p;
    r.implied_value = envelope(p);
    return r;
  };

  if (!ls.zero_slope.empty()) {
    const Rat mu_le = ls.mu_minus_equal.value_or(Rat(0));
    const Rat mu_eq = ls.mu_equal_plus.value_or(Rat(1));
    if (ls.mu_equal_plus && hi < *ls.mu_equal_plus) return br_at(hi);       // (a)
    if (ls.mu_minus_equal && *ls.mu_minus_equal < lo) return br_at(lo);     // (b)
    if (lo <= mu_le && mu_eq <= hi) {                                       // (c)
      IntervalResponse r;
      r.kind = IntervalResponse::Kind::EqualizerAction;
      r.equal_action = ls.zero_slope.front();
      r.implied_value = line_of(reduced, r.equal_action).w;
      return r;
    }
    // One-sided landscapes: the remaining configurations collapse to the
    // endpoint cases.
    if (!ls.mu_minus_equal) return br_at(lo);
    return br_at(hi);
  }

  if (ls.positive_slope.empty()) return br_at(hi);  // every slope negative
  if (ls.negative_slope.empty()) return br_at(lo);  // every slope positive

  const Rat mu_pm = *ls.sign_change;
  const std::size_t ax = ls.negative_slope.back();
  const std::size_t ay = ls.positive_slope.front();
  const Rat nu = tying_point(line_of(reduced, ax), line_of(reduced, ay));

  if (hi < mu_pm) return br_at(hi);                     // (a)
  if (mu_pm < lo) return br_at(lo);                     // (f)
  if (lo == hi) return br_at(mu_pm);                    // (c)

  IntervalResponse r;
  r.kind = IntervalResponse::Kind::TieSegment;
  r.x = ax;
  r.y = ay;
  r.implied_value = envelope(mu_pm);
  if (lo < mu_pm && mu_pm < hi) {                       // (e)
    r.t_lo = r.t_hi = nu;
  } else if (hi == mu_pm) {                             // (b)
    r.t_lo = 0;
    r.t_hi = nu;
  } else {                                              // (d): lo == mu_pm
    r.t_lo = nu;
    r.t_hi = 1;
  }
  return r;
}

}  // namespace stackamb
