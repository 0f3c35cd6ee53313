#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "stackamb/errors.hpp"
#include "stackamb/game.hpp"
#include "stackamb/landscape.hpp"
#include "stackamb/responses.hpp"

namespace stackamb::detail {

// Exact evaluator of W(s, [lo, hi]) over many interval commitments of a
// 2-action-leader game.
//
// For an interval [lo, hi], a follower's optimal responses are supported on
// the actions that touch the upper envelope at the envelope's minimizer over
// [lo, hi]; the optimal face is that sub-simplex cut by a sign condition on
// the mixture's slope.  Both data are constant while the endpoints stay in
// the same cell of the follower's breakpoint arrangement, so the sweep
// caches them per cell pair and only the tie-break selection (which reads
// the leader payoffs at the exact endpoints) runs per pair.  Tie-break
// selections resolve residual ties lexicographically, matching the
// canonical representatives of maxmin_response exactly.
class IntervalSweeper {
  enum Rel { kFree, kEqZero, kGeZero, kLeZero };

  struct ClassEntry {
    std::vector<std::size_t> columns;  // face support, ascending
    Rel rel = kFree;
    bool single = false;
    Rat a, b;        // contribution (1-p) row0 + p row1 = a + p b when single
  };

  struct Follower {
    const FollowerGame* game = nullptr;
    std::vector<ActionLine> lines;          // all original columns
    std::vector<Rat> lrow0, lrow1;          // leader payoff rows
    std::vector<std::vector<std::size_t>> groups;  // identical-line groups per column rep
    std::vector<std::size_t> group_of;      // column -> lowest index of its group
    std::vector<Rat> special;               // 0 < breakpoints < 1
    std::vector<std::vector<std::size_t>> touch_at;  // touching columns per special
    std::vector<std::size_t> cell_group_rep;         // surviving column per open cell
    Rat gm_lo, gm_hi;                       // envelope argmin region
    std::vector<std::size_t> flat_touch;    // argmin-region touch set when flat
    std::vector<int> pos;                   // per grid point: 2k on special, 2k+1 in cell
    std::vector<std::optional<ClassEntry>> cache;
    std::size_t cache_width = 0;

    Rat envelope(const Rat& p) const {
      Rat best = lines[0].at(p);
      for (std::size_t c = 1; c < lines.size(); ++c) {
        Rat v = lines[c].at(p);
        if (v > best) best = v;
      }
      return best;
    }
  };

 public:
  IntervalSweeper(const CoupledGame& game, TieBreak tie) : game_(&game), tie_(tie) {
    if (game.leader_action_count != 2)
      throw WrongLeaderActionCount("interval search needs a 2-action leader");
    followers_.reserve(game.k());
    for (const auto& fg : game.followers) followers_.push_back(prepare(fg));
  }

  // Sorted, deduplicated candidate endpoints in [0, 1].
  void set_grid(std::vector<Rat> points) {
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    grid_ = std::move(points);
    for (auto& f : followers_) {
      f.pos.resize(grid_.size());
      for (std::size_t i = 0; i < grid_.size(); ++i) f.pos[i] = position(f, grid_[i]);
      f.cache_width = 2 * f.special.size() - 1;
      f.cache.assign(f.cache_width * f.cache_width, std::nullopt);
    }
    any_change_.assign(grid_.size(), false);
    for (std::size_t j = 1; j < grid_.size(); ++j)
      for (const auto& f : followers_)
        if (f.pos[j] != f.pos[j - 1]) {
          any_change_[j] = true;
          break;
        }
  }

  const std::vector<Rat>& grid() const { return grid_; }

  struct PairValue {
    Rat worst;
    Rat spread;  // best-case minus worst-case over the two endpoints
  };

  PairValue evaluate_pair(std::size_t i, std::size_t j) {
    const Rat& lo = grid_[i];
    const Rat& hi = grid_[j];
    Rat sum_a = 0, sum_b = 0;
    for (auto& f : followers_) {
      auto [a, b] = contribution(f, f.pos[i], f.pos[j], lo, hi);
      sum_a += a;
      sum_b += b;
    }
    Rat at_lo = sum_a + lo * sum_b;
    Rat at_hi = sum_a + hi * sum_b;
    PairValue out;
    if (at_lo <= at_hi) {
      out.worst = at_lo;
      out.spread = at_hi - at_lo;
    } else {
      out.worst = at_hi;
      out.spread = at_lo - at_hi;
    }
    return out;
  }

  struct Winner {
    Rat lo, hi, value;
    long examined = 0;
  };

  // Argmax of W over all grid pairs lo <= hi.  Ties prefer the candidate
  // whose leader payoff varies least across the commitment (most consistent),
  // then the smallest lower endpoint, then the widest interval.
  //
  // Contributions only change when the upper endpoint crosses one of a
  // follower's cells (or the follower's face is endpoint-sensitive), so the
  // inner loop updates sums incrementally instead of re-deriving every pair.
  Winner run() {
    Winner best;
    bool have = false;
    Rat best_spread;
    auto consider = [&](const Rat& lo, const Rat& hi, const Rat& worst,
                        const Rat& spread) {
      bool better;
      if (!have) {
        better = true;
      } else if (worst != best.value) {
        better = worst > best.value;
      } else if (spread != best_spread) {
        better = spread < best_spread;
      } else if (lo != best.lo) {
        better = lo < best.lo;
      } else {
        better = hi > best.hi;
      }
      if (better) {
        have = true;
        best.lo = lo;
        best.hi = hi;
        best.value = worst;
        best_spread = spread;
      }
    };

    struct State {
      const ClassEntry* e = nullptr;
      Rat a, b;
    };
    std::vector<State> st(followers_.size());

    for (std::size_t i = 0; i < grid_.size(); ++i) {
      {
        PairValue pv = evaluate_pair(i, i);
        consider(grid_[i], grid_[i], pv.worst, pv.spread);
        ++best.examined;
      }
      Rat sum_a, sum_b, at_lo;
      std::size_t j = i + 1;
      while (j < grid_.size()) {
        bool all_single = true;
        for (std::size_t fi = 0; fi < followers_.size(); ++fi) {
          Follower& f = followers_[fi];
          bool moved = j == i + 1 || f.pos[j] != f.pos[j - 1];
          if (moved) st[fi].e = &entry(f, f.pos[i], f.pos[j], grid_[i], grid_[j]);
          if (st[fi].e->single) {
            if (moved) {
              st[fi].a = st[fi].e->a;
              st[fi].b = st[fi].e->b;
            }
          } else {
            all_single = false;
            auto [a, b] = st[fi].e->columns.size() == 2
                              ? segment_contribution(f, *st[fi].e, grid_[i], grid_[j])
                              : lp_contribution(f, *st[fi].e, grid_[i], grid_[j]);
            st[fi].a = std::move(a);
            st[fi].b = std::move(b);
          }
        }
        sum_a = 0;
        sum_b = 0;
        for (const State& s : st) {
          sum_a += s.a;
          sum_b += s.b;
        }
        at_lo = sum_a + grid_[i] * sum_b;

        // Largest stretch of upper endpoints over which every contribution
        // stays fixed; within it a single candidate dominates, picked by the
        // sign of the summed payoff slope.
        std::size_t end = j;
        if (all_single)
          while (end + 1 < grid_.size() && !any_change_[end + 1]) ++end;
        best.examined += static_cast<long>(end - j + 1);

        const int slope_sign = rat_sign(sum_b);
        if (slope_sign > 0) {
          // Worst case sits at the lower endpoint throughout; the narrowest
          // interval has the smallest spread.
          consider(grid_[i], grid_[j], at_lo, Rat((grid_[j] - grid_[i]) * sum_b));
        } else if (slope_sign == 0) {
          // Perfectly consistent across the run; the widest interval wins.
          consider(grid_[i], grid_[end], at_lo, Rat(0));
        } else {
          // Worst case decreases with the upper endpoint: take the first.
          Rat at_hi = sum_a + grid_[j] * sum_b;
          consider(grid_[i], grid_[j], at_hi, Rat(at_lo - at_hi));
        }
        j = end + 1;
      }
    }
    if (!have) throw InternalError("empty candidate grid");
    return best;
  }

 private:
  static Follower prepare(const FollowerGame& fg) {
    Follower f;
    f.game = &fg;
    const std::size_t m = fg.follower_actions();
    f.lines.resize(m);
    f.lrow0.resize(m);
    f.lrow1.resize(m);
    for (std::size_t c = 0; c < m; ++c) {
      f.lines[c] = line_of(fg, c);
      f.lrow0[c] = fg.leader_payoff.at(0, c);
      f.lrow1[c] = fg.leader_payoff.at(1, c);
    }
    f.group_of.resize(m);
    f.groups.assign(m, {});
    for (std::size_t c = 0; c < m; ++c) {
      f.group_of[c] = c;
      for (std::size_t d = 0; d < c; ++d) {
        if (f.lines[d].w == f.lines[c].w && f.lines[d].v == f.lines[c].v) {
          f.group_of[c] = f.group_of[d];
          break;
        }
      }
      f.groups[f.group_of[c]].push_back(c);
    }

    ReductionResult red = remove_weakly_dominated(fg);
    Landscape ls = compute_landscape(red.reduced);

    f.special = {Rat(0)};
    for (const Rat& mu : ls.breakpoints) f.special.push_back(mu);
    f.special.push_back(Rat(1));
    f.special.erase(std::unique(f.special.begin(), f.special.end()), f.special.end());

    f.touch_at.resize(f.special.size());
    for (std::size_t k = 0; k < f.special.size(); ++k) {
      Rat env = f.envelope(f.special[k]);
      for (std::size_t c = 0; c < m; ++c)
        if (f.lines[c].at(f.special[k]) == env) f.touch_at[k].push_back(c);
    }
    f.cell_group_rep.resize(f.special.size() - 1);
    for (std::size_t k = 0; k + 1 < f.special.size(); ++k) {
      Rat mid = (f.special[k] + f.special[k + 1]) / 2;
      Rat env = f.envelope(mid);
      std::size_t rep = m;
      for (std::size_t c = 0; c < m; ++c) {
        if (f.lines[c].at(mid) == env) {
          rep = f.group_of[c];
          break;
        }
      }
      f.cell_group_rep[k] = rep;
    }

    // Envelope argmin region.
    if (!ls.zero_slope.empty()) {
      std::size_t flat = ls.zero_slope.front();
      std::size_t idx = 0;
      for (std::size_t i = 0; i < ls.ordered_actions.size(); ++i)
        if (ls.ordered_actions[i] == flat) idx = i;
      f.gm_lo = ls.lo_of(idx);
      f.gm_hi = ls.hi_of(idx);
      f.flat_touch = f.groups[f.group_of[red.kept[flat]]];
    } else if (ls.sign_change) {
      f.gm_lo = f.gm_hi = *ls.sign_change;
    } else if (ls.positive_slope.empty()) {
      f.gm_lo = f.gm_hi = 1;  // strictly decreasing envelope
    } else {
      f.gm_lo = f.gm_hi = 0;  // strictly increasing envelope
    }
    return f;
  }

  static int position(const Follower& f, const Rat& p) {
    auto it = std::lower_bound(f.special.begin(), f.special.end(), p);
    std::size_t k = static_cast<std::size_t>(it - f.special.begin());
    if (it != f.special.end() && *it == p) return static_cast<int>(2 * k);
    return static_cast<int>(2 * (k - 1) + 1);
  }

  std::vector<std::size_t> touch_of_point(const Follower& f, int pos) const {
    if (pos % 2 == 0) return f.touch_at[pos / 2];
    return f.groups[f.cell_group_rep[pos / 2]];
  }

  const ClassEntry& entry(Follower& f, int pos_lo, int pos_hi, const Rat& lo,
                          const Rat& hi) {
    auto& slot = f.cache[static_cast<std::size_t>(pos_lo) * f.cache_width + pos_hi];
    if (slot) return *slot;

    ClassEntry e;
    if (pos_lo == pos_hi && lo == hi) {
      e.columns = touch_of_point(f, pos_lo);
      e.rel = kFree;
    } else if (hi < f.gm_lo) {
      e.columns = touch_of_point(f, pos_hi);
      e.rel = kFree;
    } else if (lo > f.gm_hi) {
      e.columns = touch_of_point(f, pos_lo);
      e.rel = kFree;
    } else {
      Rat olo = std::max(lo, f.gm_lo);
      Rat ohi = std::min(hi, f.gm_hi);
      if (olo < ohi) {
        e.columns = f.flat_touch;
        e.rel = kFree;
      } else {
        // Single-point contact with the argmin region.
        if (lo == olo)
          e.rel = kGeZero;
        else if (hi == olo)
          e.rel = kLeZero;
        else
          e.rel = kEqZero;
        e.columns = touch_of_point(f, position(f, olo));
      }
    }

    if (e.columns.size() == 1) {
      e.single = true;
      std::size_t c = e.columns.front();
      e.a = f.lrow0[c];
      e.b = f.lrow1[c] - f.lrow0[c];
    } else if (e.rel == kEqZero && e.columns.size() == 2) {
      // The zero-slope cut of a two-column face is the unique tying mix, so
      // the representative is fixed for every pair in this class.
      std::size_t alpha = e.columns[0], beta = e.columns[1];
      Rat sa = f.lines[alpha].slope();
      Rat sb = f.lines[beta].slope();
      if (sa != sb) {
        Rat t = sa / (sa - sb);
        e.single = true;
        e.a = f.lrow0[alpha] + t * (f.lrow0[beta] - f.lrow0[alpha]);
        e.b = (f.lrow1[alpha] - f.lrow0[alpha]) +
              t * ((f.lrow1[beta] - f.lrow0[beta]) - (f.lrow1[alpha] - f.lrow0[alpha]));
      }
    }
    slot = std::move(e);
    return *slot;
  }

  // Contribution coefficients (a, b) of this follower's canonical
  // representative: leader payoff a + p b at leader point p.
  std::pair<Rat, Rat> contribution(Follower& f, int pos_lo, int pos_hi, const Rat& lo,
                                   const Rat& hi) {
    const ClassEntry& e = entry(f, pos_lo, pos_hi, lo, hi);
    if (e.single) return {e.a, e.b};
    if (e.columns.size() == 2) return segment_contribution(f, e, lo, hi);
    return lp_contribution(f, e, lo, hi);
  }

  std::pair<Rat, Rat> segment_contribution(const Follower& f, const ClassEntry& e,
                                           const Rat& lo, const Rat& hi) {
    const std::size_t alpha = e.columns[0], beta = e.columns[1];
    const Rat sa = f.lines[alpha].slope();
    const Rat sb = f.lines[beta].slope();

    // Feasible t-range of q = (1-t) alpha + t beta under the slope condition.
    Rat t1 = 0, t2 = 1;
    auto clamp_ge = [&](bool ge) {
      // slope(t) = sa + t (sb - sa) >= 0  (or <= 0 when !ge)
      if (sa == sb) {
        if ((ge && sa < 0) || (!ge && sa > 0))
          throw InternalError("empty response segment");
        return;
      }
      Rat tcross = sa / (sa - sb);
      bool increasing = sb > sa;
      if (ge == increasing)
        t1 = std::max(t1, tcross);
      else
        t2 = std::min(t2, tcross);
    };
    switch (e.rel) {
      case kFree:
        break;
      case kGeZero:
        clamp_ge(true);
        break;
      case kLeZero:
        clamp_ge(false);
        break;
      case kEqZero:
        clamp_ge(true);
        clamp_ge(false);
        break;
    }
    if (t1 > t2) throw InternalError("empty response segment");

    // Leader payoff along the segment against each endpoint commitment:
    // g_e(t) = (1-t) L_e[alpha] + t L_e[beta].
    auto leader_at = [&](const Rat& p, std::size_t c) {
      return f.lrow0[c] + p * (f.lrow1[c] - f.lrow0[c]);
    };
    const Rat glo0 = leader_at(lo, alpha), glo1 = leader_at(lo, beta);
    const Rat ghi0 = leader_at(hi, alpha), ghi1 = leader_at(hi, beta);
    auto g_lo = [&](const Rat& t) { return glo0 + t * (glo1 - glo0); };
    auto g_hi = [&](const Rat& t) { return ghi0 + t * (ghi1 - ghi0); };

    Rat t_rep;
    if (tie_ == TieBreak::LexicographicFirst) {
      t_rep = t1;
    } else if (tie_ == TieBreak::LeaderFavorable) {
      // Maximize min(g_lo, g_hi) over [t1, t2]; ties resolved by smallest t.
      std::vector<Rat> cands = {t1, t2};
      Rat dlo = glo1 - glo0, dhi = ghi1 - ghi0;
      if (dlo != dhi) {
        Rat tx = (ghi0 - glo0) / (dlo - dhi);
        if (tx > t1 && tx < t2) cands.push_back(tx);
      }
      Rat tau;
      bool first = true;
      for (const Rat& t : cands) {
        Rat v = std::min(g_lo(t), g_hi(t));
        if (first || v > tau) tau = v, first = false;
      }
      Rat a1 = t1, a2 = t2;
      auto clamp_level = [&](const Rat& c0, const Rat& d) {
        if (d > 0)
          a1 = std::max(a1, Rat((tau - c0) / d));
        else if (d < 0)
          a2 = std::min(a2, Rat((tau - c0) / d));
        else if (c0 < tau)
          throw InternalError("leader-favorable level set is empty");
      };
      clamp_level(glo0, dlo);
      clamp_level(ghi0, dhi);
      if (a1 > a2) throw InternalError("leader-favorable level set is empty");
      t_rep = a1;
    } else {
      // Adversarial: minimize min(g_lo, g_hi); ties resolved by smallest t.
      Rat sigma = std::min(std::min(g_lo(t1), g_hi(t1)), std::min(g_lo(t2), g_hi(t2)));
      std::optional<Rat> best;
      auto consider = [&](const Rat& t) {
        if (t < t1 || t > t2) return;
        if (std::min(g_lo(t), g_hi(t)) != sigma) return;
        if (!best || t < *best) best = t;
      };
      consider(t1);
      consider(t2);
      Rat dlo = glo1 - glo0, dhi = ghi1 - ghi0;
      if (dlo != 0) consider((sigma - glo0) / dlo);
      if (dhi != 0) consider((sigma - ghi0) / dhi);
      if (!best) throw InternalError("adversarial level set is empty");
      t_rep = *best;
    }

    Rat a = f.lrow0[alpha] + t_rep * (f.lrow0[beta] - f.lrow0[alpha]);
    Rat b = (f.lrow1[alpha] - f.lrow0[alpha]) +
            t_rep * ((f.lrow1[beta] - f.lrow0[beta]) - (f.lrow1[alpha] - f.lrow0[alpha]));
    return {a, b};
  }

  // Follower maxmin value against [lo, hi]: the envelope minimum there.
  static Rat pair_value(const Follower& f, const Rat& lo, const Rat& hi) {
    if (hi < f.gm_lo) return f.envelope(hi);
    if (lo > f.gm_hi) return f.envelope(lo);
    return f.envelope(std::max(lo, f.gm_lo));
  }

  // Faces supported on three or more columns (multiple envelope touchers)
  // fall back to the canonical LP selection on the restricted coordinates.
  std::pair<Rat, Rat> lp_contribution(const Follower& f, const ClassEntry& e,
                                      const Rat& lo, const Rat& hi) {
    ResponseFace face;
    face.m = e.columns.size();
    face.value = pair_value(f, lo, hi);
    auto reduced_row = [&](const Rat& p) {
      std::vector<Rat> row(face.m);
      for (std::size_t i = 0; i < face.m; ++i) row[i] = f.lines[e.columns[i]].at(p);
      return row;
    };
    face.reduced.push_back(reduced_row(lo));
    if (hi != lo) face.reduced.push_back(reduced_row(hi));

    std::vector<std::vector<Rat>> lrows;
    auto lrow = [&](const Rat& p) {
      std::vector<Rat> row(face.m);
      for (std::size_t i = 0; i < face.m; ++i) {
        std::size_t c = e.columns[i];
        row[i] = f.lrow0[c] + p * (f.lrow1[c] - f.lrow0[c]);
      }
      return row;
    };
    lrows.push_back(lrow(lo));
    if (hi != lo) lrows.push_back(lrow(hi));

    std::vector<Rat> rep = select_representative(face, lrows, tie_);
    Rat a = 0, b = 0;
    for (std::size_t i = 0; i < face.m; ++i) {
      std::size_t c = e.columns[i];
      a += rep[i] * f.lrow0[c];
      b += rep[i] * (f.lrow1[c] - f.lrow0[c]);
    }
    return {a, b};
  }

  const CoupledGame* game_;
  TieBreak tie_;
  std::vector<Follower> followers_;
  std::vector<Rat> grid_;
  std::vector<bool> any_change_;  // per grid index: some follower changed cell
};

}  // namespace stackamb::detail
