#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "stackamb/errors.hpp"
#include "stackamb/game.hpp"
#include "stackamb/lp.hpp"
#include "stackamb/rational.hpp"

namespace stackamb {

enum class CommitmentKind { Singleton, PureSubset, Interval, GeneralPolytope };

inline const char* to_string(CommitmentKind k) {
  switch (k) {
    case CommitmentKind::Singleton: return "singleton";
    case CommitmentKind::PureSubset: return "pure-subset";
    case CommitmentKind::Interval: return "interval";
    default: return "polytope";
  }
}

// A closed convex commitment set, represented by its extreme points.  The
// worst-case payoff and maxmin responses depend only on the extreme points,
// so duplicates are rejected and minimality is enforced at construction: no
// stored point may be a convex combination of the others (LP feasibility
// test).
class CommitmentSet {
 public:
  static CommitmentSet singleton(MixedStrategy p) {
    CommitmentSet s;
    s.kind_ = CommitmentKind::Singleton;
    s.points_.push_back(std::move(p));
    return s;
  }

  // Pure strategies with the given 0-based leader action indices.
  static CommitmentSet pure_subset(std::size_t n, std::vector<std::size_t> actions) {
    if (actions.empty())
      throw PreconditionViolated("pure subset commitment needs at least one action");
    std::sort(actions.begin(), actions.end());
    if (std::adjacent_find(actions.begin(), actions.end()) != actions.end())
      throw PreconditionViolated("duplicate action in pure subset");
    if (actions.back() >= n)
      throw PreconditionViolated("pure subset action index out of range");
    CommitmentSet s;
    s.kind_ = actions.size() == 1 ? CommitmentKind::Singleton : CommitmentKind::PureSubset;
    for (std::size_t a : actions) s.points_.push_back(MixedStrategy::pure(n, a));
    s.pure_actions_ = std::move(actions);
    return s;
  }

  static CommitmentSet full_simplex(std::size_t n) {
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    return pure_subset(n, std::move(all));
  }

  // Two-action leader: the probabilities on action 1 range over [lo, hi].
  static CommitmentSet interval(const Rat& lo, const Rat& hi) {
    if (lo < 0 || hi > 1 || lo > hi)
      throw PreconditionViolated("interval endpoints must satisfy 0 <= lo <= hi <= 1");
    if (lo == hi)
      return singleton(MixedStrategy({Rat(1) - lo, lo}));
    CommitmentSet s;
    s.kind_ = CommitmentKind::Interval;
    s.points_.push_back(MixedStrategy({Rat(1) - lo, lo}));
    s.points_.push_back(MixedStrategy({Rat(1) - hi, hi}));
    s.lo_ = lo;
    s.hi_ = hi;
    return s;
  }

  // General finite extreme-point list; rejects duplicate and redundant points.
  static CommitmentSet polytope(std::vector<MixedStrategy> points) {
    if (points.empty())
      throw PreconditionViolated("commitment set needs at least one extreme point");
    for (std::size_t i = 0; i < points.size(); ++i)
      for (std::size_t j = i + 1; j < points.size(); ++j)
        if (points[i] == points[j])
          throw PreconditionViolated("duplicate extreme point in commitment set");
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (points.size() > 1 && is_convex_combination(points, i))
        throw PreconditionViolated("extreme point " + std::to_string(i) +
                                   " is a convex combination of the others");
    }
    CommitmentSet s;
    s.kind_ = points.size() == 1 ? CommitmentKind::Singleton : CommitmentKind::GeneralPolytope;
    s.points_ = std::move(points);
    return s;
  }

  CommitmentKind kind() const { return kind_; }
  const std::vector<MixedStrategy>& extreme_points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  std::size_t leader_actions() const { return points_.front().size(); }

  bool is_interval() const { return kind_ == CommitmentKind::Interval; }
  const Rat& interval_lo() const { return lo_; }
  const Rat& interval_hi() const { return hi_; }

  // Present for pure-subset (and singleton-of-pure) commitments.
  const std::vector<std::size_t>& pure_actions() const { return pure_actions_; }

  std::string describe() const {
    if (kind_ == CommitmentKind::Interval)
      return "[" + to_fraction_string(lo_) + ", " + to_fraction_string(hi_) + "]";
    if (!pure_actions_.empty()) {
      std::string out = "{";
      for (std::size_t i = 0; i < pure_actions_.size(); ++i) {
        if (i) out += ", ";
        out += "a" + std::to_string(pure_actions_[i]);
      }
      return out + "}";
    }
    std::string out = "{";
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (i) out += ", ";
      out += format_vector(points_[i].weights());
    }
    return out + "}";
  }

 private:
  static bool is_convex_combination(const std::vector<MixedStrategy>& pts, std::size_t i) {
    // Feasibility LP: lambda >= 0, sum lambda = 1, sum lambda_j pts[j] = pts[i].
    const std::size_t n = pts[i].size();
    LinearProgram lp;
    lp.objective.assign(pts.size() - 1, Rat(0));
    lp.bounds.assign(pts.size() - 1, VarBounds{});
    for (std::size_t coord = 0; coord < n; ++coord) {
      std::vector<Rat> row;
      row.reserve(pts.size() - 1);
      for (std::size_t j = 0; j < pts.size(); ++j)
        if (j != i) row.push_back(pts[j][coord]);
      lp.add_row(std::move(row), Sense::Equal, pts[i][coord]);
    }
    lp.add_row(std::vector<Rat>(pts.size() - 1, Rat(1)), Sense::Equal, Rat(1));
    return lp_solve(lp).status == LpStatus::Optimal;
  }

  CommitmentKind kind_ = CommitmentKind::Singleton;
  std::vector<MixedStrategy> points_;
  std::vector<std::size_t> pure_actions_;
  Rat lo_, hi_;
};

}  // namespace stackamb
