#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "stackamb/errors.hpp"
#include "stackamb/rational.hpp"

namespace stackamb {

// Dense row-major matrix of exact rationals; rows index leader actions,
// columns index follower actions.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const Rat& fill = Rat(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix from_rows(std::vector<std::vector<Rat>> rows) {
    Matrix m;
    m.rows_ = rows.size();
    m.cols_ = rows.empty() ? 0 : rows[0].size();
    m.data_.reserve(m.rows_ * m.cols_);
    for (auto& r : rows) {
      if (r.size() != m.cols_)
        throw ValidationError(ValidationKind::DimensionMismatch,
                              "ragged matrix rows");
      for (auto& v : r) m.data_.push_back(std::move(v));
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const Rat& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Rat& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  std::vector<Rat> column(std::size_t c) const {
    std::vector<Rat> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = at(r, c);
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rat> data_;
};

// Probability vector over a finite action set: weights >= 0 summing to 1.
class MixedStrategy {
 public:
  explicit MixedStrategy(std::vector<Rat> weights) : w_(std::move(weights)) {
    Rat sum = 0;
    for (const Rat& x : w_) {
      if (x < 0)
        throw ValidationError(ValidationKind::NonRationalEntry,
                              "negative strategy weight");
      sum += x;
    }
    if (sum != 1)
      throw ValidationError(ValidationKind::NonRationalEntry,
                            "strategy weights must sum to 1");
  }

  static MixedStrategy pure(std::size_t n, std::size_t action) {
    std::vector<Rat> w(n, Rat(0));
    w.at(action) = 1;
    return MixedStrategy(std::move(w));
  }

  static MixedStrategy uniform(std::size_t n) {
    return MixedStrategy(std::vector<Rat>(n, Rat(1, n)));
  }

  std::size_t size() const { return w_.size(); }
  const Rat& operator[](std::size_t i) const { return w_[i]; }
  const std::vector<Rat>& weights() const { return w_; }

  bool is_pure() const {
    for (const Rat& x : w_)
      if (x != 0 && x != 1) return false;
    return true;
  }

  friend bool operator==(const MixedStrategy& a, const MixedStrategy& b) {
    return a.w_ == b.w_;
  }
  friend bool operator<(const MixedStrategy& a, const MixedStrategy& b) {
    return a.w_ < b.w_;
  }

 private:
  std::vector<Rat> w_;
};

// One follower's bimatrix slice of the coupled game.
struct FollowerGame {
  std::string name;
  Matrix follower_payoff;  // u_F, rows = leader actions
  Matrix leader_payoff;    // u_{L_F}, same shape

  std::size_t leader_actions() const { return follower_payoff.rows(); }
  std::size_t follower_actions() const { return follower_payoff.cols(); }
};

// One leader, k followers; the leader's utility sums across followers.
struct CoupledGame {
  std::size_t leader_action_count = 0;
  std::vector<FollowerGame> followers;

  std::size_t k() const { return followers.size(); }

  bool is_zero_sum() const {
    for (const auto& f : followers) {
      for (std::size_t r = 0; r < f.follower_payoff.rows(); ++r)
        for (std::size_t c = 0; c < f.follower_payoff.cols(); ++c)
          if (f.leader_payoff.at(r, c) != -f.follower_payoff.at(r, c)) return false;
    }
    return true;
  }

  // Restriction to a single follower, for decoupled baselines.
  CoupledGame restrict_to(std::size_t follower_index) const {
    CoupledGame g;
    g.leader_action_count = leader_action_count;
    g.followers.push_back(followers.at(follower_index));
    return g;
  }
};

// Checks every structural invariant; errors name the offending follower.
inline void validate(const CoupledGame& game) {
  if (game.leader_action_count < 1)
    throw ValidationError(ValidationKind::DimensionMismatch,
                          "leader must have at least one action");
  if (game.followers.empty())
    throw ValidationError(ValidationKind::EmptyFollowerList,
                          "game has no followers");
  for (std::size_t i = 0; i < game.followers.size(); ++i) {
    const auto& f = game.followers[i];
    if (f.follower_payoff.rows() != game.leader_action_count)
      throw ValidationError(
          ValidationKind::DimensionMismatch,
          "follower '" + f.name + "' (index " + std::to_string(i) + "): payoff has " +
              std::to_string(f.follower_payoff.rows()) + " rows, leader has " +
              std::to_string(game.leader_action_count) + " actions");
    if (f.leader_payoff.rows() != f.follower_payoff.rows() ||
        f.leader_payoff.cols() != f.follower_payoff.cols())
      throw ValidationError(
          ValidationKind::DimensionMismatch,
          "follower '" + f.name + "' (index " + std::to_string(i) +
              "): leader and follower matrices differ in shape");
    if (f.follower_payoff.cols() < 1)
      throw ValidationError(ValidationKind::DimensionMismatch,
                            "follower '" + f.name + "' has no actions");
  }
}

// Expected follower payoff U_F(p, q) = p' u_F q.
inline Rat expected_payoff(const Matrix& payoff, const MixedStrategy& leader,
                           const MixedStrategy& follower) {
  Rat total = 0;
  for (std::size_t r = 0; r < payoff.rows(); ++r) {
    if (leader[r] == 0) continue;
    Rat row = 0;
    for (std::size_t c = 0; c < payoff.cols(); ++c) {
      if (follower[c] != 0) row += payoff.at(r, c) * follower[c];
    }
    total += leader[r] * row;
  }
  return total;
}

// Expected payoff of a pure follower column against a mixed leader.
inline Rat expected_column_payoff(const Matrix& payoff, const MixedStrategy& leader,
                                  std::size_t column) {
  Rat total = 0;
  for (std::size_t r = 0; r < payoff.rows(); ++r) {
    if (leader[r] != 0) total += leader[r] * payoff.at(r, column);
  }
  return total;
}

}  // namespace stackamb
