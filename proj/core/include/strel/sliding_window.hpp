#pragma once

#include "strel/signal.hpp"

#include <cstddef>
#include <deque>
#include <vector>

namespace strel {

enum class WindowOp { Max, Min };

/// Interval sliding-window max (or min) of a column signal over [t+a, t+b].
///
/// The deque holds groups of child pieces as (start, aggregate) entries, where
/// the aggregate is the max over every added piece from `start` onwards. Group
/// aggregates are monotone front to back and consecutive entries differ, so an
/// entry is never dominated by a later one.
class SlidingWindow {
public:
  struct Entry {
    double start;
    ValueMatrix value;
  };

  SlidingWindow(WindowOp op, double a, double b);

  WindowOp op() const { return op_; }
  double lower() const { return a_; }
  double upper() const { return b_; }

  /// Pushes a piece starting at `start`, folding it into the tail entries it
  /// is not dominated by and merging tail entries that became equal.
  void add(double start, const ValueMatrix& value);
  void pop_front() { dq_.pop_front(); }
  void clear() { dq_.clear(); }

  std::size_t size() const { return dq_.size(); }
  const Entry& front() const { return dq_.front(); }
  const std::deque<Entry>& entries() const { return dq_; }

  /// Window aggregate of `child` for every t in [t_s, t_e), as consecutive
  /// updates covering exactly that span. Resets the deque first.
  std::vector<Update> evaluate(const PCSignal& child, double t_s, double t_e);

private:
  ValueMatrix combine(const ValueMatrix& x, const ValueMatrix& y) const;

  WindowOp op_;
  double a_;
  double b_;
  std::deque<Entry> dq_;
};

} // namespace strel
