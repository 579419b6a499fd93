#include "strel/sliding_window.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace strel {

SlidingWindow::SlidingWindow(WindowOp op, double a, double b) : op_(op), a_(a), b_(b) {
  if (!(a >= 0.0) || !(a <= b) || !std::isfinite(b)) {
    throw std::invalid_argument("sliding window needs 0 <= a <= b < inf");
  }
}

ValueMatrix SlidingWindow::combine(const ValueMatrix& x, const ValueMatrix& y) const {
  ValueMatrix r = x;
  auto out = r.entries();
  auto ys = y.entries();
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = op_ == WindowOp::Max ? imax(out[i], ys[i]) : imin(out[i], ys[i]);
  }
  return r;
}

void SlidingWindow::add(double start, const ValueMatrix& value) {
  if (!dq_.empty() && !(dq_.back().start < start)) {
    throw std::invalid_argument("sliding window entries must be added in time order");
  }
  std::size_t first = dq_.size();
  while (first > 0) {
    ValueMatrix folded = combine(dq_[first - 1].value, value);
    if (folded == dq_[first - 1].value) {
      break;  // this entry and every earlier one already dominate value
    }
    dq_[first - 1].value = std::move(folded);
    --first;
  }
  dq_.push_back({start, value});
  // Only the folded tail can hold new equal neighbours; keep the earliest
  // start of each run.
  std::size_t w = first == 0 ? 0 : first - 1;
  for (std::size_t r = w + 1; r < dq_.size(); ++r) {
    if (!(dq_[r].value == dq_[w].value)) {
      ++w;
      if (w != r) {
        dq_[w] = std::move(dq_[r]);
      }
    }
  }
  dq_.resize(w + 1, Entry{0.0, {}});
}

std::vector<Update> SlidingWindow::evaluate(const PCSignal& child, double t_s, double t_e) {
  dq_.clear();
  std::vector<Update> out;
  if (!(t_s < t_e)) {
    return out;
  }
  const auto pieces = child.pieces();
  const std::size_t P = pieces.size();
  auto end_of = [&](std::size_t k) { return k + 1 < P ? pieces[k + 1].start : kInf; };

  // First piece still inside the window of t_s.
  std::size_t k = 0;
  {
    std::size_t lo = 0;
    std::size_t hi = P;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (end_of(mid) - a_ > t_s) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    k = lo;
  }

  double cur = t_s;
  auto emit = [&](double until) {
    if (cur < until) {
      out.emplace_back(cur, until, dq_.front().value);
      cur = until;
    }
  };
  auto evict_before = [&](double t, bool inclusive) {
    while (dq_.size() >= 2) {
      const double x = dq_[1].start - a_;
      if (inclusive ? !(x <= t) : !(x < t)) {
        break;
      }
      emit(x);
      dq_.pop_front();
    }
  };

  for (; k < P; ++k) {
    const double enter = pieces[k].start - b_;
    if (enter >= t_e) {
      break;
    }
    evict_before(enter, true);
    if (!dq_.empty()) {
      emit(enter);
    }
    add(pieces[k].start, pieces[k].values);
  }
  evict_before(t_e, false);
  emit(t_e);
  return out;
}

} // namespace strel
