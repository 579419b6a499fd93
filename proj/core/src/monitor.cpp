#include "strel/monitor.hpp"

#include "strel/offline.hpp"
#include "strel/sliding_window.hpp"
#include "strel/spatial_kernels.hpp"

#include <algorithm>
#include <stdexcept>

namespace strel {

namespace {

std::vector<TimeSpan> merge_spans(std::vector<TimeSpan> spans) {
  std::erase_if(spans, [](const TimeSpan& s) { return s.empty(); });
  std::sort(spans.begin(), spans.end(),
            [](const TimeSpan& x, const TimeSpan& y) { return x.begin < y.begin; });
  std::vector<TimeSpan> out;
  for (const auto& s : spans) {
    if (!out.empty() && s.begin <= out.back().end) {
      out.back().end = std::max(out.back().end, s.end);
    } else {
      out.push_back(s);
    }
  }
  return out;
}

// Consecutive updates over [begin, end) from the pieces of `s`, each mapped by fn.
template <class Fn>
std::vector<Update> map_span(const PCSignal& s, double begin, double end, Fn&& fn) {
  std::vector<Update> out;
  const auto pieces = s.select(begin, end);
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const double e = i + 1 < pieces.size() ? pieces[i + 1].start : end;
    out.emplace_back(pieces[i].start, e, fn(pieces[i].values));
  }
  return out;
}

// Same over the merged pieces of two signals.
template <class Fn>
std::vector<Update> zip_span(const PCSignal& x, const PCSignal& y, double begin, double end,
                             Fn&& fn) {
  std::vector<Update> out;
  std::size_t i = x.piece_index_at(begin);
  std::size_t j = y.piece_index_at(begin);
  double t = begin;
  while (t < end) {
    const double e = std::min({x.piece_end(i), y.piece_end(j), end});
    out.emplace_back(t, e, fn(x.piece(i).values, y.piece(j).values));
    if (x.piece_end(i) == e) {
      ++i;
    }
    if (y.piece_end(j) == e) {
      ++j;
    }
    t = e;
  }
  return out;
}

ValueMatrix from_field(const std::vector<Interval>& xs) {
  ValueMatrix m(xs.size(), 1);
  std::copy(xs.begin(), xs.end(), m.entries().begin());
  return m;
}

} // namespace

Monitor::Monitor(SpatialModel model, const Formula& f, std::size_t num_locations,
                 std::size_t num_dims, MonitorOptions opts)
    : model_(std::move(model)),
      formula_(normalize(f, {.keep_globally = true})),
      table_(formula_),
      opts_(opts),
      input_(PCSignal::undefined(num_locations, num_dims)) {
  if (model_.size() != num_locations) {
    throw std::invalid_argument("monitor: spatial model has " + std::to_string(model_.size()) +
                                " locations, expected " + std::to_string(num_locations));
  }
  // The memory starts as the robustness of the fully unknown signal, which is
  // the operator of the (constant) children at every node.
  memory_ = evaluate_table(input_, model_, table_, Semantics::Robust, {.threads = opts_.threads});
}

std::vector<Update> Monitor::apply(const Update& u) {
  return propagate(input_.refine_run(std::span<const Update>(&u, 1)));
}

std::vector<Update> Monitor::apply(const SparseUpdate& u) {
  const auto full = expand(input_, u);
  return propagate(input_.refine_run(full));
}

std::vector<Update> Monitor::propagate(std::vector<Update> input_changes) {
  if (input_changes.empty()) {
    return {};
  }
  std::vector<std::vector<Update>> changes(table_.size());
  for (std::size_t i = 0; i < table_.size(); ++i) {
    changes[i] = table_[i].op() == Op::UnboundedUntil ? recompute_unbounded_until(i, changes)
                                                      : recompute(i, input_changes, changes);
  }
  return std::move(changes.back());
}

std::vector<Update> Monitor::recompute(std::size_t node, std::span<const Update> input_changes,
                                       const std::vector<std::vector<Update>>& changes) {
  const Formula& f = table_[node];
  const auto kids = table_.children(node);
  std::vector<TimeSpan> spans;
  auto clamp = [](double b, double e) { return TimeSpan{std::max(0.0, b), std::max(0.0, e)}; };
  switch (f.op()) {
  case Op::True:
  case Op::False: return {};
  case Op::Atom:
    for (const auto& u : input_changes) {
      spans.push_back({u.begin, u.end});
    }
    break;
  case Op::Until:
    // A change of the left child at t' matters to every t whose window reaches t'.
    for (const auto& u : changes[kids[0]]) {
      spans.push_back(clamp(u.begin - f.upper(), u.end));
    }
    for (const auto& u : changes[kids[1]]) {
      spans.push_back(update_ripple({u.begin, u.end}, f));
    }
    break;
  default:
    for (std::size_t k : kids) {
      for (const auto& u : changes[k]) {
        spans.push_back(update_ripple({u.begin, u.end}, f));
      }
    }
    break;
  }
  std::vector<Update> changed;
  for (const auto& span : merge_spans(std::move(spans))) {
    const auto run = evaluate_span(node, span.begin, span.end);
    auto applied = memory_[node].refine_run(run);
    changed.insert(changed.end(), std::make_move_iterator(applied.begin()),
                   std::make_move_iterator(applied.end()));
  }
  return changed;
}

std::vector<Update> Monitor::evaluate_span(std::size_t node, double begin, double end) const {
  const Formula& f = table_[node];
  const auto kids = table_.children(node);
  const std::size_t rows = input_.num_locations();
  switch (f.op()) {
  case Op::Atom:
    return map_span(input_, begin, end, [&](const ValueMatrix& v) {
      ValueMatrix m(rows, 1);
      for (std::size_t l = 0; l < rows; ++l) {
        m(l, 0) = atom_robust(v(l, f.dim()), f.cmp(), f.constant());
      }
      return m;
    });
  case Op::Not:
    return map_span(memory_[kids[0]], begin, end, [&](const ValueMatrix& v) {
      ValueMatrix m(rows, 1);
      for (std::size_t l = 0; l < rows; ++l) {
        m(l, 0) = neg(v(l, 0));
      }
      return m;
    });
  case Op::Escape:
    return map_span(memory_[kids[0]], begin, end, [&](const ValueMatrix& v) {
      return from_field(
          escape_field(model_, f.distance(), v.entries(), kRobustLattice, opts_.threads));
    });
  case Op::Or:
    return zip_span(memory_[kids[0]], memory_[kids[1]], begin, end,
                    [&](const ValueMatrix& x, const ValueMatrix& y) {
                      ValueMatrix m(rows, 1);
                      for (std::size_t l = 0; l < rows; ++l) {
                        m(l, 0) = imax(x(l, 0), y(l, 0));
                      }
                      return m;
                    });
  case Op::Reach:
    return zip_span(memory_[kids[0]], memory_[kids[1]], begin, end,
                    [&](const ValueMatrix& x, const ValueMatrix& y) {
                      return from_field(reach_field(model_, f.distance(), x.entries(),
                                                    y.entries(), kRobustLattice, opts_.threads));
                    });
  case Op::Eventually:
  case Op::Globally: {
    SlidingWindow w(f.op() == Op::Eventually ? WindowOp::Max : WindowOp::Min, f.lower(),
                    f.upper());
    return w.evaluate(memory_[kids[0]], begin, end);
  }
  case Op::Until: return bounded_until_span(node, begin, end);
  default: break;
  }
  throw std::logic_error("monitor: no span evaluation for " + f.key());
}

std::vector<Update> Monitor::bounded_until_span(std::size_t node, double begin,
                                                double end) const {
  const Formula& f = table_[node];
  const PCSignal& left = memory_[table_.children(node)[0]];
  const PCSignal& right = memory_[table_.children(node)[1]];
  const double a = f.lower();
  const double b = f.upper();
  const std::size_t rows = input_.num_locations();

  // Output can only change where a child piece starts, enters the window
  // (start - b) or leaves it (start - a).
  std::vector<double> grid{begin};
  for (const PCSignal* s : {&left, &right}) {
    for (std::size_t k = s->piece_index_at(begin); k < s->size(); ++k) {
      const double st = s->piece(k).start;
      if (st - b >= end) {
        break;
      }
      for (double t : {st, st - a, st - b}) {
        if (t > begin && t < end) {
          grid.push_back(t);
        }
      }
    }
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<Update> out;
  out.reserve(grid.size());
  ValueMatrix run(rows, 1);
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const double tau = grid[g];
    ValueMatrix res(rows, 1, Interval(-kInf, -kInf));
    std::fill(run.entries().begin(), run.entries().end(), Interval(kInf, kInf));
    std::size_t i = left.piece_index_at(tau);
    std::size_t j = right.piece_index_at(tau);
    double seg_start = std::max(left.piece(i).start, right.piece(j).start);
    while (seg_start - b <= tau) {
      const double seg_end = std::min(left.piece_end(i), right.piece_end(j));
      const ValueMatrix& lv = left.piece(i).values;
      const ValueMatrix& rv = right.piece(j).values;
      const bool in_window = seg_end - a > tau;
      for (std::size_t l = 0; l < rows; ++l) {
        run(l, 0) = imin(run(l, 0), lv(l, 0));
        if (in_window) {
          res(l, 0) = imax(res(l, 0), imin(rv(l, 0), run(l, 0)));
        }
      }
      if (seg_end == kInf) {
        break;
      }
      if (left.piece_end(i) == seg_end) {
        ++i;
      }
      if (right.piece_end(j) == seg_end) {
        ++j;
      }
      seg_start = seg_end;
    }
    const double e = g + 1 < grid.size() ? grid[g + 1] : end;
    out.emplace_back(tau, e, std::move(res));
  }
  return out;
}

std::vector<Update> Monitor::recompute_unbounded_until(
    std::size_t node, const std::vector<std::vector<Update>>& changes) {
  const auto kids = table_.children(node);
  double ta_min = kInf;
  double tb_max = 0.0;
  for (std::size_t k : kids) {
    for (const auto& u : changes[k]) {
      ta_min = std::min(ta_min, u.begin);
      tb_max = std::max(tb_max, u.end);
    }
  }
  if (ta_min == kInf) {
    return {};
  }
  const PCSignal& left = memory_[kids[0]];
  const PCSignal& right = memory_[kids[1]];
  PCSignal& mem = memory_[node];
  const std::size_t rows = input_.num_locations();

  // Children are unchanged from tb_max on, and so is the until value there.
  ValueMatrix next = mem.matrix_at(tb_max);
  std::vector<Update> backwards;
  double seg_end = tb_max;
  std::size_t i = left.piece_index_at(tb_max);
  std::size_t j = right.piece_index_at(tb_max);
  if (left.piece(i).start == tb_max && i > 0) {
    --i;
  }
  if (right.piece(j).start == tb_max && j > 0) {
    --j;
  }
  while (seg_end > 0.0) {
    const double seg_start = std::max(left.piece(i).start, right.piece(j).start);
    const ValueMatrix& lv = left.piece(i).values;
    const ValueMatrix& rv = right.piece(j).values;
    ValueMatrix here(rows, 1);
    for (std::size_t l = 0; l < rows; ++l) {
      here(l, 0) = imax(imin(rv(l, 0), lv(l, 0)), imin(lv(l, 0), next(l, 0)));
    }
    // Before ta_min the recurrence inputs are as before; once the value
    // matches memory again, everything earlier does too.
    if (seg_end <= ta_min && here == mem.matrix_at(seg_start)) {
      break;
    }
    backwards.emplace_back(seg_start, seg_end, here);
    next = std::move(here);
    seg_end = seg_start;
    if (seg_start == left.piece(i).start && i > 0) {
      --i;
    }
    if (seg_start == right.piece(j).start && j > 0) {
      --j;
    }
  }
  std::reverse(backwards.begin(), backwards.end());
  return mem.refine_run(backwards);
}

} // namespace strel
