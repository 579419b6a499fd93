#include "strel/signal.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

namespace strel {

ValueMatrix::ValueMatrix(std::size_t rows, std::size_t cols, Interval fill)
    : rows_(rows), cols_(cols), entries_(rows * cols, fill) {}

const Interval& ValueMatrix::at(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) {
    throw std::out_of_range("value matrix index out of range");
  }
  return (*this)(r, c);
}

Update::Update(double b, double e, ValueMatrix v) : begin(b), end(e), values(std::move(v)) {
  if (!(b >= 0.0) || !(b < e) || !std::isfinite(e)) {
    throw std::invalid_argument("update span must satisfy 0 <= begin < end < inf, got [" +
                                format_real(b) + "," + format_real(e) + ")");
  }
}

RefinementError::RefinementError(std::size_t location, std::size_t dim, double time,
                                 const Interval& current, const Interval& proposed)
    : std::runtime_error("update " + to_string(proposed) + " does not refine " +
                         to_string(current) + " at location " + std::to_string(location) +
                         ", dim " + std::to_string(dim) + ", t=" + format_real(time)),
      location_(location), dim_(dim), time_(time) {}

PCSignal::PCSignal(std::size_t num_locations, std::size_t num_dims, std::vector<Piece> pieces)
    : num_locations_(num_locations), num_dims_(num_dims), pieces_(std::move(pieces)) {
  if (num_locations == 0 || num_dims == 0) {
    throw std::invalid_argument("signal needs at least one location and one dimension");
  }
  if (pieces_.empty() || pieces_.front().start != 0.0) {
    throw std::invalid_argument("signal pieces must start at t=0");
  }
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const auto& p = pieces_[i];
    if (p.values.rows() != num_locations || p.values.cols() != num_dims) {
      throw std::invalid_argument("signal piece has the wrong matrix shape");
    }
    if (!std::isfinite(p.start) || (i > 0 && !(pieces_[i - 1].start < p.start))) {
      throw std::invalid_argument("signal piece starts must be finite and strictly increasing");
    }
  }
}

PCSignal PCSignal::undefined(std::size_t num_locations, std::size_t num_dims) {
  return PCSignal(num_locations, num_dims, {Piece{0.0, ValueMatrix(num_locations, num_dims)}});
}

PCSignal PCSignal::constant(const ValueMatrix& values) {
  return PCSignal(values.rows(), values.cols(), {Piece{0.0, values}});
}

std::size_t PCSignal::piece_index_at(double t) const {
  if (!(t >= 0.0)) {
    throw std::invalid_argument("time must be non-negative");
  }
  // In-order streams hit the last piece almost always.
  if (t >= pieces_.back().start) {
    return pieces_.size() - 1;
  }
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), t,
                             [](double v, const Piece& p) { return v < p.start; });
  return static_cast<std::size_t>(std::distance(pieces_.begin(), it)) - 1;
}

std::vector<Interval> PCSignal::value_at(std::size_t location, double t) const {
  if (location >= num_locations_) {
    throw std::out_of_range("location out of range");
  }
  const auto row = matrix_at(t).row(location);
  return {row.begin(), row.end()};
}

void PCSignal::check_update(const Update& u) const {
  if (u.values.rows() != num_locations_ || u.values.cols() != num_dims_) {
    throw std::invalid_argument("update matrix shape does not match the signal");
  }
  for (std::size_t i = piece_index_at(u.begin); i < pieces_.size() && pieces_[i].start < u.end;
       ++i) {
    const auto& current = pieces_[i].values;
    for (std::size_t r = 0; r < num_locations_; ++r) {
      for (std::size_t c = 0; c < num_dims_; ++c) {
        if (!refines(current(r, c), u.values(r, c))) {
          throw RefinementError(r, c, std::max(pieces_[i].start, u.begin), current(r, c),
                                u.values(r, c));
        }
      }
    }
  }
}

void PCSignal::merge_around(std::size_t first, std::size_t last) {
  last = std::min(last, pieces_.size());
  if (last <= first + 1) {
    return;
  }
  std::size_t keep = first;
  for (std::size_t k = first + 1; k < last; ++k) {
    if (pieces_[k].values == pieces_[keep].values) {
      continue;
    }
    ++keep;
    if (keep != k) {
      pieces_[keep] = std::move(pieces_[k]);
    }
  }
  pieces_.erase(pieces_.begin() + static_cast<std::ptrdiff_t>(keep + 1),
                pieces_.begin() + static_cast<std::ptrdiff_t>(last));
}

void PCSignal::splice(double begin, double end, std::vector<Piece> replacement) {
  const std::size_t i0 = piece_index_at(begin);
  const std::size_t first = pieces_[i0].start < begin ? i0 + 1 : i0;

  std::size_t stop = pieces_.size();
  if (std::isfinite(end)) {
    auto it = std::lower_bound(pieces_.begin() + static_cast<std::ptrdiff_t>(first), pieces_.end(),
                               end, [](const Piece& p, double v) { return p.start < v; });
    stop = static_cast<std::size_t>(std::distance(pieces_.begin(), it));
    if (stop == pieces_.size() || pieces_[stop].start != end) {
      // The piece containing `end` keeps its value on [end, next start).
      replacement.push_back(Piece{end, pieces_[stop - 1].values});
    }
  }

  const std::size_t old_count = stop - first;
  const std::size_t new_count = replacement.size();
  auto dst = pieces_.begin() + static_cast<std::ptrdiff_t>(first);
  const std::size_t common = std::min(old_count, new_count);
  std::move(replacement.begin(), replacement.begin() + static_cast<std::ptrdiff_t>(common), dst);
  if (new_count < old_count) {
    pieces_.erase(dst + static_cast<std::ptrdiff_t>(new_count),
                  dst + static_cast<std::ptrdiff_t>(old_count));
  } else if (new_count > old_count) {
    pieces_.insert(dst + static_cast<std::ptrdiff_t>(old_count),
                   std::make_move_iterator(replacement.begin() + static_cast<std::ptrdiff_t>(common)),
                   std::make_move_iterator(replacement.end()));
  }
  merge_around(first == 0 ? 0 : first - 1, first + new_count + 1);
}

RefineReport PCSignal::refine(const Update& u) {
  check_update(u);
  bool changed = false;
  for (std::size_t i = piece_index_at(u.begin); i < pieces_.size() && pieces_[i].start < u.end;
       ++i) {
    if (!(pieces_[i].values == u.values)) {
      changed = true;
      break;
    }
  }
  if (changed) {
    splice(u.begin, u.end, {Piece{u.begin, u.values}});
  }
  return {changed, u.begin, u.end};
}

std::vector<Update> PCSignal::refine_run(std::span<const Update> run) {
  std::vector<Update> changed;
  if (run.empty()) {
    return changed;
  }
  for (std::size_t k = 0; k < run.size(); ++k) {
    if (k > 0 && run[k].begin != run[k - 1].end) {
      throw std::invalid_argument("refine_run expects contiguous updates");
    }
    check_update(run[k]);
  }
  for (const auto& u : run) {
    for (std::size_t i = piece_index_at(u.begin); i < pieces_.size() && pieces_[i].start < u.end;
         ++i) {
      if (!(pieces_[i].values == u.values)) {
        changed.push_back(u);
        break;
      }
    }
  }
  if (!changed.empty()) {
    std::vector<Piece> replacement;
    replacement.reserve(run.size() + 1);
    for (const auto& u : run) {
      if (!replacement.empty() && replacement.back().values == u.values) {
        continue;
      }
      replacement.push_back(Piece{u.begin, u.values});
    }
    splice(run.front().begin, run.back().end, std::move(replacement));
  }
  return changed;
}

void PCSignal::canonicalize() { merge_around(0, pieces_.size()); }

std::vector<Piece> PCSignal::select(double t1, double t2) const {
  if (!(t1 < t2)) {
    throw std::invalid_argument("select needs t1 < t2");
  }
  std::vector<Piece> out;
  std::size_t i = piece_index_at(t1);
  out.push_back(Piece{t1, pieces_[i].values});
  for (++i; i < pieces_.size() && pieces_[i].start < t2; ++i) {
    out.push_back(pieces_[i]);
  }
  return out;
}

PCSignal PCSignal::project(std::size_t dim) const {
  if (dim >= num_dims_) {
    throw std::out_of_range("projection dimension out of range");
  }
  std::vector<Piece> out;
  out.reserve(pieces_.size());
  for (const auto& p : pieces_) {
    ValueMatrix m(num_locations_, 1);
    for (std::size_t r = 0; r < num_locations_; ++r) {
      m(r, 0) = p.values(r, dim);
    }
    out.push_back(Piece{p.start, std::move(m)});
  }
  return PCSignal(num_locations_, 1, std::move(out));
}

PCSignal PCSignal::restrict_to_location(std::size_t location) const {
  if (location >= num_locations_) {
    throw std::out_of_range("location out of range");
  }
  std::vector<Piece> out;
  for (const auto& p : pieces_) {
    ValueMatrix m(1, num_dims_);
    for (std::size_t c = 0; c < num_dims_; ++c) {
      m(0, c) = p.values(location, c);
    }
    if (!out.empty() && out.back().values == m) {
      continue;
    }
    out.push_back(Piece{p.start, std::move(m)});
  }
  return PCSignal(1, num_dims_, std::move(out));
}

std::vector<double> merged_boundaries(std::initializer_list<const PCSignal*> signals) {
  std::vector<double> out;
  for (const auto* s : signals) {
    for (const auto& p : s->pieces()) {
      out.push_back(p.start);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

void require_same_shape(const PCSignal& a, const PCSignal& b) {
  if (a.num_locations() != b.num_locations() || a.num_dims() != b.num_dims()) {
    throw std::invalid_argument("signals have different shapes");
  }
}

// Calls fn(matrix_a, matrix_b) once per piece of the merged boundary grid.
template <typename Fn>
void for_each_common_piece(const PCSignal& a, const PCSignal& b, Fn&& fn) {
  std::size_t i = 0;
  std::size_t j = 0;
  while (true) {
    fn(a.piece(i).values, b.piece(j).values);
    const double na = a.piece_end(i);
    const double nb = b.piece_end(j);
    if (std::isinf(na) && std::isinf(nb)) {
      break;
    }
    if (na <= nb) {
      ++i;
    }
    if (nb <= na) {
      ++j;
    }
  }
}

} // namespace

double signal_distance(const PCSignal& a, const PCSignal& b) {
  require_same_shape(a, b);
  double d = 0.0;
  for_each_common_piece(a, b, [&](const ValueMatrix& x, const ValueMatrix& y) {
    const auto ex = x.entries();
    const auto ey = y.entries();
    for (std::size_t k = 0; k < ex.size(); ++k) {
      d = std::max(d, hausdorff(ex[k], ey[k]));
    }
  });
  return d;
}

bool contained_in(const PCSignal& fine, const PCSignal& coarse) {
  require_same_shape(fine, coarse);
  bool ok = true;
  for_each_common_piece(fine, coarse, [&](const ValueMatrix& f, const ValueMatrix& c) {
    const auto ef = f.entries();
    const auto ec = c.entries();
    for (std::size_t k = 0; k < ef.size() && ok; ++k) {
      ok = refines(ec[k], ef[k]);
    }
  });
  return ok;
}

bool is_refined_by(const PCSignal& coarse, const PCSignal& fine) {
  if (!contained_in(fine, coarse)) {
    return false;
  }
  bool strict = false;
  for_each_common_piece(fine, coarse, [&](const ValueMatrix& f, const ValueMatrix& c) {
    strict = strict || !(f == c);
  });
  return strict;
}

std::vector<Update> expand(const PCSignal& current, const SparseUpdate& u) {
  for (const auto& e : u.entries) {
    if (e.location >= current.num_locations() || e.dim >= current.num_dims()) {
      throw std::out_of_range("update entry (" + std::to_string(e.location) + "," +
                              std::to_string(e.dim) + ") outside the signal shape");
    }
  }
  std::vector<Update> out;
  for (auto& p : current.select(u.begin, u.end)) {
    ValueMatrix m = std::move(p.values);
    for (const auto& e : u.entries) {
      m(e.location, e.dim) = e.value;
    }
    out.emplace_back(p.start, u.end, std::move(m));
  }
  for (std::size_t k = 0; k + 1 < out.size(); ++k) {
    out[k].end = out[k + 1].begin;
  }
  return out;
}

} // namespace strel
