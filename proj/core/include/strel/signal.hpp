#pragma once

#include "strel/interval.hpp"

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace strel {

/// Rectangular |L| x n matrix of intervals, row-major by location.
class ValueMatrix {
public:
  ValueMatrix() = default;
  ValueMatrix(std::size_t rows, std::size_t cols, Interval fill = Interval::unknown());

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Interval& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Interval& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  const Interval& at(std::size_t r, std::size_t c) const;

  std::span<const Interval> entries() const { return entries_; }
  std::span<Interval> entries() { return entries_; }
  std::span<const Interval> row(std::size_t r) const {
    return std::span<const Interval>(entries_).subspan(r * cols_, cols_);
  }

  bool same_shape(const ValueMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

  friend bool operator==(const ValueMatrix&, const ValueMatrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Interval> entries_;
};

/// Piece of a space-synchronized signal: values hold on [start, next start).
struct Piece {
  double start = 0.0;
  ValueMatrix values;

  friend bool operator==(const Piece&, const Piece&) = default;
};

/// New truthful information for [begin, end).
struct Update {
  double begin = 0.0;
  double end = 0.0;
  ValueMatrix values;

  Update() = default;
  Update(double b, double e, ValueMatrix v);

  friend bool operator==(const Update&, const Update&) = default;
};

/// Thrown when an update is not contained in the value it claims to refine.
class RefinementError : public std::runtime_error {
public:
  RefinementError(std::size_t location, std::size_t dim, double time, const Interval& current,
                  const Interval& proposed);

  std::size_t location() const { return location_; }
  std::size_t dim() const { return dim_; }
  double time() const { return time_; }

private:
  std::size_t location_;
  std::size_t dim_;
  double time_;
};

struct RefineReport {
  bool changed = false;
  double begin = 0.0;
  double end = 0.0;
};

/// Piecewise-constant imprecise spatio-temporal signal, space-synchronized:
/// every location shares the piece boundaries. The last piece extends to
/// +inf. Pieces are left-closed and kept canonical: the first starts at 0,
/// starts strictly increase and adjacent pieces hold different matrices.
class PCSignal {
public:
  PCSignal() = default;
  PCSignal(std::size_t num_locations, std::size_t num_dims, std::vector<Piece> pieces);

  /// Single piece at 0 with every entry [-inf, +inf].
  static PCSignal undefined(std::size_t num_locations, std::size_t num_dims);
  static PCSignal constant(const ValueMatrix& values);

  std::size_t num_locations() const { return num_locations_; }
  std::size_t num_dims() const { return num_dims_; }
  std::size_t size() const { return pieces_.size(); }
  std::span<const Piece> pieces() const { return pieces_; }
  const Piece& piece(std::size_t i) const { return pieces_[i]; }
  double piece_end(std::size_t i) const {
    return i + 1 < pieces_.size() ? pieces_[i + 1].start : kInf;
  }

  /// Index of the piece with start <= t < end.
  std::size_t piece_index_at(double t) const;
  const ValueMatrix& matrix_at(double t) const { return pieces_[piece_index_at(t)].values; }
  std::vector<Interval> value_at(std::size_t location, double t) const;

  /// Applies one update (Alg. refine). Throws RefinementError when the update
  /// is not entry-wise contained in the current value over [begin, end).
  RefineReport refine(const Update& u);

  /// Applies a contiguous run of updates (each begins where the previous
  /// ended) as one splice. Returns the updates that changed the signal.
  std::vector<Update> refine_run(std::span<const Update> run);

  /// Merges adjacent pieces holding equal matrices.
  void canonicalize();

  /// Pieces covering [t1, t2); the first start is clamped to t1.
  std::vector<Piece> select(double t1, double t2) const;

  /// Single-dimension view. Piece times are preserved.
  PCSignal project(std::size_t dim) const;

  /// The signal of one location, as a canonical 1 x n signal.
  PCSignal restrict_to_location(std::size_t location) const;

  friend bool operator==(const PCSignal&, const PCSignal&) = default;

private:
  void check_update(const Update& u) const;
  void splice(double begin, double end, std::vector<Piece> replacement);
  void merge_around(std::size_t first, std::size_t last);

  std::size_t num_locations_ = 0;
  std::size_t num_dims_ = 0;
  std::vector<Piece> pieces_;
};

/// Largest Hausdorff distance over locations, dimensions and time.
double signal_distance(const PCSignal& a, const PCSignal& b);

/// Entry-wise containment everywhere: fine is a refinement (or equal) of coarse.
bool contained_in(const PCSignal& fine, const PCSignal& coarse);

/// coarse > fine: contained everywhere and strictly somewhere.
bool is_refined_by(const PCSignal& coarse, const PCSignal& fine);

/// Union of piece starts of several same-span signals, sorted and unique.
std::vector<double> merged_boundaries(std::initializer_list<const PCSignal*> signals);

/// Per-entry update as read from the update file format: entries not listed
/// keep the current value of the signal they are applied to.
struct EntryValue {
  std::size_t location = 0;
  std::size_t dim = 0;
  Interval value;
  friend bool operator==(const EntryValue&, const EntryValue&) = default;
};

struct SparseUpdate {
  double begin = 0.0;
  double end = 0.0;
  std::vector<EntryValue> entries;
  friend bool operator==(const SparseUpdate&, const SparseUpdate&) = default;
};

/// Expands a sparse update against the current signal into full updates, one
/// per piece of the signal overlapping [begin, end).
std::vector<Update> expand(const PCSignal& current, const SparseUpdate& u);

} // namespace strel
