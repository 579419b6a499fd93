#pragma once

#include "strel/interval.hpp"
#include "strel/space.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace strel {

/// Bottom and top of the scalar lattice a kernel runs on: {-inf, +inf} for
/// robustness tracks, {-1, +1} for three-valued verdicts.
struct Lattice {
  double bottom = -kInf;
  double top = kInf;
};

inline constexpr Lattice kRobustLattice{-kInf, kInf};
inline constexpr Lattice kVerdictLattice{-1.0, 1.0};

/// For every location l:
///   max over routes tau from l and indices i with d_tau[i] <= bound of
///   min(right[tau[i]], min over j < i of left[tau[j]]).
void reach_scalar(const SpatialModel& model, double bound, std::span<const double> left,
                  std::span<const double> right, std::span<double> out, Lattice lat,
                  std::size_t threads = 1);

/// For every location l:
///   max over routes tau from l and indices i with d_S[l, tau[i]] >= bound of
///   min over j < i of values[tau[j]].
void escape_scalar(const SpatialModel& model, double bound, std::span<const double> values,
                   std::span<double> out, Lattice lat, std::size_t threads = 1);

/// Interval versions: the scalar kernels applied to the lower and the upper
/// endpoints separately.
std::vector<Interval> reach_field(const SpatialModel& model, double bound,
                                  std::span<const Interval> left, std::span<const Interval> right,
                                  Lattice lat, std::size_t threads = 1);
std::vector<Interval> escape_field(const SpatialModel& model, double bound,
                                   std::span<const Interval> values, Lattice lat,
                                   std::size_t threads = 1);

} // namespace strel
