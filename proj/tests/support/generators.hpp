#pragma once

#include "strel/formula.hpp"
#include "strel/signal.hpp"
#include "strel/space.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace strel::testing {

using Rng = std::mt19937_64;

/// Time lattice of the generated signals and windows. Quarter units are exact
/// in binary, so lattice arithmetic never rounds.
inline constexpr double kStep = 0.25;

std::size_t uniform_index(Rng& rng, std::size_t n);  // [0, n)
double pick(Rng& rng, const std::vector<double>& xs);
bool coin(Rng& rng, double p);

/// Endpoints from a small set of integers and halves; with probability
/// `inf_prob` an endpoint is replaced by the matching infinity.
Interval random_interval(Rng& rng, double inf_prob = 0.15);

/// 1..max_pieces pieces with starts on the lattice below `max_start`.
PCSignal random_signal(Rng& rng, std::size_t locations, std::size_t dims, std::size_t max_pieces,
                       double inf_prob = 0.15, double max_start = 4.0);

/// Random column signal with arbitrary (non-lattice) piece starts.
PCSignal random_column_signal_real(Rng& rng, std::size_t locations, std::size_t max_pieces,
                                   double inf_prob = 0.1);

/// Directed graph; each ordered pair is an edge with probability edge_prob,
/// weights from {0, 0.5, 1, 1.5, 2, 3}.
SpatialModel random_model(Rng& rng, std::size_t locations, double edge_prob);

struct FormulaGen {
  std::size_t dims = 2;
  bool temporal = true;
  bool unbounded_until = true;
  bool spatial = true;
  bool derived = true;
};

/// Random formula of depth at most `depth` (atoms and constants have depth 0).
Formula random_formula(Rng& rng, std::size_t depth, const FormulaGen& g);

/// Non-overlapping updates that together set `target` on [0, horizon), cut at
/// its piece boundaries and at random extra lattice points.
std::vector<Update> defining_updates(Rng& rng, const PCSignal& target, double horizon);

/// The signal those updates produce on an initially unknown signal.
PCSignal defined_prefix(const PCSignal& target, double horizon);

/// Same signal with every finite endpoint moved by at most delta (keeping
/// lo <= hi); infinite endpoints stay.
PCSignal perturb(Rng& rng, const PCSignal& s, double delta);

} // namespace strel::testing
