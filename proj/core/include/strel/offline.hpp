#pragma once

#include "strel/formula.hpp"
#include "strel/interval.hpp"
#include "strel/signal.hpp"
#include "strel/space.hpp"

#include <cstddef>
#include <vector>

namespace strel {

enum class Semantics { Boolean, Robust };

/// Three-valued verdict: -1 violated, 0 unknown, +1 satisfied.
enum class Verdict3 : int { False = -1, Unknown = 0, True = 1 };

/// Sign of a robustness interval: +1 if it lies above 0, -1 if below, else 0.
Verdict3 classify(const Interval& rho);
Interval as_interval(Verdict3 v);
Verdict3 negate(Verdict3 v);

/// Atomic predicate value of one signal entry.
Interval atom_robust(const Interval& value, Cmp cmp, double c);
Verdict3 atom_verdict(const Interval& value, Cmp cmp, double c);

struct EvalOptions {
  /// Workers for the per-location spatial kernels (1 = sequential).
  std::size_t threads = 1;
};

/// Robustness of f over a complete signal: an |L| x 1 signal of intervals.
PCSignal robust_eval(const PCSignal& s, const SpatialModel& m, const Formula& f,
                     EvalOptions opts = {});

/// Three-valued satisfaction of f: an |L| x 1 signal whose entries are the
/// point intervals [-1,-1], [0,0] or [1,1].
PCSignal boolean_eval(const PCSignal& s, const SpatialModel& m, const Formula& f,
                      EvalOptions opts = {});

/// Signals of every entry of the subformula table of f, indexed like the table.
/// The formula is used as given; it must be normalized (Globally allowed).
std::vector<PCSignal> evaluate_table(const PCSignal& s, const SpatialModel& m,
                                     const SubformulaTable& table, Semantics sem,
                                     EvalOptions opts = {});

Verdict3 verdict_at(const PCSignal& verdicts, std::size_t location, double t);

} // namespace strel
