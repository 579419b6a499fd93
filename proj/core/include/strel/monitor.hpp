#pragma once

#include "strel/formula.hpp"
#include "strel/signal.hpp"
#include "strel/space.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace strel {

struct MonitorOptions {
  /// Workers for the per-location spatial kernels (1 = sequential).
  std::size_t threads = 1;
};

/// Online robustness monitor over an imprecise signal that becomes known
/// through refining updates, possibly out of order.
///
/// Memory keeps one |L| x 1 robustness signal per distinct subformula. Every
/// entry always equals the operator applied to the current memory of its
/// children, so after the input is fully known the root memory equals the
/// offline robustness.
class Monitor {
public:
  Monitor(SpatialModel model, const Formula& f, std::size_t num_locations, std::size_t num_dims,
          MonitorOptions opts = {});

  /// Refines the input and propagates. Returns the root updates that changed
  /// the root memory. Throws RefinementError for an update that is not
  /// contained in the current input.
  std::vector<Update> apply(const Update& u);
  std::vector<Update> apply(const SparseUpdate& u);

  const PCSignal& input() const { return input_; }
  const PCSignal& robustness() const { return memory_.back(); }
  const PCSignal& memory(std::size_t i) const { return memory_[i]; }
  PCSignal snapshot(std::size_t location) const { return robustness().restrict_to_location(location); }

  const SubformulaTable& table() const { return table_; }
  const Formula& formula() const { return formula_; }
  const SpatialModel& model() const { return model_; }

private:
  std::vector<Update> propagate(std::vector<Update> input_changes);
  std::vector<Update> recompute(std::size_t node, std::span<const Update> input_changes,
                                const std::vector<std::vector<Update>>& changes);
  std::vector<Update> recompute_unbounded_until(std::size_t node,
                                                const std::vector<std::vector<Update>>& changes);
  std::vector<Update> evaluate_span(std::size_t node, double begin, double end) const;
  std::vector<Update> bounded_until_span(std::size_t node, double begin, double end) const;

  SpatialModel model_;
  Formula formula_;
  SubformulaTable table_;
  MonitorOptions opts_;
  PCSignal input_;
  std::vector<PCSignal> memory_;
};

} // namespace strel
