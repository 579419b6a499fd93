#include "strel/spatial_kernels.hpp"

#include "strel/parallel.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace strel {

namespace {

struct Label {
  double dist;
  std::size_t node;
  double pm;  // min of `left` over the route strictly before `node`
};

// Pops shortest distance first and, among equal distances, the largest prefix min.
struct LabelOrder {
  bool operator()(const Label& x, const Label& y) const {
    if (x.dist != y.dist) {
      return x.dist > y.dist;
    }
    return x.pm < y.pm;
  }
};

double reach_one(const SpatialModel& model, double bound, std::span<const double> left,
                 std::span<const double> right, std::size_t src, Lattice lat) {
  std::vector<double> settled(model.size(), lat.bottom);
  std::vector<bool> seen(model.size(), false);
  std::priority_queue<Label, std::vector<Label>, LabelOrder> pq;
  double best = lat.bottom;
  pq.push({0.0, src, lat.top});
  while (!pq.empty()) {
    const Label l = pq.top();
    pq.pop();
    // An earlier label at this node was no farther and had a prefix min at least as large.
    if (seen[l.node] && l.pm <= settled[l.node]) {
      continue;
    }
    seen[l.node] = true;
    settled[l.node] = l.pm;
    best = std::max(best, std::min(l.pm, right[l.node]));
    if (l.pm <= best) {
      continue;
    }
    const double npm = std::min(l.pm, left[l.node]);
    if (npm <= best) {
      continue;
    }
    for (const auto& nb : model.neighbors(l.node)) {
      const double nd = l.dist + nb.weight;
      if (nd <= bound && (!seen[nb.location] || npm > settled[nb.location])) {
        pq.push({nd, nb.location, npm});
      }
    }
  }
  return best;
}

double escape_one(const SpatialModel& model, double bound, std::span<const double> values,
                  std::size_t src, Lattice lat) {
  const std::size_t n = model.size();
  // Widest path: best min of `values` over a route from src to p, both ends included.
  std::vector<double> width(n, lat.bottom);
  std::vector<bool> reached(n, false);
  std::vector<bool> done(n, false);
  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry> pq;
  width[src] = values[src];
  reached[src] = true;
  pq.push({width[src], src});
  double best = lat.bottom;
  while (!pq.empty()) {
    const auto [w, p] = pq.top();
    pq.pop();
    if (done[p]) {
      continue;
    }
    done[p] = true;
    for (const auto& nb : model.neighbors(p)) {
      const std::size_t q = nb.location;
      if (model.distance(src, q) >= bound) {
        best = std::max(best, w);
      }
      const double nw = std::min(w, values[q]);
      if (!reached[q] || nw > width[q]) {
        reached[q] = true;
        width[q] = nw;
        pq.push({nw, q});
      }
    }
  }
  return best;
}

void check_sizes(const SpatialModel& model, std::size_t a, std::size_t b) {
  if (a != model.size() || b != model.size()) {
    throw std::invalid_argument("spatial field size does not match the number of locations");
  }
}

std::vector<double> lows(std::span<const Interval> xs) {
  std::vector<double> out(xs.size());
  std::transform(xs.begin(), xs.end(), out.begin(), [](const Interval& i) { return i.lo; });
  return out;
}

std::vector<double> highs(std::span<const Interval> xs) {
  std::vector<double> out(xs.size());
  std::transform(xs.begin(), xs.end(), out.begin(), [](const Interval& i) { return i.hi; });
  return out;
}

std::vector<Interval> zip(const std::vector<double>& lo, const std::vector<double>& hi) {
  std::vector<Interval> out(lo.size());
  for (std::size_t i = 0; i < lo.size(); ++i) {
    out[i].lo = lo[i];
    out[i].hi = hi[i];
  }
  return out;
}

} // namespace

void reach_scalar(const SpatialModel& model, double bound, std::span<const double> left,
                  std::span<const double> right, std::span<double> out, Lattice lat,
                  std::size_t threads) {
  check_sizes(model, left.size(), right.size());
  check_sizes(model, out.size(), out.size());
  parallel_for(model.size(), threads,
               [&](std::size_t l) { out[l] = reach_one(model, bound, left, right, l, lat); });
}

void escape_scalar(const SpatialModel& model, double bound, std::span<const double> values,
                   std::span<double> out, Lattice lat, std::size_t threads) {
  check_sizes(model, values.size(), out.size());
  parallel_for(model.size(), threads,
               [&](std::size_t l) { out[l] = escape_one(model, bound, values, l, lat); });
}

std::vector<Interval> reach_field(const SpatialModel& model, double bound,
                                  std::span<const Interval> left, std::span<const Interval> right,
                                  Lattice lat, std::size_t threads) {
  check_sizes(model, left.size(), right.size());
  std::vector<double> lo(model.size());
  std::vector<double> hi(model.size());
  reach_scalar(model, bound, lows(left), lows(right), lo, lat, threads);
  reach_scalar(model, bound, highs(left), highs(right), hi, lat, threads);
  return zip(lo, hi);
}

std::vector<Interval> escape_field(const SpatialModel& model, double bound,
                                   std::span<const Interval> values, Lattice lat,
                                   std::size_t threads) {
  check_sizes(model, values.size(), values.size());
  std::vector<double> lo(model.size());
  std::vector<double> hi(model.size());
  escape_scalar(model, bound, lows(values), lo, lat, threads);
  escape_scalar(model, bound, highs(values), hi, lat, threads);
  return zip(lo, hi);
}

} // namespace strel
