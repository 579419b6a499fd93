#include "strel/space.hpp"

#include "strel/interval.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <string>

namespace strel {

SpatialModel::SpatialModel(std::size_t num_locations) : SpatialModel(num_locations, {}) {}

SpatialModel::SpatialModel(std::size_t num_locations, std::span<const WeightedEdge> edges)
    : adjacency_(num_locations) {
  if (num_locations == 0) {
    throw std::invalid_argument("spatial model needs at least one location");
  }
  for (const auto& e : edges) {
    if (e.from >= num_locations || e.to >= num_locations) {
      throw std::out_of_range("edge " + std::to_string(e.from) + "->" + std::to_string(e.to) +
                              " references an unknown location");
    }
    if (e.from == e.to) {
      throw std::invalid_argument("self-loop on location " + std::to_string(e.from));
    }
    if (!(e.weight >= 0.0)) {
      throw std::invalid_argument("edge weights must be non-negative");
    }
    auto& out = adjacency_[e.from];
    const bool duplicate = std::any_of(out.begin(), out.end(),
                                       [&](const Neighbor& n) { return n.location == e.to; });
    if (duplicate) {
      throw std::invalid_argument("duplicate edge " + std::to_string(e.from) + "->" +
                                  std::to_string(e.to));
    }
    out.push_back({e.to, e.weight});
    ++num_edges_;
  }
  compute_distances();
}

SpatialModel SpatialModel::undirected(std::size_t num_locations,
                                      std::span<const WeightedEdge> edges) {
  std::vector<WeightedEdge> both;
  both.reserve(edges.size() * 2);
  for (const auto& e : edges) {
    both.push_back(e);
    both.push_back({e.to, e.from, e.weight});
  }
  return SpatialModel(num_locations, both);
}

std::span<const Neighbor> SpatialModel::neighbors(std::size_t location) const {
  if (location >= size()) {
    throw std::out_of_range("location out of range");
  }
  return adjacency_[location];
}

const double* SpatialModel::edge_weight(std::size_t from, std::size_t to) const {
  for (const auto& n : neighbors(from)) {
    if (n.location == to) {
      return &n.weight;
    }
  }
  return nullptr;
}

void SpatialModel::compute_distances() {
  const std::size_t n = size();
  distances_.assign(n * n, kInf);
  using Entry = std::pair<double, std::size_t>;
  for (std::size_t src = 0; src < n; ++src) {
    double* dist = distances_.data() + src * n;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
    dist[src] = 0.0;
    pq.push({0.0, src});
    while (!pq.empty()) {
      const auto [d, v] = pq.top();
      pq.pop();
      if (d > dist[v]) {
        continue;
      }
      for (const auto& nb : adjacency_[v]) {
        const double nd = d + nb.weight;
        if (nd < dist[nb.location]) {
          dist[nb.location] = nd;
          pq.push({nd, nb.location});
        }
      }
    }
  }
}

double route_distance(const SpatialModel& model, const Route& route, std::size_t i) {
  if (route.empty() || i >= route.size()) {
    throw std::out_of_range("route index out of range");
  }
  double total = 0.0;
  for (std::size_t k = 0; k < i; ++k) {
    const double* w = model.edge_weight(route[k], route[k + 1]);
    if (w == nullptr) {
      throw std::invalid_argument("route step " + std::to_string(route[k]) + "->" +
                                  std::to_string(route[k + 1]) + " is not an edge");
    }
    total += *w;
  }
  return total;
}

std::vector<double> pairwise_distances(const SpatialModel& model) {
  return {model.distances().begin(), model.distances().end()};
}

namespace {

void extend_routes(const SpatialModel& model, Route& current, double dist, double max_dist,
                   std::size_t max_visits, std::vector<std::size_t>& visits,
                   std::vector<Route>& out) {
  out.push_back(current);
  for (const auto& nb : model.neighbors(current.back())) {
    const double nd = dist + nb.weight;
    if (nd > max_dist || visits[nb.location] >= max_visits) {
      continue;
    }
    ++visits[nb.location];
    current.push_back(nb.location);
    extend_routes(model, current, nd, max_dist, max_visits, visits, out);
    current.pop_back();
    --visits[nb.location];
  }
}

} // namespace

std::vector<Route> enumerate_prefix_routes(const SpatialModel& model, std::size_t start,
                                           double max_dist, std::size_t max_visits) {
  if (start >= model.size()) {
    throw std::out_of_range("location out of range");
  }
  if (max_visits == 0) {
    throw std::invalid_argument("max_visits must be at least 1");
  }
  std::vector<Route> out;
  if (max_dist < 0.0) {
    return out;
  }
  std::vector<std::size_t> visits(model.size(), 0);
  visits[start] = 1;
  Route current{start};
  extend_routes(model, current, 0.0, max_dist, max_visits, visits, out);
  return out;
}

double haversine_km(double lat1, double lon1, double lat2, double lon2) {
  constexpr double kEarthRadiusKm = 6371.0088;
  constexpr double kDeg = 3.14159265358979323846 / 180.0;
  const double dlat = (lat2 - lat1) * kDeg;
  const double dlon = (lon2 - lon1) * kDeg;
  const double a = std::sin(dlat / 2) * std::sin(dlat / 2) +
                   std::cos(lat1 * kDeg) * std::cos(lat2 * kDeg) * std::sin(dlon / 2) *
                       std::sin(dlon / 2);
  return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(a)));
}

} // namespace strel
