#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace strel {

struct WeightedEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  double weight = 0.0;
};

struct Neighbor {
  std::size_t location = 0;
  double weight = 0.0;
};

using Route = std::vector<std::size_t>;

/// Static weighted spatial model: locations 0..size()-1 and directed,
/// non-negatively weighted proximity edges (at most one per ordered pair).
/// The all-pairs minimal route distance matrix is computed on construction.
class SpatialModel {
public:
  SpatialModel() = default;
  explicit SpatialModel(std::size_t num_locations);
  SpatialModel(std::size_t num_locations, std::span<const WeightedEdge> edges);

  /// Every edge is added in both directions.
  static SpatialModel undirected(std::size_t num_locations, std::span<const WeightedEdge> edges);

  std::size_t size() const { return adjacency_.size(); }
  std::size_t num_edges() const { return num_edges_; }

  std::span<const Neighbor> neighbors(std::size_t location) const;

  /// Minimal route distance (d_S); +inf when unreachable.
  double distance(std::size_t from, std::size_t to) const {
    return distances_[from * size() + to];
  }
  /// Row-major |L| x |L| matrix of minimal route distances.
  std::span<const double> distances() const { return distances_; }

  /// Weight of the edge from -> to, if present.
  const double* edge_weight(std::size_t from, std::size_t to) const;

private:
  void compute_distances();

  std::vector<std::vector<Neighbor>> adjacency_;
  std::size_t num_edges_ = 0;
  std::vector<double> distances_;
};

/// Sum of the weights of the first i edges of the route. Throws if the route
/// uses a pair that is not an edge of the model.
double route_distance(const SpatialModel& model, const Route& route, std::size_t i);

/// Minimal route distances between every pair of locations (row-major).
std::vector<double> pairwise_distances(const SpatialModel& model);

/// Brute-force enumeration of the routes starting at `start` whose cumulative
/// distance stays <= max_dist and that visit no location more than
/// `max_visits` times. Exponential; meant for checking the spatial kernels.
std::vector<Route> enumerate_prefix_routes(const SpatialModel& model, std::size_t start,
                                           double max_dist, std::size_t max_visits = 1);

/// Great-circle distance in km between two (lat, lon) points in degrees.
double haversine_km(double lat1, double lon1, double lat2, double lon2);

} // namespace strel
