#include "strel/cli/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

namespace strel::cli {

namespace {

constexpr double kKmPerDegLat = 111.195;

Location offset_station(std::size_t index, std::string name, double lat0, double lon0,
                        double north_km, double east_km) {
  const double lat = lat0 + north_km / kKmPerDegLat;
  const double lon = lon0 + east_km / (kKmPerDegLat * std::cos(lat0 * std::numbers::pi / 180.0));
  return {index, std::move(name), lat, lon};
}

bool in_spans(double t, const std::vector<double>& spans) {
  for (std::size_t i = 0; i + 1 < spans.size(); i += 2) {
    if (t >= spans[i] && t < spans[i + 1]) {
      return true;
    }
  }
  return false;
}

void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p);
  if (!out) {
    throw std::runtime_error("cannot write " + p.string());
  }
  out << text;
}

} // namespace

Fixture make_rezzato(std::uint64_t seed) {
  Fixture f;
  f.name = "rezzato";
  const double lat0 = 45.5148;
  const double lon0 = 10.3353;
  f.locations = {
      {0, "Rezzato", lat0, lon0},
      offset_station(1, "station-N6", lat0, lon0, 6.0, 0.0),
      offset_station(2, "station-S8", lat0, lon0, -8.0, 0.0),
      offset_station(3, "station-E25", lat0, lon0, 0.0, 25.0),
      offset_station(4, "station-W31", lat0, lon0, 15.0, -27.0),
      offset_station(5, "station-SE18", lat0, lon0, -12.0, 13.0),
  };
  const std::size_t L = f.locations.size();
  f.graph.num_locations = L;
  for (std::size_t i = 0; i < L; ++i) {
    for (std::size_t j = 0; j < L; ++j) {
      if (i != j) {
        const auto& a = f.locations[i];
        const auto& b = f.locations[j];
        f.graph.edges.push_back({i, j, haversine_km(a.lat, a.lon, b.lat, b.lon)});
      }
    }
  }
  f.undirected = false;
  f.vars = "NO2:0";

  const std::size_t hours = 240;
  const std::vector<double> long_gaps{30, 34, 90, 96, 170, 178};
  const std::vector<double> short_gaps{60, 61, 120, 122, 200, 202};
  const std::vector<double> uncovered{170, 178};
  f.facts["long_gaps"] = long_gaps;
  f.facts["short_gaps"] = short_gaps;
  f.facts["uncovered_gap"] = uncovered;
  f.facts["horizon"] = {static_cast<double>(hours)};

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 8.0);
  for (std::size_t h = 0; h < hours; ++h) {
    const double t = static_cast<double>(h);
    SparseUpdate u{t, t + 1.0, {}};
    for (std::size_t l = 0; l < L; ++l) {
      const double daily = 70.0 + 40.0 * std::sin(2.0 * std::numbers::pi * (t - 7.0) / 24.0);
      const double v = std::clamp(daily + 10.0 * static_cast<double>(l) + noise(rng), 5.0, 350.0);
      const bool missing = (l == 0 && (in_spans(t, long_gaps) || in_spans(t, short_gaps))) ||
                           ((l == 1 || l == 2) && in_spans(t, uncovered));
      if (!missing) {
        u.entries.push_back({l, 0, Interval(v - 2.0, v + 2.0)});
      }
    }
    f.updates.push_back(std::move(u));
  }

  f.formulas["property1"] = "F[0,3] NO2 < 400";
  f.formulas["property2"] = "somewhere[<=10] NO2 < 400";
  f.readme = R"(# rezzato fixture

Hourly NO2 readings (ug/m3) over 240 hours at six air-quality stations.
Coordinates are synthetic, placed around Rezzato (location 0):

| index | station      | distance from Rezzato |
|-------|--------------|-----------------------|
| 0     | Rezzato      | 0 km                  |
| 1     | station-N6   | 6 km                  |
| 2     | station-S8   | 8 km                  |
| 3     | station-E25  | 25 km                 |
| 4     | station-W31  | about 31 km           |
| 5     | station-SE18 | about 18 km           |

`graph.csv` is the complete directed graph; weights are great-circle
distances in km (haversine over `locations.csv`).

Each present sample is the interval [v-2, v+2] on [h, h+1). Missing samples
have no update row and stay [-inf, inf].

Rezzato misses samples on [30,34), [90,96) and [170,178) (4, 6 and 8 hours)
and on [60,61), [120,122) and [200,202) (1, 2 and 2 hours). Stations 1 and 2,
the only ones within 10 km, also miss [170,178).

Properties:

- `property1.strel`: `F[0,3] NO2 < 400`. Its lower bound is -inf exactly where
  a whole [t, t+3] window is missing, which only the three long gaps allow.
- `property2.strel`: `somewhere[<=10] NO2 < 400`. A station within 10 km
  covers the first two long gaps; only [170,178) stays a potential violation.

The signal ends at hour 240; every property is unknown from there on.
)";
  return f;
}

Fixture make_afc_like(std::size_t samples, std::uint64_t seed) {
  Fixture f;
  f.name = "afc-like";
  f.graph.num_locations = 1;
  f.vars = "dAF:0";
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 0.02);
  std::uniform_real_distribution<double> gap(8.0, 15.0);
  std::uniform_real_distribution<double> height(0.3, 0.6);
  double next_spike = gap(rng);
  double spike_at = -kInf;
  double spike_height = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const double t = static_cast<double>(k) / 10.0;
    if (t >= next_spike) {
      spike_at = t;
      spike_height = height(rng);
      next_spike = t + gap(rng);
    }
    // Deviation from the reference ratio: small noise plus decaying disturbances.
    double d = std::fabs(noise(rng));
    if (t >= spike_at) {
      d += spike_height * std::exp(-(t - spike_at) / 0.2);
    }
    const double lo = std::max(0.0, d - 0.005);
    f.updates.push_back({t, static_cast<double>(k + 1) / 10.0, {{0, 0, Interval(lo, d + 0.005)}}});
  }
  f.formulas["afc"] = "G[10,30] (dAF > 0.1 -> F[0,1] dAF < 0.1)";
  f.readme = R"(# afc-like fixture

Synthetic air-fuel ratio controller trace at one location. The single
dimension `dAF` holds |AF - AFref|, precomputed because atoms compare one
dimension with a constant. Samples are taken every 0.1 s; sample k covers
[k/10, (k+1)/10) with the interval [d - 0.005, d + 0.005] (lower end clamped
at 0).

Most of the time the deviation is small noise (|N(0, 0.02)|). Every 8 to 15
seconds a disturbance of height 0.3 to 0.6 appears and decays with a 0.2 s
time constant, so the controller settles within 1 s.

Property `afc.strel`: `G[10,30] (dAF > 0.1 -> F[0,1] dAF < 0.1)`, i.e. between
10 and 30 seconds from now, every deviation above 0.1 returns below 0.1
within one second.
)";
  return f;
}

Fixture make_zigbee(std::size_t nodes, std::size_t samples, std::uint64_t seed) {
  if (nodes == 0) {
    throw std::invalid_argument("zigbee fixture needs at least one node");
  }
  Fixture f;
  f.name = "zigbee";
  f.undirected = true;
  f.vars = "XH:0,role:1";
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<std::pair<double, double>> pos(nodes);
  for (auto& p : pos) {
    p = {unit(rng), unit(rng)};
  }
  auto dist2 = [&](std::size_t i, std::size_t j) {
    const double dx = pos[i].first - pos[j].first;
    const double dy = pos[i].second - pos[j].second;
    return dx * dx + dy * dy;
  };
  const double n = static_cast<double>(nodes);
  const double radius = std::sqrt(1.5 * std::log(std::max(n, 2.0)) / (std::numbers::pi * n));

  // Union-find keeps track of connectivity while adding edges.
  std::vector<std::size_t> parent(nodes);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      x = parent[x] = parent[parent[x]];
    }
    return x;
  };
  f.graph.num_locations = nodes;
  for (std::size_t i = 0; i < nodes; ++i) {
    for (std::size_t j = i + 1; j < nodes; ++j) {
      if (dist2(i, j) <= radius * radius) {
        f.graph.edges.push_back({i, j, 1.0});
        parent[find(i)] = find(j);
      }
    }
  }
  // Join the remaining components through their closest pair of nodes.
  for (;;) {
    const std::size_t root = find(0);
    double best = kInf;
    std::pair<std::size_t, std::size_t> link{0, 0};
    for (std::size_t i = 0; i < nodes; ++i) {
      if (find(i) != root) {
        continue;
      }
      for (std::size_t j = 0; j < nodes; ++j) {
        if (find(j) != root && dist2(i, j) < best) {
          best = dist2(i, j);
          link = {i, j};
        }
      }
    }
    if (best == kInf) {
      break;
    }
    f.graph.edges.push_back({link.first, link.second, 1.0});
    parent[find(link.second)] = root;
  }

  std::vector<std::size_t> order(nodes);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  const std::size_t coordinators = (nodes + 19) / 20;
  const std::size_t routers = std::min(nodes - coordinators, (nodes * 3) / 10);
  std::vector<double> role(nodes, 2.0);
  for (std::size_t i = 0; i < coordinators; ++i) {
    role[order[i]] = 0.0;
  }
  for (std::size_t i = coordinators; i < coordinators + routers; ++i) {
    role[order[i]] = 1.0;
  }

  std::normal_distribution<double> eps(0.0, 6.0);
  for (std::size_t k = 0; k < samples; ++k) {
    const double t = static_cast<double>(k);
    SparseUpdate u{t, t + 1.0, {}};
    for (std::size_t l = 0; l < nodes; ++l) {
      const double h = 50.0 + eps(rng);
      u.entries.push_back({l, 0, Interval(h - 0.5, h + 0.5)});
      u.entries.push_back({l, 1, Interval::point(role[l])});
    }
    f.updates.push_back(std::move(u));
  }
  f.facts["roles"] = role;

  f.formulas["phi1"] = "(XH > 60) -> F[0,5] (XH < 30)";
  f.formulas["phi2"] = "everywhere[<=100] somewhere[<=10] (role > -0.5 & role < 0.5)";
  f.readme = R"(# zigbee fixture

Sensor network of N devices placed uniformly in the unit square. Devices
closer than sqrt(1.5 ln N / (pi N)) are linked; leftover components are
joined through their closest pair, so the graph is connected. Every edge
has weight 1 (one hop) and is listed once in `graph.csv`; load it as
undirected.

Dimensions:

- `XH` (index 0): humidity 50 + e(t) with e(t) white noise N(0, 6), reported
  as [h - 0.5, h + 0.5] on [k, k+1) for sample k.
- `role` (index 1): 0 coordinator, 1 router, 2 sensor, as a point interval.
  ceil(N/20) devices are coordinators and 30% are routers.

The formula language has no equality atom, so "role is coordinator" is
written `role > -0.5 & role < 0.5`.

Properties:

- `phi1.strel`: `(XH > 60) -> F[0,5] (XH < 30)`.
- `phi2.strel`: `everywhere[<=100] somewhere[<=10] (role > -0.5 & role < 0.5)`,
  every device within 100 hops has a coordinator within 10 hops.
)";
  return f;
}

void write_fixture(const Fixture& f, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "graph.csv");
    out << "src,dst,weight\n";
    for (const auto& e : f.graph.edges) {
      out << e.from << ',' << e.to << ',';
      // Edges between stations with coordinates are recomputed on load.
      if (f.locations.empty()) {
        out << format_real(e.weight);
      }
      out << '\n';
    }
  }
  if (!f.locations.empty()) {
    std::ofstream out(dir / "locations.csv");
    out << "index,name,lat,lon\n";
    for (const auto& l : f.locations) {
      out << l.index << ',' << l.name << ',' << format_real(l.lat) << ',' << format_real(l.lon)
          << '\n';
    }
  }
  {
    std::ofstream out(dir / "signal.csv");
    write_updates(out, f.updates);
  }
  write_text(dir / "vars.txt", f.vars + "\n");
  for (const auto& [name, text] : f.formulas) {
    write_text(dir / (name + ".strel"), text + "\n");
  }
  write_text(dir / "README.md", f.readme);
}

} // namespace strel::cli
