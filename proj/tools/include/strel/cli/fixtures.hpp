#pragma once

#include "strel/formula.hpp"
#include "strel/io.hpp"
#include "strel/signal.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace strel::cli {

/// Generated input set: graph, optional station coordinates, update stream,
/// variable table and named properties.
struct Fixture {
  std::string name;
  std::vector<Location> locations;
  GraphSpec graph;
  bool undirected = false;
  std::string vars;
  std::vector<SparseUpdate> updates;
  std::map<std::string, std::string> formulas;
  std::string readme;
  // Fixture-specific facts the generator guarantees, such as gap positions.
  std::map<std::string, std::vector<double>> facts;
};

/// Hourly NO2 at air-quality stations around Rezzato (location 0), with
/// missing samples. Complete graph weighted by great-circle distance in km.
Fixture make_rezzato(std::uint64_t seed = 1);

/// Single-location stream of |AF - AFref| sampled every 0.1 s.
Fixture make_afc_like(std::size_t samples = 500, std::uint64_t seed = 1);

/// Sensor network of `nodes` devices on a connected unit-weight graph, with
/// a humidity dimension and a numeric role (0 coordinator, 1 router, 2 sensor).
Fixture make_zigbee(std::size_t nodes = 10, std::size_t samples = 100, std::uint64_t seed = 7);

/// Writes graph.csv, signal.csv, vars.txt, one <property>.strel per formula,
/// locations.csv when coordinates exist, and README.md.
void write_fixture(const Fixture& f, const std::filesystem::path& dir);

} // namespace strel::cli
