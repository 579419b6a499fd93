#pragma once

#include "strel/formula.hpp"
#include "strel/offline.hpp"
#include "strel/signal.hpp"
#include "strel/space.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace strel {

/// Malformed input file; the message names the file and line.
class InputError : public std::runtime_error {
public:
  InputError(const std::string& file, std::size_t line, const std::string& what);

  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }

private:
  std::string file_;
  std::size_t line_;
};

struct Location {
  std::size_t index = 0;
  std::string name;
  double lat = 0.0;
  double lon = 0.0;
};

/// `index,name,lat,lon` with a header row.
std::vector<Location> read_locations(std::istream& in, const std::string& file = "<locations>");
std::vector<Location> read_locations_file(const std::string& path);

struct GraphSpec {
  std::size_t num_locations = 0;
  std::vector<WeightedEdge> edges;
};

/// `src,dst,weight` with a header row. A blank weight is filled with the
/// great-circle distance in km between the two locations, which then must be
/// given. The location count is the larger of the highest index seen + 1 and
/// the number of locations.
GraphSpec read_graph(std::istream& in, const std::vector<Location>& locations = {},
                     const std::string& file = "<graph>");
GraphSpec read_graph_file(const std::string& path, const std::vector<Location>& locations = {});

SpatialModel build_model(const GraphSpec& g, bool undirected);

/// `t_a,t_b,location,dim,lo,hi` with a header row. Rows with equal (t_a, t_b)
/// form one update, in order of first appearance. `dim` is an index or a
/// variable name.
std::vector<SparseUpdate> read_updates(std::istream& in, const VariableTable& vars = {},
                                       const std::string& file = "<signal>");
std::vector<SparseUpdate> read_updates_file(const std::string& path,
                                            const VariableTable& vars = {});

void write_updates(std::ostream& out, const std::vector<SparseUpdate>& updates);

/// Writes `location,t,lo,hi` (robust) or `location,t,verdict` (boolean) rows,
/// one per canonical piece of each location of an |L| x 1 signal.
void write_signal_csv(std::ostream& out, const PCSignal& s, Semantics sem);

/// Boolean view of a robustness signal: each entry becomes its verdict.
PCSignal to_verdicts(const PCSignal& robustness);

std::vector<std::string> split_csv_line(const std::string& line);

} // namespace strel
