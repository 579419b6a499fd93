#include "strel/io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>

namespace strel {

InputError::InputError(const std::string& file, std::size_t line, const std::string& what)
    : std::runtime_error(file + ":" + std::to_string(line) + ": " + what), file_(file),
      line_(line) {}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(field));
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  out.push_back(std::move(field));
  for (auto& f : out) {
    const auto b = f.find_first_not_of(" \t");
    const auto e = f.find_last_not_of(" \t");
    f = b == std::string::npos ? std::string() : f.substr(b, e - b + 1);
  }
  return out;
}

namespace {

std::ifstream open_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError(path, 0, "cannot open file");
  }
  return in;
}

// Calls row(fields, line_no) for each non-empty line after the header.
template <class Fn>
void for_each_row(std::istream& in, const std::string& file, std::size_t columns, Fn&& row) {
  std::string line;
  std::size_t line_no = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    if (header) {
      header = false;
      continue;
    }
    auto fields = split_csv_line(line);
    if (fields.size() != columns) {
      throw InputError(file, line_no,
                       "expected " + std::to_string(columns) + " fields, got " +
                           std::to_string(fields.size()));
    }
    try {
      row(fields, line_no);
    } catch (const InputError&) {
      throw;
    } catch (const std::exception& e) {
      throw InputError(file, line_no, e.what());
    }
  }
  if (header) {
    throw InputError(file, line_no, "missing header row");
  }
}

std::size_t parse_index(const std::string& s, const char* what) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument(std::string("bad ") + what + " '" + s + "'");
  }
  return std::stoul(s);
}

} // namespace

std::vector<Location> read_locations(std::istream& in, const std::string& file) {
  std::vector<Location> out;
  for_each_row(in, file, 4, [&](const std::vector<std::string>& f, std::size_t) {
    out.push_back({parse_index(f[0], "location index"), f[1], parse_real(f[2]), parse_real(f[3])});
  });
  std::sort(out.begin(), out.end(),
            [](const Location& a, const Location& b) { return a.index < b.index; });
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].index != i) {
      throw InputError(file, 0, "location indices must be 0..n-1 without gaps or repeats");
    }
  }
  return out;
}

std::vector<Location> read_locations_file(const std::string& path) {
  auto in = open_file(path);
  return read_locations(in, path);
}

GraphSpec read_graph(std::istream& in, const std::vector<Location>& locations,
                     const std::string& file) {
  GraphSpec g;
  g.num_locations = locations.size();
  for_each_row(in, file, 3, [&](const std::vector<std::string>& f, std::size_t) {
    const std::size_t src = parse_index(f[0], "source location");
    const std::size_t dst = parse_index(f[1], "target location");
    double w = 0.0;
    if (f[2].empty()) {
      if (src >= locations.size() || dst >= locations.size()) {
        throw std::invalid_argument("blank weight needs coordinates for both locations");
      }
      w = haversine_km(locations[src].lat, locations[src].lon, locations[dst].lat,
                       locations[dst].lon);
    } else {
      w = parse_real(f[2]);
    }
    g.edges.push_back({src, dst, w});
    g.num_locations = std::max({g.num_locations, src + 1, dst + 1});
  });
  return g;
}

GraphSpec read_graph_file(const std::string& path, const std::vector<Location>& locations) {
  auto in = open_file(path);
  return read_graph(in, locations, path);
}

SpatialModel build_model(const GraphSpec& g, bool undirected) {
  return undirected ? SpatialModel::undirected(g.num_locations, g.edges)
                    : SpatialModel(g.num_locations, g.edges);
}

std::vector<SparseUpdate> read_updates(std::istream& in, const VariableTable& vars,
                                       const std::string& file) {
  std::vector<SparseUpdate> out;
  std::map<std::pair<double, double>, std::size_t> by_span;
  for_each_row(in, file, 6, [&](const std::vector<std::string>& f, std::size_t) {
    const double ta = parse_real(f[0]);
    const double tb = parse_real(f[1]);
    if (!(ta >= 0.0 && ta < tb && tb < kInf)) {
      throw std::invalid_argument("update span must satisfy 0 <= t_a < t_b < inf");
    }
    const std::size_t loc = parse_index(f[2], "location");
    std::size_t dim = 0;
    if (!f[3].empty() && f[3].find_first_not_of("0123456789") == std::string::npos) {
      dim = std::stoul(f[3]);
    } else if (auto d = vars.find(f[3])) {
      dim = *d;
    } else {
      throw std::invalid_argument("unknown dimension '" + f[3] + "'");
    }
    const Interval value(parse_real(f[4]), parse_real(f[5]));
    auto [it, fresh] = by_span.try_emplace({ta, tb}, out.size());
    if (fresh) {
      out.push_back({ta, tb, {}});
    }
    out[it->second].entries.push_back({loc, dim, value});
  });
  return out;
}

std::vector<SparseUpdate> read_updates_file(const std::string& path, const VariableTable& vars) {
  auto in = open_file(path);
  return read_updates(in, vars, path);
}

void write_updates(std::ostream& out, const std::vector<SparseUpdate>& updates) {
  out << "t_a,t_b,location,dim,lo,hi\n";
  for (const auto& u : updates) {
    for (const auto& e : u.entries) {
      out << format_real(u.begin) << ',' << format_real(u.end) << ',' << e.location << ','
          << e.dim << ',' << format_real(e.value.lo) << ',' << format_real(e.value.hi) << '\n';
    }
  }
}

PCSignal to_verdicts(const PCSignal& robustness) {
  std::vector<Piece> pieces;
  for (const auto& p : robustness.pieces()) {
    ValueMatrix m(p.values.rows(), p.values.cols());
    for (std::size_t i = 0; i < m.entries().size(); ++i) {
      m.entries()[i] = as_interval(classify(p.values.entries()[i]));
    }
    pieces.push_back({p.start, std::move(m)});
  }
  PCSignal out(robustness.num_locations(), robustness.num_dims(), std::move(pieces));
  out.canonicalize();
  return out;
}

void write_signal_csv(std::ostream& out, const PCSignal& s, Semantics sem) {
  out << (sem == Semantics::Robust ? "location,t,lo,hi\n" : "location,t,verdict\n");
  for (std::size_t l = 0; l < s.num_locations(); ++l) {
    const PCSignal row = s.restrict_to_location(l);
    for (const auto& p : row.pieces()) {
      const Interval& v = p.values(0, 0);
      out << l << ',' << format_real(p.start) << ',';
      if (sem == Semantics::Robust) {
        out << format_real(v.lo) << ',' << format_real(v.hi) << '\n';
      } else {
        out << static_cast<int>(classify(v)) << '\n';
      }
    }
  }
}

} // namespace strel
