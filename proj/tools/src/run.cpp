#include "strel/cli/run.hpp"

#include "strel/io.hpp"
#include "strel/monitor.hpp"
#include "strel/parallel.hpp"
#include "strel/parser.hpp"

#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

namespace strel::cli {

namespace {

std::string read_all(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open formula file " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json json_real(double v) {
  if (std::isinf(v)) {
    return v > 0 ? "inf" : "-inf";
  }
  return v;
}

std::string span_text(double b, double e) {
  return "[" + format_real(b) + "," + format_real(e) + ")";
}

const char* mode_name(Mode m) {
  switch (m) {
  case Mode::Offline: return "offline";
  case Mode::Online: return "online";
  case Mode::OnlineShuffled: return "online-shuffled";
  }
  return "";
}

} // namespace

RunResult execute(const RunConfig& cfg) {
  VariableTable vars;
  try {
    vars = VariableTable::parse(cfg.vars);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("--vars: ") + e.what());
  }
  if (cfg.formula.empty() == cfg.formula_file.empty()) {
    throw ConfigError("give exactly one of --formula and --formula-file");
  }
  if (cfg.signal_file.empty()) {
    throw ConfigError("--signal is required");
  }
  if (cfg.mode == Mode::OnlineShuffled && !cfg.seed) {
    throw ConfigError("online-shuffled mode needs --seed");
  }
  const Formula formula =
      parse_formula(cfg.formula.empty() ? read_all(cfg.formula_file) : cfg.formula, vars);

  std::vector<Location> locations;
  if (!cfg.locations_file.empty()) {
    locations = read_locations_file(cfg.locations_file);
  }
  GraphSpec graph;
  if (!cfg.graph_file.empty()) {
    graph = read_graph_file(cfg.graph_file, locations);
  } else {
    graph.num_locations = locations.size();
  }
  const auto updates = read_updates_file(cfg.signal_file, vars);

  std::size_t dims = vars.num_dims();
  std::size_t max_loc = 0;
  for (const auto& u : updates) {
    for (const auto& e : u.entries) {
      dims = std::max(dims, e.dim + 1);
      max_loc = std::max(max_loc, e.location + 1);
    }
  }
  if (graph.num_locations == 0) {
    graph.num_locations = std::max<std::size_t>(max_loc, 1);
  }
  if (max_loc > graph.num_locations) {
    throw ConfigError("signal refers to location " + std::to_string(max_loc - 1) +
                      " but the spatial model has " + std::to_string(graph.num_locations));
  }
  if (dims == 0) {
    throw ConfigError("no signal dimensions: give --vars or a non-empty signal");
  }
  SpatialModel model;
  try {
    model = build_model(graph, cfg.undirected);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("graph: ") + e.what());
  }
  const std::size_t L = model.size();
  const std::size_t threads = cfg.parallel ? worker_count() : 1;

  RunResult result;
  if (cfg.mode == Mode::Offline) {
    const auto t0 = std::chrono::steady_clock::now();
    PCSignal s = PCSignal::undefined(L, dims);
    for (const auto& u : updates) {
      s.refine_run(expand(s, u));
    }
    result.output = cfg.semantics == Semantics::Robust
                        ? robust_eval(s, model, formula, {.threads = threads})
                        : boolean_eval(s, model, formula, {.threads = threads});
    result.total_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    return result;
  }

  std::vector<std::size_t> order(updates.size());
  std::iota(order.begin(), order.end(), 0);
  if (cfg.mode == Mode::OnlineShuffled) {
    std::mt19937_64 rng(*cfg.seed);
    std::shuffle(order.begin(), order.end(), rng);
  }
  Monitor monitor(std::move(model), formula, L, dims, {.threads = threads});
  result.trace.reserve(order.size());
  for (std::size_t idx : order) {
    const auto& u = updates[idx];
    const auto t0 = std::chrono::steady_clock::now();
    const auto emitted = monitor.apply(u);
    const auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    TraceRow row{idx, u.begin, u.end, {}, ns};
    for (const auto& e : emitted) {
      row.emitted.emplace_back(e.begin, e.end);
    }
    result.total_ns += ns;
    result.trace.push_back(std::move(row));
  }
  result.output = cfg.semantics == Semantics::Robust ? monitor.robustness()
                                                      : to_verdicts(monitor.robustness());
  return result;
}

void write_signal_json(std::ostream& out, const PCSignal& s, Semantics sem) {
  nlohmann::json doc;
  doc["semantics"] = sem == Semantics::Robust ? "robust" : "boolean";
  doc["locations"] = nlohmann::json::array();
  for (std::size_t l = 0; l < s.num_locations(); ++l) {
    nlohmann::json pieces = nlohmann::json::array();
    const PCSignal row_signal = s.restrict_to_location(l);
    for (const auto& p : row_signal.pieces()) {
      const Interval& v = p.values(0, 0);
      nlohmann::json row{{"t", json_real(p.start)}};
      if (sem == Semantics::Robust) {
        row["lo"] = json_real(v.lo);
        row["hi"] = json_real(v.hi);
      } else {
        row["verdict"] = static_cast<int>(classify(v));
      }
      pieces.push_back(std::move(row));
    }
    doc["locations"].push_back({{"location", l}, {"pieces", std::move(pieces)}});
  }
  out << doc.dump(2) << '\n';
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace) {
  out << "update_index,applied_span,emitted_spans,elapsed_ns\n";
  for (const auto& r : trace) {
    std::string emitted;
    for (const auto& [b, e] : r.emitted) {
      if (!emitted.empty()) {
        emitted += ';';
      }
      emitted += span_text(b, e);
    }
    out << r.update_index << ",\"" << span_text(r.begin, r.end) << "\",\"" << emitted << "\","
        << r.elapsed_ns << '\n';
  }
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  RunResult result;
  try {
    result = execute(cfg);
  } catch (const ParseError& e) {
    err << "error: formula: " << e.what() << '\n';
    return kParseError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const RefinementError& e) {
    err << "error: " << e.what() << '\n';
    return kRefinementViolation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  auto write_signal = [&](std::ostream& os) {
    if (cfg.format == Format::Json) {
      write_signal_json(os, result.output, cfg.semantics);
    } else {
      write_signal_csv(os, result.output, cfg.semantics);
    }
  };
  if (cfg.out.empty()) {
    write_signal(out);
    return kOk;
  }
  std::ofstream file(cfg.out);
  if (!file) {
    err << "error: cannot write " << cfg.out << '\n';
    return kConfigError;
  }
  write_signal(file);
  if (cfg.mode != Mode::Offline) {
    std::ofstream trace(cfg.out + ".trace.csv");
    write_trace_csv(trace, result.trace);
    nlohmann::json summary{
        {"mode", mode_name(cfg.mode)},
        {"updates", result.trace.size()},
        {"total_ns", result.total_ns},
        {"mean_ns", result.trace.empty() ? 0.0
                                         : static_cast<double>(result.total_ns) /
                                               static_cast<double>(result.trace.size())},
    };
    std::ofstream(cfg.out + ".summary.json") << summary.dump(2) << '\n';
  }
  return kOk;
}

} // namespace strel::cli
