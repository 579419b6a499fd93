#pragma once

#include "strel/offline.hpp"
#include "strel/signal.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace strel::cli {

enum class Mode { Offline, Online, OnlineShuffled };
enum class Format { Csv, Json };

enum ExitCode : int {
  kOk = 0,
  kParseError = 1,
  kRefinementViolation = 2,
  kConfigError = 3,
};

struct RunConfig {
  Mode mode = Mode::Offline;
  std::string formula;
  std::string formula_file;
  std::string graph_file;
  std::string locations_file;
  bool undirected = false;
  std::string signal_file;
  std::string vars;
  Semantics semantics = Semantics::Robust;
  bool parallel = false;
  std::optional<std::uint64_t> seed;
  std::string out;  // empty: write the signal to the output stream
  Format format = Format::Csv;
};

struct TraceRow {
  std::size_t update_index = 0;
  double begin = 0.0;
  double end = 0.0;
  std::vector<std::pair<double, double>> emitted;
  std::int64_t elapsed_ns = 0;
};

struct RunResult {
  PCSignal output;  // |L| x 1: robustness, or verdict points for boolean semantics
  std::vector<TraceRow> trace;
  std::int64_t total_ns = 0;
};

/// Loads the inputs and monitors. Throws ParseError, InputError,
/// RefinementError, or ConfigError.
RunResult execute(const RunConfig& cfg);

/// execute() plus output files; maps failures to exit codes with a message on `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

void write_signal_json(std::ostream& out, const PCSignal& s, Semantics sem);
void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace);

} // namespace strel::cli
