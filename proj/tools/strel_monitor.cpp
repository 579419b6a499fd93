#include "strel/cli/fixtures.hpp"
#include "strel/cli/run.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <map>

int main(int argc, char** argv) {
  using namespace strel::cli;
  CLI::App app{"Online monitor for spatio-temporal properties over interval-valued signals"};

  RunConfig cfg;
  std::string fixture;
  std::size_t samples = 0;
  std::size_t nodes = 10;
  std::uint64_t seed = 0;

  const std::map<std::string, Mode> modes{
      {"offline", Mode::Offline}, {"online", Mode::Online}, {"online-shuffled", Mode::OnlineShuffled}};
  const std::map<std::string, strel::Semantics> semantics{
      {"boolean", strel::Semantics::Boolean}, {"robust", strel::Semantics::Robust}};
  const std::map<std::string, Format> formats{{"csv", Format::Csv}, {"json", Format::Json}};

  app.add_option("--mode", cfg.mode, "offline, online or online-shuffled")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
  app.add_option("--formula", cfg.formula, "Formula text");
  app.add_option("--formula-file", cfg.formula_file, "File holding the formula");
  app.add_option("--graph", cfg.graph_file, "Edges CSV: src,dst,weight");
  app.add_option("--locations", cfg.locations_file, "Locations CSV: index,name,lat,lon");
  app.add_flag("--undirected", cfg.undirected, "Add every edge in both directions");
  app.add_option("--signal", cfg.signal_file, "Updates CSV: t_a,t_b,location,dim,lo,hi");
  app.add_option("--vars", cfg.vars, "Variable table, e.g. NO2:0,PM10:1");
  app.add_option("--semantics", cfg.semantics, "boolean or robust")
      ->transform(CLI::CheckedTransformer(semantics, CLI::ignore_case));
  app.add_flag("--parallel", cfg.parallel, "Evaluate spatial operators on a worker pool");
  auto* seed_opt = app.add_option("--seed", seed, "Seed for shuffling and fixtures");
  app.add_option("--out", cfg.out, "Output file (fixture: output directory)");
  app.add_option("--format", cfg.format, "csv or json")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  app.add_option("--fixture", fixture, "Generate a fixture: rezzato, afc-like or zigbee")
      ->check(CLI::IsMember({"rezzato", "afc-like", "zigbee"}));
  app.add_option("--samples", samples, "Fixture sample count");
  app.add_option("--nodes", nodes, "zigbee fixture node count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  if (!fixture.empty()) {
    if (cfg.out.empty()) {
      std::cerr << "error: --fixture needs --out <directory>\n";
      return kConfigError;
    }
    try {
      Fixture f;
      if (fixture == "rezzato") {
        f = make_rezzato(seed_opt->count() ? seed : 1);
      } else if (fixture == "afc-like") {
        f = make_afc_like(samples ? samples : 500, seed_opt->count() ? seed : 1);
      } else {
        f = make_zigbee(nodes, samples ? samples : 100, seed_opt->count() ? seed : 7);
      }
      write_fixture(f, cfg.out);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kConfigError;
    }
    return kOk;
  }

  if (seed_opt->count()) {
    cfg.seed = seed;
  }
  return run(cfg, std::cout, std::cerr);
}
