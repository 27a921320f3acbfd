#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "ratsym/cli.hpp"

int main(int argc, char** argv) {
  ratsym::RunConfig config;
  std::string mode = "compute";
  bool no_timestamp = false;

  CLI::App app{"Normalized integrals of rational symmetric functions over discrete "
               "eigenvalue ensembles, with brute-force verification"};
  app.add_option("--mode", mode, "compute | verify | sweep | identities")
      ->check(CLI::IsMember({"compute", "verify", "sweep", "identities"}));
  app.add_option("--measure", config.measure_path, "measure spec file (JSON)")->required();
  app.add_option("--spec", config.spec_source, "integrand spec: JSON file path or inline JSON");
  app.add_option("--tolerance", config.tolerance, "pass threshold for oracle comparisons");
  app.add_option("--seed", config.seed, "seed for parameter draws");
  app.add_option("--budget", config.budget, "max brute-force term count");
  app.add_option("--out", config.out_path, "write report lines to this file");
  app.add_flag("--no-timestamp", no_timestamp, "omit the timestamp from the run header");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  static const std::map<std::string, ratsym::RunMode> kModes = {
      {"compute", ratsym::RunMode::Compute},
      {"verify", ratsym::RunMode::Verify},
      {"sweep", ratsym::RunMode::Sweep},
      {"identities", ratsym::RunMode::Identities}};
  config.mode = kModes.at(mode);
  config.with_timestamp = !no_timestamp;

  return ratsym::run(config, std::cout, std::cerr);
}
