#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace tangential::cli;

  CLI::App app{"Polynomial approximation of a function and its derivatives under an error envelope"};
  app.require_subcommand(1);

  std::string spec;
  std::string out;
  std::string artifact;
  std::string csv;
  int deriv = 0;

  auto* approximate = app.add_subcommand("approximate", "build and certify an approximation");
  approximate->add_option("--spec", spec, "spec file (JSON)")->required();
  approximate->add_option("--out", out, "artifact output path")->required();

  auto* certify = app.add_subcommand("certify", "re-check an artifact against its spec");
  certify->add_option("--artifact", artifact, "artifact JSON")->required();
  certify->add_option("--spec", spec, "spec file (JSON)")->required();

  auto* dump = app.add_subcommand("dump", "write plot data for one derivative order");
  dump->add_option("--artifact", artifact, "artifact JSON")->required();
  dump->add_option("--spec", spec, "spec file (JSON)")->required();
  dump->add_option("--csv", csv, "CSV output path")->required();
  dump->add_option("--deriv", deriv, "derivative order, 0..m");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kError;
  }

  if (*approximate) return run_approximate(spec, out, std::cout, std::cerr);
  if (*certify) return run_certify(artifact, spec, std::cout, std::cerr);
  return run_dump(artifact, spec, csv, deriv, std::cout, std::cerr);
}
