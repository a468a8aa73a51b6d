#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cli.hpp"

int main(int argc, char** argv) {
  using subdiag::cli::Command;
  using subdiag::cli::RunConfig;

  CLI::App app{"subdiag: finite-dimensional subdiagonal algebra laboratory"};
  app.require_subcommand(1);

  RunConfig config;
  std::string input, output, candidate;
  double tol = 0.0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--partition", config.partition, "Block sizes, e.g. 2,1")->delimiter(',');
    sub->add_option("--dim", config.dim, "Dimension n; alone it selects the (1,...,1) partition");
    sub->add_option("--trials", config.trials, "Random trials")->capture_default_str();
    sub->add_option("--seed", config.seed, "64-bit seed")->capture_default_str();
    sub->add_option("--tol", tol, "Tolerance (default: $SUBDIAG_TOL or per-command)");
    sub->add_option("--output", output, "Write the JSON report here instead of stdout");
  };

  struct Entry {
    Command command;
    const char* help;
  };
  const Entry entries[] = {
      {Command::Verify, "Check SD1-SD3, finiteness and the maximality probe"},
      {Command::Jensen, "Jensen inequality and formula suite"},
      {Command::Factor, "Factor an invertible positive matrix as A*A inside the algebra"},
      {Command::Szego, "Solve inf rho(|D+A|^2) and compare with Delta(rho)"},
      {Command::Classical, "Classical Szego ladder and Jensen on the circle"},
  };
  for (const auto& entry : entries) {
    auto* sub = app.add_subcommand(std::string(subdiag::cli::to_string(entry.command)), entry.help);
    add_common(sub);
    if (entry.command == Command::Factor || entry.command == Command::Szego ||
        entry.command == Command::Classical) {
      sub->add_option("--input", input, "Input JSON (matrix, or weight samples for classical)");
    }
    if (entry.command == Command::Factor) {
      sub->add_option("--candidate", candidate, "Verify this factor instead of computing one");
    }
    if (entry.command == Command::Classical) {
      sub->add_option("--grid", config.grid, "Circle grid size N")->capture_default_str();
      sub->add_option("--max-degree", config.max_degree, "Largest ladder degree")->capture_default_str();
    }
    sub->callback([&config, cmd = entry.command] { config.command = cmd; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  for (auto* sub : app.get_subcommands()) {
    if (sub->count("--tol") > 0) config.tol = tol;
  }
  if (!input.empty()) config.input_path = input;
  if (!output.empty()) config.output_path = output;
  if (!candidate.empty()) config.candidate_path = candidate;

  return subdiag::cli::run(config);
}
