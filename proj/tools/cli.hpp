#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "subdiag/matkernel.hpp"

namespace subdiag::cli {

inline constexpr std::string_view kSchemaVersion = "1";
/// Environment variable overriding each command's default tolerance.
inline constexpr const char* kToleranceEnv = "SUBDIAG_TOL";

enum class Command { Verify, Jensen, Factor, Szego, Classical };

std::string_view to_string(Command command) noexcept;
std::optional<Command> parse_command(std::string_view name) noexcept;

struct RunConfig {
  Command command = Command::Verify;
  std::vector<int> partition;  // empty: (1, …, 1) of length dim
  int dim = 0;
  int trials = 1000;
  std::uint64_t seed = 0;
  std::optional<double> tol;  // unset: SUBDIAG_TOL or the command default
  std::optional<std::string> input_path;
  std::optional<std::string> output_path;
  std::optional<std::string> candidate_path;  // factor: verify this A instead of computing it
  std::size_t grid = 4096;                    // classical
  std::size_t max_degree = 64;                // classical
};

struct RunResult {
  nlohmann::ordered_json report;
  int exit_code = 0;  // 0 all checks pass, 1 a check failed, 2 invalid input
};

double default_tolerance(Command command) noexcept;

/// Effective tolerance: explicit config, then SUBDIAG_TOL, then default.
double resolve_tolerance(const RunConfig& config);

/// {"n": int, "entries": [[[re, im], …], …]}. Throws Error with ParseError
/// for malformed JSON and ValidationError for shape or finiteness problems.
ComplexMatrix parse_matrix_json(std::string_view text);
nlohmann::ordered_json matrix_to_json(const ComplexMatrix& M);
std::string serialize_matrix_json(const ComplexMatrix& M);

/// {"samples": [w_0, …, w_{N-1}]}.
std::vector<double> parse_weight_json(std::string_view text);

/// Runs one command and returns the report with its exit code. Never
/// throws for bad input; errors become an "error" record with exit code 2.
RunResult execute(const RunConfig& config);

/// execute() plus writing the report to output_path or standard output.
/// Returns the exit code.
int run(const RunConfig& config);

/// Serialized report text, 2-space indented with a trailing newline.
std::string render(const nlohmann::ordered_json& report);

}  // namespace subdiag::cli
