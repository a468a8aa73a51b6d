#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>

#include "subdiag/algebra.hpp"
#include "subdiag/classical.hpp"
#include "subdiag/error.hpp"
#include "subdiag/factor.hpp"
#include "subdiag/fkdet.hpp"
#include "subdiag/jensen.hpp"
#include "subdiag/rng.hpp"
#include "subdiag/szego.hpp"

namespace subdiag::cli {

using json = nlohmann::ordered_json;

std::string_view to_string(Command command) noexcept {
  switch (command) {
    case Command::Verify: return "verify";
    case Command::Jensen: return "jensen";
    case Command::Factor: return "factor";
    case Command::Szego: return "szego";
    case Command::Classical: return "classical";
  }
  return "unknown";
}

std::optional<Command> parse_command(std::string_view name) noexcept {
  for (Command c : {Command::Verify, Command::Jensen, Command::Factor, Command::Szego, Command::Classical}) {
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

double default_tolerance(Command command) noexcept {
  switch (command) {
    case Command::Verify: return 1e-12;
    case Command::Jensen: return 1e-10;
    case Command::Factor: return 1e-10;
    case Command::Szego: return 1e-10;
    case Command::Classical: return 1e-3;
  }
  return 1e-10;
}

double resolve_tolerance(const RunConfig& config) {
  if (config.tol) return *config.tol;
  if (const char* env = std::getenv(kToleranceEnv); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const double value = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(value > 0.0) || !std::isfinite(value)) {
      throw Error(ErrorCode::ValidationError, std::string(kToleranceEnv) + " is not a positive number");
    }
    return value;
  }
  return default_tolerance(config.command);
}

// Matrix and weight JSON.

ComplexMatrix parse_matrix_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("entries")) {
    throw Error(ErrorCode::ParseError, "matrix JSON needs an object with \"n\" and \"entries\"");
  }
  const auto& n_field = doc["n"];
  if (!n_field.is_number_integer() || n_field.get<long long>() < 1) {
    throw Error(ErrorCode::ValidationError, "\"n\" must be a positive integer");
  }
  const auto n = static_cast<Eigen::Index>(n_field.get<long long>());
  const auto& rows = doc["entries"];
  if (!rows.is_array()) throw Error(ErrorCode::ParseError, "\"entries\" must be an array");
  if (static_cast<Eigen::Index>(rows.size()) != n) {
    throw Error(ErrorCode::ValidationError, "\"entries\" has " + std::to_string(rows.size()) +
                                                " rows, expected " + std::to_string(n));
  }
  ComplexMatrix M(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array()) throw Error(ErrorCode::ParseError, "row " + std::to_string(i) + " is not an array");
    if (static_cast<Eigen::Index>(row.size()) != n) {
      throw Error(ErrorCode::ValidationError, "row " + std::to_string(i) + " has " +
                                                  std::to_string(row.size()) + " entries, expected " +
                                                  std::to_string(n));
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto& entry = row[static_cast<std::size_t>(j)];
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number()) {
        throw Error(ErrorCode::ParseError, "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                               ") must be a [re, im] pair of numbers");
      }
      const double re = entry[0].get<double>();
      const double im = entry[1].get<double>();
      if (!std::isfinite(re) || !std::isfinite(im)) {
        throw Error(ErrorCode::ValidationError,
                    "entry (" + std::to_string(i) + "," + std::to_string(j) + ") is not finite");
      }
      M(i, j) = Complex(re, im);
    }
  }
  return M;
}

json matrix_to_json(const ComplexMatrix& M) {
  json entries = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back(json::array({M(i, j).real(), M(i, j).imag()}));
    entries.push_back(std::move(row));
  }
  json out;
  out["n"] = M.rows();
  out["entries"] = std::move(entries);
  return out;
}

std::string serialize_matrix_json(const ComplexMatrix& M) { return matrix_to_json(M).dump(); }

std::vector<double> parse_weight_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (!doc.is_object() || !doc.contains("samples") || !doc["samples"].is_array()) {
    throw Error(ErrorCode::ParseError, "weight JSON needs an object with a \"samples\" array");
  }
  std::vector<double> w;
  for (const auto& v : doc["samples"]) {
    if (!v.is_number()) throw Error(ErrorCode::ParseError, "weight samples must be numbers");
    w.push_back(v.get<double>());
  }
  return w;
}

std::string render(const json& report) { return report.dump(2) + "\n"; }

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ValidationError, "cannot open input file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

class CheckList {
 public:
  void add(std::string name, std::string anchor, double measured, std::string_view comparison,
           double threshold) {
    bool pass = false;
    if (comparison == "<=") pass = measured <= threshold;
    else if (comparison == ">=") pass = measured >= threshold;
    else pass = measured == threshold;
    json record;
    record["name"] = std::move(name);
    record["anchor"] = std::move(anchor);
    record["measured"] = measured;
    record["comparison"] = comparison;
    record["threshold"] = threshold;
    record["pass"] = pass;
    all_pass_ = all_pass_ && pass;
    records_.push_back(std::move(record));
  }

  bool all_pass() const noexcept { return all_pass_; }
  json take() { return std::move(records_); }

 private:
  json records_ = json::array();
  bool all_pass_ = true;
};

constexpr const char* kAnchorSd1 = "SD1: A + A* spans the generated algebra";
constexpr const char* kAnchorSd2 = "SD2: phi is a faithful positive idempotent expectation onto A cap A*";
constexpr const char* kAnchorSd3 = "SD3: phi(AB) = phi(A) phi(B) on A";
constexpr const char* kAnchorFinite = "finiteness: tau o phi = tau";
constexpr const char* kAnchorMaximal = "maximality: no enlargement of A stays subdiagonal";
constexpr const char* kAnchorJensenIneq = "Jensen inequality: Delta(phi(A)) <= Delta(A)";
constexpr const char* kAnchorJensenFormula = "Jensen formula: Delta(phi(A)) = Delta(A) on invertibles";
constexpr const char* kAnchorFactor = "factorization: X = A*A with A, A^-1 in A";
constexpr const char* kAnchorSzego = "noncommutative Szego: inf rho(|D+A|^2) = Delta(rho)";
constexpr const char* kAnchorClassicalSzego = "classical Szego: inf mean(|1+f|^2 w) = exp mean(log w)";
constexpr const char* kAnchorClassicalJensen = "classical Jensen: |mean f| <= exp mean(log|f|)";

SubdiagonalAlgebra algebra_for(const RunConfig& config) {
  if (!config.partition.empty()) {
    const auto alg = make_algebra(config.partition);
    if (config.dim != 0 && config.dim != alg.dim()) {
      throw Error(ErrorCode::ValidationError, "--dim disagrees with the partition");
    }
    return alg;
  }
  if (config.dim < 1) {
    throw Error(ErrorCode::ValidationError, "a partition or a positive --dim is required");
  }
  return make_algebra(std::vector<int>(static_cast<std::size_t>(config.dim), 1));
}

json partition_json(const SubdiagonalAlgebra& alg) { return json(alg.structure().partition()); }

void run_verify(const RunConfig& config, double tol, CheckList& checks, json& details) {
  const auto alg = algebra_for(config);
  const auto axioms = verify_axioms(alg, config.trials, config.seed, tol);
  const auto n = static_cast<double>(alg.dim());
  checks.add("sd1_span_dim", kAnchorSd1, static_cast<double>(axioms.sd1_span_dim), "==", n * n);
  checks.add("sd2_idempotence", kAnchorSd2, axioms.idempotence_residual, "<=", tol);
  checks.add("sd2_positivity", kAnchorSd2, axioms.positivity_residual, "<=", tol);
  checks.add("sd2_faithfulness", kAnchorSd2, axioms.faithfulness_residual, "<=", tol);
  checks.add("sd2_bimodule", kAnchorSd2, axioms.bimodule_residual, "<=", tol);
  checks.add("sd3_multiplicativity", kAnchorSd3, axioms.sd3_max_residual, "<=", tol);
  checks.add("finiteness", kAnchorFinite, axioms.finiteness_residual, "<=", tol);

  const auto witnesses = maximality_probe(alg);
  std::size_t above_line = 0;
  for (Eigen::Index i = 0; i < alg.dim(); ++i)
    for (Eigen::Index j = 0; j < alg.dim(); ++j)
      if (alg.structure().above_line(i, j)) ++above_line;
  checks.add("maximality_witness_count", kAnchorMaximal, static_cast<double>(witnesses.size()), "==",
             static_cast<double>(above_line));
  if (!witnesses.empty()) {
    double weakest = std::numeric_limits<double>::infinity();
    for (const auto& w : witnesses) weakest = std::min(weakest, w.violation);
    checks.add("maximality_min_violation", kAnchorMaximal, weakest, ">=", 1.0 - 1e-12);
  }

  details["partition"] = partition_json(alg);
  details["n"] = alg.dim();
  details["algebra_dimension"] = alg.algebra_dimension();
  details["diagonal_dimension"] = alg.diagonal_dimension();
  details["sd1_span_dim"] = axioms.sd1_span_dim;
  json wj = json::array();
  for (const auto& w : witnesses) wj.push_back(json{{"row", w.row}, {"col", w.col}, {"violation", w.violation}});
  details["maximality_witnesses"] = std::move(wj);
}

void run_jensen(const RunConfig& config, double tol, CheckList& checks, json& details) {
  const auto alg = algebra_for(config);
  const auto report = jensen_suite(alg, config.trials, config.seed, tol);
  checks.add("jensen_inequality_worst_gap", kAnchorJensenIneq, report.worst_gap, ">=", -tol);
  checks.add("jensen_formula_worst_residual", kAnchorJensenFormula, report.worst_formula_residual, "<=", tol);
  checks.add("implication_violations", kAnchorJensenFormula, report.implication_violations, "==", 0.0);
  checks.add("triangular_equality_worst_residual", kAnchorJensenIneq, report.worst_equality_residual, "<=", tol);
  details["partition"] = partition_json(alg);
  details["trials"] = report.trials;
  details["invertible_samples"] = report.invertible_samples;
  details["singular_samples"] = report.singular_samples;
}

void run_factor(const RunConfig& config, double tol, CheckList& checks, json& details) {
  if (config.input_path) {
    const ComplexMatrix X = parse_matrix_json(read_file(*config.input_path));
    RunConfig sized = config;
    if (sized.partition.empty() && sized.dim == 0) sized.dim = static_cast<int>(X.rows());
    const auto alg = algebra_for(sized);
    alg.require_dim(X, "factor input");
    const ComplexMatrix A = config.candidate_path ? parse_matrix_json(read_file(*config.candidate_path))
                                                  : factorize_positive(alg, X);
    alg.require_dim(A, "factor candidate");
    const auto report = verify_factorization(alg, X, A, tol);
    checks.add("reconstruction_residual", kAnchorFactor, report.reconstruction_residual, "<=", tol);
    checks.add("factor_in_algebra", kAnchorFactor, report.factor_in_algebra ? 1.0 : 0.0, "==", 1.0);
    checks.add("inverse_in_algebra", kAnchorFactor, report.inverse_in_algebra ? 1.0 : 0.0, "==", 1.0);
    checks.add("determinant_residual", kAnchorFactor, report.determinant_residual, "<=", tol);
    details["partition"] = partition_json(alg);
    details["candidate_supplied"] = config.candidate_path.has_value();
    details["factor"] = matrix_to_json(A);
    return;
  }

  const auto alg = algebra_for(config);
  double worst_reconstruction = 0.0, worst_det = 0.0;
  int membership_failures = 0;
  for (int t = 0; t < config.trials; ++t) {
    Rng rng = Rng::for_trial(config.seed, static_cast<std::uint64_t>(t));
    const ComplexMatrix X = random_spd(rng, alg.dim());
    const auto report = verify_factorization(alg, X, factorize_positive(alg, X), tol);
    worst_reconstruction = std::max(worst_reconstruction, report.reconstruction_residual);
    worst_det = std::max(worst_det, report.determinant_residual);
    if (!report.factor_in_algebra || !report.inverse_in_algebra) ++membership_failures;
  }
  checks.add("worst_reconstruction_residual", kAnchorFactor, worst_reconstruction, "<=", tol);
  checks.add("membership_failures", kAnchorFactor, membership_failures, "==", 0.0);
  checks.add("worst_determinant_residual", kAnchorFactor, worst_det, "<=", tol);
  details["partition"] = partition_json(alg);
  details["trials"] = config.trials;
}

void run_szego(const RunConfig& config, double tol, CheckList& checks, json& details) {
  ComplexMatrix W;
  SubdiagonalAlgebra alg = [&] {
    if (config.input_path) {
      W = parse_matrix_json(read_file(*config.input_path));
      RunConfig sized = config;
      if (sized.partition.empty() && sized.dim == 0) sized.dim = static_cast<int>(W.rows());
      return algebra_for(sized);
    }
    return algebra_for(config);
  }();
  if (!config.input_path) {
    Rng rng = Rng::for_trial(config.seed, 0);
    W = random_spd(rng, alg.dim());
    W /= alg.trace(W).real();
  }
  const State rho = State::from_density(alg, W);
  const auto closed = solve_closed_form(alg, rho);
  details["partition"] = partition_json(alg);
  details["target"] = closed.target;

  if (!closed.attained) {
    checks.add("singular_density_infimum", kAnchorSzego, closed.infimum_estimate, "==", 0.0);
    details["attained"] = false;
    return;
  }
  const double target = closed.target;
  const double scale = std::max(1.0, target);
  checks.add("closed_form_relative_error", kAnchorSzego, std::abs(closed.infimum_estimate - target) / target,
             "<=", tol);

  SolverConfig cfg;
  cfg.seed = config.seed;
  const auto alternating = solve_alternating(alg, rho, cfg);
  checks.add("alternating_relative_error", kAnchorSzego,
             std::abs(alternating.infimum_estimate - target) / target, "<=", 1e-4);
  const double lowest = std::min(min_trace_objective(closed), min_trace_objective(alternating));
  checks.add("lower_bound_certificate", kAnchorSzego, lowest, ">=", target - 1e-8 * scale);
  checks.add("feasibility", kAnchorSzego, fk_det(alg, alternating.point.D), ">=", 1.0 - kFeasibilityTol);
  checks.add("a_step_monotonicity", kAnchorSzego, std::max(0.0, alternating.max_a_step_increase), "<=", 1e-12);

  if (alg.dim() <= 3) {
    BruteForceConfig bf;
    bf.seed = config.seed;
    const double brute = brute_force_infimum(alg, rho, bf);
    checks.add("brute_force_relative_error", kAnchorSzego, std::abs(brute - target) / target, "<=", 1e-3);
    details["brute_force_infimum"] = brute;
  }

  details["attained"] = true;
  details["closed_form_infimum"] = closed.infimum_estimate;
  details["alternating_infimum"] = alternating.infimum_estimate;
  details["alternating_iterations"] = alternating.iterations;
  details["alternating_converged"] = alternating.converged;
  details["D"] = matrix_to_json(closed.point.D);
  details["A"] = matrix_to_json(closed.point.A);
}

void run_classical(const RunConfig& config, double tol, CheckList& checks, json& details) {
  using namespace subdiag::classical;
  std::vector<double> w;
  if (config.input_path) {
    w = parse_weight_json(read_file(*config.input_path));
  } else {
    const CircleGrid grid(config.grid);
    w = PolyOnCircle({1.0, -0.5}).modulus_squared(grid);
  }
  const CircleGrid grid(w.size());
  const double gm = geometric_mean(w);
  const std::size_t max_degree = std::min(config.max_degree, w.size() / 2 - 1);
  std::vector<std::size_t> degrees(max_degree + 1);
  for (std::size_t m = 0; m <= max_degree; ++m) degrees[m] = m;
  const auto ladder = szego_ladder(w, degrees);

  double worst_increase = 0.0, worst_undercut = 0.0;
  for (std::size_t k = 0; k < ladder.size(); ++k) {
    if (k > 0) worst_increase = std::max(worst_increase, ladder[k].value - ladder[k - 1].value);
    worst_undercut = std::max(worst_undercut, gm - ladder[k].value);
  }
  checks.add("ladder_monotone_max_increase", kAnchorClassicalSzego, worst_increase, "<=", 1e-12);
  checks.add("ladder_lower_bound_max_undercut", kAnchorClassicalSzego, worst_undercut, "<=", 1e-6);
  checks.add("ladder_convergence", kAnchorClassicalSzego, std::abs(ladder.back().value - gm), "<=", tol);

  double worst_jensen = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < config.trials; ++t) {
    Rng rng = Rng::for_trial(config.seed, static_cast<std::uint64_t>(t));
    const int degree = rng.uniform_int(0, 8);
    std::vector<Complex> coeffs(static_cast<std::size_t>(degree) + 1);
    for (auto& c : coeffs) c = rng.complex_normal();
    const auto sides = jensen_classical(PolyOnCircle(std::move(coeffs)), grid);
    worst_jensen = std::max(worst_jensen, sides.lhs - sides.rhs);
  }
  if (config.trials > 0) {
    checks.add("jensen_worst_excess", kAnchorClassicalJensen, worst_jensen, "<=", 1e-8);
  }

  details["grid"] = w.size();
  details["geometric_mean"] = gm;
  json lj = json::array();
  for (const auto& r : ladder) lj.push_back(json{{"degree", r.degree}, {"value", r.value}});
  details["ladder"] = std::move(lj);
}

}  // namespace

RunResult execute(const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  json report;
  report["schema_version"] = kSchemaVersion;
  report["command"] = to_string(config.command);

  json cfg;
  cfg["partition"] = config.partition;
  cfg["dim"] = config.dim;
  cfg["trials"] = config.trials;
  cfg["seed"] = config.seed;
  report["config"] = cfg;

  CheckList checks;
  json details = json::object();
  RunResult result;
  try {
    if (config.trials < 0) throw Error(ErrorCode::ValidationError, "--trials must be >= 0");
    if ((config.command == Command::Verify || config.command == Command::Jensen) && config.trials < 1) {
      throw Error(ErrorCode::ValidationError, "--trials must be >= 1");
    }
    const double tol = resolve_tolerance(config);
    if (!(tol > 0.0)) throw Error(ErrorCode::ValidationError, "--tol must be positive");
    report["config"]["tol"] = tol;
    switch (config.command) {
      case Command::Verify: run_verify(config, tol, checks, details); break;
      case Command::Jensen: run_jensen(config, tol, checks, details); break;
      case Command::Factor: run_factor(config, tol, checks, details); break;
      case Command::Szego: run_szego(config, tol, checks, details); break;
      case Command::Classical: run_classical(config, tol, checks, details); break;
    }
    result.exit_code = checks.all_pass() ? 0 : 1;
    report["checks"] = checks.take();
    report["details"] = std::move(details);
    report["pass"] = result.exit_code == 0;
  } catch (const Error& e) {
    result.exit_code = 2;
    report["checks"] = json::array();
    report["error"] = json{{"code", to_string(e.code())}, {"message", e.what()}};
    report["pass"] = false;
  } catch (const std::exception& e) {
    result.exit_code = 2;
    report["checks"] = json::array();
    report["error"] = json{{"code", "InternalError"}, {"message", e.what()}};
    report["pass"] = false;
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  report["wall_time"] = elapsed.count();
  result.report = std::move(report);
  return result;
}

int run(const RunConfig& config) {
  RunResult result = execute(config);
  const std::string text = render(result.report);
  if (config.output_path) {
    std::ofstream out(*config.output_path, std::ios::binary);
    if (!out) {
      std::cerr << "subdiag: cannot write " << *config.output_path << "\n";
      return 2;
    }
    out << text;
  } else {
    std::cout << text;
  }
  return result.exit_code;
}

}  // namespace subdiag::cli
