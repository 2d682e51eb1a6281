#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "hre/baselines.hpp"
#include "hre/diagnostics.hpp"
#include "hre/error.hpp"
#include "hre/hre_solver.hpp"
#include "hre/matrix.hpp"
#include "hre/min_error.hpp"
#include "hre/montecarlo.hpp"

namespace hre::cli {

namespace {

using Json = nlohmann::ordered_json;

struct CliConfig {
  std::string input_path;
  std::string method;
  std::size_t iterations = 10;
  bool normalize = false;
  bool json = false;
  std::string weights_path;
  std::size_t mc_n = 5;
  std::size_t mc_trials = 100;
  std::vector<double> mc_noise;
  std::size_t mc_refs = 1;
  std::uint64_t mc_seed = 0;
  std::string mc_out;
};

/// Failure carrying the exit status it maps to.
struct CommandError {
  int status;
  std::string message;
};

std::string human(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string human(const std::optional<double>& v) { return v ? human(*v) : "n/a"; }

Json json_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::string concept_pair(Index i, Index j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CommandError{kExitInputError, "cannot open '" + path + "'"};
  try {
    return parse_matrix(in);
  } catch (const ParseError& e) {
    throw CommandError{kExitInputError, path + ": " + e.what()};
  } catch (const InputError& e) {
    throw CommandError{kExitInputError, path + ": " + e.what()};
  }
}

void require_valid(const ValidationReport& report) {
  if (report.ok()) return;
  std::string message = "invalid matrix";
  for (const auto& issue : report.issues)
    if (is_fatal(issue.category)) message += "\n  " + std::string(to_string(issue.category)) + ": " + issue.message;
  throw CommandError{kExitInputError, message};
}

std::vector<std::string> messages(const std::vector<Issue>& issues) {
  std::vector<std::string> out;
  for (const auto& i : issues) out.push_back(i.message);
  return out;
}

void print_warnings(std::ostream& out, const std::vector<std::string>& warnings) {
  if (warnings.empty()) {
    out << "warnings: none\n";
    return;
  }
  out << "warnings:\n";
  for (const auto& w : warnings) out << "  " << w << '\n';
}

std::vector<double> read_weights(const std::string& path, std::size_t n) {
  std::ifstream in(path);
  if (!in) throw CommandError{kExitInputError, "cannot open '" + path + "'"};
  std::vector<double> w;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::string token;
    if (!(tokens >> token)) continue;
    std::string extra;
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(token, &used);
      if (used != token.size() || (tokens >> extra)) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw CommandError{kExitInputError, path + ": line " + std::to_string(line_no) + ": malformed weight"};
    }
    if (!(value > 0.0) || !std::isfinite(value))
      throw CommandError{kExitInputError, path + ": line " + std::to_string(line_no) + ": weight must be positive"};
    w.push_back(value);
  }
  if (w.size() != n)
    throw CommandError{kExitInputError, path + ": expected " + std::to_string(n) + " weights, found " +
                                            std::to_string(w.size())};
  return w;
}

// ---------------------------------------------------------------------------

int cmd_rank(const CliConfig& cfg, std::ostream& out) {
  Problem problem = load_problem(cfg.input_path);
  std::vector<std::string> warnings;
  const bool needs_reference = cfg.method == "hre" || cfg.method == "min-error";
  if (needs_reference && problem.references.empty()) {
    problem.references.weights[0] = 1.0;
    warnings.push_back("no reference concepts given; concept 1 fixed at weight 1");
  }
  const auto report = validate(problem);
  require_valid(report);

  // With no references (ev/gm) the error is averaged over every concept.
  const Problem restored{restore_reciprocity(problem.matrix), problem.references};
  const Problem processed = problem.references.empty() ? restored : fill_known_ratios(restored).problem;

  std::optional<WeightVector> weights;
  std::string path;
  try {
    if (cfg.method == "hre") {
      auto outcome = hre_rank(problem, {.max_iterations = cfg.iterations, .normalize = cfg.normalize});
      path = std::string(to_string(outcome.path));
      warnings.insert(warnings.end(), outcome.warnings.begin(), outcome.warnings.end());
      weights = std::move(outcome.weights);
    } else if (cfg.method == "min-error") {
      auto prepared = prepare(problem);
      auto w = messages(prepared.warnings);
      warnings.insert(warnings.end(), w.begin(), w.end());
      if (!prepared.problem.matrix.is_complete())
        throw SolverError("incomplete matrix: the min-error heuristic needs every entry");
      auto result = solve_min_error(prepared.problem);
      if (result.status != MinErrorStatus::solved)
        throw SolverError("min-error heuristic failed: " + std::string(to_string(result.status)));
      if (!result.verified_minimum) warnings.push_back("min-error solution is an unverified minimum");
      path = "min-error";
      weights = cfg.normalize ? result.weights->normalize() : *result.weights;
    } else {
      auto w = messages(report.warnings());
      warnings.insert(warnings.end(), w.begin(), w.end());
      if (cfg.method == "ev") {
        weights = ev_weights(problem.matrix);
        path = "eigenvector";
      } else {
        weights = gm_weights(problem.matrix);
        path = "geometric-mean";
      }
    }
  } catch (const SolverError& e) {
    throw CommandError{kExitSolverError, e.what()};
  }

  std::optional<double> ci;
  if (problem.matrix.is_complete()) ci = saaty_ci(problem.matrix);
  const auto kk = problem.size() > 2 ? koczkodaj_index(restored.matrix) : std::nullopt;
  const double error = estimation_error(processed, weights->values()).mean;

  if (cfg.json) {
    Json j;
    j["method"] = cfg.method;
    j["path"] = path;
    j["weights"] = weights->values();
    j["normalized"] = weights->normalized();
    j["diagnostics"] = {{"ci", json_number(ci)}, {"koczkodaj", json_number(kk)}, {"error", error}};
    j["warnings"] = warnings;
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  out << "method: " << cfg.method << '\n' << "path: " << path << '\n';
  out << "weights" << (weights->normalized() ? " (normalized)" : "") << ":\n";
  for (std::size_t i = 0; i < weights->size(); ++i) out << "  c" << i + 1 << "  " << human((*weights)[i]) << '\n';
  out << "CI: " << human(ci) << '\n' << "Koczkodaj: " << human(kk) << '\n' << "error: " << human(error) << '\n';
  print_warnings(out, warnings);
  return kExitOk;
}

int cmd_diagnose(const CliConfig& cfg, std::ostream& out) {
  Problem problem = load_problem(cfg.input_path);
  std::vector<std::string> warnings;
  const bool designated = problem.references.empty();
  if (designated) problem.references.weights[0] = 1.0;
  const auto report = validate(problem);
  require_valid(report);
  warnings = messages(report.warnings());
  if (designated) warnings.push_back("no reference concepts given; reachability measured from concept 1");

  const PcMatrix restored = restore_reciprocity(problem.matrix);
  std::optional<double> ci;
  if (problem.matrix.is_complete()) {
    ci = saaty_ci(problem.matrix);
    if (!report.warnings().empty()) warnings.push_back("CI computed on a non-reciprocal matrix");
  }
  KoczkodajResult kk{std::nullopt, 0};
  if (problem.size() > 2) kk = koczkodaj(restored);
  const auto reach = is_reachable(Problem{restored, problem.references});

  std::vector<std::size_t> refs;
  for (const auto& [i, w] : problem.references.weights) refs.push_back(i + 1);
  std::vector<std::size_t> unreachable;
  for (Index i : reach.unreachable) unreachable.push_back(i + 1);

  if (cfg.json) {
    Json j;
    j["concepts"] = problem.size();
    j["complete"] = problem.matrix.is_complete();
    j["ci"] = json_number(ci);
    j["koczkodaj"] = json_number(kk.value);
    j["triads_evaluated"] = kk.triads_evaluated;
    j["reachability"] = {{"references", refs}, {"reachable", reach.reachable}, {"unreachable", unreachable}};
    j["warnings"] = warnings;
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  out << "concepts: " << problem.size() << '\n';
  out << "complete: " << (problem.matrix.is_complete() ? "yes" : "no") << '\n';
  out << "CI: " << (ci ? human(*ci) : std::string("n/a (incomplete matrix)")) << '\n';
  out << "Koczkodaj: " << human(kk.value) << " (" << kk.triads_evaluated << " triads)\n";
  out << "reachability: " << (reach.reachable ? "all concepts reachable" : "unreachable concepts");
  for (std::size_t i = 0; i < unreachable.size(); ++i) out << (i == 0 ? " " : ", ") << unreachable[i];
  out << '\n';
  print_warnings(out, warnings);
  return kExitOk;
}

Json violation_json(const CopViolation& v) {
  return {{"i", v.i + 1}, {"j", v.j + 1}, {"k", v.k + 1}, {"l", v.l + 1},
          {"ratio_ij", v.ratio_ij}, {"ratio_kl", v.ratio_kl}};
}

int cmd_cop(const CliConfig& cfg, std::ostream& out) {
  Problem problem = load_problem(cfg.input_path);
  auto report = validate(Problem{problem.matrix, {}});
  require_valid(report);
  const auto mu = read_weights(cfg.weights_path, problem.size());
  const auto cop = cop_check(problem.matrix, mu);

  if (cfg.json) {
    Json j;
    j["satisfies_cop"] = cop.satisfies_cop();
    j["quadruples_checked"] = cop.quadruples_checked;
    j["pop_violations"] = Json::array();
    for (const auto& v : cop.pop_violations) j["pop_violations"].push_back(violation_json(v));
    j["poip_violations"] = Json::array();
    for (const auto& v : cop.poip_violations) j["poip_violations"].push_back(violation_json(v));
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  out << "satisfies COP: " << (cop.satisfies_cop() ? "yes" : "no") << '\n';
  out << "quadruples checked: " << cop.quadruples_checked << '\n';
  auto list = [&](const char* label, const std::vector<CopViolation>& vs) {
    out << label << " violations: " << vs.size() << '\n';
    for (const auto& v : vs)
      out << "  m" << concept_pair(v.i, v.j) << " > m" << concept_pair(v.k, v.l) << ": mu" << v.i + 1 << "/mu"
          << v.j + 1 << " = " << human(v.ratio_ij) << ", mu" << v.k + 1 << "/mu" << v.l + 1 << " = "
          << human(v.ratio_kl) << '\n';
  };
  list("POP", cop.pop_violations);
  list("POIP", cop.poip_violations);
  return kExitOk;
}

int cmd_mc(const CliConfig& cfg, std::ostream& out) {
  ExperimentConfig config;
  config.n = cfg.mc_n;
  config.trials = cfg.mc_trials;
  config.noise_levels = cfg.mc_noise;
  config.reference_count = cfg.mc_refs;
  config.seed = cfg.mc_seed;
  std::vector<TrialRecord> records;
  try {
    records = run_experiment(config);
  } catch (const InputError& e) {
    throw CommandError{kExitInputError, e.what()};
  }
  std::ofstream file(cfg.mc_out, std::ios::binary);
  if (!file) throw CommandError{kExitInputError, "cannot write '" + cfg.mc_out + "'"};
  write_csv(file, records);
  file.close();
  if (!file) throw CommandError{kExitInputError, "cannot write '" + cfg.mc_out + "'"};

  out << "noise  trials  solved  mean_K  mean_distance\n";
  for (const auto& s : summarize(records)) {
    out << human(s.noise_level) << "  " << s.trials << "  " << s.solved << "  " << human(s.mean_koczkodaj) << "  "
        << human(s.mean_distance) << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CliConfig cfg;
  CLI::App app{"Priority weights from pairwise comparisons with fixed reference concepts", "hre"};
  app.require_subcommand(1);

  auto* rank = app.add_subcommand("rank", "Compute a weight vector");
  rank->add_option("--input", cfg.input_path, "Matrix file")->required();
  rank->add_option("--method", cfg.method, "hre | ev | gm | min-error")
      ->required()
      ->check(CLI::IsMember({"hre", "ev", "gm", "min-error"}));
  rank->add_option("--iterations", cfg.iterations, "Iterates considered by the best-iterate fallback")
      ->check(CLI::PositiveNumber);
  rank->add_flag("--normalize", cfg.normalize, "Rescale HRE and min-error weights to sum to one");
  rank->add_flag("--json", cfg.json, "Emit JSON");

  auto* diagnose = app.add_subcommand("diagnose", "Inconsistency and reachability report");
  diagnose->add_option("--input", cfg.input_path, "Matrix file")->required();
  diagnose->add_flag("--json", cfg.json, "Emit JSON");

  auto* cop = app.add_subcommand("cop", "Check the condition of order preservation");
  cop->add_option("--input", cfg.input_path, "Matrix file")->required();
  cop->add_option("--weights", cfg.weights_path, "One positive weight per line")->required();
  cop->add_flag("--json", cfg.json, "Emit JSON");

  auto* mc = app.add_subcommand("mc", "Monte Carlo comparison of the two heuristics");
  mc->add_option("--n", cfg.mc_n, "Concepts per instance")->required();
  mc->add_option("--trials", cfg.mc_trials, "Trials per noise level")->required();
  mc->add_option("--noise", cfg.mc_noise, "Comma-separated noise levels")->required()->delimiter(',');
  mc->add_option("--refs", cfg.mc_refs, "Number of reference concepts")->required();
  mc->add_option("--seed", cfg.mc_seed, "Base seed")->required();
  mc->add_option("--out", cfg.mc_out, "CSV output path")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  try {
    if (rank->parsed()) return cmd_rank(cfg, out);
    if (diagnose->parsed()) return cmd_diagnose(cfg, out);
    if (cop->parsed()) return cmd_cop(cfg, out);
    return cmd_mc(cfg, out);
  } catch (const CommandError& e) {
    err << "error: " << e.message << '\n';
    return e.status;
  } catch (const SolverError& e) {
    err << "error: " << e.what() << '\n';
    return kExitSolverError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace hre::cli
