// Copyright (c) 2026 the scenopt developers.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end.  One positional command selects the operation; a
// single flat flag namespace configures it, so the same keys work on the
// command line, in a key=value config file (--config), and for the one
// supported environment override (SCENOPT_SEED).  Precedence: flag > env >
// config > built-in default.
//
// Exit codes: 0 success (validation passed), 1 usage or domain error,
// 2 I/O failure, 3 violated model assumption, 4 validation/probe failure.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "scenopt/bounds.hpp"
#include "scenopt/circle_example.hpp"
#include "scenopt/empirics.hpp"
#include "scenopt/problem.hpp"
#include "scenopt/sensitivity.hpp"
#include "scenopt/text_format.hpp"

namespace {

using namespace scenopt;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitAssumption = 3;
constexpr int kExitValidation = 4;

// Everything a command can consume.  -1 / empty string mean "not provided";
// commands fill in their own defaults and reject genuinely required holes.
struct RunConfig {
  std::string command;
  std::string problem;
  int k = -1;
  int d = -1;
  int N = -1;
  int T = -1;
  double beta = -1.0;
  double epsilon = -1.0;
  std::uint64_t seed = 0;
  std::string grid;    // LO:HI:STEPS
  std::string family = "additive";
  std::string method = "h";
  std::string out;
};

int require_positive(int value, const char* flag, const std::string& command) {
  if (value < 1) {
    throw std::invalid_argument("'" + command + "' needs " + flag +
                                " (a positive integer)");
  }
  return value;
}

double require_real(double value, const char* flag, const std::string& command) {
  if (value < 0.0) {
    throw std::invalid_argument("'" + command + "' needs " + flag);
  }
  return value;
}

std::string require_name(const std::string& value, const char* flag,
                         const std::string& command) {
  if (value.empty()) {
    throw std::invalid_argument("'" + command + "' needs " + flag);
  }
  return value;
}

struct GridSpec {
  double lo = 0.0;
  double hi = 0.0;
  int steps = 0;
};

GridSpec parse_grid(const std::string& text) {
  GridSpec g;
  int consumed = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%d%n", &g.lo, &g.hi, &g.steps, &consumed) != 3 ||
      consumed != static_cast<int>(text.size())) {
    throw std::invalid_argument("--grid expects LO:HI:STEPS, got '" + text + "'");
  }
  if (!std::isfinite(g.lo) || !std::isfinite(g.hi) || g.hi < g.lo || g.steps < 1) {
    throw std::invalid_argument("--grid needs finite LO <= HI and STEPS >= 1");
  }
  return g;
}

// Inclusive evenly spaced points; a single step collapses to LO.
std::vector<double> grid_points(const GridSpec& g) {
  std::vector<double> pts(static_cast<std::size_t>(g.steps));
  if (g.steps == 1) {
    pts[0] = g.lo;
    return pts;
  }
  for (int j = 0; j < g.steps; ++j) {
    pts[static_cast<std::size_t>(j)] = g.lo + (g.hi - g.lo) * j / (g.steps - 1);
  }
  pts.back() = g.hi;  // no accumulated rounding at the endpoint
  return pts;
}

// Writes the finished artifact to --out, or stdout when no path was given.
// Building the bytes up front keeps reruns trivially identical.
int emit(const std::string& out_path, const std::string& body) {
  if (out_path.empty()) {
    std::fwrite(body.data(), 1, body.size(), stdout);
    return kExitOk;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) {
    std::cerr << "scenopt: cannot open '" << out_path << "' for writing\n";
    return kExitIo;
  }
  file.write(body.data(), static_cast<std::streamsize>(body.size()));
  file.flush();
  if (!file) {
    std::cerr << "scenopt: write to '" << out_path << "' failed\n";
    return kExitIo;
  }
  return kExitOk;
}

// epsilon,phi_c,phi_a,phi rows.  Past the inclusion-exclusion family's
// validity edge (eps > 1/k) the last cell is left empty rather than faked.
std::string bounds_csv(int k, int N, const std::vector<double>& eps_grid) {
  const BoundSpec classic{BoundFamily::classic, k, N};
  const BoundSpec additive{BoundFamily::additive, k, N};
  const BoundSpec ie{BoundFamily::inclusion_exclusion, k, N};
  std::string body = "epsilon,phi_c,phi_a,phi\n";
  for (double eps : eps_grid) {
    body += g17(eps);
    body += ',';
    body += g17(evaluate_bound(eps, classic));
    body += ',';
    body += g17(evaluate_bound(eps, additive));
    body += ',';
    try {
      body += g17(evaluate_bound(eps, ie));
    } catch (const std::range_error&) {
    }
    body += '\n';
  }
  return body;
}

GridSpec default_eps_grid(int k) {
  return GridSpec{1.0 / (250.0 * k), 1.0 / k, 250};
}

int cmd_bounds_table(const RunConfig& cfg) {
  const int k = cfg.k >= 1 ? cfg.k : (cfg.d >= 1 ? cfg.d : 2);
  const int N = cfg.N >= 1 ? cfg.N : 100;
  const GridSpec grid = cfg.grid.empty() ? default_eps_grid(k) : parse_grid(cfg.grid);
  return emit(cfg.out, bounds_csv(k, N, grid_points(grid)));
}

int cmd_fig2(const RunConfig& cfg) {
  const int k = cfg.k >= 1 ? cfg.k : 8;
  const int N = cfg.N >= 1 ? cfg.N : 500;
  const GridSpec grid = cfg.grid.empty() ? default_eps_grid(k) : parse_grid(cfg.grid);
  return emit(cfg.out, bounds_csv(k, N, grid_points(grid)));
}

int cmd_fig4(const RunConfig& cfg) {
  const int N = cfg.N >= 1 ? cfg.N : 100;
  const GridSpec grid = cfg.grid.empty() ? GridSpec{0.01, 0.99, 99} : parse_grid(cfg.grid);
  std::string body = "beta,h_a,h,h_c\n";
  for (double beta : grid_points(grid)) {
    body += g17(beta);
    body += ',';
    body += g17(curve_h(beta, N, BoundFamily::additive).value);
    body += ',';
    body += g17(curve_h(beta, N, BoundFamily::inclusion_exclusion).value);
    body += ',';
    body += g17(curve_h(beta, N, BoundFamily::classic).value);
    body += '\n';
  }
  return emit(cfg.out, body);
}

int cmd_certify(const RunConfig& cfg) {
  const Problem problem = make_problem(require_name(cfg.problem, "--problem", cfg.command));
  const int N = require_positive(cfg.N, "--N", cfg.command);
  const double beta = require_real(cfg.beta, "--beta", cfg.command);
  const UlbCertificate cert =
      certify(problem.program, problem.metadata, N, beta, parse_family(cfg.family));
  if (cert.small_sample_warning) {
    std::cerr << "scenopt: warning: N < 10 d; the guarantee holds but the sample is thin\n";
  }
  return emit(cfg.out, to_key_value(cert));
}

bool circle_family(const std::string& name) { return name.rfind("circle", 0) == 0; }

int cmd_validate(const RunConfig& cfg) {
  const std::string name = require_name(cfg.problem, "--problem", cfg.command);
  const Problem problem = make_problem(name);
  const int N = require_positive(cfg.N, "--N", cfg.command);
  const int T = require_positive(cfg.T, "--T", cfg.command);
  const double beta = require_real(cfg.beta, "--beta", cfg.command);

  UlbCertificate cert;
  if (cfg.method == "h" || cfg.method == "h_a" || cfg.method == "h_c") {
    if (!circle_family(name)) {
      throw std::invalid_argument("method '" + cfg.method +
                                  "' is exact for the circle instances only");
    }
    const BoundFamily family = cfg.method == "h"     ? BoundFamily::inclusion_exclusion
                               : cfg.method == "h_a" ? BoundFamily::additive
                                                     : BoundFamily::classic;
    cert.method = UlbMethod::exact_example;
    cert.beta = beta;
    cert.alpha = curve_h(beta, N, family).value;
    cert.N = N;
    cert.d = problem.program.d;
  } else if (cfg.method == "certify") {
    cert = certify(problem.program, problem.metadata, N, beta, parse_family(cfg.family));
  } else {  // "null": the deliberately useless zero-margin certificate
    cert.method = UlbMethod::empirical;
    cert.beta = beta;
    cert.alpha = 0.0;
    cert.N = N;
    cert.d = problem.program.d;
  }

  const ScenarioSolver solver = solver_for(problem);
  const CoverageReport report = validate_certificate(problem, solver, cert, T, cfg.seed);

  std::string body;
  body += "problem=" + name + "\n";
  body += "method=" + cfg.method + "\n";
  body += "N=" + std::to_string(N) + "\n";
  body += "T=" + std::to_string(T) + "\n";
  body += "seed=" + std::to_string(cfg.seed) + "\n";
  body += "alpha=" + g17(cert.alpha) + "\n";
  body += "target=" + g17(report.target) + "\n";
  body += "achieved=" + g17(report.achieved) + "\n";
  body += "stderr=" + g17(report.stderr_est) + "\n";
  body += "trials=" + std::to_string(report.trials) + "\n";
  body += std::string("pass=") + (report.pass ? "true" : "false") + "\n";
  const int rc = emit(cfg.out, body);
  if (rc != kExitOk) return rc;
  return report.pass ? kExitOk : kExitValidation;
}

int cmd_tail(const RunConfig& cfg) {
  const std::string name = require_name(cfg.problem, "--problem", cfg.command);
  const Problem problem = make_problem(name);
  const int N = require_positive(cfg.N, "--N", cfg.command);
  const int T = require_positive(cfg.T, "--T", cfg.command);
  const ScenarioSolver solver = solver_for(problem);
  const TailEstimate tail = estimate_tail(problem, solver, N, T, cfg.seed);

  // g_values are sorted ascending, so gaps come out descending; flip once.
  std::vector<double> gaps(tail.g_values.size());
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    gaps[i] = tail.robust_value - tail.g_values[gaps.size() - 1 - i];
  }

  std::string summary;
  summary += "problem=" + name + "\n";
  summary += "N=" + std::to_string(N) + "\n";
  summary += "T=" + std::to_string(T) + "\n";
  summary += "seed=" + std::to_string(cfg.seed) + "\n";
  summary += "robust=" + g17(tail.robust_value) + "\n";
  summary += "gap_min=" + g17(gaps.front()) + "\n";
  summary += "gap_median=" + g17(gaps[(gaps.size() - 1) / 2]) + "\n";
  summary += "gap_max=" + g17(gaps.back()) + "\n";
  if (cfg.epsilon >= 0.0) {
    const double alpha_hat = empirical_optimal_ulb(tail, cfg.epsilon);
    summary += "epsilon=" + g17(cfg.epsilon) + "\n";
    summary += "alpha_hat=" + g17(alpha_hat) + "\n";
    summary += "coverage=" + g17(p_hat(tail, alpha_hat)) + "\n";
  }
  std::fwrite(summary.data(), 1, summary.size(), stdout);

  if (cfg.out.empty()) return kExitOk;
  std::string csv = "gap,probability\n";
  for (double gap : gaps) {
    csv += g17(gap);
    csv += ',';
    csv += g17(p_hat(tail, gap));
    csv += '\n';
  }
  return emit(cfg.out, csv);
}

int cmd_complexity(const RunConfig& cfg) {
  const std::string name = require_name(cfg.problem, "--problem", cfg.command);
  const Problem problem = make_problem(name);
  const int k_max = cfg.k >= 1 ? cfg.k : 4;
  const int trials = cfg.T >= 1 ? cfg.T : 100000;
  const double tol = cfg.epsilon >= 0.0 ? cfg.epsilon : 1e-3;
  const std::optional<int> level =
      complexity_probe(problem, solver_for(problem), k_max, trials, tol, cfg.seed);

  std::string body;
  body += "problem=" + name + "\n";
  body += "k_max=" + std::to_string(k_max) + "\n";
  body += "trials=" + std::to_string(trials) + "\n";
  body += "tol=" + g17(tol) + "\n";
  body += "seed=" + std::to_string(cfg.seed) + "\n";
  body += "complexity=" + (level ? std::to_string(*level) : std::string("none")) + "\n";
  const int rc = emit(cfg.out, body);
  if (rc != kExitOk) return rc;
  return level ? kExitOk : kExitValidation;
}

int dispatch(const RunConfig& cfg) {
  if (cfg.command == "bounds-table") return cmd_bounds_table(cfg);
  if (cfg.command == "fig2") return cmd_fig2(cfg);
  if (cfg.command == "fig4") return cmd_fig4(cfg);
  if (cfg.command == "certify") return cmd_certify(cfg);
  if (cfg.command == "validate") return cmd_validate(cfg);
  if (cfg.command == "tail") return cmd_tail(cfg);
  return cmd_complexity(cfg);
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{
      "scenopt: probability bounds, certificates, and Monte Carlo studies\n"
      "for scenario programs"};

  app.add_option("command", cfg.command, "one of the operations below")
      ->required()
      ->check(CLI::IsMember({"bounds-table", "fig2", "fig4", "certify", "validate",
                             "tail", "complexity"}));
  app.add_option("--problem", cfg.problem,
                 "instance name: circle, circle-relaxed, affine:<seed>");
  app.add_option("--k", cfg.k, "complexity level (bounds-table, fig2) or k_max (complexity)");
  app.add_option("--d", cfg.d, "decision dimension; bounds-table uses it for k when --k is absent");
  app.add_option("--N", cfg.N, "scenarios per sampled program");
  app.add_option("--T", cfg.T, "Monte Carlo trials (validate, tail, complexity)");
  app.add_option("--beta", cfg.beta, "confidence level in (0,1) (certify, validate)");
  app.add_option("--epsilon", cfg.epsilon,
                 "coverage level for tail's empirical margin, match tolerance for complexity");
  app.add_option("--grid", cfg.grid, "evaluation grid LO:HI:STEPS (bounds-table, fig2, fig4)");
  app.add_option("--family", cfg.family, "bound family for certificates")
      ->check(CLI::IsMember({"classic", "additive", "ie", "inclusion_exclusion"}));
  app.add_option("--method", cfg.method, "validate method")
      ->check(CLI::IsMember({"h", "h_a", "h_c", "certify", "null"}));
  app.add_option("--seed", cfg.seed, "master seed (env override: SCENOPT_SEED)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.add_option("--out", cfg.out, "write the command's artifact here instead of stdout");
  app.set_config("--config", "", "line-oriented key=value file; flags take precedence");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.footer(
      "examples:\n"
      "  scenopt fig2 --out fig2.csv\n"
      "  scenopt certify --problem circle-relaxed --N 500 --beta 0.01\n"
      "  scenopt validate --problem circle --method h --N 100 --T 2000 --beta 0.2\n"
      "  scenopt complexity --problem circle --k 4 --T 100000 --epsilon 1e-3");

  // The seed's environment override is spliced in ahead of the real flags:
  // anything on the command line overrides it (TakeLast), and its presence
  // blocks the config-file value, giving flag > env > config.
  std::vector<const char*> args;
  args.push_back(argv[0]);
  std::string env_seed;
  if (const char* s = std::getenv("SCENOPT_SEED")) {
    env_seed = std::string("--seed=") + s;
    args.push_back(env_seed.c_str());
  }
  for (int i = 1; i < argc; ++i) args.push_back(argv[i]);

  try {
    app.parse(static_cast<int>(args.size()), args.data());
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::FileError& e) {
    std::cerr << "scenopt: " << e.what() << '\n';
    return kExitIo;
  } catch (const CLI::ParseError& e) {
    std::cerr << "scenopt: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    return dispatch(cfg);
  } catch (const assumption_error& e) {
    std::cerr << "scenopt: " << e.what() << '\n';
    return kExitAssumption;
  } catch (const std::exception& e) {
    std::cerr << "scenopt: " << e.what() << '\n';
    return kExitUsage;
  }
}
