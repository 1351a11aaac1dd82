// qmetro: intrinsic Cramer-Rao bounds for SU(n) channels.
//
//   qmetro bound PROBE.json CHART.json --theta=a,b,c [--weight intrinsic|identity|W.json]
//   qmetro scan --n 2 --nmin 1 --nmax 64 [--states ghz,floor,optimized] [--out f.csv] [--plot f.svg]
//   qmetro check PROBE.json
//   qmetro optimize --n 3 --N 9 --seed 7 [CONFIG.json]
//
// Exit codes: 0 success, 1 usage/parse, 2 singular information, 3 non-convergence.

#include "qmetro/qmetro.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace qmetro;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitSingular = 2;
constexpr int kExitNotConverged = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

RealVector parse_theta(const std::string& text) {
  std::vector<Real> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--theta: cannot parse '" + item + "'");
    }
  }
  return Eigen::Map<RealVector>(values.data(), static_cast<Index>(values.size()));
}

int report_singular(const std::string& message, Index rank, const Json& flags) {
  Json diag = {{"error", message}, {"rank", rank}, {"flags", flags}};
  std::cerr << diag.dump(2) << '\n';
  return kExitSingular;
}

int run_bound(const std::string& probe_path, const std::string& chart_path, const std::string& theta_text,
              const std::string& weight, bool pinv, Index cap) {
  const ProbeState state = make_probe(probe_spec_from_json(read_json_file(probe_path)), cap);
  BoundRequest request;
  request.chart = parametrization_from_json(read_json_file(chart_path));
  request.theta = theta_text.empty() ? RealVector::Zero(request.chart->parameter_count()) : parse_theta(theta_text);
  request.pseudo_inverse = pinv;
  if (weight == "intrinsic") {
    request.weight = WeightKind::intrinsic;
  } else if (weight == "identity") {
    request.weight = WeightKind::identity;
  } else {
    request.weight = WeightKind::custom;
    request.custom_weight = matrix_from_json(read_json_file(weight));
  }

  const BoundReport report = bound_report(state, request);
  const Json out = to_json(report);
  if (!pinv && (report.flags.covariance_singular || report.flags.qfim_singular)) {
    std::cout << out.dump(2) << '\n';
    const bool cov = report.flags.covariance_singular;
    return report_singular(cov ? "generator covariance is singular: not all parameters are estimable"
                               : "quantum Fisher information matrix is singular",
                           cov ? report.covariance_rank : report.qfim_rank.value_or(0), out["flags"]);
  }
  std::cout << out.dump(2) << '\n';
  return kExitOk;
}

int run_check(const std::string& probe_path, Index cap) {
  const ProbeState state = make_probe(probe_spec_from_json(read_json_file(probe_path)), cap);
  const UnpolarizedReport unpol = unpolarized_report(state);
  const RealMatrix cov = covariance(state).covariance;
  const Index d = state.rep().algebra_dim();
  GeneratorMatrix origin{-RealMatrix::Identity(d, d), RealVector::Zero(d), 1.0};

  Json out = {
      {"first_order", unpol.first_order},
      {"second_order", unpol.second_order},
      {"deviation", round_decimal(unpol.deviation)},
      {"intrinsic_bound", nullptr},
      {"floor", round_decimal(intrinsic_floor(state.rep()))},
      {"saturable", saturation_check(state, origin)},
  };
  if (!spectrum_info(cov).singular(kDefaultConditionThreshold)) out["intrinsic_bound"] = round_decimal(intrinsic_bound(cov));
  std::cout << out.dump(2) << '\n';
  return kExitOk;
}

int run_optimize(int n, int particles, const std::string& config_path, std::uint64_t seed, int jobs, Index cap) {
  OptimizerConfig config;
  if (!config_path.empty()) config = optimizer_config_from_json(read_json_file(config_path));
  config.seed = seed;
  if (jobs > 0) config.jobs = jobs;
  auto rep = make_symmetric_rep(n, particles, cap);
  const OptimizationResult result = optimize_probe(rep, config);

  Json amplitudes = Json::array();
  for (Index i = 0; i < result.state.vector().size(); ++i) {
    const Complex a = result.state.vector()(i);
    amplitudes.push_back({round_decimal(a.real()), round_decimal(a.imag())});
  }
  const Json out = {
      {"n", n},
      {"N", particles},
      {"amplitudes", amplitudes},
      {"bound_achieved", round_decimal(result.bound_achieved)},
      {"floor", round_decimal(result.floor)},
      {"converged", result.converged},
  };
  std::cout << out.dump(2) << '\n';
  return result.converged ? kExitOk : kExitNotConverged;
}

int run_scan_cmd(ScanOptions options, const std::string& states, const std::string& out_path,
                 const std::string& plot_path, bool have_seed, std::uint64_t seed, const std::string& config_path) {
  options.ghz = options.floor = options.optimized = false;
  std::stringstream ss(states);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "ghz") {
      options.ghz = true;
    } else if (item == "floor") {
      options.floor = true;
    } else if (item == "optimized") {
      options.optimized = true;
    } else {
      throw UsageError("--states: unknown series '" + item + "'");
    }
  }
  if (options.optimized) {
    if (!have_seed) throw UsageError("--seed is required when --states includes optimized");
    if (!config_path.empty()) options.optimizer = optimizer_config_from_json(read_json_file(config_path));
    options.optimizer.seed = seed;
  }
  const std::vector<ScanRow> rows = run_scan(options);

  if (out_path.empty() || out_path == "-") {
    write_scan_csv(std::cout, rows);
  } else {
    std::ofstream out(out_path);
    if (!out) throw UsageError("cannot write '" + out_path + "'");
    write_scan_csv(out, rows);
  }
  if (!plot_path.empty()) {
    std::ofstream svg(plot_path);
    if (!svg) throw UsageError("cannot write '" + plot_path + "'");
    write_scan_svg(svg, rows);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Intrinsic quantum Cramer-Rao bounds for SU(n) channels"};
  app.require_subcommand(1);

  Index cap = kDefaultDimensionCap;
  int jobs = 0;
  std::uint64_t seed = 0;

  auto* bound = app.add_subcommand("bound", "Bound report for a probe under a parametrized channel");
  std::string probe_path, chart_path, theta_text, weight = "intrinsic";
  bool pinv = false;
  bound->add_option("probe", probe_path, "Probe spec JSON")->required();
  bound->add_option("chart", chart_path, "Parametrization JSON")->required();
  bound->add_option("--theta", theta_text, "Comma-separated parameter point (default: origin)");
  bound->add_option("--weight", weight, "intrinsic, identity, or a JSON matrix file");
  bound->add_flag("--pseudo-inverse", pinv, "Use pseudo-inverses for singular matrices");
  bound->add_option("--cap", cap, "Hilbert-space dimension cap");

  auto* scan = app.add_subcommand("scan", "Compare GHZ states with the Heisenberg floor across particle numbers");
  ScanOptions scan_options;
  std::string states = "ghz,floor", out_path, plot_path, scan_config;
  scan->add_option("--n", scan_options.n, "Number of modes (SU(n))")->required();
  scan->add_option("--nmin", scan_options.nmin, "Smallest particle number")->required();
  scan->add_option("--nmax", scan_options.nmax, "Largest particle number")->required();
  scan->add_option("--states", states, "Comma-separated subset of ghz,floor,optimized");
  scan->add_option("--out", out_path, "CSV output path (default: stdout)");
  scan->add_option("--plot", plot_path, "SVG output path");
  auto* scan_seed = scan->add_option("--seed", seed, "Optimizer seed (required with optimized)");
  scan->add_option("--config", scan_config, "Optimizer config JSON");
  scan->add_option("--jobs", jobs, "Rows evaluated concurrently");
  scan->add_option("--cap", cap, "Hilbert-space dimension cap");

  auto* check = app.add_subcommand("check", "Unpolarization and saturation certificate for a probe");
  check->add_option("probe", probe_path, "Probe spec JSON")->required();
  check->add_option("--cap", cap, "Hilbert-space dimension cap");

  auto* optimize = app.add_subcommand("optimize", "Search for the probe minimizing the intrinsic bound");
  int opt_n = 2, opt_particles = 1;
  std::string opt_config;
  optimize->add_option("--n", opt_n, "Number of modes (SU(n))")->required();
  optimize->add_option("--N,--particles", opt_particles, "Particle number")->required();
  optimize->add_option("config", opt_config, "Optimizer config JSON");
  optimize->add_option("--seed", seed, "Random seed")->required();
  optimize->add_option("--jobs", jobs, "Restarts evaluated concurrently");
  optimize->add_option("--cap", cap, "Hilbert-space dimension cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*bound) return run_bound(probe_path, chart_path, theta_text, weight, pinv, cap);
    if (*check) return run_check(probe_path, cap);
    if (*optimize) return run_optimize(opt_n, opt_particles, opt_config, seed, jobs, cap);
    if (*scan) {
      scan_options.cap = cap;
      if (jobs > 0) scan_options.jobs = jobs;
      return run_scan_cmd(scan_options, states, out_path, plot_path, scan_seed->count() > 0, seed, scan_config);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::singular_information:
      case ErrorCode::not_estimable:
      case ErrorCode::optimization_failed:
        return report_singular(e.what(), e.rank(), Json{{"code", to_string(e.code())}});
      default:
        std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
        return kExitUsage;
    }
  }
  return kExitUsage;
}
