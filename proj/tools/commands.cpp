#include "commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <utility>

#include "sixlasso/error.hpp"
#include "sixlasso/experiments.hpp"
#include "sixlasso/metrics.hpp"
#include "sixlasso/model.hpp"
#include "sixlasso/report.hpp"
#include "sixlasso/solver.hpp"

namespace sixlasso::cli {

namespace {

namespace fs = std::filesystem;

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::InvalidSparsity:
    case ErrorCode::NegativeRadius:
    case ErrorCode::DimensionTooLarge:
      return kInputError;
    default:
      return kDomainError;
  }
}

LinkKind require_link(const std::string& tag) {
  const auto kind = parse_link_kind(tag);
  if (!kind) throw report::ParseError("unknown link '" + tag + "'");
  return *kind;
}

/// Fails early, before any computation, if `path` cannot be created.
void require_writable(const fs::path& path) {
  fs::path probe = path;
  probe += ".probe";
  {
    std::ofstream out(probe);
    if (!out) throw report::WriteError("cannot write '" + path.string() + "'");
  }
  std::error_code ec;
  fs::remove(probe, ec);
}

fs::path summary_path_for(const fs::path& records) {
  fs::path p = records;
  if (p.extension() == ".csv") p.replace_extension();
  p += ".summary.csv";
  return p;
}

// --- lambda -------------------------------------------------------------

struct LambdaArgs {
  std::string link = "logistic";
  std::string method = "quadrature";
  std::optional<std::size_t> budget;
  Seed seed = 0;
};

int cmd_lambda(const LambdaArgs& args, std::ostream& out) {
  const LinkFunction link(require_link(args.link));
  LambdaMethod method = LambdaMethod::Quadrature;
  if (args.method == "mc") {
    method = LambdaMethod::MonteCarlo;
  } else if (args.method != "quadrature") {
    throw report::ParseError("method must be quadrature or mc, got '" + args.method + "'");
  }
  const std::size_t budget =
      args.budget.value_or(method == LambdaMethod::Quadrature ? kDefaultQuadratureNodes : 1'000'000);
  const LambdaEstimate est = compute_lambda(link, method, budget, args.seed);
  out << "lambda=" << report::format_real(est.value) << '\n';
  if (method == LambdaMethod::MonteCarlo) {
    out << "stderr=" << report::format_real(est.std_error) << '\n';
  }
  return kSuccess;
}

// --- fit ----------------------------------------------------------------

struct FitArgs {
  std::string design;
  std::string labels;
  double radius = 0.0;
  double tol = SolverConfig{}.tol;
  std::size_t max_iter = SolverConfig{}.max_iter;
  std::string step_rule = "fixed";
  std::string truth;
  std::string out;
};

Vector read_signal_file(const fs::path& path, Eigen::Index p) {
  std::ifstream in(path);
  if (!in) throw report::ParseError("cannot open '" + path.string() + "'");
  std::string line;
  std::getline(in, line);
  if (line.rfind("index,value", 0) != 0) {
    throw report::ParseError("signal file must start with an index,value header", 1);
  }
  Vector beta = Vector::Zero(p);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw report::ParseError("expected index,value", line_no);
    std::size_t consumed = 0;
    long long index = -1;
    double value = 0.0;
    try {
      index = std::stoll(line.substr(0, comma), &consumed);
      value = std::stod(line.substr(comma + 1));
    } catch (const std::exception&) {
      throw report::ParseError("non-numeric entry", line_no);
    }
    if (index < 0 || index >= p) {
      throw report::ParseError("index " + std::to_string(index) + " outside [0, " +
                                   std::to_string(p) + ")",
                               line_no, 1);
    }
    beta(static_cast<Eigen::Index>(index)) = value;
  }
  return beta;
}

int cmd_fit(const FitArgs& args, std::ostream& out) {
  const Matrix X = report::read_matrix_csv(fs::path(args.design));
  const Vector y = report::read_vector_csv(fs::path(args.labels));
  if (y.size() != X.rows()) {
    throw report::ParseError("design has " + std::to_string(X.rows()) +
                             " rows but labels file has " + std::to_string(y.size()) +
                             " values");
  }

  SolverConfig config;
  config.tol = args.tol;
  config.max_iter = args.max_iter;
  if (args.step_rule == "backtracking") {
    config.step_rule = StepRule::Backtracking;
  } else if (args.step_rule != "fixed") {
    throw report::ParseError("step rule must be fixed or backtracking");
  }
  if (!args.out.empty()) require_writable(args.out);

  const FitResult fit = fit_lasso(X, y, args.radius, config);

  std::vector<std::pair<std::string, std::string>> doc{
      {"n", std::to_string(X.rows())},
      {"p", std::to_string(X.cols())},
      {"radius", report::format_real(fit.radius)},
      {"objective", report::format_real(fit.objective)},
      {"iterations", std::to_string(fit.iterations)},
      {"converged", fit.converged ? "true" : "false"},
      {"residual", report::format_real(fit.residual)},
      {"l1_norm", report::format_real(fit.l1_norm)},
      {"l2_norm", report::format_real(fit.l2_norm)},
  };
  if (!args.truth.empty()) {
    const Vector truth = read_signal_file(args.truth, X.cols());
    double err = 2.0;
    try {
      err = direction_error(fit.beta_hat, truth);
    } catch (const Error&) {
      // Zero fit: scored as the worst direction.
    }
    doc.emplace_back("direction_error", report::format_real(err));
  }
  std::string beta;
  for (Eigen::Index j = 0; j < fit.beta_hat.size(); ++j) {
    beta += (j ? "," : "") + report::format_real(fit.beta_hat(j));
  }
  doc.emplace_back("beta", beta);

  std::ostringstream text;
  report::write_key_values(text, doc);
  if (args.out.empty()) {
    out << text.str();
  } else {
    report::write_file_atomic(args.out, text.str());
  }
  return kSuccess;
}

// --- simulate -----------------------------------------------------------

struct SimulateArgs {
  std::size_t p = 0;
  std::size_t s = 0;
  std::size_t n = 0;
  std::string link = "logistic";
  std::string signal_mode = "random";
  Seed seed = 0;
  std::string out;
};

int cmd_simulate(const SimulateArgs& args, std::ostream& out) {
  const LinkFunction link(require_link(args.link));
  SignalMode mode = SignalMode::RandomMagnitude;
  if (args.signal_mode == "equal") {
    mode = SignalMode::EqualMagnitude;
  } else if (args.signal_mode != "random") {
    throw report::ParseError("signal mode must be equal or random");
  }
  if (args.n == 0) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");

  const fs::path prefix(args.out);
  const fs::path design_path = fs::path(prefix.string() + ".design.csv");
  const fs::path labels_path = fs::path(prefix.string() + ".labels.csv");
  const fs::path signal_path = fs::path(prefix.string() + ".signal.csv");
  require_writable(design_path);

  const TrueSignal signal = make_signal(args.p, args.s, mode, derive_seed(args.seed, 0));
  const Dataset data = generate_dataset(signal, args.n, link, derive_seed(args.seed, 1));

  std::ostringstream design;
  report::write_matrix_csv(design, data.X);
  std::ostringstream labels;
  report::write_matrix_csv(labels, data.y);
  std::ostringstream truth;
  truth << "index,value\n";
  for (const auto j : signal.support) {
    truth << j << ',' << report::format_real(signal.beta(static_cast<Eigen::Index>(j))) << '\n';
  }
  report::write_file_atomic(design_path, design.str());
  report::write_file_atomic(labels_path, labels.str());
  report::write_file_atomic(signal_path, truth.str());

  out << "design=" << design_path.string() << '\n'
      << "labels=" << labels_path.string() << '\n'
      << "signal=" << signal_path.string() << '\n';
  return kSuccess;
}

// --- sweep --------------------------------------------------------------

struct SweepArgs {
  std::string config;
  report::KeyValues overrides;
  std::string out;
  std::string out_svg;
  std::string out_summary;
};

int cmd_sweep(const SweepArgs& args, std::ostream& out) {
  report::KeyValues kv;
  if (!args.config.empty()) kv = report::read_key_values(fs::path(args.config));
  for (const auto& [k, v] : args.overrides) kv[k] = v;

  const auto pick = [&](const std::string& flag, const char* key) {
    if (!flag.empty()) return flag;
    const auto it = kv.find(key);
    return it == kv.end() ? std::string() : it->second;
  };
  const std::string records_path = pick(args.out, "out");
  const std::string svg_path = pick(args.out_svg, "out_svg");
  std::string summary_path = pick(args.out_summary, "out_summary");
  if (records_path.empty()) throw report::ParseError("sweep needs an output path (--out)");
  if (summary_path.empty()) summary_path = summary_path_for(records_path).string();

  SweepSpec spec;
  report::apply_sweep_config(kv, spec);
  spec.validate();

  require_writable(records_path);
  require_writable(summary_path);
  if (!svg_path.empty()) require_writable(svg_path);

  const auto records = run_sweep(spec, threads_from_environment());
  const auto summary = summarize(records);

  std::ostringstream records_csv;
  report::write_records_csv(records_csv, records);
  report::write_file_atomic(records_path, records_csv.str());
  std::ostringstream summary_csv;
  report::write_summary_csv(summary_csv, summary);
  report::write_file_atomic(summary_path, summary_csv.str());
  if (!svg_path.empty()) {
    std::ostringstream svg;
    report::write_direction_error_svg(svg, summary);
    report::write_file_atomic(svg_path, svg.str());
  }

  out << "trials=" << records.size() << '\n' << "records=" << records_path << '\n'
      << "summary=" << summary_path << '\n';
  if (!svg_path.empty()) out << "svg=" << svg_path << '\n';
  return kSuccess;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Vanilla l1-constrained least squares for sparse single-index classification"};
  app.require_subcommand(1);

  LambdaArgs lambda_args;
  auto* lambda = app.add_subcommand("lambda", "Compute the link constant E[F(Z) Z]");
  lambda->add_option("--link", lambda_args.link, "linear|logistic|probit|sign");
  lambda->add_option("--method", lambda_args.method, "quadrature|mc");
  lambda->add_option("--budget", lambda_args.budget, "Quadrature nodes or Monte Carlo samples");
  lambda->add_option("--seed", lambda_args.seed, "Monte Carlo seed");

  FitArgs fit_args;
  auto* fit = app.add_subcommand("fit", "Fit the l1-constrained least squares estimator");
  fit->add_option("--design", fit_args.design, "CSV of n rows by p columns")->required();
  fit->add_option("--labels", fit_args.labels, "CSV of n responses")->required();
  fit->add_option("--radius", fit_args.radius, "l1 constraint radius")->required();
  fit->add_option("--tol", fit_args.tol, "Relative objective change threshold");
  fit->add_option("--max-iter", fit_args.max_iter, "Iteration cap");
  fit->add_option("--step-rule", fit_args.step_rule, "fixed|backtracking");
  fit->add_option("--truth", fit_args.truth, "Signal file from `simulate`; adds direction_error");
  fit->add_option("--out", fit_args.out, "Result document (default: stdout)");

  SimulateArgs sim_args;
  auto* simulate = app.add_subcommand("simulate", "Generate a synthetic single-index dataset");
  simulate->add_option("--p", sim_args.p, "Dimension")->required();
  simulate->add_option("--s", sim_args.s, "Support size")->required();
  simulate->add_option("--n", sim_args.n, "Sample count")->required();
  simulate->add_option("--link", sim_args.link, "linear|logistic|probit|sign");
  simulate->add_option("--signal-mode", sim_args.signal_mode, "equal|random");
  simulate->add_option("--seed", sim_args.seed, "Seed");
  simulate->add_option("--out", sim_args.out, "Output prefix")->required();

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Run a Monte Carlo sweep over n");
  sweep->add_option("--config", sweep_args.config, "key=value configuration file");
  sweep->add_option("--out", sweep_args.out, "Records CSV");
  sweep->add_option("--out-svg", sweep_args.out_svg, "SVG chart of median direction error");
  sweep->add_option("--out-summary", sweep_args.out_summary, "Summary CSV");
  // Sweep flags are collected as strings and overlaid on the config file.
  const std::vector<std::pair<std::string, std::string>> sweep_flags{
      {"--p", "p"},           {"--s", "s"},
      {"--n", "n"},           {"--n-grid", "n_grid"},
      {"--link", "link"},     {"--radius-rule", "radius_rule"},
      {"--radius", "radius"}, {"--reps", "reps"},
      {"--seed", "seed"},     {"--tol", "tol"},
      {"--max-iter", "max_iter"}, {"--estimators", "estimators"},
      {"--test-n", "test_n"}, {"--signal-mode", "signal_mode"},
      {"--step-rule", "step_rule"},
  };
  std::vector<std::string> flag_values(sweep_flags.size());
  std::vector<CLI::Option*> flag_options;
  for (std::size_t i = 0; i < sweep_flags.size(); ++i) {
    flag_options.push_back(sweep->add_option(sweep_flags[i].first, flag_values[i],
                                             "Overrides config key " + sweep_flags[i].second));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  try {
    if (*lambda) return cmd_lambda(lambda_args, out);
    if (*fit) return cmd_fit(fit_args, out);
    if (*simulate) return cmd_simulate(sim_args, out);
    if (*sweep) {
      for (std::size_t i = 0; i < sweep_flags.size(); ++i) {
        if (flag_options[i]->count() > 0) sweep_args.overrides[sweep_flags[i].second] = flag_values[i];
      }
      return cmd_sweep(sweep_args, out);
    }
  } catch (const report::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const report::WriteError& e) {
    err << "error: " << e.what() << '\n';
    return kOutputError;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return exit_code_for(e);
  }
  return kInputError;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.emplace_back("sixlasso");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : storage) argv.push_back(a.data());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace sixlasso::cli
