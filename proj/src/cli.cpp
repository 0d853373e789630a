#include "sggn/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <Eigen/Cholesky>
#include <json.hpp>

#include "sggn/convex.hpp"
#include "sggn/dataset_io.hpp"
#include "sggn/errors.hpp"
#include "sggn/network.hpp"
#include "sggn/parallel.hpp"
#include "sggn/regression.hpp"
#include "sggn/rng.hpp"
#include "sggn/trace_io.hpp"
#include "sggn/trainer.hpp"

namespace sggn {

namespace {

using nlohmann::json;

std::int64_t now_ns() {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

struct OutputOptions {
  std::string out = "-";
  std::string csv;
  int threads = 0;  // 0 -> env SKETCHYGGN_THREADS, else 1
};

void add_output_options(CLI::App* cmd, OutputOptions* opts) {
  cmd->add_option("--out", opts->out, "Trace output path, '-' for stdout")->capture_default_str();
  cmd->add_option("--csv", opts->csv, "Also write per-iteration CSV to this path");
  cmd->add_option("--threads", opts->threads,
                  "Worker threads (default: SKETCHYGGN_THREADS env var, else 1)");
}

void apply_threads(const OutputOptions& opts) {
  int threads = opts.threads;
  if (threads <= 0) {
    if (const char* env = std::getenv("SKETCHYGGN_THREADS")) {
      threads = std::atoi(env);
    }
  }
  set_threads(threads > 0 ? threads : 1);
}

int emit(const TraceWriter& trace, const OutputOptions& opts, int code) {
  if (opts.out == "-") {
    trace.write(std::cout);
  } else {
    trace.write_file(opts.out);
  }
  if (!opts.csv.empty()) trace.write_csv_file(opts.csv);
  return code;
}

Eigen::MatrixXd gaussian_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  Eigen::MatrixXd m(rows, cols);
  SplitMix64 rng(seed);
  const Eigen::Index total = rows * cols;
  for (Eigen::Index idx = 0; idx < total; idx += 2) {
    double z0, z1;
    rng.gauss2(z0, z1);
    m(idx % rows, idx / rows) = z0;
    if (idx + 1 < total) m((idx + 1) % rows, (idx + 1) / rows) = z1;
  }
  return m;
}

Eigen::VectorXd gaussian_vector(Eigen::Index n, std::uint64_t seed) {
  return gaussian_matrix(n, 1, seed).col(0);
}

// ---------------------------------------------------------------- regress --

struct RegressArgs {
  Eigen::Index n = 4096, k = 64;
  double eps = 1e-8;
  Eigen::Index rows = 0;
  std::uint64_t seed = 0;
  std::string method = "richardson";
  OutputOptions out;
};

int run_regress(const RegressArgs& args) {
  apply_threads(args.out);
  TraceWriter trace;
  trace.config("regress", json{{"n", args.n},
                               {"k", args.k},
                               {"eps", args.eps},
                               {"rows", args.rows},
                               {"seed", args.seed},
                               {"method", args.method},
                               {"threads", thread_count()}});

  const DenseOperator a(gaussian_matrix(args.n, args.k, derive_seed(args.seed, "matrix")));
  const Eigen::VectorXd y = gaussian_vector(args.k, derive_seed(args.seed, "rhs"));

  RegressionConfig cfg;
  cfg.eps = args.eps;
  cfg.sketch.rows = args.rows;
  cfg.sketch.seed = derive_seed(args.seed, "sketch");
  cfg.method = args.method == "cg" ? IterationMethod::kConjugateGradient
                                   : IterationMethod::kRichardson;
  try {
    const RegressionReport rep = fast_regression(a, y, cfg);
    for (std::size_t i = 0; i < rep.residual_history.size(); ++i) {
      const std::int64_t ns = i < rep.iteration_ns.size() ? rep.iteration_ns[i] : 0;
      trace.iteration(static_cast<int>(i), rep.residual_history[i], 0, ns);
    }
    trace.summary(json{{"success", true},
                       {"iterations", rep.iterations},
                       {"attempts", rep.attempts},
                       {"final_residual", rep.residual_history.back()},
                       {"rhs_norm", y.norm()},
                       {"kappa_hat", rep.condition_estimate},
                       {"sketch_ns", rep.sketch_ns},
                       {"precondition_ns", rep.precondition_ns},
                       {"iterate_ns", rep.iterate_ns}});
    return emit(trace, args.out, 0);
  } catch (const SolveError& e) {
    trace.summary(json{{"success", false}, {"error", e.what()}});
    return emit(trace, args.out, 1);
  }
}

// ------------------------------------------------------------------ train --

struct TrainArgs {
  Eigen::Index n = 16, d = 4, m = 8192;
  int iters = 20;
  double eps = 1e-8;
  std::uint64_t seed = 0;
  std::string solver = "fast";
  std::string lambda_source = "gram";
  std::string label_mode = "teacher";
  std::string data_path;
  bool normalize = false;
  Eigen::Index sketch_rows = 0;
  double eps0 = 0.0;
  bool track_gram = false;
  OutputOptions out;
};

int run_train(const TrainArgs& args) {
  apply_threads(args.out);
  TraceWriter trace;
  trace.config("train", json{{"n", args.n},
                             {"d", args.d},
                             {"m", args.m},
                             {"iters", args.iters},
                             {"eps", args.eps},
                             {"seed", args.seed},
                             {"solver", args.solver},
                             {"lambda_source", args.lambda_source},
                             {"label_mode", args.label_mode},
                             {"data", args.data_path},
                             {"normalize", args.normalize},
                             {"sketch_rows", args.sketch_rows},
                             {"eps0", args.eps0},
                             {"threads", thread_count()}});

  LabelMode mode = LabelMode::kTeacher;
  if (args.label_mode == "signs") mode = LabelMode::kSigns;
  else if (args.label_mode == "zeros") mode = LabelMode::kZeros;
  else if (args.label_mode != "teacher") throw ConfigError("unknown label mode");

  const Dataset data = args.data_path.empty()
                           ? generate_dataset(args.n, args.d, derive_seed(args.seed, "data"), mode)
                           : load_dataset(args.data_path, args.normalize);

  NetworkState net = init_network(args.m, data.d(), derive_seed(args.seed, "init"));

  TrainConfig cfg;
  cfg.max_outer_iters = args.iters;
  cfg.target_residual = args.eps;
  cfg.seed = args.seed;
  cfg.track_gram_eigen = args.track_gram;
  cfg.inner.sketch.rows = args.sketch_rows;
  if (args.eps0 > 0.0) cfg.eps0_override = args.eps0;
  if (args.solver == "fast") cfg.solver = InnerSolver::kFast;
  else if (args.solver == "exact") cfg.solver = InnerSolver::kExact;
  else if (args.solver == "cg") cfg.solver = InnerSolver::kCg;
  else throw ConfigError("unknown solver '" + args.solver + "'");
  if (args.lambda_source == "gram") cfg.lambda_source = LambdaSource::kGramEigensolve;
  else if (args.lambda_source == "kernel-cf") cfg.lambda_source = LambdaSource::kKernelClosedForm;
  else if (args.lambda_source == "kernel-mc") cfg.lambda_source = LambdaSource::kKernelMonteCarlo;
  else throw ConfigError("unknown lambda source '" + args.lambda_source + "'");

  try {
    const TrainTrace result = train_gauss_newton(net, data, cfg);
    for (std::size_t t = 0; t < result.iterations.size(); ++t) {
      const TrainIteration& it = result.iterations[t];
      const std::int64_t total =
          it.jacobian_ns + it.sketch_ns + it.precondition_ns + it.iterate_ns + it.update_ns;
      json extra{{"phase_ns",
                  json{{"jacobian", it.jacobian_ns},
                       {"sketch", it.sketch_ns},
                       {"precondition", it.precondition_ns},
                       {"iterate", it.iterate_ns},
                       {"update", it.update_ns}}},
                 {"max_weight_move", it.max_weight_move},
                 {"inner_residual", it.inner_residual}};
      if (std::isfinite(it.gram_min_eigen)) extra["gram_min_eigen"] = it.gram_min_eigen;
      trace.iteration(static_cast<int>(t), it.residual, it.inner_iterations, total,
                      std::move(extra));
    }
    trace.summary(json{{"success", result.success},
                       {"diverged", result.diverged},
                       {"failure", result.failure},
                       {"iterations", result.iterations.size()},
                       {"final_residual", result.final_residual},
                       {"lambda_hat", result.lambda_hat},
                       {"eps0", result.eps0}});
    return emit(trace, args.out, result.success ? 0 : 1);
  } catch (const SolveError& e) {
    trace.summary(json{{"success", false}, {"error", e.what()}});
    return emit(trace, args.out, 1);
  }
}

// ----------------------------------------------------------------- newton --

struct NewtonArgs {
  std::string problem = "logistic";
  Eigen::Index q = 1000, p = 20;
  int iters = 30;
  double kappa = 0.0;
  double grad_tol = 0.0;
  std::uint64_t seed = 0;
  OutputOptions out;
};

int run_newton(const NewtonArgs& args) {
  apply_threads(args.out);
  TraceWriter trace;
  trace.config("newton", json{{"problem", args.problem},
                              {"q", args.q},
                              {"p", args.p},
                              {"iters", args.iters},
                              {"kappa", args.kappa},
                              {"grad_tol", args.grad_tol},
                              {"seed", args.seed},
                              {"threads", thread_count()}});

  std::unique_ptr<ConvexOracle> oracle;
  if (args.problem == "quadratic") {
    Eigen::MatrixXd a = gaussian_matrix(args.q, args.p, derive_seed(args.seed, "matrix"));
    Eigen::VectorXd b = gaussian_vector(args.q, derive_seed(args.seed, "rhs"));
    oracle = std::make_unique<QuadraticOracle>(std::move(a), std::move(b));
  } else if (args.problem == "logistic") {
    GLMProblem prob;
    prob.A = gaussian_matrix(args.q, args.p, derive_seed(args.seed, "matrix"));
    Eigen::VectorXd planted = gaussian_vector(args.p, derive_seed(args.seed, "planted"));
    planted.normalize();
    const Eigen::VectorXd z = prob.A * planted;
    prob.labels.resize(args.q);
    SplitMix64 rng(derive_seed(args.seed, "labels"));
    for (Eigen::Index i = 0; i < args.q; ++i) {
      const double pr = 1.0 / (1.0 + std::exp(-z[i]));
      prob.labels[i] = rng.unit() < pr ? 1.0 : 0.0;
    }
    prob.link = std::make_shared<LogisticLink>();
    oracle = std::make_unique<GlmOracle>(std::move(prob));
  } else {
    throw ConfigError("unknown problem '" + args.problem + "'");
  }

  NewtonOptions opts;
  opts.seed = derive_seed(args.seed, "solver");
  opts.grad_tol = args.grad_tol;
  if (args.p <= 512) {
    NewtonOptions ref_opts;
    ref_opts.grad_tol = 1e-14;
    opts.x_ref = exact_newton(*oracle, Eigen::VectorXd::Zero(args.p), 100, ref_opts).x;
  }

  try {
    const NewtonTrace result =
        fast_newton(*oracle, Eigen::VectorXd::Zero(args.p), args.iters, args.kappa, opts);
    for (std::size_t t = 0; t < result.iterations.size(); ++t) {
      const NewtonIteration& it = result.iterations[t];
      json extra{{"inner_residual", it.inner_residual}};
      if (std::isfinite(it.x_error)) extra["x_error"] = it.x_error;
      trace.iteration(static_cast<int>(t), it.grad_norm, it.inner_iterations, it.step_ns,
                      std::move(extra));
    }
    json summary{{"success", true},
                 {"final_grad_norm", result.final_grad_norm},
                 {"kappa_used", result.kappa_used},
                 {"iterations", result.iterations.size() - 1}};
    if (opts.x_ref.has_value()) summary["final_x_error"] = (result.x - *opts.x_ref).norm();
    trace.summary(std::move(summary));
    return emit(trace, args.out, 0);
  } catch (const SolveError& e) {
    trace.summary(json{{"success", false}, {"error", e.what()}});
    return emit(trace, args.out, 1);
  }
}

// -------------------------------------------------------------------- ntk --

struct NtkArgs {
  Eigen::Index n = 8, d = 4;
  std::string method = "closed-form";
  Eigen::Index samples = 1000000;
  std::uint64_t seed = 0;
  OutputOptions out;
};

int run_ntk(const NtkArgs& args) {
  apply_threads(args.out);
  TraceWriter trace;
  trace.config("ntk", json{{"n", args.n},
                           {"d", args.d},
                           {"method", args.method},
                           {"samples", args.samples},
                           {"seed", args.seed},
                           {"threads", thread_count()}});

  const Dataset data =
      generate_dataset(args.n, args.d, derive_seed(args.seed, "data"), LabelMode::kZeros);
  const KernelMethod method = args.method == "monte-carlo" ? KernelMethod::kMonteCarlo
                                                           : KernelMethod::kClosedForm;
  if (args.method != "monte-carlo" && args.method != "closed-form") {
    throw ConfigError("unknown kernel method '" + args.method + "'");
  }
  const KernelEstimate est =
      ntk_kernel(data, method, args.samples, derive_seed(args.seed, "kernel"));

  json rows = json::array();
  for (Eigen::Index i = 0; i < est.K.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < est.K.cols(); ++j) row.push_back(est.K(i, j));
    rows.push_back(std::move(row));
  }
  trace.record(json{{"record", "kernel"}, {"K", std::move(rows)}});
  trace.summary(json{{"success", true}, {"lambda_min", est.lambda_min}});
  return emit(trace, args.out, 0);
}

// ------------------------------------------------------------------- bench --

struct BenchArgs {
  std::string grid;
  int reps = 3;
  double eps = 1e-8;
  std::uint64_t seed = 0;
  OutputOptions out;
};

std::int64_t median_ns(std::vector<std::int64_t> samples) {
  std::sort(samples.begin(), samples.end());
  return samples[samples.size() / 2];
}

int run_bench(const BenchArgs& args) {
  apply_threads(args.out);
  TraceWriter trace;
  trace.config("bench", json{{"grid", args.grid},
                             {"reps", args.reps},
                             {"eps", args.eps},
                             {"seed", args.seed},
                             {"threads", thread_count()}});

  struct Entry {
    std::vector<Eigen::Index> dims;
    std::string label;
    std::int64_t fast_ns = 0;
    std::int64_t baseline_ns = 0;
  };
  std::vector<Entry> regress_entries, train_entries;

  std::stringstream grid(args.grid);
  std::string item;
  while (std::getline(grid, item, ',')) {
    if (item.empty()) continue;
    Entry e;
    e.label = item;
    std::stringstream dims(item);
    std::string dim;
    while (std::getline(dims, dim, 'x')) e.dims.push_back(std::stoll(dim));
    if (e.dims.size() == 2) regress_entries.push_back(std::move(e));
    else if (e.dims.size() == 3) train_entries.push_back(std::move(e));
    else throw ConfigError("bench grid entries must be NxK or MxNxD, got '" + item + "'");
  }

  for (Entry& e : regress_entries) {
    const Eigen::Index n = e.dims[0], k = e.dims[1];
    const Eigen::MatrixXd amat = gaussian_matrix(n, k, derive_seed(args.seed, e.label));
    const DenseOperator a(amat);
    const Eigen::VectorXd y = gaussian_vector(k, derive_seed(args.seed, e.label + "/rhs"));
    RegressionConfig cfg;
    cfg.eps = args.eps;
    cfg.sketch.seed = derive_seed(args.seed, e.label + "/sketch");

    std::vector<std::int64_t> fast_ns, naive_ns;
    for (int rep = 0; rep < args.reps; ++rep) {
      std::int64_t t0 = now_ns();
      const RegressionReport rep_out = fast_regression(a, y, cfg);
      fast_ns.push_back(now_ns() - t0);
      t0 = now_ns();
      const Eigen::VectorXd x = naive_normal_solve(amat, y);
      naive_ns.push_back(now_ns() - t0);
      (void)rep_out;
      (void)x;
    }
    e.fast_ns = median_ns(fast_ns);
    e.baseline_ns = median_ns(naive_ns);
    trace.record(json{{"record", "bench"},
                      {"kind", "regress"},
                      {"size", e.label},
                      {"fast_ns", e.fast_ns},
                      {"naive_ns", e.baseline_ns}});
  }

  for (Entry& e : train_entries) {
    const Eigen::Index m = e.dims[0], n = e.dims[1], d = e.dims[2];
    const Dataset data =
        generate_dataset(n, d, derive_seed(args.seed, e.label + "/data"), LabelMode::kTeacher);
    TrainConfig cfg;
    cfg.max_outer_iters = 1;
    cfg.target_residual = 1e-300;  // force exactly one step
    cfg.seed = derive_seed(args.seed, e.label);

    std::vector<std::int64_t> fast_ns, exact_ns;
    for (int rep = 0; rep < args.reps; ++rep) {
      NetworkState net = init_network(m, d, derive_seed(args.seed, e.label + "/init"));
      cfg.solver = InnerSolver::kFast;
      std::int64_t t0 = now_ns();
      train_gauss_newton(net, data, cfg);
      fast_ns.push_back(now_ns() - t0);

      net = init_network(m, d, derive_seed(args.seed, e.label + "/init"));
      cfg.solver = InnerSolver::kExact;
      t0 = now_ns();
      train_gauss_newton(net, data, cfg);
      exact_ns.push_back(now_ns() - t0);
    }
    e.fast_ns = median_ns(fast_ns);
    e.baseline_ns = median_ns(exact_ns);
    trace.record(json{{"record", "bench"},
                      {"kind", "ggn_step"},
                      {"size", e.label},
                      {"fast_ns", e.fast_ns},
                      {"exact_ns", e.baseline_ns}});
  }

  const auto emit_ratios = [&trace](const std::vector<Entry>& entries, const char* kind) {
    for (std::size_t i = 1; i < entries.size(); ++i) {
      trace.record(json{{"record", "bench_ratio"},
                        {"kind", kind},
                        {"from", entries[i - 1].label},
                        {"to", entries[i].label},
                        {"fast_ratio", static_cast<double>(entries[i].fast_ns) /
                                           static_cast<double>(entries[i - 1].fast_ns)},
                        {"baseline_ratio", static_cast<double>(entries[i].baseline_ns) /
                                               static_cast<double>(entries[i - 1].baseline_ns)}});
    }
  };
  emit_ratios(regress_entries, "regress");
  emit_ratios(train_entries, "ggn_step");

  trace.summary(json{{"success", true},
                     {"sizes", regress_entries.size() + train_entries.size()}});
  return emit(trace, args.out, 0);
}

}  // namespace

int run_command(const std::vector<std::string>& args) {
  CLI::App app{"Sketch-preconditioned Gauss-Newton training and fast regression"};
  app.require_subcommand(1);

  RegressArgs regress;
  CLI::App* regress_cmd =
      app.add_subcommand("regress", "Solve min_x ||A^T A x - y|| on a synthetic instance");
  regress_cmd->add_option("--n", regress.n, "Rows of A")->capture_default_str();
  regress_cmd->add_option("--k", regress.k, "Columns of A")->capture_default_str();
  regress_cmd->add_option("--eps", regress.eps, "Relative residual target")
      ->capture_default_str();
  regress_cmd->add_option("--rows", regress.rows, "Sketch rows (0 = default rule)")
      ->capture_default_str();
  regress_cmd->add_option("--seed", regress.seed, "Master seed")->capture_default_str();
  regress_cmd->add_option("--method", regress.method, "richardson | cg")
      ->check(CLI::IsMember({"richardson", "cg"}))
      ->capture_default_str();
  add_output_options(regress_cmd, &regress.out);

  TrainArgs train;
  CLI::App* train_cmd = app.add_subcommand("train", "Gauss-Newton training of a two-layer net");
  train_cmd->add_option("--n", train.n, "Samples (synthetic data)")->capture_default_str();
  train_cmd->add_option("--d", train.d, "Input dimension")->capture_default_str();
  train_cmd->add_option("--m", train.m, "Hidden width")->capture_default_str();
  train_cmd->add_option("--iters", train.iters, "Max outer iterations")->capture_default_str();
  train_cmd->add_option("--eps", train.eps, "Target residual norm")->capture_default_str();
  train_cmd->add_option("--seed", train.seed, "Master seed")->capture_default_str();
  train_cmd->add_option("--solver", train.solver, "fast | exact | cg")
      ->check(CLI::IsMember({"fast", "exact", "cg"}))
      ->capture_default_str();
  train_cmd->add_option("--lambda-source", train.lambda_source, "gram | kernel-cf | kernel-mc")
      ->check(CLI::IsMember({"gram", "kernel-cf", "kernel-mc"}))
      ->capture_default_str();
  train_cmd->add_option("--label-mode", train.label_mode, "teacher | signs | zeros")
      ->check(CLI::IsMember({"teacher", "signs", "zeros"}))
      ->capture_default_str();
  train_cmd->add_option("--data", train.data_path, "Load dataset CSV instead of generating");
  train_cmd->add_flag("--normalize", train.normalize, "Rescale loaded rows to unit norm");
  train_cmd->add_option("--sketch-rows", train.sketch_rows, "Inner sketch rows (0 = default)");
  train_cmd->add_option("--eps0", train.eps0, "Inner solve tolerance override, in (0, 1/6]");
  train_cmd->add_flag("--track-gram", train.track_gram,
                      "Record lambda_min(G_t) every iteration (n <= 512)");
  add_output_options(train_cmd, &train.out);

  NewtonArgs newton;
  CLI::App* newton_cmd =
      app.add_subcommand("newton", "Approximate Newton on a convex GLM instance");
  newton_cmd->add_option("--problem", newton.problem, "quadratic | logistic")
      ->check(CLI::IsMember({"quadratic", "logistic"}))
      ->capture_default_str();
  newton_cmd->add_option("--q", newton.q, "Data rows")->capture_default_str();
  newton_cmd->add_option("--p", newton.p, "Parameter dimension")->capture_default_str();
  newton_cmd->add_option("--iters", newton.iters, "Newton iterations")->capture_default_str();
  newton_cmd->add_option("--kappa", newton.kappa, "Condition number (0 = estimate, p <= 512)")
      ->capture_default_str();
  newton_cmd->add_option("--grad-tol", newton.grad_tol, "Stop early when ||grad|| <= tol")
      ->capture_default_str();
  newton_cmd->add_option("--seed", newton.seed, "Master seed")->capture_default_str();
  add_output_options(newton_cmd, &newton.out);

  NtkArgs ntk;
  CLI::App* ntk_cmd = app.add_subcommand("ntk", "Kernel matrix and least eigenvalue");
  ntk_cmd->add_option("--n", ntk.n, "Samples")->capture_default_str();
  ntk_cmd->add_option("--d", ntk.d, "Input dimension")->capture_default_str();
  ntk_cmd->add_option("--method", ntk.method, "closed-form | monte-carlo")
      ->check(CLI::IsMember({"closed-form", "monte-carlo"}))
      ->capture_default_str();
  ntk_cmd->add_option("--samples", ntk.samples, "Monte-Carlo draws")->capture_default_str();
  ntk_cmd->add_option("--seed", ntk.seed, "Master seed")->capture_default_str();
  add_output_options(ntk_cmd, &ntk.out);

  BenchArgs bench;
  CLI::App* bench_cmd =
      app.add_subcommand("bench", "Timing grid: fast vs naive regression, fast vs exact GGN");
  bench_cmd->add_option("--grid", bench.grid, "Comma list of NxK and/or MxNxD sizes");
  bench_cmd->add_option("--reps", bench.reps, "Repetitions per size (median reported)")
      ->capture_default_str();
  bench_cmd->add_option("--eps", bench.eps, "Solver target")->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed, "Master seed")->capture_default_str();
  add_output_options(bench_cmd, &bench.out);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (regress_cmd->parsed()) return run_regress(regress);
    if (train_cmd->parsed()) return run_train(train);
    if (newton_cmd->parsed()) return run_newton(newton);
    if (ntk_cmd->parsed()) return run_ntk(ntk);
    if (bench_cmd->parsed()) return run_bench(bench);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

int run_command(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_command(args);
}

}  // namespace sggn
