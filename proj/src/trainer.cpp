#include "sggn/trainer.hpp"

#include <chrono>
#include <cmath>

#include <Eigen/Cholesky>

#include "sggn/errors.hpp"
#include "sggn/rng.hpp"

namespace sggn {

namespace {

std::int64_t now_ns() {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

double max_row_distance(const Eigen::MatrixXd& w, const Eigen::MatrixXd& w0) {
  double worst = 0.0;
  for (Eigen::Index r = 0; r < w.rows(); ++r) {
    worst = std::max(worst, (w.row(r) - w0.row(r)).norm());
  }
  return worst;
}

double estimate_lambda(const NetworkState& net, const Dataset& data, const TrainConfig& cfg) {
  switch (cfg.lambda_source) {
    case LambdaSource::kGramEigensolve: {
      if (data.n() > 512) {
        throw ConfigError("lambda via gram eigensolve is guarded to n <= 512");
      }
      return min_eigen(gram(implicit_jacobian(net, data)));
    }
    case LambdaSource::kKernelClosedForm:
      return ntk_kernel(data, KernelMethod::kClosedForm).lambda_min;
    case LambdaSource::kKernelMonteCarlo:
      return ntk_kernel(data, KernelMethod::kMonteCarlo, cfg.kernel_samples,
                        derive_seed(cfg.seed, "ntk"))
          .lambda_min;
  }
  throw ConfigError("unknown lambda source");
}

}  // namespace

double choose_eps0(double lambda_hat, Eigen::Index n, std::optional<double> override_value) {
  if (override_value.has_value()) {
    if (!(*override_value > 0.0 && *override_value <= 1.0 / 6.0)) {
      throw ConfigError("eps0 override must lie in (0, 1/6]");
    }
    return *override_value;
  }
  if (!(lambda_hat > 0.0)) {
    throw AssumptionError(
        "kernel least eigenvalue estimate is not positive (lambda_hat = " +
        std::to_string(lambda_hat) +
        "); the positive-definiteness assumption fails for this dataset, "
        "typically because of duplicate or antipodal input points");
  }
  const double n_d = static_cast<double>(n);
  return std::min(std::sqrt(lambda_hat / n_d) / 6.0, 1.0 / 6.0);
}

TrainTrace train_gauss_newton(NetworkState& net, const Dataset& data, const TrainConfig& cfg) {
  if (cfg.max_outer_iters < 1) throw ConfigError("max_outer_iters must be >= 1");
  if (!(cfg.target_residual > 0.0)) throw ConfigError("target_residual must be > 0");
  if (data.d() != net.d) throw DimensionError("train: network/data dimension mismatch");
  if (cfg.solver == InnerSolver::kExact && data.n() > 512) {
    throw ConfigError("exact inner solver is guarded to n <= 512");
  }

  TrainTrace trace;
  if (cfg.solver != InnerSolver::kExact) {
    if (!cfg.eps0_override.has_value()) {
      trace.lambda_hat = estimate_lambda(net, data, cfg);
    }
    trace.eps0 = choose_eps0(trace.lambda_hat, data.n(), cfg.eps0_override);
  }

  const Eigen::MatrixXd w0 = net.W;
  const Eigen::Index n = data.n(), d = net.d;

  for (int t = 0;; ++t) {
    const std::int64_t t_jac0 = now_ns();
    const auto [jac, f] = implicit_jacobian_with_output(net, data);
    const std::int64_t t_jac1 = now_ns();
    const Eigen::VectorXd r = f - data.y();
    const double resid = r.norm();
    trace.residual_history.push_back(resid);
    trace.final_residual = resid;

    if (!std::isfinite(resid)) {
      trace.failure = "non-finite residual";
      return trace;
    }
    if (resid <= cfg.target_residual) {
      trace.success = true;
      return trace;
    }
    const std::size_t h = trace.residual_history.size();
    if (h >= 3 && trace.residual_history[h - 1] > trace.residual_history[h - 2] &&
        trace.residual_history[h - 2] > trace.residual_history[h - 3]) {
      trace.diverged = true;
      trace.failure = "residual increased for two consecutive iterations";
      return trace;
    }
    if (t >= cfg.max_outer_iters) {
      trace.failure = "iteration limit reached";
      return trace;
    }

    TrainIteration it;
    it.residual = resid;
    it.jacobian_ns = t_jac1 - t_jac0;

    Eigen::VectorXd g(n);
    if (cfg.solver == InnerSolver::kExact) {
      const std::int64_t t0 = now_ns();
      const Eigen::MatrixXd gmat = gram(jac);
      Eigen::LDLT<Eigen::MatrixXd> ldlt(gmat);
      if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) {
        throw RankError("exact Gauss-Newton: Gram matrix singular, lambda_min = " +
                        std::to_string(min_eigen(gmat)));
      }
      g = ldlt.solve(r);
      it.iterate_ns = now_ns() - t0;
      it.inner_residual = (gmat * g - r).norm();
      if (cfg.track_gram_eigen) it.gram_min_eigen = min_eigen(gmat);
    } else {
      const JacobianTransposeOperator op(jac);
      RegressionConfig inner = cfg.inner;
      inner.eps = trace.eps0;
      inner.method = cfg.solver == InnerSolver::kCg ? IterationMethod::kConjugateGradient
                                                    : IterationMethod::kRichardson;
      inner.sketch.seed = derive_seed(cfg.seed, "sketch", static_cast<std::uint64_t>(t));
      const RegressionReport rep = fast_regression(op, r, inner);
      g = rep.solution;
      it.inner_iterations = rep.iterations;
      it.inner_residual = rep.residual_history.empty() ? 0.0 : rep.residual_history.back();
      it.sketch_ns = rep.sketch_ns;
      it.precondition_ns = rep.precondition_ns;
      it.iterate_ns = rep.iterate_ns;
      if (cfg.track_gram_eigen) it.gram_min_eigen = min_eigen(gram(jac));
    }

    const std::int64_t t_up0 = now_ns();
    const Eigen::VectorXd delta = jac.jac_apply_transpose(g);
    for (Eigen::Index row = 0; row < net.m; ++row) {
      net.W.row(row) -= delta.segment(row * d, d).transpose();
    }
    it.update_ns = now_ns() - t_up0;
    it.max_weight_move = max_row_distance(net.W, w0);
    trace.iterations.push_back(it);
  }
}

TrainTrace train_gradient_descent(NetworkState& net, const Dataset& data, double step_size,
                                  int max_iters, double target_residual) {
  if (step_size < 0.0) throw ConfigError("step_size must be >= 0");
  if (max_iters < 0) throw ConfigError("max_iters must be >= 0");

  TrainTrace trace;
  const Eigen::MatrixXd w0 = net.W;
  for (int t = 0;; ++t) {
    const std::int64_t t0 = now_ns();
    const Eigen::VectorXd f = forward(net, data);
    const double resid = (f - data.y()).norm();
    trace.residual_history.push_back(resid);
    trace.final_residual = resid;
    if (!std::isfinite(resid)) {
      trace.failure = "non-finite residual";
      return trace;
    }
    if (resid <= target_residual) {
      trace.success = true;
      return trace;
    }
    const std::size_t h = trace.residual_history.size();
    if (h >= 3 && trace.residual_history[h - 1] > trace.residual_history[h - 2] &&
        trace.residual_history[h - 2] > trace.residual_history[h - 3]) {
      trace.diverged = true;
      trace.failure = "residual increased for two consecutive iterations";
      return trace;
    }
    if (t >= max_iters) {
      trace.success = target_residual <= 0.0;  // fixed-length run counts as done
      if (!trace.success) trace.failure = "iteration limit reached";
      return trace;
    }

    TrainIteration it;
    it.residual = resid;
    it.jacobian_ns = now_ns() - t0;
    const std::int64_t t1 = now_ns();
    net.W -= step_size * gradient(net, data);
    it.update_ns = now_ns() - t1;
    it.max_weight_move = max_row_distance(net.W, w0);
    trace.iterations.push_back(it);
  }
}

TrainTrace train_exact_ggn(NetworkState& net, const Dataset& data, const TrainConfig& cfg) {
  TrainConfig exact = cfg;
  exact.solver = InnerSolver::kExact;
  return train_gauss_newton(net, data, exact);
}

}  // namespace sggn
