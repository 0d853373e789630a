#include "sggn/regression.hpp"

#include <chrono>
#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "sggn/errors.hpp"
#include "sggn/rng.hpp"

namespace sggn {

namespace {

std::int64_t now_ns() {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

}  // namespace

int iteration_budget(double kappa_hat, double eps) {
  const double raw =
      (std::log(std::max(kappa_hat, 1.0)) + std::log(1.0 / eps) + 2.0) / std::log(16.0 / 9.0);
  return static_cast<int>(std::ceil(raw));
}

Preconditioner build_preconditioner(const LinearOperator& a, const SketchSpec& spec) {
  if (a.rows() < a.cols()) {
    throw DimensionError("build_preconditioner: operator must be tall (N >= k)");
  }
  const SketchOperator op = build_sketch(spec);
  return preconditioner_from_sketched(sketch_matrix(op, a));
}

Preconditioner preconditioner_from_sketched(const Eigen::MatrixXd& sa) {
  const Eigen::Index k = sa.cols();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(sa);
  Eigen::MatrixXd rt = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  const double scale = sa.norm();
  for (Eigen::Index j = 0; j < k; ++j) {
    if (std::abs(rt(j, j)) < 1e-12 * scale) {
      throw RankError(
          "build_preconditioner: sketched matrix numerically rank deficient; "
          "A may lack full column rank or the sketch failed");
    }
  }

  Preconditioner pre;
  pre.R = rt.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(sa);
  pre.sketch_sigma_max = svd.singularValues()(0);
  pre.sketch_sigma_min = svd.singularValues()(k - 1);
  pre.kappa_hat = pre.sketch_sigma_max / pre.sketch_sigma_min;

  // Build-time invariant: S*A*R has orthonormal columns.
  const Eigen::MatrixXd q = sa * pre.R;
  const double ortho_err =
      (q.transpose() * q - Eigen::MatrixXd::Identity(k, k)).norm();
  if (!(ortho_err <= 1e-8)) {
    throw RankError("preconditioner_from_sketched: S*A*R deviates from orthonormal by " +
                    std::to_string(ortho_err));
  }
  return pre;
}

namespace {

struct AttemptResult {
  bool converged = false;
  bool nonfinite = false;
  Eigen::VectorXd x;
  int iterations = 0;
  std::vector<double> residual_history;
  std::vector<double> contraction;
  std::vector<std::int64_t> iteration_ns;
};

// One Richardson pass with a fixed preconditioner. Each update costs two
// A-applies and two transpose applies (one fused normal pass computes the
// residual as a byproduct, the other drives the step).
AttemptResult run_richardson(const LinearOperator& a, const Eigen::VectorXd& y,
                             const Eigen::MatrixXd& R, double eps, int max_iters) {
  const Eigen::Index k = a.cols();
  const double target = eps * y.norm();
  const double blowup = 1e6 * y.norm();  // bad preconditioner; hand back for retry
  const Eigen::VectorXd c = R.transpose() * y;

  AttemptResult res;
  Eigen::VectorXd z = Eigen::VectorXd::Zero(k);
  Eigen::VectorXd u(k), w(k), r_pre(k), step(k);
  double prev_rho = -1.0;

  for (int iter = 0;; ++iter) {
    w.noalias() = R * z;
    a.normal_apply(w, u);  // u = A^T A R z
    const double resid = (u - y).norm();
    res.residual_history.push_back(resid);
    if (!std::isfinite(resid)) {
      res.nonfinite = true;
      return res;
    }
    if (resid > blowup) {
      res.iterations = iter;
      return res;
    }
    r_pre.noalias() = R.transpose() * u;
    r_pre -= c;
    const double rho = r_pre.norm();
    if (prev_rho > 0.0) res.contraction.push_back(rho / prev_rho);
    prev_rho = rho;

    if (resid <= target) {
      res.converged = true;
      res.iterations = iter;
      res.x = R * z;
      return res;
    }
    if (iter >= max_iters) {
      res.iterations = iter;
      return res;
    }
    const std::int64_t step_t0 = now_ns();
    w.noalias() = R * r_pre;
    a.normal_apply(w, step);  // step = A^T A R r_pre
    z.noalias() -= R.transpose() * step;
    res.iteration_ns.push_back(now_ns() - step_t0);
  }
}

// Conjugate gradient on the SPD preconditioned system B z = c with
// B = R^T A^T A R. One normal pass per update; the unpreconditioned
// residual is recovered from the CG residual by a triangular solve.
AttemptResult run_cg(const LinearOperator& a, const Eigen::VectorXd& y,
                     const Eigen::MatrixXd& R, double eps, int max_iters) {
  const Eigen::Index k = a.cols();
  const double target = eps * y.norm();
  const Eigen::VectorXd c = R.transpose() * y;

  AttemptResult res;
  Eigen::VectorXd z = Eigen::VectorXd::Zero(k);
  Eigen::VectorXd r = c;  // c - B z with z = 0
  Eigen::VectorXd p = r, bp(k), w(k);
  double rr = r.squaredNorm();
  double prev_rho = -1.0;
  const double blowup = 1e6 * y.norm();

  const auto triangular_residual = [&](const Eigen::VectorXd& pre_resid) {
    // ||A^T A x - y|| = ||R^-T (B z - c)||
    return R.transpose()
        .triangularView<Eigen::Lower>()
        .solve(pre_resid)
        .norm();
  };

  for (int iter = 0;; ++iter) {
    const double resid = triangular_residual(r);
    res.residual_history.push_back(resid);
    if (!std::isfinite(resid)) {
      res.nonfinite = true;
      return res;
    }
    if (resid > blowup) {
      res.iterations = iter;
      return res;
    }
    const double rho = r.norm();
    if (prev_rho > 0.0) res.contraction.push_back(rho / prev_rho);
    prev_rho = rho;

    if (resid <= target) {
      res.converged = true;
      res.iterations = iter;
      res.x = R * z;
      return res;
    }
    if (iter >= max_iters) {
      res.iterations = iter;
      return res;
    }
    const std::int64_t step_t0 = now_ns();
    w.noalias() = R * p;
    a.normal_apply(w, bp);
    bp = R.transpose() * bp;  // B p
    const double alpha = rr / p.dot(bp);
    z += alpha * p;
    r -= alpha * bp;
    const double rr_next = r.squaredNorm();
    p = r + (rr_next / rr) * p;
    rr = rr_next;
    res.iteration_ns.push_back(now_ns() - step_t0);
  }
}

}  // namespace

RegressionReport fast_regression(const LinearOperator& a, const Eigen::VectorXd& y,
                                 const RegressionConfig& cfg) {
  if (y.size() != a.cols()) {
    throw DimensionError("fast_regression: y must have length equal to operator columns");
  }
  if (!(cfg.eps > 0.0 && cfg.eps < 1.0)) {
    throw ConfigError("fast_regression: eps must lie in (0, 1)");
  }
  if (!y.allFinite()) {
    throw NumericalError("fast_regression: y has non-finite entries");
  }

  SketchSpec spec;
  spec.input_dim = a.rows();
  spec.epsilon = cfg.sketch.eps0;
  const Eigen::Index padded = spec.padded_dim();
  Eigen::Index rows = cfg.sketch.rows > 0 ? std::min(cfg.sketch.rows, padded)
                                          : default_sketch_rows(a.cols(), padded, cfg.sketch.eps0);

  RegressionReport report;
  for (int attempt = 0;; ++attempt) {
    report.attempts = attempt + 1;
    // Retry schedule: fresh seed first, then double the sketch rows.
    spec.seed = attempt == 0 ? cfg.sketch.seed : derive_seed(cfg.sketch.seed, "retry", attempt);
    spec.rows = std::min(padded, attempt <= 1 ? rows : rows << (attempt - 1));

    const std::int64_t t0 = now_ns();
    const SketchOperator op = build_sketch(spec);
    const Eigen::MatrixXd sa = sketch_matrix(op, a);
    const std::int64_t t1 = now_ns();
    Preconditioner pre;
    try {
      pre = preconditioner_from_sketched(sa);
    } catch (const RankError&) {
      if (attempt >= cfg.retries) throw;
      continue;  // sketch failure is per-seed; retry schedule handles it
    }
    const std::int64_t t2 = now_ns();
    report.sketch_ns = t1 - t0;
    report.precondition_ns = t2 - t1;
    report.condition_estimate = pre.kappa_hat;

    const int budget = iteration_budget(pre.kappa_hat, cfg.eps) + cfg.max_iter_slack;
    AttemptResult run = cfg.method == IterationMethod::kRichardson
                            ? run_richardson(a, y, pre.R, cfg.eps, budget)
                            : run_cg(a, y, pre.R, cfg.eps, budget);
    report.iterate_ns = now_ns() - t2;
    report.residual_history = std::move(run.residual_history);
    report.preconditioned_contraction = std::move(run.contraction);
    report.iteration_ns = std::move(run.iteration_ns);
    report.iterations = run.iterations;

    if (run.nonfinite) {
      throw NumericalError("fast_regression: non-finite intermediate value");
    }
    if (run.converged) {
      report.solution = std::move(run.x);
      return report;
    }
    if (attempt >= cfg.retries) {
      throw SolveError("fast_regression: iteration budget exhausted after " +
                       std::to_string(report.attempts) +
                       " attempts (preconditioner failure); kappa_hat=" +
                       std::to_string(pre.kappa_hat));
    }
  }
}

Eigen::VectorXd naive_normal_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& y) {
  if (y.size() != a.cols()) {
    throw DimensionError("naive_normal_solve: y must have length equal to A columns");
  }
  Eigen::MatrixXd gram = a.transpose() * a;
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success) {
    throw RankError("naive_normal_solve: A^T A is not positive definite");
  }
  return llt.solve(y);
}

bool condition_composition_check(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("condition_composition_check: product not conformable");
  }
  const auto kappa = [](const Eigen::MatrixXd& m) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    const double smin = sv(sv.size() - 1);
    if (smin <= sv(0) * 1e-14 || smin == 0.0) {
      throw RankError("condition_composition_check: rank-deficient input");
    }
    return sv(0) / smin;
  };
  return kappa(b) <= kappa(a * b) * kappa(a) * (1.0 + 1e-8);
}

}  // namespace sggn
