#include "sggn/convex.hpp"

#include <chrono>
#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "sggn/errors.hpp"
#include "sggn/rng.hpp"

namespace sggn {

namespace {

std::int64_t now_ns() {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

double sigmoid(double z) {
  if (z >= 0.0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// Diagonal-scaled dense operator D * A with D_ii >= 0.
class ScaledRowsOperator final : public LinearOperator {
 public:
  ScaledRowsOperator(const Eigen::MatrixXd& a, Eigen::VectorXd diag)
      : a_(a), diag_(std::move(diag)) {}

  Eigen::Index rows() const override { return a_.rows(); }
  Eigen::Index cols() const override { return a_.cols(); }

  void apply(const Eigen::Ref<const Eigen::VectorXd>& x,
             Eigen::Ref<Eigen::VectorXd> out) const override {
    check_apply_dims(x.size(), out.size());
    out.noalias() = a_ * x;
    out.array() *= diag_.array();
  }

  void apply_transpose(const Eigen::Ref<const Eigen::VectorXd>& u,
                       Eigen::Ref<Eigen::VectorXd> out) const override {
    check_transpose_dims(u.size(), out.size());
    out.noalias() = a_.transpose() * (diag_.array() * u.array()).matrix();
  }

  void column(Eigen::Index j, Eigen::Ref<Eigen::VectorXd> out) const override {
    out = diag_.array() * a_.col(j).array();
  }

 private:
  const Eigen::MatrixXd& a_;  // owned by the GLMProblem that outlives the operator
  Eigen::VectorXd diag_;
};

Eigen::MatrixXd dense_hessian(const ConvexOracle& oracle, const Eigen::VectorXd& x) {
  const auto sqrt_h = oracle.sqrt_hessian(x);
  const Eigen::Index q = sqrt_h->rows(), p = sqrt_h->cols();
  Eigen::MatrixXd b(q, p);
  Eigen::VectorXd col(q);
  for (Eigen::Index j = 0; j < p; ++j) {
    sqrt_h->column(j, col);
    b.col(j) = col;
  }
  return b.transpose() * b;
}

}  // namespace

double LogisticLink::value(double z, double b) const {
  // log(1 + e^z) computed stably for both signs of z.
  const double softplus = z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
  return softplus - b * z;
}

double LogisticLink::d1(double z, double b) const { return sigmoid(z) - b; }

double LogisticLink::d2(double z, double) const {
  const double s = sigmoid(z);
  return s * (1.0 - s);
}

std::unique_ptr<LinearOperator> glm_sqrt_hessian(const GLMProblem& prob,
                                                 const Eigen::VectorXd& x) {
  if (x.size() != prob.A.cols()) {
    throw DimensionError("glm_sqrt_hessian: x length != columns of A");
  }
  if (prob.labels.size() != prob.A.rows()) {
    throw DimensionError("glm_sqrt_hessian: label count != rows of A");
  }
  const Eigen::VectorXd z = prob.A * x;
  Eigen::VectorXd diag(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    const double curvature = prob.link->d2(z[i], prob.labels[i]);
    if (!std::isfinite(curvature)) {
      throw NumericalError("glm_sqrt_hessian: non-finite second derivative");
    }
    if (curvature < 0.0) {
      throw ConvexityError("glm_sqrt_hessian: negative second derivative at row " +
                           std::to_string(i));
    }
    diag[i] = std::sqrt(curvature);
  }
  return std::make_unique<ScaledRowsOperator>(prob.A, std::move(diag));
}

double GlmOracle::value(const Eigen::VectorXd& x) const {
  const Eigen::VectorXd z = prob_.A * x;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) sum += prob_.link->value(z[i], prob_.labels[i]);
  return sum;
}

Eigen::VectorXd GlmOracle::grad(const Eigen::VectorXd& x) const {
  const Eigen::VectorXd z = prob_.A * x;
  Eigen::VectorXd d(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) d[i] = prob_.link->d1(z[i], prob_.labels[i]);
  return prob_.A.transpose() * d;
}

QuadraticOracle::QuadraticOracle(Eigen::MatrixXd a, Eigen::VectorXd b)
    : a_(std::move(a)), b_(std::move(b)) {
  if (b_.size() != a_.rows()) throw DimensionError("QuadraticOracle: b length != rows of A");
}

double estimate_kappa(const ConvexOracle& oracle, const Eigen::VectorXd& x) {
  if (oracle.dim() > 512) {
    throw ConfigError("estimate_kappa is guarded to dim <= 512; supply kappa explicitly");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_hessian(oracle, x),
                                                    Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues()(0);
  const double hi = es.eigenvalues()(es.eigenvalues().size() - 1);
  if (!(lo > 0.0)) {
    throw RankError("estimate_kappa: Hessian not positive definite (lambda_min = " +
                    std::to_string(lo) + ")");
  }
  return hi / lo;
}

NewtonTrace fast_newton(const ConvexOracle& oracle, const Eigen::VectorXd& x0, int max_iters,
                        double kappa_hat, const NewtonOptions& opts) {
  if (x0.size() != oracle.dim()) throw DimensionError("fast_newton: x0 length != dim");
  if (max_iters < 0) throw ConfigError("fast_newton: max_iters must be >= 0");
  if (kappa_hat <= 0.0) kappa_hat = estimate_kappa(oracle, x0);
  if (kappa_hat < 1.0) throw ConfigError("fast_newton: kappa must be >= 1");

  NewtonTrace trace;
  trace.kappa_used = kappa_hat;
  Eigen::VectorXd x = x0;
  const double inner_eps = 1.0 / (4.0 * kappa_hat);

  for (int t = 0;; ++t) {
    const std::int64_t t0 = now_ns();
    const Eigen::VectorXd g = oracle.grad(x);
    const double gnorm = g.norm();
    if (!std::isfinite(gnorm)) throw NumericalError("fast_newton: non-finite gradient");

    NewtonIteration it;
    it.grad_norm = gnorm;
    if (opts.x_ref.has_value()) it.x_error = (x - *opts.x_ref).norm();

    const bool done = t >= max_iters || (opts.grad_tol > 0.0 && gnorm <= opts.grad_tol);
    if (done) {
      trace.iterations.push_back(it);
      break;
    }

    const auto sqrt_h = oracle.sqrt_hessian(x);
    RegressionConfig inner = opts.inner;
    inner.eps = inner_eps;
    inner.sketch.seed = derive_seed(opts.seed, "newton", static_cast<std::uint64_t>(t));
    const RegressionReport rep = fast_regression(*sqrt_h, g, inner);
    x -= rep.solution;

    it.inner_iterations = rep.iterations;
    it.inner_residual = rep.residual_history.empty() ? 0.0 : rep.residual_history.back();
    it.step_ns = now_ns() - t0;
    trace.iterations.push_back(it);
  }
  trace.x = std::move(x);
  trace.final_grad_norm = trace.iterations.back().grad_norm;
  return trace;
}

NewtonTrace exact_newton(const ConvexOracle& oracle, const Eigen::VectorXd& x0, int max_iters,
                         const NewtonOptions& opts) {
  if (x0.size() != oracle.dim()) throw DimensionError("exact_newton: x0 length != dim");
  if (oracle.dim() > 512) throw ConfigError("exact_newton is guarded to dim <= 512");

  NewtonTrace trace;
  Eigen::VectorXd x = x0;
  for (int t = 0;; ++t) {
    const std::int64_t t0 = now_ns();
    const Eigen::VectorXd g = oracle.grad(x);
    const double gnorm = g.norm();
    if (!std::isfinite(gnorm)) throw NumericalError("exact_newton: non-finite gradient");

    NewtonIteration it;
    it.grad_norm = gnorm;
    if (opts.x_ref.has_value()) it.x_error = (x - *opts.x_ref).norm();

    const bool done = t >= max_iters || (opts.grad_tol > 0.0 && gnorm <= opts.grad_tol);
    if (done) {
      trace.iterations.push_back(it);
      break;
    }

    const Eigen::MatrixXd h = dense_hessian(oracle, x);
    Eigen::LDLT<Eigen::MatrixXd> ldlt(h);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) {
      throw RankError("exact_newton: singular Hessian");
    }
    x -= ldlt.solve(g);
    it.step_ns = now_ns() - t0;
    trace.iterations.push_back(it);
  }
  trace.x = std::move(x);
  trace.final_grad_norm = trace.iterations.back().grad_norm;
  return trace;
}

}  // namespace sggn
