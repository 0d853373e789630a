#ifndef SGGN_CONVEX_HPP
#define SGGN_CONVEX_HPP

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "sggn/linear_operator.hpp"
#include "sggn/regression.hpp"

namespace sggn {

// Strongly convex objective with square-root-Hessian access:
// (sqrt_hessian(x))^T (sqrt_hessian(x)) = Hessian(x).
class ConvexOracle {
 public:
  virtual ~ConvexOracle() = default;

  virtual Eigen::Index dim() const = 0;
  virtual double value(const Eigen::VectorXd& x) const = 0;
  virtual Eigen::VectorXd grad(const Eigen::VectorXd& x) const = 0;
  virtual std::unique_ptr<LinearOperator> sqrt_hessian(const Eigen::VectorXd& x) const = 0;

  virtual std::optional<double> strong_convexity() const { return std::nullopt; }   // gamma
  virtual std::optional<double> smoothness() const { return std::nullopt; }         // beta
  virtual std::optional<double> hessian_lipschitz() const { return std::nullopt; }  // L
};

// Per-row scalar loss g_i(z) with labels folded in: value, first and second
// derivatives at z = <a_i, x> given label b_i.
class GlmLink {
 public:
  virtual ~GlmLink() = default;
  virtual double value(double z, double b) const = 0;
  virtual double d1(double z, double b) const = 0;
  virtual double d2(double z, double b) const = 0;
};

// g_i(z) = (z - b_i)^2 / 2.
class LeastSquaresLink final : public GlmLink {
 public:
  double value(double z, double b) const override { return 0.5 * (z - b) * (z - b); }
  double d1(double z, double b) const override { return z - b; }
  double d2(double, double) const override { return 1.0; }
};

// g_i(z) = log(1 + e^z) - b_i z.
class LogisticLink final : public GlmLink {
 public:
  double value(double z, double b) const override;
  double d1(double z, double b) const override;
  double d2(double z, double) const override;
};

// f(x) = sum_i g_i(<a_i, x>), rows a_i of A.
struct GLMProblem {
  Eigen::MatrixXd A;       // q x p
  Eigen::VectorXd labels;  // length q
  std::shared_ptr<const GlmLink> link;
};

// Square root of the GLM Hessian at x: v -> D (A v) with D_ii =
// sqrt(g_i''(<a_i, x>)). Throws ConvexityError on a negative second
// derivative. The operator holds a reference to prob.A; prob must outlive it.
std::unique_ptr<LinearOperator> glm_sqrt_hessian(const GLMProblem& prob,
                                                 const Eigen::VectorXd& x);

class GlmOracle final : public ConvexOracle {
 public:
  explicit GlmOracle(GLMProblem prob) : prob_(std::move(prob)) {}

  Eigen::Index dim() const override { return prob_.A.cols(); }
  double value(const Eigen::VectorXd& x) const override;
  Eigen::VectorXd grad(const Eigen::VectorXd& x) const override;
  std::unique_ptr<LinearOperator> sqrt_hessian(const Eigen::VectorXd& x) const override {
    return glm_sqrt_hessian(prob_, x);
  }

  const GLMProblem& problem() const { return prob_; }

 private:
  GLMProblem prob_;
};

// f(x) = ||A x - b||^2 / 2: constant Hessian A^T A, L = 0.
class QuadraticOracle final : public ConvexOracle {
 public:
  QuadraticOracle(Eigen::MatrixXd a, Eigen::VectorXd b);

  Eigen::Index dim() const override { return a_.cols(); }
  double value(const Eigen::VectorXd& x) const override {
    return 0.5 * (a_ * x - b_).squaredNorm();
  }
  Eigen::VectorXd grad(const Eigen::VectorXd& x) const override {
    return a_.transpose() * (a_ * x - b_);
  }
  std::unique_ptr<LinearOperator> sqrt_hessian(const Eigen::VectorXd&) const override {
    return std::make_unique<DenseOperator>(a_);
  }
  std::optional<double> hessian_lipschitz() const override { return 0.0; }

  const Eigen::MatrixXd& A() const { return a_; }
  const Eigen::VectorXd& b() const { return b_; }

 private:
  Eigen::MatrixXd a_;
  Eigen::VectorXd b_;
};

struct NewtonIteration {
  double grad_norm = 0.0;
  double x_error = std::numeric_limits<double>::quiet_NaN();  // ||x - x_ref|| if supplied
  int inner_iterations = 0;
  double inner_residual = 0.0;
  std::int64_t step_ns = 0;
};

struct NewtonTrace {
  std::vector<NewtonIteration> iterations;
  Eigen::VectorXd x;  // final iterate
  double final_grad_norm = 0.0;
  double kappa_used = 0.0;
  bool success = true;
};

struct NewtonOptions {
  double grad_tol = 0.0;  // 0 -> run all T iterations
  std::optional<Eigen::VectorXd> x_ref;
  std::uint64_t seed = 0;
  RegressionConfig inner;  // eps and seed overwritten per step
};

// Dense eigensolve estimate of kappa = lambda_max/lambda_min of the Hessian
// at x; guarded to dim <= 512.
double estimate_kappa(const ConvexOracle& oracle, const Eigen::VectorXd& x);

// Approximate Newton: per step solve ||H g - grad f|| <= (1/(4 kappa)) ||grad f||
// through the sketch-preconditioned solver and update x <- x - g.
// kappa_hat <= 0 requests estimation (dim <= 512 only).
NewtonTrace fast_newton(const ConvexOracle& oracle, const Eigen::VectorXd& x0, int max_iters,
                        double kappa_hat, const NewtonOptions& opts = {});

// Dense-factorization Newton reference (dim <= 512).
NewtonTrace exact_newton(const ConvexOracle& oracle, const Eigen::VectorXd& x0, int max_iters,
                         const NewtonOptions& opts = {});

}  // namespace sggn

#endif  // SGGN_CONVEX_HPP
