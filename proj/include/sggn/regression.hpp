#ifndef SGGN_REGRESSION_HPP
#define SGGN_REGRESSION_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "sggn/linear_operator.hpp"
#include "sggn/sketch.hpp"

namespace sggn {

// Upper-triangular R with S*A*R orthonormal, built from a thin QR of the
// sketched matrix. kappa_hat is sigma_max/sigma_min of S*A, a (1 +- eps0)
// estimate of the condition number of A.
struct Preconditioner {
  Eigen::MatrixXd R;
  double kappa_hat = 1.0;
  double sketch_sigma_min = 0.0;
  double sketch_sigma_max = 0.0;
};

enum class IterationMethod { kRichardson, kConjugateGradient };

struct SketchParams {
  Eigen::Index rows = 0;  // 0 -> default_sketch_rows
  double eps0 = 0.1;
  std::uint64_t seed = 0;
};

struct RegressionConfig {
  double eps = 1e-8;  // relative residual target: ||A^T A x - y|| <= eps ||y||
  SketchParams sketch;
  int max_iter_slack = 10;
  int retries = 3;
  IterationMethod method = IterationMethod::kRichardson;
};

struct RegressionReport {
  Eigen::VectorXd solution;
  int iterations = 0;
  int attempts = 1;  // 1 + number of retries consumed
  std::vector<double> residual_history;          // ||A^T A x_t - y|| per iteration
  std::vector<double> preconditioned_contraction;  // per-step contraction ratios
  std::vector<std::int64_t> iteration_ns;        // wall clock per update step
  double condition_estimate = 1.0;
  std::int64_t sketch_ns = 0;
  std::int64_t precondition_ns = 0;
  std::int64_t iterate_ns = 0;
};

// Number of update steps after which the preconditioned residual must be
// below eps * ||y||, assuming the per-step contraction of a healthy sketch.
int iteration_budget(double kappa_hat, double eps);

// QR-based preconditioner from a fresh sketch of A. Throws RankError when the
// sketched matrix is numerically rank deficient (diagonal of the QR factor
// under 1e-12 times the Frobenius norm of S*A).
Preconditioner build_preconditioner(const LinearOperator& a, const SketchSpec& spec);

// The QR half of build_preconditioner, on an already-sketched matrix.
Preconditioner preconditioner_from_sketched(const Eigen::MatrixXd& sa);

// Solves min_x ||A^T A x - y|| to relative accuracy cfg.eps. Iterates
//   z <- z - (R^T A^T A R)^T (R^T A^T A R z - R^T y)
// and returns x = R z once the residual in the original system is below
// eps*||y||. On budget exhaustion retries with a fresh sketch seed, then with
// doubled sketch rows, up to cfg.retries times before throwing SolveError.
RegressionReport fast_regression(const LinearOperator& a, const Eigen::VectorXd& y,
                                 const RegressionConfig& cfg);

// Baseline: forms A^T A densely and factorizes. O(N k^2 + k^3).
Eigen::VectorXd naive_normal_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& y);

// Checks kappa(B) <= kappa(AB) * kappa(A) * (1 + 1e-8) on dense inputs.
bool condition_composition_check(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

}  // namespace sggn

#endif  // SGGN_REGRESSION_HPP
