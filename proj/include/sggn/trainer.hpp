#ifndef SGGN_TRAINER_HPP
#define SGGN_TRAINER_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "sggn/network.hpp"
#include "sggn/regression.hpp"

namespace sggn {

enum class InnerSolver { kFast, kExact, kCg };
enum class LambdaSource { kGramEigensolve, kKernelClosedForm, kKernelMonteCarlo };

struct TrainConfig {
  int max_outer_iters = 20;          // T
  double target_residual = 1e-8;     // stop once ||f - y|| is below this
  std::optional<double> eps0_override;  // must lie in (0, 1/6]
  InnerSolver solver = InnerSolver::kFast;
  std::uint64_t seed = 0;
  LambdaSource lambda_source = LambdaSource::kGramEigensolve;
  Eigen::Index kernel_samples = 200000;  // monte-carlo lambda estimate only
  bool track_gram_eigen = false;         // record lambda_min(G_t) each iteration
  // Inner-solver knobs; eps and seed are overwritten per iteration.
  RegressionConfig inner;
};

struct TrainIteration {
  double residual = 0.0;  // ||f_t - y|| entering the step
  int inner_iterations = 0;
  double inner_residual = 0.0;  // ||G g - r|| achieved by the inner solve
  std::int64_t jacobian_ns = 0;
  std::int64_t sketch_ns = 0;
  std::int64_t precondition_ns = 0;
  std::int64_t iterate_ns = 0;
  std::int64_t update_ns = 0;
  double max_weight_move = 0.0;  // max_r ||w_r(t+1) - w_r(0)||
  double gram_min_eigen = std::numeric_limits<double>::quiet_NaN();
};

struct TrainTrace {
  std::vector<TrainIteration> iterations;
  std::vector<double> residual_history;  // length iterations.size() + 1
  double final_residual = 0.0;
  double lambda_hat = 0.0;
  double eps0 = 0.0;  // 0 for solvers that do not use it
  bool success = false;
  bool diverged = false;
  std::string failure;
};

// min{ (1/6) sqrt(lambda_hat / n), 1/6 }, or the override when present.
// Throws AssumptionError when lambda_hat <= 0.
double choose_eps0(double lambda_hat, Eigen::Index n, std::optional<double> override_value);

// Gauss-Newton outer loop: per iteration solve min_g ||J J^T g - (f - y)||
// to relative accuracy eps0 and update W <- W - reshape(J^T g).
TrainTrace train_gauss_newton(NetworkState& net, const Dataset& data, const TrainConfig& cfg);

// Plain gradient descent baseline, W <- W - step_size * grad L(W).
TrainTrace train_gradient_descent(NetworkState& net, const Dataset& data, double step_size,
                                  int max_iters, double target_residual = 0.0);

// Same outer loop with a dense factorization of G per step (n <= 512).
TrainTrace train_exact_ggn(NetworkState& net, const Dataset& data, const TrainConfig& cfg);

}  // namespace sggn

#endif  // SGGN_TRAINER_HPP
