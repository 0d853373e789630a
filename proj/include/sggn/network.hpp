#ifndef SGGN_NETWORK_HPP
#define SGGN_NETWORK_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "sggn/linear_operator.hpp"

namespace sggn {

// f(W, x) = (1/sqrt(m)) sum_r a_r max(w_r^T x, 0), with the output signs
// a in {-1, +1}^m fixed after initialization.
struct NetworkState {
  Eigen::MatrixXd W;  // m x d, row r = w_r
  Eigen::VectorXd a;  // +-1 entries
  Eigen::Index m = 0;
  Eigen::Index d = 0;
  double scale = 1.0;  // 1/sqrt(m)
};

// Inputs as unit-norm columns of X plus real labels.
class Dataset {
 public:
  // Validates unit columns (within 1e-8) unless require_unit_columns is false.
  Dataset(Eigen::MatrixXd x, Eigen::VectorXd y, bool require_unit_columns = true);

  const Eigen::MatrixXd& X() const { return x_; }
  const Eigen::VectorXd& y() const { return y_; }
  Eigen::Index n() const { return x_.cols(); }
  Eigen::Index d() const { return x_.rows(); }

 private:
  Eigen::MatrixXd x_;
  Eigen::VectorXd y_;
};

// Activation pattern factorization of the n x (m d) Jacobian. Row i of J is
// scale * (a .* phi_i) (x) x_i, stored as the pattern byte matrix plus the
// inputs; memory is O(nm + nd + m) and J is never materialized here.
class ImplicitJacobian {
 public:
  ImplicitJacobian(Eigen::MatrixXd x, Eigen::VectorXd a, double scale,
                   std::vector<std::uint8_t> pattern, Eigen::Index m);

  Eigen::Index n() const { return x_.cols(); }
  Eigen::Index d() const { return x_.rows(); }
  Eigen::Index m() const { return m_; }
  Eigen::Index param_dim() const { return m_ * d(); }

  // pattern(r, i) = 1[w_r^T x_i >= 0], column-major m x n.
  std::uint8_t pattern(Eigen::Index r, Eigen::Index i) const { return pattern_[r + i * m_]; }
  const std::vector<std::uint8_t>& pattern_data() const { return pattern_; }
  const Eigen::MatrixXd& X() const { return x_; }
  const Eigen::VectorXd& a() const { return a_; }
  double scale() const { return scale_; }

  // J v for v in R^{md}; v_r = v[r*d .. r*d+d) (row-major layout of W).
  Eigen::VectorXd jac_apply(const Eigen::Ref<const Eigen::VectorXd>& v) const;
  // J^T u for u in R^n.
  Eigen::VectorXd jac_apply_transpose(const Eigen::Ref<const Eigen::VectorXd>& u) const;
  // Row i of J as a length-md vector (column i of J^T).
  Eigen::VectorXd jac_column(Eigen::Index i) const;

 private:
  Eigen::MatrixXd x_;
  Eigen::VectorXd a_;
  double scale_;
  std::vector<std::uint8_t> pattern_;  // m x n column-major
  Eigen::Index m_;
};

// A = J^T viewed as an (md) x n operator, so that A^T A g = J J^T g = G g.
class JacobianTransposeOperator final : public LinearOperator {
 public:
  explicit JacobianTransposeOperator(const ImplicitJacobian& jac) : jac_(jac) {}

  Eigen::Index rows() const override { return jac_.param_dim(); }
  Eigen::Index cols() const override { return jac_.n(); }
  void apply(const Eigen::Ref<const Eigen::VectorXd>& x,
             Eigen::Ref<Eigen::VectorXd> out) const override;
  void apply_transpose(const Eigen::Ref<const Eigen::VectorXd>& u,
                       Eigen::Ref<Eigen::VectorXd> out) const override;
  void column(Eigen::Index j, Eigen::Ref<Eigen::VectorXd> out) const override;

 private:
  const ImplicitJacobian& jac_;
};

struct KernelEstimate {
  Eigen::MatrixXd K;
  enum class Method { kClosedForm, kMonteCarlo } method = Method::kClosedForm;
  Eigen::Index samples = 0;  // monte-carlo only
  double lambda_min = 0.0;
};

// W entries i.i.d. standard normal (Box-Muller pairs in row-major order),
// then m sign draws for a; deterministic in the seed.
NetworkState init_network(Eigen::Index m, Eigen::Index d, std::uint64_t seed);

Eigen::VectorXd forward(const NetworkState& net, const Dataset& data);

// (1/2) ||f - y||^2.
double loss(const NetworkState& net, const Dataset& data);

// m x d matrix, equal to J^T (f - y) reshaped row-major.
Eigen::MatrixXd gradient(const NetworkState& net, const Dataset& data);

ImplicitJacobian implicit_jacobian(const NetworkState& net, const Dataset& data);

// Pattern and outputs from one pass over the data; ReLU homogeneity makes
// f identical (bit for bit) to jac_apply on the flattened weights.
struct JacobianWithOutput {
  ImplicitJacobian jac;
  Eigen::VectorXd f;
};
JacobianWithOutput implicit_jacobian_with_output(const NetworkState& net, const Dataset& data);

// Flattened row-major weights, vec(W)[r*d + j] = W(r, j).
Eigen::VectorXd vec_row_major(const Eigen::MatrixXd& w);

// G = J J^T = (X^T X) .* (Phi^T Phi) / m.
Eigen::MatrixXd gram(const ImplicitJacobian& jac);

enum class KernelMethod { kClosedForm, kMonteCarlo };

// K(x_i, x_j) = E_w [ <x_i, x_j> 1{<w,x_i> >= 0, <w,x_j> >= 0} ] over standard
// Gaussian w. Closed form uses <x,x'>(pi - arccos(<x,x'>))/(2 pi); the
// Monte-Carlo form averages the indicator over `samples` draws.
KernelEstimate ntk_kernel(const Dataset& data, KernelMethod method, Eigen::Index samples = 0,
                          std::uint64_t seed = 0);

// Smallest eigenvalue of a symmetric matrix; rejects inputs whose asymmetry
// exceeds 1e-10.
double min_eigen(const Eigen::MatrixXd& m);

}  // namespace sggn

#endif  // SGGN_NETWORK_HPP
