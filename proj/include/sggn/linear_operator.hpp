#ifndef SGGN_LINEAR_OPERATOR_HPP
#define SGGN_LINEAR_OPERATOR_HPP

#include <Eigen/Core>

namespace sggn {

// Matrix-free view of a tall N x k matrix A. Implementations must keep
// apply/apply_transpose adjoint and column(j) == apply(e_j).
class LinearOperator {
 public:
  virtual ~LinearOperator() = default;

  virtual Eigen::Index rows() const = 0;  // N
  virtual Eigen::Index cols() const = 0;  // k

  // out = A x, x has length cols(), out has length rows().
  virtual void apply(const Eigen::Ref<const Eigen::VectorXd>& x,
                     Eigen::Ref<Eigen::VectorXd> out) const = 0;

  // out = A^T u, u has length rows(), out has length cols().
  virtual void apply_transpose(const Eigen::Ref<const Eigen::VectorXd>& u,
                               Eigen::Ref<Eigen::VectorXd> out) const = 0;

  // out = column j of A.
  virtual void column(Eigen::Index j, Eigen::Ref<Eigen::VectorXd> out) const;

  // out = A^T A x. Default composes the two applies; dense storage overrides
  // with a fused single pass.
  virtual void normal_apply(const Eigen::Ref<const Eigen::VectorXd>& x,
                            Eigen::Ref<Eigen::VectorXd> out) const;

  Eigen::VectorXd apply(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  Eigen::VectorXd apply_transpose(const Eigen::Ref<const Eigen::VectorXd>& u) const;
  Eigen::VectorXd column(Eigen::Index j) const;
  Eigen::VectorXd normal_apply(const Eigen::Ref<const Eigen::VectorXd>& x) const;

 protected:
  void check_apply_dims(Eigen::Index x_size, Eigen::Index out_size) const;
  void check_transpose_dims(Eigen::Index u_size, Eigen::Index out_size) const;
};

// Column-major dense matrix behind the operator interface. The kernels are
// OpenMP row-block parallel and bit deterministic for any thread count.
class DenseOperator final : public LinearOperator {
 public:
  explicit DenseOperator(Eigen::MatrixXd a);

  Eigen::Index rows() const override { return a_.rows(); }
  Eigen::Index cols() const override { return a_.cols(); }

  void apply(const Eigen::Ref<const Eigen::VectorXd>& x,
             Eigen::Ref<Eigen::VectorXd> out) const override;
  void apply_transpose(const Eigen::Ref<const Eigen::VectorXd>& u,
                       Eigen::Ref<Eigen::VectorXd> out) const override;
  void column(Eigen::Index j, Eigen::Ref<Eigen::VectorXd> out) const override;
  void normal_apply(const Eigen::Ref<const Eigen::VectorXd>& x,
                    Eigen::Ref<Eigen::VectorXd> out) const override;

  const Eigen::MatrixXd& matrix() const { return a_; }

 private:
  Eigen::MatrixXd a_;
};

}  // namespace sggn

#endif  // SGGN_LINEAR_OPERATOR_HPP
