#ifndef SGGN_REFERENCE_HPP
#define SGGN_REFERENCE_HPP

#include <Eigen/Core>

#include "sggn/network.hpp"
#include "sggn/sketch.hpp"

// Plain serial implementations, kept as oracles for the parallel kernels.
// Everything here favors being obviously correct over being fast; the test
// suite and the kernel benchmark compare against these.
namespace sggn::ref {

// Dense orthonormal Hadamard matrix (power-of-two n).
Eigen::MatrixXd hadamard_matrix(Eigen::Index n);

// Textbook serial butterfly, orthonormal scaling.
Eigen::VectorXd fwht(const Eigen::VectorXd& v);

// Sketches every column through SketchOperator::apply, no threading.
Eigen::MatrixXd sketch_matrix(const SketchOperator& op, const LinearOperator& a);

// Double-loop network output.
Eigen::VectorXd forward(const NetworkState& net, const Dataset& data);

// Fully materialized n x (md) Jacobian; guarded to m*d <= 1e5.
Eigen::MatrixXd dense_jacobian(const NetworkState& net, const Dataset& data);

// G = J J^T from the dense Jacobian.
Eigen::MatrixXd gram_dense(const NetworkState& net, const Dataset& data);

// Serial versions of the implicit-Jacobian products.
Eigen::VectorXd jac_apply(const ImplicitJacobian& jac, const Eigen::VectorXd& v);
Eigen::VectorXd jac_apply_transpose(const ImplicitJacobian& jac, const Eigen::VectorXd& u);
Eigen::MatrixXd gram(const ImplicitJacobian& jac);

// Serial y = A x and y = A^T u on dense storage.
Eigen::VectorXd dense_apply(const Eigen::MatrixXd& a, const Eigen::VectorXd& x);
Eigen::VectorXd dense_apply_transpose(const Eigen::MatrixXd& a, const Eigen::VectorXd& u);

}  // namespace sggn::ref

#endif  // SGGN_REFERENCE_HPP
