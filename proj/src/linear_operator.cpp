#include "sggn/linear_operator.hpp"

#include <algorithm>

#include "sggn/errors.hpp"

namespace sggn {

void LinearOperator::check_apply_dims(Eigen::Index x_size, Eigen::Index out_size) const {
  if (x_size != cols() || out_size != rows()) {
    throw DimensionError("operator apply: got x of length " + std::to_string(x_size) +
                         ", out of length " + std::to_string(out_size) + " for a " +
                         std::to_string(rows()) + "x" + std::to_string(cols()) + " operator");
  }
}

void LinearOperator::check_transpose_dims(Eigen::Index u_size, Eigen::Index out_size) const {
  if (u_size != rows() || out_size != cols()) {
    throw DimensionError("operator apply_transpose: got u of length " + std::to_string(u_size) +
                         ", out of length " + std::to_string(out_size) + " for a " +
                         std::to_string(rows()) + "x" + std::to_string(cols()) + " operator");
  }
}

void LinearOperator::column(Eigen::Index j, Eigen::Ref<Eigen::VectorXd> out) const {
  Eigen::VectorXd e = Eigen::VectorXd::Zero(cols());
  e[j] = 1.0;
  apply(e, out);
}

void LinearOperator::normal_apply(const Eigen::Ref<const Eigen::VectorXd>& x,
                                  Eigen::Ref<Eigen::VectorXd> out) const {
  Eigen::VectorXd tmp(rows());
  apply(x, tmp);
  apply_transpose(tmp, out);
}

Eigen::VectorXd LinearOperator::apply(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  Eigen::VectorXd out(rows());
  apply(x, out);
  return out;
}

Eigen::VectorXd LinearOperator::apply_transpose(
    const Eigen::Ref<const Eigen::VectorXd>& u) const {
  Eigen::VectorXd out(cols());
  apply_transpose(u, out);
  return out;
}

Eigen::VectorXd LinearOperator::column(Eigen::Index j) const {
  Eigen::VectorXd out(rows());
  column(j, out);
  return out;
}

Eigen::VectorXd LinearOperator::normal_apply(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  Eigen::VectorXd out(cols());
  normal_apply(x, out);
  return out;
}

DenseOperator::DenseOperator(Eigen::MatrixXd a) : a_(std::move(a)) {}

namespace {
constexpr Eigen::Index kRowBlock = 256;
}

void DenseOperator::apply(const Eigen::Ref<const Eigen::VectorXd>& x,
                          Eigen::Ref<Eigen::VectorXd> out) const {
  check_apply_dims(x.size(), out.size());
  const Eigen::Index n = a_.rows(), k = a_.cols();
  const Eigen::Index nblocks = (n + kRowBlock - 1) / kRowBlock;
#pragma omp parallel for schedule(static)
  for (Eigen::Index b = 0; b < nblocks; ++b) {
    const Eigen::Index i0 = b * kRowBlock;
    const Eigen::Index len = std::min(kRowBlock, n - i0);
    out.segment(i0, len).setZero();
    for (Eigen::Index j = 0; j < k; ++j) {
      out.segment(i0, len) += x[j] * a_.col(j).segment(i0, len);
    }
  }
}

void DenseOperator::apply_transpose(const Eigen::Ref<const Eigen::VectorXd>& u,
                                    Eigen::Ref<Eigen::VectorXd> out) const {
  check_transpose_dims(u.size(), out.size());
  const Eigen::Index k = a_.cols();
#pragma omp parallel for schedule(static)
  for (Eigen::Index j = 0; j < k; ++j) {
    out[j] = a_.col(j).dot(u);
  }
}

void DenseOperator::column(Eigen::Index j, Eigen::Ref<Eigen::VectorXd> out) const {
  if (j < 0 || j >= a_.cols()) {
    throw DimensionError("column index out of range");
  }
  out = a_.col(j);
}

// One pass over A: accumulates per-row-block contributions to A^T (A x) and
// combines them in block order, so the result is identical for any thread
// count.
void DenseOperator::normal_apply(const Eigen::Ref<const Eigen::VectorXd>& x,
                                 Eigen::Ref<Eigen::VectorXd> out) const {
  if (x.size() != cols() || out.size() != cols()) {
    throw DimensionError("normal_apply: vector length does not match operator columns");
  }
  const Eigen::Index n = a_.rows(), k = a_.cols();
  const Eigen::Index nblocks = (n + kRowBlock - 1) / kRowBlock;
  Eigen::MatrixXd partial(k, nblocks);
#pragma omp parallel for schedule(static)
  for (Eigen::Index b = 0; b < nblocks; ++b) {
    const Eigen::Index i0 = b * kRowBlock;
    const Eigen::Index len = std::min(kRowBlock, n - i0);
    Eigen::VectorXd w = Eigen::VectorXd::Zero(len);
    for (Eigen::Index j = 0; j < k; ++j) {
      w += x[j] * a_.col(j).segment(i0, len);
    }
    for (Eigen::Index j = 0; j < k; ++j) {
      partial(j, b) = a_.col(j).segment(i0, len).dot(w);
    }
  }
  out.setZero();
  for (Eigen::Index b = 0; b < nblocks; ++b) {
    out += partial.col(b);
  }
}

}  // namespace sggn
