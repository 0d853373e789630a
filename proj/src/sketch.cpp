#include "sggn/sketch.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sggn/errors.hpp"
#include "sggn/fwht.hpp"
#include "sggn/rng.hpp"

namespace sggn {

Eigen::Index SketchSpec::padded_dim() const {
  Eigen::Index p = 1;
  while (p < input_dim) p <<= 1;
  return p;
}

Eigen::Index default_sketch_rows(Eigen::Index k, Eigen::Index padded_dim, double eps0) {
  if (k < 1) throw ConfigError("default_sketch_rows: k must be positive");
  if (!(eps0 > 0.0 && eps0 < 0.5)) {
    throw ConfigError("default_sketch_rows: eps0 must lie in (0, 1/2)");
  }
  const double lead = std::ceil(2.0 * static_cast<double>(k) / (eps0 * eps0));
  const double tail = std::ceil(2.0 * static_cast<double>(k) * std::log(std::max<double>(k, 2)));
  const double s = std::max(lead, tail);
  return std::min(padded_dim, static_cast<Eigen::Index>(s));
}

void SketchOperator::apply_with_scratch(const double* v, Eigen::Index n, double* scratch,
                                        double* out) const {
  if (n != input_dim_) {
    throw DimensionError("sketch apply: input length " + std::to_string(n) + " != " +
                         std::to_string(input_dim_));
  }
  for (Eigen::Index i = 0; i < input_dim_; ++i) scratch[i] = signs_[i] * v[i];
  for (Eigen::Index i = input_dim_; i < padded_dim_; ++i) scratch[i] = 0.0;
  fwht_unnormalized(scratch, padded_dim_);
  // scale_ folds the 1/sqrt(padded) of the orthonormal transform together
  // with sqrt(padded/s), i.e. scale_ = 1/sqrt(s).
  const Eigen::Index s = rows();
  for (Eigen::Index i = 0; i < s; ++i) out[i] = scale_ * scratch[sample_indices_[i]];
}

Eigen::VectorXd SketchOperator::apply(const Eigen::Ref<const Eigen::VectorXd>& v) const {
  Eigen::VectorXd scratch(padded_dim_);
  Eigen::VectorXd out(rows());
  apply_with_scratch(v.data(), v.size(), scratch.data(), out.data());
  return out;
}

SketchOperator build_sketch(const SketchSpec& spec) {
  if (spec.input_dim < 1) throw ConfigError("build_sketch: input_dim must be positive");
  if (!(spec.epsilon > 0.0 && spec.epsilon < 0.5)) {
    throw ConfigError("build_sketch: epsilon must lie in (0, 1/2)");
  }
  const Eigen::Index padded = spec.padded_dim();
  if (spec.rows < 1 || spec.rows > padded) {
    throw ConfigError("build_sketch: rows " + std::to_string(spec.rows) +
                      " outside [1, padded_dim=" + std::to_string(padded) + "]");
  }

  SketchOperator op;
  op.input_dim_ = spec.input_dim;
  op.padded_dim_ = padded;
  op.scale_ = 1.0 / std::sqrt(static_cast<double>(spec.rows));

  SplitMix64 rng(spec.seed);
  op.signs_.resize(padded);
  for (Eigen::Index i = 0; i < padded; ++i) op.signs_[i] = rng.sign();

  std::vector<Eigen::Index> pool(padded);
  std::iota(pool.begin(), pool.end(), Eigen::Index{0});
  for (Eigen::Index i = 0; i < spec.rows; ++i) {
    const Eigen::Index j =
        i + static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(padded - i)));
    std::swap(pool[i], pool[j]);
  }
  op.sample_indices_.assign(pool.begin(), pool.begin() + spec.rows);
  std::sort(op.sample_indices_.begin(), op.sample_indices_.end());
  return op;
}

Eigen::MatrixXd sketch_matrix(const SketchOperator& op, const LinearOperator& a) {
  if (a.rows() != op.input_dim()) {
    throw DimensionError("sketch_matrix: operator has " + std::to_string(a.rows()) +
                         " rows, sketch expects " + std::to_string(op.input_dim()));
  }
  const Eigen::Index k = a.cols();
  Eigen::MatrixXd out(op.rows(), k);
#pragma omp parallel
  {
    Eigen::VectorXd col(a.rows());
    Eigen::VectorXd scratch(op.padded_dim());
#pragma omp for schedule(static)
    for (Eigen::Index j = 0; j < k; ++j) {
      a.column(j, col);
      op.apply_with_scratch(col.data(), col.size(), scratch.data(), out.col(j).data());
    }
  }
  return out;
}

}  // namespace sggn
