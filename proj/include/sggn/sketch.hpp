#ifndef SGGN_SKETCH_HPP
#define SGGN_SKETCH_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "sggn/linear_operator.hpp"

namespace sggn {

// Subsampled randomized Hadamard transform, S = sqrt(padded/s) * P * H * D:
// random sign diagonal D, orthonormal Walsh-Hadamard H on the zero-padded
// input, and a uniform s-subset P of the padded coordinates.
struct SketchSpec {
  Eigen::Index input_dim = 0;   // N
  Eigen::Index rows = 0;        // s
  double epsilon = 0.1;         // target distortion of the embedding
  std::uint64_t seed = 0;

  Eigen::Index padded_dim() const;
};

// Default row count for embedding a k-dimensional column space at distortion
// eps0, clamped to the padded input length. The 2k/eps0^2 term is what makes
// the preconditioner-quality gates hold; the 2k ln k term is the asymptotic
// coherence tail and only binds for enormous k.
Eigen::Index default_sketch_rows(Eigen::Index k, Eigen::Index padded_dim, double eps0 = 0.1);

class SketchOperator {
 public:
  // Immutable after construction; safe to share across threads.
  Eigen::Index input_dim() const { return input_dim_; }
  Eigen::Index rows() const { return static_cast<Eigen::Index>(sample_indices_.size()); }
  Eigen::Index padded_dim() const { return padded_dim_; }
  double scale() const { return scale_; }
  const Eigen::VectorXd& signs() const { return signs_; }
  const std::vector<Eigen::Index>& sample_indices() const { return sample_indices_; }

  // out = S v for one input vector; scratch must have padded_dim() entries.
  void apply_with_scratch(const double* v, Eigen::Index n, double* scratch, double* out) const;

  Eigen::VectorXd apply(const Eigen::Ref<const Eigen::VectorXd>& v) const;

 private:
  friend SketchOperator build_sketch(const SketchSpec& spec);

  Eigen::Index input_dim_ = 0;
  Eigen::Index padded_dim_ = 0;
  double scale_ = 1.0;
  Eigen::VectorXd signs_;                    // +-1 per padded coordinate
  std::vector<Eigen::Index> sample_indices_;  // s distinct, ascending
};

// Deterministic in spec.seed. Draw order: one u64 per sign (least significant
// bit, 1 -> +1), then one u64 per sampled index via a partial Fisher-Yates
// shuffle of [0, padded); the s selected indices are then sorted.
SketchOperator build_sketch(const SketchSpec& spec);

// S applied to every column of A; columns are processed independently and the
// result is identical for any thread count.
Eigen::MatrixXd sketch_matrix(const SketchOperator& op, const LinearOperator& a);

}  // namespace sggn

#endif  // SGGN_SKETCH_HPP
