#ifndef SGGN_FWHT_HPP
#define SGGN_FWHT_HPP

#include <Eigen/Core>

namespace sggn {

bool is_power_of_two(Eigen::Index n);

// In-place unnormalized Walsh-Hadamard butterfly (natural order), O(n log n).
// Throws DimensionError unless the length is a power of two.
void fwht_unnormalized(double* data, Eigen::Index n);

// Orthonormal transform: fwht_unnormalized followed by a 1/sqrt(n) rescale,
// so the transform preserves the 2-norm and is its own inverse.
void fwht(double* data, Eigen::Index n);

Eigen::VectorXd fwht(const Eigen::VectorXd& v);

}  // namespace sggn

#endif  // SGGN_FWHT_HPP
