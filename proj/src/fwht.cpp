#include "sggn/fwht.hpp"

#include <cmath>

#include "sggn/errors.hpp"

namespace sggn {

bool is_power_of_two(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

namespace {

// Iterative butterfly; fine while the working set stays in cache.
void fwht_iterative(double* __restrict data, Eigen::Index n) {
  for (Eigen::Index h = 1; h < n; h <<= 1) {
    for (Eigen::Index i = 0; i < n; i += h << 1) {
#pragma omp simd
      for (Eigen::Index j = i; j < i + h; ++j) {
        const double s = data[j];
        const double t = data[j + h];
        data[j] = s + t;
        data[j + h] = s - t;
      }
    }
  }
}

constexpr Eigen::Index kRecurseThreshold = 4096;

void fwht_recursive(double* __restrict data, Eigen::Index n) {
  if (n <= kRecurseThreshold) {
    fwht_iterative(data, n);
    return;
  }
  const Eigen::Index h = n / 2;
  fwht_recursive(data, h);
  fwht_recursive(data + h, h);
#pragma omp simd
  for (Eigen::Index j = 0; j < h; ++j) {
    const double s = data[j];
    const double t = data[j + h];
    data[j] = s + t;
    data[j + h] = s - t;
  }
}

}  // namespace

void fwht_unnormalized(double* data, Eigen::Index n) {
  if (!is_power_of_two(n)) {
    throw DimensionError("fwht: length " + std::to_string(n) + " is not a power of two");
  }
  fwht_recursive(data, n);
}

void fwht(double* data, Eigen::Index n) {
  fwht_unnormalized(data, n);
  const double inv = 1.0 / std::sqrt(static_cast<double>(n));
  for (Eigen::Index i = 0; i < n; ++i) data[i] *= inv;
}

Eigen::VectorXd fwht(const Eigen::VectorXd& v) {
  Eigen::VectorXd out = v;
  fwht(out.data(), out.size());
  return out;
}

}  // namespace sggn
