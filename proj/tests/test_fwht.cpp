#include <doctest.h>

#include <cmath>

#include "sggn/errors.hpp"
#include "sggn/fwht.hpp"
#include "sggn/reference.hpp"
#include "sggn/rng.hpp"

using Eigen::VectorXd;

namespace {

VectorXd random_vector(Eigen::Index n, std::uint64_t seed) {
  sggn::SplitMix64 rng(seed);
  VectorXd v(n);
  for (Eigen::Index i = 0; i < n; i += 2) {
    double z0, z1;
    rng.gauss2(z0, z1);
    v[i] = z0;
    if (i + 1 < n) v[i + 1] = z1;
  }
  return v;
}

}  // namespace

TEST_CASE("fwht of (1,0) is the first Hadamard column") {
  VectorXd v(2);
  v << 1.0, 0.0;
  const VectorXd h = sggn::fwht(v);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(h[0] == doctest::Approx(inv_sqrt2).epsilon(1e-15));
  CHECK(h[1] == doctest::Approx(inv_sqrt2).epsilon(1e-15));
}

TEST_CASE("fwht of the all-ones 4-vector, against the dense 4x4 oracle") {
  VectorXd v(4);
  v << 1.0, 1.0, 1.0, 1.0;
  // Oracle: dense orthonormal H4 times v.
  const VectorXd expect = sggn::ref::hadamard_matrix(4) * v;
  CHECK(expect[0] == doctest::Approx(2.0).epsilon(1e-15));
  const VectorXd got = sggn::fwht(v);
  CHECK((got - expect).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(got[0] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(std::abs(got[1]) < 1e-15);
  CHECK(std::abs(got[2]) < 1e-15);
  CHECK(std::abs(got[3]) < 1e-15);
}

TEST_CASE("fwht is an involution at length 16") {
  const VectorXd v = random_vector(16, 5);
  const VectorXd round_trip = sggn::fwht(sggn::fwht(v));
  CHECK((round_trip - v).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("fwht preserves the 2-norm") {
  for (Eigen::Index n : {1, 2, 8, 64, 1024, 8192}) {
    const VectorXd v = random_vector(n, 100 + n);
    const VectorXd h = sggn::fwht(v);
    CHECK(h.norm() == doctest::Approx(v.norm()).epsilon(1e-12));
  }
}

TEST_CASE("fwht matches the dense Hadamard matrix on random input") {
  for (Eigen::Index n : {2, 8, 32, 128}) {
    const VectorXd v = random_vector(n, 200 + n);
    const VectorXd dense = sggn::ref::hadamard_matrix(n) * v;
    const VectorXd fast = sggn::fwht(v);
    CHECK((dense - fast).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("fwht matches the serial reference across the recursion threshold") {
  for (Eigen::Index n : {2048, 4096, 8192, 16384}) {
    const VectorXd v = random_vector(n, 300 + n);
    const VectorXd serial = sggn::ref::fwht(v);
    const VectorXd fast = sggn::fwht(v);
    CHECK((serial - fast).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("fwht rejects non-power-of-two lengths") {
  VectorXd v = VectorXd::Zero(12);
  CHECK_THROWS_AS(sggn::fwht(v), sggn::DimensionError);
  VectorXd empty;
  CHECK_THROWS_AS(sggn::fwht(empty), sggn::DimensionError);
}
