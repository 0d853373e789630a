#include <doctest.h>

#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/SVD>

#include "sggn/errors.hpp"
#include "sggn/regression.hpp"
#include "sggn/rng.hpp"

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

MatrixXd gaussian(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  sggn::SplitMix64 rng(seed);
  MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; i += 2) {
      double z0, z1;
      rng.gauss2(z0, z1);
      m(i, j) = z0;
      if (i + 1 < rows) m(i + 1, j) = z1;
    }
  }
  return m;
}

// Tall matrix with prescribed condition number (log-spaced singular values).
MatrixXd conditioned_matrix(Eigen::Index n, Eigen::Index k, double kappa, std::uint64_t seed) {
  const MatrixXd u =
      Eigen::HouseholderQR<MatrixXd>(gaussian(n, k, seed)).householderQ() *
      MatrixXd::Identity(n, k);
  const MatrixXd v =
      Eigen::HouseholderQR<MatrixXd>(gaussian(k, k, seed + 1)).householderQ() *
      MatrixXd::Identity(k, k);
  VectorXd sigma(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const double t = k == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(k - 1);
    sigma[i] = std::pow(kappa, -t);  // 1 down to 1/kappa
  }
  return u * sigma.asDiagonal() * v.transpose();
}

std::vector<double> singular_values(const MatrixXd& m) {
  Eigen::JacobiSVD<MatrixXd> svd(m);
  return {svd.singularValues().data(),
          svd.singularValues().data() + svd.singularValues().size()};
}

sggn::SketchSpec default_spec(Eigen::Index n, Eigen::Index k, std::uint64_t seed) {
  sggn::SketchSpec spec;
  spec.input_dim = n;
  spec.seed = seed;
  spec.rows = sggn::default_sketch_rows(k, spec.padded_dim());
  return spec;
}

}  // namespace

TEST_CASE("preconditioner on the identity is essentially exact") {
  const MatrixXd a = MatrixXd::Identity(8, 8);
  const sggn::DenseOperator op(a);
  const auto pre = sggn::build_preconditioner(op, default_spec(8, 8, 7));
  const auto sv = singular_values(a * pre.R);
  CHECK(sv.front() <= 1.001);
  CHECK(sv.back() >= 0.999);
}

TEST_CASE("preconditioned Gaussian 2048x32 has singular values in [3/4, 5/4]") {
  const MatrixXd a = gaussian(2048, 32, 11);
  const sggn::DenseOperator op(a);
  const auto pre = sggn::build_preconditioner(op, default_spec(2048, 32, 13));
  const auto sv = singular_values(a * pre.R);
  CHECK(sv.front() <= 1.25);
  CHECK(sv.back() >= 0.75);
}

TEST_CASE("preconditioner quality confirmed by dense SVD on a 256x8 instance") {
  const MatrixXd a = gaussian(256, 8, 17);
  const sggn::DenseOperator op(a);
  const auto pre = sggn::build_preconditioner(op, default_spec(256, 8, 19));
  const auto sv = singular_values(a * pre.R);
  CHECK(sv.front() <= 1.25);
  CHECK(sv.back() >= 0.75);
  // S*A*R columns orthonormal is checked at build; kappa_hat tracks kappa(A).
  const auto asv = singular_values(a);
  const double kappa_a = asv.front() / asv.back();
  CHECK(pre.kappa_hat == doctest::Approx(kappa_a).epsilon(0.25));
}

TEST_CASE("rank-deficient input raises RankError") {
  MatrixXd a = gaussian(128, 6, 23);
  a.col(5) = a.col(4);  // duplicate column
  const sggn::DenseOperator op(a);
  CHECK_THROWS_AS(sggn::build_preconditioner(op, default_spec(128, 6, 29)),
                  sggn::RankError);
}

TEST_CASE("fast_regression with y = 0 returns zero in zero iterations") {
  const sggn::DenseOperator op(gaussian(64, 4, 31));
  sggn::RegressionConfig cfg;
  const auto rep = sggn::fast_regression(op, VectorXd::Zero(4), cfg);
  CHECK(rep.iterations == 0);
  CHECK(rep.solution.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("fast_regression solves A = 2I exactly") {
  const sggn::DenseOperator op(2.0 * MatrixXd::Identity(4, 4));
  VectorXd y(4);
  y << 4.0, 0.0, 0.0, 0.0;
  sggn::RegressionConfig cfg;
  cfg.eps = 1e-10;
  const auto rep = sggn::fast_regression(op, y, cfg);
  // A^T A = 4 I, so x = y / 4 = (1,0,0,0).
  CHECK(rep.solution[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rep.solution.tail(3).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(rep.residual_history.back() <= 1e-10 * y.norm());
}

TEST_CASE("fast_regression matches the dense Cholesky oracle at eps = 1e-10") {
  const MatrixXd a = gaussian(256, 8, 37);
  const VectorXd y = gaussian(8, 1, 41).col(0);
  // Oracle: solve A^T A x = y by dense Cholesky.
  const VectorXd x_star = (a.transpose() * a).llt().solve(y);

  const sggn::DenseOperator op(a);
  sggn::RegressionConfig cfg;
  cfg.eps = 1e-10;
  const auto rep = sggn::fast_regression(op, y, cfg);
  CHECK((rep.solution - x_star).norm() / x_star.norm() < 1e-8);
  CHECK(rep.residual_history.back() <= 1e-10 * y.norm());
}

TEST_CASE("cg mode agrees with richardson mode") {
  const MatrixXd a = gaussian(512, 16, 43);
  const VectorXd y = gaussian(16, 1, 47).col(0);
  sggn::RegressionConfig cfg;
  cfg.eps = 1e-10;
  const auto rich = sggn::fast_regression(sggn::DenseOperator(a), y, cfg);
  cfg.method = sggn::IterationMethod::kConjugateGradient;
  const auto cg = sggn::fast_regression(sggn::DenseOperator(a), y, cfg);
  CHECK((rich.solution - cg.solution).norm() / rich.solution.norm() < 1e-7);
  CHECK(cg.iterations <= rich.iterations);
}

TEST_CASE("post-solution guarantee holds by direct residual evaluation") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const MatrixXd a = conditioned_matrix(512, 16, 50.0, 100 + seed);
    const VectorXd y = gaussian(16, 1, 200 + seed).col(0);
    sggn::RegressionConfig cfg;
    cfg.eps = 1e-9;
    cfg.sketch.seed = seed;
    const auto rep = sggn::fast_regression(sggn::DenseOperator(a), y, cfg);
    const VectorXd direct = a.transpose() * (a * rep.solution);
    CHECK((direct - y).norm() <= 1e-9 * y.norm() * (1.0 + 1e-6));
  }
}

TEST_CASE("preconditioned contraction stays under 9/16 when sigma(B) is in [3/4,5/4]") {
  // sigma(B) = sigma(AR)^2; with the default sketch rows the window holds and
  // every recorded step ratio stays below the 9/16 bound.
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const MatrixXd a = gaussian(4096, 16, 300 + seed);
    const sggn::DenseOperator op(a);
    const auto pre = sggn::build_preconditioner(op, default_spec(4096, 16, 400 + seed));
    const auto sv = singular_values(a * pre.R);
    const double smax2 = sv.front() * sv.front();
    const double smin2 = sv.back() * sv.back();
    REQUIRE(smax2 <= 1.25);
    REQUIRE(smin2 >= 0.75);

    sggn::RegressionConfig cfg;
    cfg.eps = 1e-8;
    cfg.sketch.seed = 400 + seed;
    const VectorXd y = gaussian(16, 1, 500 + seed).col(0);
    const auto rep = sggn::fast_regression(op, y, cfg);
    for (double ratio : rep.preconditioned_contraction) {
      CHECK(ratio <= 9.0 / 16.0 + 1e-9);
    }
  }
}

TEST_CASE("iteration count respects the budget formula") {
  const MatrixXd a = gaussian(4096, 64, 53);
  const VectorXd y = gaussian(64, 1, 59).col(0);
  sggn::RegressionConfig cfg;
  cfg.eps = 1e-8;
  const auto rep = sggn::fast_regression(sggn::DenseOperator(a), y, cfg);
  CHECK(rep.iterations <= sggn::iteration_budget(rep.condition_estimate, cfg.eps));
}

TEST_CASE("budget exhaustion retries and eventually surfaces SolveError") {
  // An eps beyond double precision can never be reached, so every attempt
  // exhausts its budget and the retry schedule runs dry.
  const MatrixXd a = gaussian(128, 8, 61);
  const VectorXd y = gaussian(8, 1, 67).col(0);
  sggn::RegressionConfig cfg;
  cfg.eps = 1e-300;
  cfg.retries = 1;
  cfg.max_iter_slack = 0;
  CHECK_THROWS_AS(sggn::fast_regression(sggn::DenseOperator(a), y, cfg), sggn::SolveError);
}

TEST_CASE("a bad first sketch is healed by the retry schedule") {
  // Force a uselessly small sketch; the retry doubles rows until it works.
  const MatrixXd a = gaussian(1024, 16, 71);
  const VectorXd y = gaussian(16, 1, 73).col(0);
  sggn::RegressionConfig cfg;
  cfg.eps = 1e-8;
  cfg.sketch.rows = 16;  // k rows: far too few to precondition well
  cfg.retries = 6;
  const auto rep = sggn::fast_regression(sggn::DenseOperator(a), y, cfg);
  CHECK(rep.residual_history.back() <= cfg.eps * y.norm());
}

TEST_CASE("naive_normal_solve identities") {
  // A = I: solution is y itself.
  const VectorXd y = gaussian(5, 1, 79).col(0);
  CHECK((sggn::naive_normal_solve(MatrixXd::Identity(5, 5), y) - y).cwiseAbs().maxCoeff() <
        1e-14);

  // diag(1,2,3) embedded in 6x3: A^T A = diag(1,4,9).
  MatrixXd a = MatrixXd::Zero(6, 3);
  a(0, 0) = 1.0;
  a(1, 1) = 2.0;
  a(2, 2) = 3.0;
  VectorXd rhs(3);
  rhs << 1.0, 4.0, 9.0;
  const VectorXd x = sggn::naive_normal_solve(a, rhs);
  CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(x[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(x[2] == doctest::Approx(1.0).epsilon(1e-14));

  CHECK_THROWS_AS(sggn::naive_normal_solve(MatrixXd::Zero(4, 2), rhs.head(2)),
                  sggn::RankError);
}

TEST_CASE("fast_regression agrees with naive_normal_solve on a 512x16 instance") {
  const MatrixXd a = conditioned_matrix(512, 16, 20.0, 83);
  const VectorXd y = gaussian(16, 1, 89).col(0);
  const VectorXd x_naive = sggn::naive_normal_solve(a, y);
  sggn::RegressionConfig cfg;
  cfg.eps = 1e-12;
  const auto rep = sggn::fast_regression(sggn::DenseOperator(a), y, cfg);
  CHECK((rep.solution - x_naive).norm() / x_naive.norm() < 1e-8);
}

TEST_CASE("condition composition: kappa(B) <= kappa(AB) kappa(A)") {
  // A = I: equality up to tolerance.
  const MatrixXd b = gaussian(8, 8, 97);
  CHECK(sggn::condition_composition_check(MatrixXd::Identity(8, 8), b));

  // Tight diagonal case: kappa(B)=10, kappa(AB)=1, kappa(A)=10.
  MatrixXd da = MatrixXd::Zero(2, 2), db = MatrixXd::Zero(2, 2);
  da(0, 0) = 1.0;
  da(1, 1) = 10.0;
  db(0, 0) = 10.0;
  db(1, 1) = 1.0;
  CHECK(sggn::condition_composition_check(da, db));

  // 1000 random pairs.
  for (int s = 0; s < 1000; ++s) {
    const MatrixXd a = gaussian(8, 8, 1000 + s);
    const MatrixXd bb = gaussian(8, 8, 5000 + s);
    CHECK(sggn::condition_composition_check(a, bb));
  }

  CHECK_THROWS_AS(sggn::condition_composition_check(MatrixXd::Zero(3, 3), b.topRows(3)),
                  sggn::RankError);
}

TEST_CASE("dense operator adjointness on random probes") {
  const MatrixXd a = gaussian(300, 24, 101);
  const sggn::DenseOperator op(a);
  for (int t = 0; t < 10; ++t) {
    const VectorXd v = gaussian(24, 1, 2000 + t).col(0);
    const VectorXd u = gaussian(300, 1, 3000 + t).col(0);
    const double lhs = op.apply(v).dot(u);
    const double rhs = v.dot(op.apply_transpose(u));
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(std::abs(lhs), 1.0));
  }
  // column(j) == apply(e_j)
  for (Eigen::Index j : {0L, 5L, 23L}) {
    VectorXd e = VectorXd::Zero(24);
    e[j] = 1.0;
    CHECK((op.column(j) - op.apply(e)).cwiseAbs().maxCoeff() == 0.0);
  }
  // fused normal pass equals the two-step composition
  const VectorXd x = gaussian(24, 1, 113).col(0);
  const VectorXd fused = op.normal_apply(x);
  const VectorXd two_step = op.apply_transpose(op.apply(x));
  CHECK((fused - two_step).norm() <= 1e-12 * two_step.norm());
}

TEST_CASE("fast_regression rejects bad inputs") {
  const sggn::DenseOperator op(gaussian(64, 4, 127));
  sggn::RegressionConfig cfg;
  CHECK_THROWS_AS(sggn::fast_regression(op, VectorXd::Zero(5), cfg), sggn::DimensionError);
  cfg.eps = 0.0;
  CHECK_THROWS_AS(sggn::fast_regression(op, VectorXd::Zero(4), cfg), sggn::ConfigError);
  cfg.eps = 1e-8;
  VectorXd bad = VectorXd::Zero(4);
  bad[0] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(sggn::fast_regression(op, bad, cfg), sggn::NumericalError);
}
