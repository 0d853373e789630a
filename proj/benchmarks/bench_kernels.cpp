// Serial reference vs OpenMP kernels. Run with --benchmark_filter=... to
// narrow; thread counts sweep over the Args entries.

#include <benchmark/benchmark.h>

#include "sggn/dataset_io.hpp"
#include "sggn/network.hpp"
#include "sggn/parallel.hpp"
#include "sggn/reference.hpp"
#include "sggn/rng.hpp"
#include "sggn/sketch.hpp"

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

sggn::SketchOperator sketch_for(Eigen::Index n, Eigen::Index k) {
  sggn::SketchSpec spec;
  spec.input_dim = n;
  spec.rows = sggn::default_sketch_rows(k, spec.padded_dim());
  spec.seed = 2;
  return sggn::build_sketch(spec);
}

void bm_sketch_serial(benchmark::State& state) {
  const Eigen::Index n = state.range(0), k = 32;
  const sggn::DenseOperator a(gaussian(n, k, 1));
  const auto op = sketch_for(n, k);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sggn::ref::sketch_matrix(op, a));
  }
}

void bm_sketch_parallel(benchmark::State& state) {
  const Eigen::Index n = state.range(0), k = 32;
  sggn::set_threads(static_cast<int>(state.range(1)));
  const sggn::DenseOperator a(gaussian(n, k, 1));
  const auto op = sketch_for(n, k);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sggn::sketch_matrix(op, a));
  }
  sggn::set_threads(1);
}

}  // namespace

BENCHMARK(bm_sketch_serial)->Arg(16384)->Arg(65536);
BENCHMARK(bm_sketch_parallel)->Args({16384, 1})->Args({16384, 2})->Args({65536, 2});

namespace {

struct TrainFixtureData {
  sggn::NetworkState net = sggn::init_network(8192, 8, 3);
  sggn::Dataset data = sggn::generate_dataset(32, 8, 4, sggn::LabelMode::kTeacher);
};

TrainFixtureData& fixture() {
  static TrainFixtureData f;
  return f;
}

void bm_jacobian_apply_serial(benchmark::State& state) {
  auto& f = fixture();
  const auto jac = sggn::implicit_jacobian(f.net, f.data);
  const VectorXd v = gaussian(jac.param_dim(), 1, 5).col(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sggn::ref::jac_apply(jac, v));
  }
}

void bm_jacobian_apply_parallel(benchmark::State& state) {
  auto& f = fixture();
  sggn::set_threads(static_cast<int>(state.range(0)));
  const auto jac = sggn::implicit_jacobian(f.net, f.data);
  const VectorXd v = gaussian(jac.param_dim(), 1, 5).col(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(jac.jac_apply(v));
  }
  sggn::set_threads(1);
}

void bm_gram_serial(benchmark::State& state) {
  auto& f = fixture();
  const auto jac = sggn::implicit_jacobian(f.net, f.data);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sggn::ref::gram(jac));
  }
}

void bm_gram_parallel(benchmark::State& state) {
  auto& f = fixture();
  sggn::set_threads(static_cast<int>(state.range(0)));
  const auto jac = sggn::implicit_jacobian(f.net, f.data);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sggn::gram(jac));
  }
  sggn::set_threads(1);
}

void bm_normal_apply_serial(benchmark::State& state) {
  const Eigen::Index n = state.range(0), k = 64;
  const MatrixXd a = gaussian(n, k, 6);
  const VectorXd x = gaussian(k, 1, 7).col(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        sggn::ref::dense_apply_transpose(a, sggn::ref::dense_apply(a, x)));
  }
}

void bm_normal_apply_parallel(benchmark::State& state) {
  const Eigen::Index n = state.range(0), k = 64;
  sggn::set_threads(static_cast<int>(state.range(1)));
  const sggn::DenseOperator op(gaussian(n, k, 6));
  const VectorXd x = gaussian(k, 1, 7).col(0);
  VectorXd out(k);
  for (auto _ : state) {
    op.normal_apply(x, out);
    benchmark::DoNotOptimize(out);
  }
  sggn::set_threads(1);
}

}  // namespace

BENCHMARK(bm_jacobian_apply_serial);
BENCHMARK(bm_jacobian_apply_parallel)->Arg(1)->Arg(2);
BENCHMARK(bm_gram_serial);
BENCHMARK(bm_gram_parallel)->Arg(1)->Arg(2);
BENCHMARK(bm_normal_apply_serial)->Arg(65536);
BENCHMARK(bm_normal_apply_parallel)->Args({65536, 1})->Args({65536, 2});

BENCHMARK_MAIN();
