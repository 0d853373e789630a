#include "sggn/network.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "sggn/errors.hpp"
#include "sggn/rng.hpp"

namespace sggn {

namespace {

// Shared dot kernel: forward, jac_apply and the gradient all route their
// inner products through here so that algebraically equal quantities are
// also bit-equal (same instruction sequence on the same operands).
inline double dot_d(const double* a, const double* b, Eigen::Index d) {
  double acc = 0.0;
  for (Eigen::Index j = 0; j < d; ++j) acc += a[j] * b[j];
  return acc;
}

}  // namespace

Dataset::Dataset(Eigen::MatrixXd x, Eigen::VectorXd y, bool require_unit_columns)
    : x_(std::move(x)), y_(std::move(y)) {
  if (y_.size() != x_.cols()) {
    throw DimensionError("Dataset: label count " + std::to_string(y_.size()) +
                         " != sample count " + std::to_string(x_.cols()));
  }
  if (!x_.allFinite() || !y_.allFinite()) {
    throw NumericalError("Dataset: non-finite entries");
  }
  if (require_unit_columns) {
    for (Eigen::Index i = 0; i < x_.cols(); ++i) {
      const double norm = x_.col(i).norm();
      if (std::abs(norm - 1.0) > 1e-8) {
        throw ConfigError("Dataset: column " + std::to_string(i) + " has norm " +
                          std::to_string(norm) + "; inputs must be unit vectors "
                          "(normalize explicitly if that is intended)");
      }
    }
  }
}

NetworkState init_network(Eigen::Index m, Eigen::Index d, std::uint64_t seed) {
  if (m < 1 || d < 1) throw ConfigError("init_network: m and d must be >= 1");
  NetworkState net;
  net.m = m;
  net.d = d;
  net.scale = 1.0 / std::sqrt(static_cast<double>(m));
  net.W.resize(m, d);
  net.a.resize(m);

  SplitMix64 rng(seed);
  // Row-major entry order: W(0,0), W(0,1), ..., one Box-Muller pair per two
  // entries, trailing odd entry discards the pair's second value.
  const Eigen::Index total = m * d;
  for (Eigen::Index idx = 0; idx < total; idx += 2) {
    double z0, z1;
    rng.gauss2(z0, z1);
    net.W(idx / d, idx % d) = z0;
    if (idx + 1 < total) net.W((idx + 1) / d, (idx + 1) % d) = z1;
  }
  for (Eigen::Index r = 0; r < m; ++r) net.a[r] = rng.sign();
  return net;
}

namespace {

struct Activations {
  Eigen::VectorXd f;
  std::vector<std::uint8_t> pattern;  // m x n column-major
};

Activations compute_activations(const NetworkState& net, const Dataset& data) {
  if (data.d() != net.d) {
    throw DimensionError("network/data dimension mismatch: d=" + std::to_string(net.d) +
                         " vs " + std::to_string(data.d()));
  }
  const Eigen::Index m = net.m, n = data.n(), d = net.d;
  // w_r contiguous: column r of the transposed weight matrix.
  const Eigen::MatrixXd wt = net.W.transpose();
  const double* a = net.a.data();

  Activations act;
  act.f.resize(n);
  act.pattern.assign(static_cast<std::size_t>(m) * n, 0);
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i) {
    const double* xi = data.X().col(i).data();
    std::uint8_t* phi = act.pattern.data() + static_cast<std::size_t>(i) * m;
    double acc = 0.0;
    for (Eigen::Index r = 0; r < m; ++r) {
      const double z = dot_d(wt.col(r).data(), xi, d);
      if (z >= 0.0) {
        phi[r] = 1;
        acc += a[r] * z;
      }
    }
    act.f[i] = net.scale * acc;
  }
  return act;
}

}  // namespace

Eigen::VectorXd forward(const NetworkState& net, const Dataset& data) {
  return compute_activations(net, data).f;
}

double loss(const NetworkState& net, const Dataset& data) {
  return 0.5 * (forward(net, data) - data.y()).squaredNorm();
}

ImplicitJacobian implicit_jacobian(const NetworkState& net, const Dataset& data) {
  Activations act = compute_activations(net, data);
  return ImplicitJacobian(data.X(), net.a, net.scale, std::move(act.pattern), net.m);
}

JacobianWithOutput implicit_jacobian_with_output(const NetworkState& net, const Dataset& data) {
  Activations act = compute_activations(net, data);
  return {ImplicitJacobian(data.X(), net.a, net.scale, std::move(act.pattern), net.m),
          std::move(act.f)};
}

Eigen::VectorXd vec_row_major(const Eigen::MatrixXd& w) {
  Eigen::VectorXd out(w.size());
  for (Eigen::Index r = 0; r < w.rows(); ++r) {
    out.segment(r * w.cols(), w.cols()) = w.row(r).transpose();
  }
  return out;
}

Eigen::MatrixXd gradient(const NetworkState& net, const Dataset& data) {
  Activations act = compute_activations(net, data);
  ImplicitJacobian jac(data.X(), net.a, net.scale, std::move(act.pattern), net.m);
  const Eigen::VectorXd flat = jac.jac_apply_transpose(act.f - data.y());
  // Row-major md vector back to m x d.
  Eigen::MatrixXd out(net.m, net.d);
  for (Eigen::Index r = 0; r < net.m; ++r) {
    out.row(r) = flat.segment(r * net.d, net.d).transpose();
  }
  return out;
}

ImplicitJacobian::ImplicitJacobian(Eigen::MatrixXd x, Eigen::VectorXd a, double scale,
                                   std::vector<std::uint8_t> pattern, Eigen::Index m)
    : x_(std::move(x)), a_(std::move(a)), scale_(scale), pattern_(std::move(pattern)), m_(m) {
  if (static_cast<Eigen::Index>(pattern_.size()) != m_ * x_.cols()) {
    throw DimensionError("ImplicitJacobian: pattern size mismatch");
  }
  if (a_.size() != m_) {
    throw DimensionError("ImplicitJacobian: sign vector length mismatch");
  }
}

Eigen::VectorXd ImplicitJacobian::jac_apply(const Eigen::Ref<const Eigen::VectorXd>& v) const {
  if (v.size() != param_dim()) {
    throw DimensionError("jac_apply: vector length != m*d");
  }
  const Eigen::Index n = this->n(), d = this->d(), m = m_;
  Eigen::VectorXd out(n);
  const double* a = a_.data();
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i) {
    const double* xi = x_.col(i).data();
    const std::uint8_t* phi = pattern_.data() + static_cast<std::size_t>(i) * m;
    double acc = 0.0;
    for (Eigen::Index r = 0; r < m; ++r) {
      if (phi[r]) {
        const double z = dot_d(v.data() + r * d, xi, d);
        acc += a[r] * z;
      }
    }
    out[i] = scale_ * acc;
  }
  return out;
}

Eigen::VectorXd ImplicitJacobian::jac_apply_transpose(
    const Eigen::Ref<const Eigen::VectorXd>& u) const {
  if (u.size() != n()) {
    throw DimensionError("jac_apply_transpose: vector length != n");
  }
  const Eigen::Index n = this->n(), d = this->d(), m = m_;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(param_dim());
#pragma omp parallel for schedule(static)
  for (Eigen::Index r = 0; r < m; ++r) {
    double* block = out.data() + r * d;
    const double coeff = scale_ * a_[r];
    for (Eigen::Index i = 0; i < n; ++i) {
      if (pattern_[r + static_cast<std::size_t>(i) * m]) {
        const double s = coeff * u[i];
        const double* xi = x_.col(i).data();
        for (Eigen::Index j = 0; j < d; ++j) block[j] += s * xi[j];
      }
    }
  }
  return out;
}

Eigen::VectorXd ImplicitJacobian::jac_column(Eigen::Index i) const {
  if (i < 0 || i >= n()) throw DimensionError("jac_column: index out of range");
  const Eigen::Index d = this->d(), m = m_;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(param_dim());
  const double* xi = x_.col(i).data();
  const std::uint8_t* phi = pattern_.data() + static_cast<std::size_t>(i) * m;
  for (Eigen::Index r = 0; r < m; ++r) {
    if (phi[r]) {
      const double coeff = scale_ * a_[r];
      double* block = out.data() + r * d;
      for (Eigen::Index j = 0; j < d; ++j) block[j] = coeff * xi[j];
    }
  }
  return out;
}

void JacobianTransposeOperator::apply(const Eigen::Ref<const Eigen::VectorXd>& x,
                                      Eigen::Ref<Eigen::VectorXd> out) const {
  check_apply_dims(x.size(), out.size());
  out = jac_.jac_apply_transpose(x);
}

void JacobianTransposeOperator::apply_transpose(const Eigen::Ref<const Eigen::VectorXd>& u,
                                                Eigen::Ref<Eigen::VectorXd> out) const {
  check_transpose_dims(u.size(), out.size());
  out = jac_.jac_apply(u);
}

void JacobianTransposeOperator::column(Eigen::Index j, Eigen::Ref<Eigen::VectorXd> out) const {
  out = jac_.jac_column(j);
}

Eigen::MatrixXd gram(const ImplicitJacobian& jac) {
  const Eigen::Index n = jac.n(), m = jac.m();
  const Eigen::MatrixXd xtx = jac.X().transpose() * jac.X();
  Eigen::MatrixXd g(n, n);
  const std::uint8_t* phi = jac.pattern_data().data();
  const double inv_m = 1.0 / static_cast<double>(m);
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const std::uint8_t* pi = phi + static_cast<std::size_t>(i) * m;
      const std::uint8_t* pj = phi + static_cast<std::size_t>(j) * m;
      std::int64_t count = 0;
      for (Eigen::Index r = 0; r < m; ++r) count += pi[r] & pj[r];
      const double value = xtx(i, j) * static_cast<double>(count) * inv_m;
      g(i, j) = value;
      g(j, i) = value;
    }
  }
  return g;
}

KernelEstimate ntk_kernel(const Dataset& data, KernelMethod method, Eigen::Index samples,
                          std::uint64_t seed) {
  const Eigen::Index n = data.n(), d = data.d();
  const Eigen::MatrixXd xtx = data.X().transpose() * data.X();
  KernelEstimate est;
  est.K.resize(n, n);

  if (method == KernelMethod::kClosedForm) {
    est.method = KernelEstimate::Method::kClosedForm;
    constexpr double kPi = 3.141592653589793238462643383279502884;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i; j < n; ++j) {
        const double rho = std::clamp(xtx(i, j), -1.0, 1.0);
        const double value = rho * (kPi - std::acos(rho)) / (2.0 * kPi);
        est.K(i, j) = value;
        est.K(j, i) = value;
      }
    }
  } else {
    if (samples < 1) throw ConfigError("ntk_kernel: monte-carlo mode needs samples >= 1");
    est.method = KernelEstimate::Method::kMonteCarlo;
    est.samples = samples;
    // Integer co-activation counts over Gaussian draws; each sample consumes
    // exactly 2*ceil(d/2) uniform draws, so parallel blocks can skip ahead
    // and the count matrix is identical for any thread count.
    const Eigen::Index draws_per_sample = 2 * ((d + 1) / 2);
    std::vector<std::int64_t> counts(static_cast<std::size_t>(n) * n, 0);
#pragma omp parallel
    {
      std::vector<std::int64_t> local(static_cast<std::size_t>(n) * n, 0);
      Eigen::VectorXd w(d);
      std::vector<std::uint8_t> active(n);
      SplitMix64 rng(seed);
#pragma omp for schedule(static)
      for (Eigen::Index s = 0; s < samples; ++s) {
        rng.skip_to(static_cast<std::uint64_t>(s) * draws_per_sample);
        for (Eigen::Index j = 0; j < d; j += 2) {
          double z0, z1;
          rng.gauss2(z0, z1);
          w[j] = z0;
          if (j + 1 < d) w[j + 1] = z1;
        }
        for (Eigen::Index i = 0; i < n; ++i) {
          active[i] = data.X().col(i).dot(w) >= 0.0 ? 1 : 0;
        }
        for (Eigen::Index i = 0; i < n; ++i) {
          if (!active[i]) continue;
          std::int64_t* row = local.data() + static_cast<std::size_t>(i) * n;
          for (Eigen::Index j = i; j < n; ++j) row[j] += active[j];
        }
      }
#pragma omp critical
      for (std::size_t idx = 0; idx < counts.size(); ++idx) counts[idx] += local[idx];
    }
    const double inv = 1.0 / static_cast<double>(samples);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i; j < n; ++j) {
        const double value =
            xtx(i, j) * static_cast<double>(counts[static_cast<std::size_t>(i) * n + j]) * inv;
        est.K(i, j) = value;
        est.K(j, i) = value;
      }
    }
  }
  est.lambda_min = min_eigen(est.K);
  return est;
}

double min_eigen(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw DimensionError("min_eigen: matrix not square");
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10) {
    throw DimensionError("min_eigen: matrix asymmetric by " + std::to_string(asym));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

}  // namespace sggn
