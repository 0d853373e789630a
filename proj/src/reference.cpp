#include "sggn/reference.hpp"

#include <cmath>

#include "sggn/errors.hpp"
#include "sggn/fwht.hpp"

namespace sggn::ref {

Eigen::MatrixXd hadamard_matrix(Eigen::Index n) {
  if (!is_power_of_two(n)) throw DimensionError("hadamard_matrix: n must be a power of two");
  Eigen::MatrixXd h(1, 1);
  h(0, 0) = 1.0;
  while (h.rows() < n) {
    const Eigen::Index k = h.rows();
    Eigen::MatrixXd next(2 * k, 2 * k);
    next.topLeftCorner(k, k) = h;
    next.topRightCorner(k, k) = h;
    next.bottomLeftCorner(k, k) = h;
    next.bottomRightCorner(k, k) = -h;
    h = std::move(next);
  }
  return h / std::sqrt(static_cast<double>(n));
}

Eigen::VectorXd fwht(const Eigen::VectorXd& v) {
  const Eigen::Index n = v.size();
  if (!is_power_of_two(n)) throw DimensionError("ref::fwht: length must be a power of two");
  Eigen::VectorXd out = v;
  for (Eigen::Index h = 1; h < n; h <<= 1) {
    for (Eigen::Index i = 0; i < n; i += h << 1) {
      for (Eigen::Index j = i; j < i + h; ++j) {
        const double s = out[j];
        const double t = out[j + h];
        out[j] = s + t;
        out[j + h] = s - t;
      }
    }
  }
  return out / std::sqrt(static_cast<double>(n));
}

Eigen::MatrixXd sketch_matrix(const SketchOperator& op, const LinearOperator& a) {
  Eigen::MatrixXd out(op.rows(), a.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    out.col(j) = op.apply(a.column(j));
  }
  return out;
}

Eigen::VectorXd forward(const NetworkState& net, const Dataset& data) {
  Eigen::VectorXd f(data.n());
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    double acc = 0.0;
    for (Eigen::Index r = 0; r < net.m; ++r) {
      double z = 0.0;
      for (Eigen::Index j = 0; j < net.d; ++j) z += net.W(r, j) * data.X()(j, i);
      acc += net.a[r] * std::max(z, 0.0);
    }
    f[i] = net.scale * acc;
  }
  return f;
}

Eigen::MatrixXd dense_jacobian(const NetworkState& net, const Dataset& data) {
  if (net.m * net.d > 100000) {
    throw ConfigError("dense_jacobian: guarded to m*d <= 1e5");
  }
  Eigen::MatrixXd j(data.n(), net.m * net.d);
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    for (Eigen::Index r = 0; r < net.m; ++r) {
      double z = 0.0;
      for (Eigen::Index t = 0; t < net.d; ++t) z += net.W(r, t) * data.X()(t, i);
      const double coeff = z >= 0.0 ? net.scale * net.a[r] : 0.0;
      for (Eigen::Index t = 0; t < net.d; ++t) j(i, r * net.d + t) = coeff * data.X()(t, i);
    }
  }
  return j;
}

Eigen::MatrixXd gram_dense(const NetworkState& net, const Dataset& data) {
  const Eigen::MatrixXd j = dense_jacobian(net, data);
  return j * j.transpose();
}

Eigen::VectorXd jac_apply(const ImplicitJacobian& jac, const Eigen::VectorXd& v) {
  Eigen::VectorXd out(jac.n());
  for (Eigen::Index i = 0; i < jac.n(); ++i) {
    double acc = 0.0;
    for (Eigen::Index r = 0; r < jac.m(); ++r) {
      if (!jac.pattern(r, i)) continue;
      double z = 0.0;
      for (Eigen::Index t = 0; t < jac.d(); ++t) z += v[r * jac.d() + t] * jac.X()(t, i);
      acc += jac.a()[r] * z;
    }
    out[i] = jac.scale() * acc;
  }
  return out;
}

Eigen::VectorXd jac_apply_transpose(const ImplicitJacobian& jac, const Eigen::VectorXd& u) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(jac.param_dim());
  for (Eigen::Index r = 0; r < jac.m(); ++r) {
    for (Eigen::Index i = 0; i < jac.n(); ++i) {
      if (!jac.pattern(r, i)) continue;
      const double s = jac.scale() * jac.a()[r] * u[i];
      for (Eigen::Index t = 0; t < jac.d(); ++t) out[r * jac.d() + t] += s * jac.X()(t, i);
    }
  }
  return out;
}

Eigen::MatrixXd gram(const ImplicitJacobian& jac) {
  const Eigen::Index n = jac.n();
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      std::int64_t count = 0;
      for (Eigen::Index r = 0; r < jac.m(); ++r) {
        count += jac.pattern(r, i) & jac.pattern(r, j);
      }
      g(i, j) = jac.X().col(i).dot(jac.X().col(j)) * static_cast<double>(count) /
                static_cast<double>(jac.m());
    }
  }
  return g;
}

Eigen::VectorXd dense_apply(const Eigen::MatrixXd& a, const Eigen::VectorXd& x) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(a.rows());
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) out[i] += a(i, j) * x[j];
  }
  return out;
}

Eigen::VectorXd dense_apply_transpose(const Eigen::MatrixXd& a, const Eigen::VectorXd& u) {
  Eigen::VectorXd out(a.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) acc += a(i, j) * u[i];
    out[j] = acc;
  }
  return out;
}

}  // namespace sggn::ref
