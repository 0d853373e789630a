#include "sggn/dataset_io.hpp"

#include <cmath>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "sggn/errors.hpp"
#include "sggn/rng.hpp"

namespace sggn {

Dataset generate_dataset(Eigen::Index n, Eigen::Index d, std::uint64_t seed, LabelMode mode) {
  if (n < 1 || d < 1) throw ConfigError("generate_dataset: n and d must be >= 1");

  Eigen::MatrixXd x(d, n);
  SplitMix64 rng(derive_seed(seed, "inputs"));
  for (Eigen::Index i = 0; i < n; ++i) {
    // One Box-Muller pair per two coordinates, restarted per column.
    for (Eigen::Index j = 0; j < d; j += 2) {
      double z0, z1;
      rng.gauss2(z0, z1);
      x(j, i) = z0;
      if (j + 1 < d) x(j + 1, i) = z1;
    }
    const double norm = x.col(i).norm();
    if (norm == 0.0) {
      x(0, i) = 1.0;  // measure-zero fallback
    } else {
      x.col(i) /= norm;
    }
  }

  Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
  switch (mode) {
    case LabelMode::kZeros:
      break;
    case LabelMode::kSigns: {
      SplitMix64 label_rng(derive_seed(seed, "labels"));
      for (Eigen::Index i = 0; i < n; ++i) y[i] = label_rng.sign();
      break;
    }
    case LabelMode::kTeacher: {
      const NetworkState teacher = init_network(64, d, derive_seed(seed, "teacher"));
      const Dataset unlabeled(x, Eigen::VectorXd::Zero(n));
      y = forward(teacher, unlabeled);
      const double peak = y.cwiseAbs().maxCoeff();
      if (peak > 1.0) y /= peak;
      break;
    }
  }
  return Dataset(std::move(x), std::move(y));
}

namespace {

bool parse_double(const std::string& field, double& out) {
  const char* begin = field.data();
  const char* end = begin + field.size();
  while (begin != end && (*begin == ' ' || *begin == '\t')) ++begin;
  while (end != begin && (*(end - 1) == ' ' || *(end - 1) == '\t' || *(end - 1) == '\r')) --end;
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && begin != end;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

Dataset load_dataset(std::istream& in, const std::string& name, bool normalize) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  bool first_content_line = true;

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv(line);
    std::vector<double> values(fields.size());
    bool numeric = true;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (!parse_double(fields[i], values[i])) {
        numeric = false;
        break;
      }
    }
    if (!numeric) {
      if (first_content_line) {
        first_content_line = false;  // header
        continue;
      }
      throw ParseError(name + ":" + std::to_string(line_no) + ": non-numeric field");
    }
    first_content_line = false;
    if (width == 0) {
      width = values.size();
      if (width < 2) {
        throw ParseError(name + ":" + std::to_string(line_no) +
                         ": need at least one feature column plus a label");
      }
    } else if (values.size() != width) {
      throw ParseError(name + ":" + std::to_string(line_no) + ": expected " +
                       std::to_string(width) + " fields, got " + std::to_string(values.size()));
    }
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw ParseError(name + ": no data rows");

  const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index d = static_cast<Eigen::Index>(width) - 1;
  Eigen::MatrixXd x(d, n);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) x(j, i) = rows[i][j];
    y[i] = rows[i][width - 1];
    if (normalize) {
      const double norm = x.col(i).norm();
      if (norm == 0.0) {
        throw ParseError(name + ": sample " + std::to_string(i) +
                         " is the zero vector and cannot be normalized");
      }
      x.col(i) /= norm;
    }
  }
  try {
    return Dataset(std::move(x), std::move(y));
  } catch (const ConfigError& e) {
    throw ParseError(name + ": " + e.what() + " (rerun with --normalize to rescale)");
  }
}

Dataset load_dataset(const std::string& path, bool normalize) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open");
  return load_dataset(in, path, normalize);
}

void save_dataset(const Dataset& data, std::ostream& out) {
  char buf[32];
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    for (Eigen::Index j = 0; j < data.d(); ++j) {
      const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), data.X()(j, i));
      out.write(buf, ptr - buf);
      out.put(',');
    }
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), data.y()[i]);
    out.write(buf, ptr - buf);
    out.put('\n');
  }
}

void save_dataset(const Dataset& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open for writing");
  save_dataset(data, out);
}

}  // namespace sggn
