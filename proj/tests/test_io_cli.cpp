#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sggn/cli.hpp"
#include "sggn/dataset_io.hpp"
#include "sggn/errors.hpp"
#include "sggn/network.hpp"
#include "sggn/trace_io.hpp"

using nlohmann::json;

namespace {

// Unique-ish temp path under the build tree.
std::string temp_path(const std::string& tag) {
  static int counter = 0;
  return "sggn_test_" + tag + "_" + std::to_string(counter++) + ".tmp";
}

struct TempFile {
  explicit TempFile(const std::string& tag) : path(temp_path(tag)) {}
  ~TempFile() { std::remove(path.c_str()); }
  std::string path;
};

std::vector<json> read_jsonl(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::vector<json> records;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) records.push_back(json::parse(line));
  }
  return records;
}

std::vector<double> residual_column(const std::vector<json>& records) {
  std::vector<double> out;
  for (const auto& rec : records) {
    if (rec.value("record", "") == "iteration") out.push_back(rec["residual"].get<double>());
  }
  return out;
}

}  // namespace

TEST_CASE("generated columns are unit vectors and reproducible") {
  const auto d1 = sggn::generate_dataset(8, 4, 42, sggn::LabelMode::kTeacher);
  const auto d2 = sggn::generate_dataset(8, 4, 42, sggn::LabelMode::kTeacher);
  CHECK(d1.X() == d2.X());
  CHECK(d1.y() == d2.y());
  for (Eigen::Index i = 0; i < d1.n(); ++i) {
    CHECK(std::abs(d1.X().col(i).norm() - 1.0) <= 1e-12);
  }
  CHECK(d1.y().cwiseAbs().maxCoeff() <= 1.0);

  const auto signs = sggn::generate_dataset(8, 4, 42, sggn::LabelMode::kSigns);
  for (Eigen::Index i = 0; i < signs.n(); ++i) {
    CHECK((signs.y()[i] == 1.0 || signs.y()[i] == -1.0));
  }
  const auto zeros = sggn::generate_dataset(8, 4, 42, sggn::LabelMode::kZeros);
  CHECK(zeros.y().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("generated data has a positive kernel eigenvalue in nearly all seeds") {
  int ok = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto data = sggn::generate_dataset(8, 4, seed, sggn::LabelMode::kZeros);
    const auto est = sggn::ntk_kernel(data, sggn::KernelMethod::kMonteCarlo, 20000, seed);
    if (est.lambda_min > 0.0) ++ok;
  }
  CHECK(ok >= 99);
}

TEST_CASE("dataset round-trips through CSV at full precision") {
  const auto data = sggn::generate_dataset(6, 3, 7, sggn::LabelMode::kTeacher);
  TempFile file("roundtrip");
  sggn::save_dataset(data, file.path);
  const auto loaded = sggn::load_dataset(file.path);
  CHECK((loaded.X() - data.X()).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((loaded.y() - data.y()).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("loader validates norms, rows and fields") {
  {
    std::istringstream bad("1,0,0.5\n");
    CHECK_THROWS_AS(sggn::load_dataset(bad, "mem", false), sggn::ParseError);
  }
  {
    std::istringstream ok("0.6,0.8,1\n");
    const auto data = sggn::load_dataset(ok, "mem", false);
    CHECK(data.n() == 1);
    CHECK(data.y()[0] == 1.0);
  }
  {
    // --normalize on the row (3,4): features become (0.6, 0.8)
    std::istringstream norm("3,4,1\n");
    const auto data = sggn::load_dataset(norm, "mem", true);
    CHECK(data.X()(0, 0) == doctest::Approx(0.6));
    CHECK(data.X()(1, 0) == doctest::Approx(0.8));
  }
  {
    std::istringstream ragged("0.6,0.8,1\n1,0\n");
    try {
      sggn::load_dataset(ragged, "mem", false);
      FAIL("expected ParseError");
    } catch (const sggn::ParseError& e) {
      CHECK(std::string(e.what()).find(":2") != std::string::npos);  // line number
    }
  }
  {
    std::istringstream nonnum("0.6,0.8,1\n0.6,zebra,1\n");
    try {
      sggn::load_dataset(nonnum, "mem", false);
      FAIL("expected ParseError");
    } catch (const sggn::ParseError& e) {
      CHECK(std::string(e.what()).find(":2") != std::string::npos);
    }
  }
  {
    // header line is allowed
    std::istringstream header("x0,x1,y\n0.6,0.8,1\n");
    CHECK_NOTHROW(sggn::load_dataset(header, "mem", false));
  }
}

TEST_CASE("cli --help exits zero") {
  CHECK(sggn::run_command({"--help"}) == 0);
}

TEST_CASE("cli unknown flag is a usage error") {
  CHECK(sggn::run_command({"train", "--definitely-not-a-flag", "3"}) == 2);
  CHECK(sggn::run_command({"no-such-command"}) == 2);
}

TEST_CASE("cli regress meets its residual contract and is reproducible") {
  TempFile out1("regress1"), out2("regress2"), csv("regress_csv");
  REQUIRE(sggn::run_command({"regress", "--n", "512", "--k", "16", "--eps", "1e-8", "--seed",
                             "1", "--out", out1.path, "--csv", csv.path, "--threads", "1"}) ==
          0);
  REQUIRE(sggn::run_command({"regress", "--n", "512", "--k", "16", "--eps", "1e-8", "--seed",
                             "1", "--out", out2.path, "--threads", "1"}) == 0);

  const auto rec1 = read_jsonl(out1.path);
  const auto rec2 = read_jsonl(out2.path);
  const auto res1 = residual_column(rec1);
  const auto res2 = residual_column(rec2);
  REQUIRE(!res1.empty());
  CHECK(res1 == res2);  // byte-identical residual columns

  // summary satisfies the relative-residual contract
  const auto& summary1 = rec1.back();
  REQUIRE(summary1["record"] == "summary");
  CHECK(summary1["success"].get<bool>());
  CHECK(summary1["final_residual"].get<double>() <=
        1e-8 * summary1["rhs_norm"].get<double>());

  // CSV has the documented header and one row per iteration record
  std::ifstream csv_in(csv.path);
  std::string header;
  std::getline(csv_in, header);
  CHECK(header == "iteration,residual,inner_iters,time_ns");
  std::size_t rows = 0;
  std::string line;
  while (std::getline(csv_in, line)) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows == res1.size());
}

TEST_CASE("cli train run produces a strictly decreasing residual column") {
  TempFile out("train");
  const int code = sggn::run_command({"train", "--n", "8", "--d", "4", "--m", "2048",
                                      "--iters", "10", "--seed", "3", "--out", out.path,
                                      "--threads", "1"});
  CHECK(code == 0);
  const auto records = read_jsonl(out.path);
  const auto residuals = residual_column(records);
  REQUIRE(residuals.size() >= 2);
  for (std::size_t i = 1; i < residuals.size(); ++i) {
    CHECK(residuals[i] < residuals[i - 1]);
  }
  CHECK(records.front()["record"] == "config");
  CHECK(records.front()["params"]["m"] == 2048);
  // timestamps are monotone
  std::int64_t last = -1;
  for (const auto& rec : records) {
    const std::int64_t t = rec["t_ns"].get<std::int64_t>();
    CHECK(t >= last);
    last = t;
  }
}

TEST_CASE("cli ntk reports the kernel and lambda_min") {
  TempFile out("ntk");
  REQUIRE(sggn::run_command({"ntk", "--n", "6", "--d", "3", "--method", "closed-form",
                             "--seed", "5", "--out", out.path}) == 0);
  const auto records = read_jsonl(out.path);
  bool saw_kernel = false;
  for (const auto& rec : records) {
    if (rec.value("record", "") == "kernel") {
      saw_kernel = true;
      CHECK(rec["K"].size() == 6);
      for (int i = 0; i < 6; ++i) CHECK(rec["K"][i][i].get<double>() == 0.5);
    }
  }
  CHECK(saw_kernel);
}

TEST_CASE("cli newton converges on the quadratic problem") {
  TempFile out("newton");
  REQUIRE(sggn::run_command({"newton", "--problem", "quadratic", "--q", "128", "--p", "8",
                             "--iters", "15", "--seed", "2", "--out", out.path}) == 0);
  const auto records = read_jsonl(out.path);
  const auto& summary = records.back();
  CHECK(summary["success"].get<bool>());
  CHECK(summary["final_x_error"].get<double>() <= 1e-8);
}

TEST_CASE("cli bench with an empty grid emits an empty table and exits zero") {
  TempFile out("bench");
  REQUIRE(sggn::run_command({"bench", "--grid", "", "--out", out.path}) == 0);
  const auto records = read_jsonl(out.path);
  for (const auto& rec : records) {
    CHECK(rec.value("record", "") != "bench");
  }
  CHECK(records.back()["record"] == "summary");
}

TEST_CASE("cli bench runs a tiny grid") {
  TempFile out("bench2");
  REQUIRE(sggn::run_command({"bench", "--grid", "1024x8,2048x8", "--reps", "1", "--seed",
                             "4", "--out", out.path}) == 0);
  const auto records = read_jsonl(out.path);
  int bench_rows = 0, ratio_rows = 0;
  for (const auto& rec : records) {
    if (rec.value("record", "") == "bench") ++bench_rows;
    if (rec.value("record", "") == "bench_ratio") ++ratio_rows;
  }
  CHECK(bench_rows == 2);
  CHECK(ratio_rows == 1);
}

TEST_CASE("trace writer formats doubles with round-trip precision") {
  const double v = 0.1234567890123456789;
  const std::string s = sggn::format_double(v);
  CHECK(std::stod(s) == v);
}
