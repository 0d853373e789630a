#include "sggn/trace_io.hpp"

#include <charconv>
#include <chrono>
#include <fstream>
#include <ostream>

#include "sggn/errors.hpp"

namespace sggn {

namespace {

std::int64_t now_ns() {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

TraceWriter::TraceWriter() : start_ns_(now_ns()) {}

std::int64_t TraceWriter::elapsed_ns() const {
  return now_ns() - start_ns_;
}

void TraceWriter::config(const std::string& command, nlohmann::json params) {
  nlohmann::json rec{{"record", "config"},
                     {"schema_version", kTraceSchemaVersion},
                     {"command", command},
                     {"params", std::move(params)},
                     {"t_ns", elapsed_ns()}};
  records_.push_back(std::move(rec));
}

void TraceWriter::iteration(int index, double residual, int inner_iters, std::int64_t time_ns,
                            nlohmann::json extra) {
  nlohmann::json rec{{"record", "iteration"},
                     {"iteration", index},
                     {"residual", residual},
                     {"inner_iters", inner_iters},
                     {"time_ns", time_ns},
                     {"t_ns", elapsed_ns()}};
  for (auto& [key, value] : extra.items()) rec[key] = std::move(value);
  records_.push_back(std::move(rec));
}

void TraceWriter::record(nlohmann::json fields) {
  fields["t_ns"] = elapsed_ns();
  records_.push_back(std::move(fields));
}

void TraceWriter::summary(nlohmann::json fields) {
  fields["record"] = "summary";
  fields["t_ns"] = elapsed_ns();
  records_.push_back(std::move(fields));
}

void TraceWriter::write(std::ostream& out) const {
  for (const auto& rec : records_) {
    out << rec.dump() << '\n';
  }
}

void TraceWriter::write_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open for writing");
  write(out);
}

void TraceWriter::write_csv(std::ostream& out) const {
  out << "iteration,residual,inner_iters,time_ns\n";
  for (const auto& rec : records_) {
    if (rec.value("record", "") != "iteration") continue;
    out << rec["iteration"].get<int>() << ','
        << format_double(rec["residual"].get<double>()) << ','
        << rec["inner_iters"].get<int>() << ',' << rec["time_ns"].get<std::int64_t>() << '\n';
  }
}

void TraceWriter::write_csv_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open for writing");
  write_csv(out);
}

}  // namespace sggn
