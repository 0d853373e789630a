#ifndef SGGN_TRACE_IO_HPP
#define SGGN_TRACE_IO_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace sggn {

inline constexpr int kTraceSchemaVersion = 1;

// Line-delimited JSON run record: one config line, one line per iteration,
// one summary line. t_ns stamps are monotone within a record stream.
class TraceWriter {
 public:
  TraceWriter();

  void config(const std::string& command, nlohmann::json params);
  // Arbitrary per-iteration fields plus the required ones.
  void iteration(int index, double residual, int inner_iters, std::int64_t time_ns,
                 nlohmann::json extra = nlohmann::json::object());
  void record(nlohmann::json fields);  // free-form extra record (bench rows etc.)
  void summary(nlohmann::json fields);

  // JSONL, one record per line.
  void write(std::ostream& out) const;
  void write_file(const std::string& path) const;

  // iteration,residual,inner_iters,time_ns rows for every iteration record.
  void write_csv(std::ostream& out) const;
  void write_csv_file(const std::string& path) const;

  const std::vector<nlohmann::json>& records() const { return records_; }

 private:
  std::int64_t elapsed_ns() const;

  std::vector<nlohmann::json> records_;
  std::int64_t start_ns_ = 0;
};

// Shortest round-trip double formatting (what the JSON writer uses too), so
// residual columns are byte-stable for identical doubles.
std::string format_double(double v);

}  // namespace sggn

#endif  // SGGN_TRACE_IO_HPP
