#pragma once

// Batch jobs behind the command line: one JobSpec in, one deterministic
// report out. Degrees and weights in jobs and reports use the declared
// grading of the model (cohomological for forms, homological for currents).

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fdeligne {

struct Range {
  int lo = 0, hi = 0;
};

/// "a..b" or "a". BadArgument otherwise.
Range parse_range(const std::string& text);

struct JobSpec {
  std::string command;
  std::string model;  // model name; ignored when file is set
  std::string file;   // complex file
  std::optional<Range> n, p, e, N, k;
  std::string family = "point";
  std::string context = "P1-point";
  std::string scale = "1";
  bool json = false;
  int cap = 64;  // longest accepted range
};

struct Report {
  std::string command;
  std::string subject;
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::pair<std::string, bool>> checks;
  std::string error;
  int status = 0;

  bool passed() const;
};

std::string render_table(const Report& r);
std::string render_json(const Report& r);

struct JobResult {
  std::string text;
  int status = 0;  // 0 ok, 1 check failure, 2 parse failure, 3 validation failure
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheck = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitInvalid = 3;

std::vector<std::string> job_commands();
Report run_report(const JobSpec& job);
JobResult run(const JobSpec& job);

}  // namespace fdeligne
