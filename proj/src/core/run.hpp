#ifndef WMM_CORE_RUN_HPP_
#define WMM_CORE_RUN_HPP_

#include <optional>
#include <string>
#include <vector>

#include "core/axiomatic.hpp"
#include "core/operational.hpp"

namespace wmm::report {

enum class EngineChoice { Axiomatic, Operational, Both };
enum class Format { Table, Json, Dot, Trace };

struct RunConfig {
  std::vector<std::string> test_paths;  // files or directories
  std::vector<std::string> models;      // built-in names or .cat file paths
  EngineChoice engine = EngineChoice::Both;
  Format format = Format::Table;
  bool check_expect = false;
  std::optional<bool> expect_override;  // --expect yes|no
  // When set (the default), expectation failures and cross-engine
  // disagreements drive the exit code; otherwise they are only reported.
  bool fail_on_mismatch = true;
  int workers = 0;  // 0 = hardware default
};

struct Row {
  std::string test;
  std::string model;
  std::string engine;  // "axiomatic" | "operational"
  bool reachable = false;
  std::optional<bool> expected;   // from expect block or --expect
  std::string witness;            // final state, cycle or trace summary
};

struct Report {
  std::vector<Row> rows;
  // Per (test, model) cross-engine agreement when both engines ran:
  // verdicts and reachable final-state sets must coincide.
  struct Agreement {
    std::string test;
    std::string model;
    bool agree = true;
    std::string detail;
  };
  std::vector<Agreement> agreements;
  std::vector<std::string> errors;  // usage/parse problems

  bool any_expectation_failed() const;
  bool any_disagreement() const;
};

struct RunOutput {
  std::string output;       // rendered per config.format
  std::string diagnostics;  // error stream content
  int exit_code = 0;        // 0 ok, 1 mismatch, 2 usage/parse error
  Report report;
};

RunOutput run(const RunConfig& config);

// Known model names for expect blocks and --model.
bool is_known_model_name(const std::string& name);

}  // namespace wmm::report

#endif  // WMM_CORE_RUN_HPP_
