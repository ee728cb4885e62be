// wmm command-line front end. Everything substantive lives behind the C API
// of libwmm; this binary only parses flags, builds the run configuration and
// prints what comes back.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wmm/wmm.h"

namespace {

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { wmm_string_free(ptr); }
  std::string str() const { return ptr ? ptr : ""; }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wmm — litmus-test checker for weak memory models"};
  app.require_subcommand(1);

  CLI::App* run = app.add_subcommand("run", "check litmus tests against models");
  std::vector<std::string> paths;
  std::vector<std::string> models;
  std::string engine = "both";
  std::string format = "table";
  std::string expect;
  std::string out_path;
  bool check_expect = false;
  bool no_fail_on_mismatch = false;
  bool all_models = false;
  int workers = 0;
  run->add_option("paths", paths, ".litmus files or directories")->required();
  run->add_option("--model", models, "model name (SC, TSO, ARM, RISCV) or .cat file");
  run->add_flag("--all-models", all_models, "use SC, TSO and ARM");
  run->add_option("--engine", engine, "axiomatic | operational | both")
      ->check(CLI::IsMember({"axiomatic", "operational", "both"}));
  run->add_option("--format", format, "table | json | dot | trace")
      ->check(CLI::IsMember({"table", "json", "dot", "trace"}));
  run->add_flag("--check-expect", check_expect,
                "compare against the tests' expect blocks");
  run->add_option("--expect", expect, "require yes/no for every verdict")
      ->check(CLI::IsMember({"yes", "no"}));
  run->add_flag("--no-fail-on-mismatch", no_fail_on_mismatch,
                "report mismatches without failing the exit code");
  run->add_option("--out", out_path, "write output to a file instead of stdout");
  run->add_option("--workers", workers, "parallel worker cap (0 = auto)");

  CLI::App* version = app.add_subcommand("version", "print the version");

  CLI11_PARSE(app, argc, argv);

  if (version->parsed()) {
    std::cout << "wmm " << wmm_version() << "\n";
    return 0;
  }

  if (all_models) {
    models.clear();
    models = {"SC", "TSO", "ARM"};
  }
  if (models.empty()) {
    std::cerr << "no model given; pass --model or --all-models\n";
    return 2;
  }

  nlohmann::json config = {
      {"tests", paths},     {"models", models},
      {"engine", engine},   {"format", format},
      {"check_expect", check_expect}, {"workers", workers},
      {"fail_on_mismatch", !no_fail_on_mismatch},
  };
  if (!expect.empty()) config["expect"] = expect;

  OwnedString output, diagnostics;
  int exit_code = 0;
  wmm_status status = wmm_run(config.dump().c_str(), &output.ptr,
                              &diagnostics.ptr, &exit_code);
  if (status != WMM_OK) {
    std::cerr << "wmm: " << diagnostics.str() << "\n";
    return 2;
  }

  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "wmm: cannot write " << out_path << "\n";
      return 2;
    }
    out << output.str();
  } else {
    std::cout << output.str();
  }
  if (!diagnostics.str().empty()) std::cerr << diagnostics.str();
  return exit_code;
}
