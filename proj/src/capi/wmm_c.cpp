#include "wmm/wmm.h"

#include <cstring>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "core/axiomatic.hpp"
#include "core/dot.hpp"
#include "core/litmus.hpp"
#include "core/model.hpp"
#include "core/operational.hpp"
#include "core/run.hpp"

using wmm::FinalState;
using wmm::ProgramLayout;

struct wmm_test {
  wmm::litmus::LitmusTest test;
};

struct wmm_model {
  std::string display;
  const wmm::ax::ModelSpec* spec = nullptr;  // built-in
  wmm::ax::ModelSpec owned;                  // parsed from text/file

  const wmm::ax::ModelSpec& get() const { return spec ? *spec : owned; }
};

struct wmm_result {
  bool axiomatic = false;
  std::optional<wmm::ax::AxVerdict> ax;
  std::optional<wmm::op::OpVerdict> op;
  ProgramLayout layout;
  std::string dot;
  std::vector<std::string> final_states;

  explicit wmm_result(const wmm::litmus::LitmusTest& t) : layout(t) {}
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_err(char** errmsg, const std::string& msg) {
  if (errmsg) *errmsg = dup_string(msg);
}

wmm_status classify(const std::exception& e) {
  if (dynamic_cast<const wmm::litmus::ValidationError*>(&e))
    return WMM_ERR_VALIDATION;
  if (dynamic_cast<const wmm::litmus::SyntaxError*>(&e)) return WMM_ERR_SYNTAX;
  if (dynamic_cast<const wmm::ax::ModelSyntaxError*>(&e))
    return WMM_ERR_SYNTAX;
  if (dynamic_cast<const wmm::ax::UnknownIdentifier*>(&e))
    return WMM_ERR_UNKNOWN_NAME;
  return WMM_ERR_INTERNAL;
}

std::string slurp(const char* path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure(std::string("cannot open ") + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

extern "C" {

const char* wmm_version(void) { return "1.0.0"; }

void wmm_string_free(char* s) { std::free(s); }

wmm_status wmm_test_parse(const char* text, wmm_test** out, char** errmsg) {
  if (!text || !out) return WMM_ERR_INVALID_ARG;
  try {
    auto* t = new wmm_test{wmm::litmus::parse_litmus(text)};
    *out = t;
    return WMM_OK;
  } catch (const std::exception& e) {
    set_err(errmsg, e.what());
    return classify(e);
  }
}

wmm_status wmm_test_load_file(const char* path, wmm_test** out,
                              char** errmsg) {
  if (!path || !out) return WMM_ERR_INVALID_ARG;
  try {
    std::string text = slurp(path);
    return wmm_test_parse(text.c_str(), out, errmsg);
  } catch (const std::exception& e) {
    set_err(errmsg, e.what());
    return WMM_ERR_IO;
  }
}

wmm_status wmm_test_serialize(const wmm_test* test, char** out) {
  if (!test || !out) return WMM_ERR_INVALID_ARG;
  *out = dup_string(wmm::litmus::serialize_litmus(test->test));
  return WMM_OK;
}

const char* wmm_test_name(const wmm_test* test) {
  return test ? test->test.name.c_str() : nullptr;
}

void wmm_test_free(wmm_test* test) { delete test; }

wmm_status wmm_model_builtin(const char* name, wmm_model** out,
                             char** errmsg) {
  if (!name || !out) return WMM_ERR_INVALID_ARG;
  const wmm::ax::ModelSpec* spec = wmm::ax::builtin_model(name);
  if (!spec) {
    set_err(errmsg, std::string("unknown built-in model '") + name + "'");
    return WMM_ERR_UNKNOWN_NAME;
  }
  auto* m = new wmm_model;
  m->display = name;
  m->spec = spec;
  *out = m;
  return WMM_OK;
}

wmm_status wmm_model_parse(const char* text, wmm_model** out, char** errmsg) {
  if (!text || !out) return WMM_ERR_INVALID_ARG;
  try {
    wmm::ax::ModelSpec spec = wmm::ax::parse_model(text);
    auto* m = new wmm_model;
    m->owned = std::move(spec);
    m->display = m->owned.name;
    *out = m;
    return WMM_OK;
  } catch (const std::exception& e) {
    set_err(errmsg, e.what());
    return classify(e);
  }
}

wmm_status wmm_model_load_file(const char* path, wmm_model** out,
                               char** errmsg) {
  if (!path || !out) return WMM_ERR_INVALID_ARG;
  try {
    std::string text = slurp(path);
    return wmm_model_parse(text.c_str(), out, errmsg);
  } catch (const std::ios_base::failure& e) {
    set_err(errmsg, e.what());
    return WMM_ERR_IO;
  } catch (const std::exception& e) {
    set_err(errmsg, e.what());
    return classify(e);
  }
}

const char* wmm_model_name(const wmm_model* model) {
  return model ? model->display.c_str() : nullptr;
}

const char* wmm_model_builtin_source(const char* name) {
  if (!name) return nullptr;
  const std::string* src = wmm::ax::builtin_model_source(name);
  return src ? src->c_str() : nullptr;
}

void wmm_model_free(wmm_model* model) { delete model; }

wmm_status wmm_check_axiomatic(const wmm_test* test, const wmm_model* model,
                               wmm_result** out, char** errmsg) {
  if (!test || !model || !out) return WMM_ERR_INVALID_ARG;
  try {
    auto* r = new wmm_result(test->test);
    r->axiomatic = true;
    r->ax = wmm::ax::reachable_axiomatic(test->test, model->get());
    if (r->ax->witness)
      r->dot = wmm::ax::emit_dot(r->ax->witness->graph,
                                 test->test.name + "__" + model->display);
    for (const FinalState& fs :
         wmm::ax::axiomatic_final_states(test->test, model->get()))
      r->final_states.push_back(fs.to_string(r->layout));
    *out = r;
    return WMM_OK;
  } catch (const std::exception& e) {
    set_err(errmsg, e.what());
    return classify(e);
  }
}

wmm_status wmm_check_operational(const wmm_test* test, const char* semantics,
                                 wmm_result** out, char** errmsg) {
  if (!test || !semantics || !out) return WMM_ERR_INVALID_ARG;
  try {
    wmm::op::Semantics sem = wmm::op::semantics_from_name(semantics);
    auto* r = new wmm_result(test->test);
    r->op = wmm::op::reachable_operational(test->test, sem);
    for (const auto& [fs, trace] : wmm::op::explore(test->test, sem).states)
      r->final_states.push_back(fs.to_string(r->layout));
    *out = r;
    return WMM_OK;
  } catch (const std::invalid_argument& e) {
    set_err(errmsg, e.what());
    return WMM_ERR_UNKNOWN_NAME;
  } catch (const std::exception& e) {
    set_err(errmsg, e.what());
    return classify(e);
  }
}

int wmm_result_reachable(const wmm_result* result) {
  if (!result) return 0;
  if (result->ax) return result->ax->reachable ? 1 : 0;
  if (result->op) return result->op->reachable ? 1 : 0;
  return 0;
}

wmm_status wmm_result_witness(const wmm_result* result, char** out) {
  if (!result || !out) return WMM_ERR_INVALID_ARG;
  if (result->ax && result->ax->witness) {
    *out = dup_string(result->ax->witness->final_state.to_string(
        result->layout));
    return WMM_OK;
  }
  if (result->op && result->op->reachable) {
    *out = dup_string(result->op->witness_state.to_string(result->layout));
    return WMM_OK;
  }
  *out = dup_string("");
  return WMM_OK;
}

wmm_status wmm_result_dot(const wmm_result* result, char** out) {
  if (!result || !out) return WMM_ERR_INVALID_ARG;
  if (!result->axiomatic) return WMM_ERR_INVALID_ARG;
  *out = dup_string(result->dot);
  return WMM_OK;
}

wmm_status wmm_result_trace(const wmm_result* result, char** out) {
  if (!result || !out) return WMM_ERR_INVALID_ARG;
  if (!result->op) return WMM_ERR_INVALID_ARG;
  std::string text;
  for (const auto& st : result->op->trace)
    text += wmm::op::format_step(st, result->layout) + "\n";
  *out = dup_string(text);
  return WMM_OK;
}

wmm_status wmm_result_final_states(const wmm_result* result, char** out) {
  if (!result || !out) return WMM_ERR_INVALID_ARG;
  std::string text;
  for (const auto& line : result->final_states) text += line + "\n";
  *out = dup_string(text);
  return WMM_OK;
}

void wmm_result_free(wmm_result* result) { delete result; }

wmm_status wmm_run(const char* config_json, char** output, char** diagnostics,
                   int* exit_code) {
  if (!config_json || !output || !exit_code) return WMM_ERR_INVALID_ARG;
  try {
    nlohmann::json j = nlohmann::json::parse(config_json);
    wmm::report::RunConfig config;
    for (const auto& p : j.value("tests", nlohmann::json::array()))
      config.test_paths.push_back(p.get<std::string>());
    for (const auto& m : j.value("models", nlohmann::json::array()))
      config.models.push_back(m.get<std::string>());
    std::string engine = j.value("engine", "both");
    config.engine = engine == "axiomatic"
                        ? wmm::report::EngineChoice::Axiomatic
                    : engine == "operational"
                        ? wmm::report::EngineChoice::Operational
                        : wmm::report::EngineChoice::Both;
    std::string format = j.value("format", "table");
    config.format = format == "json"    ? wmm::report::Format::Json
                    : format == "dot"   ? wmm::report::Format::Dot
                    : format == "trace" ? wmm::report::Format::Trace
                                        : wmm::report::Format::Table;
    config.check_expect = j.value("check_expect", false);
    config.fail_on_mismatch = j.value("fail_on_mismatch", true);
    if (j.contains("expect"))
      config.expect_override = j["expect"].get<std::string>() == "yes";
    config.workers = j.value("workers", 0);

    wmm::report::RunOutput result = wmm::report::run(config);
    *output = dup_string(result.output);
    if (diagnostics) *diagnostics = dup_string(result.diagnostics);
    *exit_code = result.exit_code;
    return WMM_OK;
  } catch (const nlohmann::json::exception& e) {
    if (diagnostics) *diagnostics = dup_string(e.what());
    return WMM_ERR_INVALID_ARG;
  } catch (const std::exception& e) {
    if (diagnostics) *diagnostics = dup_string(e.what());
    return WMM_ERR_INTERNAL;
  }
}

}  // extern "C"
