#include "core/run.hpp"

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "core/dot.hpp"

namespace wmm::report {

namespace {

namespace fs = std::filesystem;

struct LoadedTest {
  std::string display;
  litmus::LitmusTest test;
};

struct LoadedModel {
  std::string display;                     // CLI name or declared name
  const ax::ModelSpec* builtin = nullptr;  // built-ins only
  ax::ModelSpec owned;                     // custom files
  std::optional<op::Semantics> semantics;  // operational counterpart

  const ax::ModelSpec& spec() const { return builtin ? *builtin : owned; }
};

std::string cycle_string(const ax::ExecutionGraph& g,
                         const std::vector<rel::EventId>& cycle) {
  std::string out;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    if (i) out += " -> ";
    out += g.event_label(cycle[i]);
  }
  if (!cycle.empty()) out += " -> " + g.event_label(cycle[0]);
  return out;
}

struct CellResult {
  std::optional<ax::AxVerdict> ax;
  std::optional<op::OpVerdict> op;
  std::optional<std::set<FinalState>> ax_states;
  std::optional<std::set<FinalState>> op_states;
  std::string dot;
  std::string trace_text;
  std::string op_witness;
  std::string error;
};

std::string format_final_states(const std::set<FinalState>& states,
                                const ProgramLayout& layout) {
  std::string out = "{";
  bool first = true;
  for (const auto& fs : states) {
    out += first ? "" : "; ";
    out += fs.to_string(layout);
    first = false;
  }
  return out + "}";
}

}  // namespace

bool Report::any_expectation_failed() const {
  for (const Row& r : rows)
    if (r.expected && *r.expected != r.reachable) return true;
  return false;
}

bool Report::any_disagreement() const {
  for (const auto& a : agreements)
    if (!a.agree) return true;
  return false;
}

bool is_known_model_name(const std::string& name) {
  return ax::builtin_model(name) != nullptr;
}

RunOutput run(const RunConfig& config) {
  RunOutput out;
  Report& report = out.report;

  // --- load tests ---
  std::vector<LoadedTest> tests;
  for (const std::string& path : config.test_paths) {
    try {
      if (fs::is_directory(path)) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(path))
          if (entry.is_regular_file() && entry.path().extension() == ".litmus")
            files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        if (files.empty())
          report.errors.push_back("no .litmus files in " + path);
        for (const auto& f : files) {
          try {
            LoadedTest lt;
            lt.test = litmus::parse_litmus_file(f);
            lt.display = lt.test.name;
            tests.push_back(std::move(lt));
          } catch (const std::exception& e) {
            report.errors.push_back(f.string() + ": " + e.what());
          }
        }
      } else {
        LoadedTest lt;
        lt.test = litmus::parse_litmus_file(path);
        lt.display = lt.test.name;
        tests.push_back(std::move(lt));
      }
    } catch (const std::exception& e) {
      report.errors.push_back(path + ": " + e.what());
    }
  }
  if (tests.empty() && report.errors.empty())
    report.errors.push_back("no tests given");

  // --- resolve models ---
  std::vector<LoadedModel> models;
  for (const std::string& name : config.models) {
    LoadedModel m;
    if (const ax::ModelSpec* spec = ax::builtin_model(name)) {
      m.display = name;
      m.builtin = spec;
      m.semantics = op::semantics_from_name(name);
    } else if (fs::exists(name)) {
      try {
        std::ifstream in(name);
        std::ostringstream buf;
        buf << in.rdbuf();
        m.owned = ax::parse_model(buf.str());
        m.display = m.owned.name;
      } catch (const std::exception& e) {
        report.errors.push_back(name + ": " + e.what());
        continue;
      }
    } else {
      report.errors.push_back("unknown model '" + name +
                              "' (not a built-in, not a file)");
      continue;
    }
    models.push_back(std::move(m));
  }
  if (models.empty() && report.errors.empty())
    report.errors.push_back("no models given");

  bool wants_operational = config.engine != EngineChoice::Axiomatic;
  for (const LoadedModel& m : models)
    if (wants_operational && !m.semantics)
      report.errors.push_back("model '" + m.display +
                              "' is a file and has no operational "
                              "counterpart; use --engine axiomatic");
  if (config.format == Format::Dot && config.engine == EngineChoice::Operational)
    report.errors.push_back("dot output requires the axiomatic engine");
  if (config.format == Format::Trace && config.engine == EngineChoice::Axiomatic)
    report.errors.push_back("trace output requires the operational engine");

  // --check-expect refuses expect blocks naming unknown models.
  if (config.check_expect) {
    for (const auto& t : tests)
      for (const auto& [model, _] : t.test.expectations)
        if (!is_known_model_name(model))
          report.errors.push_back("test " + t.test.name +
                                  ": expect block names unknown model '" +
                                  model + "'");
  }

  if (!report.errors.empty()) {
    std::string diag;
    for (const auto& e : report.errors) diag += e + "\n";
    out.diagnostics = diag;
    out.exit_code = 2;
    return out;
  }

  // --- evaluate every (test, model) cell, possibly in parallel ---
  bool run_ax = config.engine != EngineChoice::Operational;
  bool run_op = config.engine != EngineChoice::Axiomatic;
  bool need_sets = run_ax && run_op;

  std::vector<CellResult> cells(tests.size() * models.size());
  auto eval_cell = [&](std::size_t idx) {
    const LoadedTest& t = tests[idx / models.size()];
    const LoadedModel& m = models[idx % models.size()];
    CellResult& cell = cells[idx];
    try {
      ProgramLayout layout(t.test);
      if (run_ax) {
        cell.ax = ax::reachable_axiomatic(t.test, m.spec());
        if (config.format == Format::Dot) {
          if (cell.ax->witness) {
            cell.dot = ax::emit_dot(cell.ax->witness->graph,
                                    t.display + "__" + m.display);
          } else {
            cell.dot = "digraph \"" + t.display + "__" + m.display +
                       "\" {\n  // no candidate matches the postcondition\n}\n";
          }
        }
        if (need_sets)
          cell.ax_states = ax::axiomatic_final_states(t.test, m.spec());
      }
      if (run_op) {
        op::Semantics sem = *m.semantics;
        cell.op = op::reachable_operational(t.test, sem);
        if (need_sets) cell.op_states = op::explore(t.test, sem).state_set();
        if (cell.op->reachable) {
          cell.op_witness = cell.op->witness_state.to_string(layout);
          std::string text;
          for (const auto& st : cell.op->trace)
            text += op::format_step(st, layout) + "\n";
          cell.trace_text = std::move(text);
        }
      }
    } catch (const std::exception& e) {
      cell.error = e.what();
    }
  };

  int workers = config.workers;
  if (workers <= 0) {
    if (const char* env = std::getenv("WMM_WORKERS")) workers = std::atoi(env);
    if (workers <= 0)
      workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers <= 0) workers = 1;
  }
  std::size_t total = cells.size();
  if (workers <= 1 || total <= 1) {
    for (std::size_t i = 0; i < total; ++i) eval_cell(i);
  } else {
    std::atomic<std::size_t> next_idx{0};
    std::vector<std::thread> pool;
    int n = std::min<std::size_t>(workers, total);
    for (int w = 0; w < n; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next_idx.fetch_add(1); i < total;
             i = next_idx.fetch_add(1))
          eval_cell(i);
      });
    for (auto& th : pool) th.join();
  }

  // --- assemble the report in input order ---
  std::ostringstream rendered;
  std::vector<std::string> dot_chunks, trace_chunks;
  for (std::size_t ti = 0; ti < tests.size(); ++ti) {
    const LoadedTest& t = tests[ti];
    ProgramLayout layout(t.test);
    for (std::size_t mi = 0; mi < models.size(); ++mi) {
      const LoadedModel& m = models[mi];
      CellResult& cell = cells[ti * models.size() + mi];
      if (!cell.error.empty()) {
        report.errors.push_back("test " + t.display + ", model " + m.display +
                                ": " + cell.error);
        continue;
      }

      std::optional<bool> expected = config.expect_override;
      if (!expected && config.check_expect && m.builtin) {
        // Expect-block names resolve like CLI names, so RISCV matches an
        // ARM entry and vice versa.
        for (const auto& [model, e] : t.test.expectations) {
          if (ax::builtin_model(model) == m.builtin) {
            expected = e == litmus::Expectation::Reachable;
            break;
          }
        }
      }

      if (cell.ax) {
        Row row;
        row.test = t.display;
        row.model = m.display;
        row.engine = "axiomatic";
        row.reachable = cell.ax->reachable;
        row.expected = expected;
        if (cell.ax->reachable && cell.ax->witness)
          row.witness = cell.ax->witness->final_state.to_string(layout);
        else if (cell.ax->witness)
          row.witness = "axiom " + cell.ax->failing_axiom + ": " +
                        cycle_string(cell.ax->witness->graph, cell.ax->cycle);
        report.rows.push_back(std::move(row));
        if (config.format == Format::Dot) dot_chunks.push_back(cell.dot);
      }
      if (cell.op) {
        Row row;
        row.test = t.display;
        row.model = m.display;
        row.engine = "operational";
        row.reachable = cell.op->reachable;
        row.expected = expected;
        row.witness = cell.op_witness;
        report.rows.push_back(std::move(row));
        if (config.format == Format::Trace) {
          std::string chunk = "# " + t.display + " under " + m.display + ": ";
          chunk += cell.op->reachable ? "reachable\n" + cell.trace_text
                                      : "unreachable\n";
          trace_chunks.push_back(std::move(chunk));
        }
      }
      if (cell.ax && cell.op) {
        Report::Agreement agreement;
        agreement.test = t.display;
        agreement.model = m.display;
        bool verdicts = cell.ax->reachable == cell.op->reachable;
        bool sets = *cell.ax_states == *cell.op_states;
        agreement.agree = verdicts && sets;
        if (!verdicts)
          agreement.detail = "verdicts differ";
        else if (!sets)
          agreement.detail = "final-state sets differ: axiomatic " +
                             format_final_states(*cell.ax_states, layout) +
                             " vs operational " +
                             format_final_states(*cell.op_states, layout);
        report.agreements.push_back(std::move(agreement));
      }
    }
  }

  // --- render ---
  switch (config.format) {
    case Format::Table: {
      std::size_t wt = 4, wm = 5;
      for (const Row& r : report.rows) {
        wt = std::max(wt, r.test.size());
        wm = std::max(wm, r.model.size());
      }
      auto pad = [](const std::string& s, std::size_t w) {
        return s + std::string(w - s.size() + 2, ' ');
      };
      rendered << pad("test", wt) << pad("model", wm) << pad("engine", 11)
               << pad("verdict", 11) << pad("expect", 6) << "agree\n";
      for (const Row& r : report.rows) {
        std::string expect = "-";
        if (r.expected)
          expect = *r.expected == r.reachable ? "ok" : "FAIL";
        std::string agree = "-";
        for (const auto& a : report.agreements)
          if (a.test == r.test && a.model == r.model)
            agree = a.agree ? "yes" : "NO";
        rendered << pad(r.test, wt) << pad(r.model, wm) << pad(r.engine, 11)
                 << pad(r.reachable ? "reachable" : "unreachable", 11)
                 << pad(expect, 6) << agree << "\n";
      }
      break;
    }
    case Format::Json: {
      nlohmann::json arr = nlohmann::json::array();
      for (const Row& r : report.rows) {
        nlohmann::json row = {{"test", r.test},
                              {"model", r.model},
                              {"engine", r.engine},
                              {"reachable", r.reachable}};
        if (!r.witness.empty()) row["witness"] = r.witness;
        arr.push_back(std::move(row));
      }
      rendered << arr.dump(2) << "\n";
      break;
    }
    case Format::Dot:
      for (const auto& chunk : dot_chunks) rendered << chunk;
      break;
    case Format::Trace:
      for (const auto& chunk : trace_chunks) rendered << chunk;
      break;
  }

  std::string diag;
  for (const auto& e : report.errors) diag += e + "\n";
  for (const auto& r : report.rows)
    if (r.expected && *r.expected != r.reachable)
      diag += "expectation failed: " + r.test + " under " + r.model + " (" +
              r.engine + ") is " + (r.reachable ? "reachable" : "unreachable") +
              ", expected " + (*r.expected ? "reachable" : "unreachable") +
              "\n";
  for (const auto& a : report.agreements)
    if (!a.agree)
      diag += "engines disagree: " + a.test + " under " + a.model + ": " +
              a.detail + "\n";

  out.output = rendered.str();
  out.diagnostics = diag;
  if (!report.errors.empty())
    out.exit_code = 2;
  else if (config.fail_on_mismatch &&
           (report.any_expectation_failed() || report.any_disagreement()))
    out.exit_code = 1;
  else
    out.exit_code = 0;
  return out;
}

}  // namespace wmm::report
