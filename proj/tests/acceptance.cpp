// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "core/axiomatic.hpp"
#include "core/litmus.hpp"
#include "core/operational.hpp"
#include "support/graph_builder.hpp"
#include "support/random_program.hpp"

using namespace wmm;
using litmus::LitmusTest;
using litmus::Value;

namespace {

int failures = 0;

void report(const std::string& name, bool ok, const std::string& detail = "") {
  std::printf("%s %s%s%s\n", ok ? "PASS" : "FAIL", name.c_str(),
              detail.empty() ? "" : ": ", detail.c_str());
  if (!ok) ++failures;
}

LitmusTest corpus_test(const std::vector<LitmusTest>& corpus,
                       const std::string& name) {
  for (const auto& t : corpus)
    if (t.name == name) return t;
  throw std::runtime_error("missing corpus test " + name);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

// --- criterion 1: the classic litmus-test verdict matrix ---

void criterion_table_matrix(const std::vector<LitmusTest>& corpus) {
  auto start = std::chrono::steady_clock::now();
  struct RowSpec {
    const char* test;
    bool sc, tso, arm;
  };
  const RowSpec expected[] = {
      {"SB", false, true, true},   {"LB", false, false, true},
      {"MP", false, false, true},  {"IRIW", false, false, false},
      {"LB_ctrls", false, false, false},
  };
  bool ok = true;
  std::string detail;
  for (const RowSpec& row : expected) {
    LitmusTest t = corpus_test(corpus, row.test);
    bool sc = ax::reachable_axiomatic(t, ax::builtin_sc()).reachable;
    bool tso = ax::reachable_axiomatic(t, ax::builtin_tso()).reachable;
    bool arm = ax::reachable_axiomatic(t, ax::builtin_armish()).reachable;
    bool riscv =
        ax::reachable_axiomatic(t, *ax::builtin_model("RISCV")).reachable;
    if (sc != row.sc || tso != row.tso || arm != row.arm || riscv != row.arm) {
      ok = false;
      detail += std::string(row.test) + " got " + (sc ? "y" : "n") +
                (tso ? "y" : "n") + (arm ? "y" : "n") + (riscv ? "y" : "n") +
                " ";
    }
  }
  double elapsed = seconds_since(start);
  if (elapsed >= 5.0) {
    ok = false;
    detail += "runtime " + std::to_string(elapsed) + "s >= 5s";
  }
  report("criterion-1 litmus matrix (15 cells, SC/x86/Arm/RISC-V)", ok,
         detail);
}

// --- criterion 2: worked-example fidelity ---

void criterion_worked_examples(const std::vector<LitmusTest>& corpus) {
  bool ok = true;
  std::string detail;
  auto expect = [&](bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += what + "; ";
    }
  };

  // The SC rejection cycle of the forbidden SB execution, verbatim.
  LitmusTest sb = corpus_test(corpus, "SB");
  ax::AxVerdict sc_verdict = ax::reachable_axiomatic(sb, ax::builtin_sc());
  expect(!sc_verdict.reachable, "SB under SC must be unreachable");
  std::vector<std::string> cycle;
  if (sc_verdict.witness)
    for (rel::EventId e : sc_verdict.cycle)
      cycle.push_back(sc_verdict.witness->graph.event_label(e));
  expect(cycle == std::vector<std::string>{"Ra y=0", "Wb y=1", "Rb x=0",
                                           "Wa x=1"},
         "SC rejection cycle is not a2->b1->b2->a1");

  // The TSO trace reaching r1 = r2 = 0.
  ProgramLayout sb_layout(sb);
  op::OpVerdict tso_verdict = op::reachable_operational(sb, op::Semantics::TSO);
  expect(tso_verdict.reachable, "SB under TSO must be reachable");
  expect(!tso_verdict.trace.empty(), "TSO witness trace missing");
  if (tso_verdict.reachable) {
    expect(tso_verdict.witness_state.regs[sb_layout.reg_index("r1")] == 0 &&
               tso_verdict.witness_state.regs[sb_layout.reg_index("r2")] == 0,
           "TSO witness is not r1=r2=0");
  }

  // Fences kill the weak SB outcome in both engines.
  LitmusTest fenced = corpus_test(corpus, "SB_fences");
  expect(!ax::reachable_axiomatic(fenced, ax::builtin_tso()).reachable,
         "fenced SB reachable axiomatically under TSO");
  expect(!op::reachable_operational(fenced, op::Semantics::TSO).reachable,
         "fenced SB reachable operationally under TSO");

  // Forwarding: reachable under TSO, unreachable under SC, both engines.
  LitmusTest fwd = corpus_test(corpus, "FORWARDING");
  expect(ax::reachable_axiomatic(fwd, ax::builtin_tso()).reachable,
         "forwarding unreachable axiomatically under TSO");
  expect(op::reachable_operational(fwd, op::Semantics::TSO).reachable,
         "forwarding unreachable operationally under TSO");
  expect(!ax::reachable_axiomatic(fwd, ax::builtin_sc()).reachable,
         "forwarding reachable axiomatically under SC");
  expect(!op::reachable_operational(fwd, op::Semantics::SC).reachable,
         "forwarding reachable operationally under SC");

  // Release/acquire message passing is unreachable under ARMish.
  LitmusTest relacq = corpus_test(corpus, "MP_relacq");
  expect(!ax::reachable_axiomatic(relacq, ax::builtin_armish()).reachable,
         "MP+rel/acq reachable axiomatically under ARMish");
  expect(!op::reachable_operational(relacq, op::Semantics::Pipeline).reachable,
         "MP+rel/acq reachable under the pipeline");

  report("criterion-2 worked-example fidelity", ok, detail);
}

// --- criterion 3: cross-engine equivalence over the corpus ---

void criterion_cross_engine(const std::vector<LitmusTest>& corpus) {
  auto start = std::chrono::steady_clock::now();
  bool ok = corpus.size() >= 10;
  std::string detail = ok ? "" : "corpus smaller than 10 tests; ";
  for (const LitmusTest& t : corpus) {
    auto sc_op = op::explore(t, op::Semantics::SC).state_set();
    auto sc_ax = ax::axiomatic_final_states(t, ax::builtin_sc());
    if (sc_op != sc_ax) {
      ok = false;
      detail += t.name + ": SC sets differ; ";
    }
    auto tso_op = op::explore(t, op::Semantics::TSO).state_set();
    auto tso_ax = ax::axiomatic_final_states(t, ax::builtin_tso());
    if (tso_op != tso_ax) {
      ok = false;
      detail += t.name + ": TSO sets differ; ";
    }
    bool arm_ax = ax::reachable_axiomatic(t, ax::builtin_armish()).reachable;
    bool arm_op =
        op::reachable_operational(t, op::Semantics::Pipeline).reachable;
    if (arm_ax != arm_op) {
      ok = false;
      detail += t.name + ": ARMish/pipeline verdicts differ; ";
    }
  }
  double elapsed = seconds_since(start);
  if (elapsed >= 60.0) {
    ok = false;
    detail += "runtime " + std::to_string(elapsed) + "s >= 60s";
  }
  report("criterion-3 cross-engine oracle equivalence over the corpus", ok,
         detail);
}

// --- criterion 4: monotonicity on random programs ---

void criterion_monotonicity() {
  test_support::RandomProgram gen(0xC0FFEE);
  bool ok = true;
  std::string detail;
  const int cases = 200;
  for (int i = 0; i < cases && ok; ++i) {
    LitmusTest t = gen.next();
    auto sc = op::explore(t, op::Semantics::SC).state_set();
    auto tso = op::explore(t, op::Semantics::TSO).state_set();
    auto pipe = op::explore(t, op::Semantics::Pipeline).state_set();
    if (!std::includes(tso.begin(), tso.end(), sc.begin(), sc.end())) {
      ok = false;
      detail = "case " + std::to_string(i) + ": explore(SC) not in explore(TSO)";
    }
    if (!std::includes(pipe.begin(), pipe.end(), tso.begin(), tso.end())) {
      ok = false;
      detail =
          "case " + std::to_string(i) + ": explore(TSO) not in explore(PIPELINE)";
    }
    bool r_sc = ax::reachable_axiomatic(t, ax::builtin_sc()).reachable;
    bool r_tso = ax::reachable_axiomatic(t, ax::builtin_tso()).reachable;
    bool r_arm = ax::reachable_axiomatic(t, ax::builtin_armish()).reachable;
    if ((r_sc && !r_tso) || (r_tso && !r_arm)) {
      ok = false;
      detail = "case " + std::to_string(i) + ": verdict chain not monotone";
    }
  }
  report("criterion-4 monotonicity on 200 random programs", ok, detail);
}

// --- criterion 5: relation-algebra properties ---

rel::Relation random_relation(std::mt19937& rng, std::uint32_t n,
                              double density) {
  rel::Relation r(n);
  std::bernoulli_distribution coin(density);
  for (rel::EventId a = 0; a < n; ++a)
    for (rel::EventId b = 0; b < n; ++b)
      if (coin(rng)) r.insert(a, b);
  return r;
}

bool acyclic_by_permutations(const rel::Relation& r) {
  std::vector<rel::EventId> perm(r.carrier());
  for (rel::EventId e = 0; e < r.carrier(); ++e) perm[e] = e;
  do {
    std::vector<std::size_t> pos(r.carrier());
    for (std::size_t i = 0; i < perm.size(); ++i) pos[perm[i]] = i;
    bool fits = true;
    for (auto [a, b] : r.pairs())
      if (pos[a] >= pos[b]) {
        fits = false;
        break;
      }
    if (fits) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return r.carrier() == 0;
}

void criterion_relation_algebra() {
  std::mt19937 rng(0x5EED);
  bool ok = true;
  std::string detail;
  const int cases = 1000;
  for (int i = 0; i < cases && ok; ++i) {
    std::uint32_t n = std::uniform_int_distribution<std::uint32_t>(1, 7)(rng);
    rel::Relation a = random_relation(rng, n, 0.3);
    rel::Relation b = random_relation(rng, n, 0.3);
    rel::Relation c = random_relation(rng, n, 0.3);
    if (a.compose(b).compose(c) != a.compose(b.compose(c))) {
      ok = false;
      detail = "composition associativity";
    }
    if ((a | b) != (b | a) || (a & b) != (b & a)) {
      ok = false;
      detail = "union/intersection commutativity";
    }
    if (a.inverse().inverse() != a) {
      ok = false;
      detail = "double inverse";
    }
    rel::Relation plus = a.transitive_closure();
    if (plus.transitive_closure() != plus) {
      ok = false;
      detail = "closure idempotence";
    }
    rel::EventSet all = rel::EventSet::full(n);
    rel::EventSet some(n);
    for (rel::EventId e = 0; e < n; e += 2) some.insert(e);
    if (rel::restrict(some, a | b, all) !=
        (rel::restrict(some, a, all) | rel::restrict(some, b, all))) {
      ok = false;
      detail = "restrict distribution over union";
    }
    rel::AcyclicResult res = rel::acyclic(a);
    if (res.acyclic != acyclic_by_permutations(a)) {
      ok = false;
      detail = "acyclic disagrees with the permutation oracle";
    }
    if (!res.acyclic) {
      for (std::size_t j = 0; j < res.cycle.size(); ++j)
        if (!a.contains(res.cycle[j], res.cycle[(j + 1) % res.cycle.size()])) {
          ok = false;
          detail = "reported cycle is not a cycle";
        }
    }
  }
  report("criterion-5 relation-algebra property suite (1000 cases)", ok,
         detail);
}

// --- criterion 6: rmw atomicity ---

void criterion_rmw_atomicity(const std::vector<LitmusTest>& corpus) {
  bool ok = true;
  std::string detail;
  LitmusTest t = corpus_test(corpus, "SWAP_SWAP");
  ProgramLayout layout(t);
  const std::set<std::pair<Value, Value>> expected = {{0, 1}, {1, 0}};

  for (op::Semantics sem :
       {op::Semantics::SC, op::Semantics::TSO, op::Semantics::Pipeline}) {
    std::set<std::pair<Value, Value>> outcomes;
    for (const auto& [fs, trace] : op::explore(t, sem).states)
      outcomes.insert({fs.regs[layout.reg_index("r1")],
                       fs.regs[layout.reg_index("r2")]});
    if (outcomes != expected) {
      ok = false;
      detail += "operational " + op::semantics_name(sem) + " outcomes; ";
    }
  }
  for (const ax::ModelSpec* m :
       {&ax::builtin_sc(), &ax::builtin_tso(), &ax::builtin_armish()}) {
    std::set<std::pair<Value, Value>> outcomes;
    for (const auto& fs : ax::axiomatic_final_states(t, *m))
      outcomes.insert({fs.regs[layout.reg_index("r1")],
                       fs.regs[layout.reg_index("r2")]});
    if (outcomes != expected) {
      ok = false;
      detail += "axiomatic " + m->name + " outcomes; ";
    }
  }

  // A hand-built non-atomic graph: another thread's write lands between the
  // swap's read and write in coherence order.
  test_support::GraphBuilder b({"x"});
  int a = b.thread("a"), t2 = b.thread("b");
  rel::EventId ra = b.read(a, "x", 0, rel::kTagRmw);
  rel::EventId wa = b.write(a, "x", 1, rel::kTagRmw);
  rel::EventId wb = b.write(t2, "x", 7);
  b.rf(0, ra).rmw(ra, wa).co_order("x", {wb, wa});
  ax::ExecutionGraph g = b.build();
  rel::Relation bad =
      g.rmw & ax::derive(g, "fre").compose(ax::derive(g, "coe"));
  if (rel::empty(bad)) {
    ok = false;
    detail += "empty(rmw & (fre;coe)) accepted the non-atomic graph; ";
  }
  ax::CheckResult check = ax::check_model(g, ax::builtin_armish());
  if (check.passed || check.failing_axiom != "atomic") {
    ok = false;
    detail += "ARMish did not fail on the atomic axiom; ";
  }

  report("criterion-6 rmw atomicity", ok, detail);
}

}  // namespace

int main() {
  std::vector<LitmusTest> corpus = litmus::load_corpus(WMM_CORPUS_DIR);
  criterion_table_matrix(corpus);
  criterion_worked_examples(corpus);
  criterion_cross_engine(corpus);
  criterion_monotonicity();
  criterion_relation_algebra();
  criterion_rmw_atomicity(corpus);
  if (failures == 0) {
    std::printf("all acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criteria failed\n", failures);
  return 1;
}
