#ifndef WMM_CORE_OPERATIONAL_HPP_
#define WMM_CORE_OPERATIONAL_HPP_

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "core/layout.hpp"
#include "core/litmus.hpp"

namespace wmm::op {

enum class Semantics { SC, TSO, Pipeline };

Semantics semantics_from_name(const std::string& name);  // SC/TSO/PIPELINE
std::string semantics_name(Semantics s);

struct OpOptions {
  // Stronger release/acquire variant: an acquire load additionally waits for
  // earlier release stores still in the pipeline. Off by default.
  bool strong_release_acquire = false;
};

// One transition of the labelled step relation.
struct Step {
  enum class Label { R, W, F, Tau };

  int thread = 0;
  Label label = Label::Tau;
  int loc = -1;
  litmus::Value value = 0;
};

// "<thread>: <label>" with labels W x=1, R y=0, F, tau.
std::string format_step(const Step& step, const ProgramLayout& layout);

struct CoreState {
  int pc = 0;                                         // SC/TSO
  std::vector<std::pair<int, litmus::Value>> buffer;  // TSO, oldest first
  std::vector<std::uint16_t> pending;                 // pipeline entries
  litmus::Value tmp = 0;                              // swap scratch
};

struct SystemState {
  std::vector<litmus::Value> mem;
  std::vector<litmus::Value> regs;  // global register slots
  std::vector<CoreState> cores;
  int lock = -1;  // core holding the global lock, or -1

  std::string encode() const;  // memoisation key
};

// One litmus test compiled for one semantics; steps are pure functions of
// the state, so states may be explored concurrently.
class Machine {
 public:
  Machine(const litmus::LitmusTest& test, Semantics semantics,
          OpOptions options = {});
  ~Machine();
  Machine(const Machine&) = delete;
  Machine& operator=(const Machine&) = delete;

  const ProgramLayout& layout() const;

  SystemState initial() const;
  bool terminal(const SystemState& s) const;

  // Exactly the successors of one rule application on one core, cores in
  // index order; empty for terminal states.
  std::vector<std::pair<Step, SystemState>> successors(
      const SystemState& s) const;

  FinalState snapshot(const SystemState& s) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct ExploreResult {
  // Exact set of reachable terminal snapshots, sorted, each with the trace
  // of its first (breadth-first, hence shortest) discovery.
  std::vector<std::pair<FinalState, std::vector<Step>>> states;
  // Final states in discovery order (used for deterministic witnesses).
  std::vector<FinalState> discovery_order;

  bool contains(const FinalState& fs) const;
  std::set<FinalState> state_set() const;
};

ExploreResult explore(const litmus::LitmusTest& test, Semantics semantics,
                      const OpOptions& options = {});

struct OpVerdict {
  std::string test_name;
  Semantics semantics = Semantics::SC;
  bool reachable = false;
  FinalState witness_state;  // reachable only
  std::vector<Step> trace;   // reachable only
};

OpVerdict reachable_operational(const litmus::LitmusTest& test,
                                Semantics semantics,
                                const OpOptions& options = {});

}  // namespace wmm::op

#endif  // WMM_CORE_OPERATIONAL_HPP_
