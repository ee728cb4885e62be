#ifndef WMM_CORE_AXIOMATIC_HPP_
#define WMM_CORE_AXIOMATIC_HPP_

#include <optional>
#include <set>

#include "core/enumerate.hpp"
#include "core/model.hpp"

namespace wmm::ax {

struct AxVerdict {
  std::string test_name;
  std::string model_name;
  bool reachable = false;

  // Reachable: the passing candidate of minimum enumeration index whose
  // final state satisfies the postcondition.
  // Unreachable: the first candidate satisfying the postcondition's value
  // constraints, with the axiom that rejected it; absent when no candidate
  // even matches the postcondition.
  std::optional<Candidate> witness;
  std::string failing_axiom;             // unreachable only
  std::vector<rel::EventId> cycle;       // unreachable only
};

AxVerdict reachable_axiomatic(const litmus::LitmusTest& test,
                              const ModelSpec& model);

// Final states of every candidate passing the model; the axiomatic side of
// the cross-engine comparison.
std::set<FinalState> axiomatic_final_states(const litmus::LitmusTest& test,
                                            const ModelSpec& model);

}  // namespace wmm::ax

#endif  // WMM_CORE_AXIOMATIC_HPP_
