#ifndef WMM_CORE_ENUMERATE_HPP_
#define WMM_CORE_ENUMERATE_HPP_

#include <cstdint>
#include <functional>

#include "core/graph.hpp"
#include "core/layout.hpp"
#include "core/litmus.hpp"

namespace wmm::ax {

struct Candidate {
  ExecutionGraph graph;
  FinalState final_state;
  std::uint64_t index = 0;  // position in the enumeration order
};

// Calls visit for every candidate execution of the test, in a fixed order:
// per-thread branch directions (then before else), then reads-from choices
// (reads in thread/program order; init source first, then writes in
// thread/program order), then per-location coherence orders (lexicographic
// permutations). Choice combinations whose replay cannot ground every value,
// or whose branch directions contradict the replayed condition, are
// discarded; everything else is emitted and left to the model axioms.
// Returning false from visit stops the enumeration.
void enumerate_candidates(const litmus::LitmusTest& test,
                          const ProgramLayout& layout,
                          const std::function<bool(Candidate&&)>& visit);

std::vector<Candidate> all_candidates(const litmus::LitmusTest& test,
                                      const ProgramLayout& layout);

}  // namespace wmm::ax

#endif  // WMM_CORE_ENUMERATE_HPP_
