#include "core/axiomatic.hpp"

namespace wmm::ax {

AxVerdict reachable_axiomatic(const litmus::LitmusTest& test,
                              const ModelSpec& model) {
  ProgramLayout layout(test);
  AxVerdict verdict;
  verdict.test_name = test.name;
  verdict.model_name = model.name;

  enumerate_candidates(test, layout, [&](Candidate&& cand) {
    if (!eval_post(test.post, layout, cand.final_state)) return true;
    CheckResult check = check_model(cand.graph, model);
    if (check.passed) {
      verdict.reachable = true;
      verdict.witness = std::move(cand);
      verdict.failing_axiom.clear();
      verdict.cycle.clear();
      return false;  // minimum-index passing candidate found
    }
    if (!verdict.witness) {
      verdict.witness = std::move(cand);
      verdict.failing_axiom = check.failing_axiom;
      verdict.cycle = check.witness;
    }
    return true;
  });
  return verdict;
}

std::set<FinalState> axiomatic_final_states(const litmus::LitmusTest& test,
                                            const ModelSpec& model) {
  ProgramLayout layout(test);
  std::set<FinalState> states;
  enumerate_candidates(test, layout, [&](Candidate&& cand) {
    if (states.count(cand.final_state) == 0 &&
        check_model(cand.graph, model).passed)
      states.insert(cand.final_state);
    return true;
  });
  return states;
}

}  // namespace wmm::ax
