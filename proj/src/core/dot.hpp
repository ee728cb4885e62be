#ifndef WMM_CORE_DOT_HPP_
#define WMM_CORE_DOT_HPP_

#include <string>

#include "core/graph.hpp"

namespace wmm::ax {

// Deterministic DOT rendering of a candidate execution. Nodes are events
// labelled like "Wa x=1"; po and co are drawn reduced to successor edges,
// rf/fr/fence/dep/ctrl in full, one style per relation.
std::string emit_dot(const ExecutionGraph& g, const std::string& graph_name);

}  // namespace wmm::ax

#endif  // WMM_CORE_DOT_HPP_
