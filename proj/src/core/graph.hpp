#ifndef WMM_CORE_GRAPH_HPP_
#define WMM_CORE_GRAPH_HPP_

#include <map>
#include <string>
#include <vector>

#include "core/relation.hpp"

namespace wmm::ax {

class UnknownRelation : public std::runtime_error {
 public:
  explicit UnknownRelation(const std::string& name)
      : std::runtime_error("unknown relation '" + name + "'") {}
};

// A candidate execution: events plus the base relations chosen by the
// enumerator. Derived relations are computed on demand and memoized.
struct ExecutionGraph {
  std::vector<rel::Event> events;
  std::vector<std::string> thread_names;
  std::vector<std::string> locations;

  rel::Relation po, co, rf, dep, ctrl, rmw;

  std::uint32_t carrier() const {
    return static_cast<std::uint32_t>(events.size());
  }

  rel::EventSet init_events() const;
  rel::EventSet events_of_kind(rel::EventKind kind) const;
  rel::EventSet events_with_tag(rel::EventTag tag) const;

  // Human-readable event label, e.g. "Wa x=1" for a write by thread a.
  std::string event_label(rel::EventId id) const;

  mutable std::map<std::string, rel::Relation> derived_cache;
};

// Derived relation by built-in name (po, poloc, fencerel, co, rf, fr, rfe,
// fre, coe, RR, RW, WW, WR, dep, ctrl, rmw, loc, ext, int, com, ca, eco).
const rel::Relation& derive(const ExecutionGraph& g, const std::string& name);

bool is_builtin_relation(const std::string& name);

// Structural well-formedness of the base relations: po per-thread total
// order without init events, co per-location total order with init first,
// rf value-consistent with a functional inverse, rmw inside po and loc.
// Throws std::logic_error on violation.
void check_well_formed(const ExecutionGraph& g);

}  // namespace wmm::ax

#endif  // WMM_CORE_GRAPH_HPP_
