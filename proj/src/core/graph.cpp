#include "core/graph.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace wmm::ax {

using rel::Event;
using rel::EventId;
using rel::EventKind;
using rel::EventSet;
using rel::Relation;

EventSet ExecutionGraph::init_events() const {
  return events_of_kind(EventKind::Init);
}

EventSet ExecutionGraph::events_of_kind(EventKind kind) const {
  EventSet s(carrier());
  for (const Event& e : events)
    if (e.kind == kind) s.insert(e.id);
  return s;
}

EventSet ExecutionGraph::events_with_tag(rel::EventTag tag) const {
  EventSet s(carrier());
  for (const Event& e : events)
    if (e.has_tag(tag)) s.insert(e.id);
  return s;
}

std::string ExecutionGraph::event_label(EventId id) const {
  const Event& e = events[id];
  auto thread_letter = [&]() -> std::string {
    std::string t = thread_names[e.thread];
    for (auto& c : t) c = static_cast<char>(std::tolower(c));
    return t;
  };
  switch (e.kind) {
    case EventKind::Init:
      return "I " + locations[e.loc] + "=" + std::to_string(e.value);
    case EventKind::Read:
      return "R" + thread_letter() + " " + locations[e.loc] + "=" +
             std::to_string(e.value);
    case EventKind::Write:
      return "W" + thread_letter() + " " + locations[e.loc] + "=" +
             std::to_string(e.value);
    case EventKind::Fence:
      return "F" + thread_letter();
  }
  return "?";
}

namespace {

Relation compute(const ExecutionGraph& g, const std::string& name) {
  const std::uint32_t n = g.carrier();

  auto pair_filter = [&](auto&& pred) {
    Relation r(n);
    for (EventId a = 0; a < n; ++a)
      for (EventId b = 0; b < n; ++b)
        if (a != b && pred(g.events[a], g.events[b])) r.insert(a, b);
    return r;
  };

  if (name == "po") return g.po;
  if (name == "co") return g.co;
  if (name == "rf") return g.rf;
  if (name == "dep") return g.dep;
  if (name == "ctrl") return g.ctrl;
  if (name == "rmw") return g.rmw;
  if (name == "loc")
    return pair_filter([](const Event& a, const Event& b) {
      return a.is_mem_access() && b.is_mem_access() && a.loc == b.loc;
    });
  if (name == "ext")
    return pair_filter(
        [](const Event& a, const Event& b) { return a.thread != b.thread; });
  if (name == "int")
    return pair_filter(
        [](const Event& a, const Event& b) { return a.thread == b.thread; });
  if (name == "poloc") return g.po & derive(g, "loc");
  if (name == "fencerel") {
    Relation f = Relation::identity_on(g.events_of_kind(EventKind::Fence));
    return g.po.compose(f).compose(g.po);
  }
  if (name == "fr") return g.rf.inverse().compose(g.co);
  if (name == "rfe") return g.rf & derive(g, "ext");
  if (name == "fre") return derive(g, "fr") & derive(g, "ext");
  if (name == "coe") return g.co & derive(g, "ext");
  if (name == "RR" || name == "RW" || name == "WW" || name == "WR") {
    EventKind from = name[0] == 'R' ? EventKind::Read : EventKind::Write;
    EventKind to = name[1] == 'R' ? EventKind::Read : EventKind::Write;
    Relation r(n);
    for (auto [a, b] : g.po.pairs())
      if (g.events[a].kind == from && g.events[b].kind == to) r.insert(a, b);
    return r;
  }
  if (name == "com") return g.co | g.rf | derive(g, "fr");
  if (name == "ca") return g.co | derive(g, "fr");
  if (name == "eco") return derive(g, "com").transitive_closure();
  throw UnknownRelation(name);
}

}  // namespace

bool is_builtin_relation(const std::string& name) {
  static const std::set<std::string> names = {
      "po",  "poloc", "co",  "rf",  "fr",  "rfe", "fre",  "coe",
      "fencerel", "RR", "RW", "WW",  "WR",  "dep", "ctrl", "rmw",
      "loc", "ext",   "int", "com", "ca",  "eco"};
  return names.count(name) > 0;
}

const Relation& derive(const ExecutionGraph& g, const std::string& name) {
  auto it = g.derived_cache.find(name);
  if (it != g.derived_cache.end()) return it->second;
  Relation r = compute(g, name);
  return g.derived_cache.emplace(name, std::move(r)).first->second;
}

void check_well_formed(const ExecutionGraph& g) {
  const std::uint32_t n = g.carrier();
  auto fail = [](const std::string& what) { throw std::logic_error(what); };

  // po: per-thread strict total order over non-init events.
  for (EventId a = 0; a < n; ++a) {
    for (EventId b = 0; b < n; ++b) {
      bool in_po = g.po.contains(a, b);
      const Event& ea = g.events[a];
      const Event& eb = g.events[b];
      bool same_thread = !ea.is_init() && !eb.is_init() &&
                         ea.thread == eb.thread && a != b;
      if (in_po && !same_thread) fail("po relates events outside one thread");
      if (same_thread && !in_po && !g.po.contains(b, a))
        fail("po is not total within a thread");
      if (in_po && g.po.contains(b, a)) fail("po is not antisymmetric");
    }
  }

  // co: per-location total order over init+writes, init first.
  for (EventId a = 0; a < n; ++a) {
    for (EventId b = 0; b < n; ++b) {
      const Event& ea = g.events[a];
      const Event& eb = g.events[b];
      bool eligible = (ea.is_init() || ea.is_write()) && eb.is_write() &&
                      ea.loc == eb.loc && a != b;
      if (g.co.contains(a, b)) {
        if (!eligible) fail("co pair is not (init|write) -> write same loc");
        if (g.co.contains(b, a)) fail("co is not antisymmetric");
      } else if (eligible && !g.co.contains(b, a)) {
        // An init source can never appear as a co target, so totality here
        // also forces init first.
        fail("co is not total per location");
      }
    }
  }

  // rf: same location and value, and every read has exactly one source.
  for (EventId r = 0; r < n; ++r) {
    if (!g.events[r].is_read()) continue;
    int sources = 0;
    for (EventId w = 0; w < n; ++w) {
      if (!g.rf.contains(w, r)) continue;
      ++sources;
      const Event& ew = g.events[w];
      if (!(ew.is_init() || ew.is_write())) fail("rf source is not a write");
      if (ew.loc != g.events[r].loc) fail("rf pair mixes locations");
      if (ew.value != g.events[r].value) fail("rf pair mixes values");
    }
    if (sources != 1) fail("read lacks a unique rf source");
  }
  for (auto [w, r] : g.rf.pairs())
    if (!g.events[r].is_read()) fail("rf target is not a read");

  // rmw pairs read->write, same thread and location, inside po.
  for (auto [a, b] : g.rmw.pairs()) {
    if (!g.events[a].is_read() || !g.events[b].is_write())
      fail("rmw pair is not read->write");
    if (g.events[a].loc != g.events[b].loc) fail("rmw pair mixes locations");
    if (!g.po.contains(a, b)) fail("rmw pair not in po");
  }
}

}  // namespace wmm::ax
