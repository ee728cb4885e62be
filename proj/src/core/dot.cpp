#include "core/dot.hpp"

#include <sstream>

namespace wmm::ax {

namespace {

using rel::EventId;
using rel::Relation;

// Successor reduction of a union of total orders: keep (a,b) when nothing
// sits strictly between them.
Relation reduce(const Relation& r) {
  Relation out(r.carrier());
  for (auto [a, b] : r.pairs()) {
    bool direct = true;
    for (EventId m = 0; m < r.carrier() && direct; ++m)
      if (m != a && m != b && r.contains(a, m) && r.contains(m, b))
        direct = false;
    if (direct) out.insert(a, b);
  }
  return out;
}

void emit_edges(std::ostringstream& os, const Relation& r, const char* name,
                const char* style) {
  for (auto [a, b] : r.pairs())
    os << "  e" << a << " -> e" << b << " [label=\"" << name << "\", " << style
       << "];\n";
}

}  // namespace

std::string emit_dot(const ExecutionGraph& g, const std::string& graph_name) {
  std::ostringstream os;
  os << "digraph \"" << graph_name << "\" {\n";
  os << "  rankdir=TB;\n";
  os << "  node [shape=box, fontname=\"monospace\"];\n";
  for (const auto& e : g.events)
    os << "  e" << e.id << " [label=\"" << g.event_label(e.id) << "\"];\n";

  emit_edges(os, reduce(g.po), "po", "color=black");
  emit_edges(os, reduce(g.co), "co", "color=blue");
  emit_edges(os, g.rf, "rf", "color=red");
  emit_edges(os, derive(g, "fr"), "fr", "color=orange, style=dashed");
  emit_edges(os, derive(g, "fencerel"), "fence", "color=darkgreen");
  emit_edges(os, g.dep, "dep", "color=purple");
  emit_edges(os, g.ctrl, "ctrl", "color=brown, style=dotted");
  os << "}\n";
  return os.str();
}

}  // namespace wmm::ax
