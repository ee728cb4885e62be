#include "core/enumerate.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

namespace wmm::ax {

namespace {

using litmus::Block;
using litmus::Expr;
using litmus::Instr;
using litmus::LitmusTest;
using litmus::Value;
using rel::Event;
using rel::EventId;
using rel::EventKind;
using rel::EventSet;
using rel::Relation;

struct PathItem {
  const Instr* instr = nullptr;
  int branch_dir = -1;  // Branch only: 0 = then, 1 = else
};

using Path = std::vector<PathItem>;

// All control paths through a block, then-arm first.
std::vector<Path> build_paths(const Block& block, std::size_t idx) {
  if (idx == block.size()) return {Path{}};
  const Instr& in = block[idx];
  std::vector<Path> rest = build_paths(block, idx + 1);
  std::vector<Path> out;
  if (in.kind != Instr::Kind::Branch) {
    for (const Path& r : rest) {
      Path p;
      p.push_back({&in, -1});
      p.insert(p.end(), r.begin(), r.end());
      out.push_back(std::move(p));
    }
    return out;
  }
  for (int dir = 0; dir < 2; ++dir) {
    const Block& arm = dir == 0 ? in.then_block : in.else_block;
    std::vector<Path> arm_paths = build_paths(arm, 0);
    for (const Path& a : arm_paths) {
      for (const Path& r : rest) {
        Path p;
        p.push_back({&in, dir});
        p.insert(p.end(), a.begin(), a.end());
        p.insert(p.end(), r.begin(), r.end());
        out.push_back(std::move(p));
      }
    }
  }
  return out;
}

// One read slot per load and per swap (its read half), in path order.
struct ReadSlot {
  int thread;
  int item;  // index into the thread's path
  int loc;
};

// One write slot per store and per swap (its write half).
struct WriteSlot {
  int thread;
  int item;
  int loc;
};

struct Shape {
  std::vector<ReadSlot> reads;
  std::vector<WriteSlot> writes;
  std::vector<int> read_of_item;   // (thread, item) -> read slot or -1
  std::vector<int> write_of_item;  // (thread, item) -> write slot or -1
  std::vector<std::vector<int>> rf_options;  // per read: -1 = init, else write
  std::vector<int> item_base;  // flattened (thread, item) indexing
};

Shape build_shape(const std::vector<const Path*>& paths,
                  const ProgramLayout& layout) {
  Shape s;
  s.item_base.resize(paths.size() + 1, 0);
  for (std::size_t t = 0; t < paths.size(); ++t)
    s.item_base[t + 1] = s.item_base[t] + static_cast<int>(paths[t]->size());
  s.read_of_item.assign(s.item_base.back(), -1);
  s.write_of_item.assign(s.item_base.back(), -1);

  for (std::size_t t = 0; t < paths.size(); ++t) {
    const Path& path = *paths[t];
    for (std::size_t i = 0; i < path.size(); ++i) {
      const Instr& in = *path[i].instr;
      int flat = s.item_base[t] + static_cast<int>(i);
      if (in.kind == Instr::Kind::Load || in.kind == Instr::Kind::Swap) {
        s.read_of_item[flat] = static_cast<int>(s.reads.size());
        s.reads.push_back({static_cast<int>(t), static_cast<int>(i),
                           layout.loc_index(in.var)});
      }
      if (in.kind == Instr::Kind::Store || in.kind == Instr::Kind::Swap) {
        s.write_of_item[flat] = static_cast<int>(s.writes.size());
        s.writes.push_back({static_cast<int>(t), static_cast<int>(i),
                            layout.loc_index(in.var)});
      }
    }
  }

  for (const ReadSlot& r : s.reads) {
    std::vector<int> opts;
    opts.push_back(-1);  // init
    for (std::size_t w = 0; w < s.writes.size(); ++w)
      if (s.writes[w].loc == r.loc) opts.push_back(static_cast<int>(w));
    s.rf_options.push_back(std::move(opts));
  }
  return s;
}

using OptValue = std::optional<Value>;

struct ReplayResult {
  std::vector<OptValue> read_values;   // per read slot
  std::vector<OptValue> write_values;  // per write slot
  std::vector<Value> final_regs;       // per register slot
  bool grounded = false;
  bool branches_consistent = false;
};

// Iterated replay: register files start at 0, reads take their chosen
// source's current value, and everything is recomputed until stable. Values
// that never ground correspond to causal cycles and discard the choice.
ReplayResult replay(const std::vector<const Path*>& paths, const Shape& shape,
                    const std::vector<int>& rf_choice,
                    const ProgramLayout& layout) {
  ReplayResult res;
  res.read_values.assign(shape.reads.size(), std::nullopt);
  res.write_values.assign(shape.writes.size(), std::nullopt);

  auto eval_opt = [](const Expr& e, const std::vector<OptValue>& regs,
                     const ProgramLayout& lay) -> OptValue {
    bool ok = true;
    Value v = eval_expr(e, [&](const std::string& name) -> Value {
      int idx = lay.reg_index(name);
      const OptValue& ov = regs[idx];
      if (!ov) ok = false;
      return ov.value_or(0);
    });
    if (!ok) return std::nullopt;
    return v;
  };

  std::size_t total_items = shape.item_base.back();
  for (std::size_t pass = 0; pass <= total_items + 1; ++pass) {
    bool changed = false;
    for (std::size_t t = 0; t < paths.size(); ++t) {
      std::vector<OptValue> regs(layout.registers.size(), Value{0});
      const Path& path = *paths[t];
      for (std::size_t i = 0; i < path.size(); ++i) {
        const Instr& in = *path[i].instr;
        int flat = shape.item_base[t] + static_cast<int>(i);
        switch (in.kind) {
          case Instr::Kind::LocalAssign:
            regs[layout.reg_index(in.reg)] = eval_opt(in.expr, regs, layout);
            break;
          case Instr::Kind::Load: {
            int slot = shape.read_of_item[flat];
            int src = rf_choice[slot];
            OptValue v = src < 0
                             ? OptValue(layout.init_values[shape.reads[slot].loc])
                             : res.write_values[src];
            if (v != res.read_values[slot]) {
              res.read_values[slot] = v;
              changed = true;
            }
            regs[layout.reg_index(in.reg)] = v;
            break;
          }
          case Instr::Kind::Store: {
            int slot = shape.write_of_item[flat];
            OptValue v = eval_opt(in.expr, regs, layout);
            if (v != res.write_values[slot]) {
              res.write_values[slot] = v;
              changed = true;
            }
            break;
          }
          case Instr::Kind::Swap: {
            int rslot = shape.read_of_item[flat];
            int wslot = shape.write_of_item[flat];
            int src = rf_choice[rslot];
            OptValue rv =
                src < 0 ? OptValue(layout.init_values[shape.reads[rslot].loc])
                        : res.write_values[src];
            OptValue wv = eval_opt(in.expr, regs, layout);
            if (rv != res.read_values[rslot]) {
              res.read_values[rslot] = rv;
              changed = true;
            }
            if (wv != res.write_values[wslot]) {
              res.write_values[wslot] = wv;
              changed = true;
            }
            regs[layout.reg_index(in.reg)] = rv;
            break;
          }
          case Instr::Kind::Fence:
          case Instr::Kind::Branch:
            break;
        }
      }
    }
    if (!changed) break;
  }

  for (const OptValue& v : res.read_values)
    if (!v) return res;
  for (const OptValue& v : res.write_values)
    if (!v) return res;
  res.grounded = true;

  // Final register files and branch-direction consistency.
  res.final_regs.assign(layout.registers.size(), 0);
  res.branches_consistent = true;
  for (std::size_t t = 0; t < paths.size(); ++t) {
    std::vector<OptValue> regs(layout.registers.size(), Value{0});
    const Path& path = *paths[t];
    for (std::size_t i = 0; i < path.size(); ++i) {
      const Instr& in = *path[i].instr;
      int flat = shape.item_base[t] + static_cast<int>(i);
      switch (in.kind) {
        case Instr::Kind::LocalAssign:
          regs[layout.reg_index(in.reg)] = eval_opt(in.expr, regs, layout);
          break;
        case Instr::Kind::Load:
        case Instr::Kind::Swap:
          regs[layout.reg_index(in.reg)] =
              res.read_values[shape.read_of_item[flat]];
          break;
        case Instr::Kind::Branch: {
          OptValue cond = eval_opt(in.expr, regs, layout);
          bool taken = cond && *cond == in.cond_value;
          if (!cond || taken != (path[i].branch_dir == 0))
            res.branches_consistent = false;
          break;
        }
        default:
          break;
      }
    }
    for (std::size_t r = 0; r < regs.size(); ++r)
      if (layout.register_thread[r] == static_cast<int>(t) && regs[r])
        res.final_regs[r] = *regs[r];
  }
  return res;
}

// Event construction plus the dep/ctrl machinery. Register origins track
// which read events the current register value data-depends on; a constant
// assignment cuts the chain.
struct GraphBuild {
  ExecutionGraph graph;
  std::vector<int> write_event;  // write slot -> event id
};

GraphBuild build_graph(const ProgramLayout& layout,
                       const std::vector<const Path*>& paths,
                       const Shape& shape, const std::vector<int>& rf_choice,
                       const ReplayResult& values) {
  GraphBuild out;
  ExecutionGraph& g = out.graph;
  g.thread_names = layout.thread_names;
  g.locations = layout.locations;

  for (std::size_t l = 0; l < layout.locations.size(); ++l) {
    Event e;
    e.id = static_cast<EventId>(g.events.size());
    e.thread = rel::kInitThread;
    e.kind = EventKind::Init;
    e.loc = static_cast<int>(l);
    e.value = layout.init_values[l];
    g.events.push_back(e);
  }

  std::vector<int> read_event(shape.reads.size(), -1);
  out.write_event.assign(shape.writes.size(), -1);
  std::vector<std::vector<EventId>> thread_events(paths.size());
  std::vector<std::pair<EventId, EventId>> rmw_pairs;
  // dep edges (src event, dst event) and ctrl sources per later-events span
  std::vector<std::pair<EventId, EventId>> dep_edges;
  std::vector<std::pair<EventId, std::pair<int, std::size_t>>> ctrl_from;

  for (std::size_t t = 0; t < paths.size(); ++t) {
    const Path& path = *paths[t];
    std::vector<std::vector<EventId>> origin(layout.registers.size());
    auto origins_of_expr = [&](const Expr& e) {
      std::vector<std::string> regs;
      e.collect_registers(regs);
      std::vector<EventId> src;
      for (const auto& r : regs) {
        const auto& o = origin[layout.reg_index(r)];
        src.insert(src.end(), o.begin(), o.end());
      }
      std::sort(src.begin(), src.end());
      src.erase(std::unique(src.begin(), src.end()), src.end());
      return src;
    };
    auto add_event = [&](EventKind kind, int loc, Value value,
                         std::uint8_t tags) {
      Event e;
      e.id = static_cast<EventId>(g.events.size());
      e.thread = static_cast<int>(t);
      e.kind = kind;
      e.loc = loc;
      e.value = value;
      e.tags = tags;
      g.events.push_back(e);
      thread_events[t].push_back(e.id);
      return e.id;
    };

    for (std::size_t i = 0; i < path.size(); ++i) {
      const Instr& in = *path[i].instr;
      int flat = shape.item_base[t] + static_cast<int>(i);
      switch (in.kind) {
        case Instr::Kind::LocalAssign: {
          origin[layout.reg_index(in.reg)] = origins_of_expr(in.expr);
          break;
        }
        case Instr::Kind::Load: {
          int slot = shape.read_of_item[flat];
          EventId id = add_event(
              EventKind::Read, shape.reads[slot].loc,
              *values.read_values[slot],
              in.load_order == litmus::LoadOrder::Acquire ? rel::kTagAcquire
                                                          : 0);
          read_event[slot] = static_cast<int>(id);
          for (const auto& d : in.deps)
            for (EventId src : origin[layout.reg_index(d)])
              dep_edges.emplace_back(src, id);
          origin[layout.reg_index(in.reg)] = {id};
          break;
        }
        case Instr::Kind::Store: {
          int slot = shape.write_of_item[flat];
          EventId id = add_event(
              EventKind::Write, shape.writes[slot].loc,
              *values.write_values[slot],
              in.store_order == litmus::StoreOrder::Release ? rel::kTagRelease
                                                            : 0);
          out.write_event[slot] = static_cast<int>(id);
          for (EventId src : origins_of_expr(in.expr))
            dep_edges.emplace_back(src, id);
          break;
        }
        case Instr::Kind::Swap: {
          int rslot = shape.read_of_item[flat];
          int wslot = shape.write_of_item[flat];
          EventId rid = add_event(EventKind::Read, shape.reads[rslot].loc,
                                  *values.read_values[rslot], rel::kTagRmw);
          EventId wid = add_event(EventKind::Write, shape.writes[wslot].loc,
                                  *values.write_values[wslot], rel::kTagRmw);
          read_event[rslot] = static_cast<int>(rid);
          out.write_event[wslot] = static_cast<int>(wid);
          rmw_pairs.emplace_back(rid, wid);
          for (EventId src : origins_of_expr(in.expr))
            dep_edges.emplace_back(src, wid);
          origin[layout.reg_index(in.reg)] = {rid};
          break;
        }
        case Instr::Kind::Fence:
          add_event(EventKind::Fence, -1, 0, 0);
          break;
        case Instr::Kind::Branch: {
          // ctrl runs from each read feeding the condition to every event
          // of this thread generated after the branch.
          std::size_t events_so_far = thread_events[t].size();
          for (EventId src : origins_of_expr(in.expr))
            ctrl_from.emplace_back(src,
                                   std::make_pair(static_cast<int>(t),
                                                  events_so_far));
          break;
        }
      }
    }
  }

  const std::uint32_t n = g.carrier();
  g.po = Relation(n);
  for (const auto& evs : thread_events)
    for (std::size_t i = 0; i < evs.size(); ++i)
      for (std::size_t j = i + 1; j < evs.size(); ++j)
        g.po.insert(evs[i], evs[j]);

  g.rf = Relation(n);
  for (std::size_t r = 0; r < shape.reads.size(); ++r) {
    int src = rf_choice[r];
    EventId src_event = src < 0 ? static_cast<EventId>(shape.reads[r].loc)
                                : static_cast<EventId>(out.write_event[src]);
    g.rf.insert(src_event, static_cast<EventId>(read_event[r]));
  }

  g.dep = Relation(n);
  for (auto [a, b] : dep_edges) g.dep.insert(a, b);

  g.ctrl = Relation(n);
  for (const auto& [src, span] : ctrl_from) {
    const auto& evs = thread_events[span.first];
    for (std::size_t i = span.second; i < evs.size(); ++i)
      g.ctrl.insert(src, evs[i]);
  }

  g.rmw = Relation(n);
  for (auto [a, b] : rmw_pairs) g.rmw.insert(a, b);

  g.co = Relation(n);  // filled per coherence-order choice
  return out;
}

}  // namespace

void enumerate_candidates(const LitmusTest& test, const ProgramLayout& layout,
                          const std::function<bool(Candidate&&)>& visit) {
  // Per-thread control paths.
  std::vector<std::vector<Path>> thread_paths;
  for (const auto& th : test.threads)
    thread_paths.push_back(build_paths(th.body, 0));

  std::uint64_t index = 0;
  std::vector<std::size_t> path_choice(test.threads.size(), 0);

  auto visit_path_combo = [&](const std::vector<const Path*>& paths) -> bool {
    Shape shape = build_shape(paths, layout);

    // Odometer over rf choices.
    std::vector<int> rf_pos(shape.reads.size(), 0);
    while (true) {
      std::vector<int> rf_choice(shape.reads.size());
      for (std::size_t r = 0; r < rf_pos.size(); ++r)
        rf_choice[r] = shape.rf_options[r][rf_pos[r]];

      ReplayResult values = replay(paths, shape, rf_choice, layout);
      if (values.grounded && values.branches_consistent) {
        GraphBuild base = build_graph(layout, paths, shape, rf_choice, values);

        // Per-location coherence orders: lexicographic permutations of the
        // location's write slots, init first.
        std::vector<std::vector<int>> loc_writes(layout.locations.size());
        for (std::size_t w = 0; w < shape.writes.size(); ++w)
          loc_writes[shape.writes[w].loc].push_back(static_cast<int>(w));
        std::vector<std::vector<int>> perms(layout.locations.size());
        for (std::size_t l = 0; l < perms.size(); ++l)
          perms[l] = loc_writes[l];

        bool more_perms = true;
        while (more_perms) {
          Candidate cand;
          cand.graph = base.graph;
          cand.graph.derived_cache.clear();
          cand.graph.co = Relation(cand.graph.carrier());
          FinalState fs;
          fs.mem = layout.init_values;
          fs.regs = values.final_regs;
          for (std::size_t l = 0; l < perms.size(); ++l) {
            EventId prev = static_cast<EventId>(l);  // init event of loc l
            std::vector<EventId> order;
            order.push_back(prev);
            for (int w : perms[l])
              order.push_back(static_cast<EventId>(base.write_event[w]));
            for (std::size_t i = 0; i < order.size(); ++i)
              for (std::size_t j = i + 1; j < order.size(); ++j)
                cand.graph.co.insert(order[i], order[j]);
            if (!perms[l].empty())
              fs.mem[l] = cand.graph.events[order.back()].value;
          }
          cand.final_state = std::move(fs);
          cand.index = index++;
          if (!visit(std::move(cand))) return false;

          // Advance the permutation odometer.
          more_perms = false;
          for (std::size_t l = perms.size(); l-- > 0;) {
            if (std::next_permutation(perms[l].begin(), perms[l].end())) {
              more_perms = true;
              break;
            }
            perms[l] = loc_writes[l];  // wrapped; carry on to the next slot
          }
        }
      }

      // Advance the rf odometer.
      bool carried = false;
      for (std::size_t r = rf_pos.size(); r-- > 0;) {
        if (++rf_pos[r] < static_cast<int>(shape.rf_options[r].size())) {
          carried = true;
          break;
        }
        rf_pos[r] = 0;
      }
      if (!carried) break;
    }
    return true;
  };

  // Odometer over per-thread path choices, thread 0 outermost.
  while (true) {
    std::vector<const Path*> paths;
    for (std::size_t t = 0; t < thread_paths.size(); ++t)
      paths.push_back(&thread_paths[t][path_choice[t]]);
    if (!visit_path_combo(paths)) return;
    bool carried = false;
    for (std::size_t t = path_choice.size(); t-- > 0;) {
      if (++path_choice[t] < thread_paths[t].size()) {
        carried = true;
        break;
      }
      path_choice[t] = 0;
    }
    if (!carried) break;
  }
}

std::vector<Candidate> all_candidates(const LitmusTest& test,
                                      const ProgramLayout& layout) {
  std::vector<Candidate> out;
  enumerate_candidates(test, layout, [&](Candidate&& c) {
    out.push_back(std::move(c));
    return true;
  });
  return out;
}

}  // namespace wmm::ax
