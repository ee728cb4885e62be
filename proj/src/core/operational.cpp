#include "core/operational.hpp"

#include <algorithm>
#include <cstring>
#include <deque>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace wmm::op {

namespace {

using litmus::Block;
using litmus::Expr;
using litmus::Instr;
using litmus::LitmusTest;
using litmus::Value;

// Compiled instruction form shared by the interleaving engines (with jumps)
// and the pipeline engine (with structured branch entries). A swap expands
// to lock ; tmp := x ; x := e ; r := tmp ; unlock.
struct Op {
  enum class Kind {
    Assign,
    Load,
    Store,
    Fence,
    Lock,
    Unlock,
    ReadTmp,
    WriteSwap,
    AssignFromTmp,
    JmpIfNot,  // interleaving engines only
    Jmp,       //
    Branch,    // pipeline only
  };

  Kind kind = Kind::Fence;
  int reg = -1;
  int loc = -1;
  const Expr* expr = nullptr;
  Value cond_value = 0;
  bool release = false;
  bool acquire = false;
  std::vector<int> dep_regs;
  std::vector<int> expr_regs;
  int target = -1;  // jump target

  // Branch entries: arm entry ids plus summaries of everything the arms
  // might do, used as commit guards while the branch is unresolved.
  std::vector<std::uint16_t> then_ids, else_ids;
  std::vector<int> arm_reg_defs, arm_reg_reads;
  std::vector<int> arm_loc_reads, arm_loc_writes;
  bool arm_has_fence = false;
  bool arm_has_acquire = false;
};

struct CompiledThread {
  std::vector<Op> linear;    // jump-flattened program
  std::vector<Op> entries;   // pipeline entry table
  std::vector<std::uint16_t> top;  // initial pipeline contents
};

struct Compiled {
  ProgramLayout layout;
  std::vector<CompiledThread> threads;

  explicit Compiled(const LitmusTest& test) : layout(test) {}
};

std::vector<int> expr_reg_slots(const Expr& e, const ProgramLayout& layout) {
  std::vector<std::string> names;
  e.collect_registers(names);
  std::vector<int> slots;
  for (const auto& n : names) slots.push_back(layout.reg_index(n));
  std::sort(slots.begin(), slots.end());
  slots.erase(std::unique(slots.begin(), slots.end()), slots.end());
  return slots;
}

Op make_op(const Instr& in, Op::Kind kind, const ProgramLayout& layout) {
  Op op;
  op.kind = kind;
  switch (in.kind) {
    case Instr::Kind::LocalAssign:
      op.reg = layout.reg_index(in.reg);
      op.expr = &in.expr;
      op.expr_regs = expr_reg_slots(in.expr, layout);
      break;
    case Instr::Kind::Load:
      op.reg = layout.reg_index(in.reg);
      op.loc = layout.loc_index(in.var);
      op.acquire = in.load_order == litmus::LoadOrder::Acquire;
      for (const auto& d : in.deps) op.dep_regs.push_back(layout.reg_index(d));
      break;
    case Instr::Kind::Store:
      op.loc = layout.loc_index(in.var);
      op.expr = &in.expr;
      op.expr_regs = expr_reg_slots(in.expr, layout);
      op.release = in.store_order == litmus::StoreOrder::Release;
      break;
    default:
      break;
  }
  return op;
}

void compile_linear(const Block& block, const ProgramLayout& layout,
                    std::vector<Op>& out) {
  for (const Instr& in : block) {
    switch (in.kind) {
      case Instr::Kind::LocalAssign:
        out.push_back(make_op(in, Op::Kind::Assign, layout));
        break;
      case Instr::Kind::Load:
        out.push_back(make_op(in, Op::Kind::Load, layout));
        break;
      case Instr::Kind::Store:
        out.push_back(make_op(in, Op::Kind::Store, layout));
        break;
      case Instr::Kind::Fence: {
        Op op;
        op.kind = Op::Kind::Fence;
        out.push_back(op);
        break;
      }
      case Instr::Kind::Swap: {
        Op lock;
        lock.kind = Op::Kind::Lock;
        out.push_back(lock);
        Op read;
        read.kind = Op::Kind::ReadTmp;
        read.loc = layout.loc_index(in.var);
        out.push_back(read);
        Op write;
        write.kind = Op::Kind::WriteSwap;
        write.loc = layout.loc_index(in.var);
        write.expr = &in.expr;
        write.expr_regs = expr_reg_slots(in.expr, layout);
        out.push_back(write);
        Op assign;
        assign.kind = Op::Kind::AssignFromTmp;
        assign.reg = layout.reg_index(in.reg);
        out.push_back(assign);
        Op unlock;
        unlock.kind = Op::Kind::Unlock;
        out.push_back(unlock);
        break;
      }
      case Instr::Kind::Branch: {
        Op jmp;
        jmp.kind = Op::Kind::JmpIfNot;
        jmp.expr = &in.expr;
        jmp.expr_regs = expr_reg_slots(in.expr, layout);
        jmp.cond_value = in.cond_value;
        std::size_t jmp_at = out.size();
        out.push_back(jmp);
        compile_linear(in.then_block, layout, out);
        std::size_t jmp_end_at = out.size();
        Op end;
        end.kind = Op::Kind::Jmp;
        out.push_back(end);
        out[jmp_at].target = static_cast<int>(out.size());
        compile_linear(in.else_block, layout, out);
        out[jmp_end_at].target = static_cast<int>(out.size());
        break;
      }
    }
  }
}

// Summaries of what a block might do, for unresolved-branch guards.
struct BlockSummary {
  std::vector<int> reg_defs, reg_reads, loc_reads, loc_writes;
  bool has_fence = false;
  bool has_acquire = false;
};

void summarize(const Block& block, const ProgramLayout& layout,
               BlockSummary& s) {
  auto add = [](std::vector<int>& v, int x) {
    if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
  };
  for (const Instr& in : block) {
    std::vector<int> regs;
    switch (in.kind) {
      case Instr::Kind::LocalAssign:
        add(s.reg_defs, layout.reg_index(in.reg));
        for (int r : expr_reg_slots(in.expr, layout)) add(s.reg_reads, r);
        break;
      case Instr::Kind::Load:
        add(s.reg_defs, layout.reg_index(in.reg));
        add(s.loc_reads, layout.loc_index(in.var));
        for (const auto& d : in.deps) add(s.reg_reads, layout.reg_index(d));
        if (in.load_order == litmus::LoadOrder::Acquire) s.has_acquire = true;
        break;
      case Instr::Kind::Store:
        add(s.loc_writes, layout.loc_index(in.var));
        for (int r : expr_reg_slots(in.expr, layout)) add(s.reg_reads, r);
        break;
      case Instr::Kind::Fence:
        s.has_fence = true;
        break;
      case Instr::Kind::Swap:
        add(s.reg_defs, layout.reg_index(in.reg));
        add(s.loc_reads, layout.loc_index(in.var));
        add(s.loc_writes, layout.loc_index(in.var));
        for (int r : expr_reg_slots(in.expr, layout)) add(s.reg_reads, r);
        break;
      case Instr::Kind::Branch:
        for (int r : expr_reg_slots(in.expr, layout)) add(s.reg_reads, r);
        summarize(in.then_block, layout, s);
        summarize(in.else_block, layout, s);
        break;
    }
  }
}

std::vector<std::uint16_t> compile_entries(const Block& block,
                                           const ProgramLayout& layout,
                                           std::vector<Op>& table) {
  std::vector<std::uint16_t> ids;
  for (const Instr& in : block) {
    switch (in.kind) {
      case Instr::Kind::LocalAssign:
        ids.push_back(static_cast<std::uint16_t>(table.size()));
        table.push_back(make_op(in, Op::Kind::Assign, layout));
        break;
      case Instr::Kind::Load:
        ids.push_back(static_cast<std::uint16_t>(table.size()));
        table.push_back(make_op(in, Op::Kind::Load, layout));
        break;
      case Instr::Kind::Store:
        ids.push_back(static_cast<std::uint16_t>(table.size()));
        table.push_back(make_op(in, Op::Kind::Store, layout));
        break;
      case Instr::Kind::Fence: {
        Op op;
        op.kind = Op::Kind::Fence;
        ids.push_back(static_cast<std::uint16_t>(table.size()));
        table.push_back(op);
        break;
      }
      case Instr::Kind::Swap: {
        Op lock;
        lock.kind = Op::Kind::Lock;
        Op read;
        read.kind = Op::Kind::ReadTmp;
        read.loc = layout.loc_index(in.var);
        Op write;
        write.kind = Op::Kind::WriteSwap;
        write.loc = layout.loc_index(in.var);
        write.expr = &in.expr;
        write.expr_regs = expr_reg_slots(in.expr, layout);
        Op assign;
        assign.kind = Op::Kind::AssignFromTmp;
        assign.reg = layout.reg_index(in.reg);
        Op unlock;
        unlock.kind = Op::Kind::Unlock;
        for (Op* op : {&lock, &read, &write, &assign, &unlock}) {
          ids.push_back(static_cast<std::uint16_t>(table.size()));
          table.push_back(std::move(*op));
        }
        break;
      }
      case Instr::Kind::Branch: {
        // Reserve the slot first so nested ids stay consistent.
        std::size_t at = table.size();
        ids.push_back(static_cast<std::uint16_t>(at));
        table.emplace_back();
        std::vector<std::uint16_t> then_ids =
            compile_entries(in.then_block, layout, table);
        std::vector<std::uint16_t> else_ids =
            compile_entries(in.else_block, layout, table);
        Op op;
        op.kind = Op::Kind::Branch;
        op.expr = &in.expr;
        op.expr_regs = expr_reg_slots(in.expr, layout);
        op.cond_value = in.cond_value;
        op.then_ids = std::move(then_ids);
        op.else_ids = std::move(else_ids);
        BlockSummary s;
        summarize(in.then_block, layout, s);
        summarize(in.else_block, layout, s);
        op.arm_reg_defs = s.reg_defs;
        op.arm_reg_reads = s.reg_reads;
        op.arm_loc_reads = s.loc_reads;
        op.arm_loc_writes = s.loc_writes;
        op.arm_has_fence = s.has_fence;
        op.arm_has_acquire = s.has_acquire;
        table[at] = std::move(op);
        break;
      }
    }
  }
  return ids;
}

}  // namespace

std::string SystemState::encode() const {
  std::string out;
  auto put64 = [&out](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>(v >> (i * 8)));
  };
  put64(static_cast<std::uint64_t>(lock) + 1);
  for (Value v : mem) put64(static_cast<std::uint64_t>(v));
  for (Value v : regs) put64(static_cast<std::uint64_t>(v));
  for (const CoreState& c : cores) {
    out.push_back('\x01');
    put64(static_cast<std::uint64_t>(c.pc));
    put64(static_cast<std::uint64_t>(c.tmp));
    put64(c.buffer.size());
    for (const auto& [loc, v] : c.buffer) {
      put64(static_cast<std::uint64_t>(loc));
      put64(static_cast<std::uint64_t>(v));
    }
    put64(c.pending.size());
    for (std::uint16_t e : c.pending) {
      out.push_back(static_cast<char>(e & 0xff));
      out.push_back(static_cast<char>(e >> 8));
    }
  }
  return out;
}

struct Machine::Impl {
  // The machine owns its copy of the test: compiled ops point into this AST.
  Impl(const litmus::LitmusTest& t, Semantics semantics, OpOptions options)
      : test(t), compiled(test), semantics(semantics), options(options) {
    for (const auto& th : test.threads) {
      CompiledThread ct;
      compile_linear(th.body, compiled.layout, ct.linear);
      ct.top = compile_entries(th.body, compiled.layout, ct.entries);
      compiled.threads.push_back(std::move(ct));
    }
  }

  litmus::LitmusTest test;


  SystemState initial() const {
    SystemState s;
    s.mem = compiled.layout.init_values;
    s.regs.assign(compiled.layout.registers.size(), 0);
    s.cores.resize(compiled.threads.size());
    for (std::size_t t = 0; t < compiled.threads.size(); ++t)
      if (semantics == Semantics::Pipeline)
        s.cores[t].pending = compiled.threads[t].top;
    return s;
  }

  bool terminal(const SystemState& s) const {
    for (std::size_t t = 0; t < s.cores.size(); ++t) {
      const CoreState& core = s.cores[t];
      if (semantics == Semantics::Pipeline) {
        if (!core.pending.empty()) return false;
      } else {
        if (core.pc != static_cast<int>(compiled.threads[t].linear.size()))
          return false;
        if (!core.buffer.empty()) return false;
      }
    }
    return true;
  }

  std::vector<std::pair<Step, SystemState>> successors(
      const SystemState& s) const {
    std::vector<std::pair<Step, SystemState>> out;
    for (int t = 0; t < static_cast<int>(s.cores.size()); ++t) {
      switch (semantics) {
        case Semantics::SC:
          sc_steps(s, t, out);
          break;
        case Semantics::TSO:
          tso_steps(s, t, out);
          break;
        case Semantics::Pipeline:
          pipeline_steps(s, t, out);
          break;
      }
    }
    return out;
  }

  FinalState snapshot(const SystemState& s) const {
    return FinalState{s.mem, s.regs};
  }
  Value eval(const Expr& e, const SystemState& s) const {
    return eval_expr(e, [&](const std::string& name) {
      return s.regs[compiled.layout.reg_index(name)];
    });
  }

  bool lock_ok(const SystemState& s, int t) const {
    return s.lock < 0 || s.lock == t;
  }

  static Step step(int t, Step::Label l, int loc = -1, Value v = 0) {
    Step st;
    st.thread = t;
    st.label = l;
    st.loc = loc;
    st.value = v;
    return st;
  }

  // ---- SC ----

  void sc_steps(const SystemState& s, int t,
                std::vector<std::pair<Step, SystemState>>& out) const {
    const auto& prog = compiled.threads[t].linear;
    const CoreState& core = s.cores[t];
    if (core.pc >= static_cast<int>(prog.size())) return;
    const Op& op = prog[core.pc];
    auto push = [&](Step st, SystemState next) {
      out.emplace_back(st, std::move(next));
    };
    SystemState next = s;
    CoreState& ncore = next.cores[t];
    ++ncore.pc;
    switch (op.kind) {
      case Op::Kind::Assign:
        next.regs[op.reg] = eval(*op.expr, s);
        push(step(t, Step::Label::Tau), std::move(next));
        break;
      case Op::Kind::Load:
        if (lock_ok(s, t)) {
          Value v = s.mem[op.loc];
          next.regs[op.reg] = v;
          push(step(t, Step::Label::R, op.loc, v), std::move(next));
        }
        break;
      case Op::Kind::Store:
        if (lock_ok(s, t)) {
          Value v = eval(*op.expr, s);
          next.mem[op.loc] = v;
          push(step(t, Step::Label::W, op.loc, v), std::move(next));
        }
        break;
      case Op::Kind::Fence:
        push(step(t, Step::Label::F), std::move(next));
        break;
      case Op::Kind::Lock:
        if (s.lock < 0) {
          next.lock = t;
          push(step(t, Step::Label::Tau), std::move(next));
        }
        break;
      case Op::Kind::Unlock:
        next.lock = -1;
        push(step(t, Step::Label::Tau), std::move(next));
        break;
      case Op::Kind::ReadTmp: {
        Value v = s.mem[op.loc];
        ncore.tmp = v;
        push(step(t, Step::Label::R, op.loc, v), std::move(next));
        break;
      }
      case Op::Kind::WriteSwap: {
        Value v = eval(*op.expr, s);
        next.mem[op.loc] = v;
        push(step(t, Step::Label::W, op.loc, v), std::move(next));
        break;
      }
      case Op::Kind::AssignFromTmp:
        next.regs[op.reg] = core.tmp;
        push(step(t, Step::Label::Tau), std::move(next));
        break;
      case Op::Kind::JmpIfNot:
        if (eval(*op.expr, s) != op.cond_value) ncore.pc = op.target;
        push(step(t, Step::Label::Tau), std::move(next));
        break;
      case Op::Kind::Jmp:
        ncore.pc = op.target;
        push(step(t, Step::Label::Tau), std::move(next));
        break;
      case Op::Kind::Branch:
        throw std::logic_error("branch entry in linear program");
    }
  }

  // ---- TSO ----

  void tso_steps(const SystemState& s, int t,
                 std::vector<std::pair<Step, SystemState>>& out) const {
    const auto& prog = compiled.threads[t].linear;
    const CoreState& core = s.cores[t];

    // The buffer head may flush at any point, but a flush is a memory write
    // and respects the global lock.
    if (!core.buffer.empty() && lock_ok(s, t)) {
      SystemState next = s;
      auto [loc, v] = next.cores[t].buffer.front();
      next.cores[t].buffer.erase(next.cores[t].buffer.begin());
      next.mem[loc] = v;
      out.emplace_back(step(t, Step::Label::W, loc, v), std::move(next));
    }

    if (core.pc >= static_cast<int>(prog.size())) return;
    const Op& op = prog[core.pc];
    SystemState next = s;
    CoreState& ncore = next.cores[t];
    ++ncore.pc;
    switch (op.kind) {
      case Op::Kind::Assign:
        next.regs[op.reg] = eval(*op.expr, s);
        out.emplace_back(step(t, Step::Label::Tau), std::move(next));
        break;
      case Op::Kind::Load:
      case Op::Kind::ReadTmp: {
        // Rightmost buffered write to the location wins (forwarding).
        const std::pair<int, Value>* hit = nullptr;
        for (const auto& entry : core.buffer)
          if (entry.first == op.loc) hit = &entry;
        if (hit) {
          if (op.kind == Op::Kind::Load)
            next.regs[op.reg] = hit->second;
          else
            ncore.tmp = hit->second;
          out.emplace_back(step(t, Step::Label::Tau), std::move(next));
        } else if (lock_ok(s, t)) {
          Value v = s.mem[op.loc];
          if (op.kind == Op::Kind::Load)
            next.regs[op.reg] = v;
          else
            ncore.tmp = v;
          out.emplace_back(step(t, Step::Label::R, op.loc, v),
                           std::move(next));
        }
        break;
      }
      case Op::Kind::Store:
      case Op::Kind::WriteSwap:
        ncore.buffer.emplace_back(op.loc, eval(*op.expr, s));
        out.emplace_back(step(t, Step::Label::Tau), std::move(next));
        break;
      case Op::Kind::Fence:
        if (core.buffer.empty())
          out.emplace_back(step(t, Step::Label::F), std::move(next));
        break;
      case Op::Kind::Lock:
        // The buffer drains before the lock is taken, and again before it
        // is released, so the swap is globally atomic.
        if (s.lock < 0 && core.buffer.empty()) {
          next.lock = t;
          out.emplace_back(step(t, Step::Label::Tau), std::move(next));
        }
        break;
      case Op::Kind::Unlock:
        if (core.buffer.empty()) {
          next.lock = -1;
          out.emplace_back(step(t, Step::Label::Tau), std::move(next));
        }
        break;
      case Op::Kind::AssignFromTmp:
        next.regs[op.reg] = core.tmp;
        out.emplace_back(step(t, Step::Label::Tau), std::move(next));
        break;
      case Op::Kind::JmpIfNot:
        if (eval(*op.expr, s) != op.cond_value) ncore.pc = op.target;
        out.emplace_back(step(t, Step::Label::Tau), std::move(next));
        break;
      case Op::Kind::Jmp:
        ncore.pc = op.target;
        out.emplace_back(step(t, Step::Label::Tau), std::move(next));
        break;
      case Op::Kind::Branch:
        throw std::logic_error("branch entry in linear program");
    }
  }

  // ---- pipeline ----

  void pipeline_steps(const SystemState& s, int t,
                      std::vector<std::pair<Step, SystemState>>& out) const {
    const auto& table = compiled.threads[t].entries;
    const CoreState& core = s.cores[t];

    for (std::size_t k = 0; k < core.pending.size(); ++k) {
      const Op& op = table[core.pending[k]];
      auto commit = [&](Step st, auto&& apply) {
        SystemState next = s;
        CoreState& ncore = next.cores[t];
        ncore.pending.erase(ncore.pending.begin() + k);
        apply(next);
        out.emplace_back(st, std::move(next));
      };

      // Guard scans over the pending prefix.
      auto earlier = [&](auto&& pred) {
        for (std::size_t i = 0; i < k; ++i)
          if (pred(table[core.pending[i]])) return true;
        return false;
      };
      auto reg_def_pending = [&](int q) {
        return earlier([&](const Op& p) {
          if (p.kind == Op::Kind::Branch)
            return std::find(p.arm_reg_defs.begin(), p.arm_reg_defs.end(),
                             q) != p.arm_reg_defs.end();
          return (p.kind == Op::Kind::Assign || p.kind == Op::Kind::Load ||
                  p.kind == Op::Kind::AssignFromTmp) &&
                 p.reg == q;
        });
      };
      auto reg_read_pending = [&](int q) {
        return earlier([&](const Op& p) {
          if (std::find(p.expr_regs.begin(), p.expr_regs.end(), q) !=
              p.expr_regs.end())
            return true;
          if (std::find(p.dep_regs.begin(), p.dep_regs.end(), q) !=
              p.dep_regs.end())
            return true;
          if (p.kind == Op::Kind::Branch)
            return std::find(p.arm_reg_reads.begin(), p.arm_reg_reads.end(),
                             q) != p.arm_reg_reads.end();
          return false;
        });
      };
      auto loc_read_pending = [&](int x) {
        return earlier([&](const Op& p) {
          if (p.kind == Op::Kind::Load || p.kind == Op::Kind::ReadTmp)
            return p.loc == x;
          if (p.kind == Op::Kind::Branch)
            return std::find(p.arm_loc_reads.begin(), p.arm_loc_reads.end(),
                             x) != p.arm_loc_reads.end();
          return false;
        });
      };
      auto loc_write_pending = [&](int x) {
        return earlier([&](const Op& p) {
          if (p.kind == Op::Kind::Store || p.kind == Op::Kind::WriteSwap)
            return p.loc == x;
          if (p.kind == Op::Kind::Branch)
            return std::find(p.arm_loc_writes.begin(), p.arm_loc_writes.end(),
                             x) != p.arm_loc_writes.end();
          return false;
        });
      };
      auto fence_pending = [&] {
        return earlier([&](const Op& p) {
          return p.kind == Op::Kind::Fence ||
                 (p.kind == Op::Kind::Branch && p.arm_has_fence);
        });
      };
      auto acquire_pending = [&] {
        return earlier([&](const Op& p) {
          return (p.kind == Op::Kind::Load && p.acquire) ||
                 (p.kind == Op::Kind::Branch && p.arm_has_acquire);
        });
      };
      auto release_store_pending = [&] {
        return earlier(
            [&](const Op& p) { return p.kind == Op::Kind::Store && p.release; });
      };
      auto branch_pending = [&] {
        return earlier([&](const Op& p) { return p.kind == Op::Kind::Branch; });
      };
      auto regs_ready = [&](const std::vector<int>& regs) {
        for (int q : regs)
          if (reg_def_pending(q)) return false;
        return true;
      };
      auto def_ok = [&](int q) {
        return !reg_def_pending(q) && !reg_read_pending(q);
      };

      switch (op.kind) {
        case Op::Kind::Assign:
          if (regs_ready(op.expr_regs) && def_ok(op.reg)) {
            Value v = eval(*op.expr, s);
            commit(step(t, Step::Label::Tau),
                   [&](SystemState& n) { n.regs[op.reg] = v; });
          }
          break;

        case Op::Kind::Load: {
          bool base = def_ok(op.reg) && !fence_pending() &&
                      !acquire_pending() && !loc_read_pending(op.loc) &&
                      regs_ready(op.dep_regs);
          if (options.strong_release_acquire && op.acquire &&
              release_store_pending())
            base = false;
          if (!base) break;
          if (!loc_write_pending(op.loc)) {
            if (lock_ok(s, t)) {
              Value v = s.mem[op.loc];
              commit(step(t, Step::Label::R, op.loc, v),
                     [&](SystemState& n) { n.regs[op.reg] = v; });
            }
            break;
          }
          // Forwarding: the rightmost earlier store to the location, if its
          // value is resolved and no branch might interpose another write.
          int src = -1;
          bool blocked = false;
          for (std::size_t i = 0; i < k; ++i) {
            const Op& p = table[core.pending[i]];
            if (p.kind == Op::Kind::Store && p.loc == op.loc)
              src = static_cast<int>(i);
            if (p.kind == Op::Kind::WriteSwap && p.loc == op.loc)
              blocked = true;
            if (p.kind == Op::Kind::Branch &&
                std::find(p.arm_loc_writes.begin(), p.arm_loc_writes.end(),
                          op.loc) != p.arm_loc_writes.end())
              blocked = true;
          }
          if (blocked || src < 0) break;
          const Op& w = table[core.pending[src]];
          bool value_ready = true;
          for (int q : w.expr_regs) {
            for (std::size_t i = 0; i < static_cast<std::size_t>(src); ++i) {
              const Op& p = table[core.pending[i]];
              bool defines =
                  (p.kind == Op::Kind::Assign || p.kind == Op::Kind::Load ||
                   p.kind == Op::Kind::AssignFromTmp) &&
                  p.reg == q;
              if (p.kind == Op::Kind::Branch &&
                  std::find(p.arm_reg_defs.begin(), p.arm_reg_defs.end(),
                            q) != p.arm_reg_defs.end())
                defines = true;
              if (defines) {
                value_ready = false;
                break;
              }
            }
            if (!value_ready) break;
          }
          if (value_ready) {
            Value v = eval(*w.expr, s);
            commit(step(t, Step::Label::Tau),
                   [&](SystemState& n) { n.regs[op.reg] = v; });
          }
          break;
        }

        case Op::Kind::Store:
          if (regs_ready(op.expr_regs) && !fence_pending() &&
              !acquire_pending() && !branch_pending() &&
              !loc_read_pending(op.loc) && !loc_write_pending(op.loc) &&
              (!op.release || k == 0) && lock_ok(s, t)) {
            Value v = eval(*op.expr, s);
            commit(step(t, Step::Label::W, op.loc, v),
                   [&](SystemState& n) { n.mem[op.loc] = v; });
          }
          break;

        case Op::Kind::Fence:
          if (k == 0) commit(step(t, Step::Label::F), [](SystemState&) {});
          break;

        // The swap micro-sequence commits in order at the pipeline head;
        // the global lock spans it.
        case Op::Kind::Lock:
          if (k == 0 && s.lock < 0)
            commit(step(t, Step::Label::Tau),
                   [&](SystemState& n) { n.lock = t; });
          break;
        case Op::Kind::ReadTmp:
          if (k == 0) {
            Value v = s.mem[op.loc];
            commit(step(t, Step::Label::R, op.loc, v),
                   [&](SystemState& n) { n.cores[t].tmp = v; });
          }
          break;
        case Op::Kind::WriteSwap:
          if (k == 0) {
            Value v = eval(*op.expr, s);
            commit(step(t, Step::Label::W, op.loc, v),
                   [&](SystemState& n) { n.mem[op.loc] = v; });
          }
          break;
        case Op::Kind::AssignFromTmp:
          if (k == 0) {
            Value v = core.tmp;
            commit(step(t, Step::Label::Tau),
                   [&](SystemState& n) { n.regs[op.reg] = v; });
          }
          break;
        case Op::Kind::Unlock:
          if (k == 0 && s.lock == t)
            commit(step(t, Step::Label::Tau),
                   [&](SystemState& n) { n.lock = -1; });
          break;

        case Op::Kind::Branch:
          if (regs_ready(op.expr_regs)) {
            bool taken = eval(*op.expr, s) == op.cond_value;
            const auto& arm = taken ? op.then_ids : op.else_ids;
            SystemState next = s;
            CoreState& ncore = next.cores[t];
            ncore.pending.erase(ncore.pending.begin() + k);
            ncore.pending.insert(ncore.pending.begin() + k, arm.begin(),
                                 arm.end());
            out.emplace_back(step(t, Step::Label::Tau), std::move(next));
          }
          break;

        case Op::Kind::JmpIfNot:
        case Op::Kind::Jmp:
          throw std::logic_error("jump entry in pipeline program");
      }
    }
  }

  Compiled compiled;
  Semantics semantics;
  OpOptions options;
};

Machine::Machine(const litmus::LitmusTest& test, Semantics sem,
                 OpOptions options)
    : impl_(std::make_unique<Impl>(test, sem, options)) {}

Machine::~Machine() = default;

const ProgramLayout& Machine::layout() const { return impl_->compiled.layout; }

SystemState Machine::initial() const { return impl_->initial(); }

bool Machine::terminal(const SystemState& s) const {
  return impl_->terminal(s);
}

std::vector<std::pair<Step, SystemState>> Machine::successors(
    const SystemState& s) const {
  return impl_->successors(s);
}

FinalState Machine::snapshot(const SystemState& s) const {
  return impl_->snapshot(s);
}

Semantics semantics_from_name(const std::string& name) {
  if (name == "SC") return Semantics::SC;
  if (name == "TSO") return Semantics::TSO;
  if (name == "PIPELINE" || name == "ARM" || name == "ARMISH" ||
      name == "RISCV")
    return Semantics::Pipeline;
  throw std::invalid_argument("unknown operational semantics '" + name + "'");
}

std::string semantics_name(Semantics s) {
  switch (s) {
    case Semantics::SC:
      return "SC";
    case Semantics::TSO:
      return "TSO";
    case Semantics::Pipeline:
      return "PIPELINE";
  }
  return "?";
}

std::string format_step(const Step& step, const ProgramLayout& layout) {
  std::string label;
  switch (step.label) {
    case Step::Label::R:
      label = "R " + layout.locations[step.loc] + "=" +
              std::to_string(step.value);
      break;
    case Step::Label::W:
      label = "W " + layout.locations[step.loc] + "=" +
              std::to_string(step.value);
      break;
    case Step::Label::F:
      label = "F";
      break;
    case Step::Label::Tau:
      label = "tau";
      break;
  }
  return layout.thread_names[step.thread] + ": " + label;
}

bool ExploreResult::contains(const FinalState& fs) const {
  for (const auto& [state, _] : states)
    if (state == fs) return true;
  return false;
}

std::set<FinalState> ExploreResult::state_set() const {
  std::set<FinalState> out;
  for (const auto& [state, _] : states) out.insert(state);
  return out;
}

ExploreResult explore(const LitmusTest& test, Semantics semantics,
                      const OpOptions& options) {
  Machine engine(test, semantics, options);

  // Breadth-first exploration with full-state memoisation; parent pointers
  // reconstruct the (shortest) trace of each final state's first discovery.
  std::vector<SystemState> states;
  std::vector<std::pair<int, Step>> parent;
  std::unordered_map<std::string, int> seen;

  SystemState init = engine.initial();
  seen.emplace(init.encode(), 0);
  states.push_back(std::move(init));
  parent.push_back({-1, Step{}});

  std::map<FinalState, int> finals;  // snapshot -> state id of first discovery
  std::vector<FinalState> discovery;

  for (int id = 0; id < static_cast<int>(states.size()); ++id) {
    if (engine.terminal(states[id])) {
      FinalState fs = engine.snapshot(states[id]);
      if (finals.emplace(fs, id).second) discovery.push_back(fs);
      continue;
    }
    for (auto& [st, next] : engine.successors(states[id])) {
      std::string key = next.encode();
      if (seen.emplace(key, static_cast<int>(states.size())).second) {
        states.push_back(std::move(next));
        parent.push_back({id, st});
      }
    }
  }

  ExploreResult result;
  for (const auto& [fs, id] : finals) {
    std::vector<Step> trace;
    for (int cur = id; parent[cur].first >= 0; cur = parent[cur].first)
      trace.push_back(parent[cur].second);
    std::reverse(trace.begin(), trace.end());
    result.states.emplace_back(fs, std::move(trace));
  }
  result.discovery_order = std::move(discovery);
  return result;
}

OpVerdict reachable_operational(const LitmusTest& test, Semantics semantics,
                                const OpOptions& options) {
  ProgramLayout layout(test);
  ExploreResult explored = explore(test, semantics, options);
  OpVerdict verdict;
  verdict.test_name = test.name;
  verdict.semantics = semantics;
  for (const FinalState& fs : explored.discovery_order) {
    if (eval_post(test.post, layout, fs)) {
      verdict.reachable = true;
      verdict.witness_state = fs;
      for (const auto& [state, trace] : explored.states)
        if (state == fs) verdict.trace = trace;
      break;
    }
  }
  return verdict;
}

}  // namespace wmm::op
