#include "core/layout.hpp"

#include <sstream>

namespace wmm {

namespace {

using litmus::Block;
using litmus::Instr;

void scan_registers(const Block& block, std::vector<std::string>& out,
                    std::map<std::string, int>& seen, int thread,
                    std::vector<int>& owner) {
  auto note = [&](const std::string& r) {
    if (seen.emplace(r, static_cast<int>(out.size())).second) {
      out.push_back(r);
      owner.push_back(thread);
    }
  };
  for (const Instr& in : block) {
    std::vector<std::string> regs;
    switch (in.kind) {
      case Instr::Kind::LocalAssign:
      case Instr::Kind::Swap:
        note(in.reg);
        in.expr.collect_registers(regs);
        break;
      case Instr::Kind::Load:
        note(in.reg);
        for (const auto& d : in.deps) regs.push_back(d);
        break;
      case Instr::Kind::Store:
        in.expr.collect_registers(regs);
        break;
      case Instr::Kind::Fence:
        break;
      case Instr::Kind::Branch:
        in.expr.collect_registers(regs);
        for (const auto& r : regs) note(r);
        regs.clear();
        scan_registers(in.then_block, out, seen, thread, owner);
        scan_registers(in.else_block, out, seen, thread, owner);
        break;
    }
    for (const auto& r : regs) note(r);
  }
}

}  // namespace

ProgramLayout::ProgramLayout(const litmus::LitmusTest& test) {
  for (const auto& [var, v] : test.init) {
    loc_map_.emplace(var, static_cast<int>(locations.size()));
    locations.push_back(var);
    init_values.push_back(v);
  }
  std::map<std::string, int> seen;
  for (std::size_t t = 0; t < test.threads.size(); ++t) {
    thread_names.push_back(test.threads[t].name);
    scan_registers(test.threads[t].body, registers, seen,
                   static_cast<int>(t), register_thread);
  }
  for (const auto& [r, idx] : seen) reg_map_.emplace(r, idx);
}

int ProgramLayout::loc_index(const std::string& name) const {
  auto it = loc_map_.find(name);
  return it == loc_map_.end() ? -1 : it->second;
}

int ProgramLayout::reg_index(const std::string& name) const {
  auto it = reg_map_.find(name);
  return it == reg_map_.end() ? -1 : it->second;
}

std::string FinalState::to_string(const ProgramLayout& layout) const {
  std::ostringstream os;
  for (std::size_t i = 0; i < mem.size(); ++i) {
    if (i) os << " ";
    os << layout.locations[i] << "=" << mem[i];
  }
  for (std::size_t i = 0; i < regs.size(); ++i) {
    os << (mem.empty() && i == 0 ? "" : " ") << layout.registers[i] << "="
       << regs[i];
  }
  return os.str();
}

litmus::Value eval_expr(
    const litmus::Expr& e,
    const std::function<litmus::Value(const std::string&)>& reg_value) {
  using K = litmus::Expr::Kind;
  switch (e.kind) {
    case K::Literal:
      return e.literal;
    case K::Register:
      return reg_value(e.reg);
    case K::Add:
      return static_cast<litmus::Value>(
          static_cast<std::uint64_t>(eval_expr(e.children[0], reg_value)) +
          static_cast<std::uint64_t>(eval_expr(e.children[1], reg_value)));
    case K::Sub:
      return static_cast<litmus::Value>(
          static_cast<std::uint64_t>(eval_expr(e.children[0], reg_value)) -
          static_cast<std::uint64_t>(eval_expr(e.children[1], reg_value)));
    case K::Mul:
      return static_cast<litmus::Value>(
          static_cast<std::uint64_t>(eval_expr(e.children[0], reg_value)) *
          static_cast<std::uint64_t>(eval_expr(e.children[1], reg_value)));
  }
  return 0;
}

bool eval_post(const litmus::PostCond& post, const ProgramLayout& layout,
               const FinalState& fs) {
  using K = litmus::PostCond::Kind;
  switch (post.kind) {
    case K::True:
      return true;
    case K::False:
      return false;
    case K::Atom: {
      int loc = layout.loc_index(post.name);
      if (loc >= 0) return fs.mem[loc] == post.value;
      int reg = layout.reg_index(post.name);
      return reg >= 0 && fs.regs[reg] == post.value;
    }
    case K::Not:
      return !eval_post(post.children[0], layout, fs);
    case K::And:
      return eval_post(post.children[0], layout, fs) &&
             eval_post(post.children[1], layout, fs);
    case K::Or:
      return eval_post(post.children[0], layout, fs) ||
             eval_post(post.children[1], layout, fs);
  }
  return false;
}

}  // namespace wmm
