#ifndef WMM_TESTS_SUPPORT_RANDOM_PROGRAM_HPP_
#define WMM_TESTS_SUPPORT_RANDOM_PROGRAM_HPP_

#include <random>
#include <string>

#include "core/litmus.hpp"

namespace wmm::test_support {

// Random loop-free programs: up to 3 threads x 4 instructions over at most
// 2 locations with values in {0,1,2}. Instructions cover stores, loads
// (with occasional dep annotations), local assignments, fences, swaps and
// one-sided branches. Release/acquire tags are deliberately absent: TSO
// ignores tags while ARMish orders release-before-acquire, so tagged
// programs are not comparable across the model chain.
class RandomProgram {
 public:
  explicit RandomProgram(std::uint64_t seed) : rng_(seed) {}

  litmus::LitmusTest next() {
    using litmus::Expr;
    using litmus::Instr;

    litmus::LitmusTest t;
    t.name = "RANDOM";
    int n_locs = pick(1, 2);
    for (int l = 0; l < n_locs; ++l)
      t.init.emplace_back(loc_name(l), 0);
    writes_per_loc_.assign(t.init.size(), 0);

    int n_threads = pick(2, 3);
    for (int ti = 0; ti < n_threads; ++ti) {
      litmus::Thread th;
      th.name = std::string(1, static_cast<char>('a' + ti));
      int budget = pick(1, 4);
      std::vector<std::string> assigned;
      emit_block(t, th.body, ti, budget, assigned, /*in_branch=*/false);
      t.threads.push_back(std::move(th));
    }

    t.post = random_post(t);
    return t;
  }

 private:
  void emit_block(const litmus::LitmusTest& t, litmus::Block& block,
                  int thread, int& budget, std::vector<std::string>& assigned,
                  bool in_branch) {
    while (budget > 0) {
      budget -= 1;
      int kind = pick(0, 99);
      litmus::Instr in;
      if (kind < 28) {
        int loc = pick_writable_loc(t);
        if (loc < 0) {
          in.kind = litmus::Instr::Kind::Fence;
          block.push_back(std::move(in));
          continue;
        }
        in.kind = litmus::Instr::Kind::Store;
        in.var = t.init[loc].first;
        in.expr = random_expr(assigned);
        ++writes_per_loc_[loc];
      } else if (kind < 56) {
        in.kind = litmus::Instr::Kind::Load;
        in.reg = fresh_reg(thread);
        in.var = t.init[pick(0, static_cast<int>(t.init.size()) - 1)].first;
        if (!assigned.empty() && pick(0, 99) < 30)
          in.deps.push_back(assigned[pick(
              0, static_cast<int>(assigned.size()) - 1)]);
        assigned.push_back(in.reg);
        block.push_back(std::move(in));
        continue;
      } else if (kind < 70) {
        in.kind = litmus::Instr::Kind::LocalAssign;
        in.reg = fresh_reg(thread);
        in.expr = random_expr(assigned);
        assigned.push_back(in.reg);
        block.push_back(std::move(in));
        continue;
      } else if (kind < 80) {
        in.kind = litmus::Instr::Kind::Fence;
      } else if (kind < 90) {
        int loc = pick_writable_loc(t);
        if (loc < 0) {
          in.kind = litmus::Instr::Kind::Fence;
          block.push_back(std::move(in));
          continue;
        }
        in.kind = litmus::Instr::Kind::Swap;
        in.reg = fresh_reg(thread);
        in.var = t.init[loc].first;
        in.expr = litmus::Expr::make_literal(pick(0, 2));
        ++writes_per_loc_[loc];
        assigned.push_back(in.reg);
        block.push_back(std::move(in));
        continue;
      } else if (!in_branch && budget > 0) {
        in.kind = litmus::Instr::Kind::Branch;
        in.expr = random_expr(assigned);
        in.cond_value = pick(0, 2);
        emit_block(t, in.then_block, thread, budget, assigned, true);
      } else {
        in.kind = litmus::Instr::Kind::Fence;
      }
      block.push_back(std::move(in));
    }
  }

  litmus::Expr random_expr(const std::vector<std::string>& assigned) {
    if (!assigned.empty() && pick(0, 99) < 40) {
      litmus::Expr reg = litmus::Expr::make_register(
          assigned[pick(0, static_cast<int>(assigned.size()) - 1)]);
      if (pick(0, 99) < 30)
        return litmus::Expr::make_binary(litmus::Expr::Kind::Add,
                                         std::move(reg),
                                         litmus::Expr::make_literal(1));
      return reg;
    }
    return litmus::Expr::make_literal(pick(0, 2));
  }

  litmus::PostCond random_post(const litmus::LitmusTest& t) {
    std::vector<std::string> names;
    for (const auto& [var, _] : t.init) names.push_back(var);
    for (const auto& r : t.registers()) names.push_back(r);
    litmus::PostCond post;
    int atoms = pick(1, 3);
    for (int i = 0; i < atoms; ++i) {
      litmus::PostCond atom = litmus::PostCond::make_atom(
          names[pick(0, static_cast<int>(names.size()) - 1)], pick(0, 2));
      if (i == 0) {
        post = std::move(atom);
      } else {
        litmus::PostCond node;
        node.kind = litmus::PostCond::Kind::And;
        node.children.push_back(std::move(post));
        node.children.push_back(std::move(atom));
        post = std::move(node);
      }
    }
    return post;
  }

  std::string fresh_reg(int thread) {
    return std::string(1, static_cast<char>('a' + thread)) + "r" +
           std::to_string(next_reg_++);
  }

  std::string loc_name(int l) { return l == 0 ? "x" : "y"; }

  // Caps stores per location so coherence-order enumeration stays small.
  int pick_writable_loc(const litmus::LitmusTest& t) {
    int loc = pick(0, static_cast<int>(t.init.size()) - 1);
    for (std::size_t tries = 0; tries < t.init.size(); ++tries) {
      if (writes_per_loc_[loc] < 3) return loc;
      loc = (loc + 1) % static_cast<int>(t.init.size());
    }
    return -1;
  }

  int pick(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }

  std::mt19937_64 rng_;
  std::vector<int> writes_per_loc_;
  int next_reg_ = 0;
};

}  // namespace wmm::test_support

#endif  // WMM_TESTS_SUPPORT_RANDOM_PROGRAM_HPP_
