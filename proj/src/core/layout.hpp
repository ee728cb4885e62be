#ifndef WMM_CORE_LAYOUT_HPP_
#define WMM_CORE_LAYOUT_HPP_

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/litmus.hpp"

namespace wmm {

// Name/index tables shared by both engines so that final states compare
// across them slot for slot.
struct ProgramLayout {
  explicit ProgramLayout(const litmus::LitmusTest& test);

  std::vector<std::string> locations;  // init order
  std::vector<litmus::Value> init_values;
  std::vector<std::string> thread_names;
  std::vector<std::string> registers;      // thread order, first mention order
  std::vector<int> register_thread;        // owning thread per register slot

  int loc_index(const std::string& name) const;
  int reg_index(const std::string& name) const;

 private:
  std::map<std::string, int> loc_map_;
  std::map<std::string, int> reg_map_;
};

// Terminal snapshot: one value per location slot and per register slot.
struct FinalState {
  std::vector<litmus::Value> mem;
  std::vector<litmus::Value> regs;

  auto operator<=>(const FinalState&) const = default;

  std::string to_string(const ProgramLayout& layout) const;
};

// Total expression evaluation; wraps on overflow.
litmus::Value eval_expr(const litmus::Expr& e,
                        const std::function<litmus::Value(const std::string&)>&
                            reg_value);

bool eval_post(const litmus::PostCond& post, const ProgramLayout& layout,
               const FinalState& fs);

}  // namespace wmm

#endif  // WMM_CORE_LAYOUT_HPP_
