#ifndef WMM_CORE_LITMUS_HPP_
#define WMM_CORE_LITMUS_HPP_

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wmm::litmus {

// All litmus values are signed 64-bit; expression evaluation wraps and is
// total.
using Value = std::int64_t;

// Expressions mention only registers and integer literals, never shared
// variables.
struct Expr {
  enum class Kind { Literal, Register, Add, Sub, Mul };

  Kind kind = Kind::Literal;
  Value literal = 0;
  std::string reg;
  std::vector<Expr> children;  // two entries for binary nodes

  static Expr make_literal(Value v);
  static Expr make_register(std::string name);
  static Expr make_binary(Kind op, Expr lhs, Expr rhs);

  bool operator==(const Expr& other) const;

  // Registers mentioned anywhere in the expression.
  void collect_registers(std::vector<std::string>& out) const;
};

enum class StoreOrder { Plain, Release };
enum class LoadOrder { Plain, Acquire };

struct Instr;
using Block = std::vector<Instr>;

struct Instr {
  enum class Kind { LocalAssign, Store, Load, Fence, Swap, Branch };

  Kind kind = Kind::Fence;
  std::string reg;  // target of LocalAssign/Load/Swap
  std::string var;  // shared variable of Store/Load/Swap
  Expr expr;        // value of LocalAssign/Store/Swap; condition lhs of Branch
  Value cond_value = 0;  // condition rhs of Branch
  StoreOrder store_order = StoreOrder::Plain;
  LoadOrder load_order = LoadOrder::Plain;
  std::vector<std::string> deps;  // dep annotation of Load
  Block then_block;
  Block else_block;  // empty when the branch has no else

  bool operator==(const Instr& other) const;
};

struct Thread {
  std::string name;
  Block body;

  bool operator==(const Thread& other) const = default;
};

// Boolean combination of (name, value) equality atoms.
struct PostCond {
  enum class Kind { Atom, And, Or, Not, True, False };

  Kind kind = Kind::True;
  std::string name;  // Atom: register or shared variable
  Value value = 0;
  std::vector<PostCond> children;

  static PostCond make_atom(std::string name, Value v);

  bool operator==(const PostCond& other) const;
};

enum class Expectation { Reachable, Unreachable };

struct LitmusTest {
  std::string name;
  std::vector<std::pair<std::string, Value>> init;  // declaration order
  std::vector<Thread> threads;
  PostCond post;
  std::vector<std::pair<std::string, Expectation>> expectations;

  bool operator==(const LitmusTest& other) const {
    return name == other.name && init == other.init &&
           threads == other.threads && post == other.post &&
           expectations == other.expectations;
  }

  bool is_shared(const std::string& name) const;
  const std::vector<std::string>& registers() const;  // all threads, cached

 private:
  mutable std::vector<std::string> registers_cache_;
};

struct SourcePos {
  int line = 0;
  int col = 0;
};

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(SourcePos pos, const std::string& expected,
              const std::string& found);

  SourcePos pos;
  std::string expected;
};

enum class ValidationKind {
  UndeclaredVar,
  CrossThreadRegister,
  LoopDetected,
  BadDep,
  SharedVarInExpr,
  DuplicateName,
};

class ValidationError : public std::runtime_error {
 public:
  ValidationError(ValidationKind kind, const std::string& what);

  ValidationKind kind;
};

// Aggregated per-file failures from load_corpus.
class CorpusError : public std::runtime_error {
 public:
  explicit CorpusError(std::vector<std::pair<std::string, std::string>> fails);

  std::vector<std::pair<std::string, std::string>> failures;  // (file, error)
};

LitmusTest parse_litmus(const std::string& text);

// Canonical pretty-printer; output parses back to an equal test.
std::string serialize_litmus(const LitmusTest& test);

// Parses every *.litmus file under dir, sorted by file name. Throws
// CorpusError listing every file that failed; nothing is skipped silently.
std::vector<LitmusTest> load_corpus(const std::filesystem::path& dir);

LitmusTest parse_litmus_file(const std::filesystem::path& file);

}  // namespace wmm::litmus

#endif  // WMM_CORE_LITMUS_HPP_
