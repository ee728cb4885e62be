#ifndef WMM_CORE_MODEL_HPP_
#define WMM_CORE_MODEL_HPP_

#include <string>
#include <vector>

#include "core/graph.hpp"

namespace wmm::ax {

class ModelSyntaxError : public std::runtime_error {
 public:
  ModelSyntaxError(int line, const std::string& what)
      : std::runtime_error("model syntax error (line " + std::to_string(line) +
                           "): " + what) {}
};

class UnknownIdentifier : public std::runtime_error {
 public:
  explicit UnknownIdentifier(const std::string& name)
      : std::runtime_error("unknown identifier '" + name + "' in model") {}
};

// Relation expressions of the Cat-lite DSL:
//   expr := name | [SET] | expr ; expr | expr | expr | expr & expr
//         | expr \ expr | expr^-1 | expr^+ | expr^* | ( expr )
struct RelExpr {
  enum class Kind {
    Name,
    SetId,  // [R], [W], [F], [Rls], [Acq], [RMW]
    Seq,
    Union,
    Inter,
    Diff,
    Inverse,
    Plus,
    Star,
  };

  Kind kind = Kind::Name;
  std::string name;
  std::vector<RelExpr> children;
};

enum class AxiomKind { Acyclic, Empty, Irreflexive };

struct Axiom {
  AxiomKind kind;
  RelExpr expr;
  std::string label;
};

struct ModelSpec {
  std::string name;
  std::vector<std::pair<std::string, RelExpr>> bindings;
  std::vector<Axiom> axioms;
};

ModelSpec parse_model(const std::string& text);

// Built-in models, exactly the shipped sc.cat / tso.cat / armish.cat.
const ModelSpec& builtin_sc();
const ModelSpec& builtin_tso();
const ModelSpec& builtin_armish();

// Built-in model lookup by CLI name (SC, TSO, ARM, ARMISH, RISCV);
// returns nullptr if the name is not a built-in.
const ModelSpec* builtin_model(const std::string& name);
const std::string* builtin_model_source(const std::string& name);

rel::Relation eval_rel_expr(const ExecutionGraph& g, const RelExpr& e,
                            const std::vector<std::pair<std::string,
                                                        rel::Relation>>& env);

struct CheckResult {
  bool passed = true;
  std::string failing_axiom;
  AxiomKind failing_kind = AxiomKind::Acyclic;
  // Cycle for acyclic, offending pair for empty, offending event for
  // irreflexive.
  std::vector<rel::EventId> witness;
};

// Evaluates bindings then axioms in order, with init-event pairs excluded
// from every predicate; stops at the first violated axiom.
CheckResult check_model(const ExecutionGraph& g, const ModelSpec& model);

}  // namespace wmm::ax

#endif  // WMM_CORE_MODEL_HPP_
