#include "core/model.hpp"

#include <cctype>
#include <set>

#include "core/builtin_models.hpp"

namespace wmm::ax {

namespace {

const std::set<std::string> kSetNames = {"R", "W", "F", "Rls", "Acq", "RMW"};

struct ModelToken {
  enum class Kind { Ident, Punct, Postfix, End };
  Kind kind = Kind::End;
  std::string text;
  int line = 1;
};

class ModelLexer {
 public:
  explicit ModelLexer(const std::string& text) : text_(text) { advance(); }

  const ModelToken& peek() const { return tok_; }

  ModelToken next() {
    ModelToken t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    skip_ws();
    tok_.line = line_;
    if (i_ >= text_.size()) {
      tok_.kind = ModelToken::Kind::End;
      tok_.text = "<end of input>";
      return;
    }
    char c = text_[i_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string id;
      while (i_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[i_])) ||
              text_[i_] == '_' || text_[i_] == '-'))
        id += text_[i_++];
      tok_.kind = ModelToken::Kind::Ident;
      tok_.text = std::move(id);
      return;
    }
    if (c == '^') {
      ++i_;
      std::string suffix;
      if (i_ < text_.size() && text_[i_] == '+') {
        suffix = "+";
        ++i_;
      } else if (i_ < text_.size() && text_[i_] == '*') {
        suffix = "*";
        ++i_;
      } else if (text_.compare(i_, 2, "-1") == 0) {
        suffix = "-1";
        i_ += 2;
      } else {
        throw ModelSyntaxError(line_, "expected ^+, ^* or ^-1");
      }
      tok_.kind = ModelToken::Kind::Postfix;
      tok_.text = suffix;
      return;
    }
    if (std::string("()[]|&\\;=").find(c) != std::string::npos) {
      ++i_;
      tok_.kind = ModelToken::Kind::Punct;
      tok_.text = std::string(1, c);
      return;
    }
    throw ModelSyntaxError(line_, std::string("unexpected character '") + c +
                                      "'");
  }

  void skip_ws() {
    while (i_ < text_.size()) {
      char c = text_[i_];
      if (c == '/' && i_ + 1 < text_.size() && text_[i_ + 1] == '/') {
        while (i_ < text_.size() && text_[i_] != '\n') ++i_;
      } else if (c == '\n') {
        ++line_;
        ++i_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++i_;
      } else {
        break;
      }
    }
  }

  const std::string& text_;
  std::size_t i_ = 0;
  int line_ = 1;
  ModelToken tok_;
};

// Precedence, loosest first: | < \ < & < ;  with postfix tightest.
class ModelParser {
 public:
  explicit ModelParser(const std::string& text) : lex_(text) {}

  ModelSpec parse() {
    ModelSpec spec;
    expect_ident("model");
    spec.name = take_ident("model name");
    while (lex_.peek().kind != ModelToken::Kind::End) {
      const ModelToken& tok = lex_.peek();
      if (tok.kind != ModelToken::Kind::Ident)
        throw ModelSyntaxError(tok.line, "expected let or an axiom, found '" +
                                             tok.text + "'");
      if (tok.text == "let") {
        lex_.next();
        std::string name = take_ident("binding name");
        if (known(name))
          throw ModelSyntaxError(tok.line, "'" + name +
                                               "' is already defined");
        expect_punct("=");
        RelExpr e = parse_union(spec);
        spec.bindings.emplace_back(name, std::move(e));
      } else if (tok.text == "acyclic" || tok.text == "empty" ||
                 tok.text == "irreflexive") {
        AxiomKind kind = tok.text == "acyclic"   ? AxiomKind::Acyclic
                         : tok.text == "empty"   ? AxiomKind::Empty
                                                 : AxiomKind::Irreflexive;
        lex_.next();
        RelExpr e = parse_union(spec);
        expect_ident("as");
        std::string label = take_ident("axiom label");
        spec.axioms.push_back({kind, std::move(e), std::move(label)});
      } else {
        throw ModelSyntaxError(tok.line, "expected let or an axiom, found '" +
                                             tok.text + "'");
      }
      binding_names_.clear();
      for (const auto& [n, _] : spec.bindings) binding_names_.insert(n);
    }
    if (spec.axioms.empty())
      throw ModelSyntaxError(lex_.peek().line, "model declares no axiom");
    return spec;
  }

 private:
  bool known(const std::string& name) const {
    return is_builtin_relation(name) || binding_names_.count(name) > 0;
  }

  RelExpr parse_union(const ModelSpec& spec) {
    RelExpr e = parse_diff(spec);
    while (peek_punct("|")) {
      lex_.next();
      e = binary(RelExpr::Kind::Union, std::move(e), parse_diff(spec));
    }
    return e;
  }

  RelExpr parse_diff(const ModelSpec& spec) {
    RelExpr e = parse_inter(spec);
    while (peek_punct("\\")) {
      lex_.next();
      e = binary(RelExpr::Kind::Diff, std::move(e), parse_inter(spec));
    }
    return e;
  }

  RelExpr parse_inter(const ModelSpec& spec) {
    RelExpr e = parse_seq(spec);
    while (peek_punct("&")) {
      lex_.next();
      e = binary(RelExpr::Kind::Inter, std::move(e), parse_seq(spec));
    }
    return e;
  }

  RelExpr parse_seq(const ModelSpec& spec) {
    RelExpr e = parse_postfix(spec);
    while (peek_punct(";")) {
      lex_.next();
      e = binary(RelExpr::Kind::Seq, std::move(e), parse_postfix(spec));
    }
    return e;
  }

  RelExpr parse_postfix(const ModelSpec& spec) {
    RelExpr e = parse_atom(spec);
    while (lex_.peek().kind == ModelToken::Kind::Postfix) {
      std::string op = lex_.next().text;
      RelExpr node;
      node.kind = op == "+"   ? RelExpr::Kind::Plus
                  : op == "*" ? RelExpr::Kind::Star
                              : RelExpr::Kind::Inverse;
      node.children.push_back(std::move(e));
      e = std::move(node);
    }
    return e;
  }

  RelExpr parse_atom(const ModelSpec& spec) {
    const ModelToken& tok = lex_.peek();
    if (peek_punct("(")) {
      lex_.next();
      RelExpr e = parse_union(spec);
      expect_punct(")");
      return e;
    }
    if (peek_punct("[")) {
      lex_.next();
      std::string set = take_ident("event-set name");
      if (!kSetNames.count(set)) throw UnknownIdentifier(set);
      expect_punct("]");
      RelExpr e;
      e.kind = RelExpr::Kind::SetId;
      e.name = std::move(set);
      return e;
    }
    if (tok.kind == ModelToken::Kind::Ident) {
      std::string name = lex_.next().text;
      if (!known(name)) throw UnknownIdentifier(name);
      RelExpr e;
      e.kind = RelExpr::Kind::Name;
      e.name = std::move(name);
      return e;
    }
    throw ModelSyntaxError(tok.line,
                           "expected a relation expression, found '" +
                               tok.text + "'");
  }

  static RelExpr binary(RelExpr::Kind kind, RelExpr lhs, RelExpr rhs) {
    RelExpr e;
    e.kind = kind;
    e.children.push_back(std::move(lhs));
    e.children.push_back(std::move(rhs));
    return e;
  }

  bool peek_punct(const std::string& p) const {
    return lex_.peek().kind == ModelToken::Kind::Punct && lex_.peek().text == p;
  }

  void expect_punct(const std::string& p) {
    if (!peek_punct(p))
      throw ModelSyntaxError(lex_.peek().line, "expected '" + p + "', found '" +
                                                   lex_.peek().text + "'");
    lex_.next();
  }

  void expect_ident(const std::string& kw) {
    if (lex_.peek().kind != ModelToken::Kind::Ident || lex_.peek().text != kw)
      throw ModelSyntaxError(lex_.peek().line, "expected '" + kw +
                                                   "', found '" +
                                                   lex_.peek().text + "'");
    lex_.next();
  }

  std::string take_ident(const std::string& what) {
    if (lex_.peek().kind != ModelToken::Kind::Ident)
      throw ModelSyntaxError(lex_.peek().line, "expected " + what +
                                                   ", found '" +
                                                   lex_.peek().text + "'");
    return lex_.next().text;
  }

  ModelLexer lex_;
  std::set<std::string> binding_names_;
};

rel::EventSet named_set(const ExecutionGraph& g, const std::string& name) {
  if (name == "R") return g.events_of_kind(rel::EventKind::Read);
  if (name == "W") {
    // Initialisation events count as writes for set restriction.
    rel::EventSet s = g.events_of_kind(rel::EventKind::Write);
    for (const auto& e : g.events)
      if (e.is_init()) s.insert(e.id);
    return s;
  }
  if (name == "F") return g.events_of_kind(rel::EventKind::Fence);
  if (name == "Rls") return g.events_with_tag(rel::kTagRelease);
  if (name == "Acq") return g.events_with_tag(rel::kTagAcquire);
  if (name == "RMW") return g.events_with_tag(rel::kTagRmw);
  throw UnknownIdentifier(name);
}

}  // namespace

ModelSpec parse_model(const std::string& text) {
  return ModelParser(text).parse();
}

rel::Relation eval_rel_expr(
    const ExecutionGraph& g, const RelExpr& e,
    const std::vector<std::pair<std::string, rel::Relation>>& env) {
  switch (e.kind) {
    case RelExpr::Kind::Name: {
      for (const auto& [name, r] : env)
        if (name == e.name) return r;
      return derive(g, e.name);
    }
    case RelExpr::Kind::SetId:
      return rel::Relation::identity_on(named_set(g, e.name));
    case RelExpr::Kind::Seq:
      return eval_rel_expr(g, e.children[0], env)
          .compose(eval_rel_expr(g, e.children[1], env));
    case RelExpr::Kind::Union:
      return eval_rel_expr(g, e.children[0], env) |
             eval_rel_expr(g, e.children[1], env);
    case RelExpr::Kind::Inter:
      return eval_rel_expr(g, e.children[0], env) &
             eval_rel_expr(g, e.children[1], env);
    case RelExpr::Kind::Diff:
      return eval_rel_expr(g, e.children[0], env) -
             eval_rel_expr(g, e.children[1], env);
    case RelExpr::Kind::Inverse:
      return eval_rel_expr(g, e.children[0], env).inverse();
    case RelExpr::Kind::Plus:
      return eval_rel_expr(g, e.children[0], env).transitive_closure();
    case RelExpr::Kind::Star:
      return eval_rel_expr(g, e.children[0], env)
          .reflexive_transitive_closure();
  }
  throw std::logic_error("unreachable relation expression kind");
}

CheckResult check_model(const ExecutionGraph& g, const ModelSpec& model) {
  std::vector<std::pair<std::string, rel::Relation>> env;
  for (const auto& [name, expr] : model.bindings)
    env.emplace_back(name, eval_rel_expr(g, expr, env));

  const rel::EventSet init = g.init_events();
  CheckResult result;
  for (const Axiom& ax : model.axioms) {
    rel::Relation r = eval_rel_expr(g, ax.expr, env);
    switch (ax.kind) {
      case AxiomKind::Acyclic: {
        rel::AcyclicResult a = rel::acyclic(r, &init);
        if (!a.acyclic) {
          result.passed = false;
          result.failing_axiom = ax.label;
          result.failing_kind = ax.kind;
          result.witness = std::move(a.cycle);
          return result;
        }
        break;
      }
      case AxiomKind::Empty: {
        rel::EventId a, b;
        if (rel::first_pair(r, &init, &a, &b)) {
          result.passed = false;
          result.failing_axiom = ax.label;
          result.failing_kind = ax.kind;
          result.witness = {a, b};
          return result;
        }
        break;
      }
      case AxiomKind::Irreflexive: {
        rel::EventId a;
        if (rel::first_reflexive(r, &init, &a)) {
          result.passed = false;
          result.failing_axiom = ax.label;
          result.failing_kind = ax.kind;
          result.witness = {a};
          return result;
        }
        break;
      }
    }
  }
  return result;
}

const ModelSpec& builtin_sc() {
  static const ModelSpec spec = parse_model(kScCat);
  return spec;
}

const ModelSpec& builtin_tso() {
  static const ModelSpec spec = parse_model(kTsoCat);
  return spec;
}

const ModelSpec& builtin_armish() {
  static const ModelSpec spec = parse_model(kArmishCat);
  return spec;
}

const ModelSpec* builtin_model(const std::string& name) {
  if (name == "SC") return &builtin_sc();
  if (name == "TSO") return &builtin_tso();
  if (name == "ARM" || name == "ARMISH" || name == "RISCV")
    return &builtin_armish();
  return nullptr;
}

const std::string* builtin_model_source(const std::string& name) {
  static const std::string sc = kScCat;
  static const std::string tso = kTsoCat;
  static const std::string armish = kArmishCat;
  if (name == "SC") return &sc;
  if (name == "TSO") return &tso;
  if (name == "ARM" || name == "ARMISH" || name == "RISCV") return &armish;
  return nullptr;
}

}  // namespace wmm::ax
