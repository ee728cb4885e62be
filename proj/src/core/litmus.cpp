#include "core/litmus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace wmm::litmus {

Expr Expr::make_literal(Value v) {
  Expr e;
  e.kind = Kind::Literal;
  e.literal = v;
  return e;
}

Expr Expr::make_register(std::string name) {
  Expr e;
  e.kind = Kind::Register;
  e.reg = std::move(name);
  return e;
}

Expr Expr::make_binary(Kind op, Expr lhs, Expr rhs) {
  Expr e;
  e.kind = op;
  e.children.push_back(std::move(lhs));
  e.children.push_back(std::move(rhs));
  return e;
}

bool Expr::operator==(const Expr& other) const {
  return kind == other.kind && literal == other.literal && reg == other.reg &&
         children == other.children;
}

void Expr::collect_registers(std::vector<std::string>& out) const {
  if (kind == Kind::Register) out.push_back(reg);
  for (const auto& c : children) c.collect_registers(out);
}

bool Instr::operator==(const Instr& other) const {
  return kind == other.kind && reg == other.reg && var == other.var &&
         expr == other.expr && cond_value == other.cond_value &&
         store_order == other.store_order && load_order == other.load_order &&
         deps == other.deps && then_block == other.then_block &&
         else_block == other.else_block;
}

PostCond PostCond::make_atom(std::string name, Value v) {
  PostCond p;
  p.kind = Kind::Atom;
  p.name = std::move(name);
  p.value = v;
  return p;
}

bool PostCond::operator==(const PostCond& other) const {
  return kind == other.kind && name == other.name && value == other.value &&
         children == other.children;
}

bool LitmusTest::is_shared(const std::string& n) const {
  for (const auto& [var, _] : init)
    if (var == n) return true;
  return false;
}

namespace {

void collect_block_registers(const Block& block, std::vector<std::string>& out) {
  for (const Instr& in : block) {
    switch (in.kind) {
      case Instr::Kind::LocalAssign:
      case Instr::Kind::Swap:
        out.push_back(in.reg);
        in.expr.collect_registers(out);
        break;
      case Instr::Kind::Load:
        out.push_back(in.reg);
        for (const auto& d : in.deps) out.push_back(d);
        break;
      case Instr::Kind::Store:
        in.expr.collect_registers(out);
        break;
      case Instr::Kind::Fence:
        break;
      case Instr::Kind::Branch:
        in.expr.collect_registers(out);
        collect_block_registers(in.then_block, out);
        collect_block_registers(in.else_block, out);
        break;
    }
  }
}

}  // namespace

const std::vector<std::string>& LitmusTest::registers() const {
  if (registers_cache_.empty()) {
    std::vector<std::string> regs;
    for (const Thread& t : threads) collect_block_registers(t.body, regs);
    std::sort(regs.begin(), regs.end());
    regs.erase(std::unique(regs.begin(), regs.end()), regs.end());
    registers_cache_ = std::move(regs);
  }
  return registers_cache_;
}

SyntaxError::SyntaxError(SourcePos p, const std::string& expected_,
                         const std::string& found)
    : std::runtime_error("syntax error at " + std::to_string(p.line) + ":" +
                         std::to_string(p.col) + ": expected " + expected_ +
                         ", found " + found),
      pos(p),
      expected(expected_) {}

ValidationError::ValidationError(ValidationKind k, const std::string& what)
    : std::runtime_error(what), kind(k) {}

CorpusError::CorpusError(std::vector<std::pair<std::string, std::string>> f)
    : std::runtime_error([&f] {
        std::string msg = "corpus contains unparseable files:";
        for (const auto& [file, err] : f) msg += "\n  " + file + ": " + err;
        return msg;
      }()),
      failures(std::move(f)) {}

namespace {

struct Token {
  enum class Kind {
    Ident,
    Int,
    Assign,     // :=
    AssignRel,  // :=rel
    AssignAcq,  // :=acq
    Punct,      // single char: { } ( ) ; , = + - * :
    AndOp,      // /\ .
    OrOp,       // \/
    Tilde,
    End,
  };

  Kind kind = Kind::End;
  std::string text;
  Value value = 0;
  SourcePos pos;
};

const std::set<std::string> kLoopKeywords = {"while", "loop", "goto", "for",
                                             "do", "repeat"};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }

  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    skip_ws();
    tok_.pos = {line_, col_};
    if (i_ >= text_.size()) {
      tok_.kind = Token::Kind::End;
      tok_.text = "<end of input>";
      return;
    }
    char c = text_[i_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string id;
      while (i_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[i_])) ||
              text_[i_] == '_'))
        id += take();
      tok_.kind = Token::Kind::Ident;
      tok_.text = std::move(id);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      lex_int(false);
      return;
    }
    if (c == ':' && i_ + 1 < text_.size() && text_[i_ + 1] == '=') {
      take();
      take();
      tok_.kind = Token::Kind::Assign;
      tok_.text = ":=";
      // ":=rel" and ":=acq" are single tokens, glued to the assign.
      if (text_.compare(i_, 3, "rel") == 0 && !ident_continues(i_ + 3)) {
        take();
        take();
        take();
        tok_.kind = Token::Kind::AssignRel;
        tok_.text = ":=rel";
      } else if (text_.compare(i_, 3, "acq") == 0 && !ident_continues(i_ + 3)) {
        take();
        take();
        take();
        tok_.kind = Token::Kind::AssignAcq;
        tok_.text = ":=acq";
      }
      return;
    }
    if (c == '/' && i_ + 1 < text_.size() && text_[i_ + 1] == '\\') {
      take();
      take();
      tok_.kind = Token::Kind::AndOp;
      tok_.text = "/\\";
      return;
    }
    if (c == '\\' && i_ + 1 < text_.size() && text_[i_ + 1] == '/') {
      take();
      take();
      tok_.kind = Token::Kind::OrOp;
      tok_.text = "\\/";
      return;
    }
    if (c == '~') {
      take();
      tok_.kind = Token::Kind::Tilde;
      tok_.text = "~";
      return;
    }
    if (std::string("{}();,=+-*:").find(c) != std::string::npos) {
      take();
      tok_.kind = Token::Kind::Punct;
      tok_.text = std::string(1, c);
      return;
    }
    throw SyntaxError({line_, col_}, "a token", std::string("'") + c + "'");
  }

  bool ident_continues(size_t pos) const {
    return pos < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos])) ||
            text_[pos] == '_');
  }

  void lex_int(bool negative) {
    std::string digits;
    while (i_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[i_])))
      digits += take();
    tok_.kind = Token::Kind::Int;
    tok_.text = (negative ? "-" : "") + digits;
    tok_.value = std::stoll(tok_.text);
  }

  void skip_ws() {
    while (i_ < text_.size()) {
      char c = text_[i_];
      if (c == '/' && i_ + 1 < text_.size() && text_[i_ + 1] == '/') {
        while (i_ < text_.size() && text_[i_] != '\n') take();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        take();
      } else {
        break;
      }
    }
  }

  char take() {
    char c = text_[i_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  const std::string& text_;
  size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token tok_;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) {}

  LitmusTest parse() {
    LitmusTest t;
    expect_keyword("test");
    t.name = expect_ident("test name");
    expect_keyword("init");
    parse_init(t);
    while (peek_is_keyword("thread")) parse_thread(t);
    expect_keyword("exists");
    expect_punct("(");
    t.post = parse_or(t);
    expect_punct(")");
    if (peek_is_keyword("expect")) parse_expect(t);
    if (lex_.peek().kind != Token::Kind::End)
      throw SyntaxError(lex_.peek().pos, "end of test", lex_.peek().text);
    validate(t);
    return t;
  }

 private:
  void parse_init(LitmusTest& t) {
    expect_punct("{");
    while (!peek_is_punct("}")) {
      std::string var = expect_ident("shared variable name");
      for (const auto& [v, _] : t.init)
        if (v == var)
          throw ValidationError(ValidationKind::DuplicateName,
                                "shared variable '" + var +
                                    "' initialised twice");
      expect_punct("=");
      Value v = expect_int("initial value");
      t.init.emplace_back(var, v);
      expect_punct(";");
    }
    expect_punct("}");
  }

  void parse_thread(LitmusTest& t) {
    expect_keyword("thread");
    Thread th;
    th.name = expect_ident("thread name");
    for (const auto& existing : t.threads)
      if (existing.name == th.name)
        throw ValidationError(ValidationKind::DuplicateName,
                              "thread '" + th.name + "' declared twice");
    expect_punct("{");
    th.body = parse_block(t);
    expect_punct("}");
    t.threads.push_back(std::move(th));
  }

  Block parse_block(const LitmusTest& t) {
    Block block;
    while (!peek_is_punct("}")) {
      block.push_back(parse_instr(t));
      if (peek_is_punct(";")) {
        lex_.next();
      } else if (!peek_is_punct("}")) {
        throw SyntaxError(lex_.peek().pos, "';' or '}'", lex_.peek().text);
      }
    }
    return block;
  }

  Instr parse_instr(const LitmusTest& t) {
    const Token& tok = lex_.peek();
    if (tok.kind != Token::Kind::Ident)
      throw SyntaxError(tok.pos, "an instruction", tok.text);
    if (kLoopKeywords.count(tok.text))
      throw ValidationError(ValidationKind::LoopDetected,
                            "loop construct '" + tok.text +
                                "' is not part of the language");
    if (tok.text == "fence") {
      lex_.next();
      Instr in;
      in.kind = Instr::Kind::Fence;
      return in;
    }
    if (tok.text == "if") return parse_branch(t);

    std::string target = lex_.next().text;
    const Token& assign = lex_.peek();
    if (t.is_shared(target)) {
      // Store to shared memory.
      Instr in;
      in.kind = Instr::Kind::Store;
      in.var = target;
      if (assign.kind == Token::Kind::AssignRel) {
        in.store_order = StoreOrder::Release;
        lex_.next();
      } else if (assign.kind == Token::Kind::Assign) {
        lex_.next();
      } else {
        throw SyntaxError(assign.pos, "':=' or ':=rel'", assign.text);
      }
      if (peek_is_keyword("SWAP"))
        throw SyntaxError(lex_.peek().pos,
                          "an expression (SWAP target must be a register)",
                          "SWAP");
      in.expr = parse_expr(t);
      return in;
    }

    // Register target: load, swap or local assignment.
    Instr in;
    in.reg = target;
    if (assign.kind == Token::Kind::AssignAcq) {
      lex_.next();
      in.kind = Instr::Kind::Load;
      in.load_order = LoadOrder::Acquire;
      in.var = expect_ident("shared variable");
      if (!t.is_shared(in.var))
        throw ValidationError(ValidationKind::UndeclaredVar,
                              "acquire load of '" + in.var +
                                  "', which is not in init");
      return in;
    }
    if (assign.kind != Token::Kind::Assign)
      throw SyntaxError(assign.pos, "':='", assign.text);
    lex_.next();

    if (peek_is_keyword("SWAP")) {
      lex_.next();
      in.kind = Instr::Kind::Swap;
      expect_punct("(");
      in.var = expect_ident("shared variable");
      if (!t.is_shared(in.var))
        throw ValidationError(ValidationKind::UndeclaredVar,
                              "SWAP on '" + in.var + "', which is not in init");
      expect_punct(",");
      in.expr = parse_expr(t);
      expect_punct(")");
      return in;
    }

    // `r := x` with x in init is a load; any other right-hand side is a
    // register-only expression.
    const Token& rhs = lex_.peek();
    if (rhs.kind == Token::Kind::Ident && t.is_shared(rhs.text)) {
      Token var = lex_.next();
      const Token& after = lex_.peek();
      bool plain_load = after.kind == Token::Kind::End ||
                        (after.kind == Token::Kind::Punct &&
                         (after.text == ";" || after.text == "}")) ||
                        (after.kind == Token::Kind::Ident &&
                         after.text == "dep");
      if (!plain_load)
        throw ValidationError(ValidationKind::SharedVarInExpr,
                              "shared variable '" + var.text +
                                  "' used inside an expression");
      in.kind = Instr::Kind::Load;
      in.var = var.text;
      if (peek_is_keyword("dep")) {
        lex_.next();
        in.deps.push_back(expect_ident("dep register"));
        while (peek_is_punct(",")) {
          lex_.next();
          in.deps.push_back(expect_ident("dep register"));
        }
      }
      return in;
    }

    in.kind = Instr::Kind::LocalAssign;
    in.expr = parse_expr(t);
    return in;
  }

  Instr parse_branch(const LitmusTest& t) {
    lex_.next();  // if
    Instr in;
    in.kind = Instr::Kind::Branch;
    expect_punct("(");
    in.expr = parse_expr(t);
    expect_punct("=");
    in.cond_value = expect_int("condition value");
    expect_punct(")");
    expect_punct("{");
    in.then_block = parse_block(t);
    expect_punct("}");
    if (peek_is_keyword("else")) {
      lex_.next();
      expect_punct("{");
      in.else_block = parse_block(t);
      expect_punct("}");
    }
    return in;
  }

  Expr parse_expr(const LitmusTest& t) {
    Expr e = parse_term(t);
    while (peek_is_punct("+") || peek_is_punct("-")) {
      bool add = lex_.next().text == "+";
      Expr rhs = parse_term(t);
      e = Expr::make_binary(add ? Expr::Kind::Add : Expr::Kind::Sub,
                            std::move(e), std::move(rhs));
    }
    return e;
  }

  Expr parse_term(const LitmusTest& t) {
    Expr e = parse_factor(t);
    while (peek_is_punct("*")) {
      lex_.next();
      Expr rhs = parse_factor(t);
      e = Expr::make_binary(Expr::Kind::Mul, std::move(e), std::move(rhs));
    }
    return e;
  }

  Expr parse_factor(const LitmusTest& t) {
    const Token& tok = lex_.peek();
    if (tok.kind == Token::Kind::Int) return Expr::make_literal(lex_.next().value);
    if (tok.kind == Token::Kind::Punct && tok.text == "-") {
      lex_.next();
      Expr inner = parse_factor(t);
      return Expr::make_binary(Expr::Kind::Sub, Expr::make_literal(0),
                               std::move(inner));
    }
    if (tok.kind == Token::Kind::Punct && tok.text == "(") {
      lex_.next();
      Expr e = parse_expr(t);
      expect_punct(")");
      return e;
    }
    if (tok.kind == Token::Kind::Ident) {
      if (t.is_shared(tok.text))
        throw ValidationError(ValidationKind::SharedVarInExpr,
                              "shared variable '" + tok.text +
                                  "' used inside an expression");
      if (kLoopKeywords.count(tok.text))
        throw ValidationError(ValidationKind::LoopDetected,
                              "loop construct '" + tok.text +
                                  "' is not part of the language");
      return Expr::make_register(lex_.next().text);
    }
    throw SyntaxError(tok.pos, "an expression", tok.text);
  }

  PostCond parse_or(const LitmusTest& t) {
    PostCond p = parse_and(t);
    while (lex_.peek().kind == Token::Kind::OrOp) {
      lex_.next();
      PostCond rhs = parse_and(t);
      PostCond node;
      node.kind = PostCond::Kind::Or;
      node.children.push_back(std::move(p));
      node.children.push_back(std::move(rhs));
      p = std::move(node);
    }
    return p;
  }

  PostCond parse_and(const LitmusTest& t) {
    PostCond p = parse_not(t);
    while (lex_.peek().kind == Token::Kind::AndOp) {
      lex_.next();
      PostCond rhs = parse_not(t);
      PostCond node;
      node.kind = PostCond::Kind::And;
      node.children.push_back(std::move(p));
      node.children.push_back(std::move(rhs));
      p = std::move(node);
    }
    return p;
  }

  PostCond parse_not(const LitmusTest& t) {
    if (lex_.peek().kind == Token::Kind::Tilde) {
      lex_.next();
      PostCond node;
      node.kind = PostCond::Kind::Not;
      node.children.push_back(parse_not(t));
      return node;
    }
    if (peek_is_punct("(")) {
      lex_.next();
      PostCond p = parse_or(t);
      expect_punct(")");
      return p;
    }
    if (peek_is_keyword("true")) {
      lex_.next();
      PostCond p;
      p.kind = PostCond::Kind::True;
      return p;
    }
    if (peek_is_keyword("false")) {
      lex_.next();
      PostCond p;
      p.kind = PostCond::Kind::False;
      return p;
    }
    std::string name = expect_ident("postcondition atom");
    expect_punct("=");
    Value v = expect_int("atom value");
    return PostCond::make_atom(std::move(name), v);
  }

  void parse_expect(LitmusTest& t) {
    lex_.next();  // expect
    expect_punct("{");
    while (!peek_is_punct("}")) {
      std::string model = expect_ident("model name");
      for (const auto& [m, _] : t.expectations)
        if (m == model)
          throw ValidationError(ValidationKind::DuplicateName,
                                "model '" + model +
                                    "' appears twice in expect block");
      expect_punct(":");
      std::string verdict = expect_ident("'yes' or 'no'");
      if (verdict != "yes" && verdict != "no")
        throw SyntaxError(lex_.peek().pos, "'yes' or 'no'", verdict);
      t.expectations.emplace_back(model, verdict == "yes"
                                             ? Expectation::Reachable
                                             : Expectation::Unreachable);
      expect_punct(";");
    }
    expect_punct("}");
  }

  // --- validation over the parsed test ---

  void validate(const LitmusTest& t) {
    // Register names are thread-local: the same name in two threads is an
    // error, as postcondition atoms refer to registers unqualified.
    std::map<std::string, std::string> reg_owner;
    for (const Thread& th : t.threads) {
      std::vector<std::string> regs;
      collect_block_registers(th.body, regs);
      std::sort(regs.begin(), regs.end());
      regs.erase(std::unique(regs.begin(), regs.end()), regs.end());
      for (const auto& r : regs) {
        if (t.is_shared(r))
          throw ValidationError(ValidationKind::SharedVarInExpr,
                                "shared variable '" + r +
                                    "' used as a register in thread '" +
                                    th.name + "'");
        auto [it, inserted] = reg_owner.emplace(r, th.name);
        if (!inserted && it->second != th.name)
          throw ValidationError(ValidationKind::CrossThreadRegister,
                                "register '" + r + "' used by threads '" +
                                    it->second + "' and '" + th.name + "'");
      }
      std::set<std::string> assigned;
      validate_deps(th, th.body, assigned);
    }
    validate_post(t, t.post, reg_owner);
  }

  // dep registers must have a (possible) assignment earlier in the thread.
  void validate_deps(const Thread& th, const Block& block,
                     std::set<std::string>& assigned) {
    for (const Instr& in : block) {
      if (in.kind == Instr::Kind::Load) {
        for (const auto& d : in.deps)
          if (!assigned.count(d))
            throw ValidationError(ValidationKind::BadDep,
                                  "dep register '" + d + "' in thread '" +
                                      th.name +
                                      "' has no earlier assignment");
      }
      switch (in.kind) {
        case Instr::Kind::LocalAssign:
        case Instr::Kind::Load:
        case Instr::Kind::Swap:
          assigned.insert(in.reg);
          break;
        case Instr::Kind::Branch: {
          auto then_assigned = assigned;
          validate_deps(th, in.then_block, then_assigned);
          auto else_assigned = assigned;
          validate_deps(th, in.else_block, else_assigned);
          // Later deps may rely on either arm's assignments.
          assigned.insert(then_assigned.begin(), then_assigned.end());
          assigned.insert(else_assigned.begin(), else_assigned.end());
          break;
        }
        default:
          break;
      }
    }
  }

  void validate_post(const LitmusTest& t, const PostCond& p,
                     const std::map<std::string, std::string>& reg_owner) {
    if (p.kind == PostCond::Kind::Atom) {
      if (!t.is_shared(p.name) && !reg_owner.count(p.name))
        throw ValidationError(ValidationKind::UndeclaredVar,
                              "postcondition names '" + p.name +
                                  "', which is neither a register nor in init");
    }
    for (const auto& c : p.children) validate_post(t, c, reg_owner);
  }

  // --- token helpers ---

  bool peek_is_keyword(const std::string& kw) const {
    return lex_.peek().kind == Token::Kind::Ident && lex_.peek().text == kw;
  }

  bool peek_is_punct(const std::string& p) const {
    return lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == p;
  }

  void expect_keyword(const std::string& kw) {
    if (!peek_is_keyword(kw))
      throw SyntaxError(lex_.peek().pos, "'" + kw + "'", lex_.peek().text);
    lex_.next();
  }

  void expect_punct(const std::string& p) {
    if (!peek_is_punct(p))
      throw SyntaxError(lex_.peek().pos, "'" + p + "'", lex_.peek().text);
    lex_.next();
  }

  std::string expect_ident(const std::string& what) {
    if (lex_.peek().kind != Token::Kind::Ident)
      throw SyntaxError(lex_.peek().pos, what, lex_.peek().text);
    return lex_.next().text;
  }

  Value expect_int(const std::string& what) {
    bool neg = false;
    if (peek_is_punct("-")) {
      lex_.next();
      neg = true;
    }
    if (lex_.peek().kind != Token::Kind::Int)
      throw SyntaxError(lex_.peek().pos, what, lex_.peek().text);
    Value v = lex_.next().value;
    return neg ? -v : v;
  }

  Lexer lex_;
};

// --- serialization ---

int expr_precedence(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
      return 1;
    case Expr::Kind::Mul:
      return 2;
    default:
      return 3;
  }
}

void print_expr(std::ostream& os, const Expr& e, int parent_prec = 0) {
  int prec = expr_precedence(e.kind);
  switch (e.kind) {
    case Expr::Kind::Literal:
      os << e.literal;
      return;
    case Expr::Kind::Register:
      os << e.reg;
      return;
    default:
      break;
  }
  const char* op = e.kind == Expr::Kind::Add   ? " + "
                   : e.kind == Expr::Kind::Sub ? " - "
                                               : " * ";
  if (prec < parent_prec) os << "(";
  print_expr(os, e.children[0], prec);
  os << op;
  print_expr(os, e.children[1], prec + 1);  // binaries associate left
  if (prec < parent_prec) os << ")";
}

void print_block(std::ostream& os, const Block& block);

void print_instr(std::ostream& os, const Instr& in) {
  switch (in.kind) {
    case Instr::Kind::LocalAssign:
      os << in.reg << " := ";
      print_expr(os, in.expr);
      break;
    case Instr::Kind::Store:
      os << in.var
         << (in.store_order == StoreOrder::Release ? " :=rel " : " := ");
      print_expr(os, in.expr);
      break;
    case Instr::Kind::Load:
      os << in.reg
         << (in.load_order == LoadOrder::Acquire ? " :=acq " : " := ")
         << in.var;
      for (size_t i = 0; i < in.deps.size(); ++i)
        os << (i == 0 ? " dep " : ",") << in.deps[i];
      break;
    case Instr::Kind::Fence:
      os << "fence";
      break;
    case Instr::Kind::Swap:
      os << in.reg << " := SWAP(" << in.var << ", ";
      print_expr(os, in.expr);
      os << ")";
      break;
    case Instr::Kind::Branch:
      os << "if (";
      print_expr(os, in.expr);
      os << " = " << in.cond_value << ") { ";
      print_block(os, in.then_block);
      os << "}";
      if (!in.else_block.empty()) {
        os << " else { ";
        print_block(os, in.else_block);
        os << "}";
      }
      break;
  }
}

void print_block(std::ostream& os, const Block& block) {
  for (const Instr& in : block) {
    print_instr(os, in);
    os << " ; ";
  }
}

int post_precedence(PostCond::Kind k) {
  switch (k) {
    case PostCond::Kind::Or:
      return 1;
    case PostCond::Kind::And:
      return 2;
    default:
      return 3;
  }
}

void print_post(std::ostream& os, const PostCond& p, int parent_prec = 0) {
  int prec = post_precedence(p.kind);
  switch (p.kind) {
    case PostCond::Kind::Atom:
      os << p.name << " = " << p.value;
      return;
    case PostCond::Kind::True:
      os << "true";
      return;
    case PostCond::Kind::False:
      os << "false";
      return;
    case PostCond::Kind::Not:
      os << "~";
      print_post(os, p.children[0], 3);
      return;
    default:
      break;
  }
  const char* op = p.kind == PostCond::Kind::And ? " /\\ " : " \\/ ";
  if (prec < parent_prec) os << "(";
  print_post(os, p.children[0], prec);
  os << op;
  print_post(os, p.children[1], prec + 1);
  if (prec < parent_prec) os << ")";
}

}  // namespace

LitmusTest parse_litmus(const std::string& text) {
  return Parser(text).parse();
}

std::string serialize_litmus(const LitmusTest& test) {
  std::ostringstream os;
  os << "test " << test.name << "\n";
  os << "init {";
  for (const auto& [var, v] : test.init) os << " " << var << " = " << v << ";";
  os << " }\n";
  for (const Thread& th : test.threads) {
    os << "thread " << th.name << " { ";
    print_block(os, th.body);
    os << "}\n";
  }
  os << "exists (";
  print_post(os, test.post);
  os << ")\n";
  if (!test.expectations.empty()) {
    os << "expect {";
    for (const auto& [model, e] : test.expectations)
      os << " " << model << ": "
         << (e == Expectation::Reachable ? "yes" : "no") << ";";
    os << " }\n";
  }
  return os.str();
}

LitmusTest parse_litmus_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_litmus(buf.str());
}

std::vector<LitmusTest> load_corpus(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir))
    throw std::runtime_error("not a directory: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".litmus")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  std::vector<LitmusTest> tests;
  std::vector<std::pair<std::string, std::string>> failures;
  for (const auto& f : files) {
    try {
      tests.push_back(parse_litmus_file(f));
    } catch (const std::exception& e) {
      failures.emplace_back(f.filename().string(), e.what());
    }
  }
  if (!failures.empty()) throw CorpusError(std::move(failures));
  return tests;
}

}  // namespace wmm::litmus
