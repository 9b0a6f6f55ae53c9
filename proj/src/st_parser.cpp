#include <algorithm>
#include <cctype>
#include <optional>

#include "expr_print.hpp"
#include "expr_tree.hpp"
#include "hyplc/number_format.hpp"
#include "hyplc/st.hpp"

namespace hyplc {

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class Tok {
  kIdent,
  kKeyword,
  kNumber,
  kDuration,
  kAssign,  // :=
  kColon,
  kSemi,
  kComma,
  kLParen,
  kRParen,
  kPlus,
  kMinus,
  kStar,
  kSlash,
  kPow,  // **
  kEq,
  kNe,
  kLt,
  kLe,
  kGt,
  kGe,
  kEnd,
};

struct Token {
  Tok kind;
  std::string text;  // keywords upper-cased; identifiers verbatim
  Location loc;
  double duration = 0;  // seconds, for kDuration
};

constexpr std::string_view kKeywords[] = {
    "PROGRAM", "END_PROGRAM", "VAR_INPUT", "VAR_OUTPUT", "VAR", "VAR_EXTERNAL", "END_VAR",
    "IF", "THEN", "ELSE", "ELSIF", "END_IF", "AND", "OR", "XOR", "NOT", "TRUE", "FALSE",
    "CONFIGURATION", "END_CONFIGURATION", "RESOURCE", "END_RESOURCE", "ON", "TASK", "WITH",
    "INTERVAL", "PRIORITY", "LREAL", "REAL", "BOOL"};

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return out;
}

[[noreturn]] void syntax_error(const Location& loc, const std::string& msg) {
  throw Error(ErrorKind::kSyntaxError, msg, loc);
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_trivia();
      Location loc{line_, col_};
      if (pos_ >= src_.size()) {
        out.push_back({Tok::kEnd, "end of input", loc});
        return out;
      }
      out.push_back(next(loc));
    }
  }

 private:
  char peek(size_t off = 0) const { return pos_ + off < src_.size() ? src_[pos_ + off] : '\0'; }

  void advance(size_t n = 1) {
    for (size_t i = 0; i < n && pos_ < src_.size(); ++i) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  void skip_trivia() {
    for (;;) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '(' && peek(1) == '*') {
        Location start{line_, col_};
        advance(2);
        while (pos_ < src_.size() && !(peek() == '*' && peek(1) == ')')) advance();
        if (pos_ >= src_.size()) syntax_error(start, "unterminated comment");
        advance(2);
      } else if (c == '/' && peek(1) == '/') {
        while (pos_ < src_.size() && peek() != '\n') advance();
      } else {
        return;
      }
    }
  }

  std::string read_number() {
    size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
    if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
      advance();
      while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
    }
    if ((peek() == 'e' || peek() == 'E') &&
        (std::isdigit(static_cast<unsigned char>(peek(1))) ||
         ((peek(1) == '+' || peek(1) == '-') && std::isdigit(static_cast<unsigned char>(peek(2)))))) {
      advance(2);
      while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
    }
    return std::string(src_.substr(start, pos_ - start));
  }

  Token duration(const Location& loc) {
    // T#<decimal> s | T#<decimal> ms
    while (peek() == ' ' || peek() == '\t') advance();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) {
      syntax_error({line_, col_}, "expected a number in duration literal");
    }
    std::string num = read_number();
    while (peek() == ' ' || peek() == '\t') advance();
    size_t start = pos_;
    Location unit_loc{line_, col_};
    while (std::isalpha(static_cast<unsigned char>(peek()))) advance();
    std::string unit = upper(src_.substr(start, pos_ - start));
    double value = 0;
    parse_number(num, value);
    if (unit == "S") {
    } else if (unit == "MS") {
      value /= 1000.0;
    } else {
      syntax_error(unit_loc, "unsupported duration unit '" + unit + "' (expected s or ms)");
    }
    Token t{Tok::kDuration, "T#" + num + " " + unit, loc};
    t.duration = value;
    return t;
  }

  Token next(const Location& loc) {
    char c = peek();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') advance();
      std::string word(src_.substr(start, pos_ - start));
      std::string up = upper(word);
      if ((up == "T" || up == "TIME") && peek() == '#') {
        advance();
        return duration(loc);
      }
      for (auto kw : kKeywords) {
        if (up == kw) return {Tok::kKeyword, up, loc};
      }
      return {Tok::kIdent, word, loc};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return {Tok::kNumber, read_number(), loc};
    auto two = [&](char a, char b) { return c == a && peek(1) == b; };
    if (two(':', '=')) return advance(2), Token{Tok::kAssign, ":=", loc};
    if (two('*', '*')) return advance(2), Token{Tok::kPow, "**", loc};
    if (two('<', '>')) return advance(2), Token{Tok::kNe, "<>", loc};
    if (two('<', '=')) return advance(2), Token{Tok::kLe, "<=", loc};
    if (two('>', '=')) return advance(2), Token{Tok::kGe, ">=", loc};
    advance();
    switch (c) {
      case ':': return {Tok::kColon, ":", loc};
      case ';': return {Tok::kSemi, ";", loc};
      case ',': return {Tok::kComma, ",", loc};
      case '(': return {Tok::kLParen, "(", loc};
      case ')': return {Tok::kRParen, ")", loc};
      case '+': return {Tok::kPlus, "+", loc};
      case '-': return {Tok::kMinus, "-", loc};
      case '*': return {Tok::kStar, "*", loc};
      case '/': return {Tok::kSlash, "/", loc};
      case '=': return {Tok::kEq, "=", loc};
      case '<': return {Tok::kLt, "<", loc};
      case '>': return {Tok::kGt, ">", loc};
      default: break;
    }
    syntax_error(loc, std::string("unexpected character '") + c + "'");
  }

  std::string_view src_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

using detail::Expr;

Term term_of(const Expr& e) { return detail::to_term(e); }
// BOOL variables are reals restricted to {0,1}; a bare name tests for nonzero.
Formula cond_of(const Expr& e) { return detail::to_formula(e, Dialect::kSt, true); }

// ---------------------------------------------------------------------------
// Parser

constexpr std::string_view kUnsupportedStatements[] = {"WHILE", "FOR", "CASE", "REPEAT",
                                                       "RETURN", "EXIT", "CONTINUE"};

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(Lexer(src).run()) {}

  StUnit unit() {
    expect_kw("PROGRAM");
    Ident name(ident("program name"));
    std::vector<StVarBlock> blocks;
    while (at_kw("VAR_INPUT") || at_kw("VAR_OUTPUT") || at_kw("VAR") || at_kw("VAR_EXTERNAL")) {
      blocks.push_back(var_block());
    }
    if (at_kw("END_PROGRAM")) syntax_error(cur().loc, "program body is empty");
    StStatement body = statements({"END_PROGRAM"});
    expect_kw("END_PROGRAM");
    std::optional<StConfig> config;
    if (at_kw("CONFIGURATION")) config = configuration(name);
    expect_end();
    return StUnit{name, std::move(blocks), body, config};
  }

  StStatement statement_list() {
    StStatement s = statements({});
    expect_end();
    return s;
  }

  Expr expression_only() {
    Expr e = or_expr();
    expect_end();
    return e;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool at(Tok k) const { return cur().kind == k; }
  bool at_kw(std::string_view kw) const { return cur().kind == Tok::kKeyword && cur().text == kw; }

  [[noreturn]] void unexpected(const std::string& expected) const {
    syntax_error(cur().loc, "expected " + expected + " but found '" + cur().text + "'");
  }

  void expect(Tok k, const char* what) {
    if (!at(k)) unexpected(what);
    take();
  }
  void expect_kw(std::string_view kw) {
    if (!at_kw(kw)) unexpected(std::string(kw));
    take();
  }
  void expect_end() {
    if (!at(Tok::kEnd)) unexpected("end of input");
  }

  std::string ident(const char* what) {
    if (!at(Tok::kIdent)) unexpected(what);
    return take().text;
  }

  StVarBlock var_block() {
    static const std::pair<std::string_view, VarKind> kinds[] = {
        {"VAR_INPUT", VarKind::kInput},
        {"VAR_OUTPUT", VarKind::kOutput},
        {"VAR", VarKind::kLocal},
        {"VAR_EXTERNAL", VarKind::kExternal}};
    StVarBlock block{VarKind::kLocal, {}};
    for (const auto& [kw, kind] : kinds) {
      if (at_kw(kw)) block.kind = kind;
    }
    take();
    while (!at_kw("END_VAR")) {
      std::vector<std::pair<Ident, Location>> names;
      do {
        Location loc = cur().loc;
        names.emplace_back(Ident(ident("variable name")), loc);
      } while (at(Tok::kComma) && (take(), true));
      expect(Tok::kColon, "':'");
      StType ty = type_name();
      if (at(Tok::kAssign)) syntax_error(cur().loc, "initial values in declarations are not supported");
      expect(Tok::kSemi, "';'");
      for (auto& [n, loc] : names) {
        if (std::find(declared_.begin(), declared_.end(), n) != declared_.end()) {
          syntax_error(loc, "duplicate declaration of '" + n.str() + "'");
        }
        declared_.push_back(n);
        block.decls.push_back({n, ty});
      }
    }
    take();
    return block;
  }

  StType type_name() {
    if (at_kw("LREAL")) return take(), StType::kLReal;
    if (at_kw("REAL")) return take(), StType::kReal;
    if (at_kw("BOOL")) return take(), StType::kBool;
    if (at(Tok::kIdent)) {
      syntax_error(cur().loc, "unsupported type '" + cur().text + "' (only LREAL, REAL, BOOL)");
    }
    unexpected("a type name");
  }

  StConfig configuration(const Ident& program_name) {
    StConfig c;
    expect_kw("CONFIGURATION");
    c.config_name = Ident(ident("configuration name"));
    expect_kw("RESOURCE");
    c.resource_name = Ident(ident("resource name"));
    expect_kw("ON");
    c.resource_target = Ident(ident("resource target"));
    expect_kw("TASK");
    c.task_name = Ident(ident("task name"));
    expect(Tok::kLParen, "'('");
    bool have_interval = false;
    bool have_priority = false;
    do {
      if (at_kw("INTERVAL") && !have_interval) {
        take();
        expect(Tok::kAssign, "':='");
        if (!at(Tok::kDuration)) unexpected("a duration literal such as T#1 s");
        Location loc = cur().loc;
        c.interval = take().duration;
        if (!(c.interval > 0)) syntax_error(loc, "task interval must be positive");
        have_interval = true;
      } else if (at_kw("PRIORITY") && !have_priority) {
        take();
        expect(Tok::kAssign, "':='");
        if (!at(Tok::kNumber) || cur().text.find_first_not_of("0123456789") != std::string::npos) {
          unexpected("a non-negative integer priority");
        }
        c.priority = std::stoi(take().text);
        have_priority = true;
      } else {
        unexpected("INTERVAL or PRIORITY");
      }
    } while (at(Tok::kComma) && (take(), true));
    if (!have_interval) syntax_error(cur().loc, "TASK requires an INTERVAL");
    expect(Tok::kRParen, "')'");
    expect(Tok::kSemi, "';'");
    expect_kw("PROGRAM");
    c.program_instance = Ident(ident("program instance name"));
    expect_kw("WITH");
    Location task_loc = cur().loc;
    if (Ident(ident("task name")) != c.task_name) {
      syntax_error(task_loc, "program instance refers to an undeclared task");
    }
    expect(Tok::kColon, "':'");
    Location prog_loc = cur().loc;
    if (Ident(ident("program type")) != program_name) {
      syntax_error(prog_loc, "configuration instantiates an unknown program");
    }
    expect(Tok::kSemi, "';'");
    expect_kw("END_RESOURCE");
    expect_kw("END_CONFIGURATION");
    return c;
  }

  // statements := statement+ ; folds right into Seq.
  StStatement statements(std::initializer_list<std::string_view> terminators) {
    std::vector<StStatement> list;
    auto stop = [&] {
      if (at(Tok::kEnd)) return true;
      for (auto t : terminators) {
        if (at_kw(t)) return true;
      }
      return false;
    };
    while (!stop()) list.push_back(statement());
    if (list.empty()) unexpected("a statement");
    StStatement acc = list.back();
    for (size_t i = list.size() - 1; i-- > 0;) acc = StStatement::seq(list[i], acc);
    return acc;
  }

  StStatement statement() {
    Location loc = cur().loc;
    if (at_kw("IF")) return if_statement();
    if (at(Tok::kIdent)) {
      std::string up = upper(cur().text);
      for (auto kw : kUnsupportedStatements) {
        if (up == kw) syntax_error(loc, "unsupported construct " + up + " (loop-free subset only)");
      }
      std::string name = take().text;
      if (at(Tok::kLParen)) syntax_error(loc, "unsupported construct: function block call '" + name + "'");
      if (at(Tok::kEq)) syntax_error(cur().loc, "'=' is a comparison; assignment uses ':='");
      expect(Tok::kAssign, "':='");
      Expr rhs = or_expr();
      Term value = term_of(rhs);
      expect(Tok::kSemi, "';'");
      return StStatement::assign(Ident(name), value, loc);
    }
    if (at(Tok::kSemi)) syntax_error(loc, "empty statement");
    unexpected("a statement");
  }

  StStatement if_statement() {
    Location loc = cur().loc;
    take();  // IF or ELSIF
    Formula cond = cond_of(or_expr());
    expect_kw("THEN");
    if (at_kw("ELSE") || at_kw("ELSIF") || at_kw("END_IF")) syntax_error(cur().loc, "empty THEN branch");
    StStatement then_branch = statements({"ELSE", "ELSIF", "END_IF"});
    std::optional<StStatement> else_branch;
    if (at_kw("ELSIF")) {
      // ELSIF c THEN s ... shares the enclosing END_IF.
      else_branch = if_statement();
    } else {
      if (at_kw("ELSE")) {
        take();
        // Empty ELSE is dropped.
        if (!at_kw("END_IF")) else_branch = statements({"END_IF"});
      }
      expect_kw("END_IF");
      expect(Tok::kSemi, "';'");
    }
    if (else_branch) return StStatement::if_then_else(cond, then_branch, *else_branch, loc);
    return StStatement::if_then(cond, then_branch, loc);
  }

  // --- expressions -------------------------------------------------------

  Expr or_expr() {
    Expr lhs = and_expr();
    while (at_kw("OR") || at_kw("XOR")) {
      Location loc = cur().loc;
      Connective op = take().text == "OR" ? Connective::kOr : Connective::kXor;
      Expr rhs = and_expr();
      lhs = Expr::conn_op(loc, op, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Expr and_expr() {
    Expr lhs = not_expr();
    while (at_kw("AND")) {
      Location loc = take().loc;
      Expr rhs = not_expr();
      lhs = Expr::conn_op(loc, Connective::kAnd, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Expr not_expr() {
    if (at_kw("NOT")) {
      Location loc = take().loc;
      Expr operand = not_expr();
      return Expr::negate(loc, std::move(operand));
    }
    return cmp_expr();
  }

  std::optional<Relation> relation() const {
    switch (cur().kind) {
      case Tok::kEq: return Relation::kEq;
      case Tok::kNe: return Relation::kNe;
      case Tok::kGt: return Relation::kGt;
      case Tok::kGe: return Relation::kGe;
      case Tok::kLt: return Relation::kLt;
      case Tok::kLe: return Relation::kLe;
      default: return std::nullopt;
    }
  }

  Expr cmp_expr() {
    Expr lhs = add_expr();
    if (auto rel = relation()) {
      Location loc = take().loc;
      Expr rhs = add_expr();
      if (relation()) syntax_error(cur().loc, "comparisons are non-associative; add parentheses");
      return Expr::cmp(loc, *rel, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Expr add_expr() {
    Expr lhs = mul_expr();
    while (at(Tok::kPlus) || at(Tok::kMinus)) {
      BinaryOp op = at(Tok::kPlus) ? BinaryOp::kAdd : BinaryOp::kSub;
      Location loc = take().loc;
      lhs = Expr::arith_op(loc, op, std::move(lhs), mul_expr());
    }
    return lhs;
  }

  Expr mul_expr() {
    Expr lhs = pow_expr();
    while (at(Tok::kStar) || at(Tok::kSlash)) {
      BinaryOp op = at(Tok::kStar) ? BinaryOp::kMul : BinaryOp::kDiv;
      Location loc = take().loc;
      lhs = Expr::arith_op(loc, op, std::move(lhs), pow_expr());
    }
    return lhs;
  }

  Expr pow_expr() {
    Expr lhs = unary();
    while (at(Tok::kPow)) {
      Location loc = take().loc;
      lhs = Expr::arith_op(loc, BinaryOp::kPow, std::move(lhs), unary());
    }
    return lhs;
  }

  Expr unary() {
    if (at(Tok::kMinus)) {
      Location loc = take().loc;
      Expr operand = unary();
      return Expr::neg(loc, std::move(operand));
    }
    return primary();
  }

  Expr primary() {
    const Token& t = cur();
    switch (t.kind) {
      case Tok::kNumber: {
        take();
        return Expr::number(t.loc, t.text);
      }
      case Tok::kIdent: {
        take();
        if (at(Tok::kLParen)) syntax_error(t.loc, "unsupported construct: function call '" + t.text + "'");
        return Expr::var(t.loc, t.text);
      }
      case Tok::kKeyword:
        if (t.text == "TRUE" || t.text == "FALSE") {
          take();
          return Expr::constant(t.loc, t.text == "TRUE");
        }
        break;
      case Tok::kLParen: {
        take();
        Expr inner = or_expr();
        expect(Tok::kRParen, "')'");
        return inner;
      }
      case Tok::kDuration:
        syntax_error(t.loc, "duration literals are only allowed in TASK INTERVAL");
      default: break;
    }
    unexpected("an expression");
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
  std::vector<Ident> declared_;
};

}  // namespace

// ---------------------------------------------------------------------------

StUnit parse_st(std::string_view text) { return Parser(text).unit(); }

StStatement parse_st_statements(std::string_view text) { return Parser(text).statement_list(); }

std::variant<Term, Formula> parse_st_expression(std::string_view text) {
  Expr e = Parser(text).expression_only();
  if (e.is_formula()) return cond_of(e);
  return term_of(e);
}

Term parse_st_term(std::string_view text) { return term_of(Parser(text).expression_only()); }

Formula parse_st_formula(std::string_view text) { return cond_of(Parser(text).expression_only()); }

std::vector<Ident> StUnit::declared(VarKind kind) const {
  std::vector<Ident> out;
  for (const auto& b : var_blocks) {
    if (b.kind != kind) continue;
    for (const auto& d : b.decls) out.push_back(d.name);
  }
  return out;
}

}  // namespace hyplc
