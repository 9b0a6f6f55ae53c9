#include <cctype>
#include <optional>

#include "expr_tree.hpp"
#include "hyplc/dl.hpp"

namespace hyplc {

namespace {

using detail::Expr;

enum class Tok {
  kIdent,
  kNumber,
  kTrue,
  kFalse,
  kAssign,  // :=
  kSemi,
  kComma,
  kLBrace,
  kRBrace,
  kLBracket,
  kRBracket,
  kLParen,
  kRParen,
  kQuestion,
  kChoice,  // ++
  kPrime,
  kPlus,
  kMinus,
  kStar,
  kSlash,
  kCaret,
  kEq,
  kNe,
  kLt,
  kLe,
  kGt,
  kGe,
  kAnd,
  kOr,
  kNot,
  kImply,
  kEquiv,
  kEnd,
};

struct Token {
  Tok kind;
  std::string text;
  Location loc;
};

[[noreturn]] void syntax_error(const Location& loc, const std::string& msg) {
  throw Error(ErrorKind::kSyntaxError, msg, loc);
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  size_t pos = 0;
  int line = 1;
  int col = 1;
  auto peek = [&](size_t off = 0) { return pos + off < src.size() ? src[pos + off] : '\0'; };
  auto advance = [&](size_t n = 1) {
    for (size_t i = 0; i < n && pos < src.size(); ++i, ++pos) {
      if (src[pos] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  for (;;) {
    // whitespace and comments
    for (;;) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '/' && peek(1) == '*') {
        Location start{line, col};
        advance(2);
        while (pos < src.size() && !(peek() == '*' && peek(1) == '/')) advance();
        if (pos >= src.size()) syntax_error(start, "unterminated comment");
        advance(2);
      } else if (c == '/' && peek(1) == '/') {
        while (pos < src.size() && peek() != '\n') advance();
      } else {
        break;
      }
    }
    Location loc{line, col};
    if (pos >= src.size()) {
      out.push_back({Tok::kEnd, "end of input", loc});
      return out;
    }
    char c = peek();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') advance();
      std::string word(src.substr(start, pos - start));
      Tok k = word == "true" ? Tok::kTrue : word == "false" ? Tok::kFalse : Tok::kIdent;
      out.push_back({k, word, loc});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos;
      auto digit = [&](size_t off) { return std::isdigit(static_cast<unsigned char>(peek(off))) != 0; };
      while (digit(0)) advance();
      if (peek() == '.' && digit(1)) {
        advance();
        while (digit(0)) advance();
      }
      if ((peek() == 'e' || peek() == 'E') &&
          (digit(1) || ((peek(1) == '+' || peek(1) == '-') && digit(2)))) {
        advance(2);
        while (digit(0)) advance();
      }
      out.push_back({Tok::kNumber, std::string(src.substr(start, pos - start)), loc});
      continue;
    }
    struct Punct {
      const char* text;
      Tok kind;
    };
    static constexpr Punct kPuncts[] = {
        {"<->", Tok::kEquiv}, {":=", Tok::kAssign}, {"++", Tok::kChoice}, {"->", Tok::kImply},
        {"!=", Tok::kNe},     {"<=", Tok::kLe},     {">=", Tok::kGe},     {";", Tok::kSemi},
        {",", Tok::kComma},   {"{", Tok::kLBrace},  {"}", Tok::kRBrace},  {"[", Tok::kLBracket},
        {"]", Tok::kRBracket}, {"(", Tok::kLParen}, {")", Tok::kRParen},  {"?", Tok::kQuestion},
        {"'", Tok::kPrime},   {"+", Tok::kPlus},    {"-", Tok::kMinus},   {"*", Tok::kStar},
        {"/", Tok::kSlash},   {"^", Tok::kCaret},   {"=", Tok::kEq},      {"<", Tok::kLt},
        {">", Tok::kGt},      {"&", Tok::kAnd},     {"|", Tok::kOr},      {"!", Tok::kNot},
    };
    bool matched = false;
    for (const auto& p : kPuncts) {
      std::string_view t(p.text);
      if (src.substr(pos, t.size()) == t) {
        advance(t.size());
        out.push_back({p.kind, std::string(t), loc});
        matched = true;
        break;
      }
    }
    if (!matched) syntax_error(loc, std::string("unexpected character '") + c + "'");
  }
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  DlSafetyFormula safety() {
    // A binds tighter than the top-level implication; parenthesize an A
    // that itself contains -> or <->.
    Formula a = formula_of(or_expr());
    expect(Tok::kImply, "'->'");
    expect(Tok::kLBracket, "'['");
    dl::Program prog = program();
    expect(Tok::kRBracket, "']'");
    Formula s = formula_of(equiv_expr());
    expect_end();
    return DlSafetyFormula{a, prog, s};
  }

  dl::Program program_only() {
    dl::Program p = program();
    expect_end();
    return p;
  }

  Expr expr_only() {
    Expr e = equiv_expr();
    expect_end();
    return e;
  }

  static Formula formula_of(const Expr& e) { return detail::to_formula(e, Dialect::kHp, false); }

 private:
  const Token& cur() const { return toks_[pos_]; }
  const Token& peek_tok(size_t off) const {
    return toks_[std::min(pos_ + off, toks_.size() - 1)];
  }
  const Token& take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool at(Tok k) const { return cur().kind == k; }

  [[noreturn]] void unexpected(const std::string& expected) const {
    syntax_error(cur().loc, "expected " + expected + " but found '" + cur().text + "'");
  }
  void expect(Tok k, const char* what) {
    if (!at(k)) unexpected(what);
    take();
  }
  void expect_end() {
    if (!at(Tok::kEnd)) unexpected("end of input");
  }

  // --- programs ----------------------------------------------------------

  dl::Program program() {
    dl::Program lhs = sequence();
    if (at(Tok::kChoice)) {
      Location loc = take().loc;
      dl::Program rhs = program();  // right-associative
      return dl::Program::choice(lhs, rhs, loc);
    }
    return lhs;
  }

  bool at_sequence_end() const {
    return at(Tok::kChoice) || at(Tok::kRBrace) || at(Tok::kRBracket) || at(Tok::kEnd);
  }

  dl::Program sequence() {
    std::vector<dl::Program> parts;
    do {
      parts.push_back(atom());
    } while (!at_sequence_end());
    return dl::fold_seq(parts);
  }

  // ';' separates statements; it may be omitted before '}', ']', '++' or the end.
  void terminator() {
    if (at(Tok::kSemi)) {
      take();
    } else if (!at_sequence_end()) {
      unexpected("';'");
    }
  }

  dl::Program atom() {
    Location loc = cur().loc;
    if (at(Tok::kIdent)) {
      Ident x(take().text);
      if (at(Tok::kPrime)) syntax_error(loc, "differential equation outside braces");
      expect(Tok::kAssign, "':='");
      if (at(Tok::kStar)) {
        take();
        terminator();
        return dl::Program::random(x, loc);
      }
      Term rhs = detail::to_term(equiv_expr());
      terminator();
      return dl::Program::assign(x, rhs, loc);
    }
    if (at(Tok::kQuestion)) {
      take();
      Formula cond = formula_of(equiv_expr());
      terminator();
      return dl::Program::test(cond, loc);
    }
    if (at(Tok::kLBrace)) {
      take();
      bool is_ode = at(Tok::kIdent) && peek_tok(1).kind == Tok::kPrime;
      if (is_ode) {
        dl::Program ode = ode_body(loc);
        expect(Tok::kRBrace, "'}'");
        if (at(Tok::kStar)) syntax_error(cur().loc, "repetition of a bare ODE is not supported");
        if (at(Tok::kSemi)) take();
        return ode;
      }
      dl::Program inner = program();
      expect(Tok::kRBrace, "'}'");
      if (at(Tok::kStar)) {
        take();
        inner = dl::Program::loop(inner, loc);
      }
      if (at(Tok::kSemi)) take();
      return inner;
    }
    unexpected("a program statement");
  }

  dl::Program ode_body(Location loc) {
    std::vector<std::pair<Ident, Term>> eqs;
    do {
      if (!at(Tok::kIdent)) unexpected("a differential equation x'=...");
      Location xl = cur().loc;
      Ident x(take().text);
      expect(Tok::kPrime, "\"'\"");
      expect(Tok::kEq, "'='");
      for (const auto& [y, rhs] : eqs) {
        if (y == x) syntax_error(xl, "variable '" + x.str() + "' has two differential equations");
      }
      eqs.emplace_back(x, detail::to_term(add_expr()));
    } while (at(Tok::kComma) && (take(), true));
    std::optional<Formula> domain;
    if (at(Tok::kAnd)) {
      take();
      domain = formula_of(equiv_expr());
    }
    return dl::Program::ode(std::move(eqs), domain, loc);
  }

  // --- formulas and terms -------------------------------------------------

  Expr equiv_expr() {
    Expr lhs = imply_expr();
    while (at(Tok::kEquiv)) {
      Location loc = take().loc;
      lhs = Expr::conn_op(loc, Connective::kEquiv, std::move(lhs), imply_expr());
    }
    return lhs;
  }

  Expr imply_expr() {
    Expr lhs = or_expr();
    if (at(Tok::kImply) && peek_tok(1).kind != Tok::kLBracket) {
      Location loc = take().loc;
      return Expr::conn_op(loc, Connective::kImply, std::move(lhs), imply_expr());
    }
    return lhs;
  }

  Expr or_expr() {
    Expr lhs = and_expr();
    while (at(Tok::kOr)) {
      Location loc = take().loc;
      lhs = Expr::conn_op(loc, Connective::kOr, std::move(lhs), and_expr());
    }
    return lhs;
  }

  Expr and_expr() {
    Expr lhs = not_expr();
    while (at(Tok::kAnd)) {
      Location loc = take().loc;
      lhs = Expr::conn_op(loc, Connective::kAnd, std::move(lhs), not_expr());
    }
    return lhs;
  }

  Expr not_expr() {
    if (at(Tok::kNot)) {
      Location loc = take().loc;
      return Expr::negate(loc, not_expr());
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
    while (at(Tok::kCaret)) {
      Location loc = take().loc;
      lhs = Expr::arith_op(loc, BinaryOp::kPow, std::move(lhs), unary());
    }
    return lhs;
  }

  Expr unary() {
    if (at(Tok::kMinus)) {
      Location loc = take().loc;
      return Expr::neg(loc, unary());
    }
    return primary();
  }

  Expr primary() {
    Token t = cur();
    switch (t.kind) {
      case Tok::kNumber: take(); return Expr::number(t.loc, t.text);
      case Tok::kIdent:
        take();
        if (at(Tok::kLParen)) syntax_error(t.loc, "function symbols are not supported: '" + t.text + "'");
        if (at(Tok::kPrime)) syntax_error(t.loc, "differential symbols are not supported in formulas");
        return Expr::var(t.loc, t.text);
      case Tok::kTrue: take(); return Expr::constant(t.loc, true);
      case Tok::kFalse: take(); return Expr::constant(t.loc, false);
      case Tok::kLParen: {
        take();
        Expr inner = equiv_expr();
        expect(Tok::kRParen, "')'");
        return inner;
      }
      case Tok::kLBracket: syntax_error(t.loc, "nested modalities are not supported");
      default: break;
    }
    unexpected("an expression");
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
};

}  // namespace

DlSafetyFormula parse_dl_safety(std::string_view text) { return Parser(text).safety(); }

dl::Program parse_dl_program(std::string_view text) { return Parser(text).program_only(); }

HybridProgram parse_dl_hybrid_program(std::string_view text) {
  return to_translatable(parse_dl_program(text));
}

Formula parse_dl_formula(std::string_view text) {
  return Parser::formula_of(Parser(text).expr_only());
}

Term parse_dl_term(std::string_view text) { return detail::to_term(Parser(text).expr_only()); }

}  // namespace hyplc
