#include "stab/parser.hpp"

#include <cctype>
#include <vector>

namespace stab {

namespace {

enum class Tok {
  Ident, Int, Let, In,
  LParen, RParen, LBrace, RBrace, Comma, Underscore,
  Assign, DotDot,
  AndOp, OrOp, XorOp, ImpliesOp, IffOp, NotOp,
  Lt, Gt, Leq, Geq, EqCmp, Neq,
  Plus, Minus, Star,
  End
};

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto push = [&](Tok k, std::string t, int l, int c) {
    out.push_back({k, std::move(t), l, c});
  };
  auto peek = [&](size_t off) -> char {
    return i + off < src.size() ? src[i + off] : '\0';
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++col;
      ++i;
      continue;
    }
    if (c == '/' && peek(1) == '/') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    int l = line, cl = col;
    auto adv = [&](size_t n) {
      i += n;
      col += static_cast<int>(n);
    };
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < src.size() && std::isalnum(static_cast<unsigned char>(src[j]))) ++j;
      std::string w = src.substr(i, j - i);
      adv(j - i);
      if (w == "let")
        push(Tok::Let, w, l, cl);
      else if (w == "in")
        push(Tok::In, w, l, cl);
      else
        push(Tok::Ident, w, l, cl);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      std::string w = src.substr(i, j - i);
      adv(j - i);
      push(Tok::Int, w, l, cl);
      continue;
    }
    if (c == '(' && peek(1) == '+' && peek(2) == ')') {
      adv(3);
      push(Tok::XorOp, "(+)", l, cl);
      continue;
    }
    if (c == '/' && peek(1) == '\\') {
      adv(2);
      push(Tok::AndOp, "/\\", l, cl);
      continue;
    }
    if (c == '\\' && peek(1) == '/') {
      adv(2);
      push(Tok::OrOp, "\\/", l, cl);
      continue;
    }
    if (c == '<' && peek(1) == '-' && peek(2) == '>') {
      adv(3);
      push(Tok::IffOp, "<->", l, cl);
      continue;
    }
    if (c == '-' && peek(1) == '>') {
      adv(2);
      push(Tok::ImpliesOp, "->", l, cl);
      continue;
    }
    if (c == '<' && peek(1) == '=') {
      adv(2);
      push(Tok::Leq, "<=", l, cl);
      continue;
    }
    if (c == '>' && peek(1) == '=') {
      adv(2);
      push(Tok::Geq, ">=", l, cl);
      continue;
    }
    if (c == '!' && peek(1) == '=') {
      adv(2);
      push(Tok::Neq, "!=", l, cl);
      continue;
    }
    if (c == ':' && peek(1) == '=') {
      adv(2);
      push(Tok::Assign, ":=", l, cl);
      continue;
    }
    if (c == '.' && peek(1) == '.') {
      adv(2);
      push(Tok::DotDot, "..", l, cl);
      continue;
    }
    switch (c) {
      case '(': adv(1); push(Tok::LParen, "(", l, cl); continue;
      case ')': adv(1); push(Tok::RParen, ")", l, cl); continue;
      case '{': adv(1); push(Tok::LBrace, "{", l, cl); continue;
      case '}': adv(1); push(Tok::RBrace, "}", l, cl); continue;
      case ',': adv(1); push(Tok::Comma, ",", l, cl); continue;
      case '_': adv(1); push(Tok::Underscore, "_", l, cl); continue;
      case '~': adv(1); push(Tok::NotOp, "~", l, cl); continue;
      case '<': adv(1); push(Tok::Lt, "<", l, cl); continue;
      case '>': adv(1); push(Tok::Gt, ">", l, cl); continue;
      case '=': adv(1); push(Tok::EqCmp, "=", l, cl); continue;
      case '+': adv(1); push(Tok::Plus, "+", l, cl); continue;
      case '-': adv(1); push(Tok::Minus, "-", l, cl); continue;
      case '*': adv(1); push(Tok::Star, "*", l, cl); continue;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", l, cl);
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  SourceSpec parse_spec() {
    SourceSpec spec;
    while (at(Tok::Let)) {
      next();
      Definition d;
      d.name = expect(Tok::Ident, "definition name").text;
      expect(Tok::LParen, "'('");
      if (!at(Tok::RParen)) {
        d.params.push_back(expect(Tok::Ident, "parameter name").text);
        while (at(Tok::Comma)) {
          next();
          d.params.push_back(expect(Tok::Ident, "parameter name").text);
        }
      }
      expect(Tok::RParen, "')'");
      expect(Tok::Assign, "':='");
      d.body = form();
      expect(Tok::In, "'in'");
      spec.definitions.push_back(std::move(d));
    }
    spec.goal = form();
    expect(Tok::End, "end of input");
    return spec;
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;

  const Token& cur() const { return toks_[pos_]; }
  bool at(Tok k) const { return cur().kind == k; }
  void next() { if (pos_ + 1 < toks_.size()) ++pos_; }
  [[noreturn]] void fail(const std::string& what) {
    throw ParseError("expected " + what +
                         (cur().text.empty() ? "" : ", found '" + cur().text + "'"),
                     cur().line, cur().col);
  }
  Token expect(Tok k, const std::string& what) {
    if (!at(k)) fail(what);
    Token t = cur();
    next();
    return t;
  }

  // --- formulas -----------------------------------------------------------

  Surface form() { return iff_level(); }

  Surface iff_level() {
    Surface l = impl_level();
    while (at(Tok::IffOp)) {
      next();
      Surface r = impl_level();
      l = SurfaceNode::binary(SurfaceNode::Kind::Iff, l, r);
    }
    return l;
  }

  Surface impl_level() {
    Surface l = xor_level();
    if (at(Tok::ImpliesOp)) {
      next();
      Surface r = impl_level();  // right-assoc
      return SurfaceNode::binary(SurfaceNode::Kind::Implies, l, r);
    }
    return l;
  }

  Surface xor_level() {
    Surface l = or_level();
    while (at(Tok::XorOp)) {
      next();
      Surface r = or_level();
      l = SurfaceNode::binary(SurfaceNode::Kind::Xor, l, r);
    }
    return l;
  }

  Surface or_level() {
    Surface l = and_level();
    while (at(Tok::OrOp)) {
      next();
      Surface r = and_level();
      l = SurfaceNode::binary(SurfaceNode::Kind::Or, l, r);
    }
    return l;
  }

  Surface and_level() {
    Surface l = unary();
    while (at(Tok::AndOp)) {
      // "/\" here is a binary conjunction only if an operand follows; an
      // iteration header also begins with "/\" but only in operand position.
      next();
      Surface r = unary();
      l = SurfaceNode::binary(SurfaceNode::Kind::And, l, r);
    }
    return l;
  }

  Surface unary() {
    if (at(Tok::NotOp)) {
      next();
      return SurfaceNode::mk_not(unary());
    }
    if (at(Tok::AndOp) || at(Tok::OrOp)) {
      bool isAnd = at(Tok::AndOp);
      next();
      std::string counter = expect(Tok::Ident, "iteration counter").text;
      expect(Tok::EqCmp, "'='");
      LinExpr lo = aexp();
      expect(Tok::DotDot, "'..'");
      LinExpr hi = aexp();
      Surface body = unary();
      return SurfaceNode::iteration(
          isAnd ? SurfaceNode::Kind::BigAnd : SurfaceNode::Kind::BigOr, counter,
          lo, hi, body);
    }
    return primary();
  }

  Surface primary() {
    if (at(Tok::Ident)) {
      // atom / call / constraint beginning with a variable
      if (toks_[pos_ + 1].kind == Tok::Underscore) {
        std::string sym = cur().text;
        next();
        next();  // underscore
        LinExpr idx = atom_index();
        return SurfaceNode::atom(sym, idx);
      }
      if (toks_[pos_ + 1].kind == Tok::LParen) {
        std::string callee = cur().text;
        next();
        next();  // (
        std::vector<LinExpr> args;
        if (!at(Tok::RParen)) {
          args.push_back(aexp());
          while (at(Tok::Comma)) {
            next();
            args.push_back(aexp());
          }
        }
        expect(Tok::RParen, "')'");
        return SurfaceNode::call(callee, std::move(args));
      }
      return constraint();
    }
    if (at(Tok::LParen)) {
      size_t save = pos_;
      next();
      try {
        Surface f = form();
        expect(Tok::RParen, "')'");
        return f;
      } catch (const ParseError&) {
        pos_ = save;  // re-parse as an arithmetic constraint
        return constraint();
      }
    }
    if (at(Tok::Int) || at(Tok::Minus)) return constraint();
    fail("a formula");
  }

  LinExpr atom_index() {
    if (at(Tok::Int)) {
      Int v(cur().text);
      next();
      return LinExpr::constant(v);
    }
    if (at(Tok::Ident)) {
      std::string v = cur().text;
      next();
      return LinExpr::var(v);
    }
    if (at(Tok::LBrace)) {
      next();
      LinExpr e = aexp();
      expect(Tok::RBrace, "'}'");
      return e;
    }
    fail("an index (INT, VAR or {expr})");
  }

  Surface constraint() {
    LinExpr l = aexp();
    CmpOp op;
    switch (cur().kind) {
      case Tok::Lt: op = CmpOp::Lt; break;
      case Tok::Gt: op = CmpOp::Gt; break;
      case Tok::Leq: op = CmpOp::Leq; break;
      case Tok::Geq: op = CmpOp::Geq; break;
      case Tok::EqCmp: op = CmpOp::Eq; break;
      case Tok::Neq: op = CmpOp::Neq; break;
      default: fail("a comparison operator");
    }
    next();
    LinExpr r = aexp();
    return SurfaceNode::constraint(l, op, r);
  }

  // --- arithmetic ---------------------------------------------------------

  LinExpr aexp() {
    bool neg = false;
    if (at(Tok::Minus)) {
      neg = true;
      next();
    }
    LinExpr e = aterm();
    if (neg) e = -e;
    while (at(Tok::Plus) || at(Tok::Minus)) {
      bool minus = at(Tok::Minus);
      next();
      LinExpr t = aterm();
      e = minus ? e - t : e + t;
    }
    return e;
  }

  LinExpr aterm() {
    if (at(Tok::Int)) {
      Int v(cur().text);
      next();
      if (at(Tok::Star)) {
        next();
        std::string name = expect(Tok::Ident, "a variable").text;
        return LinExpr::var(name, v);
      }
      if (at(Tok::Ident)) {  // juxtaposition: 2n
        std::string name = cur().text;
        next();
        return LinExpr::var(name, v);
      }
      return LinExpr::constant(v);
    }
    if (at(Tok::Ident)) {
      std::string name = cur().text;
      next();
      return LinExpr::var(name);
    }
    if (at(Tok::LParen)) {
      next();
      LinExpr e = aexp();
      expect(Tok::RParen, "')'");
      return e;
    }
    fail("an arithmetic term");
  }
};

}  // namespace

SourceSpec parse(const std::string& text) {
  Parser p(lex(text));
  return p.parse_spec();
}

}  // namespace stab
