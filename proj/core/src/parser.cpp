#include "cecd/parser.hpp"

#include <cctype>
#include <cstdlib>
#include <unordered_set>
#include <utility>
#include <vector>

namespace cecd {
namespace {

enum class Tok {
  Ident, Keyword, Int,
  LParen, RParen, LBrace, RBrace, Semi, Assign,
  Plus, Minus, Star, EqEq, NotEq, Lt, Le, Gt, Ge, AndAnd, OrOr, Not,
  Eof,
};

struct Token {
  Tok kind;
  std::string text;
  std::int64_t value = 0;
  int line = 1;
  int col = 1;
};

const std::unordered_set<std::string> kKeywords = {
    "block", "entry", "goto", "br", "exit", "input", "print"};

class Lexer {
public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_ws();
    Token t;
    t.line = line_;
    t.col = col_;
    if (pos_ >= text_.size()) {
      t.kind = Tok::Eof;
      return t;
    }
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      t.text = lex_ident();
      t.kind = kKeywords.count(t.text) ? Tok::Keyword : Tok::Ident;
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_])))
        advance();
      t.text = std::string(text_.substr(start, pos_ - start));
      errno = 0;
      char* end = nullptr;
      t.value = std::strtoll(t.text.c_str(), &end, 10);
      if (errno == ERANGE)
        throw ParseError(t.line, t.col, "integer literal out of range");
      t.kind = Tok::Int;
      return t;
    }
    auto two = [&](char a, char b) {
      return c == a && pos_ + 1 < text_.size() && text_[pos_ + 1] == b;
    };
    if (two('=', '=')) { t.kind = Tok::EqEq; advance(); advance(); return t; }
    if (two('!', '=')) { t.kind = Tok::NotEq; advance(); advance(); return t; }
    if (two('<', '=')) { t.kind = Tok::Le; advance(); advance(); return t; }
    if (two('>', '=')) { t.kind = Tok::Ge; advance(); advance(); return t; }
    if (two('&', '&')) { t.kind = Tok::AndAnd; advance(); advance(); return t; }
    if (two('|', '|')) { t.kind = Tok::OrOr; advance(); advance(); return t; }
    advance();
    switch (c) {
      case '(': t.kind = Tok::LParen; return t;
      case ')': t.kind = Tok::RParen; return t;
      case '{': t.kind = Tok::LBrace; return t;
      case '}': t.kind = Tok::RBrace; return t;
      case ';': t.kind = Tok::Semi; return t;
      case '=': t.kind = Tok::Assign; return t;
      case '+': t.kind = Tok::Plus; return t;
      case '-': t.kind = Tok::Minus; return t;
      case '*': t.kind = Tok::Star; return t;
      case '<': t.kind = Tok::Lt; return t;
      case '>': t.kind = Tok::Gt; return t;
      case '!': t.kind = Tok::Not; return t;
      default:
        throw ParseError(t.line, t.col,
                         std::string("unexpected character '") + c + "'");
    }
  }

private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  // Identifiers may contain interior dots (copy names like bb4.t), but a dot
  // must be followed by another identifier character.
  std::string lex_ident() {
    std::size_t start = pos_;
    auto ident_char = [&](std::size_t i) {
      char c = text_[i];
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    };
    while (pos_ < text_.size()) {
      if (ident_char(pos_)) {
        advance();
      } else if (text_[pos_] == '.' && pos_ + 1 < text_.size() &&
                 ident_char(pos_ + 1)) {
        advance();
      } else {
        break;
      }
    }
    return std::string(text_.substr(start, pos_ - start));
  }
};

class Parser {
public:
  explicit Parser(std::string_view text) : lex_(text) { bump(); }

  Program parse_program() {
    std::optional<std::pair<std::string, Token>> entry;
    while (at_keyword("entry")) {
      Token kw = cur_;
      bump();
      Token id = expect_ident("block id");
      expect(Tok::Semi, "';'");
      if (entry)
        throw ParseError(kw.line, kw.col, "duplicate entry directive");
      entry = {id.text, id};
    }
    std::vector<BasicBlock> blocks;
    std::vector<Token> target_refs;
    while (at_keyword("block")) {
      bump();
      Token id = expect_ident("block id");
      expect(Tok::LBrace, "'{'");
      BasicBlock b;
      b.id = id.text;
      b.origin = origin_from_id(b.id);
      parse_body(b, target_refs);
      expect(Tok::RBrace, "'}'");
      for (const auto& prev : blocks)
        if (prev.id == b.id)
          throw ParseError(id.line, id.col, "duplicate block id: " + b.id);
      blocks.push_back(std::move(b));
    }
    if (cur_.kind != Tok::Eof)
      throw ParseError(cur_.line, cur_.col, "expected 'block'");
    if (blocks.empty())
      throw ParseError(cur_.line, cur_.col, "program has no blocks");

    auto defined = [&](const std::string& id) {
      for (const auto& b : blocks)
        if (b.id == id) return true;
      return false;
    };
    for (const auto& ref : target_refs)
      if (!defined(ref.text))
        throw ParseError(ref.line, ref.col,
                         "reference to undefined block: " + ref.text);
    std::string entry_id = entry ? entry->first : blocks.front().id;
    if (entry && !defined(entry_id))
      throw ParseError(entry->second.line, entry->second.col,
                       "reference to undefined block: " + entry_id);
    return Program(std::move(blocks), std::move(entry_id));
  }

  ExprPtr parse_full_expr() {
    ExprPtr e = parse_expr(0);
    if (cur_.kind != Tok::Eof)
      throw ParseError(cur_.line, cur_.col, "trailing input after expression");
    return e;
  }

private:
  Lexer lex_;
  Token cur_;

  void bump() { cur_ = lex_.next(); }

  bool at_keyword(const char* kw) const {
    return cur_.kind == Tok::Keyword && cur_.text == kw;
  }

  Token expect(Tok kind, const char* what) {
    if (cur_.kind != kind)
      throw ParseError(cur_.line, cur_.col, std::string("expected ") + what);
    Token t = cur_;
    bump();
    return t;
  }

  Token expect_ident(const char* what) {
    if (cur_.kind != Tok::Ident)
      throw ParseError(cur_.line, cur_.col, std::string("expected ") + what);
    Token t = cur_;
    bump();
    return t;
  }

  void parse_body(BasicBlock& b, std::vector<Token>& target_refs) {
    for (;;) {
      if (at_keyword("goto")) {
        bump();
        Token t = expect_ident("block id");
        target_refs.push_back(t);
        expect(Tok::Semi, "';'");
        b.term = GotoTerm{t.text};
        return;
      }
      if (at_keyword("br")) {
        bump();
        ExprPtr cond = parse_expr(0);
        Token t = expect_ident("block id");
        Token f = expect_ident("block id");
        target_refs.push_back(t);
        target_refs.push_back(f);
        expect(Tok::Semi, "';'");
        b.term = BranchTerm{std::move(cond), t.text, f.text};
        return;
      }
      if (at_keyword("exit")) {
        bump();
        expect(Tok::Semi, "';'");
        b.term = ExitTerm{};
        return;
      }
      if (at_keyword("print")) {
        bump();
        ExprPtr v = parse_expr(0);
        expect(Tok::Semi, "';'");
        b.instrs.push_back(PrintInstr{std::move(v)});
        continue;
      }
      if (cur_.kind == Tok::Ident) {
        Token name = cur_;
        bump();
        expect(Tok::Assign, "'='");
        if (at_keyword("input")) {
          bump();
          expect(Tok::Semi, "';'");
          b.instrs.push_back(InputInstr{name.text});
        } else {
          ExprPtr v = parse_expr(0);
          expect(Tok::Semi, "';'");
          b.instrs.push_back(AssignInstr{name.text, std::move(v)});
        }
        continue;
      }
      throw ParseError(cur_.line, cur_.col,
                       "expected instruction or terminator");
    }
  }

  static int bin_prec(Tok k) {
    switch (k) {
      case Tok::OrOr: return 1;
      case Tok::AndAnd: return 2;
      case Tok::EqEq:
      case Tok::NotEq: return 3;
      case Tok::Lt:
      case Tok::Le:
      case Tok::Gt:
      case Tok::Ge: return 4;
      case Tok::Plus:
      case Tok::Minus: return 5;
      case Tok::Star: return 6;
      default: return -1;
    }
  }

  static BinaryOp bin_op(Tok k) {
    switch (k) {
      case Tok::OrOr: return BinaryOp::Or;
      case Tok::AndAnd: return BinaryOp::And;
      case Tok::EqEq: return BinaryOp::Eq;
      case Tok::NotEq: return BinaryOp::Ne;
      case Tok::Lt: return BinaryOp::Lt;
      case Tok::Le: return BinaryOp::Le;
      case Tok::Gt: return BinaryOp::Gt;
      case Tok::Ge: return BinaryOp::Ge;
      case Tok::Plus: return BinaryOp::Add;
      case Tok::Minus: return BinaryOp::Sub;
      default: return BinaryOp::Mul;
    }
  }

  ExprPtr parse_expr(int min_prec) {
    ExprPtr lhs = parse_unary();
    for (;;) {
      int prec = bin_prec(cur_.kind);
      if (prec < 0 || prec < min_prec) return lhs;
      BinaryOp op = bin_op(cur_.kind);
      bump();
      ExprPtr rhs = parse_expr(prec + 1);
      lhs = Expr::binary(op, std::move(lhs), std::move(rhs));
    }
  }

  ExprPtr parse_unary() {
    if (cur_.kind == Tok::Minus) {
      bump();
      return Expr::unary(UnaryOp::Neg, parse_unary());
    }
    if (cur_.kind == Tok::Not) {
      bump();
      return Expr::unary(UnaryOp::Not, parse_unary());
    }
    if (cur_.kind == Tok::Int) {
      auto e = Expr::literal(cur_.value);
      bump();
      return e;
    }
    if (cur_.kind == Tok::Ident) {
      auto e = Expr::variable(cur_.text);
      bump();
      return e;
    }
    if (cur_.kind == Tok::LParen) {
      bump();
      ExprPtr e = parse_expr(0);
      expect(Tok::RParen, "')'");
      return e;
    }
    throw ParseError(cur_.line, cur_.col, "expected expression");
  }
};

} // namespace

Program parse_program(std::string_view text) {
  return Parser(text).parse_program();
}

ExprPtr parse_expr(std::string_view text) {
  return Parser(text).parse_full_expr();
}

} // namespace cecd
