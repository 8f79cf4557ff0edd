// Copyright 2026 The sessprog Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sessprog/parser.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

#include "sessprog/syntax.hpp"
#include "sessprog/types.hpp"

namespace sessprog {

namespace {

std::string describe(const std::vector<std::string>& expected, const std::string& found) {
  std::ostringstream os;
  os << "expected ";
  if (expected.size() > 1) os << "one of ";
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i) os << ", ";
    os << expected[i];
  }
  os << " but found " << found;
  return os.str();
}

}  // namespace

ParseError::ParseError(int line, int column, std::vector<std::string> expected,
                       std::string found)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " +
                         describe(expected, found)),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

ParseError::ParseError(int line, int column, std::string message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " +
                         message),
      line_(line),
      column_(column) {}

namespace {

enum class Tok {
  kIdent,
  kNat,
  kQuestion,
  kBang,
  kLParen,
  kRParen,
  kDot,
  kBar,
  kColon,
  kTilde,
  kLBracket,
  kRBracket,
  kComma,
  kPlus,
  kMinus,
  kEquals,
  kSemicolon,
  kEof,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

bool ident_start(unsigned char c) {
  return std::isalpha(c) || c == '_' || c == '\'' || c >= 0x80;
}
bool ident_char(unsigned char c) {
  return std::isalnum(c) || c == '_' || c == '\'' || c >= 0x80;
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    unsigned char c = static_cast<unsigned char>(src[i]);
    if (std::isspace(c)) {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t{Tok::kEof, {}, line, col};
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Tok::kIdent;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    if (std::isdigit(c)) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Tok::kNat;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    switch (c) {
      case '?': t.kind = Tok::kQuestion; break;
      case '!': t.kind = Tok::kBang; break;
      case '(': t.kind = Tok::kLParen; break;
      case ')': t.kind = Tok::kRParen; break;
      case '.': t.kind = Tok::kDot; break;
      case '|': t.kind = Tok::kBar; break;
      case ':': t.kind = Tok::kColon; break;
      case '~': t.kind = Tok::kTilde; break;
      case '[': t.kind = Tok::kLBracket; break;
      case ']': t.kind = Tok::kRBracket; break;
      case ',': t.kind = Tok::kComma; break;
      case '+': t.kind = Tok::kPlus; break;
      case '-': t.kind = Tok::kMinus; break;
      case '=': t.kind = Tok::kEquals; break;
      case ';': t.kind = Tok::kSemicolon; break;
      default:
        throw ParseError(line, col, "unexpected character '" + std::string(1, src[i]) + "'");
    }
    t.text = std::string(1, src[i]);
    advance(1);
    out.push_back(std::move(t));
  }
  out.push_back(Token{Tok::kEof, "end of input", line, col});
  return out;
}

bool is_keyword(const std::string& s) {
  return s == "new" || s == "rec" || s == "end" || s == "int" || s == "inf" || s == "type";
}

bool is_proc_var(const std::string& s) {
  return !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  Program program() {
    Program prog;
    while (at_keyword("type")) {
      next();
      const Token& name = expect_ident("alias name");
      if (prog.aliases.count(name.text)) {
        throw ParseError(name.line, name.column, "duplicate alias '" + name.text + "'");
      }
      expect(Tok::kEquals, "'='");
      Type body = resolve(type(), prog.aliases);
      if (free_type_vars(body).count(name.text)) {
        throw ParseError(name.line, name.column, "cyclic alias '" + name.text + "'");
      }
      prog.aliases.emplace(name.text, body);
      if (peek().kind == Tok::kSemicolon) next();
    }
    for (const auto& [n, body] : prog.aliases) {
      for (const auto& v : free_type_vars(body)) {
        if (prog.aliases.count(v)) {
          throw ParseError(1, 1, "alias '" + n + "' refers to later alias '" + v + "'");
        }
      }
    }
    aliases_ = &prog.aliases;
    prog.process = par();
    expect(Tok::kEof, "end of input");
    return prog;
  }

  Proc process_only() {
    Proc p = par();
    expect(Tok::kEof, "end of input");
    return p;
  }

  Type type_only() {
    Type t = type();
    expect(Tok::kEof, "end of input");
    return t;
  }

 private:
  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool at_keyword(const char* kw) const {
    return peek().kind == Tok::kIdent && peek().text == kw;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::kEof ? t.text : "'" + t.text + "'";
    throw ParseError(t.line, t.column, std::move(expected), std::move(found));
  }

  const Token& expect(Tok k, const char* what) {
    if (peek().kind != k) fail({what});
    return next();
  }
  const Token& expect_ident(const char* what) {
    if (peek().kind != Tok::kIdent || is_keyword(peek().text)) fail({what});
    return next();
  }
  void expect_keyword(const char* kw) {
    if (!at_keyword(kw)) fail({std::string("'") + kw + "'"});
    next();
  }

  Index index() {
    if (at_keyword("inf")) {
      next();
      return Index::infinity();
    }
    if (peek().kind == Tok::kNat) return Index::finite(natural(next()));
    fail({"natural number", "'inf'"});
  }

  std::uint64_t natural(const Token& t) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc()) throw ParseError(t.line, t.column, "number out of range");
    return v;
  }

  Priority priority() {
    if (peek().kind == Tok::kNat) return Priority::constant(natural(next()));
    if (peek().kind == Tok::kIdent && !is_keyword(peek().text)) {
      return Priority::variable(next().text);
    }
    fail({"natural number", "priority variable"});
  }

  Type type() {
    const Token& t = peek();
    if (t.kind == Tok::kIdent) {
      if (t.text == "end") {
        next();
        return ty::end();
      }
      if (t.text == "int") {
        next();
        return ty::base("int");
      }
      if (t.text == "rec") {
        next();
        expect(Tok::kLBracket, "'['");
        Index idx = index();
        expect(Tok::kRBracket, "']'");
        std::string v = expect_ident("type variable").text;
        expect(Tok::kDot, "'.'");
        return ty::rec(idx, v, type());
      }
      if (!is_keyword(t.text)) return ty::var(next().text);
    }
    if (t.kind == Tok::kQuestion || t.kind == Tok::kBang) {
      Direction d = t.kind == Tok::kQuestion ? Direction::kIn : Direction::kOut;
      next();
      expect(Tok::kLBracket, "'['");
      Priority obl = priority();
      expect(Tok::kComma, "','");
      Priority cap = priority();
      expect(Tok::kRBracket, "']'");
      Type payload = type();
      expect(Tok::kDot, "'.'");
      return ty::action(d, obl, cap, payload, type());
    }
    if (t.kind == Tok::kLParen) {
      next();
      Type inner = type();
      expect(Tok::kRParen, "')'");
      return inner;
    }
    fail({"'end'", "'int'", "type variable", "'?'", "'!'", "'rec'", "'('"});
  }

  static Type resolve(Type t, const std::map<std::string, Type>& aliases) {
    for (const auto& v : free_type_vars(t)) {
      auto it = aliases.find(v);
      if (it != aliases.end()) t = subst_type(t, v, it->second);
    }
    return t;
  }

  Name name() {
    const Token& t = expect_ident("name");
    if (peek().kind == Tok::kPlus) {
      next();
      return Name::endpoint(t.text, Polarity::kPlus);
    }
    if (peek().kind == Tok::kMinus) {
      next();
      return Name::endpoint(t.text, Polarity::kMinus);
    }
    return Name::variable(t.text);
  }

  Value value() {
    if (peek().kind == Tok::kNat) {
      const Token& t = next();
      return Literal{static_cast<std::int64_t>(natural(t))};
    }
    if (peek().kind == Tok::kMinus && peek(1).kind == Tok::kNat) {
      next();
      return Literal{-static_cast<std::int64_t>(natural(next()))};
    }
    if (peek().kind == Tok::kIdent && !is_keyword(peek().text) && !is_proc_var(peek().text)) {
      return name();
    }
    fail({"name", "integer"});
  }

  Proc par() {
    SourcePos pos{peek().line, peek().column};
    Proc left = prefix();
    if (peek().kind == Tok::kBar) {
      next();
      return proc::par(left, par(), pos);
    }
    return left;
  }

  Proc prefix() {
    const Token& t = peek();
    SourcePos pos{t.line, t.column};
    if (t.kind == Tok::kNat) {
      if (t.text != "0") fail({"'0'", "process"});
      next();
      return proc::idle(pos);
    }
    if (t.kind == Tok::kLParen) {
      next();
      Proc inner = par();
      expect(Tok::kRParen, "')'");
      return inner;
    }
    if (t.kind == Tok::kIdent && t.text == "new") {
      next();
      std::string channel = expect_ident("channel").text;
      if (is_proc_var(channel)) {
        throw ParseError(pos.line, pos.column, "channel names must not start uppercase");
      }
      Type positive, negative;
      if (peek().kind == Tok::kColon) {
        next();
        positive = type();
        if (peek().kind == Tok::kTilde) {
          next();
          negative = type();
        }
        if (aliases_) {
          positive = resolve(positive, *aliases_);
          if (negative) negative = resolve(negative, *aliases_);
        }
        if (!negative) negative = syntactic_dual(positive);
        expect(Tok::kDot, "'.'");
      } else if (peek().kind == Tok::kDot) {
        next();
      }
      return proc::restrict(channel, positive, negative, prefix(), pos);
    }
    if (t.kind == Tok::kIdent && t.text == "rec") {
      next();
      expect(Tok::kLBracket, "'['");
      Index idx = index();
      expect(Tok::kRBracket, "']'");
      const Token& v = expect_ident("process variable");
      if (!is_proc_var(v.text)) {
        throw ParseError(v.line, v.column, "process variables must start uppercase");
      }
      std::string var = v.text;
      expect(Tok::kDot, "'.'");
      return proc::rec(idx, var, prefix(), pos);
    }
    if (t.kind == Tok::kIdent && !is_keyword(t.text)) {
      if (is_proc_var(t.text)) return proc::var(next().text, pos);
      Name subject = name();
      if (peek().kind == Tok::kQuestion) {
        next();
        expect(Tok::kLParen, "'('");
        const Token& b = expect_ident("variable");
        if (is_proc_var(b.text)) {
          throw ParseError(b.line, b.column, "input variables must not start uppercase");
        }
        std::string binder = b.text;
        expect(Tok::kRParen, "')'");
        expect(Tok::kDot, "'.'");
        return proc::input(subject, binder, prefix(), pos);
      }
      if (peek().kind == Tok::kBang) {
        next();
        Value v = value();
        expect(Tok::kDot, "'.'");
        return proc::output(subject, v, prefix(), pos);
      }
      fail({"'?'", "'!'"});
    }
    fail({"'0'", "process variable", "name", "'new'", "'rec'", "'('"});
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const std::map<std::string, Type>* aliases_ = nullptr;
};

}  // namespace

Program parse_program(std::string_view text) { return Parser(text).program(); }

Proc parse_process(std::string_view text) { return Parser(text).process_only(); }

Type parse_type(std::string_view text) { return Parser(text).type_only(); }

}  // namespace sessprog
