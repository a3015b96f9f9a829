#include "loopfinder/parser.hpp"

#include <cctype>
#include <map>

namespace lf {

namespace {

enum class Tok { kName, kVar, kPunct, kEnd };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

struct Lexer {
  const std::string& src;
  size_t pos = 0;
  int line = 1;
  int col = 1;
  Token cur;

  explicit Lexer(const std::string& s) : src(s) { advance(); }

  [[noreturn]] void fail(const std::string& msg, int l, int c) {
    throw ParseError(msg, l, c);
  }

  int peek() const { return pos < src.size() ? static_cast<unsigned char>(src[pos]) : -1; }

  int get() {
    if (pos >= src.size()) return -1;
    char ch = src[pos++];
    if (ch == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    return static_cast<unsigned char>(ch);
  }

  void skip_space() {
    while (true) {
      int ch = peek();
      if (ch == '%') {
        while (peek() != -1 && peek() != '\n') get();
        continue;
      }
      if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n') {
        get();
        continue;
      }
      break;
    }
  }

  // A period ends a clause only when followed by layout or end of input;
  // otherwise it lexes as a name, for the list constructor written as '.'.
  void advance() {
    skip_space();
    int l = line;
    int c = col;
    int ch = peek();
    if (ch == -1) {
      cur = {Tok::kEnd, "", l, c};
      return;
    }
    if (ch == ':') {
      get();
      if (peek() != '-') fail("expected ':-'", l, c);
      get();
      cur = {Tok::kPunct, ":-", l, c};
      return;
    }
    if (ch == '(' || ch == ')' || ch == ',' || ch == '[' || ch == ']' ||
        ch == '|') {
      get();
      cur = {Tok::kPunct, std::string(1, static_cast<char>(ch)), l, c};
      return;
    }
    if (ch == '.') {
      get();
      int nxt = peek();
      if (nxt == -1 || nxt == ' ' || nxt == '\t' || nxt == '\r' ||
          nxt == '\n' || nxt == '%') {
        cur = {Tok::kPunct, ".", l, c};
      } else {
        cur = {Tok::kName, ".", l, c};
      }
      return;
    }
    if (ch == '\'') {
      get();
      std::string name;
      while (true) {
        int q = get();
        if (q == -1) fail("unterminated quoted name", l, c);
        if (q == '\\') {
          int esc = get();
          if (esc == -1) fail("unterminated quoted name", l, c);
          name += static_cast<char>(esc);
          continue;
        }
        if (q == '\'') break;
        name += static_cast<char>(q);
      }
      cur = {Tok::kName, name, l, c};
      return;
    }
    if (std::isdigit(ch)) {
      std::string text;
      while (std::isdigit(peek())) text += static_cast<char>(get());
      cur = {Tok::kName, text, l, c};
      return;
    }
    if (std::isalpha(ch) || ch == '_') {
      std::string text;
      while (std::isalnum(peek()) || peek() == '_') {
        text += static_cast<char>(get());
      }
      bool is_var = std::isupper(static_cast<unsigned char>(text[0])) ||
                    text[0] == '_';
      cur = {is_var ? Tok::kVar : Tok::kName, text, l, c};
      return;
    }
    fail(std::string("unexpected character '") + static_cast<char>(ch) + "'",
         l, c);
  }
};

struct Parser {
  Lexer lex;
  // One scope of named variables; `_` never enters it.
  std::map<std::string, TermPtr> vars;
  Signature sig;

  explicit Parser(const std::string& s) : lex(s) {}

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg, lex.cur.line, lex.cur.col);
  }

  bool at_punct(const char* p) const {
    return lex.cur.kind == Tok::kPunct && lex.cur.text == p;
  }

  void expect_punct(const char* p) {
    if (!at_punct(p)) fail(std::string("expected '") + p + "'");
    lex.advance();
  }

  TermPtr var_term(const std::string& name) {
    if (name == "_") return fresh_var();
    auto it = vars.find(name);
    if (it != vars.end()) return it->second;
    TermPtr v = fresh_var(name);
    vars.emplace(name, v);
    return v;
  }

  TermPtr parse_term() {
    if (lex.cur.kind == Tok::kVar) {
      TermPtr v = var_term(lex.cur.text);
      lex.advance();
      return v;
    }
    if (at_punct("[")) return parse_list();
    if (lex.cur.kind != Tok::kName) fail("expected a term");
    std::string name = lex.cur.text;
    lex.advance();
    if (!at_punct("(")) return mkconst(std::move(name));
    lex.advance();
    std::vector<TermPtr> args = parse_term_args();
    return mkfun(std::move(name), std::move(args));
  }

  std::vector<TermPtr> parse_term_args() {
    std::vector<TermPtr> args;
    args.push_back(parse_term());
    while (at_punct(",")) {
      lex.advance();
      args.push_back(parse_term());
    }
    expect_punct(")");
    return args;
  }

  TermPtr parse_list() {
    expect_punct("[");
    if (at_punct("]")) {
      lex.advance();
      return mkconst("[]");
    }
    std::vector<TermPtr> items;
    items.push_back(parse_term());
    while (at_punct(",")) {
      lex.advance();
      items.push_back(parse_term());
    }
    TermPtr tail = mkconst("[]");
    if (at_punct("|")) {
      lex.advance();
      tail = parse_term();
    }
    expect_punct("]");
    for (auto it = items.rbegin(); it != items.rend(); ++it) {
      tail = mkfun(".", {*it, tail});
    }
    return tail;
  }

  Atom parse_atom(bool check_sig) {
    if (lex.cur.kind != Tok::kName) fail("expected an atom");
    int l = lex.cur.line;
    int c = lex.cur.col;
    std::string pred = lex.cur.text;
    lex.advance();
    Atom a;
    a.pred = std::move(pred);
    if (at_punct("(")) {
      lex.advance();
      a.args = parse_term_args();
    }
    if (check_sig && !a.is_true()) {
      auto it = sig.find(a.pred);
      if (it == sig.end()) {
        sig.emplace(a.pred, a.arity());
      } else if (it->second != a.arity()) {
        throw ParseError("relation '" + a.pred + "' used with arity " +
                             std::to_string(a.arity()) + " after arity " +
                             std::to_string(it->second),
                         l, c);
      }
    }
    return a;
  }

  Clause parse_clause() {
    vars.clear();
    int hl = lex.cur.line;
    int hc = lex.cur.col;
    Clause cl;
    cl.head = parse_atom(true);
    if (cl.head.is_true()) {
      throw ParseError("reserved atom 'true' cannot be a clause head", hl, hc);
    }
    if (at_punct(":-")) {
      lex.advance();
      while (true) {
        Atom a = parse_atom(true);
        if (!a.is_true()) cl.body.push_back(std::move(a));
        if (at_punct(",")) {
          lex.advance();
          continue;
        }
        break;
      }
    }
    expect_punct(".");
    return cl;
  }

  Program parse_program() {
    Program p;
    while (lex.cur.kind != Tok::kEnd) p.clauses.push_back(parse_clause());
    return p;
  }
};

}  // namespace

Program parse_program(const std::string& text) {
  Parser p(text);
  return p.parse_program();
}

Atom parse_query(const std::string& text) {
  Parser p(text);
  int l = p.lex.cur.line;
  int c = p.lex.cur.col;
  Atom a = p.parse_atom(false);
  if (a.is_true()) {
    throw ParseError("reserved atom 'true' is not a query", l, c);
  }
  if (p.at_punct(",")) p.fail("query must be a single atom");
  if (p.at_punct(".")) p.lex.advance();
  if (p.lex.cur.kind != Tok::kEnd) p.fail("unexpected input after query");
  return a;
}

TermPtr parse_term_text(const std::string& text) {
  Parser p(text);
  TermPtr t = p.parse_term();
  if (p.at_punct(".")) p.lex.advance();
  if (p.lex.cur.kind != Tok::kEnd) p.fail("unexpected input after term");
  return t;
}

Atom parse_atom_text(const std::string& text) {
  Parser p(text);
  Atom a = p.parse_atom(false);
  if (p.at_punct(".")) p.lex.advance();
  if (p.lex.cur.kind != Tok::kEnd) p.fail("unexpected input after atom");
  return a;
}

}  // namespace lf
