#include <cctype>

#include "funalg/clausal.hpp"
#include "funalg/errors.hpp"

namespace funalg {

namespace {

struct Token {
  enum class Kind { Ident, Number, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  std::size_t offset = 0, line = 1, column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }
  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& msg, const Token& at) const {
    throw ParseError("line " + std::to_string(at.line) + ":" + std::to_string(at.column) + ": " + msg,
                     at.offset, at.line, at.column);
  }

 private:
  void advance() {
    skip();
    tok_ = Token{};
    tok_.offset = pos_;
    tok_.line = line_;
    tok_.column = pos_ - line_start_ + 1;
    if (pos_ >= src_.size()) return;
    const char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t e = pos_;
      while (e < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[e])) || src_[e] == '_' || src_[e] == '\''))
        ++e;
      tok_.kind = Token::Kind::Ident;
      tok_.text = std::string(src_.substr(pos_, e - pos_));
      pos_ = e;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t e = pos_;
      while (e < src_.size() && std::isdigit(static_cast<unsigned char>(src_[e]))) ++e;
      tok_.kind = Token::Kind::Number;
      tok_.text = std::string(src_.substr(pos_, e - pos_));
      pos_ = e;
      return;
    }
    if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
      tok_.kind = Token::Kind::Punct;
      tok_.text = "->";
      pos_ += 2;
      return;
    }
    static const std::string_view punct = "(){}[],;=<+*&|!.";
    if (punct.find(c) == std::string_view::npos) {
      tok_.kind = Token::Kind::Punct;
      tok_.text = std::string(1, c);
      fail("unexpected character '" + tok_.text + "'", tok_);
    }
    tok_.kind = Token::Kind::Punct;
    tok_.text = std::string(1, c);
    ++pos_;
  }

  void skip() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '\n') {
        ++pos_;
        ++line_;
        line_start_ = pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0, line_ = 1, line_start_ = 0;
  Token tok_;
};

bool reserved(const std::string& s) {
  return s == "def" || s == "measure" || s == "in" || s == "X" || s == "S" || s == "exists";
}

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) {}

  /// Function names accepted in applications; empty optional disables the check.
  std::optional<std::set<std::string>> declared;

  bool at(const char* p) const {
    const Token& t = lex_.peek();
    return t.kind == Token::Kind::Punct && t.text == p;
  }
  bool at_ident(const char* s) const {
    const Token& t = lex_.peek();
    return t.kind == Token::Kind::Ident && t.text == s;
  }
  bool at_end() const { return lex_.peek().kind == Token::Kind::End; }

  void expect(const char* p) {
    if (!at(p)) lex_.fail(std::string("expected '") + p + "'" + found(), lex_.peek());
    lex_.next();
  }
  void expect_ident(const char* s) {
    if (!at_ident(s)) lex_.fail(std::string("expected '") + s + "'" + found(), lex_.peek());
    lex_.next();
  }
  std::string found() const {
    const Token& t = lex_.peek();
    return t.kind == Token::Kind::End ? " at end of input" : " before '" + t.text + "'";
  }
  Token ident() {
    if (lex_.peek().kind != Token::Kind::Ident || reserved(lex_.peek().text))
      lex_.fail("expected an identifier" + found(), lex_.peek());
    return lex_.next();
  }

  TermPtr term() {
    TermPtr acc = product();
    while (at("+")) {
      lex_.next();
      acc = t::add(acc, product());
    }
    return acc;
  }

  TermPtr product() {
    TermPtr acc = atom();
    while (at("*")) {
      lex_.next();
      acc = t::mul(acc, atom());
    }
    return acc;
  }

  TermPtr atom() {
    const Token& tk = lex_.peek();
    if (tk.kind == Token::Kind::Number) {
      return t::num(Nat::from_string(lex_.next().text));
    }
    if (at("(")) {
      lex_.next();
      std::vector<TermPtr> items{term()};
      while (at(",")) {
        lex_.next();
        items.push_back(term());
      }
      expect(")");
      return t::tuple(items);
    }
    if (at_ident("S")) {
      lex_.next();
      expect("(");
      TermPtr a = term();
      expect(")");
      return t::succ(a);
    }
    const Token id = ident();
    if (at("(")) {
      if (declared && !declared->count(id.text))
        lex_.fail("undeclared function '" + id.text + "'", id);
      lex_.next();
      TermPtr a = term();
      expect(")");
      return t::app(id.text, a);
    }
    return t::var(id.text);
  }

  Literal literal() {
    if (at("!")) {
      lex_.next();
      Literal l = literal();
      l.negated = !l.negated;
      return l;
    }
    Literal l;
    l.lhs = term();
    if (at_ident("in")) {
      lex_.next();
      expect_ident("X");
      l.kind = Literal::Kind::Oracle;
      return l;
    }
    if (at("=")) {
      l.rel = Rel::Eq;
    } else if (at("<")) {
      l.rel = Rel::Lt;
    } else {
      lex_.fail("expected '=', '<' or 'in'" + found(), lex_.peek());
    }
    lex_.next();
    l.rhs = term();
    return l;
  }

  Clause clause(const std::string& fname) {
    Clause c;
    const Token start = lex_.peek();
    c.line = start.line;
    std::vector<Literal> lits{literal()};
    while (at("&")) {
      lex_.next();
      lits.push_back(literal());
    }
    Literal head;
    Token head_tok = start;
    if (at("->")) {
      lex_.next();
      c.ants = std::move(lits);
      head_tok = lex_.peek();
      head = literal();
    } else {
      if (lits.size() != 1) lex_.fail("expected '->' after the antecedent" + found(), lex_.peek());
      head = lits.front();
    }
    if (head.kind != Literal::Kind::Rel || head.negated || head.rel != Rel::Eq ||
        head.lhs->kind != Term::Kind::App)
      lex_.fail("clause head must read " + fname + "(pattern) = term", head_tok);
    if (head.lhs->name != fname)
      lex_.fail("clause head names '" + head.lhs->name + "' inside def " + fname, head_tok);
    if (has_app(head.lhs->lhs)) lex_.fail("applications are not allowed in a pattern", head_tok);
    c.head = fname;
    c.pattern = head.lhs->lhs;
    c.result = head.rhs;
    expect(";");
    return c;
  }

  std::vector<ClausalDef> program(const std::set<std::string>& known) {
    std::vector<ClausalDef> defs;
    std::set<std::string> names = known;
    while (!at_end()) {
      expect_ident("def");
      const Token name = ident();
      if (names.count(name.text)) lex_.fail("function '" + name.text + "' is already defined", name);
      ClausalDef def;
      def.name = name.text;
      if (at_ident("measure")) {
        lex_.next();
        def.measure = lex_.next().text;
      }
      expect("{");
      names.insert(def.name);
      declared = names;
      do {
        def.clauses.push_back(clause(def.name));
      } while (!at("}"));
      expect("}");
      defs.push_back(std::move(def));
    }
    if (defs.empty()) lex_.fail("expected 'def'", lex_.peek());
    return defs;
  }

  FormulaPtr formula() {
    FormulaPtr acc = conj();
    while (at("|")) {
      lex_.next();
      acc = fm::lor(acc, conj());
    }
    return acc;
  }

  FormulaPtr conj() {
    FormulaPtr acc = unary();
    while (at("&")) {
      lex_.next();
      acc = fm::land(acc, unary());
    }
    return acc;
  }

  FormulaPtr unary() {
    if (at("!")) {
      lex_.next();
      return fm::neg(unary());
    }
    if (at("[")) {
      lex_.next();
      FormulaPtr f = formula();
      expect("]");
      return f;
    }
    if (at_ident("exists")) {
      lex_.next();
      const std::string v = ident().text;
      if (at("<")) {
        lex_.next();
        TermPtr bound = term();
        expect(".");
        return fm::exists_lt(v, bound, formula());
      }
      expect("=");
      const std::string fn = ident().text;
      expect("(");
      TermPtr arg = term();
      expect(")");
      expect(".");
      return fm::exists_eq(v, fn, arg, formula());
    }
    TermPtr a = term();
    if (at_ident("in")) {
      lex_.next();
      expect_ident("X");
      return fm::in_x(a);
    }
    if (at("=")) {
      lex_.next();
      return fm::eq(a, term());
    }
    if (at("<")) {
      lex_.next();
      return fm::lt(a, term());
    }
    lex_.fail("expected '=', '<' or 'in'" + found(), lex_.peek());
  }

  void finish() {
    if (!at_end()) lex_.fail("unexpected trailing input", lex_.peek());
  }

 private:
  Lexer lex_;
};

std::string print_literal(const Literal& l) {
  std::string s = l.negated ? "!" : "";
  if (l.kind == Literal::Kind::Oracle) return s + print_term(l.lhs) + " in X";
  return s + print_term(l.lhs) + (l.rel == Rel::Eq ? " = " : " < ") + print_term(l.rhs);
}

}  // namespace

std::vector<ClausalDef> parse_cl(std::string_view text, const std::set<std::string>& known) {
  Parser p(text);
  return p.program(known);
}

TermPtr parse_term(std::string_view text) {
  Parser p(text);
  TermPtr t = p.term();
  p.finish();
  return t;
}

FormulaPtr parse_formula(std::string_view text) {
  Parser p(text);
  FormulaPtr f = p.formula();
  p.finish();
  return f;
}

std::string print_cl(const ClausalDef& def) {
  std::string out = "def " + def.name;
  if (def.measure) out += " measure " + *def.measure;
  out += " {\n";
  for (const Clause& c : def.clauses) {
    out += "  ";
    for (std::size_t i = 0; i < c.ants.size(); ++i) {
      if (i) out += " & ";
      out += print_literal(c.ants[i]);
    }
    if (!c.ants.empty()) out += " -> ";
    out += c.head + "(" + print_term(c.pattern) + ") = " + print_term(c.result) + ";\n";
  }
  out += "}\n";
  return out;
}

std::string print_cl(const std::vector<ClausalDef>& defs) {
  std::string out;
  for (std::size_t i = 0; i < defs.size(); ++i) {
    if (i) out += '\n';
    out += print_cl(defs[i]);
  }
  return out;
}

namespace {
void apps_of(const TermPtr& t, std::set<std::string>& out) { collect_apps(t, out); }
}  // namespace

std::set<std::string> ClausalDef::callees() const {
  std::set<std::string> all;
  for (const Clause& c : clauses) {
    for (const Literal& l : c.ants) {
      apps_of(l.lhs, all);
      apps_of(l.rhs, all);
    }
    apps_of(c.result, all);
  }
  all.erase(name);
  return all;
}

ClausalDef::Kind ClausalDef::kind() const {
  for (const Clause& c : clauses) {
    std::set<std::string> apps;
    for (const Literal& l : c.ants) {
      apps_of(l.lhs, apps);
      apps_of(l.rhs, apps);
    }
    apps_of(c.result, apps);
    if (apps.count(name)) return Kind::Recursive;
  }
  return Kind::Explicit;
}

}  // namespace funalg
