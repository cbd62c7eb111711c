#include "funalg/term.hpp"

#include "funalg/codec.hpp"
#include "funalg/errors.hpp"

namespace funalg {

namespace t {

namespace {
TermPtr make(Term::Kind k, TermPtr a = nullptr, TermPtr b = nullptr) {
  auto p = std::make_shared<Term>();
  p->kind = k;
  p->lhs = std::move(a);
  p->rhs = std::move(b);
  return p;
}
}  // namespace

TermPtr zero() {
  static const TermPtr z = make(Term::Kind::Zero);
  return z;
}
TermPtr num(Nat n) {
  if (n.is_zero()) return zero();
  auto p = std::make_shared<Term>();
  p->kind = Term::Kind::Num;
  p->num = std::move(n);
  return p;
}
TermPtr var(std::string name) {
  auto p = std::make_shared<Term>();
  p->kind = Term::Kind::Var;
  p->name = std::move(name);
  return p;
}
TermPtr succ(TermPtr a) { return make(Term::Kind::Succ, std::move(a)); }
TermPtr pair(TermPtr a, TermPtr b) { return make(Term::Kind::Pair, std::move(a), std::move(b)); }
TermPtr add(TermPtr a, TermPtr b) { return make(Term::Kind::Add, std::move(a), std::move(b)); }
TermPtr mul(TermPtr a, TermPtr b) { return make(Term::Kind::Mul, std::move(a), std::move(b)); }
TermPtr app(std::string fn, TermPtr arg) {
  auto p = std::make_shared<Term>();
  p->kind = Term::Kind::App;
  p->name = std::move(fn);
  p->lhs = std::move(arg);
  return p;
}
TermPtr call(Derivation d, TermPtr arg, std::string display) {
  auto p = std::make_shared<Term>();
  p->kind = Term::Kind::Call;
  p->name = display.empty() ? d_print(d) : std::move(display);
  p->lhs = std::move(arg);
  p->fn = std::move(d);
  return p;
}
TermPtr tuple(const std::vector<TermPtr>& xs) {
  if (xs.empty()) throw CompileError("empty tuple");
  TermPtr acc = xs.back();
  for (std::size_t i = xs.size() - 1; i-- > 0;) acc = pair(xs[i], acc);
  return acc;
}

}  // namespace t

namespace {

int precedence(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Add: return 1;
    case Term::Kind::Mul: return 2;
    default: return 3;
  }
}

void print_into(const TermPtr& t, std::string& out) {
  switch (t->kind) {
    case Term::Kind::Zero: out += '0'; return;
    case Term::Kind::Num: out += t->num.to_string(); return;
    case Term::Kind::Var: out += t->name; return;
    case Term::Kind::Succ:
      out += "S(";
      print_into(t->lhs, out);
      out += ')';
      return;
    case Term::Kind::Pair: {
      out += '(';
      print_into(t->lhs, out);
      TermPtr rest = t->rhs;
      while (rest->kind == Term::Kind::Pair) {
        out += ',';
        print_into(rest->lhs, out);
        rest = rest->rhs;
      }
      out += ',';
      print_into(rest, out);
      out += ')';
      return;
    }
    case Term::Kind::Add:
    case Term::Kind::Mul: {
      const int p = precedence(t);
      const bool lp = precedence(t->lhs) < p;
      const bool rp = precedence(t->rhs) <= p;  // operators associate to the left
      if (lp) out += '(';
      print_into(t->lhs, out);
      if (lp) out += ')';
      out += t->kind == Term::Kind::Add ? " + " : " * ";
      if (rp) out += '(';
      print_into(t->rhs, out);
      if (rp) out += ')';
      return;
    }
    case Term::Kind::App:
    case Term::Kind::Call:
      out += t->name;
      out += '(';
      print_into(t->lhs, out);
      out += ')';
      return;
  }
}

}  // namespace

std::string print_term(const TermPtr& t) {
  std::string out;
  print_into(t, out);
  return out;
}

bool term_equal(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Term::Kind::Zero: return true;
    case Term::Kind::Num: return a->num == b->num;
    case Term::Kind::Var: return a->name == b->name;
    case Term::Kind::Succ: return term_equal(a->lhs, b->lhs);
    case Term::Kind::App: return a->name == b->name && term_equal(a->lhs, b->lhs);
    case Term::Kind::Call: return *a->fn == *b->fn && term_equal(a->lhs, b->lhs);
    default: return term_equal(a->lhs, b->lhs) && term_equal(a->rhs, b->rhs);
  }
}

void collect_vars(const TermPtr& t, std::set<std::string>& out) {
  if (!t) return;
  if (t->kind == Term::Kind::Var) out.insert(t->name);
  collect_vars(t->lhs, out);
  collect_vars(t->rhs, out);
}

void collect_apps(const TermPtr& t, std::set<std::string>& out) {
  if (!t) return;
  if (t->kind == Term::Kind::App) out.insert(t->name);
  collect_apps(t->lhs, out);
  collect_apps(t->rhs, out);
}

bool has_app(const TermPtr& t) {
  if (!t) return false;
  if (t->kind == Term::Kind::App || t->kind == Term::Kind::Call) return true;
  return has_app(t->lhs) || has_app(t->rhs);
}

TermPtr rename_vars(const TermPtr& t, const std::map<std::string, std::string>& names) {
  if (!t) return t;
  switch (t->kind) {
    case Term::Kind::Zero:
    case Term::Kind::Num:
      return t;
    case Term::Kind::Var: {
      auto it = names.find(t->name);
      return it == names.end() ? t : t::var(it->second);
    }
    default: {
      auto p = std::make_shared<Term>(*t);
      p->lhs = rename_vars(t->lhs, names);
      p->rhs = rename_vars(t->rhs, names);
      return p;
    }
  }
}

Nat eval_term(const TermPtr& t, const std::map<std::string, Nat>& vars, const AppFn& apps) {
  switch (t->kind) {
    case Term::Kind::Zero: return Nat{};
    case Term::Kind::Num: return t->num;
    case Term::Kind::Var: {
      auto it = vars.find(t->name);
      if (it == vars.end()) throw EvalError("unbound variable '" + t->name + "'");
      return it->second;
    }
    case Term::Kind::Succ: return succ(eval_term(t->lhs, vars, apps));
    case Term::Kind::Pair: return pair(eval_term(t->lhs, vars, apps), eval_term(t->rhs, vars, apps));
    case Term::Kind::Add: return eval_term(t->lhs, vars, apps) + eval_term(t->rhs, vars, apps);
    case Term::Kind::Mul: return eval_term(t->lhs, vars, apps) * eval_term(t->rhs, vars, apps);
    case Term::Kind::App:
      if (!apps) throw EvalError("no interpretation for function '" + t->name + "'");
      return apps(t->name, eval_term(t->lhs, vars, apps));
    case Term::Kind::Call:
      if (!apps) throw EvalError("no interpretation for '" + t->name + "'");
      return apps(t->name, eval_term(t->lhs, vars, apps));
  }
  return Nat{};
}

// ---- formulas -------------------------------------------------------------------

namespace fm {

namespace {
std::shared_ptr<Formula> make(Formula::Kind k) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  return f;
}
}  // namespace

FormulaPtr rel(TermPtr a, Rel r, TermPtr b) {
  auto f = make(Formula::Kind::Rel);
  f->rel = r;
  f->t1 = std::move(a);
  f->t2 = std::move(b);
  return f;
}
FormulaPtr lt(TermPtr a, TermPtr b) { return rel(std::move(a), Rel::Lt, std::move(b)); }
FormulaPtr eq(TermPtr a, TermPtr b) { return rel(std::move(a), Rel::Eq, std::move(b)); }
FormulaPtr in_x(TermPtr a) {
  auto f = make(Formula::Kind::Oracle);
  f->t1 = std::move(a);
  return f;
}
FormulaPtr neg(FormulaPtr a) {
  auto f = make(Formula::Kind::Not);
  f->a = std::move(a);
  return f;
}
FormulaPtr lor(FormulaPtr a, FormulaPtr b) {
  auto f = make(Formula::Kind::Or);
  f->a = std::move(a);
  f->b = std::move(b);
  return f;
}
FormulaPtr land(FormulaPtr a, FormulaPtr b) {
  auto f = make(Formula::Kind::And);
  f->a = std::move(a);
  f->b = std::move(b);
  return f;
}
FormulaPtr exists_lt(std::string v, TermPtr bound, FormulaPtr body) {
  auto f = make(Formula::Kind::BoundedEx);
  f->var = std::move(v);
  f->t1 = std::move(bound);
  f->a = std::move(body);
  return f;
}
FormulaPtr exists_eq(std::string v, std::string fn, TermPtr arg, FormulaPtr body) {
  auto f = make(Formula::Kind::QuasiEx);
  f->var = std::move(v);
  f->fn = std::move(fn);
  f->t1 = std::move(arg);
  f->a = std::move(body);
  return f;
}

}  // namespace fm

namespace {

// quantifier bodies extend to the right, so they are bracketed inside & and |
bool open_scope(const FormulaPtr& f) {
  if (f->kind == Formula::Kind::Not) return open_scope(f->a);
  return f->kind == Formula::Kind::BoundedEx || f->kind == Formula::Kind::QuasiEx;
}

std::string operand(const FormulaPtr& f) {
  const std::string s = print_formula(f);
  return open_scope(f) ? "[" + s + "]" : s;
}

}  // namespace

std::string print_formula(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::Rel:
      return print_term(f->t1) + (f->rel == Rel::Eq ? " = " : " < ") + print_term(f->t2);
    case Formula::Kind::Oracle: return print_term(f->t1) + " in X";
    case Formula::Kind::Not: return "!" + print_formula(f->a);
    case Formula::Kind::Or: return "[" + operand(f->a) + " | " + operand(f->b) + "]";
    case Formula::Kind::And: return "[" + operand(f->a) + " & " + operand(f->b) + "]";
    case Formula::Kind::BoundedEx:
      return "exists " + f->var + " < " + print_term(f->t1) + ". " + print_formula(f->a);
    case Formula::Kind::QuasiEx:
      return "exists " + f->var + " = " + f->fn + "(" + print_term(f->t1) + "). " + print_formula(f->a);
  }
  return "?";
}

bool eval_formula(const FormulaPtr& f, const std::map<std::string, Nat>& vars,
                  const std::function<bool(const Nat&)>& oracle, const AppFn& apps) {
  switch (f->kind) {
    case Formula::Kind::Rel: {
      const Nat a = eval_term(f->t1, vars, apps), b = eval_term(f->t2, vars, apps);
      return f->rel == Rel::Eq ? a == b : a < b;
    }
    case Formula::Kind::Oracle: return oracle && oracle(eval_term(f->t1, vars, apps));
    case Formula::Kind::Not: return !eval_formula(f->a, vars, oracle, apps);
    case Formula::Kind::Or: return eval_formula(f->a, vars, oracle, apps) || eval_formula(f->b, vars, oracle, apps);
    case Formula::Kind::And:
      return eval_formula(f->a, vars, oracle, apps) && eval_formula(f->b, vars, oracle, apps);
    case Formula::Kind::BoundedEx: {
      const Nat bound = eval_term(f->t1, vars, apps);
      std::map<std::string, Nat> inner = vars;
      for (Nat y; y < bound; y += Nat{1}) {
        inner[f->var] = y;
        if (eval_formula(f->a, inner, oracle, apps)) return true;
      }
      return false;
    }
    case Formula::Kind::QuasiEx: {
      std::map<std::string, Nat> inner = vars;
      if (!apps) throw EvalError("no interpretation for function '" + f->fn + "'");
      inner[f->var] = apps(f->fn, eval_term(f->t1, vars, apps));
      return eval_formula(f->a, inner, oracle, apps);
    }
  }
  return false;
}

}  // namespace funalg
