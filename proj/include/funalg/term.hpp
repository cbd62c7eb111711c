#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "funalg/derivation.hpp"
#include "funalg/nat.hpp"

namespace funalg {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

/// Quasi-term: first-order term over 0, S, +, *, pairing, plus applications f(t).
/// `Call` is an application of an already compiled derivation.
struct Term {
  enum class Kind { Zero, Num, Var, Succ, Pair, Add, Mul, App, Call };

  Kind kind;
  Nat num;            // Num
  std::string name;   // Var, App, Call (display name)
  TermPtr lhs, rhs;   // Succ/App/Call use lhs only
  std::optional<Derivation> fn;  // Call
};

namespace t {
TermPtr zero();
TermPtr num(Nat n);
TermPtr var(std::string name);
TermPtr succ(TermPtr a);
TermPtr pair(TermPtr a, TermPtr b);
TermPtr add(TermPtr a, TermPtr b);
TermPtr mul(TermPtr a, TermPtr b);
TermPtr app(std::string fn, TermPtr arg);
TermPtr call(Derivation d, TermPtr arg, std::string display = "");
/// Right-associated tuple of terms; a single term is returned unchanged.
TermPtr tuple(const std::vector<TermPtr>& xs);
}  // namespace t

/// Canonical text: "0", "7", "x", "S(t)", "(a,b,c)", "a + b * c", "f(t)".
std::string print_term(const TermPtr& t);
bool term_equal(const TermPtr& a, const TermPtr& b);

void collect_vars(const TermPtr& t, std::set<std::string>& out);
void collect_apps(const TermPtr& t, std::set<std::string>& out);
bool has_app(const TermPtr& t);
TermPtr rename_vars(const TermPtr& t, const std::map<std::string, std::string>& names);

using AppFn = std::function<Nat(const std::string& fn, const Nat& arg)>;
/// Direct evaluation; throws EvalError on an unbound variable.
Nat eval_term(const TermPtr& t, const std::map<std::string, Nat>& vars, const AppFn& apps = {});

// ---- quasi-bounded formulas ---------------------------------------------------

enum class Rel { Eq, Lt };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  enum class Kind { Rel, Oracle, Not, Or, And, BoundedEx, QuasiEx };

  Kind kind;
  funalg::Rel rel = funalg::Rel::Eq;
  TermPtr t1, t2;       // Rel: t1 rel t2 ; Oracle: t1 ; BoundedEx: bound t1 ; QuasiEx: argument t1
  FormulaPtr a, b;      // Not: a ; Or/And: a, b ; quantifiers: body a
  std::string var;      // bound variable
  std::string fn;       // QuasiEx: exists var = fn(t1)
};

namespace fm {
FormulaPtr rel(TermPtr a, Rel r, TermPtr b);
FormulaPtr lt(TermPtr a, TermPtr b);
FormulaPtr eq(TermPtr a, TermPtr b);
FormulaPtr in_x(TermPtr a);
FormulaPtr neg(FormulaPtr a);
FormulaPtr lor(FormulaPtr a, FormulaPtr b);
FormulaPtr land(FormulaPtr a, FormulaPtr b);
FormulaPtr exists_lt(std::string v, TermPtr bound, FormulaPtr body);
FormulaPtr exists_eq(std::string v, std::string fn, TermPtr arg, FormulaPtr body);
}  // namespace fm

/// Text in the formula syntax accepted by parse_formula.
std::string print_formula(const FormulaPtr& f);

/// Truth evaluation by brute force over bounded quantifiers.
bool eval_formula(const FormulaPtr& f, const std::map<std::string, Nat>& vars,
                  const std::function<bool(const Nat&)>& oracle, const AppFn& apps = {});

}  // namespace funalg
