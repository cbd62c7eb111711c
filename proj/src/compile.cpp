#include <utility>

#include "funalg/compile.hpp"
#include "funalg/errors.hpp"

namespace funalg {

Derivation project(std::size_t i, std::size_t n) {
  if (i > n) throw CompileError("projection index out of range");
  if (i == n) return d::T_pow(n);
  if (i == 0) return d::H();
  return d::comp(d::H(), d::T_pow(i));
}

Derivation constant(const Nat& k) {
  if (k.is_zero()) return d::Z();
  if (k <= Nat{8}) return d::comp(d::S(), constant(k - Nat{1}));
  const Nat half = k / Nat{2};
  const Derivation c = constant(half);
  Derivation twice = d::comp(d::add(), d::P(c, c));
  if ((k % Nat{2}).is_zero()) return twice;
  return d::comp(d::S(), twice);
}

Derivation dispatch(Derivation v, Derivation a, Derivation b) {
  return d::comp(d::D(), d::P(std::move(v), d::P(std::move(a), std::move(b))));
}

namespace {

// Variables as derivations over the current frame. Splits only add H/T
// projections of the split variable; bindings push a new frame entry.
using Frame = std::vector<std::pair<std::string, Derivation>>;

Frame frame_of(const std::vector<std::string>& ctx) {
  if (ctx.empty()) throw CompileError("empty variable context");
  Frame f;
  for (std::size_t i = 0; i < ctx.size(); ++i) f.emplace_back(ctx[i], project(i, ctx.size() - 1));
  return f;
}

const Derivation& var_of(const Frame& f, const std::string& v) {
  // innermost binding wins; frames are extended at the front
  for (const auto& [name, dv] : f)
    if (name == v) return dv;
  throw CompileError("unbound variable '" + v + "'");
}

Frame pushed(const Frame& f, const std::string& v) {
  Frame out;
  out.emplace_back(v, d::H());
  for (const auto& [name, dv] : f) out.emplace_back(name, d::comp(dv, d::T()));
  return out;
}

Frame with(Frame f, const std::string& v, Derivation dv) {
  f.insert(f.begin(), {v, std::move(dv)});
  return f;
}

const Derivation& lookup(const DerivEnv& env, const std::string& fn) {
  auto it = env.find(fn);
  if (it == env.end()) throw CompileError("function '" + fn + "' has no compiled derivation");
  return it->second;
}

Derivation term_in(const TermPtr& t, const Frame& f, const DerivEnv& env) {
  switch (t->kind) {
    case Term::Kind::Zero: return d::Z();
    case Term::Kind::Num: return constant(t->num);
    case Term::Kind::Var: return var_of(f, t->name);
    case Term::Kind::Succ: return d::comp(d::S(), term_in(t->lhs, f, env));
    case Term::Kind::Pair: return d::P(term_in(t->lhs, f, env), term_in(t->rhs, f, env));
    case Term::Kind::Add: return d::comp(d::add(), d::P(term_in(t->lhs, f, env), term_in(t->rhs, f, env)));
    case Term::Kind::Mul: return d::comp(d::mul(), d::P(term_in(t->lhs, f, env), term_in(t->rhs, f, env)));
    case Term::Kind::App: return d::comp(lookup(env, t->name), term_in(t->lhs, f, env));
    case Term::Kind::Call: return d::comp(*t->fn, term_in(t->lhs, f, env));
  }
  throw CompileError("unknown term");
}

Derivation formula_in(const FormulaPtr& fo, const Frame& f, const DerivEnv& env) {
  const Derivation one = constant(Nat{1});
  const Derivation zero = d::Z();
  switch (fo->kind) {
    case Formula::Kind::Rel: {
      const Derivation a = term_in(fo->t1, f, env), b = term_in(fo->t2, f, env);
      if (fo->rel == Rel::Lt) return d::comp(d::lt(), d::P(a, b));
      // D(a < b, D(b < a, 1, 0), 0)
      return dispatch(d::comp(d::lt(), d::P(a, b)), dispatch(d::comp(d::lt(), d::P(b, a)), one, zero), zero);
    }
    case Formula::Kind::Oracle: return d::comp(d::X(), term_in(fo->t1, f, env));
    case Formula::Kind::Not: return dispatch(formula_in(fo->a, f, env), one, zero);
    case Formula::Kind::Or: return dispatch(formula_in(fo->a, f, env), formula_in(fo->b, f, env), one);
    case Formula::Kind::And: return dispatch(formula_in(fo->a, f, env), zero, formula_in(fo->b, f, env));
    case Formula::Kind::BoundedEx: {
      const Derivation body = formula_in(fo->a, pushed(f, fo->var), env);
      const Derivation bound = term_in(fo->t1, f, env);
      const Derivation least = d::comp(d::mu(body), d::P(bound, d::I()));
      return d::comp(d::lt(), d::P(least, bound));
    }
    case Formula::Kind::QuasiEx: {
      const Derivation body = formula_in(fo->a, pushed(f, fo->var), env);
      const Derivation witness = d::comp(lookup(env, fo->fn), term_in(fo->t1, f, env));
      return d::comp(body, d::P(witness, d::I()));
    }
  }
  throw CompileError("unknown formula");
}

}  // namespace

Derivation compile_term(const TermPtr& t, const std::vector<std::string>& ctx, const DerivEnv& env) {
  return term_in(t, frame_of(ctx), env);
}

Derivation compile_formula(const FormulaPtr& f, const std::vector<std::string>& ctx, const DerivEnv& env) {
  return formula_in(f, frame_of(ctx), env);
}

namespace {

Derivation fold(const RNodePtr& n, const Frame& f, const DerivEnv& env) {
  switch (n->kind) {
    case RNode::Kind::Result: return term_in(n->t1, f, env);
    case RNode::Kind::Default: return d::Z();
    case RNode::Kind::Bind: {
      const Derivation value = d::comp(lookup(env, n->fn), term_in(n->t1, f, env));
      const Derivation rest = fold(n->kids[0], pushed(f, n->var), env);
      return d::comp(rest, d::P(value, d::I()));
    }
    case RNode::Kind::Succ: {
      const Derivation& v = var_of(f, n->var);
      return dispatch(v, fold(n->kids[0], f, env), fold(n->kids[1], with(f, n->w1, d::comp(d::Pr(), v)), env));
    }
    case RNode::Kind::Pair: {
      const Derivation& v = var_of(f, n->var);
      const Frame g = with(with(f, n->w2, d::comp(d::T(), v)), n->w1, d::comp(d::H(), v));
      return dispatch(v, fold(n->kids[0], f, env), fold(n->kids[1], g, env));
    }
    case RNode::Kind::Test:
    case RNode::Kind::Oracle: {
      const FormulaPtr atom = n->kind == RNode::Kind::Oracle ? fm::in_x(n->t1) : fm::rel(n->t1, n->rel, n->t2);
      return dispatch(formula_in(atom, f, env), fold(n->kids[1], f, env), fold(n->kids[0], f, env));
    }
  }
  throw CompileError("unknown refinement node");
}

}  // namespace

Derivation compile_tree(const Refinement& r, const DerivEnv& env) { return fold(r.root, frame_of({r.root_var}), env); }

Derivation compile_explicit(const ClausalDef& def, const DerivEnv& env) {
  if (def.recursive()) throw CompileError(def.name + " is recursive; use a reduction instead");
  return compile_tree(refine_partial(def), env);
}

}  // namespace funalg
