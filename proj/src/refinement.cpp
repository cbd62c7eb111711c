#include <algorithm>

#include "funalg/clausal.hpp"
#include "funalg/errors.hpp"

namespace funalg {

namespace {

// One refinement step of a single clause, in the clause's own variable names.
struct Step {
  enum class Kind { Bind, Split, Test, Oracle, Result };
  Kind kind = Kind::Result;
  std::string fn, var, w1, w2;
  RNode::Kind split = RNode::Kind::Pair;
  Rel rel = Rel::Eq;
  bool negated = false;
  TermPtr a, b;
};

struct Desugared {
  std::string root;
  std::vector<Step> steps;
};

std::string clause_tag(std::size_t i) { return "clause " + std::to_string(i); }

class Desugarer {
 public:
  Desugarer(const ClausalDef& def, std::size_t index) : def_(def), index_(index) {
    for (const Clause& c : def.clauses) {
      collect_vars(c.pattern, names_);
      collect_vars(c.result, names_);
      for (const Literal& l : c.ants) {
        collect_vars(l.lhs, names_);
        collect_vars(l.rhs, names_);
      }
    }
  }

  Desugared run() {
    const Clause& c = def_.clauses[index_ - 1];
    Desugared out;
    if (c.pattern->kind == Term::Kind::Var) {
      out.root = c.pattern->name;
      introduce(out.root);
    } else {
      out.root = fresh("x");
      introduce(out.root);
      match(c.pattern, out.root);
    }
    for (const Literal& l : c.ants) literal(l);
    Step r;
    r.kind = Step::Kind::Result;
    r.a = unnest(c.result);
    require_bound(r.a, "the result");
    steps_.push_back(r);
    out.steps = std::move(steps_);
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw RefinementError(def_.name + ", " + clause_tag(index_) + " (line " +
                          std::to_string(def_.clauses[index_ - 1].line) + "): " + msg);
  }

  std::string fresh(const std::string& base) {
    if (!names_.count(base) && !bound_.count(base)) {
      names_.insert(base);
      return base;
    }
    for (int i = 1;; ++i) {
      std::string s = base + std::to_string(i);
      if (!names_.count(s) && !bound_.count(s)) {
        names_.insert(s);
        return s;
      }
    }
  }

  void introduce(const std::string& v) {
    if (v == "y") fail("'y' is reserved for the result and cannot name a local variable");
    if (bound_.count(v)) fail("variable '" + v + "' is not fresh");
    bound_.insert(v);
  }

  void require_bound(const TermPtr& t, const std::string& where) const {
    std::set<std::string> vs;
    collect_vars(t, vs);
    for (const std::string& v : vs) {
      if (!bound_.count(v)) fail("unbound variable '" + v + "' in " + where);
    }
  }

  static bool is_pattern(const TermPtr& t) {
    switch (t->kind) {
      case Term::Kind::Zero:
      case Term::Kind::Num:
      case Term::Kind::Var:
        return true;
      case Term::Kind::Succ: return is_pattern(t->lhs);
      case Term::Kind::Pair: return is_pattern(t->lhs) && is_pattern(t->rhs);
      default: return false;
    }
  }

  std::string slot(const TermPtr& q, const std::string& base) {
    if (q->kind == Term::Kind::Var) {
      introduce(q->name);
      return q->name;
    }
    std::string w = fresh(base);
    introduce(w);
    return w;
  }

  void match(const TermPtr& p, const std::string& v) {
    switch (p->kind) {
      case Term::Kind::Zero: {
        Step s;
        s.kind = Step::Kind::Test;
        s.a = t::var(v);
        s.b = t::zero();
        steps_.push_back(s);
        return;
      }
      case Term::Kind::Num:
        match(t::succ(t::num(p->num - Nat{1})), v);
        return;
      case Term::Kind::Succ: {
        Step s;
        s.kind = Step::Kind::Split;
        s.split = RNode::Kind::Succ;
        s.var = v;
        s.w1 = slot(p->lhs, "u");
        steps_.push_back(s);
        if (p->lhs->kind != Term::Kind::Var) match(p->lhs, s.w1);
        return;
      }
      case Term::Kind::Pair: {
        Step s;
        s.kind = Step::Kind::Split;
        s.split = RNode::Kind::Pair;
        s.var = v;
        s.w1 = slot(p->lhs, "u");
        s.w2 = slot(p->rhs, "u");
        steps_.push_back(s);
        if (p->lhs->kind != Term::Kind::Var) match(p->lhs, s.w1);
        if (p->rhs->kind != Term::Kind::Var) match(p->rhs, s.w2);
        return;
      }
      case Term::Kind::Var:
        fail("variable '" + p->name + "' is not fresh");
      default:
        fail("pattern '" + print_term(p) + "' is not built from 0, S and pairing");
    }
  }

  TermPtr unnest(const TermPtr& t) {
    if (!t) return t;
    switch (t->kind) {
      case Term::Kind::Zero:
      case Term::Kind::Num:
      case Term::Kind::Var:
        return t;
      case Term::Kind::App: {
        Step s;
        s.kind = Step::Kind::Bind;
        s.fn = t->name;
        s.a = unnest(t->lhs);
        require_bound(s.a, "the argument of " + t->name);
        s.var = fresh("z");
        introduce(s.var);
        steps_.push_back(s);
        return t::var(s.var);
      }
      case Term::Kind::Call:
        fail("compiled calls cannot appear in clauses");
      default: {
        auto p = std::make_shared<Term>(*t);
        p->lhs = unnest(t->lhs);
        p->rhs = unnest(t->rhs);
        return p;
      }
    }
  }

  void literal(const Literal& l) {
    if (l.kind == Literal::Kind::Oracle) {
      Step s;
      s.kind = Step::Kind::Oracle;
      s.negated = l.negated;
      s.a = unnest(l.lhs);
      require_bound(s.a, "an oracle atom");
      steps_.push_back(s);
      return;
    }
    if (!l.negated && l.rel == Rel::Eq) {
      std::set<std::string> rv;
      collect_vars(l.rhs, rv);
      std::size_t unbound = 0;
      for (const std::string& v : rv) unbound += bound_.count(v) ? 0 : 1;
      // v = pattern with new variables: rules 2 and 3
      if (l.lhs->kind == Term::Kind::Var && bound_.count(l.lhs->name) && unbound > 0) {
        if (!is_pattern(l.rhs) || l.rhs->kind == Term::Kind::Var)
          fail("'" + print_term(l.rhs) + "' introduces variables without a split or application");
        if (unbound != rv.size()) fail("split '" + print_term(l.rhs) + "' mixes bound and new variables");
        match(l.rhs, l.lhs->name);
        return;
      }
      // g(t) = v with v new: rule 1
      if (l.lhs->kind == Term::Kind::App && l.rhs->kind == Term::Kind::Var && unbound == 1) {
        Step s;
        s.kind = Step::Kind::Bind;
        s.fn = l.lhs->name;
        s.a = unnest(l.lhs->lhs);
        require_bound(s.a, "the argument of " + s.fn);
        s.var = l.rhs->name;
        introduce(s.var);
        steps_.push_back(s);
        return;
      }
    }
    Step s;
    s.kind = Step::Kind::Test;
    s.rel = l.rel;
    s.negated = l.negated;
    s.a = unnest(l.lhs);
    s.b = unnest(l.rhs);
    require_bound(s.a, "a test");
    require_bound(s.b, "a test");
    steps_.push_back(s);
  }

  const ClausalDef& def_;
  std::size_t index_;
  std::set<std::string> names_;
  std::set<std::string> bound_;
  std::vector<Step> steps_;
};

struct Cursor {
  std::size_t clause = 0;  // 1-based
  const std::vector<Step>* steps = nullptr;
  std::size_t pos = 0;
  std::map<std::string, std::string> ren;

  const Step& step() const { return (*steps)[pos]; }
  TermPtr tr(const TermPtr& t) const { return rename_vars(t, ren); }
  std::string var(const std::string& v) const {
    auto it = ren.find(v);
    return it == ren.end() ? v : it->second;
  }
};

bool zero_test(const Step& s) {
  return s.kind == Step::Kind::Test && s.rel == Rel::Eq && s.a->kind == Term::Kind::Var &&
         s.b->kind == Term::Kind::Zero;
}

// Grouping key; cursors at the same point must agree on it.
std::string key_of(const Cursor& c) {
  const Step& s = c.step();
  switch (s.kind) {
    case Step::Kind::Bind: return "bind " + s.fn + "(" + print_term(c.tr(s.a)) + ")";
    case Step::Kind::Split: return "zero " + c.var(s.var);
    case Step::Kind::Test:
      if (zero_test(s)) return "zero " + c.var(s.a->name);
      return "test " + print_term(c.tr(s.a)) + (s.rel == Rel::Eq ? " = " : " < ") + print_term(c.tr(s.b));
    case Step::Kind::Oracle: return "oracle " + print_term(c.tr(s.a));
    case Step::Kind::Result: return "result";
  }
  return "";
}

// 0: the case holds (v = 0, test true); 1: succ split; 2: pair split; 3: negated test.
int branch_of(const Step& s) {
  if (s.kind == Step::Kind::Split) return s.split == RNode::Kind::Succ ? 1 : 2;
  return s.negated ? 3 : 0;
}

std::string clause_list(const std::vector<Cursor>& cs) {
  std::string out;
  for (const Cursor& c : cs) {
    if (!out.empty()) out += ",";
    out += std::to_string(c.clause);
  }
  return out;
}

class Builder {
 public:
  Builder(const ClausalDef& def, bool strict) : def_(def), strict_(strict) {}

  RNodePtr build(std::vector<Cursor> cs, std::set<std::string> scope) {
    const std::string key = key_of(cs.front());
    for (const Cursor& c : cs) {
      if (key_of(c) != key)
        fail("clauses " + std::to_string(cs.front().clause) + " and " + std::to_string(c.clause) +
             " refine the same case differently ('" + key + "' vs '" + key_of(c) + "')");
    }
    auto node = std::make_shared<RNode>();
    for (const Cursor& c : cs) node->clauses.push_back(c.clause);
    const Step& s0 = cs.front().step();
    const Cursor& c0 = cs.front();

    switch (s0.kind) {
      case Step::Kind::Result: {
        if (cs.size() > 1)
          fail("clauses " + clause_list(cs) + " overlap: their antecedents hold on the same inputs");
        node->kind = RNode::Kind::Result;
        node->t1 = c0.tr(s0.a);
        return node;
      }
      case Step::Kind::Bind: {
        node->kind = RNode::Kind::Bind;
        node->fn = s0.fn;
        node->t1 = c0.tr(s0.a);
        node->var = canonical(s0.var, scope);
        for (Cursor& c : cs) {
          c.ren[c.step().var] = node->var;
          ++c.pos;
        }
        scope.insert(node->var);
        node->kids.push_back(build(std::move(cs), scope));
        return node;
      }
      case Step::Kind::Oracle:
      case Step::Kind::Test:
        if (s0.kind == Step::Kind::Oracle || !zero_test(s0)) {
          node->kind = s0.kind == Step::Kind::Oracle ? RNode::Kind::Oracle : RNode::Kind::Test;
          node->rel = s0.rel;
          node->t1 = c0.tr(s0.a);
          if (s0.b) node->t2 = c0.tr(s0.b);
          std::vector<Cursor> yes, no;
          for (Cursor& c : cs) {
            const bool neg = c.step().negated;
            ++c.pos;
            (neg ? no : yes).push_back(std::move(c));
          }
          node->kids.push_back(branch(std::move(yes), scope, "'" + describe(*node) + "' holds"));
          node->kids.push_back(branch(std::move(no), scope, "'" + describe(*node) + "' fails"));
          return node;
        }
        [[fallthrough]];
      case Step::Kind::Split: {
        // zero split on a variable: rules 2, 3, or 4 with v = 0
        const std::string v = s0.kind == Step::Kind::Split ? c0.var(s0.var) : c0.var(s0.a->name);
        std::vector<Cursor> zero, other;
        int other_kind = -1;
        for (Cursor& c : cs) {
          const int br = branch_of(c.step());
          if (br == 0) {
            zero.push_back(std::move(c));
            continue;
          }
          if (other_kind >= 0 && other_kind != br)
            fail("clauses " + std::to_string(other.front().clause) + " and " + std::to_string(c.clause) +
                 " split '" + v + "' in incompatible ways");
          other_kind = br;
          other.push_back(std::move(c));
        }
        node->var = v;
        node->t1 = t::var(v);
        node->t2 = t::zero();
        if (other_kind == 1 || other_kind == 2) {
          node->kind = other_kind == 1 ? RNode::Kind::Succ : RNode::Kind::Pair;
          const Step& so = other.front().step();
          node->w1 = canonical(so.w1, scope);
          scope.insert(node->w1);
          if (other_kind == 2) {
            node->w2 = canonical(so.w2, scope);
            scope.insert(node->w2);
          }
        } else {
          node->kind = RNode::Kind::Test;
          node->rel = Rel::Eq;
        }
        for (Cursor& c : zero) ++c.pos;
        for (Cursor& c : other) {
          const Step& s = c.step();
          if (s.kind == Step::Kind::Split) {
            c.ren[s.w1] = node->w1;
            if (s.split == RNode::Kind::Pair) c.ren[s.w2] = node->w2;
          }
          ++c.pos;
        }
        std::set<std::string> zero_scope = scope;
        zero_scope.erase(node->w1);
        zero_scope.erase(node->w2);
        node->kids.push_back(branch(std::move(zero), zero_scope, "'" + v + " = 0'"));
        node->kids.push_back(branch(std::move(other), scope, "'" + v + " != 0'"));
        return node;
      }
    }
    return node;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw RefinementError(def_.name + ": " + msg); }

  RNodePtr branch(std::vector<Cursor> cs, const std::set<std::string>& scope, const std::string& what) {
    if (!cs.empty()) return build(std::move(cs), scope);
    if (strict_) fail("non-exhaustive: no clause covers the case where " + what);
    auto d = std::make_shared<RNode>();
    d->kind = RNode::Kind::Default;
    return d;
  }

  static std::string canonical(const std::string& want, const std::set<std::string>& scope) {
    if (!scope.count(want)) return want;
    for (int i = 1;; ++i) {
      std::string s = want + "_" + std::to_string(i);
      if (!scope.count(s)) return s;
    }
  }

  static std::string describe(const RNode& n) {
    if (n.kind == RNode::Kind::Oracle) return print_term(n.t1) + " in X";
    return print_term(n.t1) + (n.rel == Rel::Eq ? " = " : " < ") + print_term(n.t2);
  }

  const ClausalDef& def_;
  bool strict_;
};

std::string join_clauses(const std::vector<std::size_t>& cs) {
  std::string out;
  for (std::size_t c : cs) {
    if (!out.empty()) out += ",";
    out += std::to_string(c);
  }
  return out;
}

void trace_into(const RNodePtr& n, std::vector<std::string>& out) {
  const std::string from = " [clauses " + join_clauses(n->clauses) + "]";
  auto line = [&](const std::string& rule, const std::string& body) {
    out.push_back("C" + std::to_string(out.size() + 1) + " " + rule + from + ": " + body);
  };
  switch (n->kind) {
    case RNode::Kind::Bind:
      line("rule 1", n->fn + "(" + print_term(n->t1) + ") = " + n->var);
      break;
    case RNode::Kind::Succ:
      line("rule 2", n->var + " = 0 | " + n->var + " = S(" + n->w1 + ")");
      break;
    case RNode::Kind::Pair:
      line("rule 3", n->var + " = 0 | " + n->var + " = (" + n->w1 + "," + n->w2 + ")");
      break;
    case RNode::Kind::Test: {
      const std::string a = print_term(n->t1) + (n->rel == Rel::Eq ? " = " : " < ") + print_term(n->t2);
      line("rule 4", a + " | !" + a);
      break;
    }
    case RNode::Kind::Oracle: {
      const std::string a = print_term(n->t1) + " in X";
      line("rule 4", a + " | !" + a);
      break;
    }
    case RNode::Kind::Result:
      out.push_back("C" + std::to_string(out.size() + 1) + " rule 5 [clause " + join_clauses(n->clauses) +
                    "]: y = " + print_term(n->t1));
      break;
    case RNode::Kind::Default:
      out.push_back("C" + std::to_string(out.size() + 1) + " default: y = 0");
      break;
  }
  for (const RNodePtr& k : n->kids) trace_into(k, out);
}

Refinement refine(const ClausalDef& def, bool strict) {
  if (def.clauses.empty()) throw RefinementError(def.name + ": no clauses");
  std::vector<Desugared> ds;
  for (std::size_t i = 1; i <= def.clauses.size(); ++i) ds.push_back(Desugarer(def, i).run());
  Refinement r;
  r.root_var = ds.front().root;
  std::vector<Cursor> cs;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    Cursor c;
    c.clause = i + 1;
    c.steps = &ds[i].steps;
    c.ren[ds[i].root] = r.root_var;
    cs.push_back(std::move(c));
  }
  r.root = Builder(def, strict).build(std::move(cs), {r.root_var});
  trace_into(r.root, r.trace);
  return r;
}

Literal rel_lit(TermPtr a, Rel rel, TermPtr b, bool negated) {
  Literal l;
  l.rel = rel;
  l.lhs = std::move(a);
  l.rhs = std::move(b);
  l.negated = negated;
  return l;
}

void strict_into(const std::string& name, const std::string& root, const RNodePtr& n,
                 std::vector<Literal>& path, std::vector<Clause>& out) {
  switch (n->kind) {
    case RNode::Kind::Result:
    case RNode::Kind::Default: {
      Clause c;
      c.ants = path;
      c.head = name;
      c.pattern = t::var(root);
      c.result = n->kind == RNode::Kind::Result ? n->t1 : t::zero();
      c.line = out.size() + 1;
      out.push_back(std::move(c));
      return;
    }
    case RNode::Kind::Bind:
      path.push_back(rel_lit(t::app(n->fn, n->t1), Rel::Eq, t::var(n->var), false));
      strict_into(name, root, n->kids[0], path, out);
      path.pop_back();
      return;
    case RNode::Kind::Succ:
    case RNode::Kind::Pair: {
      path.push_back(rel_lit(t::var(n->var), Rel::Eq, t::zero(), false));
      strict_into(name, root, n->kids[0], path, out);
      path.back().rhs = n->kind == RNode::Kind::Succ ? t::succ(t::var(n->w1))
                                                     : t::pair(t::var(n->w1), t::var(n->w2));
      strict_into(name, root, n->kids[1], path, out);
      path.pop_back();
      return;
    }
    case RNode::Kind::Test:
    case RNode::Kind::Oracle: {
      Literal l = rel_lit(n->t1, n->rel, n->t2, false);
      if (n->kind == RNode::Kind::Oracle) l.kind = Literal::Kind::Oracle;
      path.push_back(l);
      strict_into(name, root, n->kids[0], path, out);
      path.back().negated = true;
      strict_into(name, root, n->kids[1], path, out);
      path.pop_back();
      return;
    }
  }
}

}  // namespace

Refinement check_refinement(const ClausalDef& def) { return refine(def, true); }
Refinement refine_partial(const ClausalDef& def) { return refine(def, false); }

ClausalDef strict_from_tree(const std::string& name, const Refinement& r) {
  ClausalDef out;
  out.name = name;
  std::vector<Literal> path;
  strict_into(name, r.root_var, r.root, path, out.clauses);
  return out;
}

ClausalDef complete_to_strict(const ClausalDef& def) {
  ClausalDef out = strict_from_tree(def.name, refine_partial(def));
  out.measure = def.measure;
  return out;
}

// ---- restrictions ----------------------------------------------------------------

std::string RestrictionReport::line() const {
  std::string s = parameterized ? "parameterized" : "unparameterized";
  s += "; static:";
  for (const auto& c : static_calls) s += " " + c;
  s += "; dynamic:";
  for (const auto& c : dynamic_calls) s += " " + c;
  return s;
}

namespace {

struct RestrictionWalk {
  const ClausalDef& def;
  std::string root;
  std::string head, param;  // root split x = (head, param), if any
  bool enforce = false;
  bool ships_param = true;
  RestrictionReport report;

  [[noreturn]] void fail(const std::string& msg) const { throw RestrictionError(def.name + ": " + msg); }

  static bool is_var(const TermPtr& t, const std::set<std::string>& s) {
    return t->kind == Term::Kind::Var && s.count(t->name);
  }

  // below_x: split descendants of x (strictly smaller); below_head: of the head component.
  void walk(const RNodePtr& n, std::set<std::string> below_x, std::set<std::string> below_head) {
    switch (n->kind) {
      case RNode::Kind::Succ:
      case RNode::Kind::Pair: {
        const bool from_x = n->var == root || below_x.count(n->var);
        const bool from_head = (!head.empty() && n->var == head) || below_head.count(n->var);
        walk(n->kids[0], below_x, below_head);
        for (const std::string& w : {n->w1, n->w2}) {
          if (w.empty()) continue;
          if (from_x) below_x.insert(w);
          if (from_head) below_head.insert(w);
        }
        walk(n->kids[1], below_x, below_head);
        return;
      }
      case RNode::Kind::Bind: {
        const std::string call = n->fn + "(" + print_term(n->t1) + ")";
        if (n->fn == def.name) {
          const TermPtr& a = n->t1;
          if (enforce) {
            if (a->kind != Term::Kind::Pair || a->rhs->kind != Term::Kind::Var || a->rhs->name != param)
              fail("parameter '" + param + "' altered in recursive call " + call);
          } else if (!param.empty() && a->kind == Term::Kind::Pair && a->rhs->kind != Term::Kind::Var) {
            // without helpers only a visibly modified parameter is rejected
            std::set<std::string> used;
            collect_vars(a->rhs, used);
            if (used.count(param)) fail("parameter '" + param + "' altered in recursive call " + call);
          }
          if (a->kind != Term::Kind::Pair || a->rhs->kind != Term::Kind::Var || a->rhs->name != param)
            ships_param = false;
          const bool shrinks = is_var(a, below_x) ||
                               (a->kind == Term::Kind::Pair && !param.empty() && is_var(a->lhs, below_head) &&
                                a->rhs->kind == Term::Kind::Var && a->rhs->name == param);
          (shrinks ? report.static_calls : report.dynamic_calls).push_back(call);
        } else if (enforce) {
          const TermPtr& a = n->t1;
          const bool ok = (a->kind == Term::Kind::Var && a->name == param) ||
                          (a->kind == Term::Kind::Pair && a->rhs->kind == Term::Kind::Var && a->rhs->name == param);
          if (!ok) fail("helper call " + call + " must receive the parameter '" + param + "'");
        }
        for (const RNodePtr& k : n->kids) walk(k, below_x, below_head);
        return;
      }
      default:
        for (const RNodePtr& k : n->kids) walk(k, below_x, below_head);
    }
  }
};

bool calls_helpers(const RNodePtr& n, const std::string& self) {
  if (n->kind == RNode::Kind::Bind && n->fn != self) return true;
  for (const RNodePtr& k : n->kids)
    if (calls_helpers(k, self)) return true;
  return false;
}

}  // namespace

RestrictionReport check_recursive_restrictions(const ClausalDef& def) {
  if (def.measure && *def.measure != "I" && *def.measure != "id" && *def.measure != "identity")
    throw RestrictionError(def.name + ": non-identity measure '" + *def.measure +
                           "' requested; only the identity measure is supported");
  if (!def.recursive()) throw RestrictionError(def.name + ": not a recursive definition");
  const Refinement r = refine_partial(def);
  RestrictionWalk w{def, r.root_var, "", "", false, true, {}};
  if (r.root->kind == RNode::Kind::Pair && r.root->var == r.root_var) {
    w.head = r.root->w1;
    w.param = r.root->w2;
  }
  w.enforce = calls_helpers(r.root, def.name);
  if (w.enforce && w.param.empty())
    throw RestrictionError(def.name + ": a recursive definition calling helper functions must split its argument as (v,p) first");
  w.walk(r.root, {}, {});
  w.report.parameterized = !w.param.empty() && w.ships_param;
  return w.report;
}

}  // namespace funalg
