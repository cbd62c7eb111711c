#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <map>
#include <sstream>

#include "funalg/clausal.hpp"
#include "funalg/codec.hpp"
#include "funalg/errors.hpp"
#include "funalg/evaluator.hpp"
#include "funalg/reference.hpp"

using namespace funalg;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(FUNALG_CORPUS_DIR) + "/" + name);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::vector<std::string> kCorpus = {"explicit.cl", "recursive.cl", "relaxed.cl"};

std::string error_of(const std::string& text) {
  try {
    check_refinement(parse_cl(text).front());
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

// Test-side reading of strict clauses: patterns are matched, applications are
// answered by `call`, everything else is computed with reference pairing.
using Call = std::function<Nat(const std::string&, const Nat&)>;
using Env = std::map<std::string, Nat>;

bool bound_in(const TermPtr& t, const Env& env) {
  switch (t->kind) {
    case Term::Kind::Var: return env.count(t->name) > 0;
    case Term::Kind::Zero:
    case Term::Kind::Num: return true;
    case Term::Kind::Succ:
    case Term::Kind::App:
    case Term::Kind::Call: return bound_in(t->lhs, env);
    default: return bound_in(t->lhs, env) && bound_in(t->rhs, env);
  }
}

Nat value(const TermPtr& t, const Env& env, const Call& call) {
  switch (t->kind) {
    case Term::Kind::Zero: return Nat{0};
    case Term::Kind::Num: return t->num;
    case Term::Kind::Var: return env.at(t->name);
    case Term::Kind::Succ: return value(t->lhs, env, call) + Nat{1};
    case Term::Kind::Pair: return ref::pair(value(t->lhs, env, call), value(t->rhs, env, call));
    case Term::Kind::Add: return value(t->lhs, env, call) + value(t->rhs, env, call);
    case Term::Kind::Mul: return value(t->lhs, env, call) * value(t->rhs, env, call);
    case Term::Kind::App: return call(t->name, value(t->lhs, env, call));
    case Term::Kind::Call: FAIL("unexpected compiled call"); return Nat{0};
  }
  return Nat{0};
}

bool match(const TermPtr& pat, const Nat& v, Env& env) {
  switch (pat->kind) {
    case Term::Kind::Var:
      if (env.count(pat->name)) return env.at(pat->name) == v;
      env[pat->name] = v;
      return true;
    case Term::Kind::Zero: return v.is_zero();
    case Term::Kind::Succ: return !v.is_zero() && match(pat->lhs, v - Nat{1}, env);
    case Term::Kind::Pair: {
      if (v.is_zero()) return false;
      const auto [a, b] = ref::unpair(v);
      return match(pat->lhs, a, env) && match(pat->rhs, b, env);
    }
    default: FAIL("unexpected pattern"); return false;
  }
}

bool antecedent_holds(const Clause& c, const Nat& x, const Call& call, const std::set<Nat>& oracle) {
  Env env;
  if (!match(c.pattern, x, env)) return false;
  for (const Literal& l : c.ants) {
    bool holds = false;
    if (l.kind == Literal::Kind::Oracle) {
      holds = oracle.count(value(l.lhs, env, call)) > 0;
    } else if (l.rel == Rel::Eq && !l.negated && bound_in(l.lhs, env) && !bound_in(l.rhs, env)) {
      holds = match(l.rhs, value(l.lhs, env, call), env);
      if (!holds) return false;
      continue;
    } else {
      const Nat a = value(l.lhs, env, call), b = value(l.rhs, env, call);
      holds = l.rel == Rel::Eq ? a == b : a < b;
    }
    if (holds == l.negated) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("parse examples") {
  auto defs = parse_cl("def L { L(0) = 0; L((v,w)) = S(L(w)); }");
  REQUIRE(defs.size() == 1);
  CHECK(defs[0].recursive());
  CHECK(defs[0].name == "L");
  CHECK(!parse_cl("def zero { zero(x) = 0; }")[0].recursive());
  CHECK_THROWS_AS(parse_cl("def f { f(x) = g(x); }"), ParseError);
  try {
    parse_cl("def f {\n  f(0) = 0;\n  f((v,w)) = g(w);\n}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("undeclared function 'g'") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_cl("def f { f(0) = 0 }"), ParseError);
  CHECK_THROWS_AS(parse_cl(""), ParseError);
  // later definitions see earlier ones
  CHECK(parse_cl("def a { a(x) = x; } def b { b(x) = a(a(x)); }").size() == 2);
}

TEST_CASE("print is a fixpoint on the corpus") {
  std::size_t total = 0;
  for (const std::string& f : kCorpus) {
    const auto defs = parse_cl(slurp(f));
    total += defs.size();
    const std::string once = print_cl(defs);
    CHECK(print_cl(parse_cl(once)) == once);
  }
  CHECK(total >= 20);
}

TEST_CASE("refinement traces") {
  const auto L = parse_cl("def L { L(0) = 0; L((v,w)) = S(L(w)); }")[0];
  const Refinement r = check_refinement(L);
  REQUIRE(!r.trace.empty());
  CHECK(r.trace[0].find("rule 3") != std::string::npos);
  bool binds = false, results = false;
  for (const std::string& line : r.trace) {
    binds |= line.find("rule 1") != std::string::npos;
    results |= line.find("rule 5") != std::string::npos;
  }
  CHECK(binds);
  CHECK(results);

  CHECK(error_of("def f { f(0) = 0; }").find("non-exhaustive") != std::string::npos);
  CHECK(error_of("def f { f(0) = 0; f((y,w)) = w; }").find("reserved") != std::string::npos);
  CHECK(error_of("def f { f(0) = 0; f(0) = 1; f(S(u)) = u; }") != "");
  // splitting the same variable two ways is not a refinement
  CHECK(error_of("def f { f(0) = 0; f(S(u)) = u; f((a,b)) = a; }") != "");
  for (const std::string& f : {"explicit.cl", "recursive.cl"})
    for (const ClausalDef& d : parse_cl(slurp(f))) CHECK_NOTHROW(check_refinement(d));
}

TEST_CASE("recursive restrictions") {
  const auto L = parse_cl("def L { L(0) = 0; L((v,w)) = S(L(w)); }")[0];
  const RestrictionReport rl = check_recursive_restrictions(L);
  CHECK(rl.static_calls == std::vector<std::string>{"L(w)"});
  CHECK(rl.dynamic_calls.empty());

  const auto bad = parse_cl("def f { f(0) = 0; f((0,p)) = p; f((S(v),p)) = f((v,S(p))); }")[0];
  CHECK_THROWS_AS(check_recursive_restrictions(bad), RestrictionError);

  const auto self = parse_cl("def f { f(x) = f(x); }")[0];
  const RestrictionReport rs = check_recursive_restrictions(self);
  CHECK(rs.static_calls.empty());
  CHECK(rs.dynamic_calls.size() == 1);

  auto measured = parse_cl("def f measure size { f(0) = 0; f(S(u)) = f(u); }")[0];
  CHECK_THROWS_AS(check_recursive_restrictions(measured), RestrictionError);
  measured.measure = "I";
  CHECK_NOTHROW(check_recursive_restrictions(measured));

  // helpers force the (v, p) shape
  const auto helper = parse_cl("def g { g(x) = x; } def f { f(0) = 0; f(S(u)) = g(f(u)); }")[1];
  CHECK_THROWS_AS(check_recursive_restrictions(helper), RestrictionError);
  const auto bpr = parse_cl(slurp("relaxed.cl"))[2];
  REQUIRE(bpr.name == "bpr");
  CHECK(check_recursive_restrictions(bpr).parameterized);
}

TEST_CASE("completion to strict form") {
  const auto relaxed = parse_cl(slurp("relaxed.cl"));
  const ClausalDef bpr = complete_to_strict(relaxed[2]);
  CHECK(bpr.clauses.size() == 5);
  CHECK(print_cl(bpr).find("x = 0 -> bpr(x) = 0;") != std::string::npos);
  CHECK_NOTHROW(check_refinement(bpr));

  const ClausalDef pr = complete_to_strict(relaxed[3]);
  CHECK(pr.clauses.size() == 3);
  CHECK(print_cl(pr).find("x = 0 -> pr(x) = 0;") != std::string::npos);

  for (const std::string& f : kCorpus)
    for (const ClausalDef& d : parse_cl(slurp(f))) {
      const ClausalDef once = complete_to_strict(d);
      CHECK(print_cl(complete_to_strict(once)) == print_cl(once));
    }
}

TEST_CASE("eval_clausal examples") {
  const Program prog(parse_cl(slurp("recursive.cl")));
  CHECK(eval_clausal(prog, "L", pair(1, pair(2, 0))).value == Nat{2});
  CHECK(eval_clausal(prog, "L", Nat{0}).value == Nat{0});
  CHECK(eval_clausal(prog, "half", Nat{9}).value == Nat{4});
  CHECK(eval_clausal(prog, "last", list_encode(std::vector<Nat>{Nat{4}, Nat{7}})).value == Nat{7});

  const Program loop(parse_cl("def f { f(x) = f(x); }"));
  CHECK_THROWS_AS(eval_clausal(loop, "f", Nat{3}), MeasureViolation);

  const Program big(parse_cl("def f { f(0) = 0; f(S(u)) = S(f(u)); }"));
  Budget b;
  b.max_steps = 100;
  CHECK_THROWS_AS(eval_clausal(big, "f", Nat{1000}, {}, b), BudgetExceeded);
}

TEST_CASE("L agrees with list length") {
  const Program prog(parse_cl(slurp("recursive.cl")));
  std::vector<std::vector<Nat>> frontier{{}};
  std::size_t checked = 0;
  for (std::size_t len = 0; len <= 5; ++len) {
    std::vector<std::vector<Nat>> next;
    for (const auto& xs : frontier) {
      const Nat code = list_encode(xs);
      if (eval_clausal(prog, "L", code).value != Nat{xs.size()}) FAIL_CHECK("L wrong on length " << xs.size());
      ++checked;
      if (len < 5)
        for (unsigned e = 0; e <= 20; ++e) {
          next.push_back(xs);
          next.back().push_back(Nat{e});
        }
    }
    frontier = std::move(next);
  }
  CHECK(checked == 1 + 21 + 441 + 9261 + 194481 + 4084101);
}

TEST_CASE("strict PR form matches the PR operator") {
  const auto relaxed = parse_cl(slurp("relaxed.cl"));
  const Program prog(relaxed);
  const Derivation d = d::pr(d::I(), d::comp(d::S(), d::step_value()));
  for (unsigned w = 0; w <= 100; ++w) {
    const Nat x = ref::pair(Nat{w % 11}, Nat{w});
    CHECK(eval_clausal(prog, "pr", x).value == run(d, x));
    CHECK(eval_clausal(prog, "pr", Nat{w}).value == run(d, Nat{w}));
  }
}

TEST_CASE("exactly one clause applies") {
  const std::set<Nat> oracle = {Nat{1}, Nat{4}, Nat{9}};
  const Oracle o{FinSet{Nat{1}, Nat{4}, Nat{9}}};
  for (const std::string& f : kCorpus) {
    const Program prog(parse_cl(slurp(f)));
    const Call call = [&](const std::string& fn, const Nat& a) { return eval_clausal(prog, fn, a, o).value; };
    for (const ClausalDef& d : prog.defs()) {
      const ClausalDef strict = complete_to_strict(d);
      for (unsigned x = 0; x <= 500; ++x) {
        int applicable = 0;
        for (const Clause& c : strict.clauses) applicable += antecedent_holds(c, Nat{x}, call, oracle);
        if (applicable != 1) FAIL_CHECK(d.name << " at " << x << ": " << applicable << " clauses apply");
      }
    }
  }
}

TEST_CASE("explicit definitions that call helpers") {
  const Program prog(parse_cl(slurp("explicit.cl")));
  for (unsigned x = 0; x <= 50; ++x) {
    CHECK(eval_clausal(prog, "quad", Nat{x}).value == Nat{4 * x});
    CHECK(eval_clausal(prog, "poly", Nat{x}).value == Nat{x * x + 2 * x + 1});
  }
  const Oracle o{FinSet{Nat{3}}};
  CHECK(eval_clausal(prog, "inx", Nat{3}, o).value == Nat{1});
  CHECK(eval_clausal(prog, "inx", Nat{2}, o).value == Nat{0});
}
