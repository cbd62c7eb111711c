#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <functional>
#include <sstream>

#include "funalg/codec.hpp"
#include "funalg/compile.hpp"
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

using Fn3 = std::function<Nat(const Nat&, const Nat&, const Nat&)>;

struct TermCase {
  const char* text;
  std::vector<std::string> ctx;
  Fn3 oracle;
};

Nat P(const Nat& a, const Nat& b) { return ref::pair(a, b); }

DerivEnv helpers() {
  DerivEnv env;
  env.emplace("dbl", compile_explicit(parse_cl("def dbl { dbl(x) = x + x; }")[0], {}));
  env.emplace("hd", compile_explicit(parse_cl("def hd { hd(0) = 0; hd((v,w)) = v; }")[0], {}));
  return env;
}

Nat encode(const std::vector<Nat>& vals) { return tuple(std::span<const Nat>(vals)); }

// every assignment of [0, 15] to the context
void for_grid(std::size_t k, const std::function<void(const std::vector<Nat>&)>& fn) {
  std::vector<Nat> vals(k, Nat{0});
  std::vector<unsigned> idx(k, 0);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) vals[i] = Nat{idx[i]};
    fn(vals);
    std::size_t i = 0;
    while (i < k && ++idx[i] == 16) idx[i++] = 0;
    if (i == k) return;
  }
}

Nat at(const std::vector<Nat>& v, std::size_t i) { return i < v.size() ? v[i] : Nat{0}; }

}  // namespace

TEST_CASE("term compiler examples") {
  CHECK(d_print(compile_term(parse_term("x"), {"x"})) == "I");
  CHECK(run(compile_term(parse_term("x"), {"x"}), 9) == Nat{9});
  CHECK(d_print(compile_term(parse_term("0"), {"x"})) == d_print(d::Z()));
  CHECK(run(compile_term(parse_term("0"), {"x"}), 7) == Nat{0});
  CHECK(d_print(compile_term(parse_term("x + x"), {"x"})) == "(comp add (P I I))");
  CHECK(run(compile_term(parse_term("x + x"), {"x"}), 3) == Nat{6});
  CHECK_THROWS_AS(compile_term(parse_term("q"), {"x"}), CompileError);
  CHECK_THROWS_AS(compile_term(parse_term("f(x)"), {"x"}), CompileError);
  for (unsigned k = 0; k < 300; k += 7) CHECK(run(constant(Nat{k}), 5) == Nat{k});
}

TEST_CASE("projections") {
  for (std::size_t n = 0; n < 5; ++n)
    for (std::size_t i = 0; i <= n; ++i) {
      std::vector<Nat> vals;
      for (std::size_t j = 0; j <= n; ++j) vals.push_back(Nat{10 + j});
      CHECK(run(project(i, n), encode(vals)) == vals[i]);
    }
}

TEST_CASE("term compiler soundness grid") {
  const DerivEnv env = helpers();
  const std::vector<TermCase> cases = {
      {"a", {"a"}, [](auto& a, auto&, auto&) { return a; }},
      {"0", {"a"}, [](auto&, auto&, auto&) { return Nat{0}; }},
      {"12", {"a"}, [](auto&, auto&, auto&) { return Nat{12}; }},
      {"S(a)", {"a"}, [](auto& a, auto&, auto&) { return a + Nat{1}; }},
      {"S(S(S(a)))", {"a"}, [](auto& a, auto&, auto&) { return a + Nat{3}; }},
      {"a + a", {"a"}, [](auto& a, auto&, auto&) { return a + a; }},
      {"a * a + 1", {"a"}, [](auto& a, auto&, auto&) { return a * a + Nat{1}; }},
      {"(a,a)", {"a"}, [](auto& a, auto&, auto&) { return P(a, a); }},
      {"dbl(S(a))", {"a"}, [](auto& a, auto&, auto&) { return Nat{2} * (a + Nat{1}); }},
      {"b", {"a", "b"}, [](auto&, auto& b, auto&) { return b; }},
      {"a + b", {"a", "b"}, [](auto& a, auto& b, auto&) { return a + b; }},
      {"a * b", {"a", "b"}, [](auto& a, auto& b, auto&) { return a * b; }},
      {"(b,a)", {"a", "b"}, [](auto& a, auto& b, auto&) { return P(b, a); }},
      {"(a,b) + 3", {"a", "b"}, [](auto& a, auto& b, auto&) { return P(a, b) + Nat{3}; }},
      {"hd((b,a))", {"a", "b"}, [](auto&, auto& b, auto&) { return b; }},
      {"dbl(a) * b", {"a", "b"}, [](auto& a, auto& b, auto&) { return Nat{2} * a * b; }},
      {"S(a * b + b)", {"a", "b"}, [](auto& a, auto& b, auto&) { return a * b + b + Nat{1}; }},
      {"c", {"a", "b", "c"}, [](auto&, auto&, auto& c) { return c; }},
      {"a + b + c", {"a", "b", "c"}, [](auto& a, auto& b, auto& c) { return a + b + c; }},
      {"(a,b,c)", {"a", "b", "c"}, [](auto& a, auto& b, auto& c) { return P(a, P(b, c)); }},
      {"a * c + b", {"a", "b", "c"}, [](auto& a, auto& b, auto& c) { return a * c + b; }},
      {"((c,b),a)", {"a", "b", "c"}, [](auto& a, auto& b, auto& c) { return P(P(c, b), a); }},
      {"dbl(c) + hd((b,c))", {"a", "b", "c"}, [](auto&, auto& b, auto& c) { return Nat{2} * c + b; }},
      {"S(0) * (a + c)", {"a", "b", "c"}, [](auto& a, auto&, auto& c) { return a + c; }},
  };
  CHECK(cases.size() >= 20);
  std::size_t checked = 0;
  for (const TermCase& tc : cases) {
    const Derivation d = compile_term(parse_term(tc.text), tc.ctx, env);
    CHECK(validate(d, AlgebraClass::DA));
    for_grid(tc.ctx.size(), [&](const std::vector<Nat>& v) {
      const Nat want = tc.oracle(at(v, 0), at(v, 1), at(v, 2));
      const Nat got = run(d, encode(v));
      if (got != want) FAIL_CHECK(tc.text << " at " << encode(v) << ": " << got << " != " << want);
      ++checked;
    });
  }
  CHECK(checked > 20000);
}

TEST_CASE("formula compiler examples") {
  const Derivation lt2 = compile_formula(parse_formula("x < S(S(0))"), {"x"});
  CHECK(run(lt2, 1) == Nat{1});
  CHECK(run(lt2, 2) == Nat{0});
  const Derivation contra = compile_formula(parse_formula("!x = x"), {"x"});
  for (unsigned x = 0; x <= 20; ++x) CHECK(run(contra, Nat{x}) == Nat{0});
  const Derivation even = compile_formula(parse_formula("exists z < x. z + z = x"), {"x"});
  CHECK(run(even, 6) == Nat{1});
  CHECK(run(even, 7) == Nat{0});
}

TEST_CASE("formula compiler soundness grid and 0-1 values") {
  const DerivEnv env = helpers();
  const std::set<unsigned> xs = {0, 3, 5, 8, 13};
  const Oracle o{FinSet{Nat{0}, Nat{3}, Nat{5}, Nat{8}, Nat{13}}};
  using Pred = std::function<bool(unsigned, unsigned, unsigned)>;
  struct FormulaCase {
    const char* text;
    std::vector<std::string> ctx;
    Pred oracle;
  };
  auto in = [&](unsigned v) { return xs.count(v) > 0; };
  const std::vector<FormulaCase> cases = {
      {"[exists z < a. z = 3] & a < 9", {"a"}, [](unsigned a, unsigned, unsigned) { return 3 < a && a < 9; }},
      {"a < 7", {"a"}, [](unsigned a, unsigned, unsigned) { return a < 7; }},
      {"a = 4", {"a"}, [](unsigned a, unsigned, unsigned) { return a == 4; }},
      {"a in X", {"a"}, [&](unsigned a, unsigned, unsigned) { return in(a); }},
      {"!a in X", {"a"}, [&](unsigned a, unsigned, unsigned) { return !in(a); }},
      {"a < b", {"a", "b"}, [](unsigned a, unsigned b, unsigned) { return a < b; }},
      {"a = b", {"a", "b"}, [](unsigned a, unsigned b, unsigned) { return a == b; }},
      {"a < b | b < a", {"a", "b"}, [](unsigned a, unsigned b, unsigned) { return a != b; }},
      {"a < b & b < c", {"a", "b", "c"}, [](unsigned a, unsigned b, unsigned c) { return a < b && b < c; }},
      {"!(a + b) = c", {"a", "b", "c"}, [](unsigned a, unsigned b, unsigned c) { return a + b != c; }},
      {"[a in X | b in X] & !c in X", {"a", "b", "c"},
       [&](unsigned a, unsigned b, unsigned c) { return (in(a) || in(b)) && !in(c); }},
      {"exists z < a. z * z = a", {"a"},
       [](unsigned a, unsigned, unsigned) {
         for (unsigned z = 0; z < a; ++z)
           if (z * z == a) return true;
         return false;
       }},
      {"exists z < S(a). z + b = a", {"a", "b"}, [](unsigned a, unsigned b, unsigned) { return b <= a; }},
      {"exists z < b. z in X & a < z", {"a", "b"},
       [&](unsigned a, unsigned b, unsigned) {
         for (unsigned z = 0; z < b; ++z)
           if (in(z) && a < z) return true;
         return false;
       }},
      {"exists z = dbl(a). z < b", {"a", "b"}, [](unsigned a, unsigned b, unsigned) { return 2 * a < b; }},
      {"exists z = hd((c,a)). z = b + 1", {"a", "b", "c"},
       [](unsigned, unsigned b, unsigned c) { return c == b + 1; }},
      {"!exists z < a. exists w < b. z * w = a & 1 < z", {"a", "b"},
       [](unsigned a, unsigned b, unsigned) {
         for (unsigned z = 2; z < a; ++z)
           for (unsigned w = 0; w < b; ++w)
             if (z * w == a) return false;
         return true;
       }},
  };
  for (const auto& fc : cases) {
    const FormulaPtr f = parse_formula(fc.text);
    CHECK(print_formula(parse_formula(print_formula(f))) == print_formula(f));
    const Derivation d = compile_formula(f, fc.ctx, env);
    CHECK(validate(d, AlgebraClass::DA));
    for_grid(fc.ctx.size(), [&](const std::vector<Nat>& v) {
      const unsigned a = static_cast<unsigned>(*at(v, 0).to_u64()), b = static_cast<unsigned>(*at(v, 1).to_u64()),
                     c = static_cast<unsigned>(*at(v, 2).to_u64());
      const Nat want{fc.oracle(a, b, c) ? 1u : 0u};
      const Nat got = eval(d, encode(v), o).value;
      if (got != want) FAIL_CHECK(fc.text << " at (" << a << "," << b << "," << c << "): " << got);
    });
    for (unsigned x = 0; x <= 500; ++x)
      if (eval(d, Nat{x}, o).value > Nat{1}) FAIL_CHECK(fc.text << " not 0-1 valued at " << x);
  }
}

TEST_CASE("explicit clause compiler on the corpus") {
  const auto defs = parse_cl(slurp("explicit.cl"));
  const Program prog(defs);
  const Oracle o{FinSet{Nat{1}, Nat{4}, Nat{9}, Nat{77}}};
  DerivEnv env;
  for (const ClausalDef& def : defs) {
    const Derivation d = compile_explicit(def, env);
    CHECK(validate(d, AlgebraClass::DA));
    for (unsigned x = 0; x <= 200; ++x)
      if (eval(d, Nat{x}, o).value != eval_clausal(prog, def.name, Nat{x}, o).value)
        FAIL_CHECK(def.name << " differs at " << x);
    env.emplace(def.name, d);
  }
  CHECK(run(env.at("id"), 100) == Nat{100});
  const auto rec = parse_cl(slurp("recursive.cl"));
  CHECK_THROWS_AS(compile_explicit(rec[0], {}), CompileError);
}

TEST_CASE("case analysis as a clausal definition") {
  const auto defs = parse_cl(slurp("explicit.cl"));
  const ClausalDef* dsel = nullptr;
  for (const auto& d : defs)
    if (d.name == "dsel") dsel = &d;
  REQUIRE(dsel);
  const Derivation d = compile_explicit(*dsel, {});
  for (unsigned v = 0; v <= 5; ++v)
    for (unsigned a = 0; a <= 5; ++a)
      for (unsigned b = 0; b <= 5; ++b) {
        const Nat x = tuple({Nat{v}, Nat{a}, Nat{b}});
        CHECK(run(d, x) == ref::eval(d::D(), x));
      }
  CHECK(run(d, pair(3, 0)) == Nat{0});
}

TEST_CASE("reduction to primitive recursion") {
  const auto defs = parse_cl(slurp("recursive.cl"));
  const Program prog(defs);
  const ReductionArtifacts nest = reduce_recursive_to_pr(defs[1], {});
  CHECK(nest.J == 2);
  CHECK(validate(nest.result, AlgebraClass::PRA));
  CHECK_NOTHROW(check_refinement(nest.h_def));
  CHECK(!nest.h_def.recursive());
  CHECK(!nest.f1_def.recursive());
  for (unsigned x = 0; x <= 6; ++x) CHECK(run(nest.result, Nat{x}) == eval_clausal(prog, "nest", Nat{x}).value);

  const ReductionArtifacts L = reduce_recursive_to_pr(defs[0], {});
  CHECK(L.J == 1);
  CHECK(run(L.result, 0) == Nat{0});
  std::vector<std::vector<Nat>> lists{{}};
  for (std::size_t i = 0; i < lists.size(); ++i)
    if (lists[i].size() < 3)
      for (unsigned e = 0; e <= 5; ++e) {
        lists.push_back(lists[i]);
        lists.back().push_back(Nat{e});
      }
  CHECK(lists.size() == 1 + 6 + 36 + 216);
  for (const auto& xs : lists) {
    const Nat x = list_encode(xs);
    const Nat got = run(L.result, x);
    if (got != Nat{xs.size()}) FAIL_CHECK("L at " << x << " gave " << got);
  }
  for (unsigned x = 0; x <= 6; ++x) CHECK(run(L.result, Nat{x}) == eval_clausal(prog, "L", Nat{x}).value);

  CHECK_THROWS_AS(reduce_recursive_to_pr(parse_cl("def zero { zero(x) = 0; }")[0], {}), CompileError);
}

TEST_CASE("stack stepper idles after the final answer") {
  const auto defs = parse_cl(slurp("recursive.cl"));
  const ReductionArtifacts L = reduce_recursive_to_pr(defs[0], {});
  DerivEnv inner;
  inner.emplace(L.h_def.name, compile_explicit(L.h_def, {}));
  inner.emplace(L.append_def.name, compile_explicit(L.append_def, {}));
  const Derivation f1 = compile_explicit(L.f1_def, inner);
  const Nat x = list_encode(std::vector<Nat>{Nat{2}, Nat{4}});
  Nat s = pair(pair(x, 0), 0);
  for (int i = 0; i < 20; ++i) s = run(f1, s);
  CHECK(run(f1, s) == s);
  CHECK(tail(s).is_zero());
  CHECK(tail(run(inner.at(L.h_def.name), head(s))) == Nat{2});
}

TEST_CASE("reduction to special nested recursion") {
  const auto defs = parse_cl(slurp("recursive.cl"));
  const Program prog(defs);
  SnrOptions opts;
  opts.program = &prog;
  const SnrArtifacts nest = reduce_bounded_nested_to_snr(defs[1], PolyBound::var(), {}, opts);
  CHECK(validate(nest.result, AlgebraClass::TA));
  for (unsigned x = 0; x <= 64; ++x) CHECK(eval_memo(nest.result, Nat{x}).value == Nat{0});

  const SnrArtifacts L = reduce_bounded_nested_to_snr(defs[0], PolyBound::var(), {}, opts);
  CHECK(validate(L.result, AlgebraClass::TA));
  for (unsigned x = 0; x <= 64; ++x)
    CHECK(eval_memo(L.result, Nat{x}).value == eval_clausal(prog, "L", Nat{x}).value);
  std::vector<std::vector<Nat>> lists{{}};
  for (std::size_t i = 0; i < lists.size(); ++i)
    if (lists[i].size() < 4)
      for (unsigned e = 0; e <= 7; ++e) {
        lists.push_back(lists[i]);
        lists.back().push_back(Nat{e});
      }
  for (std::size_t i = 0; i < lists.size(); i += 7) {
    const Nat got = eval_memo(L.result, list_encode(lists[i])).value;
    if (got != Nat{lists[i].size()}) FAIL_CHECK("L at list " << i << " gave " << got);
  }
}

TEST_CASE("special nested recursion with the complement encoding") {
  const auto defs = parse_cl(slurp("recursive.cl"));
  const Program prog(defs);
  SnrOptions opts;
  opts.program = &prog;
  opts.encoding = SnrEncoding::Complement;
  opts.validate_upto = 6;
  for (std::size_t i : {0u, 1u}) {
    const SnrArtifacts a = reduce_bounded_nested_to_snr(defs[i], PolyBound::var(), {}, opts);
    CHECK(validate(a.result, AlgebraClass::TA));
    for (unsigned x = 0; x <= 6; ++x)
      CHECK(eval_memo(a.result, Nat{x}).value == eval_clausal(prog, defs[i].name, Nat{x}).value);
  }
}

TEST_CASE("special nested recursion errors") {
  const auto defs = parse_cl(slurp("recursive.cl"));
  // L(x) <= 0 fails at the first list
  CHECK_THROWS(reduce_bounded_nested_to_snr(defs[0], PolyBound::constant(Nat{0}), {}));
  SnrOptions tight;
  tight.unroll_limit = 1;
  CHECK_THROWS_AS(reduce_bounded_nested_to_snr(defs[1], PolyBound::var(), {}, tight), CompileError);
}
