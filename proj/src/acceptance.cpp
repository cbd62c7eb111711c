#include <chrono>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "funalg/acceptance.hpp"
#include "funalg/clausal.hpp"
#include "funalg/codec.hpp"
#include "funalg/compile.hpp"
#include "funalg/enumeration.hpp"
#include "funalg/errors.hpp"
#include "funalg/evaluator.hpp"
#include "funalg/harness.hpp"
#include "funalg/poly_bound.hpp"
#include "funalg/reference.hpp"

namespace funalg {

std::string CriterionResult::line() const {
  std::string s = "criterion " + std::to_string(id) + (pass ? " PASS: " : " FAIL: ") + title;
  if (!detail.empty()) s += " (" + detail + ")";
  return s;
}

namespace {

struct Failure {
  std::string what;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

std::string slurp(const AcceptanceOptions& o, const std::string& name) {
  const std::string path = o.corpus_dir + "/" + name;
  std::ifstream in(path);
  if (!in) throw Failure{"cannot read " + path};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Nat N(std::uint64_t v) { return Nat{v}; }

std::string c1_pairing() {
  for (std::uint64_t z = 1; z <= 10000; ++z) {
    const auto [x, y] = unpair(N(z));
    require(std::make_pair(x, y) == ref::unpair(N(z)), "unpair differs from the reference at " + std::to_string(z));
    require(pair(x, y) == N(z), "pair(unpair(z)) != z at " + std::to_string(z));
    require(head(N(z)) < N(z) && tail(N(z)) < N(z), "head/tail not below z at " + std::to_string(z));
  }
  for (std::uint64_t x = 0; x <= 80; ++x)
    for (std::uint64_t y = 0; y <= 80; ++y) {
      const Nat z = pair(N(x), N(y));
      require(z == ref::pair(N(x), N(y)), "pair differs from the reference");
      require(unpair(z) == std::make_pair(N(x), N(y)), "unpair(pair(x,y)) != (x,y)");
    }
  require(head(N(0)).is_zero() && tail(N(0)).is_zero(), "head(0), tail(0) not 0");
  return "z in [1,10^4], x,y <= 80";
}

std::string c2_sequences() {
  std::size_t n = 0;
  for (std::size_t len = 0; len <= 12; ++len)
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << len); ++bits) {
      std::vector<bool> v(len);
      std::uint64_t code = 1;
      for (std::size_t i = 0; i < len; ++i) {
        v[i] = (bits >> (len - 1 - i)) & 1;
        code = 2 * code + (v[i] ? 1 : 0);
      }
      require(seq_encode(v) == N(code), "encoding differs from the marker-bit oracle");
      require(seq_decode(N(code)) == v, "decode(encode(s)) != s");
      require(seq_len(N(code)) == N(len), "seq_len wrong");
      ++n;
    }
  require(seq_len(N(1)) == N(0), "seq_len(1) != 0");
  require(seq_len(N(20)) == N(4), "seq_len(20) != 4");
  for (std::size_t i = 0; i <= 20; ++i) {
    require(seq_encode(std::vector<bool>(i, false)) == Nat::pow2(i), "0^i");
    require(seq_encode(std::vector<bool>(i, true)) == Nat::pow2(i + 1) - N(1), "1^i");
  }
  return std::to_string(n) + " bit-vectors";
}

using Fn3 = std::function<Nat(const Nat&, const Nat&, const Nat&)>;

DerivEnv helper_env() {
  DerivEnv env;
  env.emplace("dbl", compile_explicit(parse_cl("def dbl { dbl(x) = x + x; }")[0], {}));
  env.emplace("hd", compile_explicit(parse_cl("def hd { hd(0) = 0; hd((v,w)) = v; }")[0], {}));
  return env;
}

void grid(std::size_t k, const std::function<void(const std::vector<Nat>&)>& fn) {
  std::vector<unsigned> idx(k, 0);
  while (true) {
    std::vector<Nat> v;
    for (unsigned i : idx) v.push_back(N(i));
    fn(v);
    std::size_t i = 0;
    while (i < k && ++idx[i] == 16) idx[i++] = 0;
    if (i == k) return;
  }
}

Nat at(const std::vector<Nat>& v, std::size_t i) { return i < v.size() ? v[i] : N(0); }

std::string c3_terms() {
  const DerivEnv env = helper_env();
  const auto P = [](const Nat& a, const Nat& b) { return ref::pair(a, b); };
  const std::vector<std::string> A{"a"}, AB{"a", "b"}, ABC{"a", "b", "c"};
  const std::vector<std::tuple<std::string, std::vector<std::string>, Fn3>> cases = {
      {"a", A, [](auto& a, auto&, auto&) { return a; }},
      {"0", A, [](auto&, auto&, auto&) { return N(0); }},
      {"21", A, [](auto&, auto&, auto&) { return N(21); }},
      {"S(S(a))", A, [](auto& a, auto&, auto&) { return a + N(2); }},
      {"a * a * a", A, [](auto& a, auto&, auto&) { return a * a * a; }},
      {"(a,S(a))", A, [&](auto& a, auto&, auto&) { return P(a, a + N(1)); }},
      {"dbl(a) + 1", A, [](auto& a, auto&, auto&) { return N(2) * a + N(1); }},
      {"hd((a,0)) * 3", A, [](auto& a, auto&, auto&) { return N(3) * a; }},
      {"b", AB, [](auto&, auto& b, auto&) { return b; }},
      {"a + b * a", AB, [](auto& a, auto& b, auto&) { return a + b * a; }},
      {"(a,b)", AB, [&](auto& a, auto& b, auto&) { return P(a, b); }},
      {"(b,(a,0))", AB, [&](auto& a, auto& b, auto&) { return P(b, P(a, N(0))); }},
      {"S((a,b))", AB, [&](auto& a, auto& b, auto&) { return P(a, b) + N(1); }},
      {"dbl(a * b)", AB, [](auto& a, auto& b, auto&) { return N(2) * a * b; }},
      {"hd((b,a)) + a", AB, [](auto& a, auto& b, auto&) { return a + b; }},
      {"c", ABC, [](auto&, auto&, auto& c) { return c; }},
      {"a + b + c", ABC, [](auto& a, auto& b, auto& c) { return a + b + c; }},
      {"(a,b,c)", ABC, [&](auto& a, auto& b, auto& c) { return P(a, P(b, c)); }},
      {"(c,b) * a", ABC, [&](auto& a, auto& b, auto& c) { return P(c, b) * a; }},
      {"a * b + c * c", ABC, [](auto& a, auto& b, auto& c) { return a * b + c * c; }},
      {"dbl(hd((c,a))) + b", ABC, [](auto&, auto& b, auto& c) { return N(2) * c + b; }},
      {"S(c) * S(S(b))", ABC, [](auto&, auto& b, auto& c) { return (c + N(1)) * (b + N(2)); }},
  };
  std::size_t points = 0;
  for (const auto& [text, ctx, oracle] : cases) {
    const Derivation d = compile_term(parse_term(text), ctx, env);
    require(validate(d, AlgebraClass::DA), text + " left the DA class");
    grid(ctx.size(), [&](const std::vector<Nat>& v) {
      const Nat got = run(d, tuple(std::span<const Nat>(v)));
      require(got == oracle(at(v, 0), at(v, 1), at(v, 2)), text + " wrong on the grid");
      ++points;
    });
  }
  return std::to_string(cases.size()) + " terms, " + std::to_string(points) + " points";
}

std::string c4_formulas() {
  const DerivEnv env = helper_env();
  const std::set<std::uint64_t> X = {1, 2, 7, 11};
  const Oracle o{FinSet{N(1), N(2), N(7), N(11)}};
  auto in = [&](std::uint64_t v) { return X.count(v) > 0; };
  using Pred = std::function<bool(std::uint64_t, std::uint64_t, std::uint64_t)>;
  const std::vector<std::string> A{"a"}, AB{"a", "b"}, ABC{"a", "b", "c"};
  const std::vector<std::tuple<std::string, std::vector<std::string>, Pred>> cases = {
      {"a < 5", A, [](auto a, auto, auto) { return a < 5; }},
      {"a = b", AB, [](auto a, auto b, auto) { return a == b; }},
      {"a * a = b + 4", AB, [](auto a, auto b, auto) { return a * a == b + 4; }},
      {"a in X", A, [&](auto a, auto, auto) { return in(a); }},
      {"!a < b", AB, [](auto a, auto b, auto) { return !(a < b); }},
      {"a in X | b < c", ABC, [&](auto a, auto b, auto c) { return in(a) || b < c; }},
      {"a < b & !c in X", ABC, [&](auto a, auto b, auto c) { return a < b && !in(c); }},
      {"exists z < a. z + z = a", A,
       [](auto a, auto, auto) {
         for (std::uint64_t z = 0; z < a; ++z)
           if (z + z == a) return true;
         return false;
       }},
      {"exists z < a + b. z in X & c < z", ABC,
       [&](auto a, auto b, auto c) {
         for (std::uint64_t z = 0; z < a + b; ++z)
           if (in(z) && c < z) return true;
         return false;
       }},
      {"!exists z < S(b). z * a = b", AB,
       [](auto a, auto b, auto) {
         for (std::uint64_t z = 0; z <= b; ++z)
           if (z * a == b) return false;
         return true;
       }},
      {"exists z = dbl(a). z < b | z = c", ABC, [](auto a, auto b, auto c) { return 2 * a < b || 2 * a == c; }},
      {"exists z = hd((b,a)). z in X", AB, [&](auto, auto b, auto) { return in(b); }},
  };
  std::size_t points = 0;
  for (const auto& [text, ctx, oracle] : cases) {
    const Derivation d = compile_formula(parse_formula(text), ctx, env);
    require(validate(d, AlgebraClass::DA), text + " left the DA class");
    grid(ctx.size(), [&](const std::vector<Nat>& v) {
      const Nat got = eval(d, tuple(std::span<const Nat>(v)), o).value;
      const bool want = oracle(*at(v, 0).to_u64(), *at(v, 1).to_u64(), *at(v, 2).to_u64());
      require(got == N(want ? 1 : 0), text + " wrong on the grid");
      ++points;
    });
    for (std::uint64_t x = 0; x <= 500; ++x) require(!(N(1) < eval(d, N(x), o).value), text + " not 0-1 valued");
  }
  return std::to_string(cases.size()) + " formulas, " + std::to_string(points) + " points";
}

std::string c5_mu() {
  std::mt19937_64 rng(5);
  std::size_t tested = 0, skipped = 0;
  Budget b;
  b.max_steps = 200'000;
  while (tested < 50) {
    const Derivation g = ref::random_derivation(rng, AlgebraClass::DA, 1 + int(rng() % 3));
    const Derivation m = d::mu(g);
    const std::uint64_t p = rng() % 20;
    try {
      for (std::uint64_t bound = 0; bound <= 50; ++bound) {
        Nat want = N(bound);
        for (std::uint64_t z = 0; z < bound; ++z)
          if (ref::eval(g, ref::pair(N(z), N(p)), {}, 200'000) == N(1)) {
            want = N(z);
            break;
          }
        require(eval(m, pair(N(bound), N(p)), {}, b).value == want, "mu(" + d_print(g) + ") differs");
      }
      ++tested;
    } catch (const ref::TooExpensive&) {
      ++skipped;
    } catch (const BudgetExceeded&) {
      ++skipped;
    }
  }
  return "50 derivations, bounds 0..50, " + std::to_string(skipped) + " too costly and redrawn";
}

std::string c6_explicit(const AcceptanceOptions& opts) {
  const auto defs = parse_cl(slurp(opts, "explicit.cl"));
  const Program prog(defs);
  const Oracle o{FinSet{N(1), N(4), N(9), N(77)}};
  DerivEnv env;
  for (const ClausalDef& def : defs) {
    const Derivation d = compile_explicit(def, env);
    for (std::uint64_t x = 0; x <= 200; ++x)
      require(eval(d, N(x), o).value == eval_clausal(prog, def.name, N(x), o).value, def.name + " differs");
    env.emplace(def.name, d);
  }
  return std::to_string(defs.size()) + " definitions on [0,200]";
}

std::vector<std::vector<Nat>> small_lists(std::size_t max_len, std::uint64_t max_elem) {
  std::vector<std::vector<Nat>> lists{{}};
  for (std::size_t i = 0; i < lists.size(); ++i)
    if (lists[i].size() < max_len)
      for (std::uint64_t e = 0; e <= max_elem; ++e) {
        lists.push_back(lists[i]);
        lists.back().push_back(N(e));
      }
  return lists;
}

const ClausalDef& find_def(const std::vector<ClausalDef>& defs, const std::string& name) {
  for (const ClausalDef& d : defs)
    if (d.name == name) return d;
  throw Failure{"corpus lacks " + name};
}

std::string c7_pr(const AcceptanceOptions& opts) {
  const auto defs = parse_cl(slurp(opts, "recursive.cl"));
  const Program prog(defs);
  const ReductionArtifacts nest = reduce_recursive_to_pr(find_def(defs, "nest"), {});
  const ReductionArtifacts L = reduce_recursive_to_pr(find_def(defs, "L"), {});
  require(validate(nest.result, AlgebraClass::PRA) && validate(L.result, AlgebraClass::PRA), "not PRA");
  for (std::uint64_t x = 0; x <= 6; ++x) {
    require(run(nest.result, N(x)) == eval_clausal(prog, "nest", N(x)).value, "nest differs");
    require(run(L.result, N(x)) == eval_clausal(prog, "L", N(x)).value, "L differs on unary input");
  }
  const auto lists = small_lists(3, 5);
  for (const auto& xs : lists) {
    const Nat x = list_encode(xs);
    require(run(L.result, x) == eval_clausal(prog, "L", x).value, "L differs on a list");
  }
  return "nest J=2 on x<=6, L on " + std::to_string(lists.size()) + " lists";
}

std::string c8_snr(const AcceptanceOptions& opts) {
  const auto defs = parse_cl(slurp(opts, "recursive.cl"));
  const Program prog(defs);
  SnrOptions so;
  so.program = &prog;
  for (const std::string name : {"L", "nest"}) {
    const SnrArtifacts a = reduce_bounded_nested_to_snr(find_def(defs, name), PolyBound::var(), {}, so);
    require(validate(a.result, AlgebraClass::TA), name + " not TA");
    for (std::uint64_t x = 0; x <= 64; ++x)
      require(eval_memo(a.result, N(x)).value == eval_clausal(prog, name, N(x)).value, name + " differs");
  }
  return "L and nest, bound n, x <= 64";
}

std::string c9_course_of_values(const AcceptanceOptions& opts) {
  const auto defs = parse_cl(slurp(opts, "recursive.cl"));
  const Program prog(defs);
  SnrOptions so;
  so.program = &prog;
  std::vector<Derivation> ds{pred::degenerate_snr()};
  for (const std::string name : {"L", "nest"})
    ds.push_back(reduce_bounded_nested_to_snr(find_def(defs, name), PolyBound::var(), {}, so).result);
  EvalOptions eo;
  eo.memoize = true;
  eo.track_snr = true;
  std::size_t runs = 0;
  std::uint64_t worst = 0;
  for (const Derivation& d : ds)
    for (std::uint64_t x = 0; x <= 64; ++x) {
      const EvalReport r = evaluate(d, N(x), {}, {}, eo);
      for (const SnrExpansion& e : r.snr) {
        require(!(e.max_v + N(1) < N(e.distinct)), "more than v+1 expansions at x=" + std::to_string(x));
        worst = std::max(worst, e.distinct);
      }
      ++runs;
    }
  return std::to_string(runs) + " runs, at most " + std::to_string(worst) + " expansions";
}

std::string c10_poly_bounds() {
  std::mt19937_64 rng(10);
  Budget b;
  b.max_steps = 100'000;
  b.max_bits = 20'000;
  EvalOptions eo;
  eo.memoize = true;
  std::size_t kept = 0, dropped = 0;
  for (AlgebraClass c : {AlgebraClass::DA, AlgebraClass::SA, AlgebraClass::TA}) {
    std::size_t here = 0;
    while (here < 70) {
      const Derivation d = ref::random_derivation(rng, c, 1 + int(rng() % 4));
      const PolyBound bound = poly_bound(d);
      try {
        for (std::uint64_t x = 0; x <= 1000; ++x) {
          const Nat v = evaluate(d, N(x), {}, b, eo).value;
          require(!(bound(N(x)) < v), d_print(d) + " exceeds " + bound.to_string() + " at " + std::to_string(x));
        }
        ++here;
      } catch (const BudgetExceeded&) {
        ++dropped;
      }
    }
    kept += here;
  }
  return std::to_string(kept) + " derivations on [0,1000], " + std::to_string(dropped) + " over budget and redrawn";
}

std::string c11_enumeration() {
  std::mt19937_64 rng(11);
  std::size_t n = 0;
  for (AlgebraClass c : {AlgebraClass::DA, AlgebraClass::SA, AlgebraClass::TA, AlgebraClass::PRA}) {
    Enumeration e(c);
    for (int i = 0; i < 125; ++i, ++n) {
      const Derivation d = ref::random_derivation(rng, c, int(rng() % 4));
      const Nat idx = e.index_of(d);
      require(e.at(idx) == d, "derivation_at(index_of(d)) != d for " + d_print(d));
      for (const Derivation& ch : d.children()) require(e.index_of(ch) < idx, "child index not below parent");
    }
  }
  return std::to_string(n) + " derivations";
}

std::string c12_harness() {
  const Derivation parity = pred::parity();
  for (std::uint64_t x = 0; x <= 256; ++x)
    require(char_run(parity, CharMode::Zero, N(x)).accepted == (x % 2 == 0), "parity wrong at " + std::to_string(x));

  const Derivation scan = pred::consecutive_members();
  std::mt19937_64 rng(12);
  for (int t = 0; t < 100; ++t) {
    std::vector<Nat> xs;
    std::set<std::uint64_t> raw;
    const std::size_t k = rng() % 12;
    for (std::size_t i = 0; i < k; ++i) raw.insert(rng() % 64);
    for (auto v : raw) xs.push_back(N(v));
    bool want = false;
    for (auto v : raw) want |= raw.count(v + 1) > 0;
    const FinSet s(xs);
    require(char_run(scan, CharMode::One, s).accepted == want, "membership scan wrong");
    const std::uint64_t probe = rng() % 64;
    require(char_run(pred::member(N(probe)), CharMode::One, s).accepted == (raw.count(probe) > 0),
            "membership wrong");
  }
  const ScalingReport rep = scaling_study(scan, CharMode::One, {8, 16, 32, 64}, 3, 12);
  require(!rep.truncated, "scaling study ran out of budget");
  require(rep.fitted_exponent <= 2.0, "fitted exponent " + std::to_string(rep.fitted_exponent));
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", rep.fitted_exponent);
  return std::string("parity on [0,256], 100 sets, fitted exponent ") + buf;
}

const char* title_of(int id) {
  switch (id) {
    case 1: return "pairing calculus";
    case 2: return "sequence codec";
    case 3: return "term compiler";
    case 4: return "formula compiler";
    case 5: return "bounded minimization";
    case 6: return "explicit clause compiler";
    case 7: return "recursion to primitive recursion";
    case 8: return "bounded nested recursion to SNR";
    case 9: return "course-of-values expansions";
    case 10: return "polynomial boundedness";
    case 11: return "enumeration";
    case 12: return "characterization harness";
    default: return "unknown";
  }
}

}  // namespace

CriterionResult run_criterion(int id, const AcceptanceOptions& opts) {
  CriterionResult r;
  r.id = id;
  r.title = title_of(id);
  const auto start = std::chrono::steady_clock::now();
  try {
    switch (id) {
      case 1: r.detail = c1_pairing(); break;
      case 2: r.detail = c2_sequences(); break;
      case 3: r.detail = c3_terms(); break;
      case 4: r.detail = c4_formulas(); break;
      case 5: r.detail = c5_mu(); break;
      case 6: r.detail = c6_explicit(opts); break;
      case 7: r.detail = c7_pr(opts); break;
      case 8: r.detail = c8_snr(opts); break;
      case 9: r.detail = c9_course_of_values(opts); break;
      case 10: r.detail = c10_poly_bounds(); break;
      case 11: r.detail = c11_enumeration(); break;
      case 12: r.detail = c12_harness(); break;
      default: throw Failure{"no such criterion"};
    }
    r.pass = true;
  } catch (const Failure& f) {
    r.detail = f.what;
  } catch (const std::exception& e) {
    r.detail = std::string("error: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1fs", secs);
  r.detail += (r.detail.empty() ? "" : ", ") + std::string(buf);
  return r;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts) {
  std::vector<int> ids = opts.only;
  if (ids.empty())
    for (int i = 1; i <= 12; ++i) ids.push_back(i);
  std::vector<CriterionResult> out;
  for (int id : ids) out.push_back(run_criterion(id, opts));
  return out;
}

}  // namespace funalg
