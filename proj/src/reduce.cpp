#include <algorithm>

#include "funalg/compile.hpp"
#include "funalg/errors.hpp"

namespace funalg {

namespace {

void names_in(const RNodePtr& n, std::set<std::string>& out) {
  for (const std::string& s : {n->var, n->w1, n->w2})
    if (!s.empty()) out.insert(s);
  collect_vars(n->t1, out);
  collect_vars(n->t2, out);
  for (const RNodePtr& k : n->kids) names_in(k, out);
}

std::string fresh(const std::string& base, std::set<std::string>& used) {
  std::string s = base;
  for (int i = 1; used.count(s); ++i) s = base + std::to_string(i);
  used.insert(s);
  return s;
}

std::size_t max_self_calls(const RNodePtr& n, const std::string& self) {
  std::size_t best = 0;
  for (const RNodePtr& k : n->kids) best = std::max(best, max_self_calls(k, self));
  return best + (n->kind == RNode::Kind::Bind && n->fn == self ? 1 : 0);
}

// Dispatcher steps: the i-th recursive call f(t) = z becomes a split of the
// list c_i of results so far. An empty list answers (0, t), asking for f(t);
// otherwise c_i = (z, c_{i+1}) supplies the value. A result t answers (1, t).
RNodePtr to_dispatcher(const RNodePtr& n, const std::string& self, const std::string& list,
                       std::set<std::string>& used) {
  auto out = std::make_shared<RNode>(*n);
  switch (n->kind) {
    case RNode::Kind::Result:
      out->t1 = t::pair(t::num(Nat{1}), n->t1);
      return out;
    case RNode::Kind::Default:
      out->kind = RNode::Kind::Result;
      out->t1 = t::pair(t::num(Nat{1}), t::zero());
      return out;
    case RNode::Kind::Bind:
      if (n->fn == self) {
        auto ask = std::make_shared<RNode>();
        ask->kind = RNode::Kind::Result;
        ask->t1 = t::pair(t::zero(), n->t1);
        out->kind = RNode::Kind::Pair;
        out->fn.clear();
        out->t1 = nullptr;
        out->var = list;
        out->w1 = n->var;
        out->w2 = fresh("c", used);
        out->kids = {ask, to_dispatcher(n->kids[0], self, out->w2, used)};
        return out;
      }
      [[fallthrough]];
    default:
      out->kids.clear();
      for (const RNodePtr& k : n->kids) out->kids.push_back(to_dispatcher(k, self, list, used));
      return out;
  }
}

ClausalDef dispatcher_def(const ClausalDef& def, std::size_t& J) {
  const Refinement r = refine_partial(def);
  J = max_self_calls(r.root, def.name);
  if (J == 0) throw CompileError(def.name + " makes no recursive call");
  std::set<std::string> used;
  names_in(r.root, used);
  used.insert(r.root_var);
  Refinement h;
  h.root_var = fresh("a", used);
  const std::string c0 = fresh("c", used);
  auto root = std::make_shared<RNode>();
  root->kind = RNode::Kind::Pair;
  root->var = h.root_var;
  root->w1 = r.root_var;
  root->w2 = c0;
  auto zero = std::make_shared<RNode>();
  zero->kind = RNode::Kind::Result;
  zero->t1 = t::zero();
  root->kids = {zero, to_dispatcher(r.root, def.name, c0, used)};
  h.root = root;
  return strict_from_tree(def.name + "_h", h);
}

std::string tuple_text(const std::vector<std::string>& xs) {
  if (xs.size() == 1) return xs.front();
  std::string s = "(";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + xs[i];
  return s + ")";
}

ClausalDef parse_one(const std::string& text, const std::set<std::string>& known) {
  return parse_cl(text, known).front();
}

// append((d, e)) = d followed by the elements of e, for lists d with fewer than J elements
ClausalDef append_def(const std::string& name, std::size_t J) {
  std::string text = "def " + name + " {\n  " + name + "((0,e)) = e;\n";
  for (std::size_t k = 1; k < J; ++k) {
    std::vector<std::string> elems;
    for (std::size_t i = 1; i <= k; ++i) elems.push_back("a" + std::to_string(i));
    std::vector<std::string> pat = elems, res = elems;
    pat.push_back("0");
    res.push_back("e");
    text += "  " + name + "((" + tuple_text(pat) + ",e)) = " + tuple_text(res) + ";\n";
  }
  return parse_one(text + "}\n", {});
}

// bounded concatenation: bcat(((d, e), m)) = d followed by e when that code is at most m, else 0
ClausalDef bounded_cat_def(std::size_t J) {
  std::string text = "def bcat {\n  bcat(((0,e),m)) = e;\n";
  for (std::size_t k = 1; k < J; ++k) {
    std::vector<std::string> elems;
    for (std::size_t i = 1; i <= k; ++i) elems.push_back("a" + std::to_string(i));
    std::vector<std::string> pat = elems, res = elems;
    pat.push_back("0");
    res.push_back("e");
    const std::string r = tuple_text(res);
    text += "  " + r + " < S(m) -> bcat(((" + tuple_text(pat) + ",e),m)) = " + r + ";\n";
  }
  return parse_one(text + "}\n", {});
}

std::string stepper_text(const std::string& name, const std::string& h, const std::string& app) {
  const std::string head = name + "(((x,c),s))";
  const std::string top = h + "((x,c)) = r";
  std::string t = "def " + name + " {\n";
  t += "  " + name + "(0) = 0;\n";
  t += "  " + name + "((0,s)) = (0,s);\n";
  t += "  " + top + " & r = 0 -> " + head + " = ((x,c),s);\n";
  t += "  " + top + " & r = (g,z) & g = 0 -> " + head + " = ((z,0),((x,c),s));\n";
  t += "  " + top + " & r = (g,z) & g = (t1,t2) & s = 0 -> " + head + " = ((x,c),s);\n";
  t += "  " + top + " & r = (g,z) & g = (t1,t2) & s = (e,s1) & e = 0 -> " + head + " = ((x,c),s);\n";
  t += "  " + top + " & r = (g,z) & g = (t1,t2) & s = (e,s1) & e = (w,d) & " + app +
       "((d,(z,0))) = d1 -> " + head + " = ((w,d1),s1);\n";
  return t + "}\n";
}

// a(x) = 1 + J + ... + J^x; the stack machine needs at most 2 a(x) steps
Derivation call_count_bound(std::size_t J) {
  if (J == 1) return d::S();
  const Derivation step = d::comp(d::S(), d::comp(d::mul(), d::P(d::step_value(), constant(Nat{J}))));
  return d::comp(d::pr(constant(Nat{1}), step), d::P(d::I(), d::Z()));
}

}  // namespace

std::string ReductionArtifacts::text() const {
  return "# dispatcher\n" + print_cl(h_def) + "\n# append\n" + print_cl(append_def) + "\n# stack stepper\n" +
         print_cl(f1_def) + "\nJ = " + std::to_string(J) + "\nmu(x) = " + mu_desc + "\nresult = " +
         d_print(result) + "\n";
}

ReductionArtifacts reduce_recursive_to_pr(const ClausalDef& def, const DerivEnv& env) {
  if (!def.recursive()) throw CompileError(def.name + " is not recursive");
  check_recursive_restrictions(def);
  ReductionArtifacts a;
  a.h_def = dispatcher_def(def, a.J);
  const std::string app = def.name + "_append";
  const std::string f1 = def.name + "_f1";
  a.append_def = append_def(app, a.J);
  a.f1_def = parse_one(stepper_text(f1, a.h_def.name, app), {a.h_def.name, app});

  DerivEnv inner = env;
  inner.insert_or_assign(a.h_def.name, compile_explicit(a.h_def, env));
  inner.insert_or_assign(app, compile_explicit(a.append_def, env));
  const Derivation f1_d = compile_explicit(a.f1_def, inner);

  const Derivation half = call_count_bound(a.J);
  const Derivation mu = d::comp(d::add(), d::P(half, half));
  a.mu_desc = a.J == 1 ? "2*(x+1)"
                       : "2*(1 + " + std::to_string(a.J) + " + ... + " + std::to_string(a.J) + "^x)";
  const Derivation iterate = d::pr(d::I(), d::comp(f1_d, d::step_value()));
  const Derivation start = d::P(d::P(d::I(), d::Z()), d::Z());
  const Derivation final_stack = d::comp(iterate, d::P(mu, start));
  a.result = d::comp(d::T(), d::comp(inner.at(a.h_def.name), d::comp(d::H(), final_stack)));
  return a;
}

// ---- bounded nested recursion to SNR -------------------------------------------

std::string SnrArtifacts::text() const {
  return "# dispatcher\n" + print_cl(h_def) + "\n# bounded concatenation\n" + print_cl(cat_def) + "\n# g1\n" +
         print_cl(g1_def) + "\n# h1\n" + print_cl(h1_def) + "\n# wrapper\n" + print_cl(wrap_def) +
         "\nJ = " + std::to_string(J) + "\nresult = " + d_print(result) + "\n";
}

namespace {

void validate_bound(const ClausalDef& def, const PolyBound& bound, const SnrOptions& opts) {
  std::optional<Program> own;
  const Program* prog = opts.program;
  if (!prog) {
    own.emplace(std::vector<ClausalDef>{def});
    prog = &*own;
  }
  for (std::uint64_t x = 0; x <= opts.validate_upto; ++x) {
    const Nat v = eval_clausal(*prog, def.name, Nat{x}).value;
    const Nat b = bound(Nat{x});
    if (b < v)
      throw CompileError("bound violated at validation time: " + def.name + "(" + std::to_string(x) + ") = " +
                         v.to_string() + " exceeds " + b.to_string());
  }
}

std::string repeat_list(const std::string& item, std::size_t J) {
  std::vector<std::string> xs(J, item);
  xs.push_back("0");
  return tuple_text(xs);
}

// b(v) = v div b and truncated subtraction, both by bounded search
Derivation search_div() {
  const FormulaPtr f = parse_formula("v < S(q) * b");
  return d::comp(d::mu(compile_formula(f, {"q", "v", "b"})), d::P(d::comp(d::S(), d::H()), d::I()));
}

Derivation search_monus() {
  const FormulaPtr f = parse_formula("a < S(c + q)");
  return d::comp(d::mu(compile_formula(f, {"q", "a", "c"})), d::P(d::comp(d::S(), d::H()), d::I()));
}

}  // namespace

SnrArtifacts reduce_bounded_nested_to_snr(const ClausalDef& def, const PolyBound& bound, const DerivEnv& env,
                                          const SnrOptions& opts) {
  if (!def.recursive()) throw CompileError(def.name + " is not recursive");
  check_recursive_restrictions(def);
  SnrArtifacts a;
  a.h_def = dispatcher_def(def, a.J);
  if (a.J > opts.unroll_limit)
    throw CompileError(def.name + " makes " + std::to_string(a.J) + " recursive calls per clause; the unrolling limit is " +
                       std::to_string(opts.unroll_limit));
  validate_bound(def, bound, opts);

  a.cat_def = bounded_cat_def(a.J);
  DerivEnv inner;
  inner.insert_or_assign("h", compile_explicit(a.h_def, env));
  inner.insert_or_assign("bcat", compile_explicit(a.cat_def, {}));
  inner.insert_or_assign("pred", d::Pr());
  const std::string J = std::to_string(a.J), K = std::to_string(a.J + 1);

  std::string g1, h1, wrap;
  if (opts.encoding == SnrEncoding::Nested) {
    const std::string pat = "((c,((k,(x,j)),q)),m)";
    const std::string top = "h((x,c)) = r & r = (g,z)";
    g1 = "def g1 {\n  " + top + " & g = 0 -> g1(" + pat + ") = (0,(0,((" + J + ",(z," + K + ")),S(m))));\n  " + top +
         " & g = (t1,t2) -> g1(" + pat + ") = (1,z);\n}\n";
    h1 = "def h1 {\n  bcat(((c,(u,0)),m)) = c1 & pred(k) = k1 -> h1((((c,((k,(x,j)),q)),u),m)) = (c1,((k1,(x," + K +
         ")),S(m)));\n}\n";
    const std::string M = repeat_list("b", a.J);
    wrap = "def wrap {\n  bound(x) = b -> wrap(x) = run(((0,((" + J + ",(x," + K + ")),S(" + M + "))), " + M + "));\n}\n";
  } else {
    inner.insert_or_assign("bdiv", search_div());
    inner.insert_or_assign("monus", search_monus());
    inner.insert_or_assign("bmod", compile_term(parse_term("monus((v, bdiv((v,b)) * b))"), {"v", "b"}, inner));
    const std::string dec = "bdiv((v,b)) = x & bmod((v,b)) = c1 & monus((m,c1)) = c";
    const std::string top = dec + " & h((x,c)) = r & r = (g,z)";
    const std::string pat = "(v,(m,(b,bb)))";
    g1 = "def g1 {\n  " + top + " & g = 0 -> g1(" + pat + ") = (0,z * b + m);\n  " + top + " & g = (t1,t2) -> g1(" +
         pat + ") = (1,z);\n}\n";
    h1 = "def h1 {\n  " + dec + " & bcat(((c,(u,0)),m)) = c2 & monus((m,c2)) = c3 -> h1(((v,u)," +
         "(m,(b,bb)))) = x * b + c3;\n}\n";
    const std::string M = repeat_list("q", a.J);
    const std::string bx = "S(" + M + ")", by = "S(x)";
    wrap = "def wrap {\n  bound(x) = q & x < " + M + " -> wrap(x) = run((x * " + bx + " + " + M + ",(" + M + ",(" + bx +
           "," + bx + " * " + bx + "))));\n  bound(x) = q & !x < " + M + " -> wrap(x) = run((x * " + by + " + " + M +
           ",(" + M + ",(" + by + "," + by + " * " + by + "))));\n}\n";
  }
  const std::set<std::string> known{"h", "bcat", "pred", "bdiv", "bmod", "monus"};
  a.g1_def = parse_one(g1, known);
  a.h1_def = parse_one(h1, known);
  a.wrap_def = parse_one(wrap, {"bound", "run"});
  const Derivation snr = d::snr(compile_explicit(a.g1_def, inner), compile_explicit(a.h1_def, inner));
  a.result = compile_explicit(a.wrap_def, {{"bound", bound.to_derivation()}, {"run", snr}});
  return a;
}

}  // namespace funalg
