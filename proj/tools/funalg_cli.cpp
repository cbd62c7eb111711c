#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "funalg/acceptance.hpp"
#include "funalg/clausal.hpp"
#include "funalg/compile.hpp"
#include "funalg/derivation.hpp"
#include "funalg/enumeration.hpp"
#include "funalg/errors.hpp"
#include "funalg/evaluator.hpp"
#include "funalg/harness.hpp"
#include "funalg/poly_bound.hpp"

using namespace funalg;

namespace {

// Domain failures: reported on stderr with exit code 1.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<ClausalDef> load(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return parse_cl(text);
  } catch (const ParseError& e) {
    throw DomainError(path + ":" + e.what());
  }
}

Nat parse_nat(const std::string& s) {
  try {
    return Nat::from_string(s);
  } catch (const std::invalid_argument&) {
    throw CLI::ValidationError("not a decimal natural number: '" + s + "'");
  }
}

std::vector<Nat> parse_list(const std::string& s) {
  std::vector<Nat> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(parse_nat(item));
  }
  return out;
}

AlgebraClass parse_class(const std::string& s) {
  auto c = class_from_name(s);
  if (!c) throw CLI::ValidationError("unknown class '" + s + "'");
  return *c;
}

Derivation parse_derivation(const std::string& s) {
  try {
    return d_parse(s);
  } catch (const ParseError& e) {
    throw DomainError(std::string("derivation: ") + e.what());
  }
}

const ClausalDef& find(const std::vector<ClausalDef>& defs, const std::string& name) {
  for (const ClausalDef& d : defs)
    if (d.name == name) return d;
  throw DomainError("no definition named '" + name + "'");
}

// Compiled forms of the definitions preceding `name`. Recursive ones are only
// available when reductions to PR are allowed.
DerivEnv env_before(const std::vector<ClausalDef>& defs, const std::string& name, bool allow_pr) {
  DerivEnv env;
  for (const ClausalDef& d : defs) {
    if (d.name == name) break;
    if (!d.recursive())
      env.insert_or_assign(d.name, compile_explicit(d, env));
    else if (allow_pr)
      env.insert_or_assign(d.name, reduce_recursive_to_pr(d, env).result);
  }
  return env;
}

int cmd_parse(const std::string& file) {
  std::cout << print_cl(load(file));
  return 0;
}

int cmd_check(const std::string& file) {
  int status = 0;
  for (const ClausalDef& d : load(file)) {
    std::cout << "def " << d.name << ": " << (d.recursive() ? "recursive" : "explicit") << "\n";
    try {
      const Refinement r = check_refinement(d);
      for (const std::string& line : r.trace) std::cout << "  " << line << "\n";
      if (d.recursive()) std::cout << "  restrictions: " << check_recursive_restrictions(d).line() << "\n";
    } catch (const Error& e) {
      std::cerr << e.what() << "\n";
      status = 1;
    }
  }
  return status;
}

int cmd_compile(const std::string& file, const std::string& fn, const std::string& cls) {
  const AlgebraClass c = parse_class(cls);
  const auto defs = load(file);
  const ClausalDef& def = find(defs, fn);
  const bool pr = c == AlgebraClass::PRA;
  const DerivEnv env = env_before(defs, fn, pr);
  Derivation d = d::I();
  if (!def.recursive())
    d = compile_explicit(def, env);
  else if (pr)
    d = reduce_recursive_to_pr(def, env).result;
  else
    throw DomainError(fn + " is recursive; compile it with --class PRA or use reduce");
  if (!validate(d, c)) throw DomainError(fn + " does not compile into class " + cls);
  std::cout << d_print(d) << "\n";
  return 0;
}

int cmd_reduce(const std::string& file, const std::string& fn, const std::string& to, const std::string& bound,
               const std::string& encoding) {
  const auto defs = load(file);
  const ClausalDef& def = find(defs, fn);
  if (to == "pr") {
    std::cout << reduce_recursive_to_pr(def, env_before(defs, fn, true)).text();
    return 0;
  }
  if (bound.empty()) throw CLI::ValidationError("--to snr needs --bound");
  PolyBound b = PolyBound::var();
  try {
    b = PolyBound::parse(bound);
  } catch (const ParseError& e) {
    throw CLI::ValidationError(std::string("--bound: ") + e.what());
  }
  const Program prog(defs);
  SnrOptions opts;
  opts.program = &prog;
  opts.encoding = encoding == "complement" ? SnrEncoding::Complement : SnrEncoding::Nested;
  if (opts.encoding == SnrEncoding::Complement) opts.validate_upto = 6;
  std::cout << reduce_bounded_nested_to_snr(def, b, env_before(defs, fn, false), opts).text();
  return 0;
}

Budget budget_of(std::uint64_t steps, std::uint64_t bits) {
  Budget b;
  if (steps) b.max_steps = steps;
  if (bits) b.max_bits = bits;
  return b;
}

int cmd_eval(const std::string& sexpr, const std::string& arg, const std::string& oracle, bool memo,
             const Budget& b) {
  const Derivation d = parse_derivation(sexpr);
  const Nat x = parse_nat(arg);
  const Oracle o{FinSet(parse_list(oracle))};
  const EvalReport r = memo ? eval_memo(d, x, o, b) : eval(d, x, o, b);
  std::cout << r.line() << "\n";
  return 0;
}

int cmd_enum(const std::string& cls, std::size_t count) {
  for (const Derivation& d : enumerate(parse_class(cls), count)) std::cout << d_print(d) << "\n";
  return 0;
}

int cmd_meter(const std::string& sexpr, const std::string& mode, const std::string& sizes, std::uint64_t seed,
              std::size_t trials, const Budget& b) {
  const Derivation d = parse_derivation(sexpr);
  std::vector<std::uint64_t> xs;
  for (const Nat& n : parse_list(sizes)) {
    const auto v = n.to_u64();
    if (!v) throw CLI::ValidationError("size too large");
    xs.push_back(*v);
  }
  if (xs.empty()) throw CLI::ValidationError("--sizes is empty");
  const CharMode m = mode == "one" ? CharMode::One : CharMode::Zero;
  std::cout << scaling_study(d, m, xs, trials, seed, b).csv();
  return 0;
}

int cmd_selftest(const std::string& corpus) {
  AcceptanceOptions opts;
  opts.corpus_dir = corpus;
  bool ok = true;
  for (int id = 1; id <= 12; ++id) {
    const CriterionResult r = run_criterion(id, opts);
    std::cout << r.line() << std::endl;
    ok &= r.pass;
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Function algebras over the natural numbers"};
  app.require_subcommand(1);

  std::string file, fn, cls, to, bound, encoding = "nested", sexpr, arg, oracle, mode = "zero", sizes;
  std::string corpus = FUNALG_CORPUS_DIR;
  std::size_t count = 0, trials = 1;
  std::uint64_t seed = 0, max_steps = 0, max_bits = 0;
  bool memo = false;

  auto* parse = app.add_subcommand("parse", "print a CL file in canonical form");
  parse->add_option("file", file, "CL file")->required();

  auto* check = app.add_subcommand("check", "print refinement traces");
  check->add_option("file", file, "CL file")->required();

  auto* compile = app.add_subcommand("compile", "compile a definition to a derivation");
  compile->add_option("file", file, "CL file")->required();
  compile->add_option("--fn", fn, "definition name")->required();
  compile->add_option("--class", cls, "DA, SA, TA, DEA, DSA, SSA or PRA")->required();

  auto* reduce = app.add_subcommand("reduce", "reduce a recursive definition");
  reduce->add_option("file", file, "CL file")->required();
  reduce->add_option("--fn", fn, "definition name")->required();
  reduce->add_option("--to", to, "pr or snr")->required()->check(CLI::IsMember({"pr", "snr"}));
  reduce->add_option("--bound", bound, "polynomial bound in n, for snr");
  reduce->add_option("--encoding", encoding, "nested or complement, for snr")
      ->check(CLI::IsMember({"nested", "complement"}));

  auto* ev = app.add_subcommand("eval", "evaluate a derivation");
  ev->add_option("--d", sexpr, "derivation S-expression")->required();
  ev->add_option("--arg", arg, "argument")->required();
  ev->add_option("--oracle", oracle, "comma-separated oracle set");
  ev->add_flag("--memo", memo, "memoize recursion nodes");

  auto* en = app.add_subcommand("enum", "list derivations in enumeration order");
  en->add_option("--class", cls, "algebra class")->required();
  en->add_option("--count", count, "how many")->required();

  auto* meter = app.add_subcommand("meter", "scaling study of a predicate");
  meter->add_option("--d", sexpr, "derivation S-expression")->required();
  meter->add_option("--mode", mode, "zero or one")->check(CLI::IsMember({"zero", "one"}));
  meter->add_option("--sizes", sizes, "comma-separated ascending sizes")->required();
  meter->add_option("--seed", seed, "random seed");
  meter->add_option("--trials", trials, "trials per size");

  for (CLI::App* sub : {ev, meter}) {
    sub->add_option("--max-steps", max_steps, "step budget");
    sub->add_option("--max-bits", max_bits, "bit budget");
  }

  auto* self = app.add_subcommand("selftest", "run the acceptance checks");
  self->add_option("--corpus", corpus, "directory of the shipped CL files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const Budget b = budget_of(max_steps, max_bits);
    if (*parse) return cmd_parse(file);
    if (*check) return cmd_check(file);
    if (*compile) return cmd_compile(file, fn, cls);
    if (*reduce) return cmd_reduce(file, fn, to, bound, encoding);
    if (*ev) return cmd_eval(sexpr, arg, oracle, memo, b);
    if (*en) return cmd_enum(cls, count);
    if (*meter) return cmd_meter(sexpr, mode, sizes, seed, trials, b);
    if (*self) return cmd_selftest(corpus);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 2;
}
