#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "funalg/evaluator.hpp"
#include "funalg/term.hpp"

namespace funalg {

/// Antecedent literal as written. The refinement checker decides which rule it
/// instantiates (a binding `g(t) = v`, a split `v = S(w)`, a test `t1 < t2`, ...)
/// from the variables bound at that point.
struct Literal {
  enum class Kind { Rel, Oracle };

  Kind kind = Kind::Rel;
  bool negated = false;
  Rel rel = Rel::Eq;
  TermPtr lhs, rhs;  // Oracle uses lhs
};

struct Clause {
  std::vector<Literal> ants;
  std::string head;
  TermPtr pattern;
  TermPtr result;
  std::size_t line = 0;
};

struct ClausalDef {
  enum class Kind { Explicit, Recursive };

  std::string name;
  std::vector<Clause> clauses;
  /// Only the identity measure is supported; any other name is rejected by
  /// check_recursive_restrictions.
  std::optional<std::string> measure;

  /// Recursive iff the name is applied somewhere in an antecedent or a result.
  Kind kind() const;
  bool recursive() const { return kind() == Kind::Recursive; }
  /// Names of other functions applied in the clauses.
  std::set<std::string> callees() const;
};

/// Definitions in declaration order. Each may call itself and earlier ones;
/// `known` adds externally supplied function names.
std::vector<ClausalDef> parse_cl(std::string_view text, const std::set<std::string>& known = {});
std::string print_cl(const ClausalDef& def);
std::string print_cl(const std::vector<ClausalDef>& defs);

/// Single term in the clause syntax.
TermPtr parse_term(std::string_view text);
/// Formula syntax: `t < t`, `t = t`, `t in X`, `!f`, `f | f`, `f & f`, `[f]`,
/// `exists y < t. f`, `exists y = g(t). f`. `&` binds tighter than `|`; a quantifier body
/// extends as far right as possible.
FormulaPtr parse_formula(std::string_view text);

// ---- refinement ------------------------------------------------------------------

/// Refinement tree: every root-to-leaf path is one strict clause.
struct RNode {
  enum class Kind {
    Bind,     // rule 1: fn(arg) = var
    Succ,     // rule 2: var = 0 | var = S(w1)
    Pair,     // rule 3: var = 0 | var = (w1, w2)
    Test,     // rule 4: t1 rel t2 | !(t1 rel t2)
    Oracle,   // rule 4 on an oracle atom: t1 in X | !(t1 in X)
    Result,   // rule 5
    Default,  // completion clause with result 0
  };

  Kind kind = Kind::Result;
  std::string fn, var, w1, w2;
  Rel rel = Rel::Eq;
  TermPtr t1, t2;  // Bind: arg in t1 ; Result: term in t1
  /// Bind: {next}; splits and tests: {first branch, second branch}.
  std::vector<std::shared_ptr<const RNode>> kids;
  /// 1-based indices of the source clauses ending below this node.
  std::vector<std::size_t> clauses;
};
using RNodePtr = std::shared_ptr<const RNode>;

struct Refinement {
  RNodePtr root;
  std::string root_var;
  /// One line per refinement step, preorder.
  std::vector<std::string> trace;
};

/// Rebuilds the clause set by rules 1-5. Throws RefinementError on overlap,
/// non-exhaustive cases, freshness violations, or clauses that refine the
/// same point differently.
Refinement check_refinement(const ClausalDef& def);
/// Same construction, but missing branches become default clauses with result 0.
Refinement refine_partial(const ClausalDef& def);

/// Strict clauses of a refinement tree, one per leaf.
ClausalDef strict_from_tree(const std::string& name, const Refinement& r);
ClausalDef complete_to_strict(const ClausalDef& def);

struct RestrictionReport {
  /// Recursive call arguments proven smaller than x by pairing shrink.
  std::vector<std::string> static_calls;
  /// Recursive call arguments left to the run-time measure check.
  std::vector<std::string> dynamic_calls;
  /// x is split as (v, p) at the root and p is passed on unchanged.
  bool parameterized = false;
  std::string line() const;
};

RestrictionReport check_recursive_restrictions(const ClausalDef& def);

// ---- interpretation --------------------------------------------------------------

struct ClausalResult {
  Nat value;
  Meter meter;
};

class Program {
 public:
  Program() = default;
  explicit Program(std::vector<ClausalDef> defs);

  const std::vector<ClausalDef>& defs() const { return defs_; }
  const ClausalDef& def(const std::string& name) const;
  bool has(const std::string& name) const;
  /// Refinement tree with default completion.
  const Refinement& tree(const std::string& name) const;

 private:
  std::vector<ClausalDef> defs_;
  std::map<std::string, std::size_t> index_;
  std::vector<Refinement> trees_;
};

/// Direct interpretation. Every call to the function being defined must have an
/// argument below the caller's argument, otherwise MeasureViolation.
ClausalResult eval_clausal(const Program& env, const std::string& fname, const Nat& x,
                           const Oracle& o = {}, const Budget& b = {});

}  // namespace funalg
