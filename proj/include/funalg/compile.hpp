#pragma once

#include <map>
#include <string>
#include <vector>

#include "funalg/clausal.hpp"
#include "funalg/derivation.hpp"
#include "funalg/poly_bound.hpp"
#include "funalg/term.hpp"

namespace funalg {

/// Compiled functions available to applications, by name.
using DerivEnv = std::map<std::string, Derivation>;

/// Variable i of the context x0..xn packed as (x0,(x1,...,xn)): H o T^i, or T^n for the last.
Derivation project(std::size_t i, std::size_t n);
/// The constant k, built from Z, S, add and mul in O(log k) nodes.
Derivation constant(const Nat& k);
/// D o P(v, P(a, b)): a when v is 0, else b.
Derivation dispatch(Derivation v, Derivation a, Derivation b);

/// eval(d, tuple(values of ctx)) equals the value of t. Throws CompileError on an
/// unbound variable or an application of a name missing from env.
Derivation compile_term(const TermPtr& t, const std::vector<std::string>& ctx, const DerivEnv& env = {});
/// 0-1 valued characteristic derivation of the formula over ctx.
Derivation compile_formula(const FormulaPtr& f, const std::vector<std::string>& ctx, const DerivEnv& env = {});

/// Folds a refinement tree into one derivation over the root variable.
Derivation compile_tree(const Refinement& r, const DerivEnv& env);
/// Throws CompileError when def is recursive.
Derivation compile_explicit(const ClausalDef& def, const DerivEnv& env);

struct ReductionArtifacts {
  ClausalDef h_def;       // tagged dispatcher, explicit
  ClausalDef append_def;  // list append for lists shorter than J
  ClausalDef f1_def;      // stack stepper, explicit
  std::size_t J = 0;
  std::string mu_desc;
  Derivation result = d::I();

  std::string text() const;
};

/// Nested recursion to one PR node iterating the stack stepper.
ReductionArtifacts reduce_recursive_to_pr(const ClausalDef& def, const DerivEnv& env);

enum class SnrEncoding {
  /// State (x, k, c) as pair(c, pair(pair(k, pair(x, J+1)), m+1)); k counts free list slots.
  Nested,
  /// State as [x, m - c]_b with division and truncated subtraction by bounded search.
  Complement,
};

struct SnrOptions {
  std::size_t unroll_limit = 8;
  SnrEncoding encoding = SnrEncoding::Nested;
  /// The bound is checked against eval_clausal on 0..validate_upto.
  std::uint64_t validate_upto = 16;
  /// Clausal environment for validation; a single-definition program is used when null.
  const Program* program = nullptr;
};

struct SnrArtifacts {
  ClausalDef h_def;
  ClausalDef cat_def;
  ClausalDef g1_def;
  ClausalDef h1_def;
  ClausalDef wrap_def;
  std::size_t J = 0;
  Derivation result = d::I();

  std::string text() const;
};

/// Bounded nested recursion to one SNR node plus explicit wrapping (class TA).
SnrArtifacts reduce_bounded_nested_to_snr(const ClausalDef& def, const PolyBound& bound, const DerivEnv& env,
                                          const SnrOptions& opts = {});

}  // namespace funalg
