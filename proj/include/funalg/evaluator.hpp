#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "funalg/codec.hpp"
#include "funalg/derivation.hpp"
#include "funalg/nat.hpp"

namespace funalg {

/// Finite oracle set X read by the X operator.
struct Oracle {
  FinSet set;

  bool contains(const Nat& x) const { return set.contains(x); }
};

struct Meter {
  std::uint64_t steps = 0;
  std::size_t peak_bits = 0;
  std::uint64_t memo_hits = 0;
  std::uint64_t max_depth = 0;
};

struct Budget {
  std::uint64_t max_steps = 10'000'000;
  std::uint64_t max_bits = 1'000'000;
};

/// Distinct first components expanded by one SNR node for one parameter p.
struct SnrExpansion {
  Nat p;
  Nat max_v;  // largest first component the node was called with
  std::uint64_t distinct = 0;
};

struct EvalOptions {
  bool memoize = false;
  /// Stop a PR/BPR loop once the value is stationary and h only reads it.
  bool stationary_shortcut = true;
  bool track_snr = false;
};

struct EvalReport {
  Nat value;
  Meter meter;
  std::vector<SnrExpansion> snr;

  /// value, steps, peak_bits, memo_hits, max_depth separated by tabs.
  std::string line() const;
};

EvalReport evaluate(const Derivation& d, const Nat& x, const Oracle& o, const Budget& b,
                    const EvalOptions& opts);

/// Plain recursive semantics (no memo table).
EvalReport eval(const Derivation& d, const Nat& x, const Oracle& o = {}, const Budget& b = {});
/// Course-of-values evaluation: PR, BPR and SNR nodes memoize on their argument.
EvalReport eval_memo(const Derivation& d, const Nat& x, const Oracle& o = {}, const Budget& b = {});

/// Value only; convenience for tests and compilers.
Nat run(const Derivation& d, const Nat& x, const Oracle& o = {});

}  // namespace funalg
