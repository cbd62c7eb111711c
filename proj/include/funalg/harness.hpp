#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "funalg/codec.hpp"
#include "funalg/derivation.hpp"
#include "funalg/evaluator.hpp"

namespace funalg {

/// Zero: the predicate is f(x) with the empty oracle. One: f(||X||) with oracle X.
enum class CharMode { Zero, One };

using CharInput = std::variant<Nat, FinSet>;

struct CharResult {
  bool accepted = false;
  Meter meter;
};

/// Memoized run of a 0-1 valued predicate. Throws PredicateViolation on any
/// other output and Error when the input kind does not match the mode.
CharResult char_run(const Derivation& d, CharMode mode, const CharInput& input, const Budget& b = {});

struct Certificate {
  bool ok = true;
  /// First sample violating the bound, when !ok.
  Nat x, value, bound;
};

/// Checks eval(d, x) <= poly_bound(d)(x) on every sample. Throws UnboundedOperator
/// for derivations without a polynomial bound.
Certificate certify_bound(const Derivation& d, const std::vector<Nat>& xs, const Budget& b = {});

struct ScalingRow {
  std::uint64_t size = 0;
  std::uint64_t steps = 0;
  std::uint64_t peak_bits = 0;
};

struct ScalingReport {
  std::vector<ScalingRow> rows;
  /// Least-squares slope of log(steps) against log(size).
  double fitted_exponent = 0;
  /// Local slopes between consecutive sizes keep rising.
  bool superpolynomial = false;
  /// A size ran out of budget; rows stop before it.
  bool truncated = false;

  /// `size,steps,peak_bits` rows and a trailing `# fitted_exponent=` line.
  std::string csv() const;
};

/// Zero mode runs x = size; One mode runs random sets with ||X|| = size drawn from seed.
ScalingReport scaling_study(const Derivation& d, CharMode mode, const std::vector<std::uint64_t>& sizes,
                            std::size_t trials_per_size, std::uint64_t seed, const Budget& b = {});

/// Example predicates.
namespace pred {
/// x is even, as a bounded formula (DA).
Derivation parity();
/// x is a power of two, by clamped iterated doubling (SA).
Derivation power_of_two();
/// x > 0 through an SNR chain of length x (TA).
Derivation degenerate_snr();
/// X holds two consecutive numbers below ||X|| (DA, One mode).
Derivation consecutive_members();
/// k in X.
Derivation member(const Nat& k);
/// Constantly 1.
Derivation constant_true();
/// Scans 2^x candidates and finds none; constantly 0 (DEA).
Derivation exponential_scan();
}  // namespace pred

}  // namespace funalg
