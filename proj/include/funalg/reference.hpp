#pragma once

// Straightforward reference implementations used as test oracles. They share
// no code with the library proper beyond the Nat type and the derivation AST.

#include <cstdint>
#include <random>
#include <set>

#include "funalg/derivation.hpp"
#include "funalg/nat.hpp"

namespace funalg::ref {

/// Pairing computed from its defining equation; unpairing by binary search on the diagonal.
Nat pair(const Nat& x, const Nat& y);
std::pair<Nat, Nat> unpair(const Nat& z);

class TooExpensive : public std::exception {
 public:
  const char* what() const noexcept override { return "reference evaluation exceeded its call limit"; }
};

/// Literal recursive reading of the operator axioms. Throws TooExpensive after `limit` calls
/// on values wider than 20000 bits, or on recursion deeper than 5000.
Nat eval(const Derivation& d, const Nat& x, const std::set<Nat>& oracle = {},
         std::uint64_t limit = 2'000'000);

/// Uniformly picks operators of the class; leaves only at depth 0.
Derivation random_derivation(std::mt19937_64& rng, AlgebraClass c, int depth);

}  // namespace funalg::ref
