#pragma once

#include <cstddef>
#include <vector>

#include "funalg/derivation.hpp"
#include "funalg/nat.hpp"

namespace funalg {

/// Standard enumeration of the derivations of one algebra class.
///
/// Order: by node count; within a node count by operator (X first, then
/// S, add, mul, lt, I, D, P, comp, mu, pr, bpr, snr, E, smash restricted to
/// the class); within an operator lexicographically by the indices of the
/// children. Children have fewer nodes than their parent, so every child
/// precedes its parent.
class Enumeration {
 public:
  explicit Enumeration(AlgebraClass c);

  AlgebraClass algebra() const noexcept { return class_; }
  /// Number of derivations with exactly `nodes` nodes.
  Nat count(std::size_t nodes);
  /// Throws ClassError when d is not in the class.
  Nat index_of(const Derivation& d);
  Derivation at(const Nat& index);
  std::vector<Derivation> first(std::size_t n);

 private:
  Nat rank_within_size(const Derivation& d);
  Derivation unrank(std::size_t nodes, Nat rank);
  Nat offset_of_size(std::size_t nodes);

  AlgebraClass class_;
  std::vector<Op> ops_;
  std::vector<Nat> counts_;   // counts_[n], n >= 1
  std::vector<Nat> offsets_;  // offsets_[n] = sum of counts below n
};

std::vector<Derivation> enumerate(AlgebraClass c, std::size_t n);
Nat index_of(const Derivation& d, AlgebraClass c);
Derivation derivation_at(const Nat& i, AlgebraClass c);

}  // namespace funalg
