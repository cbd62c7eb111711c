#pragma once

// Encodings of finite structures into naturals, all built on the modified
// Cantor pairing (x,y) = (x+y)(x+y+1)/2 + x + 1, which maps N^2 onto N \ {0}.

#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "funalg/nat.hpp"

namespace funalg {

// ---- pairing ---------------------------------------------------------------

Nat pair(const Nat& x, const Nat& y);
/// Inverse of pair. Throws CodecError on 0, which is not a pair.
std::pair<Nat, Nat> unpair(const Nat& z);
/// Total projections: head(0) == tail(0) == 0.
Nat head(const Nat& z);
Nat tail(const Nat& z);

/// Right-associated tuple: tuple({a, b, c}) == pair(a, pair(b, c)); tuple({a}) == a.
Nat tuple(std::span<const Nat> xs);
Nat tuple(std::initializer_list<Nat> xs);

// ---- lists: x = (x1, ..., xn, 0) --------------------------------------------

Nat list_encode(std::span<const Nat> xs);
std::vector<Nat> list_decode(const Nat& x);
Nat list_len(const Nat& x);
/// 0 (+) y = y ; (v, x) (+) y = (v, x (+) y)
Nat list_concat(const Nat& x, const Nat& y);

// ---- 0-1 sequences: <x0 ... x(n-1)> is coded by the binary number 1x0...x(n-1)

Nat seq_encode(const std::vector<bool>& bits);
/// Throws CodecError on 0.
std::vector<bool> seq_decode(const Nat& code);
/// |t| = bit_length(t) - 1, and |0| = 0.
Nat seq_len(const Nat& t);
/// Bit-vector append; 0 whenever either operand is 0.
Nat seq_concat(const Nat& s, const Nat& t);
/// s is an initial segment of t (improper: every code is a prefix of itself); t > 0.
bool seq_prefix(const Nat& s, const Nat& t);
/// Initial segment and s < t.
bool seq_proper_prefix(const Nat& s, const Nat& t);

// ---- finite sets under the Ackermann coding ---------------------------------

/// Finite set of naturals kept as a strictly ascending list.
class FinSet {
 public:
  FinSet() = default;
  FinSet(std::initializer_list<Nat> xs);
  /// Sorts and deduplicates.
  explicit FinSet(std::vector<Nat> xs);

  const std::vector<Nat>& elements() const noexcept { return elements_; }
  bool contains(const Nat& x) const;
  bool empty() const noexcept { return elements_.empty(); }
  std::size_t cardinality() const noexcept { return elements_.size(); }
  /// Least strict upper bound: 0 for the empty set, else max + 1.
  Nat size() const;

  friend bool operator==(const FinSet&, const FinSet&) = default;

 private:
  std::vector<Nat> elements_;
};

/// x-th least significant binary digit of y is 1.
bool ack_member(const Nat& x, const Nat& y);
/// Sum of 2^i over the set. Throws CodecError for elements too large to be bit indices.
Nat ack_encode(const FinSet& s);
FinSet ack_decode(const Nat& y);

/// 0 is absent and every proper prefix of a member is a member.
bool is_tree(const FinSet& s);

// ---- base-b digit pairing [x,y]_b = x*b + y ---------------------------------

Nat base_pair(const Nat& x, const Nat& y, const Nat& b);
/// (v div b, v mod b). Throws CodecError when b == 0.
std::pair<Nat, Nat> base_unpair(const Nat& v, const Nat& b);

}  // namespace funalg
