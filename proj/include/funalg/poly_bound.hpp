#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "funalg/derivation.hpp"
#include "funalg/nat.hpp"

namespace funalg {

/// Monotone polynomial in one variable n, built from constants, n, + and *.
/// Composition substitutes the inner bound for n and shares the subtree.
class PolyBound {
 public:
  enum class Kind { Const, Var, Add, Mul };

  static PolyBound constant(Nat c);
  static PolyBound var();
  friend PolyBound operator+(const PolyBound& a, const PolyBound& b);
  friend PolyBound operator*(const PolyBound& a, const PolyBound& b);
  /// this(inner(n))
  PolyBound compose(const PolyBound& inner) const;

  Nat operator()(const Nat& n) const;
  Kind kind() const noexcept;

  /// Text such as "((n + 1) * (n + 1))".
  std::string to_string() const;
  /// Parses "n", decimal constants, "+", "*", and parentheses. Throws ParseError.
  static PolyBound parse(std::string_view text);

  /// A derivation computing the bound; every operator is in DA.
  Derivation to_derivation() const;

 private:
  struct Node;
  explicit PolyBound(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Per-node bounding rules; throws UnboundedOperator on PR, E or Smash.
PolyBound poly_bound(const Derivation& d);

}  // namespace funalg
