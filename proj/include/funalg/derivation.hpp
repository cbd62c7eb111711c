#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace funalg {

/// Operator symbols of the derivation calculus.
enum class Op : std::uint8_t {
  S,
  Add,
  Mul,
  Lt,
  I,
  D,
  P,
  Comp,
  Mu,
  PR,
  BPR,
  SNR,
  E,
  Smash,
  OracleChar,
};

inline constexpr std::array<Op, 15> kAllOps = {
    Op::S,  Op::Add, Op::Mul, Op::Lt, Op::I,   Op::D,     Op::P,         Op::Comp,
    Op::Mu, Op::PR,  Op::BPR, Op::SNR, Op::E, Op::Smash, Op::OracleChar,
};

std::size_t arity(Op op) noexcept;
/// Surface name in the S-expression format ("S", "add", "comp", "X", ...).
std::string_view op_name(Op op) noexcept;
std::optional<Op> op_from_name(std::string_view name) noexcept;

/// Immutable derivation term. Copies share structure, so a derivation is a DAG
/// in memory even though it denotes a tree.
class Derivation {
 public:
  struct Node;

  /// Builds op(children...). Throws ClassError on an arity mismatch.
  static Derivation make(Op op, std::vector<Derivation> children = {});

  Op op() const noexcept;
  std::size_t arity() const noexcept;
  const Derivation& child(std::size_t i) const;
  const std::vector<Derivation>& children() const noexcept;
  /// Node count of the denoted tree, saturating at UINT64_MAX.
  std::uint64_t size() const noexcept;
  std::uint64_t depth() const noexcept;
  std::size_t hash() const noexcept;
  /// Identity of the shared node; stable for the lifetime of the derivation.
  const Node* id() const noexcept { return node_.get(); }

  friend bool operator==(const Derivation& a, const Derivation& b);

 private:
  explicit Derivation(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Derivation::Node {
  Op op;
  std::vector<Derivation> children;
  std::uint64_t size;
  std::uint64_t depth;
  std::size_t hash;
};

// Shorthand constructors.
namespace d {
Derivation S();
Derivation add();
Derivation mul();
Derivation lt();
Derivation I();
Derivation D();
Derivation E();
Derivation smash();
Derivation X();
Derivation P(Derivation g, Derivation h);
Derivation comp(Derivation g, Derivation h);
Derivation mu(Derivation g);
Derivation pr(Derivation g, Derivation h);
Derivation bpr(Derivation g, Derivation h);
Derivation snr(Derivation g, Derivation h);

/// The constant 0: mu(S o mul) o P(I, I).
Derivation Z();
/// Head projection: D o P(Z, I).
Derivation H();
/// Tail projection: D o P(S o Z, I).
Derivation T();
/// T^i, with T^0 = I and T^(i+1) = T o T^i.
Derivation T_pow(std::size_t i);
/// Predecessor: mu(lt o P(T, S o S o H)) o P(I, I).
Derivation Pr();
/// Projection of the previous value out of a recursion step argument ((w, z), p): T o H.
Derivation step_value();
}  // namespace d

// ---- algebra classes --------------------------------------------------------

enum class AlgebraClass : std::uint8_t { DA, SA, TA, DEA, DSA, SSA, PRA };

inline constexpr std::array<AlgebraClass, 7> kAllClasses = {
    AlgebraClass::DA,  AlgebraClass::SA,  AlgebraClass::TA,  AlgebraClass::DEA,
    AlgebraClass::DSA, AlgebraClass::SSA, AlgebraClass::PRA,
};

std::string_view class_name(AlgebraClass c) noexcept;
std::optional<AlgebraClass> class_from_name(std::string_view name) noexcept;
bool class_allows(AlgebraClass c, Op op) noexcept;
/// Allowed operators in enumeration order (X first).
std::vector<Op> class_ops(AlgebraClass c);

/// Every node is admitted by the class (arity is enforced at construction).
bool validate(const Derivation& d, AlgebraClass c);

// ---- S-expression form --------------------------------------------------------

/// Canonical text, e.g. "(comp S I)".
std::string d_print(const Derivation& d);
/// Whitespace-insensitive parse. Throws ParseError carrying a byte offset.
Derivation d_parse(std::string_view text);

}  // namespace funalg

template <>
struct std::hash<funalg::Derivation> {
  std::size_t operator()(const funalg::Derivation& d) const noexcept { return d.hash(); }
};
