#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace funalg {

/// Arbitrary-precision natural number. Subtraction below zero throws; use monus
/// for the truncated variant.
class Nat {
 public:
  Nat() = default;

  template <std::integral T>
  Nat(T v) {  // NOLINT(google-explicit-constructor): literals read naturally in formulas
    if constexpr (std::is_signed_v<T>) {
      if (v < 0) throw std::domain_error("Nat: negative value");
      value_ = static_cast<unsigned long>(v);
    } else {
      value_ = static_cast<unsigned long>(v);
    }
  }

  explicit Nat(mpz_class v);

  /// Parses decimal ASCII. Throws std::invalid_argument on anything else.
  static Nat from_string(std::string_view text);
  static Nat pow2(std::size_t exponent);

  std::string to_string() const { return value_.get_str(10); }
  const mpz_class& mpz() const noexcept { return value_; }

  bool is_zero() const { return sgn(value_) == 0; }
  /// Number of binary digits; bit_length(0) == 0.
  std::size_t bit_length() const;
  bool test_bit(std::size_t i) const { return mpz_tstbit(value_.get_mpz_t(), i) != 0; }
  std::optional<std::uint64_t> to_u64() const;
  std::size_t hash() const;

  Nat& operator+=(const Nat& o) {
    value_ += o.value_;
    return *this;
  }
  Nat& operator*=(const Nat& o) {
    value_ *= o.value_;
    return *this;
  }
  Nat& operator-=(const Nat& o);

  friend Nat operator+(Nat a, const Nat& b) { return a += b; }
  friend Nat operator*(Nat a, const Nat& b) { return a *= b; }
  friend Nat operator-(Nat a, const Nat& b) { return a -= b; }
  /// Floor division; throws on division by zero.
  friend Nat operator/(const Nat& a, const Nat& b);
  friend Nat operator%(const Nat& a, const Nat& b);
  friend Nat operator<<(const Nat& a, std::size_t k);
  friend Nat operator>>(const Nat& a, std::size_t k);

  friend bool operator==(const Nat& a, const Nat& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Nat& a, const Nat& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Nat& n);

 private:
  mpz_class value_;
};

Nat monus(const Nat& a, const Nat& b);
Nat isqrt(const Nat& a);
Nat succ(const Nat& a);

}  // namespace funalg

template <>
struct std::hash<funalg::Nat> {
  std::size_t operator()(const funalg::Nat& n) const noexcept { return n.hash(); }
};
