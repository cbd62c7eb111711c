#include "funalg/nat.hpp"

#include <ostream>
#include <stdexcept>

namespace funalg {

Nat::Nat(mpz_class v) : value_(std::move(v)) {
  if (sgn(value_) < 0) throw std::domain_error("Nat: negative value");
}

Nat Nat::from_string(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty number");
  for (char c : text) {
    if (c < '0' || c > '9') throw std::invalid_argument("not a decimal natural: " + std::string(text));
  }
  return Nat(mpz_class(std::string(text), 10));
}

Nat Nat::pow2(std::size_t exponent) {
  mpz_class r;
  mpz_setbit(r.get_mpz_t(), exponent);
  return Nat(std::move(r));
}

std::size_t Nat::bit_length() const {
  if (is_zero()) return 0;
  return mpz_sizeinbase(value_.get_mpz_t(), 2);
}

std::optional<std::uint64_t> Nat::to_u64() const {
  if (bit_length() > 64) return std::nullopt;
  if (value_.fits_ulong_p()) return static_cast<std::uint64_t>(value_.get_ui());
  return std::nullopt;
}

std::size_t Nat::hash() const {
  const mpz_srcptr p = value_.get_mpz_t();
  const std::size_t n = mpz_size(p);
  std::size_t h = 0x9e3779b97f4a7c15ULL ^ n;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= static_cast<std::size_t>(mpz_getlimbn(p, static_cast<mp_size_t>(i))) + 0x9e3779b97f4a7c15ULL +
         (h << 6) + (h >> 2);
  }
  return h;
}

Nat& Nat::operator-=(const Nat& o) {
  if (*this < o) throw std::domain_error("Nat: subtraction below zero");
  value_ -= o.value_;
  return *this;
}

Nat operator/(const Nat& a, const Nat& b) {
  if (b.is_zero()) throw std::domain_error("Nat: division by zero");
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.value_.get_mpz_t(), b.value_.get_mpz_t());
  return Nat(std::move(q));
}

Nat operator%(const Nat& a, const Nat& b) {
  if (b.is_zero()) throw std::domain_error("Nat: division by zero");
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.value_.get_mpz_t(), b.value_.get_mpz_t());
  return Nat(std::move(r));
}

Nat operator<<(const Nat& a, std::size_t k) {
  mpz_class r;
  mpz_mul_2exp(r.get_mpz_t(), a.value_.get_mpz_t(), k);
  return Nat(std::move(r));
}

Nat operator>>(const Nat& a, std::size_t k) {
  mpz_class r;
  mpz_fdiv_q_2exp(r.get_mpz_t(), a.value_.get_mpz_t(), k);
  return Nat(std::move(r));
}

std::ostream& operator<<(std::ostream& os, const Nat& n) { return os << n.to_string(); }

Nat monus(const Nat& a, const Nat& b) { return a < b ? Nat{} : a - b; }

Nat isqrt(const Nat& a) {
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), a.mpz().get_mpz_t());
  return Nat(std::move(r));
}

Nat succ(const Nat& a) { return a + Nat{1}; }

}  // namespace funalg
