#include "funalg/codec.hpp"

#include <algorithm>

#include "funalg/errors.hpp"

namespace funalg {

Nat pair(const Nat& x, const Nat& y) {
  const Nat s = x + y;
  return (s * succ(s)) / Nat{2} + x + Nat{1};
}

std::pair<Nat, Nat> unpair(const Nat& z) {
  if (z.is_zero()) throw CodecError("unpair: 0 is not a pair");
  // z - 1 = w(w+1)/2 + x with w = x + y the diagonal.
  const Nat n = z - Nat{1};
  const Nat w = (isqrt(Nat{8} * n + Nat{1}) - Nat{1}) / Nat{2};
  const Nat x = n - (w * succ(w)) / Nat{2};
  return {x, w - x};
}

Nat head(const Nat& z) { return z.is_zero() ? Nat{} : unpair(z).first; }
Nat tail(const Nat& z) { return z.is_zero() ? Nat{} : unpair(z).second; }

Nat tuple(std::span<const Nat> xs) {
  if (xs.empty()) throw CodecError("tuple: empty list has no tuple code");
  Nat acc = xs.back();
  for (std::size_t i = xs.size() - 1; i-- > 0;) acc = pair(xs[i], acc);
  return acc;
}

Nat tuple(std::initializer_list<Nat> xs) { return tuple(std::span<const Nat>(xs.begin(), xs.size())); }

Nat list_encode(std::span<const Nat> xs) {
  Nat acc;
  for (std::size_t i = xs.size(); i-- > 0;) acc = pair(xs[i], acc);
  return acc;
}

std::vector<Nat> list_decode(const Nat& x) {
  std::vector<Nat> out;
  Nat cur = x;
  while (!cur.is_zero()) {
    auto [h, t] = unpair(cur);
    out.push_back(std::move(h));
    cur = std::move(t);
  }
  return out;
}

Nat list_len(const Nat& x) {
  Nat n;
  Nat cur = x;
  while (!cur.is_zero()) {
    cur = tail(cur);
    n += Nat{1};
  }
  return n;
}

Nat list_concat(const Nat& x, const Nat& y) {
  const std::vector<Nat> front = list_decode(x);
  Nat acc = y;
  for (std::size_t i = front.size(); i-- > 0;) acc = pair(front[i], acc);
  return acc;
}

Nat seq_encode(const std::vector<bool>& bits) {
  Nat code{1};
  for (bool b : bits) code = (code << 1) + Nat{b ? 1 : 0};
  return code;
}

std::vector<bool> seq_decode(const Nat& code) {
  if (code.is_zero()) throw CodecError("seq_decode: 0 codes no sequence");
  const std::size_t n = code.bit_length() - 1;
  std::vector<bool> bits(n);
  for (std::size_t i = 0; i < n; ++i) bits[i] = code.test_bit(n - 1 - i);
  return bits;
}

Nat seq_len(const Nat& t) { return t.is_zero() ? Nat{} : Nat{t.bit_length() - 1}; }

Nat seq_concat(const Nat& s, const Nat& t) {
  if (s.is_zero() || t.is_zero()) return Nat{};
  const std::size_t len = t.bit_length() - 1;
  const Nat p = Nat::pow2(len);
  return s * p + (t - p);
}

bool seq_prefix(const Nat& s, const Nat& t) {
  if (s.is_zero() || t.is_zero()) return false;
  const std::size_t ls = s.bit_length();
  const std::size_t lt = t.bit_length();
  if (ls > lt) return false;
  return (t >> (lt - ls)) == s;
}

bool seq_proper_prefix(const Nat& s, const Nat& t) { return s < t && seq_prefix(s, t); }

FinSet::FinSet(std::initializer_list<Nat> xs) : FinSet(std::vector<Nat>(xs)) {}

FinSet::FinSet(std::vector<Nat> xs) : elements_(std::move(xs)) {
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
}

bool FinSet::contains(const Nat& x) const {
  return std::binary_search(elements_.begin(), elements_.end(), x);
}

Nat FinSet::size() const { return elements_.empty() ? Nat{} : succ(elements_.back()); }

namespace {
constexpr std::uint64_t kMaxBitIndex = std::uint64_t{1} << 32;
}

bool ack_member(const Nat& x, const Nat& y) {
  const auto i = x.to_u64();
  if (!i || *i >= y.bit_length()) return false;
  return y.test_bit(static_cast<std::size_t>(*i));
}

Nat ack_encode(const FinSet& s) {
  mpz_class code;
  for (const Nat& e : s.elements()) {
    const auto i = e.to_u64();
    if (!i || *i >= kMaxBitIndex) throw CodecError("ack_encode: element too large for a bit index");
    mpz_setbit(code.get_mpz_t(), static_cast<mp_bitcnt_t>(*i));
  }
  return Nat(std::move(code));
}

FinSet ack_decode(const Nat& y) {
  std::vector<Nat> xs;
  const std::size_t n = y.bit_length();
  for (std::size_t i = 0; i < n; ++i) {
    if (y.test_bit(i)) xs.emplace_back(i);
  }
  return FinSet(std::move(xs));
}

bool is_tree(const FinSet& s) {
  if (s.contains(Nat{})) return false;
  for (const Nat& t : s.elements()) {
    // proper prefixes of t are t >> k for k = 1 .. |t|
    const std::size_t len = t.bit_length() - 1;
    for (std::size_t k = 1; k <= len; ++k) {
      if (!s.contains(t >> k)) return false;
    }
  }
  return true;
}

Nat base_pair(const Nat& x, const Nat& y, const Nat& b) { return x * b + y; }

std::pair<Nat, Nat> base_unpair(const Nat& v, const Nat& b) {
  if (b.is_zero()) throw CodecError("base_unpair: base must be positive");
  return {v / b, v % b};
}

}  // namespace funalg
