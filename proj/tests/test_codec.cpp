#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "funalg/codec.hpp"
#include "funalg/errors.hpp"

using namespace funalg;

namespace {

// Brute-force inverse of the pairing equation 2z = (x+y)(x+y+1) + 2x + 2.
std::pair<unsigned, unsigned> search_unpair(unsigned z) {
  for (unsigned s = 0;; ++s) {
    for (unsigned x = 0; x <= s; ++x) {
      const unsigned y = s - x;
      if (2 * z == s * (s + 1) + 2 * x + 2) return {x, y};
    }
  }
}

std::vector<bool> random_bits(std::mt19937_64& rng, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::vector<bool> bits(len(rng));
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = (rng() & 1) != 0;
  return bits;
}

}  // namespace

TEST_CASE("pair small values") {
  CHECK(pair(0, 0) == Nat{1});
  CHECK(pair(0, 1) == Nat{2});
  CHECK(pair(1, 0) == Nat{3});
  CHECK(pair(1, 1) == Nat{5});
  CHECK(pair(2, 0) == Nat{6});
}

TEST_CASE("unpair agrees with search") {
  for (unsigned z = 1; z <= 2000; ++z) {
    auto [x, y] = unpair(Nat{z});
    auto [ex, ey] = search_unpair(z);
    REQUIRE(x == Nat{ex});
    REQUIRE(y == Nat{ey});
  }
  CHECK_THROWS_AS(unpair(Nat{}), CodecError);
}

TEST_CASE("head and tail") {
  CHECK(head(0) == Nat{});
  CHECK(tail(0) == Nat{});
  CHECK(head(3) == Nat{1});
  CHECK(tail(3) == Nat{0});
  CHECK(head(5) == Nat{1});
  CHECK(tail(5) == Nat{1});
  for (unsigned z = 1; z <= 10000; ++z) {
    REQUIRE(head(Nat{z}) < Nat{z});
    REQUIRE(tail(Nat{z}) < Nat{z});
  }
}

TEST_CASE("pairing at large magnitudes") {
  const Nat big = Nat::pow2(300) + Nat{12345};
  const Nat other = Nat::pow2(299) * Nat{3};
  auto [x, y] = unpair(pair(big, other));
  CHECK(x == big);
  CHECK(y == other);
}

TEST_CASE("tuples") {
  CHECK(tuple({Nat{7}}) == Nat{7});
  CHECK(tuple({Nat{0}, Nat{0}, Nat{0}}) == Nat{2});
  CHECK(tuple({Nat{1}, Nat{0}}) == Nat{3});
  CHECK_THROWS_AS(tuple(std::span<const Nat>{}), CodecError);
}

TEST_CASE("lists") {
  CHECK(list_len(0) == Nat{0});
  CHECK(pair(5, 0) == Nat{21});
  CHECK(list_len(21) == Nat{1});
  CHECK(list_len(pair(1, pair(2, 0))) == Nat{2});
  CHECK(list_concat(0, 21) == Nat{21});
  CHECK(list_concat(pair(5, 0), 0) == pair(5, 0));
  CHECK(list_concat(pair(1, 0), pair(2, 0)) == pair(1, pair(2, 0)));

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Nat> a, b;
    for (std::size_t i = rng() % 5; i > 0; --i) a.emplace_back(rng() % 30);
    for (std::size_t i = rng() % 5; i > 0; --i) b.emplace_back(rng() % 30);
    const Nat ca = list_encode(a), cb = list_encode(b);
    REQUIRE(list_decode(ca) == a);
    REQUIRE(list_len(list_concat(ca, cb)) == Nat{a.size() + b.size()});
    std::vector<Nat> ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    REQUIRE(list_concat(ca, cb) == list_encode(ab));
  }
}

TEST_CASE("sequence codes") {
  CHECK(seq_len(1) == Nat{0});
  CHECK(seq_len(20) == Nat{4});
  CHECK(seq_decode(20) == std::vector<bool>{false, true, false, false});
  CHECK(seq_concat(2, 3) == Nat{5});
  CHECK(seq_concat(0, 3) == Nat{0});
  CHECK_THROWS_AS(seq_decode(0), CodecError);

  for (std::size_t i = 0; i <= 32; ++i) {
    REQUIRE(seq_encode(std::vector<bool>(i, false)) == Nat::pow2(i));
    REQUIRE(seq_encode(std::vector<bool>(i, true)) == Nat::pow2(i + 1) - Nat{1});
  }

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    auto a = random_bits(rng, 64), b = random_bits(rng, 64), c = random_bits(rng, 64);
    const Nat ca = seq_encode(a), cb = seq_encode(b), cc = seq_encode(c);
    REQUIRE(seq_decode(ca) == a);
    REQUIRE(seq_concat(seq_concat(ca, cb), cc) == seq_concat(ca, seq_concat(cb, cc)));
    REQUIRE(seq_len(seq_concat(ca, cb)) == seq_len(ca) + seq_len(cb));
  }
}

TEST_CASE("sequence prefixes agree with bit-vector prefixes") {
  for (unsigned s = 1; s <= 4096; s += 3) {
    const auto bs = seq_decode(Nat{s});
    for (unsigned t = 1; t <= 4096; ++t) {
      const auto bt = seq_decode(Nat{t});
      const bool pre = bs.size() <= bt.size() && std::equal(bs.begin(), bs.end(), bt.begin());
      REQUIRE(seq_prefix(Nat{s}, Nat{t}) == pre);
      REQUIRE(seq_proper_prefix(Nat{s}, Nat{t}) == (pre && s != t));
    }
  }
}

TEST_CASE("Ackermann coding") {
  CHECK(ack_encode(FinSet{}) == Nat{0});
  CHECK(ack_encode(FinSet{Nat{0}, Nat{2}}) == Nat{5});
  CHECK_FALSE(ack_member(1, 5));
  CHECK(ack_member(2, 5));
  for (unsigned mask = 0; mask < (1u << 12); ++mask) {
    std::vector<Nat> xs;
    for (unsigned i = 0; i < 12; ++i) {
      if (mask & (1u << i)) xs.emplace_back(i);
    }
    const FinSet s(xs);
    REQUIRE(ack_encode(s) == Nat{mask});
    REQUIRE(ack_decode(ack_encode(s)) == s);
  }
}

TEST_CASE("FinSet basics") {
  const FinSet s(std::vector<Nat>{Nat{5}, Nat{1}, Nat{5}, Nat{3}});
  CHECK(s.cardinality() == 3);
  CHECK(s.size() == Nat{6});
  CHECK(FinSet{}.size() == Nat{0});
  CHECK(s.contains(3));
  CHECK_FALSE(s.contains(4));
}

TEST_CASE("trees") {
  CHECK(is_tree(FinSet{}));
  CHECK(is_tree(FinSet{Nat{1}, Nat{2}, Nat{5}}));
  CHECK_FALSE(is_tree(FinSet{Nat{5}}));
  CHECK_FALSE(is_tree(FinSet{Nat{0}, Nat{1}}));
}

TEST_CASE("base pairing") {
  CHECK(base_pair(3, 4, 10) == Nat{34});
  CHECK(base_pair(0, 0, 17) == Nat{0});
  auto [q, r] = base_unpair(34, 10);
  CHECK(q == Nat{3});
  CHECK(r == Nat{4});
  CHECK_THROWS_AS(base_unpair(34, 0), CodecError);
}
