#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "funalg/derivation.hpp"
#include "funalg/enumeration.hpp"
#include "funalg/errors.hpp"
#include "funalg/poly_bound.hpp"
#include "funalg/reference.hpp"

using namespace funalg;

using ref::random_derivation;

TEST_CASE("validate against classes") {
  CHECK(validate(d::mu(d::lt()), AlgebraClass::DA));
  CHECK_FALSE(validate(d::pr(d::I(), d::I()), AlgebraClass::DA));
  CHECK(validate(d::snr(d::I(), d::I()), AlgebraClass::TA));
  CHECK_FALSE(validate(d::snr(d::I(), d::I()), AlgebraClass::SA));
  CHECK(validate(d::comp(d::smash(), d::bpr(d::I(), d::I())), AlgebraClass::SSA));
  CHECK_FALSE(validate(d::E(), AlgebraClass::DSA));
}

TEST_CASE("DA membership is inherited by every class") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const Derivation d = random_derivation(rng, AlgebraClass::DA, 4);
    for (AlgebraClass c : kAllClasses) REQUIRE(validate(d, c));
  }
}

TEST_CASE("S-expression printing and parsing") {
  CHECK(d_print(d::comp(d::S(), d::I())) == "(comp S I)");
  CHECK(d_parse("(mu (comp S mul))") == d::mu(d::comp(d::S(), d::mul())));
  CHECK(d_parse("  ( P\n S\tI )") == d::P(d::S(), d::I()));
  CHECK_THROWS_AS(d_parse("(pr I)"), ParseError);
  CHECK_THROWS_AS(d_parse("(foo I)"), ParseError);
  CHECK_THROWS_AS(d_parse("(comp S I"), ParseError);
  CHECK_THROWS_AS(d_parse("mu"), ParseError);
  try {
    d_parse("(comp S bogus)");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 8);
  }

  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const Derivation d = random_derivation(rng, AlgebraClass::SSA, 5);
    REQUIRE(d_parse(d_print(d)) == d);
  }
}

TEST_CASE("enumeration order") {
  const auto first = enumerate(AlgebraClass::DA, 12);
  REQUIRE(first.size() == 12);
  CHECK(first[0] == d::X());
  CHECK(first[1] == d::S());
  std::set<std::string> seen;
  for (const auto& d : first) CHECK(seen.insert(d_print(d)).second);
}

TEST_CASE("enumeration round trip and child precedence") {
  std::mt19937_64 rng(9);
  for (AlgebraClass c : {AlgebraClass::DA, AlgebraClass::TA, AlgebraClass::PRA}) {
    Enumeration e(c);
    for (int i = 0; i < 150; ++i) {
      const Derivation d = random_derivation(rng, c, 4);
      const Nat idx = e.index_of(d);
      REQUIRE(e.at(idx) == d);
      for (const Derivation& ch : d.children()) REQUIRE(e.index_of(ch) < idx);
    }
  }
  Enumeration e(AlgebraClass::DA);
  for (unsigned i = 0; i < 300; ++i) REQUIRE(e.index_of(e.at(Nat{i})) == Nat{i});
  CHECK_THROWS_AS(e.index_of(d::pr(d::I(), d::I())), ClassError);
}

TEST_CASE("polynomial bounds") {
  CHECK(poly_bound(d::I())(7) == Nat{7});
  CHECK(poly_bound(d::comp(d::S(), d::S()))(5) == Nat{7});
  CHECK(poly_bound(d::P(d::I(), d::I()))(1) == Nat{16});
  CHECK_THROWS_AS(poly_bound(d::E()), UnboundedOperator);
  CHECK_THROWS_AS(poly_bound(d::comp(d::I(), d::pr(d::I(), d::I()))), UnboundedOperator);

  const PolyBound b = PolyBound::parse("n*n + 3*(n+1)");
  CHECK(b(4) == Nat{31});
  CHECK(PolyBound::parse(b.to_string())(9) == b(9));
  CHECK_THROWS_AS(PolyBound::parse("n +"), ParseError);
  CHECK_THROWS_AS(PolyBound::parse("m"), ParseError);

  std::mt19937_64 rng(13);
  for (int i = 0; i < 100; ++i) {
    const PolyBound pb = poly_bound(random_derivation(rng, AlgebraClass::TA, 3));
    Nat prev = pb(0);
    for (unsigned x = 1; x <= 60; ++x) {
      const Nat cur = pb(Nat{x});
      REQUIRE(prev <= cur);
      prev = cur;
    }
  }
}
