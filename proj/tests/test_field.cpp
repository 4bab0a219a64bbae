#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "epw/field.hpp"
#include "epw/rng.hpp"

using namespace epw;

TEST_CASE("rational arithmetic is exact and normalized") {
  Field Q = Field::rationals();
  Fel a = Q.parse("3/7"), b = Q.parse("2/7");
  CHECK(Q.str(Q.add(a, b)) == "5/7");
  CHECK(Q.str(Q.mul(a, b)) == "6/49");
  CHECK(Q.str(Q.sub(a, a)) == "0");
  CHECK(Q.str(Q.div(a, b)) == "3/2");
  CHECK(Q.str(Q.parse("4/8")) == "1/2");
  CHECK_THROWS_AS(Q.inv(Q.zero()), error);
}

TEST_CASE("prime field basics") {
  Field F = Field::prime(7);
  CHECK(F.size() == 7);
  Fel five = F.from_int(5);
  CHECK(F.eq(F.mul(five, F.from_int(3)), F.one()));  // 15 = 1 mod 7
  CHECK(F.eq(F.inv(five), F.from_int(3)));
  CHECK(F.eq(F.from_int(-1), F.from_int(6)));
  for (long x = 1; x < 7; ++x) {
    Fel e = F.from_int(x);
    CHECK(F.eq(F.mul(e, F.inv(e)), F.one()));
  }
  CHECK_THROWS_AS(Field::prime(6), error);
  CHECK_THROWS_AS(Field::prime(2), error);
}

TEST_CASE("quadratic extension arithmetic") {
  Field F = Field::prime_square(7);
  CHECK(F.size() == 49);
  CHECK(F.nonsquare() == 3);  // smallest non-square mod 7
  Fel w = F.parse("0+1w");
  CHECK(F.eq(F.mul(w, w), F.from_int(3)));
  // every nonzero element invertible
  for (uint64_t i = 1; i < 49; ++i) {
    Fel e = F.element_from_index(i);
    CHECK(F.eq(F.mul(e, F.inv(e)), F.one()));
  }
  // serialization round trip
  Fel x = F.parse("5+2w");
  CHECK(F.str(x) == "5+2w");
  CHECK(x.a == 5);
  CHECK(x.b == 2);
}

TEST_CASE("sqrt_in_field per contract") {
  Field F7 = Field::prime(7);
  // a = 0 -> 0
  CHECK(F7.eq(*F7.sqrt(F7.zero()), F7.zero()));
  // a = 4 -> 2 or 5
  auto r = F7.sqrt(F7.from_int(4));
  REQUIRE(r.has_value());
  CHECK((r->a == 2 || r->a == 5));
  // a = 3 is not a square in F_7 but becomes one in F_49
  CHECK(!F7.sqrt(F7.from_int(3)).has_value());
  Field F49 = Field::prime_square(7);
  auto r49 = F49.sqrt(F49.from_int(3));
  REQUIRE(r49.has_value());
  CHECK(F49.eq(F49.mul(*r49, *r49), F49.from_int(3)));
  // rationals unsupported
  Field Q = Field::rationals();
  CHECK_THROWS_AS(Q.sqrt(Q.from_int(4)), error);
}

TEST_CASE("sqrt roundtrips on every square of small fields") {
  for (uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
    for (Field F : {Field::prime(p), Field::prime_square(p)}) {
      uint64_t squares = 0;
      for (uint64_t i = 0; i < F.size(); ++i) {
        Fel x = F.element_from_index(i);
        Fel x2 = F.mul(x, x);
        auto r = F.sqrt(x2);
        REQUIRE(r.has_value());
        CHECK(F.eq(F.mul(*r, *r), x2));
        if (auto s = F.sqrt(x); s.has_value()) ++squares;
      }
      // half the nonzero elements plus zero are squares
      CHECK(squares == (F.size() - 1) / 2 + 1);
    }
  }
}

TEST_CASE("splitmix64 is the pinned sequence") {
  SplitMix64 g(0);
  CHECK(g.next() == 0xe220a8397b1dcdafull);
  CHECK(g.next() == 0x6e789e6aa1b965f4ull);
}
