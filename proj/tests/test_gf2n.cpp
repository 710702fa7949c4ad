#include "doctest.h"

#include <random>
#include <set>

#include "diff4/gf2n.hpp"
#include "oracles.hpp"

using namespace diff4;

TEST_CASE("built-in polynomials are the Conway polynomials") {
  const auto table = oracle::conway_table(kMaxDegree);
  for (int n = kMinDegree; n <= kMaxDegree; ++n) {
    CAPTURE(n);
    CHECK(conway_polynomial(n) == table[n]);
    CHECK(Field::builtin(n)->poly() == table[n]);
  }
}

TEST_CASE("addition") {
  auto f = Field::builtin(6);
  for (std::uint32_t x = 0; x < 64; ++x) {
    CHECK(f->add(Element{x}, f->zero()) == Element{x});
    CHECK(f->add(Element{x}, Element{x}) == f->zero());
  }
  CHECK(f->add(f->primitive(), f->square(f->primitive())) == Element{0b110});
}

TEST_CASE("multiplication agrees with the shift-and-reduce oracle") {
  for (int n : {2, 3, 6, 8, 11}) {
    auto f = Field::builtin(n);
    for (std::uint32_t x = 0; x < f->size(); ++x)
      for (std::uint32_t y = 0; y < f->size(); ++y) {
        const auto want = oracle::mulmod(x, y, f->poly(), n);
        REQUIRE(f->mul(Element{x}, Element{y}).bits == want);
        REQUIRE(f->mul_reference(Element{x}, Element{y}).bits == want);
      }
  }
  auto f = Field::builtin(6);
  for (std::uint32_t y = 0; y < 64; ++y) {
    CHECK(f->mul(f->zero(), Element{y}) == f->zero());
    CHECK(f->mul(f->one(), Element{y}) == Element{y});
  }
  CHECK(f->mul(f->primitive(), f->pow(f->primitive(), 62)) == f->one());
}

TEST_CASE("multiplication samples at n = 20") {
  auto f = Field::builtin(20);
  std::mt19937 rng(5);
  for (int i = 0; i < 20000; ++i) {
    const std::uint32_t x = rng() & f->mask(), y = rng() & f->mask();
    REQUIRE(f->mul(Element{x}, Element{y}).bits == oracle::mulmod(x, y, f->poly(), 20));
  }
}

TEST_CASE("inversion routes agree") {
  for (int n : {2, 5, 6, 8, 10, 12}) {
    auto f = Field::builtin(n);
    CHECK(f->inv(f->zero()) == f->zero());
    CHECK(f->inv(f->one()) == f->one());
    for (std::uint32_t x = 1; x < f->size(); ++x) {
      const Element e{x};
      REQUIRE(f->mul(e, f->inv(e)) == f->one());
      REQUIRE(f->inv_euclid(e) == f->inv(e));
      REQUIRE(f->inv(e).bits == oracle::inverse(x, f->poly(), n));
    }
  }
  auto f = Field::builtin(6);
  std::uint32_t found = 0;
  for (std::uint32_t y = 1; y < 64; ++y)
    if (oracle::mulmod(f->primitive().bits, y, f->poly(), 6) == 1) found = y;
  CHECK(f->inv(f->primitive()).bits == found);
  CHECK(f->inv(f->primitive()) == f->pow(f->primitive(), 62));
}

TEST_CASE("powers") {
  auto f = Field::builtin(6);
  Element acc = f->one();
  for (int i = 0; i < 63; ++i) acc = f->mul(acc, f->primitive());
  CHECK(acc == f->one());
  CHECK(f->pow(f->primitive(), 63) == f->one());
  for (std::uint32_t x = 0; x < 64; ++x) CHECK(f->pow(Element{x}, 0) == f->one());
  for (int n = 2; n <= 16; ++n) {
    auto g = Field::builtin(n);
    CHECK(g->pow(g->primitive(), g->size() - 1) == g->one());
  }
}

TEST_CASE("trace") {
  for (int n : {2, 3, 6, 7, 8, 10, 12}) {
    CAPTURE(n);
    auto f = Field::builtin(n);
    CHECK(f->trace(f->zero()) == 0);
    if (n % 2 == 0) CHECK(f->trace(f->one()) == 0);
    std::uint32_t zeros = 0;
    for (std::uint32_t x = 0; x < f->size(); ++x) {
      const int t = oracle::trace(x, f->poly(), n);
      REQUIRE((t == 0 || t == 1));
      REQUIRE(f->trace(Element{x}) == t);
      REQUIRE(f->trace(f->square(Element{x})) == t);
      zeros += t == 0;
    }
    CHECK(zeros == f->size() / 2);
  }
}

TEST_CASE("linear functionals represent Tr(a x)") {
  for (int n : {4, 6, 9}) {
    auto f = Field::builtin(n);
    for (std::uint32_t a = 0; a < f->size(); ++a) {
      const std::uint32_t u = f->linear_functional(Element{a});
      for (std::uint32_t x = 0; x < f->size(); ++x)
        REQUIRE(__builtin_parity(u & x) == oracle::trace(oracle::mulmod(a, x, f->poly(), n), f->poly(), n));
    }
    std::set<std::uint32_t> seen;
    for (std::uint32_t a = 0; a < f->size(); ++a) seen.insert(f->linear_functional(Element{a}));
    CHECK(seen.size() == f->size());
  }
}

TEST_CASE("element of order 3") {
  auto f = Field::builtin(6);
  const Element w = f->element_of_order_3();
  CHECK(w == f->pow(f->primitive(), 21));
  CHECK(f->pow(w, 3) == f->one());
  CHECK(w != f->one());
  CHECK(f->add(f->add(f->pow(w, 2), w), f->one()) == f->zero());
  CHECK_THROWS_AS(Field::builtin(7)->element_of_order_3(), std::domain_error);
}

TEST_CASE("discrete logarithm") {
  auto f = Field::builtin(6);
  CHECK(f->discrete_log(f->one()) == 0);
  CHECK(f->discrete_log(f->primitive()) == 1);
  CHECK(f->discrete_log(f->pow(f->primitive(), 21)) == 21);
  CHECK_THROWS_AS(f->discrete_log(f->zero()), std::domain_error);
  auto g = Field::builtin(10);
  for (std::uint32_t x = 1; x < g->size(); ++x) REQUIRE(g->exp(g->discrete_log(Element{x})) == Element{x});
}

TEST_CASE("field construction and config") {
  CHECK_THROWS_AS(Field(6, 0x41, 2), std::invalid_argument);  // x^6 + 1 is reducible
  CHECK_THROWS_AS(Field(6, 0x49, 2), std::invalid_argument);  // x^6 + x^3 + 1: x has order 9
  CHECK_NOTHROW(Field(6, 0x43, 2));
  CHECK_THROWS_AS(Field(4, 0x1F, 2), std::invalid_argument);  // irreducible but x has order 5
  CHECK_NOTHROW(Field(4, 0x1F, 0x3));                          // x + 1 is primitive there
  CHECK_THROWS_AS(Field(1, 0x3, 1), std::invalid_argument);
  CHECK_THROWS_AS(Field(21, 0x200005, 2), std::invalid_argument);

  auto f = Field::from_config("n=8, poly=11d, xi=2");
  CHECK(f->same_as(*Field::builtin(8)));
  CHECK(Field::from_config("n=8")->same_as(*Field::builtin(8)));
  CHECK(Field::from_config(f->to_config())->same_as(*f));
  auto alt = Field::from_config("n=8, poly=11b, xi=3");  // AES polynomial, generator x+1
  CHECK(alt->mul(Element{0x53}, Element{0xCA}) == alt->one());
  CHECK_THROWS_AS(Field::from_config("poly=11d"), std::invalid_argument);
  CHECK_THROWS_AS(Field::from_config("n=8, poly=zz"), std::invalid_argument);

  auto g = Field::builtin(6);
  CHECK_THROWS_AS(g->mul(Element{64}, g->one()), std::invalid_argument);
  CHECK(parse_hex(to_hex(0xBEEF)) == 0xBEEF);
}

TEST_CASE("inversion routes agree on random samples in every field") {
  std::mt19937 rng(17);
  for (int n = kMinDegree; n <= kMaxDegree; ++n) {
    auto f = Field::builtin(n);
    for (int i = 0; i < 1000; ++i) {
      const Element x{1 + static_cast<std::uint32_t>(rng() % (f->size() - 1))};
      REQUIRE(f->mul(x, f->inv(x)) == f->one());
      REQUIRE(f->inv_euclid(x) == f->inv(x));
    }
  }
}

TEST_CASE("trace balance and powers of xi up to n = 14") {
  for (int n = kMinDegree; n <= 14; ++n) {
    CAPTURE(n);
    auto f = Field::builtin(n);
    std::uint32_t zeros = 0;
    for (std::uint32_t x = 0; x < f->size(); ++x) zeros += f->trace(Element{x}) == 0;
    CHECK(zeros == f->size() / 2);
    std::vector<bool> seen(f->size(), false);
    Element p = f->one();
    bool repeated = false;
    for (std::uint32_t k = 0; k + 1 < f->size(); ++k) {
      repeated = repeated || seen[p.bits] || p.bits == 0;
      seen[p.bits] = true;
      p = f->mul(p, f->primitive());
    }
    CHECK_FALSE(repeated);
    CHECK(p == f->one());
  }
}
