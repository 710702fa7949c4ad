#include "doctest.h"

#include <algorithm>
#include <set>
#include <sstream>

#include "diff4/construct.hpp"
#include "diff4/spectra.hpp"
#include "oracles.hpp"

using namespace diff4;

namespace {

// Sets recomputed from the trace conditions with oracle arithmetic.
struct SetOracle {
  std::set<std::uint32_t> W, VM;
  explicit SetOracle(const Field &f) {
    const int n = f.degree();
    const auto p = f.poly();
    for (std::uint32_t x = 0; x < f.size(); ++x) {
      const int tx = oracle::trace(x, p, n);
      const int tj = oracle::trace(oracle::inverse(x ^ 1u, p, n), p, n);
      if (tx == 0 && tj == 0) W.insert(x);
      if (tx == 1 && tj == 1) VM.insert(x);
    }
  }
};

std::vector<Element> as_elements(const std::set<std::uint32_t> &s) {
  std::vector<Element> out;
  for (auto x : s) out.emplace_back(x);
  return out;
}

} // namespace

TEST_CASE("W and V_M match the trace definitions") {
  for (int n : {6, 8, 10}) {
    CAPTURE(n);
    auto f = Field::builtin(n);
    SetOracle o(*f);
    CHECK(compute_W(*f) == as_elements(o.W));
    CHECK(compute_VM(*f).elements() == as_elements(o.VM));
    CHECK(o.W.count(0) == 1);
    CHECK(o.W.count(1) == 1);
    CHECK(compute_W(*f).size() == compute_VM(*f).elements().size());
  }
  CHECK(compute_W(*Field::builtin(6)).size() == 14);
  CHECK(compute_VM(*Field::builtin(6)).size() == 7);
  CHECK_THROWS_AS(compute_W(*Field::builtin(7)), std::domain_error);
}

TEST_CASE("W and V_M split the set where Tr(x) = Tr(1/(x+1))") {
  for (int n = 6; n <= 12; n += 2) {
    auto f = Field::builtin(n);
    std::vector<std::uint8_t> mark(f->size(), 0);
    for (auto x : compute_W(*f)) mark[x.bits] |= 1;
    for (auto x : compute_VM(*f).elements()) mark[x.bits] |= 2;
    for (std::uint32_t x = 0; x < f->size(); ++x) {
      const bool equal = f->trace(Element{x}) == f->trace(f->inv(f->add(Element{x}, f->one())));
      REQUIRE(mark[x] != 3);
      REQUIRE((mark[x] != 0) == equal);
    }
  }
}

TEST_CASE("U is closed under phi up to n = 12") {
  for (int n = 6; n <= 12; n += 2) {
    auto f = Field::builtin(n);
    const std::size_t k = compute_VM(*f).size();
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      auto spec = random_V(f, (seed * k) / 4, seed);
      for (std::uint32_t x = 0; x < f->size(); ++x)
        if (spec.in_U(Element{x})) REQUIRE(spec.in_U(phi(*f, Element{x})));
    }
  }
}

TEST_CASE("phi is an involution fixing the pair structure") {
  for (int n : {6, 8, 10}) {
    auto f = Field::builtin(n);
    CHECK(phi(*f, f->zero()) == f->one());
    for (std::uint32_t x = 0; x < f->size(); ++x) {
      const Element e{x};
      const auto want = oracle::inverse(oracle::inverse(x, f->poly(), n) ^ 1u, f->poly(), n);
      REQUIRE(phi(*f, e).bits == want);
      REQUIRE(phi(*f, phi(*f, e)) == e);
    }
    // pairs of V_M are {x, phi(x)} with x != phi(x)
    for (auto [a, b] : compute_VM(*f).pairs) {
      CHECK(a != b);
      CHECK(phi(*f, a) == b);
    }
  }
}

TEST_CASE("V0 and V1 split V_M into closed halves") {
  for (int n : {6, 8}) {
    auto f = Field::builtin(n);
    auto [v0, v1] = split_V0_V1(*f);
    std::set<std::uint32_t> s0, s1;
    for (auto x : v0) s0.insert(x.bits);
    for (auto x : v1) s1.insert(x.bits);
    for (auto x : s0) CHECK(s1.count(x) == 0);
    CHECK(v0.size() + v1.size() == compute_VM(*f).elements().size());
    for (auto x : v0) CHECK(s0.count(phi(*f, x).bits) == 1);
    for (auto x : v1) CHECK(s1.count(phi(*f, x).bits) == 1);
    CHECK_NOTHROW(SubsetSpec::validate(f, v0));
    CHECK_NOTHROW(SubsetSpec::validate(f, v1));
  }
}

TEST_CASE("subset validation") {
  auto f = Field::builtin(6);
  auto xi = [&](std::uint32_t k) { return f->exp(k); };

  auto empty = SubsetSpec::validate(f, {});
  CHECK(empty.u_size() == compute_W(*f).size());
  for (auto w : compute_W(*f)) CHECK(empty.in_U(w));

  std::vector<Element> row2 = {xi(21), xi(42)};
  auto spec = SubsetSpec::validate(f, row2);
  CHECK(spec.v_pairs().size() == 1);
  CHECK(spec.u_size() == 16);

  std::vector<Element> dup = {xi(21), xi(42), xi(21)};
  CHECK(SubsetSpec::validate(f, dup).v_pairs().size() == 1);

  std::vector<Element> lonely = {xi(3)};
  try {
    SubsetSpec::validate(f, lonely);
    FAIL("expected a validation error");
  } catch (const ValidationError &e) {
    CHECK(e.offending() == xi(3));
    CHECK(std::string(e.what()).find("unmatched") != std::string::npos);
  }

  // an element of W is not allowed in V
  std::vector<Element> from_w = {compute_W(*f)[2]};
  CHECK_THROWS_AS(SubsetSpec::validate(f, from_w), ValidationError);
  std::vector<Element> outside = {Element{64}};
  CHECK_THROWS_AS(SubsetSpec::validate(f, outside), ValidationError);
  CHECK_THROWS_AS(SubsetSpec::validate(Field::builtin(7), {}), std::domain_error);
}

TEST_CASE("build_G is the switched inverse") {
  for (int n : {6, 8}) {
    auto f = Field::builtin(n);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      auto spec = random_V(f, seed % (compute_VM(*f).size() + 1), seed);
      VFunc g = build_G(spec);
      REQUIRE(is_permutation(g));
      CHECK(g(f->zero()) == f->one());
      for (std::uint32_t x = 0; x < f->size(); ++x) {
        const std::uint32_t want = oracle::inverse(x, f->poly(), n) ^ (spec.in_U(Element{x}) ? 1u : 0u);
        REQUIRE(g.table()[x] == want);
        // U is closed under phi
        if (spec.in_U(Element{x})) REQUIRE(spec.in_U(phi(*f, Element{x})));
      }
    }
  }
}

TEST_CASE("closed forms agree with the subset route") {
  for (int n : {6, 8, 10}) {
    auto f = Field::builtin(n);
    for (Named name : {Named::G1, Named::G2, Named::G3, Named::GM})
      CHECK(build_named(f, name) == build_G(named_subset(f, name)));
    // F_i switch the input of the inverse on the set where Tr(1/x) and Tr(1/(x+1)) are 1
    const auto p = f->poly();
    for (Named name : {Named::F1, Named::F2, Named::F3}) {
      VFunc g = build_named(f, name);
      CHECK(is_permutation(g));
      for (std::uint32_t x = 0; x < f->size(); ++x) {
        const int t1 = oracle::trace(x, p, n);
        const int ti = oracle::trace(oracle::inverse(x, p, n), p, n);
        const int tj = oracle::trace(oracle::inverse(x ^ 1u, p, n), p, n);
        int sw = ti & tj;
        if (name == Named::F2) sw &= 1 - t1;
        if (name == Named::F3) sw &= t1;
        REQUIRE(g.table()[x] == oracle::inverse(x ^ static_cast<std::uint32_t>(sw), p, n));
      }
    }
  }
  CHECK_THROWS_AS(build_named(Field::builtin(4), Named::G1), std::domain_error);
  CHECK_THROWS_AS(named_subset(Field::builtin(6), Named::F1), std::invalid_argument);
  CHECK(parse_named("GM") == Named::GM);
  CHECK_THROWS_AS(parse_named("G4"), std::invalid_argument);
  for (Named name : kAllNamed) CHECK(parse_named(to_string(name)) == name);
}

TEST_CASE("named spectra at n = 6") {
  auto f = Field::builtin(6);
  CHECK(differential_spectrum(build_named(f, Named::G3)).to_string() == "[2235,1578,219]");
  CHECK(differential_spectrum(build_named(f, Named::GM)).to_string() == "[2301,1446,285]");
  CHECK(differential_spectrum(build_named(f, Named::F3)).to_string() == "[2127,1794,111]");
}

TEST_CASE("random_V") {
  auto f = Field::builtin(8);
  const std::size_t k = compute_VM(*f).size();
  CHECK(random_V(f, 0, 4).v_pairs().size() == 0);
  CHECK(random_V(f, k, 4).v_elements() == compute_VM(*f).elements());
  CHECK(random_V(f, 5, 77).v_elements() == random_V(f, 5, 77).v_elements());
  CHECK(random_V(f, 5, 77).v_elements() != random_V(f, 5, 78).v_elements());
  CHECK_THROWS_AS(random_V(f, k + 1, 0), std::invalid_argument);

  // every pair is reachable and the pair count is respected
  std::set<std::vector<Element>> distinct;
  auto g = Field::builtin(6);
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    auto spec = random_V(g, 2, seed);
    CHECK(spec.v_pairs().size() == 2);
    distinct.insert(spec.v_elements());
  }
  CHECK(distinct.size() == oracle::binomial(7, 2));
}

TEST_CASE("V files") {
  auto f = Field::builtin(6);
  std::istringstream in("field n=6\n# Table row\npair 3 53\npairhex 1b 1e\n");
  VFile vf = read_vfile(in, nullptr);
  CHECK(vf.field->same_as(*f));
  auto spec = SubsetSpec::validate(vf.field, vf.elements);
  CHECK(spec.v_pairs().size() == 2);
  CHECK(exponent_pairs(spec) == std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 53}, {6, 43}});

  std::stringstream ss;
  write_vfile(ss, spec);
  VFile back = read_vfile(ss, nullptr);
  CHECK(SubsetSpec::validate(back.field, back.elements).v_elements() == spec.v_elements());

  std::istringstream bad("field n=6\npair 3\n");
  CHECK_THROWS_AS(read_vfile(bad, nullptr), std::invalid_argument);
  std::istringstream unknown("field n=6\ntriple 1 2 3\n");
  CHECK_THROWS_AS(read_vfile(unknown, nullptr), std::invalid_argument);
}
