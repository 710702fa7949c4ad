#pragma once

// Arithmetic in GF(2^n), polynomial basis, with log/antilog tables.
//
// An element is the n-bit vector of coefficients of its residue polynomial
// (bit i = coefficient of x^i). The same integer is used as the index into
// lookup tables of (n,n)-functions. 0^{-1} is defined as 0 everywhere.

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace diff4 {

struct Element {
  std::uint32_t bits = 0;

  constexpr Element() = default;
  constexpr explicit Element(std::uint32_t b) : bits(b) {}

  constexpr auto operator<=>(const Element &) const = default;
};

inline constexpr int kMinDegree = 2;
inline constexpr int kMaxDegree = 20;

class Field {
public:
  // Validates that `xi` has multiplicative order 2^n - 1 modulo `poly`,
  // which also proves `poly` irreducible. Throws std::invalid_argument.
  Field(int n, std::uint32_t poly, std::uint32_t xi);

  // Conway polynomial for n, generator = class of the indeterminate.
  static std::shared_ptr<const Field> builtin(int n);

  // Parses "n=<int>, poly=<hex>, xi=<hex>"; xi defaults to 2 when omitted.
  static std::shared_ptr<const Field> from_config(std::string_view text);
  std::string to_config() const;

  int degree() const { return n_; }
  std::uint32_t size() const { return size_; }
  std::uint32_t mask() const { return size_ - 1; }
  std::uint32_t poly() const { return poly_; }
  Element primitive() const { return Element{xi_}; }
  bool contains(Element x) const { return x.bits < size_; }

  Element zero() const { return Element{0}; }
  Element one() const { return Element{1}; }

  Element add(Element x, Element y) const;
  Element mul(Element x, Element y) const;
  Element inv(Element x) const;
  Element div(Element x, Element y) const { return mul(x, inv(y)); }
  Element square(Element x) const { return mul(x, x); }
  Element pow(Element x, std::uint64_t e) const;
  int trace(Element x) const;

  // Shift-and-add product, independent of the log tables.
  Element mul_reference(Element x, Element y) const;
  // Extended Euclid over F_2[x]; inv_euclid(0) = 0.
  Element inv_euclid(Element x) const;

  Element element_of_order_3() const;
  std::uint32_t discrete_log(Element x) const;
  // xi^k for any k (reduced mod 2^n - 1).
  Element exp(std::uint64_t k) const;

  // Mask u with Tr(x) = <u, x> (bit-dot product).
  std::uint32_t trace_mask() const { return trace_mask_; }
  // Mask u with Tr(a*x) = <u, x> for every x.
  std::uint32_t linear_functional(Element a) const;

  bool same_as(const Field &other) const {
    return n_ == other.n_ && poly_ == other.poly_ && xi_ == other.xi_;
  }

  // Unchecked fast paths for inner loops; arguments must be valid elements.
  std::uint32_t mul_raw(std::uint32_t x, std::uint32_t y) const {
    if (x == 0 || y == 0) return 0;
    return exp_[log_[x] + log_[y]];
  }
  std::uint32_t inv_raw(std::uint32_t x) const {
    if (x == 0) return 0;
    return exp_[order_ - log_[x]];
  }
  int trace_raw(std::uint32_t x) const {
    return __builtin_parity(x & trace_mask_);
  }

private:
  void check(Element x) const;

  int n_;
  std::uint32_t size_;
  std::uint32_t order_;
  std::uint32_t poly_;
  std::uint32_t xi_;
  std::uint32_t trace_mask_ = 0;
  std::vector<std::uint32_t> exp_;  // length 2*order_, exp_[k] = xi^k
  std::vector<std::uint32_t> log_;  // log_[0] unused
};

using FieldPtr = std::shared_ptr<const Field>;

// Conway polynomial of degree n over F_2 (bit i = coefficient of x^i).
std::uint32_t conway_polynomial(int n);

std::string to_hex(std::uint32_t v);
std::uint32_t parse_hex(std::string_view s);

} // namespace diff4
