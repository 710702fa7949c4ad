#include "diff4/gf2n.hpp"

#include <array>
#include <charconv>
#include <stdexcept>

namespace diff4 {

namespace {

// Lübeck's table of Conway polynomials over F_2, degrees 0..20.
constexpr std::array<std::uint32_t, kMaxDegree + 1> kConway = {
    0x0,      0x3,     0x7,     0xB,     0x13,    0x25,     0x5B,
    0x83,     0x11D,   0x211,   0x46F,   0x805,   0x10EB,   0x201B,
    0x40A9,   0x8035,  0x1002D, 0x20009, 0x41403, 0x80027,  0x1006F3,
};

int poly_degree(std::uint64_t p) { return p == 0 ? -1 : 63 - __builtin_clzll(p); }

} // namespace

std::uint32_t conway_polynomial(int n) {
  if (n < 1 || n > kMaxDegree)
    throw std::invalid_argument("no Conway polynomial stored for n=" + std::to_string(n));
  return kConway[static_cast<std::size_t>(n)];
}

std::string to_hex(std::uint32_t v) {
  std::array<char, 16> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, 16);
  return std::string(buf.data(), end);
}

std::uint32_t parse_hex(std::string_view s) {
  if (s.starts_with("0x") || s.starts_with("0X")) s.remove_prefix(2);
  std::uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, 16);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw std::invalid_argument("bad hex value '" + std::string(s) + "'");
  return v;
}

Field::Field(int n, std::uint32_t poly, std::uint32_t xi) : n_(n), poly_(poly), xi_(xi) {
  if (n < kMinDegree || n > kMaxDegree)
    throw std::invalid_argument("field degree must be in [2, 20], got " + std::to_string(n));
  size_ = 1u << n;
  order_ = size_ - 1;
  if (poly_degree(poly) != n)
    throw std::invalid_argument("reduction polynomial 0x" + to_hex(poly) + " does not have degree " +
                                std::to_string(n));
  if ((poly & 1u) == 0)
    throw std::invalid_argument("reduction polynomial 0x" + to_hex(poly) + " is divisible by x");
  if (xi == 0 || xi >= size_)
    throw std::invalid_argument("primitive element 0x" + to_hex(xi) + " is not a nonzero field element");

  // An element of order 2^n - 1 makes every nonzero residue a unit, so the
  // quotient ring is a field and poly is irreducible.
  exp_.resize(2 * static_cast<std::size_t>(order_));
  log_.assign(size_, 0);
  std::uint32_t acc = 1;
  for (std::uint32_t k = 0; k < order_; ++k) {
    if (k > 0 && acc == 1)
      throw std::invalid_argument("0x" + to_hex(xi) + " has order " + std::to_string(k) +
                                  ", not 2^n-1 modulo 0x" + to_hex(poly));
    exp_[k] = acc;
    log_[acc] = k;
    acc = mul_reference(Element{acc}, Element{xi}).bits;
  }
  if (acc != 1)
    throw std::invalid_argument("0x" + to_hex(poly) + " is not irreducible");
  for (std::uint32_t k = 0; k < order_; ++k) exp_[order_ + k] = exp_[k];

  for (int i = 0; i < n_; ++i) {
    // Tr(x^i) = sum of the n Frobenius conjugates.
    std::uint32_t y = 1u << i, t = 0;
    for (int k = 0; k < n_; ++k) {
      t ^= y;
      y = mul_raw(y, y);
    }
    if (t > 1) throw std::logic_error("trace left the prime field");
    trace_mask_ |= t << i;
  }
}

std::shared_ptr<const Field> Field::builtin(int n) {
  if (n < kMinDegree || n > kMaxDegree)
    throw std::invalid_argument("field degree must be in [2, 20], got " + std::to_string(n));
  return std::make_shared<const Field>(n, conway_polynomial(n), 2u);
}

std::shared_ptr<const Field> Field::from_config(std::string_view text) {
  int n = -1;
  std::uint32_t poly = 0, xi = 2;
  bool have_poly = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto next = text.find_first_of(", \t\r\n", pos);
    if (next == std::string_view::npos) next = text.size();
    auto tok = text.substr(pos, next - pos);
    pos = next + 1;
    if (tok.empty()) continue;
    auto eq = tok.find('=');
    if (eq == std::string_view::npos)
      throw std::invalid_argument("field config: expected key=value, got '" + std::string(tok) + "'");
    auto key = tok.substr(0, eq), val = tok.substr(eq + 1);
    if (key == "n") {
      auto [p, ec] = std::from_chars(val.data(), val.data() + val.size(), n);
      if (ec != std::errc{} || p != val.data() + val.size())
        throw std::invalid_argument("field config: bad n '" + std::string(val) + "'");
    } else if (key == "poly") {
      poly = parse_hex(val);
      have_poly = true;
    } else if (key == "xi") {
      xi = parse_hex(val);
    } else {
      throw std::invalid_argument("field config: unknown key '" + std::string(key) + "'");
    }
  }
  if (n < 0) throw std::invalid_argument("field config: missing n");
  if (!have_poly) poly = conway_polynomial(n);
  return std::make_shared<const Field>(n, poly, xi);
}

std::string Field::to_config() const {
  return "n=" + std::to_string(n_) + ", poly=" + to_hex(poly_) + ", xi=" + to_hex(xi_);
}

void Field::check(Element x) const {
  if (x.bits >= size_)
    throw std::invalid_argument("element 0x" + to_hex(x.bits) + " does not belong to GF(2^" +
                                std::to_string(n_) + ")");
}

Element Field::add(Element x, Element y) const {
  check(x);
  check(y);
  return Element{x.bits ^ y.bits};
}

Element Field::mul(Element x, Element y) const {
  check(x);
  check(y);
  return Element{mul_raw(x.bits, y.bits)};
}

Element Field::inv(Element x) const {
  check(x);
  return Element{inv_raw(x.bits)};
}

Element Field::pow(Element x, std::uint64_t e) const {
  check(x);
  Element result = one();
  Element base = x;
  while (e != 0) {
    if (e & 1) result = Element{mul_raw(result.bits, base.bits)};
    base = Element{mul_raw(base.bits, base.bits)};
    e >>= 1;
  }
  return result;
}

int Field::trace(Element x) const {
  check(x);
  return trace_raw(x.bits);
}

Element Field::mul_reference(Element x, Element y) const {
  check(x);
  check(y);
  std::uint64_t a = x.bits, b = y.bits, prod = 0;
  while (b != 0) {
    if (b & 1) prod ^= a;
    a <<= 1;
    b >>= 1;
  }
  for (int d = 2 * n_ - 2; d >= n_; --d)
    if (prod >> d & 1) prod ^= static_cast<std::uint64_t>(poly_) << (d - n_);
  return Element{static_cast<std::uint32_t>(prod)};
}

Element Field::inv_euclid(Element x) const {
  check(x);
  if (x.bits == 0) return zero();
  // Invariant: r0 = s0 * x (mod poly), r1 = s1 * x (mod poly).
  std::uint64_t r0 = poly_, r1 = x.bits, s0 = 0, s1 = 1;
  while (r1 != 1) {
    int shift = poly_degree(r0) - poly_degree(r1);
    if (shift < 0) {
      std::swap(r0, r1);
      std::swap(s0, s1);
      continue;
    }
    r0 ^= r1 << shift;
    s0 ^= s1 << shift;
    if (r0 == 0) throw std::logic_error("reduction polynomial is not irreducible");
    if (poly_degree(r0) < poly_degree(r1)) {
      std::swap(r0, r1);
      std::swap(s0, s1);
    }
  }
  for (int d = poly_degree(s1); d >= n_; --d)
    if (s1 >> d & 1) s1 ^= static_cast<std::uint64_t>(poly_) << (d - n_);
  return Element{static_cast<std::uint32_t>(s1)};
}

Element Field::element_of_order_3() const {
  if (n_ % 2 != 0)
    throw std::domain_error("GF(2^" + std::to_string(n_) + ") has no element of order 3 (n is odd)");
  return exp(order_ / 3);
}

std::uint32_t Field::discrete_log(Element x) const {
  check(x);
  if (x.bits == 0) throw std::domain_error("discrete_log(0) is undefined");
  return log_[x.bits];
}

Element Field::exp(std::uint64_t k) const { return Element{exp_[k % order_]}; }

std::uint32_t Field::linear_functional(Element a) const {
  check(a);
  std::uint32_t u = 0;
  for (int i = 0; i < n_; ++i) u |= static_cast<std::uint32_t>(trace_raw(mul_raw(a.bits, 1u << i))) << i;
  return u;
}

} // namespace diff4
