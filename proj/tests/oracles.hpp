#pragma once

// Slow reference computations used only by the tests. None of these call the
// library's arithmetic: products are carry-less shifts reduced bit by bit, and
// the trace is the literal Frobenius sum.

#include <cstdint>
#include <map>
#include <vector>

namespace oracle {

inline std::uint32_t mulmod(std::uint32_t a, std::uint32_t b, std::uint32_t poly, int n) {
  std::uint64_t acc = 0;
  for (int i = 0; i < n; ++i)
    if (b >> i & 1u) acc ^= std::uint64_t{a} << i;
  for (int i = 2 * n - 2; i >= n; --i)
    if (acc >> i & 1u) acc ^= std::uint64_t{poly} << (i - n);
  return static_cast<std::uint32_t>(acc);
}

inline std::uint32_t powmod(std::uint32_t a, std::uint64_t e, std::uint32_t poly, int n) {
  std::uint32_t r = 1;
  while (e) {
    if (e & 1u) r = mulmod(r, a, poly, n);
    a = mulmod(a, a, poly, n);
    e >>= 1;
  }
  return r;
}

// x^(2^n - 2), so inv(0) = 0.
inline std::uint32_t inverse(std::uint32_t a, std::uint32_t poly, int n) {
  return powmod(a, (std::uint64_t{1} << n) - 2, poly, n);
}

inline int trace(std::uint32_t a, std::uint32_t poly, int n) {
  std::uint32_t sum = 0, t = a;
  for (int i = 0; i < n; ++i) {
    sum ^= t;
    t = mulmod(t, t, poly, n);
  }
  return static_cast<int>(sum);  // lies in {0, 1}
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t m) {
  std::vector<std::uint64_t> ps;
  for (std::uint64_t p = 2; p * p <= m; ++p)
    if (m % p == 0) {
      ps.push_back(p);
      while (m % p == 0) m /= p;
    }
  if (m > 1) ps.push_back(m);
  return ps;
}

inline bool x_is_primitive(std::uint32_t poly, int n) {
  const std::uint64_t order = (std::uint64_t{1} << n) - 1;
  if (n == 1) return poly == 0x3;
  if (powmod(2, order, poly, n) != 1) return false;
  for (auto p : prime_factors(order))
    if (powmod(2, order / p, poly, n) == 1) return false;
  return true;
}

// Smallest primitive polynomial (coefficient vector read from x^{n-1} down)
// whose root is compatible with the Conway polynomials of every proper divisor.
inline std::vector<std::uint32_t> conway_table(int max_n) {
  std::vector<std::uint32_t> table(max_n + 1, 0);
  for (int n = 1; n <= max_n; ++n) {
    const std::uint64_t order = (std::uint64_t{1} << n) - 1;
    for (std::uint32_t poly = (1u << n) | 1u; poly < (2u << n); poly += 2) {
      if (!x_is_primitive(poly, n)) continue;
      bool compatible = true;
      for (int d = 1; d < n && compatible; ++d) {
        if (n % d) continue;
        const std::uint32_t y = powmod(2, order / ((std::uint64_t{1} << d) - 1), poly, n);
        std::uint32_t value = 0;  // Horner evaluation of C_d at y
        for (int i = d; i >= 0; --i) value = mulmod(value, y, poly, n) ^ (table[d] >> i & 1u);
        compatible = value == 0;
      }
      if (compatible) {
        table[n] = poly;
        break;
      }
    }
  }
  return table;
}

// F^W(a, b) straight from the defining sum.
inline std::int64_t walsh(const std::vector<std::uint32_t> &f, std::uint32_t a, std::uint32_t b, std::uint32_t poly,
                          int n) {
  std::int64_t s = 0;
  for (std::uint32_t x = 0; x < f.size(); ++x)
    s += (trace(mulmod(b, f[x], poly, n) ^ mulmod(a, x, poly, n), poly, n) ? -1 : 1);
  return s;
}

// Histogram of delta_F(a, b) over a != 0 by counting solutions per (a, b).
inline std::map<std::uint32_t, std::uint64_t> ddt_histogram(const std::vector<std::uint32_t> &f) {
  const std::uint32_t q = static_cast<std::uint32_t>(f.size());
  std::map<std::uint32_t, std::uint64_t> h;
  std::vector<std::uint32_t> row(q);
  for (std::uint32_t a = 1; a < q; ++a) {
    std::fill(row.begin(), row.end(), 0);
    for (std::uint32_t x = 0; x < q; ++x) ++row[f[x ^ a] ^ f[x]];
    for (auto c : row) ++h[c];
  }
  return h;
}

// ANF coefficient of monomial m = XOR of f over all subsets of m.
inline std::uint32_t anf_coefficient(const std::vector<std::uint32_t> &f, std::uint32_t m) {
  std::uint32_t c = 0;
  for (std::uint32_t s = m;; s = (s - 1) & m) {
    c ^= f[s];
    if (s == 0) break;
  }
  return c;
}

inline std::uint64_t binomial(unsigned n, unsigned k) {
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

} // namespace oracle
