// Single-threaded reference kernels.

#include <algorithm>
#include <cstdlib>

#include "diff4/spectra.hpp"

namespace diff4::serial {

DifferentialSpectrum differential_spectrum(const VFunc &f) {
  const auto t = f.table();
  const std::uint32_t q = f.size();
  std::vector<std::uint32_t> count(q);
  DifferentialSpectrum out;
  for (std::uint32_t a = 1; a < q; ++a) {
    std::fill(count.begin(), count.end(), 0);
    for (std::uint32_t x = 0; x < q; ++x) ++count[t[x ^ a] ^ t[x]];
    for (std::uint32_t b = 0; b < q; ++b) ++out.histogram[count[b]];
  }
  return out;
}

WalshProfile walsh_profile(const VFunc &f) {
  const auto t = f.table();
  const std::uint32_t q = f.size();
  std::vector<std::uint64_t> hist(q + 1, 0);
  std::vector<std::int32_t> buf(q);
  for (std::uint32_t b = 1; b < q; ++b) {
    const std::uint32_t mask = f.field().linear_functional(Element{b});
    for (std::uint32_t x = 0; x < q; ++x) buf[x] = 1 - 2 * __builtin_parity(t[x] & mask);
    fwht(buf);
    for (auto v : buf) ++hist[static_cast<std::size_t>(std::abs(v))];
  }
  WalshProfile out;
  for (std::uint32_t v = 0; v <= q; ++v)
    if (hist[v] != 0) {
      out.extended[v] = hist[v];
      out.max_abs = v;
    }
  out.nonlinearity = static_cast<std::int64_t>(q / 2) - static_cast<std::int64_t>(out.max_abs / 2);
  return out;
}

} // namespace diff4::serial
