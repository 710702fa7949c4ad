#pragma once

// Differential and Walsh spectra of (n,n)-functions, plus the CCZ-invariant
// signature built from them.
//
// Kernels come in two flavours: the default ones are OpenMP-parallel over the
// input difference a (differential) or the output mask b (Walsh); the
// diff4::serial ones are single-threaded reference versions kept for testing
// and benchmarking. Both produce identical results.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "diff4/vfunc.hpp"
#include "json.hpp"

namespace diff4 {

// value -> number of occurrences, sorted by value.
using Histogram = std::map<std::uint32_t, std::uint64_t>;

struct DifferentialSpectrum {
  Histogram histogram;  // delta_F(a,b) -> #(a,b) with a != 0

  std::uint32_t uniformity() const;
  // [#0, #2, #4] when the uniformity is at most 4.
  std::optional<std::array<std::uint64_t, 3>> triple() const;
  std::string to_string() const;
  bool operator==(const DifferentialSpectrum &) const = default;
};

struct WalshProfile {
  Histogram extended;  // |F^W(a,b)| -> count over a in F, b != 0
  std::uint32_t max_abs = 0;
  std::int64_t nonlinearity = 0;
  bool operator==(const WalshProfile &) const = default;
};

struct InvariantSignature {
  std::int64_t nonlinearity = 0;
  Histogram diff_spectrum;
  Histogram extended_walsh;
  auto operator<=>(const InvariantSignature &) const = default;
};

// Number of OpenMP threads used by the parallel kernels; 0 = all available.
void set_workers(int workers);
int workers();

DifferentialSpectrum differential_spectrum(const VFunc &f);
std::uint32_t differential_uniformity(const VFunc &f);

// In-place unnormalised Walsh-Hadamard transform.
void fwht(std::span<std::int32_t> values);

// Walsh values of the component Tr(b F(x)), indexed by the bit mask u of the
// linear functional x -> <u,x>. The value for Tr(a x) sits at index
// field.linear_functional(a). Throws for b = 0.
std::vector<std::int32_t> component_walsh(const VFunc &f, Element b);

WalshProfile walsh_profile(const VFunc &f);

namespace serial {
DifferentialSpectrum differential_spectrum(const VFunc &f);
WalshProfile walsh_profile(const VFunc &f);
} // namespace serial

InvariantSignature invariant_signature(const VFunc &f);
InvariantSignature invariant_signature(const DifferentialSpectrum &ds, const WalshProfile &wp);

// Groups indices of `fs` by identical signature, in order of first
// appearance. Different groups are certified CCZ-inequivalent; members of a
// group are merely not distinguished.
std::vector<std::vector<std::size_t>> signature_partition(std::span<const VFunc> fs);
std::vector<std::vector<std::size_t>> signature_partition(std::span<const InvariantSignature> sigs);

nlohmann::ordered_json histogram_json(const Histogram &h);
// Run-length pairs [[value, count], ...].
nlohmann::ordered_json histogram_pairs_json(const Histogram &h);
nlohmann::ordered_json signature_json(int n, const std::string &name, const InvariantSignature &sig);

} // namespace diff4
