#pragma once

// Switching the inverse function on trace-defined subsets.
//
//   W   = { x : Tr(x) = Tr(1/(x+1)) = 0 }
//   V_M = { x : Tr(x) = Tr(1/(x+1)) = 1 }, a union of pairs {x, x/(x+1)}
//   V   = any union of such pairs, U = V u W
//   G(x) = x^{-1} + 1_U(x)
//
// G is always a differentially 4-uniform permutation with degree n-1.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "diff4/gf2n.hpp"
#include "diff4/vfunc.hpp"

namespace diff4 {

// Pairs (x, x/(x+1)), smaller table index first, sorted by that index.
struct PairList {
  std::vector<std::pair<Element, Element>> pairs;

  std::size_t size() const { return pairs.size(); }
  std::vector<Element> elements() const;
};

// 1/(x^{-1}+1): x/(x+1) off {0,1}, and swaps 0 <-> 1. Restricted to V_M it
// is the pairing x -> x/(x+1).
Element phi(const Field &field, Element x);

std::vector<Element> compute_W(const Field &field);
PairList compute_VM(const Field &field);

struct VMSplit {
  std::vector<Element> v0;  // Tr(1/x) = 0
  std::vector<Element> v1;  // Tr(1/x) = 1
};
VMSplit split_V0_V1(const Field &field);

class ValidationError : public std::invalid_argument {
public:
  ValidationError(const std::string &what, Element offending)
      : std::invalid_argument(what), offending_(offending) {}
  Element offending() const { return offending_; }

private:
  Element offending_;
};

class SubsetSpec {
public:
  // Throws ValidationError naming the first bad element.
  static SubsetSpec validate(FieldPtr field, std::span<const Element> elements);

  const Field &field() const { return *field_; }
  const FieldPtr &field_ptr() const { return field_; }
  const PairList &v_pairs() const { return v_pairs_; }
  std::vector<Element> v_elements() const { return v_pairs_.elements(); }
  bool in_U(Element x) const { return u_.at(x.bits) != 0; }
  std::span<const std::uint8_t> u_indicator() const { return u_; }
  std::size_t u_size() const;

private:
  SubsetSpec(FieldPtr field, PairList pairs, std::vector<std::uint8_t> u)
      : field_(std::move(field)), v_pairs_(std::move(pairs)), u_(std::move(u)) {}

  FieldPtr field_;
  PairList v_pairs_;
  std::vector<std::uint8_t> u_;
};

// Throws std::logic_error if the result is not a permutation.
VFunc build_G(const SubsetSpec &spec);

enum class Named { G1, G2, G3, GM, F1, F2, F3 };
inline constexpr Named kAllNamed[] = {Named::G1, Named::G2, Named::G3, Named::GM,
                                      Named::F1, Named::F2, Named::F3};

std::string_view to_string(Named name);
Named parse_named(std::string_view name);

// Closed-form construction; n must be even and >= 6.
VFunc build_named(const FieldPtr &field, Named name);
// The V set whose build_G equals the named function (G1, G2, G3, GM only).
SubsetSpec named_subset(const FieldPtr &field, Named name);

// Uniformly chooses pair_count distinct pairs of V_M.
SubsetSpec random_V(const FieldPtr &field, std::size_t pair_count, std::uint64_t seed);

// V-set file:
//   field n=<int>[, poly=<hex>, xi=<hex>]
//   pair <exp1> <exp2>        (exponents of xi)
//   pairhex <hex1> <hex2>
struct VFile {
  FieldPtr field;
  std::vector<Element> elements;
};
VFile read_vfile(std::istream &in, const FieldPtr &fallback);
void write_vfile(std::ostream &out, const SubsetSpec &spec);

// Sorted exponent pairs, as used in the V column of the n=6 listing.
std::vector<std::pair<std::uint32_t, std::uint32_t>> exponent_pairs(const SubsetSpec &spec);
std::vector<Element> elements_from_exponents(const Field &field, std::span<const std::uint32_t> exps);

} // namespace diff4
