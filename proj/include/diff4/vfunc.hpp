#pragma once

// (n,n)-functions over GF(2^n) stored as full lookup tables.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "diff4/gf2n.hpp"

namespace diff4 {

class VFunc {
public:
  VFunc(FieldPtr field, std::vector<std::uint32_t> table);

  const Field &field() const { return *field_; }
  const FieldPtr &field_ptr() const { return field_; }
  int degree_n() const { return field_->degree(); }
  std::uint32_t size() const { return static_cast<std::uint32_t>(table_.size()); }

  Element operator()(Element x) const { return Element{table_.at(x.bits)}; }
  std::span<const std::uint32_t> table() const { return table_; }

  bool operator==(const VFunc &other) const {
    return field_->same_as(*other.field_) && table_ == other.table_;
  }

private:
  FieldPtr field_;
  std::vector<std::uint32_t> table_;
};

// Algebraic normal form of all n coordinates at once: coeffs[m] has bit j set
// iff the monomial prod_{i in m} x_i appears in coordinate j.
struct Anf {
  int n = 0;
  std::vector<std::uint32_t> coeffs;

  std::vector<std::uint32_t> monomials(int coordinate) const;
  // Max monomial weight over all coordinates; 0 for constants.
  int degree() const;
  // Truth table recovered by a second Moebius transform.
  std::vector<std::uint32_t> evaluate() const;
};

VFunc inverse_function(const FieldPtr &field);
VFunc identity_function(const FieldPtr &field);

bool is_permutation(const VFunc &f);

// In-place binary Moebius transform (an involution), all coordinates at once.
void moebius_transform(std::span<std::uint32_t> values);

Anf anf(const VFunc &f);
int algebraic_degree(const VFunc &f);

// Text table format:
//   field n=<int>, poly=<hex>, xi=<hex>
//   <index_hex>:<value_hex>       (2^n lines)
// '#' starts a comment.
void write_table(std::ostream &out, const VFunc &f);
// Uses the header's field; `fallback` is used when the header is absent.
VFunc read_table(std::istream &in, const FieldPtr &fallback);

} // namespace diff4
