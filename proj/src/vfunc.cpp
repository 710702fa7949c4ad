#include "diff4/vfunc.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace diff4 {

VFunc::VFunc(FieldPtr field, std::vector<std::uint32_t> table)
    : field_(std::move(field)), table_(std::move(table)) {
  if (!field_) throw std::invalid_argument("VFunc requires a field");
  if (table_.size() != field_->size())
    throw std::invalid_argument("table has " + std::to_string(table_.size()) + " entries, expected " +
                                std::to_string(field_->size()));
  for (std::size_t x = 0; x < table_.size(); ++x)
    if (table_[x] >= field_->size())
      throw std::invalid_argument("table entry " + to_hex(static_cast<std::uint32_t>(x)) + " = " +
                                  to_hex(table_[x]) + " is not a field element");
}

std::vector<std::uint32_t> Anf::monomials(int coordinate) const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t m = 0; m < coeffs.size(); ++m)
    if (coeffs[m] >> coordinate & 1) out.push_back(m);
  return out;
}

int Anf::degree() const {
  int d = 0;
  for (std::uint32_t m = 0; m < coeffs.size(); ++m)
    if (coeffs[m] != 0) d = std::max(d, __builtin_popcount(m));
  return d;
}

std::vector<std::uint32_t> Anf::evaluate() const {
  std::vector<std::uint32_t> values = coeffs;
  moebius_transform(values);
  return values;
}

VFunc inverse_function(const FieldPtr &field) {
  std::vector<std::uint32_t> t(field->size());
  for (std::uint32_t x = 0; x < t.size(); ++x) t[x] = field->inv_raw(x);
  return VFunc(field, std::move(t));
}

VFunc identity_function(const FieldPtr &field) {
  std::vector<std::uint32_t> t(field->size());
  for (std::uint32_t x = 0; x < t.size(); ++x) t[x] = x;
  return VFunc(field, std::move(t));
}

bool is_permutation(const VFunc &f) {
  std::vector<bool> seen(f.size(), false);
  for (auto y : f.table()) {
    if (seen[y]) return false;
    seen[y] = true;
  }
  return true;
}

void moebius_transform(std::span<std::uint32_t> values) {
  const std::size_t size = values.size();
  for (std::size_t step = 1; step < size; step <<= 1)
    for (std::size_t x = 0; x < size; ++x)
      if (x & step) values[x] ^= values[x ^ step];
}

Anf anf(const VFunc &f) {
  Anf out;
  out.n = f.degree_n();
  out.coeffs.assign(f.table().begin(), f.table().end());
  moebius_transform(out.coeffs);
  return out;
}

int algebraic_degree(const VFunc &f) { return anf(f).degree(); }

void write_table(std::ostream &out, const VFunc &f) {
  out << "field " << f.field().to_config() << '\n';
  auto t = f.table();
  for (std::uint32_t x = 0; x < t.size(); ++x) out << to_hex(x) << ':' << to_hex(t[x]) << '\n';
}

VFunc read_table(std::istream &in, const FieldPtr &fallback) {
  FieldPtr field;
  std::vector<std::uint32_t> table;
  std::vector<bool> filled;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    std::string_view body(line);
    body.remove_prefix(first);
    while (!body.empty() && (body.back() == ' ' || body.back() == '\t' || body.back() == '\r'))
      body.remove_suffix(1);

    if (body.starts_with("field")) {
      if (field) throw std::invalid_argument("table line " + std::to_string(lineno) + ": duplicate field header");
      field = Field::from_config(body.substr(5));
      continue;
    }
    if (!field) {
      if (!fallback) throw std::invalid_argument("table has no field header and no default field");
      field = fallback;
    }
    if (table.empty()) {
      table.assign(field->size(), 0);
      filled.assign(field->size(), false);
    }
    auto colon = body.find(':');
    if (colon == std::string_view::npos)
      throw std::invalid_argument("table line " + std::to_string(lineno) + ": expected index:value");
    std::uint32_t x = parse_hex(body.substr(0, colon));
    std::uint32_t y = parse_hex(body.substr(colon + 1));
    if (x >= field->size())
      throw std::invalid_argument("table line " + std::to_string(lineno) + ": index out of range");
    if (filled[x])
      throw std::invalid_argument("table line " + std::to_string(lineno) + ": duplicate index " + to_hex(x));
    table[x] = y;
    filled[x] = true;
  }
  if (!field) throw std::invalid_argument("empty table");
  for (std::uint32_t x = 0; x < filled.size(); ++x)
    if (!filled[x]) throw std::invalid_argument("table is missing index " + to_hex(x));
  if (filled.empty()) throw std::invalid_argument("table has no entries");
  return VFunc(field, std::move(table));
}

} // namespace diff4
