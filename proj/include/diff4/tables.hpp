#pragma once

// Golden values for the four published tables, and their recomputation.
//
// The expected values live in data/fixtures/table{1..4}.json and are compiled
// into the library at configure time.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "diff4/construct.hpp"
#include "json.hpp"

namespace diff4 {

namespace fixtures {
std::string_view table_json(int which);
} // namespace fixtures

using Triple = std::array<std::uint64_t, 3>;

struct Table1Row {
  int n;
  std::uint64_t log2_count;  // = |V_M| / 2
};

struct Table2Row {
  std::vector<std::uint32_t> exponents;
  std::int64_t nl;
  Triple diff;
  bool marked;
};

struct Table3Row {
  std::string name;
  std::map<int, Triple> diff;
};

// 2^{n-1} - k * 2^{n/2 + shift} - d
struct NlBound {
  std::string text;
  std::int64_t k = 0;
  int shift = 0;
  std::int64_t d = 0;
  std::int64_t at(int n) const {
    return (std::int64_t{1} << (n - 1)) - k * (std::int64_t{1} << (n / 2 + shift)) - d;
  }
};

struct Table4Row {
  std::string name;  // G1..F3, or MAX for the inverse function
  NlBound bound;
  std::map<int, std::int64_t> nl;
};

const std::vector<Table1Row> &table1();
const std::vector<Table2Row> &table2();
const std::vector<Table3Row> &table3();
const std::vector<Table4Row> &table4();

std::optional<std::uint64_t> expected_vm_pairs(int n);

// Computed and expected cells side by side; label cells are equal in both.
struct TableResult {
  int which = 0;
  std::string title;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> computed;
  std::vector<std::vector<std::string>> expected;

  std::size_t mismatches() const;
  bool all_match() const { return !computed.empty() && mismatches() == 0; }

  void write_text(std::ostream &out) const;
  void write_csv(std::ostream &out) const;
  nlohmann::ordered_json to_json() const;
};

// Recomputes every cell from scratch over the built-in fields.
TableResult reproduce_table(int which);

std::string triple_string(const Triple &t);

} // namespace diff4
