#include "diff4/tables.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "diff4/spectra.hpp"

namespace diff4 {

namespace {

nlohmann::json load(int which) {
  auto text = fixtures::table_json(which);
  if (text.empty()) throw std::invalid_argument("no fixture for table " + std::to_string(which));
  return nlohmann::json::parse(text);
}

Triple to_triple(const nlohmann::json &j) { return Triple{j.at(0), j.at(1), j.at(2)}; }

std::string exponent_set_string(const std::vector<std::uint32_t> &exps) {
  std::string s = "{";
  for (std::size_t i = 0; i < exps.size(); ++i) s += (i ? "," : "") + std::to_string(exps[i]);
  return s + "}";
}

std::string spectrum_cell(const DifferentialSpectrum &ds) { return ds.to_string(); }

std::string csv_escape(const std::string &s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += (c == '"') ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

TableResult reproduce_table1() {
  TableResult r;
  r.which = 1;
  r.header = {"n", "log2_N"};
  for (const auto &row : table1()) {
    auto field = Field::builtin(row.n);
    r.computed.push_back({std::to_string(row.n), std::to_string(compute_VM(*field).size())});
    r.expected.push_back({std::to_string(row.n), std::to_string(row.log2_count)});
  }
  return r;
}

TableResult reproduce_table2() {
  TableResult r;
  r.which = 2;
  r.header = {"V", "NL", "diff_spectrum", "marked"};
  auto field = Field::builtin(6);
  for (const auto &row : table2()) {
    std::vector<std::string> exp_row = {exponent_set_string(row.exponents), std::to_string(row.nl),
                                        triple_string(row.diff), row.marked ? "*" : ""};
    std::vector<std::string> got = exp_row;
    try {
      auto spec = SubsetSpec::validate(field, elements_from_exponents(*field, row.exponents));
      std::vector<std::uint32_t> exps;
      for (auto [a, b] : exponent_pairs(spec)) {
        exps.push_back(a);
        exps.push_back(b);
      }
      std::sort(exps.begin(), exps.end());
      auto g = build_G(spec);
      got[0] = exponent_set_string(exps);
      got[1] = std::to_string(walsh_profile(g).nonlinearity);
      got[2] = spectrum_cell(differential_spectrum(g));
    } catch (const std::exception &e) {
      got[1] = got[2] = std::string("error: ") + e.what();
    }
    r.computed.push_back(std::move(got));
    r.expected.push_back(std::move(exp_row));
  }
  return r;
}

TableResult reproduce_table3() {
  TableResult r;
  r.which = 3;
  r.header = {"function"};
  const std::vector<int> ns = {6, 8, 10};
  for (int n : ns) r.header.push_back("n=" + std::to_string(n));
  std::map<int, FieldPtr> fields;
  for (int n : ns) fields[n] = Field::builtin(n);
  for (const auto &row : table3()) {
    std::vector<std::string> got = {row.name}, want = {row.name};
    for (int n : ns) {
      got.push_back(spectrum_cell(differential_spectrum(build_named(fields[n], parse_named(row.name)))));
      want.push_back(triple_string(row.diff.at(n)));
    }
    r.computed.push_back(std::move(got));
    r.expected.push_back(std::move(want));
  }
  return r;
}

TableResult reproduce_table4() {
  TableResult r;
  r.which = 4;
  const std::vector<int> ns = {6, 8, 10, 12};
  r.header = {"function", "lower_bound"};
  for (int n : ns) r.header.push_back("n=" + std::to_string(n));
  for (int n : ns) r.header.push_back("bound@" + std::to_string(n));
  r.header.push_back("bound_holds");
  std::map<int, FieldPtr> fields;
  for (int n : ns) fields[n] = Field::builtin(n);
  for (const auto &row : table4()) {
    const bool is_max = row.name == "MAX";
    std::vector<std::string> got = {row.name, row.bound.text}, want = got;
    bool holds = true;
    for (int n : ns) {
      VFunc f = is_max ? inverse_function(fields[n]) : build_named(fields[n], parse_named(row.name));
      const auto nl = walsh_profile(f).nonlinearity;
      holds = holds && (is_max ? nl <= row.bound.at(n) : nl >= row.bound.at(n));
      got.push_back(std::to_string(nl));
      want.push_back(std::to_string(row.nl.at(n)));
    }
    for (int n : ns) {
      got.push_back(std::to_string(row.bound.at(n)));
      want.push_back(std::to_string(row.bound.at(n)));
    }
    got.push_back(holds ? "yes" : "no");
    want.push_back("yes");
    r.computed.push_back(std::move(got));
    r.expected.push_back(std::move(want));
  }
  return r;
}

} // namespace

std::string triple_string(const Triple &t) {
  return "[" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + "]";
}

const std::vector<Table1Row> &table1() {
  static const std::vector<Table1Row> rows = [] {
    std::vector<Table1Row> out;
    const auto doc = load(1);
    for (const auto &r : doc.at("rows")) out.push_back({r.at("n"), r.at("log2_count")});
    return out;
  }();
  return rows;
}

const std::vector<Table2Row> &table2() {
  static const std::vector<Table2Row> rows = [] {
    std::vector<Table2Row> out;
    const auto doc = load(2);
    for (const auto &r : doc.at("rows"))
      out.push_back({r.at("exponents").get<std::vector<std::uint32_t>>(), r.at("nl"), to_triple(r.at("diff")),
                     r.at("marked")});
    return out;
  }();
  return rows;
}

const std::vector<Table3Row> &table3() {
  static const std::vector<Table3Row> rows = [] {
    std::vector<Table3Row> out;
    const auto doc = load(3);
    for (const auto &r : doc.at("rows")) {
      Table3Row row{r.at("name"), {}};
      for (const auto &[k, v] : r.at("diff").items()) row.diff[std::stoi(k)] = to_triple(v);
      out.push_back(std::move(row));
    }
    return out;
  }();
  return rows;
}

const std::vector<Table4Row> &table4() {
  static const std::vector<Table4Row> rows = [] {
    std::vector<Table4Row> out;
    const auto doc = load(4);
    for (const auto &r : doc.at("rows")) {
      const auto &b = r.at("bound");
      Table4Row row{r.at("name"), NlBound{b.at("text"), b.at("k"), b.at("shift"), b.at("d")}, {}};
      for (const auto &[k, v] : r.at("nl").items()) row.nl[std::stoi(k)] = v.get<std::int64_t>();
      out.push_back(std::move(row));
    }
    return out;
  }();
  return rows;
}

std::optional<std::uint64_t> expected_vm_pairs(int n) {
  for (const auto &row : table1())
    if (row.n == n) return row.log2_count;
  return std::nullopt;
}

std::size_t TableResult::mismatches() const {
  std::size_t bad = 0;
  for (std::size_t i = 0; i < computed.size(); ++i)
    for (std::size_t j = 0; j < computed[i].size(); ++j) bad += computed[i][j] != expected[i][j];
  return bad;
}

void TableResult::write_text(std::ostream &out) const {
  out << "Table " << which << ": " << title << '\n';
  std::vector<std::size_t> width(header.size());
  auto cell = [&](std::size_t i, std::size_t j) {
    return computed[i][j] == expected[i][j] ? computed[i][j]
                                            : computed[i][j] + " (expected " + expected[i][j] + ")";
  };
  for (std::size_t j = 0; j < header.size(); ++j) width[j] = header[j].size();
  for (std::size_t i = 0; i < computed.size(); ++i)
    for (std::size_t j = 0; j < header.size(); ++j) width[j] = std::max(width[j], cell(i, j).size());
  for (std::size_t j = 0; j < header.size(); ++j) out << std::left << std::setw(int(width[j]) + 2) << header[j];
  out << "match\n";
  for (std::size_t i = 0; i < computed.size(); ++i) {
    for (std::size_t j = 0; j < header.size(); ++j) out << std::left << std::setw(int(width[j]) + 2) << cell(i, j);
    out << (computed[i] == expected[i] ? "ok" : "MISMATCH") << '\n';
  }
  out << (all_match() ? "all cells match" : std::to_string(mismatches()) + " cell(s) differ") << '\n';
}

void TableResult::write_csv(std::ostream &out) const {
  for (const auto &h : header) out << csv_escape(h) << ',';
  out << "match\n";
  for (std::size_t i = 0; i < computed.size(); ++i) {
    for (const auto &c : computed[i]) out << csv_escape(c) << ',';
    out << (computed[i] == expected[i] ? "yes" : "no") << '\n';
  }
}

nlohmann::ordered_json TableResult::to_json() const {
  nlohmann::ordered_json j;
  j["table"] = which;
  j["title"] = title;
  j["header"] = header;
  j["rows"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < computed.size(); ++i)
    j["rows"].push_back({{"computed", computed[i]}, {"expected", expected[i]}, {"match", computed[i] == expected[i]}});
  j["mismatches"] = mismatches();
  j["pass"] = all_match();
  return j;
}

TableResult reproduce_table(int which) {
  TableResult r;
  switch (which) {
  case 1: r = reproduce_table1(); break;
  case 2: r = reproduce_table2(); break;
  case 3: r = reproduce_table3(); break;
  case 4: r = reproduce_table4(); break;
  default: throw std::invalid_argument("table must be 1, 2, 3 or 4, got " + std::to_string(which));
  }
  r.title = load(which).at("title");
  return r;
}

} // namespace diff4
