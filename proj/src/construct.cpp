#include "diff4/construct.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <random>
#include <set>

namespace diff4 {

namespace {

void require_even(const Field &field) {
  if (field.degree() % 2 != 0)
    throw std::domain_error("the construction needs even n, got n=" + std::to_string(field.degree()));
}

std::string hex_of(Element x) { return "0x" + to_hex(x.bits); }

} // namespace

std::vector<Element> PairList::elements() const {
  std::vector<Element> out;
  out.reserve(2 * pairs.size());
  for (const auto &[a, b] : pairs) {
    out.push_back(a);
    out.push_back(b);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Element phi(const Field &field, Element x) {
  return field.inv(field.add(field.inv(x), field.one()));
}

std::vector<Element> compute_W(const Field &field) {
  require_even(field);
  std::vector<Element> out;
  for (std::uint32_t x = 0; x < field.size(); ++x)
    if (field.trace_raw(x) == 0 && field.trace_raw(field.inv_raw(x ^ 1u)) == 0) out.emplace_back(x);
  return out;
}

PairList compute_VM(const Field &field) {
  require_even(field);
  PairList out;
  for (std::uint32_t x = 0; x < field.size(); ++x) {
    if (field.trace_raw(x) != 1 || field.trace_raw(field.inv_raw(x ^ 1u)) != 1) continue;
    Element partner = phi(field, Element{x});
    if (partner.bits > x) out.pairs.emplace_back(Element{x}, partner);
  }
  return out;
}

VMSplit split_V0_V1(const Field &field) {
  VMSplit out;
  for (Element x : compute_VM(field).elements())
    (field.trace_raw(field.inv_raw(x.bits)) == 0 ? out.v0 : out.v1).push_back(x);
  return out;
}

SubsetSpec SubsetSpec::validate(FieldPtr field, std::span<const Element> elements) {
  if (!field) throw std::invalid_argument("SubsetSpec requires a field");
  require_even(*field);
  const Field &f = *field;
  std::set<Element> v;
  for (Element x : elements) {
    if (!f.contains(x)) throw ValidationError(hex_of(x) + " is not an element of the field", x);
    if (f.trace(x) != 1) throw ValidationError(hex_of(x) + " violates Tr(x)=1", x);
    if (f.trace(f.inv(f.add(x, f.one()))) != 1)
      throw ValidationError(hex_of(x) + " violates Tr(1/(x+1))=1", x);
    v.insert(x);
  }
  PairList pairs;
  for (Element x : v) {
    Element partner = phi(f, x);
    if (!v.contains(partner))
      throw ValidationError(hex_of(x) + " is unmatched: its partner x/(x+1) = " + hex_of(partner) +
                                " is missing",
                            x);
    if (x < partner) pairs.pairs.emplace_back(x, partner);
  }
  std::vector<std::uint8_t> u(f.size(), 0);
  for (Element w : compute_W(f)) u[w.bits] = 1;
  for (Element x : v) u[x.bits] = 1;
  return SubsetSpec(std::move(field), std::move(pairs), std::move(u));
}

std::size_t SubsetSpec::u_size() const { return static_cast<std::size_t>(std::count(u_.begin(), u_.end(), 1)); }

VFunc build_G(const SubsetSpec &spec) {
  const Field &f = spec.field();
  auto u = spec.u_indicator();
  std::vector<std::uint32_t> t(f.size());
  for (std::uint32_t x = 0; x < t.size(); ++x) t[x] = f.inv_raw(x) ^ u[x];
  VFunc g(spec.field_ptr(), std::move(t));
  if (!is_permutation(g)) throw std::logic_error("switched inverse function is not a permutation");
  return g;
}

std::string_view to_string(Named name) {
  switch (name) {
  case Named::G1: return "G1";
  case Named::G2: return "G2";
  case Named::G3: return "G3";
  case Named::GM: return "GM";
  case Named::F1: return "F1";
  case Named::F2: return "F2";
  case Named::F3: return "F3";
  }
  return "?";
}

Named parse_named(std::string_view name) {
  for (Named n : kAllNamed)
    if (to_string(n) == name) return n;
  throw std::invalid_argument("unknown function name '" + std::string(name) +
                              "' (expected G1, G2, G3, GM, F1, F2 or F3)");
}

VFunc build_named(const FieldPtr &field, Named name) {
  const Field &f = *field;
  if (f.degree() % 2 != 0 || f.degree() < 6)
    throw std::domain_error("named functions need even n >= 6, got n=" + std::to_string(f.degree()));
  std::vector<std::uint32_t> t(f.size());
  for (std::uint32_t x = 0; x < t.size(); ++x) {
    const std::uint32_t tr_x = f.trace_raw(x);
    const std::uint32_t tr_inv = f.trace_raw(f.inv_raw(x));
    const std::uint32_t tr_inv1 = f.trace_raw(f.inv_raw(x ^ 1u));
    const std::uint32_t base = 1u ^ tr_x ^ tr_inv1;  // 1 + Tr(x + 1/(x+1))
    switch (name) {
    case Named::GM: t[x] = f.inv_raw(x) ^ base; break;
    case Named::G3: t[x] = f.inv_raw(x) ^ base ^ (tr_x & tr_inv1); break;
    case Named::G1: t[x] = f.inv_raw(x) ^ base ^ (tr_x & tr_inv & tr_inv1); break;
    case Named::G2: t[x] = f.inv_raw(x) ^ base ^ (tr_x & (tr_inv ^ 1u) & tr_inv1); break;
    case Named::F1: t[x] = f.inv_raw(x ^ (tr_inv & tr_inv1)); break;
    case Named::F2: t[x] = f.inv_raw(x ^ ((1u ^ tr_x) & tr_inv & tr_inv1)); break;
    case Named::F3: t[x] = f.inv_raw(x ^ (tr_x & tr_inv & tr_inv1)); break;
    }
  }
  return VFunc(field, std::move(t));
}

SubsetSpec named_subset(const FieldPtr &field, Named name) {
  switch (name) {
  case Named::G1: return SubsetSpec::validate(field, split_V0_V1(*field).v0);
  case Named::G2: return SubsetSpec::validate(field, split_V0_V1(*field).v1);
  case Named::G3: return SubsetSpec::validate(field, {});
  case Named::GM: return SubsetSpec::validate(field, compute_VM(*field).elements());
  default: break;
  }
  throw std::invalid_argument(std::string(to_string(name)) + " is not a switched inverse function");
}

SubsetSpec random_V(const FieldPtr &field, std::size_t pair_count, std::uint64_t seed) {
  PairList vm = compute_VM(*field);
  if (pair_count > vm.size())
    throw std::invalid_argument("pair count " + std::to_string(pair_count) + " exceeds the " +
                                std::to_string(vm.size()) + " pairs of V_M");
  std::mt19937_64 rng(seed);
  auto &p = vm.pairs;
  for (std::size_t i = 0; i < pair_count; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, p.size() - 1);
    std::swap(p[i], p[pick(rng)]);
  }
  p.resize(pair_count);
  return SubsetSpec::validate(field, vm.elements());
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> exponent_pairs(const SubsetSpec &spec) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (const auto &[a, b] : spec.v_pairs().pairs) {
    auto ea = spec.field().discrete_log(a), eb = spec.field().discrete_log(b);
    out.emplace_back(std::min(ea, eb), std::max(ea, eb));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Element> elements_from_exponents(const Field &field, std::span<const std::uint32_t> exps) {
  std::vector<Element> out;
  out.reserve(exps.size());
  for (auto e : exps) out.push_back(field.exp(e));
  return out;
}

VFile read_vfile(std::istream &in, const FieldPtr &fallback) {
  VFile out;
  std::vector<std::uint32_t> exps;
  std::vector<std::uint32_t> hexes;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string &msg) {
    throw std::invalid_argument("V-file line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::vector<std::string_view> words;
    std::string_view rest(line);
    while (!rest.empty()) {
      auto b = rest.find_first_not_of(" \t\r");
      if (b == std::string_view::npos) break;
      rest.remove_prefix(b);
      auto e = rest.find_first_of(" \t\r");
      words.push_back(rest.substr(0, e));
      rest.remove_prefix(e == std::string_view::npos ? rest.size() : e);
    }
    if (words.empty()) continue;
    if (words[0] == "field") {
      if (out.field) fail("duplicate field header");
      out.field = Field::from_config(std::string_view(line).substr(line.find("field") + 5));
    } else if (words[0] == "pair" || words[0] == "pairhex") {
      if (words.size() != 3) fail("expected two values after '" + std::string(words[0]) + "'");
      for (int k = 1; k <= 2; ++k) {
        if (words[0] == "pairhex") {
          hexes.push_back(parse_hex(words[static_cast<std::size_t>(k)]));
        } else {
          std::uint32_t e = 0;
          auto w = words[static_cast<std::size_t>(k)];
          auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), e);
          if (ec != std::errc{} || p != w.data() + w.size()) fail("bad exponent '" + std::string(w) + "'");
          exps.push_back(e);
        }
      }
    } else {
      fail("unknown directive '" + std::string(words[0]) + "'");
    }
  }
  if (!out.field) out.field = fallback;
  if (!out.field) throw std::invalid_argument("V-file has no field header and no default field");
  out.elements = elements_from_exponents(*out.field, exps);
  for (auto h : hexes) out.elements.emplace_back(h);
  return out;
}

void write_vfile(std::ostream &out, const SubsetSpec &spec) {
  out << "field " << spec.field().to_config() << '\n';
  for (const auto &[a, b] : exponent_pairs(spec)) out << "pair " << a << ' ' << b << '\n';
}

} // namespace diff4
