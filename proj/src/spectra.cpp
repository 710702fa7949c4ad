#include "diff4/spectra.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace diff4 {

namespace {

Histogram to_histogram(const std::vector<std::int64_t> &dense) {
  Histogram h;
  for (std::size_t v = 0; v < dense.size(); ++v)
    if (dense[v] != 0) h[static_cast<std::uint32_t>(v)] = static_cast<std::uint64_t>(dense[v]);
  return h;
}

} // namespace

void set_workers(int workers) { omp_set_num_threads(workers > 0 ? workers : omp_get_num_procs()); }

int workers() { return omp_get_max_threads(); }

std::uint32_t DifferentialSpectrum::uniformity() const {
  for (auto it = histogram.rbegin(); it != histogram.rend(); ++it)
    if (it->second != 0) return it->first;
  return 0;
}

std::optional<std::array<std::uint64_t, 3>> DifferentialSpectrum::triple() const {
  if (uniformity() > 4) return std::nullopt;
  std::array<std::uint64_t, 3> out{};
  for (const auto &[delta, count] : histogram) {
    if (delta % 2 != 0) return std::nullopt;
    out[delta / 2] = count;
  }
  return out;
}

std::string DifferentialSpectrum::to_string() const {
  std::ostringstream os;
  if (auto t = triple()) {
    os << '[' << (*t)[0] << ',' << (*t)[1] << ',' << (*t)[2] << ']';
    return os.str();
  }
  os << '{';
  bool first = true;
  for (const auto &[delta, count] : histogram) {
    os << (first ? "" : ",") << delta << ':' << count;
    first = false;
  }
  os << '}';
  return os.str();
}

DifferentialSpectrum differential_spectrum(const VFunc &f) {
  const auto t = f.table();
  const std::int64_t q = f.size();
  std::vector<std::int64_t> total(static_cast<std::size_t>(q) + 1, 0);

#pragma omp parallel
  {
    // Counters are invalidated by bumping a generation stamp instead of
    // clearing them for every a.
    std::vector<std::uint32_t> count(static_cast<std::size_t>(q)), stamp(static_cast<std::size_t>(q), 0);
    std::vector<std::int64_t> hist(static_cast<std::size_t>(q) + 1, 0);
    std::uint32_t gen = 0;

#pragma omp for schedule(static)
    for (std::int64_t a = 1; a < q; ++a) {
      ++gen;
      hist[0] += q;
      for (std::int64_t x = 0; x < q; ++x) {
        const std::uint32_t d = t[static_cast<std::size_t>(x ^ a)] ^ t[static_cast<std::size_t>(x)];
        if (stamp[d] != gen) {
          stamp[d] = gen;
          count[d] = 0;
        }
        const std::uint32_t c = count[d]++;
        --hist[c];
        ++hist[c + 1];
      }
    }

#pragma omp critical(diff4_diff_merge)
    for (std::size_t v = 0; v < hist.size(); ++v) total[v] += hist[v];
  }

  return DifferentialSpectrum{to_histogram(total)};
}

std::uint32_t differential_uniformity(const VFunc &f) { return differential_spectrum(f).uniformity(); }

void fwht(std::span<std::int32_t> values) {
  const std::size_t size = values.size();
  for (std::size_t h = 1; h < size; h <<= 1)
    for (std::size_t i = 0; i < size; i += 2 * h)
      for (std::size_t j = i; j < i + h; ++j) {
        const std::int32_t u = values[j], v = values[j + h];
        values[j] = u + v;
        values[j + h] = u - v;
      }
}

std::vector<std::int32_t> component_walsh(const VFunc &f, Element b) {
  if (b.bits == 0) throw std::invalid_argument("component_walsh: b must be nonzero");
  const std::uint32_t mask = f.field().linear_functional(b);
  const auto t = f.table();
  std::vector<std::int32_t> out(t.size());
  for (std::size_t x = 0; x < t.size(); ++x) out[x] = 1 - 2 * __builtin_parity(t[x] & mask);
  fwht(out);
  return out;
}

WalshProfile walsh_profile(const VFunc &f) {
  const auto t = f.table();
  const std::int64_t q = f.size();
  const Field &field = f.field();
  std::vector<std::int64_t> total(static_cast<std::size_t>(q) + 1, 0);

#pragma omp parallel
  {
    std::vector<std::int32_t> buf(static_cast<std::size_t>(q));
    std::vector<std::int64_t> hist(static_cast<std::size_t>(q) + 1, 0);

#pragma omp for schedule(dynamic, 16)
    for (std::int64_t b = 1; b < q; ++b) {
      const std::uint32_t mask = field.linear_functional(Element{static_cast<std::uint32_t>(b)});
      for (std::size_t x = 0; x < buf.size(); ++x) buf[x] = 1 - 2 * __builtin_parity(t[x] & mask);
      fwht(buf);
      for (auto v : buf) ++hist[static_cast<std::size_t>(std::abs(v))];
    }

#pragma omp critical(diff4_walsh_merge)
    for (std::size_t v = 0; v < hist.size(); ++v) total[v] += hist[v];
  }

  WalshProfile out;
  out.extended = to_histogram(total);
  out.max_abs = out.extended.empty() ? 0 : out.extended.rbegin()->first;
  out.nonlinearity = q / 2 - static_cast<std::int64_t>(out.max_abs / 2);
  return out;
}

InvariantSignature invariant_signature(const DifferentialSpectrum &ds, const WalshProfile &wp) {
  return InvariantSignature{wp.nonlinearity, ds.histogram, wp.extended};
}

InvariantSignature invariant_signature(const VFunc &f) {
  return invariant_signature(differential_spectrum(f), walsh_profile(f));
}

std::vector<std::vector<std::size_t>> signature_partition(std::span<const InvariantSignature> sigs) {
  std::vector<std::vector<std::size_t>> groups;
  std::map<InvariantSignature, std::size_t> group_of;
  for (std::size_t i = 0; i < sigs.size(); ++i) {
    auto [it, inserted] = group_of.try_emplace(sigs[i], groups.size());
    if (inserted) groups.emplace_back();
    groups[it->second].push_back(i);
  }
  return groups;
}

std::vector<std::vector<std::size_t>> signature_partition(std::span<const VFunc> fs) {
  std::vector<InvariantSignature> sigs;
  sigs.reserve(fs.size());
  for (const auto &f : fs) {
    if (!f.field().same_as(fs.front().field()))
      throw std::invalid_argument("signature_partition: functions are defined over different fields");
    sigs.push_back(invariant_signature(f));
  }
  return signature_partition(sigs);
}

nlohmann::ordered_json histogram_json(const Histogram &h) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto &[v, c] : h) j[std::to_string(v)] = c;
  return j;
}

nlohmann::ordered_json histogram_pairs_json(const Histogram &h) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto &[v, c] : h) j.push_back({v, c});
  return j;
}

nlohmann::ordered_json signature_json(int n, const std::string &name, const InvariantSignature &sig) {
  nlohmann::ordered_json j;
  j["n"] = n;
  j["name"] = name;
  j["nl"] = sig.nonlinearity;
  j["diff_spectrum"] = histogram_json(sig.diff_spectrum);
  j["ews"] = histogram_pairs_json(sig.extended_walsh);
  return j;
}

} // namespace diff4
