#include "diff4/verify.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>
#include <stdexcept>

#include "diff4/spectra.hpp"
#include "diff4/tables.hpp"

namespace diff4 {

namespace {

// Full (a,b) sweeps are exhaustive up to this many instances.
constexpr std::uint64_t kExhaustiveLimit = std::uint64_t{1} << 26;
constexpr std::size_t kMaxCounterexamples = 10;

std::string hex(Element x) { return "0x" + to_hex(x.bits); }

// Solves z^2 + z = d. z -> z^2 + z is F_2-linear with kernel {0, 1}.
std::optional<Element> solve_artin_schreier(const Field &f, Element d) {
  const int n = f.degree();
  // xor basis keyed by leading bit, each with the input combination producing it
  std::vector<std::uint32_t> basis(static_cast<std::size_t>(n), 0), combo(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    std::uint32_t e = 1u << i;
    std::uint32_t v = f.mul_raw(e, e) ^ e, c = e;
    for (int bit = n - 1; bit >= 0 && v != 0; --bit) {
      if (!(v >> bit & 1)) continue;
      if (basis[static_cast<std::size_t>(bit)] == 0) {
        basis[static_cast<std::size_t>(bit)] = v;
        combo[static_cast<std::size_t>(bit)] = c;
        v = 0;
        break;
      }
      v ^= basis[static_cast<std::size_t>(bit)];
      c ^= combo[static_cast<std::size_t>(bit)];
    }
  }
  std::uint32_t v = d.bits, z = 0;
  for (int bit = n - 1; bit >= 0 && v != 0; --bit) {
    if (!(v >> bit & 1)) continue;
    if (basis[static_cast<std::size_t>(bit)] == 0) return std::nullopt;
    v ^= basis[static_cast<std::size_t>(bit)];
    z ^= combo[static_cast<std::size_t>(bit)];
  }
  return Element{z};
}

void require_nondegenerate(const QuadraticInstance &q) {
  if (q.a.bits == 0 || q.b.bits == 0)
    throw std::invalid_argument("quadratic needs a*b != 0 (a=" + hex(q.a) + ", b=" + hex(q.b) + ")");
}

Element eval_quadratic(const Field &f, const QuadraticInstance &q, Element x) {
  return f.add(f.add(f.mul(q.a, f.square(x)), f.mul(q.b, x)), q.c);
}

void require_even(const Field &f) {
  if (f.degree() % 2 != 0)
    throw std::domain_error("verification needs even n, got n=" + std::to_string(f.degree()));
}

} // namespace

bool quadratic_solvable(const Field &f, const QuadraticInstance &q) {
  require_nondegenerate(q);
  return f.trace(f.div(f.mul(q.a, q.c), f.square(q.b))) == 0;
}

std::vector<Element> quadratic_roots(const Field &f, const QuadraticInstance &q) {
  require_nondegenerate(q);
  // x = (b/a) z turns a x^2 + b x + c into (b^2/a)(z^2 + z) + c.
  const Element scale = f.div(q.b, q.a);
  auto z = solve_artin_schreier(f, f.div(f.mul(q.a, q.c), f.square(q.b)));
  if (!z) return {};
  std::vector<Element> roots = {f.mul(scale, *z), f.mul(scale, f.add(*z, f.one()))};
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<Element> quadratic_roots_brute(const Field &f, const QuadraticInstance &q) {
  std::vector<Element> roots;
  for (std::uint32_t x = 0; x < f.size(); ++x)
    if (eval_quadratic(f, q, Element{x}).bits == 0) roots.emplace_back(x);
  return roots;
}

std::optional<Element> solve_alpha(const Field &f, Element b) {
  if (b.bits <= 1) throw std::invalid_argument("solve_alpha: b must not lie in F_2");
  // alpha + 1/alpha = b  <=>  alpha^2 + b alpha + 1 = 0
  auto roots = quadratic_roots(f, {f.one(), b, f.one()});
  if (roots.empty()) return std::nullopt;
  return roots.front();
}

std::pair<Element, Element> omega_roots(const Field &f, Element b) {
  if (b.bits <= 1) throw std::domain_error("omega_roots: b must not lie in F_2");
  const Element b1 = f.add(b, f.one());
  auto alpha = solve_alpha(f, b1);
  if (!alpha) throw std::domain_error("omega_roots: " + hex(b) + " is not 1 + alpha + 1/alpha (Tr(1/(b+1)) = 1)");
  const Element w = f.element_of_order_3();
  auto root = [&](Element aw) { return f.inv(f.add(f.add(f.one(), aw), f.inv(aw))); };
  return {root(f.mul(*alpha, w)), root(f.mul(*alpha, f.square(w)))};
}

RootTraceReport check_root_traces(const Field &f, Element b) {
  RootTraceReport r;
  std::tie(r.x1, r.x2) = omega_roots(f, b);
  auto tr_inv1 = [&](Element x) { return f.trace(f.inv(f.add(x, f.one()))); };
  r.both_inverse_traces_zero = tr_inv1(r.x1) == 0 && tr_inv1(r.x2) == 0;
  r.trace_sum_matches = (f.trace(r.x1) ^ f.trace(r.x2)) == f.trace(f.inv(b));
  return r;
}

bool partial_fraction_identity(const Field &f, Element alpha) {
  const Element w = f.element_of_order_3();
  if (alpha.bits <= 1 || alpha == w || alpha == f.square(w))
    throw std::domain_error("partial_fraction_identity: alpha in {0, 1, w, w^2} makes a denominator vanish");
  auto term = [&](Element y) { return f.inv(f.add(f.add(f.one(), y), f.inv(y))); };
  return f.add(term(f.mul(alpha, w)), term(f.mul(alpha, f.square(w)))) == term(alpha);
}

ImageSetReport check_image_set(const Field &f) {
  require_even(f);
  std::vector<std::uint8_t> lhs(f.size(), 0), rhs(f.size(), 0);
  for (std::uint32_t a = 0; a < f.size(); ++a) lhs[f.inv_raw(1u ^ a ^ f.inv_raw(a))] = 1;
  for (std::uint32_t x = 0; x < f.size(); ++x) rhs[x] = f.trace_raw(f.inv_raw(x ^ 1u)) == 0;
  ImageSetReport r;
  r.lhs_size = static_cast<std::size_t>(std::count(lhs.begin(), lhs.end(), 1));
  r.rhs_size = static_cast<std::size_t>(std::count(rhs.begin(), rhs.end(), 1));
  r.sets_equal = lhs == rhs;
  std::vector<std::uint32_t> preimages(f.size(), 0);
  for (std::uint32_t x = 0; x < f.size(); ++x) ++preimages[x ^ f.inv_raw(x)];
  r.two_to_one = std::all_of(preimages.begin(), preimages.end(), [](auto c) { return c == 0 || c == 2; });
  return r;
}

bool DifferentialCaseReport::pass() const {
  return at_most_four() && equations_hold && no_root_in_V.value_or(true) && equal_traces_in_W.value_or(true) &&
         split_traces_outside_U.value_or(true);
}

namespace {

// Shared by the single-instance check and the bucketed sweep.
DifferentialCaseReport classify(const SubsetSpec &spec, Element a, Element b, std::vector<Element> solutions) {
  const Field &f = spec.field();
  DifferentialCaseReport r;
  r.solutions = std::move(solutions);
  const Element b1 = f.add(b, f.one());
  for (Element x : r.solutions) {
    const Element xa = f.add(x, a);
    const Element lhs = f.add(f.inv(x), f.inv(xa));
    const bool case1 = spec.in_U(x) == spec.in_U(xa);
    (case1 ? r.case1 : r.case2)++;
    if (lhs != (case1 ? b : b1)) r.equations_hold = false;
    if (x.bits != 0 && x != a) {
      // case 1: b x^2 + ab x + a = 0; case 2: (b+1) x^2 + a(b+1) x + a = 0
      const Element c = case1 ? b : b1;
      const Element v = f.add(f.add(f.mul(c, f.square(x)), f.mul(f.mul(a, c), x)), a);
      if (v.bits != 0) r.equations_hold = false;
    }
  }

  auto roots_of = [&](Element c) {  // c x^2 + a c x + a = 0, c may be zero
    std::vector<Element> roots;
    for (std::uint32_t x = 0; x < f.size(); ++x) {
      const Element e{x};
      if (f.add(f.add(f.mul(c, f.square(e)), f.mul(f.mul(a, c), e)), a).bits == 0) roots.push_back(e);
    }
    return roots;
  };
  const bool in_u = spec.in_U(a);
  const bool in_w = f.trace(a) == 0 && f.trace(f.inv(f.add(a, f.one()))) == 0;
  if (in_u && f.mul(a, b) == f.one()) {
    auto roots = roots_of(b1);
    if (!in_w) {
      r.no_root_in_V = roots.empty();
    } else if (b1.bits != 0) {  // a = b = 1 leaves no quadratic
      r.equal_traces_in_W = roots.size() == 2 && f.trace(roots[0]) == f.trace(roots[1]);
    }
  }
  if (!in_u && f.mul(a, b1) == f.one() && f.trace(f.inv(f.add(a, f.one()))) == 0) {
    auto roots = roots_of(b);
    r.split_traces_outside_U = roots.size() == 2 && f.trace(roots[0]) != f.trace(roots[1]);
  }
  return r;
}

std::uint32_t g_value(const SubsetSpec &spec, std::uint32_t x) {
  return spec.field().inv_raw(x) ^ spec.u_indicator()[x];
}

} // namespace

DifferentialCaseReport check_differential_cases(const SubsetSpec &spec, Element a, Element b) {
  const Field &f = spec.field();
  if (a.bits == 0) throw std::invalid_argument("check_differential_cases: a must be nonzero");
  if (!f.contains(a) || !f.contains(b)) throw std::invalid_argument("check_differential_cases: element outside field");
  std::vector<Element> sols;
  for (std::uint32_t x = 0; x < f.size(); ++x)
    if ((g_value(spec, x ^ a.bits) ^ g_value(spec, x)) == b.bits) sols.emplace_back(x);
  return classify(spec, a, b, std::move(sols));
}

SetSizeReport check_set_sizes(const Field &f, std::optional<std::uint64_t> expected_log2_count) {
  require_even(f);
  const int n = f.degree();
  SetSizeReport r;
  r.vm_size = compute_VM(f).elements().size();
  r.w_size = compute_W(f).size();
  r.sizes_equal = r.vm_size == r.w_size;
  const std::int64_t quarter = std::int64_t{1} << (n - 2), half = std::int64_t{1} << (n - 1);
  const std::int64_t root_half = std::int64_t{1} << (n / 2 - 1), root = std::int64_t{1} << (n / 2);
  const auto vm = static_cast<std::int64_t>(r.vm_size), w = static_cast<std::int64_t>(r.w_size);
  r.bounds_hold = quarter - root_half <= vm && vm <= quarter + root_half && quarter - root_half <= w &&
                  w <= quarter + root_half;
  r.sum_bounds_hold = half - root <= vm + w && vm + w <= half + root;
  r.expected_log2_count = expected_log2_count;
  if (expected_log2_count) r.count_matches = r.vm_size % 2 == 0 && r.vm_size / 2 == *expected_log2_count;
  return r;
}

std::int64_t restricted_walsh_sum(const Field &f, Element a, Element b, int c) {
  std::int64_t sum = 0;
  for (std::uint32_t x = 0; x < f.size(); ++x) {
    if (f.trace_raw(x) != c) continue;
    const std::uint32_t ix = f.inv_raw(x), ix1 = f.inv_raw(x ^ 1u);
    const int e = f.trace_raw(f.mul_raw(a.bits, x) ^ f.mul_raw(b.bits, ix) ^ ix1) ^
                  (f.trace_raw(ix) & f.trace_raw(ix1));
    sum += e ? -1 : 1;
  }
  return sum;
}

void CheckReport::fail(const std::string &counterexample) {
  pass = false;
  if (counterexamples.size() < kMaxCounterexamples) counterexamples.push_back(counterexample);
}

nlohmann::ordered_json CheckReport::to_json() const {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["pass"] = pass;
  j["mode"] = mode;
  j["instances"] = instances;
  j["counterexamples"] = counterexamples;
  j["details"] = details;
  return j;
}

CheckReport sweep_inverse_walsh(const FieldPtr &field, std::uint64_t seed) {
  CheckReport r;
  r.name = "inverse-walsh";
  const Field &f = *field;
  const int n = f.degree();
  const std::int64_t hi = (std::int64_t{1} << (n / 2 + 1)) + 1, lo = -(std::int64_t{1} << (n / 2 + 1)) + 1;
  const VFunc inv = inverse_function(field);
  std::vector<std::uint32_t> bs;
  if (std::uint64_t{f.size()} * f.size() <= kExhaustiveLimit) {
    for (std::uint32_t b = 1; b < f.size(); ++b) bs.push_back(b);
  } else {
    r.mode = "sampled";
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint32_t> pick(1, f.size() - 1);
    for (int i = 0; i < 64; ++i) bs.push_back(pick(rng));
  }
  for (auto b : bs) {
    auto w = component_walsh(inv, Element{b});
    for (std::size_t u = 0; u < w.size(); ++u) {
      ++r.instances;
      if (w[u] % 4 != 0 || w[u] < lo || w[u] > hi)
        r.fail("b=" + hex(Element{b}) + " u=" + to_hex(static_cast<std::uint32_t>(u)) + " W=" + std::to_string(w[u]));
    }
  }
  r.details["range"] = {lo, hi};
  r.details["components"] = bs.size();
  return r;
}

CheckReport sweep_quadratics(const Field &f, std::uint64_t seed) {
  CheckReport r;
  r.name = "lemma23";
  const std::uint32_t q = f.size();
  std::vector<std::pair<std::uint32_t, std::uint32_t>> ab;
  if (std::uint64_t{q} * q * q <= kExhaustiveLimit) {
    for (std::uint32_t a = 1; a < q; ++a)
      for (std::uint32_t b = 1; b < q; ++b) ab.emplace_back(a, b);
  } else {
    r.mode = "sampled";
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint32_t> pick(1, q - 1);
    for (int i = 0; i < 256; ++i) ab.emplace_back(pick(rng), pick(rng));
  }
  std::vector<std::uint32_t> root_count(q);
  for (auto [a, b] : ab) {
    // every x is a root of a x^2 + b x + c for exactly one c
    std::fill(root_count.begin(), root_count.end(), 0);
    for (std::uint32_t x = 0; x < q; ++x) ++root_count[f.mul_raw(a, f.mul_raw(x, x)) ^ f.mul_raw(b, x)];
    for (std::uint32_t c = 0; c < q; ++c) {
      ++r.instances;
      const bool solvable = quadratic_solvable(f, {Element{a}, Element{b}, Element{c}});
      if (root_count[c] != (solvable ? 2u : 0u))
        r.fail("a=" + hex(Element{a}) + " b=" + hex(Element{b}) + " c=" + hex(Element{c}) +
               " roots=" + std::to_string(root_count[c]));
    }
  }
  r.details["coefficient_pairs"] = ab.size();
  return r;
}

CheckReport sweep_alpha(const Field &f) {
  CheckReport r;
  r.name = "alpha";
  std::vector<std::uint8_t> in_image(f.size(), 0);
  for (std::uint32_t a = 1; a < f.size(); ++a) in_image[a ^ f.inv_raw(a)] = 1;
  for (std::uint32_t b = 2; b < f.size(); ++b) {
    ++r.instances;
    const Element be{b};
    const bool tr_zero = f.trace_raw(f.inv_raw(b)) == 0;
    auto alpha = solve_alpha(f, be);
    bool ok = tr_zero == (in_image[b] != 0) && tr_zero == alpha.has_value();
    if (alpha) ok = ok && f.add(*alpha, f.inv(*alpha)) == be && f.add(f.inv(*alpha), *alpha) == be;
    if (!ok) r.fail("b=" + hex(be));
  }
  return r;
}

CheckReport sweep_omega_roots(const Field &f) {
  CheckReport r;
  r.name = "roots";
  for (std::uint32_t bb = 2; bb < f.size(); ++bb) {
    const Element b{bb};
    if (f.trace(f.inv(f.add(b, f.one()))) != 0) continue;
    ++r.instances;
    auto [x1, x2] = omega_roots(f, b);
    const Element p = f.inv(b), s = f.inv(f.mul(b, f.add(b, f.one())));
    auto eval = [&](Element x) { return f.add(f.add(f.square(x), f.mul(p, x)), s); };
    const bool ok = eval(x1).bits == 0 && eval(x2).bits == 0 && x1 != x2 && f.add(x1, x2) == p &&
                    f.mul(x1, x2) == s;
    if (!ok) r.fail("b=" + hex(b));
  }
  return r;
}

CheckReport sweep_image_set(const Field &f) {
  CheckReport r;
  r.name = "lemma34";
  auto rep = check_image_set(f);
  r.instances = f.size();
  r.details["lhs_size"] = rep.lhs_size;
  r.details["rhs_size"] = rep.rhs_size;
  r.details["sets_equal"] = rep.sets_equal;
  r.details["two_to_one"] = rep.two_to_one;
  if (!rep.pass(f.degree())) r.fail("set comparison failed");
  return r;
}

CheckReport sweep_root_traces(const Field &f) {
  CheckReport r;
  r.name = "prop35";
  std::uint64_t roots = 0, alphas = 0;
  for (std::uint32_t bb = 2; bb < f.size(); ++bb) {
    const Element b{bb};
    if (f.trace(f.inv(f.add(b, f.one()))) != 0) continue;
    ++roots;
    auto rep = check_root_traces(f, b);
    if (!rep.pass())
      r.fail("b=" + hex(b) + (rep.both_inverse_traces_zero ? "" : " (1)") + (rep.trace_sum_matches ? "" : " (2)"));
  }
  const Element w = f.element_of_order_3();
  for (std::uint32_t a = 2; a < f.size(); ++a) {
    const Element alpha{a};
    if (alpha == w || alpha == f.square(w)) continue;
    ++alphas;
    if (!partial_fraction_identity(f, alpha)) r.fail("alpha=" + hex(alpha) + " (partial fractions)");
  }
  r.instances = roots + alphas;
  r.details["b_values"] = roots;
  r.details["alpha_values"] = alphas;
  return r;
}

CheckReport sweep_differential_cases(const FieldPtr &field, std::uint64_t seed, int random_specs) {
  CheckReport r;
  r.name = "thm36";
  const Field &f = *field;
  const std::uint32_t q = f.size();
  std::vector<std::pair<std::string, SubsetSpec>> specs;
  for (Named nm : {Named::G1, Named::G2, Named::G3, Named::GM})
    specs.emplace_back(std::string(to_string(nm)), named_subset(field, nm));
  std::mt19937_64 rng(seed);
  const std::size_t vm_pairs = compute_VM(f).size();
  for (int i = 0; i < random_specs; ++i) {
    const std::size_t pairs = std::uniform_int_distribution<std::size_t>(0, vm_pairs)(rng);
    specs.emplace_back("random#" + std::to_string(i), random_V(field, pairs, rng()));
  }

  std::vector<std::uint32_t> as;
  if (std::uint64_t{q} * q <= kExhaustiveLimit) {
    for (std::uint32_t a = 1; a < q; ++a) as.push_back(a);
  } else {
    r.mode = "sampled";
    std::uniform_int_distribution<std::uint32_t> pick(1, q - 1);
    for (int i = 0; i < 64; ++i) as.push_back(pick(rng));
  }

  std::uint64_t max_solutions = 0, sub_cases = 0;
  std::vector<std::uint32_t> diff(q), start(q + 1), order(q);
  for (const auto &[label, spec] : specs) {
    for (auto a : as) {
      // bucket x by G(x+a) + G(x)
      std::fill(start.begin(), start.end(), 0);
      for (std::uint32_t x = 0; x < q; ++x) ++start[(diff[x] = g_value(spec, x ^ a) ^ g_value(spec, x)) + 1];
      for (std::uint32_t b = 0; b < q; ++b) start[b + 1] += start[b];
      std::vector<std::uint32_t> fill(start.begin(), start.end() - 1);
      for (std::uint32_t x = 0; x < q; ++x) order[fill[diff[x]]++] = x;

      const std::uint32_t special1 = f.inv_raw(a), special2 = f.inv_raw(a) ^ 1u;
      for (std::uint32_t b = 0; b < q; ++b) {
        const bool special = b == special1 || b == special2;
        if (start[b] == start[b + 1] && !special) continue;
        ++r.instances;
        std::vector<Element> sols;
        for (auto k = start[b]; k < start[b + 1]; ++k) sols.emplace_back(order[k]);
        auto rep = classify(spec, Element{a}, Element{b}, std::move(sols));
        max_solutions = std::max<std::uint64_t>(max_solutions, rep.solutions.size());
        sub_cases += rep.no_root_in_V.has_value() + rep.equal_traces_in_W.has_value() + rep.split_traces_outside_U.has_value();
        if (!rep.pass()) r.fail(label + " a=" + hex(Element{a}) + " b=" + hex(Element{b}));
      }
    }
  }
  r.details["functions"] = specs.size();
  r.details["a_values"] = as.size();
  r.details["max_solutions"] = max_solutions;
  r.details["sub_cases_checked"] = sub_cases;
  return r;
}

CheckReport sweep_set_sizes(const Field &f) {
  CheckReport r;
  r.name = "prop41";
  auto rep = check_set_sizes(f, expected_vm_pairs(f.degree()));
  r.instances = f.size();
  r.details["vm_size"] = rep.vm_size;
  r.details["w_size"] = rep.w_size;
  r.details["log2_count"] = rep.vm_size / 2;
  if (rep.expected_log2_count) r.details["expected_log2_count"] = *rep.expected_log2_count;
  r.details["sizes_equal"] = rep.sizes_equal;
  r.details["bounds_hold"] = rep.bounds_hold;
  r.details["sum_bounds_hold"] = rep.sum_bounds_hold;
  if (!rep.pass()) r.fail("|V_M|=" + std::to_string(rep.vm_size) + " |W|=" + std::to_string(rep.w_size));
  return r;
}

CheckReport sweep_restricted_sums(const Field &f, std::uint64_t seed, int samples) {
  CheckReport r;
  r.name = "restricted-sum";
  r.mode = "sampled";
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> pick(1, f.size() - 1);
  const std::int64_t bound = restricted_walsh_bound(f.degree());
  std::int64_t worst = 0;
  for (int i = 0; i < samples; ++i) {
    const Element a{pick(rng)}, b{pick(rng)};
    for (int c = 0; c <= 1; ++c) {
      ++r.instances;
      const std::int64_t s = std::abs(restricted_walsh_sum(f, a, b, c));
      worst = std::max(worst, s);
      if (s > bound) r.fail("a=" + hex(a) + " b=" + hex(b) + " c=" + std::to_string(c) + " |S|=" + std::to_string(s));
    }
  }
  r.details["bound"] = bound;
  r.details["max_abs"] = worst;
  return r;
}

std::vector<CheckReport> run_checks(const FieldPtr &field, const std::string &which, std::uint64_t seed) {
  require_even(*field);
  const Field &f = *field;
  std::vector<CheckReport> out;
  const bool all = which == "all";
  bool known = all;
  auto want = [&](const char *name) {
    const bool hit = all || which == name;
    known = known || hit;
    return hit;
  };
  if (want("inverse-walsh")) out.push_back(sweep_inverse_walsh(field, seed));
  if (want("lemma23")) out.push_back(sweep_quadratics(f, seed));
  if (want("alpha")) out.push_back(sweep_alpha(f));
  if (want("roots")) out.push_back(sweep_omega_roots(f));
  if (want("lemma34")) out.push_back(sweep_image_set(f));
  if (want("prop35")) out.push_back(sweep_root_traces(f));
  if (want("thm36")) out.push_back(sweep_differential_cases(field, seed));
  if (want("prop41")) out.push_back(sweep_set_sizes(f));
  if (want("restricted-sum")) out.push_back(sweep_restricted_sums(f, seed));
  if (!known) throw std::invalid_argument("unknown check '" + which + "'");
  return out;
}

} // namespace diff4
