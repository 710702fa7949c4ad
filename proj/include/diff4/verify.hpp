#pragma once

// Executable checks of the finite statements behind the construction:
// quadratic solvability, the alpha + 1/alpha parametrisation, the explicit
// roots via a cube root of unity, the trace identities of those roots, the
// case split of G(x+a) + G(x) = b, and the |V_M| = |W| estimate.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "diff4/construct.hpp"
#include "json.hpp"

namespace diff4 {

// a x^2 + b x + c = 0 with a*b != 0.
struct QuadraticInstance {
  Element a, b, c;
};

// Tr(a c / b^2) == 0. Throws std::invalid_argument if a or b is zero.
bool quadratic_solvable(const Field &field, const QuadraticInstance &q);
// Both roots (solving z^2 + z = ac/b^2 by linear algebra), or empty.
std::vector<Element> quadratic_roots(const Field &field, const QuadraticInstance &q);
// Roots by trying every field element.
std::vector<Element> quadratic_roots_brute(const Field &field, const QuadraticInstance &q);

// Some alpha with alpha + 1/alpha = b if Tr(1/b) = 0. b must not be in F_2.
std::optional<Element> solve_alpha(const Field &field, Element b);

// Roots 1/(1 + aw + 1/(aw)) and 1/(1 + aw^2 + 1/(aw^2)) of
// x^2 + x/b + 1/(b(b+1)) = 0, where b = 1 + alpha + 1/alpha and w has
// order 3. Throws std::domain_error unless Tr(1/(b+1)) = 0 and b not in F_2.
std::pair<Element, Element> omega_roots(const Field &field, Element b);

struct RootTraceReport {
  Element x1, x2;
  bool both_inverse_traces_zero = false;  // Tr(1/(x1+1)) = Tr(1/(x2+1)) = 0
  bool trace_sum_matches = false;         // Tr(x1) + Tr(x2) = Tr(1/b)
  bool pass() const { return both_inverse_traces_zero && trace_sum_matches; }
};
RootTraceReport check_root_traces(const Field &field, Element b);

// 1/(1+aw+1/(aw)) + 1/(1+aw^2+1/(aw^2)) == 1/(1+a+1/a). Requires
// alpha not in {0, 1, w, w^2}, where a denominator vanishes.
bool partial_fraction_identity(const Field &field, Element alpha);

struct ImageSetReport {
  std::size_t lhs_size = 0;
  std::size_t rhs_size = 0;
  bool sets_equal = false;
  bool two_to_one = false;  // x -> x + 1/x on all of GF(2^n), with 0^{-1} = 0
  bool pass(int n) const {
    const std::size_t half = std::size_t{1} << (n - 1);
    return sets_equal && two_to_one && lhs_size == half && rhs_size == half;
  }
};
ImageSetReport check_image_set(const Field &field);

struct DifferentialCaseReport {
  std::vector<Element> solutions;
  int case1 = 0;  // both or neither of x, x+a in U
  int case2 = 0;  // exactly one in U
  bool equations_hold = true;
  // Only set when the corresponding sub-case applies:
  std::optional<bool> no_root_in_V;      // a in V, ab = 1
  std::optional<bool> equal_traces_in_W;  // a in W, ab = 1: Tr(x1) = Tr(x2)
  std::optional<bool> split_traces_outside_U;  // a not in U, a(b+1) = 1, Tr(1/(a+1)) = 0
  bool at_most_four() const { return solutions.size() <= 4; }
  bool pass() const;
};
DifferentialCaseReport check_differential_cases(const SubsetSpec &spec, Element a, Element b);

struct SetSizeReport {
  std::size_t vm_size = 0;
  std::size_t w_size = 0;
  bool sizes_equal = false;
  bool bounds_hold = false;      // 2^{n-2} - 2^{n/2-1} <= |V_M| <= 2^{n-2} + 2^{n/2-1}
  bool sum_bounds_hold = false;  // 2^{n-1} - 2^{n/2} <= |V_M| + |W| <= 2^{n-1} + 2^{n/2}
  std::optional<std::uint64_t> expected_log2_count;
  bool count_matches = true;
  bool pass() const { return sizes_equal && bounds_hold && sum_bounds_hold && count_matches; }
};
SetSizeReport check_set_sizes(const Field &field, std::optional<std::uint64_t> expected_log2_count = {});

// sum over Tr(x) = c of (-1)^{Tr(ax + b/x + 1/(x+1)) + Tr(1/x)Tr(1/(x+1))}.
std::int64_t restricted_walsh_sum(const Field &field, Element a, Element b, int c);
inline std::int64_t restricted_walsh_bound(int n) { return 6 * (std::int64_t{1} << (n / 2)) + 4; }

// NL lower bound met by every member of the family: 2^{n-2} - 2^{n/2-1} - 1.
inline std::int64_t family_nl_lower_bound(int n) {
  return (std::int64_t{1} << (n - 2)) - (std::int64_t{1} << (n / 2 - 1)) - 1;
}

// Structured pass/fail result of a sweep.
struct CheckReport {
  std::string name;
  bool pass = true;
  std::string mode = "exhaustive";
  std::uint64_t instances = 0;
  std::vector<std::string> counterexamples;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();

  void fail(const std::string &counterexample);
  nlohmann::ordered_json to_json() const;
};

CheckReport sweep_inverse_walsh(const FieldPtr &field, std::uint64_t seed);
CheckReport sweep_quadratics(const Field &field, std::uint64_t seed);
CheckReport sweep_alpha(const Field &field);
CheckReport sweep_omega_roots(const Field &field);
CheckReport sweep_image_set(const Field &field);
CheckReport sweep_root_traces(const Field &field);
// G1, G2, G3, GM plus `random_specs` seeded random V sets.
CheckReport sweep_differential_cases(const FieldPtr &field, std::uint64_t seed, int random_specs = 20);
CheckReport sweep_set_sizes(const Field &field);
CheckReport sweep_restricted_sums(const Field &field, std::uint64_t seed, int samples = 50);

inline constexpr const char *kCheckNames[] = {"inverse-walsh", "lemma23", "alpha", "roots", "lemma34",
                                              "prop35",  "thm36",   "prop41",  "restricted-sum"};

// `which` is one of kCheckNames or "all". n must be even.
std::vector<CheckReport> run_checks(const FieldPtr &field, const std::string &which, std::uint64_t seed);

} // namespace diff4
