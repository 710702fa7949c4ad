#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "diff4/construct.hpp"
#include "diff4/spectra.hpp"
#include "diff4/tables.hpp"
#include "diff4/verify.hpp"
#include "json.hpp"

namespace diff4::cli {

namespace {

using ojson = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  int n = 0;
  std::string field_config;
  std::string format = "text";
  std::uint64_t seed = 1;
  int workers = 0;
  std::string out_path;

  std::string named, v_file, table_file;
  bool ews = false;
  std::string which;
  int table = 0;
  std::optional<std::size_t> pairs;
  std::size_t count = 10;
};

void add_common(CLI::App *cmd, RunConfig &cfg, bool with_field) {
  if (with_field) {
    cmd->add_option("--n", cfg.n, "field degree n");
    cmd->add_option("--field-config", cfg.field_config, "file with 'n=<int>, poly=<hex>, xi=<hex>'");
  }
  cmd->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
  cmd->add_option("--workers", cfg.workers, "worker threads (0 = all cores, 1 = serial)");
  cmd->add_option("--out", cfg.out_path, "write output to this file");
}

std::string slurp(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// min_n/even describe the command's precondition on the field degree.
FieldPtr resolve_field(const RunConfig &cfg, int min_n, bool even) {
  FieldPtr field;
  if (!cfg.field_config.empty()) {
    field = Field::from_config(slurp(cfg.field_config));
    if (cfg.n != 0 && cfg.n != field->degree())
      throw UsageError("--n " + std::to_string(cfg.n) + " conflicts with field config n=" +
                       std::to_string(field->degree()));
  } else {
    if (cfg.n == 0) throw UsageError("--n or --field-config is required");
    if (cfg.n < kMinDegree || cfg.n > kMaxDegree) throw UsageError("n must be in [2, 20]");
    if (even && cfg.n % 2 != 0) throw UsageError("n must be even");
    if (cfg.n < min_n) throw UsageError("n must be at least " + std::to_string(min_n));
    field = Field::builtin(cfg.n);
  }
  if (even && field->degree() % 2 != 0) throw UsageError("n must be even");
  if (field->degree() < min_n) throw UsageError("n must be at least " + std::to_string(min_n));
  return field;
}

std::string exponent_list(const SubsetSpec &spec) {
  std::string s = "{";
  bool first = true;
  for (auto [a, b] : exponent_pairs(spec)) {
    s += (first ? "" : ",") + std::to_string(a) + "," + std::to_string(b);
    first = false;
  }
  return s + "}";
}

struct Analysis {
  std::string name;
  DifferentialSpectrum ds;
  WalshProfile wp;
  int degree = 0;
  bool permutation = false;
};

Analysis analyse(const std::string &name, const VFunc &f) {
  return Analysis{name, differential_spectrum(f), walsh_profile(f), algebraic_degree(f), is_permutation(f)};
}

ojson analysis_json(int n, const Analysis &a, bool with_ews) {
  ojson j;
  j["n"] = n;
  j["name"] = a.name;
  j["nl"] = a.wp.nonlinearity;
  j["diff_spectrum"] = histogram_json(a.ds.histogram);
  j["uniformity"] = a.ds.uniformity();
  j["degree"] = a.degree;
  j["permutation"] = a.permutation;
  if (with_ews) j["ews"] = histogram_pairs_json(a.wp.extended);
  return j;
}

void write_analysis(std::ostream &out, const RunConfig &cfg, int n, const Analysis &a) {
  if (cfg.format == "json") {
    out << analysis_json(n, a, cfg.ews).dump(2) << '\n';
  } else if (cfg.format == "csv") {
    out << "n,name,nl,uniformity,degree,permutation,diff_spectrum\n";
    out << n << ',' << a.name << ',' << a.wp.nonlinearity << ',' << a.ds.uniformity() << ',' << a.degree << ','
        << (a.permutation ? "yes" : "no") << ",\"" << a.ds.to_string() << "\"\n";
  } else {
    out << "function:       " << a.name << '\n'
        << "n:              " << n << '\n'
        << "nonlinearity:   " << a.wp.nonlinearity << '\n'
        << "diff spectrum:  " << a.ds.to_string() << '\n'
        << "uniformity:     " << a.ds.uniformity() << '\n'
        << "degree:         " << a.degree << '\n'
        << "permutation:    " << (a.permutation ? "yes" : "no") << '\n';
    if (cfg.ews) {
      out << "extended walsh:";
      for (const auto &[v, c] : a.wp.extended) out << ' ' << v << 'x' << c;
      out << '\n';
    }
  }
}

int cmd_analyze(const RunConfig &cfg, std::ostream &out) {
  const int sources = !cfg.named.empty() + !cfg.v_file.empty() + !cfg.table_file.empty();
  if (sources != 1) throw UsageError("give exactly one of --named, --v-file, --table-file");

  if (!cfg.table_file.empty()) {
    std::ifstream in(cfg.table_file);
    if (!in) throw UsageError("cannot open '" + cfg.table_file + "'");
    FieldPtr fallback;
    if (cfg.n != 0 || !cfg.field_config.empty()) fallback = resolve_field(cfg, kMinDegree, false);
    VFunc f = read_table(in, fallback);
    write_analysis(out, cfg, f.degree_n(), analyse(cfg.table_file, f));
    return kOk;
  }
  if (!cfg.named.empty()) {
    FieldPtr field = resolve_field(cfg, 6, true);
    const Named name = parse_named(cfg.named);
    write_analysis(out, cfg, field->degree(), analyse(cfg.named, build_named(field, name)));
    return kOk;
  }
  std::ifstream in(cfg.v_file);
  if (!in) throw UsageError("cannot open '" + cfg.v_file + "'");
  FieldPtr fallback;
  if (cfg.n != 0 || !cfg.field_config.empty()) fallback = resolve_field(cfg, 6, true);
  VFile vf = read_vfile(in, fallback);
  if (vf.field->degree() % 2 != 0 || vf.field->degree() < 6) throw UsageError("n must be even and at least 6");
  SubsetSpec spec = SubsetSpec::validate(vf.field, vf.elements);
  write_analysis(out, cfg, vf.field->degree(), analyse("V=" + exponent_list(spec), build_G(spec)));
  return kOk;
}

int cmd_reproduce(const RunConfig &cfg, std::ostream &out) {
  TableResult r = reproduce_table(cfg.table);
  if (cfg.format == "json")
    out << r.to_json().dump(2) << '\n';
  else if (cfg.format == "csv")
    r.write_csv(out);
  else
    r.write_text(out);
  return r.all_match() ? kOk : kMismatch;
}

int cmd_verify(const RunConfig &cfg, std::ostream &out) {
  FieldPtr field = resolve_field(cfg, 6, true);
  auto reports = run_checks(field, cfg.which, cfg.seed);
  bool pass = true;
  for (const auto &r : reports) pass = pass && r.pass;
  if (cfg.format == "json") {
    ojson j;
    j["n"] = field->degree();
    j["field"] = field->to_config();
    j["seed"] = cfg.seed;
    j["checks"] = ojson::array();
    for (const auto &r : reports) j["checks"].push_back(r.to_json());
    j["pass"] = pass;
    out << j.dump(2) << '\n';
  } else if (cfg.format == "csv") {
    out << "check,pass,mode,instances,counterexamples\n";
    for (const auto &r : reports) {
      out << r.name << ',' << (r.pass ? "yes" : "no") << ',' << r.mode << ',' << r.instances << ",\"";
      for (std::size_t i = 0; i < r.counterexamples.size(); ++i) out << (i ? "; " : "") << r.counterexamples[i];
      out << "\"\n";
    }
  } else {
    out << "field " << field->to_config() << '\n';
    for (const auto &r : reports) {
      out << (r.pass ? "PASS " : "FAIL ") << r.name << " (" << r.mode << ", " << r.instances << " instances) "
          << r.details.dump() << '\n';
      for (const auto &c : r.counterexamples) out << "  counterexample: " << c << '\n';
    }
    out << (pass ? "all checks passed" : "some checks FAILED") << '\n';
  }
  return pass ? kOk : kMismatch;
}

int cmd_sample(const RunConfig &cfg, std::ostream &out) {
  FieldPtr field = resolve_field(cfg, 6, true);
  const std::size_t vm_pairs = compute_VM(*field).size();
  if (cfg.pairs && *cfg.pairs > vm_pairs)
    throw UsageError("--pairs " + std::to_string(*cfg.pairs) + " exceeds the " + std::to_string(vm_pairs) +
                     " available pairs");
  std::mt19937_64 rng(cfg.seed);
  std::vector<Analysis> results;
  std::vector<InvariantSignature> sigs;
  for (std::size_t i = 0; i < cfg.count; ++i) {
    const std::size_t pairs = cfg.pairs ? *cfg.pairs : std::uniform_int_distribution<std::size_t>(0, vm_pairs)(rng);
    SubsetSpec spec = random_V(field, pairs, rng());
    results.push_back(analyse("V=" + exponent_list(spec), build_G(spec)));
    sigs.push_back(invariant_signature(results.back().ds, results.back().wp));
  }
  auto groups = signature_partition(sigs);
  bool ok = true;
  const std::int64_t nl_bound = family_nl_lower_bound(field->degree());
  for (const auto &a : results)
    ok = ok && a.permutation && a.ds.uniformity() == 4 && a.degree == field->degree() - 1 &&
         a.wp.nonlinearity >= nl_bound;

  if (cfg.format == "json") {
    ojson j;
    j["n"] = field->degree();
    j["seed"] = cfg.seed;
    j["count"] = cfg.count;
    if (cfg.pairs) j["pairs"] = *cfg.pairs;
    j["functions"] = ojson::array();
    for (const auto &a : results) j["functions"].push_back(analysis_json(field->degree(), a, cfg.ews));
    j["partition"] = groups;
    j["classes"] = groups.size();
    j["nl_lower_bound"] = nl_bound;
    j["all_checks_pass"] = ok;
    out << j.dump(2) << '\n';
  } else {
    if (cfg.format == "csv") out << "index,name,nl,uniformity,degree,class,diff_spectrum\n";
    std::vector<std::size_t> cls(results.size());
    for (std::size_t g = 0; g < groups.size(); ++g)
      for (auto i : groups[g]) cls[i] = g;
    for (std::size_t i = 0; i < results.size(); ++i) {
      const auto &a = results[i];
      if (cfg.format == "csv")
        out << i << ",\"" << a.name << "\"," << a.wp.nonlinearity << ',' << a.ds.uniformity() << ',' << a.degree
            << ',' << cls[i] << ",\"" << a.ds.to_string() << "\"\n";
      else
        out << '#' << i << " class " << cls[i] << "  NL=" << a.wp.nonlinearity << " " << a.ds.to_string()
            << " uniformity=" << a.ds.uniformity() << " degree=" << a.degree << "  " << a.name << '\n';
    }
    if (cfg.format == "text")
      out << groups.size() << " signature class(es) among " << results.size() << " function(s); "
          << (ok ? "all permutations, 4-uniform, degree n-1, NL >= " : "CHECK FAILED: expected 4-uniform, degree n-1, NL >= ")
          << nl_bound << '\n';
  }
  return ok ? kOk : kMismatch;
}

int cmd_enumerate_pairs(const RunConfig &cfg, std::ostream &out) {
  FieldPtr field = resolve_field(cfg, 6, true);
  const Field &f = *field;
  PairList vm = compute_VM(f);
  auto tag = [&](Element x) { return f.trace(f.inv(x)) == 0 ? "V0" : "V1"; };
  std::vector<std::tuple<std::uint32_t, std::uint32_t, Element, Element>> rows;
  for (auto [a, b] : vm.pairs) {
    auto ea = f.discrete_log(a), eb = f.discrete_log(b);
    if (ea > eb) {
      std::swap(ea, eb);
      std::swap(a, b);
    }
    rows.emplace_back(ea, eb, a, b);
  }
  std::sort(rows.begin(), rows.end());
  if (cfg.format == "json") {
    ojson j;
    j["n"] = f.degree();
    j["field"] = f.to_config();
    j["pairs"] = ojson::array();
    for (auto &[ea, eb, a, b] : rows)
      j["pairs"].push_back({{"exponents", {ea, eb}}, {"hex", {to_hex(a.bits), to_hex(b.bits)}}, {"subset", tag(a)}});
    j["count"] = rows.size();
    out << j.dump(2) << '\n';
  } else if (cfg.format == "csv") {
    out << "exp1,exp2,hex1,hex2,subset\n";
    for (auto &[ea, eb, a, b] : rows)
      out << ea << ',' << eb << ',' << to_hex(a.bits) << ',' << to_hex(b.bits) << ',' << tag(a) << '\n';
  } else {
    out << "field " << f.to_config() << '\n';
    for (auto &[ea, eb, a, b] : rows)
      out << "pair " << ea << ' ' << eb << "    # " << to_hex(a.bits) << ' ' << to_hex(b.bits) << ' ' << tag(a)
          << '\n';
    out << "# " << rows.size() << " pairs, 2^" << rows.size() << " choices of V\n";
  }
  return kOk;
}

int cmd_field_info(const RunConfig &cfg, std::ostream &out) {
  FieldPtr field = resolve_field(cfg, kMinDegree, false);
  const Field &f = *field;
  const bool even = f.degree() % 2 == 0;
  ojson j;
  j["n"] = f.degree();
  j["poly"] = to_hex(f.poly());
  j["xi"] = to_hex(f.primitive().bits);
  j["conway"] = f.poly() == conway_polynomial(f.degree());
  j["trace_mask"] = to_hex(f.trace_mask());
  if (even) {
    j["omega"] = to_hex(f.element_of_order_3().bits);
    j["omega_exponent"] = f.discrete_log(f.element_of_order_3());
    j["w_size"] = compute_W(f).size();
    j["vm_size"] = compute_VM(f).elements().size();
  }
  if (cfg.format == "json") {
    out << j.dump(2) << '\n';
  } else if (cfg.format == "csv") {
    bool first = true;
    for (auto &[k, v] : j.items()) out << (first ? "" : ",") << k, first = false;
    out << '\n';
    first = true;
    for (auto &[k, v] : j.items()) out << (first ? "" : ",") << (v.is_string() ? v.get<std::string>() : v.dump()), first = false;
    out << '\n';
  } else {
    out << "config " << f.to_config() << '\n';
    for (auto &[k, v] : j.items()) out << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
  }
  return kOk;
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Switched-inverse differentially 4-uniform permutations over GF(2^n)", "diff4"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto *analyze = app.add_subcommand("analyze", "NL, differential spectrum, uniformity and degree of a function");
  add_common(analyze, cfg, true);
  analyze->add_option("--named", cfg.named, "G1, G2, G3, GM, F1, F2 or F3");
  analyze->add_option("--v-file", cfg.v_file, "V-set file");
  analyze->add_option("--table-file", cfg.table_file, "lookup table file");
  analyze->add_flag("--ews", cfg.ews, "include the extended Walsh spectrum");

  auto *reproduce = app.add_subcommand("reproduce-table", "recompute a published table and diff it");
  add_common(reproduce, cfg, false);
  reproduce->add_option("table", cfg.table, "1, 2, 3 or 4")->required()->check(CLI::Range(1, 4));

  auto *verify = app.add_subcommand("verify", "run verification sweeps");
  add_common(verify, cfg, true);
  verify->add_option("--seed", cfg.seed, "seed for sampled sweeps");
  std::vector<std::string> names(std::begin(kCheckNames), std::end(kCheckNames));
  names.push_back("all");
  verify->add_option("which", cfg.which, "check name or 'all'")->required()->check(CLI::IsMember(names));

  auto *sample = app.add_subcommand("sample", "analyse random members of the family");
  add_common(sample, cfg, true);
  sample->add_option("--pairs", cfg.pairs, "number of V_M pairs per sample (default: random)");
  sample->add_option("--count", cfg.count, "number of samples");
  sample->add_option("--seed", cfg.seed, "random seed");
  sample->add_flag("--ews", cfg.ews, "include extended Walsh spectra (json)");

  auto *pairs = app.add_subcommand("enumerate-pairs", "list the pairs {x, x/(x+1)} making up V_M");
  add_common(pairs, cfg, true);

  auto *info = app.add_subcommand("field-info", "describe the field representation");
  add_common(info, cfg, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << '\n';
    if (auto *sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front())
      err << sub->help();
    return kUsage;
  }

  set_workers(cfg.workers);
  std::ofstream file;
  std::ostream *sink = &out;
  if (!cfg.out_path.empty()) {
    file.open(cfg.out_path);
    if (!file) {
      err << "error: cannot write '" << cfg.out_path << "'\n";
      return kUsage;
    }
    sink = &file;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(cfg, *sink);
    if (reproduce->parsed()) return cmd_reproduce(cfg, *sink);
    if (verify->parsed()) return cmd_verify(cfg, *sink);
    if (sample->parsed()) return cmd_sample(cfg, *sink);
    if (pairs->parsed()) return cmd_enumerate_pairs(cfg, *sink);
    if (info->parsed()) return cmd_field_info(cfg, *sink);
  } catch (const ValidationError &e) {
    err << "error: invalid V set: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument &e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error &e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError &e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

} // namespace diff4::cli
