#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wedgemax/conjecture.hpp"
#include "wedgemax/json_io.hpp"
#include "wedgemax/search.hpp"
#include "wedgemax/suite.hpp"

namespace {

using namespace wedgemax;

struct RunConfig {
  int n = 0;
  int k = 0;
  int l = 0;
  int n_from = 0;
  int n_to = 0;
  int n_max = 0;
  std::string theorem = "both";
  std::string subspace = "full";
  int restarts = 32;
  std::optional<std::uint64_t> seed;
  double tol = 1e-12;
  int max_outer = 500;
  unsigned jobs = default_jobs();
  std::string output;
  std::string format;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void require_k_le_l(const RunConfig& cfg) {
  if (cfg.k > cfg.l) {
    throw UsageError("k <= l is required (got k=" + std::to_string(cfg.k) +
                     ", l=" + std::to_string(cfg.l) + "); swap them, the value is symmetric");
  }
}

std::uint64_t resolve_seed(const RunConfig& cfg) {
  if (cfg.seed) return *cfg.seed;
  if (const char* env = std::getenv("WEDGE_SEED"); env && *env) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("WEDGE_SEED is not an unsigned integer: ") + env);
  }
  return 0;
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + cfg.output);
  out << text;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

int run_value(const RunConfig& cfg) {
  require_k_le_l(cfg);
  const ConjecturedValue v = conjectured_max_sq(cfg.n, cfg.k, cfg.l);
  std::string squared = format_double(to_double(v.value_squared));
  if (squared.find_first_of(".en") == std::string::npos) squared += ".0";
  if (cfg.format == "json") {
    emit(cfg, to_json_string(Json{{"n", v.n},
                                  {"k", v.k},
                                  {"l", v.l},
                                  {"value_squared", to_fraction_string(v.value_squared)},
                                  {"value_squared_float", to_double(v.value_squared)},
                                  {"value", v.value}}) +
                  "\n");
  } else if (cfg.format == "csv") {
    emit(cfg, "n,k,l,value_squared,value_squared_float,value\n" + std::to_string(v.n) + "," +
                  std::to_string(v.k) + "," + std::to_string(v.l) + "," +
                  to_fraction_string(v.value_squared) + "," + squared + "," +
                  format_double(v.value) + "\n");
  } else {
    emit(cfg, to_fraction_string(v.value_squared) + ", " + squared + "\n");
  }
  return 0;
}

int run_conditions(const RunConfig& cfg) {
  require_k_le_l(cfg);
  if (cfg.n_from > cfg.n_to) throw UsageError("--n-from must not exceed --n-to");
  if (cfg.n_to < cfg.k + cfg.l) {
    throw UsageError("--n-to must be at least k + l = " + std::to_string(cfg.k + cfg.l));
  }
  std::vector<int> theorems;
  if (cfg.theorem != "2") theorems.push_back(1);
  if (cfg.theorem != "1") theorems.push_back(2);
  std::vector<ThresholdReport> scans;
  for (int theorem : theorems) {
    scans.push_back(threshold_scan(theorem, cfg.k, cfg.l, cfg.n_from, cfg.n_to, cfg.jobs));
  }
  if (cfg.format == "csv") {
    std::ostringstream os;
    os << "n,k,l,theorem,overall,first_failing_witness\n";
    const std::size_t rows = scans.front().reports.size();
    for (std::size_t i = 0; i < rows; ++i) {
      for (const ThresholdReport& scan : scans) {
        const ConditionReport& r = scan.reports[i];
        os << r.n << ',' << r.k << ',' << r.l << ',' << r.theorem << ','
           << (r.overall ? "true" : "false") << ',' << csv_field(r.first_failing_witness()) << '\n';
      }
    }
    emit(cfg, os.str());
    return 0;
  }
  Json out{{"k", cfg.k}, {"l", cfg.l}, {"n_from", scans.front().n_from}, {"n_to", cfg.n_to}};
  Json list = Json::array();
  for (const ThresholdReport& scan : scans) list.push_back(to_json(scan));
  out["scans"] = std::move(list);
  emit(cfg, to_json_string(out) + "\n");
  return 0;
}

int run_search(const RunConfig& cfg) {
  require_k_le_l(cfg);
  if (cfg.format == "csv") throw UsageError("search emits json only");
  SearchOptions options;
  try {
    options.subspace = parse_subspace(cfg.subspace);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  options.restarts = cfg.restarts;
  options.seed = resolve_seed(cfg);
  options.tol = cfg.tol;
  options.max_outer = cfg.max_outer;
  options.jobs = cfg.jobs;
  const SearchResult result = alternating_maximize(cfg.n, cfg.k, cfg.l, options);
  if (result.counterexample) {
    std::cerr << "COUNTEREXAMPLE n=" << result.n << " k=" << result.k << " l=" << result.l
              << " subspace=" << to_string(result.subspace) << " seed=" << result.seed
              << " restart=" << result.best_restart
              << " gap=" << format_double(result.gap_to_conjecture) << "\n";
  }
  emit(cfg, to_json_string(to_json(result)) + "\n");
  return 0;
}

int run_identities(const RunConfig& cfg) {
  if (cfg.format == "csv") throw UsageError("identities emits json only");
  const IdentitySuiteReport report = run_identity_suite(cfg.n_max, cfg.jobs);
  emit(cfg, to_json_string(to_json(report)) + "\n");
  if (!report.pass()) {
    std::cerr << report.failures() << " exact identity check(s) failed\n";
    for (const SuiteEntry& e : report.entries) {
      if (e.pass) continue;
      std::cerr << "  " << e.group << " n=" << e.n << " k=" << e.k << " l=" << e.l;
      if (e.t) std::cerr << " t=" << *e.t;
      if (e.phi) std::cerr << " phi=" << *e.phi;
      std::cerr << ": " << e.lhs << " != " << e.rhs << "\n";
    }
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wedge-product norm maximization toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--jobs", cfg.jobs, "Worker threads (default: available parallelism)")
      ->check(CLI::Range(1u, 4096u));
  app.add_option("-o,--output", cfg.output, "Write the report here instead of stdout");
  app.add_option("--format", cfg.format, "Report format")->check(CLI::IsMember({"json", "csv"}));

  auto* value = app.add_subcommand("value", "Conjectured maximum of ||xi ^ eta||^2 (exact and float)");
  value->add_option("--n", cfg.n)->required()->check(CLI::Range(1, 1000));
  value->add_option("--k", cfg.k)->required()->check(CLI::Range(1, 1000));
  value->add_option("--l", cfg.l)->required()->check(CLI::Range(1, 1000));

  auto* conditions = app.add_subcommand("conditions", "Exact hypothesis checks over a range of n");
  conditions->add_option("--k", cfg.k)->required()->check(CLI::Range(1, 1000));
  conditions->add_option("--l", cfg.l)->required()->check(CLI::Range(1, 1000));
  conditions->add_option("--n-from", cfg.n_from)->required()->check(CLI::Range(1, 100000));
  conditions->add_option("--n-to", cfg.n_to)->required()->check(CLI::Range(1, 100000));
  conditions->add_option("--theorem", cfg.theorem, "1, 2 or both")
      ->check(CLI::IsMember({"1", "2", "both"}));

  auto* search = app.add_subcommand("search", "Alternating maximization of ||xi ^ eta||");
  search->add_option("--n", cfg.n)->required()->check(CLI::Range(1, 12));
  search->add_option("--k", cfg.k)->required()->check(CLI::Range(1, 12));
  search->add_option("--l", cfg.l)->required()->check(CLI::Range(1, 12));
  search->add_option("--subspace", cfg.subspace, "full or R")->check(CLI::IsMember({"full", "R"}));
  search->add_option("--restarts", cfg.restarts)->check(CLI::Range(1, 1000000));
  search->add_option("--seed", cfg.seed, "Base seed (fallback: WEDGE_SEED, then 0)");
  search->add_option("--tol", cfg.tol)->check(CLI::PositiveNumber);
  search->add_option("--max-outer", cfg.max_outer)->check(CLI::Range(1, 1000000));

  auto* identities = app.add_subcommand("identities", "Exact identity and counting suites");
  identities->add_option("--n-max", cfg.n_max)->required()->check(CLI::Range(2, 200));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*value) return run_value(cfg);
    if (*conditions) return run_conditions(cfg);
    if (*search) return run_search(cfg);
    if (*identities) return run_identities(cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
