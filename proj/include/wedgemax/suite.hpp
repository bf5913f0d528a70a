#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "wedgemax/combinatorics.hpp"
#include "wedgemax/conjecture.hpp"
#include "wedgemax/json_io.hpp"
#include "wedgemax/multivector.hpp"
#include "wedgemax/parallel.hpp"
#include "wedgemax/proofcheck.hpp"

namespace wedgemax {

/// One exact equality (or a formula next to its enumeration); `checked` is false when enumeration
/// was skipped, in which case the entry never fails.
struct SuiteEntry {
  std::string group;
  int n = 0;
  int k = 0;
  int l = 0;
  std::optional<int> t;
  std::optional<int> phi;
  std::string label;
  std::string lhs;
  std::string rhs;
  bool checked = true;
  bool pass = true;
  std::string note;
};

struct IdentitySuiteReport {
  int n_max = 0;
  int enumeration_n_max = 0;
  std::vector<SuiteEntry> entries;

  bool pass() const {
    return std::all_of(entries.begin(), entries.end(), [](const SuiteEntry& e) { return e.pass; });
  }
  std::size_t failures(const std::string& group = {}) const {
    return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [&](const SuiteEntry& e) {
      return !e.pass && (group.empty() || e.group == group);
    }));
  }
};

/// Largest n at which the counting formulas are checked against exhaustive enumeration.
inline constexpr int kSuiteEnumerationLimit = 7;

namespace detail {

inline SuiteEntry exact_entry(std::string group, int n, int k, int l, std::string label,
                              const Rational& lhs, const Rational& rhs) {
  SuiteEntry e;
  e.group = std::move(group);
  e.n = n;
  e.k = k;
  e.l = l;
  e.label = std::move(label);
  e.lhs = to_fraction_string(lhs);
  e.rhs = to_fraction_string(rhs);
  e.pass = lhs == rhs;
  return e;
}

inline SuiteEntry count_entry(const std::string& group, const CountWitness& w) {
  SuiteEntry e;
  e.group = group;
  e.n = w.n;
  e.k = w.k;
  e.l = w.l;
  e.t = w.t;
  e.phi = w.phi;
  e.label = w.phi ? "C(n-phi-t,k-t) vs enumeration" : "C(n-l-t,k-t) vs enumeration";
  e.lhs = w.enumerated_value ? w.enumerated_value->str() : "";
  e.rhs = w.formula_value.str();
  e.checked = w.verified();
  e.pass = w.agrees();
  e.note = w.note;
  return e;
}

inline SuiteEntry coefficient_entry(const std::string& group, const CoefficientCheck& c) {
  SuiteEntry e;
  e.group = group;
  e.n = c.n;
  e.k = c.k;
  e.l = c.l;
  e.phi = c.phi;
  e.label = "enumerated coefficient vs closed form";
  e.lhs = c.enumerated ? to_fraction_string(*c.enumerated) : "";
  e.rhs = to_fraction_string(c.formula);
  e.checked = c.enumerated.has_value();
  e.pass = c.pass();
  e.note = c.note;
  return e;
}

inline std::vector<SuiteEntry> suite_cell(int n, int k, int l) {
  std::vector<SuiteEntry> out;
  for (const IdentityCheck& c : vandermonde_identities(n, k, l).checks) {
    out.push_back(exact_entry("binomial", n, k, l, c.name, c.lhs, c.rhs));
  }
  out.push_back(exact_entry("binomial", n, k, l, "c(n,k,l) = c(n,l,k)",
                            conjectured_max_sq(n, k, l).value_squared,
                            conjectured_max_sq(n, l, k).value_squared));

  if (n > kSuiteEnumerationLimit) return out;

  const Rational c = conjectured_max_sq(n, k, l).value_squared;
  const ExactMultivector wk = omega_power<Rational>(n, k);
  const ExactMultivector wl = omega_power<Rational>(n, l);
  Rational factorial = 1;
  for (int i = 2; i <= k; ++i) factorial *= i;
  out.push_back(exact_entry("omega", n, k, l, "||omega^k||^2 = (k!)^2 C(n,k)", norm_squared(wk),
                            factorial * factorial * Rational(binomial(n, k))));
  out.push_back(exact_entry("omega", n, k, l,
                            "||omega^k ^ omega^l||^2 = c ||omega^k||^2 ||omega^l||^2",
                            norm_squared(wedge(wk, wl)), c * norm_squared(wk) * norm_squared(wl)));

  for (int t = 0; t <= k - 1; ++t) {
    out.push_back(count_entry("superset-count-R", count_supersets(n, k, l, t)));
    for (int phi = std::max(0, k - t); phi <= l - 1; ++phi) {
      out.push_back(count_entry("superset-count-C", count_supersets(n, k, l, t, phi)));
    }
  }
  out.push_back(coefficient_entry("coefficient-R", averaged_coefficient_R(n, k, l)));
  for (int phi = 0; phi <= l - 1; ++phi) {
    out.push_back(coefficient_entry("coefficient-C", averaged_coefficient_C(n, k, l, phi)));
  }
  return out;
}

}  // namespace detail

/// Exact binomial identities for every 1 <= k <= l, k + l <= n <= n_max; omega-power norms, counting
/// formulas and proof coefficients against enumeration up to n = min(n_max, 7).
inline IdentitySuiteReport run_identity_suite(int n_max, unsigned jobs = 1) {
  if (n_max < 2) throw std::invalid_argument("run_identity_suite: n-max must be >= 2");
  std::vector<std::tuple<int, int, int>> cells;
  for (int n = 2; n <= n_max; ++n) {
    for (int k = 1; 2 * k <= n; ++k) {
      for (int l = k; k + l <= n; ++l) cells.emplace_back(n, k, l);
    }
  }
  std::vector<std::vector<SuiteEntry>> parts(cells.size());
  parallel_for(cells.size(), jobs, [&](std::size_t i) {
    const auto [n, k, l] = cells[i];
    parts[i] = detail::suite_cell(n, k, l);
  });
  IdentitySuiteReport report;
  report.n_max = n_max;
  report.enumeration_n_max = std::min(n_max, kSuiteEnumerationLimit);
  for (auto& part : parts) {
    for (auto& e : part) report.entries.push_back(std::move(e));
  }
  return report;
}

inline Json to_json(const IdentitySuiteReport& r) {
  Json entries = Json::array();
  for (const SuiteEntry& e : r.entries) {
    Json item{{"group", e.group}, {"n", e.n}, {"k", e.k}, {"l", e.l}};
    item["t"] = e.t ? Json(*e.t) : Json(nullptr);
    item["phi"] = e.phi ? Json(*e.phi) : Json(nullptr);
    item["label"] = e.label;
    item["lhs"] = e.lhs;
    item["rhs"] = e.rhs;
    item["checked"] = e.checked;
    item["pass"] = e.pass;
    if (!e.note.empty()) item["note"] = e.note;
    entries.push_back(std::move(item));
  }
  Json groups = Json::object();
  for (const SuiteEntry& e : r.entries) {
    if (!groups.contains(e.group)) groups[e.group] = Json{{"entries", 0}, {"failures", 0}};
    groups[e.group]["entries"] = groups[e.group]["entries"].get<int>() + 1;
    if (!e.pass) groups[e.group]["failures"] = groups[e.group]["failures"].get<int>() + 1;
  }
  return Json{{"n_max", r.n_max},
              {"enumeration_n_max", r.enumeration_n_max},
              {"pass", r.pass()},
              {"groups", std::move(groups)},
              {"entries", std::move(entries)}};
}

}  // namespace wedgemax
