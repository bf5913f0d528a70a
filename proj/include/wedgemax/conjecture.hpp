#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wedgemax/combinatorics.hpp"
#include "wedgemax/json_io.hpp"
#include "wedgemax/parallel.hpp"
#include "wedgemax/rational.hpp"

namespace wedgemax {

namespace detail {

inline void require_grid_point(int n, int k, int l, const char* what) {
  if (k < 1 || l < 1) throw std::invalid_argument(std::string(what) + ": need k, l >= 1");
  if (k + l > n) {
    throw std::invalid_argument(std::string(what) + ": k + l = " + std::to_string(k + l) +
                                " exceeds n = " + std::to_string(n));
  }
}

inline void require_ordered(int n, int k, int l, const char* what) {
  require_grid_point(n, k, l, what);
  if (k > l) throw std::invalid_argument(std::string(what) + ": need k <= l");
}

inline Rational ratio(const Integer& num, const Integer& den) { return Rational(num, den); }

}  // namespace detail

/// The conjectured maximum of ||xi ^ eta||^2: C(n-k,l) C(k+l,l) / C(n,l).
struct ConjecturedValue {
  int n = 0;
  int k = 0;
  int l = 0;
  Rational value_squared;
  double value = 0;
};

inline ConjecturedValue conjectured_max_sq(int n, int k, int l) {
  detail::require_grid_point(n, k, l, "conjectured_max_sq");
  ConjecturedValue v{n, k, l, {}, 0};
  v.value_squared =
      detail::ratio(binomial(n - k, l) * binomial(k + l, l), binomial(n, l));
  v.value = std::sqrt(to_double(v.value_squared));
  return v;
}

inline Rational alpha(int n, int k, int l, int t) {
  detail::require_ordered(n, k, l, "alpha");
  if (t < 0 || t > k - 1) throw std::invalid_argument("alpha: need 0 <= t <= k-1");
  return detail::ratio(binomial(k + l, k) * binomial(n - l, k),
                       binomial(n, k) * binomial(n - l - t, k - t));
}

inline bool beta_admissible(int k, int l, int t, int phi) {
  return phi >= 0 && phi <= l - 1 && t >= 0 && t <= k - 1 && phi + t >= k;
}

inline Rational beta(int n, int k, int l, int t, int phi) {
  detail::require_ordered(n, k, l, "beta");
  if (!beta_admissible(k, l, t, phi)) {
    throw std::invalid_argument("beta: (t=" + std::to_string(t) + ", phi=" + std::to_string(phi) +
                                ") violates 0 <= phi <= l-1, 0 <= t <= k-1, phi + t >= k");
  }
  return detail::ratio(binomial(n - k, l) * binomial(k + l, l),
                       binomial(n, l) * binomial(n - phi - t, k - t));
}

struct Witness {
  int t = 0;
  std::optional<int> phi;
  Rational value;
  bool pass = false;
};

/// Per-phi summed requirement on the C_l side.
struct SumRecord {
  int phi = 0;
  Rational lhs;
  Rational rhs;
  bool vacuous = false;
  bool pass = false;
};

struct ConditionReport {
  int theorem = 1;
  int n = 0;
  int k = 0;
  int l = 0;
  std::vector<Witness> witnesses;
  std::vector<SumRecord> sums;
  // Theorem 1 only: the single t = k-1 check and whether it agrees with the per-t verdict.
  std::optional<Rational> simplified_value;
  bool simplified_agrees = true;
  bool overall = false;

  std::string first_failing_witness() const {
    for (const Witness& w : witnesses) {
      if (w.pass) continue;
      std::string out = "t=" + std::to_string(w.t);
      if (w.phi) out += " phi=" + std::to_string(*w.phi);
      return out + (theorem == 1 ? " alpha=" : " beta=") + to_fraction_string(w.value);
    }
    for (const SumRecord& s : sums) {
      if (s.pass) continue;
      return "phi=" + std::to_string(s.phi) + " sum=" + to_fraction_string(s.lhs) + ">" +
             to_fraction_string(s.rhs);
    }
    return "";
  }
};

inline ConditionReport theorem1_check(int n, int k, int l) {
  detail::require_ordered(n, k, l, "theorem1_check");
  ConditionReport report;
  report.theorem = 1;
  report.n = n;
  report.k = k;
  report.l = l;
  report.overall = true;
  for (int t = 0; t <= k - 1; ++t) {
    Witness w{t, std::nullopt, alpha(n, k, l, t), false};
    w.pass = w.value >= 0 && w.value <= 1;
    report.overall = report.overall && w.pass;
    report.witnesses.push_back(std::move(w));
  }
  const Rational simplified = detail::ratio(binomial(k + l, k) * binomial(n - l, k),
                                            Integer(n - k - l + 1) * binomial(n, k));
  report.simplified_value = simplified;
  report.simplified_agrees = (simplified >= 0 && simplified <= 1) == report.overall;
  return report;
}

inline ConditionReport theorem2_check(int n, int k, int l) {
  detail::require_ordered(n, k, l, "theorem2_check");
  ConditionReport report;
  report.theorem = 2;
  report.n = n;
  report.k = k;
  report.l = l;
  report.overall = true;
  const Rational c = conjectured_max_sq(n, k, l).value_squared;
  for (int phi = 0; phi <= l - 1; ++phi) {
    SumRecord sum{phi, 0, c - 1, true, true};
    for (int t = std::max(0, k - phi); t <= k - 1; ++t) {
      Witness w{t, phi, beta(n, k, l, t, phi), false};
      w.pass = w.value <= 1;
      report.overall = report.overall && w.pass;
      sum.vacuous = false;
      sum.lhs += (1 - w.value) * Rational(binomial(k, t) * binomial(phi, k - t));
      report.witnesses.push_back(std::move(w));
    }
    sum.pass = sum.vacuous || sum.lhs <= sum.rhs;
    report.overall = report.overall && sum.pass;
    report.sums.push_back(std::move(sum));
  }
  return report;
}

inline ConditionReport condition_check(int theorem, int n, int k, int l) {
  if (theorem == 1) return theorem1_check(n, k, l);
  if (theorem == 2) return theorem2_check(n, k, l);
  throw std::invalid_argument("condition_check: theorem must be 1 or 2");
}

/// Where a theorem's hypothesis holds over a finite range of n. Thresholds are empirical and only
/// claimed within [n_from, n_to].
struct ThresholdReport {
  int theorem = 1;
  int k = 0;
  int l = 0;
  int n_from = 0;
  int n_to = 0;
  std::vector<int> holds;
  /// Largest m with the hypothesis holding on all of [n_from, m].
  std::optional<int> prefix_bound;
  /// Smallest n0 with the hypothesis holding on all of [n0, n_to]; M(k,l) or N(k,l).
  std::optional<int> tail_bound;
  bool unresolved_tail = false;
  std::vector<ConditionReport> reports;
};

inline ThresholdReport threshold_scan(int theorem, int k, int l, int n_from, int n_to,
                                      unsigned jobs = 1) {
  if (k < 1 || k > l) throw std::invalid_argument("threshold_scan: need 1 <= k <= l");
  n_from = std::max(n_from, k + l);
  if (n_to < n_from) throw std::invalid_argument("threshold_scan: empty range of n");
  ThresholdReport out{theorem, k, l, n_from, n_to, {}, {}, {}, false, {}};
  out.reports.resize(static_cast<std::size_t>(n_to - n_from + 1));
  parallel_for(out.reports.size(), jobs, [&](std::size_t i) {
    out.reports[i] = condition_check(theorem, n_from + static_cast<int>(i), k, l);
  });
  for (const ConditionReport& r : out.reports) {
    if (r.overall) out.holds.push_back(r.n);
  }
  for (const ConditionReport& r : out.reports) {
    if (!r.overall) break;
    out.prefix_bound = r.n;
  }
  for (auto it = out.reports.rbegin(); it != out.reports.rend() && it->overall; ++it) {
    out.tail_bound = it->n;
  }
  out.unresolved_tail = !out.reports.back().overall;
  return out;
}

inline ThresholdReport threshold_scan(int theorem, int k, int l, int n_max) {
  return threshold_scan(theorem, k, l, k + l, n_max);
}

inline Json to_json(const ConditionReport& r) {
  Json witnesses = Json::array();
  for (const Witness& w : r.witnesses) {
    Json item{{"t", w.t}};
    item["phi"] = w.phi ? Json(*w.phi) : Json(nullptr);
    item["value"] = to_fraction_string(w.value);
    item["pass"] = w.pass;
    witnesses.push_back(std::move(item));
  }
  Json out{{"theorem", r.theorem}, {"n", r.n}, {"k", r.k}, {"l", r.l},
           {"witnesses", std::move(witnesses)}};
  if (r.theorem == 1 && r.simplified_value) {
    out["simplified"] = Json{{"value", to_fraction_string(*r.simplified_value)},
                             {"agrees", r.simplified_agrees}};
  }
  if (r.theorem == 2) {
    Json sums = Json::array();
    for (const SumRecord& s : r.sums) {
      sums.push_back(Json{{"phi", s.phi},
                          {"lhs", to_fraction_string(s.lhs)},
                          {"rhs", to_fraction_string(s.rhs)},
                          {"vacuous", s.vacuous},
                          {"pass", s.pass}});
    }
    out["sums"] = std::move(sums);
  }
  out["overall"] = r.overall;
  return out;
}

inline Json to_json(const ThresholdReport& t) {
  auto optional_int = [](const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); };
  Json reports = Json::array();
  for (const ConditionReport& r : t.reports) reports.push_back(to_json(r));
  return Json{{"theorem", t.theorem},
              {"k", t.k},
              {"l", t.l},
              {"n_from", t.n_from},
              {"n_to", t.n_to},
              {"holds", t.holds},
              {"prefix_bound", optional_int(t.prefix_bound)},
              {"tail_bound", optional_int(t.tail_bound)},
              {"unresolved_tail", t.unresolved_tail},
              {"reports", std::move(reports)}};
}

}  // namespace wedgemax
