#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "wedgemax/combinatorics.hpp"
#include "wedgemax/conjecture.hpp"
#include "wedgemax/multivector.hpp"
#include "wedgemax/random.hpp"

namespace wedgemax {

namespace detail {

template <typename Scalar>
Scalar from_rational(const Rational& r) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return r;
  } else {
    return static_cast<Scalar>(to_double(r));
  }
}

template <typename Scalar>
void require_decomposable(const Multivector<Scalar>& xi, const Multivector<Scalar>& eta,
                          const char* what) {
  if (xi.n() != eta.n()) throw std::invalid_argument(std::string(what) + ": mismatched n");
  if (xi.degree() % 2 != 0 || eta.degree() % 2 != 0) {
    throw std::invalid_argument(std::string(what) + ": degrees must be even");
  }
  if (xi.is_zero() || eta.is_zero()) {
    throw std::invalid_argument(std::string(what) + ": xi and eta must be nonzero");
  }
  const int k = xi.degree() / 2;
  const int l = eta.degree() / 2;
  if (k < 1 || k > l || k + l > xi.n()) {
    throw std::invalid_argument(std::string(what) + ": need 1 <= k <= l and k + l <= n");
  }
  if (!in_R(xi)) throw std::invalid_argument(std::string(what) + ": xi is not in R_k");
}

}  // namespace detail

/// F = ||xi ^ eta||^2 - c ||xi||^2 ||eta||^2 split as F = A + B with A = sum_t C_t, for xi in R_k
/// and eta in R_l, each sum evaluated by explicit enumeration of (T, I1, I2).
template <typename Scalar>
struct Theorem1Decomposition {
  int n = 0;
  int k = 0;
  int l = 0;
  Scalar F{};
  Scalar F_from_wedge{};
  Scalar A{};
  Scalar B{};
  std::vector<Scalar> C;          // C_t, t = 0..k-1
  std::vector<Scalar> C_squares;  // -(alpha(t)/2) * sum (a_I1 b_{T\I2} - a_I2 b_{T\I1})^2
  Scalar G{};                     // averaged-squares bound on the (1 - alpha) cross terms
  Scalar disjoint_mass{};         // sum over disjoint (I, J) of a_I^2 b_J^2
};

template <typename Scalar>
Theorem1Decomposition<Scalar> decompose_theorem1(const Multivector<Scalar>& xi,
                                                 const Multivector<Scalar>& eta) {
  detail::require_decomposable(xi, eta, "decompose_theorem1");
  if (!in_R(eta)) throw std::invalid_argument("decompose_theorem1: eta is not in R_l");
  const int n = xi.n();
  const int k = xi.degree() / 2;
  const int l = eta.degree() / 2;
  const Scalar c = detail::from_rational<Scalar>(conjectured_max_sq(n, k, l).value_squared);
  std::vector<Scalar> alphas;
  for (int t = 0; t < k; ++t) alphas.push_back(detail::from_rational<Scalar>(alpha(n, k, l, t)));

  std::vector<Scalar> cross(k, Scalar(0));
  std::vector<Scalar> squares(k, Scalar(0));
  std::vector<Scalar> averaged(k, Scalar(0));
  Scalar wedge_sum(0);
  for (const PairSet& t_set : enumerate_paired(n, k + l)) {
    const MultiIndex T = t_set.expand();
    const std::vector<PairSet> parts = enumerate_paired_within(T, k);
    std::vector<MultiIndex> I;
    std::vector<Scalar> a, b;
    for (const PairSet& p : parts) {
      I.push_back(p.expand());
      a.push_back(xi.coefficient(I.back()));
      b.push_back(eta.coefficient(complement(T, I.back())));
    }
    Scalar inner_sum(0);
    for (std::size_t i = 0; i < I.size(); ++i) inner_sum += a[i] * b[i];
    wedge_sum += inner_sum * inner_sum;
    for (std::size_t i1 = 0; i1 < I.size(); ++i1) {
      for (std::size_t i2 = 0; i2 < I.size(); ++i2) {
        if (i1 == i2) continue;
        const int t = intersection_size(I[i1], I[i2]) / 2;
        const Scalar x1 = a[i1] * b[i1];
        const Scalar x2 = a[i2] * b[i2];
        cross[t] += x1 * x2;
        const Scalar swapped = a[i1] * b[i2] - a[i2] * b[i1];
        squares[t] += swapped * swapped;
        averaged[t] += (x1 * x1 + x2 * x2) / Scalar(2);
      }
    }
  }

  // mass[s] = sum over |I n J| = 2s of a_I^2 b_J^2
  std::vector<Scalar> mass(k + 1, Scalar(0));
  for (const auto& [i_index, a] : xi.terms()) {
    for (const auto& [j_index, b] : eta.terms()) {
      mass[intersection_size(i_index, j_index) / 2] += a * a * b * b;
    }
  }

  Theorem1Decomposition<Scalar> d;
  d.n = n;
  d.k = k;
  d.l = l;
  const Scalar norms = norm_squared(xi) * norm_squared(eta);
  d.F = wedge_sum - c * norms;
  d.F_from_wedge = norm_squared(wedge(xi, eta)) - c * norms;
  d.disjoint_mass = mass[0];
  d.B = -(c - Scalar(1)) * mass[0];
  for (int t = 0; t < k; ++t) {
    const Scalar ct = alphas[t] * cross[t] - c * mass[k - t];
    d.C.push_back(ct);
    d.C_squares.push_back(-(alphas[t] / Scalar(2)) * squares[t]);
    d.A += ct;
    d.B += (Scalar(1) - alphas[t]) * cross[t];
    d.G += (Scalar(1) - alphas[t]) * averaged[t];
  }
  return d;
}

/// M = ||xi ^ eta||^2 and N = c ||xi||^2 ||eta||^2 for xi in R_k, eta in C_l. The cross terms of
/// M split as W + X (weights beta(t, phi) and 1 - beta), the non-diagonal mass of N as Y + Z; both
/// share the diagonal D = sum over disjoint (u, v) of a_u^2 b_v^2, so W + X = M - D, Y + Z = N - D.
template <typename Scalar>
struct Theorem2Decomposition {
  int n = 0;
  int k = 0;
  int l = 0;
  Scalar M{};
  Scalar M_enumerated{};
  Scalar N{};
  Scalar W{};
  Scalar X{};
  Scalar Y{};
  Scalar Z{};
  Scalar diagonal{};       // D from the T-sum
  Scalar disjoint_mass{};  // D from the (u, v) sum
};

template <typename Scalar>
Theorem2Decomposition<Scalar> decompose_theorem2(const Multivector<Scalar>& xi,
                                                 const Multivector<Scalar>& eta) {
  detail::require_decomposable(xi, eta, "decompose_theorem2");
  if (!in_C(eta)) throw std::invalid_argument("decompose_theorem2: eta has a nonzero R_l component");
  const int n = xi.n();
  const int k = xi.degree() / 2;
  const int l = eta.degree() / 2;
  const Scalar c = detail::from_rational<Scalar>(conjectured_max_sq(n, k, l).value_squared);

  Theorem2Decomposition<Scalar> d;
  d.n = n;
  d.k = k;
  d.l = l;
  std::map<std::pair<int, int>, Scalar> betas;
  auto beta_at = [&](int t, int phi) -> const Scalar& {
    auto [it, inserted] = betas.try_emplace({t, phi});
    if (inserted) it->second = detail::from_rational<Scalar>(beta(n, k, l, t, phi));
    return it->second;
  };

  detail::for_each_combination(2 * n, 2 * (k + l), [&](const std::vector<int>& c_indices) {
    const MultiIndex T(c_indices);
    if (T.is_paired()) return;
    const int f = paired_pair_count(T, n);
    if (f < k) return;
    const int phi = f - k;
    std::vector<MultiIndex> u;
    std::vector<Scalar> x;
    for (const PairSet& p : enumerate_paired_within(T, k)) {
      u.push_back(p.expand());
      x.push_back(xi.coefficient(u.back()) * eta.coefficient(complement(T, u.back())));
    }
    Scalar inner_sum(0);
    for (std::size_t i = 0; i < u.size(); ++i) {
      inner_sum += x[i];
      d.diagonal += x[i] * x[i];
    }
    d.M_enumerated += inner_sum * inner_sum;
    for (std::size_t i1 = 0; i1 < u.size(); ++i1) {
      for (std::size_t i2 = 0; i2 < u.size(); ++i2) {
        if (i1 == i2) continue;
        const int t = intersection_size(u[i1], u[i2]) / 2;
        const Scalar product = x[i1] * x[i2];
        const Scalar& b = beta_at(t, phi);
        d.W += b * product;
        d.X += (Scalar(1) - b) * product;
      }
    }
  });

  Scalar overlapping(0);
  for (const PairSet& p : enumerate_paired(n, k)) {
    const MultiIndex u = p.expand();
    const Scalar a = xi.coefficient(u);
    if (a == Scalar(0)) continue;
    for (const auto& [v, b] : eta.terms()) {
      (intersection_size(u, v) == 0 ? d.disjoint_mass : overlapping) += a * a * b * b;
    }
  }
  d.M = norm_squared(wedge(xi, eta));
  d.N = c * norm_squared(xi) * norm_squared(eta);
  d.Y = (c - Scalar(1)) * d.disjoint_mass;
  d.Z = c * overlapping;
  return d;
}

struct CoefficientCheck {
  int n = 0;
  int k = 0;
  int l = 0;
  std::optional<int> phi;
  std::optional<Rational> enumerated;
  Rational formula;
  std::string note;
  bool pass() const { return !enumerated || *enumerated == formula; }
};

/// Coefficient of a_I^2 b_J^2 (disjoint I, J) in the averaged-squares bound G, accumulated by
/// walking every (T, I1, I2), against sum_t C(k,t) C(l,k-t) (1 - alpha(t)).
inline CoefficientCheck averaged_coefficient_R(int n, int k, int l) {
  CoefficientCheck check{n, k, l, std::nullopt, std::nullopt, 0, {}};
  std::vector<Rational> weights;
  for (int t = 0; t < k; ++t) {
    weights.push_back(1 - alpha(n, k, l, t));
    check.formula += Rational(binomial(k, t) * binomial(l, k - t)) * weights.back();
  }
  std::vector<int> i_slots, j_slots;
  for (int s = 1; s <= k; ++s) i_slots.push_back(s);
  for (int s = k + 1; s <= k + l; ++s) j_slots.push_back(s);
  const MultiIndex I = PairSet(i_slots).expand();
  const MultiIndex J = PairSet(j_slots).expand();

  Rational total = 0;
  for (const PairSet& t_set : enumerate_paired(n, k + l)) {
    const MultiIndex T = t_set.expand();
    std::vector<MultiIndex> parts;
    for (const PairSet& p : enumerate_paired_within(T, k)) parts.push_back(p.expand());
    for (const MultiIndex& i1 : parts) {
      for (const MultiIndex& i2 : parts) {
        if (i1 == i2) continue;
        const Rational& w = weights[intersection_size(i1, i2) / 2];
        if (i1 == I && complement(T, i1) == J) total += w / 2;
        if (i2 == I && complement(T, i2) == J) total += w / 2;
      }
    }
  }
  check.enumerated = total;
  return check;
}

/// Same for the C_l side at fixed phi: coefficient of a_u^2 b_v^2 (|u n v| = 0, f(v) = phi)
/// against sum_t (1 - beta(t, phi)) C(k,t) C(phi,k-t).
inline CoefficientCheck averaged_coefficient_C(int n, int k, int l, int phi) {
  CoefficientCheck check{n, k, l, phi, std::nullopt, 0, {}};
  if (phi < 0 || phi > l - 1) throw std::invalid_argument("averaged_coefficient_C: need 0 <= phi <= l-1");
  std::map<int, Rational> weights;
  for (int t = std::max(0, k - phi); t <= k - 1; ++t) {
    weights[t] = 1 - beta(n, k, l, t, phi);
    check.formula += Rational(binomial(k, t) * binomial(phi, k - t)) * weights[t];
  }
  if (2 * l - phi + k > n) {
    check.note = "no disjoint (u, v) with f(v) = phi fits in n";
    return check;
  }
  if (binomial(2 * n, 2 * (k + l)) > kEnumerationCap) {
    check.note = "enumeration skipped above cap";
    return check;
  }
  std::vector<int> v_indices;
  for (int s = 1; s <= phi; ++s) {
    v_indices.push_back(2 * s - 1);
    v_indices.push_back(2 * s);
  }
  for (int s = phi + 1; s <= 2 * l - phi; ++s) v_indices.push_back(2 * s - 1);
  const MultiIndex v(v_indices);
  std::vector<int> u_slots;
  for (int s = 2 * l - phi + 1; s <= 2 * l - phi + k; ++s) u_slots.push_back(s);
  const MultiIndex u = PairSet(u_slots).expand();

  Rational total = 0;
  detail::for_each_combination(2 * n, 2 * (k + l), [&](const std::vector<int>& c_indices) {
    const MultiIndex T(c_indices);
    if (T.is_paired() || paired_pair_count(T, n) != k + phi) return;
    std::vector<MultiIndex> parts;
    for (const PairSet& p : enumerate_paired_within(T, k)) parts.push_back(p.expand());
    for (const MultiIndex& u1 : parts) {
      for (const MultiIndex& u2 : parts) {
        if (u1 == u2) continue;
        const Rational& w = weights.at(intersection_size(u1, u2) / 2);
        if (u1 == u && complement(T, u1) == v) total += w / 2;
        if (u2 == u && complement(T, u2) == v) total += w / 2;
      }
    }
  });
  check.enumerated = total;
  return check;
}

/// Outcome of randomized trials of both decompositions at one (n, k, l).
struct ProofTrialSummary {
  int n = 0;
  int k = 0;
  int l = 0;
  bool theorem1_hypothesis = false;
  bool theorem2_hypothesis = false;
  int theorem1_trials = 0;
  int theorem2_trials = 0;
  double max_C = -INFINITY;
  double max_B = -INFINITY;
  double max_F = -INFINITY;
  double max_F_mismatch = 0;       // |F - F_from_wedge|
  double max_split_mismatch = 0;   // |F - (A + B)| and |A - sum C_t|
  double max_C_form_mismatch = 0;  // |C_t - C_squares_t|
  double max_W_minus_Z = -INFINITY;
  double max_X_minus_Y = -INFINITY;
  double max_M_minus_N = -INFINITY;
  double max_WXYZ_mismatch = 0;    // |W + X - (M - D)|, |Y + Z - (N - D)|, |M - M_enumerated|

  bool pass(double tol = 1e-10) const {
    bool ok = max_split_mismatch <= tol && max_F_mismatch <= tol && max_C_form_mismatch <= tol &&
              max_WXYZ_mismatch <= tol;
    if (theorem1_trials > 0) ok = ok && max_C <= tol && max_B <= tol && max_F <= tol;
    if (theorem2_trials > 0) {
      ok = ok && max_W_minus_Z <= tol && max_X_minus_Y <= tol && max_M_minus_N <= tol;
    }
    return ok;
  }
};

/// Random unit trials where the respective hypothesis holds; nothing is asserted where it fails.
inline ProofTrialSummary run_proof_trials(int n, int k, int l, int trials, std::uint64_t seed) {
  ProofTrialSummary s;
  s.n = n;
  s.k = k;
  s.l = l;
  s.theorem1_hypothesis = theorem1_check(n, k, l).overall;
  s.theorem2_hypothesis = theorem2_check(n, k, l).overall;
  std::mt19937_64 rng(seed ^ (static_cast<std::uint64_t>(n) << 32) ^
                      (static_cast<std::uint64_t>(k) << 16) ^ static_cast<std::uint64_t>(l));
  if (s.theorem1_hypothesis) {
    for (int trial = 0; trial < trials; ++trial) {
      const RealMultivector xi = random_unit(n, 2 * k, Subspace::kR, rng);
      const RealMultivector eta = random_unit(n, 2 * l, Subspace::kR, rng);
      const auto d = decompose_theorem1(xi, eta);
      double sum_c = 0;
      for (int t = 0; t < k; ++t) {
        s.max_C = std::max(s.max_C, d.C[t]);
        s.max_C_form_mismatch = std::max(s.max_C_form_mismatch, std::abs(d.C[t] - d.C_squares[t]));
        sum_c += d.C[t];
      }
      s.max_B = std::max(s.max_B, d.B);
      s.max_F = std::max(s.max_F, d.F);
      s.max_F_mismatch = std::max(s.max_F_mismatch, std::abs(d.F - d.F_from_wedge));
      s.max_split_mismatch = std::max({s.max_split_mismatch, std::abs(d.F - (d.A + d.B)),
                                       std::abs(d.A - sum_c)});
      ++s.theorem1_trials;
    }
  }
  // C_l is trivial only when 2l = 0 or 2l = 2n; k + l <= n with k >= 1 rules both out.
  if (s.theorem2_hypothesis) {
    for (int trial = 0; trial < trials; ++trial) {
      const RealMultivector xi = random_unit(n, 2 * k, Subspace::kR, rng);
      const RealMultivector eta = random_unit(n, 2 * l, Subspace::kC, rng);
      const auto d = decompose_theorem2(xi, eta);
      s.max_W_minus_Z = std::max(s.max_W_minus_Z, d.W - d.Z);
      s.max_X_minus_Y = std::max(s.max_X_minus_Y, d.X - d.Y);
      s.max_M_minus_N = std::max(s.max_M_minus_N, d.M - d.N);
      s.max_WXYZ_mismatch = std::max({s.max_WXYZ_mismatch,
                                      std::abs(d.W + d.X - (d.M - d.diagonal)),
                                      std::abs(d.Y + d.Z - (d.N - d.disjoint_mass)),
                                      std::abs(d.diagonal - d.disjoint_mass),
                                      std::abs(d.M - d.M_enumerated)});
      ++s.theorem2_trials;
    }
  }
  return s;
}

}  // namespace wedgemax
