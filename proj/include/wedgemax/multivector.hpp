#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "wedgemax/combinatorics.hpp"
#include "wedgemax/rational.hpp"

namespace wedgemax {

/// Homogeneous element of the exterior power of degree `degree` over V = R^{2n}, stored sparsely
/// in the orthonormal basis {e_I}. Scalar is double for numerics or Rational for exact identities.
template <typename Scalar>
class Multivector {
 public:
  using Terms = std::map<MultiIndex, Scalar>;

  Multivector(int n, int degree) : n_(n), degree_(degree) {
    if (n < 0 || degree < 0) throw std::invalid_argument("Multivector: negative n or degree");
  }

  Multivector(int n, int degree, Terms terms) : Multivector(n, degree) {
    for (auto& [index, coeff] : terms) {
      check_index(index);
      if (coeff != Scalar(0)) terms_.emplace(index, std::move(coeff));
    }
  }

  static Multivector basis_element(int n, const MultiIndex& index, Scalar coeff = Scalar(1)) {
    Multivector out(n, index.degree());
    out.check_index(index);
    if (coeff != Scalar(0)) out.terms_.emplace(index, std::move(coeff));
    return out;
  }

  /// t_i = e_{2i-1} ^ e_{2i}
  static Multivector pair_form(int n, int slot) {
    return basis_element(n, PairSet{slot}.expand());
  }

  int n() const { return n_; }
  int degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Scalar coefficient(const MultiIndex& index) const {
    auto it = terms_.find(index);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  /// Drops coefficients with magnitude <= threshold (exact zeros for Rational).
  Multivector cleaned(double threshold = 1e-15) const {
    Multivector out(n_, degree_);
    for (const auto& [index, coeff] : terms_) {
      if (std::abs(to_double(coeff)) > threshold || (threshold == 0 && coeff != Scalar(0))) {
        out.terms_.emplace(index, coeff);
      }
    }
    return out;
  }

  template <typename To>
  Multivector<To> cast() const {
    typename Multivector<To>::Terms converted;
    for (const auto& [index, coeff] : terms_) converted.emplace(index, static_cast<To>(coeff));
    return Multivector<To>(n_, degree_, std::move(converted));
  }

  Multivector& operator+=(const Multivector& other) {
    check_compatible(other, "operator+");
    for (const auto& [index, coeff] : other.terms_) accumulate(index, coeff);
    return *this;
  }

  Multivector& operator-=(const Multivector& other) {
    check_compatible(other, "operator-");
    for (const auto& [index, coeff] : other.terms_) accumulate(index, -coeff);
    return *this;
  }

  Multivector& operator*=(const Scalar& factor) {
    if (factor == Scalar(0)) {
      terms_.clear();
      return *this;
    }
    for (auto& [index, coeff] : terms_) coeff *= factor;
    return *this;
  }

  Multivector& operator/=(const Scalar& divisor) {
    for (auto& [index, coeff] : terms_) coeff /= divisor;
    return *this;
  }

  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator-(Multivector a) { return a *= Scalar(-1); }
  friend Multivector operator*(Multivector a, const Scalar& s) { return a *= s; }
  friend Multivector operator*(const Scalar& s, Multivector a) { return a *= s; }
  friend Multivector operator/(Multivector a, const Scalar& s) { return a /= s; }

  friend bool operator==(const Multivector& a, const Multivector& b) {
    return a.n_ == b.n_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

  /// Adds `coeff` to the coefficient of e_index; exact cancellation removes the entry.
  void accumulate(const MultiIndex& index, const Scalar& coeff) {
    auto [it, inserted] = terms_.try_emplace(index, coeff);
    if (!inserted) it->second += coeff;
    if (it->second == Scalar(0)) terms_.erase(it);
  }

 private:
  void check_index(const MultiIndex& index) const {
    if (index.degree() != degree_) {
      throw std::invalid_argument("Multivector: term " + index.to_string() + " has degree " +
                                  std::to_string(index.degree()) + ", expected " +
                                  std::to_string(degree_));
    }
    if (!index.fits(n_)) {
      throw std::invalid_argument("Multivector: term " + index.to_string() + " exceeds 2n = " +
                                  std::to_string(2 * n_));
    }
  }

  void check_compatible(const Multivector& other, const char* what) const {
    if (other.n_ != n_ || other.degree_ != degree_) {
      throw std::invalid_argument(std::string(what) + ": mismatched n or degree");
    }
  }

  int n_ = 0;
  int degree_ = 0;
  Terms terms_;
};

using RealMultivector = Multivector<double>;
using ExactMultivector = Multivector<Rational>;

template <typename Scalar>
Multivector<Scalar> wedge(const Multivector<Scalar>& x, const Multivector<Scalar>& y) {
  if (x.n() != y.n()) throw std::invalid_argument("wedge: mismatched n");
  Multivector<Scalar> out(x.n(), x.degree() + y.degree());
  if (x.degree() + y.degree() > 2 * x.n()) return out;
  for (const auto& [i, a] : x.terms()) {
    for (const auto& [j, b] : y.terms()) {
      const MergeResult m = merge_sign(i, j);
      if (m.sign == 0) continue;
      const Scalar product = a * b;
      out.accumulate(m.merged, m.sign > 0 ? product : Scalar(-product));
    }
  }
  return out;
}

template <typename Scalar>
Scalar inner(const Multivector<Scalar>& x, const Multivector<Scalar>& y) {
  if (x.n() != y.n() || x.degree() != y.degree()) {
    throw std::invalid_argument("inner: mismatched n or degree");
  }
  Scalar sum(0);
  const auto& small = x.size() <= y.size() ? x : y;
  const auto& large = x.size() <= y.size() ? y : x;
  for (const auto& [index, coeff] : small.terms()) {
    auto it = large.terms().find(index);
    if (it != large.terms().end()) sum += coeff * it->second;
  }
  return sum;
}

template <typename Scalar>
Scalar norm_squared(const Multivector<Scalar>& x) {
  Scalar sum(0);
  for (const auto& [index, coeff] : x.terms()) sum += coeff * coeff;
  return sum;
}

template <typename Scalar>
double norm(const Multivector<Scalar>& x) {
  return std::sqrt(to_double(norm_squared(x)));
}

inline RealMultivector normalized(const RealMultivector& x) {
  const double length = norm(x);
  if (length == 0) throw std::invalid_argument("normalized: zero multivector");
  return x / length;
}

/// omega = t_1 + ... + t_n
template <typename Scalar = double>
Multivector<Scalar> omega(int n) {
  Multivector<Scalar> out(n, 2);
  for (int i = 1; i <= n; ++i) out.accumulate(PairSet{i}.expand(), Scalar(1));
  return out;
}

/// omega^k = k! * sum over PairSets of size k; zero (of degree 2k) when k > n.
template <typename Scalar = double>
Multivector<Scalar> omega_power(int n, int k) {
  if (k < 0) throw std::invalid_argument("omega_power: negative k");
  Multivector<Scalar> out(n, 2 * k);
  if (k > n) return out;
  Scalar factorial(1);
  for (int i = 2; i <= k; ++i) factorial *= Scalar(i);
  for (const PairSet& p : enumerate_paired(n, k)) out.accumulate(p.expand(), factorial);
  return out;
}

template <typename Scalar>
struct RSplit {
  Multivector<Scalar> r_part;
  Multivector<Scalar> c_part;
};

/// Orthogonal split into the span R of pair products and its complement C.
template <typename Scalar>
RSplit<Scalar> project_R(const Multivector<Scalar>& x) {
  if (x.degree() % 2 != 0) {
    throw std::invalid_argument("project_R: odd degree " + std::to_string(x.degree()));
  }
  RSplit<Scalar> split{Multivector<Scalar>(x.n(), x.degree()),
                       Multivector<Scalar>(x.n(), x.degree())};
  for (const auto& [index, coeff] : x.terms()) {
    (index.is_paired() ? split.r_part : split.c_part).accumulate(index, coeff);
  }
  return split;
}

template <typename Scalar>
bool in_R(const Multivector<Scalar>& x) {
  if (x.degree() % 2 != 0) return false;
  for (const auto& [index, coeff] : x.terms()) {
    if (!index.is_paired()) return false;
  }
  return true;
}

template <typename Scalar>
bool in_C(const Multivector<Scalar>& x) {
  if (x.degree() % 2 != 0) return false;
  for (const auto& [index, coeff] : x.terms()) {
    if (index.is_paired()) return false;
  }
  return true;
}

}  // namespace wedgemax
