#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include "wedgemax/multivector.hpp"

namespace wedgemax {

enum class Subspace { kFull, kR, kC };

inline std::string to_string(Subspace s) {
  switch (s) {
    case Subspace::kFull: return "full";
    case Subspace::kR: return "R";
    case Subspace::kC: return "C";
  }
  return "?";
}

inline Subspace parse_subspace(const std::string& name) {
  if (name == "full") return Subspace::kFull;
  if (name == "R") return Subspace::kR;
  if (name == "C") return Subspace::kC;
  throw std::invalid_argument("unknown subspace \"" + name + "\" (expected full, R or C)");
}

inline bool in_subspace(const MultiIndex& index, Subspace s) {
  return s == Subspace::kFull || (s == Subspace::kR) == index.is_paired();
}

/// Uniform on the unit sphere of the chosen subspace: i.i.d. Gaussian coordinates, normalized.
inline RealMultivector random_unit(int n, int degree, Subspace subspace, std::mt19937_64& rng) {
  if (degree % 2 != 0 || degree > 2 * n) {
    throw std::invalid_argument("random_unit: degree must be even and <= 2n");
  }
  std::normal_distribution<double> normal;
  RealMultivector::Terms terms;
  for (const MultiIndex& index : enumerate_full(n, degree)) {
    if (in_subspace(index, subspace)) terms.emplace(index, normal(rng));
  }
  RealMultivector x(n, degree, std::move(terms));
  if (x.is_zero()) {
    throw std::invalid_argument("random_unit: subspace " + to_string(subspace) +
                                " is trivial in degree " + std::to_string(degree));
  }
  return normalized(x);
}

inline RealMultivector random_unit(int n, int degree, Subspace subspace, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_unit(n, degree, subspace, rng);
}

}  // namespace wedgemax
