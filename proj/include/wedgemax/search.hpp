#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wedgemax/conjecture.hpp"
#include "wedgemax/json_io.hpp"
#include "wedgemax/multivector.hpp"
#include "wedgemax/operator.hpp"
#include "wedgemax/parallel.hpp"
#include "wedgemax/random.hpp"

namespace wedgemax {

inline double evaluate_pair(const RealMultivector& xi, const RealMultivector& eta) {
  if (xi.n() != eta.n()) throw std::invalid_argument("evaluate_pair: mismatched n");
  if (xi.degree() % 2 != 0 || eta.degree() % 2 != 0) {
    throw std::invalid_argument("evaluate_pair: degrees must be even");
  }
  return norm(wedge(xi, eta));
}

struct SearchOptions {
  Subspace subspace = Subspace::kFull;
  int restarts = 32;
  std::uint64_t seed = 0;
  double tol = 1e-12;
  int max_outer = 500;
  unsigned jobs = 1;
};

struct RestartRecord {
  int index = 0;
  double value = 0;
  int iterations = 0;
  bool converged = false;
  /// The half-step operator vanished on the chosen subspace, so no unit maximizer direction exists.
  bool degenerate = false;
  /// Largest drop of the objective across half-steps (0 when monotone).
  double max_drop = 0;
};

struct SearchResult {
  int n = 0;
  int k = 0;
  int l = 0;
  Subspace subspace = Subspace::kFull;
  std::uint64_t seed = 0;
  double tol = 0;
  int max_outer = 0;
  double best_value = 0;
  double best_value_squared = 0;
  RealMultivector xi{0, 0};
  RealMultivector eta{0, 0};
  int best_restart = -1;
  int restarts_used = 0;
  std::vector<RestartRecord> restarts;
  bool converged = false;
  double conjectured_value_squared = 0;
  double gap_to_conjecture = 0;
  bool counterexample = false;
};

inline constexpr double kCounterexampleThreshold = 1e-7;

namespace detail {

/// Gram-operator dimension up to which half-steps use a dense eigensolver; above it, warm-started
/// power iteration.
inline constexpr Eigen::Index kDenseHalfStepLimit = 600;

inline std::uint64_t restart_seed(std::uint64_t seed, int restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

inline void sign_normalize(Eigen::VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v(i) != 0) {
      if (v(i) < 0) v = -v;
      return;
    }
  }
}

/// Top eigenvector of the PSD matrix applied by `gram` (dimension `dim`), preferring the component
/// of `current` inside the top eigenspace. Returns false when the operator is zero.
template <typename ApplyGram>
bool top_direction(ApplyGram&& gram, Eigen::Index dim, Eigen::VectorXd& current, double tol) {
  if (dim <= kDenseHalfStepLimit) {
    Eigen::MatrixXd g(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) g.col(j) = gram(Eigen::VectorXd::Unit(dim, j));
    g = (g + g.transpose()) / 2;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g);
    const Eigen::VectorXd& values = eig.eigenvalues();
    const double top = values(dim - 1);
    if (!(top > 0)) return false;
    Eigen::VectorXd projected = Eigen::VectorXd::Zero(dim);
    for (Eigen::Index j = dim - 1; j >= 0 && values(j) >= top * (1 - 1e-12); --j) {
      const auto u = eig.eigenvectors().col(j);
      projected += u.dot(current) * u;
    }
    current = projected.norm() > 1e-8 ? Eigen::VectorXd(projected.normalized())
                                      : Eigen::VectorXd(eig.eigenvectors().col(dim - 1));
    return true;
  }
  NormCertificate cert = power_iterate(gram, current, tol, 100000);
  if (cert.value == 0) return false;
  current = std::move(cert.right_vector);
  return true;
}

inline RealMultivector to_multivector(int n, int degree, const Basis& basis,
                                      const Eigen::VectorXd& v) {
  RealMultivector::Terms terms;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if (v(static_cast<Eigen::Index>(j)) != 0) terms.emplace(basis[j], v(static_cast<Eigen::Index>(j)));
  }
  return RealMultivector(n, degree, std::move(terms));
}

struct RestartOutcome {
  RestartRecord record;
  Eigen::VectorXd x;
  Eigen::VectorXd y;
};

inline RestartOutcome run_restart(const WedgeTable& table, int index, std::uint64_t seed,
                                  double tol, int max_outer) {
  RestartOutcome out;
  out.record.index = index;
  const Eigen::Index left_dim = static_cast<Eigen::Index>(table.left_basis().size());
  const Eigen::Index right_dim = static_cast<Eigen::Index>(table.right_basis().size());

  std::mt19937_64 rng(restart_seed(seed, index));
  std::normal_distribution<double> normal;
  out.x.resize(left_dim);
  for (Eigen::Index i = 0; i < left_dim; ++i) out.x(i) = normal(rng);
  out.x.normalize();
  out.y = Eigen::VectorXd::Zero(right_dim);
  for (Eigen::Index i = 0; i < right_dim; ++i) out.y(i) = normal(rng);
  out.y.normalize();

  auto value = [&] { return table.product(out.x, out.y).norm(); };
  const double inner_tol = std::max(tol, 1e-15);
  double previous = value();
  double last_change = INFINITY;
  for (int outer = 1; outer <= max_outer; ++outer) {
    out.record.iterations = outer;
    // eta-step: top right-singular vector of L_xi
    const bool eta_ok = top_direction(
        [&](const Eigen::VectorXd& y) { return table.adjoint_right(out.x, table.product(out.x, y)); },
        right_dim, out.y, inner_tol);
    if (!eta_ok) {
      out.record.degenerate = true;
      break;
    }
    sign_normalize(out.y);
    const double mid = value();
    out.record.max_drop = std::max(out.record.max_drop, previous - mid);
    // xi-step: eta ^ xi = xi ^ eta for even degrees, so this is L_eta's top right-singular vector
    const bool xi_ok = top_direction(
        [&](const Eigen::VectorXd& x) { return table.adjoint_left(out.y, table.product(x, out.y)); },
        left_dim, out.x, inner_tol);
    if (!xi_ok) {
      out.record.degenerate = true;
      break;
    }
    sign_normalize(out.x);
    const double next = value();
    out.record.max_drop = std::max(out.record.max_drop, mid - next);
    last_change = std::abs(next - previous);
    previous = next;
    if (last_change < tol) {
      out.record.converged = true;
      break;
    }
  }
  out.record.value = value();
  return out;
}

}  // namespace detail

/// Alternating singular-vector ascent for max ||xi ^ eta|| over unit xi in degree 2k and unit eta in
/// degree 2l. Subspace R restricts both factors to the pair-product subspaces.
inline SearchResult alternating_maximize(int n, int k, int l, const SearchOptions& options = {}) {
  detail::require_grid_point(n, k, l, "alternating_maximize");
  if (options.restarts < 1) throw std::invalid_argument("alternating_maximize: restarts must be >= 1");
  if (options.max_outer < 1) throw std::invalid_argument("alternating_maximize: max_outer must be >= 1");
  if (options.subspace == Subspace::kC) {
    throw std::invalid_argument("alternating_maximize: subspace must be full or R");
  }
  const WedgeTable table = options.subspace == Subspace::kR ? WedgeTable::paired(n, k, l)
                                                            : WedgeTable::full(n, 2 * k, 2 * l);

  std::vector<detail::RestartOutcome> outcomes(static_cast<std::size_t>(options.restarts));
  parallel_for(outcomes.size(), options.jobs, [&](std::size_t r) {
    outcomes[r] = detail::run_restart(table, static_cast<int>(r), options.seed, options.tol,
                                      options.max_outer);
  });

  SearchResult result;
  result.n = n;
  result.k = k;
  result.l = l;
  result.subspace = options.subspace;
  result.seed = options.seed;
  result.tol = options.tol;
  result.max_outer = options.max_outer;
  result.restarts_used = options.restarts;
  std::size_t best = 0;
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    result.restarts.push_back(outcomes[r].record);
    if (outcomes[r].record.value > outcomes[best].record.value) best = r;
  }
  result.best_restart = static_cast<int>(best);
  result.converged = outcomes[best].record.converged;
  result.xi = detail::to_multivector(n, 2 * k, table.left_basis(), outcomes[best].x);
  result.eta = detail::to_multivector(n, 2 * l, table.right_basis(), outcomes[best].y);
  result.best_value = evaluate_pair(result.xi, result.eta);
  result.best_value_squared = result.best_value * result.best_value;
  result.conjectured_value_squared = to_double(conjectured_max_sq(n, k, l).value_squared);
  result.gap_to_conjecture = result.best_value_squared - result.conjectured_value_squared;
  result.counterexample = result.gap_to_conjecture > kCounterexampleThreshold;
  return result;
}

inline Json to_json(const SearchResult& r) {
  Json restarts = Json::array();
  for (const RestartRecord& rec : r.restarts) {
    restarts.push_back(Json{{"index", rec.index},
                            {"value", rec.value},
                            {"iterations", rec.iterations},
                            {"converged", rec.converged},
                            {"degenerate", rec.degenerate},
                            {"max_drop", rec.max_drop}});
  }
  Json out{{"n", r.n},
           {"k", r.k},
           {"l", r.l},
           {"subspace", to_string(r.subspace)},
           {"seed", r.seed},
           {"tol", r.tol},
           {"max_outer", r.max_outer},
           {"best_value", r.best_value},
           {"best_value_squared", r.best_value_squared},
           {"conjectured_value_squared", r.conjectured_value_squared},
           {"gap_to_conjecture", r.gap_to_conjecture},
           {"status", r.counterexample ? "COUNTEREXAMPLE" : "consistent"},
           {"converged", r.converged},
           {"best_restart", r.best_restart},
           {"restarts_used", r.restarts_used},
           {"restarts", std::move(restarts)},
           {"xi", to_json(r.xi)},
           {"eta", to_json(r.eta)}};
  return out;
}

}  // namespace wedgemax
