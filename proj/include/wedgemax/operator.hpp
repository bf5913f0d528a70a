#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wedgemax/multivector.hpp"

namespace wedgemax {

/// Dense matrix of L_xi : Lambda^{2l} V -> Lambda^{2k+2l} V in lexicographic bases.
/// Entry (T, J) is the coefficient of e_T in xi ^ e_J.
template <typename Scalar>
class OperatorMatrix {
 public:
  OperatorMatrix(int n, int k, int l, std::shared_ptr<const Basis> rows,
                 std::shared_ptr<const Basis> cols)
      : n_(n), k_(k), l_(l), rows_(std::move(rows)), cols_(std::move(cols)),
        data_(rows_->size() * cols_->size(), Scalar(0)) {}

  int n() const { return n_; }
  int k() const { return k_; }
  int l() const { return l_; }
  std::size_t rows() const { return rows_->size(); }
  std::size_t cols() const { return cols_->size(); }
  const Basis& row_basis() const { return *rows_; }
  const Basis& col_basis() const { return *cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols() + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols() + c]; }

  friend bool operator==(const OperatorMatrix& a, const OperatorMatrix& b) {
    return a.rows_->elements() == b.rows_->elements() &&
           a.cols_->elements() == b.cols_->elements() && a.data_ == b.data_;
  }

  Eigen::MatrixXd to_eigen() const {
    Eigen::MatrixXd out(rows(), cols());
    for (std::size_t r = 0; r < rows(); ++r) {
      for (std::size_t c = 0; c < cols(); ++c) out(r, c) = to_double((*this)(r, c));
    }
    return out;
  }

 private:
  int n_;
  int k_;
  int l_;
  std::shared_ptr<const Basis> rows_;
  std::shared_ptr<const Basis> cols_;
  std::vector<Scalar> data_;
};

template <typename Scalar>
OperatorMatrix<Scalar> build_matrix(const Multivector<Scalar>& xi, int l) {
  if (xi.degree() % 2 != 0) throw std::invalid_argument("build_matrix: xi must have even degree");
  const int n = xi.n();
  const int k = xi.degree() / 2;
  if (l < 0 || 2 * k + 2 * l > 2 * n) {
    throw std::invalid_argument("build_matrix: 2k + 2l = " + std::to_string(2 * k + 2 * l) +
                                " exceeds 2n = " + std::to_string(2 * n));
  }
  auto rows = std::make_shared<const Basis>(Basis::full(n, 2 * k + 2 * l));
  auto cols = std::make_shared<const Basis>(Basis::full(n, 2 * l));
  OperatorMatrix<Scalar> m(n, k, l, rows, cols);
  for (std::size_t c = 0; c < cols->size(); ++c) {
    for (const auto& [index, coeff] : xi.terms()) {
      const MergeResult merged = merge_sign(index, (*cols)[c]);
      if (merged.sign == 0) continue;
      m(*rows->rank(merged.merged), c) += merged.sign > 0 ? coeff : -coeff;
    }
  }
  return m;
}

struct NormOptions {
  double tol = 1e-12;
  int max_iters = 20000;
  std::uint64_t seed = 0x5eed;
};

struct NormCertificate {
  double value = 0;
  int iterations = 0;
  /// ||M^T M v - lambda v|| at the returned vector.
  double residual = 0;
  bool converged = false;
  Eigen::VectorXd right_vector;
};

namespace detail {

// Power iteration on the Gram operator; tolerance is on the relative change of the Rayleigh quotient.
template <typename ApplyGram>
NormCertificate power_iterate(ApplyGram&& gram, Eigen::VectorXd v, double tol, int max_iters) {
  NormCertificate out;
  if (v.size() == 0) {
    out.converged = true;
    return out;
  }
  v.normalize();
  Eigen::VectorXd w = gram(v);
  double lambda = v.dot(w);
  for (int it = 1; it <= max_iters; ++it) {
    const double length = w.norm();
    out.iterations = it;
    if (length == 0) {
      lambda = 0;
      out.converged = true;
      break;
    }
    v = w / length;
    w = gram(v);
    const double next = v.dot(w);
    const double change = std::abs(next - lambda);
    lambda = next;
    if (change <= tol * std::abs(lambda)) {
      out.converged = true;
      break;
    }
  }
  out.value = std::sqrt(std::max(lambda, 0.0));
  out.residual = (w - lambda * v).norm();
  out.right_vector = std::move(v);
  return out;
}

}  // namespace detail

/// Largest singular value by power iteration on M^T M, from the normalized all-ones vector and
/// from one seeded random vector; the larger estimate wins.
inline NormCertificate operator_norm(const Eigen::MatrixXd& m, const NormOptions& options = {}) {
  auto gram = [&m](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    return m.transpose() * (m * v);
  };
  const Eigen::Index cols = m.cols();
  NormCertificate best =
      detail::power_iterate(gram, Eigen::VectorXd::Ones(cols), options.tol, options.max_iters);
  if (cols > 0) {
    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> normal;
    Eigen::VectorXd start(cols);
    for (Eigen::Index j = 0; j < cols; ++j) start(j) = normal(rng);
    NormCertificate second = detail::power_iterate(gram, start, options.tol, options.max_iters);
    const int total = best.iterations + second.iterations;
    if (second.value > best.value) best = std::move(second);
    best.iterations = total;
  }
  return best;
}

template <typename Scalar>
NormCertificate operator_norm(const OperatorMatrix<Scalar>& m, const NormOptions& options = {}) {
  return operator_norm(m.to_eigen(), options);
}

struct BlockReport {
  double off_block_r_to_c = 0;  // ||P_C L P_R||_F
  double off_block_c_to_r = 0;  // ||P_R L P_C||_F
  double norm_on_r = 0;
  double norm_on_c = 0;
  double norm_full = 0;
};

/// Splits L_xi (xi in R_k) along R_l + C_l -> R_{k+l} + C_{k+l}.
inline BlockReport block_structure(const RealMultivector& xi, int l, const NormOptions& options = {}) {
  if (!in_R(xi)) throw std::invalid_argument("block_structure: xi is not in R_k");
  const OperatorMatrix<double> m = build_matrix(xi, l);
  const Eigen::MatrixXd dense = m.to_eigen();

  std::vector<Eigen::Index> r_rows, c_rows, r_cols, c_cols;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    (m.row_basis()[r].is_paired() ? r_rows : c_rows).push_back(static_cast<Eigen::Index>(r));
  }
  for (std::size_t c = 0; c < m.cols(); ++c) {
    (m.col_basis()[c].is_paired() ? r_cols : c_cols).push_back(static_cast<Eigen::Index>(c));
  }
  auto sub = [&dense](const std::vector<Eigen::Index>& rows, const std::vector<Eigen::Index>& cols) {
    Eigen::MatrixXd out(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = dense(rows[i], cols[j]);
    }
    return out;
  };

  BlockReport report;
  report.off_block_r_to_c = sub(c_rows, r_cols).norm();
  report.off_block_c_to_r = sub(r_rows, c_cols).norm();
  report.norm_on_r = operator_norm(sub(r_rows, r_cols), options).value;
  report.norm_on_c = operator_norm(sub(c_rows, c_cols), options).value;
  report.norm_full = operator_norm(dense, options).value;
  return report;
}

/// Sparse trilinear structure of the wedge pairing between two bases: every (left, right) pair of
/// disjoint basis elements with the rank of their merge and its sign. Drives the search.
class WedgeTable {
 public:
  struct Entry {
    std::uint32_t left;
    std::uint32_t right;
    std::uint32_t out;
    double sign;
  };

  WedgeTable(int n, std::shared_ptr<const Basis> left, std::shared_ptr<const Basis> right,
             std::shared_ptr<const Basis> out)
      : n_(n), left_(std::move(left)), right_(std::move(right)), out_(std::move(out)) {
    for (std::size_t a = 0; a < left_->size(); ++a) {
      for (std::size_t b = 0; b < right_->size(); ++b) {
        const MergeResult merged = merge_sign((*left_)[a], (*right_)[b]);
        if (merged.sign == 0) continue;
        const auto rank = out_->rank(merged.merged);
        if (!rank) continue;
        entries_.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b),
                            static_cast<std::uint32_t>(*rank), static_cast<double>(merged.sign)});
      }
    }
  }

  static WedgeTable full(int n, int left_degree, int right_degree) {
    return WedgeTable(n, std::make_shared<const Basis>(Basis::full(n, left_degree)),
                      std::make_shared<const Basis>(Basis::full(n, right_degree)),
                      std::make_shared<const Basis>(Basis::full(n, left_degree + right_degree)));
  }

  /// R_k x R_l -> R_{k+l}; L_xi maps R into R, so nothing is lost by restricting the output.
  static WedgeTable paired(int n, int k, int l) {
    return WedgeTable(n, std::make_shared<const Basis>(Basis::paired(n, k)),
                      std::make_shared<const Basis>(Basis::paired(n, l)),
                      std::make_shared<const Basis>(Basis::paired(n, k + l)));
  }

  int n() const { return n_; }
  const Basis& left_basis() const { return *left_; }
  const Basis& right_basis() const { return *right_; }
  const Basis& out_basis() const { return *out_; }
  const std::vector<Entry>& entries() const { return entries_; }

  /// Coefficients of x ^ y.
  Eigen::VectorXd product(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(out_->size());
    for (const Entry& e : entries_) out(e.out) += e.sign * x(e.left) * y(e.right);
    return out;
  }

  /// (L_x)^T w restricted to the right factor.
  Eigen::VectorXd adjoint_right(const Eigen::VectorXd& x, const Eigen::VectorXd& w) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(right_->size());
    for (const Entry& e : entries_) out(e.right) += e.sign * x(e.left) * w(e.out);
    return out;
  }

  /// (L_y)^T w restricted to the left factor.
  Eigen::VectorXd adjoint_left(const Eigen::VectorXd& y, const Eigen::VectorXd& w) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(left_->size());
    for (const Entry& e : entries_) out(e.left) += e.sign * y(e.right) * w(e.out);
    return out;
  }

 private:
  int n_;
  std::shared_ptr<const Basis> left_;
  std::shared_ptr<const Basis> right_;
  std::shared_ptr<const Basis> out_;
  std::vector<Entry> entries_;
};

}  // namespace wedgemax
