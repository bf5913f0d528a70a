#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "wedgemax/multivector.hpp"

namespace wedgemax {

/// sum_i a_i t_i in some orthonormal basis of V.
struct SymplecticForm {
  int n = 0;
  std::vector<double> coefficients;
};

struct CanonicalTwoForm {
  SymplecticForm form;
  /// Columns are the new orthonormal basis: Q^T A Q = blockdiag([[0, a_i], [-a_i, 0]]).
  Eigen::MatrixXd basis_change;
  double residual = 0;
};

/// A[p][q] = coefficient of e_{p+1} ^ e_{q+1} for p < q, antisymmetrized.
inline Eigen::MatrixXd skew_matrix(const RealMultivector& x) {
  if (x.degree() != 2) throw std::invalid_argument("skew_matrix: degree must be 2");
  const int dim = 2 * x.n();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
  for (const auto& [index, coeff] : x.terms()) {
    a(index[0] - 1, index[1] - 1) = coeff;
    a(index[1] - 1, index[0] - 1) = -coeff;
  }
  return a;
}

inline Eigen::MatrixXd block_diagonal(const SymplecticForm& form) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(2 * form.n, 2 * form.n);
  for (int i = 0; i < form.n; ++i) {
    out(2 * i, 2 * i + 1) = form.coefficients[i];
    out(2 * i + 1, 2 * i) = -form.coefficients[i];
  }
  return out;
}

namespace detail {

// Orthonormal basis of span(vectors) built greedily from the standard basis vectors with the
// largest remaining projection (lowest index on ties), so aligned subspaces come out as e_p.
inline Eigen::MatrixXd standard_aligned_basis(const Eigen::MatrixXd& span) {
  const Eigen::Index dim = span.rows();
  const Eigen::Index count = span.cols();
  Eigen::MatrixXd chosen(dim, count);
  for (Eigen::Index c = 0; c < count; ++c) {
    double best_norm = -1;
    Eigen::VectorXd best_vec;
    for (Eigen::Index p = 0; p < dim; ++p) {
      Eigen::VectorXd v = span * span.row(p).transpose();  // projection of e_p
      for (Eigen::Index j = 0; j < c; ++j) v -= chosen.col(j).dot(v) * chosen.col(j);
      const double length = v.norm();
      if (length > best_norm + 1e-12) {
        best_norm = length;
        best_vec = v;
      }
    }
    chosen.col(c) = best_vec / best_norm;
  }
  return chosen;
}

}  // namespace detail

/// Orthogonal congruence of a 2-form into canonical block form with a_1 >= a_2 >= ... >= 0.
inline CanonicalTwoForm canonicalize_two_form(const RealMultivector& x) {
  const Eigen::MatrixXd a = skew_matrix(x);
  const int n = x.n();
  const Eigen::Index dim = 2 * n;

  CanonicalTwoForm out;
  out.form.n = n;
  if (n == 0) return out;

  Eigen::RealSchur<Eigen::MatrixXd> schur(a);
  if (schur.info() != Eigen::Success) {
    throw std::runtime_error("canonicalize_two_form: real Schur iteration did not converge");
  }
  const Eigen::MatrixXd& t = schur.matrixT();
  const Eigen::MatrixXd& u = schur.matrixU();

  struct Plane {
    double value;
    Eigen::MatrixXd columns;  // dim x 2
  };
  std::vector<Plane> planes;
  std::vector<Eigen::Index> kernel;
  const double negligible = 1e-14 * (a.norm() + 1.0);
  for (Eigen::Index i = 0; i < dim;) {
    if (i + 1 < dim && t(i + 1, i) != 0.0) {
      const double value = std::abs(0.5 * (t(i, i + 1) - t(i + 1, i)));
      if (value <= negligible) {
        kernel.push_back(i);
        kernel.push_back(i + 1);
      } else {
        Plane p{value, Eigen::MatrixXd(dim, 2)};
        p.columns << u.col(i), u.col(i + 1);
        planes.push_back(std::move(p));
      }
      i += 2;
    } else {
      kernel.push_back(i);
      i += 1;
    }
  }

  // Within an invariant plane, q1 is free and q2 = -A q1 / a fixes the orientation.
  for (Plane& p : planes) {
    const Eigen::MatrixXd aligned = detail::standard_aligned_basis(p.columns);
    Eigen::VectorXd q1 = aligned.col(0);
    Eigen::VectorXd q2 = -(a * q1) / p.value;
    q2 -= q1.dot(q2) * q1;
    q2.normalize();
    p.columns.col(0) = q1;
    p.columns.col(1) = q2;
    p.value = q1.dot(a * q2);
  }

  Eigen::MatrixXd kernel_span(dim, static_cast<Eigen::Index>(kernel.size()));
  for (std::size_t j = 0; j < kernel.size(); ++j) kernel_span.col(j) = u.col(kernel[j]);
  if (kernel.size() % 2 != 0) {
    throw std::runtime_error("canonicalize_two_form: odd-dimensional kernel block");
  }
  const Eigen::MatrixXd kernel_basis =
      kernel.empty() ? kernel_span : detail::standard_aligned_basis(kernel_span);
  for (Eigen::Index j = 0; j + 1 < kernel_basis.cols(); j += 2) {
    Plane p{0.0, Eigen::MatrixXd(dim, 2)};
    p.columns << kernel_basis.col(j), kernel_basis.col(j + 1);
    planes.push_back(std::move(p));
  }

  std::stable_sort(planes.begin(), planes.end(),
                   [](const Plane& l, const Plane& r) { return l.value > r.value; });

  out.basis_change.resize(dim, dim);
  for (int i = 0; i < n; ++i) {
    out.form.coefficients.push_back(planes[i].value);
    out.basis_change.col(2 * i) = planes[i].columns.col(0);
    out.basis_change.col(2 * i + 1) = planes[i].columns.col(1);
  }
  out.residual = (out.basis_change.transpose() * a * out.basis_change - block_diagonal(out.form))
                     .norm();
  if (!(out.residual <= 1e-9)) {
    throw std::runtime_error("canonicalize_two_form: residual " + std::to_string(out.residual) +
                             " exceeds 1e-9");
  }
  return out;
}

}  // namespace wedgemax
