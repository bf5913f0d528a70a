#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "wedgemax/canonical_form.hpp"
#include "wedgemax/json_io.hpp"
#include "wedgemax/multivector.hpp"

using namespace wedgemax;

namespace {

MultiIndex mi(std::vector<int> v) { return MultiIndex(std::move(v)); }

int sort_sign(std::vector<int> v) {
  int swaps = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j + 1 < v.size() - i; ++j) {
      if (v[j] > v[j + 1]) {
        std::swap(v[j], v[j + 1]);
        ++swaps;
      }
    }
  }
  return swaps % 2 == 0 ? 1 : -1;
}

// Coefficient of e_T in x ^ y by splitting T every possible way (bubble-sort sign).
template <typename Scalar>
Scalar wedge_oracle(const Multivector<Scalar>& x, const Multivector<Scalar>& y, const MultiIndex& T) {
  Scalar total(0);
  const int d = T.degree();
  detail::for_each_combination(d, x.degree(), [&](const std::vector<int>& pick) {
    std::vector<int> left, right, joined;
    std::vector<bool> used(d, false);
    for (int p : pick) {
      left.push_back(T[p - 1]);
      used[p - 1] = true;
    }
    for (int j = 0; j < d; ++j) {
      if (!used[j]) right.push_back(T[j]);
    }
    joined = left;
    joined.insert(joined.end(), right.begin(), right.end());
    const Scalar product = x.coefficient(MultiIndex(left)) * y.coefficient(MultiIndex(right));
    total += sort_sign(joined) > 0 ? product : Scalar(-product);
  });
  return total;
}

template <typename Scalar>
Multivector<Scalar> random_sparse(int n, int degree, std::mt19937_64& rng, double density = 0.6) {
  std::uniform_real_distribution<double> coin(0, 1);
  std::uniform_int_distribution<int> small(-5, 5);
  std::normal_distribution<double> normal;
  typename Multivector<Scalar>::Terms terms;
  for (const MultiIndex& index : enumerate_full(n, degree)) {
    if (coin(rng) > density) continue;
    if constexpr (std::is_same_v<Scalar, Rational>) {
      terms.emplace(index, Rational(small(rng), 1 + (small(rng) + 5) % 4));
    } else {
      terms.emplace(index, normal(rng));
    }
  }
  return Multivector<Scalar>(n, degree, std::move(terms));
}

}  // namespace

TEST(Wedge, Examples) {
  const auto a = RealMultivector::basis_element(2, mi({1, 2}));
  const auto b = RealMultivector::basis_element(2, mi({3, 4}));
  const auto ab = wedge(a, b);
  EXPECT_EQ(ab.degree(), 4);
  EXPECT_EQ(ab.coefficient(mi({1, 2, 3, 4})), 1.0);
  EXPECT_EQ(ab.size(), 1u);

  const auto w = omega<double>(2);
  const auto ww = wedge(w, w);
  EXPECT_EQ(ww.size(), 1u);
  EXPECT_EQ(ww.coefficient(mi({1, 2, 3, 4})), 2.0);

  const auto c = RealMultivector::basis_element(2, mi({1, 3}));
  EXPECT_TRUE(wedge(a, c).is_zero());
  EXPECT_EQ(wedge(a, c).degree(), 4);
}

TEST(Wedge, OverflowGivesZeroAndMismatchRejected) {
  const auto w = omega<double>(2);
  const auto big = wedge(wedge(w, w), w);
  EXPECT_TRUE(big.is_zero());
  EXPECT_EQ(big.degree(), 6);
  EXPECT_THROW(wedge(omega<double>(2), omega<double>(3)), std::invalid_argument);
}

TEST(Wedge, MatchesSplittingOracle) {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 4; ++n) {
    for (int p = 0; p <= 3; ++p) {
      for (int q = 0; q <= 3 && p + q <= 2 * n; ++q) {
        if (p > 2 * n || q > 2 * n) continue;
        const auto x = random_sparse<Rational>(n, p, rng);
        const auto y = random_sparse<Rational>(n, q, rng);
        const auto xy = wedge(x, y);
        for (const MultiIndex& T : enumerate_full(n, p + q)) {
          EXPECT_EQ(xy.coefficient(T), wedge_oracle(x, y, T));
        }
      }
    }
  }
}

TEST(Wedge, GradedCommutativityExact) {
  std::mt19937_64 rng(5);
  for (int n = 1; n <= 5; ++n) {
    for (int p = 0; p <= std::min(2 * n, 4); ++p) {
      for (int q = 0; q <= std::min(2 * n - p, 4); ++q) {
        const auto x = random_sparse<Rational>(n, p, rng, 0.4);
        const auto y = random_sparse<Rational>(n, q, rng, 0.4);
        const Rational sign = (p * q) % 2 == 0 ? 1 : -1;
        EXPECT_EQ(wedge(x, y), sign * wedge(y, x));
      }
    }
  }
}

TEST(Wedge, AssociativityFloat) {
  std::mt19937_64 rng(6);
  for (int n = 2; n <= 5; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto x = random_sparse<double>(n, 2, rng, 0.5);
      const auto y = random_sparse<double>(n, 1, rng, 0.5);
      const auto z = random_sparse<double>(n, 3, rng, 0.5);
      const auto diff = wedge(wedge(x, y), z) - wedge(x, wedge(y, z));
      EXPECT_LE(norm(diff), 1e-12);
    }
  }
}

TEST(Inner, Examples) {
  const auto a = RealMultivector::basis_element(2, mi({1, 2}));
  const auto b = RealMultivector::basis_element(2, mi({3, 4}));
  EXPECT_EQ(inner(a, a), 1.0);
  EXPECT_EQ(inner(a, b), 0.0);
  EXPECT_NEAR(norm(omega<double>(3)), std::sqrt(3.0), 1e-15);
  EXPECT_THROW(inner(a, omega_power<double>(2, 2)), std::invalid_argument);
}

TEST(OmegaPower, Examples) {
  const auto w22 = omega_power<Rational>(2, 2);
  EXPECT_EQ(w22.size(), 1u);
  EXPECT_EQ(w22.coefficient(mi({1, 2, 3, 4})), 2);
  EXPECT_EQ(norm_squared(w22), 4);

  const auto w32 = omega_power<Rational>(3, 2);
  EXPECT_EQ(w32.size(), 3u);
  for (const auto& [index, coeff] : w32.terms()) EXPECT_EQ(coeff, 2);
  EXPECT_EQ(norm_squared(w32), 12);

  const auto w50 = omega_power<Rational>(5, 0);
  EXPECT_EQ(w50.degree(), 0);
  EXPECT_EQ(w50.coefficient(mi({})), 1);
  EXPECT_TRUE(omega_power<Rational>(2, 3).is_zero());
}

TEST(OmegaPower, RepeatedWedgeAndNormExact) {
  for (int n = 0; n <= 7; ++n) {
    ExactMultivector power = omega_power<Rational>(n, 0);
    Rational factorial = 1;
    for (int k = 0; k <= n; ++k) {
      if (k > 0) {
        power = wedge(power, omega<Rational>(n));
        factorial *= k;
      }
      EXPECT_EQ(power, omega_power<Rational>(n, k));
      EXPECT_EQ(norm_squared(power), factorial * factorial * Rational(binomial(n, k)));
    }
  }
}

TEST(ProjectR, Examples) {
  const auto a = RealMultivector::basis_element(2, mi({1, 2}));
  const auto c = RealMultivector::basis_element(2, mi({1, 3}));
  const auto d = RealMultivector::basis_element(2, mi({2, 3}));
  auto s = project_R(a);
  EXPECT_EQ(s.r_part, a);
  EXPECT_TRUE(s.c_part.is_zero());
  s = project_R(c);
  EXPECT_TRUE(s.r_part.is_zero());
  EXPECT_EQ(s.c_part, c);
  s = project_R(a + d);
  EXPECT_EQ(s.r_part, a);
  EXPECT_EQ(s.c_part, d);
  EXPECT_THROW(project_R(RealMultivector::basis_element(2, mi({1}))), std::invalid_argument);
}

TEST(ProjectR, Pythagoras) {
  std::mt19937_64 rng(8);
  for (int n = 1; n <= 5; ++n) {
    for (int k = 0; k <= n; ++k) {
      const auto x = random_sparse<double>(n, 2 * k, rng, 0.7);
      const auto s = project_R(x);
      EXPECT_NEAR(norm_squared(x), norm_squared(s.r_part) + norm_squared(s.c_part),
                  1e-12 * (1 + norm_squared(x)));
      if (!s.r_part.is_zero() && !s.c_part.is_zero()) {
        EXPECT_EQ(inner(s.r_part, s.c_part), 0.0);
      }
      EXPECT_LE(norm(s.r_part + s.c_part - x), 1e-15);
    }
  }
}

TEST(Canonical, Examples) {
  {
    const auto x = 3.0 * RealMultivector::basis_element(3, mi({1, 2}));
    const auto c = canonicalize_two_form(x);
    ASSERT_EQ(c.form.coefficients.size(), 3u);
    EXPECT_NEAR(c.form.coefficients[0], 3.0, 1e-12);
    EXPECT_NEAR(c.form.coefficients[1], 0.0, 1e-12);
    EXPECT_NEAR(c.form.coefficients[2], 0.0, 1e-12);
    EXPECT_LE((c.basis_change - Eigen::MatrixXd::Identity(6, 6)).norm(), 1e-10);
  }
  {
    const auto x = RealMultivector::basis_element(2, mi({1, 2})) +
                   2.0 * RealMultivector::basis_element(2, mi({3, 4}));
    const auto c = canonicalize_two_form(x);
    EXPECT_NEAR(c.form.coefficients[0], 2.0, 1e-12);
    EXPECT_NEAR(c.form.coefficients[1], 1.0, 1e-12);
    const Eigen::MatrixXd q = c.basis_change;
    EXPECT_LE((q.cwiseAbs() - q.cwiseAbs().array().round().matrix()).norm(), 1e-10);
    EXPECT_LE((q.cwiseAbs().colwise().sum() - Eigen::RowVectorXd::Ones(4)).norm(), 1e-10);
  }
  {
    const auto x = RealMultivector::basis_element(2, mi({1, 3}));
    const auto c = canonicalize_two_form(x);
    EXPECT_NEAR(c.form.coefficients[0], 1.0, 1e-12);
    EXPECT_NEAR(c.form.coefficients[1], 0.0, 1e-12);
    EXPECT_LE(c.residual, 1e-10);
  }
}

TEST(Canonical, RandomPostconditions) {
  std::mt19937_64 rng(3);
  for (int n = 1; n <= 5; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto x = random_sparse<double>(n, 2, rng, trial % 2 == 0 ? 1.0 : 0.3);
      if (x.is_zero()) continue;
      const auto c = canonicalize_two_form(x);
      const Eigen::MatrixXd& q = c.basis_change;
      const Eigen::Map<const Eigen::VectorXd> a(c.form.coefficients.data(), n);
      EXPECT_NEAR(a.norm(), norm(x), 1e-10);
      EXPECT_LE((q * q.transpose() - Eigen::MatrixXd::Identity(2 * n, 2 * n)).norm(), 1e-10);
      EXPECT_LE((q.transpose() * skew_matrix(x) * q - block_diagonal(c.form)).norm(), 1e-9);
      for (int i = 0; i < n; ++i) {
        EXPECT_GE(a(i), 0.0);
        if (i > 0) {
          EXPECT_LE(a(i), a(i - 1));
        }
      }
    }
  }
  EXPECT_THROW(canonicalize_two_form(omega_power<double>(2, 2)), std::invalid_argument);
}

TEST(Json, RoundTrip) {
  const auto w = omega<double>(3) * 0.1;
  const auto back = parse_multivector(serialize_multivector(w));
  EXPECT_EQ(back, w);
  EXPECT_EQ(serialize_multivector(back), serialize_multivector(w));
}

TEST(Json, RejectsWithPosition) {
  auto error_of = [](const std::string& text) -> std::string {
    try {
      parse_multivector(text);
    } catch (const ParseError& e) {
      return e.what();
    }
    return "";
  };
  const auto unordered = error_of(R"({"n":3,"degree":2,"terms":[{"indices":[2,1],"coeff":1}]})");
  EXPECT_NE(unordered.find("terms[0].indices"), std::string::npos) << unordered;
  const auto range = error_of(R"({"n":3,"degree":2,"terms":[{"indices":[1,7],"coeff":1}]})");
  EXPECT_NE(range.find("terms[0].indices[1]"), std::string::npos) << range;
  const auto dup = error_of(
      R"({"n":3,"degree":2,"terms":[{"indices":[1,2],"coeff":1},{"indices":[1,2],"coeff":2}]})");
  EXPECT_NE(dup.find("terms[1]"), std::string::npos) << dup;
  EXPECT_FALSE(error_of("{not json").empty());
  EXPECT_FALSE(error_of(R"({"n":3,"degree":2})").empty());
}

TEST(Json, FloatsUseSeventeenDigits) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(1.0), "1");
}
