#include <gtest/gtest.h>

#include <cmath>

#include "wedgemax/conjecture.hpp"
#include "wedgemax/multivector.hpp"

using namespace wedgemax;

namespace {

Rational q(long p, long d = 1) { return Rational(p, d); }

Integer pascal(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::vector<Integer> row{1};
  for (int i = 1; i <= n; ++i) {
    std::vector<Integer> next(i + 1, 1);
    for (int j = 1; j < i; ++j) next[j] = row[j - 1] + row[j];
    row = std::move(next);
  }
  return row[k];
}

}  // namespace

TEST(ConjecturedValue, Examples) {
  EXPECT_EQ(conjectured_max_sq(2, 1, 1).value_squared, q(1));
  EXPECT_EQ(conjectured_max_sq(3, 1, 1).value_squared, q(4, 3));
  EXPECT_EQ(conjectured_max_sq(12, 2, 10).value_squared, q(1));
  EXPECT_NEAR(conjectured_max_sq(3, 1, 1).value, std::sqrt(4.0 / 3.0), 1e-15);
  EXPECT_THROW(conjectured_max_sq(2, 1, 2), std::invalid_argument);
}

TEST(ConjecturedValue, OmegaChainSymmetryTopForm) {
  for (int n = 2; n <= 8; ++n) {
    for (int k = 1; k < n; ++k) {
      for (int l = 1; k + l <= n; ++l) {
        const auto v = conjectured_max_sq(n, k, l);
        const Rational wk = norm_squared(omega_power<Rational>(n, k));
        const Rational wl = norm_squared(omega_power<Rational>(n, l));
        const Rational wkl = norm_squared(omega_power<Rational>(n, k + l));
        EXPECT_EQ(v.value_squared * wk * wl, wkl);
        EXPECT_EQ(v.value_squared, conjectured_max_sq(n, l, k).value_squared);
        EXPECT_GT(v.value_squared, 0);
        EXPECT_NEAR(v.value * v.value / to_double(v.value_squared), 1.0, 1e-14);
      }
    }
  }
  for (int k = 1; k <= 10; ++k) {
    for (int l = 1; l <= 10; ++l) EXPECT_EQ(conjectured_max_sq(k + l, k, l).value_squared, 1);
  }
}

TEST(Alpha, Examples) {
  EXPECT_EQ(alpha(12, 2, 10, 0), q(1));
  EXPECT_EQ(alpha(20, 2, 10, 1), q(33, 19));
  EXPECT_LT(alpha(100, 2, 10, 1), 1);
  EXPECT_THROW(alpha(12, 2, 10, 2), std::invalid_argument);
  EXPECT_THROW(alpha(12, 2, 10, -1), std::invalid_argument);
}

TEST(Alpha, MatchesPascalOracle) {
  for (int n = 2; n <= 30; ++n) {
    for (int k = 1; 2 * k <= n; ++k) {
      for (int l = k; k + l <= n; ++l) {
        for (int t = 0; t < k; ++t) {
          const Rational expected(pascal(k + l, k) * pascal(n - l, k),
                                  pascal(n, k) * pascal(n - l - t, k - t));
          EXPECT_EQ(alpha(n, k, l, t), expected);
        }
      }
    }
  }
}

TEST(Beta, Examples) {
  EXPECT_EQ(beta(4, 1, 2, 0, 1), q(1, 2));
  for (int l = 2; l <= 10; ++l) EXPECT_LE(beta(2 * l, 1, l, 0, l - 1), 1);
  EXPECT_THROW(beta(4, 1, 2, 0, 0), std::invalid_argument);
  EXPECT_THROW(beta(6, 1, 2, 0, 2), std::invalid_argument);
  EXPECT_FALSE(beta_admissible(1, 1, 0, 0));
}

TEST(Theorem1Check, Examples) {
  const auto fail = theorem1_check(20, 2, 10);
  EXPECT_FALSE(fail.overall);
  EXPECT_EQ(fail.first_failing_witness(), "t=1 alpha=33/19");
  EXPECT_TRUE(theorem1_check(12, 2, 10).overall);
  for (int l = 1; l <= 15; ++l) {
    for (int n = l + 1; n <= 40; ++n) EXPECT_TRUE(theorem1_check(n, 1, l).overall);
  }
}

TEST(Theorem1Check, SimplifiedCriterionAgrees) {
  for (int n = 2; n <= 40; ++n) {
    for (int k = 1; 2 * k <= n; ++k) {
      for (int l = k; k + l <= n; ++l) {
        const auto r = theorem1_check(n, k, l);
        EXPECT_TRUE(r.simplified_agrees) << n << " " << k << " " << l;
        EXPECT_EQ(r.overall, std::all_of(r.witnesses.begin(), r.witnesses.end(),
                                         [](const Witness& w) { return w.pass; }));
      }
    }
  }
}

TEST(Theorem2Check, Examples) {
  EXPECT_FALSE(theorem2_check(5, 1, 3).overall);
  EXPECT_TRUE(theorem2_check(4, 1, 2).overall);
  const auto r = theorem2_check(4, 1, 2);
  ASSERT_EQ(r.sums.size(), 2u);
  EXPECT_TRUE(r.sums[0].vacuous);
  EXPECT_FALSE(r.sums[1].vacuous);
}

TEST(Theorem2Check, KEqualsOneIffNAtLeastTwoL) {
  for (int l = 1; l <= 12; ++l) {
    for (int n = 1 + l; n <= 40; ++n) {
      EXPECT_EQ(theorem2_check(n, 1, l).overall, n >= 2 * l) << "n=" << n << " l=" << l;
    }
  }
}

TEST(Theorem2Check, SumRecordsUseExactRationals) {
  const auto r = theorem2_check(5, 2, 2);
  EXPECT_TRUE(r.overall);
  EXPECT_EQ(r.sums[1].lhs, r.sums[1].rhs);
  EXPECT_EQ(r.sums[1].rhs, q(4, 5));
  EXPECT_FALSE(theorem2_check(4, 2, 2).overall);
}

TEST(ThresholdScan, Examples) {
  const auto t1 = threshold_scan(1, 2, 10, 60);
  EXPECT_EQ(std::count(t1.holds.begin(), t1.holds.end(), 20), 0);
  EXPECT_EQ(std::count(t1.holds.begin(), t1.holds.end(), 12), 1);
  EXPECT_EQ(t1.prefix_bound, 12);
  ASSERT_TRUE(t1.tail_bound.has_value());
  EXPECT_GT(*t1.tail_bound, 20);
  EXPECT_FALSE(t1.unresolved_tail);

  const auto t2 = threshold_scan(2, 1, 5, 30);
  const std::vector<int> expected = [] {
    std::vector<int> v;
    for (int n = 10; n <= 30; ++n) v.push_back(n);
    return v;
  }();
  EXPECT_EQ(t2.holds, expected);
  EXPECT_EQ(t2.tail_bound, 10);
  EXPECT_FALSE(t2.prefix_bound.has_value());

  const auto t3 = threshold_scan(1, 1, 1, 10);
  EXPECT_EQ(t3.holds.size(), 9u);
  EXPECT_EQ(t3.prefix_bound, 10);
}

TEST(ThresholdScan, ParallelMatchesSerial) {
  const auto serial = threshold_scan(2, 2, 5, 7, 60, 1);
  const auto parallel = threshold_scan(2, 2, 5, 7, 60, 4);
  EXPECT_EQ(to_json_string(to_json(serial)), to_json_string(to_json(parallel)));
  EXPECT_THROW(threshold_scan(1, 3, 2, 10), std::invalid_argument);
}

TEST(ConditionJson, Shape) {
  const Json j = to_json(theorem1_check(20, 2, 10));
  EXPECT_EQ(j["theorem"], 1);
  EXPECT_EQ(j["witnesses"][1]["value"], "33/19");
  EXPECT_EQ(j["witnesses"][1]["phi"], nullptr);
  EXPECT_EQ(j["overall"], false);
  const Json j2 = to_json(theorem2_check(4, 1, 2));
  EXPECT_EQ(j2["witnesses"][0]["phi"], 1);
  EXPECT_TRUE(j2.contains("sums"));
}
