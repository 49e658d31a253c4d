/*
 * Copyright 2026 The AERW Lab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cmath>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "aerw/errors.hpp"
#include "aerw/exact.hpp"

namespace aerw {
namespace {

MomentRow row_at(const ModelParams& m, std::uint64_t n) {
  return moment_recurrence(m, std::vector<std::uint64_t>{n}).rows.front();
}

void expect_row(const MomentRow& got, const double (&want)[5], double rel) {
  const double vals[5] = {got.m_s, got.m_y, got.s_ss, got.s_yy, got.s_sy};
  for (int i = 0; i < 5; ++i) {
    EXPECT_NEAR(vals[i], want[i], rel * std::max(1.0, std::abs(want[i]))) << i;
  }
}

TEST(Moments, FirstStep) {
  const auto r = row_at(ModelParams(0.6, 0.7, 1.0), 1);
  EXPECT_NEAR(r.m_s, 0.4, 1e-15);
  EXPECT_NEAR(r.m_y, 0.4, 1e-15);
  EXPECT_EQ(r.s_ss, 1.0);
}

TEST(Moments, SecondMomentAtTwo) {
  for (double beta : {0.0, 1.7, 4.0}) {
    for (double q : {0.3, 1.0}) {
      const ModelParams m(0.8, q, beta);
      EXPECT_NEAR(row_at(m, 2).s_ss, 2.0 + 2.0 * m.a(), 1e-14);
    }
  }
}

// Reference rows from an unscaled 40-digit recurrence.
TEST(Moments, HighPrecisionReference) {
  const ModelParams m(0.6, 0.7, 1.0);
  expect_row(row_at(m, 2), {0.48, 0.28, 2.4, 1.45, 1.8}, 1e-14);
  expect_row(row_at(m, 10), {0.59207519709866666667, 0.111887204352, 14.704806213310532628,
                             5.0792600122026666667, 7.8034287328900740741}, 1e-13);
  expect_row(row_at(m, 1000), {0.66190385022929711832, 0.0071442246560543225167,
                               1588.6966055988009574, 455.07581698954799924,
                               739.11790781773691032}, 1e-12);
  expect_row(row_at(ModelParams(0.9, 1.0, 1.0), 200),
             {43.249752862439505275, 16.843657323414814478, 6047.7730019978416532,
              1206.6947021824104475, 2654.7463128266821287}, 1e-12);
  const auto r = row_at(ModelParams(0.3, 0.3, 2.5), 500);
  EXPECT_NEAR(r.m_s, -0.25641025640643995232, 1e-13);
  EXPECT_NEAR(r.m_y, 1.0631561390011866703e-11, 1e-20);
  EXPECT_NEAR(r.s_ss, 259.44960541926709815, 1e-10);
  EXPECT_NEAR(r.s_yy, 57.296060548529833939, 1e-10);
  EXPECT_NEAR(r.s_sy, 86.2688742651626798, 1e-10);
}

// E[Y_n] = (2q - 1) / a_n, so m_Y mu_n a_n = 2q - 1.
TEST(Moments, MeanOfYClosedForm) {
  for (auto [p, beta] : {std::pair{0.6, 1.0}, {0.9, 0.0}, {0.2, 2.5}, {0.95, 3.0}}) {
    const ModelParams m(p, 0.8, beta);
    SequenceCache cache(m, 100);
    const auto r = row_at(m, 100);
    const double prod = r.m_y * cache.log_a_mu(100).value();
    EXPECT_NEAR(prod, 0.6, 1e-12) << p << " " << beta;
  }
}

TEST(Moments, VariancesNonNegative) {
  for (double p : {0.0, 0.2, 0.5, 0.8, 1.0}) {
    for (double beta : {0.0, 1.0, 6.0}) {
      for_each_moment(ModelParams(p, 0.4, beta), 2000, [&](const MomentRow& r) {
        ASSERT_GE(r.var_s(), -1e-9 * r.s_ss) << p << " " << beta << " " << r.n;
        ASSERT_GE(r.var_y(), -1e-9 * r.s_yy) << p << " " << beta << " " << r.n;
      });
    }
  }
}

TEST(Moments, TableLookupAndOrdering) {
  const auto t = moment_recurrence(ModelParams(0.6, 0.5, 1.0), std::vector<std::uint64_t>{50, 3, 50, 7});
  ASSERT_EQ(t.rows.size(), 3u);
  EXPECT_EQ(t.rows[0].n, 3u);
  EXPECT_EQ(t.at(7).n, 7u);
  EXPECT_THROW(t.at(8), ArgumentError);
  EXPECT_THROW(moment_recurrence(ModelParams(0.6, 0.5, 1.0), std::vector<std::uint64_t>{0}),
               ArgumentError);
}

TEST(Moments, CsvLayout) {
  std::ostringstream out;
  write_moment_csv(out, moment_recurrence(ModelParams(0.5, 0.5, 0.0), std::vector<std::uint64_t>{1, 4}));
  EXPECT_EQ(out.str(), "n,m_S,var_S,m_Y,var_Y,cov_SY\n1,0,1,0,1,1\n4,0,4,0,4,4\n");
}

TEST(Enumerate, SecondStepLaw) {
  const double p = 0.8, q = 0.35;
  const auto law = enumerate(ModelParams(p, q, 2.0), 2);
  EXPECT_NEAR(law.prob_position(2), q * p, 1e-15);
  EXPECT_NEAR(law.prob_position(0), 1 - p, 1e-15);
  EXPECT_NEAR(law.prob_position(-2), (1 - q) * p, 1e-15);
  EXPECT_EQ(law.prob_position(1), 0.0);
}

TEST(Enumerate, RightMarch) {
  const auto law = enumerate(ModelParams(1.0, 1.0, 0.7), 7);
  EXPECT_NEAR(law.prob_position(7), 1.0, 1e-14);
}

TEST(Enumerate, NormalizationAndSupport) {
  for (double p : {0.1, 0.45, 0.9}) {
    for (double beta : {0.0, 1.3}) {
      const auto law = enumerate(ModelParams(p, 0.6, beta), 8);
      EXPECT_NEAR(law.total, 1.0, 1e-12);
      for (std::int64_t s = -8; s <= 8; ++s) {
        if ((s + 8) % 2 != 0) {
          EXPECT_EQ(law.prob_position(s), 0.0);
        }
      }
    }
  }
  EXPECT_THROW(enumerate(ModelParams(0.5, 0.5, 0.0), 9), SizeError);
}

TEST(Enumerate, AgreesWithRecurrence) {
  for (double p : {0.1, 0.5, 0.75, 0.9}) {
    for (double q : {0.3, 1.0}) {
      for (double beta : {0.0, 1.0, 2.5}) {
        const ModelParams m(p, q, beta);
        for (std::uint64_t n = 1; n <= 6; ++n) {
          const auto e = enumerate(m, n).moments(beta);
          const auto r = row_at(m, n);
          EXPECT_NEAR(e.m_s, r.m_s, 1e-10);
          EXPECT_NEAR(e.m_y, r.m_y, 1e-10);
          EXPECT_NEAR(e.s_ss, r.s_ss, 1e-10);
          EXPECT_NEAR(e.s_yy, r.s_yy, 1e-10);
          EXPECT_NEAR(e.s_sy, r.s_sy, 1e-10);
        }
      }
    }
  }
}

// Cov(S_m, S_n) straight from the enumerated sign-sequence law.
TEST(CrossCovariance, AgreesWithEnumeration) {
  for (auto [p, beta] : {std::pair{0.6, 1.0}, {0.9, 0.0}, {0.3, 2.5}}) {
    const ModelParams m(p, 0.7, beta);
    const std::uint64_t n = 7;
    const auto law = enumerate(m, n);
    for (std::uint64_t k = 1; k <= n; ++k) {
      double es_m = 0, es_n = 0, es_mn = 0;
      for (std::size_t mask = 0; mask < law.sequence_probability.size(); ++mask) {
        double sm = 0, sn = 0;
        for (std::uint64_t i = 0; i < n; ++i) {
          const double x = (mask >> i) & 1u ? 1.0 : -1.0;
          sn += x;
          if (i < k) sm += x;
        }
        const double w = law.sequence_probability[mask];
        es_m += w * sm;
        es_n += w * sn;
        es_mn += w * sm * sn;
      }
      EXPECT_NEAR(position_cross_covariance(m, k, n), es_mn - es_m * es_n, 1e-12)
          << p << " " << beta << " " << k;
    }
  }
  EXPECT_THROW(position_cross_covariance(ModelParams(0.5, 0.5, 0.0), 5, 4), ArgumentError);
}

TEST(ExpectedQsl, HighPrecisionReference) {
  EXPECT_NEAR(expected_qsl(ModelParams(0.6, 0.5, 1.0), 1000, Regime::Diffusive),
              1.5473725937056901799, 1e-12);
  EXPECT_NEAR(expected_qsl(ModelParams(0.875, 0.5, 1.0), 1000, Regime::Critical),
              3.7967887520815552619, 1e-12);
  EXPECT_THROW(expected_qsl(ModelParams(0.9, 0.5, 1.0), 1000, Regime::Superdiffusive),
               RegimeError);
}

TEST(WSequence, IidWalk) {
  const auto w = w_sequence(ModelParams(0.5, 0.5, 0.0), 1000);
  EXPECT_NEAR(std::exp(w.log_w), 1000.0, 1e-9);
  EXPECT_NEAR(w_diffusive_constant(ModelParams(0.5, 0.5, 0.0)), 1.0, 1e-15);
  EXPECT_NEAR(w.ratio, 1.0, 1e-12);
}

TEST(WSequence, DiffusiveReference) {
  const auto w = w_sequence(ModelParams(0.6, 0.5, 1.0), 100000);
  EXPECT_NEAR(w.log_w, std::log(35784054794.291824), 1e-9);
  EXPECT_NEAR(w.ratio, 1.0, 1e-3);
}

TEST(WSequence, CriticalConstant) {
  const auto w = w_sequence(ModelParams(0.75, 0.5, 0.0), 1000000);
  ASSERT_TRUE(w.limit.has_value());
  EXPECT_NEAR(*w.limit / std::log(1e6), std::numbers::pi / 4, 1e-12);
  EXPECT_NEAR(w.ratio, 1.073635889241349, 1e-9);
}

TEST(WSequence, SuperdiffusiveConverges) {
  const ModelParams m(0.95, 0.5, 0.0);
  const auto w6 = w_sequence(m, 1000000);
  EXPECT_NEAR(std::exp(w6.log_w), 1.8358221161598907, 1e-11);
  const auto w5 = w_sequence(m, 100000);
  // The tail-corrected limits at 1e5 and 1e6 agree far better than the partial sums.
  EXPECT_NEAR(*w5.limit, *w6.limit, 1e-6);
}

}  // namespace
}  // namespace aerw
