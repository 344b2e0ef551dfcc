#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qdeg/degree_lab.hpp"
#include "reference_minimax.hpp"

using namespace qdeg;

namespace {

SymmetricFunction named(const char* family, int n) { return make_named(FamilySpec::parse(family), n); }

std::vector<SymmetricFunction> zoo(int n) {
  std::vector<SymmetricFunction> out;
  for (const char* fam : {"or", "and", "parity", "majority"}) out.push_back(named(fam, n));
  for (int tau = 2; tau < n; ++tau) out.push_back(make_named({Family::Threshold, tau}, n));
  return out;
}

std::vector<double> as_doubles(const SymmetricFunction& f) {
  return {f.spectrum().begin(), f.spectrum().end()};
}

// Length of the longest sign-alternating subsequence.
std::size_t alternations(const std::vector<EquioscillationPoint>& pts) {
  std::size_t len = 0;
  int last = 0;
  for (const auto& p : pts) {
    if (p.sign != last) {
      ++len;
      last = p.sign;
    }
  }
  return len;
}

}  // namespace

TEST(MinimaxError, Examples) {
  EXPECT_NEAR(minimax_error(named("or", 1), 0).error, 0.5, 1e-9);
  EXPECT_NEAR(minimax_error(named("parity", 4), 3).error, 0.5, 1e-9);
  EXPECT_NEAR(minimax_error(named("parity", 4), 4).error, 0.0, 1e-9);
  EXPECT_TRUE(minimax_error(named("parity", 4), 4).certificate.empty());
  EXPECT_THROW(minimax_error(named("or", 4), 5), ParameterError);
  EXPECT_THROW(minimax_error(named("or", 4), -1), ParameterError);
}

TEST(MinimaxError, EndpointsOverTheZoo) {
  for (int n = 1; n <= 16; ++n) {
    for (const auto& f : zoo(n)) {
      ASSERT_NEAR(minimax_error(f, n).error, 0.0, 1e-7) << f.to_text();
      ASSERT_NEAR(minimax_error(f, 0).error, 0.5, 1e-9) << f.to_text();
    }
  }
}

TEST(MinimaxError, MatchesBruteForceOnAllSmallSpectra) {
  for (int n = 1; n <= 6; ++n) {
    for (std::uint32_t s = 0; s < (1U << (n + 1)); ++s) {
      std::vector<std::uint8_t> spec(static_cast<std::size_t>(n) + 1);
      for (int k = 0; k <= n; ++k) spec[static_cast<std::size_t>(k)] = (s >> k) & 1U;
      const SymmetricFunction f(spec);
      for (int d = 0; d <= n; ++d) {
        ASSERT_NEAR(minimax_error(f, d).error, qdeg::testing::reference_minimax(as_doubles(f), d), 1e-6)
            << f.to_text() << " d=" << d;
      }
    }
  }
}

TEST(MinimaxError, MonotoneWitnessAndCertificate) {
  for (int n : {5, 9, 16, 24}) {
    for (const auto& f : zoo(n)) {
      double prev = 1.0;
      for (int d = 0; d <= n; ++d) {
        const auto r = minimax_error(f, d);
        ASSERT_LE(r.error, prev + 1e-7) << f.to_text() << " d=" << d;
        prev = r.error;
        ASSERT_EQ(r.degree, d);
        ASSERT_LE(univariate_degree(r.witness, 1e-6), d);
        double worst = 0.0;
        for (int k = 0; k <= n; ++k) worst = std::max(worst, std::abs(r.witness(k) - f.at_weight(k)));
        ASSERT_LE(worst, r.error + kFeasibilityTolerance);
        if (r.error > 1e-6) {
          ASSERT_GE(alternations(r.certificate), static_cast<std::size_t>(d) + 2) << f.to_text() << " d=" << d;
        }
      }
    }
  }
}

TEST(ApproxDegree, Examples) {
  for (int n = 1; n <= 12; ++n) EXPECT_EQ(approx_degree(named("parity", n), 1.0 / 3), n) << n;
  EXPECT_EQ(approx_degree(named("or", 1), 1.0 / 3), 1);
  EXPECT_EQ(approx_degree(SymmetricFunction({1, 1, 1}), 0.0), 0);
  EXPECT_EQ(approx_degree(named("or", 8), 0.0), 8);
  EXPECT_THROW(approx_degree(named("or", 8), 0.5), ParameterError);
  EXPECT_THROW(approx_degree(named("or", 8), -0.1), ParameterError);
}

TEST(ApproxDegree, NondecreasingAsEpsShrinks) {
  const auto f = named("or", 16);
  int prev = 0;
  for (double eps = 0.45; eps > 1e-5; eps /= 2) {
    const int d = approx_degree(f, eps);
    ASSERT_GE(d, prev) << eps;
    prev = d;
  }
}

TEST(ApproxDegree, ThresholdsAroundTheMinimaxError) {
  for (const char* fam : {"or", "majority", "threshold:3"}) {
    const auto f = named(fam, 16);
    for (int d = 0; d < 16; ++d) {
      const double e = minimax_error(f, d).error;
      if (e + 1e-6 >= 0.5) continue;
      ASSERT_LE(approx_degree(f, e + 1e-6), d) << fam << " d=" << d;
      // e* is nonincreasing in d, so every degree <= d misses e - 1e-6.
      if (e > 2e-6) ASSERT_GT(approx_degree(f, e - 1e-6), d) << fam << " d=" << d;
    }
  }
}

TEST(ApproxDegree, RestrictionNeverIncreasesIt) {
  std::mt19937_64 rng(2);
  for (int n = 4; n <= 12; n += 2) {
    for (const auto& f : zoo(n)) {
      const int df = approx_degree(f, 1.0 / 3);
      for (int trial = 0; trial < 3; ++trial) {
        Restriction r;
        for (int i = 1; i <= n; ++i) {
          switch (rng() % 3) {
            case 0: r.ones.push_back(i); break;
            case 1: r.zeros.push_back(i); break;
            default: r.free.push_back(i);
          }
        }
        if (r.free.empty()) r.free.push_back(r.ones.empty() ? r.zeros.back() : r.ones.back());
        std::erase(r.ones, r.free.back());
        std::erase(r.zeros, r.free.back());
        const auto g = restrict(f, r);
        if (g.is_constant()) continue;
        ASSERT_LE(approx_degree(g, 1.0 / 3), df) << f.to_text();
      }
    }
  }
}

TEST(LowerBoundCheck, EmbeddedThreshold) {
  const auto r = lower_bound_check(named("threshold:2", 16), 0.05);
  EXPECT_TRUE(r.embedded);
  EXPECT_EQ(r.embedding.m, 15);
  EXPECT_GE(r.deg_eps, r.deg_or);
  EXPECT_GE(r.deg_eps, r.deg_13);
  EXPECT_TRUE(r.passed);
}

TEST(LowerBoundCheck, WideJumpSkipsEmbedding) {
  const auto r = lower_bound_check(named("majority", 16), 0.1);
  EXPECT_FALSE(r.embedded);
  EXPECT_TRUE(r.passed);
  EXPECT_THROW(lower_bound_check(named("or", 8), 0.4), ParameterError);
  EXPECT_THROW(lower_bound_check(named("or", 8), 0.0), ParameterError);
}

TEST(LowerBoundCheck, PassesAcrossSmallZoo) {
  for (int n = 5; n <= 12; ++n) {
    for (const auto& f : zoo(n)) {
      for (double eps : {1.0 / 3, 0.1, 0.01}) {
        const auto r = lower_bound_check(f, eps);
        ASSERT_TRUE(r.passed) << f.to_text() << " eps=" << eps;
      }
    }
  }
}

TEST(UpperBoundCheck, SymmetricTargets) {
  for (const char* fam : {"or", "and"}) {
    for (double eps : {1.0 / 3, 0.1}) {
      const auto r = upper_bound_check(named(fam, 4), eps);
      EXPECT_TRUE(r.passed) << fam << " " << eps;
      EXPECT_TRUE(r.poly_ok);
      ASSERT_TRUE(r.deg_lp.has_value());
      EXPECT_LE(*r.deg_lp, r.surface_degree);
      EXPECT_LE(r.surface_degree, r.two_t);
      EXPECT_LE(r.symmetrized_error, eps);
    }
  }
  const auto c = upper_bound_check(SymmetricFunction({1, 1, 1, 1}), 0.1);
  EXPECT_EQ(c.two_t, 0);
  EXPECT_EQ(c.surface_degree, 0);
  EXPECT_TRUE(c.passed);
  EXPECT_THROW(upper_bound_check(named("or", 9), 0.1), ResourceError);
}

TEST(UpperBoundCheck, PromiseTarget) {
  const auto f = PromiseFunction::tabulate(6, 2, 1, [](const BitString& x) { return x[2] ? 1 : 0; });
  const auto r = upper_bound_check(f, 0.1);
  EXPECT_FALSE(r.deg_lp.has_value());
  EXPECT_TRUE(r.poly_ok);
  EXPECT_TRUE(r.passed);
}

TEST(DegreeBand, SinglePoint) {
  const std::vector<int> ns{8};
  const std::vector<double> epss{1.0 / 3};
  const auto r = degree_band(FamilySpec::parse("or"), ns, epss, 4.0, 1);
  ASSERT_EQ(r.rows.size(), 1U);
  EXPECT_GT(r.rows[0].ratio, 0.0);
  EXPECT_LE(r.rows[0].ratio, 1.0);
  EXPECT_TRUE(r.rows[0].in_band);
  EXPECT_DOUBLE_EQ(r.min_ratio, r.max_ratio);
  EXPECT_TRUE(r.passed());
}

TEST(DegreeBand, GridOrderAndMonotonicity) {
  const std::vector<int> ns{16, 8};
  const std::vector<double> epss{0.01, 1.0 / 3, 0.1};
  const auto r = degree_band(FamilySpec::parse("or"), ns, epss, 4.0, 1);
  ASSERT_EQ(r.rows.size(), 6U);
  EXPECT_EQ(r.rows[0].n, 8);
  EXPECT_DOUBLE_EQ(r.rows[0].eps, 1.0 / 3);
  EXPECT_DOUBLE_EQ(r.rows[2].eps, 0.01);
  EXPECT_TRUE(r.monotone_n);
  EXPECT_TRUE(r.monotone_eps);
  for (const auto& row : r.rows) {
    EXPECT_LE(row.e_star, row.eps + kFeasibilityTolerance);
    EXPECT_NEAR(row.ratio, row.deg_eps / (row.deg_13 + std::sqrt(row.n * std::log(1.0 / row.eps))), 1e-12);
  }
}

TEST(DegreeBand, ParityIsOutsideTheBand) {
  const std::vector<int> ns{8, 10};
  const std::vector<double> epss{1.0 / 3, 0.1};
  const auto r = degree_band(FamilySpec::parse("parity"), ns, epss, 1.0, 1);
  for (const auto& row : r.rows) EXPECT_FALSE(row.in_band);
  EXPECT_TRUE(r.within_width);
}

TEST(DegreeBand, RefusesTinyOrLargeEps) {
  const std::vector<int> ns{8};
  EXPECT_THROW(degree_band(FamilySpec::parse("or"), ns, std::vector<double>{1e-3}, 4.0), ParameterError);
  EXPECT_THROW(degree_band(FamilySpec::parse("or"), ns, std::vector<double>{0.4}, 4.0), ParameterError);
  EXPECT_NO_THROW(degree_band(FamilySpec::parse("or"), ns, std::vector<double>{1.0 / 256}, 4.0));
}

TEST(ThresholdBand, RatiosArePositiveAndBounded) {
  const std::vector<int> taus{1, 2, 4};
  const std::vector<int> ns{16, 32};
  const auto r = threshold_band(taus, ns, 1);
  ASSERT_EQ(r.rows.size(), 6U);
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.t, std::min(row.tau, row.n - row.tau + 1));
    EXPECT_NEAR(row.ratio, row.deg_13 / std::sqrt(static_cast<double>(row.t) * row.n), 1e-12);
    EXPECT_GT(row.ratio, 0.0);
  }
  EXPECT_LE(r.min_ratio, r.max_ratio);
}

TEST(BandOutput, CsvAndJson) {
  BandRow row{"or", 8, 1, 0.1, 4, 2, 0.5, 0.09, true};
  EXPECT_EQ(to_csv(row), "or,8,1,0.1,4,2,0.5,0.09");
  EXPECT_EQ(csv_header(), "family,n,t,eps,deg_eps,deg_13,ratio,e_star");
  BandReport rep;
  rep.rows.push_back(row);
  const auto j = to_json(rep);
  EXPECT_EQ(j["rows"][0]["deg_eps"], 4);
  EXPECT_EQ(j["passed"], false);
}
