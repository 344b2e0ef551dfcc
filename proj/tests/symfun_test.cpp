#include <gtest/gtest.h>

#include <bit>
#include <random>

#include "qdeg/symfun.hpp"

using namespace qdeg;

namespace {

SymmetricFunction named(const char* family, int n) { return make_named(FamilySpec::parse(family), n); }

std::vector<std::uint8_t> spec(const SymmetricFunction& f) { return {f.spectrum().begin(), f.spectrum().end()}; }

// Written independently of jump_parameter: try every t and test constancy
// by direct comparison of all pairs.
int scan_jump(const SymmetricFunction& f) {
  const int n = f.arity();
  for (int t = 1;; ++t) {
    bool constant = true;
    for (int a = t; a <= n - t; ++a) {
      for (int b = t; b <= n - t; ++b) constant = constant && f.at_weight(a) == f.at_weight(b);
    }
    if (constant) return t;
  }
}

std::vector<SymmetricFunction> zoo(int n) {
  std::vector<SymmetricFunction> fs;
  for (const char* fam : {"or", "and", "parity", "majority"}) fs.push_back(named(fam, n));
  for (int tau = 1; tau <= n; ++tau) fs.push_back(make_named({Family::Threshold, tau}, n));
  return fs;
}

int or_value(std::uint64_t y) { return y != 0 ? 1 : 0; }

}  // namespace

TEST(MakeNamed, StandardSpectra) {
  EXPECT_EQ(spec(named("or", 3)), (std::vector<std::uint8_t>{0, 1, 1, 1}));
  EXPECT_EQ(spec(named("parity", 4)), (std::vector<std::uint8_t>{0, 1, 0, 1, 0}));
  EXPECT_EQ(spec(named("threshold:2", 4)), (std::vector<std::uint8_t>{0, 0, 1, 1, 1}));
  EXPECT_EQ(spec(named("threshold2", 4)), (std::vector<std::uint8_t>{0, 0, 1, 1, 1}));
  EXPECT_EQ(spec(named("and", 3)), (std::vector<std::uint8_t>{0, 0, 0, 1}));
  // ceil((n+1)/2)
  EXPECT_EQ(spec(named("majority", 4)), (std::vector<std::uint8_t>{0, 0, 0, 1, 1}));
  EXPECT_EQ(spec(named("majority", 3)), (std::vector<std::uint8_t>{0, 0, 1, 1}));
}

TEST(MakeNamed, RejectsBadParameters) {
  EXPECT_THROW(make_named({Family::Or, 0}, 0), ParameterError);
  EXPECT_THROW(make_named({Family::Threshold, 0}, 4), ParameterError);
  EXPECT_THROW(make_named({Family::Threshold, 5}, 4), ParameterError);
  EXPECT_THROW(FamilySpec::parse("xor"), ParameterError);
}

TEST(SymmetricFunction, EvaluationMatchesSpectrumExhaustively) {
  for (int n = 1; n <= 10; ++n) {
    for (const auto& f : zoo(n)) {
      for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
        ASSERT_EQ(f(BitString(n, x)), f.spectrum()[static_cast<std::size_t>(std::popcount(x))]);
      }
    }
  }
}

TEST(SymmetricFunction, TextRoundTrip) {
  const auto f = named("threshold:3", 7);
  EXPECT_EQ(SymmetricFunction::parse_text(f.to_text()), f);
  EXPECT_EQ(SymmetricFunction::parse_text("n= 2\n0 1 0\n"), named("parity", 2));
  EXPECT_THROW(SymmetricFunction::parse_text("n= 3\n0 1 0\n"), ParameterError);
  EXPECT_THROW(SymmetricFunction::parse_text("n= 1\n0 2\n"), ParameterError);
}

TEST(JumpParameter, Examples) {
  EXPECT_EQ(jump_parameter(named("or", 8)), 1);
  EXPECT_EQ(jump_parameter(named("parity", 8)), 4);
  EXPECT_EQ(jump_parameter(named("threshold:2", 8)), 2);
  EXPECT_THROW(jump_parameter(SymmetricFunction({1, 1, 1})), DomainError);
}

TEST(JumpParameter, MatchesIndependentScanOnAllSpectra) {
  for (int n = 1; n <= 10; ++n) {
    for (std::uint32_t s = 0; s < (1U << (n + 1)); ++s) {
      std::vector<std::uint8_t> v(static_cast<std::size_t>(n) + 1);
      for (int k = 0; k <= n; ++k) v[static_cast<std::size_t>(k)] = (s >> k) & 1U;
      const SymmetricFunction f(v);
      if (f.is_constant()) continue;
      const int t = jump_parameter(f);
      ASSERT_EQ(t, scan_jump(f)) << f.to_text();
      ASSERT_LE(t, n / 2 + 1);
    }
  }
}

TEST(JumpParameter, OddMiddleWeightJump) {
  // n = 5, only weight 3 differs from its neighbours: {2,3} is not constant,
  // {3} is, so t = 3 = floor(n/2) + 1.
  EXPECT_EQ(jump_parameter(SymmetricFunction({0, 0, 0, 1, 1, 1})), 3);
}

TEST(Restrict, Examples) {
  EXPECT_EQ(restrict(named("threshold:2", 4), {{1}, {}, {2, 3, 4}}), named("or", 3));
  EXPECT_EQ(restrict(named("parity", 4), {{1, 2}, {}, {3, 4}}), named("parity", 2));
  const auto maj = named("majority", 5);
  EXPECT_EQ(restrict(maj, {{}, {}, {1, 2, 3, 4, 5}}), maj);
}

TEST(Restrict, PointwiseAgreementExhaustive) {
  std::mt19937_64 rng(7);
  for (int n = 1; n <= 10; ++n) {
    for (const auto& f : zoo(n)) {
      for (int trial = 0; trial < 4; ++trial) {
        Restriction r;
        for (int i = 1; i <= n; ++i) {
          switch (rng() % 3) {
            case 0: r.ones.push_back(i); break;
            case 1: r.zeros.push_back(i); break;
            default: r.free.push_back(i);
          }
        }
        if (r.free.empty()) {
          EXPECT_THROW(restrict(f, r), ParameterError);
          continue;
        }
        std::shuffle(r.free.begin(), r.free.end(), rng);
        const auto g = restrict(f, r);
        const int m = static_cast<int>(r.free.size());
        ASSERT_EQ(g.arity(), m);
        for (std::uint64_t y = 0; y < (std::uint64_t{1} << m); ++y) {
          const BitString ym(m, y);
          ASSERT_EQ(g(ym), f(r.assemble(ym, n)));
        }
      }
    }
  }
}

TEST(Restrict, RejectsInconsistentRestrictions) {
  const auto f = named("or", 3);
  EXPECT_THROW(restrict(f, {{1}, {1}, {2, 3}}), ParameterError);
  EXPECT_THROW(restrict(f, {{4}, {}, {1, 2, 3}}), ParameterError);
  EXPECT_THROW(restrict(f, {{1}, {}, {2}}), ParameterError);
}

TEST(EmbedOr, Examples) {
  const auto e_or = embed_or(named("or", 8));
  EXPECT_EQ(e_or.m, 8);
  EXPECT_TRUE(e_or.restriction.ones.empty());
  EXPECT_TRUE(e_or.restriction.zeros.empty());
  EXPECT_EQ(e_or.polarity, Polarity::Identity);

  const auto e_and = embed_or(named("and", 8));
  EXPECT_EQ(e_and.m, 8);
  EXPECT_EQ(e_and.polarity, Polarity::ReflectedNegated);

  // Largest valid m: fixing one bit to 1 already leaves OR_15.
  const auto e_thr = embed_or(named("threshold:2", 16));
  EXPECT_EQ(e_thr.m, 15);
  EXPECT_EQ(e_thr.restriction.ones.size(), 1U);
  EXPECT_EQ(e_thr.polarity, Polarity::Identity);
}

TEST(EmbedOr, NotApplicableWhenJumpIsLarge) {
  EXPECT_THROW(embed_or(named("majority", 8)), NotApplicableError);
  EXPECT_THROW(embed_or(named("parity", 8)), NotApplicableError);
}

// Checks the polarity relation with the OR evaluated directly, not through
// embedding_holds.
TEST(EmbedOr, PointwiseAgainstOrForAllSpectra) {
  for (int n = 5; n <= 10; ++n) {
    for (std::uint32_t s = 0; s < (1U << (n + 1)); ++s) {
      std::vector<std::uint8_t> v(static_cast<std::size_t>(n) + 1);
      for (int k = 0; k <= n; ++k) v[static_cast<std::size_t>(k)] = (s >> k) & 1U;
      const SymmetricFunction f(v);
      if (f.is_constant()) continue;
      const int t = jump_parameter(f);
      if (4 * t >= n) continue;
      const auto e = embed_or(f);
      ASSERT_GE(e.m, n - 2 * t);
      ASSERT_TRUE(embedding_holds(f, e));
      const auto g = restrict(f, e.restriction);
      const bool reflect = e.polarity == Polarity::Reflected || e.polarity == Polarity::ReflectedNegated;
      const bool negate = e.polarity == Polarity::Negated || e.polarity == Polarity::ReflectedNegated;
      for (std::uint64_t y = 0; y < (std::uint64_t{1} << e.m); ++y) {
        const BitString arg = reflect ? BitString(e.m, ~y) : BitString(e.m, y);
        ASSERT_EQ(g(arg), negate ? 1 - or_value(y) : or_value(y)) << f.to_text();
      }
    }
  }
}
