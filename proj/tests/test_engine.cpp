#include <gtest/gtest.h>

#include "lehmer/lehmer.hpp"

using lehmer::BigInt;
using lehmer::ExactRational;
using lehmer::LadderMode;
using lehmer::LehmerProfile;

namespace {

unsigned floor_of(const std::string& text) { return lehmer::min_k(LehmerProfile::parse(text)).min_k; }

}  // namespace

TEST(PiSquared, EnclosureAgreesWithSeries) {
  // pi^2 = 18 sum_{k>=1} 1/(k^2 C(2k,k)); the tail after K terms is below
  // twice the last term.
  ExactRational partial = 0;
  BigInt central = 1;
  ExactRational last;
  for (unsigned k = 1; k <= 120; ++k) {
    central = central * (2 * k) * (2 * k - 1) / (BigInt(k) * k);
    last = ExactRational(18, BigInt(k) * k * central);
    partial += last;
  }
  const ExactRational lo = lehmer::pi_squared_lower(), hi = lehmer::pi_squared_upper();
  EXPECT_LT(lo, hi);
  EXPECT_LT(hi - lo, ExactRational(1, lehmer::pow10(33)));
  EXPECT_LT(partial, hi);
  EXPECT_GT(partial + 2 * last, lo);
  EXPECT_EQ(lo.decimal(12), "9.86960440109");
  auto six = lehmer::over_pi_squared(6);
  EXPECT_TRUE(six.contains(six.lower));
  EXPECT_LT(six.width(), ExactRational(1, lehmer::pow10(33)));
}

TEST(Thresholds, ExactValues) {
  EXPECT_EQ(lehmer::exclusion_threshold(3, 2), ExactRational(7, 24));
  EXPECT_EQ(lehmer::exclusion_threshold(5, 2), ExactRational(7 * 6, 160));
  EXPECT_EQ(lehmer::two_power_threshold(1), ExactRational(13, 42));
  EXPECT_EQ(lehmer::two_power_threshold(2), ExactRational(7, 24));
  EXPECT_EQ(lehmer::two_power_threshold(3), ExactRational(9, 32));
  EXPECT_EQ(lehmer::two_power_threshold(4), ExactRational(2055, 8064));
  EXPECT_THROW(lehmer::two_power_threshold(0), lehmer::InvalidArgument);
  EXPECT_THROW(lehmer::exclusion_threshold(9, 2), lehmer::InvalidArgument);
  EXPECT_THROW(lehmer::exclusion_threshold(3, 1), lehmer::InvalidArgument);
  // The threshold decreases in R toward 7/(16q).
  for (unsigned R = 2; R < 50; ++R) EXPECT_GT(lehmer::exclusion_threshold(7, R), lehmer::exclusion_threshold(7, R + 1));
}

TEST(Thresholds, RefinedChains) {
  using lehmer::RefinedCase;
  EXPECT_EQ(lehmer::refined_threshold(RefinedCase::q5_without_7), ExactRational(175, 704));
  EXPECT_EQ(lehmer::refined_threshold(RefinedCase::q5_with_7_without_13), ExactRational(1007, 4080));
  for (auto c : {RefinedCase::q5_without_7, RefinedCase::q5_with_7_without_13}) {
    EXPECT_EQ(lehmer::refined_threshold_from_chain(c), lehmer::refined_threshold(c));
  }
  EXPECT_EQ(lehmer::divisor_split_upper({5}, 11, 2), ExactRational(175, 704));
}

TEST(Profile, ParseAndValidate) {
  auto p = LehmerProfile::parse("5|n, 7!|n, N0=10^40");
  EXPECT_EQ(p.divisibility(5), lehmer::Divisibility::divides);
  EXPECT_EQ(p.divisibility(7), lehmer::Divisibility::not_divides);
  EXPECT_EQ(p.divisibility(3), lehmer::Divisibility::unknown);
  EXPECT_EQ(p.size_exponent(), 40u);
  EXPECT_EQ(LehmerProfile::parse("q=17").smallest_prime_lower_bound(), 17);
  EXPECT_EQ(LehmerProfile::parse("3!|n,5!|n,7!|n,11!|n,13!|n").smallest_prime_lower_bound(), 17);
  EXPECT_TRUE(LehmerProfile::parse("n=561").is_concrete());
  EXPECT_THROW(LehmerProfile::parse("4|n"), lehmer::InvalidArgument);
  EXPECT_THROW(LehmerProfile::parse("wat"), lehmer::InvalidArgument);
  EXPECT_THROW(LehmerProfile::parse("N0=1000"), lehmer::InvalidArgument);
  EXPECT_THROW(lehmer::min_k(LehmerProfile::parse("q=5,3|n")), lehmer::InvalidArgument);
  EXPECT_THROW(lehmer::min_k(LehmerProfile::parse("q=9")), lehmer::InvalidArgument);
}

TEST(Profile, CaseSplitDropsIncompatiblePairs) {
  // 3 | n excludes 7 and 13; 5 | n excludes 11.
  auto cases = lehmer::detail::expand_cases(LehmerProfile::parse("3|n"));
  for (const auto& c : cases) {
    EXPECT_EQ(c.divisibility(7), lehmer::Divisibility::not_divides);
    EXPECT_EQ(c.divisibility(13), lehmer::Divisibility::not_divides);
  }
  EXPECT_EQ(cases.size(), 3u);
  EXPECT_EQ(lehmer::detail::expand_cases(LehmerProfile::generic()).size(), 15u);
}

TEST(MinK, Matrix) {
  EXPECT_EQ(floor_of("generic"), 3u);
  EXPECT_EQ(floor_of("3|n"), 4u);
  EXPECT_GE(floor_of("3!|n"), 3u);
  EXPECT_GE(floor_of("3!|n,5!|n,7!|n,11!|n,13!|n"), 4u);
  EXPECT_GE(floor_of("q=3"), 4u);
  EXPECT_GE(floor_of("q=17"), 4u);
  EXPECT_GE(floor_of("q=101"), 4u);
}

TEST(MinK, ThreeDividingForcesCongruence) {
  auto r = lehmer::min_k(LehmerProfile::parse("3|n"));
  for (const auto& c : r.cases) {
    ASSERT_GE(c.excluded.size(), 2u);
    EXPECT_EQ(c.excluded[0].k, 2u);
    EXPECT_EQ(c.excluded[0].criterion, "k-congruence-mod-3");
    EXPECT_EQ(c.excluded[1].k, 3u);
    EXPECT_EQ(c.excluded[1].criterion, "k-congruence-mod-3");
    EXPECT_EQ(c.floor % 3, 1u);
  }
}

TEST(ExcludeK, JustificationsReproduce) {
  auto generic = LehmerProfile::generic();
  auto two = lehmer::exclude_k(generic, 2);
  EXPECT_TRUE(two.excluded);
  EXPECT_EQ(two.justifications.size(), 15u);
  for (const auto& j : two.justifications) EXPECT_TRUE(j.reproduces()) << j.note;
  EXPECT_FALSE(lehmer::exclude_k(generic, 3).excluded);
  EXPECT_THROW(lehmer::exclude_k(generic, 1), lehmer::InvalidArgument);
  // Every k the sweep rules out carries an exact, re-checkable comparison.
  for (const auto& c : lehmer::min_k(generic).cases) {
    for (const auto& e : c.excluded) EXPECT_TRUE(e.reproduces()) << c.label << " k=" << e.k;
  }
}

TEST(Ladder, DualModeAtSeventeen) {
  EXPECT_EQ(lehmer::ladder_condition(17, 4, LadderMode::as_printed), ExactRational(10, 17));
  EXPECT_EQ(lehmer::ladder_condition(17, 4, LadderMode::strict), ExactRational(35, 34));
  EXPECT_EQ(lehmer::ladder_floor(17, 4, LadderMode::as_printed), 5u);
  EXPECT_EQ(lehmer::ladder_floor(17, 4, LadderMode::strict), std::nullopt);
  EXPECT_EQ(lehmer::ladder_floor(17, 3, LadderMode::strict), 4u);
  EXPECT_EQ(lehmer::ladder_floor(17, LadderMode::strict), 4u);
  EXPECT_EQ(lehmer::ladder_floor(17, LadderMode::as_printed), 18u);
  EXPECT_THROW(lehmer::ladder_floor(17, 3, LadderMode::as_printed), lehmer::InvalidArgument);
  EXPECT_THROW(lehmer::ladder_floor(13, 4, LadderMode::strict), lehmer::InvalidArgument);
  EXPECT_THROW(lehmer::ladder_floor(21, 4, LadderMode::strict), lehmer::InvalidArgument);
  // Larger q climbs higher in both modes.
  EXPECT_GE(*lehmer::ladder_floor(101, LadderMode::strict), *lehmer::ladder_floor(17, LadderMode::strict));
}

TEST(PhiSigma, RatioBounds) {
  for (std::uint64_t n = 2; n <= 5000; ++n) {
    auto r = lehmer::phi_sigma_ratio(lehmer::factor(BigInt(n)));
    ASSERT_TRUE(r.below_one) << n;
    // phi sigma / n^2 > 6/pi^2 holds for squarefree n.
    if (lehmer::is_squarefree(lehmer::factor(BigInt(n)))) { ASSERT_TRUE(r.above_six_over_pi_squared) << n; }
  }
  EXPECT_EQ(lehmer::phi_sigma_ratio(lehmer::factor(BigInt(15))).ratio, ExactRational(8 * 24, 225));
}

TEST(Abundancy, Coefficients) {
  auto generic = lehmer::abundancy_bound(LehmerProfile::generic());
  EXPECT_EQ(generic.coefficient, 24);
  EXPECT_EQ(generic.value().lower.decimal(7), "2.431708");
  auto free = lehmer::abundancy_bound(LehmerProfile::parse("3!|n,5!|n,7!|n,11!|n,13!|n"));
  EXPECT_EQ(free.coefficient, ExactRational(715715, 18432));
  EXPECT_EQ(free.value().lower.decimal(5), "3.9343");
}

TEST(LehmerCheck, CarmichaelVerdict) {
  auto v = lehmer::lehmer_check(BigInt(561));
  EXPECT_FALSE(v.primality.prime);
  ASSERT_TRUE(v.is_carmichael.has_value());
  EXPECT_TRUE(*v.is_carmichael);
  EXPECT_EQ(v.phi, 320);
  EXPECT_FALSE(v.phi_divides);
  EXPECT_FALSE(v.counterexample);
  EXPECT_EQ(v.min_k, 4u);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_EQ(v.witness->str(), "C2 x C2 x C3 x C11 x C17");
  EXPECT_EQ(v.excluded_k.front().criterion, "k-congruence-mod-3");
  EXPECT_EQ(v.abundancy_index, ExactRational(lehmer::sigma(lehmer::factor(BigInt(561))), 561));
}

TEST(LehmerCheck, PrimesAndEvenComposites) {
  auto p = lehmer::lehmer_check(BigInt(1000003));
  EXPECT_TRUE(p.primality.prime);
  EXPECT_EQ(p.min_k, 1u);
  ASSERT_TRUE(p.exact_k.has_value());
  EXPECT_EQ(*p.exact_k, 1);
  EXPECT_FALSE(p.counterexample);
  auto e = lehmer::lehmer_check(BigInt(1024));
  EXPECT_EQ(e.min_k, 2u);
  EXPECT_FALSE(e.counterexample);
  EXPECT_THROW(lehmer::lehmer_check(BigInt(1)), lehmer::InvalidArgument);
}

TEST(LehmerCheck, NonCarmichaelOddComposite) {
  auto v = lehmer::lehmer_check(BigInt(15));
  ASSERT_TRUE(v.is_carmichael.has_value());
  EXPECT_FALSE(*v.is_carmichael);
  EXPECT_EQ(v.korselt_failures, (std::vector<BigInt>{5}));
  EXPECT_FALSE(v.counterexample);
  EXPECT_GE(v.min_k, 2u);
}

TEST(LehmerCheck, LargeInputs) {
  BigInt k = 1000051;
  BigInt n = (6 * k + 1) * (12 * k + 1) * (18 * k + 1);
  auto v = lehmer::lehmer_check(n);
  EXPECT_TRUE(*v.is_carmichael);
  EXPECT_FALSE(v.counterexample);
  EXPECT_GE(v.min_k, 2u);
  auto big_prime = lehmer::lehmer_check(BigInt("1000000000000000000000000000057"));
  EXPECT_TRUE(big_prime.primality.prime);
  EXPECT_EQ(big_prime.min_k, 1u);
}

TEST(WitnessLower, SymbolicShortcutMatchesDirectFormula) {
  auto generic = LehmerProfile::generic();
  for (unsigned e : {1u, 30u, 200u, 8171u}) {
    for (unsigned k : {2u, 3u, 5u, 6u, 9u, 33u}) {
      ExactRational direct = (ExactRational(1) - ExactRational(1, lehmer::pow10(e))) / (2 * k);
      ASSERT_EQ(lehmer::detail::witness_lower(generic, k, e), direct) << e << " " << k;
    }
  }
}

TEST(MinK, ConcreteSkipAheadMatchesLinearSweep) {
  // Floor is the first k past both size criteria, the base one ending near q/7.
  for (std::uint64_t n : {561ull, 1105ull, 1729ull, 2465ull, 8911ull, 62745ull, 75361ull, 5310721ull, 174352641ull}) {
    auto profile = LehmerProfile::parse("n=" + std::to_string(n));
    unsigned linear = 2;
    while (lehmer::exclude_k(profile, linear).excluded) ++linear;
    EXPECT_EQ(lehmer::min_k(profile).min_k, linear) << n;
  }
}
