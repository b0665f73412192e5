#include <gtest/gtest.h>

#include "lehmer/lehmer.hpp"
#include "oracles.hpp"

using lehmer::BigInt;

TEST(Korselt, CertifiesKnownCarmichaelNumbers) {
  auto c = lehmer::korselt_check(BigInt(561));
  EXPECT_TRUE(c.is_carmichael);
  EXPECT_TRUE(c.squarefree);
  EXPECT_TRUE(c.composite);
  EXPECT_TRUE(c.korselt_failures.empty());
  // A 22-digit Carmichael number: (6k+1)(12k+1)(18k+1) with k = 1000051.
  BigInt k = 1000051;
  BigInt n = (6 * k + 1) * (12 * k + 1) * (18 * k + 1);
  ASSERT_TRUE(lehmer::is_prime(6 * k + 1) && lehmer::is_prime(12 * k + 1) && lehmer::is_prime(18 * k + 1));
  EXPECT_TRUE(lehmer::korselt_check(n).is_carmichael);
}

TEST(Korselt, ReportsFailingPrimes) {
  auto c = lehmer::korselt_check(BigInt(15));
  EXPECT_FALSE(c.is_carmichael);
  EXPECT_EQ(c.korselt_failures, (std::vector<BigInt>{5}));
  auto sq = lehmer::korselt_check(BigInt(9));
  EXPECT_FALSE(sq.squarefree);
  EXPECT_FALSE(sq.is_carmichael);
  auto p = lehmer::korselt_check(BigInt(13));
  EXPECT_FALSE(p.composite);
  EXPECT_FALSE(p.is_carmichael);
  EXPECT_THROW(lehmer::korselt_check(BigInt(1)), lehmer::InvalidArgument);
}

TEST(FermatOracle, MatchesTestSideOracleBelow20000) {
  for (std::uint64_t n = 4; n <= 20000; ++n) {
    if (oracle::is_prime(n)) continue;
    ASSERT_EQ(lehmer::fermat_oracle(n), oracle::carmichael_by_fermat(n)) << n;
  }
}

TEST(FermatOracle, RejectsOutOfDomain) {
  EXPECT_THROW(lehmer::fermat_oracle(13), lehmer::InvalidArgument);
  EXPECT_THROW(lehmer::fermat_oracle(1), lehmer::InvalidArgument);
  EXPECT_THROW(lehmer::fermat_oracle(2000000), lehmer::InvalidArgument);
}

TEST(Korselt, AgreesWithFermatBelow100000) {
  std::vector<std::uint64_t> found;
  for (std::uint64_t n = 4; n <= 100000; ++n) {
    if (lehmer::is_prime_u64(n)) continue;
    bool fermat = lehmer::fermat_oracle(n);
    ASSERT_EQ(lehmer::korselt_check(BigInt(n)).is_carmichael, fermat) << n;
    if (fermat) found.push_back(n);
  }
  ASSERT_EQ(found.size(), 16u);
  EXPECT_EQ(found[0], 561u);
  EXPECT_EQ(found[1], 1105u);
  EXPECT_EQ(found[2], 1729u);
  EXPECT_EQ(lehmer::carmichael_in_range(2, 100000), found);
}

TEST(CarmichaelRange, PartitionAndThreadIndependent) {
  auto whole = lehmer::carmichael_in_range(2, 3000000, 1);
  EXPECT_EQ(whole.size(), 63u);
  EXPECT_EQ(lehmer::carmichael_in_range(2, 3000000, 4), whole);
  auto left = lehmer::carmichael_in_range(2, 1234567, 3);
  auto right = lehmer::carmichael_in_range(1234568, 3000000, 2);
  left.insert(left.end(), right.begin(), right.end());
  EXPECT_EQ(left, whole);
  EXPECT_TRUE(lehmer::carmichael_in_range(562, 1104).empty());
  EXPECT_THROW(lehmer::carmichael_in_range(10, 5), lehmer::InvalidArgument);
}
