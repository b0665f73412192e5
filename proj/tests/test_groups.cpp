#include <gtest/gtest.h>

#include "lehmer/lehmer.hpp"
#include "oracles.hpp"

using lehmer::BigInt;
using lehmer::ExactRational;
using lehmer::GroupSpec;

namespace {

std::vector<oracle::Factor> to_oracle(const GroupSpec& g) {
  std::vector<oracle::Factor> out;
  auto one = [&](const GroupSpec& a) {
    int p = static_cast<int>(a.parameter());
    switch (a.kind()) {
      case GroupSpec::Kind::cyclic: out.push_back(oracle::cyclic(p)); break;
      case GroupSpec::Kind::dihedral: out.push_back(oracle::dihedral(p)); break;
      case GroupSpec::Kind::quaternion8: out.push_back(oracle::quaternion()); break;
      case GroupSpec::Kind::product: break;
    }
  };
  if (g.kind() == GroupSpec::Kind::product) {
    for (const auto& f : g.factors()) one(f);
  } else {
    one(g);
  }
  if (out.empty()) out.push_back(oracle::cyclic(1));
  return out;
}

std::vector<GroupSpec> abelian_groups(std::uint64_t n) {
  std::vector<GroupSpec> out;
  for (const auto& shape : oracle::abelian_shapes(n)) {
    std::vector<BigInt> orders(shape.begin(), shape.end());
    out.push_back(GroupSpec::abelian(orders));
  }
  return out;
}

}  // namespace

TEST(GroupSpecParser, ParsesAndNormalizes) {
  auto g = lehmer::parse_group_spec("Q8 x C3");
  EXPECT_EQ(g.str(), "C3 x Q8");
  EXPECT_EQ(g.order(), 24);
  EXPECT_EQ(lehmer::parse_group_spec("C15 x C2 x C2").str(), "C2 x C2 x C15");
  EXPECT_EQ(lehmer::parse_group_spec("  D6 ").str(), "D6");
  EXPECT_EQ(lehmer::parse_group_spec("C1 x C4").str(), "C4");
  EXPECT_EQ(lehmer::parse_group_spec("C2xC2"), lehmer::parse_group_spec("C2 x C2"));
  EXPECT_EQ(lehmer::parse_group_spec("C1").order(), 1);
}

TEST(GroupSpecParser, RejectsMalformedWithPosition) {
  for (const char* bad : {"", "C", "C0", "D5", "Q4", "C2 x", "C2 x X3", "C2 y C3", "C-2", "C2 x C3 junk"}) {
    EXPECT_THROW(lehmer::parse_group_spec(bad), lehmer::ParseError) << bad;
  }
  try {
    lehmer::parse_group_spec("C2 x X3");
    FAIL();
  } catch (const lehmer::ParseError& e) {
    EXPECT_EQ(e.position(), 5u);
  }
}

TEST(GroupSpec, StructuralPredicates) {
  EXPECT_TRUE(lehmer::parse_group_spec("C2 x C2").is_abelian());
  EXPECT_FALSE(lehmer::parse_group_spec("D6").is_abelian());
  EXPECT_TRUE(lehmer::parse_group_spec("D4").is_abelian());
  EXPECT_FALSE(lehmer::parse_group_spec("Q8").is_abelian());
  EXPECT_TRUE(lehmer::parse_group_spec("Q8 x C3").is_nilpotent());
  EXPECT_TRUE(lehmer::parse_group_spec("D16").is_nilpotent());
  EXPECT_FALSE(lehmer::parse_group_spec("D12").is_nilpotent());
  EXPECT_FALSE(lehmer::parse_group_spec("D6 x C5").is_nilpotent());
}

TEST(OrderSpectrum, MatchesElementEnumeration) {
  std::vector<std::string> specs = {"C1", "C12", "C2 x C2", "C4 x C6", "C2 x C2 x C2 x C3", "D6", "D8", "D20",
                                    "D30 x C7", "Q8", "Q8 x C3", "Q8 x Q8", "Q8 x D8", "D6 x D10", "C9 x C3 x C3",
                                    "D4", "D2 x C2"};
  for (const auto& s : specs) {
    auto g = lehmer::parse_group_spec(s);
    auto spectrum = lehmer::order_spectrum(g);
    auto brute = oracle::order_counts(to_oracle(g));
    std::map<BigInt, BigInt> expected;
    for (auto [o, c] : brute) expected[BigInt(o)] = BigInt(c);
    EXPECT_EQ(spectrum.counts, expected) << s;
    EXPECT_EQ(spectrum.total(), g.order()) << s;
  }
}

TEST(Psi, KnownValues) {
  auto psi = [](const char* s) { return lehmer::psi(lehmer::parse_group_spec(s)); };
  EXPECT_EQ(psi("C2 x C2"), 7);
  EXPECT_EQ(psi("C4"), 11);
  EXPECT_EQ(psi("D6"), 13);
  EXPECT_EQ(psi("C6"), 21);
  EXPECT_EQ(psi("Q8"), 27);
  EXPECT_EQ(psi("C8"), 43);
  EXPECT_EQ(psi("Q8 x C3"), 189);
  EXPECT_EQ(psi("C2 x C2 x C15"), 7 * 7 * 21);
}

TEST(Psi, ClosedFormMatchesDivisorSum) {
  for (std::uint64_t n = 1; n <= 10000; ++n) {
    auto f = lehmer::factor(BigInt(n));
    ASSERT_EQ(lehmer::psi_cyclic(f), lehmer::psi_cyclic_divisor_sum(f)) << n;
  }
  for (std::uint64_t n = 1; n <= 60; ++n) {
    EXPECT_EQ(lehmer::psi_cyclic(lehmer::factor(BigInt(n))), oracle::psi({oracle::cyclic(static_cast<int>(n))}));
  }
}

TEST(Psi, RatiosAndCyclicity) {
  auto v4 = lehmer::parse_group_spec("C2 x C2");
  EXPECT_EQ(lehmer::psi_prime(v4), ExactRational(7, 11));
  EXPECT_EQ(lehmer::psi_double_prime(v4), ExactRational(7, 16));
  EXPECT_TRUE(lehmer::is_cyclic(lehmer::order_spectrum(lehmer::parse_group_spec("C3 x C4")), 12));
  EXPECT_FALSE(lehmer::is_cyclic(lehmer::order_spectrum(v4), 4));
  EXPECT_EQ(lehmer::psi_prime(lehmer::parse_group_spec("C2 x C3 x C5")), 1);
}

TEST(OrderSpectrum, SupportLimit) {
  lehmer::SpectrumLimits limits;
  limits.max_support = 10;
  EXPECT_THROW(lehmer::order_spectrum(lehmer::parse_group_spec("C2 x C3 x C5 x C7"), limits), lehmer::LimitExceeded);
  // Huge cyclic groups are fine through the divisor lattice.
  EXPECT_NO_THROW(lehmer::psi(lehmer::parse_group_spec("C1000000007 x C2 x C2")));
}

// Maximality by cyclic group, bound by n^2 and multiplicativity across every
// abelian group of order <= 512, dihedral and quaternion families.
TEST(PsiProperties, AbelianExhaustion) {
  std::size_t groups = 0;
  for (std::uint64_t n = 1; n <= 512; ++n) {
    const BigInt psi_cn = lehmer::psi_cyclic(lehmer::factor(BigInt(n)));
    for (const auto& g : abelian_groups(n)) {
      ++groups;
      auto spectrum = lehmer::order_spectrum(g);
      BigInt value = lehmer::psi(spectrum);
      bool cyclic = lehmer::is_cyclic(spectrum, BigInt(n));
      ASSERT_LE(value, psi_cn) << g.str();
      ASSERT_EQ(value == psi_cn, cyclic) << g.str();
      ASSERT_LE(value, BigInt(n) * n) << g.str();
      if (n <= 64) { ASSERT_EQ(value, oracle::psi(to_oracle(g))) << g.str(); }
    }
  }
  EXPECT_GT(groups, 1000u);
}

TEST(PsiProperties, NonabelianFamilies) {
  for (std::uint64_t m = 2; m <= 200; ++m) {
    auto d = GroupSpec::dihedral(BigInt(2 * m));
    BigInt n = 2 * m;
    BigInt value = lehmer::psi(d);
    EXPECT_LT(value, lehmer::psi_cyclic(lehmer::factor(n))) << d.str();
    EXPECT_LE(value, n * n);
    EXPECT_EQ(value, lehmer::psi_cyclic(lehmer::factor(BigInt(m))) + BigInt(2 * m)) << d.str();
  }
  for (std::uint64_t m = 1; m <= 99; m += 2) {
    auto g = GroupSpec::product({GroupSpec::quaternion8(), GroupSpec::cyclic(BigInt(m))});
    EXPECT_EQ(lehmer::psi(g), 27 * lehmer::psi_cyclic(lehmer::factor(BigInt(m))));
  }
}

TEST(PsiProperties, MultiplicativeOnCoprimeOrders) {
  std::vector<std::string> a = {"C4", "C2 x C2", "D8", "Q8", "C8", "C2 x C4", "C16 x C2"};
  std::vector<std::string> b = {"C3", "C3 x C3", "C9", "D6", "C15", "C5 x C5 x C7", "D10 x C3"};
  for (const auto& x : a) {
    for (const auto& y : b) {
      auto gx = lehmer::parse_group_spec(x), gy = lehmer::parse_group_spec(y);
      if (y.find('D') != std::string::npos) continue;  // D6, D10 have even order
      EXPECT_EQ(lehmer::psi(GroupSpec::product({gx, gy})), lehmer::psi(gx) * lehmer::psi(gy)) << x << " x " << y;
    }
  }
  // Dihedral groups of odd m paired with coprime odd cyclic groups.
  EXPECT_EQ(lehmer::psi(lehmer::parse_group_spec("D6 x C5")), 13 * 21);
}
