#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "nbx/constructions.hpp"
#include "nbx/families.hpp"
#include "oracles.hpp"

using nbx::Family;
using nbx::Symbol;
using nbx::TernaryString;

namespace {

const Family kC3 = Family::of({"000", "001", "01*", "1**"});
const Family kFigF = Family::of({"001", "101", "*11", "**0"});
const Family kFigG = Family::of({"0*1", "1*1", "*00", "*10"});

Family from_strings(const std::vector<std::string>& xs) {
  std::vector<TernaryString> ts;
  for (const auto& s : xs) ts.push_back(TernaryString::parse(s));
  return Family(xs.front().size(), std::move(ts));
}

}  // namespace

TEST(Family, RejectsDuplicatesAndMixedLengths) {
  EXPECT_THROW(Family::of({"0*", "0*"}), std::invalid_argument);
  EXPECT_THROW(Family::of({"0*", "0*1"}), std::invalid_argument);
}

TEST(Family, NbxTextFormat) {
  auto f = nbx::parse_nbx("# C_2\n00\n\n  01 \n1*\n");
  EXPECT_EQ(f, Family::of({"00", "01", "1*"}));
  EXPECT_EQ(nbx::format_nbx(f), "00\n01\n1*\n");
  EXPECT_THROW(nbx::parse_nbx("# nothing\n"), std::invalid_argument);
  EXPECT_THROW(nbx::parse_nbx("00\n0x\n"), std::invalid_argument);
}

TEST(VerifyNeighborly, Examples) {
  auto r = nbx::verify_neighborly(kC3, 1);
  EXPECT_TRUE(r.is_valid);
  EXPECT_EQ(r.min_distance, 1u);
  EXPECT_EQ(r.max_distance, 1u);

  auto bad = nbx::verify_neighborly(Family::of({"00", "11"}), 1);
  EXPECT_FALSE(bad.is_valid);
  ASSERT_EQ(bad.violations.size(), 1u);
  EXPECT_EQ(bad.violations[0], (nbx::Violation{0, 1, 2}));

  auto overlap = nbx::verify_neighborly(Family::of({"0*", "00"}), 2);
  EXPECT_FALSE(overlap.is_valid);
  EXPECT_EQ(overlap.violations[0].distance, 0u);
}

TEST(VerifyNeighborly, Errors) {
  EXPECT_THROW(nbx::verify_neighborly(Family(3), 1), std::invalid_argument);
  EXPECT_THROW(nbx::verify_neighborly(kC3, 0), std::invalid_argument);
  EXPECT_THROW(nbx::verify_neighborly(kC3, 4), std::invalid_argument);
}

TEST(Volume, Examples) {
  EXPECT_EQ(nbx::volume(Family::of({"00", "01", "1*"})), 4);
  EXPECT_EQ(nbx::volume(Family::of({"***"})), 8);
  EXPECT_EQ(nbx::volume(kC3), 8);
}

TEST(Partition, Examples) {
  EXPECT_TRUE(nbx::is_partition(kC3));
  EXPECT_FALSE(nbx::is_partition(Family::of({"00", "01"})));
  EXPECT_TRUE(nbx::is_partition(kFigF));
  EXPECT_TRUE(nbx::is_partition(kFigG));
  // right volume, overlapping members
  EXPECT_FALSE(nbx::is_partition(Family::of({"0*", "00", "11"})));
}

TEST(Slice, Examples) {
  EXPECT_EQ(nbx::slice(kFigF, 2, Symbol::Zero), Family::of({"**0"}));
  EXPECT_EQ(nbx::slice(Family::of({"00", "01", "1*"}), 0, Symbol::One), Family::of({"1*"}));
  EXPECT_THROW(nbx::slice(kC3, 3, Symbol::One), std::out_of_range);
  for (std::size_t i = 0; i < 3; ++i) {
    std::size_t total = 0;
    for (auto s : {Symbol::Zero, Symbol::One, Symbol::Joker})
      total += nbx::slice(kFigF, i, s).size();
    EXPECT_EQ(total, kFigF.size());
  }
}

TEST(Lamination, Examples) {
  EXPECT_EQ(nbx::is_lamination(kFigF), std::optional<std::size_t>(2));
  EXPECT_EQ(nbx::is_lamination(kFigG), std::optional<std::size_t>(2));
  EXPECT_EQ(nbx::is_lamination(Family::of({"***"})), std::nullopt);
  EXPECT_EQ(nbx::is_lamination(kC3), std::optional<std::size_t>(0));
}

TEST(TotalLamination, Examples) {
  EXPECT_TRUE(nbx::is_total_lamination(kFigF));
  EXPECT_TRUE(nbx::is_total_lamination(kFigG));
  EXPECT_TRUE(nbx::is_total_lamination(kC3));
  EXPECT_TRUE(nbx::is_total_lamination(Family::of({"00", "01", "10", "11"})));
  EXPECT_TRUE(nbx::is_total_lamination(Family::of({"**"})));
  EXPECT_FALSE(nbx::is_total_lamination(Family::of({"00", "01"})));
}

// A partition of H^3 with a joker in every coordinate somewhere.
TEST(TotalLamination, PinwheelIsPartitionButNotLamination) {
  auto pin = Family::of({"000", "111", "*01", "1*0", "01*"});
  ASSERT_TRUE(nbx::is_partition(pin));
  EXPECT_EQ(nbx::is_lamination(pin), std::nullopt);
  EXPECT_FALSE(nbx::is_total_lamination(pin));
}

TEST(ReduceToTrivial, CanonicalTrace) {
  auto trace = nbx::reduce_to_trivial(kC3);
  ASSERT_EQ(trace.size(), 4u);
  EXPECT_EQ(trace[1], Family::of({"00*", "01*", "1**"}));
  EXPECT_EQ(trace[2], Family::of({"0**", "1**"}));
  EXPECT_EQ(trace[3], Family::of({"***"}));
}

TEST(ReduceToTrivial, SmallCases) {
  auto t1 = nbx::reduce_to_trivial(Family::of({"0", "1"}));
  ASSERT_EQ(t1.size(), 2u);
  EXPECT_EQ(t1.back(), Family::of({"*"}));

  auto tg = nbx::reduce_to_trivial(kFigG);
  EXPECT_EQ(tg.size(), 4u);  // three merges
  EXPECT_EQ(tg.back(), Family::of({"***"}));

  EXPECT_THROW(nbx::reduce_to_trivial(Family::of({"00", "01"})), std::invalid_argument);
}

TEST(ReduceToTrivial, ReportsMissingTwin) {
  // A 3-neighborly partition of H^3 whose minimum-joker member 000 has no twin.
  auto f = Family::of({"000", "111", "*01", "1*0", "01*"});
  ASSERT_TRUE(nbx::is_partition(f));
  EXPECT_THROW(nbx::reduce_to_trivial(f), std::domain_error);
}

TEST(SgnSum, Examples) {
  EXPECT_EQ(nbx::sgn_sum(Family::of({"00", "01", "1*"})), 0);
  EXPECT_EQ(nbx::sgn_sum(Family::of({"00", "01", "10", "11"})), 0);
  EXPECT_EQ(nbx::sgn_sum(kFigF), 0);
  EXPECT_THROW(nbx::sgn_sum(Family::of({"00", "01"})), std::invalid_argument);
}

TEST(MaxJoker, Examples) {
  EXPECT_TRUE(nbx::max_joker_ok(kC3, 1));
  EXPECT_FALSE(nbx::max_joker_ok(Family::of({"***"}), 1));
  auto bin = Family::of({"010", "111", "000"});
  for (std::size_t k = 1; k <= 3; ++k) EXPECT_TRUE(nbx::max_joker_ok(bin, k));
}

TEST(Diameter, Examples) {
  std::vector<TernaryString> one{TernaryString::parse("0101")};
  EXPECT_EQ(nbx::diameter(one), 0u);
  std::vector<TernaryString> two{TernaryString::parse("000"), TernaryString::parse("111")};
  EXPECT_EQ(nbx::diameter(two), 3u);
  for (std::size_t d = 3; d <= 9; ++d)
    for (std::size_t t = 1; 2 * t < d; ++t) {
      auto ball = nbx::ball_family(2 * t, d);
      EXPECT_EQ(nbx::diameter(ball.members()), 2 * t) << d << " " << t;
    }
  EXPECT_THROW(nbx::diameter(std::vector<TernaryString>{}), std::invalid_argument);
}

// Random partitions built by splitting jokers, half of them restricted to
// pairwise distance <= 2.
TEST(FamilyProperties, RandomSplitPartitions) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 400; ++trial) {
    int d = 1 + static_cast<int>(rng() % 8);
    int limit = trial % 2 == 0 ? 2 : 0;
    int steps = 1 + static_cast<int>(rng() % 40);
    auto f = from_strings(oracle::random_split_partition(d, rng, steps, limit));
    ASSERT_TRUE(nbx::is_partition(f));
    if (f.size() >= 2) {
      ASSERT_EQ(nbx::sgn_sum(f), 0) << nbx::format_nbx(f);
    }
    ASSERT_TRUE(nbx::is_total_lamination(f));
    ASSERT_TRUE(nbx::is_lamination(f).has_value());
    auto rep = nbx::verify_neighborly(f, static_cast<std::size_t>(d));
    if (f.size() >= 2 && rep.max_distance <= 2u) {
      auto trace = nbx::reduce_to_trivial(f);
      for (std::size_t i = 1; i < trace.size(); ++i) {
        ASSERT_EQ(trace[i].size() + 1, trace[i - 1].size());
        ASSERT_TRUE(nbx::is_partition(trace[i]));
      }
      ASSERT_EQ(trace.back().size(), 1u);
    }
  }
}

TEST(FamilyProperties, NeighborlyImpliesVolumeAtMostCube) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t d = 1 + rng() % 6;
    std::size_t k = 1 + rng() % d;
    std::vector<TernaryString> xs;
    for (int attempt = 0; attempt < 40; ++attempt) {
      std::string s;
      for (std::size_t i = 0; i < d; ++i) s += "01*"[rng() % 3];
      auto x = TernaryString::parse(s);
      bool ok = true;
      for (const auto& y : xs) {
        auto dist = distance(x, y);
        ok = ok && dist >= 1 && dist <= k;
      }
      if (ok) xs.push_back(x);
    }
    Family f(d, xs);
    ASSERT_TRUE(nbx::verify_neighborly(f, k).is_valid);
    ASSERT_LE(nbx::volume(f), nbx::pow2(d));
    if (nbx::is_lamination(f) || nbx::is_total_lamination(f)) {
      ASSERT_TRUE(nbx::is_partition(f));
    }
  }
}
