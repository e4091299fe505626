#include <gtest/gtest.h>

#include <random>
#include <set>

#include "nbx/ternary_string.hpp"
#include "oracles.hpp"

using nbx::Symbol;
using nbx::TernaryString;

namespace {

TernaryString T(const char* s) { return TernaryString::parse(s); }

}  // namespace

TEST(TernaryString, ParseSplitsIntoZerosAndOnes) {
  auto x = T("01*");
  EXPECT_EQ(x.length(), 3u);
  EXPECT_EQ(x.at(0), Symbol::Zero);
  EXPECT_EQ(x.at(1), Symbol::One);
  EXPECT_EQ(x.at(2), Symbol::Joker);
  EXPECT_EQ(x.zero_count(), 1u);
  EXPECT_EQ(x.one_count(), 1u);
  EXPECT_EQ(nbx::format(T("1**")), "1**");
}

TEST(TernaryString, ParseRejectsBadInput) {
  EXPECT_THROW(T("01x"), std::invalid_argument);
  EXPECT_THROW(nbx::parse(""), std::invalid_argument);
}

TEST(TernaryString, Distance) {
  EXPECT_EQ(distance(T("0*1"), T("0*1")), 0u);
  EXPECT_EQ(distance(T("000"), T("111")), 3u);
  EXPECT_EQ(distance(T("01*"), T("10*")), 2u);
  EXPECT_THROW(distance(T("01"), T("010")), std::invalid_argument);
}

TEST(TernaryString, Hamming) {
  EXPECT_EQ(nbx::hamming(T("00"), T("00")), 0u);
  EXPECT_EQ(nbx::hamming(T("01"), T("10")), 2u);
  EXPECT_EQ(nbx::hamming(T("0011"), T("0101")), 2u);
  EXPECT_THROW(nbx::hamming(T("0*"), T("01")), std::invalid_argument);
}

TEST(TernaryString, JokersPropAndSign) {
  EXPECT_EQ(T("01*").joker_count(), 1u);
  EXPECT_EQ(T("***").joker_count(), 3u);
  EXPECT_EQ(T("000").joker_count(), 0u);

  EXPECT_EQ(T("0*1").prop_set(), (std::vector<std::size_t>{0, 2}));
  EXPECT_TRUE(T("***").prop_set().empty());
  EXPECT_EQ(T("10").prop_set(), (std::vector<std::size_t>{0, 1}));

  EXPECT_EQ(T("000").sign(), 1);
  EXPECT_EQ(T("01*").sign(), -1);
  EXPECT_EQ(T("11*").sign(), 1);
}

TEST(TernaryString, TwinPairs) {
  EXPECT_TRUE(is_twin_pair(T("000"), T("001")));
  EXPECT_EQ(nbx::twin_union(T("000"), T("001")), T("00*"));
  EXPECT_TRUE(is_twin_pair(T("00*"), T("01*")));
  EXPECT_EQ(nbx::twin_union(T("00*"), T("01*")), T("0**"));
  EXPECT_FALSE(is_twin_pair(T("00"), T("11")));
  EXPECT_FALSE(is_twin_pair(T("0*"), T("10")));  // jokers must match
  EXPECT_FALSE(is_twin_pair(T("01"), T("01")));
  EXPECT_THROW(nbx::twin_union(T("00"), T("11")), std::invalid_argument);
}

TEST(TernaryString, ConcatAndDelete) {
  EXPECT_EQ(nbx::concat(T("0"), T("1*")), T("01*"));
  EXPECT_EQ(nbx::concat(T("00"), T("**")), T("00**"));
  EXPECT_EQ(nbx::concat(T("1**"), T("0")), T("1**0"));
  EXPECT_EQ(nbx::concat(TernaryString(), T("10")), T("10"));

  EXPECT_EQ(nbx::delete_coord(T("001"), 2), T("00"));
  EXPECT_EQ(nbx::delete_coord(T("*11"), 0), T("11"));
  EXPECT_EQ(nbx::delete_coord(T("0*1"), 1), T("01"));
  EXPECT_THROW(nbx::delete_coord(T("0*1"), 3), std::out_of_range);
}

TEST(TernaryString, SubcubeContains) {
  EXPECT_TRUE(subcube_contains(T("0**"), T("011")));
  EXPECT_FALSE(subcube_contains(T("0**"), T("111")));
  EXPECT_TRUE(subcube_contains(T("01"), T("01")));
  EXPECT_THROW(subcube_contains(T("0**"), T("01")), std::invalid_argument);
}

TEST(TernaryString, WideStringsUseSeveralWords) {
  std::string a(150, '*'), b(150, '*');
  a[3] = '0';
  b[3] = '1';
  a[140] = '1';
  b[140] = '0';
  a[70] = '1';
  b[70] = '1';
  auto x = T(a.c_str()), y = T(b.c_str());
  EXPECT_EQ(distance(x, y), 2u);
  EXPECT_EQ(x.joker_count(), 147u);
  EXPECT_EQ(x.str(), a);
  EXPECT_EQ(nbx::delete_coord(x, 3).str(), a.substr(0, 3) + a.substr(4));
  EXPECT_THROW(TernaryString(300), std::length_error);
}

// Every pair of strings of length <= 4 against the std::string oracle, and
// the distance/subcube identities by full enumeration up to d = 6.
TEST(TernaryStringProperties, DistanceMatchesOracleAndIdentities) {
  for (int d = 1; d <= 6; ++d) {
    auto all = oracle::all_strings(d);
    std::vector<TernaryString> xs;
    std::vector<std::vector<std::string>> cubes;
    for (auto& s : all) {
      xs.push_back(T(s.c_str()));
      cubes.push_back(oracle::subcube(s));
    }
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (std::size_t j = 0; j < all.size(); ++j) {
        const auto& x = xs[i];
        const auto& y = xs[j];
        std::size_t dist = distance(x, y);
        ASSERT_EQ(dist, static_cast<std::size_t>(oracle::str_distance(all[i], all[j])));
        ASSERT_EQ(dist, distance(y, x));
        ASSERT_LE(dist, std::min(x.fixed_count(), y.fixed_count()));
        // For binary u in H(x), v in H(y): h(u,v) <= d(x,y) + j(x) + j(y);
        // and d(x,y) >= 1 means the subcubes share no vertex.
        std::size_t cap = dist + x.joker_count() + y.joker_count();
        for (const auto& u : cubes[i]) {
          for (const auto& v : cubes[j]) {
            int h = oracle::str_distance(u, v);
            ASSERT_LE(static_cast<std::size_t>(h), cap) << all[i] << " " << all[j];
            if (dist >= 1) {
              ASSERT_NE(u, v) << all[i] << " " << all[j];
            }
          }
        }
      }
    }
  }
}

TEST(TernaryStringProperties, SubcubeMembershipMatchesEnumeration) {
  for (int d = 1; d <= 5; ++d) {
    auto all = oracle::all_strings(d);
    auto bins = oracle::subcube(std::string(d, '*'));
    for (const auto& s : all) {
      auto cube = oracle::subcube(s);
      std::set<std::string> in(cube.begin(), cube.end());
      auto x = T(s.c_str());
      for (const auto& b : bins) ASSERT_EQ(subcube_contains(x, T(b.c_str())), in.count(b) == 1);
    }
  }
}

TEST(TernaryStringProperties, TwinUnionCoversBothSubcubes) {
  for (int d = 1; d <= 6; ++d) {
    auto all = oracle::all_strings(d);
    std::size_t twins = 0;
    for (const auto& a : all) {
      auto x = T(a.c_str());
      for (const auto& b : all) {
        auto y = T(b.c_str());
        if (!is_twin_pair(x, y)) continue;
        ++twins;
        auto z = nbx::twin_union(x, y);
        ASSERT_EQ(z.joker_count(), x.joker_count() + 1);
        auto cx = oracle::subcube(a), cy = oracle::subcube(b), cz = oracle::subcube(z.str());
        std::set<std::string> u(cx.begin(), cx.end());
        u.insert(cy.begin(), cy.end());
        ASSERT_EQ(u, std::set<std::string>(cz.begin(), cz.end()));
      }
    }
    // each twin pair: pick a string z with >= 1 joker and a joker position,
    // then order the two halves; count = 2 * sum_j j C(d,j) 2^(d-j) / 1
    long long expect = 0;
    for (int j = 1; j <= d; ++j) expect += 2LL * j * oracle::binom(d, j) * (1LL << (d - j));
    EXPECT_EQ(static_cast<long long>(twins), expect);
  }
}

TEST(TernaryStringProperties, SignFlipsUnderSingleToggle) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    int d = 1 + static_cast<int>(rng() % 12);
    std::string s;
    for (int i = 0; i < d; ++i) s += "01*"[rng() % 3];
    int c = static_cast<int>(rng() % d);
    if (s[c] == '*') continue;
    std::string t = s;
    t[c] = s[c] == '0' ? '1' : '0';
    ASSERT_EQ(T(s.c_str()).sign(), -T(t.c_str()).sign());
  }
}

TEST(TernaryStringProperties, FormatParseRoundTrip) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    int d = 1 + static_cast<int>(rng() % 200);
    std::string s;
    for (int i = 0; i < d; ++i) s += "01*"[rng() % 3];
    ASSERT_EQ(nbx::format(nbx::parse(s)), s);
  }
}
