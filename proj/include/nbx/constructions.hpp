#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nbx/families.hpp"
#include "nbx/family.hpp"
#include "nbx/integer.hpp"
#include "nbx/ternary_string.hpp"

namespace nbx {

// C_1 = {0,1}; C_d = 0 C_{d-1} together with 1 *^{d-1}. A 1-neighborly
// partition of size d+1.
inline Family canonical(std::size_t d) {
  if (d == 0) throw std::invalid_argument("canonical family needs d >= 1");
  std::vector<TernaryString> xs{TernaryString::parse("0"), TernaryString::parse("1")};
  for (std::size_t n = 2; n <= d; ++n) {
    std::vector<TernaryString> next;
    next.reserve(xs.size() + 1);
    for (const auto& x : xs) next.push_back(concat(TernaryString::parse("0"), x));
    next.push_back(concat(TernaryString::parse("1"), TernaryString(n - 1)));
    xs = std::move(next);
  }
  return Family(d, std::move(xs));
}

// All binary strings within Hamming distance floor(k/2) of 0^d.
inline Family ball_family(std::size_t k, std::size_t d) {
  if (k < 1 || k + 1 > d)
    throw std::invalid_argument("ball family needs 1 <= k <= d-1");
  std::size_t radius = k / 2;
  std::vector<TernaryString> xs;
  TernaryString origin(d);
  for (std::size_t i = 0; i < d; ++i) origin = origin.with(i, Symbol::Zero);
  for (std::size_t r = 0; r <= radius; ++r) {
    // ones placed on combinations of r coordinates, lexicographic
    std::vector<std::size_t> idx(r);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      TernaryString x = origin;
      for (auto i : idx) x = x.with(i, Symbol::One);
      xs.push_back(x);
      std::size_t p = r;
      while (p > 0 && idx[p - 1] == d - r + p - 1) --p;
      if (p == 0) break;
      ++idx[p - 1];
      for (std::size_t q = p; q < r; ++q) idx[q] = idx[q - 1] + 1;
    }
  }
  return Family(d, std::move(xs));
}

// All concatenations uv, u from f (outer) and v from g (inner).
inline Family product(const Family& f, const Family& g) {
  std::vector<TernaryString> xs;
  xs.reserve(f.size() * g.size());
  for (const auto& u : f)
    for (const auto& v : g) xs.push_back(concat(u, v));
  return Family(f.dimension() + g.dimension(), std::move(xs));
}

// Family of one all-joker string of length m; neutral for product up to
// appending jokers.
inline Family jokers(std::size_t m) { return Family(m, {TernaryString(m)}); }

// The (d-1)-neighborly partition of size 3 * 2^(d-2): binary strings starting
// with 0, plus strings 1 * x_3..x_d with x binary.
inline Family extremal_dminus1(std::size_t d) {
  if (d < 2) throw std::invalid_argument("extremal family needs d >= 2");
  if (d > 30) throw std::invalid_argument("extremal family limited to d <= 30");
  std::vector<TernaryString> xs;
  const std::uint64_t half = std::uint64_t{1} << (d - 1);
  for (std::uint64_t tail = 0; tail < half; ++tail) {
    TernaryString x(d);
    x = x.with(0, Symbol::Zero);
    for (std::size_t i = 1; i < d; ++i)
      x = x.with(i, ((tail >> (d - 1 - i)) & 1U) ? Symbol::One : Symbol::Zero);
    xs.push_back(x);
  }
  const std::uint64_t quarter = std::uint64_t{1} << (d - 2);
  for (std::uint64_t tail = 0; tail < quarter; ++tail) {
    TernaryString x(d);
    x = x.with(0, Symbol::One);
    for (std::size_t i = 2; i < d; ++i)
      x = x.with(i, ((tail >> (d - 1 - i)) & 1U) ? Symbol::One : Symbol::Zero);
    xs.push_back(x);
  }
  return Family(d, std::move(xs));
}

// ---- fragmented construction ----------------------------------------------

struct FragmentPlan {
  std::size_t k = 0;
  std::size_t d = 0;
  std::size_t m = 0;
  std::vector<std::size_t> a;  // block lengths, one per fragment

  friend bool operator==(const FragmentPlan&, const FragmentPlan&) = default;
};

inline std::size_t binom_small(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  return to_u64(binomial(static_cast<std::int64_t>(n), static_cast<std::int64_t>(k)));
}

// Length of the selector prefix: C(m,k) - 1.
inline std::size_t prefix_length(std::size_t m, std::size_t k) { return binom_small(m, k) - 1; }

inline void validate(const FragmentPlan& p) {
  auto fail = [](const std::string& why) {
    throw std::invalid_argument("invalid fragment plan: " + why);
  };
  if (p.k < 1 || p.k > p.m) fail("need 1 <= k <= m");
  if (p.a.size() != p.m) fail("need exactly m block lengths");
  if (std::any_of(p.a.begin(), p.a.end(), [](std::size_t x) { return x == 0; }))
    fail("block lengths must be positive");
  if (p.m > 64) fail("m too large");
  std::size_t sum = std::accumulate(p.a.begin(), p.a.end(), std::size_t{0});
  if (sum + prefix_length(p.m, p.k) != p.d) fail("need sum(a) = d - C(m,k) + 1");
}

// k-subsets of {0..m-1} in colexicographic order.
inline std::vector<std::vector<std::size_t>> colex_subsets(std::size_t m, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > m) return out;
  while (true) {
    out.push_back(idx);
    // colex successor: bump the first index that can move without hitting its right neighbour
    std::size_t p = 0;
    while (p < k && idx[p] + 1 == (p + 1 < k ? idx[p + 1] : m)) ++p;
    if (p == k) break;
    ++idx[p];
    for (std::size_t q = 0; q < p; ++q) idx[q] = q;
  }
  return out;
}

// One subfamily per selected block set B, each prefixed with its selector.
inline std::vector<Family> fragmented_parts(const FragmentPlan& plan) {
  validate(plan);
  auto subsets = colex_subsets(plan.m, plan.k);
  std::size_t plen = prefix_length(plan.m, plan.k);
  Family selectors = plen == 0 ? Family(0, {TernaryString()}) : canonical(plen);

  std::vector<Family> parts;
  parts.reserve(subsets.size());
  for (std::size_t b = 0; b < subsets.size(); ++b) {
    const auto& set = subsets[b];
    Family r = Family(0, {TernaryString()});
    for (std::size_t i = 0; i < plan.m; ++i) {
      bool chosen = std::find(set.begin(), set.end(), i) != set.end();
      r = product(r, chosen ? canonical(plan.a[i]) : jokers(plan.a[i]));
    }
    parts.push_back(product(Family(plen, {selectors[b]}), r));
  }
  return parts;
}

inline Family fragmented(const FragmentPlan& plan) {
  std::vector<TernaryString> xs;
  for (const auto& part : fragmented_parts(plan))
    xs.insert(xs.end(), part.begin(), part.end());
  return Family(plan.d, std::move(xs));
}

// Sum over k-subsets B of prod_{i in B} (a_i + 1): the elementary symmetric
// polynomial e_k evaluated at a + 1.
inline Integer fragmented_size(std::size_t k, const std::vector<std::size_t>& a) {
  std::vector<Integer> e(k + 1, 0);
  e[0] = 1;
  for (std::size_t ai : a)
    for (std::size_t j = k; j >= 1; --j) e[j] += e[j - 1] * (ai + 1);
  return e[k];
}

struct MValueResult {
  Integer value = 0;
  // One plan for m(k,d); one plan per factor for the product optimum.
  std::vector<FragmentPlan> parts;
  // Set when some unbalanced block split beat the balanced one for its m.
  bool unbalanced_better = false;
  // Whether every composition was scanned (false if the cap cut the scan short).
  bool exhaustive = true;
};

struct MValueOptions {
  // Maximum number of non-increasing compositions scanned per m.
  std::size_t composition_cap = 200000;
};

namespace detail {

inline std::vector<std::size_t> balanced_split(std::size_t total, std::size_t m) {
  std::vector<std::size_t> a(m, total / m);
  for (std::size_t i = 0; i < total % m; ++i) ++a[i];
  return a;
}

// Visits non-increasing compositions of `total` into `m` positive parts in
// lexicographically decreasing order. Returns false if the cap was hit.
template <typename Visit>
bool for_each_composition(std::size_t total, std::size_t m, std::size_t cap, Visit&& visit) {
  std::vector<std::size_t> a(m, 0);
  std::size_t count = 0;
  bool complete = true;
  auto rec = [&](auto&& self, std::size_t pos, std::size_t remaining, std::size_t maxpart) -> void {
    if (!complete) return;
    if (pos + 1 == m) {
      if (remaining >= 1 && remaining <= maxpart) {
        a[pos] = remaining;
        if (count++ >= cap) { complete = false; return; }
        visit(a);
      }
      return;
    }
    std::size_t slots = m - pos - 1;
    std::size_t hi = std::min(maxpart, remaining - slots);
    for (std::size_t v = hi; v >= 1; --v) {
      if (v * (slots + 1) < remaining) break;  // remaining parts cannot absorb the rest
      a[pos] = v;
      self(self, pos + 1, remaining - v, v);
      if (!complete) return;
    }
  };
  if (m >= 1 && total >= m) rec(rec, 0, total, total);
  return complete;
}

}  // namespace detail

// Best size of the fragmented construction over all feasible m and block
// splits. Ties go to the smaller m, then to the lexicographically largest a.
inline MValueResult m_value(std::size_t k, std::size_t d, const MValueOptions& opt = {}) {
  if (k < 1 || k > d) throw std::invalid_argument("m_value needs 1 <= k <= d");
  MValueResult best;
  bool found = false;
  for (std::size_t m = k; m <= d; ++m) {
    std::size_t c = binom_small(m, k);
    if (c + m - 1 > d) break;
    std::size_t total = d - c + 1;
    auto balanced = detail::balanced_split(total, m);
    Integer balanced_value = fragmented_size(k, balanced);

    Integer m_best = balanced_value;
    std::vector<std::size_t> m_best_a = balanced;
    bool complete = detail::for_each_composition(total, m, opt.composition_cap,
                                                 [&](const std::vector<std::size_t>& a) {
      Integer v = fragmented_size(k, a);
      if (v > m_best || (v == m_best && a > m_best_a)) {
        m_best = v;
        m_best_a = a;
      }
    });
    if (!complete) best.exhaustive = false;
    if (m_best > balanced_value) best.unbalanced_better = true;

    if (!found || m_best > best.value) {
      found = true;
      best.value = m_best;
      best.parts = {FragmentPlan{k, d, m, m_best_a}};
    }
  }
  return best;
}

// Table of m_value and product optima for all 1 <= k <= d <= dmax.
class MTable {
 public:
  explicit MTable(std::size_t dmax, const MValueOptions& opt = {}) : dmax_(dmax) {
    m_.resize(dmax + 1);
    bar_.resize(dmax + 1);
    for (std::size_t d = 1; d <= dmax; ++d) {
      m_[d].resize(d + 1);
      bar_[d].resize(d + 1);
      for (std::size_t k = 1; k <= d; ++k) m_[d][k] = m_value(k, d, opt);
    }
    // bar(k,d) = max(m(k,d), max bar(k1,d1) * m(k-k1, d-d1)); first strict
    // improvement wins, scanning k1 then d1 ascending.
    for (std::size_t d = 1; d <= dmax; ++d) {
      for (std::size_t k = 1; k <= d; ++k) {
        MValueResult best = m_[d][k];
        best.unbalanced_better = false;
        for (std::size_t k1 = 1; k1 < k; ++k1) {
          std::size_t k2 = k - k1;
          for (std::size_t d1 = k1; d1 + k2 <= d; ++d1) {
            std::size_t d2 = d - d1;
            Integer v = bar_[d1][k1].value * m_[d2][k2].value;
            if (v > best.value) {
              best.value = v;
              best.parts = bar_[d1][k1].parts;
              best.parts.push_back(m_[d2][k2].parts.front());
            }
          }
        }
        bar_[d][k] = std::move(best);
      }
    }
  }

  std::size_t dmax() const { return dmax_; }

  const MValueResult& m(std::size_t k, std::size_t d) const {
    check(k, d);
    return m_[d][k];
  }

  const MValueResult& mbar(std::size_t k, std::size_t d) const {
    check(k, d);
    return bar_[d][k];
  }

 private:
  void check(std::size_t k, std::size_t d) const {
    if (k < 1 || k > d || d > dmax_)
      throw std::invalid_argument("(k,d) outside table: need 1 <= k <= d <= " +
                                  std::to_string(dmax_));
  }

  std::size_t dmax_;
  std::vector<std::vector<MValueResult>> m_;
  std::vector<std::vector<MValueResult>> bar_;
};

// Best product of fragmented constructions over splits k = k_1+..+k_s,
// d = d_1+..+d_s with 1 <= k_i <= d_i.
inline MValueResult mbar_value(std::size_t k, std::size_t d, const MValueOptions& opt = {}) {
  if (k < 1 || k > d) throw std::invalid_argument("mbar_value needs 1 <= k <= d");
  return MTable(d, opt).mbar(k, d);
}

inline Family realize(const MValueResult& r) {
  if (r.parts.empty()) throw std::invalid_argument("empty witness");
  Family f = fragmented(r.parts.front());
  std::size_t k = r.parts.front().k;
  for (std::size_t i = 1; i < r.parts.size(); ++i) {
    f = product(f, fragmented(r.parts[i]));
    k += r.parts[i].k;
  }
  if (Integer(f.size()) != r.value)
    throw std::logic_error("realized family size differs from witness value");
  if (!verify_neighborly(f, k).is_valid)
    throw std::logic_error("realized family is not " + std::to_string(k) + "-neighborly");
  return f;
}

// A verified k-neighborly family of size mbar_value(k,d).
inline Family realize_mbar(std::size_t k, std::size_t d, const MValueOptions& opt = {}) {
  return realize(mbar_value(k, d, opt));
}

}  // namespace nbx
