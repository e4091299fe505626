#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nbx/constructions.hpp"
#include "nbx/integer.hpp"

namespace nbx {

namespace detail {

inline Integer binom(std::size_t n, std::size_t k) {
  return binomial(static_cast<std::int64_t>(n), static_cast<std::int64_t>(k));
}

// sum_{j=0}^{r} C(d, j)
inline Integer ball_volume(std::size_t d, std::size_t r) {
  Integer s = 0;
  for (std::size_t j = 0; j <= r && j <= d; ++j) s += binom(d, j);
  return s;
}

inline void require_kd(std::size_t k, std::size_t d) {
  if (k < 1 || k > d)
    throw std::invalid_argument("need 1 <= k <= d, got k=" + std::to_string(k) +
                                " d=" + std::to_string(d));
}

}  // namespace detail

// Maximum size of a subset of H^d with diameter at most s (Kleitman for even
// s, Bezrukov for odd s).
inline Integer kappa(std::size_t s, std::size_t d) {
  if (d < 1) throw std::invalid_argument("kappa needs d >= 1");
  if (s >= d) return pow2(d);
  if (s % 2 == 0) return detail::ball_volume(d, s / 2);
  return detail::binom(d - 1, s / 2) + detail::ball_volume(d, s / 2);
}

// prod_{i<k} (floor((d+i)/k) + 1)
inline Integer alon_lower(std::size_t k, std::size_t d) {
  detail::require_kd(k, d);
  Integer p = 1;
  for (std::size_t i = 0; i < k; ++i) p *= (d + i) / k + 1;
  return p;
}

// sum_{i<=k} 2^i C(d,i)
inline Integer alon_upper(std::size_t k, std::size_t d) {
  detail::require_kd(k, d);
  Integer s = 0;
  for (std::size_t i = 0; i <= k; ++i) s += pow2(i) * detail::binom(d, i);
  return s;
}

// 1 + sum_{1<=i<=k} 2^(i-1) C(d,i)
inline Integer huang_sudakov_upper(std::size_t k, std::size_t d) {
  detail::require_kd(k, d);
  Integer s = 1;
  for (std::size_t i = 1; i <= k; ++i) s += pow2(i - 1) * detail::binom(d, i);
  return s;
}

// Size of the Hamming ball of radius floor(k/2): a valid k-neighborly family.
inline Integer ball_lower(std::size_t k, std::size_t d) {
  detail::require_kd(k, d);
  return detail::ball_volume(d, k / 2);
}

inline bool thm_t_valid(std::size_t k, std::size_t d, std::size_t t) {
  return t >= 1 && k + 2 * t - 2 <= d - 1 && d >= 1;
}

// 2^(d-t) + sum_{i <= ceil((k+2t-2)/2)} C(d,i), for t >= 1 with k+2t-2 <= d-1.
inline Integer thm_upper(std::size_t k, std::size_t d, std::size_t t) {
  detail::require_kd(k, d);
  if (!thm_t_valid(k, d, t))
    throw std::domain_error("t=" + std::to_string(t) + " invalid for k=" + std::to_string(k) +
                            " d=" + std::to_string(d));
  std::size_t s = k + 2 * t - 2;
  return pow2(d - t) + detail::ball_volume(d, (s + 1) / 2);
}

struct ThmUpperBest {
  Integer value;
  std::size_t t;
};

// Minimum over valid t (smallest t on ties). Empty when k = d.
inline std::optional<ThmUpperBest> thm_upper_best(std::size_t k, std::size_t d) {
  detail::require_kd(k, d);
  std::optional<ThmUpperBest> best;
  for (std::size_t t = 1; thm_t_valid(k, d, t); ++t) {
    Integer v = thm_upper(k, d, t);
    if (!best || v < best->value) best = ThmUpperBest{v, t};
  }
  return best;
}

struct GreedyProfile {
  std::vector<Integer> a;  // a_0 .. a_{d-1}
  Integer total = 0;
};

// Lexicographically largest solution of
//   maximize sum f_i  s.t.  sum_{l<=i} 2^l f_l <= kappa(k+2i, d)  for i < d.
inline GreedyProfile greedy_kappa_upper(std::size_t k, std::size_t d) {
  detail::require_kd(k, d);
  GreedyProfile p;
  p.a.assign(d, 0);
  Integer used = 0;
  for (std::size_t i = 0; i < d; ++i) {
    Integer room = kappa(k + 2 * i, d) - used;
    Integer ai = room > 0 ? Integer(room >> static_cast<unsigned>(i)) : Integer(0);
    p.a[i] = ai;
    used += ai << static_cast<unsigned>(i);
    p.total += ai;
  }
  return p;
}

// Closed-form bound from the lexicographically maximal profile, one
// expression per parity case of (k, d), with the exact rounding
// round_below(x) = ceil(x - 1). Empty when k = d.
inline std::optional<Integer> refined_upper(std::size_t k, std::size_t d) {
  detail::require_kd(k, d);
  if (k == d) return std::nullopt;
  using detail::binom;
  const Rational half(1, 2);
  const std::size_t h = (d - k) / 2;  // floor((d-k)/2)
  const std::size_t kh = k / 2;       // floor(k/2)
  Integer n = 0;

  if (k % 2 == 0 && d % 2 == 0) {
    n += detail::ball_volume(d, kh);
    for (std::size_t i = 1; i + 1 <= h; ++i)
      n += round_below(Rational(binom(d, kh + i)) / Rational(pow2(i)) + half);
    n += round_below(Rational(pow2((d + k) / 2 - 1)) +
                     Rational(binom(d, d / 2)) / Rational(pow2(h + 1)) + half);
  } else if (k % 2 == 0) {  // d odd
    n += pow2(d - h - 2);
    n += detail::ball_volume(d, kh);
    for (std::size_t i = 1; i <= h; ++i)
      n += round_below(Rational(binom(d, kh + i)) / Rational(pow2(i)) + half);
  } else if (d % 2 == 0) {  // k odd
    n += pow2(d - h - 2);
    n += binom(d - 1, kh) + detail::ball_volume(d, kh);
    for (std::size_t i = 1; i <= h; ++i)
      n += round_below(Rational(binom(d - 1, kh + i)) / Rational(pow2(i - 1)) + half);
  } else {  // both odd, so d - k >= 2 is even
    n += binom(d - 1, kh) + detail::ball_volume(d, kh);
    for (std::size_t i = 1; i + 1 <= h; ++i)
      n += round_below(Rational(binom(d - 1, kh + i)) / Rational(pow2(i - 1)) + half);
    n += round_below(Rational(pow2((d + k) / 2 - 1)) +
                     Rational(binom(d - 1, (d - 1) / 2)) / Rational(pow2(h)) + half);
  }
  return n;
}

// ---- aggregation ------------------------------------------------------------

struct MethodValue {
  Integer value;
  std::string method;
  friend bool operator==(const MethodValue&, const MethodValue&) = default;
};

struct BoundsEntry {
  std::size_t k = 0;
  std::size_t d = 0;
  MethodValue lower;
  MethodValue upper;
  bool exact = false;
  // Every method evaluated, in evaluation order.
  std::vector<MethodValue> lower_methods;
  std::vector<MethodValue> upper_methods;
};

// Known exact values: n(1,d) = d+1, n(d,d) = 2^d, n(d-1,d) = 3 * 2^(d-2).
inline std::optional<MethodValue> exact_special(std::size_t k, std::size_t d) {
  detail::require_kd(k, d);
  if (k == d) return MethodValue{pow2(d), "exact:n(d,d)"};
  if (k == 1) return MethodValue{Integer(d + 1), "exact:n(1,d)"};
  if (k + 1 == d) return MethodValue{3 * pow2(d - 2), "exact:n(d-1,d)"};
  return std::nullopt;
}

namespace detail {

inline MethodValue pick(const std::vector<MethodValue>& vs, bool want_max) {
  MethodValue best = vs.front();
  for (const auto& v : vs)
    if (want_max ? v.value > best.value : v.value < best.value) best = v;
  return best;
}

inline BoundsEntry best_bounds(std::size_t k, std::size_t d, const MTable& mt) {
  require_kd(k, d);
  BoundsEntry e;
  e.k = k;
  e.d = d;
  auto special = exact_special(k, d);
  if (special) {
    e.lower_methods.push_back(*special);
    e.upper_methods.push_back(*special);
  }

  e.lower_methods.push_back({alon_lower(k, d), "alon"});
  if (k + 1 <= d) e.lower_methods.push_back({ball_lower(k, d), "ball"});
  e.lower_methods.push_back({mt.m(k, d).value, "m"});
  e.lower_methods.push_back({mt.mbar(k, d).value, "mbar"});

  e.upper_methods.push_back({pow2(d), "trivial"});
  e.upper_methods.push_back({alon_upper(k, d), "alon"});
  e.upper_methods.push_back({huang_sudakov_upper(k, d), "huang-sudakov"});
  if (auto t = thm_upper_best(k, d))
    e.upper_methods.push_back({t->value, "thm(t=" + std::to_string(t->t) + ")"});
  e.upper_methods.push_back({greedy_kappa_upper(k, d).total, "greedy-kappa"});
  if (auto r = refined_upper(k, d)) e.upper_methods.push_back({*r, "refined"});

  e.lower = pick(e.lower_methods, true);
  e.upper = pick(e.upper_methods, false);
  e.exact = e.lower.value == e.upper.value;
  return e;
}

}  // namespace detail

inline BoundsEntry best_bounds(std::size_t k, std::size_t d) {
  detail::require_kd(k, d);
  MTable mt(d);
  return detail::best_bounds(k, d, mt);
}

// Entries for all 1 <= k <= min(d, kmax), 1 <= d <= dmax, ordered by d then k.
inline std::vector<BoundsEntry> bounds_table(std::size_t kmax, std::size_t dmax) {
  std::vector<BoundsEntry> out;
  if (dmax == 0) return out;
  MTable mt(dmax);
  for (std::size_t d = 1; d <= dmax; ++d)
    for (std::size_t k = 1; k <= std::min(d, kmax); ++k)
      out.push_back(detail::best_bounds(k, d, mt));
  return out;
}

// ---- Pascal-triangle audit --------------------------------------------------

struct PascalFinding {
  std::size_t k = 0;
  std::size_t d = 0;
  Integer lhs;  // lower(k, d)
  Integer rhs;  // upper(k-1, d-1) + upper(k, d-1)
  Integer slack;  // rhs - lhs
  bool violation = false;
};

// Checks lower(k,d) <= upper(k-1,d-1) + upper(k,d-1) for every 2 <= k <= d in
// the table whose predecessors lie inside the table's (k,d) bounding box.
// For k = d the missing cell n(d, d-1) is taken as 2^(d-1): with k >= d every
// family of binary strings of length d-1 is k-neighborly.
inline std::vector<PascalFinding> pascal_audit(const std::vector<BoundsEntry>& table) {
  std::vector<PascalFinding> out;
  if (table.empty()) return out;
  std::map<std::pair<std::size_t, std::size_t>, const BoundsEntry*> cells;
  std::size_t kmin = SIZE_MAX, kmax = 0, dmin = SIZE_MAX, dmax = 0;
  for (const auto& e : table) {
    cells[{e.k, e.d}] = &e;
    kmin = std::min(kmin, e.k);
    kmax = std::max(kmax, e.k);
    dmin = std::min(dmin, e.d);
    dmax = std::max(dmax, e.d);
  }
  auto in_box = [&](std::size_t k, std::size_t d) {
    return k >= kmin && k <= kmax && d >= dmin && d <= dmax;
  };
  auto upper_of = [&](std::size_t k, std::size_t d) -> std::optional<Integer> {
    if (k > d) return pow2(d);
    auto it = cells.find({k, d});
    if (it != cells.end()) return it->second->upper.value;
    if (in_box(k, d))
      throw std::invalid_argument("missing grid entry (k=" + std::to_string(k) +
                                  ", d=" + std::to_string(d) + ")");
    return std::nullopt;
  };
  for (const auto& e : table) {
    if (e.k < 2 || e.k > e.d) continue;
    auto a = upper_of(e.k - 1, e.d - 1);
    auto b = upper_of(e.k, e.d - 1);
    if (!a || !b) continue;
    PascalFinding f;
    f.k = e.k;
    f.d = e.d;
    f.lhs = e.lower.value;
    f.rhs = *a + *b;
    f.slack = f.rhs - f.lhs;
    f.violation = f.lhs > f.rhs;
    out.push_back(f);
  }
  return out;
}

}  // namespace nbx
