#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "nbx/family.hpp"
#include "nbx/integer.hpp"
#include "nbx/ternary_string.hpp"

namespace nbx {

struct Violation {
  std::size_t first;
  std::size_t second;
  std::size_t distance;
  friend bool operator==(const Violation&, const Violation&) = default;
};

struct NeighborlinessReport {
  bool is_valid = true;
  // Absent for a singleton family (no pairs).
  std::optional<std::size_t> min_distance;
  std::optional<std::size_t> max_distance;
  std::vector<Violation> violations;
};

inline void require_k(std::size_t k, std::size_t d) {
  if (k < 1 || k > d)
    throw std::invalid_argument("k=" + std::to_string(k) + " outside [1," + std::to_string(d) +
                                "]");
}

// Exhaustive pairwise check that 1 <= distance <= k.
inline NeighborlinessReport verify_neighborly(const Family& f, std::size_t k) {
  if (f.empty()) throw std::invalid_argument("empty family");
  require_k(k, f.dimension());
  NeighborlinessReport r;
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = i + 1; j < f.size(); ++j) {
      std::size_t dist = distance(f[i], f[j]);
      r.min_distance = std::min(r.min_distance.value_or(dist), dist);
      r.max_distance = std::max(r.max_distance.value_or(dist), dist);
      if (dist == 0 || dist > k) r.violations.push_back({i, j, dist});
    }
  }
  r.is_valid = r.violations.empty();
  return r;
}

// Sum of 2^(jokers) over members: the number of cube vertices covered,
// counted with multiplicity.
inline Integer volume(const Family& f) {
  Integer v = 0;
  for (const auto& x : f) v += pow2(x.joker_count());
  return v;
}

inline bool pairwise_disjoint(const Family& f) {
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = i + 1; j < f.size(); ++j)
      if (distance(f[i], f[j]) == 0) return false;
  return true;
}

inline bool is_partition(const Family& f) {
  return volume(f) == pow2(f.dimension()) && pairwise_disjoint(f);
}

// Members carrying symbol s at coordinate i (0-based).
inline Family slice(const Family& f, std::size_t i, Symbol s) {
  if (i >= f.dimension())
    throw std::out_of_range("coordinate " + std::to_string(i + 1) + " outside [1," +
                            std::to_string(f.dimension()) + "]");
  std::vector<TernaryString> xs;
  for (const auto& x : f)
    if (x.at(i) == s) xs.push_back(x);
  return Family(f.dimension(), std::move(xs));
}

// Coordinate i removed from every member. Members that collide are an error.
inline Family delete_coord(const Family& f, std::size_t i) {
  std::vector<TernaryString> xs;
  xs.reserve(f.size());
  for (const auto& x : f) xs.push_back(delete_coord(x, i));
  return Family(f.dimension() - 1, std::move(xs));
}

// Smallest coordinate where no member has a joker, provided f is a partition.
inline std::optional<std::size_t> is_lamination(const Family& f) {
  if (f.empty() || !is_partition(f)) return std::nullopt;
  for (std::size_t i = 0; i < f.dimension(); ++i) {
    bool split = std::all_of(f.begin(), f.end(),
                             [i](const TernaryString& x) { return x.at(i) != Symbol::Joker; });
    if (split) return i;
  }
  return std::nullopt;
}

namespace detail {

inline std::string canonical_key(const Family& f) {
  std::vector<std::string> xs;
  xs.reserve(f.size());
  for (const auto& x : f) xs.push_back(x.str());
  std::sort(xs.begin(), xs.end());
  std::string key = std::to_string(f.dimension()) + ":";
  for (auto& s : xs) key += s + ",";
  return key;
}

// f is known to be a partition of H^d here; slices of a partition along a
// joker-free coordinate are partitions of H^{d-1}, so no re-check is needed.
inline bool total_lamination_rec(const Family& f,
                                 std::unordered_map<std::string, bool>& memo) {
  const std::size_t d = f.dimension();
  if (f.size() == 1 && f[0].joker_count() == d) return true;
  if (d < 64 && f.size() == (std::size_t{1} << d) &&
      std::all_of(f.begin(), f.end(), [](const TernaryString& x) { return x.is_binary(); }))
    return true;

  std::string key = canonical_key(f);
  if (auto it = memo.find(key); it != memo.end()) return it->second;

  bool result = false;
  for (std::size_t i = 0; i < d && !result; ++i) {
    bool split = std::all_of(f.begin(), f.end(),
                             [i](const TernaryString& x) { return x.at(i) != Symbol::Joker; });
    if (!split) continue;
    Family lo = delete_coord(slice(f, i, Symbol::Zero), i);
    Family hi = delete_coord(slice(f, i, Symbol::One), i);
    result = total_lamination_rec(lo, memo) && total_lamination_rec(hi, memo);
  }
  memo.emplace(std::move(key), result);
  return result;
}

}  // namespace detail

inline bool is_total_lamination(const Family& f) {
  if (f.empty() || !is_partition(f)) return false;
  std::unordered_map<std::string, bool> memo;
  return detail::total_lamination_rec(f, memo);
}

// First member with the fewest jokers.
inline std::size_t min_joker_index(const Family& f) {
  if (f.empty()) throw std::invalid_argument("empty family");
  std::size_t best = 0;
  for (std::size_t i = 1; i < f.size(); ++i)
    if (f[i].joker_count() < f[best].joker_count()) best = i;
  return best;
}

// Sum of signs over the members sharing the non-joker positions of the first
// minimum-joker member. Zero on every partition with at least two members.
inline int sgn_sum(const Family& f) {
  if (f.empty() || !is_partition(f)) throw std::invalid_argument("sgn_sum needs a partition");
  const auto& v = f[min_joker_index(f)];
  auto prop = v.prop_set();
  int sum = 0;
  for (const auto& x : f)
    if (x.prop_set() == prop) sum += x.sign();
  return sum;
}

// Repeatedly merges the first minimum-joker member with its first twin.
// Returns every intermediate family, starting with f and ending with the
// all-joker singleton.
inline std::vector<Family> reduce_to_trivial(const Family& f) {
  if (f.empty() || !is_partition(f))
    throw std::invalid_argument("reduce_to_trivial needs a partition");
  std::vector<Family> trace{f};
  while (trace.back().size() > 1) {
    const Family& cur = trace.back();
    std::size_t v = min_joker_index(cur);
    std::optional<std::size_t> twin;
    for (std::size_t j = 0; j < cur.size() && !twin; ++j)
      if (j != v && is_twin_pair(cur[v], cur[j])) twin = j;
    if (!twin)
      throw std::domain_error("no twin for minimum-joker member " + cur[v].str() +
                              " in a family of size " + std::to_string(cur.size()));
    std::vector<TernaryString> next;
    next.reserve(cur.size() - 1);
    for (std::size_t j = 0; j < cur.size(); ++j) {
      if (j == v) next.push_back(twin_union(cur[v], cur[*twin]));
      else if (j != *twin) next.push_back(cur[j]);
    }
    trace.emplace_back(cur.dimension(), std::move(next));
  }
  return trace;
}

// Every member has at most d - k jokers.
inline bool max_joker_ok(const Family& f, std::size_t k) {
  if (k > f.dimension()) return false;
  std::size_t cap = f.dimension() - k;
  return std::all_of(f.begin(), f.end(),
                     [cap](const TernaryString& x) { return x.joker_count() <= cap; });
}

// Largest pairwise Hamming distance of a set of binary strings.
inline std::size_t diameter(std::span<const TernaryString> points) {
  if (points.empty()) throw std::invalid_argument("diameter of an empty set");
  std::size_t best = 0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      best = std::max(best, hamming(points[i], points[j]));
  if (points.size() == 1) (void)hamming(points[0], points[0]);
  return best;
}

}  // namespace nbx
