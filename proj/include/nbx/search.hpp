#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

#include "nbx/bounds.hpp"
#include "nbx/constructions.hpp"
#include "nbx/families.hpp"
#include "nbx/family.hpp"
#include "nbx/ternary_string.hpp"

namespace nbx {

struct SearchConfig {
  std::uint64_t node_budget = std::numeric_limits<std::uint64_t>::max();
  double time_budget_secs = 3600.0;
  // Drop strings with more than d-k jokers; no maximum family contains one.
  bool joker_prune = true;
  // Fix the minimum-joker member of the family to its orbit representative
  // 0^(d-j) *^j under coordinate permutations and 0/1 swaps.
  bool symmetry = true;
  // Seed the incumbent with the best construction and stop at the best known
  // upper bound.
  bool use_bounds = true;
  // Sequential exploration in a fixed order; results identical run to run.
  bool deterministic = false;
  // Worker threads when not deterministic; 0 picks hardware concurrency.
  std::size_t threads = 0;
  std::size_t capacity = 60000;
  // Upper limit on families returned by enumerate_max_families.
  std::size_t enumeration_cap = 10000;
};

struct SearchStats {
  std::uint64_t nodes = 0;
  double elapsed_secs = 0.0;
  std::size_t candidates = 0;
  std::size_t threads = 1;
  bool budget_exhausted = false;
  // Search stopped because the incumbent met the known upper bound.
  bool bound_cutoff = false;
};

struct SearchResult {
  std::size_t k = 0;
  std::size_t d = 0;
  std::size_t optimum = 0;
  // Kept as a plain list so certificate checks do not rely on Family's own
  // validation.
  std::vector<TernaryString> witness;
  bool proven_optimal = false;
  SearchStats stats;
};

// All strings of S^d with at most d-k jokers, in lexicographic order.
inline std::vector<TernaryString> enumerate_candidates(std::size_t k, std::size_t d,
                                                       bool joker_prune = true) {
  require_k(k, d);
  if (d > 20) throw std::length_error("candidate enumeration limited to d <= 20");
  std::size_t max_jokers = joker_prune ? d - k : d;
  std::vector<TernaryString> out;
  // base-3 counter, most significant symbol first; digit order 0 < 1 < *
  std::vector<std::uint8_t> digits(d, 0);
  while (true) {
    std::size_t j = static_cast<std::size_t>(std::count(digits.begin(), digits.end(), 2));
    if (j <= max_jokers) {
      TernaryString x(d);
      for (std::size_t i = 0; i < d; ++i) x = x.with(i, static_cast<Symbol>(digits[i]));
      out.push_back(x);
    }
    std::size_t p = d;
    while (p > 0 && digits[p - 1] == 2) digits[--p] = 0;
    if (p == 0) break;
    ++digits[p - 1];
  }
  return out;
}

namespace detail {

using Word = std::uint64_t;

class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}
  void set(std::size_t i) { w_[i >> 6] |= Word{1} << (i & 63); }
  void reset(std::size_t i) { w_[i >> 6] &= ~(Word{1} << (i & 63)); }
  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1U; }
  std::size_t words() const { return w_.size(); }
  Word* data() { return w_.data(); }
  const Word* data() const { return w_.data(); }
  std::size_t size() const { return n_; }

 private:
  std::size_t n_ = 0;
  std::vector<Word> w_;
};

inline std::size_t popcount_and(const Word* a, const Word* b, std::size_t n) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < n; ++i) c += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  return c;
}

inline bool any(const Word* a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i]) return true;
  return false;
}

// Compatibility graph: vertices are candidates, edge iff 1 <= distance <= k.
struct Graph {
  std::size_t d = 0;
  std::size_t k = 0;
  std::vector<TernaryString> vertices;  // in search order
  std::vector<std::size_t> jokers;      // per vertex
  std::vector<Bitset> adj;
  std::vector<Bitset> level;            // level[j]: vertices with j jokers
  std::size_t words = 0;
};

inline Graph build_graph(std::size_t k, std::size_t d, std::vector<TernaryString> cands) {
  const std::size_t n = cands.size();
  // degree in the compatibility graph, computed on the input order
  std::vector<std::size_t> deg(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      std::size_t dist = distance(cands[i], cands[j]);
      if (dist >= 1 && dist <= k) {
        ++deg[i];
        ++deg[j];
      }
    }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (deg[a] != deg[b]) return deg[a] > deg[b];
    if (cands[a].joker_count() != cands[b].joker_count())
      return cands[a].joker_count() < cands[b].joker_count();
    return cands[a] < cands[b];
  });

  Graph g;
  g.d = d;
  g.k = k;
  g.vertices.reserve(n);
  for (auto i : order) g.vertices.push_back(cands[i]);
  g.jokers.resize(n);
  for (std::size_t i = 0; i < n; ++i) g.jokers[i] = g.vertices[i].joker_count();
  g.adj.assign(n, Bitset(n));
  g.level.assign(d + 1, Bitset(n));
  g.words = (n + 63) / 64;
  for (std::size_t i = 0; i < n; ++i) {
    g.level[g.jokers[i]].set(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      std::size_t dist = distance(g.vertices[i], g.vertices[j]);
      if (dist >= 1 && dist <= k) {
        g.adj[i].set(j);
        g.adj[j].set(i);
      }
    }
  }
  return g;
}

// Shared between workers: the incumbent size only grows.
struct Shared {
  std::atomic<std::size_t> best{0};
  std::atomic<bool> stop{false};
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> budget_exhausted{false};
  std::atomic<bool> cutoff{false};
  std::mutex mu;
  std::vector<std::size_t> best_clique;  // vertex ids, guarded by mu
  std::vector<std::vector<std::size_t>> found;  // enumeration mode
  bool enumeration_overflow = false;
};

struct Limits {
  std::uint64_t node_budget;
  std::chrono::steady_clock::time_point deadline;
  std::size_t upper_cutoff;  // stop when best reaches this
  bool enumerate = false;
  std::size_t target = 0;    // enumeration: clique size sought
  std::size_t enumeration_cap = 0;
};

// One branch-and-bound worker (BBMC-style: bitset candidate sets, greedy
// colouring bound, plus a volume bound from disjointness of subcubes).
class Worker {
 public:
  Worker(const Graph& g, Shared& sh, const Limits& lim) : g_(g), sh_(sh), lim_(lim) {
    cube_ = std::uint64_t{1} << g.d;
  }

  void run(const std::vector<std::size_t>& seed, const Bitset& p) {
    clique_ = seed;
    std::uint64_t vol = 0;
    for (auto v : seed) vol += std::uint64_t{1} << g_.jokers[v];
    if (seed.size() > 0) offer();
    if (!any(p.data(), g_.words)) return;
    ensure_depth(1);
    std::copy(p.data(), p.data() + g_.words, stack_[0].data());
    expand(0, vol);
    sh_.nodes.fetch_add(nodes_ - flushed_, std::memory_order_relaxed);
    flushed_ = nodes_;
  }

  std::uint64_t local_nodes() const { return nodes_; }

 private:
  bool should_stop() {
    if (sh_.stop.load(std::memory_order_relaxed)) return true;
    if ((nodes_ & 1023) == 0) {
      sh_.nodes.fetch_add(nodes_ - flushed_, std::memory_order_relaxed);
      flushed_ = nodes_;
      if (sh_.nodes.load(std::memory_order_relaxed) >= lim_.node_budget ||
          std::chrono::steady_clock::now() >= lim_.deadline) {
        sh_.budget_exhausted = true;
        sh_.stop = true;
        return true;
      }
    }
    return false;
  }

  void ensure_depth(std::size_t n) {
    while (stack_.size() < n + 1) stack_.emplace_back(g_.words, 0);
    while (colour_order_.size() < n + 1) {
      colour_order_.emplace_back();
      colour_.emplace_back();
    }
  }

  // Most candidates that can still be added without exceeding the cube volume.
  std::size_t volume_bound(const Word* p, std::uint64_t used) const {
    std::uint64_t room = cube_ - used;
    std::size_t extra = 0;
    for (std::size_t j = 0; j <= g_.d; ++j) {
      std::size_t c = popcount_and(p, g_.level[j].data(), g_.words);
      if (c == 0) continue;
      std::uint64_t each = std::uint64_t{1} << j;
      std::uint64_t fit = room / each;
      if (fit < c) return extra + static_cast<std::size_t>(fit);
      extra += c;
      room -= c * each;
    }
    return extra;
  }

  bool prune(std::size_t bound) const {
    std::size_t best = sh_.best.load(std::memory_order_relaxed);
    return lim_.enumerate ? bound < lim_.target : bound <= best;
  }

  void colour(std::size_t depth) {
    const std::size_t W = g_.words;
    auto& order = colour_order_[depth];
    auto& col = colour_[depth];
    order.clear();
    col.clear();
    std::vector<Word>& u = scratch_u_;
    std::vector<Word>& q = scratch_q_;
    u.assign(stack_[depth].begin(), stack_[depth].end());
    q.assign(W, 0);
    std::size_t c = 0;
    std::size_t remaining = 0;
    for (std::size_t i = 0; i < W; ++i) remaining += static_cast<std::size_t>(std::popcount(u[i]));
    while (remaining > 0) {
      ++c;
      q = u;
      for (std::size_t w = 0; w < W; ++w) {
        while (q[w]) {
          std::size_t bit = static_cast<std::size_t>(std::countr_zero(q[w]));
          std::size_t v = w * 64 + bit;
          q[w] &= q[w] - 1;
          u[w] &= ~(Word{1} << bit);
          --remaining;
          const Word* a = g_.adj[v].data();
          for (std::size_t x = w; x < W; ++x) q[x] &= ~a[x];
          order.push_back(v);
          col.push_back(c);
        }
      }
    }
  }

  void offer() {
    const std::size_t size = clique_.size();
    if (lim_.enumerate) {
      if (size != lim_.target) return;
      std::lock_guard<std::mutex> lock(sh_.mu);
      if (sh_.found.size() >= lim_.enumeration_cap) {
        sh_.enumeration_overflow = true;
        sh_.stop = true;
        return;
      }
      sh_.found.push_back(clique_);
      return;
    }
    std::size_t cur = sh_.best.load();
    while (size > cur) {
      if (sh_.best.compare_exchange_weak(cur, size)) {
        std::lock_guard<std::mutex> lock(sh_.mu);
        if (size >= sh_.best_clique.size() || sh_.best_clique.empty()) sh_.best_clique = clique_;
        if (size >= lim_.upper_cutoff) {
          sh_.cutoff = true;
          sh_.stop = true;
        }
        return;
      }
    }
  }

  void expand(std::size_t depth, std::uint64_t vol) {
    ++nodes_;
    if (should_stop()) return;
    const std::size_t W = g_.words;
    Word* p = stack_[depth].data();
    if (prune(clique_.size() + volume_bound(p, vol))) return;

    colour(depth);
    ensure_depth(depth + 1);
    const auto& order = colour_order_[depth];
    const auto& col = colour_[depth];
    for (std::size_t idx = order.size(); idx-- > 0;) {
      if (prune(clique_.size() + col[idx])) return;
      if (sh_.stop.load(std::memory_order_relaxed)) return;
      std::size_t v = order[idx];
      Word* np = stack_[depth + 1].data();
      const Word* a = g_.adj[v].data();
      bool nonempty = false;
      for (std::size_t w = 0; w < W; ++w) {
        np[w] = p[w] & a[w];
        nonempty |= np[w] != 0;
      }
      clique_.push_back(v);
      std::uint64_t nvol = vol + (std::uint64_t{1} << g_.jokers[v]);
      if (!nonempty) offer();
      else expand(depth + 1, nvol);
      clique_.pop_back();
      p[v >> 6] &= ~(Word{1} << (v & 63));
    }
  }

  const Graph& g_;
  Shared& sh_;
  const Limits& lim_;
  std::uint64_t cube_;
  std::uint64_t nodes_ = 0;
  std::uint64_t flushed_ = 0;
  std::vector<std::size_t> clique_;
  // deques: growing them must not move the levels already in use
  std::deque<std::vector<Word>> stack_;
  std::deque<std::vector<std::size_t>> colour_order_;
  std::deque<std::vector<std::size_t>> colour_;
  std::vector<Word> scratch_u_;
  std::vector<Word> scratch_q_;
};

struct Task {
  std::vector<std::size_t> seed;
  Bitset p;
};

// Root decomposition. With symmetry fixing: one task per joker level j, the
// seed being the representative 0^(d-j) *^j and the candidates its
// neighbours with at least j jokers. Without: one task per vertex v, with the
// candidates being neighbours of v later in the search order.
inline std::vector<Task> root_tasks(const Graph& g, bool symmetry) {
  std::vector<Task> tasks;
  const std::size_t n = g.vertices.size();
  if (symmetry) {
    for (std::size_t j = 0; j <= g.d; ++j) {
      TernaryString rep(g.d);
      for (std::size_t i = 0; i + j < g.d; ++i) rep = rep.with(i, Symbol::Zero);
      auto it = std::find(g.vertices.begin(), g.vertices.end(), rep);
      if (it == g.vertices.end()) continue;
      std::size_t r = static_cast<std::size_t>(it - g.vertices.begin());
      Task t{{r}, Bitset(n)};
      for (std::size_t v = 0; v < n; ++v)
        if (g.adj[r].test(v) && g.jokers[v] >= j) t.p.set(v);
      tasks.push_back(std::move(t));
    }
  } else {
    for (std::size_t v = n; v-- > 0;) {
      Task t{{v}, Bitset(n)};
      for (std::size_t u = v + 1; u < n; ++u)
        if (g.adj[v].test(u)) t.p.set(u);
      tasks.push_back(std::move(t));
    }
  }
  return tasks;
}

inline std::size_t thread_count(const SearchConfig& cfg) {
  if (cfg.deterministic) return 1;
  std::size_t t = cfg.threads ? cfg.threads : std::thread::hardware_concurrency();
  return std::max<std::size_t>(1, t);
}

inline void run_tasks(const Graph& g, Shared& sh, const Limits& lim,
                      const std::vector<Task>& tasks, std::size_t threads) {
  if (threads <= 1) {
    Worker w(g, sh, lim);
    for (const auto& t : tasks) {
      if (sh.stop) break;
      w.run(t.seed, t.p);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t i = 0; i < threads; ++i) {
    pool.emplace_back([&] {
      Worker w(g, sh, lim);
      for (std::size_t t = next++; t < tasks.size() && !sh.stop; t = next++)
        w.run(tasks[t].seed, tasks[t].p);
    });
  }
  for (auto& th : pool) th.join();
}

inline void check_config(const SearchConfig& cfg) {
  if (cfg.node_budget == 0 || !(cfg.time_budget_secs > 0))
    throw std::invalid_argument("search budgets must be positive");
}

}  // namespace detail

// Maximum k-neighborly family in S^d by branch and bound over the
// compatibility graph of candidate strings.
inline SearchResult max_family(std::size_t k, std::size_t d, const SearchConfig& cfg = {}) {
  require_k(k, d);
  detail::check_config(cfg);
  auto start = std::chrono::steady_clock::now();
  auto cands = enumerate_candidates(k, d, cfg.joker_prune);
  if (cands.size() > cfg.capacity)
    throw std::length_error(std::to_string(cands.size()) + " candidates exceed capacity " +
                            std::to_string(cfg.capacity));
  if (d > 62) throw std::length_error("search limited to d <= 62");

  SearchResult res;
  res.k = k;
  res.d = d;
  res.stats.candidates = cands.size();

  std::size_t upper = SIZE_MAX;
  std::vector<TernaryString> seed_witness;
  if (cfg.use_bounds) {
    MTable mt(d);
    BoundsEntry b = detail::best_bounds(k, d, mt);
    if (b.upper.value < Integer(SIZE_MAX)) upper = b.upper.value.convert_to<std::size_t>();
    Family f = realize(mt.mbar(k, d));
    seed_witness.assign(f.begin(), f.end());
  }

  detail::Graph g = detail::build_graph(k, d, std::move(cands));
  detail::Shared sh;
  sh.best = seed_witness.size();
  detail::Limits lim{cfg.node_budget,
                     start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                 std::chrono::duration<double>(cfg.time_budget_secs)),
                     upper};
  std::size_t threads = detail::thread_count(cfg);
  res.stats.threads = threads;

  if (seed_witness.size() >= upper) {
    sh.cutoff = true;
  } else {
    auto tasks = detail::root_tasks(g, cfg.symmetry);
    detail::run_tasks(g, sh, lim, tasks, threads);
  }

  if (!sh.best_clique.empty() && sh.best_clique.size() > seed_witness.size()) {
    for (auto v : sh.best_clique) res.witness.push_back(g.vertices[v]);
  } else if (!seed_witness.empty()) {
    res.witness = seed_witness;
  } else if (!sh.best_clique.empty()) {
    for (auto v : sh.best_clique) res.witness.push_back(g.vertices[v]);
  }
  res.optimum = res.witness.size();
  res.stats.budget_exhausted = sh.budget_exhausted;
  res.stats.bound_cutoff = sh.cutoff;
  res.stats.nodes = sh.nodes.load();
  res.proven_optimal = !sh.budget_exhausted;
  res.stats.elapsed_secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

struct EnumerationResult {
  std::size_t optimum = 0;
  std::vector<Family> families;
  // False when the enumeration cap or a budget cut the listing short.
  bool complete = true;
};

// Every maximum family (as a set), up to cfg.enumeration_cap of them.
inline EnumerationResult enumerate_max_families(std::size_t k, std::size_t d,
                                                const SearchConfig& cfg = {}) {
  SearchResult best = max_family(k, d, cfg);
  if (!best.proven_optimal)
    throw std::runtime_error("optimum not proven within budget; cannot enumerate");
  auto start = std::chrono::steady_clock::now();
  // Joker pruning is complete for maximum families, so the
  // candidate set matches max_family's; symmetry fixing would drop orbits.
  auto cands = enumerate_candidates(k, d, cfg.joker_prune);
  detail::Graph g = detail::build_graph(k, d, std::move(cands));
  detail::Shared sh;
  detail::Limits lim{cfg.node_budget,
                     start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                 std::chrono::duration<double>(cfg.time_budget_secs)),
                     SIZE_MAX, true, best.optimum, cfg.enumeration_cap};
  auto tasks = detail::root_tasks(g, false);
  detail::run_tasks(g, sh, lim, tasks, 1);

  EnumerationResult out;
  out.optimum = best.optimum;
  out.complete = !sh.enumeration_overflow && !sh.budget_exhausted;
  for (const auto& c : sh.found) {
    std::vector<TernaryString> xs;
    for (auto v : c) xs.push_back(g.vertices[v]);
    std::sort(xs.begin(), xs.end());
    out.families.emplace_back(d, std::move(xs));
  }
  return out;
}

// Re-checks a search result from scratch: sizes, lengths, distinctness and
// every pairwise distance.
inline bool verify_certificate(const SearchResult& r) {
  if (r.k < 1 || r.k > r.d) return false;
  if (r.witness.size() != r.optimum || r.witness.empty()) return false;
  std::unordered_set<TernaryString, TernaryStringHash> seen;
  for (const auto& x : r.witness) {
    if (x.length() != r.d) return false;
    if (!seen.insert(x).second) return false;
  }
  for (std::size_t i = 0; i < r.witness.size(); ++i)
    for (std::size_t j = i + 1; j < r.witness.size(); ++j) {
      std::size_t dist = distance(r.witness[i], r.witness[j]);
      if (dist < 1 || dist > r.k) return false;
    }
  return true;
}

}  // namespace nbx
