#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nbx/family.hpp"
#include "nbx/ternary_string.hpp"

namespace nbx {

struct Biclique {
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;
  friend bool operator==(const Biclique&, const Biclique&) = default;
};

// A list of bicliques on the vertex set {0..n-1} of K_n.
struct BicliqueCover {
  std::size_t n = 0;
  std::vector<Biclique> bicliques;
  friend bool operator==(const BicliqueCover&, const BicliqueCover&) = default;
};

inline void validate(const BicliqueCover& c) {
  for (std::size_t i = 0; i < c.bicliques.size(); ++i) {
    std::vector<char> side(c.n, 0);
    auto mark = [&](const std::vector<std::size_t>& vs, char tag) {
      for (auto v : vs) {
        if (v >= c.n)
          throw std::invalid_argument("biclique " + std::to_string(i) + ": vertex " +
                                      std::to_string(v) + " out of range");
        if (side[v] != 0)
          throw std::invalid_argument("biclique " + std::to_string(i) + ": vertex " +
                                      std::to_string(v) + " listed twice");
        side[v] = tag;
      }
    };
    mark(c.bicliques[i].left, 'L');
    mark(c.bicliques[i].right, 'R');
  }
}

// Vertex v per member; biclique i joins members with 0 at coordinate i to
// members with 1 there. Edge multiplicity equals string distance.
inline BicliqueCover family_to_cover(const Family& f) {
  if (f.size() < 2) throw std::invalid_argument("family_to_cover needs at least two members");
  BicliqueCover c;
  c.n = f.size();
  c.bicliques.resize(f.dimension());
  for (std::size_t v = 0; v < f.size(); ++v)
    for (std::size_t i = 0; i < f.dimension(); ++i) {
      Symbol s = f[v].at(i);
      if (s == Symbol::Zero) c.bicliques[i].left.push_back(v);
      else if (s == Symbol::One) c.bicliques[i].right.push_back(v);
    }
  return c;
}

// Inverse of family_to_cover: vertex v gets 0 at coordinate i if it is on the
// left of biclique i, 1 on the right, * otherwise.
inline Family cover_to_family(const BicliqueCover& c) {
  validate(c);
  const std::size_t d = c.bicliques.size();
  if (d == 0) throw std::invalid_argument("cover has no bicliques");
  std::vector<TernaryString> xs(c.n, TernaryString(d));
  for (std::size_t i = 0; i < d; ++i) {
    for (auto v : c.bicliques[i].left) xs[v] = xs[v].with(i, Symbol::Zero);
    for (auto v : c.bicliques[i].right) xs[v] = xs[v].with(i, Symbol::One);
  }
  try {
    return Family(d, std::move(xs));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("indistinguishable vertices: ") + e.what());
  }
}

struct CoverReport {
  bool valid = true;
  // multiplicity -> number of edges of K_n covered that many times
  std::map<std::size_t, std::size_t> histogram;
  // edges (u < v) whose multiplicity is outside [1, k]
  std::vector<std::pair<std::size_t, std::size_t>> bad_edges;
};

// Valid iff every edge of K_n is covered between 1 and k times.
inline CoverReport verify_cover(const BicliqueCover& c, std::size_t k) {
  validate(c);
  std::vector<std::size_t> mult(c.n * c.n, 0);
  for (const auto& b : c.bicliques)
    for (auto u : b.left)
      for (auto v : b.right) {
        ++mult[u * c.n + v];
        ++mult[v * c.n + u];
      }
  CoverReport r;
  for (std::size_t u = 0; u < c.n; ++u)
    for (std::size_t v = u + 1; v < c.n; ++v) {
      std::size_t m = mult[u * c.n + v];
      ++r.histogram[m];
      if (m < 1 || m > k) r.bad_edges.emplace_back(u, v);
    }
  r.valid = r.bad_edges.empty();
  return r;
}

// Graham-Pollak star decomposition of K_n: star i joins vertex i to every
// later vertex.
inline BicliqueCover star_decomposition(std::size_t n) {
  if (n < 2) throw std::invalid_argument("star decomposition needs n >= 2");
  BicliqueCover c;
  c.n = n;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    Biclique b;
    b.left.push_back(i);
    for (std::size_t v = i + 1; v < n; ++v) b.right.push_back(v);
    c.bicliques.push_back(std::move(b));
  }
  return c;
}

}  // namespace nbx
