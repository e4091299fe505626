#pragma once

#include <cstddef>
#include <initializer_list>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "nbx/ternary_string.hpp"

namespace nbx {

// An ordered, duplicate-free list of strings of one common length d.
class Family {
 public:
  Family() = default;

  explicit Family(std::size_t dimension) : dimension_(dimension) {}

  Family(std::size_t dimension, std::vector<TernaryString> members)
      : dimension_(dimension), members_(std::move(members)) {
    std::unordered_set<TernaryString, TernaryStringHash> seen;
    seen.reserve(members_.size());
    for (const auto& x : members_) {
      if (x.length() != dimension_)
        throw std::invalid_argument("member " + x.str() + " has length " +
                                    std::to_string(x.length()) + ", family dimension is " +
                                    std::to_string(dimension_));
      if (!seen.insert(x).second) throw std::invalid_argument("duplicate member " + x.str());
    }
  }

  // Dimension taken from the first member; an empty list needs the explicit form.
  static Family of(std::initializer_list<std::string_view> texts) {
    std::vector<TernaryString> xs;
    for (auto t : texts) xs.push_back(TernaryString::parse(t));
    if (xs.empty()) throw std::invalid_argument("cannot infer dimension of an empty family");
    std::size_t d = xs.front().length();
    return Family(d, std::move(xs));
  }

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const TernaryString& operator[](std::size_t i) const { return members_[i]; }
  std::span<const TernaryString> members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  bool contains(const TernaryString& x) const {
    for (const auto& m : members_)
      if (m == x) return true;
    return false;
  }

  // Same members regardless of order.
  bool same_set(const Family& other) const {
    if (dimension_ != other.dimension_ || size() != other.size()) return false;
    std::unordered_set<TernaryString, TernaryStringHash> a(members_.begin(), members_.end());
    for (const auto& x : other) if (!a.count(x)) return false;
    return true;
  }

  friend bool operator==(const Family&, const Family&) = default;

 private:
  std::size_t dimension_ = 0;
  std::vector<TernaryString> members_;
};

// ---- .nbx text format -------------------------------------------------------
// One string per line over '0','1','*'; lines starting with '#' are comments,
// blank lines are ignored. Surrounding whitespace on a line is ignored.

inline Family read_nbx(std::istream& in) {
  std::vector<TernaryString> xs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r");
    std::string_view t(line.data() + b, e - b + 1);
    if (t.front() == '#') continue;
    try {
      xs.push_back(TernaryString::parse(t));
    } catch (const std::invalid_argument& ex) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": " + ex.what());
    }
  }
  if (xs.empty()) throw std::invalid_argument("no strings in input");
  std::size_t d = xs.front().length();
  return Family(d, std::move(xs));
}

inline Family parse_nbx(const std::string& text) {
  std::istringstream in(text);
  return read_nbx(in);
}

inline void write_nbx(std::ostream& out, const Family& f) {
  for (const auto& x : f) out << x.str() << '\n';
}

inline std::string format_nbx(const Family& f) {
  std::ostringstream out;
  write_nbx(out, f);
  return out.str();
}

}  // namespace nbx
