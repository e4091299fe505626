#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nbx {

enum class Symbol : std::uint8_t { Zero = 0, One = 1, Joker = 2 };

inline char to_char(Symbol s) {
  switch (s) {
    case Symbol::Zero: return '0';
    case Symbol::One: return '1';
    default: return '*';
  }
}

inline Symbol symbol_from_char(char c) {
  switch (c) {
    case '0': return Symbol::Zero;
    case '1': return Symbol::One;
    case '*': return Symbol::Joker;
    default:
      throw std::invalid_argument(std::string("illegal symbol '") + c +
                                  "' (expected 0, 1 or *)");
  }
}

// A word over {0,1,*}: a subcube of the Hamming cube H^d, or equivalently a
// standard box in R^d. Stored as two disjoint coordinate bit-sets; coordinates
// in neither set carry the joker. Coordinates are 0-based in the API.
//
// Lengths up to kMaxLength are supported; for d <= 64 every operation touches
// a single word pair.
class TernaryString {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;
  static constexpr std::size_t kWords = 4;
  static constexpr std::size_t kMaxLength = kWords * kWordBits;

  // The empty word. Only arises as the neutral element of concatenation.
  TernaryString() = default;

  // All-joker string of the given length.
  explicit TernaryString(std::size_t length) : length_(check_length(length)) {}

  static TernaryString parse(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty ternary string");
    TernaryString x(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) x.assign(i, symbol_from_char(text[i]));
    return x;
  }

  // Binary string whose coordinate i is bit i of `bits` (d <= 64).
  static TernaryString from_bits(std::size_t length, Word bits) {
    if (length > kWordBits) throw std::invalid_argument("from_bits supports d <= 64");
    TernaryString x(length);
    Word mask = length == kWordBits ? ~Word{0} : ((Word{1} << length) - 1);
    x.ones_[0] = bits & mask;
    x.zeros_[0] = ~bits & mask;
    return x;
  }

  // Builds from raw single-word masks (d <= 64); masks must be disjoint.
  static TernaryString from_masks(std::size_t length, Word zeros, Word ones) {
    if (length > kWordBits) throw std::invalid_argument("from_masks supports d <= 64");
    Word mask = length == kWordBits ? ~Word{0} : ((Word{1} << length) - 1);
    if ((zeros & ones) != 0 || ((zeros | ones) & ~mask) != 0)
      throw std::invalid_argument("invalid coordinate masks");
    TernaryString x(length);
    x.zeros_[0] = zeros;
    x.ones_[0] = ones;
    return x;
  }

  std::size_t length() const { return length_; }

  Symbol at(std::size_t i) const {
    check_index(i);
    if (test(zeros_, i)) return Symbol::Zero;
    if (test(ones_, i)) return Symbol::One;
    return Symbol::Joker;
  }

  // Copy with coordinate i replaced by s.
  TernaryString with(std::size_t i, Symbol s) const {
    check_index(i);
    TernaryString r = *this;
    r.assign(i, s);
    return r;
  }

  std::size_t joker_count() const { return length_ - fixed_count(); }
  std::size_t zero_count() const { return popcount(zeros_); }
  std::size_t one_count() const { return popcount(ones_); }
  std::size_t fixed_count() const { return zero_count() + one_count(); }
  bool is_binary() const { return fixed_count() == length_; }

  // Non-joker coordinates, ascending.
  std::vector<std::size_t> prop_set() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < length_; ++i)
      if (test(zeros_, i) || test(ones_, i)) out.push_back(i);
    return out;
  }

  // (-1)^(number of ones).
  int sign() const { return one_count() % 2 == 0 ? 1 : -1; }

  Word zeros_word(std::size_t w = 0) const { return zeros_[w]; }
  Word ones_word(std::size_t w = 0) const { return ones_[w]; }
  std::size_t word_count() const { return (length_ + kWordBits - 1) / kWordBits; }

  std::string str() const {
    std::string s(length_, '*');
    for (std::size_t i = 0; i < length_; ++i) {
      if (test(zeros_, i)) s[i] = '0';
      else if (test(ones_, i)) s[i] = '1';
    }
    return s;
  }

  friend bool operator==(const TernaryString&, const TernaryString&) = default;

  // Lexicographic in symbol order 0 < 1 < *, shorter first on common prefix.
  friend std::strong_ordering operator<=>(const TernaryString& a, const TernaryString& b) {
    std::size_t n = std::min(a.length_, b.length_);
    for (std::size_t i = 0; i < n; ++i) {
      auto sa = a.at(i), sb = b.at(i);
      if (sa != sb) return sa <=> sb;
    }
    return a.length_ <=> b.length_;
  }

  std::size_t hash() const {
    std::size_t h = std::hash<std::size_t>{}(length_);
    for (std::size_t w = 0; w < word_count(); ++w) {
      h ^= std::hash<Word>{}(zeros_[w]) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h ^= std::hash<Word>{}(ones_[w] * 0xff51afd7ed558ccdULL) + (h << 6) + (h >> 2);
    }
    return h;
  }

  friend std::size_t distance(const TernaryString& x, const TernaryString& y);
  friend bool subcube_contains(const TernaryString& x, const TernaryString& v);
  friend bool is_twin_pair(const TernaryString& x, const TernaryString& y);

 private:
  using Bits = std::array<Word, kWords>;

  static std::size_t check_length(std::size_t length) {
    if (length > kMaxLength)
      throw std::length_error("ternary string longer than " + std::to_string(kMaxLength));
    return length;
  }

  void check_index(std::size_t i) const {
    if (i >= length_)
      throw std::out_of_range("coordinate " + std::to_string(i + 1) + " outside [1," +
                              std::to_string(length_) + "]");
  }

  static bool test(const Bits& b, std::size_t i) {
    return (b[i / kWordBits] >> (i % kWordBits)) & 1U;
  }

  static void put(Bits& b, std::size_t i, bool v) {
    Word bit = Word{1} << (i % kWordBits);
    if (v) b[i / kWordBits] |= bit;
    else b[i / kWordBits] &= ~bit;
  }

  static std::size_t popcount(const Bits& b) {
    std::size_t n = 0;
    for (Word w : b) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  void assign(std::size_t i, Symbol s) {
    put(zeros_, i, s == Symbol::Zero);
    put(ones_, i, s == Symbol::One);
  }

  std::size_t length_ = 0;
  Bits zeros_{};
  Bits ones_{};
};

inline void require_same_length(const TernaryString& x, const TernaryString& y) {
  if (x.length() != y.length())
    throw std::invalid_argument("length mismatch: " + std::to_string(x.length()) + " vs " +
                                std::to_string(y.length()));
}

// Number of coordinates where one string has 0 and the other has 1.
inline std::size_t distance(const TernaryString& x, const TernaryString& y) {
  require_same_length(x, y);
  std::size_t n = 0;
  for (std::size_t w = 0; w < x.word_count(); ++w)
    n += static_cast<std::size_t>(std::popcount((x.zeros_[w] & y.ones_[w]) |
                                                (x.ones_[w] & y.zeros_[w])));
  return n;
}

inline std::size_t hamming(const TernaryString& u, const TernaryString& v) {
  if (!u.is_binary() || !v.is_binary())
    throw std::invalid_argument("hamming distance is defined on binary strings only");
  return distance(u, v);
}

inline bool subcube_contains(const TernaryString& x, const TernaryString& v) {
  require_same_length(x, v);
  if (!v.is_binary()) throw std::invalid_argument("subcube membership needs a binary string");
  for (std::size_t w = 0; w < x.word_count(); ++w)
    if ((x.zeros_[w] & ~v.zeros_[w]) != 0 || (x.ones_[w] & ~v.ones_[w]) != 0) return false;
  return true;
}

// Exactly one 0/1 conflict and identical elsewhere, jokers included.
inline bool is_twin_pair(const TernaryString& x, const TernaryString& y) {
  require_same_length(x, y);
  std::size_t conflicts = 0;
  for (std::size_t w = 0; w < x.word_count(); ++w) {
    TernaryString::Word c = (x.zeros_[w] & y.ones_[w]) | (x.ones_[w] & y.zeros_[w]);
    TernaryString::Word xfix = x.zeros_[w] | x.ones_[w];
    TernaryString::Word yfix = y.zeros_[w] | y.ones_[w];
    if (xfix != yfix) return false;
    TernaryString::Word agree = (x.zeros_[w] & y.zeros_[w]) | (x.ones_[w] & y.ones_[w]);
    if ((agree | c) != xfix) return false;
    conflicts += static_cast<std::size_t>(std::popcount(c));
    if (conflicts > 1) return false;
  }
  return conflicts == 1;
}

inline TernaryString twin_union(const TernaryString& x, const TernaryString& y) {
  if (!is_twin_pair(x, y))
    throw std::invalid_argument("not a twin pair: " + x.str() + ", " + y.str());
  for (std::size_t i = 0; i < x.length(); ++i)
    if (x.at(i) != y.at(i)) return x.with(i, Symbol::Joker);
  return x;  // unreachable
}

inline TernaryString concat(const TernaryString& x, const TernaryString& y) {
  TernaryString r(x.length() + y.length());
  for (std::size_t i = 0; i < x.length(); ++i) r = r.with(i, x.at(i));
  for (std::size_t i = 0; i < y.length(); ++i) r = r.with(x.length() + i, y.at(i));
  return r;
}

inline TernaryString delete_coord(const TernaryString& x, std::size_t i) {
  if (i >= x.length())
    throw std::out_of_range("coordinate " + std::to_string(i + 1) + " outside [1," +
                            std::to_string(x.length()) + "]");
  TernaryString r(x.length() - 1);
  for (std::size_t j = 0, o = 0; j < x.length(); ++j)
    if (j != i) r = r.with(o++, x.at(j));
  return r;
}

inline TernaryString parse(std::string_view text) { return TernaryString::parse(text); }
inline std::string format(const TernaryString& x) { return x.str(); }

struct TernaryStringHash {
  std::size_t operator()(const TernaryString& x) const { return x.hash(); }
};

}  // namespace nbx
