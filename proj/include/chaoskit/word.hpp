#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "chaoskit/rational.hpp"

namespace chaoskit::subshift {

// Finite word over {0,1}. The empty word is written "-".
class Word {
 public:
  Word() = default;
  // Throws ParseError unless `text` is "-" or a non-empty 0/1 string.
  static Word parse(std::string_view text);
  static Word zeros(std::size_t k) { return Word(std::string(k, '0')); }

  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  int operator[](std::size_t i) const { return symbols_[i] == '1' ? 1 : 0; }

  void push_back(int symbol) { symbols_.push_back(symbol ? '1' : '0'); }
  void pop_back() { symbols_.pop_back(); }

  Word subword(std::size_t pos, std::size_t len) const { return Word(symbols_.substr(pos, len)); }
  Word power(std::size_t k) const;
  std::vector<std::size_t> ones() const;

  // Raw '0'/'1' characters ("" for the empty word).
  const std::string& symbols() const { return symbols_; }
  // Literal syntax: "-" for the empty word.
  std::string str() const { return symbols_.empty() ? "-" : symbols_; }

  friend Word operator+(const Word& a, const Word& b) { return Word(a.symbols_ + b.symbols_); }
  bool operator==(const Word&) const = default;
  // Shortlex: by length, then lexicographically.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);

 private:
  explicit Word(std::string symbols) : symbols_(std::move(symbols)) {}
  std::string symbols_;
};

// 0 when x == y, otherwise 2^-j for the least differing index j.
// Throws ParameterError when lengths differ or are zero.
Rational word_distance(const Word& x, const Word& y);

}  // namespace chaoskit::subshift
