#include "chaoskit/word.hpp"

#include "chaoskit/error.hpp"

namespace chaoskit::subshift {

Word Word::parse(std::string_view text) {
  if (text == "-") return Word();
  if (text.empty()) throw ParseError("empty word literal (write '-' for the empty word)");
  for (char c : text)
    if (c != '0' && c != '1') throw ParseError("word literal must be binary: " + std::string(text));
  return Word(std::string(text));
}

Word Word::power(std::size_t k) const {
  std::string out;
  out.reserve(symbols_.size() * k);
  for (std::size_t i = 0; i < k; ++i) out += symbols_;
  return Word(std::move(out));
}

std::vector<std::size_t> Word::ones() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i] == '1') out.push_back(i);
  return out;
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  return a.symbols_.compare(b.symbols_) <=> 0;
}

Rational word_distance(const Word& x, const Word& y) {
  if (x.size() != y.size()) throw ParameterError("word_distance: length mismatch");
  if (x.empty()) throw ParameterError("word_distance: words must be non-empty");
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] != y[j]) {
      Rational d(1);
      mpz_mul_2exp(d.get_den_mpz_t(), d.get_den_mpz_t(), j);
      return d;
    }
  }
  return Rational(0);
}

}  // namespace chaoskit::subshift
