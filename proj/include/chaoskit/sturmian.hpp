#pragma once

#include <cstddef>
#include <string>

#include "chaoskit/rational.hpp"
#include "chaoskit/word.hpp"

namespace chaoskit::subshift {

// Coding of the rotation by an irrational alpha: x_n = 1 iff
// frac(n·alpha) ∈ [1-alpha, 1).
//
// alpha is known only through a rational surrogate `approx` with
// |alpha - approx| <= ulp. A symbol is emitted only when the surrogate
// decides it for every alpha in that ball; otherwise PrecisionError. The
// constructor certifies the whole prefix, so a built spec never throws on
// indices below prefix_len.
class SturmianSpec {
 public:
  SturmianSpec(Rational approx, Rational ulp, std::size_t prefix_len);

  // (sqrt(5) - 1) / 2 and sqrt(2) - 1 to `digits` decimal digits.
  static SturmianSpec golden(std::size_t prefix_len, unsigned digits = 40);
  static SturmianSpec silver(std::size_t prefix_len, unsigned digits = 40);
  // "golden" | "silver" | "<rational>" (the last needs an explicit ulp).
  static SturmianSpec from_text(const std::string& alpha, const std::string& ulp,
                                std::size_t prefix_len);

  const Rational& approx() const { return approx_; }
  const Rational& ulp() const { return ulp_; }
  std::size_t prefix_len() const { return prefix_.size(); }
  // x_0 .. x_{prefix_len-1}.
  const Word& prefix() const { return prefix_; }
  const std::string& label() const { return label_; }

 private:
  Rational approx_;
  Rational ulp_;
  Word prefix_;
  std::string label_;
};

// Certified symbol x_n of the rotation coding. Throws PrecisionError when the
// surrogate cannot decide the threshold comparison.
int sturmian_symbol(const Rational& approx, const Rational& ulp, std::size_t n);

// x_n for n <= spec.prefix_len(); ParameterError beyond.
int sturmian_word(const SturmianSpec& spec, std::size_t n);

}  // namespace chaoskit::subshift
