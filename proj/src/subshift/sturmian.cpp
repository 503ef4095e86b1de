#include "chaoskit/sturmian.hpp"

#include "chaoskit/error.hpp"

namespace chaoskit::subshift {
namespace {

mpz_class pow10(unsigned d) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, d);
  return r;
}

mpz_class floor_of(const Rational& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

}  // namespace

int sturmian_symbol(const Rational& approx, const Rational& ulp, std::size_t n) {
  if (n == 0) return 0;
  const Rational nq(static_cast<unsigned long>(n));
  Rational na = nq * approx;
  mpz_class fl = floor_of(na);
  Rational frac = na - Rational(fl);
  // floor(n·alpha) must not depend on where alpha lies in the ulp ball.
  Rational to_int = frac < Rational(1, 2) ? frac : Rational(1) - frac;
  if (to_int <= nq * ulp)
    throw PrecisionError("sturmian: n*alpha too close to an integer at n=" + std::to_string(n));
  // frac(n·alpha) - (1 - alpha) = frac - (1 - approx) + (n+1)(alpha - approx).
  Rational margin = frac - (Rational(1) - approx);
  Rational slack = (nq + 1) * ulp;
  if (abs(margin) <= slack)
    throw PrecisionError("sturmian: threshold comparison undecided at n=" + std::to_string(n));
  return margin > 0 ? 1 : 0;
}

SturmianSpec::SturmianSpec(Rational approx, Rational ulp, std::size_t prefix_len)
    : approx_(std::move(approx)), ulp_(std::move(ulp)) {
  if (approx_ <= 0 || approx_ >= 1) throw ParameterError("sturmian: alpha must lie in (0,1)");
  if (ulp_ < 0) throw ParameterError("sturmian: ulp must be non-negative");
  if (approx_ - ulp_ <= 0 || approx_ + ulp_ >= 1)
    throw ParameterError("sturmian: ulp ball around alpha leaves (0,1)");
  if (prefix_len == 0) throw ParameterError("sturmian: prefix_len must be positive");
  for (std::size_t n = 0; n < prefix_len; ++n) prefix_.push_back(sturmian_symbol(approx_, ulp_, n));
  // Index prefix_len is addressable too; certify it now.
  sturmian_symbol(approx_, ulp_, prefix_len);
  label_ = to_string(approx_);
}

SturmianSpec SturmianSpec::golden(std::size_t prefix_len, unsigned digits) {
  mpz_class scale = pow10(digits);
  mpz_class r = sqrt(mpz_class(5) * scale * scale);
  SturmianSpec s(make_rational(r - scale, 2 * scale), make_rational(1, scale), prefix_len);
  s.label_ = "golden";
  return s;
}

SturmianSpec SturmianSpec::silver(std::size_t prefix_len, unsigned digits) {
  mpz_class scale = pow10(digits);
  mpz_class r = sqrt(mpz_class(2) * scale * scale);
  SturmianSpec s(make_rational(r - scale, scale), make_rational(1, scale), prefix_len);
  s.label_ = "silver";
  return s;
}

SturmianSpec SturmianSpec::from_text(const std::string& alpha, const std::string& ulp,
                                     std::size_t prefix_len) {
  if (alpha == "golden" || alpha == "silver") {
    if (!ulp.empty()) throw ParameterError("sturmian: ulp is fixed for named constants");
    return alpha == "golden" ? golden(prefix_len) : silver(prefix_len);
  }
  if (ulp.empty()) throw ParameterError("sturmian: a rational alpha needs an explicit ulp");
  return SturmianSpec(parse_rational(alpha), parse_rational(ulp), prefix_len);
}

int sturmian_word(const SturmianSpec& spec, std::size_t n) {
  if (n < spec.prefix_len()) return spec.prefix()[n];
  if (n == spec.prefix_len()) return sturmian_symbol(spec.approx(), spec.ulp(), n);
  throw ParameterError("sturmian_word: index beyond prefix_len");
}

}  // namespace chaoskit::subshift
