#include "chaoskit/rational.hpp"

#include <cctype>
#include <cmath>
#include <string>

#include "chaoskit/error.hpp"

namespace chaoskit {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

mpz_class pow10(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

Rational parse_decimal(std::string_view text, std::string_view whole) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  long exponent = 0;
  auto epos = text.find_first_of("eE");
  if (epos != std::string_view::npos) {
    std::string_view exp = text.substr(epos + 1);
    bool exp_negative = false;
    if (!exp.empty() && (exp.front() == '-' || exp.front() == '+')) {
      exp_negative = exp.front() == '-';
      exp.remove_prefix(1);
    }
    if (!all_digits(exp) || exp.size() > 6)
      throw ParseError("bad exponent in number: " + std::string(whole));
    exponent = std::stol(std::string(exp));
    if (exp_negative) exponent = -exponent;
    text = text.substr(0, epos);
  }
  std::string digits;
  auto dot = text.find('.');
  std::string_view int_part = text.substr(0, dot);
  std::string_view frac_part =
      dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (int_part.empty() && frac_part.empty())
    throw ParseError("empty number: " + std::string(whole));
  if ((!int_part.empty() && !all_digits(int_part)) ||
      (!frac_part.empty() && !all_digits(frac_part)))
    throw ParseError("not a number: " + std::string(whole));
  digits.append(int_part);
  digits.append(frac_part);
  exponent -= static_cast<long>(frac_part.size());
  mpz_class mantissa(digits, 10);
  Rational r;
  if (exponent >= 0) {
    r = Rational(mantissa * pow10(static_cast<unsigned long>(exponent)));
  } else {
    r = Rational(mantissa, pow10(static_cast<unsigned long>(-exponent)));
  }
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view whole = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text, whole);

  std::string_view num = text.substr(0, slash);
  std::string_view den = text.substr(slash + 1);
  bool negative = false;
  if (!num.empty() && (num.front() == '-' || num.front() == '+')) {
    negative = num.front() == '-';
    num.remove_prefix(1);
  }
  if (!all_digits(num) || !all_digits(den))
    throw ParseError("not a rational: " + std::string(whole));
  mpz_class d{std::string(den), 10};
  if (d == 0) throw ParseError("zero denominator: " + std::string(whole));
  Rational r(mpz_class{std::string(num), 10}, d);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

Rational make_rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw DomainError("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_str();
}

double to_double(const Rational& r) {
  // mpq_get_d truncates; round to nearest, ties to even.
  if (r == 0) return 0.0;
  mpz_class n = abs(r.get_num());
  const mpz_class& d = r.get_den();
  long e = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(d.get_mpz_t(), 2)) - 53;
  mpz_class q, rem, num, den;
  for (;;) {
    num = n;
    den = d;
    if (e >= 0)
      mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
    else
      mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
    mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (mpz_sizeinbase(q.get_mpz_t(), 2) <= 53) break;
    ++e;
  }
  const int c = cmp(2 * rem, den);
  if (c > 0 || (c == 0 && mpz_odd_p(q.get_mpz_t()))) ++q;
  const double v = std::ldexp(q.get_d(), static_cast<int>(e));
  return r < 0 ? -v : v;
}

Rational from_double(double x) {
  if (!std::isfinite(x)) throw DomainError("non-finite value has no rational form");
  Rational r;
  mpq_set_d(r.get_mpq_t(), x);
  return r;
}

}  // namespace chaoskit
