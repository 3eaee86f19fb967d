#include "pachsel/rational.hpp"

#include <cctype>
#include <cmath>

#include "pachsel/errors.hpp"

namespace pachsel {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Rational pow10(long exponent) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  return exponent < 0 ? Rational(mpz_class(1), p) : Rational(p);
}

Rational parse_decimal(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    bool exp_negative = false;
    if (!exp_part.empty() && (exp_part.front() == '-' || exp_part.front() == '+')) {
      exp_negative = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6)
      throw ParseError("malformed exponent in number '" + std::string(text) + "'");
    exponent = std::stol(std::string(exp_part));
    if (exp_negative) exponent = -exponent;
    s = s.substr(0, e);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part = s.substr(dot + 1);
    if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)) ||
        (int_part.empty() && frac_part.empty()))
      throw ParseError("malformed number '" + std::string(text) + "'");
    digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(s)) throw ParseError("malformed number '" + std::string(text) + "'");
    digits = std::string(s);
  }
  Rational value(mpz_class(digits, 10));
  value *= pow10(exponent);
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw ParseError("empty rational literal");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    std::string_view num_digits = num;
    if (!num_digits.empty() && (num_digits.front() == '-' || num_digits.front() == '+'))
      num_digits.remove_prefix(1);
    if (!all_digits(num_digits) || !all_digits(den))
      throw ParseError("malformed rational '" + std::string(text) + "'");
    mpz_class q(std::string(den), 10);
    if (q == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    std::string n(num);
    if (!n.empty() && n.front() == '+') n.erase(0, 1);
    Rational value(mpz_class(n, 10), q);
    value.canonicalize();
    return value;
  }
  return parse_decimal(text);
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw ParseError("non-finite coordinate");
  Rational r(value);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) {
  Rational canonical(value);
  canonical.canonicalize();
  return canonical.get_str(10);
}

double to_double(const Rational& value) { return value.get_d(); }

Rational random_symmetric_rational(std::mt19937_64& rng, const Rational& bound, unsigned bits) {
  if (bits == 0 || bits > 62) bits = 40;
  const std::uint64_t span = std::uint64_t{1} << bits;
  std::uint64_t k = 0;
  while (k == 0) k = rng() >> (64 - bits);
  const bool negative = (rng() & 1U) != 0;
  Rational frac(mpz_class(static_cast<unsigned long>(k)), mpz_class(static_cast<unsigned long>(span)));
  frac.canonicalize();
  Rational out = bound * frac;
  return negative ? Rational(-out) : out;
}

Rational random_rational_between(std::mt19937_64& rng, const Rational& lo, const Rational& hi,
                                 unsigned bits) {
  if (bits == 0 || bits > 62) bits = 40;
  const std::uint64_t span = std::uint64_t{1} << bits;
  const std::uint64_t k = rng() >> (64 - bits);
  Rational frac(mpz_class(static_cast<unsigned long>(k)), mpz_class(static_cast<unsigned long>(span)));
  frac.canonicalize();
  Rational out = lo + (hi - lo) * frac;
  return out;
}

Rational dyadic_floor(const Rational& value) {
  if (sgn(value) <= 0) throw PreconditionError("dyadic_floor needs a positive value");
  long k = 0;
  double approx = value.get_d();
  if (approx > 0 && std::isfinite(approx)) k = static_cast<long>(std::floor(std::log2(approx)));
  auto power = [](long e) {
    mpz_class p = 1;
    p <<= static_cast<mp_bitcnt_t>(e < 0 ? -e : e);
    return e < 0 ? Rational(mpz_class(1), p) : Rational(p);
  };
  Rational candidate = power(k);
  while (candidate > value) candidate = power(--k);
  while (power(k + 1) <= value) candidate = power(++k);
  return candidate;
}

}  // namespace pachsel
