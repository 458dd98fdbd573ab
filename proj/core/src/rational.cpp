#include "latineq/rational.hpp"

#include <cctype>
#include <cmath>
#include <string>

#include "latineq/errors.hpp"

namespace latineq {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void bad_rational(std::string_view text) {
  throw InvalidInput("invalid rational literal \"" + std::string(text) + "\"");
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
    s = s.substr(0, e);
    bool exp_negative = false;
    if (!exp_part.empty() && (exp_part.front() == '-' || exp_part.front() == '+')) {
      exp_negative = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6) bad_rational(text);
    exponent = std::stol(std::string(exp_part));
    if (exp_negative) exponent = -exponent;
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if (whole.empty() && frac.empty()) bad_rational(text);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac))) {
      bad_rational(text);
    }
    digits = std::string(whole) + std::string(frac);
    exponent -= static_cast<long>(frac.size());
  } else {
    if (!all_digits(s)) bad_rational(text);
    digits = std::string(s);
  }
  if (digits.empty()) bad_rational(text);
  Rational value(BigInt(digits, 10));
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  if (exponent < 0) {
    value /= scale;
  } else {
    value *= scale;
  }
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (text.empty()) bad_rational(text);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);

  std::string_view num = text.substr(0, slash);
  std::string_view den = text.substr(slash + 1);
  std::string_view num_digits = num;
  if (!num_digits.empty() && (num_digits.front() == '-' || num_digits.front() == '+')) {
    num_digits.remove_prefix(1);
  }
  if (!all_digits(num_digits) || !all_digits(den)) bad_rational(text);
  BigInt n(std::string(num_digits), 10);
  BigInt d(std::string(den), 10);
  if (d == 0) throw InvalidInput("zero denominator in \"" + std::string(text) + "\"");
  if (!num.empty() && num.front() == '-') n = -n;
  Rational value(n, d);
  value.canonicalize();
  return value;
}

std::string to_string(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_str();
}

std::string to_string(const BigInt& value) { return value.get_str(); }

double to_double(const Rational& value) {
  if (value == 0) return 0.0;
  const BigInt& den = value.get_den();
  BigInt num = abs(value.get_num());
  if (mpz_sizeinbase(num.get_mpz_t(), 2) <= 53 && mpz_sizeinbase(den.get_mpz_t(), 2) <= 53) {
    // Both parts are exact doubles, so IEEE division rounds once.
    return value.get_num().get_d() / den.get_d();
  }
  // Integer quotient with at least 55 significant bits, then round half to
  // even at bit 53 using the remainder as sticky bit.
  long shift = 55 + static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2)) -
               static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2));
  BigInt scaled_num = num;
  BigInt scaled_den = den;
  if (shift > 0) {
    mpz_mul_2exp(scaled_num.get_mpz_t(), scaled_num.get_mpz_t(), static_cast<unsigned long>(shift));
  } else if (shift < 0) {
    mpz_mul_2exp(scaled_den.get_mpz_t(), scaled_den.get_mpz_t(), static_cast<unsigned long>(-shift));
  }
  BigInt quotient;
  BigInt remainder;
  mpz_tdiv_qr(quotient.get_mpz_t(), remainder.get_mpz_t(), scaled_num.get_mpz_t(),
              scaled_den.get_mpz_t());
  long extra = static_cast<long>(mpz_sizeinbase(quotient.get_mpz_t(), 2)) - 53;
  bool sticky = remainder != 0;
  if (extra > 0) {
    BigInt low;
    mpz_tdiv_r_2exp(low.get_mpz_t(), quotient.get_mpz_t(), static_cast<unsigned long>(extra));
    mpz_tdiv_q_2exp(quotient.get_mpz_t(), quotient.get_mpz_t(), static_cast<unsigned long>(extra));
    bool half = mpz_tstbit(low.get_mpz_t(), static_cast<mp_bitcnt_t>(extra - 1)) != 0;
    mpz_clrbit(low.get_mpz_t(), static_cast<mp_bitcnt_t>(extra - 1));
    sticky = sticky || low != 0;
    if (half && (sticky || mpz_odd_p(quotient.get_mpz_t()))) quotient += 1;
    shift -= extra;
  }
  double magnitude = std::ldexp(quotient.get_d(), static_cast<int>(-shift));
  return value < 0 ? -magnitude : magnitude;
}

double log_of(const BigInt& value) {
  long exp2 = 0;
  double mantissa = mpz_get_d_2exp(&exp2, value.get_mpz_t());
  return std::log(mantissa) + static_cast<double>(exp2) * std::log(2.0);
}

double log_of(const Rational& value) {
  return log_of(value.get_num()) - log_of(value.get_den());
}

Rational pow_exact(const Rational& x, unsigned long k) {
  Rational base = abs(x);
  BigInt num;
  BigInt den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), k);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), k);
  return Rational(num, den);
}

bool is_positive_integer(const Rational& p) { return p > 0 && p.get_den() == 1; }

double pow_abs(const Rational& x, const Rational& p) {
  if (x == 0) return 0.0;
  if (is_positive_integer(p) && p.get_num().fits_ulong_p()) {
    return to_double(pow_exact(x, p.get_num().get_ui()));
  }
  return std::pow(to_double(abs(x)), to_double(p));
}

}  // namespace latineq
