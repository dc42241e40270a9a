#include "pickleball/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace pickleball {

namespace {

mpz_class pow10(int k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(k));
  return r;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// Rounded quotient |num|/den, half away from zero. den > 0.
mpz_class divide_rounded(const mpz_class& num, const mpz_class& den) {
  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (2 * r >= den) ++q;
  return q;
}

std::string format_scaled(bool negative, const mpz_class& scaled, int digits) {
  std::string body = scaled.get_str();
  if (static_cast<int>(body.size()) <= digits)
    body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
  std::string out;
  if (negative) out += '-';
  out += body.substr(0, body.size() - static_cast<std::size_t>(digits));
  if (digits > 0) {
    out += '.';
    out += body.substr(body.size() - static_cast<std::size_t>(digits));
  }
  return out;
}

}  // namespace

Rational make_rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty rational literal");

  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (text.empty()) throw std::invalid_argument("sign without digits");

  Rational value;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw std::invalid_argument("malformed fraction literal");
    mpz_class n(std::string(num), 10), d(std::string(den), 10);
    if (d == 0) throw std::invalid_argument("fraction with zero denominator");
    value = Rational(n, d);
    value.canonicalize();
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    if (int_part.empty() && frac_part.empty())
      throw std::invalid_argument("malformed decimal literal");
    if (!int_part.empty() && !all_digits(int_part))
      throw std::invalid_argument("malformed decimal literal");
    if (!frac_part.empty() && !all_digits(frac_part))
      throw std::invalid_argument("malformed decimal literal");
    mpz_class scale = pow10(static_cast<int>(frac_part.size()));
    mpz_class n = int_part.empty() ? mpz_class(0) : mpz_class(std::string(int_part), 10);
    n *= scale;
    if (!frac_part.empty()) n += mpz_class(std::string(frac_part), 10);
    value = Rational(n, scale);
    value.canonicalize();
  } else {
    if (!all_digits(text)) throw std::invalid_argument("malformed integer literal");
    value = Rational(mpz_class(std::string(text), 10));
  }
  if (negative) value = -value;
  return value;
}

int sign_of(const Rational& v) { return sgn(v); }

std::string to_decimal_string(const Rational& v, int digits) {
  if (digits < 0) throw std::invalid_argument("negative digit count");
  mpz_class num = abs(v.get_num());
  mpz_class scaled = divide_rounded(num * pow10(digits), v.get_den());
  return format_scaled(sgn(v) < 0, scaled, digits);
}

std::string to_scientific_string(const Rational& v, int significant_digits) {
  if (significant_digits < 1) throw std::invalid_argument("need at least one significant digit");
  if (v == 0) {
    std::string out = "0";
    if (significant_digits > 1) out += "." + std::string(static_cast<std::size_t>(significant_digits) - 1, '0');
    return out + "e+00";
  }
  Rational mag = abs(v);
  // Decimal exponent e with 10^e <= |v| < 10^(e+1).
  int e = 0;
  while (mag >= pow10(1)) {
    mag /= 10;
    ++e;
  }
  while (mag < 1) {
    mag *= 10;
    --e;
  }
  Rational scaled = abs(v);
  int shift = significant_digits - 1 - e;
  if (shift >= 0)
    scaled *= pow10(shift);
  else
    scaled /= pow10(-shift);
  mpz_class mant = divide_rounded(scaled.get_num(), scaled.get_den());
  if (mant == pow10(significant_digits)) {  // rounding carried: 9.99..9 -> 10.0..0
    mant = pow10(significant_digits - 1);
    ++e;
  }
  std::string m = mant.get_str();
  std::string out;
  if (sgn(v) < 0) out += '-';
  out += m.front();
  if (significant_digits > 1) {
    out += '.';
    out += m.substr(1);
  }
  out += 'e';
  out += e < 0 ? '-' : '+';
  int ae = e < 0 ? -e : e;
  if (ae < 10) out += '0';
  out += std::to_string(ae);
  return out;
}

std::string to_fraction_string(const Rational& v) {
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

std::string sqrt_decimal_string(const Rational& v, int digits) {
  if (sgn(v) < 0) throw std::invalid_argument("sqrt of negative rational");
  if (digits < 0) throw std::invalid_argument("negative digit count");
  // sqrt(p/q) * 10^d = sqrt(p*q*10^(2d)) / q; round the integer part of the
  // square root to the nearest multiple of q, half away from zero.
  const mpz_class& p = v.get_num();
  const mpz_class& q = v.get_den();
  mpz_class big = p * q * pow10(2 * digits);
  mpz_class s;
  mpz_sqrt(s.get_mpz_t(), big.get_mpz_t());
  mpz_class m = s / q;
  // Candidates m and m+1 bracket sqrt(big)/q; pick the nearer, ties up.
  mpz_class lo = m * q, hi = (m + 1) * q;
  if (big - lo * lo >= hi * hi - big) ++m;
  return format_scaled(false, m, digits);
}

double to_double(const Rational& v) { return v.get_d(); }

}  // namespace pickleball
