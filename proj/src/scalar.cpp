#include "heat/scalar.hpp"

#include <cctype>
#include <cmath>

#include "heat/errors.hpp"

namespace heat {

namespace {

BigInt pow10(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 0; i < n; ++i) r *= 10;
  return r;
}

Rational parse_decimal(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';
  BigInt digits = 0;
  int scale = 0;
  bool any = false;
  bool point = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits = digits * 10 + (c - '0');
      if (point) ++scale;
      any = true;
    } else if (c == '.' && !point) {
      point = true;
    } else {
      break;
    }
  }
  if (!any) throw DomainError("malformed number: '" + std::string(text) + "'");
  long exponent = 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool eneg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) eneg = text[i++] == '-';
    if (i == text.size()) throw DomainError("malformed exponent: '" + std::string(text) + "'");
    for (; i < text.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) break;
      exponent = exponent * 10 + (text[i] - '0');
      if (exponent > 4000) throw DomainError("exponent too large: '" + std::string(text) + "'");
    }
    if (eneg) exponent = -exponent;
  }
  if (i != text.size()) throw DomainError("malformed number: '" + std::string(text) + "'");
  exponent -= scale;
  Rational r = exponent >= 0 ? Rational(digits * pow10(static_cast<unsigned>(exponent)))
                             : Rational(digits) / Rational(pow10(static_cast<unsigned>(-exponent)));
  return negative ? Rational(-r) : r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = parse_decimal(text.substr(0, slash));
    Rational den = parse_decimal(text.substr(slash + 1));
    if (den == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
    return num / den;
  }
  return parse_decimal(text);
}

std::string to_string(const Rational& x) {
  return boost::multiprecision::numerator(x).str() +
         (boost::multiprecision::denominator(x) == 1 ? std::string{}
                                                     : "/" + boost::multiprecision::denominator(x).str());
}

double log_abs(const BigInt& x) {
  if (x == 0) throw DomainError("log_abs of zero");
  BigInt a = boost::multiprecision::abs(x);
  const auto bits = boost::multiprecision::msb(a);
  if (bits < 1000) return std::log(a.convert_to<double>());
  const auto shift = bits - 60;
  BigInt top = a >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

double log_abs(const Rational& x) {
  if (x == 0) throw DomainError("log_abs of zero");
  return log_abs(BigInt(boost::multiprecision::numerator(x))) -
         log_abs(BigInt(boost::multiprecision::denominator(x)));
}

}  // namespace heat
