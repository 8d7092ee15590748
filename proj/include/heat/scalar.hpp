#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace heat {

using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                  boost::multiprecision::et_off>;
// 100 decimal digits; exponent range is wide enough for e^{-s^beta} at
// moderate s, anything smaller goes through the log-domain routines.
using HighFloat =
    boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<100>,
                                  boost::multiprecision::et_off>;

/// Arithmetic mode for Laplacian iterates and audits.
enum class Arithmetic { floating, exact };

inline const char* to_string(Arithmetic a) {
  return a == Arithmetic::exact ? "exact-rational" : "binary64";
}

template <class T>
T from_double(double x);

template <>
inline double from_double<double>(double x) {
  return x;
}

// mpq_set_d is exact: every finite double is a dyadic rational.
template <>
inline Rational from_double<Rational>(double x) {
  return Rational(x);
}

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.convert_to<double>(); }
inline double to_double(const BigInt& x) { return x.convert_to<double>(); }
inline double to_double(const HighFloat& x) { return x.convert_to<double>(); }

inline double abs_value(double x) { return std::fabs(x); }
inline Rational abs_value(const Rational& x) { return boost::multiprecision::abs(x); }

/// Parses a plain decimal literal ("0.3", "-2", "1e-3", "7/20") into the
/// exact rational it denotes. Throws DomainError on malformed input.
Rational parse_rational(std::string_view text);

/// p/q rendering for reports.
std::string to_string(const Rational& x);

/// Natural log of |x| for a nonzero big integer, accurate to double precision
/// even when x is far outside the double range.
double log_abs(const BigInt& x);
double log_abs(const Rational& x);

}  // namespace heat
