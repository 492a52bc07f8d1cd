#pragma once

// Exact integer and rational helpers shared by every module. Integers are GMP
// mpz values; ratios are canonical mpq values. Floating estimates use mpf with a
// wide mantissa so entries far beyond 64 bits still produce usable estimates.

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace unimod {

using Int = mpz_class;
using Rational = mpq_class;
using Real = mpf_class;

/// Mantissa bits for Real values created by this library.
inline constexpr mp_bitcnt_t kRealPrecision = 4096;

/// Parses an optionally signed decimal integer. No whitespace, no leading '+'.
Int parse_int(std::string_view text);

/// Parses "p/q", a plain integer, or a finite decimal such as "-1.25".
Rational parse_rational(std::string_view text);

std::string to_string(const Int& value);
std::string to_string(const Rational& value);

Int floor_div(const Int& num, const Int& den);
Int ceil_div(const Int& num, const Int& den);
Int floor(const Rational& q);
Int ceil(const Rational& q);

Real to_real(const Int& value);
Real to_real(const Rational& value);
/// Nearest integer, ties away from zero.
Int round_to_int(const Real& value);
double to_double(const Rational& value);

Int abs(const Int& value);
Rational abs(const Rational& value);
int sign(const Int& value);
int sign(const Rational& value);

/// Integer power of ten.
Int pow10(unsigned long exponent);

/// Floor of log10(|q|) for q != 0, computed exactly.
long floor_log10(const Rational& q);

/// q rounded to `digits` significant decimal digits, ties to even.
struct RoundedDecimal {
  std::string text;  ///< plain decimal notation, no exponent
  Rational value;    ///< exact value of `text`
  Rational half_ulp; ///< half the spacing of the rounding grid at `value`
  unsigned digits = 0;
};

RoundedDecimal round_significant(const Rational& q, unsigned digits);

/// Half the grid spacing for a value already on a `digits`-significant grid.
Rational significant_half_ulp(const Rational& value, unsigned digits);

}  // namespace unimod
