#include "unimod/numeric.hpp"

#include <algorithm>
#include <cctype>

#include "unimod/error.hpp"

namespace unimod {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvalidKey: return "InvalidKey";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::ComplexFixedPoints: return "ComplexFixedPoints";
    case ErrorKind::DivisionByZeroInOrbit: return "DivisionByZeroInOrbit";
    case ErrorKind::ZeroSequenceEntry: return "ZeroSequenceEntry";
    case ErrorKind::ZeroDenominator: return "ZeroDenominator";
    case ErrorKind::UnknownSymbol: return "UnknownSymbol";
    case ErrorKind::NonIntegralPlaintext: return "NonIntegralPlaintext";
    case ErrorKind::NegativePlaintext: return "NegativePlaintext";
    case ErrorKind::NoSolution: return "NoSolution";
    case ErrorKind::NotGoldenOracle: return "NotGoldenOracle";
    case ErrorKind::NoMatchInBounds: return "NoMatchInBounds";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

[[noreturn]] void bad_number(std::string_view text) {
  throw Error(ErrorKind::ParseError, "not a number: '" + std::string(text) + "'");
}

}  // namespace

Int parse_int(std::string_view text) {
  std::string_view digits = text;
  if (!digits.empty() && digits.front() == '-') digits.remove_prefix(1);
  if (!all_digits(digits)) bad_number(text);
  return Int(std::string(text), 10);
}

Rational parse_rational(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Int num = parse_int(text.substr(0, slash));
    std::string_view den_text = text.substr(slash + 1);
    if (!all_digits(den_text)) bad_number(text);
    Int den = parse_int(den_text);
    if (den == 0) throw Error(ErrorKind::ZeroDenominator, "zero denominator in '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool negative = !whole.empty() && whole.front() == '-';
    if (negative) whole.remove_prefix(1);
    if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac)) bad_number(text);
    Int num(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
    if (negative) num = -num;
    Rational q(num, pow10(frac.size()));
    q.canonicalize();
    return q;
  }
  return Rational(parse_int(text));
}

std::string to_string(const Int& value) { return value.get_str(10); }

std::string to_string(const Rational& value) { return value.get_str(10); }

Int floor_div(const Int& num, const Int& den) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

Int ceil_div(const Int& num, const Int& den) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

Int floor(const Rational& q) { return floor_div(q.get_num(), q.get_den()); }

Int ceil(const Rational& q) { return ceil_div(q.get_num(), q.get_den()); }

Real to_real(const Int& value) { return Real(value, kRealPrecision); }

Real to_real(const Rational& value) { return Real(value, kRealPrecision); }

Int round_to_int(const Real& value) {
  Real half(0.5, kRealPrecision);
  if (value >= 0) {
    Real shifted(value + half, kRealPrecision);
    return Int(::floor(shifted));
  }
  Real shifted(-value + half, kRealPrecision);
  return -Int(::floor(shifted));
}

double to_double(const Rational& value) { return to_real(value).get_d(); }

Int abs(const Int& value) { return value < 0 ? Int(-value) : value; }

Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

int sign(const Int& value) { return sgn(value); }

int sign(const Rational& value) { return sgn(value); }

Int pow10(unsigned long exponent) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, exponent);
  return r;
}

namespace {

Rational power_of_ten(long e) {
  if (e >= 0) return Rational(pow10(static_cast<unsigned long>(e)));
  return Rational(Int(1), pow10(static_cast<unsigned long>(-e)));
}

// x rounded to the nearest integer, ties to even.
Int round_half_even(const Rational& x) {
  Int lower = floor(x);
  Rational frac = x - Rational(lower);
  int cmp = ::cmp(frac, Rational(1, 2));
  if (cmp > 0 || (cmp == 0 && mpz_odd_p(lower.get_mpz_t()))) return lower + 1;
  return lower;
}

}  // namespace

long floor_log10(const Rational& q) {
  if (q == 0) throw Error(ErrorKind::InvalidArgument, "floor_log10 of zero");
  Rational a = abs(q);
  long e = static_cast<long>(mpz_sizeinbase(a.get_num_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(a.get_den_mpz_t(), 10));
  while (power_of_ten(e) > a) --e;
  while (power_of_ten(e + 1) <= a) ++e;
  return e;
}

Rational significant_half_ulp(const Rational& value, unsigned digits) {
  if (digits == 0) throw Error(ErrorKind::InvalidArgument, "digit count must be positive");
  if (value == 0) return Rational(0);
  long scale = static_cast<long>(digits) - 1 - floor_log10(value);
  return power_of_ten(-scale) / 2;
}

RoundedDecimal round_significant(const Rational& q, unsigned digits) {
  if (digits == 0) throw Error(ErrorKind::InvalidArgument, "digit count must be positive");
  RoundedDecimal out;
  out.digits = digits;
  if (q == 0) {
    out.text = "0";
    return out;
  }
  const bool negative = q < 0;
  Rational a = abs(q);
  long scale = static_cast<long>(digits) - 1 - floor_log10(a);
  Int mantissa = round_half_even(a * power_of_ten(scale));
  if (mantissa == pow10(digits)) {
    mantissa /= 10;
    --scale;
  }
  out.value = Rational(mantissa) * power_of_ten(-scale);
  out.value.canonicalize();
  out.half_ulp = power_of_ten(-scale) / 2;

  std::string body = mantissa.get_str(10);
  if (scale <= 0) {
    body.append(static_cast<std::size_t>(-scale), '0');
  } else {
    auto frac_len = static_cast<std::size_t>(scale);
    if (body.size() <= frac_len) body.insert(0, frac_len - body.size() + 1, '0');
    body.insert(body.size() - frac_len, ".");
  }
  out.text = negative ? "-" + body : body;
  if (negative) out.value = -out.value;
  return out;
}

}  // namespace unimod
