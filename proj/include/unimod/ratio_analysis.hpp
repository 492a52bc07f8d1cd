#pragma once

// The ratio map a -> t - d / a: its fixed points, exact orbits, and the
// monotonicity pattern of convergence. Also the exact row-ratio interval and
// the column ratio used by the error-correction checks.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "unimod/matrix_core.hpp"
#include "unimod/numeric.hpp"

namespace unimod {

struct RatioParams {
  Int t;
  Int d;
  Rational a0;
};

/// Roots (t +- sqrt(disc)) / 2 of x^2 - t x + d = 0, disc = t^2 - 4d >= 0.
class FixedPoints {
 public:
  FixedPoints(Int t, Int d);

  const Int& trace() const noexcept { return t_; }
  const Int& det() const noexcept { return d_; }
  const Int& discriminant() const noexcept { return disc_; }

  double plus() const noexcept { return plus_.get_d(); }
  double minus() const noexcept { return minus_.get_d(); }
  const Real& plus_real() const noexcept { return plus_; }
  const Real& minus_real() const noexcept { return minus_; }

  /// Exact sign of q - phi_plus (resp. q - phi_minus).
  int compare_plus(const Rational& q) const;
  int compare_minus(const Rational& q) const;

 private:
  // Sign of q - (t + s sqrt(disc)) / 2 for s = +-1.
  int compare_root(const Rational& q, int s) const;

  Int t_;
  Int d_;
  Int disc_;
  Real plus_;
  Real minus_;
};

/// Throws ComplexFixedPoints when t^2 < 4d.
FixedPoints fixed_points(const Int& t, const Int& d);

/// Exact orbit a0, a1, ..., a_steps of a -> t - d / a.
/// Throws DivisionByZeroInOrbit if an iterate is 0 before the last step.
std::vector<Rational> ratio_iterate(const RatioParams& params, std::size_t steps);

inline constexpr std::size_t kDefaultOrbitLength = 64;

enum class ConvergenceMode { MonotoneDecreasing, MonotoneIncreasing, AlternatingSplit, Divergent };

std::string_view to_string(ConvergenceMode mode) noexcept;

struct ConvergenceProfile {
  ConvergenceMode mode = ConvergenceMode::Divergent;
  std::vector<Rational> orbit;
  std::vector<double> errors;  ///< |a_n - phi_plus|
};

ConvergenceProfile convergence_profile(const RatioParams& params, std::size_t steps = kDefaultOrbitLength);

/// Envelope errors[n] <= scale * rate^n fitted over the non-zero errors.
struct DecayFit {
  double scale = 0.0;
  double rate = 0.0;
};

/// rate is the largest ratio of consecutive errors over the orbit tail starting
/// at `skip`; scale is the smallest constant that makes the envelope hold there.
DecayFit fit_exponential_decay(const std::vector<double>& errors, std::size_t skip = 0);

struct RatioInterval {
  Rational lo;
  Rational hi;

  bool contains(const Rational& q) const { return lo <= q && q <= hi; }
};

/// [min, max] of {A_{n+1} / A_n, B_{n+1} / B_n}. Throws ZeroSequenceEntry.
RatioInterval row_ratio_interval(const CodingMatrix& cm);

/// True iff (first, second) is a non-negative combination of the coding matrix
/// rows, i.e. first / second lies in the interval or the row is (0, 0).
bool row_within_interval(const Int& first, const Int& second, const RatioInterval& interval);

enum class RatioOrientation { BottomOverTop, TopOverBottom };

std::string_view to_string(RatioOrientation orientation) noexcept;
std::optional<RatioOrientation> parse_orientation(std::string_view text) noexcept;

struct ColumnRatio {
  RatioOrientation orientation = RatioOrientation::BottomOverTop;
  Rational left;   ///< c21 / c11 (or c11 / c21)
  Rational right;  ///< c22 / c12 (or c12 / c22)
  double mean = 0.0;
};

/// Both column ratios of a ciphertext. Throws ZeroDenominator.
ColumnRatio column_ratio(const Mat2& c, RatioOrientation orientation = RatioOrientation::BottomOverTop);

}  // namespace unimod
