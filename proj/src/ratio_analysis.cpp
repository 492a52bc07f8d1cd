#include "unimod/ratio_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "unimod/error.hpp"

namespace unimod {

FixedPoints::FixedPoints(Int t, Int d) : t_(std::move(t)), d_(std::move(d)) {
  disc_ = t_ * t_ - 4 * d_;
  if (disc_ < 0) {
    throw Error(ErrorKind::ComplexFixedPoints, "t^2 - 4d = " + to_string(disc_) + " < 0: the ratios diverge");
  }
  Real root = sqrt(to_real(disc_));
  plus_ = Real((to_real(t_) + root) / 2, kRealPrecision);
  minus_ = Real((to_real(t_) - root) / 2, kRealPrecision);
}

int FixedPoints::compare_root(const Rational& q, int s) const {
  Rational w = 2 * q - Rational(t_);
  Rational w2 = w * w;
  Rational disc(disc_);
  if (s > 0) {
    if (w < 0) return -1;
    return cmp(w2, disc) > 0 ? 1 : (w2 == disc ? 0 : -1);
  }
  if (w >= 0) return (w == 0 && disc_ == 0) ? 0 : 1;
  int c = cmp(disc, w2);
  return c > 0 ? 1 : (c == 0 ? 0 : -1);
}

int FixedPoints::compare_plus(const Rational& q) const { return compare_root(q, +1); }

int FixedPoints::compare_minus(const Rational& q) const { return compare_root(q, -1); }

FixedPoints fixed_points(const Int& t, const Int& d) { return FixedPoints(t, d); }

std::vector<Rational> ratio_iterate(const RatioParams& params, std::size_t steps) {
  if (params.a0 == 0) throw Error(ErrorKind::InvalidArgument, "initial ratio a0 must be non-zero");
  std::vector<Rational> orbit;
  orbit.reserve(steps + 1);
  orbit.push_back(params.a0);
  const Rational t(params.t);
  const Rational d(params.d);
  for (std::size_t i = 0; i < steps; ++i) {
    const Rational& a = orbit.back();
    if (a == 0) {
      throw Error(ErrorKind::DivisionByZeroInOrbit, "a_" + std::to_string(i) + " = 0");
    }
    Rational next = t - d / a;
    next.canonicalize();
    orbit.push_back(std::move(next));
  }
  return orbit;
}

std::string_view to_string(ConvergenceMode mode) noexcept {
  switch (mode) {
    case ConvergenceMode::MonotoneDecreasing: return "MonotoneDecreasing";
    case ConvergenceMode::MonotoneIncreasing: return "MonotoneIncreasing";
    case ConvergenceMode::AlternatingSplit: return "AlternatingSplit";
    case ConvergenceMode::Divergent: return "Divergent";
  }
  return "Divergent";
}

namespace {

// Every step of `seq` (from `start`, stride `stride`) moves in direction `dir`
// (-1 non-increasing, +1 non-decreasing) and stays on side `side` of phi_plus.
bool monotone_on_side(const std::vector<Rational>& seq, const FixedPoints& fp, std::size_t start,
                      std::size_t stride, int dir, int side) {
  for (std::size_t i = start; i < seq.size(); i += stride) {
    int where = fp.compare_plus(seq[i]);
    if (where != 0 && where != side) return false;
    if (i + stride < seq.size()) {
      int step = cmp(seq[i + stride], seq[i]);
      if (step != 0 && step != dir) return false;
    }
  }
  return true;
}

ConvergenceMode classify(const std::vector<Rational>& orbit, const FixedPoints& fp) {
  if (monotone_on_side(orbit, fp, 0, 1, -1, +1)) return ConvergenceMode::MonotoneDecreasing;
  if (monotone_on_side(orbit, fp, 0, 1, +1, -1)) return ConvergenceMode::MonotoneIncreasing;
  if (orbit.size() >= 3) {
    bool evens_down = monotone_on_side(orbit, fp, 0, 2, -1, +1) && monotone_on_side(orbit, fp, 1, 2, +1, -1);
    bool evens_up = monotone_on_side(orbit, fp, 0, 2, +1, -1) && monotone_on_side(orbit, fp, 1, 2, -1, +1);
    if (evens_down || evens_up) return ConvergenceMode::AlternatingSplit;
  }
  return ConvergenceMode::Divergent;
}

}  // namespace

ConvergenceProfile convergence_profile(const RatioParams& params, std::size_t steps) {
  FixedPoints fp(params.t, params.d);
  ConvergenceProfile profile;
  profile.orbit = ratio_iterate(params, steps);
  profile.mode = classify(profile.orbit, fp);
  profile.errors.reserve(profile.orbit.size());
  for (const auto& a : profile.orbit) {
    Real diff(to_real(a) - fp.plus_real(), kRealPrecision);
    profile.errors.push_back(std::fabs(diff.get_d()));
  }
  return profile;
}

DecayFit fit_exponential_decay(const std::vector<double>& errors, std::size_t skip) {
  DecayFit fit;
  for (std::size_t i = skip; i + 1 < errors.size(); ++i) {
    if (errors[i] > 0.0 && errors[i + 1] > 0.0) fit.rate = std::max(fit.rate, errors[i + 1] / errors[i]);
  }
  if (fit.rate <= 0.0) {
    for (std::size_t i = skip; i < errors.size(); ++i) fit.scale = std::max(fit.scale, errors[i]);
    return fit;
  }
  double log_scale = -std::numeric_limits<double>::infinity();
  const double log_rate = std::log(fit.rate);
  for (std::size_t i = skip; i < errors.size(); ++i) {
    if (errors[i] > 0.0) log_scale = std::max(log_scale, std::log(errors[i]) - static_cast<double>(i) * log_rate);
  }
  fit.scale = std::exp(log_scale);
  return fit;
}

RatioInterval row_ratio_interval(const CodingMatrix& cm) {
  if (cm.a_cur() == 0 || cm.b_cur() == 0) {
    throw Error(ErrorKind::ZeroSequenceEntry, "A_n or B_n is zero; the row-ratio interval is undefined");
  }
  Rational ra(cm.a_next(), cm.a_cur());
  Rational rb(cm.b_next(), cm.b_cur());
  ra.canonicalize();
  rb.canonicalize();
  if (ra <= rb) return {ra, rb};
  return {rb, ra};
}

bool row_within_interval(const Int& first, const Int& second, const RatioInterval& interval) {
  if (first == 0 && second == 0) return true;
  if (second <= 0 || first < 0) return false;
  Rational q(first, second);
  q.canonicalize();
  return interval.contains(q);
}

std::string_view to_string(RatioOrientation orientation) noexcept {
  return orientation == RatioOrientation::BottomOverTop ? "bottom-over-top" : "top-over-bottom";
}

std::optional<RatioOrientation> parse_orientation(std::string_view text) noexcept {
  if (text == "bottom-over-top") return RatioOrientation::BottomOverTop;
  if (text == "top-over-bottom") return RatioOrientation::TopOverBottom;
  return std::nullopt;
}

ColumnRatio column_ratio(const Mat2& c, RatioOrientation orientation) {
  const bool bottom_over_top = orientation == RatioOrientation::BottomOverTop;
  const Int& num_left = bottom_over_top ? c.a21 : c.a11;
  const Int& den_left = bottom_over_top ? c.a11 : c.a21;
  const Int& num_right = bottom_over_top ? c.a22 : c.a12;
  const Int& den_right = bottom_over_top ? c.a12 : c.a22;
  if (den_left == 0 || den_right == 0) {
    throw Error(ErrorKind::ZeroDenominator, "column ratio undefined: zero denominator in " + to_string(c));
  }
  ColumnRatio r;
  r.orientation = orientation;
  r.left = Rational(num_left, den_left);
  r.right = Rational(num_right, den_right);
  r.left.canonicalize();
  r.right.canonicalize();
  r.mean = (to_double(r.left) + to_double(r.right)) / 2.0;
  return r;
}

}  // namespace unimod
