#include "unimod/error_correction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "unimod/error.hpp"

namespace unimod {

std::string_view to_string(ErrorClass cls) noexcept {
  switch (cls) {
    case ErrorClass::None: return "none";
    case ErrorClass::Single: return "single";
    case ErrorClass::Diagonal: return "diagonal";
    case ErrorClass::AntiDiagonal: return "antidiagonal";
    case ErrorClass::ColumnLeft: return "column_left";
    case ErrorClass::ColumnRight: return "column_right";
    case ErrorClass::RowTop: return "row_top";
    case ErrorClass::RowBottom: return "row_bottom";
  }
  return "none";
}

std::optional<ErrorClass> parse_error_class(std::string_view name) noexcept {
  for (ErrorClass cls : {ErrorClass::None, ErrorClass::Single, ErrorClass::Diagonal, ErrorClass::AntiDiagonal,
                         ErrorClass::ColumnLeft, ErrorClass::ColumnRight, ErrorClass::RowTop, ErrorClass::RowBottom}) {
    if (to_string(cls) == name) return cls;
  }
  return std::nullopt;
}

std::string_view to_string(FailureKind kind) noexcept {
  switch (kind) {
    case FailureKind::NoSingleCandidate: return "NoSingleCandidate";
    case FailureKind::AmbiguousSingle: return "AmbiguousSingle";
    case FailureKind::NonPositiveTarget: return "NonPositiveTarget";
    case FailureKind::NoFactorNearEstimate: return "NoFactorNearEstimate";
    case FailureKind::NoDiophantineSolution: return "NoDiophantineSolution";
    case FailureKind::NoSolutionNearEstimate: return "NoSolutionNearEstimate";
    case FailureKind::ColumnRatioMissing: return "ColumnRatioMissing";
    case FailureKind::Ambiguous: return "Ambiguous";
    case FailureKind::Uncorrectable: return "Uncorrectable";
  }
  return "Uncorrectable";
}

CorrectionContext CorrectionContext::from(const CipherPackage& pkg, const CipherKey& key,
                                          const CorrectionOptions& options) {
  CorrectionContext ctx;
  ctx.key = &key;
  ctx.expected_det = key.coding().det_m * pkg.det_p;
  ctx.phi = fixed_points(key.coding().t, key.coding().d).plus_real();
  ctx.interval = key.interval();
  ctx.rho = pkg.column_ratio;
  if (options.use_plaintext_bound) ctx.plaintext_bound = key.alphabet().size();
  ctx.options = options;
  return ctx;
}

DiophantineFamily diophantine_solve(const Int& a, const Int& b, const Int& c) {
  if (a == 0 && b == 0) throw Error(ErrorKind::InvalidArgument, "a x - b y = c needs (a, b) != (0, 0)");
  Int g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (!mpz_divisible_p(c.get_mpz_t(), g.get_mpz_t())) {
    throw Error(ErrorKind::NoSolution, "gcd(" + to_string(a) + ", " + to_string(b) + ") = " + to_string(g) +
                                           " does not divide " + to_string(c));
  }
  Int m = c / g;
  DiophantineFamily f{Int(s * m), Int(-t * m), Int(b / g), Int(a / g)};
  if (f.dx < 0) {
    f.dx = -f.dx;
    f.dy = -f.dy;
  }
  if (f.dx > 0) {
    Int q = floor_div(f.x0, f.dx);
    f.x0 -= q * f.dx;
    f.y0 -= q * f.dy;
  } else {
    if (f.dy < 0) f.dy = -f.dy;
    Int q = floor_div(f.y0, f.dy);
    f.y0 -= q * f.dy;
  }
  return f;
}

PlaintextBounds plaintext_bounds(const CorrectionContext& ctx) {
  if (!ctx.plaintext_bound) throw Error(ErrorKind::InvalidArgument, "plaintext bound is not known");
  const CodingMatrix& cm = ctx.coding();
  Int top = Int(*ctx.plaintext_bound) - 1;
  if (top < 0) top = 0;
  return {{Int(0), Int(top * (cm.a_next() + cm.b_next()))}, {Int(0), Int(top * (cm.a_cur() + cm.b_cur()))}};
}

namespace {

// Closed integer range; a missing end is unbounded.
struct Span {
  std::optional<Int> lo;
  std::optional<Int> hi;

  static Span all() { return {}; }
  static Span between(Int lo, Int hi) { return {std::move(lo), std::move(hi)}; }
  static Span at_least(Int lo) { return {std::move(lo), std::nullopt}; }

  bool bounded() const { return lo && hi; }
  bool empty() const { return lo && hi && *lo > *hi; }
  bool contains(const Int& v) const { return (!lo || *lo <= v) && (!hi || v <= *hi); }

  Span& intersect(const Span& other) {
    if (other.lo && (!lo || *other.lo > *lo)) lo = other.lo;
    if (other.hi && (!hi || *other.hi < *hi)) hi = other.hi;
    return *this;
  }
};

Span from_range(const EntryRange& r) { return Span::between(r.lo, r.hi); }

// est +- max(min_window, ceil(fraction * |est|)).
Span window_around(const Real& estimate, const CorrectionOptions& options) {
  if (options.full_interval_search) return Span::all();
  Int center = round_to_int(estimate);
  Real width(abs(estimate) * options.window_fraction, kRealPrecision);
  Int half(::ceil(width));
  if (half < options.min_window) half = options.min_window;
  return Span::between(center - half, center + half);
}

// Values x with lo <= x / known <= hi: the unknown sits first in its row.
Span first_in_row(const Int& known, const RatioInterval& iv) {
  return Span::between(ceil(Rational(iv.lo * known)), floor(Rational(iv.hi * known)));
}

// Values y with lo <= known / y <= hi: the unknown sits second in its row.
Span second_in_row(const Int& known, const RatioInterval& iv) {
  return Span::between(ceil(Rational(known / iv.hi)), floor(Rational(known / iv.lo)));
}

Span first_column_bounds(const CorrectionContext& ctx) {
  if (!ctx.plaintext_bound) return Span::at_least(Int(0));
  return from_range(plaintext_bounds(ctx).first_column);
}

Span second_column_bounds(const CorrectionContext& ctx) {
  if (!ctx.plaintext_bound) return Span::at_least(Int(0));
  return from_range(plaintext_bounds(ctx).second_column);
}

// Values of k for which base + step * k lies in `span`.
Span k_span(const Int& base, const Int& step, const Span& span) {
  if (step == 0) return span.contains(base) ? Span::all() : Span::between(Int(1), Int(0));
  Span out;
  if (step > 0) {
    if (span.lo) out.lo = ceil_div(*span.lo - base, step);
    if (span.hi) out.hi = floor_div(*span.hi - base, step);
  } else {
    if (span.hi) out.lo = ceil_div(*span.hi - base, step);
    if (span.lo) out.hi = floor_div(*span.lo - base, step);
  }
  return out;
}

// Span of v with N / v landing in `target` (positive N, positive v).
Span quotient_span(const Int& n, const Span& target) {
  Span out = Span::at_least(Int(1));
  if (target.hi && *target.hi > 0) out.intersect(Span::at_least(ceil_div(n, *target.hi)));
  if (target.lo && *target.lo > 0) out.intersect(Span::between(Int(1), floor_div(n, *target.lo)));
  if (target.hi && *target.hi <= 0) return Span::between(Int(1), Int(0));
  return out;
}

std::size_t changed_entries(const Mat2& a, const Mat2& b) {
  std::size_t n = 0;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) n += a.at(r, c) != b.at(r, c) ? 1 : 0;
  }
  return n;
}

void add_distinct(std::vector<Mat2>& list, const Mat2& m) {
  if (std::find(list.begin(), list.end(), m) == list.end()) list.push_back(m);
}

void finish(CorrectionReport& report, FailureKind none_kind, const std::string& none_detail) {
  if (report.passing.empty()) {
    report.residual_failure = Failure{none_kind, none_detail};
  } else if (report.passing.size() == 1) {
    report.repaired = report.passing.front();
  } else {
    report.residual_failure =
        Failure{FailureKind::Ambiguous, std::to_string(report.passing.size()) + " distinct repairs pass every check"};
  }
}

}  // namespace

std::optional<std::string> rejection_reason(const Mat2& candidate, const CorrectionContext& ctx) {
  Int det = mat_det(candidate);
  if (det != ctx.expected_det) return "determinant " + to_string(det) + " != " + to_string(ctx.expected_det);
  if (!row_within_interval(candidate.a11, candidate.a12, ctx.interval)) return std::string("top row ratio check");
  if (!row_within_interval(candidate.a21, candidate.a22, ctx.interval)) return std::string("bottom row ratio check");
  auto p = try_exact_plaintext(candidate, *ctx.key);
  if (!p) return std::string("plaintext not integral");
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      const Int& v = p->at(r, c);
      if (v < 0) return std::string("negative plaintext");
      if (ctx.plaintext_bound && v >= *ctx.plaintext_bound) return std::string("plaintext outside the alphabet");
    }
  }
  if (ctx.rho) {
    if (candidate.a11 == 0) return std::string("column ratio undefined");
    Rational ratio(candidate.a21, candidate.a11);
    ratio.canonicalize();
    if (!ctx.rho->consistent_with(ratio)) return std::string("column ratio mismatch");
  }
  return std::nullopt;
}

// ------------------------------------------------------------------ single

CorrectionReport correct_single(const Mat2& c, const CorrectionContext& ctx) {
  CorrectionReport report;
  report.assumed_class = ErrorClass::Single;

  std::vector<int> rows;
  if (!row_within_interval(c.a11, c.a12, ctx.interval)) rows.push_back(0);
  if (!row_within_interval(c.a21, c.a22, ctx.interval)) rows.push_back(1);
  if (rows.empty()) rows = {0, 1};

  const Int& e = ctx.expected_det;
  const Real& phi = ctx.phi;
  std::optional<Position> accepted_at;
  for (int row : rows) {
    for (int col = 0; col < 2; ++col) {
      SingleProbe probe;
      probe.position = {row, col};
      Int num;
      Int den;
      Real estimate;
      if (row == 0 && col == 0) {
        estimate = phi * to_real(c.a12);
        num = e + c.a12 * c.a21;
        den = c.a22;
      } else if (row == 0) {
        estimate = to_real(c.a11) / phi;
        num = c.a11 * c.a22 - e;
        den = c.a21;
      } else if (col == 0) {
        estimate = phi * to_real(c.a22);
        num = c.a11 * c.a22 - e;
        den = c.a12;
      } else {
        estimate = to_real(c.a21) / phi;
        num = e + c.a12 * c.a21;
        den = c.a11;
      }
      probe.estimate = round_to_int(estimate);
      Mat2 at_estimate = c;
      at_estimate.at(row, col) = probe.estimate;
      probe.det_at_estimate = mat_det(at_estimate);
      ++report.candidates_examined;

      if (den == 0) {
        probe.reason = "zero coefficient in the determinant equation";
      } else if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) {
        probe.reason = "determinant equation has no integer solution (estimate " + to_string(probe.estimate) +
                       " gives det " + to_string(probe.det_at_estimate) + ")";
      } else {
        Int solution = num / den;
        probe.exact_solution = solution;
        if (solution == c.at(row, col)) {
          probe.reason = "entry already satisfies the determinant";
        } else {
          Mat2 candidate = c;
          candidate.at(row, col) = solution;
          if (auto why = rejection_reason(candidate, ctx)) {
            probe.reason = *why;
          } else {
            probe.accepted = true;
            probe.reason = "accepted";
            if (std::find(report.passing.begin(), report.passing.end(), candidate) == report.passing.end()) {
              report.passing.push_back(candidate);
              accepted_at = probe.position;
            }
          }
        }
      }
      report.probes.push_back(std::move(probe));
    }
  }

  if (report.passing.empty()) {
    report.residual_failure = Failure{FailureKind::NoSingleCandidate, "no single-entry change passes every check"};
  } else if (report.passing.size() == 1) {
    report.repaired = report.passing.front();
    report.position = accepted_at;
  } else {
    report.residual_failure = Failure{FailureKind::AmbiguousSingle,
                                      std::to_string(report.passing.size()) + " single-entry repairs pass every check"};
  }
  return report;
}

// ---------------------------------------------------------------- diagonal

CorrectionReport correct_diagonal(const Mat2& c, const CorrectionContext& ctx, bool anti) {
  CorrectionReport report;
  report.assumed_class = anti ? ErrorClass::AntiDiagonal : ErrorClass::Diagonal;
  const Int& e = ctx.expected_det;
  const RatioInterval& iv = ctx.interval;
  const auto& opt = ctx.options;

  // Unknown pair (u, w) with u * w = target; u is enumerated, w = target / u.
  Int target;
  Span u_span, w_span;
  if (!anti) {
    // [[x, c12], [c21, v]]: x v = c12 c21 + E, x ~ phi c12, v ~ c21 / phi.
    target = c.a12 * c.a21 + e;
    u_span = window_around(ctx.phi * to_real(c.a12), opt);
    u_span.intersect(first_in_row(c.a12, iv)).intersect(first_column_bounds(ctx));
    w_span = window_around(to_real(c.a21) / ctx.phi, opt);
    w_span.intersect(second_in_row(c.a21, iv)).intersect(second_column_bounds(ctx));
  } else {
    // [[c11, y], [z, c22]]: y z = c11 c22 - E, y ~ c11 / phi, z ~ phi c22.
    target = c.a11 * c.a22 - e;
    u_span = window_around(to_real(c.a11) / ctx.phi, opt);
    u_span.intersect(second_in_row(c.a11, iv)).intersect(second_column_bounds(ctx));
    w_span = window_around(ctx.phi * to_real(c.a22), opt);
    w_span.intersect(first_in_row(c.a22, iv)).intersect(first_column_bounds(ctx));
  }
  if (target <= 0) {
    report.residual_failure =
        Failure{FailureKind::NonPositiveTarget, "target product " + to_string(target) + " is not positive"};
    return report;
  }
  u_span.intersect(Span::at_least(Int(1))).intersect(quotient_span(target, w_span));

  if (!u_span.empty() && u_span.bounded()) {
    Int count = *u_span.hi - *u_span.lo + 1;
    if (count > opt.max_candidates) {
      report.residual_failure = Failure{FailureKind::NoFactorNearEstimate, "search window too large"};
      return report;
    }
    for (Int u = *u_span.lo; u <= *u_span.hi; ++u) {
      ++report.candidates_examined;
      if (!mpz_divisible_p(target.get_mpz_t(), u.get_mpz_t())) continue;
      Int w = target / u;
      if (!w_span.contains(w)) continue;
      Mat2 candidate = c;
      if (!anti) {
        candidate.a11 = u;
        candidate.a22 = w;
      } else {
        candidate.a12 = u;
        candidate.a21 = w;
      }
      if (!rejection_reason(candidate, ctx)) add_distinct(report.passing, candidate);
    }
  }
  finish(report, FailureKind::NoFactorNearEstimate,
         "no factor pair of " + to_string(target) + " near the estimates; a different double error should be assumed");
  return report;
}

namespace {

// Enumerates the family members whose k lies in `ks`, building candidates with
// `place(x_value, y_value)` and collecting the ones that pass.
template <typename Place>
void scan_family(const DiophantineFamily& f, const Span& ks, const CorrectionContext& ctx, CorrectionReport& report,
                 Place place, std::vector<Mat2>* in_bounds = nullptr) {
  if (ks.empty() || !ks.bounded()) return;
  Int count = *ks.hi - *ks.lo + 1;
  if (count > ctx.options.max_candidates) return;
  for (Int k = *ks.lo; k <= *ks.hi; ++k) {
    ++report.candidates_examined;
    Mat2 candidate = place(f.x(k), f.y(k));
    if (in_bounds) in_bounds->push_back(candidate);
    if (!rejection_reason(candidate, ctx)) add_distinct(report.passing, candidate);
  }
}

}  // namespace

// ------------------------------------------------------------------ column

CorrectionReport correct_column(const Mat2& c, const CorrectionContext& ctx, ColumnSide side) {
  CorrectionReport report;
  report.assumed_class = side == ColumnSide::Left ? ErrorClass::ColumnLeft : ErrorClass::ColumnRight;
  const RatioInterval& iv = ctx.interval;
  const auto& opt = ctx.options;

  DiophantineFamily f;
  try {
    // Left:  x c22 - c12 z = E with (x, z) = family (x, y).
    // Right: c11 v - y c21 = E with (v, y) = family (x, y).
    f = side == ColumnSide::Left ? diophantine_solve(c.a22, c.a12, ctx.expected_det)
                                 : diophantine_solve(c.a11, c.a21, ctx.expected_det);
  } catch (const Error& err) {
    report.residual_failure = Failure{FailureKind::NoDiophantineSolution, err.what()};
    return report;
  }

  Span first_span, second_span;  // spans for family x and family y
  if (side == ColumnSide::Left) {
    first_span = window_around(ctx.phi * to_real(c.a12), opt);  // x ~ phi c12
    first_span.intersect(first_in_row(c.a12, iv)).intersect(first_column_bounds(ctx));
    second_span = window_around(ctx.phi * to_real(c.a22), opt);  // z ~ phi c22
    second_span.intersect(first_in_row(c.a22, iv)).intersect(first_column_bounds(ctx));
  } else {
    first_span = window_around(to_real(c.a21) / ctx.phi, opt);  // v ~ c21 / phi
    first_span.intersect(second_in_row(c.a21, iv)).intersect(second_column_bounds(ctx));
    second_span = window_around(to_real(c.a11) / ctx.phi, opt);  // y ~ c11 / phi
    second_span.intersect(second_in_row(c.a11, iv)).intersect(second_column_bounds(ctx));
  }
  Span ks = k_span(f.x0, f.dx, first_span);
  ks.intersect(k_span(f.y0, f.dy, second_span));

  scan_family(f, ks, ctx, report, [&](const Int& fx, const Int& fy) {
    Mat2 candidate = c;
    if (side == ColumnSide::Left) {
      candidate.a11 = fx;
      candidate.a21 = fy;
    } else {
      candidate.a22 = fx;
      candidate.a12 = fy;
    }
    return candidate;
  });
  finish(report, FailureKind::NoSolutionNearEstimate, "no Diophantine solution near the estimates");
  return report;
}

// --------------------------------------------------------------------- row

CorrectionReport correct_row(const Mat2& c, const CorrectionContext& ctx, RowSide side) {
  CorrectionReport report;
  report.assumed_class = side == RowSide::Top ? ErrorClass::RowTop : ErrorClass::RowBottom;
  const bool top = side == RowSide::Top;

  DiophantineFamily f;
  try {
    // Top:    x c22 - y c21 = E,  family (x, y) = (c11, c12).
    // Bottom: c11 v - c12 z = E,  family (x, y) = (c22, c21).
    f = top ? diophantine_solve(c.a22, c.a21, ctx.expected_det) : diophantine_solve(c.a11, c.a12, ctx.expected_det);
  } catch (const Error& err) {
    report.residual_failure = Failure{FailureKind::NoDiophantineSolution, err.what()};
    return report;
  }

  auto place = [&](const Int& fx, const Int& fy) {
    Mat2 candidate = c;
    if (top) {
      candidate.a11 = fx;
      candidate.a12 = fy;
    } else {
      candidate.a22 = fx;
      candidate.a21 = fy;
    }
    return candidate;
  };

  // Ciphertext bounds from the alphabet: family x is the second-column entry for
  // the bottom row, the first-column entry for the top row.
  Span x_bounds = top ? first_column_bounds(ctx) : second_column_bounds(ctx);
  Span y_bounds = top ? second_column_bounds(ctx) : first_column_bounds(ctx);
  Span bounded_ks = k_span(f.x0, f.dx, x_bounds);
  bounded_ks.intersect(k_span(f.y0, f.dy, y_bounds));
  if (ctx.plaintext_bound && !bounded_ks.empty() && bounded_ks.bounded()) {
    report.feasible_in_bounds = static_cast<std::size_t>(Int(*bounded_ks.hi - *bounded_ks.lo + 1).get_ui());
  }

  if (!ctx.rho) {
    // Without the column ratio the row checks cannot single out a member; the
    // feasible members are still recorded so callers can detect conflicts.
    if (ctx.plaintext_bound) scan_family(f, bounded_ks, ctx, report, place);
    report.residual_failure =
        Failure{FailureKind::ColumnRatioMissing,
                "double row errors need the column ratio; " + std::to_string(report.feasible_in_bounds) +
                    " Diophantine solutions lie within the ciphertext bounds"};
    return report;
  }

  const Rational rho = ctx.rho->exact_value();
  const Rational h = ctx.rho->half_ulp();
  // The entry constrained by the column ratio: c11 for the top row (c21 / c11
  // = rho), c21 for the bottom row (c21 = rho c11).
  Span ratio_span;
  Real estimate_first, estimate_second;
  const Rational lo_rho = rho - h;
  const Rational hi_rho = rho + h;
  if (top) {
    if (c.a21 > 0 && hi_rho > 0) {
      ratio_span.lo = ceil(Rational(Rational(c.a21) / hi_rho));
      if (lo_rho > 0) ratio_span.hi = floor(Rational(Rational(c.a21) / lo_rho));
    }
    if (rho > 0) {
      estimate_first = to_real(c.a21) / to_real(rho);   // x ~ c21 / rho
      estimate_second = to_real(c.a22) / to_real(rho);  // y ~ c22 / rho
    }
  } else {
    ratio_span = Span::between(ceil(Rational(lo_rho * c.a11)), floor(Rational(hi_rho * c.a11)));
    estimate_first = to_real(rho) * to_real(c.a12);   // v ~ rho c12
    estimate_second = to_real(rho) * to_real(c.a11);  // z ~ rho c11
  }

  Span ks = bounded_ks;
  if (top) {
    ks.intersect(k_span(f.x0, f.dx, ratio_span));
  } else {
    ks.intersect(k_span(f.y0, f.dy, ratio_span));
  }
  if (!ks.bounded() && rho > 0) {
    const Real& anchor = top ? estimate_first : estimate_second;
    CorrectionOptions windowed = ctx.options;
    windowed.full_interval_search = false;
    ks.intersect(k_span(top ? f.x0 : f.y0, top ? f.dx : f.dy, window_around(anchor, windowed)));
  }
  scan_family(f, ks, ctx, report, place);

  if (report.passing.empty()) {
    report.residual_failure = Failure{FailureKind::NoSolutionNearEstimate,
                                      "no Diophantine solution consistent with the column ratio " + ctx.rho->value};
    return report;
  }
  // Nearest member to the column-ratio estimates; exact ties are ambiguous.
  auto distance = [&](const Mat2& m) {
    const Int& fx = top ? m.a11 : m.a22;
    const Int& fy = top ? m.a12 : m.a21;
    return Real(abs(Real(to_real(fx) - estimate_first)) + abs(Real(to_real(fy) - estimate_second)), kRealPrecision);
  };
  std::size_t best = 0;
  bool tie = false;
  Real best_distance = distance(report.passing[0]);
  for (std::size_t i = 1; i < report.passing.size(); ++i) {
    Real d = distance(report.passing[i]);
    if (d < best_distance) {
      best = i;
      best_distance = d;
      tie = false;
    } else if (d == best_distance) {
      tie = true;
    }
  }
  if (tie) {
    report.residual_failure = Failure{FailureKind::Ambiguous, "two solutions are equally close to the estimates"};
  } else {
    report.repaired = report.passing[best];
  }
  return report;
}

// ---------------------------------------------------------------- pipeline

CorrectionReport correct(const CipherPackage& pkg, const CipherKey& key, const CorrectionOptions& options) {
  CorrectionReport report;
  const VerifyResult verdict = verify_package(pkg, key);
  if (verdict.status == VerifyStatus::Clean) {
    report.repaired = pkg.c;
    return report;
  }

  const CorrectionContext ctx = CorrectionContext::from(pkg, key, options);
  const Mat2& c = pkg.c;
  report.attempts.push_back(correct_single(c, ctx));
  report.attempts.push_back(correct_diagonal(c, ctx, false));
  report.attempts.push_back(correct_diagonal(c, ctx, true));
  report.attempts.push_back(correct_column(c, ctx, ColumnSide::Left));
  report.attempts.push_back(correct_column(c, ctx, ColumnSide::Right));
  report.attempts.push_back(correct_row(c, ctx, RowSide::Top));
  report.attempts.push_back(correct_row(c, ctx, RowSide::Bottom));

  struct Candidate {
    Mat2 m;
    std::size_t changes;
    std::optional<std::size_t> offered_by;  // first attempt that accepted it
  };
  std::vector<Candidate> pool;
  auto offer = [&](const Mat2& m, std::optional<std::size_t> attempt) {
    auto it = std::find_if(pool.begin(), pool.end(), [&](const Candidate& cand) { return cand.m == m; });
    if (it == pool.end()) {
      pool.push_back({m, changed_entries(m, c), attempt});
    } else if (attempt && !it->offered_by) {
      it->offered_by = attempt;
    }
  };
  for (std::size_t i = 0; i < report.attempts.size(); ++i) {
    const CorrectionReport& attempt = report.attempts[i];
    if (attempt.succeeded()) {
      offer(*attempt.repaired, i);
    } else {
      // Ambiguous sets and unconfirmed row solutions can block a repair but
      // never provide one.
      for (const Mat2& m : attempt.passing) offer(m, std::nullopt);
    }
  }

  std::size_t fewest = 5;
  for (const auto& cand : pool) fewest = std::min(fewest, cand.changes);
  std::vector<const Candidate*> best;
  for (const auto& cand : pool) {
    if (cand.changes == fewest) best.push_back(&cand);
  }

  auto examined_through = [&](std::size_t last) {
    std::size_t total = 0;
    for (std::size_t i = 0; i <= last && i < report.attempts.size(); ++i) total += report.attempts[i].candidates_examined;
    return total;
  };

  if (best.size() == 1 && best.front()->offered_by) {
    const CorrectionReport& winner = report.attempts[*best.front()->offered_by];
    report.assumed_class = winner.assumed_class;
    report.position = winner.position;
    report.repaired = best.front()->m;
    report.passing = {best.front()->m};
    report.candidates_examined = examined_through(*best.front()->offered_by);
    return report;
  }

  report.candidates_examined = examined_through(report.attempts.size());
  if (!best.empty()) {
    for (const auto* cand : best) report.passing.push_back(cand->m);
    report.residual_failure = Failure{
        FailureKind::Ambiguous, std::to_string(best.size()) + " distinct repairs with " + std::to_string(fewest) +
                                    " changed entries pass every check"};
    return report;
  }
  std::ostringstream why;
  why << "all strategies exhausted:";
  for (const auto& attempt : report.attempts) {
    why << ' ' << to_string(attempt.assumed_class) << '='
        << (attempt.residual_failure ? to_string(attempt.residual_failure->kind) : std::string_view("none"));
  }
  report.residual_failure = Failure{FailureKind::Uncorrectable, why.str()};
  return report;
}

}  // namespace unimod
