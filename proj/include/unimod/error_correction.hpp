#pragma once

// Repair of corrupted ciphertext matrices from the determinant check number,
// the exact row-ratio interval and, for double errors in one row, the
// transmitted column ratio.
//
// Every search is confined to the values the row-ratio interval admits (or,
// optionally, a window around the ratio estimate) and to the exact range in
// which the repaired row can still decrypt to a non-negative (and, when the
// alphabet is known, bounded) plaintext. A candidate is accepted
// only if it matches the expected determinant, passes both row checks,
// decrypts to an integral plaintext in range and, when present, agrees with the
// transmitted column ratio.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "unimod/cipher.hpp"
#include "unimod/matrix_core.hpp"
#include "unimod/numeric.hpp"
#include "unimod/ratio_analysis.hpp"

namespace unimod {

struct CorrectionOptions {
  /// Half-width of the search window, as a fraction of the estimate...
  double window_fraction = 0.10;
  /// ...but never fewer than this many steps on either side.
  unsigned min_window = 8;
  /// Search every value the row-ratio interval admits rather than only the
  /// window around the ratio estimate.
  bool full_interval_search = true;
  /// Use the key's alphabet size to bound plaintext entries.
  bool use_plaintext_bound = true;
  /// Hard cap on family members / divisors examined per strategy.
  std::size_t max_candidates = 1'000'000;
};

struct CorrectionContext {
  const CipherKey* key = nullptr;
  Int expected_det;  ///< mu d^n det P
  Real phi;          ///< unimodular ratio, for estimates only
  RatioInterval interval;
  std::optional<ColumnRatioCheck> rho;
  std::optional<unsigned> plaintext_bound;  ///< alphabet size
  CorrectionOptions options;

  const CodingMatrix& coding() const { return key->coding(); }

  static CorrectionContext from(const CipherPackage& pkg, const CipherKey& key, const CorrectionOptions& options = {});
};

struct Position {
  int row = 0;
  int col = 0;
  friend bool operator==(const Position&, const Position&) = default;
};

enum class ErrorClass { None, Single, Diagonal, AntiDiagonal, ColumnLeft, ColumnRight, RowTop, RowBottom };

std::string_view to_string(ErrorClass cls) noexcept;
/// Parses names such as "diagonal", "column_left"; nullopt when unknown.
std::optional<ErrorClass> parse_error_class(std::string_view name) noexcept;

enum class FailureKind {
  NoSingleCandidate,
  AmbiguousSingle,
  NonPositiveTarget,
  NoFactorNearEstimate,
  NoDiophantineSolution,
  NoSolutionNearEstimate,
  ColumnRatioMissing,
  Ambiguous,
  Uncorrectable,
};

std::string_view to_string(FailureKind kind) noexcept;

struct Failure {
  FailureKind kind;
  std::string detail;
};

/// One probe of the single-error search: the ratio estimate for the entry, the
/// determinant it would give, and the exact solution of the determinant
/// equation when it is an integer.
struct SingleProbe {
  Position position;
  Int estimate;
  Int det_at_estimate;
  std::optional<Int> exact_solution;
  bool accepted = false;
  std::string reason;
};

struct CorrectionReport {
  ErrorClass assumed_class = ErrorClass::None;
  std::optional<Position> position;  ///< for Single
  std::size_t candidates_examined = 0;
  std::optional<Mat2> repaired;
  std::optional<Failure> residual_failure;
  /// Distinct matrices that passed every check (more than one means ambiguity).
  std::vector<Mat2> passing;
  std::vector<SingleProbe> probes;
  /// Family members inside the ciphertext bounds (row strategies only).
  std::size_t feasible_in_bounds = 0;
  /// Per-strategy sub-reports, filled by `correct`.
  std::vector<CorrectionReport> attempts;

  bool succeeded() const { return repaired.has_value() && !residual_failure.has_value(); }
  bool ambiguous() const {
    return residual_failure && (residual_failure->kind == FailureKind::Ambiguous ||
                                residual_failure->kind == FailureKind::AmbiguousSingle);
  }
};

/// Empty optional when `candidate` passes every acceptance check; else the reason.
std::optional<std::string> rejection_reason(const Mat2& candidate, const CorrectionContext& ctx);

CorrectionReport correct_single(const Mat2& c, const CorrectionContext& ctx);
CorrectionReport correct_diagonal(const Mat2& c, const CorrectionContext& ctx, bool anti);

enum class ColumnSide { Left, Right };
enum class RowSide { Top, Bottom };

CorrectionReport correct_column(const Mat2& c, const CorrectionContext& ctx, ColumnSide side);
CorrectionReport correct_row(const Mat2& c, const CorrectionContext& ctx, RowSide side);

/// Verify, then try single, diagonal, anti-diagonal, both column and both row
/// classes. Among distinct passing repairs the one changing the fewest entries
/// wins; remaining ties are reported as Ambiguous rather than guessed.
CorrectionReport correct(const CipherPackage& pkg, const CipherKey& key, const CorrectionOptions& options = {});

/// x = x0 + dx k, y = y0 + dy k solves a x - b y = c for every integer k.
struct DiophantineFamily {
  Int x0, y0;
  Int dx, dy;

  Int x(const Int& k) const { return x0 + dx * k; }
  Int y(const Int& k) const { return y0 + dy * k; }
};

/// General solution of a x - b y = c, normalized so dx >= 0 and
/// 0 <= x0 < dx (or dy > 0 and 0 <= y0 < dy when b = 0).
/// Throws NoSolution when gcd(a, b) does not divide c, InvalidArgument when a = b = 0.
DiophantineFamily diophantine_solve(const Int& a, const Int& b, const Int& c);

struct EntryRange {
  Int lo;
  Int hi;
};

/// Ciphertext ranges implied by plaintext entries in [0, alphabet_size - 1].
struct PlaintextBounds {
  EntryRange first_column;   ///< [0, (K-1)(A_{n+1} + B_{n+1})]
  EntryRange second_column;  ///< [0, (K-1)(A_n + B_n)]
};

/// Requires ctx.plaintext_bound.
PlaintextBounds plaintext_bounds(const CorrectionContext& ctx);

}  // namespace unimod
