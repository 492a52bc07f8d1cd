#pragma once

// Exact 2x2 integer matrices and the coding-matrix families built from them:
// golden powers Q^n, k-golden powers, and seeded unimodular products U^n M0.

#include <cstdint>
#include <iosfwd>
#include <string>

#include "unimod/numeric.hpp"

namespace unimod {

/// 2x2 matrix [[a11, a12], [a21, a22]] of arbitrary-precision integers.
struct Mat2 {
  Int a11{0}, a12{0}, a21{0}, a22{0};

  static Mat2 identity() { return {Int(1), Int(0), Int(0), Int(1)}; }

  /// Row-major access, r and c in {0, 1}.
  const Int& at(int r, int c) const;
  Int& at(int r, int c);

  friend bool operator==(const Mat2& x, const Mat2& y) {
    return x.a11 == y.a11 && x.a12 == y.a12 && x.a21 == y.a21 && x.a22 == y.a22;
  }
};

Mat2 operator*(const Mat2& x, const Mat2& y);
std::ostream& operator<<(std::ostream& os, const Mat2& m);
std::string to_string(const Mat2& m);

Mat2 mat_mul(const Mat2& x, const Mat2& y);
Int mat_det(const Mat2& x);

struct ExactInverse {
  Mat2 adjugate;
  Int det;
};

/// Adjugate and determinant; x^-1 = adjugate / det. Throws SingularMatrix.
ExactInverse mat_inverse_exact(const Mat2& x);

/// x^n by binary exponentiation; x^0 = I.
Mat2 mat_pow(const Mat2& x, std::uint64_t n);

enum class KeyFamily { Golden, KGolden, Unimodular };

/// A unimodular key matrix U = [[alpha, beta], [gamma, delta]] that passed
/// admissibility: det U = +-1, non-negative entries, and either the k-golden
/// shape [[k, 1], [1, 0]] or the ratio-convergence conditions
/// (d = -1: t > 2, alpha >= 1, delta >= 1; d = +1: t >= 2).
class UnimodularKeyMatrix {
 public:
  /// Throws InvalidKey when `u` is not admissible.
  static UnimodularKeyMatrix from(const Mat2& u);

  const Mat2& matrix() const noexcept { return u_; }
  const Int& trace() const noexcept { return t_; }
  const Int& det() const noexcept { return d_; }
  KeyFamily family() const noexcept { return family_; }
  /// t = 2, d = 1: the fixed points coincide and ratio convergence is only
  /// algebraic. Accepted, but callers should surface a warning.
  bool degenerate_convergence() const noexcept { return degenerate_convergence_; }

 private:
  UnimodularKeyMatrix() = default;

  Mat2 u_;
  Int t_;
  Int d_;
  KeyFamily family_ = KeyFamily::Unimodular;
  bool degenerate_convergence_ = false;
};

struct SeedPair {
  Int a0{0};
  Int b0{0};
};

/// M_n = [[A_{n+1}, A_n], [B_{n+1}, B_n]] together with the recurrence data.
struct CodingMatrix {
  Mat2 m;
  std::uint64_t n = 0;
  Int t;
  Int d;
  Int mu;     ///< det M0
  Int det_m;  ///< mu * d^n

  const Int& a_next() const noexcept { return m.a11; }
  const Int& a_cur() const noexcept { return m.a12; }
  const Int& b_next() const noexcept { return m.a21; }
  const Int& b_cur() const noexcept { return m.a22; }
};

inline constexpr std::uint64_t kDefaultMaxExponent = 512;

/// Q^n with Q = [[1, 1], [1, 0]]. Requires n >= 1.
CodingMatrix golden_matrix(std::uint64_t n);

/// [[k, 1], [1, 0]]^n. Requires k >= 1 and n >= 1.
CodingMatrix k_golden_matrix(const Int& k, std::uint64_t n);

/// U^n M0 through the scalar recurrence A_{n+1} = t A_n - d A_{n-1}.
/// The seed must be non-negative and not all zero; a zero component is allowed
/// for unimodular-family keys only when A1, B1 >= 1. Throws InvalidKey.
CodingMatrix build_coding_matrix(const UnimodularKeyMatrix& u, const SeedPair& seed, std::uint64_t n,
                                 std::uint64_t max_exponent = kDefaultMaxExponent);

/// det M0 = (alpha - delta) A0 B0 + beta B0^2 - gamma A0^2.
Int mu_of_seed(const Mat2& u, const SeedPair& seed);

/// [[t, 1], [-d, 0]]; M_n = M0 S^n.
Mat2 s_matrix(const Int& t, const Int& d);

enum class PowerForm { BarePowerForm, Degenerate, Neither };

/// BarePowerForm iff beta = 1 and delta = 0; otherwise Degenerate iff det = 0.
PowerForm check_bare_power_form(const Mat2& u);

std::string_view to_string(PowerForm form) noexcept;
std::string_view to_string(KeyFamily family) noexcept;

}  // namespace unimod
