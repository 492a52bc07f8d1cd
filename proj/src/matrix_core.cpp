#include "unimod/matrix_core.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

#include "unimod/error.hpp"

namespace unimod {

const Int& Mat2::at(int r, int c) const {
  if (r == 0) return c == 0 ? a11 : a12;
  return c == 0 ? a21 : a22;
}

Int& Mat2::at(int r, int c) {
  if (r == 0) return c == 0 ? a11 : a12;
  return c == 0 ? a21 : a22;
}

Mat2 operator*(const Mat2& x, const Mat2& y) {
  return {Int(x.a11 * y.a11 + x.a12 * y.a21), Int(x.a11 * y.a12 + x.a12 * y.a22),
          Int(x.a21 * y.a11 + x.a22 * y.a21), Int(x.a21 * y.a12 + x.a22 * y.a22)};
}

std::ostream& operator<<(std::ostream& os, const Mat2& m) {
  return os << "[[" << m.a11 << ", " << m.a12 << "], [" << m.a21 << ", " << m.a22 << "]]";
}

std::string to_string(const Mat2& m) {
  std::ostringstream os;
  os << m;
  return os.str();
}

Mat2 mat_mul(const Mat2& x, const Mat2& y) { return x * y; }

Int mat_det(const Mat2& x) { return x.a11 * x.a22 - x.a12 * x.a21; }

ExactInverse mat_inverse_exact(const Mat2& x) {
  Int det = mat_det(x);
  if (det == 0) throw Error(ErrorKind::SingularMatrix, "matrix " + to_string(x) + " is singular");
  return {{x.a22, Int(-x.a12), Int(-x.a21), x.a11}, det};
}

Mat2 mat_pow(const Mat2& x, std::uint64_t n) {
  Mat2 result = Mat2::identity();
  Mat2 base = x;
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

namespace {

[[noreturn]] void invalid_key(const std::string& why) { throw Error(ErrorKind::InvalidKey, why); }

bool is_k_golden_shape(const Mat2& u) { return u.a11 >= 1 && u.a12 == 1 && u.a21 == 1 && u.a22 == 0; }

Int signed_power(const Int& d, std::uint64_t n) {
  // d is +-1 for every key this library builds; general d falls back to mpz_pow.
  if (d == 1) return Int(1);
  if (d == -1) return (n % 2 == 0) ? Int(1) : Int(-1);
  Int r;
  mpz_pow_ui(r.get_mpz_t(), d.get_mpz_t(), n);
  return r;
}

}  // namespace

UnimodularKeyMatrix UnimodularKeyMatrix::from(const Mat2& u) {
  UnimodularKeyMatrix key;
  key.u_ = u;
  key.t_ = u.a11 + u.a22;
  key.d_ = mat_det(u);
  if (key.d_ != 1 && key.d_ != -1) invalid_key("det U = " + to_string(key.d_) + ", expected +1 or -1");
  if (u.a11 < 0 || u.a12 < 0 || u.a21 < 0 || u.a22 < 0) invalid_key("U must have non-negative entries");

  if (is_k_golden_shape(u)) {
    key.family_ = (u.a11 == 1) ? KeyFamily::Golden : KeyFamily::KGolden;
    return key;
  }
  if (key.d_ == -1) {
    if (key.t_ <= 2) invalid_key("det U = -1 requires trace > 2, got " + to_string(key.t_));
    if (u.a11 < 1 || u.a22 < 1) invalid_key("det U = -1 requires alpha >= 1 and delta >= 1");
  } else {
    if (key.t_ < 2) invalid_key("det U = +1 requires trace >= 2, got " + to_string(key.t_));
    key.degenerate_convergence_ = (key.t_ == 2);
  }
  return key;
}

CodingMatrix golden_matrix(std::uint64_t n) { return k_golden_matrix(Int(1), n); }

CodingMatrix k_golden_matrix(const Int& k, std::uint64_t n) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "k-golden matrices need k >= 1");
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "golden coding matrices need n >= 1");
  CodingMatrix cm;
  cm.m = mat_pow(Mat2{k, Int(1), Int(1), Int(0)}, n);
  cm.n = n;
  cm.t = k;
  cm.d = -1;
  cm.mu = 1;  // M0 = I for the bare power
  cm.det_m = signed_power(cm.d, n);
  return cm;
}

Int mu_of_seed(const Mat2& u, const SeedPair& seed) {
  const Int& a0 = seed.a0;
  const Int& b0 = seed.b0;
  Int by_formula = (u.a11 - u.a22) * a0 * b0 + u.a12 * b0 * b0 - u.a21 * a0 * a0;
  Int a1 = u.a11 * a0 + u.a12 * b0;
  Int b1 = u.a21 * a0 + u.a22 * b0;
  Int by_det = a1 * b0 - a0 * b1;
  if (by_formula != by_det) throw std::logic_error("seed determinant identity failed");
  return by_formula;
}

CodingMatrix build_coding_matrix(const UnimodularKeyMatrix& key, const SeedPair& seed, std::uint64_t n,
                                 std::uint64_t max_exponent) {
  if (n > max_exponent) {
    invalid_key("exponent " + std::to_string(n) + " exceeds cap " + std::to_string(max_exponent));
  }
  if (seed.a0 < 0 || seed.b0 < 0) invalid_key("seed entries must be non-negative");
  if (seed.a0 == 0 && seed.b0 == 0) invalid_key("seed (0, 0) is degenerate");

  const Mat2& u = key.matrix();
  Int a_prev = seed.a0;
  Int b_prev = seed.b0;
  Int a_cur = u.a11 * a_prev + u.a12 * b_prev;
  Int b_cur = u.a21 * a_prev + u.a22 * b_prev;
  if (key.family() == KeyFamily::Unimodular && (seed.a0 == 0 || seed.b0 == 0) && (a_cur < 1 || b_cur < 1)) {
    invalid_key("a zero seed component needs A1 >= 1 and B1 >= 1");
  }

  const Int& t = key.trace();
  const Int& d = key.det();
  for (std::uint64_t i = 0; i < n; ++i) {
    Int a_next = t * a_cur - d * a_prev;
    Int b_next = t * b_cur - d * b_prev;
    a_prev = std::move(a_cur);
    b_prev = std::move(b_cur);
    a_cur = std::move(a_next);
    b_cur = std::move(b_next);
  }

  CodingMatrix cm;
  cm.m = {a_cur, a_prev, b_cur, b_prev};
  cm.n = n;
  cm.t = t;
  cm.d = d;
  cm.mu = mu_of_seed(u, seed);
  cm.det_m = cm.mu * signed_power(d, n);
  return cm;
}

Mat2 s_matrix(const Int& t, const Int& d) { return {t, Int(1), Int(-d), Int(0)}; }

PowerForm check_bare_power_form(const Mat2& u) {
  if (u.a12 == 1 && u.a22 == 0) return PowerForm::BarePowerForm;
  if (mat_det(u) == 0) return PowerForm::Degenerate;
  return PowerForm::Neither;
}

std::string_view to_string(PowerForm form) noexcept {
  switch (form) {
    case PowerForm::BarePowerForm: return "BarePowerForm";
    case PowerForm::Degenerate: return "Degenerate";
    case PowerForm::Neither: return "Neither";
  }
  return "Neither";
}

std::string_view to_string(KeyFamily family) noexcept {
  switch (family) {
    case KeyFamily::Golden: return "golden";
    case KeyFamily::KGolden: return "k-golden";
    case KeyFamily::Unimodular: return "unimodular";
  }
  return "unimodular";
}

}  // namespace unimod
