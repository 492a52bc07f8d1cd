#pragma once

// Text blocks, secret keys, encryption C = P M_n, decryption P = C M_n^-1,
// and the check numbers that travel with each ciphertext.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "unimod/matrix_core.hpp"
#include "unimod/numeric.hpp"
#include "unimod/ratio_analysis.hpp"

namespace unimod {

/// Symbol table mapping characters to indices 0..size-1.
class Alphabet {
 public:
  enum class Kind { Upper26, Bytes, Custom };

  /// A-Z -> 0..25.
  static Alphabet upper26();
  /// Every byte value maps to itself.
  static Alphabet bytes();
  /// Distinct bytes of `symbols`, in order.
  static Alphabet custom(std::string_view symbols);

  Kind kind() const noexcept { return kind_; }
  unsigned size() const noexcept { return static_cast<unsigned>(symbols_.size()); }
  const std::string& symbols() const noexcept { return symbols_; }

  /// Throws UnknownSymbol.
  unsigned index_of(char symbol) const;
  char symbol_at(unsigned index) const;

  friend bool operator==(const Alphabet& x, const Alphabet& y) {
    return x.kind_ == y.kind_ && x.symbols_ == y.symbols_;
  }

 private:
  Alphabet(Kind kind, std::string symbols);

  Kind kind_;
  std::string symbols_;
  std::array<int, 256> index_{};
};

/// perm[i] is the row-major matrix slot receiving block position i.
class Permutation {
 public:
  Permutation() = default;
  /// Throws InvalidKey unless `slots` is a bijection on {0, 1, 2, 3}.
  explicit Permutation(std::array<unsigned, 4> slots);

  unsigned slot_of(unsigned position) const { return slots_[position]; }
  const std::array<unsigned, 4>& slots() const noexcept { return slots_; }
  Permutation inverse() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::array<unsigned, 4> slots_{0, 1, 2, 3};
};

struct PlaintextMatrix {
  Mat2 p;
  unsigned alphabet_size = 26;

  /// All entries zero: det P = 0 and the row checks carry no information.
  bool degenerate() const;
  /// Some entry lies outside [0, alphabet_size).
  bool out_of_range() const;
};

struct EncodedText {
  std::vector<PlaintextMatrix> blocks;
  unsigned pad_len = 0;
};

/// Places each run of four symbols into a matrix via `perm`; the final block
/// is padded with symbol index 0. Throws UnknownSymbol.
EncodedText encode_text(std::string_view text, const Alphabet& alphabet, const Permutation& perm);

/// Inverse of encode_text; the last `pad_len` symbols are dropped.
std::string decode_blocks(const std::vector<PlaintextMatrix>& blocks, const Alphabet& alphabet,
                          const Permutation& perm, unsigned pad_len);

/// Secret key: unimodular U, seed, exponent, slot permutation, alphabet.
class CipherKey {
 public:
  /// Validates admissibility and precomputes M_n. Throws InvalidKey when the
  /// coding matrix has a zero sequence entry (row checks undefined) or is singular.
  static CipherKey make(const Mat2& u, const SeedPair& seed, std::uint64_t n, Permutation perm = {},
                        Alphabet alphabet = Alphabet::upper26(),
                        std::uint64_t max_exponent = kDefaultMaxExponent);

  static CipherKey golden(std::uint64_t n, Permutation perm = {}, Alphabet alphabet = Alphabet::upper26());
  static CipherKey k_golden(const Int& k, std::uint64_t n, Permutation perm = {},
                            Alphabet alphabet = Alphabet::upper26());
  /// Arnold's cat matrix [[2, 1], [1, 1]] with seed (A0, B0) = (0, 1).
  static CipherKey arnolds_cat(std::uint64_t n, Permutation perm = {}, Alphabet alphabet = Alphabet::upper26());

  const UnimodularKeyMatrix& unimodular() const noexcept { return u_; }
  const SeedPair& seed() const noexcept { return seed_; }
  std::uint64_t exponent() const noexcept { return n_; }
  const Permutation& permutation() const noexcept { return perm_; }
  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const CodingMatrix& coding() const noexcept { return cm_; }
  const RatioInterval& interval() const noexcept { return interval_; }
  const ExactInverse& inverse() const noexcept { return inverse_; }

 private:
  CipherKey(UnimodularKeyMatrix u, SeedPair seed, std::uint64_t n, Permutation perm, Alphabet alphabet,
            CodingMatrix cm);

  UnimodularKeyMatrix u_;
  SeedPair seed_;
  std::uint64_t n_;
  Permutation perm_;
  Alphabet alphabet_;
  CodingMatrix cm_;
  RatioInterval interval_;
  ExactInverse inverse_;
};

/// Rounded c21 / c11 transmitted as an extra check number.
struct ColumnRatioCheck {
  RatioOrientation orientation = RatioOrientation::BottomOverTop;
  std::string value;  ///< decimal string, `digits` significant digits
  unsigned digits = 2;

  /// Throws ParseError on a malformed value.
  Rational exact_value() const;
  Rational half_ulp() const;
  /// |ratio - value| <= half_ulp.
  bool consistent_with(const Rational& ratio) const;

  friend bool operator==(const ColumnRatioCheck&, const ColumnRatioCheck&) = default;
};

struct CipherPackage {
  Mat2 c;
  Int det_p;
  std::optional<ColumnRatioCheck> column_ratio;
  std::uint64_t block_index = 0;
  unsigned pad_len = 0;

  friend bool operator==(const CipherPackage&, const CipherPackage&) = default;
};

inline constexpr unsigned kDefaultRatioDigits = 2;

struct EncryptOptions {
  bool emit_column_ratio = false;
  unsigned ratio_digits = kDefaultRatioDigits;
  std::uint64_t block_index = 0;
  unsigned pad_len = 0;
};

/// Rounds c21 / c11 for transmission; nullopt when c11 = 0 (ratio undefined).
std::optional<ColumnRatioCheck> make_column_ratio_check(const Mat2& c, unsigned digits);

/// C = P M_n with det P as check number. The optional column ratio is omitted
/// when c11 = 0.
CipherPackage encrypt(const PlaintextMatrix& p, const CipherKey& key, const EncryptOptions& options = {});

/// P = C adj(M_n) / det(M_n). Throws NonIntegralPlaintext or NegativePlaintext.
PlaintextMatrix decrypt(const CipherPackage& pkg, const CipherKey& key);

/// Exact C adj(M_n) / det(M_n) when every entry divides; no sign check.
std::optional<Mat2> try_exact_plaintext(const Mat2& c, const CipherKey& key);

enum class VerifyStatus { Clean, DeterminantMismatch, RowIntervalViolation, Both };

std::string_view to_string(VerifyStatus status) noexcept;

struct VerifyResult {
  VerifyStatus status = VerifyStatus::Clean;
  bool top_row_violation = false;
  bool bottom_row_violation = false;
  Int expected_det;
  Int actual_det;
};

/// det C = mu d^n det P and both row ratios inside the row-ratio interval.
VerifyResult verify_package(const CipherPackage& pkg, const CipherKey& key);

}  // namespace unimod
