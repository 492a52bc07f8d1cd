#pragma once

// Chosen-plaintext key recovery against golden and k-golden ciphers, and a
// brute-force measurement of how many seeded unimodular keys stay consistent
// with an oracle's answers.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "unimod/cipher.hpp"
#include "unimod/matrix_core.hpp"
#include "unimod/numeric.hpp"

namespace unimod {

/// Returns P M_n for the hidden key; deterministic, no check numbers.
using EncryptionOracle = std::function<Mat2(const Mat2&)>;

EncryptionOracle make_oracle(const CipherKey& key);

/// Counts queries made through it.
class CountingOracle {
 public:
  explicit CountingOracle(EncryptionOracle inner) : inner_(std::move(inner)) {}
  Mat2 operator()(const Mat2& p) {
    ++queries_;
    return inner_(p);
  }
  std::size_t queries() const noexcept { return queries_; }

 private:
  EncryptionOracle inner_;
  std::size_t queries_ = 0;
};

struct GoldenRecovery {
  std::uint64_t n = 0;
  Mat2 observed;  ///< oracle answer to the unit plaintext
  std::size_t queries = 0;
};

struct KGoldenRecovery {
  Int k;
  std::uint64_t n = 0;
  Mat2 observed;
  std::size_t queries = 0;
};

/// Encrypts the unit matrix and matches the answer against Q^n for n = 1..n_max.
/// The smallest matching n is returned. Throws NotGoldenOracle.
GoldenRecovery attack_golden(const EncryptionOracle& oracle, std::uint64_t n_max = 512);

/// Same attack over [[k, 1], [1, 0]]^n, k = 1..k_max, n = 1..n_max; the first
/// match in (k, n) order is returned. Throws NoMatchInBounds.
KGoldenRecovery attack_k_golden(const EncryptionOracle& oracle, const Int& k_max, std::uint64_t n_max);

struct IntRange {
  Int lo;
  Int hi;
};

/// Candidate key space: every combination of the listed ranges.
struct ParamBox {
  IntRange alpha, beta, gamma, delta;
  IntRange a0, b0;
  IntRange n;
};

inline constexpr std::size_t kResistanceEnumerationCap = 10'000'000;

struct ResistanceStats {
  std::size_t enumerated = 0;  ///< parameter tuples visited
  std::size_t admissible = 0;  ///< tuples that form a valid key
  /// consistent[q - 1]: admissible keys agreeing with the oracle on the first q queries.
  std::vector<std::size_t> consistent;
  bool truncated = false;  ///< enumeration stopped at the cap
};

/// Queries the oracle with the row selectors [[1,0],[0,0]] and [[0,0],[0,1]]
/// and then further fixed plaintexts, up to `queries`, and counts the keys in
/// `box` that reproduce every answer so far.
ResistanceStats measure_unimodular_resistance(const EncryptionOracle& oracle, const ParamBox& box,
                                              std::size_t queries = 1,
                                              std::size_t cap = kResistanceEnumerationCap);

/// The i-th plaintext used by measure_unimodular_resistance.
Mat2 resistance_query(std::size_t i);

}  // namespace unimod
