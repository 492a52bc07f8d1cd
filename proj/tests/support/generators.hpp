#pragma once

// Seeded random keys, plaintexts and helpers shared by the test binaries.

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>

#include "unimod/cipher.hpp"
#include "unimod/error.hpp"
#include "unimod/matrix_core.hpp"

namespace unimod::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(20240611);
  return engine;
}

inline long uniform(std::mt19937_64& g, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g); }

// Admissible seeded unimodular key: alpha, delta in [1, 6], beta, gamma in
// [0, 6], seed entries in [0, 5], n in [n_lo, n_hi]. Rejection sampling.
inline CipherKey random_key(std::mt19937_64& g, std::uint64_t n_lo = 4, std::uint64_t n_hi = 24,
                            Alphabet alphabet = Alphabet::upper26()) {
  for (;;) {
    Mat2 u{Int(uniform(g, 1, 6)), Int(uniform(g, 0, 6)), Int(uniform(g, 0, 6)), Int(uniform(g, 1, 6))};
    Int det = mat_det(u);
    if (det != 1 && det != -1) continue;
    SeedPair seed{Int(uniform(g, 0, 5)), Int(uniform(g, 0, 5))};
    auto n = static_cast<std::uint64_t>(uniform(g, static_cast<long>(n_lo), static_cast<long>(n_hi)));
    std::array<unsigned, 4> slots{0, 1, 2, 3};
    std::shuffle(slots.begin(), slots.end(), g);
    try {
      return CipherKey::make(u, seed, n, Permutation(slots), alphabet);
    } catch (const Error&) {
    }
  }
}

// Plaintext with entries in [0, bound) and no all-zero row.
inline PlaintextMatrix random_plaintext(std::mt19937_64& g, unsigned bound = 26) {
  for (;;) {
    Mat2 p{Int(uniform(g, 0, bound - 1)), Int(uniform(g, 0, bound - 1)), Int(uniform(g, 0, bound - 1)),
           Int(uniform(g, 0, bound - 1))};
    if ((p.a11 == 0 && p.a12 == 0) || (p.a21 == 0 && p.a22 == 0)) continue;
    return PlaintextMatrix{p, bound};
  }
}

}  // namespace unimod::testing
