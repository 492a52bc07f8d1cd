#pragma once

// Text formats for keys, packages, corruption diffs and correction reports,
// and a seeded noisy channel that damages ciphertext entries.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "unimod/cipher.hpp"
#include "unimod/error_correction.hpp"
#include "unimod/matrix_core.hpp"

namespace unimod {

inline constexpr int kFormatVersion = 1;

struct KeyFile {
  Mat2 u;
  SeedPair seed;
  std::uint64_t n = 1;
  Permutation perm;
  Alphabet alphabet = Alphabet::upper26();

  CipherKey to_key() const;
  static KeyFile from_key(const CipherKey& key);

  friend bool operator==(const KeyFile& x, const KeyFile& y) {
    return x.u == y.u && x.seed.a0 == y.seed.a0 && x.seed.b0 == y.seed.b0 && x.n == y.n && x.perm == y.perm &&
           x.alphabet == y.alphabet;
  }
};

/// Canonical form:
///   unimod-key 1
///   u <alpha> <beta> <gamma> <delta>
///   seed <A0> <B0>
///   n <n>
///   perm <p0> <p1> <p2> <p3>
///   alphabet upper26 | bytes | custom <hex>
std::string serialize_key(const KeyFile& key);
/// Throws ParseError.
KeyFile parse_key(std::string_view text);

/// One record per package, records concatenated:
///   unimod-package 1
///   block <i>
///   pad <p>
///   c <c11> <c12> <c21> <c22>
///   detp <det P>
///   ratio <orientation> <digits> <value>     (optional)
std::string serialize_package(const CipherPackage& pkg);
std::string serialize_packages(const std::vector<CipherPackage>& pkgs);
/// Throws ParseError. Blank lines between records are ignored.
std::vector<CipherPackage> parse_packages(std::string_view text);

enum class CorruptionMode { Single, Diagonal, AntiDiagonal, ColumnLeft, ColumnRight, RowTop, RowBottom, Random };
enum class Magnitude { Additive, DigitFlip };

std::string_view to_string(CorruptionMode mode) noexcept;
std::optional<CorruptionMode> parse_corruption_mode(std::string_view name) noexcept;

struct CorruptionSpec {
  CorruptionMode mode = CorruptionMode::Single;
  std::uint64_t seed = 0;
  Magnitude magnitude = Magnitude::Additive;
  /// Additive bound M; the default is max(1, |entry| / 2) per entry.
  std::optional<Int> max_delta;
};

struct EntryChange {
  Position position;
  Int before;
  Int after;
};

struct BlockDiff {
  std::uint64_t block_index = 0;
  CorruptionMode applied = CorruptionMode::Single;  ///< never Random
  std::vector<EntryChange> changes;
};

struct CorruptionResult {
  std::vector<CipherPackage> packages;
  std::vector<BlockDiff> diffs;
};

/// Damages every package according to `spec`, drawing from one generator
/// seeded with spec.seed. Each touched entry is guaranteed to change and to
/// stay positive; check numbers are never touched.
CorruptionResult corrupt(const std::vector<CipherPackage>& pkgs, const CorruptionSpec& spec);

/// Positions touched by a (non-random) mode.
std::vector<Position> positions_for(CorruptionMode mode);

///   unimod-diff 1
///   block <i> <mode>
///   change <row> <col> <before> <after>
std::string serialize_diff(const std::vector<BlockDiff>& diffs);
std::vector<BlockDiff> parse_diff(std::string_view text);

/// Line-oriented summary of a correction attempt for one block.
std::string format_report(const CorrectionReport& report, std::uint64_t block_index);

}  // namespace unimod
