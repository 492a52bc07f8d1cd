#include "unimod/cipher.hpp"

#include <algorithm>

#include "unimod/error.hpp"

namespace unimod {

// ---------------------------------------------------------------- Alphabet

Alphabet::Alphabet(Kind kind, std::string symbols) : kind_(kind), symbols_(std::move(symbols)) {
  index_.fill(-1);
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    auto byte = static_cast<unsigned char>(symbols_[i]);
    if (index_[byte] != -1) {
      throw Error(ErrorKind::InvalidArgument, "alphabet symbol repeated at position " + std::to_string(i));
    }
    index_[byte] = static_cast<int>(i);
  }
}

Alphabet Alphabet::upper26() { return Alphabet(Kind::Upper26, "ABCDEFGHIJKLMNOPQRSTUVWXYZ"); }

Alphabet Alphabet::bytes() {
  std::string all(256, '\0');
  for (int i = 0; i < 256; ++i) all[static_cast<std::size_t>(i)] = static_cast<char>(i);
  return Alphabet(Kind::Bytes, std::move(all));
}

Alphabet Alphabet::custom(std::string_view symbols) {
  if (symbols.empty()) throw Error(ErrorKind::InvalidArgument, "alphabet must not be empty");
  return Alphabet(Kind::Custom, std::string(symbols));
}

unsigned Alphabet::index_of(char symbol) const {
  int idx = index_[static_cast<unsigned char>(symbol)];
  if (idx < 0) {
    throw Error(ErrorKind::UnknownSymbol,
                "symbol 0x" + Int(static_cast<unsigned char>(symbol)).get_str(16) + " is not in the alphabet");
  }
  return static_cast<unsigned>(idx);
}

char Alphabet::symbol_at(unsigned index) const {
  if (index >= symbols_.size()) {
    throw Error(ErrorKind::UnknownSymbol, "index " + std::to_string(index) + " is outside the alphabet");
  }
  return symbols_[index];
}

// ------------------------------------------------------------- Permutation

Permutation::Permutation(std::array<unsigned, 4> slots) : slots_(slots) {
  std::array<bool, 4> seen{};
  for (unsigned s : slots_) {
    if (s > 3 || seen[s]) throw Error(ErrorKind::InvalidKey, "permutation must be a bijection on {0,1,2,3}");
    seen[s] = true;
  }
}

Permutation Permutation::inverse() const {
  std::array<unsigned, 4> inv{};
  for (unsigned i = 0; i < 4; ++i) inv[slots_[i]] = i;
  return Permutation(inv);
}

// ------------------------------------------------------------------ blocks

bool PlaintextMatrix::degenerate() const { return p.a11 == 0 && p.a12 == 0 && p.a21 == 0 && p.a22 == 0; }

bool PlaintextMatrix::out_of_range() const {
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      const Int& v = p.at(r, c);
      if (v < 0 || v >= alphabet_size) return true;
    }
  }
  return false;
}

EncodedText encode_text(std::string_view text, const Alphabet& alphabet, const Permutation& perm) {
  std::vector<unsigned> symbols;
  symbols.reserve(text.size() + 3);
  for (char ch : text) symbols.push_back(alphabet.index_of(ch));

  EncodedText out;
  out.pad_len = static_cast<unsigned>((4 - symbols.size() % 4) % 4);
  symbols.resize(symbols.size() + out.pad_len, 0);
  for (std::size_t base = 0; base < symbols.size(); base += 4) {
    PlaintextMatrix block;
    block.alphabet_size = alphabet.size();
    for (unsigned pos = 0; pos < 4; ++pos) {
      unsigned slot = perm.slot_of(pos);
      block.p.at(static_cast<int>(slot / 2), static_cast<int>(slot % 2)) = symbols[base + pos];
    }
    out.blocks.push_back(std::move(block));
  }
  return out;
}

std::string decode_blocks(const std::vector<PlaintextMatrix>& blocks, const Alphabet& alphabet,
                          const Permutation& perm, unsigned pad_len) {
  std::string out;
  out.reserve(blocks.size() * 4);
  for (const auto& block : blocks) {
    for (unsigned pos = 0; pos < 4; ++pos) {
      unsigned slot = perm.slot_of(pos);
      const Int& v = block.p.at(static_cast<int>(slot / 2), static_cast<int>(slot % 2));
      if (v < 0 || !v.fits_uint_p()) {
        throw Error(ErrorKind::UnknownSymbol, "plaintext value " + to_string(v) + " is not a symbol index");
      }
      out.push_back(alphabet.symbol_at(static_cast<unsigned>(v.get_ui())));
    }
  }
  if (pad_len > out.size() || pad_len > 3) {
    throw Error(ErrorKind::InvalidArgument, "padding length " + std::to_string(pad_len) + " is inconsistent");
  }
  out.erase(out.size() - pad_len);
  return out;
}

// --------------------------------------------------------------- CipherKey

CipherKey::CipherKey(UnimodularKeyMatrix u, SeedPair seed, std::uint64_t n, Permutation perm, Alphabet alphabet,
                     CodingMatrix cm)
    : u_(std::move(u)),
      seed_(std::move(seed)),
      n_(n),
      perm_(perm),
      alphabet_(std::move(alphabet)),
      cm_(std::move(cm)),
      interval_(row_ratio_interval(cm_)),
      inverse_(mat_inverse_exact(cm_.m)) {}

CipherKey CipherKey::make(const Mat2& u, const SeedPair& seed, std::uint64_t n, Permutation perm,
                          Alphabet alphabet, std::uint64_t max_exponent) {
  auto key_matrix = UnimodularKeyMatrix::from(u);
  CodingMatrix cm = build_coding_matrix(key_matrix, seed, n, max_exponent);
  if (cm.a_next() < 1 || cm.a_cur() < 1 || cm.b_next() < 1 || cm.b_cur() < 1) {
    throw Error(ErrorKind::InvalidKey, "coding matrix " + to_string(cm.m) +
                                           " has a zero entry; the row checks need A_n, B_n >= 1");
  }
  if (cm.det_m == 0) throw Error(ErrorKind::InvalidKey, "seed gives det M0 = 0; the coding matrix is singular");
  return CipherKey(std::move(key_matrix), seed, n, perm, std::move(alphabet), std::move(cm));
}

CipherKey CipherKey::golden(std::uint64_t n, Permutation perm, Alphabet alphabet) {
  return k_golden(Int(1), n, perm, std::move(alphabet));
}

CipherKey CipherKey::k_golden(const Int& k, std::uint64_t n, Permutation perm, Alphabet alphabet) {
  return make(Mat2{k, Int(1), Int(1), Int(0)}, SeedPair{Int(0), Int(1)}, n, perm, std::move(alphabet));
}

CipherKey CipherKey::arnolds_cat(std::uint64_t n, Permutation perm, Alphabet alphabet) {
  return make(Mat2{Int(2), Int(1), Int(1), Int(1)}, SeedPair{Int(0), Int(1)}, n, perm, std::move(alphabet));
}

// ---------------------------------------------------------- check numbers

Rational ColumnRatioCheck::exact_value() const { return parse_rational(value); }

Rational ColumnRatioCheck::half_ulp() const { return significant_half_ulp(exact_value(), digits); }

bool ColumnRatioCheck::consistent_with(const Rational& ratio) const {
  Rational v = exact_value();
  return abs(Rational(ratio - v)) <= significant_half_ulp(v, digits);
}

std::optional<ColumnRatioCheck> make_column_ratio_check(const Mat2& c, unsigned digits) {
  if (c.a11 == 0) return std::nullopt;
  Rational q(c.a21, c.a11);
  q.canonicalize();
  RoundedDecimal rounded = round_significant(q, digits);
  return ColumnRatioCheck{RatioOrientation::BottomOverTop, rounded.text, digits};
}

CipherPackage encrypt(const PlaintextMatrix& p, const CipherKey& key, const EncryptOptions& options) {
  CipherPackage pkg;
  pkg.c = p.p * key.coding().m;
  pkg.det_p = mat_det(p.p);
  pkg.block_index = options.block_index;
  pkg.pad_len = options.pad_len;
  if (options.emit_column_ratio) pkg.column_ratio = make_column_ratio_check(pkg.c, options.ratio_digits);
  return pkg;
}

std::optional<Mat2> try_exact_plaintext(const Mat2& c, const CipherKey& key) {
  Mat2 scaled = c * key.inverse().adjugate;
  const Int& det = key.inverse().det;
  Mat2 p;
  for (int r = 0; r < 2; ++r) {
    for (int col = 0; col < 2; ++col) {
      const Int& v = scaled.at(r, col);
      if (!mpz_divisible_p(v.get_mpz_t(), det.get_mpz_t())) return std::nullopt;
      mpz_divexact(p.at(r, col).get_mpz_t(), v.get_mpz_t(), det.get_mpz_t());
    }
  }
  return p;
}

PlaintextMatrix decrypt(const CipherPackage& pkg, const CipherKey& key) {
  auto p = try_exact_plaintext(pkg.c, key);
  if (!p) {
    throw Error(ErrorKind::NonIntegralPlaintext,
                "C adj(M_n) is not divisible by det M_n = " + to_string(key.inverse().det));
  }
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      if (p->at(r, c) < 0) throw Error(ErrorKind::NegativePlaintext, "decrypted " + to_string(*p));
    }
  }
  return PlaintextMatrix{std::move(*p), key.alphabet().size()};
}

std::string_view to_string(VerifyStatus status) noexcept {
  switch (status) {
    case VerifyStatus::Clean: return "Clean";
    case VerifyStatus::DeterminantMismatch: return "DeterminantMismatch";
    case VerifyStatus::RowIntervalViolation: return "RowIntervalViolation";
    case VerifyStatus::Both: return "Both";
  }
  return "Clean";
}

VerifyResult verify_package(const CipherPackage& pkg, const CipherKey& key) {
  VerifyResult result;
  result.expected_det = key.coding().det_m * pkg.det_p;
  result.actual_det = mat_det(pkg.c);
  result.top_row_violation = !row_within_interval(pkg.c.a11, pkg.c.a12, key.interval());
  result.bottom_row_violation = !row_within_interval(pkg.c.a21, pkg.c.a22, key.interval());
  const bool det_bad = result.expected_det != result.actual_det;
  const bool rows_bad = result.top_row_violation || result.bottom_row_violation;
  if (det_bad && rows_bad) {
    result.status = VerifyStatus::Both;
  } else if (det_bad) {
    result.status = VerifyStatus::DeterminantMismatch;
  } else if (rows_bad) {
    result.status = VerifyStatus::RowIntervalViolation;
  }
  return result;
}

}  // namespace unimod
