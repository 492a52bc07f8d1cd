#include <random>

#include "doctest.h"
#include "support/generators.hpp"
#include "unimod/cipher.hpp"
#include "unimod/error.hpp"

using namespace unimod;

namespace {

Mat2 m(long a, long b, long c, long d) { return {Int(a), Int(b), Int(c), Int(d)}; }

}  // namespace

TEST_CASE("alphabets") {
  Alphabet up = Alphabet::upper26();
  CHECK(up.size() == 26);
  CHECK(up.index_of('M') == 12);
  CHECK(up.symbol_at(19) == 'T');
  CHECK_THROWS_AS(up.index_of('m'), Error);
  CHECK(Alphabet::bytes().index_of('\xff') == 255);
  Alphabet custom = Alphabet::custom("xyz ");
  CHECK(custom.index_of(' ') == 3);
  CHECK_THROWS_AS(Alphabet::custom("aba"), Error);
  CHECK_THROWS_AS(Alphabet::custom(""), Error);
}

TEST_CASE("permutations") {
  Permutation p({2, 0, 3, 1});
  CHECK(p.slot_of(0) == 2);
  CHECK(p.inverse().slot_of(2) == 0);
  CHECK_THROWS_AS(Permutation({0, 0, 1, 2}), Error);
  CHECK_THROWS_AS(Permutation({0, 1, 2, 4}), Error);
}

TEST_CASE("text encoding") {
  Alphabet up = Alphabet::upper26();
  EncodedText e = encode_text("MATH", up, {});
  REQUIRE(e.blocks.size() == 1);
  CHECK(e.blocks[0].p == m(12, 0, 19, 7));
  CHECK(e.pad_len == 0);

  e = encode_text("AAAA", up, {});
  CHECK(e.blocks[0].degenerate());

  e = encode_text("MAT", up, {});
  CHECK(e.blocks[0].p == m(12, 0, 19, 0));
  CHECK(e.pad_len == 1);
  CHECK(decode_blocks(e.blocks, up, {}, e.pad_len) == "MAT");

  Permutation perm({3, 2, 1, 0});
  e = encode_text("MATH", up, perm);
  CHECK(e.blocks[0].p == m(7, 19, 0, 12));
  CHECK(decode_blocks(e.blocks, up, perm, 0) == "MATH");
  CHECK_THROWS_AS(encode_text("M4TH", up, {}), Error);

  CHECK(encode_text("", up, {}).blocks.empty());
  CHECK(PlaintextMatrix{m(30, 0, 0, 1), 26}.out_of_range());
}

TEST_CASE("key construction") {
  CipherKey golden = CipherKey::golden(10);
  CHECK(golden.coding().m == m(89, 55, 55, 34));
  CHECK(golden.unimodular().family() == KeyFamily::Golden);
  CipherKey cat = CipherKey::arnolds_cat(4);
  CHECK(cat.coding().m == m(55, 21, 34, 13));
  CHECK(CipherKey::k_golden(Int(2), 3).coding().m == m(12, 5, 5, 2));
  // Q^1 has a zero entry, so the row checks are undefined.
  CHECK_THROWS_AS(CipherKey::golden(1), Error);
  CHECK_THROWS_AS(CipherKey::make(m(2, 1, 1, 1), {Int(0), Int(0)}, 4), Error);
}

TEST_CASE("encryption examples") {
  CipherPackage pkg = encrypt({m(12, 0, 19, 7)}, CipherKey::golden(10));
  CHECK(pkg.c == m(1068, 660, 2076, 1283));
  CHECK(pkg.det_p == 84);
  CHECK_FALSE(pkg.column_ratio);

  CipherKey cat = CipherKey::arnolds_cat(4);
  pkg = encrypt({m(19, 7, 2, 10)}, cat);
  CHECK(pkg.c == m(1283, 490, 450, 172));
  CHECK(pkg.det_p == 176);

  EncryptOptions opts;
  opts.emit_column_ratio = true;
  pkg = encrypt({m(14, 20, 9, 7)}, cat, opts);
  CHECK(pkg.c == m(1450, 554, 733, 280));
  CHECK(pkg.det_p == -82);
  REQUIRE(pkg.column_ratio);
  CHECK(pkg.column_ratio->value == "0.51");
  CHECK(pkg.column_ratio->consistent_with(Rational(733, 1450)));
  CHECK(pkg.column_ratio->consistent_with(Rational(140, 277)));
}

TEST_CASE("decryption") {
  CipherKey golden = CipherKey::golden(10);
  CHECK(decrypt({m(1068, 660, 2076, 1283), Int(84)}, golden).p == m(12, 0, 19, 7));
  CipherKey cat = CipherKey::arnolds_cat(4);
  CHECK(decrypt({m(770, 294, 1846, 705), Int(126)}, cat).p == m(14, 0, 28, 9));

  CipherKey zero = CipherKey::make(m(2, 1, 1, 1), {Int(1), Int(1)}, 0);
  Mat2 p = m(3, 1, 4, 1);
  CHECK(decrypt(encrypt({p}, zero), zero).p == p);

  CipherPackage bad{m(1068, 661, 2076, 1283), Int(84)};
  CHECK_THROWS_AS(decrypt(bad, golden), Error);
}

TEST_CASE("verification") {
  CipherKey cat = CipherKey::arnolds_cat(4);
  VerifyResult v = verify_package({m(770, 494, 1846, 705), Int(126)}, cat);
  CHECK(v.status == VerifyStatus::Both);
  CHECK(v.top_row_violation);
  CHECK_FALSE(v.bottom_row_violation);

  CipherKey golden = CipherKey::golden(10);
  CHECK(verify_package({m(1068, 660, 2076, 1283), Int(84)}, golden).status == VerifyStatus::Clean);
  // Both rows scaled in proportion: ratios unchanged, determinant wrong.
  v = verify_package({m(1068 * 2, 660 * 2, 2076, 1283), Int(84)}, golden);
  CHECK(v.status == VerifyStatus::DeterminantMismatch);
}

TEST_CASE("property: roundtrip and determinant identity over random keys") {
  std::mt19937_64 g(12);
  for (int i = 0; i < 500; ++i) {
    CipherKey key = testing::random_key(g);
    PlaintextMatrix p = testing::random_plaintext(g);
    EncryptOptions opts;
    opts.emit_column_ratio = true;
    CipherPackage pkg = encrypt(p, key, opts);
    CHECK(mat_det(pkg.c) == key.coding().mu * (key.coding().d == -1 && key.exponent() % 2 ? -1 : 1) * pkg.det_p);
    CHECK(decrypt(pkg, key).p == p.p);
    CHECK(verify_package(pkg, key).status == VerifyStatus::Clean);
    REQUIRE(pkg.column_ratio);
    Rational ratio(pkg.c.a21, pkg.c.a11);
    ratio.canonicalize();
    CHECK(pkg.column_ratio->consistent_with(ratio));
  }
}

TEST_CASE("property: text roundtrip with permutations and alphabets") {
  std::mt19937_64 g(13);
  for (int i = 0; i < 200; ++i) {
    Alphabet alphabet = i % 2 ? Alphabet::bytes() : Alphabet::upper26();
    CipherKey key = testing::random_key(g, 4, 24, alphabet);
    std::string text;
    auto len = testing::uniform(g, 0, 23);
    for (long j = 0; j < len; ++j) {
      text.push_back(alphabet.symbol_at(static_cast<unsigned>(testing::uniform(g, 0, alphabet.size() - 1))));
    }
    EncodedText e = encode_text(text, alphabet, key.permutation());
    std::vector<PlaintextMatrix> back;
    for (const auto& block : e.blocks) back.push_back(decrypt(encrypt(block, key), key));
    CHECK(decode_blocks(back, alphabet, key.permutation(), e.pad_len) == text);
  }
}
