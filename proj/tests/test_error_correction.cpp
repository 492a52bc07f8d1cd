#include <random>

#include "doctest.h"
#include "support/generators.hpp"
#include "unimod/channel.hpp"
#include "unimod/error.hpp"
#include "unimod/error_correction.hpp"

using namespace unimod;

namespace {

Mat2 m(long a, long b, long c, long d) { return {Int(a), Int(b), Int(c), Int(d)}; }

CipherPackage package(const Mat2& c, long det_p, std::optional<std::string> ratio = std::nullopt, unsigned digits = 1) {
  CipherPackage pkg{c, Int(det_p)};
  if (ratio) pkg.column_ratio = ColumnRatioCheck{RatioOrientation::BottomOverTop, *ratio, digits};
  return pkg;
}

// Brute-force oracle for a x - b y = c over a box.
std::vector<std::pair<long, long>> brute_solutions(long a, long b, long c, long box) {
  std::vector<std::pair<long, long>> out;
  for (long x = -box; x <= box; ++x) {
    for (long y = -box; y <= box; ++y) {
      if (a * x - b * y == c) out.emplace_back(x, y);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("Diophantine families") {
  DiophantineFamily f = diophantine_solve(Int(162), Int(263), Int(-440));
  CHECK(f.x0 == 33);
  CHECK(f.dx == 263);
  CHECK(f.y0 == 22);
  CHECK(f.dy == 162);

  f = diophantine_solve(Int(172), Int(450), Int(176));
  CHECK(f.x0 == 158);
  CHECK(f.dx == 225);
  CHECK(f.y0 == 60);
  CHECK(f.dy == 86);

  CHECK_THROWS_AS(diophantine_solve(Int(2), Int(4), Int(3)), Error);
  CHECK_THROWS_AS(diophantine_solve(Int(0), Int(0), Int(3)), Error);

  f = diophantine_solve(Int(5), Int(0), Int(15));
  CHECK(f.x(Int(7)) == 3);
  CHECK(f.dx == 0);
}

TEST_CASE("property: Diophantine family covers exactly the brute-force solutions") {
  std::mt19937_64 g(21);
  for (int i = 0; i < 150; ++i) {
    long a = testing::uniform(g, -12, 12);
    long b = testing::uniform(g, -12, 12);
    long c = testing::uniform(g, -40, 40);
    if (a == 0 && b == 0) continue;
    auto brute = brute_solutions(a, b, c, 30);
    DiophantineFamily f;
    try {
      f = diophantine_solve(Int(a), Int(b), Int(c));
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NoSolution);
      CHECK(brute.empty());
      continue;
    }
    for (long k = -1000; k <= 1000; ++k) {
      CHECK(Int(a) * f.x(Int(k)) - Int(b) * f.y(Int(k)) == c);
    }
    // every brute-force solution lies on the family
    for (auto [x, y] : brute) {
      bool found = false;
      for (long k = -200; k <= 200 && !found; ++k) found = f.x(Int(k)) == x && f.y(Int(k)) == y;
      CHECK(found);
    }
  }
}

TEST_CASE("plaintext bounds") {
  CipherKey cat = CipherKey::arnolds_cat(4);
  CipherPackage pkg = package(m(1283, 490, 450, 172), 176);
  auto b = plaintext_bounds(CorrectionContext::from(pkg, cat));
  CHECK(b.first_column.hi == 2225);
  CHECK(b.second_column.hi == 850);
  b = plaintext_bounds(CorrectionContext::from(pkg, CipherKey::golden(10)));
  CHECK(b.first_column.hi == 3600);
  CipherKey one = CipherKey::make(m(1, 1, 1, 0), {Int(0), Int(1)}, 10, {}, Alphabet::custom("A"));
  b = plaintext_bounds(CorrectionContext::from(pkg, one));
  CHECK(b.first_column.hi == 0);
  CHECK(b.second_column.hi == 0);
  CorrectionOptions no_bound;
  no_bound.use_plaintext_bound = false;
  CHECK_THROWS_AS(plaintext_bounds(CorrectionContext::from(pkg, cat, no_bound)), Error);
}

TEST_CASE("single error: the received matrix with a wrong c12") {
  // The plaintext behind this ciphertext has the entry 28, so the alphabet
  // must be larger than A-Z.
  CipherKey cat = CipherKey::arnolds_cat(4, {}, Alphabet::bytes());
  CipherPackage pkg = package(m(770, 494, 1846, 705), 126);
  CorrectionReport r = correct_single(pkg.c, CorrectionContext::from(pkg, cat));
  REQUIRE(r.succeeded());
  CHECK(*r.repaired == m(770, 294, 1846, 705));
  CHECK(r.position == Position{0, 1});
  REQUIRE(r.probes.size() == 2);
  CHECK(r.probes[0].estimate == 1293);
  CHECK_FALSE(r.probes[0].exact_solution);
  CHECK(r.probes[1].estimate == 294);
  CHECK(r.probes[1].accepted);

  CorrectionReport full = correct(pkg, cat);
  REQUIRE(full.succeeded());
  CHECK(full.assumed_class == ErrorClass::Single);
  CHECK(full.candidates_examined == 2);
  CHECK(*full.repaired == m(770, 294, 1846, 705));
}

TEST_CASE("single error: an impossible first position falls through") {
  CipherKey golden = CipherKey::golden(10);
  // c11 damaged so that E + c12 c21 is not a multiple of c22 when probing c11
  // with the bottom row also in play: damage c22 instead and probe everything.
  CipherPackage pkg = package(m(1068, 660, 2076, 1290), 84);
  CorrectionReport r = correct(pkg, golden);
  REQUIRE(r.succeeded());
  CHECK(*r.repaired == m(1068, 660, 2076, 1283));
  CHECK(r.position == Position{1, 1});
}

TEST_CASE("clean package") {
  CipherKey golden = CipherKey::golden(10);
  CorrectionReport r = correct(package(m(1068, 660, 2076, 1283), 84), golden);
  CHECK(r.assumed_class == ErrorClass::None);
  CHECK(r.succeeded());
  CHECK(*r.repaired == m(1068, 660, 2076, 1283));
}

TEST_CASE("diagonal and anti-diagonal errors") {
  CipherKey golden = CipherKey::golden(10);
  CipherPackage pkg = package(m(9999, 660, 2076, 9999), 84);
  CorrectionContext ctx = CorrectionContext::from(pkg, golden);
  CorrectionReport r = correct_diagonal(pkg.c, ctx, false);
  REQUIRE(r.succeeded());
  CHECK(*r.repaired == m(1068, 660, 2076, 1283));
  CHECK(correct(pkg, golden).assumed_class == ErrorClass::Diagonal);

  pkg = package(m(1068, 9999, 9999, 1283), 84);
  r = correct_diagonal(pkg.c, CorrectionContext::from(pkg, golden), true);
  REQUIRE(r.succeeded());
  CHECK(*r.repaired == m(1068, 660, 2076, 1283));

  // zero plaintext top row: N = 0
  CipherPackage zero = package(m(0, 0, 55, 34), 0);
  zero.c.a11 = 5;
  zero.c.a22 = 7;
  r = correct_diagonal(zero.c, CorrectionContext::from(zero, golden), false);
  REQUIRE(r.residual_failure);
  CHECK(r.residual_failure->kind == FailureKind::NonPositiveTarget);
}

TEST_CASE("column errors") {
  CipherKey golden = CipherKey::golden(10);
  CipherPackage pkg = package(m(9999, 660, 9999, 1283), 84);
  CorrectionReport r = correct_column(pkg.c, CorrectionContext::from(pkg, golden), ColumnSide::Left);
  REQUIRE(r.succeeded());
  CHECK(*r.repaired == m(1068, 660, 2076, 1283));

  pkg = package(m(1068, 9999, 2076, 9999), 84);
  r = correct_column(pkg.c, CorrectionContext::from(pkg, golden), ColumnSide::Right);
  REQUIRE(r.succeeded());
  CHECK(*r.repaired == m(1068, 660, 2076, 1283));

  // gcd(c22, c12) = 2 does not divide the odd target
  CipherKey cat = CipherKey::arnolds_cat(4);
  pkg = package(m(5, 4, 7, 6), 3);
  r = correct_column(pkg.c, CorrectionContext::from(pkg, cat), ColumnSide::Left);
  REQUIRE(r.residual_failure);
  CHECK(r.residual_failure->kind == FailureKind::NoDiophantineSolution);
}

TEST_CASE("row errors with the column ratio") {
  CipherKey golden6 = CipherKey::golden(6);
  CipherPackage pkg = package(m(310, 200, 263, 162), -440, "0.9");
  CorrectionReport r = correct_row(pkg.c, CorrectionContext::from(pkg, golden6), RowSide::Top);
  REQUIRE(r.succeeded());
  CHECK(*r.repaired == m(296, 184, 263, 162));
  CorrectionReport full = correct(pkg, golden6);
  REQUIRE(full.succeeded());
  CHECK(full.assumed_class == ErrorClass::RowTop);

  CipherKey cat = CipherKey::arnolds_cat(4);
  pkg = package(m(1325, 321, 733, 280), -82, "0.5");
  full = correct(pkg, cat);
  REQUIRE(full.succeeded());
  CHECK(*full.repaired == m(1450, 554, 733, 280));

  // bottom row, two significant digits
  pkg = package(m(1450, 554, 700, 300), -82, "0.51", 2);
  full = correct(pkg, cat);
  REQUIRE(full.succeeded());
  CHECK(full.assumed_class == ErrorClass::RowBottom);
  CHECK(*full.repaired == m(1450, 554, 733, 280));
}

TEST_CASE("row errors without the column ratio stay unresolved") {
  CipherKey cat = CipherKey::arnolds_cat(4);
  // received top row damaged, bottom row [450, 172], det P = 176
  CipherPackage pkg = package(m(1200, 500, 450, 172), 176);
  CorrectionReport r = correct_row(pkg.c, CorrectionContext::from(pkg, cat), RowSide::Top);
  REQUIRE(r.residual_failure);
  CHECK(r.residual_failure->kind == FailureKind::ColumnRatioMissing);
  CHECK(r.feasible_in_bounds == 10);
  CorrectionReport full = correct(pkg, cat);
  CHECK_FALSE(full.succeeded());
}

TEST_CASE("triple errors are not repaired") {
  CipherKey golden = CipherKey::golden(10);
  CorrectionReport r = correct(package(m(1000, 700, 2000, 1283), 84), golden);
  CHECK_FALSE(r.succeeded());
  REQUIRE(r.residual_failure);
  CHECK(r.residual_failure->kind == FailureKind::Uncorrectable);
}

TEST_CASE("property: injected errors are repaired exactly or reported") {
  std::mt19937_64 g(31);
  for (auto mode : {CorruptionMode::Single, CorruptionMode::Diagonal, CorruptionMode::AntiDiagonal,
                    CorruptionMode::ColumnLeft, CorruptionMode::ColumnRight, CorruptionMode::RowTop,
                    CorruptionMode::RowBottom}) {
    int exact = 0;
    for (int i = 0; i < 60; ++i) {
      CipherKey key = testing::random_key(g);
      EncryptOptions opts;
      opts.emit_column_ratio = true;
      CipherPackage clean = encrypt(testing::random_plaintext(g), key, opts);
      CorruptionSpec spec{mode, g(), Magnitude::Additive, std::nullopt};
      CipherPackage bad = corrupt({clean}, spec).packages[0];
      CorrectionReport r = correct(bad, key);
      if (r.succeeded()) {
        bool row = mode == CorruptionMode::RowTop || mode == CorruptionMode::RowBottom;
        if (!row) CHECK(*r.repaired == clean.c);
        if (*r.repaired == clean.c) ++exact;
        CHECK_FALSE(rejection_reason(*r.repaired, CorrectionContext::from(bad, key)));
      }
    }
    INFO("mode " << to_string(mode) << ": " << exact << "/60");
    CHECK(exact >= 50);
  }
}
