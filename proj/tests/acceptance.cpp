// Acceptance run: one PASS/FAIL line per criterion with the measured values.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "support/generators.hpp"
#include "unimod/channel.hpp"
#include "unimod/cipher.hpp"
#include "unimod/cryptanalysis.hpp"
#include "unimod/error.hpp"
#include "unimod/error_correction.hpp"
#include "unimod/matrix_core.hpp"
#include "unimod/ratio_analysis.hpp"

using namespace unimod;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double budget_seconds, const std::function<Outcome()>& body) {
  auto start = Clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  bool in_time = seconds < budget_seconds;
  bool pass = out.pass && in_time;
  if (!pass) ++failures;
  std::printf("[%s] %2d %s: %s (%.3f s, budget %.3g s%s)\n", pass ? "PASS" : "FAIL", id, name, out.detail.c_str(),
              seconds, budget_seconds, in_time ? "" : ", over budget");
  std::fflush(stdout);
}

Mat2 m(long a, long b, long c, long d) { return {Int(a), Int(b), Int(c), Int(d)}; }

CipherPackage package(const Mat2& c, long det_p, std::optional<std::string> ratio = std::nullopt,
                      unsigned digits = 1) {
  CipherPackage pkg{c, Int(det_p)};
  if (ratio) pkg.column_ratio = ColumnRatioCheck{RatioOrientation::BottomOverTop, *ratio, digits};
  return pkg;
}

std::string fixed5(const Rational& q) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.5f", to_double(q));
  return buf;
}

}  // namespace

int main() {
  criterion(1, "Example 1 replay", 1.0, [] {
    CipherKey key = CipherKey::golden(10);
    PlaintextMatrix p{m(12, 0, 19, 7)};
    auto t0 = Clock::now();
    CipherPackage pkg = encrypt(p, key);
    PlaintextMatrix back = decrypt(pkg, key);
    double us = std::chrono::duration<double, std::micro>(Clock::now() - t0).count();
    bool ok = pkg.c == m(1068, 660, 2076, 1283) && pkg.det_p == 84 && back.p == p.p && us < 1000.0;
    std::ostringstream s;
    s << "C=" << pkg.c << " det_p=" << pkg.det_p << " decrypt " << (back.p == p.p ? "exact" : "WRONG")
      << ", encrypt+decrypt " << us << " us";
    return Outcome{ok, s.str()};
  });

  criterion(2, "Example 2 replay", 1.0, [] {
    CipherKey key = CipherKey::arnolds_cat(4, {}, Alphabet::bytes());
    CipherPackage pkg = package(m(770, 494, 1846, 705), 126);
    VerifyResult v = verify_package(pkg, key);
    CorrectionReport r = correct(pkg, key);
    const CorrectionReport& single = r.attempts.at(0);
    bool first_rejected = single.probes.size() == 2 && single.probes[0].position == Position{0, 0} &&
                          single.probes[0].estimate == 1293 && !single.probes[0].exact_solution &&
                          !single.probes[0].accepted;
    bool ok = v.top_row_violation && !v.bottom_row_violation && r.succeeded() &&
              r.assumed_class == ErrorClass::Single && *r.repaired == m(770, 294, 1846, 705) &&
              r.position == Position{0, 1} && r.candidates_examined == 2 && first_rejected;
    std::ostringstream s;
    s << "flags top=" << v.top_row_violation << " bottom=" << v.bottom_row_violation << ", first probe x~"
      << single.probes.at(0).estimate << " det " << single.probes.at(0).det_at_estimate << " rejected, repaired "
      << (r.repaired ? to_string(*r.repaired) : std::string("none")) << " after " << r.candidates_examined
      << " candidates";
    return Outcome{ok, s.str()};
  });

  criterion(3, "Diophantine ratio table", 1.0, [] {
    DiophantineFamily f = diophantine_solve(Int(162), Int(263), Int(-440));
    const char* table[] = {"1.50000", "1.60870", "1.61561", "1.61811", "1.61940", "1.62019"};
    bool ok = f.x0 == 33 && f.dx == 263 && f.y0 == 22 && f.dy == 162;
    std::ostringstream s;
    s << "x=" << f.dx << "k+" << f.x0 << " y=" << f.dy << "k+" << f.y0 << " ratios";
    std::vector<Rational> ratios;
    for (long k = 0; k <= 5; ++k) {
      Rational q(f.x(Int(k)), f.y(Int(k)));
      q.canonicalize();
      ratios.push_back(q);
      ok = ok && fixed5(q) == table[k];
      s << ' ' << fixed5(q);
    }
    FixedPoints fp{Int(1), Int(-1)};
    auto dist = [&](const Rational& q) { return std::fabs(to_double(q) - fp.plus()); };
    bool k3_closer = dist(ratios[3]) < dist(ratios[1]);
    ok = ok && k3_closer;
    s << "; k=3 closer to tau than k=1: " << (k3_closer ? "yes" : "no");
    return Outcome{ok, s.str()};
  });

  criterion(4, "ciphertext bounds example", 1.0, [] {
    CipherKey cat = CipherKey::arnolds_cat(4);
    CipherPackage pkg = package(m(1200, 500, 450, 172), 176);
    CorrectionContext ctx = CorrectionContext::from(pkg, cat);
    PlaintextBounds b = plaintext_bounds(ctx);
    CorrectionReport r = correct_row(pkg.c, ctx, RowSide::Top);
    DiophantineFamily f = diophantine_solve(Int(172), Int(450), Int(176));
    bool ok = b.first_column.lo == 0 && b.first_column.hi == 2225 && b.second_column.lo == 0 &&
              b.second_column.hi == 850 && r.feasible_in_bounds == 10 && f.x0 == 158 && f.dx == 225 &&
              f.y0 == 60 && f.dy == 86;
    std::ostringstream s;
    s << "x in [0," << b.first_column.hi << "], y in [0," << b.second_column.hi << "], " << r.feasible_in_bounds
      << " feasible k";
    return Outcome{ok, s.str()};
  });

  criterion(5, "row repair with column ratio", 1.0, [] {
    CipherKey golden6 = CipherKey::golden(6);
    CorrectionReport a = correct(package(m(310, 200, 263, 162), -440, "0.9"), golden6);
    CipherKey cat = CipherKey::arnolds_cat(4);
    CorrectionReport b = correct(package(m(1325, 321, 733, 280), -82, "0.5"), cat);
    bool ok = a.succeeded() && *a.repaired == m(296, 184, 263, 162) && b.succeeded() &&
              *b.repaired == m(1450, 554, 733, 280) && Int(280) * 1450 - Int(733) * 554 == -82;
    std::ostringstream s;
    s << "golden n=6 -> " << (a.repaired ? to_string(*a.repaired) : std::string("none")) << ", cat n=4 -> "
      << (b.repaired ? to_string(*b.repaired) : std::string("none"));
    return Outcome{ok, s.str()};
  });

  criterion(6, "column ratio example", 1.0, [] {
    ColumnRatio c1 = column_ratio(m(251, 96, 128, 49), RatioOrientation::TopOverBottom);
    ColumnRatio c2 = column_ratio(m(1761, 673, 128, 49), RatioOrientation::TopOverBottom);
    double r1 = to_double(c1.left);
    double r2 = to_double(c2.left);
    std::string t1 = round_significant(c1.left, 3).text;
    std::string t2 = round_significant(c2.left, 3).text;
    bool ok = t1 == "1.96" && t2 == "13.8" && std::fabs(r1 - 1.96) <= 0.01 * 1.96 &&
              std::fabs(r2 - 13.8) <= 0.01 * 13.8;
    char buf[200];
    std::snprintf(buf, sizeof buf, "c11/c21: C1 %.4f -> %s (vs 1.96), C2 %.4f -> %s (vs 13.8), rel tol 0.01", r1,
                  t1.c_str(), r2, t2.c_str());
    return Outcome{ok, buf};
  });

  criterion(7, "convergence theorems", 5.0, [] {
    std::mt19937_64 g(70);
    int agree = 0, total = 0, decays = 0, decay_total = 0;
    double worst_rate = 0.0;
    while (total < 200) {
      long d = testing::uniform(g, 0, 1) == 0 ? 1 : -1;
      long t = testing::uniform(g, d > 0 ? 3 : 1, 9);
      Rational a0(Int(testing::uniform(g, 1, 400)), Int(testing::uniform(g, 1, 40)));
      a0.canonicalize();
      FixedPoints fp{Int(t), Int(d)};
      if (d > 0 && fp.compare_minus(a0) <= 0) continue;
      ConvergenceMode expected = d < 0 ? ConvergenceMode::AlternatingSplit
                                 : fp.compare_plus(a0) >= 0 ? ConvergenceMode::MonotoneDecreasing
                                                            : ConvergenceMode::MonotoneIncreasing;
      ConvergenceProfile p = convergence_profile({Int(t), Int(d), a0}, 48);
      ++total;
      agree += p.mode == expected;
      {
        DecayFit fit = fit_exponential_decay(p.errors, 1);
        bool bounded = fit.rate < 1.0;
        for (std::size_t k = 1; k < p.errors.size() && bounded; ++k) {
          bounded = p.errors[k] <= fit.scale * std::pow(fit.rate, static_cast<double>(k)) * (1 + 1e-9);
        }
        ++decay_total;
        decays += bounded;
        worst_rate = std::max(worst_rate, fit.rate);
      }
    }
    std::ostringstream s;
    s << agree << "/" << total << " modes match, " << decays << "/" << decay_total
      << " fits with lambda<1 (worst lambda " << worst_rate << ")";
    return Outcome{agree == total && decays == decay_total, s.str()};
  });

  criterion(8, "roundtrip and check invariants", 10.0, [] {
    std::mt19937_64 g(80);
    int ok = 0;
    for (int i = 0; i < 1000; ++i) {
      CipherKey key = testing::random_key(g);
      PlaintextMatrix p = testing::random_plaintext(g);
      CipherPackage pkg = encrypt(p, key);
      ok += decrypt(pkg, key).p == p.p && pkg.det_p == mat_det(p.p) && mat_det(pkg.c) == key.coding().det_m * pkg.det_p &&
            verify_package(pkg, key).status == VerifyStatus::Clean;
    }
    return Outcome{ok == 1000, std::to_string(ok) + "/1000 keys: decrypt(encrypt) = id, det identity, Clean"};
  });

  criterion(9, "correction suite", 60.0, [] {
    std::mt19937_64 g(90);
    std::ostringstream s;
    bool pass = true;
    auto run = [&](CorruptionMode mode, bool with_ratio, int trials, double min_rate, bool allow_wrong,
                   const char* label) {
      int exact = 0, wrong = 0, wrong_trace2 = 0, reported = 0;
      for (int i = 0; i < trials; ++i) {
        CipherKey key = testing::random_key(g);
        EncryptOptions opts;
        opts.emit_column_ratio = with_ratio;
        CipherPackage clean = encrypt(testing::random_plaintext(g), key, opts);
        CipherPackage bad = corrupt({clean}, {mode, g(), Magnitude::Additive, std::nullopt}).packages[0];
        CorrectionReport r = correct(bad, key);
        if (!r.succeeded()) {
          ++reported;
        } else if (*r.repaired == clean.c) {
          ++exact;
        } else {
          ++wrong;
          wrong_trace2 += key.unimodular().degenerate_convergence();
        }
      }
      double rate = static_cast<double>(exact) / trials;
      bool ok = (allow_wrong || wrong == 0) && rate >= min_rate;
      pass = pass && ok;
      s << label << ' ' << exact << '/' << trials << " wrong " << wrong << " (" << wrong_trace2 << " with t=2) reported " << reported << "; ";
    };
    run(CorruptionMode::Single, false, 1000, 0.99, false, "single");
    run(CorruptionMode::Diagonal, false, 1000, 0.99, false, "diagonal");
    run(CorruptionMode::AntiDiagonal, false, 1000, 0.99, false, "anti");
    run(CorruptionMode::ColumnLeft, false, 1000, 0.99, false, "col-left");
    run(CorruptionMode::ColumnRight, false, 1000, 0.99, false, "col-right");
    run(CorruptionMode::RowTop, true, 500, 0.95, true, "row-top+rho");
    run(CorruptionMode::RowBottom, true, 500, 0.95, true, "row-bottom+rho");
    run(CorruptionMode::RowTop, false, 500, 0.0, false, "row-top-no-rho");
    run(CorruptionMode::RowBottom, false, 500, 0.0, false, "row-bottom-no-rho");
    // the two worked row examples
    CorrectionReport a = correct(package(m(310, 200, 263, 162), -440, "0.9"), CipherKey::golden(6));
    CorrectionReport b = correct(package(m(1325, 321, 733, 280), -82, "0.5"), CipherKey::arnolds_cat(4));
    bool examples = a.succeeded() && *a.repaired == m(296, 184, 263, 162) && b.succeeded() &&
                    *b.repaired == m(1450, 554, 733, 280);
    pass = pass && examples;
    s << "worked row examples " << (examples ? "exact" : "WRONG");
    return Outcome{pass, s.str()};
  });

  criterion(10, "attack suite", 30.0, [] {
    int golden_ok = 0, kgolden_ok = 0, resisted = 0;
    for (std::uint64_t n = 2; n <= 60; ++n) {
      GoldenRecovery r = attack_golden(make_oracle(CipherKey::golden(n)));
      golden_ok += r.n == n && r.queries == 1;
    }
    for (long k = 1; k <= 10; ++k) {
      for (std::uint64_t n = 2; n <= 40; ++n) {
        KGoldenRecovery r = attack_k_golden(make_oracle(CipherKey::k_golden(Int(k), n)), Int(10), 512);
        kgolden_ok += r.k == k && r.n == n;
      }
    }
    std::mt19937_64 g(100);
    for (int i = 0; i < 100; ++i) {
      EncryptionOracle oracle = make_oracle(testing::random_key(g));
      bool golden_failed = false, kgolden_failed = false;
      try {
        attack_golden(oracle);
      } catch (const Error& e) {
        golden_failed = e.kind() == ErrorKind::NotGoldenOracle;
      }
      try {
        attack_k_golden(oracle, Int(10), 512);
      } catch (const Error& e) {
        kgolden_failed = e.kind() == ErrorKind::NoMatchInBounds;
      }
      resisted += golden_failed && kgolden_failed;
    }
    std::ostringstream s;
    s << "golden " << golden_ok << "/59, k-golden " << kgolden_ok << "/390, unimodular oracles resisted " << resisted
      << "/100";
    return Outcome{golden_ok == 59 && kgolden_ok == 390 && resisted == 100, s.str()};
  });

  criterion(11, "structure theorems", 10.0, [] {
    int swept = 0, consistent = 0;
    for (long a = 0; a <= 6; ++a) {
      for (long b = 0; b <= 6; ++b) {
        for (long c = 0; c <= 6; ++c) {
          for (long d = 0; d <= 6; ++d) {
            Mat2 u = m(a, b, c, d);
            Mat2 u2 = u * u;
            // U^2 = [[A3, A2], [B3, B2]] with U = [[A2, A1], [B2, B1]]
            bool shifted = u2.a12 == u.a11 && u2.a22 == u.a21;
            PowerForm form = check_bare_power_form(u);
            bool ok = shifted ? form != PowerForm::Neither : form != PowerForm::BarePowerForm;
            ++swept;
            consistent += ok;
          }
        }
      }
    }
    std::mt19937_64 g(110);
    int s_ok = 0;
    for (int i = 0; i < 500; ++i) {
      CipherKey key = testing::random_key(g, 0, 32);
      const Mat2& u = key.unimodular().matrix();
      Mat2 m0{u.a11 * key.seed().a0 + u.a12 * key.seed().b0, key.seed().a0,
              u.a21 * key.seed().a0 + u.a22 * key.seed().b0, key.seed().b0};
      const CodingMatrix& cm = key.coding();
      s_ok += m0 * mat_pow(s_matrix(cm.t, cm.d), cm.n) == mat_pow(u, cm.n) * m0 && cm.m == mat_pow(u, cm.n) * m0;
    }
    std::ostringstream s;
    s << consistent << "/" << swept << " matrices consistent with the power-form classification, " << s_ok
      << "/500 keys with M0 S^n = U^n M0";
    return Outcome{consistent == swept && s_ok == 500, s.str()};
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
