#include "unimod/cryptanalysis.hpp"

#include "unimod/error.hpp"

namespace unimod {

EncryptionOracle make_oracle(const CipherKey& key) {
  Mat2 m = key.coding().m;
  return [m](const Mat2& p) { return p * m; };
}

namespace {

// Searches [[k, 1], [1, 0]]^n for n in [1, n_max] equal to `m`; the powers
// are walked as consecutive terms F_{n+1}, F_n of F_{i+1} = k F_i + F_{i-1}.
std::optional<std::uint64_t> match_k_power(const Mat2& m, const Int& k, std::uint64_t n_max) {
  Int prev(0);  // F_0
  Int cur(1);   // F_1
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    Int next = k * cur + prev;  // F_{n+1}
    if (next > m.a11) return std::nullopt;
    if (next == m.a11 && cur == m.a12 && cur == m.a21 && prev == m.a22) return n;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return std::nullopt;
}

}  // namespace

GoldenRecovery attack_golden(const EncryptionOracle& oracle, std::uint64_t n_max) {
  GoldenRecovery out;
  out.observed = oracle(Mat2::identity());
  out.queries = 1;
  auto n = match_k_power(out.observed, Int(1), n_max);
  if (!n) {
    throw Error(ErrorKind::NotGoldenOracle,
                "unit plaintext gave " + to_string(out.observed) + ", not Q^n for any n <= " + std::to_string(n_max));
  }
  out.n = *n;
  return out;
}

KGoldenRecovery attack_k_golden(const EncryptionOracle& oracle, const Int& k_max, std::uint64_t n_max) {
  KGoldenRecovery out;
  out.observed = oracle(Mat2::identity());
  out.queries = 1;
  for (Int k(1); k <= k_max; ++k) {
    if (auto n = match_k_power(out.observed, k, n_max)) {
      out.k = k;
      out.n = *n;
      return out;
    }
  }
  throw Error(ErrorKind::NoMatchInBounds, "unit plaintext gave " + to_string(out.observed) +
                                              ", no k-golden power with k <= " + to_string(k_max) +
                                              ", n <= " + std::to_string(n_max));
}

Mat2 resistance_query(std::size_t i) {
  switch (i) {
    case 0: return {Int(1), Int(0), Int(0), Int(0)};
    case 1: return {Int(0), Int(0), Int(0), Int(1)};
    default: {
      // Further queries carry no new information about M_n but are kept
      // distinct so that callers see a flat tail.
      Int s(static_cast<unsigned long>(i));
      return {s, Int(1), Int(1), s + 1};
    }
  }
}

namespace {

Int range_size(const IntRange& r) { return r.hi < r.lo ? Int(0) : Int(r.hi - r.lo + 1); }

}  // namespace

ResistanceStats measure_unimodular_resistance(const EncryptionOracle& oracle, const ParamBox& box,
                                              std::size_t queries, std::size_t cap) {
  ResistanceStats stats;
  stats.consistent.assign(queries, 0);

  Int total(1);
  for (const IntRange* r : {&box.alpha, &box.beta, &box.gamma, &box.delta, &box.a0, &box.b0, &box.n}) {
    total *= range_size(*r);
  }
  if (total == 0) return stats;
  if (box.n.lo < 0 || !box.n.hi.fits_ulong_p()) throw Error(ErrorKind::InvalidArgument, "exponent range out of bounds");

  std::vector<Mat2> answers;
  answers.reserve(queries);
  for (std::size_t q = 0; q < queries; ++q) answers.push_back(oracle(resistance_query(q)));

  for (Int a = box.alpha.lo; a <= box.alpha.hi; ++a) {
    for (Int b = box.beta.lo; b <= box.beta.hi; ++b) {
      for (Int g = box.gamma.lo; g <= box.gamma.hi; ++g) {
        for (Int dl = box.delta.lo; dl <= box.delta.hi; ++dl) {
          Mat2 u{a, b, g, dl};
          Int det = mat_det(u);
          Int per_u = range_size(box.a0) * range_size(box.b0) * range_size(box.n);
          if (det != 1 && det != -1) {
            // Not unimodular: every seed and exponent is visited and rejected.
            Int room = Int(static_cast<unsigned long>(cap)) - Int(static_cast<unsigned long>(stats.enumerated));
            if (per_u > room) {
              stats.enumerated = cap;
              stats.truncated = true;
              return stats;
            }
            stats.enumerated += per_u.get_ui();
            continue;
          }
          std::optional<UnimodularKeyMatrix> key;
          try {
            key = UnimodularKeyMatrix::from(u);
          } catch (const Error&) {
          }
          for (Int s0 = box.a0.lo; s0 <= box.a0.hi; ++s0) {
            for (Int s1 = box.b0.lo; s1 <= box.b0.hi; ++s1) {
              for (Int n = box.n.lo; n <= box.n.hi; ++n) {
                if (stats.enumerated >= cap) {
                  stats.truncated = true;
                  return stats;
                }
                ++stats.enumerated;
                if (!key) continue;
                CodingMatrix cm;
                try {
                  cm = build_coding_matrix(*key, SeedPair{s0, s1}, n.get_ui());
                } catch (const Error&) {
                  continue;
                }
                if (cm.m.a11 < 1 || cm.m.a12 < 1 || cm.m.a21 < 1 || cm.m.a22 < 1 || cm.det_m == 0) continue;
                ++stats.admissible;
                for (std::size_t q = 0; q < queries; ++q) {
                  if (resistance_query(q) * cm.m != answers[q]) break;
                  ++stats.consistent[q];
                }
              }
            }
          }
        }
      }
    }
  }
  return stats;
}

}  // namespace unimod
