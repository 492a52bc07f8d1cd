#include "unimod/channel.hpp"

#include <algorithm>
#include <sstream>

#include "unimod/error.hpp"

namespace unimod {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

std::vector<std::string> split_words(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

// Non-blank lines, each split into words.
std::vector<std::vector<std::string>> tokenized_lines(std::string_view text) {
  std::vector<std::vector<std::string>> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto words = split_words(text.substr(start, end - start));
    if (!words.empty()) out.push_back(std::move(words));
    start = end + 1;
  }
  return out;
}

void expect(const std::vector<std::string>& words, std::string_view keyword, std::size_t args) {
  if (words.empty() || words[0] != keyword) {
    parse_error("expected '" + std::string(keyword) + "', found '" + (words.empty() ? "" : words[0]) + "'");
  }
  if (words.size() != args + 1) {
    parse_error("'" + std::string(keyword) + "' takes " + std::to_string(args) + " fields");
  }
}

void expect_header(const std::vector<std::string>& words, std::string_view keyword) {
  expect(words, keyword, 1);
  if (words[1] != std::to_string(kFormatVersion)) parse_error("unsupported format version " + words[1]);
}

std::uint64_t parse_u64(const std::string& s) {
  Int v = parse_int(s);
  if (v < 0 || !v.fits_ulong_p()) parse_error("'" + s + "' is not an unsigned 64-bit value");
  return v.get_ui();
}

std::string hex_encode(std::string_view bytes) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  for (char ch : bytes) {
    auto b = static_cast<unsigned char>(ch);
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 15]);
  }
  return out;
}

std::string hex_decode(const std::string& hex) {
  if (hex.size() % 2 != 0) parse_error("odd-length hex string");
  std::string out;
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    try {
      std::size_t used = 0;
      int v = std::stoi(hex.substr(i, 2), &used, 16);
      if (used != 2) parse_error("bad hex digit in '" + hex + "'");
      out.push_back(static_cast<char>(v));
    } catch (const std::logic_error&) {
      parse_error("bad hex digit in '" + hex + "'");
    }
  }
  return out;
}

std::string ints(std::initializer_list<const Int*> values) {
  std::string out;
  for (const Int* v : values) {
    out += ' ';
    out += to_string(*v);
  }
  return out;
}

}  // namespace

// --------------------------------------------------------------------- keys

CipherKey KeyFile::to_key() const { return CipherKey::make(u, seed, n, perm, alphabet); }

KeyFile KeyFile::from_key(const CipherKey& key) {
  return KeyFile{key.unimodular().matrix(), key.seed(), key.exponent(), key.permutation(), key.alphabet()};
}

std::string serialize_key(const KeyFile& key) {
  std::ostringstream out;
  out << "unimod-key " << kFormatVersion << '\n';
  out << "u" << ints({&key.u.a11, &key.u.a12, &key.u.a21, &key.u.a22}) << '\n';
  out << "seed" << ints({&key.seed.a0, &key.seed.b0}) << '\n';
  out << "n " << key.n << '\n';
  const auto& s = key.perm.slots();
  out << "perm " << s[0] << ' ' << s[1] << ' ' << s[2] << ' ' << s[3] << '\n';
  out << "alphabet ";
  switch (key.alphabet.kind()) {
    case Alphabet::Kind::Upper26: out << "upper26"; break;
    case Alphabet::Kind::Bytes: out << "bytes"; break;
    case Alphabet::Kind::Custom: out << "custom " << hex_encode(key.alphabet.symbols()); break;
  }
  out << '\n';
  return out.str();
}

KeyFile parse_key(std::string_view text) {
  auto lines = tokenized_lines(text);
  if (lines.size() != 6) parse_error("key file needs 6 lines, found " + std::to_string(lines.size()));
  expect_header(lines[0], "unimod-key");
  KeyFile key;
  expect(lines[1], "u", 4);
  key.u = {parse_int(lines[1][1]), parse_int(lines[1][2]), parse_int(lines[1][3]), parse_int(lines[1][4])};
  expect(lines[2], "seed", 2);
  key.seed = {parse_int(lines[2][1]), parse_int(lines[2][2])};
  expect(lines[3], "n", 1);
  key.n = parse_u64(lines[3][1]);
  expect(lines[4], "perm", 4);
  std::array<unsigned, 4> slots{};
  for (std::size_t i = 0; i < 4; ++i) {
    std::uint64_t v = parse_u64(lines[4][i + 1]);
    if (v > 3) parse_error("permutation slot out of range");
    slots[i] = static_cast<unsigned>(v);
  }
  try {
    key.perm = Permutation(slots);
  } catch (const Error& e) {
    parse_error(e.what());
  }
  const auto& a = lines[5];
  if (a.empty() || a[0] != "alphabet") parse_error("expected 'alphabet'");
  if (a.size() == 2 && a[1] == "upper26") {
    key.alphabet = Alphabet::upper26();
  } else if (a.size() == 2 && a[1] == "bytes") {
    key.alphabet = Alphabet::bytes();
  } else if (a.size() == 3 && a[1] == "custom") {
    try {
      key.alphabet = Alphabet::custom(hex_decode(a[2]));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::ParseError) throw;
      parse_error(e.what());
    }
  } else {
    parse_error("unknown alphabet specification");
  }
  return key;
}

// ----------------------------------------------------------------- packages

std::string serialize_package(const CipherPackage& pkg) {
  std::ostringstream out;
  out << "unimod-package " << kFormatVersion << '\n';
  out << "block " << pkg.block_index << '\n';
  out << "pad " << pkg.pad_len << '\n';
  out << "c" << ints({&pkg.c.a11, &pkg.c.a12, &pkg.c.a21, &pkg.c.a22}) << '\n';
  out << "detp " << to_string(pkg.det_p) << '\n';
  if (pkg.column_ratio) {
    const auto& r = *pkg.column_ratio;
    out << "ratio " << to_string(r.orientation) << ' ' << r.digits << ' ' << r.value << '\n';
  }
  return out.str();
}

std::string serialize_packages(const std::vector<CipherPackage>& pkgs) {
  std::string out;
  for (const auto& p : pkgs) out += serialize_package(p);
  return out;
}

std::vector<CipherPackage> parse_packages(std::string_view text) {
  auto lines = tokenized_lines(text);
  std::vector<CipherPackage> out;
  std::size_t i = 0;
  while (i < lines.size()) {
    if (lines.size() - i < 5) parse_error("truncated package record");
    expect_header(lines[i], "unimod-package");
    CipherPackage pkg;
    expect(lines[i + 1], "block", 1);
    pkg.block_index = parse_u64(lines[i + 1][1]);
    expect(lines[i + 2], "pad", 1);
    std::uint64_t pad = parse_u64(lines[i + 2][1]);
    if (pad > 3) parse_error("padding length must be at most 3");
    pkg.pad_len = static_cast<unsigned>(pad);
    const auto& c = lines[i + 3];
    expect(c, "c", 4);
    pkg.c = {parse_int(c[1]), parse_int(c[2]), parse_int(c[3]), parse_int(c[4])};
    expect(lines[i + 4], "detp", 1);
    pkg.det_p = parse_int(lines[i + 4][1]);
    i += 5;
    if (i < lines.size() && lines[i][0] == "ratio") {
      const auto& r = lines[i];
      expect(r, "ratio", 3);
      auto orientation = parse_orientation(r[1]);
      if (!orientation) parse_error("unknown ratio orientation '" + r[1] + "'");
      std::uint64_t digits = parse_u64(r[2]);
      if (digits < 1 || digits > 64) parse_error("ratio digits must be in [1, 64]");
      ColumnRatioCheck check{*orientation, r[3], static_cast<unsigned>(digits)};
      (void)check.exact_value();  // rejects malformed decimals
      pkg.column_ratio = std::move(check);
      ++i;
    }
    out.push_back(std::move(pkg));
  }
  return out;
}

// --------------------------------------------------------------- corruption

std::string_view to_string(CorruptionMode mode) noexcept {
  switch (mode) {
    case CorruptionMode::Single: return "single";
    case CorruptionMode::Diagonal: return "diagonal";
    case CorruptionMode::AntiDiagonal: return "antidiagonal";
    case CorruptionMode::ColumnLeft: return "column_left";
    case CorruptionMode::ColumnRight: return "column_right";
    case CorruptionMode::RowTop: return "row_top";
    case CorruptionMode::RowBottom: return "row_bottom";
    case CorruptionMode::Random: return "random";
  }
  return "random";
}

std::optional<CorruptionMode> parse_corruption_mode(std::string_view name) noexcept {
  for (auto m : {CorruptionMode::Single, CorruptionMode::Diagonal, CorruptionMode::AntiDiagonal,
                 CorruptionMode::ColumnLeft, CorruptionMode::ColumnRight, CorruptionMode::RowTop,
                 CorruptionMode::RowBottom, CorruptionMode::Random}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

std::vector<Position> positions_for(CorruptionMode mode) {
  switch (mode) {
    case CorruptionMode::Diagonal: return {{0, 0}, {1, 1}};
    case CorruptionMode::AntiDiagonal: return {{0, 1}, {1, 0}};
    case CorruptionMode::ColumnLeft: return {{0, 0}, {1, 0}};
    case CorruptionMode::ColumnRight: return {{0, 1}, {1, 1}};
    case CorruptionMode::RowTop: return {{0, 0}, {0, 1}};
    case CorruptionMode::RowBottom: return {{1, 0}, {1, 1}};
    case CorruptionMode::Single:
    case CorruptionMode::Random: break;
  }
  throw Error(ErrorKind::InvalidArgument, "mode " + std::string(to_string(mode)) + " has no fixed positions");
}

namespace {

unsigned long draw(gmp_randclass& rng, unsigned long bound) { return Int(rng.get_z_range(Int(bound))).get_ui(); }

Int additive(gmp_randclass& rng, const Int& v, const std::optional<Int>& max_delta) {
  Int m = max_delta ? *max_delta : Int(abs(v) / 2);
  if (m < 1) m = 1;
  Int delta = Int(rng.get_z_range(m)) + 1;
  Int out = draw(rng, 2) == 0 ? Int(v + delta) : Int(v - delta);
  if (out < 1) out = v + delta;
  return out;
}

Int digit_flip(gmp_randclass& rng, const Int& v) {
  std::string s = to_string(abs(v));
  std::size_t idx = draw(rng, s.size());
  std::string options;
  for (char d = idx == 0 ? '1' : '0'; d <= '9'; ++d) {
    if (d != s[idx]) options.push_back(d);
  }
  s[idx] = options[draw(rng, options.size())];
  return parse_int(s);
}

}  // namespace

CorruptionResult corrupt(const std::vector<CipherPackage>& pkgs, const CorruptionSpec& spec) {
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(Int(static_cast<unsigned long>(spec.seed)));
  static constexpr CorruptionMode kConcrete[] = {CorruptionMode::Single,      CorruptionMode::Diagonal,
                                                 CorruptionMode::AntiDiagonal, CorruptionMode::ColumnLeft,
                                                 CorruptionMode::ColumnRight, CorruptionMode::RowTop,
                                                 CorruptionMode::RowBottom};
  CorruptionResult result;
  for (const auto& original : pkgs) {
    CipherPackage pkg = original;
    BlockDiff diff;
    diff.block_index = pkg.block_index;
    diff.applied = spec.mode == CorruptionMode::Random ? kConcrete[draw(rng, 7)] : spec.mode;
    std::vector<Position> where;
    if (diff.applied == CorruptionMode::Single) {
      unsigned long slot = draw(rng, 4);
      where.push_back({static_cast<int>(slot / 2), static_cast<int>(slot % 2)});
    } else {
      where = positions_for(diff.applied);
    }
    for (const Position& p : where) {
      Int& entry = pkg.c.at(p.row, p.col);
      Int before = entry;
      entry = spec.magnitude == Magnitude::Additive ? additive(rng, before, spec.max_delta) : digit_flip(rng, before);
      diff.changes.push_back({p, before, entry});
    }
    result.packages.push_back(std::move(pkg));
    result.diffs.push_back(std::move(diff));
  }
  return result;
}

std::string serialize_diff(const std::vector<BlockDiff>& diffs) {
  std::ostringstream out;
  out << "unimod-diff " << kFormatVersion << '\n';
  for (const auto& d : diffs) {
    out << "block " << d.block_index << ' ' << to_string(d.applied) << '\n';
    for (const auto& ch : d.changes) {
      out << "change " << ch.position.row << ' ' << ch.position.col << ' ' << to_string(ch.before) << ' '
          << to_string(ch.after) << '\n';
    }
  }
  return out.str();
}

std::vector<BlockDiff> parse_diff(std::string_view text) {
  auto lines = tokenized_lines(text);
  if (lines.empty()) parse_error("empty diff");
  expect_header(lines[0], "unimod-diff");
  std::vector<BlockDiff> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& w = lines[i];
    if (w[0] == "block") {
      expect(w, "block", 2);
      auto mode = parse_corruption_mode(w[2]);
      if (!mode || *mode == CorruptionMode::Random) parse_error("bad corruption mode '" + w[2] + "'");
      out.push_back({parse_u64(w[1]), *mode, {}});
    } else {
      expect(w, "change", 4);
      if (out.empty()) parse_error("change before any block");
      std::uint64_t r = parse_u64(w[1]);
      std::uint64_t c = parse_u64(w[2]);
      if (r > 1 || c > 1) parse_error("position out of range");
      out.back().changes.push_back(
          {{static_cast<int>(r), static_cast<int>(c)}, parse_int(w[3]), parse_int(w[4])});
    }
  }
  return out;
}

// ------------------------------------------------------------------ reports

namespace {

std::string_view report_status(const CorrectionReport& r) {
  if (r.assumed_class == ErrorClass::None && r.succeeded()) return "clean";
  if (r.succeeded()) return "repaired";
  if (r.ambiguous()) return "ambiguous";
  return "uncorrectable";
}

}  // namespace

std::string format_report(const CorrectionReport& report, std::uint64_t block_index) {
  std::ostringstream out;
  out << "block " << block_index << '\n';
  out << "status " << report_status(report) << '\n';
  if (report.succeeded()) {
    out << "class " << to_string(report.assumed_class) << '\n';
    if (report.position) out << "position " << report.position->row << ' ' << report.position->col << '\n';
    const Mat2& m = *report.repaired;
    out << "repaired" << ints({&m.a11, &m.a12, &m.a21, &m.a22}) << '\n';
  }
  out << "examined " << report.candidates_examined << '\n';
  if (report.residual_failure) {
    out << "failure " << to_string(report.residual_failure->kind) << ' ' << report.residual_failure->detail << '\n';
  }
  if (!report.succeeded()) {
    for (const Mat2& m : report.passing) out << "candidate" << ints({&m.a11, &m.a12, &m.a21, &m.a22}) << '\n';
  }
  for (const auto& a : report.attempts) {
    out << "attempt " << to_string(a.assumed_class) << ' '
        << (a.succeeded() ? std::string_view("ok") : to_string(a.residual_failure->kind)) << " examined "
        << a.candidates_examined;
    if (a.feasible_in_bounds > 0) out << " feasible " << a.feasible_in_bounds;
    out << '\n';
    for (const auto& p : a.probes) {
      out << "  probe " << p.position.row << ' ' << p.position.col << " estimate " << to_string(p.estimate)
          << " det " << to_string(p.det_at_estimate) << " solution "
          << (p.exact_solution ? to_string(*p.exact_solution) : std::string("-")) << " : " << p.reason << '\n';
    }
  }
  return out.str();
}

}  // namespace unimod
