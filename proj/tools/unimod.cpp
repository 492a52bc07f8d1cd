// unimod: key generation, encryption, channel corruption, correction,
// decryption and attacks on the command line.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "unimod/channel.hpp"
#include "unimod/cipher.hpp"
#include "unimod/cryptanalysis.hpp"
#include "unimod/error.hpp"
#include "unimod/error_correction.hpp"
#include "unimod/ratio_analysis.hpp"

using namespace unimod;

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot read " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

void write_output(const std::string& path, const std::string& data) {
  if (path == "-") {
    std::cout << data;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path);
  out << data;
}

unsigned default_ratio_digits() {
  if (const char* env = std::getenv("UNIMOD_RATIO_DIGITS")) {
    Int v = parse_int(env);
    if (v < 1 || v > 64) throw Error(ErrorKind::InvalidArgument, "UNIMOD_RATIO_DIGITS must be in [1, 64]");
    return static_cast<unsigned>(v.get_ui());
  }
  return kDefaultRatioDigits;
}

Permutation parse_perm(const std::string& text) {
  std::array<unsigned, 4> slots{};
  std::stringstream in(text);
  std::string part;
  std::size_t i = 0;
  while (std::getline(in, part, ',')) {
    if (i == 4) throw Error(ErrorKind::InvalidKey, "permutation needs exactly four slots");
    Int v = parse_int(part);
    if (v < 0 || v > 3) throw Error(ErrorKind::InvalidKey, "permutation slot out of range");
    slots[i++] = static_cast<unsigned>(v.get_ui());
  }
  if (i != 4) throw Error(ErrorKind::InvalidKey, "permutation needs exactly four slots");
  return Permutation(slots);
}

Alphabet parse_alphabet(const std::string& name, const std::string& symbols) {
  if (name == "upper26") return Alphabet::upper26();
  if (name == "bytes") return Alphabet::bytes();
  if (name == "custom") return Alphabet::custom(symbols);
  throw Error(ErrorKind::InvalidArgument, "unknown alphabet '" + name + "'");
}

CipherKey load_key(const std::string& path) { return parse_key(read_input(path)).to_key(); }

// Plain-text files usually end in a newline that the alphabet may not contain.
std::string strip_trailing_newline(std::string text, const Alphabet& alphabet) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) {
    auto byte = static_cast<unsigned char>(text.back());
    if (alphabet.symbols().find(static_cast<char>(byte)) != std::string::npos) break;
    text.pop_back();
  }
  return text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unimodular matrix cipher with error correcting check numbers"};
  app.require_subcommand(1);

  // keygen
  auto* keygen = app.add_subcommand("keygen", "write a key file");
  std::string alpha = "1", beta = "1", gamma = "1", delta = "0", seed_a = "0", seed_b = "1";
  std::uint64_t exponent = 10;
  std::string perm_text = "0,1,2,3", alphabet_name = "upper26", symbols, key_out = "-";
  bool golden = false, cat = false;
  std::string k_golden;
  keygen->add_option("--alpha", alpha);
  keygen->add_option("--beta", beta);
  keygen->add_option("--gamma", gamma);
  keygen->add_option("--delta", delta);
  keygen->add_option("--seed-a", seed_a);
  keygen->add_option("--seed-b", seed_b);
  keygen->add_option("--n", exponent, "exponent")->capture_default_str();
  keygen->add_option("--perm", perm_text, "slot permutation, e.g. 2,0,3,1")->capture_default_str();
  keygen->add_option("--alphabet", alphabet_name, "upper26, bytes or custom")->capture_default_str();
  keygen->add_option("--symbols", symbols, "symbols of a custom alphabet");
  auto* golden_flag = keygen->add_flag("--golden", golden, "Q = [[1,1],[1,0]], seed (0,1)");
  auto* kg_opt = keygen->add_option("--k-golden", k_golden, "[[k,1],[1,0]], seed (0,1)");
  auto* cat_flag = keygen->add_flag("--arnolds-cat", cat, "[[2,1],[1,1]], seed (0,1)");
  golden_flag->excludes(kg_opt)->excludes(cat_flag);
  kg_opt->excludes(cat_flag);
  keygen->add_option("--out", key_out)->capture_default_str();

  // encrypt
  auto* enc = app.add_subcommand("encrypt", "encrypt text into packages");
  std::string key_path, in_path = "-", out_path = "-", text;
  bool emit_ratio = false;
  std::optional<unsigned> ratio_digits;
  enc->add_option("--key", key_path)->required();
  auto* in_opt = enc->add_option("--in", in_path, "plaintext file");
  enc->add_option("--text", text, "plaintext given inline")->excludes(in_opt);
  enc->add_option("--out", out_path);
  enc->add_flag("--emit-column-ratio", emit_ratio);
  enc->add_option("--ratio-digits", ratio_digits, "significant digits of the column ratio")
      ->check(CLI::Range(1, 64));

  // corrupt
  auto* cor = app.add_subcommand("corrupt", "damage package entries reproducibly");
  std::string spec_mode = "single", magnitude = "additive", diff_path, max_delta;
  std::uint64_t rng_seed = 0;
  cor->add_option("--spec", spec_mode,
                  "single, diagonal, antidiagonal, column_left, column_right, row_top, row_bottom, random")
      ->capture_default_str();
  cor->add_option("--seed", rng_seed)->capture_default_str();
  cor->add_option("--magnitude", magnitude, "additive or digit-flip")->capture_default_str();
  cor->add_option("--max-delta", max_delta, "additive bound (default: half the entry)");
  cor->add_option("--in", in_path);
  cor->add_option("--out", out_path);
  cor->add_option("--diff", diff_path, "write the ground-truth diff here");

  // correct
  auto* fix = app.add_subcommand("correct", "detect and repair damaged packages");
  std::string report_path = "-";
  bool no_bound = false;
  fix->add_option("--key", key_path)->required();
  fix->add_option("--in", in_path);
  fix->add_option("--out", out_path, "repaired packages")->required();
  fix->add_option("--report", report_path)->capture_default_str();
  fix->add_flag("--no-plaintext-bound", no_bound, "do not use the alphabet size to bound plaintext entries");

  // decrypt
  auto* dec = app.add_subcommand("decrypt", "decrypt packages into text");
  dec->add_option("--key", key_path)->required();
  dec->add_option("--in", in_path);
  dec->add_option("--out", out_path);

  // verify
  auto* ver = app.add_subcommand("verify", "check packages against the key");
  ver->add_option("--key", key_path)->required();
  ver->add_option("--in", in_path);

  // attack
  auto* att = app.add_subcommand("attack", "chosen-plaintext attack on a key used as an oracle");
  std::string family = "golden", k_max = "10";
  std::uint64_t n_max = 512;
  att->add_option("--oracle-key", key_path)->required();
  att->add_option("--family", family, "golden or kgolden")->capture_default_str();
  att->add_option("--k-max", k_max)->capture_default_str();
  att->add_option("--n-max", n_max)->capture_default_str();

  // ratios
  auto* rat = app.add_subcommand("ratios", "iterate a_{i+1} = t - d / a_i");
  std::string t_text = "1", d_text = "-1", a0_text = "1";
  std::size_t steps = 10;
  rat->add_option("--t", t_text)->capture_default_str();
  rat->add_option("--d", d_text)->capture_default_str();
  rat->add_option("--a0", a0_text, "integer, p/q or decimal")->capture_default_str();
  rat->add_option("--steps", steps)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*keygen) {
      KeyFile kf;
      kf.n = exponent;
      kf.perm = parse_perm(perm_text);
      kf.alphabet = parse_alphabet(alphabet_name, symbols);
      if (golden) {
        kf.u = {Int(1), Int(1), Int(1), Int(0)};
        kf.seed = {Int(0), Int(1)};
      } else if (!k_golden.empty()) {
        kf.u = {parse_int(k_golden), Int(1), Int(1), Int(0)};
        kf.seed = {Int(0), Int(1)};
      } else if (cat) {
        kf.u = {Int(2), Int(1), Int(1), Int(1)};
        kf.seed = {Int(0), Int(1)};
      } else {
        kf.u = {parse_int(alpha), parse_int(beta), parse_int(gamma), parse_int(delta)};
        kf.seed = {parse_int(seed_a), parse_int(seed_b)};
      }
      CipherKey key = kf.to_key();
      if (key.unimodular().degenerate_convergence()) {
        std::cerr << "warning: t = 2, d = 1: ratio convergence is only algebraic\n";
      }
      write_output(key_out, serialize_key(kf));
      return 0;
    }

    if (*enc) {
      CipherKey key = load_key(key_path);
      std::string plain = enc->count("--text") ? text : strip_trailing_newline(read_input(in_path), key.alphabet());
      EncodedText encoded = encode_text(plain, key.alphabet(), key.permutation());
      EncryptOptions opts;
      opts.emit_column_ratio = emit_ratio;
      opts.ratio_digits = ratio_digits ? *ratio_digits : default_ratio_digits();
      opts.pad_len = encoded.pad_len;
      std::vector<CipherPackage> pkgs;
      for (std::size_t i = 0; i < encoded.blocks.size(); ++i) {
        opts.block_index = i;
        pkgs.push_back(encrypt(encoded.blocks[i], key, opts));
      }
      write_output(out_path, serialize_packages(pkgs));
      return 0;
    }

    if (*cor) {
      CorruptionSpec spec;
      auto mode = parse_corruption_mode(spec_mode);
      if (!mode) throw Error(ErrorKind::InvalidArgument, "unknown corruption mode '" + spec_mode + "'");
      spec.mode = *mode;
      spec.seed = rng_seed;
      if (magnitude == "additive") {
        spec.magnitude = Magnitude::Additive;
      } else if (magnitude == "digit-flip") {
        spec.magnitude = Magnitude::DigitFlip;
      } else {
        throw Error(ErrorKind::InvalidArgument, "unknown magnitude model '" + magnitude + "'");
      }
      if (!max_delta.empty()) {
        spec.max_delta = parse_int(max_delta);
        if (*spec.max_delta < 1) throw Error(ErrorKind::InvalidArgument, "--max-delta must be positive");
      }
      CorruptionResult result = corrupt(parse_packages(read_input(in_path)), spec);
      write_output(out_path, serialize_packages(result.packages));
      if (!diff_path.empty()) write_output(diff_path, serialize_diff(result.diffs));
      return 0;
    }

    if (*fix) {
      CipherKey key = load_key(key_path);
      CorrectionOptions options;
      options.use_plaintext_bound = !no_bound;
      std::vector<CipherPackage> pkgs = parse_packages(read_input(in_path));
      std::string report = "unimod-correction 1\n";
      bool any_ambiguous = false;
      bool any_failed = false;
      for (auto& pkg : pkgs) {
        CorrectionReport r = correct(pkg, key, options);
        report += format_report(r, pkg.block_index);
        if (r.succeeded()) {
          pkg.c = *r.repaired;
        } else if (r.ambiguous()) {
          any_ambiguous = true;
        } else {
          any_failed = true;
        }
      }
      write_output(out_path, serialize_packages(pkgs));
      write_output(report_path, report);
      if (any_ambiguous) return 3;
      if (any_failed) return 2;
      return 0;
    }

    if (*dec) {
      CipherKey key = load_key(key_path);
      std::vector<CipherPackage> pkgs = parse_packages(read_input(in_path));
      std::vector<PlaintextMatrix> blocks;
      unsigned pad = 0;
      for (const auto& pkg : pkgs) {
        blocks.push_back(decrypt(pkg, key));
        pad = pkg.pad_len;
      }
      write_output(out_path, decode_blocks(blocks, key.alphabet(), key.permutation(), pad));
      return 0;
    }

    if (*ver) {
      CipherKey key = load_key(key_path);
      bool all_clean = true;
      for (const auto& pkg : parse_packages(read_input(in_path))) {
        VerifyResult v = verify_package(pkg, key);
        std::cout << "block " << pkg.block_index << ' ' << to_string(v.status) << " det " << to_string(v.actual_det)
                  << " expected " << to_string(v.expected_det);
        if (v.top_row_violation) std::cout << " top-row";
        if (v.bottom_row_violation) std::cout << " bottom-row";
        std::cout << '\n';
        all_clean = all_clean && v.status == VerifyStatus::Clean;
      }
      return all_clean ? 0 : 2;
    }

    if (*att) {
      EncryptionOracle oracle = make_oracle(load_key(key_path));
      if (family == "golden") {
        GoldenRecovery r = attack_golden(oracle, n_max);
        std::cout << "family golden\nn " << r.n << "\nqueries " << r.queries << "\nobserved " << r.observed << '\n';
      } else if (family == "kgolden") {
        KGoldenRecovery r = attack_k_golden(oracle, parse_int(k_max), n_max);
        std::cout << "family kgolden\nk " << r.k << "\nn " << r.n << "\nqueries " << r.queries << "\nobserved "
                  << r.observed << '\n';
      } else {
        throw Error(ErrorKind::InvalidArgument, "unknown family '" + family + "'");
      }
      return 0;
    }

    if (*rat) {
      RatioParams params{parse_int(t_text), parse_int(d_text), parse_rational(a0_text)};
      ConvergenceProfile profile = convergence_profile(params, steps);
      FixedPoints fp(params.t, params.d);
      std::cout << "phi " << std::setprecision(12) << fp.plus() << '\n';
      std::cout << "mode " << to_string(profile.mode) << '\n';
      std::cout << "i ratio value error\n";
      for (std::size_t i = 0; i < profile.orbit.size(); ++i) {
        std::cout << i << ' ' << to_string(profile.orbit[i]) << ' ' << std::fixed << std::setprecision(8)
                  << to_double(profile.orbit[i]) << ' ' << std::scientific << std::setprecision(3)
                  << profile.errors[i] << std::defaultfloat << '\n';
      }
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return 1;
  }
  return 0;
}
