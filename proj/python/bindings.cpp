#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "unimod/channel.hpp"
#include "unimod/cipher.hpp"
#include "unimod/cryptanalysis.hpp"
#include "unimod/error.hpp"
#include "unimod/error_correction.hpp"
#include "unimod/matrix_core.hpp"
#include "unimod/ratio_analysis.hpp"

namespace py = pybind11;
using namespace unimod;

namespace {

py::int_ to_py(const Int& v) { return py::int_(py::str(v.get_str(10))); }

Int from_py(const py::handle& h) { return parse_int(py::str(py::int_(py::reinterpret_borrow<py::object>(h))).cast<std::string>()); }

py::list to_py(const Mat2& m) {
  py::list rows;
  rows.append(py::make_tuple(to_py(m.a11), to_py(m.a12)));
  rows.append(py::make_tuple(to_py(m.a21), to_py(m.a22)));
  return rows;
}

Mat2 mat_from_py(const py::object& o) {
  py::sequence rows = o;
  if (py::len(rows) != 2) throw Error(ErrorKind::InvalidArgument, "expected a 2x2 matrix");
  py::sequence r0 = rows[0], r1 = rows[1];
  if (py::len(r0) != 2 || py::len(r1) != 2) throw Error(ErrorKind::InvalidArgument, "expected a 2x2 matrix");
  return {from_py(r0[0]), from_py(r0[1]), from_py(r1[0]), from_py(r1[1])};
}

py::object fraction(const Rational& q) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(to_py(q.get_num()), to_py(q.get_den()));
}

py::dict package_dict(const CipherPackage& pkg) {
  py::dict d;
  d["c"] = to_py(pkg.c);
  d["det_p"] = to_py(pkg.det_p);
  d["column_ratio"] = pkg.column_ratio ? py::object(py::str(pkg.column_ratio->value)) : py::object(py::none());
  d["block"] = pkg.block_index;
  d["pad"] = pkg.pad_len;
  return d;
}

py::dict report_dict(const CorrectionReport& r) {
  py::dict d;
  std::string status = r.succeeded() ? (r.assumed_class == ErrorClass::None ? "clean" : "repaired")
                       : r.ambiguous() ? "ambiguous"
                                       : "uncorrectable";
  d["status"] = status;
  d["error_class"] = std::string(to_string(r.assumed_class));
  d["repaired"] = r.repaired ? py::object(to_py(*r.repaired)) : py::object(py::none());
  d["position"] = r.position ? py::object(py::make_tuple(r.position->row, r.position->col)) : py::object(py::none());
  d["candidates_examined"] = r.candidates_examined;
  d["failure"] = r.residual_failure ? py::object(py::str(std::string(to_string(r.residual_failure->kind)) + ": " +
                                                         r.residual_failure->detail))
                                    : py::object(py::none());
  return d;
}

}  // namespace

PYBIND11_MODULE(_unimodcrypt, m) {
  m.doc() = "Unimodular-matrix cipher with check-number error correction";

  static py::exception<Error> error_type(m, "UnimodError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error_type, (std::string(to_string(e.kind())) + ": " + e.what()).c_str());
    }
  });

  m.def("mat_pow", [](const py::object& x, std::uint64_t n) { return to_py(mat_pow(mat_from_py(x), n)); });
  m.def("mat_det", [](const py::object& x) { return to_py(mat_det(mat_from_py(x))); });
  m.def("golden_matrix", [](std::uint64_t n) { return to_py(golden_matrix(n).m); });
  m.def("power_form", [](const py::object& u) { return std::string(to_string(check_bare_power_form(mat_from_py(u)))); });

  m.def(
      "ratio_iterate",
      [](const py::object& t, const py::object& d, const std::string& a0, std::size_t steps) {
        py::list out;
        for (const Rational& q : ratio_iterate({from_py(t), from_py(d), parse_rational(a0)}, steps)) {
          out.append(fraction(q));
        }
        return out;
      },
      py::arg("t"), py::arg("d"), py::arg("a0"), py::arg("steps"));
  m.def("fixed_points", [](const py::object& t, const py::object& d) {
    FixedPoints fp = fixed_points(from_py(t), from_py(d));
    return py::make_tuple(fp.plus(), fp.minus());
  });
  m.def("convergence_mode", [](const py::object& t, const py::object& d, const std::string& a0) {
    return std::string(to_string(convergence_profile({from_py(t), from_py(d), parse_rational(a0)}).mode));
  });

  py::class_<CipherKey>(m, "Key")
      .def_static("golden", [](std::uint64_t n) { return CipherKey::golden(n); })
      .def_static("k_golden", [](const py::object& k, std::uint64_t n) { return CipherKey::k_golden(from_py(k), n); })
      .def_static("arnolds_cat", [](std::uint64_t n, bool bytes) {
        return CipherKey::arnolds_cat(n, {}, bytes ? Alphabet::bytes() : Alphabet::upper26());
      }, py::arg("n"), py::arg("bytes") = false)
      .def_static(
          "make",
          [](const py::object& u, const py::object& a0, const py::object& b0, std::uint64_t n) {
            return CipherKey::make(mat_from_py(u), {from_py(a0), from_py(b0)}, n);
          },
          py::arg("u"), py::arg("a0"), py::arg("b0"), py::arg("n"))
      .def_static("from_text", [](const std::string& text) { return parse_key(text).to_key(); })
      .def("to_text", [](const CipherKey& k) { return serialize_key(KeyFile::from_key(k)); })
      .def_property_readonly("coding_matrix", [](const CipherKey& k) { return to_py(k.coding().m); })
      .def_property_readonly("det_m", [](const CipherKey& k) { return to_py(k.coding().det_m); })
      .def_property_readonly("n", &CipherKey::exponent);

  m.def(
      "encrypt",
      [](const py::object& p, const CipherKey& key, bool ratio, unsigned digits) {
        EncryptOptions opts;
        opts.emit_column_ratio = ratio;
        opts.ratio_digits = digits;
        return serialize_package(encrypt({mat_from_py(p), key.alphabet().size()}, key, opts));
      },
      py::arg("plaintext"), py::arg("key"), py::arg("column_ratio") = false, py::arg("digits") = kDefaultRatioDigits);
  m.def(
      "encrypt_text",
      [](const std::string& text, const CipherKey& key, bool ratio, unsigned digits) {
        EncodedText enc = encode_text(text, key.alphabet(), key.permutation());
        std::vector<CipherPackage> pkgs;
        for (std::size_t i = 0; i < enc.blocks.size(); ++i) {
          EncryptOptions opts;
          opts.emit_column_ratio = ratio;
          opts.ratio_digits = digits;
          opts.block_index = i;
          opts.pad_len = i + 1 == enc.blocks.size() ? enc.pad_len : 0;
          pkgs.push_back(encrypt(enc.blocks[i], key, opts));
        }
        return serialize_packages(pkgs);
      },
      py::arg("text"), py::arg("key"), py::arg("column_ratio") = false, py::arg("digits") = kDefaultRatioDigits);
  m.def("decrypt_text", [](const std::string& packages, const CipherKey& key) {
    std::vector<PlaintextMatrix> blocks;
    unsigned pad = 0;
    for (const CipherPackage& pkg : parse_packages(packages)) {
      blocks.push_back(decrypt(pkg, key));
      pad = pkg.pad_len;
    }
    return decode_blocks(blocks, key.alphabet(), key.permutation(), pad);
  });
  m.def("parse_packages", [](const std::string& text) {
    py::list out;
    for (const CipherPackage& pkg : parse_packages(text)) out.append(package_dict(pkg));
    return out;
  });
  m.def("decrypt", [](const std::string& package, const CipherKey& key) {
    return to_py(decrypt(parse_packages(package).at(0), key).p);
  });
  m.def("verify", [](const std::string& package, const CipherKey& key) {
    return std::string(to_string(verify_package(parse_packages(package).at(0), key).status));
  });
  m.def(
      "corrupt",
      [](const std::string& packages, const std::string& mode, std::uint64_t seed) {
        auto parsed = parse_corruption_mode(mode);
        if (!parsed) throw Error(ErrorKind::InvalidArgument, "unknown corruption mode '" + mode + "'");
        return serialize_packages(corrupt(parse_packages(packages), {*parsed, seed}).packages);
      },
      py::arg("packages"), py::arg("mode"), py::arg("seed"));
  m.def("correct", [](const std::string& packages, const CipherKey& key) {
    py::list out;
    for (const CipherPackage& pkg : parse_packages(packages)) out.append(report_dict(correct(pkg, key)));
    return out;
  });
  m.def("diophantine_solve", [](const py::object& a, const py::object& b, const py::object& c) {
    DiophantineFamily f = diophantine_solve(from_py(a), from_py(b), from_py(c));
    return py::make_tuple(to_py(f.x0), to_py(f.y0), to_py(f.dx), to_py(f.dy));
  });

  m.def("attack_golden", [](const CipherKey& key) { return attack_golden(make_oracle(key)).n; });
  m.def(
      "attack_k_golden",
      [](const CipherKey& key, const py::object& k_max, std::uint64_t n_max) {
        KGoldenRecovery r = attack_k_golden(make_oracle(key), from_py(k_max), n_max);
        return py::make_tuple(to_py(r.k), r.n);
      },
      py::arg("key"), py::arg("k_max") = 10, py::arg("n_max") = 512);
}
