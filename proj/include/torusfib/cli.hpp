#pragma once

/**
 * Command implementations behind the `torusfib` executable. Each command
 * writes its report to `out`, diagnostics to `err`, and returns the process
 * exit code.
 */

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "torusfib/enumerate.hpp"
#include "torusfib/gluing.hpp"
#include "torusfib/invariants.hpp"
#include "torusfib/manifold_file.hpp"
#include "torusfib/surgery.hpp"

namespace torusfib::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kParse = 2, kInconsistent = 3 };

enum class Format { Text, Json };

struct Options {
  Format format = Format::Text;
  bool quiet = false;
};

inline std::optional<Format> format_from_string(std::string_view s) {
  if (s == "text") return Format::Text;
  if (s == "json" || s == "machine-readable") return Format::Json;
  return std::nullopt;
}

/// Decimal integer of any size; nullopt on malformed input.
inline std::optional<Integer> parse_integer(std::string_view s) {
  const std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (s.size() <= start || s.find_first_not_of("0123456789", start) != std::string_view::npos)
    return std::nullopt;
  Integer x(std::string(s.substr(s[0] == '+' ? 1 : 0)));
  return x;
}

inline std::string describe(const LensSpace& l) {
  if (l.q == 0) return "S^1 x S^2";
  if (l.q == 1) return "S^3";
  return l.to_string();
}

inline std::string orientation_string(int o) { return o > 0 ? "+1" : "-1"; }

inline Json lens_to_json(const LensSpace& l) {
  return Json{{"q", integer_to_json(l.q)}, {"p", integer_to_json(l.p)}};
}

inline Json certificate_to_json(const ExtensionCertificate& c) {
  return Json{{"gamma", vector_to_json(c.gamma.coords())},
              {"lambda", vector_to_json(c.lambda.coords())},
              {"alpha", vector_to_json(c.alpha.coords())}};
}

inline Json fibration_to_json(const FibrationResult& r) {
  return Json{{"phi", vector_to_json(r.phi.phi())},
              {"torus", vector_to_json(r.torus.coords())},
              {"parallel_case", r.parallel_case},
              {"cert_w", certificate_to_json(r.cert_w)},
              {"cert_w_prime", certificate_to_json(r.cert_w_prime)}};
}

inline std::string certificate_line(const ExtensionCertificate& c) {
  return "gamma = " + c.gamma.to_string() + ", lambda = " + c.lambda.to_string() + ", alpha = " +
         c.alpha.to_string();
}

// ---------------------------------------------------------------------------
// surgery

struct SurgeryReport {
  SurgerySpec spec;
  LensSpace lens;
  AbelianGroup h1;
  AbelianGroup expected;
  Integer chi;
  FibrationResult fibration;
  bool consistent = false;
};

/// Classifier and Mayer-Vietoris run side by side on the same glued manifold.
inline SurgeryReport surgery_report(const Integer& p, const Integer& q, const Integer& seed = 0) {
  SurgerySpec spec = SurgerySpec::standard(p, q, seed);
  const UnknotSurgery s = unknot_torus_surgery(spec);
  AbelianGroup h1 = mayer_vietoris_h1(s.manifold);
  AbelianGroup expected = expected_h1(s.lens);
  const Integer chi = euler_characteristic_glued(s.manifold);
  FibrationResult r = find_fibration(s.manifold);
  const bool consistent = h1 == expected && chi == 0 && verify_fibration(s.manifold, r) &&
                          s.lens == lens_normalize(q, p);
  return {std::move(spec), s.lens, std::move(h1), std::move(expected), chi, std::move(r), consistent};
}

inline std::string surgery_summary(const SurgeryReport& r) {
  return r.lens.to_string() + "; H1 = " + r.h1.to_string() + "; chi = " + r.chi.str() + "; " +
         (r.consistent ? "CONSISTENT" : "INCONSISTENT");
}

inline int cmd_surgery(std::string_view p_text, std::string_view q_text, std::optional<std::string_view> seed_text,
                       const Options& opt, std::ostream& out, std::ostream& err) {
  const auto p = parse_integer(p_text), q = parse_integer(q_text);
  if (!p || !q) {
    err << "surgery: p and q must be integers\n";
    return kUsage;
  }
  Integer seed = 0;
  if (seed_text) {
    const auto s = parse_integer(*seed_text);
    if (!s) {
      err << "surgery: completion seed must be an integer\n";
      return kUsage;
    }
    seed = *s;
  }
  if (gcd(*p, *q) != 1) {
    err << "surgery: p and q must be coprime (gcd(" << *p << "," << *q << ") = " << gcd(*p, *q) << ")\n";
    return kUsage;
  }
  const SurgeryReport r = surgery_report(*p, *q, seed);
  if (opt.format == Format::Json) {
    Json j{{"command", "surgery"},
           {"p", integer_to_json(*p)},
           {"q", integer_to_json(*q)},
           {"lens", lens_to_json(r.lens)},
           {"h1", group_to_json(r.h1)},
           {"expected_h1", group_to_json(r.expected)},
           {"chi", integer_to_json(r.chi)},
           {"gluing", Json{{"matrix", matrix_to_json(r.spec.completion())},
                           {"orientation", sign(determinant(r.spec.completion()))}}},
           {"fibration", fibration_to_json(r.fibration)},
           {"consistent", r.consistent}};
    out << j.dump() << "\n";
  } else {
    out << surgery_summary(r) << "\n";
    if (!opt.quiet) {
      out << "  result: S^1 x " << describe(r.lens);
      if (r.lens.q == 1) out << " (identity surgery)";
      out << "\n";
      out << "  gluing matrix (mu, lambda, s): " << r.spec.completion() << " det "
          << orientation_string(sign(determinant(r.spec.completion()))) << "\n";
      out << "  fibration: phi = " << r.fibration.phi.phi() << ", fiber torus " << r.fibration.torus
          << (r.fibration.parallel_case ? " (parallel case)" : "") << "\n";
    }
  }
  if (!r.consistent) {
    err << "surgery: classifier and homology disagree\n";
    return kInconsistent;
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// fibration / homology

/// Reads and parses a manifold file, reporting failures on `err`.
inline std::optional<ManifoldFile> load_manifold_file(const std::string& path, std::ostream& err) {
  std::ifstream in(path);
  if (!in) {
    err << "cannot open '" << path << "'\n";
    return std::nullopt;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_manifold_file(buffer.str());
  } catch (const ParseError& e) {
    err << path << ": " << e.what() << "\n";
    return std::nullopt;
  }
}

inline int cmd_fibration(const std::string& path, const Options& opt, std::ostream& out, std::ostream& err) {
  const auto file = load_manifold_file(path, err);
  if (!file) return kParse;
  const GluedManifold x = file->manifold();
  const FibrationResult r = find_fibration(x);
  const bool ok = verify_fibration(x, r);
  if (opt.format == Format::Json) {
    Json j = fibration_to_json(r);
    j["orientation"] = x.f.orientation();
    j["consistent"] = ok;
    out << j.dump() << "\n";
  } else {
    out << "phi = " << r.phi.phi() << "\n";
    if (!opt.quiet) {
      out << "torus = " << r.torus << "\n";
      out << "parallel_case = " << (r.parallel_case ? "true" : "false") << "\n";
      out << "cert_w: " << certificate_line(r.cert_w) << "\n";
      out << "cert_w_prime: " << certificate_line(r.cert_w_prime) << "\n";
      out << "orientation = " << orientation_string(x.f.orientation()) << "\n";
    }
  }
  if (!ok) {
    err << "fibration: certificate verification failed\n";
    return kInconsistent;
  }
  return kOk;
}

inline int cmd_homology(const std::string& path, const Options& opt, std::ostream& out, std::ostream& err) {
  const auto file = load_manifold_file(path, err);
  if (!file) return kParse;
  const GluedManifold x = file->manifold();
  AbelianGroup h1;
  try {
    h1 = mayer_vietoris_h1(x);
  } catch (const MissingH1Data& e) {
    err << path << ": " << e.what() << "\n";
    return kParse;
  }
  const Integer chi = euler_characteristic_glued(x);
  std::optional<LensSpace> lens;
  if (x.w.kind() == PieceKind::TorusTimesDisk && x.w_prime.kind() == PieceKind::TorusTimesDisk)
    lens = classify_lens_space(x);
  const bool ok = chi == 0 && (!lens || h1 == expected_h1(*lens));
  if (opt.format == Format::Json) {
    Json j{{"h1", group_to_json(h1)}, {"chi", integer_to_json(chi)}};
    if (lens) j["lens"] = lens_to_json(*lens);
    j["consistent"] = ok;
    out << j.dump() << "\n";
  } else {
    out << "H1 = " << h1 << "; chi = " << chi;
    if (lens) out << "; S^1 x " << describe(*lens) << "; " << (ok ? "CONSISTENT" : "INCONSISTENT");
    out << "\n";
    if (!opt.quiet) {
      const H1Presentation pres = mayer_vietoris_presentation(x);
      out << "  presentation: " << pres.generators << " generators, relations " << pres.relations << "\n";
    }
  }
  if (!ok) {
    err << "homology: lens classification and Mayer-Vietoris disagree\n";
    return kInconsistent;
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// enumerate

inline Json row_to_json(const EnumerationRow& row) {
  Json j{{"matrix", matrix_to_json(row.f.matrix())},
         {"orientation", row.f.orientation()},
         {"fibration", fibration_to_json(row.fibration)},
         {"h1", group_to_json(row.h1)}};
  if (row.lens) j["lens"] = lens_to_json(*row.lens);
  j["chi"] = integer_to_json(row.chi);
  j["consistent"] = row.consistent;
  return j;
}

inline std::string row_to_text(const EnumerationRow& row) {
  std::ostringstream os;
  os << row.f.matrix() << "  det " << orientation_string(row.f.orientation()) << "  phi " << row.fibration.phi.phi()
     << (row.fibration.parallel_case ? " parallel" : "") << "  H1 " << row.h1;
  if (row.lens) os << "  " << row.lens->to_string();
  os << "  chi " << row.chi << "  " << (row.consistent ? "ok" : "INCONSISTENT");
  return os.str();
}

inline int cmd_enumerate(int max_entry, std::string_view pieces, const Options& opt, std::ostream& out,
                         std::ostream& err) {
  if (max_entry < 0 || max_entry > kMaxEnumerationEntry) {
    err << "enumerate: --max-entry must lie in [0, " << kMaxEnumerationEntry << "]\n";
    return kUsage;
  }
  const std::size_t comma = pieces.find(',');
  const auto k1 = piece_kind_from_string(pieces.substr(0, comma));
  const auto k2 = comma == std::string_view::npos ? std::nullopt : piece_kind_from_string(pieces.substr(comma + 1));
  if (!k1 || !k2) {
    err << "enumerate: --pieces expects <kind>,<kind> with kinds torus_times_disk, knot_exterior_product, "
           "surface_bundle_over_torus\n";
    return kUsage;
  }
  const Piece w = default_piece(*k1), w_prime = default_piece(*k2);
  std::size_t rows = 0, bad = 0;
  enumerate_gluings(w, w_prime, max_entry, [&](const EnumerationRow& row) {
    ++rows;
    if (!row.consistent) ++bad;
    if (opt.quiet) return;
    if (opt.format == Format::Json)
      out << row_to_json(row).dump() << "\n";
    else
      out << row_to_text(row) << "\n";
  });
  if (opt.format == Format::Json)
    out << Json{{"rows", rows}, {"inconsistent", bad}}.dump() << "\n";
  else
    out << "rows: " << rows << "; inconsistent: " << bad << "\n";
  return bad == 0 ? kOk : kInconsistent;
}

// ---------------------------------------------------------------------------
// check-obstruction

inline int cmd_check_obstruction(std::string_view chi_text, std::string_view sigma_text, const Options& opt,
                                 std::ostream& out, std::ostream& err) {
  const auto chi = parse_integer(chi_text);
  if (!chi) {
    err << "check-obstruction: --chi must be an integer\n";
    return kUsage;
  }
  std::optional<Integer> sigma;
  if (sigma_text != "unknown") {
    sigma = parse_integer(sigma_text);
    if (!sigma) {
      err << "check-obstruction: --sigma must be an integer or 'unknown'\n";
      return kUsage;
    }
  }
  const ObstructionReport r = obstruction_check(*chi, sigma);
  if (opt.format == Format::Json) {
    Json j{{"chi", integer_to_json(r.chi)}};
    j["sigma"] = r.sigma ? integer_to_json(*r.sigma) : Json("unknown");
    j["passes"] = r.passes;
    out << j.dump() << "\n";
  } else {
    out << "chi = " << r.chi << "; sigma = " << (r.sigma ? r.sigma->str() : "unknown") << "; "
        << (r.passes ? "PASSES" : "FAILS");
    if (r.sigma_unknown()) out << " (sigma unknown)";
    out << "\n";
    if (!opt.quiet)
      out << "  vanishing chi and sigma are necessary for a torus-fibered T^2-knot, not sufficient\n";
  }
  return kOk;
}

}  // namespace torusfib::cli
