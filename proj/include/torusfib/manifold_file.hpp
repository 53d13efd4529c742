#pragma once

/**
 * JSON manifold description files (format version "1").
 *
 *   {
 *     "version": "1",
 *     "pieces": [ <piece>, <piece> ],
 *     "gluing": { "matrix": [[..],[..],[..]], "orientation": 1 },
 *     "metadata": { "<key>": "<value>", ... }
 *   }
 *
 *   <piece> = {
 *     "kind": "torus_times_disk" | "knot_exterior_product" | "surface_bundle_over_torus",
 *     "genus": 0, "monodromy": "", "framing": ["s","mu","lambda"], "lambda_index": 3,
 *     "h1": { "free_rank": 2, "torsion": [] },       (optional)
 *     "inclusion": [[1,0,0],[0,1,0]]                    (required with "h1")
 *   }
 *
 * Integers are JSON numbers, or decimal strings when they exceed 64 bits.
 * "orientation" is optional on input and must match the sign of det(matrix).
 * The serializer writes every field in the order above with two-space
 * indentation and scalar arrays on one line; its output is the canonical
 * form and reparses byte-identically.
 */

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "torusfib/errors.hpp"
#include "torusfib/gluing.hpp"
#include "torusfib/lattice.hpp"
#include "torusfib/pieces.hpp"

namespace torusfib {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kManifoldFileVersion = "1";

struct ManifoldFile {
  std::string version{kManifoldFileVersion};
  std::vector<Piece> pieces;
  IntMatrix gluing;
  std::map<std::string, std::string> metadata;

  GluedManifold manifold() const { return glue(pieces.at(0), pieces.at(1), GluingMap(gluing)); }
};

// ---------------------------------------------------------------------------
// Integer and matrix encoding, shared with machine-readable CLI output.

inline Json integer_to_json(const Integer& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return Json(static_cast<std::int64_t>(x));
  return Json(x.str());
}

inline Json vector_to_json(const IntVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(integer_to_json(x));
  return a;
}

inline Json matrix_to_json(const IntMatrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(vector_to_json(m.row(i)));
  return a;
}

inline Json group_to_json(const AbelianGroup& g) {
  Json t = Json::array();
  for (const auto& x : g.torsion()) t.push_back(integer_to_json(x));
  return Json{{"free_rank", g.free_rank()}, {"torsion", t}};
}

namespace detail {

inline Integer integer_from_json(const Json& j, const std::string& field) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(j.get<std::uint64_t>());
    return Integer(j.get<std::int64_t>());
  }
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    const bool digits = s.size() > start && s.find_first_not_of("0123456789", start) == std::string::npos;
    if (digits) return Integer(s);
  }
  throw ParseError(field, "expected an integer");
}

inline const Json& required(const Json& obj, const char* key, const std::string& path) {
  if (!obj.contains(key)) throw ParseError(path + "." + key, "missing field");
  return obj.at(key);
}

inline IntVector vector_from_json(const Json& j, const std::string& field) {
  if (!j.is_array()) throw ParseError(field, "expected an array of integers");
  IntVector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = integer_from_json(j[i], field + "[" + std::to_string(i) + "]");
  return v;
}

inline IntMatrix matrix_from_json(const Json& j, const std::string& field, std::size_t cols) {
  if (!j.is_array()) throw ParseError(field, "expected an array of rows");
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string f = field + "[" + std::to_string(i) + "]";
    rows.push_back(vector_from_json(j[i], f));
    if (rows.back().size() != cols) throw ParseError(f, "expected " + std::to_string(cols) + " entries");
  }
  if (rows.empty()) return IntMatrix(0, cols);
  return IntMatrix::from_rows(rows);
}

inline std::string string_from_json(const Json& j, const std::string& field) {
  if (!j.is_string()) throw ParseError(field, "expected a string");
  return j.get<std::string>();
}

inline std::int64_t small_int_from_json(const Json& j, const std::string& field) {
  if (!j.is_number_integer()) throw ParseError(field, "expected an integer");
  return j.get<std::int64_t>();
}

inline Piece piece_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  const std::string kind_name = string_from_json(required(j, "kind", path), path + ".kind");
  const auto kind = piece_kind_from_string(kind_name);
  if (!kind) throw ParseError(path + ".kind", "unknown piece kind '" + kind_name + "'");

  std::int64_t genus = 0;
  if (j.contains("genus")) genus = small_int_from_json(j.at("genus"), path + ".genus");
  if (genus < 0) throw ParseError(path + ".genus", "must be nonnegative");

  std::string monodromy;
  if (j.contains("monodromy")) monodromy = string_from_json(j.at("monodromy"), path + ".monodromy");

  Framing framing{"e1", "e2", "e3"};
  if (j.contains("framing")) {
    const Json& fr = j.at("framing");
    if (!fr.is_array() || fr.size() != 3) throw ParseError(path + ".framing", "expected three labels");
    for (std::size_t i = 0; i < 3; ++i)
      framing[i] = string_from_json(fr[i], path + ".framing[" + std::to_string(i) + "]");
  }

  const std::int64_t lambda_index =
      small_int_from_json(required(j, "lambda_index", path), path + ".lambda_index");
  if (lambda_index < 1 || lambda_index > 3) throw ParseError(path + ".lambda_index", "must be 1, 2 or 3");

  std::optional<H1Data> h1;
  if (j.contains("h1")) {
    const Json& g = j.at("h1");
    const std::string gp = path + ".h1";
    if (!g.is_object()) throw ParseError(gp, "expected an object");
    const std::int64_t free_rank = small_int_from_json(required(g, "free_rank", gp), gp + ".free_rank");
    if (free_rank < 0) throw ParseError(gp + ".free_rank", "must be nonnegative");
    std::vector<Integer> torsion;
    if (g.contains("torsion")) torsion = vector_from_json(g.at("torsion"), gp + ".torsion").entries();
    AbelianGroup group;
    try {
      group = AbelianGroup(static_cast<std::size_t>(free_rank), std::move(torsion));
    } catch (const std::invalid_argument& e) {
      throw ParseError(gp + ".torsion", e.what());
    }
    IntMatrix inclusion = matrix_from_json(required(j, "inclusion", path), path + ".inclusion", 3);
    if (inclusion.rows() != group.generator_count())
      throw ParseError(path + ".inclusion", "expected one row per H1 generator");
    h1 = H1Data{std::move(group), std::move(inclusion)};
  } else if (j.contains("inclusion")) {
    throw ParseError(path + ".h1", "missing field (required with inclusion)");
  }
  if (*kind == PieceKind::TorusTimesDisk && !h1)
    h1 = H1Data{AbelianGroup::free(2), lambda_killing_inclusion(static_cast<int>(lambda_index))};

  try {
    return Piece(*kind, static_cast<unsigned>(genus), std::move(monodromy), std::move(framing),
                 static_cast<int>(lambda_index), std::move(h1));
  } catch (const InvalidPiece& e) {
    throw ParseError(path, e.what());
  }
}

}  // namespace detail

inline Json piece_to_json(const Piece& p) {
  Json j;
  j["kind"] = std::string(to_string(p.kind()));
  j["genus"] = p.genus();
  j["monodromy"] = p.monodromy_label();
  j["framing"] = Json::array({p.framing()[0], p.framing()[1], p.framing()[2]});
  j["lambda_index"] = p.lambda_index();
  if (p.h1()) {
    j["h1"] = group_to_json(p.h1()->group);
    j["inclusion"] = matrix_to_json(p.h1()->inclusion);
  }
  return j;
}

inline Json manifold_file_to_json(const ManifoldFile& file) {
  Json j;
  j["version"] = file.version;
  Json pieces = Json::array();
  for (const auto& p : file.pieces) pieces.push_back(piece_to_json(p));
  j["pieces"] = pieces;
  j["gluing"] = Json{{"matrix", matrix_to_json(file.gluing)}, {"orientation", sign(determinant(file.gluing))}};
  Json meta = Json::object();
  for (const auto& [k, v] : file.metadata) meta[k] = v;
  j["metadata"] = meta;
  return j;
}

namespace detail {

/// Two-space indentation; arrays of scalars stay on one line.
inline void write_canonical(std::string& out, const Json& j, int depth) {
  const auto pad = [&out](int d) { out.append(static_cast<std::size_t>(2 * d), ' '); };
  const auto scalar = [](const Json& e) { return !e.is_structured(); };
  if (j.is_array() && std::all_of(j.begin(), j.end(), scalar)) {
    out += '[';
    for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ", " : "") + j[i].dump();
    out += ']';
  } else if (j.is_array()) {
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      pad(depth + 1);
      write_canonical(out, j[i], depth + 1);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    pad(depth);
    out += ']';
  } else if (j.is_object() && !j.empty()) {
    out += "{\n";
    std::size_t i = 0;
    for (const auto& [k, v] : j.items()) {
      pad(depth + 1);
      out += Json(k).dump() + ": ";
      write_canonical(out, v, depth + 1);
      out += ++i < j.size() ? ",\n" : "\n";
    }
    pad(depth);
    out += '}';
  } else {
    out += j.dump();
  }
}

}  // namespace detail

/// Canonical text form.
inline std::string serialize(const ManifoldFile& file) {
  std::string out;
  detail::write_canonical(out, manifold_file_to_json(file), 0);
  return out + "\n";
}

/// Throws ParseError naming the offending field.
inline ManifoldFile parse_manifold_file(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError("<document>", e.what());
  }
  if (!j.is_object()) throw ParseError("<document>", "expected a JSON object");

  ManifoldFile file;
  file.version = detail::string_from_json(detail::required(j, "version", "<document>"), "version");
  if (file.version != kManifoldFileVersion)
    throw ParseError("version", "unsupported version '" + file.version + "'");

  const Json& pieces = detail::required(j, "pieces", "<document>");
  if (!pieces.is_array() || pieces.size() != 2) throw ParseError("pieces", "expected exactly two pieces");
  for (std::size_t i = 0; i < 2; ++i)
    file.pieces.push_back(detail::piece_from_json(pieces[i], "pieces[" + std::to_string(i) + "]"));

  const Json& gluing = detail::required(j, "gluing", "<document>");
  if (!gluing.is_object()) throw ParseError("gluing", "expected an object");
  file.gluing = detail::matrix_from_json(detail::required(gluing, "matrix", "gluing"), "gluing.matrix", 3);
  if (file.gluing.rows() != 3) throw ParseError("gluing.matrix", "expected 3 rows");
  const Integer det = determinant(file.gluing);
  if (abs(det) != 1) throw ParseError("gluing.matrix", "not unimodular (det = " + det.str() + ")");
  if (gluing.contains("orientation")) {
    const std::int64_t o = detail::small_int_from_json(gluing.at("orientation"), "gluing.orientation");
    if (o != sign(det))
      throw ParseError("gluing.orientation", "does not match sign of det(matrix) = " + det.str());
  }

  if (j.contains("metadata")) {
    const Json& meta = j.at("metadata");
    if (!meta.is_object()) throw ParseError("metadata", "expected an object of strings");
    for (const auto& [k, v] : meta.items()) file.metadata[k] = detail::string_from_json(v, "metadata." + k);
  }
  return file;
}

inline ManifoldFile manifold_file_from(const GluedManifold& x, std::map<std::string, std::string> metadata = {}) {
  ManifoldFile file;
  file.pieces = {x.w, x.w_prime};
  file.gluing = x.f.matrix();
  file.metadata = std::move(metadata);
  return file;
}

}  // namespace torusfib
