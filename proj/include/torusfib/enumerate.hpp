#pragma once

/**
 * Exhaustive enumeration of gluing matrices with bounded entries.
 *
 * Matrices are taken up to framing symmetry: f ~ A f B where A and B are
 * signed permutation matrices fixing the lambda axis (up to sign) of W and W'
 * respectively. Each orbit is represented by its lexicographically least
 * member (row-major), and representatives are visited in lexicographic order.
 */

#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

#include "torusfib/gluing.hpp"
#include "torusfib/invariants.hpp"
#include "torusfib/pieces.hpp"
#include "torusfib/surgery.hpp"

namespace torusfib {

inline constexpr int kMaxEnumerationEntry = 2;

/// The pieces used when only kinds are named.
inline Piece default_piece(PieceKind kind) {
  switch (kind) {
    case PieceKind::TorusTimesDisk:
      return make_torus_times_disk();
    case PieceKind::KnotExteriorProduct:
      return make_knot_in_s3_product(1, "trefoil");
    case PieceKind::SurfaceBundleOverTorus:
      return make_product_surface_bundle(1);
  }
  throw std::invalid_argument("unknown piece kind");
}

struct EnumerationRow {
  GluingMap f;
  FibrationResult fibration;
  AbelianGroup h1;
  std::optional<LensSpace> lens;  // both pieces torus_times_disk
  Integer chi;
  bool consistent = false;
};

namespace detail {

using SmallMatrix = std::array<int, 9>;

inline SmallMatrix small_product(const SmallMatrix& a, const SmallMatrix& b) {
  SmallMatrix c{};
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) {
      const int aik = a[i * 3 + k];
      if (aik == 0) continue;
      for (int j = 0; j < 3; ++j) c[i * 3 + j] += aik * b[k * 3 + j];
    }
  return c;
}

inline int small_det(const SmallMatrix& m) {
  return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
         m[2] * (m[3] * m[7] - m[4] * m[6]);
}

/// Signed permutation matrices P with P e_lambda = +-e_lambda (16 of them).
inline std::vector<SmallMatrix> framing_symmetries(int lambda_index) {
  static constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  const int l = lambda_index - 1;
  std::vector<SmallMatrix> out;
  for (const auto& perm : perms) {
    if (perm[l] != l) continue;
    for (int signs = 0; signs < 8; ++signs) {
      SmallMatrix p{};
      for (int i = 0; i < 3; ++i) p[i * 3 + perm[i]] = (signs >> i) & 1 ? -1 : 1;
      out.push_back(p);
    }
  }
  return out;
}

inline IntMatrix to_int_matrix(const SmallMatrix& m) {
  std::vector<Integer> e(m.begin(), m.end());
  return IntMatrix(3, 3, std::move(e));
}

}  // namespace detail

/// Orbit representatives of unimodular matrices with entries in [-max_entry, max_entry].
inline std::vector<IntMatrix> canonical_gluings(int max_entry, int lambda_w, int lambda_w_prime) {
  if (max_entry < 0 || max_entry > kMaxEnumerationEntry)
    throw std::invalid_argument("max entry must lie in [0, " + std::to_string(kMaxEnumerationEntry) + "]");
  const auto left = detail::framing_symmetries(lambda_w);
  const auto right = detail::framing_symmetries(lambda_w_prime);
  const int width = 2 * max_entry + 1;
  long total = 1;
  for (int i = 0; i < 9; ++i) total *= width;

  std::vector<IntMatrix> out;
  detail::SmallMatrix m{};
  for (long code = 0; code < total; ++code) {
    long c = code;
    for (int i = 8; i >= 0; --i) {
      m[i] = static_cast<int>(c % width) - max_entry;
      c /= width;
    }
    const int det = detail::small_det(m);
    if (det != 1 && det != -1) continue;
    bool least = true;
    for (const auto& a : left) {
      const auto am = detail::small_product(a, m);
      for (const auto& b : right)
        if (detail::small_product(am, b) < m) {
          least = false;
          break;
        }
      if (!least) break;
    }
    if (least) out.push_back(detail::to_int_matrix(m));
  }
  return out;
}

inline EnumerationRow describe_gluing(const Piece& w, const Piece& w_prime, const IntMatrix& m) {
  const GluedManifold x = glue(w, w_prime, m);
  FibrationResult r = find_fibration(x);
  AbelianGroup h1 = mayer_vietoris_h1(x);
  std::optional<LensSpace> lens;
  if (w.kind() == PieceKind::TorusTimesDisk && w_prime.kind() == PieceKind::TorusTimesDisk)
    lens = classify_lens_space(x);
  const Integer chi = euler_characteristic_glued(x);
  const bool consistent = verify_fibration(x, r) && chi == 0 && (!lens || h1 == expected_h1(*lens));
  return {x.f, std::move(r), std::move(h1), std::move(lens), chi, consistent};
}

/// Calls sink(row) for each orbit representative, in order.
template <class Sink>
void enumerate_gluings(const Piece& w, const Piece& w_prime, int max_entry, Sink&& sink) {
  for (const IntMatrix& m : canonical_gluings(max_entry, w.lambda_index(), w_prime.lambda_index()))
    sink(describe_gluing(w, w_prime, m));
}

}  // namespace torusfib
