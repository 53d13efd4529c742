#pragma once

/**
 * 4-manifold pieces with 3-torus boundary: S^1 times a fibered knot exterior,
 * a genus-g surface-with-boundary bundle over T^2, and T^2 x D^2 (the product
 * of S^1 with the unknot exterior).
 *
 * A piece records a framing of H_1 of its boundary, which framing vector is
 * the fiber boundary lambda, and optionally declared H_1 data: the group
 * H_1(W) in invariant-factor form with the boundary inclusion written in its
 * standard generators (free generators first, then torsion generators).
 * Monodromies are stored as opaque labels and never interpreted.
 */

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "torusfib/errors.hpp"
#include "torusfib/lattice.hpp"
#include "torusfib/torus3.hpp"

namespace torusfib {

enum class PieceKind { KnotExteriorProduct, SurfaceBundleOverTorus, TorusTimesDisk };

inline std::string_view to_string(PieceKind k) {
  switch (k) {
    case PieceKind::KnotExteriorProduct:
      return "knot_exterior_product";
    case PieceKind::SurfaceBundleOverTorus:
      return "surface_bundle_over_torus";
    case PieceKind::TorusTimesDisk:
      return "torus_times_disk";
  }
  return "unknown";
}

inline std::optional<PieceKind> piece_kind_from_string(std::string_view s) {
  for (PieceKind k : {PieceKind::KnotExteriorProduct, PieceKind::SurfaceBundleOverTorus, PieceKind::TorusTimesDisk})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

/// H_1(W) together with the map H_1(boundary) = Z^3 -> H_1(W).
struct H1Data {
  AbelianGroup group;
  IntMatrix inclusion;  // group.generator_count() x 3
};

using Framing = std::array<std::string, 3>;

class Piece {
 public:
  /**
   * Validates the piece invariants and throws InvalidPiece on violation:
   * lambda_index in {1,2,3}; inclusion has 3 columns and one row per group
   * generator; a TorusTimesDisk has genus 0, H_1 = Z^2 and an inclusion that
   * kills exactly the lambda framing vector while mapping the remaining two
   * onto Z^2.
   */
  Piece(PieceKind kind, unsigned genus, std::string monodromy_label, Framing framing, int lambda_index,
        std::optional<H1Data> h1)
      : kind_(kind),
        genus_(genus),
        monodromy_label_(std::move(monodromy_label)),
        framing_(std::move(framing)),
        lambda_index_(lambda_index),
        h1_(std::move(h1)) {
    validate();
  }

  PieceKind kind() const noexcept { return kind_; }
  unsigned genus() const noexcept { return genus_; }
  const std::string& monodromy_label() const noexcept { return monodromy_label_; }
  const Framing& framing() const noexcept { return framing_; }
  /// 1-based, as in the framing (e1, e2, e3).
  int lambda_index() const noexcept { return lambda_index_; }
  const std::optional<H1Data>& h1() const noexcept { return h1_; }
  bool has_h1() const noexcept { return h1_.has_value(); }

  friend bool operator==(const Piece& a, const Piece& b) {
    if (a.kind_ != b.kind_ || a.genus_ != b.genus_ || a.monodromy_label_ != b.monodromy_label_ ||
        a.framing_ != b.framing_ || a.lambda_index_ != b.lambda_index_ || a.h1_.has_value() != b.h1_.has_value())
      return false;
    return !a.h1_ || (a.h1_->group == b.h1_->group && a.h1_->inclusion == b.h1_->inclusion);
  }

 private:
  void validate() const {
    if (lambda_index_ < 1 || lambda_index_ > 3) throw InvalidPiece("lambda_index must be 1, 2 or 3");
    if (h1_) {
      if (h1_->inclusion.cols() != 3) throw InvalidPiece("inclusion must have 3 columns");
      if (h1_->inclusion.rows() != h1_->group.generator_count())
        throw InvalidPiece("inclusion must have one row per H1 generator");
    }
    if (kind_ != PieceKind::TorusTimesDisk) return;
    if (genus_ != 0) throw InvalidPiece("torus_times_disk has genus 0");
    if (!h1_) throw InvalidPiece("torus_times_disk carries canonical H1 data");
    if (!(h1_->group == AbelianGroup::free(2))) throw InvalidPiece("torus_times_disk has H1 = Z^2");
    const std::size_t l = static_cast<std::size_t>(lambda_index_ - 1);
    if (!h1_->inclusion.column(l).is_zero()) throw InvalidPiece("torus_times_disk inclusion must kill lambda");
    std::vector<IntVector> rest;
    for (std::size_t j = 0; j < 3; ++j)
      if (j != l) rest.push_back(h1_->inclusion.column(j));
    if (!is_unimodular(IntMatrix::from_columns(rest)))
      throw InvalidPiece("torus_times_disk inclusion must map the non-lambda framing vectors onto Z^2");
  }

  PieceKind kind_;
  unsigned genus_;
  std::string monodromy_label_;
  Framing framing_;
  int lambda_index_;
  std::optional<H1Data> h1_;
};

/// Inclusion for pieces where H_1(W) = Z^2 is generated by the two non-lambda framing vectors, in order.
inline IntMatrix lambda_killing_inclusion(int lambda_index) {
  IntMatrix m(2, 3);
  std::size_t row = 0;
  for (std::size_t j = 0; j < 3; ++j)
    if (static_cast<int>(j) + 1 != lambda_index) m(row++, j) = 1;
  return m;
}

/// T^2 x D^2 = S^1 x E(unknot) with framing (s, mu, lambda), lambda bounding the disk.
inline Piece make_torus_times_disk() {
  return Piece(PieceKind::TorusTimesDisk, 0, "", {"s", "mu", "lambda"}, 3,
               H1Data{AbelianGroup::free(2), lambda_killing_inclusion(3)});
}

/// T^2 x D^2 with a custom framing; `lambda_index` names the curve bounding the disk.
inline Piece make_torus_times_disk(Framing framing, int lambda_index) {
  if (lambda_index < 1 || lambda_index > 3) throw InvalidPiece("lambda_index must be 1, 2 or 3");
  return Piece(PieceKind::TorusTimesDisk, 0, "", std::move(framing), lambda_index,
               H1Data{AbelianGroup::free(2), lambda_killing_inclusion(lambda_index)});
}

/**
 * S^1 x E(K) for a fibered knot K in S^3 of fiber genus `genus`. The
 * longitude bounds the fiber surface, so H_1 = Z^2 is generated by the circle
 * factor s and the meridian mu. Framing (s, mu, lambda).
 */
inline Piece make_knot_in_s3_product(unsigned genus, std::string monodromy_label) {
  return Piece(PieceKind::KnotExteriorProduct, genus, std::move(monodromy_label), {"s", "mu", "lambda"}, 3,
               H1Data{AbelianGroup::free(2), lambda_killing_inclusion(3)});
}

/**
 * The product bundle Sigma_{g,1} x T^2. H_1 = Z^{2g+2}; generators are the
 * two base circles t1, t2 followed by the 2g fiber classes. The fiber
 * boundary is a product of commutators and dies in H_1. Framing (t1, t2, dSigma).
 */
inline Piece make_product_surface_bundle(unsigned genus) {
  IntMatrix inclusion(2 * genus + 2, 3);
  inclusion(0, 0) = 1;
  inclusion(1, 1) = 1;
  return Piece(PieceKind::SurfaceBundleOverTorus, genus, "identity", {"t1", "t2", "dSigma"}, 3,
               H1Data{AbelianGroup::free(2 * genus + 2), std::move(inclusion)});
}

/// lambda as a boundary class: the framing vector at lambda_index.
inline CurveClass boundary_lambda(const Piece& p) {
  return basis_curve(static_cast<std::size_t>(p.lambda_index() - 1));
}

/// chi(S^1 x E) = 0 and chi(Sigma_{g,1}) chi(T^2) = 0, so every piece kind has chi = 0.
inline Integer euler_characteristic(const Piece& p) {
  switch (p.kind()) {
    case PieceKind::KnotExteriorProduct:
    case PieceKind::TorusTimesDisk:
      return 0;  // chi(S^1) * chi(E)
    case PieceKind::SurfaceBundleOverTorus:
      return (2 - 2 * Integer(p.genus()) - 1) * 0;  // chi(Sigma_{g,1}) * chi(T^2)
  }
  return 0;
}

/// A framing (gamma, lambda, alpha) of H_1 of the boundary adapted to an extended fibration.
struct ExtensionCertificate {
  CurveClass gamma;
  CurveClass lambda;
  CurveClass alpha;  // the fibration direction

  const CurveClass& fibration_direction() const noexcept { return alpha; }

  /// The defining conditions: unimodular triple, phi(gamma) = phi(lambda) = 0, phi(alpha) = +-1.
  bool verifies(const FibrationOfT3& phi) const {
    const IntMatrix m = IntMatrix::from_columns({gamma.coords(), lambda.coords(), alpha.coords()});
    return is_unimodular(m) && phi(gamma.coords()) == 0 && phi(lambda.coords()) == 0 &&
           abs(phi(alpha.coords())) == 1;
  }
};

/// A boundary fibration extends over either piece class exactly when its fiber carries lambda.
inline bool can_extend(const Piece& p, const FibrationOfT3& phi) { return phi(boundary_lambda(p).coords()) == 0; }

/**
 * The basis used to parameterize the boundary as S^1_gamma x S^1_lambda x
 * S^1_alpha: gamma completes lambda to a basis of ker(phi) and alpha is dual
 * to the fiber torus. Throws ExtensionObstructed when phi(lambda) != 0.
 */
inline ExtensionCertificate extension_certificate(const Piece& p, const FibrationOfT3& phi) {
  const CurveClass lambda = boundary_lambda(p);
  if (!can_extend(p, phi))
    throw ExtensionObstructed("phi" + phi.phi().to_string() + " does not vanish on lambda" + lambda.to_string());
  const auto& basis = phi.fiber_basis();
  const auto [x, y] = coordinates_in(basis, lambda.coords());
  const ExtendedGcd e = extended_gcd(x, y);
  // x*s + y*t = 1, so (x, y) and (-t, s) form a basis of the fiber lattice
  const IntVector gamma = (-e.t) * basis[0] + e.s * basis[1];
  ExtensionCertificate cert{CurveClass::from(gamma), lambda, CurveClass::from(dual_curve(phi))};
  if (!cert.verifies(phi)) throw Error("internal: extension certificate failed verification");
  return cert;
}

}  // namespace torusfib
