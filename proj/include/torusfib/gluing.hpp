#pragma once

/**
 * Gluing two pieces along their 3-torus boundaries and finding a circle
 * fibration of the closed result.
 *
 * The gluing matrix m writes the boundary framing of W' in the boundary
 * framing of W: a curve c' on the boundary of W lands on m c'. Covectors move
 * the other way, phi on the W side restricts to m^T phi on the W' side.
 */

#include <utility>

#include "torusfib/errors.hpp"
#include "torusfib/lattice.hpp"
#include "torusfib/pieces.hpp"
#include "torusfib/torus3.hpp"

namespace torusfib {

class GluingMap {
 public:
  /// Throws NotUnimodular unless m is 3x3 with determinant +-1.
  explicit GluingMap(IntMatrix m) : m_(std::move(m)) {
    if (m_.rows() != 3 || m_.cols() != 3) throw NotUnimodular("gluing matrix must be 3x3");
    const Integer det = determinant(m_);
    if (abs(det) != 1) throw NotUnimodular("determinant " + det.str());
    orientation_ = sign(det);
  }

  const IntMatrix& matrix() const noexcept { return m_; }
  /// Sign of det(m). Both signs are accepted; the sign is only recorded.
  int orientation() const noexcept { return orientation_; }

  IntVector apply(const IntVector& c) const { return m_ * c; }

  /// phi on the W side, as a covector on the W' boundary.
  IntVector pull_back(const IntVector& phi) const { return m_.transpose() * phi; }

 private:
  IntMatrix m_;
  int orientation_ = 1;
};

struct GluedManifold {
  Piece w;
  Piece w_prime;
  GluingMap f;
};

/// X = W u_f W'.
inline GluedManifold glue(Piece w, Piece w_prime, GluingMap f) {
  return {std::move(w), std::move(w_prime), std::move(f)};
}

inline GluedManifold glue(Piece w, Piece w_prime, IntMatrix m) {
  return glue(std::move(w), std::move(w_prime), GluingMap(std::move(m)));
}

struct FibrationResult {
  FibrationOfT3 phi;                  // in W boundary coordinates
  TorusClass torus;                   // the fiber torus, W coordinates
  ExtensionCertificate cert_w;        // W coordinates
  ExtensionCertificate cert_w_prime;  // W' coordinates
  bool parallel_case = false;         // lambda and f(lambda') coincide; torus chosen by the lex rule
};

/**
 * A fibration of the common boundary whose fibers contain both fiber
 * boundaries. When lambda and f(lambda') differ they determine the torus;
 * when they coincide any torus through lambda works and the least covector
 * in lexicographic order is taken. The fibration then extends over both
 * sides, witnessed by the two certificates.
 */
inline FibrationResult find_fibration(const GluedManifold& x) {
  const CurveClass lambda = boundary_lambda(x.w);
  const CurveClass lambda_prime = CurveClass::from(x.f.apply(boundary_lambda(x.w_prime).coords()));
  const bool parallel = lambda == lambda_prime;
  const TorusClass torus = parallel ? canonical_torus_containing(lambda) : torus_through(lambda, lambda_prime);
  const FibrationOfT3 phi = fibration_from_torus(torus);
  const FibrationOfT3 phi_prime = FibrationOfT3::from_covector(x.f.pull_back(phi.phi()));
  return {phi, torus, extension_certificate(x.w, phi), extension_certificate(x.w_prime, phi_prime), parallel};
}

/// True when the result satisfies its contract against `x`.
inline bool verify_fibration(const GluedManifold& x, const FibrationResult& r) {
  const FibrationOfT3 phi_prime = FibrationOfT3::from_covector(x.f.pull_back(r.phi.phi()));
  const IntVector lambda = boundary_lambda(x.w).coords();
  const IntVector lambda_prime = x.f.apply(boundary_lambda(x.w_prime).coords());
  return is_primitive(r.phi.phi()) && r.phi(lambda) == 0 && r.phi(lambda_prime) == 0 &&
         r.torus == r.phi.fiber() && r.cert_w.verifies(r.phi) && r.cert_w_prime.verifies(phi_prime) &&
         r.cert_w.lambda == boundary_lambda(x.w) && r.cert_w_prime.lambda == boundary_lambda(x.w_prime);
}

}  // namespace torusfib
