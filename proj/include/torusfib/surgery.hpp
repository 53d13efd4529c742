#pragma once

/**
 * Torus surgery along S^1 x (unknot) in S^1 x S^3 and its lens-space
 * classification, generalized Fintushel-Stern knot surgery as a gluing, and
 * the chi/sigma obstruction to torus-fibered T^2-knots.
 */

#include <optional>
#include <string>
#include <utility>

#include "torusfib/errors.hpp"
#include "torusfib/gluing.hpp"
#include "torusfib/invariants.hpp"
#include "torusfib/lattice.hpp"
#include "torusfib/pieces.hpp"
#include "torusfib/torus3.hpp"

namespace torusfib {

/**
 * L(q,p), normalized: L(0,1) is S^1 x S^2, L(1,0) is S^3, and 0 <= p < q
 * with gcd(p,q) = 1 when q >= 2.
 */
struct LensSpace {
  Integer q;
  Integer p;

  std::string to_string() const { return "L(" + q.str() + "," + p.str() + ")"; }

  friend bool operator==(const LensSpace& a, const LensSpace& b) { return a.q == b.q && a.p == b.p; }
  friend std::ostream& operator<<(std::ostream& os, const LensSpace& l) { return os << l.to_string(); }
};

/// Throws NotCoprime when gcd(q,p) != 1 (so q = 0 requires p = +-1).
inline LensSpace lens_normalize(const Integer& q, const Integer& p) {
  if (gcd(q, p) != 1) throw NotCoprime("L(" + q.str() + "," + p.str() + ")");
  const Integer aq = abs(q);
  if (aq == 0) return {0, 1};
  if (aq == 1) return {1, 0};
  return {aq, floor_mod(p, aq)};
}

/// Unoriented classification: equal q and p' = +-p^(+-1) mod q.
inline bool lens_equivalent(const LensSpace& a, const LensSpace& b) {
  if (a.q != b.q) return false;
  if (a.q <= 1) return true;
  const Integer& q = a.q;
  const Integer inv = floor_mod(extended_gcd(a.p, q).s, q);
  for (const Integer& c : {floor_mod(a.p, q), floor_mod(-a.p, q), inv, floor_mod(-inv, q)})
    if (floor_mod(b.p, q) == c) return true;
  return false;
}

/// H_1(S^1 x L(q,p)) = Z + Z/q.
inline AbelianGroup expected_h1(const LensSpace& l) {
  if (l.q == 0) return AbelianGroup::free(2);
  if (l.q == 1) return AbelianGroup::free(1);
  return {1, {l.q}};
}

/**
 * Surgery coefficient p*lambda + q*mu together with the full gluing matrix.
 * The completion is written in the (mu, lambda, s) boundary framing of the
 * complement; its first column (q,p,0) is the image of the disk boundary and
 * its third column (0,0,1) the image of the remaining circle factor.
 */
class SurgerySpec {
 public:
  SurgerySpec(Integer p, Integer q, IntMatrix completion)
      : p_(std::move(p)), q_(std::move(q)), completion_(std::move(completion)) {
    if (gcd(p_, q_) != 1) throw NotCoprime("(p,q) = (" + p_.str() + "," + q_.str() + ")");
    if (completion_.rows() != 3 || completion_.cols() != 3 || !is_unimodular(completion_))
      throw NotUnimodular(completion_.to_string());
    if (completion_.column(0) != IntVector{q_, p_, 0})
      throw std::invalid_argument("completion must send the disk boundary to q*mu + p*lambda");
    if (completion_.column(2) != IntVector{0, 0, 1})
      throw std::invalid_argument("completion must send the third factor to s");
  }

  /**
   * The completion with second column (x,y) + seed*(q,p), where q*y - p*x = 1
   * comes from the extended gcd; `reverse` negates the second column (det -1).
   */
  static SurgerySpec standard(const Integer& p, const Integer& q, const Integer& seed = 0, bool reverse = false) {
    if (gcd(p, q) != 1) throw NotCoprime("(p,q) = (" + p.str() + "," + q.str() + ")");
    const ExtendedGcd e = extended_gcd(q, p);
    Integer x = -e.t + seed * q;
    Integer y = e.s + seed * p;
    if (reverse) {
      x = -x;
      y = -y;
    }
    return SurgerySpec(p, q, IntMatrix{{q, x, 0}, {p, y, 0}, {0, 0, 1}});
  }

  const Integer& p() const noexcept { return p_; }
  const Integer& q() const noexcept { return q_; }
  const IntMatrix& completion() const noexcept { return completion_; }

 private:
  Integer p_;
  Integer q_;
  IntMatrix completion_;
};

/// (S^1 x S^3) minus a neighborhood of S^1 x U: T^2 x D^2 with framing (mu, lambda, s); lambda bounds.
inline Piece unknot_complement_piece() { return make_torus_times_disk({"mu", "lambda", "s"}, 2); }

/// The neighborhood T^2 x D^2 being reglued, framed (dD2, t1, t2).
inline Piece torus_neighborhood_piece() { return make_torus_times_disk({"dD2", "t1", "t2"}, 1); }

/**
 * Reads the lens space off a gluing of two copies of T^2 x D^2. The fiber of
 * the fibration from find_fibration is a union of two solid tori with
 * meridians lambda and beta = f(lambda'); writing beta = a*lambda + b*mu in a
 * basis (lambda, mu) of the fiber lattice gives L(|b|, a mod b).
 */
inline LensSpace classify_lens_space(const GluedManifold& x) {
  if (x.w.kind() != PieceKind::TorusTimesDisk || x.w_prime.kind() != PieceKind::TorusTimesDisk)
    throw std::invalid_argument("lens space classification needs two torus_times_disk pieces");
  const FibrationResult r = find_fibration(x);
  const auto& basis = r.phi.fiber_basis();
  const IntVector lambda = boundary_lambda(x.w).coords();
  const IntVector beta = x.f.apply(boundary_lambda(x.w_prime).coords());
  const auto [lx, ly] = coordinates_in(basis, lambda);
  const auto [bx, by] = coordinates_in(basis, beta);
  // mu = (-t, s) in fiber coordinates, where lx*s + ly*t = 1
  const ExtendedGcd e = extended_gcd(lx, ly);
  const Integer a = e.s * bx + e.t * by;
  const Integer b = lx * by - ly * bx;
  return lens_normalize(b, a);
}

struct UnknotSurgery {
  GluedManifold manifold;
  LensSpace lens;
};

/// Torus surgery on S^1 x U in S^1 x S^3 with the given gluing; the result is S^1 x lens.
inline UnknotSurgery unknot_torus_surgery(const SurgerySpec& spec) {
  GluedManifold x = glue(unknot_complement_piece(), torus_neighborhood_piece(), spec.completion());
  LensSpace lens = classify_lens_space(x);
  return {std::move(x), std::move(lens)};
}

struct KnotSurgery {
  GluedManifold manifold;
  FibrationResult fibration;
};

/**
 * Generalized Fintushel-Stern knot surgery along a torus-fibered T^2-knot:
 * the complement (a surface bundle over T^2) is glued to S^1 x E_Y(K) by f,
 * which must send the knot longitude to the meridian {pt} x dD^2 of the knot
 * torus, given by `meridian` in the complement's framing.
 */
inline KnotSurgery generalized_fs_surgery(const Piece& ambient_complement, const CurveClass& meridian,
                                          const Piece& knot_piece, const GluingMap& f) {
  if (ambient_complement.kind() != PieceKind::SurfaceBundleOverTorus)
    throw InvalidPiece("knot surgery needs a surface_bundle_over_torus complement");
  if (knot_piece.kind() != PieceKind::KnotExteriorProduct && knot_piece.kind() != PieceKind::TorusTimesDisk)
    throw InvalidPiece("knot surgery needs a knot_exterior_product knot piece");
  const CurveClass image = CurveClass::from(f.apply(boundary_lambda(knot_piece).coords()));
  if (!(image == meridian))
    throw MeridianConditionViolated("f(lambda) = " + image.to_string() + ", meridian = " + meridian.to_string());
  GluedManifold x = glue(ambient_complement, knot_piece, f);
  FibrationResult r = find_fibration(x);
  return {std::move(x), std::move(r)};
}

/// Both vanish whenever X contains a torus-fibered T^2-knot. Necessary, not sufficient.
struct ObstructionReport {
  Integer chi;
  std::optional<Integer> sigma;  // nullopt: unknown
  bool passes = false;

  bool sigma_unknown() const noexcept { return !sigma.has_value(); }
};

inline ObstructionReport obstruction_check(const Integer& chi, const std::optional<Integer>& sigma) {
  return {chi, sigma, chi == 0 && sigma.has_value() && *sigma == 0};
}

/// Glued pieces fiber over S^1 and so have sigma = 0; chi comes from inclusion-exclusion.
inline ObstructionReport obstruction_for(const GluedManifold& x) {
  return obstruction_check(euler_characteristic_glued(x), Integer(0));
}

}  // namespace torusfib
