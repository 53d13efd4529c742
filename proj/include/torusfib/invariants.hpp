#pragma once

/**
 * Homological cross-checks for glued manifolds: H_1 by Mayer-Vietoris and
 * the Euler characteristic by inclusion-exclusion.
 */

#include "torusfib/errors.hpp"
#include "torusfib/gluing.hpp"
#include "torusfib/lattice.hpp"
#include "torusfib/pieces.hpp"

namespace torusfib {

/// Boundary map sign: c -> (i(c), sign * i'(f^-1 c)), with sign = -1 by default.
enum class ConnectingSign { Minus, Plus };

/// Presentation of H_1(W) + H_1(W') modulo the image of H_1(T^3).
struct H1Presentation {
  std::size_t generators = 0;  // generators of W, then of W'
  IntMatrix relations;         // generators x (3 + torsion relators)
};

/**
 * Columns 0..2 hold the images of the boundary basis of W; the remaining
 * columns are the declared torsion relators of W, then of W'. Throws
 * MissingH1Data when a piece has none declared.
 */
inline H1Presentation mayer_vietoris_presentation(const GluedManifold& x,
                                                  ConnectingSign sgn = ConnectingSign::Minus) {
  if (!x.w.has_h1()) throw MissingH1Data("piece W");
  if (!x.w_prime.has_h1()) throw MissingH1Data("piece W'");
  const H1Data& a = *x.w.h1();
  const H1Data& b = *x.w_prime.h1();
  const std::size_t ga = a.group.generator_count(), gb = b.group.generator_count();
  const std::size_t ta = a.group.torsion().size(), tb = b.group.torsion().size();

  const IntMatrix top = a.inclusion;
  IntMatrix bottom = b.inclusion * inverse_unimodular(x.f.matrix());
  if (sgn == ConnectingSign::Minus) bottom = -bottom;

  IntMatrix rel(ga + gb, 3 + ta + tb);
  for (std::size_t j = 0; j < 3; ++j) {
    for (std::size_t i = 0; i < ga; ++i) rel(i, j) = top(i, j);
    for (std::size_t i = 0; i < gb; ++i) rel(ga + i, j) = bottom(i, j);
  }
  const std::size_t fa = a.group.free_rank(), fb = b.group.free_rank();
  for (std::size_t k = 0; k < ta; ++k) rel(fa + k, 3 + k) = a.group.torsion()[k];
  for (std::size_t k = 0; k < tb; ++k) rel(ga + fb + k, 3 + ta + k) = b.group.torsion()[k];
  return {ga + gb, std::move(rel)};
}

/// H_1(X) as the cokernel of the Mayer-Vietoris boundary map; T^3, W and W' are connected.
inline AbelianGroup mayer_vietoris_h1(const GluedManifold& x, ConnectingSign sgn = ConnectingSign::Minus) {
  return cokernel(mayer_vietoris_presentation(x, sgn).relations);
}

/**
 * H_1 of W with a copy of T^2 x D^2 glued on so that the disk boundary lands
 * on `curve`: H_1(W) modulo the image of that curve.
 */
inline AbelianGroup h1_after_filling(const Piece& w, const IntVector& curve) {
  if (!w.has_h1()) throw MissingH1Data("piece W");
  const H1Data& a = *w.h1();
  const std::size_t g = a.group.generator_count(), t = a.group.torsion().size();
  const IntVector image = a.inclusion * curve;
  IntMatrix rel(g, t + 1);
  for (std::size_t k = 0; k < t; ++k) rel(a.group.free_rank() + k, k) = a.group.torsion()[k];
  for (std::size_t i = 0; i < g; ++i) rel(i, t) = image[i];
  return cokernel(rel);
}

/// chi(W) + chi(W') - chi(T^3).
inline Integer euler_characteristic_glued(const GluedManifold& x) {
  const Integer chi_t3 = 0;
  return euler_characteristic(x.w) + euler_characteristic(x.w_prime) - chi_t3;
}

}  // namespace torusfib
