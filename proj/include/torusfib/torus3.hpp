#pragma once

/**
 * Curves, essential tori and circle fibrations of the 3-torus, all at the
 * level of H_1(T^3) = Z^3.
 *
 * An essential curve is a primitive vector up to sign; an essential torus is
 * a primitive covector n up to sign (the torus carries exactly the curves c
 * with n.c = 0). A fibration T^3 -> S^1 is a primitive covector phi whose
 * fiber is the torus ker(phi).
 */

#include <array>
#include <string>
#include <utility>

#include "torusfib/errors.hpp"
#include "torusfib/lattice.hpp"

namespace torusfib {

namespace detail {
struct CurveTag {
  static constexpr const char* name = "curve";
};
struct TorusTag {
  static constexpr const char* name = "torus";
};
}  // namespace detail

/// A sign-normalized primitive element of Z^3. `Tag` separates curves from tori.
template <class Tag>
class PrimitiveClass {
 public:
  /// Throws NonPrimitive unless `v` has length 3 and content 1.
  static PrimitiveClass from(IntVector v) {
    if (v.size() != 3) throw std::invalid_argument(std::string(Tag::name) + " class needs length 3");
    if (!is_primitive(v)) throw NonPrimitive(v.to_string());
    return PrimitiveClass(sign_normalized(std::move(v)));
  }

  const IntVector& coords() const noexcept { return v_; }

  std::string to_string() const { return v_.to_string(); }

  friend bool operator==(const PrimitiveClass& a, const PrimitiveClass& b) { return a.v_ == b.v_; }
  friend bool operator<(const PrimitiveClass& a, const PrimitiveClass& b) { return a.v_ < b.v_; }
  friend std::ostream& operator<<(std::ostream& os, const PrimitiveClass& c) { return os << c.v_; }

 private:
  explicit PrimitiveClass(IntVector v) : v_(std::move(v)) {}
  IntVector v_;
};

using CurveClass = PrimitiveClass<detail::CurveTag>;
using TorusClass = PrimitiveClass<detail::TorusTag>;

inline CurveClass basis_curve(std::size_t i) { return CurveClass::from(standard_basis_vector(3, i)); }

/**
 * For a primitive covector phi, a basis (d, k1, k2) of Z^3 with phi.d = 1 and
 * k1, k2 spanning ker(phi). These are the columns of the inverse transpose of
 * the unimodular completion of phi.
 */
inline std::array<IntVector, 3> dual_basis(const IntVector& phi) {
  if (phi.size() != 3) throw std::invalid_argument("covector needs length 3");
  const IntMatrix n = inverse_unimodular(complete_to_unimodular(phi)).transpose();
  return {n.column(0), n.column(1), n.column(2)};
}

/// Coordinates (x, y) with x*b[0] + y*b[1] == v; throws if v lies outside the lattice.
inline std::pair<Integer, Integer> coordinates_in(const std::array<IntVector, 2>& b, const IntVector& v) {
  const IntVector w = cross(b[0], b[1]);
  const IntVector wx = cross(v, b[1]);
  const IntVector wy = cross(b[0], v);
  std::size_t k = 0;
  while (k < 3 && w[k] == 0) ++k;
  if (k == 3) throw std::invalid_argument("degenerate rank-2 basis");
  std::pair<Integer, Integer> xy{wx[k] / w[k], wy[k] / w[k]};
  if (xy.first * b[0] + xy.second * b[1] != v)
    throw std::invalid_argument(v.to_string() + " is not in the lattice spanned by the basis");
  return xy;
}

/// A circle fibration of T^3, given by a primitive covector.
class FibrationOfT3 {
 public:
  /// Throws NonPrimitive unless `phi` has length 3 and content 1. The orientation of phi is kept.
  static FibrationOfT3 from_covector(IntVector phi) {
    if (phi.size() != 3) throw std::invalid_argument("covector needs length 3");
    if (!is_primitive(phi)) throw NonPrimitive(phi.to_string());
    const auto dual = dual_basis(phi);
    const auto canonical = canonical_lattice_basis({dual[1], dual[2]});
    return FibrationOfT3(std::move(phi), {canonical[0], canonical[1]});
  }

  const IntVector& phi() const noexcept { return phi_; }

  /// Hermite basis of ker(phi), the homology of a fiber.
  const std::array<IntVector, 2>& fiber_basis() const noexcept { return fiber_basis_; }

  Integer operator()(const IntVector& c) const { return dot(phi_, c); }

  TorusClass fiber() const { return TorusClass::from(phi_); }

  friend bool operator==(const FibrationOfT3& a, const FibrationOfT3& b) { return a.phi_ == b.phi_; }

 private:
  FibrationOfT3(IntVector phi, std::array<IntVector, 2> basis)
      : phi_(std::move(phi)), fiber_basis_(std::move(basis)) {}

  IntVector phi_;
  std::array<IntVector, 2> fiber_basis_;
};

inline bool contains(const TorusClass& t, const CurveClass& c) { return dot(t.coords(), c.coords()) == 0; }

/// The unique torus carrying two non-parallel curves.
inline TorusClass torus_through(const CurveClass& a, const CurveClass& b) {
  if (a == b) throw ParallelCurves(a.to_string());
  const IntVector n = cross(a.coords(), b.coords());
  const Integer c = content(n);
  IntVector reduced(3);
  for (std::size_t i = 0; i < 3; ++i) reduced[i] = n[i] / c;
  return TorusClass::from(std::move(reduced));
}

/**
 * The lexicographically least sign-normalized primitive covector n with
 * n.a = 0. Every such n has n[0] >= 0, and (0,0,1) is the least of all, so
 * the answer is (0,0,1) when a[2] == 0 and otherwise the unique solution with
 * n[0] == 0 and n[1] > 0.
 */
inline TorusClass canonical_torus_containing(const CurveClass& a) {
  const IntVector& v = a.coords();
  if (v[2] == 0) return TorusClass::from(IntVector{0, 0, 1});
  const Integer g = gcd(v[1], v[2]);
  const Integer s = sign(v[2]);
  return TorusClass::from(IntVector{0, s * v[2] / g, -s * v[1] / g});
}

/// The trivial bundle T^3 -> S^1 whose fibers are parallel copies of `t`.
inline FibrationOfT3 fibration_from_torus(const TorusClass& t) { return FibrationOfT3::from_covector(t.coords()); }

/// An oriented curve c with n.c = 1. Returned as a vector because sign normalization would lose the pairing.
inline IntVector dual_curve(const TorusClass& t) { return dual_basis(t.coords())[0]; }

/// An oriented curve c with phi(c) = 1.
inline IntVector dual_curve(const FibrationOfT3& f) { return dual_basis(f.phi())[0]; }

namespace detail {
inline void require_unimodular3(const IntMatrix& m) {
  if (m.rows() != 3 || m.cols() != 3 || !is_unimodular(m)) throw NotUnimodular(m.to_string());
}
}  // namespace detail

/// Mapping class action on curves: c -> m c.
inline CurveClass act(const IntMatrix& m, const CurveClass& c) {
  detail::require_unimodular3(m);
  return CurveClass::from(m * c.coords());
}

/// Covectors pulled back through m^-1: phi -> (m^-1)^T phi, so that (m^-T phi)(m c) = phi(c).
inline IntVector transport_covector(const IntMatrix& m, const IntVector& phi) {
  detail::require_unimodular3(m);
  return inverse_unimodular(m).transpose() * phi;
}

/// Mapping class action on tori, by inverse transpose.
inline TorusClass act(const IntMatrix& m, const TorusClass& t) {
  return TorusClass::from(transport_covector(m, t.coords()));
}

inline FibrationOfT3 act(const IntMatrix& m, const FibrationOfT3& f) {
  return FibrationOfT3::from_covector(transport_covector(m, f.phi()));
}

}  // namespace torusfib
