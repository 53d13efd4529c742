#pragma once

/**
 * Exact integer linear algebra over arbitrary-precision integers: vectors,
 * dense matrices, Hermite and Smith normal forms, cokernels, unimodular
 * completion and saturation of sublattices.
 *
 * Everything here is a pure function of its inputs.
 */

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "torusfib/errors.hpp"

namespace torusfib {

using Integer = boost::multiprecision::cpp_int;

inline Integer abs(const Integer& x) { return x < 0 ? Integer(-x) : x; }

inline int sign(const Integer& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

/// Division rounding toward negative infinity.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// Remainder in [0, |b|).
inline Integer floor_mod(const Integer& a, const Integer& b) {
  Integer r = a % b;
  if (r < 0) r += abs(b);
  return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer x = abs(a), y = abs(b);
  while (y != 0) {
    Integer r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

struct ExtendedGcd {
  Integer g;  // gcd, always >= 0
  Integer s;
  Integer t;  // s*a + t*b == g
};

inline ExtendedGcd extended_gcd(const Integer& a, const Integer& b) {
  Integer old_r = a, r = b;
  Integer old_s = 1, s = 0;
  Integer old_t = 0, t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = std::move(r);
    r = std::move(tmp);
    tmp = old_s - q * s;
    old_s = std::move(s);
    s = std::move(tmp);
    tmp = old_t - q * t;
    old_t = std::move(t);
    t = std::move(tmp);
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  return {old_r, old_s, old_t};
}

// ---------------------------------------------------------------------------
// IntVector

class IntVector {
 public:
  IntVector() = default;
  explicit IntVector(std::size_t n) : entries_(n) {}
  IntVector(std::initializer_list<Integer> xs) : entries_(xs) {}
  explicit IntVector(std::vector<Integer> xs) : entries_(std::move(xs)) {}

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  Integer& operator[](std::size_t i) { return entries_[i]; }
  const Integer& operator[](std::size_t i) const { return entries_[i]; }

  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }
  const std::vector<Integer>& entries() const noexcept { return entries_; }

  bool is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Integer& x) { return x == 0; });
  }

  friend bool operator==(const IntVector& a, const IntVector& b) { return a.entries_ == b.entries_; }

  /// Lexicographic order on entries.
  friend bool operator<(const IntVector& a, const IntVector& b) {
    return std::lexicographical_compare(a.entries_.begin(), a.entries_.end(), b.entries_.begin(),
                                        b.entries_.end());
  }

  friend IntVector operator-(IntVector v) {
    for (auto& x : v.entries_) x = -x;
    return v;
  }

  friend IntVector operator+(const IntVector& a, const IntVector& b) {
    check_same_size(a, b);
    IntVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
  }

  friend IntVector operator-(const IntVector& a, const IntVector& b) { return a + (-b); }

  friend IntVector operator*(const Integer& k, IntVector v) {
    for (auto& x : v.entries_) x *= k;
    return v;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < entries_.size(); ++i) os << (i ? "," : "") << entries_[i];
    os << ')';
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const IntVector& v) { return os << v.to_string(); }

  static void check_same_size(const IntVector& a, const IntVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
  }

 private:
  std::vector<Integer> entries_;
};

inline IntVector standard_basis_vector(std::size_t n, std::size_t i) {
  IntVector v(n);
  v[i] = 1;
  return v;
}

inline Integer dot(const IntVector& a, const IntVector& b) {
  IntVector::check_same_size(a, b);
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline IntVector cross(const IntVector& a, const IntVector& b) {
  if (a.size() != 3 || b.size() != 3) throw std::invalid_argument("cross product needs length 3");
  return IntVector{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

/// gcd of the entries; 0 exactly for the zero vector.
inline Integer content(const IntVector& v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

inline bool is_primitive(const IntVector& v) { return content(v) == 1; }

/// Flips the sign so that the first nonzero entry is positive.
inline IntVector sign_normalized(IntVector v) {
  for (const auto& x : v) {
    if (x == 0) continue;
    if (x < 0) v = -v;
    break;
  }
  return v;
}

// ---------------------------------------------------------------------------
// IntMatrix

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

  /// Row-major construction; throws if `entries.size() != rows * cols`.
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) throw std::invalid_argument("matrix entry count mismatch");
  }

  IntMatrix(std::initializer_list<std::initializer_list<Integer>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    entries_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw std::invalid_argument("ragged matrix rows");
      entries_.insert(entries_.end(), r.begin(), r.end());
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix from_rows(const std::vector<IntVector>& rows) {
    if (rows.empty()) return {};
    IntMatrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw std::invalid_argument("ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static IntMatrix from_columns(const std::vector<IntVector>& cols) {
    return from_rows(cols).transpose();
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  const std::vector<Integer>& entries() const noexcept { return entries_; }

  IntVector row(std::size_t i) const {
    IntVector r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
    return r;
  }

  IntVector column(std::size_t j) const {
    IntVector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Integer& x) { return x == 0; });
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Integer& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend IntVector operator*(const IntMatrix& a, const IntVector& v) {
    if (a.cols_ != v.size()) throw std::invalid_argument("matrix-vector shape mismatch");
    IntVector r(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) r[i] += a(i, j) * v[j];
    return r;
  }

  friend IntMatrix operator-(IntMatrix m) {
    for (auto& x : m.entries_) x = -x;
    return m;
  }

  // Elementary operations, used by the normal-form routines.
  void swap_rows(std::size_t i, std::size_t k) {
    if (i == k) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(i, j), (*this)(k, j));
  }
  void swap_cols(std::size_t j, std::size_t k) {
    if (j == k) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, j), (*this)(i, k));
  }
  /// row_i += k * row_src
  void add_row_multiple(std::size_t i, std::size_t src, const Integer& k) {
    if (k == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) += k * (*this)(src, j);
  }
  /// col_j += k * col_src
  void add_col_multiple(std::size_t j, std::size_t src, const Integer& k) {
    if (k == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) += k * (*this)(i, src);
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
  }
  /// (row_i, row_k) <- (a row_i + b row_k, c row_i + d row_k)
  void combine_rows(std::size_t i, std::size_t k, const Integer& a, const Integer& b,
                    const Integer& c, const Integer& d) {
    for (std::size_t j = 0; j < cols_; ++j) {
      Integer x = (*this)(i, j), y = (*this)(k, j);
      (*this)(i, j) = a * x + b * y;
      (*this)(k, j) = c * x + d * y;
    }
  }
  /// (col_j, col_k) <- (a col_j + b col_k, c col_j + d col_k)
  void combine_cols(std::size_t j, std::size_t k, const Integer& a, const Integer& b,
                    const Integer& c, const Integer& d) {
    for (std::size_t i = 0; i < rows_; ++i) {
      Integer x = (*this)(i, j), y = (*this)(i, k);
      (*this)(i, j) = a * x + b * y;
      (*this)(i, k) = c * x + d * y;
    }
  }

  std::string to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
      os << (i ? "," : "") << '[';
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j);
      os << ']';
    }
    os << ']';
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m) { return os << m.to_string(); }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> entries_;
};

/// Fraction-free (Bareiss) elimination.
inline Integer determinant(const IntMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  int sgn = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t i = k + 1;
      while (i < n && m(i, k) == 0) ++i;
      if (i == n) return 0;
      m.swap_rows(i, k);
      sgn = -sgn;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sgn * m(n - 1, n - 1);
}

inline bool is_unimodular(const IntMatrix& m) { return m.is_square() && abs(determinant(m)) == 1; }

// ---------------------------------------------------------------------------
// Hermite normal form

struct HermiteDecomposition {
  IntMatrix h;  // row-reduced echelon form, positive pivots, reduced above pivots
  IntMatrix u;  // unimodular, u * source == h
};

/**
 * Row-style Hermite normal form. Pivots are positive, entries above a pivot
 * lie in [0, pivot), and zero rows collect at the bottom. The result depends
 * only on the row lattice of the input.
 */
inline HermiteDecomposition hermite_normal_form(const IntMatrix& a) {
  IntMatrix h = a;
  IntMatrix u = IntMatrix::identity(a.rows());
  std::size_t row = 0;
  for (std::size_t col = 0; col < h.cols() && row < h.rows(); ++col) {
    for (std::size_t i = row + 1; i < h.rows(); ++i) {
      if (h(i, col) == 0) continue;
      const Integer x = h(row, col), y = h(i, col);
      const ExtendedGcd e = extended_gcd(x, y);
      const Integer c = -y / e.g, d = x / e.g;
      h.combine_rows(row, i, e.s, e.t, c, d);
      u.combine_rows(row, i, e.s, e.t, c, d);
    }
    if (h(row, col) == 0) continue;
    if (h(row, col) < 0) {
      h.negate_row(row);
      u.negate_row(row);
    }
    for (std::size_t i = 0; i < row; ++i) {
      const Integer q = floor_div(h(i, col), h(row, col));
      h.add_row_multiple(i, row, -q);
      u.add_row_multiple(i, row, -q);
    }
    ++row;
  }
  return {std::move(h), std::move(u)};
}

/// Inverse of a unimodular matrix; throws NotUnimodular otherwise.
inline IntMatrix inverse_unimodular(const IntMatrix& m) {
  if (!is_unimodular(m)) throw NotUnimodular(m.to_string());
  return hermite_normal_form(m).u;
}

/// Nonzero rows of the Hermite form: the canonical basis of a row lattice.
inline std::vector<IntVector> canonical_lattice_basis(const std::vector<IntVector>& rows) {
  if (rows.empty()) return {};
  const IntMatrix h = hermite_normal_form(IntMatrix::from_rows(rows)).h;
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    IntVector r = h.row(i);
    if (r.is_zero()) break;
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Smith normal form

struct SNFDecomposition {
  IntMatrix u;  // unimodular, rows x rows
  IntMatrix d;  // diagonal, d(i,i) >= 0, d(i,i) | d(i+1,i+1)
  IntMatrix v;  // unimodular, cols x cols; u * a * v == d

  std::size_t rank() const {
    std::size_t r = 0;
    const std::size_t k = std::min(d.rows(), d.cols());
    while (r < k && d(r, r) != 0) ++r;
    return r;
  }

  std::vector<Integer> diagonal() const {
    std::vector<Integer> out;
    for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) out.push_back(d(i, i));
    return out;
  }
};

/**
 * Smith normal form by elementary row and column operations.
 *
 * At each stage the nonzero entry of least absolute value in the trailing
 * submatrix becomes the pivot (first in row-major order on ties). Row and
 * column t are cleared by division; a nonzero remainder restarts the stage
 * with a strictly smaller pivot. When the pivot fails to divide some
 * trailing entry, that entry's row is added to row t and the stage repeats.
 */
inline SNFDecomposition smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  IntMatrix d = a;
  IntMatrix u = IntMatrix::identity(m);
  IntMatrix v = IntMatrix::identity(n);

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    bool exhausted = false;
    for (;;) {
      std::optional<std::pair<std::size_t, std::size_t>> best;
      Integer best_abs = 0;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (d(i, j) == 0) continue;
          Integer x = abs(d(i, j));
          if (!best || x < best_abs) {
            best = {i, j};
            best_abs = std::move(x);
          }
        }
      if (!best) {
        exhausted = true;
        break;
      }
      d.swap_rows(t, best->first);
      u.swap_rows(t, best->first);
      d.swap_cols(t, best->second);
      v.swap_cols(t, best->second);

      bool remainder = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        const Integer q = d(i, t) / d(t, t);
        d.add_row_multiple(i, t, -q);
        u.add_row_multiple(i, t, -q);
        if (d(i, t) != 0) remainder = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        const Integer q = d(t, j) / d(t, t);
        d.add_col_multiple(j, t, -q);
        v.add_col_multiple(j, t, -q);
        if (d(t, j) != 0) remainder = true;
      }
      if (remainder) continue;

      std::optional<std::size_t> offending_row;
      for (std::size_t i = t + 1; i < m && !offending_row; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (d(i, j) % d(t, t) != 0) {
            offending_row = i;
            break;
          }
      if (!offending_row) break;
      d.add_row_multiple(t, *offending_row, 1);
      u.add_row_multiple(t, *offending_row, 1);
    }
    if (exhausted) break;
    if (d(t, t) < 0) {
      d.negate_row(t);
      u.negate_row(t);
    }
  }
  return {std::move(u), std::move(d), std::move(v)};
}

// ---------------------------------------------------------------------------
// Finitely generated abelian groups

/// Z^free_rank + Z/t_1 + ... + Z/t_k in invariant-factor form.
class AbelianGroup {
 public:
  AbelianGroup() = default;

  /// Throws std::invalid_argument unless torsion is a divisibility chain of entries >= 2.
  AbelianGroup(std::size_t free_rank, std::vector<Integer> torsion)
      : free_rank_(free_rank), torsion_(std::move(torsion)) {
    for (std::size_t i = 0; i < torsion_.size(); ++i) {
      if (torsion_[i] < 2) throw std::invalid_argument("torsion invariant factor below 2");
      if (i > 0 && torsion_[i] % torsion_[i - 1] != 0)
        throw std::invalid_argument("torsion factors do not form a divisibility chain");
    }
  }

  static AbelianGroup free(std::size_t rank) { return {rank, {}}; }

  std::size_t free_rank() const noexcept { return free_rank_; }
  const std::vector<Integer>& torsion() const noexcept { return torsion_; }

  /// Number of generators in the standard presentation (free first, then torsion).
  std::size_t generator_count() const noexcept { return free_rank_ + torsion_.size(); }

  bool is_trivial() const noexcept { return free_rank_ == 0 && torsion_.empty(); }

  friend bool operator==(const AbelianGroup& a, const AbelianGroup& b) {
    return a.free_rank_ == b.free_rank_ && a.torsion_ == b.torsion_;
  }

  /// "Z + Z/3", "Z^2", "0".
  std::string to_string() const {
    std::vector<std::string> parts;
    if (free_rank_ == 1) parts.emplace_back("Z");
    if (free_rank_ > 1) parts.push_back("Z^" + std::to_string(free_rank_));
    for (const auto& t : torsion_) parts.push_back("Z/" + t.str());
    if (parts.empty()) return "0";
    std::string s = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) s += " + " + parts[i];
    return s;
  }

  friend std::ostream& operator<<(std::ostream& os, const AbelianGroup& g) { return os << g.to_string(); }

 private:
  std::size_t free_rank_ = 0;
  std::vector<Integer> torsion_;
};

/// Z^rows / image(a), read off the Smith form.
inline AbelianGroup cokernel(const IntMatrix& a) {
  const SNFDecomposition snf = smith_normal_form(a);
  const std::size_t r = snf.rank();
  std::vector<Integer> torsion;
  for (std::size_t i = 0; i < r; ++i)
    if (snf.d(i, i) != 1) torsion.push_back(snf.d(i, i));
  return {a.rows() - r, std::move(torsion)};
}

// ---------------------------------------------------------------------------
// Sublattices

/**
 * Unimodular matrix whose first column is `v`.
 *
 * The first entry is combined with entries 2, 3, ... in turn by extended gcd
 * steps of determinant one; the accumulated inverse is returned, so the
 * determinant is +1 whenever the length is at least two.
 */
inline IntMatrix complete_to_unimodular(const IntVector& v) {
  if (v.empty() || !is_primitive(v)) throw NonPrimitive(v.to_string());
  const std::size_t n = v.size();
  IntVector w = v;
  IntMatrix m = IntMatrix::identity(n);
  for (std::size_t j = 1; j < n; ++j) {
    const Integer a = w[0], b = w[j];
    if (b == 0) continue;
    const ExtendedGcd e = extended_gcd(a, b);
    const Integer a1 = a / e.g, b1 = b / e.g;
    // step [[s, t], [-b1, a1]] sends (a, b) to (g, 0); m absorbs its inverse [[a1, -t], [b1, s]]
    w[0] = e.g;
    w[j] = 0;
    m.combine_cols(0, j, a1, b1, -e.t, e.s);
  }
  if (w[0] < 0) {
    // only reachable when v = -e_1
    for (std::size_t i = 0; i < n; ++i) m(i, 0) = -m(i, 0);
    if (n > 1)
      for (std::size_t i = 0; i < n; ++i) m(i, 1) = -m(i, 1);
  }
  return m;
}

/**
 * Canonical (Hermite) basis of the smallest saturated sublattice containing
 * the span of `vectors`.
 */
inline std::vector<IntVector> saturate(const std::vector<IntVector>& vectors) {
  if (vectors.empty()) return {};
  const IntMatrix a = IntMatrix::from_columns(vectors);
  const SNFDecomposition snf = smith_normal_form(a);
  const std::size_t r = snf.rank();
  if (r == 0) return {};
  // span = u^-1 (d Z^r + 0), so its saturation is u^-1 (Z^r + 0)
  const IntMatrix u_inv = hermite_normal_form(snf.u).u;
  std::vector<IntVector> basis;
  for (std::size_t j = 0; j < r; ++j) basis.push_back(u_inv.column(j));
  return canonical_lattice_basis(basis);
}

/// Canonical basis of the integer kernel {x : a x = 0}.
inline std::vector<IntVector> kernel_basis(const IntMatrix& a) {
  const SNFDecomposition snf = smith_normal_form(a);
  std::vector<IntVector> basis;
  for (std::size_t j = snf.rank(); j < a.cols(); ++j) basis.push_back(snf.v.column(j));
  return canonical_lattice_basis(basis);
}

}  // namespace torusfib
