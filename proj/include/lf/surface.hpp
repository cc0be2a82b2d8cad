#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lf/linalg.hpp"
#include "lf/matrix.hpp"

namespace lf {

/// Coordinates in H1 of the genus-g fiber, basis order a1,b1,...,ag,bg.
using HomologyClass = std::vector<Int>;

/// v != 0 and gcd of coordinates = 1.
inline bool is_primitive(const HomologyClass& v) {
  Int g = 0;
  for (const Int& x : v) {
    Int a = abs(x);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
  }
  return g == 1;
}

/// Standard symplectic pairing <x, y> with <a_i, b_i> = +1; antisymmetric.
inline Int pairing(const HomologyClass& x, const HomologyClass& y, int g) {
  if (static_cast<int>(x.size()) != 2 * g || static_cast<int>(y.size()) != 2 * g)
    throw error(errc::dimension_mismatch, "pairing requires vectors of length 2g");
  Int acc = 0;
  for (int i = 0; i < g; ++i) acc += x[2 * i] * y[2 * i + 1] - x[2 * i + 1] * y[2 * i];
  return acc;
}

enum class CurveKind { non_separating, separating };

/// A vanishing cycle, identified by its homological data only: a primitive
/// class for a non-separating curve, or the genus of one side for a
/// separating curve (whose class is zero).
class Curve {
 public:
  static Curve non_separating(HomologyClass cls) {
    Curve c;
    c.kind_ = CurveKind::non_separating;
    c.class_ = std::move(cls);
    return c;
  }

  static Curve separating(int side_genus) {
    Curve c;
    c.kind_ = CurveKind::separating;
    c.side_genus_ = side_genus;
    return c;
  }

  CurveKind kind() const { return kind_; }
  bool separating() const { return kind_ == CurveKind::separating; }
  const HomologyClass& cls() const { return class_; }
  int side_genus() const { return side_genus_; }

  bool operator==(const Curve&) const = default;

 private:
  Curve() = default;
  CurveKind kind_ = CurveKind::non_separating;
  HomologyClass class_;
  int side_genus_ = 0;
};

/// Throws InvalidCurve unless c is a legal vanishing cycle on a genus-g fiber.
inline void validate_curve(const Curve& c, int g, const std::string& label = "") {
  const std::string tag = label.empty() ? std::string() : " '" + label + "'";
  if (c.kind() == CurveKind::non_separating) {
    if (static_cast<int>(c.cls().size()) != 2 * g)
      throw error(errc::invalid_curve, "curve" + tag + ": class must have 2g coordinates");
    if (!is_primitive(c.cls()))
      throw error(errc::invalid_curve, "curve" + tag + ": class must be nonzero and primitive");
  } else {
    if (g < 2)
      throw error(errc::invalid_curve, "curve" + tag + ": separating curves require genus >= 2");
    if (c.side_genus() < 1 || c.side_genus() > g - 1)
      throw error(errc::invalid_curve,
                  "curve" + tag + ": side genus must lie in [1, g-1]");
  }
}

/// Integer symplectic matrix with its genus; the symplectic condition is an
/// invariant checked on construction.
class SymplecticMatrix {
 public:
  SymplecticMatrix(int g, IntegerMatrix m) : g_(g), m_(std::move(m)) {
    if (m_.rows() != 2 * g_ || m_.cols() != 2 * g_)
      throw error(errc::dimension_mismatch, "symplectic matrix must be 2g x 2g");
    if (!is_symplectic(m_, g_))
      throw error(errc::invalid_input, "matrix does not preserve the intersection form");
  }

  static SymplecticMatrix identity(int g) {
    return SymplecticMatrix(trusted_tag{}, g, IntegerMatrix::identity(2 * g));
  }

  /// Wraps a matrix known to be symplectic (e.g. a product of symplectic
  /// factors) without re-checking.
  static SymplecticMatrix trusted(int g, IntegerMatrix m) {
    return SymplecticMatrix(trusted_tag{}, g, std::move(m));
  }

  int genus() const { return g_; }
  const IntegerMatrix& matrix() const { return m_; }
  bool is_identity() const { return m_.is_identity(); }

  SymplecticMatrix operator*(const SymplecticMatrix& o) const {
    if (g_ != o.g_) throw error(errc::dimension_mismatch, "genus mismatch in product");
    return SymplecticMatrix(trusted_tag{}, g_, m_ * o.m_);
  }

  SymplecticMatrix inverse() const {
    return SymplecticMatrix(trusted_tag{}, g_, symplectic_inverse(m_, g_));
  }

  bool operator==(const SymplecticMatrix&) const = default;

 private:
  struct trusted_tag {};
  SymplecticMatrix(trusted_tag, int g, IntegerMatrix m) : g_(g), m_(std::move(m)) {}

  int g_;
  IntegerMatrix m_;
};

/// Homology action of the right-handed Dehn twist about c:
/// x -> x + <x, v> v for a non-separating curve of class v (matrix I - v v^T J),
/// the identity for a separating curve.
inline SymplecticMatrix transvection(const Curve& c, int g) {
  validate_curve(c, g);
  if (c.separating()) return SymplecticMatrix::identity(g);
  const HomologyClass& v = c.cls();
  const int n = 2 * g;
  IntegerMatrix j = standard_symplectic_form(g);
  IntegerMatrix t = IntegerMatrix::identity(n);
  // t = I - v v^T J, computed column-wise: (v^T J)_k = sum_i v_i J_{ik}
  for (int k = 0; k < n; ++k) {
    Int coef = 0;
    for (int i = 0; i < n; ++i)
      if (j(i, k) != 0) coef += v[i] * j(i, k);
    if (coef == 0) continue;
    for (int r = 0; r < n; ++r) t(r, k) -= v[r] * coef;
  }
  return SymplecticMatrix::trusted(g, std::move(t));
}

}  // namespace lf
