#pragma once

#include <algorithm>
#include <cstdlib>
#include <vector>

#include "lf/matrix.hpp"

namespace lf {

/// u * m * v = d with u, v unimodular and d diagonal, d1 | d2 | ... >= 0.
struct SmithDecomposition {
  IntegerMatrix d;
  IntegerMatrix u;
  IntegerMatrix v;
};

namespace detail {

// Locate the entry of smallest nonzero absolute value in the trailing block
// starting at (t, t). Returns false when the block is zero.
inline bool locate_min_pivot(const IntegerMatrix& d, int t, int& pi, int& pj) {
  bool found = false;
  Int best;
  for (int i = t; i < d.rows(); ++i) {
    for (int j = t; j < d.cols(); ++j) {
      if (d(i, j) == 0) continue;
      Int a = abs(d(i, j));
      if (!found || a < best) {
        best = a;
        pi = i;
        pj = j;
        found = true;
      }
    }
  }
  return found;
}

inline bool row_col_clear(const IntegerMatrix& d, int t) {
  for (int i = t + 1; i < d.rows(); ++i)
    if (d(i, t) != 0) return false;
  for (int j = t + 1; j < d.cols(); ++j)
    if (d(t, j) != 0) return false;
  return true;
}

}  // namespace detail

/// Smith normal form over the integers. Pivot selection by minimal absolute
/// value, Euclidean row/column reduction, then a divisibility sweep so the
/// diagonal satisfies d1 | d2 | ... The transforms u, v are accumulated from
/// elementary operations, hence unimodular by construction.
inline SmithDecomposition smith_normal_form(const IntegerMatrix& m) {
  SmithDecomposition out{m, IntegerMatrix::identity(m.rows()), IntegerMatrix::identity(m.cols())};
  IntegerMatrix& d = out.d;
  IntegerMatrix& u = out.u;
  IntegerMatrix& v = out.v;
  const int steps = std::min(m.rows(), m.cols());

  for (int t = 0; t < steps; ++t) {
    for (;;) {
      int pi = t, pj = t;
      if (!detail::locate_min_pivot(d, t, pi, pj)) {
        // trailing block is zero; nothing left to do anywhere
        t = steps;
        break;
      }
      d.swap_rows(t, pi);
      u.swap_rows(t, pi);
      d.swap_cols(t, pj);
      v.swap_cols(t, pj);

      for (int i = t + 1; i < d.rows(); ++i) {
        if (d(i, t) != 0) {
          Int q = d(i, t) / d(t, t);  // truncated; remainder < |pivot|
          if (q != 0) {
            d.add_row(i, t, -q);
            u.add_row(i, t, -q);
          }
        }
      }
      for (int j = t + 1; j < d.cols(); ++j) {
        if (d(t, j) != 0) {
          Int q = d(t, j) / d(t, t);
          if (q != 0) {
            d.add_col(j, t, -q);
            v.add_col(j, t, -q);
          }
        }
      }
      if (!detail::row_col_clear(d, t)) continue;  // nonzero remainders: shrink pivot again

      // divisibility: every entry of the trailing block must be divisible by d(t,t)
      bool divides_all = true;
      for (int i = t + 1; i < d.rows() && divides_all; ++i)
        for (int j = t + 1; j < d.cols(); ++j)
          if (d(i, j) % d(t, t) != 0) {
            d.add_row(t, i, 1);
            u.add_row(t, i, 1);
            divides_all = false;
            break;
          }
      if (divides_all) break;
    }
    if (t >= steps) break;
  }

  for (int t = 0; t < steps; ++t) {
    if (d(t, t) < 0) {
      d.scale_row(t, -1);
      u.scale_row(t, -1);
    }
  }
  return out;
}

/// Diagonal of the Smith form, length min(rows, cols).
inline std::vector<Int> smith_diagonal(const IntegerMatrix& m) {
  SmithDecomposition s = smith_normal_form(m);
  std::vector<Int> diag;
  const int n = std::min(m.rows(), m.cols());
  diag.reserve(n);
  for (int i = 0; i < n; ++i) diag.push_back(s.d(i, i));
  return diag;
}

/// Rank over the rationals = number of nonzero Smith diagonal entries.
inline int rank(const IntegerMatrix& m) {
  int r = 0;
  for (const Int& x : smith_diagonal(m))
    if (x != 0) ++r;
  return r;
}

/// Basis of { x : m x = 0 } over the rationals; size = cols - rank.
inline std::vector<std::vector<Rat>> rational_nullspace(const RationalMatrix& m) {
  RationalMatrix a = m;
  const int nr = a.rows(), nc = a.cols();
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < nc && r < nr; ++c) {
    int pr = -1;
    for (int i = r; i < nr; ++i)
      if (a(i, c) != 0) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    a.swap_rows(r, pr);
    Rat inv = 1 / a(r, c);
    a.scale_row(r, inv);
    for (int i = 0; i < nr; ++i) {
      if (i == r || a(i, c) == 0) continue;
      Rat f = -a(i, c);
      a.add_row(i, r, f);
    }
    pivot_col.push_back(c);
    ++r;
  }

  std::vector<bool> is_pivot(nc, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<Rat>> basis;
  for (int fc = 0; fc < nc; ++fc) {
    if (is_pivot[fc]) continue;
    std::vector<Rat> vec(nc, Rat(0));
    vec[fc] = 1;
    for (int i = 0; i < static_cast<int>(pivot_col.size()); ++i) vec[pivot_col[i]] = -a(i, fc);
    basis.push_back(std::move(vec));
  }
  return basis;
}

struct FormSignature {
  int positive = 0;
  int negative = 0;
  int null = 0;

  bool operator==(const FormSignature&) const = default;
};

struct SignatureResult {
  FormSignature signature;
  bool symmetrized = false;  // true when (q + q^T)/2 differed from q
};

/// Signature of a symmetric rational form by congruence diagonalization.
/// A non-symmetric input is replaced by (q + q^T)/2 unless allow_symmetrize
/// is false, in which case NotSymmetric is raised. Zero diagonal pivots are
/// repaired by swapping in a nonzero diagonal entry when one exists, else by
/// the row+column addition trick (safe there because both diagonals vanish).
inline SignatureResult symmetric_signature(const RationalMatrix& q, bool allow_symmetrize = true) {
  if (!q.is_square()) throw error(errc::non_square, "signature requires a square matrix");
  const int n = q.rows();
  RationalMatrix a(n, n);
  bool changed = false;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (q(i, j) != q(j, i)) changed = true;
      a(i, j) = (q(i, j) + q(j, i)) / 2;
    }
  if (changed && !allow_symmetrize)
    throw error(errc::not_symmetric, "signature requested on a non-symmetric matrix");

  SignatureResult out;
  out.symmetrized = changed;
  for (int i = 0; i < n; ++i) {
    if (a(i, i) == 0) {
      int swap_j = -1, add_j = -1;
      for (int j = i + 1; j < n; ++j) {
        if (a(j, j) != 0 && a(i, j) != 0 && swap_j < 0) swap_j = j;
        if (a(i, j) != 0 && add_j < 0) add_j = j;
      }
      if (swap_j < 0 && add_j >= 0 && a(add_j, add_j) != 0) swap_j = add_j;
      if (swap_j >= 0) {
        a.swap_rows(i, swap_j);
        a.swap_cols(i, swap_j);
      } else if (add_j >= 0) {
        a.add_row(i, add_j, Rat(1));
        a.add_col(i, add_j, Rat(1));
      } else {
        ++out.signature.null;
        continue;
      }
    }
    const Rat d = a(i, i);
    if (d == 0) {
      ++out.signature.null;
      continue;
    }
    if (sgn(d) > 0)
      ++out.signature.positive;
    else
      ++out.signature.negative;
    for (int r = i + 1; r < n; ++r) {
      if (a(r, i) == 0) continue;
      Rat f = -a(r, i) / d;
      a.add_row(r, i, f);
      a.add_col(r, i, f);
    }
  }
  return out;
}

/// Matrix of the standard symplectic form in the basis a1,b1,...,ag,bg with
/// <a_i, b_i> = +1: block diagonal [[0,1],[-1,0]].
inline IntegerMatrix standard_symplectic_form(int g) {
  if (g < 0) throw error(errc::dimension_mismatch, "genus must be >= 0");
  IntegerMatrix j(2 * g, 2 * g);
  for (int i = 0; i < g; ++i) {
    j(2 * i, 2 * i + 1) = 1;
    j(2 * i + 1, 2 * i) = -1;
  }
  return j;
}

/// True iff m^T J m = J for the standard form of the given genus.
inline bool is_symplectic(const IntegerMatrix& m, int g) {
  if (m.rows() != 2 * g || m.cols() != 2 * g)
    throw error(errc::dimension_mismatch, "symplectic test requires a 2g x 2g matrix");
  IntegerMatrix j = standard_symplectic_form(g);
  return m.transpose() * j * m == j;
}

/// Inverse of a symplectic integer matrix via A^{-1} = -J A^T J (exact, integral).
inline IntegerMatrix symplectic_inverse(const IntegerMatrix& m, int g) {
  IntegerMatrix j = standard_symplectic_form(g);
  IntegerMatrix mj = j * m.transpose() * j;
  for (int i = 0; i < mj.rows(); ++i)
    for (int k = 0; k < mj.cols(); ++k) mj(i, k) = -mj(i, k);
  return mj;
}

/// Exact determinant by fraction-free Bareiss elimination.
inline Int determinant(const IntegerMatrix& m) {
  if (!m.is_square()) throw error(errc::non_square, "determinant requires a square matrix");
  const int n = m.rows();
  if (n == 0) return 1;
  IntegerMatrix a = m;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (a(i, k) != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        Int num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        a(i, j) = num / prev;  // exact division (Bareiss)
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign > 0 ? a(n - 1, n - 1) : Int(-a(n - 1, n - 1));
}

}  // namespace lf
