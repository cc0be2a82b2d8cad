#pragma once

#include <cstdint>
#include <vector>

#include "lf/fibration.hpp"
#include "lf/linalg.hpp"

namespace lf {

namespace detail {

struct MeyerEvaluation {
  int value = 0;          // signature of the symmetrized form on V_{A,B}
  int dim = 0;            // dim V_{A,B}
  bool symmetrized = false;  // whether (G + G^T)/2 differed from the raw form
};

/// Meyer's 2-cocycle on the symplectic group, evaluated exactly:
/// V_{A,B} = ker[(A^{-1} - I) | (B - I)] in Q^{2g} + Q^{2g}, carrying the
/// bilinear form <(x1,y1),(x2,y2)> = (x1 + y1)^T J (I - B) y2; the value is
/// the signature of its symmetrization.
inline MeyerEvaluation evaluate_meyer(const SymplecticMatrix& a, const SymplecticMatrix& b) {
  if (a.genus() != b.genus())
    throw error(errc::dimension_mismatch, "cocycle arguments must share a genus");
  const int g = a.genus();
  const int n = 2 * g;

  IntegerMatrix ainv = symplectic_inverse(a.matrix(), g);
  RationalMatrix block(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      block(i, j) = Rat(ainv(i, j) - Int(i == j ? 1 : 0));
      block(i, n + j) = Rat(b.matrix()(i, j) - Int(i == j ? 1 : 0));
    }
  }
  std::vector<std::vector<Rat>> basis = rational_nullspace(block);

  MeyerEvaluation out;
  out.dim = static_cast<int>(basis.size());
  if (basis.empty()) return out;

  // c = J (I - B)
  IntegerMatrix imb = IntegerMatrix::identity(n) - b.matrix();
  IntegerMatrix c = standard_symplectic_form(g) * imb;

  const int k = out.dim;
  RationalMatrix form(k, k);
  for (int p = 0; p < k; ++p) {
    std::vector<Rat> s(n);
    for (int i = 0; i < n; ++i) s[i] = basis[p][i] + basis[p][n + i];
    for (int q = 0; q < k; ++q) {
      Rat val(0);
      for (int i = 0; i < n; ++i) {
        if (s[i] == 0) continue;
        for (int j = 0; j < n; ++j) {
          if (c(i, j) == 0) continue;
          val += s[i] * Rat(c(i, j)) * basis[q][n + j];
        }
      }
      form(p, q) = val;
    }
  }
  SignatureResult sig = symmetric_signature(form);
  out.symmetrized = sig.symmetrized;
  out.value = sig.signature.positive - sig.signature.negative;
  return out;
}

}  // namespace detail

/// Meyer cocycle value tau(a, b); |tau| <= dim V_{A,B} <= 4g.
inline int meyer_cocycle(const SymplecticMatrix& a, const SymplecticMatrix& b) {
  return detail::evaluate_meyer(a, b).value;
}

struct SignatureBreakdown {
  std::vector<int> cocycle_terms;          // one per word position j = 1..l-1
  std::int64_t separating_correction = 0;  // -s
  std::int64_t total = 0;                  // sign * sum(terms) + correction
};

namespace detail {

inline std::int64_t raw_cocycle_sum(const std::vector<SymplecticMatrix>& letters,
                                    std::vector<int>* terms_out = nullptr) {
  std::int64_t sum = 0;
  if (letters.empty()) return 0;
  SymplecticMatrix prefix = letters[0];
  for (std::size_t j = 1; j < letters.size(); ++j) {
    int t = meyer_cocycle(prefix, letters[j]);
    if (terms_out) terms_out->push_back(t);
    sum += t;
    prefix = prefix * letters[j];
  }
  return sum;
}

inline std::vector<SymplecticMatrix> torus_chain_word(int repeats) {
  Curve a = Curve::non_separating({Int(1), Int(0)});
  Curve b = Curve::non_separating({Int(0), Int(1)});
  SymplecticMatrix ta = transvection(a, 1);
  SymplecticMatrix tb = transvection(b, 1);
  std::vector<SymplecticMatrix> w;
  for (int i = 0; i < repeats; ++i) {
    w.push_back(ta);
    w.push_back(tb);
  }
  return w;
}

}  // namespace detail

/// Global sign of the cocycle aggregation, fixed once by requiring that the
/// elliptic-surface anchors come out right: sigma(E(1)) = -8 under exactly one
/// sign, which must also give sigma(E(2)) = -16. A failure here means the
/// aggregation convention itself is wrong and must be re-derived, not patched;
/// the exception says so instead of guessing.
inline int meyer_sign_convention() {
  static const int sign = [] {
    std::int64_t s1 = detail::raw_cocycle_sum(detail::torus_chain_word(6));
    std::int64_t s2 = detail::raw_cocycle_sum(detail::torus_chain_word(12));
    int plus_ok = (s1 == -8 && s2 == -16);
    int minus_ok = (-s1 == -8 && -s2 == -16);
    if (plus_ok + minus_ok != 1)
      throw error(errc::calibration_failure,
                  "no single sign reproduces sigma(E1) = -8 and sigma(E2) = -16 (raw sums " +
                      std::to_string(s1) + ", " + std::to_string(s2) +
                      "); the cocycle aggregation convention must be re-derived against the "
                      "elliptic anchors rather than adjusted ad hoc");
    return plus_ok ? 1 : -1;
  }();
  return sign;
}

/// Signature of the fibration over S^2 from its factorization:
/// sign * sum_{j=1}^{l-1} tau(P_j, T_{j+1}) - s, where P_j is the product of
/// the first j twist matrices and s the separating count. Separating twists
/// act trivially on homology, so they contribute no cocycle terms, and each
/// subtracts one from the signature (forced by the all-reducible case
/// sigma = -l).
inline SignatureBreakdown sigma_over_sphere(const Factorization& f) {
  if (f.base_genus() != 0)
    throw error(errc::wrong_base_genus, "signature computation is defined over the sphere only");
  if (verify_closure(f) != ClosureVerdict::closed)
    throw error(errc::not_closed, "signature requires a homologically closed word");

  const int g = f.fiber_genus();
  std::vector<SymplecticMatrix> letters;
  letters.reserve(f.word().size());
  std::int64_t separating = 0;
  for (std::size_t i = 0; i < f.word().size(); ++i) {
    const Curve& c = f.curve_at(i);
    if (c.separating()) ++separating;
    letters.push_back(transvection(c, g));
  }

  SignatureBreakdown out;
  std::int64_t raw = detail::raw_cocycle_sum(letters, &out.cocycle_terms);
  out.separating_correction = -separating;
  out.total = meyer_sign_convention() * raw + out.separating_correction;
  return out;
}

}  // namespace lf
