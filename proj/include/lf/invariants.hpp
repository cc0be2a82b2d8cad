#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lf/meyer.hpp"

namespace lf {

/// e(M) = e(F) e(Sigma) + l = 4(g-1)(h-1) + l.
inline std::int64_t euler_number(int g, int h, std::int64_t l) {
  return std::int64_t{4} * (g - 1) * (h - 1) + l;
}

/// c1^2 = 2e + 3 sigma.
inline std::int64_t chern_square(std::int64_t e, std::int64_t sigma) { return 2 * e + 3 * sigma; }

/// Degree of the Hodge line bundle under the moduli map: (l + sigma)/4.
inline Rat hodge_pairing(std::int64_t l, std::int64_t sigma) {
  Rat r(Int(l + sigma), Int(4));
  r.canonicalize();
  return r;
}

struct HomologySummary {
  std::int64_t b1 = 0;
  std::vector<Int> torsion;  // elementary divisors > 1 of H1(M)
  std::int64_t b2 = 0;
  std::int64_t b_plus = 0;
  std::int64_t b_minus = 0;

  bool operator==(const HomologySummary&) const = default;
};

namespace detail {

/// b1, torsion and b2 of the total space over S^2; sigma is supplied so the
/// caller controls how it was obtained.
inline HomologySummary homology_over_sphere_with_sigma(const Factorization& f, std::int64_t sigma) {
  if (f.base_genus() != 0)
    throw error(errc::wrong_base_genus, "homology derivation is defined over the sphere only");
  if (verify_closure(f) != ClosureVerdict::closed)
    throw error(errc::not_closed, "homology derivation requires a homologically closed word");

  const int g = f.fiber_genus();
  // Distinct non-separating classes used by the word span the kernel of
  // H1(F) -> H1(M); columns of this matrix.
  std::vector<const HomologyClass*> classes;
  for (std::size_t i = 0; i < f.word().size(); ++i) {
    const Curve& c = f.curve_at(i);
    if (c.separating()) continue;
    bool seen = false;
    for (const HomologyClass* p : classes)
      if (*p == c.cls()) {
        seen = true;
        break;
      }
    if (!seen) classes.push_back(&c.cls());
  }

  HomologySummary out;
  std::int64_t span_rank = 0;
  if (!classes.empty()) {
    IntegerMatrix m(2 * g, static_cast<int>(classes.size()));
    for (int j = 0; j < static_cast<int>(classes.size()); ++j)
      for (int i = 0; i < 2 * g; ++i) m(i, j) = (*classes[j])[i];
    for (const Int& d : smith_diagonal(m)) {
      if (d != 0) ++span_rank;
      if (d > 1) out.torsion.push_back(d);
    }
  }
  out.b1 = 2 * g - span_rank;

  const std::int64_t l = static_cast<std::int64_t>(f.word().size());
  out.b2 = l + 2 - 2 * (2 * g - out.b1);
  if ((out.b2 + sigma) % 2 != 0)
    throw error(errc::parity_error,
                "b2 + sigma is odd; the signature is inconsistent with the handle counts");
  out.b_plus = (out.b2 + sigma) / 2;
  out.b_minus = (out.b2 - sigma) / 2;
  return out;
}

}  // namespace detail

inline HomologySummary homology_over_sphere(const Factorization& f) {
  return detail::homology_over_sphere_with_sigma(f, sigma_over_sphere(f).total);
}

// ---------------------------------------------------------------------------
// Kodaira dimension
// ---------------------------------------------------------------------------

enum class KodairaDim { minus_infinity, zero, one, two };

inline std::string kodaira_name(KodairaDim k) {
  switch (k) {
    case KodairaDim::minus_infinity: return "-infinity";
    case KodairaDim::zero: return "0";
    case KodairaDim::one: return "1";
    case KodairaDim::two: return "2";
  }
  return "?";
}

struct KodairaInput {
  int k_dot_omega_sign = 0;  // sign of K . omega: -1, 0, +1
  std::int64_t k_squared = 0;
  bool minimal = true;
};

/// The four-case classifier on the signs of K.omega and K^2 for a minimal
/// symplectic 4-manifold. Non-minimal inputs must be classified through a
/// minimal model by the caller; K.omega > 0 with K^2 < 0 cannot occur on a
/// minimal manifold and is flagged instead of classified.
inline KodairaDim kodaira_dimension(const KodairaInput& in) {
  if (!in.minimal)
    throw error(errc::not_minimal, "classify a minimal model of the manifold instead");
  if (in.k_dot_omega_sign < 0) return KodairaDim::minus_infinity;
  if (in.k_dot_omega_sign == 0) return KodairaDim::zero;
  if (in.k_squared == 0) return KodairaDim::one;
  if (in.k_squared > 0) return KodairaDim::two;
  throw error(errc::inconsistent_input,
              "K.omega > 0 with K^2 < 0 is impossible for a minimal symplectic manifold");
}

/// Kodaira dimension of a closed surface: sphere -infinity, torus 0, else 1.
inline KodairaDim curve_kodaira(int genus) {
  if (genus < 0) throw error(errc::invalid_input, "genus must be >= 0");
  if (genus == 0) return KodairaDim::minus_infinity;
  if (genus == 1) return KodairaDim::zero;
  return KodairaDim::one;
}

/// k(M) >= k(F) + k(Sigma) with -infinity + x = -infinity and
/// -infinity <= everything.
inline bool subadditivity_holds(KodairaDim k_total, KodairaDim k_fiber, KodairaDim k_base) {
  if (k_fiber == KodairaDim::minus_infinity || k_base == KodairaDim::minus_infinity) return true;
  if (k_total == KodairaDim::minus_infinity) return false;
  auto as_int = [](KodairaDim k) {
    switch (k) {
      case KodairaDim::zero: return 0;
      case KodairaDim::one: return 1;
      case KodairaDim::two: return 2;
      default: return -1;
    }
  };
  return as_int(k_total) >= as_int(k_fiber) + as_int(k_base);
}

struct KneserBound {
  bool unbounded = false;
  std::int64_t max_degree = 0;  // meaningful when !unbounded; 0 = no positive-degree map

  bool operator==(const KneserBound&) const = default;
};

/// Largest degree allowed by g(C) - 1 >= d (g(Sigma) - 1) for maps from a
/// genus g_dom surface onto a genus g_cod surface; torus targets admit maps of
/// every degree.
inline KneserBound kneser_max_degree(int g_dom, int g_cod) {
  if (g_cod < 1) throw error(errc::invalid_codomain, "the bound applies to targets of genus >= 1");
  if (g_dom < 0) throw error(errc::invalid_input, "genus must be >= 0");
  if (g_cod == 1) return {true, 0};
  std::int64_t d = (std::int64_t{g_dom} - 1) / (g_cod - 1);
  if (d < 0) d = 0;
  return {false, d};
}

// ---------------------------------------------------------------------------
// Full report
// ---------------------------------------------------------------------------

/// Exact invariants of one factorization. The homology/signature block is
/// present only when the word is homologically closed over S^2; counts, the
/// Euler number and the closure verdict are always reported.
struct InvariantReport {
  std::string name;
  int fiber_genus = 0;
  int base_genus = 0;
  FiberCounts fiber_counts;
  std::int64_t e = 0;
  ClosureVerdict closure = ClosureVerdict::unverified;
  std::string convention;

  std::optional<std::int64_t> b1;
  std::optional<std::vector<Int>> torsion;
  std::optional<std::int64_t> b2;
  std::optional<std::int64_t> b_plus;
  std::optional<std::int64_t> b_minus;
  std::optional<std::int64_t> sigma;
  std::optional<std::int64_t> c1_squared;
  std::optional<Rat> hodge;

  bool complete() const { return sigma.has_value(); }

  bool operator==(const InvariantReport&) const = default;
};

/// Full pipeline over S^2. Violated words still get counts, e and the verdict;
/// the signature-dependent block is filled only for closed words.
inline InvariantReport compute_report(const Factorization& f) {
  if (f.base_genus() != 0)
    throw error(errc::wrong_base_genus, "full invariant reports are defined over the sphere only");

  InvariantReport rep;
  rep.name = f.name();
  rep.fiber_genus = f.fiber_genus();
  rep.base_genus = f.base_genus();
  rep.fiber_counts = counts(f);
  rep.e = euler_number(f.fiber_genus(), f.base_genus(), rep.fiber_counts.l);
  rep.closure = verify_closure(f);
  rep.convention = composition_convention();
  if (rep.closure == ClosureVerdict::closed) {
    SignatureBreakdown sig = sigma_over_sphere(f);
    HomologySummary hom = detail::homology_over_sphere_with_sigma(f, sig.total);
    rep.b1 = hom.b1;
    rep.torsion = hom.torsion;
    rep.b2 = hom.b2;
    rep.b_plus = hom.b_plus;
    rep.b_minus = hom.b_minus;
    rep.sigma = sig.total;
    rep.c1_squared = chern_square(rep.e, sig.total);
    rep.hodge = hodge_pairing(rep.fiber_counts.l, sig.total);
  }
  return rep;
}

}  // namespace lf
