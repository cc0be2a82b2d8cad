#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lf/invariants.hpp"

namespace lf {

/// Invariants a check may consume. Fields are optional so the suite works on
/// partial data (catalog entries without words, caller-supplied sigma over
/// positive-genus bases, synthetic inputs); a check missing a required field
/// reports itself inapplicable instead of guessing.
struct ReportView {
  int g = 0;
  int h = 0;
  std::optional<std::int64_t> l, n, s, e, b1, b2, b_plus, b_minus, sigma, c1_squared;
  std::optional<Rat> hodge;
};

inline ReportView view_of(const InvariantReport& rep) {
  ReportView v;
  v.g = rep.fiber_genus;
  v.h = rep.base_genus;
  v.l = rep.fiber_counts.l;
  v.n = rep.fiber_counts.n;
  v.s = rep.fiber_counts.s;
  v.e = rep.e;
  v.b1 = rep.b1;
  v.b2 = rep.b2;
  v.b_plus = rep.b_plus;
  v.b_minus = rep.b_minus;
  v.sigma = rep.sigma;
  v.c1_squared = rep.c1_squared;
  v.hodge = rep.hodge;
  return v;
}

struct CheckResult {
  std::string check_id;
  std::string citation;
  bool applicable = false;
  std::string reason;          // populated when inapplicable
  std::optional<bool> holds;   // present iff applicable
  std::optional<Rat> lhs, rhs; // primary comparison (first clause, or first failing one)
  std::string relation;
  bool informational = false;
  std::string note;
};

namespace detail {

struct Clause {
  std::string desc;
  Rat lhs, rhs;
  std::string rel;
  bool ok;
};

inline Clause geq(std::string desc, Rat lhs, Rat rhs) {
  bool ok = lhs >= rhs;
  return {std::move(desc), std::move(lhs), std::move(rhs), ">=", ok};
}
inline Clause leq(std::string desc, Rat lhs, Rat rhs) {
  bool ok = lhs <= rhs;
  return {std::move(desc), std::move(lhs), std::move(rhs), "<=", ok};
}
inline Clause eq(std::string desc, Rat lhs, Rat rhs) {
  bool ok = lhs == rhs;
  return {std::move(desc), std::move(lhs), std::move(rhs), "==", ok};
}
inline Clause neq(std::string desc, Rat lhs, Rat rhs) {
  bool ok = lhs != rhs;
  return {std::move(desc), std::move(lhs), std::move(rhs), "!=", ok};
}
inline Clause mod4(std::string desc, std::int64_t sigma, std::int64_t l) {
  bool ok = ((sigma + l) % 4) == 0;
  return {std::move(desc), Rat(Int(sigma)), Rat(Int(-l)), "== (mod 4)", ok};
}
inline Clause boolean(std::string desc, bool ok) {
  return {std::move(desc), Rat(ok ? 1 : 0), Rat(1), "<->", ok};
}

inline CheckResult not_applicable(std::string id, std::string citation, std::string reason,
                                  bool informational = false) {
  CheckResult r;
  r.check_id = std::move(id);
  r.citation = std::move(citation);
  r.applicable = false;
  r.reason = std::move(reason);
  r.informational = informational;
  return r;
}

inline CheckResult from_clauses(std::string id, std::string citation, std::vector<Clause> clauses,
                                bool informational = false) {
  CheckResult r;
  r.check_id = std::move(id);
  r.citation = std::move(citation);
  r.applicable = true;
  r.informational = informational;
  bool all_ok = true;
  std::string note;
  const Clause* primary = &clauses.front();
  for (const Clause& c : clauses) {
    if (!c.ok && all_ok) {
      all_ok = false;
      primary = &c;
    }
    if (!note.empty()) note += "; ";
    note += c.desc + ": " + rat_to_string(c.lhs) + " " + c.rel + " " + rat_to_string(c.rhs) +
            (c.ok ? "" : " VIOLATED");
  }
  r.holds = all_ok;
  r.lhs = primary->lhs;
  r.rhs = primary->rhs;
  r.relation = primary->rel;
  r.note = std::move(note);
  return r;
}

inline Rat rat(std::int64_t num, std::int64_t den = 1) {
  Rat r{Int(num), Int(den)};
  r.canonicalize();
  return r;
}

}  // namespace detail

namespace checks {

using detail::from_clauses;
using detail::not_applicable;
using detail::rat;

inline CheckResult thm1(const ReportView& v, const GroundTruthFlags& f) {
  const char* cit = "symplectic Parshin-Arakelov inequality";
  if (!f.rational_or_ruled) return not_applicable("thm1", cit, "hypothesis unknown");
  if (*f.rational_or_ruled) return not_applicable("thm1", cit, "manifold is rational or ruled");
  if (!v.c1_squared) return not_applicable("thm1", cit, "c1^2 unavailable");
  return from_clauses("thm1", cit,
                      {detail::geq("c1^2 >= 2(g-1)(h-1)", rat(*v.c1_squared),
                                   rat(std::int64_t{2} * (v.g - 1) * (v.h - 1)))});
}

inline CheckResult stipsicz_lb(const ReportView& v, const GroundTruthFlags&) {
  const char* cit = "self-fiber-sum lower bound c1^2 >= 4 - 4g";
  if (!v.c1_squared) return not_applicable("stipsicz_lb", cit, "c1^2 unavailable");
  return from_clauses("stipsicz_lb", cit,
                      {detail::geq("c1^2 >= 4 - 4g", rat(*v.c1_squared), rat(4 - 4 * std::int64_t{v.g}))});
}

inline CheckResult l24_p1(const ReportView& v, const GroundTruthFlags&) {
  const char* cit = "non-separating cycles span ker(H1(F) -> H1(M))";
  if (v.h != 0) return not_applicable("l24_p1", cit, "stated over the sphere");
  if (!v.n || !v.b1) return not_applicable("l24_p1", cit, "n or b1 unavailable");
  return from_clauses(
      "l24_p1", cit,
      {detail::geq("n >= 2g - b1", rat(*v.n), rat(2 * std::int64_t{v.g} - *v.b1)),
       detail::boolean("n = 0 iff b1 = 2g", (*v.n == 0) == (*v.b1 == 2 * std::int64_t{v.g}))});
}

inline CheckResult l24_p2(const ReportView& v, const GroundTruthFlags&) {
  const char* cit = "Betti bounds s+1 <= b- <= l+1 and 1 <= b+ <= n+1";
  if (v.h != 0) return not_applicable("l24_p2", cit, "stated over the sphere");
  if (!v.l || !v.n || !v.s || !v.b_plus || !v.b_minus)
    return not_applicable("l24_p2", cit, "counts or b+/b- unavailable");
  return from_clauses("l24_p2", cit,
                      {detail::geq("b- >= s + 1", rat(*v.b_minus), rat(*v.s + 1)),
                       detail::leq("b- <= l + 1", rat(*v.b_minus), rat(*v.l + 1)),
                       detail::geq("b+ >= 1", rat(*v.b_plus), rat(1)),
                       detail::leq("b+ <= n + 1", rat(*v.b_plus), rat(*v.n + 1))});
}

inline CheckResult l24_p3(const ReportView& v, const GroundTruthFlags&) {
  const char* cit = "signature parity sigma = 4k - l; all-reducible forces sigma = -l";
  if (v.h != 0) return not_applicable("l24_p3", cit, "stated over the sphere");
  if (!v.sigma || !v.l || !v.s) return not_applicable("l24_p3", cit, "sigma or counts unavailable");
  std::vector<detail::Clause> cl{detail::mod4("sigma == -l (mod 4)", *v.sigma, *v.l)};
  if (*v.s == *v.l)
    cl.push_back(detail::eq("all fibers reducible: sigma == -l", rat(*v.sigma), rat(-*v.l)));
  return from_clauses("l24_p3", cit, std::move(cl));
}

inline CheckResult l25(const ReportView& v, const GroundTruthFlags&) {
  const char* cit = "upper bounds on b1, b2, b+, sigma when sigma >= -l + 4";
  if (v.h != 0) return not_applicable("l25", cit, "stated over the sphere");
  if (!v.sigma || !v.l) return not_applicable("l25", cit, "sigma or l unavailable");
  if (*v.sigma < -*v.l + 4) return not_applicable("l25", cit, "sigma < -l + 4");
  std::vector<detail::Clause> cl;
  if (v.b1) cl.push_back(detail::leq("b1 <= 2g - 2", rat(*v.b1), rat(2 * std::int64_t{v.g} - 2)));
  if (v.b2) cl.push_back(detail::leq("b2 <= l - 2", rat(*v.b2), rat(*v.l - 2)));
  if (v.b_plus && v.n) cl.push_back(detail::leq("b+ <= n - 3", rat(*v.b_plus), rat(*v.n - 3)));
  if (v.n && v.s)
    cl.push_back(detail::leq("sigma <= n - s - 4", rat(*v.sigma), rat(*v.n - *v.s - 4)));
  if (cl.empty()) return not_applicable("l25", cit, "no bounded field available");
  return from_clauses("l25", cit, std::move(cl));
}

inline CheckResult p41(const ReportView& v, const GroundTruthFlags&) {
  const char* cit = "no fibration over the sphere attains sigma = -l (g >= 2)";
  if (v.h != 0) return not_applicable("p41", cit, "stated over the sphere");
  if (v.g < 2) return not_applicable("p41", cit, "stated for g >= 2");
  if (!v.sigma || !v.l) return not_applicable("p41", cit, "sigma or l unavailable");
  return from_clauses("p41", cit, {detail::neq("sigma != -l", rat(*v.sigma), rat(-*v.l))});
}

inline CheckResult c43(const ReportView& v, const GroundTruthFlags&) {
  const char* cit = "every fibration over the sphere has an irreducible singular fiber";
  if (v.h != 0) return not_applicable("c43", cit, "stated over the sphere");
  if (!v.n) return not_applicable("c43", cit, "n unavailable");
  return from_clauses("c43", cit, {detail::geq("n >= 1", rat(*v.n), rat(1))});
}

inline CheckResult l42_p44(const ReportView& v, const GroundTruthFlags& f) {
  const char* cit = "fibrations on ruled manifolds need g >= 2h - 1, sharpened to g >= 2h";
  if (v.h != 0) return not_applicable("l42_p44", cit, "stated over the sphere");
  if (!f.rational_or_ruled) return not_applicable("l42_p44", cit, "hypothesis unknown");
  if (!*f.rational_or_ruled) return not_applicable("l42_p44", cit, "manifold is not rational or ruled");
  if (!f.ruled_base_genus) return not_applicable("l42_p44", cit, "ruled base genus unknown");
  const std::int64_t hr = *f.ruled_base_genus;
  return from_clauses("l42_p44", cit,
                      {detail::geq("g >= 2h - 1", rat(v.g), rat(2 * hr - 1)),
                       detail::geq("g >= 2h", rat(v.g), rat(2 * hr))});
}

inline CheckResult c45(const ReportView& v, const GroundTruthFlags& f) {
  const char* cit = "blowups of sphere bundles carry at least 2g singular and g irreducible fibers";
  if (v.h != 0) return not_applicable("c45", cit, "stated over the sphere");
  if (!f.blowup_of_sphere_bundle) return not_applicable("c45", cit, "hypothesis unknown");
  if (!*f.blowup_of_sphere_bundle)
    return not_applicable("c45", cit, "not a blowup of a sphere bundle");
  if (!v.l || !v.n) return not_applicable("c45", cit, "l or n unavailable");
  return from_clauses("c45", cit,
                      {detail::geq("l >= 2g", rat(*v.l), rat(2 * std::int64_t{v.g})),
                       detail::geq("n >= g", rat(*v.n), rat(v.g))});
}

inline CheckResult c46(const ReportView& v, const GroundTruthFlags& f) {
  const char* cit = "non-rational/ruled total spaces satisfy 5n >= 6g + 6 + s";
  if (v.h != 0) return not_applicable("c46", cit, "stated over the sphere");
  if (!f.rational_or_ruled) return not_applicable("c46", cit, "hypothesis unknown");
  if (*f.rational_or_ruled) return not_applicable("c46", cit, "manifold is rational or ruled");
  if (!v.n || !v.s) return not_applicable("c46", cit, "n or s unavailable");
  return from_clauses(
      "c46", cit,
      {detail::geq("n >= (6g + 6 + s)/5", rat(*v.n), rat(6 * std::int64_t{v.g} + 6 + *v.s, 5))});
}

inline CheckResult thm2(const ReportView& v, const GroundTruthFlags&) {
  const char* cit = "number of irreducible singular fibers is at least g";
  if (v.h != 0) return not_applicable("thm2", cit, "stated over the sphere");
  if (v.g < 2) return not_applicable("thm2", cit, "stated for g >= 2");
  if (!v.n) return not_applicable("thm2", cit, "n unavailable");
  return from_clauses("thm2", cit, {detail::geq("n >= g", rat(*v.n), rat(v.g))});
}

inline CheckResult p47(const ReportView& v, const GroundTruthFlags&) {
  const char* cit = "at least four irreducible fibers, six once g >= 3";
  if (v.h != 0) return not_applicable("p47", cit, "stated over the sphere");
  if (!v.n) return not_applicable("p47", cit, "n unavailable");
  std::vector<detail::Clause> cl{detail::geq("n >= 4", rat(*v.n), rat(4))};
  if (v.g >= 3) cl.push_back(detail::geq("n >= 6 for g >= 3", rat(*v.n), rat(6)));
  return from_clauses("p47", cit, std::move(cl));
}

inline CheckResult p49(const ReportView& v, const GroundTruthFlags&) {
  const char* cit = "number of singular fibers is at least (6g + 6)/5";
  if (v.h != 0) return not_applicable("p49", cit, "stated over the sphere");
  if (!v.l) return not_applicable("p49", cit, "l unavailable");
  return from_clauses(
      "p49", cit, {detail::geq("l >= (6g + 6)/5", rat(*v.l), rat(6 * std::int64_t{v.g} + 6, 5))});
}

inline CheckResult l48(const ReportView& v, const GroundTruthFlags&) {
  const char* cit = "sigma = -l + 4 forces g <= 2, and for g = 1 the rational elliptic surface";
  if (v.h != 0) return not_applicable("l48", cit, "stated over the sphere");
  if (!v.sigma || !v.l) return not_applicable("l48", cit, "sigma or l unavailable");
  if (*v.sigma != -*v.l + 4) return not_applicable("l48", cit, "sigma != -l + 4");
  std::vector<detail::Clause> cl{detail::leq("g <= 2", rat(v.g), rat(2))};
  if (v.g == 1) {
    cl.push_back(detail::eq("g = 1 forces sigma = -8", rat(*v.sigma), rat(-8)));
    cl.push_back(detail::eq("g = 1 forces l = 12", rat(*v.l), rat(12)));
  }
  return from_clauses("l48", cit, std::move(cl));
}

inline CheckResult c410(const ReportView& v, const GroundTruthFlags&) {
  const char* cit = "Hodge pairing >= l/12 + (g-1)/3 >= (3g-2)/6";
  if (v.h != 0) return not_applicable("c410", cit, "stated over the sphere");
  if (!v.l || !v.sigma) return not_applicable("c410", cit, "l or sigma unavailable");
  Rat pairing = hodge_pairing(*v.l, *v.sigma);
  Rat mid = rat(*v.l, 12) + rat(v.g - 1, 3);
  return from_clauses("c410", cit,
                      {detail::geq("(l + sigma)/4 >= l/12 + (g-1)/3", pairing, mid),
                       detail::geq("l/12 + (g-1)/3 >= (3g-2)/6", mid, rat(3 * std::int64_t{v.g} - 2, 6))});
}

inline CheckResult base_pairing(const ReportView& v, const GroundTruthFlags&) {
  const char* cit = "Hodge pairing over a genus-h base >= -(h-1)(g-1)/2 + l/12";
  if (v.h < 1) return not_applicable("base_pairing", cit, "stated for positive-genus bases");
  if (!v.l || !v.sigma)
    return not_applicable("base_pairing", cit, "l or sigma unavailable (sigma must be supplied)");
  Rat pairing = hodge_pairing(*v.l, *v.sigma);
  Rat bound = rat(-std::int64_t{v.h - 1} * (v.g - 1), 2) + rat(*v.l, 12);
  return from_clauses("base_pairing", cit,
                      {detail::geq("(l + sigma)/4 >= -(h-1)(g-1)/2 + l/12", pairing, bound)});
}

inline CheckResult info_stipsicz_l(const ReportView& v, const GroundTruthFlags&) {
  const char* cit = "sharper estimate l >= 8g/5 (informational)";
  if (v.h != 0) return not_applicable("info_stipsicz_l", cit, "stated over the sphere", true);
  if (!v.l) return not_applicable("info_stipsicz_l", cit, "l unavailable", true);
  return from_clauses("info_stipsicz_l", cit,
                      {detail::geq("l >= 8g/5", rat(*v.l), rat(8 * std::int64_t{v.g}, 5))}, true);
}

inline CheckResult info_gompf(const ReportView& v, const GroundTruthFlags&) {
  const char* cit = "l >= 4g - 4 under the nonnegative-Euler-number conjecture (informational)";
  if (v.h != 0) return not_applicable("info_gompf", cit, "stated over the sphere", true);
  if (!v.l) return not_applicable("info_gompf", cit, "l unavailable", true);
  return from_clauses("info_gompf", cit,
                      {detail::geq("l >= 4g - 4", rat(*v.l), rat(4 * std::int64_t{v.g} - 4))}, true);
}

}  // namespace checks

inline const std::vector<std::string>& check_registry_ids() {
  static const std::vector<std::string> ids = {
      "base_pairing", "c410", "c43", "c45", "c46", "info_gompf", "info_stipsicz_l", "l24_p1",
      "l24_p2", "l24_p3", "l25", "l42_p44", "l48", "p41", "p47", "p49", "stipsicz_lb", "thm1",
      "thm2"};
  return ids;
}

/// Runs the selected checks (all when selection is empty) against one view.
/// Results come back sorted by check_id; verdicts are data, never failures.
inline std::vector<CheckResult> run_checks(const ReportView& view, const GroundTruthFlags& flags,
                                           const std::vector<std::string>& selection = {}) {
  validate_flags(flags);
  using CheckFn = CheckResult (*)(const ReportView&, const GroundTruthFlags&);
  static const std::vector<std::pair<std::string, CheckFn>> table = {
      {"base_pairing", checks::base_pairing},
      {"c410", checks::c410},
      {"c43", checks::c43},
      {"c45", checks::c45},
      {"c46", checks::c46},
      {"info_gompf", checks::info_gompf},
      {"info_stipsicz_l", checks::info_stipsicz_l},
      {"l24_p1", checks::l24_p1},
      {"l24_p2", checks::l24_p2},
      {"l24_p3", checks::l24_p3},
      {"l25", checks::l25},
      {"l42_p44", checks::l42_p44},
      {"l48", checks::l48},
      {"p41", checks::p41},
      {"p47", checks::p47},
      {"p49", checks::p49},
      {"stipsicz_lb", checks::stipsicz_lb},
      {"thm1", checks::thm1},
      {"thm2", checks::thm2},
  };
  for (const std::string& id : selection) {
    bool known = false;
    for (const auto& [name, fn] : table)
      if (name == id) {
        known = true;
        break;
      }
    if (!known) throw error(errc::not_found, "unknown check id '" + id + "'");
  }
  std::vector<CheckResult> out;
  for (const auto& [name, fn] : table) {
    if (!selection.empty() &&
        std::find(selection.begin(), selection.end(), name) == selection.end())
      continue;
    out.push_back(fn(view, flags));
  }
  return out;  // table is already sorted by id
}

/// Overload taking the full report plus the (g, h) the caller believes it
/// belongs to; a mismatch is an error rather than a wrong verdict.
inline std::vector<CheckResult> run_checks(const InvariantReport& rep, int g, int h,
                                           const GroundTruthFlags& flags,
                                           const std::vector<std::string>& selection = {}) {
  if (rep.fiber_genus != g || rep.base_genus != h)
    throw error(errc::mismatched_report, "report was computed for a different (g, h)");
  return run_checks(view_of(rep), flags, selection);
}

inline bool check_failed(const CheckResult& r) {
  return r.applicable && !r.informational && r.holds && !*r.holds;
}

inline bool any_blocking_failure(const std::vector<CheckResult>& rs) {
  for (const CheckResult& r : rs)
    if (check_failed(r)) return true;
  return false;
}

/// One line per check: [PASS|FAIL|N/A] id lhs rel rhs -- citation
inline std::string render_check_line(const CheckResult& r) {
  std::string line;
  if (!r.applicable)
    line = "[N/A ] " + r.check_id + " (" + r.reason + ")";
  else
    line = std::string(*r.holds ? "[PASS] " : "[FAIL] ") + r.check_id + " " +
           rat_to_string(*r.lhs) + " " + r.relation + " " + rat_to_string(*r.rhs);
  if (r.informational) line += " [info]";
  return line + " -- " + r.citation;
}

}  // namespace lf
