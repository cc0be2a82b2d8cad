#include <catch2/catch_amalgamated.hpp>

#include "lf/checks.hpp"
#include "lf/catalog.hpp"
#include "support.hpp"

using namespace lf;

namespace {

const CheckResult& by_id(const std::vector<CheckResult>& rs, const std::string& id) {
  for (const CheckResult& r : rs)
    if (r.check_id == id) return r;
  FAIL("check id not present: " + id);
  static CheckResult dummy;
  return dummy;
}

bool passes(const std::vector<CheckResult>& rs, const std::string& id) {
  const CheckResult& r = by_id(rs, id);
  return r.applicable && r.holds && *r.holds;
}

}  // namespace

TEST_CASE("the rational elliptic surface passes its applicable checks", "[checks]") {
  InvariantReport rep = compute_report(lftest::make_elliptic(1));
  GroundTruthFlags flags;
  flags.rational_or_ruled = true;
  auto rs = run_checks(view_of(rep), flags);

  REQUIRE_FALSE(by_id(rs, "thm1").applicable);
  REQUIRE(by_id(rs, "thm1").reason == "manifold is rational or ruled");
  REQUIRE_FALSE(by_id(rs, "c46").applicable);
  REQUIRE(passes(rs, "l24_p1"));
  REQUIRE(passes(rs, "l24_p2"));
  REQUIRE(passes(rs, "l24_p3"));
  REQUIRE(passes(rs, "p49"));
  REQUIRE(passes(rs, "c410"));
  SECTION("the Hodge bound is attained with equality") {
    const CheckResult& r = by_id(rs, "c410");
    REQUIRE(*r.lhs == Rat(1));
    REQUIRE(*r.rhs == Rat(1));
  }
  SECTION("no applicable non-informational check fails") {
    REQUIRE_FALSE(any_blocking_failure(rs));
  }
}

TEST_CASE("the genus-two anchor invariants audit cleanly", "[checks]") {
  // l=8, n=6, s=2, sigma=-4, g=2, ruled over the torus, blowup of a bundle
  ReportView v = view_from_expected(catalog_lookup("MATSUMOTO_G2").expected);
  GroundTruthFlags flags = catalog_lookup("MATSUMOTO_G2").flags;
  auto rs = run_checks(v, flags);

  SECTION("c45: 8 >= 4 and 6 >= 2") {
    REQUIRE(passes(rs, "c45"));
    REQUIRE(*by_id(rs, "c45").lhs == Rat(8));
    REQUIRE(*by_id(rs, "c45").rhs == Rat(4));
  }
  SECTION("l42_p44: g = 2 >= 2h = 2") { REQUIRE(passes(rs, "l42_p44")); }
  SECTION("parity: -4 == -8 (mod 4)") { REQUIRE(passes(rs, "l24_p3")); }
  SECTION("thm2: 6 >= 2") { REQUIRE(passes(rs, "thm2")); }
  SECTION("p41: -4 != -8") { REQUIRE(passes(rs, "p41")); }
  SECTION("the extremal c1^2 = 4 - 4g passes the unconditional bound with equality") {
    const CheckResult& r = by_id(rs, "stipsicz_lb");
    REQUIRE(passes(rs, "stipsicz_lb"));
    REQUIRE(*r.lhs == *r.rhs);
  }
  REQUIRE_FALSE(any_blocking_failure(rs));
}

TEST_CASE("all-separating words are flagged as non-fibrations", "[checks]") {
  InvariantReport rep = compute_report(lftest::all_separating(3));
  auto rs = run_checks(view_of(rep), {});
  const CheckResult& p41 = by_id(rs, "p41");
  REQUIRE(p41.applicable);
  REQUIRE_FALSE(*p41.holds);
  REQUIRE(any_blocking_failure(rs));
  SECTION("but the parity identity itself holds (sigma = -l case)") {
    REQUIRE(passes(rs, "l24_p3"));
  }
}

TEST_CASE("unknown hypotheses gate applicability", "[checks]") {
  InvariantReport rep = compute_report(lftest::make_elliptic(2));
  auto rs = run_checks(view_of(rep), {});
  for (const char* id : {"thm1", "c45", "c46", "l42_p44"}) {
    const CheckResult& r = by_id(rs, id);
    REQUIRE_FALSE(r.applicable);
    REQUIRE(r.reason == "hypothesis unknown");
    REQUIRE_FALSE(r.holds.has_value());
  }
}

TEST_CASE("selection, ordering and report mismatch", "[checks]") {
  InvariantReport rep = compute_report(lftest::make_elliptic(1));
  SECTION("results are sorted by check id and stable across runs") {
    auto a = run_checks(view_of(rep), {});
    auto b = run_checks(view_of(rep), {});
    REQUIRE(a.size() == check_registry_ids().size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      REQUIRE(a[i].check_id == check_registry_ids()[i]);
      REQUIRE(a[i].check_id == b[i].check_id);
      REQUIRE(a[i].note == b[i].note);
    }
  }
  SECTION("subset selection") {
    auto rs = run_checks(view_of(rep), {}, {"p49", "c410"});
    REQUIRE(rs.size() == 2);
    REQUIRE(rs[0].check_id == "c410");
    REQUIRE(rs[1].check_id == "p49");
  }
  SECTION("unknown selection id") {
    REQUIRE_THROWS_MATCHES(run_checks(view_of(rep), {}, {"nope"}), error,
                           Catch::Matchers::Predicate<error>(
                               [](const error& e) { return e.kind() == errc::not_found; }));
  }
  SECTION("mismatched (g, h) is an error") {
    REQUIRE_THROWS_MATCHES(run_checks(rep, 2, 0, {}), error,
                           Catch::Matchers::Predicate<error>(
                               [](const error& e) { return e.kind() == errc::mismatched_report; }));
    REQUIRE_NOTHROW(run_checks(rep, 1, 0, {}));
  }
}

TEST_CASE("informational checks never block", "[checks]") {
  // a synthetic view violating the informational l >= 8g/5 bound
  ReportView v;
  v.g = 10;
  v.h = 0;
  v.l = 2;
  v.n = 2;
  v.s = 0;
  auto rs = run_checks(v, {}, {"info_stipsicz_l", "info_gompf"});
  for (const CheckResult& r : rs) {
    REQUIRE(r.informational);
    REQUIRE(r.applicable);
    REQUIRE_FALSE(*r.holds);
  }
  REQUIRE_FALSE(any_blocking_failure(rs));
}

TEST_CASE("base_pairing runs only on positive-genus bases with supplied sigma", "[checks]") {
  ReportView v;
  v.g = 2;
  v.h = 1;
  v.l = 12;
  SECTION("without sigma it is inapplicable") {
    auto rs = run_checks(v, {}, {"base_pairing"});
    REQUIRE_FALSE(rs[0].applicable);
  }
  SECTION("with sigma it evaluates the exact bound") {
    v.sigma = -8;
    auto rs = run_checks(v, {}, {"base_pairing"});
    REQUIRE(rs[0].applicable);
    // (12-8)/4 = 1 >= -(0)(1)/2 + 1 = 1
    REQUIRE(*rs[0].holds);
    REQUIRE(*rs[0].lhs == Rat(1));
    REQUIRE(*rs[0].rhs == Rat(1));
  }
}

TEST_CASE("the sphere-bundle and non-ruled routes each imply the irreducible-fiber bound",
          "[checks][property]") {
  // Synthetic reports: whenever c45 or c46 is applicable and passes (and thm2
  // is applicable), thm2 must pass as well.
  lftest::Rng rng(60606);
  int qualifying = 0;
  while (qualifying < 300) {
    ReportView v;
    v.g = lftest::rand_int(rng, 2, 9);
    v.h = 0;
    std::int64_t n = lftest::rand_int(rng, 0, 40);
    std::int64_t s = lftest::rand_int(rng, 0, 10);
    v.n = n;
    v.s = s;
    v.l = n + s;
    GroundTruthFlags flags;
    int roll = lftest::rand_int(rng, 0, 2);
    if (roll == 0) flags.rational_or_ruled = false;
    if (roll == 1) flags.rational_or_ruled = true;
    if (lftest::rand_int(rng, 0, 1)) flags.blowup_of_sphere_bundle = lftest::rand_int(rng, 0, 1) == 1;

    auto rs = run_checks(v, flags, {"c45", "c46", "thm2"});
    const CheckResult& c45 = by_id(rs, "c45");
    const CheckResult& c46 = by_id(rs, "c46");
    const CheckResult& thm2 = by_id(rs, "thm2");
    bool premise = (c45.applicable && *c45.holds) || (c46.applicable && *c46.holds);
    if (!premise || !thm2.applicable) continue;
    ++qualifying;
    REQUIRE(*thm2.holds);
  }
}
