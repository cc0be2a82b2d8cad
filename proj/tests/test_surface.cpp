#include <catch2/catch_amalgamated.hpp>

#include "lf/surface.hpp"
#include "support.hpp"

using namespace lf;

TEST_CASE("pairing follows the fixed convention", "[surface]") {
  HomologyClass a{Int(1), Int(0)}, b{Int(0), Int(1)};
  REQUIRE(pairing(a, b, 1) == 1);
  REQUIRE(pairing(b, a, 1) == -1);
  SECTION("bilinearity over the basis at g = 2") {
    HomologyClass a1_plus_b2{Int(1), Int(0), Int(0), Int(1)};
    HomologyClass b1{Int(0), Int(1), Int(0), Int(0)};
    REQUIRE(pairing(a1_plus_b2, b1, 2) == 1);
  }
  SECTION("length mismatch") {
    REQUIRE_THROWS_MATCHES(pairing(a, b, 2), error,
                           Catch::Matchers::Predicate<error>(
                               [](const error& e) { return e.kind() == errc::dimension_mismatch; }));
  }
  SECTION("antisymmetry on random classes") {
    lftest::Rng rng(88);
    for (int t = 0; t < 50; ++t) {
      int g = lftest::rand_int(rng, 1, 4);
      HomologyClass x = lftest::random_primitive_class(rng, g);
      HomologyClass y = lftest::random_primitive_class(rng, g);
      REQUIRE(pairing(x, y, g) == -pairing(y, x, g));
    }
  }
}

TEST_CASE("primitivity", "[surface]") {
  REQUIRE(is_primitive({Int(1), Int(0)}));
  REQUIRE_FALSE(is_primitive({Int(2), Int(4)}));
  REQUIRE_FALSE(is_primitive({Int(0), Int(0)}));
}

TEST_CASE("transvection matrices", "[surface]") {
  Curve a = Curve::non_separating({Int(1), Int(0)});
  SECTION("twist about a at g = 1 sends a -> a, b -> b - a") {
    IntegerMatrix t = transvection(a, 1).matrix();
    REQUIRE(t == IntegerMatrix(2, 2, {Int(1), Int(-1), Int(0), Int(1)}));
  }
  SECTION("separating curves act trivially on homology") {
    REQUIRE(transvection(Curve::separating(1), 2).matrix() == IntegerMatrix::identity(4));
  }
  SECTION("a non-separating twist has infinite order") {
    SymplecticMatrix t = transvection(a, 1);
    SymplecticMatrix p = t;
    for (int k = 1; k <= 20; ++k) {
      REQUIRE_FALSE(p.is_identity());
      // the k-th power sends b to b - k a
      REQUIRE(p.matrix()(0, 1) == -k);
      p = p * t;
    }
  }
}

TEST_CASE("transvection properties", "[surface][property]") {
  lftest::Rng rng(1234);
  for (int t = 0; t < 60; ++t) {
    int g = lftest::rand_int(rng, 1, 3);
    HomologyClass v = lftest::random_primitive_class(rng, g);
    SymplecticMatrix tv = transvection(Curve::non_separating(v), g);
    {
      REQUIRE(is_symplectic(tv.matrix(), g));
      // unipotent: (T - I)^2 = 0
      IntegerMatrix d = tv.matrix() - IntegerMatrix::identity(2 * g);
      REQUIRE((d * d).is_zero());
      // the formula is quadratic in v, so v and -v give the same twist
      HomologyClass nv(v.size());
      for (std::size_t i = 0; i < v.size(); ++i) nv[i] = -v[i];
      REQUIRE(transvection(Curve::non_separating(nv), g).matrix() == tv.matrix());
      // defining property: T x = x + <x, v> v
      HomologyClass x = lftest::random_primitive_class(rng, g);
      Int coef = pairing(x, v, g);
      for (int r = 0; r < 2 * g; ++r) {
        Int want = x[r] + coef * v[r];
        Int got = 0;
        for (int c = 0; c < 2 * g; ++c) got += tv.matrix()(r, c) * x[c];
        REQUIRE(got == want);
      }
    }
  }
}

TEST_CASE("curve validation", "[surface]") {
  auto kind_is = [](errc k) {
    return Catch::Matchers::Predicate<error>([k](const error& e) { return e.kind() == k; });
  };
  REQUIRE_THROWS_MATCHES(validate_curve(Curve::non_separating({Int(2), Int(4)}), 1), error,
                         kind_is(errc::invalid_curve));
  REQUIRE_THROWS_MATCHES(validate_curve(Curve::non_separating({Int(1), Int(0)}), 2), error,
                         kind_is(errc::invalid_curve));  // arity 2 != 2g = 4
  REQUIRE_THROWS_MATCHES(validate_curve(Curve::separating(1), 1), error, kind_is(errc::invalid_curve));
  REQUIRE_THROWS_MATCHES(validate_curve(Curve::separating(2), 2), error, kind_is(errc::invalid_curve));
  REQUIRE_NOTHROW(validate_curve(Curve::separating(1), 2));
}

TEST_CASE("symplectic matrix invariant is enforced", "[surface]") {
  IntegerMatrix bad(2, 2, {Int(2), Int(0), Int(0), Int(1)});
  REQUIRE_THROWS_AS(SymplecticMatrix(1, bad), error);
  REQUIRE_NOTHROW(SymplecticMatrix(1, IntegerMatrix::identity(2)));
}
