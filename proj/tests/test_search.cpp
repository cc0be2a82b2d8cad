#include <catch2/catch_amalgamated.hpp>

#include "lf/search.hpp"
#include "support.hpp"

using namespace lf;

namespace {

SearchSpec torus_spec(int max_len) {
  SearchSpec spec;
  spec.genus = 1;
  spec.generators = {{"a", Curve::non_separating({Int(1), Int(0)})},
                     {"b", Curve::non_separating({Int(0), Int(1)})}};
  spec.max_length = max_len;
  return spec;
}

/// Independent oracle: plain enumeration of every word, no pruning, no
/// shortcuts. Returns the closed words as strings in shortlex order.
std::vector<std::string> brute_force_closed(int max_len) {
  IntegerMatrix ta = transvection(Curve::non_separating({Int(1), Int(0)}), 1).matrix();
  IntegerMatrix tb = transvection(Curve::non_separating({Int(0), Int(1)}), 1).matrix();
  std::vector<std::string> found;
  for (int len = 1; len <= max_len; ++len) {
    for (long mask = 0; mask < (1L << len); ++mask) {
      IntegerMatrix p = IntegerMatrix::identity(2);
      std::string w;
      for (int i = 0; i < len; ++i) {
        bool second = (mask >> (len - 1 - i)) & 1;
        p = p * (second ? tb : ta);
        w += second ? 'b' : 'a';
      }
      if (p.is_identity()) found.push_back(w);
    }
  }
  return found;
}

std::string joined(const std::vector<std::string>& word) {
  std::string s;
  for (const std::string& w : word) s += w;
  return s;
}

}  // namespace

TEST_CASE("no homologically closed positive word shorter than 12 exists", "[search]") {
  REQUIRE(search_min_relators(torus_spec(11)).empty());
}

TEST_CASE("length 12 realizes the torus relator class", "[search]") {
  std::vector<SearchHit> hits = search_min_relators(torus_spec(12));
  REQUIRE_FALSE(hits.empty());
  REQUIRE(hits.size() == 196);  // pinned by the brute-force oracle below
  bool has_standard = false;
  for (const SearchHit& h : hits) {
    REQUIRE(h.word.size() == 12);
    REQUIRE(h.report.closure == ClosureVerdict::closed);
    REQUIRE(*h.report.sigma == -8);
    if (joined(h.word) == "abababababab") has_standard = true;
  }
  REQUIRE(has_standard);
}

TEST_CASE("pruned search agrees with the unpruned oracle", "[search][property]") {
  std::vector<std::string> oracle = brute_force_closed(12);
  std::vector<SearchHit> hits = search_min_relators(torus_spec(12));
  REQUIRE(hits.size() == oracle.size());
  for (std::size_t i = 0; i < hits.size(); ++i) REQUIRE(joined(hits[i].word) == oracle[i]);
}

TEST_CASE("powers of a single transvection never close", "[search]") {
  SearchSpec spec;
  spec.genus = 1;
  spec.generators = {{"a", Curve::non_separating({Int(1), Int(0)})}};
  spec.max_length = 10;
  REQUIRE(search_min_relators(spec).empty());
}

TEST_CASE("the search budget gates the worst case up front", "[search]") {
  SearchSpec spec = torus_spec(12);
  spec.budget = 10;  // 2^12 states exceed it
  REQUIRE_THROWS_MATCHES(search_min_relators(spec), error,
                         Catch::Matchers::Predicate<error>(
                             [](const error& e) { return e.kind() == errc::budget_exceeded; }));
}

TEST_CASE("results are independent of the worker count", "[search][property]") {
  SearchSpec one = torus_spec(12);
  SearchSpec two = torus_spec(12);
  two.workers = 2;
  SearchSpec three = torus_spec(12);
  three.workers = 3;
  std::vector<SearchHit> h1 = search_min_relators(one);
  std::vector<SearchHit> h2 = search_min_relators(two);
  std::vector<SearchHit> h3 = search_min_relators(three);
  REQUIRE(h1.size() == h2.size());
  REQUIRE(h1.size() == h3.size());
  for (std::size_t i = 0; i < h1.size(); ++i) {
    REQUIRE(h1[i].word == h2[i].word);
    REQUIRE(h1[i].word == h3[i].word);
  }
}

TEST_CASE("require_closed = false lists every word in shortlex order", "[search]") {
  SearchSpec spec = torus_spec(2);
  spec.require_closed = false;
  std::vector<SearchHit> hits = search_min_relators(spec);
  std::vector<std::string> words;
  for (const SearchHit& h : hits) words.push_back(joined(h.word));
  REQUIRE(words == std::vector<std::string>{"a", "b", "aa", "ab", "ba", "bb"});
  REQUIRE(hits[0].report.closure == ClosureVerdict::violated);
}

TEST_CASE("separating generators participate but cannot close alone", "[search]") {
  SearchSpec spec;
  spec.genus = 2;
  spec.generators = {{"c", Curve::separating(1)}};
  spec.max_length = 3;
  // separating twists act trivially on homology, so every word closes
  std::vector<SearchHit> hits = search_min_relators(spec);
  REQUIRE(hits.size() == 3);
  REQUIRE(*hits[0].report.sigma == -1);
  REQUIRE(*hits[2].report.sigma == -3);
}

TEST_CASE("search validates its inputs", "[search]") {
  SECTION("no generators") {
    SearchSpec spec;
    spec.genus = 1;
    spec.max_length = 3;
    REQUIRE_THROWS_AS(search_min_relators(spec), error);
  }
  SECTION("invalid generator curve") {
    SearchSpec spec;
    spec.genus = 1;
    spec.generators = {{"bad", Curve::non_separating({Int(2), Int(4)})}};
    spec.max_length = 2;
    REQUIRE_THROWS_AS(search_min_relators(spec), error);
  }
}
