#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "lf/invariants.hpp"

namespace lf {

/// Default worst-case state budget for exhaustive word search; overridable
/// through the LEFSCHETZ_SEARCH_BUDGET environment variable.
inline std::uint64_t default_search_budget() {
  if (const char* env = std::getenv("LEFSCHETZ_SEARCH_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return 10'000'000ULL;
}

struct SearchSpec {
  int genus = 1;
  std::vector<std::pair<std::string, Curve>> generators;
  int max_length = 1;
  bool require_closed = true;
  int workers = 1;
  std::uint64_t budget = 0;  // 0 means default_search_budget()
};

struct SearchHit {
  std::vector<std::string> word;
  InvariantReport report;
};

namespace detail {

struct SearchContext {
  int g = 0;
  int max_length = 0;
  bool require_closed = true;
  std::vector<std::string> names;        // sorted
  std::vector<IntegerMatrix> twists;     // aligned with names
  std::vector<Curve> curves;             // aligned with names
};

inline InvariantReport report_for_letters(const SearchContext& ctx, const std::vector<int>& letters) {
  std::vector<std::pair<std::string, Curve>> curves;
  for (std::size_t i = 0; i < ctx.names.size(); ++i) curves.push_back({ctx.names[i], ctx.curves[i]});
  std::vector<std::string> word;
  std::string joined;
  for (int k : letters) {
    word.push_back(ctx.names[k]);
    if (!joined.empty()) joined += ".";
    joined += ctx.names[k];
  }
  Factorization f(joined, ctx.g, 0, std::move(curves), std::move(word));
  return compute_report(f);
}

// A transvection changes rank(P - I) by at most one, so a prefix needing more
// than the remaining letters to return to the identity is dead.
inline void dfs(const SearchContext& ctx, std::vector<int>& letters, const IntegerMatrix& prefix,
                std::vector<std::vector<int>>& hits) {
  const int depth = static_cast<int>(letters.size());
  if (depth > 0) {
    bool closed = prefix.is_identity();
    if (closed || !ctx.require_closed) hits.push_back(letters);
    if (ctx.require_closed) {
      IntegerMatrix delta = prefix - IntegerMatrix::identity(2 * ctx.g);
      if (rank(delta) > ctx.max_length - depth) return;
    }
  }
  if (depth == ctx.max_length) return;
  for (int k = 0; k < static_cast<int>(ctx.names.size()); ++k) {
    letters.push_back(k);
    dfs(ctx, letters, prefix * ctx.twists[k], hits);
    letters.pop_back();
  }
}

}  // namespace detail

/// Exhaustively enumerates words over the generator set up to max_length and
/// returns the homologically closed ones (or every word when require_closed
/// is off) with their invariant reports, in shortlex order. The output is
/// deterministic and independent of the worker count.
inline std::vector<SearchHit> search_min_relators(const SearchSpec& spec) {
  if (spec.generators.empty()) throw error(errc::invalid_input, "no generator curves given");
  if (spec.max_length < 1) throw error(errc::invalid_input, "max_length must be >= 1");

  const std::uint64_t budget = spec.budget ? spec.budget : default_search_budget();
  Int states = 0;
  {
    Int base(static_cast<unsigned long>(spec.generators.size()));
    Int pw;
    mpz_pow_ui(pw.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(spec.max_length));
    states = pw;
  }
  if (states > Int(static_cast<unsigned long>(budget)))
    throw error(errc::budget_exceeded,
                "generator_count^max_length = " + states.get_str() + " exceeds the budget of " +
                    std::to_string(budget) + " states");

  detail::SearchContext ctx;
  ctx.g = spec.genus;
  ctx.max_length = spec.max_length;
  ctx.require_closed = spec.require_closed;
  std::vector<std::pair<std::string, Curve>> gens = spec.generators;
  std::sort(gens.begin(), gens.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [name, c] : gens) {
    validate_curve(c, spec.genus, name);
    ctx.names.push_back(name);
    ctx.curves.push_back(c);
    ctx.twists.push_back(transvection(c, spec.genus).matrix());
  }
  for (std::size_t i = 1; i < ctx.names.size(); ++i)
    if (ctx.names[i] == ctx.names[i - 1])
      throw error(errc::invalid_input, "duplicate generator name '" + ctx.names[i] + "'");

  const int k = static_cast<int>(ctx.names.size());
  const int workers = std::max(1, std::min(spec.workers, k));
  std::vector<std::vector<std::vector<int>>> found(k);

  auto run_shard = [&](int first_letter) {
    std::vector<int> letters{first_letter};
    detail::dfs(ctx, letters, ctx.twists[first_letter], found[first_letter]);
  };

  if (workers == 1) {
    for (int first = 0; first < k; ++first) run_shard(first);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (int first = w; first < k; first += workers) run_shard(first);
      });
    for (std::thread& t : pool) t.join();
  }

  std::vector<std::vector<int>> all;
  for (auto& shard : found)
    for (auto& hit : shard) all.push_back(std::move(hit));
  std::sort(all.begin(), all.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });

  std::vector<SearchHit> out;
  out.reserve(all.size());
  for (const std::vector<int>& letters : all) {
    SearchHit hit;
    for (int idx : letters) hit.word.push_back(ctx.names[idx]);
    hit.report = detail::report_for_letters(ctx, letters);
    out.push_back(std::move(hit));
  }
  return out;
}

}  // namespace lf
