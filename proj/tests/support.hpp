#pragma once

// Shared helpers for the test suites: deterministic generators for matrices,
// symplectic elements and factorizations, an independent fraction-free rank
// oracle, and a harness for spawning the CLI binary.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lf/catalog.hpp"
#include "lf/parser.hpp"

namespace lftest {

using Rng = std::mt19937_64;

inline int rand_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline lf::IntegerMatrix random_matrix(Rng& rng, int rows, int cols, int lo = -9, int hi = 9) {
  lf::IntegerMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rand_int(rng, lo, hi);
  return m;
}

inline lf::RationalMatrix random_symmetric(Rng& rng, int n) {
  lf::RationalMatrix q(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      lf::Rat v{lf::Int(rand_int(rng, -6, 6)), lf::Int(rand_int(rng, 1, 4))};
      v.canonicalize();
      q(i, j) = v;
      q(j, i) = v;
    }
  return q;
}

inline lf::IntegerMatrix random_invertible(Rng& rng, int n) {
  for (;;) {
    lf::IntegerMatrix m = random_matrix(rng, n, n, -4, 4);
    if (lf::determinant(m) != 0) return m;
  }
}

inline lf::HomologyClass random_primitive_class(Rng& rng, int g) {
  for (;;) {
    lf::HomologyClass v(2 * g);
    for (int i = 0; i < 2 * g; ++i) v[i] = rand_int(rng, -3, 3);
    lf::Int d = 0;
    for (const lf::Int& x : v) {
      lf::Int a = abs(x);
      mpz_gcd(d.get_mpz_t(), d.get_mpz_t(), a.get_mpz_t());
    }
    if (d == 0) continue;
    if (d > 1)
      for (lf::Int& x : v) x /= d;
    return v;
  }
}

/// Product of up to max_twists random transvections and their inverses.
inline lf::SymplecticMatrix random_symplectic(Rng& rng, int g, int max_twists = 6) {
  lf::SymplecticMatrix p = lf::SymplecticMatrix::identity(g);
  const int k = rand_int(rng, 1, max_twists);
  for (int i = 0; i < k; ++i) {
    lf::SymplecticMatrix t = lf::transvection(lf::Curve::non_separating(random_primitive_class(rng, g)), g);
    if (rand_int(rng, 0, 1)) t = t.inverse();
    p = p * t;
  }
  return p;
}

/// Valid random factorization for round-trip testing: g <= 4, words <= 20.
inline lf::Factorization random_factorization(Rng& rng, int max_g = 4, int max_word = 20) {
  const int g = rand_int(rng, 1, max_g);
  const int h = rand_int(rng, 0, 2);
  const int ncurves = rand_int(rng, 1, 5);
  std::vector<std::pair<std::string, lf::Curve>> curves;
  for (int i = 0; i < ncurves; ++i) {
    std::string name = "c" + std::to_string(i);
    if (g >= 2 && rand_int(rng, 0, 3) == 0)
      curves.push_back({name, lf::Curve::separating(rand_int(rng, 1, g - 1))});
    else
      curves.push_back({name, lf::Curve::non_separating(random_primitive_class(rng, g))});
  }
  const int len = rand_int(rng, 1, max_word);
  std::vector<std::string> word;
  for (int i = 0; i < len; ++i) word.push_back(curves[rand_int(rng, 0, ncurves - 1)].first);

  std::optional<std::vector<lf::SymplecticMatrix>> handles;
  if (h > 0 && rand_int(rng, 0, 1)) {
    std::vector<lf::SymplecticMatrix> hs;
    for (int i = 0; i < 2 * h; ++i) hs.push_back(random_symplectic(rng, g, 3));
    handles = std::move(hs);
  }

  lf::GroundTruthFlags flags;
  switch (rand_int(rng, 0, 3)) {
    case 0:
      flags.rational_or_ruled = true;
      if (rand_int(rng, 0, 1)) flags.ruled_base_genus = rand_int(rng, 0, 3);
      break;
    case 1:
      flags.rational_or_ruled = false;
      break;
    default:
      break;
  }
  if (rand_int(rng, 0, 2) == 0) flags.blowup_of_sphere_bundle = rand_int(rng, 0, 1) == 1;
  if (rand_int(rng, 0, 2) == 0) flags.known_manifold = "X" + std::to_string(rand_int(rng, 0, 99));
  std::optional<bool> rel_min;
  if (rand_int(rng, 0, 2) == 0) rel_min = rand_int(rng, 0, 1) == 1;

  return lf::Factorization("rand" + std::to_string(rand_int(rng, 0, 9999)), g, h, std::move(curves),
                           std::move(word), std::move(handles), std::move(flags), rel_min);
}

/// Independent rank oracle: fraction-free (Bareiss) row elimination, counting
/// pivots. Shares no code with the Smith-form path it cross-checks.
inline int rank_by_elimination(const lf::IntegerMatrix& m) {
  lf::IntegerMatrix a = m;
  const int rows = a.rows(), cols = a.cols();
  int r = 0;
  lf::Int prev = 1;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (a(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    a.swap_rows(r, piv);
    for (int i = r + 1; i < rows; ++i) {
      for (int j = c + 1; j < cols; ++j) a(i, j) = (a(i, j) * a(r, c) - a(i, c) * a(r, j)) / prev;
      a(i, c) = 0;
    }
    prev = a(r, c);
    ++r;
  }
  return r;
}

inline lf::Factorization make_elliptic(int k) { return lf::catalog_lookup("E" + std::to_string(k)).factorization(); }

/// g = 2 word of m separating twists (homologically closed, never a fibration).
inline lf::Factorization all_separating(int m, int side = 1) {
  std::vector<std::string> word(static_cast<std::size_t>(m), "c");
  return lf::Factorization("sep" + std::to_string(m), 2, 0, {{"c", lf::Curve::separating(side)}},
                           std::move(word));
}

// ---------------------------------------------------------------------------
// CLI harness
// ---------------------------------------------------------------------------

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

inline std::string cli_path() {
  const char* p = std::getenv("LEFSCHETZ_CLI");
  return p ? p : "";
}

inline std::string test_data_dir() {
  const char* p = std::getenv("LF_TEST_DATA");
  return p ? p : "";
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

inline std::string temp_dir() {
  static const std::string dir = [] {
    std::string t = "/tmp/lf_test_XXXXXX";
    std::vector<char> buf(t.begin(), t.end());
    buf.push_back('\0');
    if (!mkdtemp(buf.data())) return std::string("/tmp");
    return std::string(buf.data());
  }();
  return dir;
}

inline CliResult run_cli(const std::vector<std::string>& args, const std::string& env = "") {
  static int counter = 0;
  const std::string base = temp_dir() + "/io" + std::to_string(counter++);
  const std::string out_file = base + ".out", err_file = base + ".err";
  std::string cmd = env.empty() ? "" : env + " ";
  cmd += "'" + cli_path() + "'";
  for (const std::string& a : args) cmd += " '" + a + "'";
  cmd += " >" + out_file + " 2>" + err_file;
  int status = std::system(cmd.c_str());
  CliResult r;
  r.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_file);
  r.err = slurp(err_file);
  std::remove(out_file.c_str());
  std::remove(err_file.c_str());
  return r;
}

}  // namespace lftest
