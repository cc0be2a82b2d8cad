// Command-line front end: exact invariants of positive Dehn-twist
// factorizations, the inequality audit, the anchor catalog, fiber sums and
// exhaustive relator search.
//
// Exit codes: 0 success / all applicable checks pass; 1 at least one
// applicable non-informational check failed; 2 parse or validation error;
// 3 precondition error; 4 search budget exceeded.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lf/catalog.hpp"
#include "lf/json_io.hpp"
#include "lf/search.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitParseError = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitBudget = 4;

int exit_code_for(const lf::error& e) {
  switch (e.kind()) {
    case lf::errc::budget_exceeded:
      return kExitBudget;
    case lf::errc::invalid_input:
    case lf::errc::invalid_curve:
    case lf::errc::not_found:
      return kExitParseError;
    default:
      return kExitPrecondition;
  }
}

struct CliError {
  int code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{kExitParseError, "cannot open '" + path + "'"};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError{kExitParseError, "cannot write '" + path + "'"};
  out << text;
}

lf::Factorization load_factorization(const std::string& path) {
  const std::string text = read_file(path);
  lf::ParseResult res = lf::parse_auto(text);
  for (const lf::ParseDiagnostic& d : res.diagnostics)
    std::cerr << path << ":" << lf::render_diagnostic(d) << "\n";
  if (!res.ok()) throw CliError{kExitParseError, "failed to parse '" + path + "'"};
  return std::move(*res.factorization);
}

struct Assumptions {
  std::vector<std::string> assume_tokens;
  bool any() const { return !assume_tokens.empty(); }
};

/// Tokens: not-rational-ruled | rational-or-ruled | unknown |
/// ruled-base-genus=H | blowup-of-sphere-bundle. CLI assumptions override the
/// file's flags block field by field.
lf::GroundTruthFlags apply_assumptions(lf::GroundTruthFlags flags, const Assumptions& a) {
  for (const std::string& tok : a.assume_tokens) {
    if (tok == "rational-or-ruled") {
      flags.rational_or_ruled = true;
    } else if (tok == "not-rational-ruled") {
      flags.rational_or_ruled = false;
      flags.ruled_base_genus.reset();
    } else if (tok == "unknown") {
      flags.rational_or_ruled.reset();
      flags.ruled_base_genus.reset();
    } else if (tok == "blowup-of-sphere-bundle") {
      flags.blowup_of_sphere_bundle = true;
    } else if (tok.rfind("ruled-base-genus=", 0) == 0) {
      try {
        flags.ruled_base_genus = std::stoi(tok.substr(17));
      } catch (...) {
        throw CliError{kExitParseError, "bad assumption '" + tok + "'"};
      }
    } else {
      throw CliError{kExitParseError, "unknown assumption '" + tok + "'"};
    }
  }
  try {
    lf::validate_flags(flags);
  } catch (const lf::error& e) {
    throw CliError{kExitParseError, e.what()};
  }
  return flags;
}

void print_report_text(std::ostream& os, const lf::InvariantReport& rep) {
  os << "fibration " << (rep.name.empty() ? "(unnamed)" : rep.name) << " (fiber genus "
     << rep.fiber_genus << ", base genus " << rep.base_genus << ")\n";
  os << "closure: " << lf::closure_name(rep.closure) << "\n";
  os << "convention: " << rep.convention << "\n";
  os << "l = " << rep.fiber_counts.l << "  n = " << rep.fiber_counts.n
     << "  s = " << rep.fiber_counts.s << "\n";
  os << "e = " << rep.e << "\n";
  if (!rep.complete()) {
    os << "(homology and signature are only computed for closed words over the sphere)\n";
    return;
  }
  os << "b1 = " << *rep.b1 << "\n";
  os << "torsion = [";
  for (std::size_t i = 0; i < rep.torsion->size(); ++i)
    os << (i ? "," : "") << (*rep.torsion)[i].get_str();
  os << "]\n";
  os << "b2 = " << *rep.b2 << "  b+ = " << *rep.b_plus << "  b- = " << *rep.b_minus << "\n";
  os << "sigma = " << *rep.sigma << "\n";
  os << "c1^2 = " << *rep.c1_squared << "\n";
  os << "hodge pairing = " << lf::rat_to_string(*rep.hodge) << "\n";
}

int cmd_invariants(const std::string& path, const std::string& format) {
  lf::Factorization f = load_factorization(path);
  if (f.base_genus() != 0)
    throw CliError{kExitPrecondition,
                   "full invariant reports need base genus 0; use 'check --sigma' for h > 0"};
  lf::InvariantReport rep = lf::compute_report(f);
  if (format == "json")
    std::cout << lf::report_to_json(rep).dump(2) << "\n";
  else
    print_report_text(std::cout, rep);
  return kExitOk;
}

int cmd_check(const std::string& path, const Assumptions& a, const std::vector<std::string>& suite,
              std::optional<long long> caller_sigma, const std::string& format) {
  lf::Factorization f = load_factorization(path);
  lf::GroundTruthFlags flags = apply_assumptions(f.flags(), a);

  lf::ReportView view;
  nlohmann::json jreport;
  std::ostringstream text;
  if (f.base_genus() == 0) {
    if (caller_sigma)
      throw CliError{kExitParseError,
                     "--sigma is only accepted for positive-genus bases; over the sphere the "
                     "signature is computed"};
    lf::InvariantReport rep = lf::compute_report(f);
    view = lf::view_of(rep);
    jreport = lf::report_to_json(rep);
    print_report_text(text, rep);
  } else {
    lf::FiberCounts c = lf::counts(f);
    view.g = f.fiber_genus();
    view.h = f.base_genus();
    view.l = c.l;
    view.n = c.n;
    view.s = c.s;
    view.e = lf::euler_number(f.fiber_genus(), f.base_genus(), c.l);
    if (caller_sigma) {
      view.sigma = *caller_sigma;
      view.c1_squared = lf::chern_square(*view.e, *view.sigma);
    }
    lf::ClosureVerdict verdict = lf::verify_closure(f);
    jreport["format_version"] = 1;
    jreport["name"] = f.name();
    jreport["fiber_genus"] = view.g;
    jreport["base_genus"] = view.h;
    jreport["l"] = *view.l;
    jreport["n"] = *view.n;
    jreport["s"] = *view.s;
    jreport["e"] = *view.e;
    jreport["closure"] = lf::closure_name(verdict);
    jreport["convention"] = lf::composition_convention();
    if (view.sigma) jreport["sigma"] = *view.sigma;
    if (view.c1_squared) jreport["c1_squared"] = *view.c1_squared;
    text << "fibration " << f.name() << " (fiber genus " << view.g << ", base genus " << view.h
         << ")\n";
    text << "closure: " << lf::closure_name(verdict) << "\n";
    text << "l = " << *view.l << "  n = " << *view.n << "  s = " << *view.s << "\n";
    text << "e = " << *view.e << "\n";
    if (view.sigma)
      text << "sigma = " << *view.sigma << " (caller-supplied)\nc1^2 = " << *view.c1_squared << "\n";
  }

  std::vector<lf::CheckResult> results = lf::run_checks(view, flags, suite);
  if (format == "json") {
    nlohmann::json out;
    out["report"] = jreport;
    out["checks"] = lf::checks_to_json(results);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << text.str();
    for (const lf::CheckResult& r : results) std::cout << lf::render_check_line(r) << "\n";
  }
  return lf::any_blocking_failure(results) ? kExitCheckFailed : kExitOk;
}

nlohmann::json entry_to_json(const lf::CatalogEntry& e) {
  nlohmann::json j;
  j["name"] = e.name;
  j["has_word"] = e.has_word();
  nlohmann::json x = nlohmann::json::object();
  const lf::ExpectedInvariants& inv = e.expected;
  if (inv.g) x["fiber_genus"] = *inv.g;
  if (inv.h) x["base_genus"] = *inv.h;
  if (inv.l) x["l"] = *inv.l;
  if (inv.n) x["n"] = *inv.n;
  if (inv.s) x["s"] = *inv.s;
  if (inv.e) x["e"] = *inv.e;
  if (inv.b1) x["b1"] = *inv.b1;
  if (inv.b2) x["b2"] = *inv.b2;
  if (inv.b_plus) x["b_plus"] = *inv.b_plus;
  if (inv.b_minus) x["b_minus"] = *inv.b_minus;
  if (inv.sigma) x["sigma"] = *inv.sigma;
  if (inv.c1_squared) x["c1_squared"] = *inv.c1_squared;
  if (inv.hodge) x["hodge_pairing"] = lf::rat_to_string(*inv.hodge);
  j["expected"] = x;
  nlohmann::json fl = nlohmann::json::object();
  if (e.flags.rational_or_ruled) fl["rational_or_ruled"] = *e.flags.rational_or_ruled;
  if (e.flags.ruled_base_genus) fl["ruled_base_genus"] = *e.flags.ruled_base_genus;
  if (e.flags.blowup_of_sphere_bundle) fl["blowup_of_sphere_bundle"] = *e.flags.blowup_of_sphere_bundle;
  if (e.flags.known_manifold) fl["known_manifold"] = *e.flags.known_manifold;
  j["flags"] = fl;
  j["provenance"] = e.provenance;
  return j;
}

int cmd_catalog_list(const std::string& format) {
  if (format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const lf::CatalogEntry& e : lf::catalog()) arr.push_back(entry_to_json(e));
    std::cout << arr.dump(2) << "\n";
    return kExitOk;
  }
  for (const lf::CatalogEntry& e : lf::catalog()) {
    std::cout << e.name << "  g=" << e.expected.g.value_or(-1) << " h=" << e.expected.h.value_or(-1)
              << (e.has_word() ? "  [word]" : "  [invariants only]");
    if (e.flags.known_manifold) std::cout << "  " << *e.flags.known_manifold;
    std::cout << "\n";
  }
  return kExitOk;
}

int cmd_catalog_show(const std::string& name, const std::string& format) {
  const lf::CatalogEntry& e = lf::catalog_lookup(name);
  if (format == "json") {
    std::cout << entry_to_json(e).dump(2) << "\n";
    return kExitOk;
  }
  std::cout << "entry " << e.name << (e.has_word() ? " [word]" : " [invariants only]") << "\n";
  nlohmann::json x = entry_to_json(e);
  for (const auto& [key, val] : x["expected"].items())
    std::cout << "  " << key << " = " << val << "\n";
  for (const auto& [key, val] : x["flags"].items()) std::cout << "  flag " << key << " = " << val << "\n";
  for (const auto& [key, val] : e.provenance) std::cout << "  provenance " << key << ": " << val << "\n";
  return kExitOk;
}

int cmd_catalog_verify(const std::vector<std::string>& word_overrides) {
  std::map<std::string, lf::Factorization> overrides;
  for (const std::string& spec : word_overrides) {
    auto eq = spec.find('=');
    if (eq == std::string::npos)
      throw CliError{kExitParseError, "--word expects NAME=FILE, got '" + spec + "'"};
    overrides.emplace(spec.substr(0, eq), load_factorization(spec.substr(eq + 1)));
  }

  bool all_ok = true;
  for (const lf::CatalogEntry& e : lf::catalog()) {
    std::optional<lf::Factorization> word;
    if (auto it = overrides.find(e.name); it != overrides.end()) word = it->second;

    std::vector<std::string> problems = lf::validate_entry(e, word);

    // the applicable checks are part of the regression: anchors must pass all
    lf::ReportView view;
    if (word)
      view = lf::view_of(lf::compute_report(*word));
    else if (e.has_word())
      view = lf::view_of(lf::compute_report(e.factorization()));
    else
      view = lf::view_from_expected(e.expected);
    for (const lf::CheckResult& r : lf::run_checks(view, e.flags))
      if (lf::check_failed(r)) problems.push_back("check " + r.check_id + " failed: " + r.note);

    if (problems.empty()) {
      std::cout << "OK " << e.name << "\n";
    } else {
      all_ok = false;
      std::cout << "FAIL " << e.name << "\n";
      for (const std::string& p : problems) std::cout << "  " << p << "\n";
    }
  }
  return all_ok ? kExitOk : kExitCheckFailed;
}

int cmd_catalog_export(const std::string& name, const std::string& out_path) {
  const lf::CatalogEntry& e = lf::catalog_lookup(name);
  if (!e.has_word())
    throw CliError{kExitPrecondition,
                   "entry '" + name + "' is invariant-only; there is no document to export"};
  if (out_path.empty())
    std::cout << *e.document;
  else
    write_file(out_path, *e.document);
  return kExitOk;
}

int cmd_fibersum(const std::string& f1_path, const std::string& f2_path, const std::string& out_path) {
  lf::Factorization f1 = load_factorization(f1_path);
  lf::Factorization f2 = load_factorization(f2_path);
  lf::Factorization sum = lf::fiber_sum(f1, f2);
  const bool json = out_path.size() > 5 && out_path.substr(out_path.size() - 5) == ".json";
  write_file(out_path, json ? lf::serialize_json(sum) : lf::serialize_dsl(sum));
  lf::InvariantReport rep = lf::compute_report(sum);
  std::cout << "wrote " << out_path << "  l=" << rep.fiber_counts.l << " sigma=" << *rep.sigma
            << " e=" << rep.e << " c1^2=" << *rep.c1_squared << "\n";
  return kExitOk;
}

/// Generator sets for the search command: comma-separated entries
/// name=(c1,c2,...) for non-separating classes, name=sep(K) for separating
/// curves. Commas inside parentheses belong to the coordinate list.
std::vector<std::pair<std::string, lf::Curve>> parse_curve_spec(const std::string& spec) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char c : spec) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) parts.push_back(cur);

  std::vector<std::pair<std::string, lf::Curve>> out;
  for (const std::string& part : parts) {
    auto eq = part.find('=');
    if (eq == std::string::npos || eq == 0)
      throw CliError{kExitParseError, "bad curve entry '" + part + "' (want name=(...) or name=sep(K))"};
    std::string name = part.substr(0, eq);
    std::string rhs = part.substr(eq + 1);
    if (rhs.rfind("sep(", 0) == 0 && rhs.back() == ')') {
      try {
        out.push_back({name, lf::Curve::separating(std::stoi(rhs.substr(4, rhs.size() - 5)))});
      } catch (...) {
        throw CliError{kExitParseError, "bad side genus in '" + part + "'"};
      }
    } else if (rhs.size() >= 2 && rhs.front() == '(' && rhs.back() == ')') {
      lf::HomologyClass cls;
      std::string inner = rhs.substr(1, rhs.size() - 2);
      std::string tok;
      std::istringstream is(inner);
      while (std::getline(is, tok, ',')) {
        try {
          cls.push_back(lf::Int(tok));
        } catch (...) {
          throw CliError{kExitParseError, "bad coordinate '" + tok + "' in '" + part + "'"};
        }
      }
      out.push_back({name, lf::Curve::non_separating(std::move(cls))});
    } else {
      throw CliError{kExitParseError, "bad curve entry '" + part + "'"};
    }
  }
  return out;
}

int cmd_search(int genus, const std::string& curves, int max_len, bool all_words, int workers,
               const std::string& format) {
  lf::SearchSpec spec;
  spec.genus = genus;
  spec.generators = parse_curve_spec(curves);
  spec.max_length = max_len;
  spec.require_closed = !all_words;
  spec.workers = workers;
  std::vector<lf::SearchHit> hits = lf::search_min_relators(spec);

  if (format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const lf::SearchHit& h : hits) {
      nlohmann::json j;
      j["word"] = h.word;
      j["report"] = lf::report_to_json(h.report);
      arr.push_back(j);
    }
    std::cout << arr.dump(2) << "\n";
  } else {
    for (const lf::SearchHit& h : hits) {
      std::cout << "l=" << h.word.size() << " word=";
      for (std::size_t i = 0; i < h.word.size(); ++i) std::cout << (i ? " " : "") << h.word[i];
      if (h.report.sigma)
        std::cout << "  sigma=" << *h.report.sigma << " e=" << h.report.e << " b1=" << *h.report.b1
                  << " b2=" << *h.report.b2;
      std::cout << "\n";
    }
    std::cout << "found " << hits.size() << " word(s)\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact invariants and inequality audits for Lefschetz fibrations given as "
               "positive Dehn-twist factorizations"};
  app.require_subcommand(1);

  std::string in_path, in_path2, out_path, format = "text", name, curves_spec;
  Assumptions assumptions;
  std::vector<std::string> suite, word_overrides;
  std::optional<long long> caller_sigma;
  long long sigma_value = 0;
  int genus = 1, max_len = 1, workers = 1;
  bool all_words = false;

  CLI::App* inv = app.add_subcommand("invariants", "Compute the exact invariant report of a factorization");
  inv->add_option("file", in_path, "factorization file (.lf DSL or .json)")->required();
  inv->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));

  CLI::App* chk = app.add_subcommand("check", "Audit the inequality suite against a factorization");
  chk->add_option("file", in_path, "factorization file")->required();
  chk->add_option("--assume", assumptions.assume_tokens,
                  "not-rational-ruled | rational-or-ruled | unknown | ruled-base-genus=H | "
                  "blowup-of-sphere-bundle");
  chk->add_option("--suite", suite, "check ids to run (default: all)");
  CLI::Option* sg = chk->add_option("--sigma", sigma_value, "caller-supplied signature (h > 0 only)");
  chk->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));

  CLI::App* cat = app.add_subcommand("catalog", "Built-in anchor examples");
  cat->require_subcommand(1);
  CLI::App* cat_list = cat->add_subcommand("list", "List entries");
  cat_list->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));
  CLI::App* cat_show = cat->add_subcommand("show", "Show one entry");
  cat_show->add_option("name", name, "entry name")->required();
  cat_show->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));
  CLI::App* cat_verify = cat->add_subcommand("verify", "Validate every entry (regression anchor)");
  cat_verify->add_option("--word", word_overrides, "NAME=FILE word to validate against an entry");
  CLI::App* cat_export = cat->add_subcommand("export", "Write an entry's document bit-exactly");
  cat_export->add_option("name", name, "entry name")->required();
  cat_export->add_option("-o,--output", out_path, "output path (default: stdout)");

  CLI::App* fsum = app.add_subcommand("fibersum", "Concatenate two closed factorizations");
  fsum->add_option("f1", in_path, "first factorization")->required();
  fsum->add_option("f2", in_path2, "second factorization")->required();
  fsum->add_option("-o,--output", out_path, "output file (.lf or .json)")->required();

  CLI::App* srch = app.add_subcommand("search", "Exhaustive positive-word search over generators");
  srch->add_option("--genus", genus, "fiber genus")->required();
  srch->add_option("--curves", curves_spec, "a=(1,0),b=(0,1),c=sep(1)")->required();
  srch->add_option("--max-len", max_len, "maximum word length")->required();
  srch->add_flag("--all", all_words, "list every word, not only closed ones");
  srch->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
  srch->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);  // prints help or the usage error
    return rc == 0 ? kExitOk : kExitParseError;
  }

  try {
    if (*sg) caller_sigma = sigma_value;
    if (inv->parsed()) return cmd_invariants(in_path, format);
    if (chk->parsed()) return cmd_check(in_path, assumptions, suite, caller_sigma, format);
    if (cat->parsed()) {
      if (cat_list->parsed()) return cmd_catalog_list(format);
      if (cat_show->parsed()) return cmd_catalog_show(name, format);
      if (cat_verify->parsed()) return cmd_catalog_verify(word_overrides);
      if (cat_export->parsed()) return cmd_catalog_export(name, out_path);
    }
    if (fsum->parsed()) return cmd_fibersum(in_path, in_path2, out_path);
    if (srch->parsed()) return cmd_search(genus, curves_spec, max_len, all_words, workers, format);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const lf::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  }
  return kExitOk;
}
