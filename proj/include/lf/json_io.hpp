#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <string_view>

#include "lf/checks.hpp"
#include "lf/parser.hpp"

namespace lf {

namespace detail {

/// Exact integers ride as JSON numbers while they fit in int64, as decimal
/// strings beyond that; both forms are accepted on input.
inline nlohmann::json int_to_json(const Int& v) {
  if (v.fits_slong_p()) return static_cast<std::int64_t>(v.get_si());
  return v.get_str();
}

inline Int int_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Int(j.get<std::int64_t>());
  if (j.is_string()) return Int(j.get<std::string>());
  throw error(errc::invalid_input, "expected an integer (number or decimal string)");
}

}  // namespace detail

inline nlohmann::json factorization_to_json(const Factorization& f) {
  nlohmann::json j;
  j["format_version"] = 1;
  j["name"] = f.name();
  j["fiber_genus"] = f.fiber_genus();
  j["base_genus"] = f.base_genus();
  j["convention"] = composition_convention();
  nlohmann::json curves = nlohmann::json::array();
  for (const auto& [name, c] : f.curves()) {
    nlohmann::json jc;
    jc["name"] = name;
    if (c.separating()) {
      jc["kind"] = "sep";
      jc["side_genus"] = c.side_genus();
    } else {
      jc["kind"] = "nonsep";
      nlohmann::json cls = nlohmann::json::array();
      for (const Int& x : c.cls()) cls.push_back(detail::int_to_json(x));
      jc["class"] = cls;
    }
    curves.push_back(jc);
  }
  j["curves"] = curves;
  j["word"] = f.word();
  if (f.handle_monodromies()) {
    nlohmann::json hs = nlohmann::json::array();
    for (const SymplecticMatrix& m : *f.handle_monodromies()) {
      nlohmann::json rows = nlohmann::json::array();
      for (int i = 0; i < m.matrix().rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int k = 0; k < m.matrix().cols(); ++k) row.push_back(detail::int_to_json(m.matrix()(i, k)));
        rows.push_back(row);
      }
      hs.push_back(rows);
    }
    j["handles"] = hs;
  }
  const GroundTruthFlags& fl = f.flags();
  nlohmann::json flags = nlohmann::json::object();
  if (fl.rational_or_ruled) flags["rational_or_ruled"] = *fl.rational_or_ruled;
  if (fl.ruled_base_genus) flags["ruled_base_genus"] = *fl.ruled_base_genus;
  if (fl.blowup_of_sphere_bundle) flags["blowup_of_sphere_bundle"] = *fl.blowup_of_sphere_bundle;
  if (fl.known_manifold) flags["known_manifold"] = *fl.known_manifold;
  if (f.relatively_minimal()) flags["relatively_minimal"] = *f.relatively_minimal();
  if (!flags.empty()) j["flags"] = flags;
  return j;
}

inline std::string serialize_json(const Factorization& f) {
  return factorization_to_json(f).dump(2) + "\n";
}

/// Parses the canonical JSON mirror. Positions refer to the JSON text where
/// the library reports them (syntax errors); semantic issues point at 1:1.
inline ParseResult parse_json_text(std::string_view text) {
  ParseResult out;
  auto fail = [&](int line, int col, std::string msg) {
    out.diagnostics.push_back({line, col, std::move(msg), ParseDiagnostic::Severity::error});
  };

  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // translate the byte offset into line:column
    std::size_t off = e.byte > 0 ? e.byte - 1 : 0;
    if (off > text.size()) off = text.size();
    int line = 1, col = 1;
    for (std::size_t i = 0; i < off && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail(line, col, std::string("JSON syntax error: ") + e.what());
    return out;
  }

  try {
    if (!j.is_object()) throw error(errc::invalid_input, "top level must be an object");
    if (j.contains("format_version") && j["format_version"] != 1)
      throw error(errc::invalid_input, "unsupported format_version");
    if (!j.contains("name") || !j["name"].is_string())
      throw error(errc::invalid_input, "missing fibration name");
    if (!j.contains("fiber_genus")) throw error(errc::invalid_input, "missing fiber_genus");
    const int g = j["fiber_genus"].get<int>();
    const int h = j.value("base_genus", 0);
    if (j.contains("convention") && j["convention"] != composition_convention())
      throw error(errc::invalid_input, "unsupported composition convention");

    std::vector<std::pair<std::string, Curve>> curves;
    for (const auto& jc : j.value("curves", nlohmann::json::array())) {
      std::string name = jc.at("name").get<std::string>();
      std::string kind = jc.at("kind").get<std::string>();
      if (kind == "sep") {
        curves.push_back({name, Curve::separating(jc.at("side_genus").get<int>())});
      } else if (kind == "nonsep") {
        HomologyClass cls;
        for (const auto& x : jc.at("class")) cls.push_back(detail::int_from_json(x));
        curves.push_back({name, Curve::non_separating(std::move(cls))});
      } else {
        throw error(errc::invalid_input, "curve kind must be 'nonsep' or 'sep'");
      }
    }

    std::vector<std::string> word;
    for (const auto& w : j.value("word", nlohmann::json::array())) word.push_back(w.get<std::string>());

    std::optional<std::vector<SymplecticMatrix>> handles;
    if (j.contains("handles")) {
      std::vector<SymplecticMatrix> hs;
      for (const auto& jm : j["handles"]) {
        IntegerMatrix m(2 * g, 2 * g);
        if (static_cast<int>(jm.size()) != 2 * g)
          throw error(errc::invalid_input, "handle matrix must have 2g rows");
        for (int i = 0; i < 2 * g; ++i) {
          if (static_cast<int>(jm[i].size()) != 2 * g)
            throw error(errc::invalid_input, "handle matrix row must have 2g entries");
          for (int k = 0; k < 2 * g; ++k) m(i, k) = detail::int_from_json(jm[i][k]);
        }
        if (!is_symplectic(m, g))
          throw error(errc::invalid_input, "handle matrix does not preserve the intersection form");
        hs.push_back(SymplecticMatrix::trusted(g, std::move(m)));
      }
      handles = std::move(hs);
    }

    GroundTruthFlags flags;
    std::optional<bool> relatively_minimal;
    if (j.contains("flags")) {
      const auto& jf = j["flags"];
      if (jf.contains("rational_or_ruled")) flags.rational_or_ruled = jf["rational_or_ruled"].get<bool>();
      if (jf.contains("ruled_base_genus")) flags.ruled_base_genus = jf["ruled_base_genus"].get<int>();
      if (jf.contains("blowup_of_sphere_bundle"))
        flags.blowup_of_sphere_bundle = jf["blowup_of_sphere_bundle"].get<bool>();
      if (jf.contains("known_manifold")) flags.known_manifold = jf["known_manifold"].get<std::string>();
      if (jf.contains("relatively_minimal")) relatively_minimal = jf["relatively_minimal"].get<bool>();
      for (const auto& [key, val] : jf.items()) {
        (void)val;
        if (key != "rational_or_ruled" && key != "ruled_base_genus" &&
            key != "blowup_of_sphere_bundle" && key != "known_manifold" &&
            key != "relatively_minimal")
          throw error(errc::invalid_input, "unknown flag '" + key + "'");
      }
    }

    out.factorization = Factorization(j["name"].get<std::string>(), g, h, std::move(curves),
                                      std::move(word), std::move(handles), std::move(flags),
                                      relatively_minimal);
  } catch (const error& e) {
    fail(1, 1, e.what());
  } catch (const nlohmann::json::exception& e) {
    fail(1, 1, std::string("malformed document: ") + e.what());
  }
  return out;
}

/// Dispatch on the leading non-space byte: '{' means JSON, anything else DSL.
inline ParseResult parse_auto(std::string_view text) {
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') continue;
    if (c == '{') return parse_json_text(text);
    break;
  }
  return parse_dsl(text);
}

// ---------------------------------------------------------------------------
// Reports and check results
// ---------------------------------------------------------------------------

inline nlohmann::json report_to_json(const InvariantReport& rep) {
  nlohmann::json j;
  j["format_version"] = 1;
  j["name"] = rep.name;
  j["fiber_genus"] = rep.fiber_genus;
  j["base_genus"] = rep.base_genus;
  j["l"] = rep.fiber_counts.l;
  j["n"] = rep.fiber_counts.n;
  j["s"] = rep.fiber_counts.s;
  j["e"] = rep.e;
  j["closure"] = closure_name(rep.closure);
  j["convention"] = rep.convention;
  if (rep.b1) j["b1"] = *rep.b1;
  if (rep.torsion) {
    nlohmann::json t = nlohmann::json::array();
    for (const Int& d : *rep.torsion) t.push_back(detail::int_to_json(d));
    j["torsion"] = t;
  }
  if (rep.b2) j["b2"] = *rep.b2;
  if (rep.b_plus) j["b_plus"] = *rep.b_plus;
  if (rep.b_minus) j["b_minus"] = *rep.b_minus;
  if (rep.sigma) j["sigma"] = *rep.sigma;
  if (rep.c1_squared) j["c1_squared"] = *rep.c1_squared;
  if (rep.hodge) j["hodge_pairing"] = rat_to_string(*rep.hodge);
  return j;
}

inline nlohmann::json check_to_json(const CheckResult& r) {
  nlohmann::json j;
  j["check_id"] = r.check_id;
  j["citation"] = r.citation;
  j["applicable"] = r.applicable;
  j["informational"] = r.informational;
  if (!r.applicable) j["reason"] = r.reason;
  if (r.holds) j["holds"] = *r.holds;
  if (r.lhs) j["lhs"] = rat_to_string(*r.lhs);
  if (r.rhs) j["rhs"] = rat_to_string(*r.rhs);
  if (!r.relation.empty()) j["relation"] = r.relation;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline nlohmann::json checks_to_json(const std::vector<CheckResult>& rs) {
  nlohmann::json arr = nlohmann::json::array();
  for (const CheckResult& r : rs) arr.push_back(check_to_json(r));
  return arr;
}

}  // namespace lf
