#pragma once

#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lf/fibration.hpp"

namespace lf {

struct ParseDiagnostic {
  enum class Severity { error, warning };
  int line = 0;
  int column = 0;
  std::string message;
  Severity severity = Severity::error;
};

inline std::string render_diagnostic(const ParseDiagnostic& d) {
  std::ostringstream os;
  os << d.line << ":" << d.column << ": "
     << (d.severity == ParseDiagnostic::Severity::error ? "error" : "warning") << ": " << d.message;
  return os.str();
}

struct ParseResult {
  std::optional<Factorization> factorization;
  std::vector<ParseDiagnostic> diagnostics;

  bool ok() const { return factorization.has_value(); }
  bool has_errors() const {
    for (const auto& d : diagnostics)
      if (d.severity == ParseDiagnostic::Severity::error) return true;
    return false;
  }
};

namespace dsl {

enum class Tok { ident, integer, string, lbrace, rbrace, lparen, rparen, comma, equals, newline, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  int line = 1;
  int column = 1;
};

/// Splits the source into tokens with positions. Unknown bytes become
/// diagnostics, never exceptions; '#' starts a comment running to end of line.
class Lexer {
 public:
  Lexer(std::string_view src, std::vector<ParseDiagnostic>& diags) : src_(src), diags_(diags) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
        continue;
      }
      if (c == '\n') {
        if (out.empty() || out.back().kind != Tok::newline) out.push_back(make(Tok::newline, "\n"));
        advance();
        continue;
      }
      if (c == ' ' || c == '\t' || c == '\r') {
        advance();
        continue;
      }
      if (c == '{') { out.push_back(make(Tok::lbrace, "{")); advance(); continue; }
      if (c == '}') { out.push_back(make(Tok::rbrace, "}")); advance(); continue; }
      if (c == '(') { out.push_back(make(Tok::lparen, "(")); advance(); continue; }
      if (c == ')') { out.push_back(make(Tok::rparen, ")")); advance(); continue; }
      if (c == ',') { out.push_back(make(Tok::comma, ",")); advance(); continue; }
      if (c == '=') { out.push_back(make(Tok::equals, "=")); advance(); continue; }
      if (c == '"') {
        Token t = make(Tok::string, "");
        advance();
        bool closed = false;
        while (pos_ < src_.size()) {
          char d = src_[pos_];
          if (d == '"') { closed = true; advance(); break; }
          if (d == '\n') break;
          if (d == '\\' && pos_ + 1 < src_.size() && (src_[pos_ + 1] == '"' || src_[pos_ + 1] == '\\')) advance();
          t.text += src_[pos_];
          advance();
        }
        if (!closed) diag(t.line, t.column, "unterminated string literal");
        out.push_back(std::move(t));
        continue;
      }
      if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
        Token t = make(Tok::integer, "");
        t.text += c;
        advance();
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          t.text += src_[pos_];
          advance();
        }
        if (t.text == "-")
          diag(t.line, t.column, "stray '-' without digits");
        else
          out.push_back(std::move(t));
        continue;
      }
      if (c == '_' || std::isalpha(static_cast<unsigned char>(c))) {
        Token t = make(Tok::ident, "");
        while (pos_ < src_.size()) {
          char d = src_[pos_];
          if (d == '_' || std::isalnum(static_cast<unsigned char>(d))) {
            t.text += d;
            advance();
          } else {
            break;
          }
        }
        out.push_back(std::move(t));
        continue;
      }
      diag(line_, col_, std::string("unexpected byte '") +
                            (std::isprint(static_cast<unsigned char>(c)) ? std::string(1, c)
                                                                         : std::string("\\x")) +
                            "'");
      advance();
    }
    out.push_back(make(Tok::end, ""));
    return out;
  }

 private:
  Token make(Tok k, std::string text) const { return Token{k, std::move(text), line_, col_}; }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void diag(int line, int col, std::string msg) {
    diags_.push_back({line, col, std::move(msg), ParseDiagnostic::Severity::error});
  }

  std::string_view src_;
  std::vector<ParseDiagnostic>& diags_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

struct Pos {
  int line = 1;
  int column = 1;
};

struct RawCurve {
  std::string name;
  bool separating = false;
  std::vector<Int> coords;
  Int side_genus = 0;
  Pos pos;
};

struct RawFlag {
  std::string key;
  std::string value;  // raw text; quoted strings already unescaped
  bool is_string = false;
  Pos pos;
};

struct RawDocument {
  std::string name;
  std::optional<Int> fiber_genus;
  Pos fiber_genus_pos;
  std::optional<Int> base_genus;
  Pos base_genus_pos;
  std::optional<std::string> convention;
  Pos convention_pos;
  std::vector<RawCurve> curves;
  std::vector<std::pair<std::string, Pos>> word;
  std::vector<std::vector<std::vector<Int>>> handles;  // matrices -> rows -> entries
  Pos handles_pos;
  std::vector<RawFlag> flags;
  Pos end_pos;
};

/// Recursive-descent pass over the token stream. Statement-level errors are
/// recorded and recovery skips to the next line, so one bad line does not
/// hide later ones.
class Parser {
 public:
  Parser(std::vector<Token> toks, std::vector<ParseDiagnostic>& diags)
      : toks_(std::move(toks)), diags_(diags) {}

  std::optional<RawDocument> run() {
    skip_newlines();
    if (!expect_ident("fibration")) return std::nullopt;
    if (peek().kind != Tok::string) {
      err(peek(), "expected a quoted fibration name");
      return std::nullopt;
    }
    doc_.name = next().text;
    if (!expect(Tok::lbrace, "'{'")) return std::nullopt;
    skip_newlines();
    while (peek().kind != Tok::rbrace && peek().kind != Tok::end) {
      statement();
      skip_newlines();
    }
    doc_.end_pos = {peek().line, peek().column};
    if (!expect(Tok::rbrace, "'}' closing the fibration block")) return std::nullopt;
    skip_newlines();
    if (peek().kind != Tok::end) err(peek(), "unexpected trailing content after the fibration block");
    return doc_;
  }

 private:
  void statement() {
    const Token& t = peek();
    if (t.kind != Tok::ident) {
      err(t, "expected a statement keyword");
      recover();
      return;
    }
    if (t.text == "fiber_genus") {
      next();
      if (doc_.fiber_genus) warn(t, "fiber_genus given more than once; last value wins");
      doc_.fiber_genus_pos = {t.line, t.column};
      doc_.fiber_genus = integer_arg("fiber_genus");
    } else if (t.text == "base_genus") {
      next();
      if (doc_.base_genus) warn(t, "base_genus given more than once; last value wins");
      doc_.base_genus_pos = {t.line, t.column};
      doc_.base_genus = integer_arg("base_genus");
    } else if (t.text == "convention") {
      next();
      doc_.convention_pos = {t.line, t.column};
      if (peek().kind != Tok::string) {
        err(peek(), "expected a quoted convention string");
      } else {
        doc_.convention = next().text;
      }
    } else if (t.text == "curve") {
      curve_statement();
    } else if (t.text == "word") {
      next();
      int count = 0;
      while (peek().kind == Tok::ident) {
        const Token& w = next();
        doc_.word.push_back({w.text, {w.line, w.column}});
        ++count;
      }
      if (count == 0) err(t, "'word' requires at least one curve name");
    } else if (t.text == "handles") {
      handles_block();
      return;
    } else if (t.text == "flags") {
      flags_block();
      return;
    } else {
      err(t, "unknown statement '" + t.text + "'");
      recover();
      return;
    }
    end_of_statement();
  }

  void curve_statement() {
    const Token& kw = next();  // 'curve'
    if (peek().kind != Tok::ident) {
      err(peek(), "expected a curve name");
      recover();
      return;
    }
    RawCurve c;
    const Token& nm = next();
    c.name = nm.text;
    c.pos = {nm.line, nm.column};
    if (peek().kind != Tok::ident || (peek().text != "nonsep" && peek().text != "sep")) {
      err(peek(), "expected 'nonsep' or 'sep' after the curve name");
      recover();
      return;
    }
    const std::string kind = next().text;
    if (kind == "nonsep") {
      c.separating = false;
      if (!expect(Tok::lparen, "'(' opening the class coordinates")) {
        recover();
        return;
      }
      for (;;) {
        if (peek().kind != Tok::integer) {
          err(peek(), "expected an integer coordinate");
          recover();
          return;
        }
        c.coords.push_back(Int(next().text));
        if (peek().kind == Tok::comma) {
          next();
          continue;
        }
        break;
      }
      if (!expect(Tok::rparen, "')' closing the class coordinates")) {
        recover();
        return;
      }
    } else {
      c.separating = true;
      if (peek().kind != Tok::integer) {
        err(peek(), "expected the side genus of the separating curve");
        recover();
        return;
      }
      c.side_genus = Int(next().text);
    }
    (void)kw;
    doc_.curves.push_back(std::move(c));
  }

  void handles_block() {
    const Token& kw = next();  // 'handles'
    doc_.handles_pos = {kw.line, kw.column};
    if (!expect(Tok::lbrace, "'{' opening the handles block")) {
      recover();
      return;
    }
    skip_newlines();
    while (peek().kind == Tok::ident && peek().text == "matrix") {
      next();
      skip_newlines();
      std::vector<std::vector<Int>> rows;
      while (peek().kind == Tok::integer) {
        std::vector<Int> row;
        while (peek().kind == Tok::integer) row.push_back(Int(next().text));
        rows.push_back(std::move(row));
        skip_newlines();
      }
      doc_.handles.push_back(std::move(rows));
    }
    if (!expect(Tok::rbrace, "'}' closing the handles block")) recover();
  }

  void flags_block() {
    next();  // 'flags'
    if (!expect(Tok::lbrace, "'{' opening the flags block")) {
      recover();
      return;
    }
    skip_newlines();
    while (peek().kind == Tok::ident) {
      RawFlag f;
      const Token& key = next();
      f.key = key.text;
      f.pos = {key.line, key.column};
      if (!expect(Tok::equals, "'=' after the flag name")) {
        recover_inside_block();
        continue;
      }
      const Token& val = peek();
      if (val.kind == Tok::ident || val.kind == Tok::integer) {
        f.value = next().text;
      } else if (val.kind == Tok::string) {
        f.value = next().text;
        f.is_string = true;
      } else {
        err(val, "expected a flag value");
        recover_inside_block();
        continue;
      }
      doc_.flags.push_back(std::move(f));
      while (peek().kind == Tok::comma || peek().kind == Tok::newline) next();
    }
    if (!expect(Tok::rbrace, "'}' closing the flags block")) recover();
  }

  std::optional<Int> integer_arg(const std::string& what) {
    if (peek().kind != Tok::integer) {
      err(peek(), "expected an integer after '" + what + "'");
      return std::nullopt;
    }
    return Int(next().text);
  }

  void end_of_statement() {
    if (peek().kind == Tok::newline || peek().kind == Tok::rbrace || peek().kind == Tok::end) return;
    err(peek(), "unexpected token '" + peek().text + "' at end of statement");
    recover();
  }

  void recover() {
    while (peek().kind != Tok::newline && peek().kind != Tok::end) next();
  }

  void recover_inside_block() {
    while (peek().kind != Tok::newline && peek().kind != Tok::rbrace && peek().kind != Tok::end) next();
  }

  void skip_newlines() {
    while (peek().kind == Tok::newline) next();
  }

  bool expect(Tok k, const std::string& what) {
    if (peek().kind == k) {
      next();
      return true;
    }
    err(peek(), "expected " + what);
    return false;
  }

  bool expect_ident(const std::string& word) {
    if (peek().kind == Tok::ident && peek().text == word) {
      next();
      return true;
    }
    err(peek(), "expected '" + word + "'");
    return false;
  }

  const Token& peek() const { return toks_[i_]; }
  const Token& next() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }

  void err(const Token& t, std::string msg) {
    diags_.push_back({t.line, t.column, std::move(msg), ParseDiagnostic::Severity::error});
  }
  void warn(const Token& t, std::string msg) {
    diags_.push_back({t.line, t.column, std::move(msg), ParseDiagnostic::Severity::warning});
  }

  std::vector<Token> toks_;
  std::vector<ParseDiagnostic>& diags_;
  std::size_t i_ = 0;
  RawDocument doc_;
};

inline void flag_error(std::vector<ParseDiagnostic>& diags, const RawFlag& f, std::string msg) {
  diags.push_back({f.pos.line, f.pos.column, std::move(msg), ParseDiagnostic::Severity::error});
}

inline std::optional<bool> parse_bool_flag(const RawFlag& f, std::vector<ParseDiagnostic>& diags) {
  if (!f.is_string && f.value == "true") return true;
  if (!f.is_string && f.value == "false") return false;
  flag_error(diags, f, "flag '" + f.key + "' expects true or false");
  return std::nullopt;
}

/// Semantic validation of a raw document; emits positioned diagnostics and
/// builds the Factorization only when everything is consistent.
inline std::optional<Factorization> elaborate(const RawDocument& raw,
                                              std::vector<ParseDiagnostic>& diags) {
  auto err = [&](Pos p, std::string msg) {
    diags.push_back({p.line, p.column, std::move(msg), ParseDiagnostic::Severity::error});
  };

  bool bad = false;
  if (!raw.fiber_genus) {
    err(raw.end_pos, "missing fiber_genus");
    bad = true;
  }
  if (raw.fiber_genus && (*raw.fiber_genus < 0 || *raw.fiber_genus > 1000000)) {
    err(raw.fiber_genus_pos, "fiber_genus out of range");
    bad = true;
  }
  Int base = raw.base_genus.value_or(Int(0));
  if (base < 0 || base > 1000000) {
    err(raw.base_genus_pos, "base_genus out of range");
    bad = true;
  }
  if (raw.convention && *raw.convention != composition_convention()) {
    err(raw.convention_pos, "unsupported composition convention '" + *raw.convention +
                                "' (this tool uses '" + std::string(composition_convention()) + "')");
    bad = true;
  }
  if (bad) return std::nullopt;

  const int g = static_cast<int>(raw.fiber_genus->get_si());
  const int h = static_cast<int>(base.get_si());

  std::vector<std::pair<std::string, Curve>> curves;
  for (const RawCurve& rc : raw.curves) {
    for (const auto& [nm, c] : curves)
      if (nm == rc.name) {
        err(rc.pos, "duplicate curve name '" + rc.name + "'");
        bad = true;
      }
    if (rc.separating) {
      if (g < 2) {
        err(rc.pos, "separating curve '" + rc.name + "' requires fiber genus >= 2");
        bad = true;
        continue;
      }
      if (rc.side_genus < 1 || rc.side_genus > g - 1) {
        err(rc.pos, "side genus of '" + rc.name + "' must lie in [1, g-1] = [1, " +
                        std::to_string(g - 1) + "]");
        bad = true;
        continue;
      }
      curves.push_back({rc.name, Curve::separating(static_cast<int>(rc.side_genus.get_si()))});
    } else {
      if (static_cast<int>(rc.coords.size()) != 2 * g) {
        err(rc.pos, "class of '" + rc.name + "' must have 2g = " + std::to_string(2 * g) +
                        " coordinates, got " + std::to_string(rc.coords.size()));
        bad = true;
        continue;
      }
      if (!is_primitive(rc.coords)) {
        err(rc.pos, "class of '" + rc.name + "' is not primitive");
        bad = true;
        continue;
      }
      curves.push_back({rc.name, Curve::non_separating(rc.coords)});
    }
  }

  std::vector<std::string> word;
  for (const auto& [nm, pos] : raw.word) {
    bool declared = false;
    for (const RawCurve& rc : raw.curves)
      if (rc.name == nm) {
        declared = true;
        break;
      }
    if (!declared) {
      err(pos, "undeclared curve '" + nm + "' in word");
      bad = true;
      continue;
    }
    word.push_back(nm);
  }
  if (raw.word.empty()) {
    err(raw.end_pos, "the twist word is missing or empty");
    bad = true;
  }

  std::optional<std::vector<SymplecticMatrix>> handles;
  if (!raw.handles.empty()) {
    if (h == 0) {
      err(raw.handles_pos, "handles are only meaningful when base_genus > 0");
      bad = true;
    } else if (static_cast<int>(raw.handles.size()) != 2 * h) {
      err(raw.handles_pos, "expected 2h = " + std::to_string(2 * h) + " handle matrices, got " +
                               std::to_string(raw.handles.size()));
      bad = true;
    } else {
      std::vector<SymplecticMatrix> hs;
      for (std::size_t k = 0; k < raw.handles.size() && !bad; ++k) {
        const auto& rows = raw.handles[k];
        if (static_cast<int>(rows.size()) != 2 * g) {
          err(raw.handles_pos, "handle matrix " + std::to_string(k + 1) + " must have 2g rows");
          bad = true;
          break;
        }
        IntegerMatrix m(2 * g, 2 * g);
        for (int i = 0; i < 2 * g; ++i) {
          if (static_cast<int>(rows[i].size()) != 2 * g) {
            err(raw.handles_pos,
                "handle matrix " + std::to_string(k + 1) + " row " + std::to_string(i + 1) +
                    " must have 2g entries");
            bad = true;
            break;
          }
          for (int j = 0; j < 2 * g; ++j) m(i, j) = rows[i][j];
        }
        if (bad) break;
        if (!is_symplectic(m, g)) {
          err(raw.handles_pos, "handle matrix " + std::to_string(k + 1) +
                                   " does not preserve the intersection form");
          bad = true;
          break;
        }
        hs.push_back(SymplecticMatrix::trusted(g, std::move(m)));
      }
      if (!bad) handles = std::move(hs);
    }
  }

  GroundTruthFlags flags;
  std::optional<bool> relatively_minimal;
  for (const RawFlag& f : raw.flags) {
    if (f.key == "rational_or_ruled") {
      flags.rational_or_ruled = parse_bool_flag(f, diags);
      if (!flags.rational_or_ruled) bad = true;
    } else if (f.key == "ruling_base_genus" || f.key == "ruled_base_genus") {
      try {
        flags.ruled_base_genus = std::stoi(f.value);
      } catch (...) {
        flag_error(diags, f, "flag '" + f.key + "' expects a small nonnegative integer");
        bad = true;
      }
    } else if (f.key == "blowup_of_sphere_bundle") {
      flags.blowup_of_sphere_bundle = parse_bool_flag(f, diags);
      if (!flags.blowup_of_sphere_bundle) bad = true;
    } else if (f.key == "known_manifold") {
      flags.known_manifold = f.value;
    } else if (f.key == "relatively_minimal") {
      relatively_minimal = parse_bool_flag(f, diags);
      if (!relatively_minimal) bad = true;
    } else {
      flag_error(diags, f, "unknown flag '" + f.key + "'");
      bad = true;
    }
  }
  if (flags.ruled_base_genus && !(flags.rational_or_ruled && *flags.rational_or_ruled)) {
    err(raw.end_pos, "ruling_base_genus requires rational_or_ruled = true");
    bad = true;
  }

  if (bad) return std::nullopt;
  try {
    return Factorization(raw.name, g, h, std::move(curves), std::move(word), std::move(handles),
                         std::move(flags), relatively_minimal);
  } catch (const error& e) {
    err(raw.end_pos, e.what());
    return std::nullopt;
  }
}

}  // namespace dsl

/// Parses the line-oriented fibration DSL. Arbitrary byte noise yields
/// diagnostics, never exceptions.
inline ParseResult parse_dsl(std::string_view text) {
  ParseResult out;
  dsl::Lexer lex(text, out.diagnostics);
  std::vector<dsl::Token> toks = lex.run();
  dsl::Parser parser(std::move(toks), out.diagnostics);
  std::optional<dsl::RawDocument> raw = parser.run();
  if (!raw || out.has_errors()) return out;
  out.factorization = dsl::elaborate(*raw, out.diagnostics);
  if (out.has_errors()) out.factorization.reset();
  return out;
}

/// Canonical DSL form; parse(serialize_dsl(f)) == f on every field.
inline std::string serialize_dsl(const Factorization& f) {
  std::ostringstream os;
  os << "fibration \"" << f.name() << "\" {\n";
  os << "  fiber_genus " << f.fiber_genus() << "\n";
  os << "  base_genus " << f.base_genus() << "\n";
  os << "  convention \"" << composition_convention() << "\"\n";
  for (const auto& [name, c] : f.curves()) {
    if (c.separating()) {
      os << "  curve " << name << " sep " << c.side_genus() << "\n";
    } else {
      os << "  curve " << name << " nonsep (";
      for (std::size_t i = 0; i < c.cls().size(); ++i)
        os << (i ? "," : "") << c.cls()[i].get_str();
      os << ")\n";
    }
  }
  for (std::size_t i = 0; i < f.word().size(); i += 12) {
    os << "  word";
    for (std::size_t j = i; j < f.word().size() && j < i + 12; ++j) os << " " << f.word()[j];
    os << "\n";
  }
  if (f.handle_monodromies()) {
    os << "  handles {\n";
    for (const SymplecticMatrix& m : *f.handle_monodromies()) {
      os << "    matrix\n";
      for (int i = 0; i < m.matrix().rows(); ++i) {
        os << "   ";
        for (int j = 0; j < m.matrix().cols(); ++j) os << " " << m.matrix()(i, j).get_str();
        os << "\n";
      }
    }
    os << "  }\n";
  }
  const GroundTruthFlags& fl = f.flags();
  const bool any_flag = fl.rational_or_ruled || fl.ruled_base_genus || fl.blowup_of_sphere_bundle ||
                        fl.known_manifold || f.relatively_minimal();
  if (any_flag) {
    os << "  flags {\n";
    if (fl.rational_or_ruled)
      os << "    rational_or_ruled = " << (*fl.rational_or_ruled ? "true" : "false") << "\n";
    if (fl.ruled_base_genus) os << "    ruling_base_genus = " << *fl.ruled_base_genus << "\n";
    if (fl.blowup_of_sphere_bundle)
      os << "    blowup_of_sphere_bundle = " << (*fl.blowup_of_sphere_bundle ? "true" : "false")
         << "\n";
    if (fl.known_manifold) os << "    known_manifold = \"" << *fl.known_manifold << "\"\n";
    if (f.relatively_minimal())
      os << "    relatively_minimal = " << (*f.relatively_minimal() ? "true" : "false") << "\n";
    os << "  }\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace lf
