#include "freenc/textio.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>

#include "freenc/error.hpp"
#include "freenc/qmatrix.hpp"

namespace freenc {

std::string format_real(double x) {
  if (x == 0.0) return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string format_complex(Complex z) {
  if (z.imag() == 0.0) return format_real(z.real());
  std::string s = format_real(z.real());
  s += z.imag() < 0 ? '-' : '+';
  s += format_real(std::abs(z.imag()));
  s += 'i';
  return s;
}

std::string format_rational(const Rational& q) { return q.str(); }

std::string to_string(const QMatrix& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    s += '[';
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j) s += ' ';
      s += m(i, j).str();
    }
    s += "]\n";
  }
  return s;
}

namespace textio {

namespace {

// A line of input with its 1-based number, for error positions.
struct Line {
  std::string text;
  std::size_t number = 0;
};

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-blank, non-comment line.
  std::optional<Line> next() {
    if (pending_) {
      auto l = std::move(*pending_);
      pending_.reset();
      return l;
    }
    std::string s;
    while (std::getline(in_, s)) {
      ++number_;
      if (!s.empty() && s.back() == '\r') s.pop_back();
      const auto first = s.find_first_not_of(" \t");
      if (first == std::string::npos || s[first] == '#') continue;
      return Line{s, number_};
    }
    return std::nullopt;
  }
  void push_back(Line l) { pending_ = std::move(l); }
  std::size_t line_number() const { return number_; }

 private:
  std::istream& in_;
  std::size_t number_ = 0;
  std::optional<Line> pending_;
};

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

std::vector<Token> split_ws(std::string_view s, std::size_t col0 = 1) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    if (i >= s.size()) break;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    out.push_back({std::string(s.substr(start, i - start)), col0 + start});
  }
  return out;
}

double parse_real(std::string_view s, std::size_t& used) {
  double v = 0.0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  if (b != e && *b == '+') ++b;
  auto res = std::from_chars(b, e, v);
  if (res.ec != std::errc()) throw std::invalid_argument("not a number");
  used = static_cast<std::size_t>(res.ptr - s.data());
  return v;
}

Letter parse_letter(std::string_view tok) {
  if (tok.size() < 2 || tok[0] != 'x') throw std::invalid_argument("expected x<k> or x<k>*");
  bool star = false;
  if (tok.back() == '*') {
    star = true;
    tok.remove_suffix(1);
  }
  unsigned v = 0;
  auto res = std::from_chars(tok.data() + 1, tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size() || v == 0 || v > 65535)
    throw std::invalid_argument("bad variable index");
  return Letter{static_cast<std::uint16_t>(v), star};
}

ParseError at(const std::string& what, const Line& l, std::size_t col) {
  return ParseError(what, l.number, col);
}

// Header: MAGIC key=value ...
std::map<std::string, std::string> parse_header(const Line& l, std::string_view magic) {
  const auto toks = split_ws(l.text);
  if (toks.empty() || toks[0].text != magic)
    throw at("expected header " + std::string(magic), l, toks.empty() ? 1 : toks[0].column);
  std::map<std::string, std::string> kv;
  for (std::size_t i = 1; i < toks.size(); ++i) {
    const auto eq = toks[i].text.find('=');
    if (eq == std::string::npos) throw at("expected key=value", l, toks[i].column);
    kv[toks[i].text.substr(0, eq)] = toks[i].text.substr(eq + 1);
  }
  return kv;
}

std::optional<Involution> parse_mode(const std::map<std::string, std::string>& kv, const Line& l) {
  auto it = kv.find("mode");
  if (it == kv.end()) return std::nullopt;
  if (it->second == "free") return Involution::None;
  if (it->second == "transpose") return Involution::Transpose;
  if (it->second == "adjoint") return Involution::Adjoint;
  throw at("unknown mode '" + it->second + "'", l, 1);
}

Word parse_word_tokens(const std::vector<Token>& toks, std::size_t from, const Line& l) {
  std::vector<Letter> letters;
  for (std::size_t i = from; i < toks.size(); ++i) {
    if (toks[i].text == "1" && toks.size() == from + 1) break;
    try {
      letters.push_back(parse_letter(toks[i].text));
    } catch (const std::invalid_argument& e) {
      throw at(std::string(e.what()) + " ('" + toks[i].text + "')", l, toks[i].column);
    }
  }
  return Word(std::move(letters));
}

Complex parse_coeff(const Line& l, std::size_t& colon) {
  colon = l.text.find(':');
  if (colon == std::string::npos) throw at("expected '<coeff> : <monomial>'", l, 1);
  const std::string coeff_text(l.text.substr(0, colon));
  const auto toks = split_ws(coeff_text);
  if (toks.size() != 1) throw at("expected a single coefficient", l, 1);
  try {
    return parse_complex(toks[0].text);
  } catch (const std::invalid_argument&) {
    throw at("bad coefficient '" + toks[0].text + "'", l, toks[0].column);
  }
}

std::string mode_key(Involution m) { return " mode=" + to_string(m); }

template <class P>
std::string format_terms(const P& p, auto format_coeff, auto format_mono) {
  std::string s;
  for (const auto& [m, c] : p.terms()) s += format_coeff(c) + " : " + format_mono(m) + "\n";
  return s;
}

// Parses one NCPOLY1 block; stops before the next header line.
NCPoly read_ncpoly_block(LineReader& r) {
  auto head = r.next();
  if (!head) throw ParseError("empty input, expected NCPOLY1", r.line_number() + 1, 1);
  const auto kv = parse_header(*head, "NCPOLY1");
  const auto declared = parse_mode(kv, *head);
  std::vector<std::pair<Word, Complex>> terms;
  while (auto l = r.next()) {
    if (l->text.rfind("NCPOLY1", l->text.find_first_not_of(" \t")) == l->text.find_first_not_of(" \t")) {
      r.push_back(std::move(*l));
      break;
    }
    std::size_t colon = 0;
    const Complex c = parse_coeff(*l, colon);
    const auto toks = split_ws(std::string_view(l->text).substr(colon + 1), colon + 2);
    if (toks.empty()) throw at("missing word after ':'", *l, colon + 1);
    terms.emplace_back(parse_word_tokens(toks, 0, *l), c);
  }
  bool starred = false;
  for (const auto& t : terms) starred = starred || t.first.has_starred();
  const Involution mode = declared.value_or(starred ? Involution::Transpose : Involution::None);
  NCPoly p(mode);
  for (const auto& [w, c] : terms) {
    try {
      p.add_term(w, c);
    } catch (const ModeError& e) {
      throw ParseError(e.what(), head->number, 1);
    }
  }
  return p;
}

Matrix parse_inline_matrix(std::string_view body, const Line& l, std::size_t col, std::size_t n) {
  // body is the text between '[' and ']'
  std::vector<std::vector<Complex>> rows(1);
  std::size_t i = 0;
  while (i <= body.size()) {
    const std::size_t semi = body.find(';', i);
    const std::string_view row = body.substr(i, semi == std::string_view::npos ? body.size() - i : semi - i);
    for (const auto& t : split_ws(row, col + i)) {
      try {
        rows.back().push_back(parse_complex(t.text));
      } catch (const std::invalid_argument&) {
        throw at("bad matrix entry '" + t.text + "'", l, t.column);
      }
    }
    if (semi == std::string_view::npos) break;
    rows.emplace_back();
    i = semi + 1;
  }
  if (rows.size() != n) throw at("inline matrix must have " + std::to_string(n) + " rows", l, col);
  Matrix m(n);
  for (std::size_t r = 0; r < n; ++r) {
    if (rows[r].size() != n)
      throw at("inline matrix row must have " + std::to_string(n) + " entries", l, col);
    for (std::size_t c = 0; c < n; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

std::string inline_matrix(const Matrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) s += "; ";
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j) s += ' ';
      s += format_complex(m(i, j));
    }
  }
  return s + "]";
}

std::size_t parse_size(const std::map<std::string, std::string>& kv, const std::string& key,
                       const Line& l) {
  auto it = kv.find(key);
  if (it == kv.end()) throw at("missing " + key + "=", l, 1);
  std::size_t v = 0;
  auto res = std::from_chars(it->second.data(), it->second.data() + it->second.size(), v);
  if (res.ec != std::errc() || res.ptr != it->second.data() + it->second.size())
    throw at("bad value for " + key, l, 1);
  return v;
}

}  // namespace

Complex parse_complex(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty number");
  if (s == "i" || s == "+i") return {0.0, 1.0};
  if (s == "-i") return {0.0, -1.0};
  std::size_t used = 0;
  const double a = parse_real(s, used);
  if (used == s.size()) return {a, 0.0};
  if (s[used] == 'i' && used + 1 == s.size()) return {0.0, a};
  if (s.back() != 'i' || (s[used] != '+' && s[used] != '-'))
    throw std::invalid_argument("not a complex number");
  std::string_view rest = s.substr(used, s.size() - used - 1);
  if (rest == "+") return {a, 1.0};
  if (rest == "-") return {a, -1.0};
  std::size_t used2 = 0;
  const double b = parse_real(rest, used2);
  if (used2 != rest.size()) throw std::invalid_argument("not a complex number");
  return {a, b};
}

Word parse_word(std::string_view s) {
  const Line l{std::string(s), 1};
  return parse_word_tokens(split_ws(s), 0, l);
}

std::string write_ncpoly(const NCPoly& p) {
  return "NCPOLY1" + mode_key(p.mode()) + "\n" +
         format_terms(p, [](const Complex& c) { return format_complex(c); },
                      [](const Word& w) { return to_string(w); });
}

std::string write_qncpoly(const QNCPoly& p) {
  return "NCPOLY1" + mode_key(p.mode()) + "\n" +
         format_terms(p, [](const Rational& c) { return format_rational(c); },
                      [](const Word& w) { return to_string(w); });
}

std::string write_ncpoly_tuple(const std::vector<NCPoly>& ps) {
  std::string s;
  for (const NCPoly& p : ps) s += write_ncpoly(p);
  return s;
}

NCPoly read_ncpoly(std::istream& in) {
  LineReader r(in);
  NCPoly p = read_ncpoly_block(r);
  if (auto extra = r.next()) throw at("unexpected content after polynomial", *extra, 1);
  return p;
}

std::vector<NCPoly> read_ncpoly_tuple(std::istream& in) {
  LineReader r(in);
  std::vector<NCPoly> out;
  while (auto l = r.next()) {
    r.push_back(std::move(*l));
    out.push_back(read_ncpoly_block(r));
  }
  if (out.empty()) throw ParseError("empty input, expected NCPOLY1", 1, 1);
  return out;
}

std::string write_tracepoly(const TracePoly& p) {
  return "TRPOLY1" + mode_key(p.mode()) + "\n" +
         format_terms(p, [](const Complex& c) { return format_complex(c); },
                      [](const TraceMonomial& m) { return to_string(m); });
}

TracePoly read_tracepoly(std::istream& in) {
  LineReader r(in);
  auto head = r.next();
  if (!head) throw ParseError("empty input, expected TRPOLY1", 1, 1);
  const auto kv = parse_header(*head, "TRPOLY1");
  const auto declared = parse_mode(kv, *head);
  std::vector<std::pair<TraceMonomial, Complex>> terms;
  bool starred = false;
  while (auto l = r.next()) {
    std::size_t colon = 0;
    const Complex c = parse_coeff(*l, colon);
    std::string_view rest = std::string_view(l->text).substr(colon + 1);
    std::size_t col = colon + 2;
    TraceMonomial m;
    // tr(...) factors first, then the tail word
    for (;;) {
      const auto first = rest.find_first_not_of(" \t");
      if (first == std::string_view::npos) break;
      col += first;
      rest.remove_prefix(first);
      if (rest.substr(0, 3) != "tr(") break;
      const auto close = rest.find(')');
      if (close == std::string_view::npos) throw at("unclosed tr(", *l, col);
      const std::string_view inner = rest.substr(3, close - 3);
      m.pure.push_back(parse_word_tokens(split_ws(inner, col + 3), 0, *l));
      rest.remove_prefix(close + 1);
      col += close + 1;
    }
    const auto toks = split_ws(rest, col);
    if (toks.empty() && m.pure.empty()) throw at("missing monomial after ':'", *l, colon + 1);
    m.tail = parse_word_tokens(toks, 0, *l);
    starred = starred || m.tail.has_starred();
    for (const Word& w : m.pure) starred = starred || w.has_starred();
    terms.emplace_back(std::move(m), c);
  }
  TracePoly p(declared.value_or(starred ? Involution::Transpose : Involution::None));
  for (const auto& [m, c] : terms) {
    try {
      p.add_term(m, c);
    } catch (const ModeError& e) {
      throw ParseError(e.what(), head->number, 1);
    }
  }
  return p;
}

std::string write_genpoly(const GenPoly& p) {
  std::string s = "GENPOLY1 n=" + std::to_string(p.coeff_size()) + mode_key(p.mode()) + "\n";
  for (const GenTerm& t : p.terms()) {
    s += "deg=" + std::to_string(t.degree()) + "\n";
    s += inline_matrix(t.mats[0]);
    for (std::size_t i = 0; i < t.letters.size(); ++i) {
      s += ' ' + to_string(Word{t.letters[i]}) + ' ';
      s += inline_matrix(t.mats[i + 1]);
    }
    s += "\n";
  }
  return s;
}

GenPoly read_genpoly(std::istream& in) {
  LineReader r(in);
  auto head = r.next();
  if (!head) throw ParseError("empty input, expected GENPOLY1", 1, 1);
  const auto kv = parse_header(*head, "GENPOLY1");
  const std::size_t n = parse_size(kv, "n", *head);
  if (n == 0) throw at("n must be positive", *head, 1);
  std::vector<GenTerm> terms;
  bool starred = false;
  while (auto l = r.next()) {
    const auto dtoks = split_ws(l->text);
    if (dtoks.size() != 1 || dtoks[0].text.rfind("deg=", 0) != 0)
      throw at("expected deg=<l>", *l, dtoks.empty() ? 1 : dtoks[0].column);
    std::size_t deg = 0;
    const std::string& dv = dtoks[0].text;
    auto res = std::from_chars(dv.data() + 4, dv.data() + dv.size(), deg);
    if (res.ec != std::errc() || res.ptr != dv.data() + dv.size())
      throw at("bad degree", *l, dtoks[0].column + 4);
    auto body = r.next();
    if (!body) throw ParseError("missing term body after deg=", r.line_number() + 1, 1);
    GenTerm t;
    std::string_view rest = body->text;
    std::size_t col = 1;
    for (;;) {
      const auto first = rest.find_first_not_of(" \t");
      if (first == std::string_view::npos) break;
      col += first;
      rest.remove_prefix(first);
      if (rest.front() == '[') {
        const auto close = rest.find(']');
        if (close == std::string_view::npos) throw at("unclosed '['", *body, col);
        t.mats.push_back(parse_inline_matrix(rest.substr(1, close - 1), *body, col + 1, n));
        rest.remove_prefix(close + 1);
        col += close + 1;
      } else {
        const auto end = rest.find_first_of(" \t[");
        const std::string_view tok = rest.substr(0, end);
        try {
          t.letters.push_back(parse_letter(tok));
        } catch (const std::invalid_argument& e) {
          throw at(e.what(), *body, col);
        }
        if (t.letters.size() != t.mats.size())
          throw at("letters and matrices must alternate", *body, col);
        rest.remove_prefix(tok.size());
        col += tok.size();
      }
    }
    if (t.letters.size() != deg || t.mats.size() != deg + 1)
      throw at("term does not match deg=" + std::to_string(deg), *body, 1);
    for (Letter x : t.letters) starred = starred || x.starred;
    terms.push_back(std::move(t));
  }
  const auto declared = parse_mode(kv, *head);
  GenPoly p(n, declared.value_or(starred ? Involution::Transpose : Involution::None));
  for (GenTerm& t : terms) {
    try {
      p.add_term(std::move(t));
    } catch (const Error& e) {
      throw ParseError(e.what(), head->number, 1);
    }
  }
  return p;
}

std::string write_mattuple(const MatTuple& x) {
  const Field f = x.field();
  std::string s = "MTX1 n=" + std::to_string(x.level()) + " g=" + std::to_string(x.arity()) +
                  " field=" + to_string(f) + "\n";
  for (std::size_t k = 0; k < x.arity(); ++k) {
    if (k) s += "\n";
    for (std::size_t i = 0; i < x.level(); ++i) {
      for (std::size_t j = 0; j < x.level(); ++j) {
        if (j) s += ' ';
        s += f == Field::Real ? format_real(x[k].re(i, j)) : format_complex(x[k](i, j));
      }
      s += "\n";
    }
  }
  return s;
}

MatTuple read_mattuple(std::istream& in) {
  LineReader r(in);
  auto head = r.next();
  if (!head) throw ParseError("empty input, expected MTX1", 1, 1);
  const auto kv = parse_header(*head, "MTX1");
  const std::size_t n = parse_size(kv, "n", *head);
  const std::size_t g = parse_size(kv, "g", *head);
  auto fit = kv.find("field");
  Field field = Field::Real;
  if (fit != kv.end()) {
    if (fit->second == "complex")
      field = Field::Complex;
    else if (fit->second != "real")
      throw at("field must be real or complex", *head, 1);
  }
  std::vector<Matrix> mats;
  for (std::size_t k = 0; k < g; ++k) {
    Matrix m(n, field);
    for (std::size_t i = 0; i < n; ++i) {
      auto l = r.next();
      if (!l) throw ParseError("expected " + std::to_string(g) + " blocks of " + std::to_string(n) + " rows", r.line_number() + 1, 1);
      const auto toks = split_ws(l->text);
      if (toks.size() != n)
        throw at("expected " + std::to_string(n) + " entries", *l, toks.empty() ? 1 : toks.back().column);
      for (std::size_t j = 0; j < n; ++j) {
        Complex z;
        try {
          z = parse_complex(toks[j].text);
        } catch (const std::invalid_argument&) {
          throw at("bad entry '" + toks[j].text + "'", *l, toks[j].column);
        }
        if (field == Field::Real && z.imag() != 0.0)
          throw at("complex entry in a real tuple", *l, toks[j].column);
        m.set(i, j, z);
      }
    }
    mats.push_back(std::move(m));
  }
  if (auto extra = r.next()) throw at("unexpected content after last block", *extra, 1);
  if (g == 0) return MatTuple();
  return MatTuple(std::move(mats));
}

NCPoly ncpoly_from_string(const std::string& s) {
  std::istringstream in(s);
  return read_ncpoly(in);
}
std::vector<NCPoly> ncpoly_tuple_from_string(const std::string& s) {
  std::istringstream in(s);
  return read_ncpoly_tuple(in);
}
TracePoly tracepoly_from_string(const std::string& s) {
  std::istringstream in(s);
  return read_tracepoly(in);
}
GenPoly genpoly_from_string(const std::string& s) {
  std::istringstream in(s);
  return read_genpoly(in);
}
MatTuple mattuple_from_string(const std::string& s) {
  std::istringstream in(s);
  return read_mattuple(in);
}

}  // namespace textio
}  // namespace freenc
