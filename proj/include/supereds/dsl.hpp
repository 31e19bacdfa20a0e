#pragma once

// Expression language and script sessions.
//
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := '-' factor | atom ('^' nat)?
//   atom   := rational | ident | '(' expr ')'
//
// Differentials are ordinary identifiers of a domain context ("dx" for the
// coordinate "x"). With Q(i) enabled, the identifier "i" is the imaginary
// unit unless a generator of that name exists.

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "supereds/forms.hpp"
#include "supereds/superpoly.hpp"
#include "supereds/vector_field.hpp"

namespace supereds::dsl {

using Bindings = std::map<std::string, SuperPoly>;

namespace detail {

enum class Tok { number, ident, plus, minus, star, caret, lparen, rparen, end };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

inline std::vector<Token> lex(std::string_view src, int line, int col0) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto col = [&](std::size_t k) { return col0 + static_cast<int>(k); };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
      if (i < src.size() && src[i] == '/') {
        ++i;
        if (i >= src.size() || !std::isdigit(static_cast<unsigned char>(src[i])))
          throw ParseError("expected denominator after '/'", line, col(i));
        while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
      }
      out.push_back({Tok::number, std::string(src.substr(start, i - start)), line, col(start)});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_' || src[i] == '\''))
        ++i;
      out.push_back({Tok::ident, std::string(src.substr(start, i - start)), line, col(start)});
      continue;
    }
    Tok k;
    switch (c) {
      case '+': k = Tok::plus; break;
      case '-': k = Tok::minus; break;
      case '*': k = Tok::star; break;
      case '^': k = Tok::caret; break;
      case '(': k = Tok::lparen; break;
      case ')': k = Tok::rparen; break;
      default: throw ParseError(std::string("unexpected character '") + c + "'", line, col(i));
    }
    out.push_back({k, std::string(1, c), line, col(i)});
    ++i;
  }
  out.push_back({Tok::end, "", line, col(src.size())});
  return out;
}

class Parser {
 public:
  Parser(Context ctx, const Bindings* bindings, std::vector<Token> toks)
      : ctx_(std::move(ctx)), bindings_(bindings), toks_(std::move(toks)) {}

  SuperPoly parse() {
    SuperPoly v = expr();
    if (peek().kind != Tok::end) fail("unexpected '" + peek().text + "'");
    return v;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().line, peek().col); }

  SuperPoly expr() {
    SuperPoly v = term();
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      bool minus = take().kind == Tok::minus;
      SuperPoly t = term();
      if (minus) v -= t;
      else v += t;
    }
    return v;
  }
  SuperPoly term() {
    SuperPoly v = factor();
    while (peek().kind == Tok::star) {
      take();
      v = v * factor();
    }
    return v;
  }
  SuperPoly factor() {
    if (peek().kind == Tok::minus) {
      take();
      return -factor();
    }
    SuperPoly a = atom();
    if (peek().kind == Tok::caret) {
      take();
      if (peek().kind != Tok::number || peek().text.find('/') != std::string::npos)
        fail("exponent must be a natural number");
      if (peek().text.size() > 6) fail("exponent too large");
      unsigned long e = std::stoul(take().text);
      a = a.pow(static_cast<unsigned>(e));
    }
    return a;
  }
  SuperPoly atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::number: {
        take();
        mpq_class q(t.text, 10);
        if (q.get_den() == 0) throw ParseError("zero denominator", t.line, t.col);
        q.canonicalize();
        return SuperPoly::constant(ctx_, Scalar(q));
      }
      case Tok::ident: {
        take();
        if (auto g = ctx_->find(t.text)) return SuperPoly::generator(ctx_, *g);
        if (bindings_) {
          auto it = bindings_->find(t.text);
          if (it != bindings_->end()) return it->second;
        }
        if (t.text == "i" && ctx_->gaussian()) return SuperPoly::constant(ctx_, Scalar::imaginary_unit());
        throw ParseError("unknown identifier '" + t.text + "'", t.line, t.col);
      }
      case Tok::lparen: {
        take();
        SuperPoly v = expr();
        if (peek().kind != Tok::rparen) fail("expected ')'");
        take();
        return v;
      }
      default:
        fail(t.kind == Tok::end ? "unexpected end of expression" : "unexpected '" + t.text + "'");
    }
  }

  Context ctx_;
  const Bindings* bindings_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

inline std::size_t count(const std::string& w, int line, int col) {
  if (w.empty() || w.size() > 9 || w.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError("expected a natural number, got '" + w + "'", line, col);
  return std::stoul(w);
}

inline std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

inline std::vector<std::string> words(std::string_view s) {
  std::istringstream is{std::string(s)};
  std::vector<std::string> w;
  for (std::string x; is >> x;) w.push_back(x);
  return w;
}

}  // namespace detail

/// Parses an expression over `ctx`. Identifiers resolve to generators first,
/// then to bound names. Errors carry line and column (1-based).
inline SuperPoly parse_expression(const Context& ctx, std::string_view src, const Bindings* bindings = nullptr,
                                  int line = 1, int col0 = 1) {
  detail::Parser p(ctx, bindings, detail::lex(src, line, col0));
  return p.parse();
}

/// Evaluated script. Statements, one per line, '#' starts a comment:
///
///   even x u          coordinates (a differential d<name> is added for each)
///   odd th
///   const odd eps     constant parameters
///   gaussian          enable Q(i) coefficients
///   order 2           ODE order: declares x, u, p1..p2
///   extra p           extra even coordinates of an ODE (symbolic functions)
///   equation 2*p2 + p*u
///   distinguished p2
///   let F = p2        bind a name (once)
///   form dt - p1*dq1  Pfaff form
///   field Q0: psi0 = 1; x00 = psib0
///   rank 2
///   alpha 1 2 = A*dx  connection entry (1-based)
class Session {
 public:
  struct FieldDecl {
    std::string name;
    VectorField field;
  };

  static Session from_text(std::string_view text) {
    Session s;
    s.load(text);
    return s;
  }

  void load(std::string_view text) {
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t nl = text.find('\n', pos);
      if (nl == std::string_view::npos) nl = text.size();
      std::string_view line = text.substr(pos, nl - pos);
      ++line_no;
      if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      statement(line, line_no);
      pos = nl + 1;
    }
  }

  const Context& context() {
    freeze(0);
    return ctx_;
  }
  bool has_context() const { return static_cast<bool>(ctx_); }
  const Bindings& bindings() const { return bindings_; }
  const std::vector<DifferentialForm>& forms() const { return forms_; }
  const std::vector<FieldDecl>& fields() const { return fields_; }
  const std::optional<SuperPoly>& equation() const { return equation_; }
  std::optional<std::size_t> order() const { return order_; }
  const std::vector<std::string>& extras() const { return extras_; }
  const std::optional<std::string>& distinguished() const { return distinguished_; }
  std::optional<std::size_t> rank() const { return rank_; }
  const std::map<std::pair<std::size_t, std::size_t>, SuperPoly>& alpha() const { return alpha_; }

  SuperPoly parse(std::string_view src, int line = 1, int col0 = 1) {
    freeze(line);
    return parse_expression(ctx_, src, &bindings_, line, col0);
  }

 private:
  void statement(std::string_view raw, int line) {
    std::string s = detail::trim(raw);
    if (s.empty()) return;
    const int indent = static_cast<int>(raw.find_first_not_of(" \t")) + 1;
    auto sp = s.find_first_of(" \t");
    std::string kw = s.substr(0, sp);
    std::string rest = sp == std::string::npos ? "" : detail::trim(s.substr(sp));
    const int rest_col = indent + static_cast<int>(s.size() - rest.size());
    auto words = detail::words(rest);

    if (kw == "even" || kw == "odd") {
      declare(line);
      for (auto& w : words) add_decl(coords_, {w, kw == "odd" ? Parity::odd : Parity::even}, line);
    } else if (kw == "const") {
      declare(line);
      if (words.empty() || (words[0] != "even" && words[0] != "odd"))
        throw ParseError("expected 'const even|odd names...'", line, rest_col);
      for (std::size_t k = 1; k < words.size(); ++k)
        add_decl(params_, {words[k], words[0] == "odd" ? Parity::odd : Parity::even}, line);
    } else if (kw == "gaussian") {
      declare(line);
      gaussian_ = true;
    } else if (kw == "order") {
      declare(line);
      if (order_) throw ParseError("order declared twice", line, 1);
      if (words.size() != 1) throw ParseError("expected 'order <k>'", line, rest_col);
      std::size_t k = detail::count(words[0], line, rest_col);
      if (k < 1) throw ParseError("order must be positive", line, rest_col);
      order_ = k;
    } else if (kw == "extra") {
      declare(line);
      for (auto& w : words) extras_.push_back(w);
    } else if (kw == "distinguished") {
      if (words.size() != 1) throw ParseError("expected 'distinguished <name>'", line, rest_col);
      distinguished_ = words[0];
    } else if (kw == "equation") {
      if (equation_) throw ParseError("equation given twice", line, 1);
      equation_ = parse(rest, line, rest_col);
    } else if (kw == "let") {
      auto eq = rest.find('=');
      if (eq == std::string::npos) throw ParseError("expected 'let name = expr'", line, rest_col);
      std::string name = detail::trim(rest.substr(0, eq));
      freeze(line);
      if (bindings_.count(name) || ctx_->find(name))
        throw ParseError("name '" + name + "' is already bound", line, rest_col);
      bindings_.emplace(name, parse(rest.substr(eq + 1), line, rest_col + static_cast<int>(eq) + 1));
    } else if (kw == "form") {
      forms_.push_back(parse(rest, line, rest_col));
    } else if (kw == "field") {
      auto colon = rest.find(':');
      if (colon == std::string::npos) throw ParseError("expected 'field name: coord = expr; ...'", line, rest_col);
      freeze(line);
      FieldDecl fd{detail::trim(rest.substr(0, colon)), VectorField(ctx_)};
      std::string body = rest.substr(colon + 1);
      std::size_t off = colon + 1;
      std::size_t p = 0;
      while (p <= body.size()) {
        std::size_t semi = body.find(';', p);
        if (semi == std::string::npos) semi = body.size();
        std::string part = body.substr(p, semi - p);
        if (!detail::trim(part).empty()) {
          auto eq = part.find('=');
          if (eq == std::string::npos) throw ParseError("expected 'coord = expr'", line, rest_col + static_cast<int>(off + p));
          std::string coord = detail::trim(part.substr(0, eq));
          auto idx = ctx_->find(coord);
          if (!idx || (*ctx_)[*idx].role != Role::coordinate)
            throw ParseError("'" + coord + "' is not a coordinate", line, rest_col + static_cast<int>(off + p));
          fd.field.set(coord, parse(part.substr(eq + 1), line, rest_col + static_cast<int>(off + p + eq) + 1));
        }
        p = semi + 1;
      }
      fields_.push_back(std::move(fd));
    } else if (kw == "rank") {
      if (words.size() != 1) throw ParseError("expected 'rank <r>'", line, rest_col);
      rank_ = detail::count(words[0], line, rest_col);
    } else if (kw == "alpha") {
      auto eq = rest.find('=');
      auto idx = detail::words(rest.substr(0, eq == std::string::npos ? rest.size() : eq));
      if (eq == std::string::npos || idx.size() != 2) throw ParseError("expected 'alpha i j = expr'", line, rest_col);
      std::size_t i = detail::count(idx[0], line, rest_col), j = detail::count(idx[1], line, rest_col);
      if (i < 1 || j < 1) throw ParseError("alpha indices are 1-based", line, rest_col);
      alpha_[{i - 1, j - 1}] = parse(rest.substr(eq + 1), line, rest_col + static_cast<int>(eq) + 1);
    } else {
      throw ParseError("unknown statement '" + kw + "'", line, indent);
    }
  }

  void declare(int line) {
    if (ctx_) throw ParseError("declarations must precede expressions", line, 1);
  }
  void add_decl(std::vector<CoordinateSpec>& into, CoordinateSpec spec, int line) {
    if (!names_.insert(spec.name).second) throw ParseError("name '" + spec.name + "' declared twice", line, 1);
    into.push_back(std::move(spec));
  }

  void freeze(int line) {
    if (ctx_) return;
    if (order_) {
      std::vector<std::string> names{"x", "u"};
      for (std::size_t i = 1; i <= *order_; ++i) names.push_back("p" + std::to_string(i));
      for (auto& e : extras_) {
        names.push_back(e);
        names.push_back(e + "'");
      }
      for (auto& n : names)
        if (names_.count(n)) throw ParseError("'" + n + "' clashes with an ODE coordinate", line, 1);
      ctx_ = ode_domain(*order_, extras_, coords_, params_, gaussian_);
      return;
    }
    if (!extras_.empty()) throw ParseError("'extra' requires 'order'", line, 1);
    ctx_ = make_domain(coords_, params_, gaussian_);
  }

  Context ctx_;
  bool gaussian_ = false;
  std::vector<CoordinateSpec> coords_, params_;
  std::set<std::string> names_;
  Bindings bindings_;
  std::vector<DifferentialForm> forms_;
  std::vector<FieldDecl> fields_;
  std::optional<SuperPoly> equation_;
  std::optional<std::size_t> order_;
  std::vector<std::string> extras_;
  std::optional<std::string> distinguished_;
  std::optional<std::size_t> rank_;
  std::map<std::pair<std::size_t, std::size_t>, SuperPoly> alpha_;
};

}  // namespace supereds::dsl
