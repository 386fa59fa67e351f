#include <cctype>
#include <set>

#include "arrow/detail/overloaded.hpp"
#include "arrow/error.hpp"
#include "arrow/parser.hpp"

namespace arrow {

using detail::overloaded;

namespace {

enum class Tok {
  Ident,
  Int,
  Dollar,
  LBrace,
  RBrace,
  LParen,
  RParen,
  Comma,
  Semi,
  Colon,
  Eq,
  Neq,
  LArrow,
  RArrow,
  Bar,
  Gt,
  Plus,
  Slash,
  Underscore,
  End
};

struct Lexeme {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

const std::set<std::string> kKeywords{"TYPE", "GEN", "UNIFORM", "CASE", "OF", "OBSERVE", "RETURN", "AND", "IN", "FOR"};

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Lexeme> lex(std::string_view text) {
  std::vector<Lexeme> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  auto peek = [&](std::size_t k) { return i + k < text.size() ? text[i + k] : '\0'; };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    const std::size_t l = line, cl = col;
    auto single = [&](Tok kind, std::size_t n) {
      out.push_back({kind, std::string(text.substr(i, n)), l, cl});
      advance(n);
    };
    auto digits_from = [&](std::size_t start) {
      std::size_t j = start;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      return j;
    };
    if (c == '<' && peek(1) == '-') {
      single(Tok::LArrow, 2);
    } else if (c == '-' && peek(1) == '>') {
      single(Tok::RArrow, 2);
    } else if (c == '!' && peek(1) == '=') {
      single(Tok::Neq, 2);
    } else if (c == '-' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
      single(Tok::Int, digits_from(i + 1) - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      single(Tok::Int, digits_from(i) - i);
    } else if (c == '$') {
      const std::size_t end = digits_from(i + 1);
      if (end == i + 1) throw SourceError(ErrorCode::ParseError, l, cl, "expected digits after '$'");
      out.push_back({Tok::Dollar, std::string(text.substr(i + 1, end - i - 1)), l, cl});
      advance(end - i);
    } else if (c == '_' && !ident_char(peek(1))) {
      single(Tok::Underscore, 1);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size()) {
        if (ident_char(text[j])) {
          ++j;
        } else if (text[j] == '-' && j + 1 < text.size() && ident_char(text[j + 1])) {
          j += 2;
        } else {
          break;
        }
      }
      single(Tok::Ident, j - i);
    } else {
      switch (c) {
        case '{': single(Tok::LBrace, 1); break;
        case '}': single(Tok::RBrace, 1); break;
        case '(': single(Tok::LParen, 1); break;
        case ')': single(Tok::RParen, 1); break;
        case ',': single(Tok::Comma, 1); break;
        case ';': single(Tok::Semi, 1); break;
        case ':': single(Tok::Colon, 1); break;
        case '=': single(Tok::Eq, 1); break;
        case '|': single(Tok::Bar, 1); break;
        case '>': single(Tok::Gt, 1); break;
        case '+': single(Tok::Plus, 1); break;
        case '/': single(Tok::Slash, 1); break;
        default:
          throw SourceError(ErrorCode::ParseError, l, cl, std::string("unexpected character '") + c + "'");
      }
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

std::string describe(const Lexeme& t) { return t.kind == Tok::End ? "end of input" : "'" + t.text + "'"; }

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  SourceProgram program() {
    SourceProgram p;
    while (!at(Tok::End)) {
      if (keyword("TYPE")) {
        p.declarations.push_back(type_decl());
      } else if (keyword("GEN")) {
        p.declarations.push_back(gen_decl());
      } else if (keyword("RETURN")) {
        const Lexeme& start = next();
        p.result = var_list_in_parens(start);
        if (!at(Tok::End)) fail(peek(), "expected end of input after RETURN, found " + describe(peek()));
        return p;
      } else {
        p.statements.push_back(statement());
      }
    }
    fail(peek(), "missing RETURN statement");
  }

 private:
  std::vector<Lexeme> toks_;
  std::size_t pos_ = 0;

  const Lexeme& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at(Tok kind, std::size_t k = 0) const { return peek(k).kind == kind; }
  bool keyword(const char* word, std::size_t k = 0) const { return at(Tok::Ident, k) && peek(k).text == word; }
  const Lexeme& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const Lexeme& at, const std::string& message) const {
    throw SourceError(ErrorCode::ParseError, at.line, at.column, message);
  }

  const Lexeme& expect(Tok kind, const char* what) {
    if (!at(kind)) fail(peek(), std::string("expected ") + what + ", found " + describe(peek()));
    return next();
  }

  void expect_keyword(const char* word) {
    if (!keyword(word)) fail(peek(), std::string("expected ") + word + ", found " + describe(peek()));
    next();
  }

  std::string name(const char* what) {
    const Lexeme& t = expect(Tok::Ident, what);
    if (kKeywords.contains(t.text)) fail(t, "keyword " + t.text + " cannot be used as " + what);
    return t.text;
  }

  std::int64_t integer(const Lexeme& t) {
    try {
      return std::stoll(t.text);
    } catch (const std::exception&) {
      fail(t, "integer " + t.text + " out of range");
    }
  }

  // A literal value: symbol, integer, $amount or a set of values.
  Outcome value() {
    if (at(Tok::Ident)) return Outcome::symbol(name("a value"));
    if (at(Tok::Int)) return Outcome::integer(integer(next()));
    if (at(Tok::Dollar)) return Outcome::integer(integer(next()), true);
    if (at(Tok::LBrace)) {
      next();
      std::vector<Outcome> items;
      if (!at(Tok::RBrace)) {
        items.push_back(value());
        while (at(Tok::Comma)) {
          next();
          items.push_back(value());
        }
      }
      expect(Tok::RBrace, "'}'");
      return Outcome::set(std::move(items));
    }
    fail(peek(), "expected a value, found " + describe(peek()));
  }

  std::vector<Outcome> value_set() {
    const Lexeme& open = expect(Tok::LBrace, "'{'");
    std::vector<Outcome> xs{value()};
    while (at(Tok::Comma)) {
      next();
      xs.push_back(value());
    }
    expect(Tok::RBrace, "'}'");
    std::set<Outcome> seen;
    for (const auto& x : xs) {
      if (!seen.insert(x).second) fail(open, "value " + x.str() + " listed twice");
    }
    return xs;
  }

  // Identifier or literal, unresolved.
  Token token() {
    if (at(Tok::Underscore)) {
      next();
      return Token::wildcard();
    }
    if (at(Tok::Ident)) return Token::identifier(name("a value or variable"));
    return Token::value(value());
  }

  std::vector<Var> var_list_in_parens(const Lexeme&) {
    expect(Tok::LParen, "'('");
    std::vector<Var> vs;
    if (!at(Tok::RParen)) {
      vs.push_back(name("a variable"));
      while (at(Tok::Comma)) {
        next();
        vs.push_back(name("a variable"));
      }
    }
    expect(Tok::RParen, "')'");
    return vs;
  }

  std::vector<TypeName> type_list_in_parens() {
    expect(Tok::LParen, "'('");
    std::vector<TypeName> ts;
    if (!at(Tok::RParen)) {
      ts.push_back(name("a type"));
      while (at(Tok::Comma)) {
        next();
        ts.push_back(name("a type"));
      }
    }
    expect(Tok::RParen, "')'");
    return ts;
  }

  TypeDecl type_decl() {
    const std::size_t line = next().line;
    TypeDecl d;
    d.line = line;
    d.name = name("a type name");
    expect(Tok::Eq, "'='");
    d.values = value_set();
    return d;
  }

  GenDecl gen_decl() {
    const std::size_t line = next().line;
    GenDecl d;
    d.line = line;
    d.generator.name = name("a generator name");
    d.generator.inputs = type_list_in_parens();
    expect(Tok::RArrow, "'->'");
    if (at(Tok::LParen)) {
      d.generator.outputs = type_list_in_parens();
    } else {
      d.generator.outputs = {name("a type")};
    }
    expect(Tok::Eq, "'='");
    if (d.generator.inputs.empty()) {
      d.table.push_back(Row{{}, false, ket(), {}});
    } else {
      d.table = rows();
    }
    return d;
  }

  Rational weight() {
    std::string text = next().text;
    if (at(Tok::Slash)) {
      next();
      text += "/" + expect(Tok::Int, "a denominator").text;
    }
    try {
      return Rational::parse(text);
    } catch (const Error& e) {
      fail(peek(), e.what());
    }
  }

  // `p/q|v,...> + ...`, or `0` for the zero subdistribution.
  std::vector<KetTerm> ket() {
    if (at(Tok::Int) && peek().text == "0" && !at(Tok::Slash, 1) && !at(Tok::Bar, 1)) {
      next();
      return {};
    }
    std::vector<KetTerm> terms;
    do {
      if (!terms.empty()) next();  // '+'
      KetTerm term{Rational(1), {}};
      if (at(Tok::Int)) term.weight = weight();
      expect(Tok::Bar, "'|' opening a ket");
      term.values.push_back(token());
      while (at(Tok::Comma)) {
        next();
        term.values.push_back(token());
      }
      expect(Tok::Gt, "'>' closing a ket");
      terms.push_back(std::move(term));
    } while (at(Tok::Plus));
    return terms;
  }

  SideCondition side_condition() {
    SideCondition c;
    c.lhs = token();
    if (at(Tok::Eq)) {
      c.equal = true;
    } else if (!at(Tok::Neq)) {
      fail(peek(), "expected '=' or '!=' in FOR condition, found " + describe(peek()));
    }
    next();
    c.rhs = token();
    return c;
  }

  Row row() {
    Row r;
    if (at(Tok::LParen)) {
      next();
      r.parenthesized = true;
      r.pattern.push_back(token());
      while (at(Tok::Comma)) {
        next();
        r.pattern.push_back(token());
      }
      expect(Tok::RParen, "')'");
    } else {
      r.pattern.push_back(token());
    }
    expect(Tok::RArrow, "'->' after a pattern");
    r.ket = ket();
    if (keyword("FOR")) {
      next();
      r.side.push_back(side_condition());
      while (at(Tok::Comma)) {
        next();
        r.side.push_back(side_condition());
      }
    }
    return r;
  }

  // A `;` may also end the last row, so look past it for the start of a row.
  bool row_follows() const {
    if (at(Tok::LParen) || at(Tok::Underscore) || at(Tok::Int) || at(Tok::Dollar) || at(Tok::LBrace)) return true;
    return at(Tok::Ident) && !kKeywords.contains(peek().text) && at(Tok::RArrow, 1);
  }

  std::vector<Row> rows() {
    std::vector<Row> rs{row()};
    while (at(Tok::Semi)) {
      next();
      if (!row_follows()) break;
      rs.push_back(row());
    }
    return rs;
  }

  Operand operand() {
    if (at(Tok::Ident)) return Operand{Var(name("a variable or value"))};
    return Operand{value()};
  }

  Atom atom() {
    const Lexeme& start = peek();
    Operand lhs = operand();
    if (keyword("IN")) {
      next();
      Outcome element = lhs.is_var() ? Outcome::symbol(lhs.var()) : lhs.literal();
      return Membership{std::move(element), name("a variable")};
    }
    bool equal = true;
    if (at(Tok::Neq)) {
      equal = false;
    } else if (!at(Tok::Eq)) {
      fail(start, "expected '=', '!=' or IN in OBSERVE, found " + describe(peek()));
    }
    next();
    return Comparison{std::move(lhs), operand(), equal};
  }

  SourceStatement statement() {
    const Lexeme& start = peek();
    SourceStatement s;
    s.line = start.line;
    s.column = start.column;
    if (keyword("OBSERVE")) {
      next();
      expect(Tok::LParen, "'(' after OBSERVE");
      Predicate p;
      p.conjuncts.push_back(atom());
      while (keyword("AND")) {
        next();
        p.conjuncts.push_back(atom());
      }
      expect(Tok::RParen, "')' closing OBSERVE");
      s.body = ObserveStmt{std::move(p)};
      return s;
    }
    if (!at(Tok::Ident) || kKeywords.contains(start.text)) {
      fail(start, "expected a statement, found " + describe(start));
    }
    SampleStmt g;
    do {
      if (!g.outs.empty()) next();  // ','
      Binder b{name("a variable"), std::nullopt};
      if (at(Tok::Colon)) {
        next();
        b.type = name("a type");
      }
      g.outs.push_back(std::move(b));
    } while (at(Tok::Comma));
    expect(Tok::LArrow, "'<-'");
    if (keyword("UNIFORM")) {
      next();
      g.rhs = UniformRhs{value_set()};
    } else if (keyword("CASE")) {
      next();
      CaseRhs c;
      if (at(Tok::LParen)) {
        c.parenthesized = true;
        c.scrutinee = var_list_in_parens(start);
        if (c.scrutinee.empty()) fail(start, "CASE needs at least one variable");
      } else {
        c.scrutinee = {name("a variable")};
      }
      expect_keyword("OF");
      c.rows = rows();
      g.rhs = std::move(c);
    } else {
      CallRhs c;
      c.generator = name("a generator");
      c.args = var_list_in_parens(start);
      g.rhs = std::move(c);
    }
    s.body = std::move(g);
    return s;
  }
};

std::string join(const std::vector<std::string>& xs, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += xs[i];
  }
  return out;
}

std::string show(const Outcome& x) {
  if (!x.is_set()) return x.str();
  std::vector<std::string> items;
  for (const auto& y : x.items()) items.push_back(show(y));
  return "{" + join(items, ", ") + "}";
}

std::string show(const Token& t) {
  switch (t.kind) {
    case Token::Kind::Identifier: return t.name;
    case Token::Kind::Literal: return show(t.literal);
    case Token::Kind::Wildcard: return "_";
  }
  return "";
}

std::string show_values(const std::vector<Outcome>& xs) {
  std::vector<std::string> items;
  for (const auto& x : xs) items.push_back(show(x));
  return "{" + join(items, ", ") + "}";
}

std::string show(const std::vector<KetTerm>& ket) {
  if (ket.empty()) return "0";
  std::vector<std::string> terms;
  for (const auto& t : ket) {
    std::vector<std::string> vs;
    for (const auto& v : t.values) vs.push_back(show(v));
    terms.push_back(t.weight.str() + "|" + join(vs, ",") + ">");
  }
  return join(terms, " + ");
}

std::string show(const Row& r) {
  std::string out;
  if (!r.pattern.empty()) {
    std::vector<std::string> ps;
    for (const auto& p : r.pattern) ps.push_back(show(p));
    out = r.parenthesized || ps.size() != 1 ? "(" + join(ps, ", ") + ")" : ps[0];
    out += " -> ";
  }
  out += show(r.ket);
  if (!r.side.empty()) {
    std::vector<std::string> cs;
    for (const auto& c : r.side) cs.push_back(show(c.lhs) + (c.equal ? " = " : " != ") + show(c.rhs));
    out += " FOR " + join(cs, ", ");
  }
  return out;
}

std::string show(const Operand& o) { return o.is_var() ? o.var() : show(o.literal()); }

std::string show(const Predicate& p) {
  std::vector<std::string> atoms;
  for (const auto& a : p.conjuncts) {
    atoms.push_back(std::visit(
        overloaded{[](const Comparison& c) { return show(c.lhs) + (c.equal ? " = " : " != ") + show(c.rhs); },
                   [](const Membership& m) { return show(m.element) + " IN " + m.set; }},
        a));
  }
  return join(atoms, " AND ");
}

std::string show_rows(const std::vector<Row>& rows, bool multiline) {
  std::vector<std::string> rs;
  for (const auto& r : rows) rs.push_back(show(r));
  return multiline ? "\n  " + join(rs, ";\n  ") : " " + join(rs, "; ");
}

std::string show(const SourceStatement& s, bool multiline) {
  return std::visit(
      overloaded{[&](const SampleStmt& g) {
                   std::vector<std::string> outs;
                   for (const auto& b : g.outs) outs.push_back(b.type ? b.name + " : " + *b.type : b.name);
                   std::string out = join(outs, ", ") + " <- ";
                   out += std::visit(overloaded{[](const UniformRhs& u) { return "UNIFORM " + show_values(u.values); },
                                                [&](const CaseRhs& c) {
                                                  const std::string scrutinee =
                                                      c.parenthesized || c.scrutinee.size() != 1
                                                          ? "(" + join(c.scrutinee, ", ") + ")"
                                                          : c.scrutinee[0];
                                                  return "CASE " + scrutinee + " OF" + show_rows(c.rows, multiline);
                                                },
                                                [](const CallRhs& c) { return c.generator + "(" + join(c.args, ", ") + ")"; }},
                                     g.rhs);
                   return out;
                 },
                 [](const ObserveStmt& o) { return "OBSERVE(" + show(o.predicate) + ")"; }},
      s.body);
}

}  // namespace

SourceProgram parse(std::string_view text) { return Parser(text).program(); }

std::string pretty(const SourceStatement& s) { return show(s, false); }

std::string pretty(const SourceProgram& p) {
  std::string out;
  for (const auto& d : p.declarations) {
    out += std::visit(overloaded{[](const TypeDecl& t) { return "TYPE " + t.name + " = " + show_values(t.values); },
                                 [](const GenDecl& g) {
                                   std::string head = "GEN " + g.generator.name + "(" + join(g.generator.inputs, ", ") +
                                                      ") -> (" + join(g.generator.outputs, ", ") + ") =";
                                   if (g.generator.inputs.empty()) return head + " " + show(g.table.at(0).ket);
                                   return head + show_rows(g.table, true);
                                 }},
                      d);
    out += "\n";
  }
  if (!p.declarations.empty()) out += "\n";
  for (const auto& s : p.statements) out += show(s, true) + "\n";
  out += "RETURN(" + join(p.result, ", ") + ")\n";
  return out;
}

}  // namespace arrow
