#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "arrow/semantics.hpp"
#include "arrow/syntax.hpp"

namespace arrow {

// Surface syntax of `.arrow` files. Identifiers stay unresolved here: whether
// `L` is a variable or a carrier value is decided during elaboration, once
// scopes and carriers are known.
//
//   TYPE Door = {L, M, R}
//   GEN flip() -> (Coin) = 1/2|H> + 1/2|T>
//   GEN host(Door) -> (Door) = L -> 1|R>; M -> 1/2|L> + 1/2|R>; R -> 1|L>
//   car <- UNIFORM {L, M, R}
//   host : Door <- CASE (car, player) OF (x, x) -> 1/2|y> + 1/2|z> FOR x != y, y != z, z != x; ...
//   OBSERVE(host = L AND car != R)
//   OBSERVE(A IN ports)
//   RETURN(car)

/// A CASE pattern component, a FOR operand or a ket value.
struct Token {
  enum class Kind { Identifier, Literal, Wildcard };
  Kind kind = Kind::Wildcard;
  std::string name;  // Identifier
  Outcome literal;   // Literal

  static Token identifier(std::string n) { return {Kind::Identifier, std::move(n), {}}; }
  static Token value(Outcome x) { return {Kind::Literal, {}, std::move(x)}; }
  static Token wildcard() { return {}; }

  friend bool operator==(const Token&, const Token&) = default;
};

struct KetTerm {
  Rational weight;
  std::vector<Token> values;  // one per output

  friend bool operator==(const KetTerm&, const KetTerm&) = default;
};

struct SideCondition {
  Token lhs;
  Token rhs;
  bool equal = false;

  friend bool operator==(const SideCondition&, const SideCondition&) = default;
};

struct Row {
  std::vector<Token> pattern;  // empty for nullary tables
  bool parenthesized = false;  // `(p)` rather than `p` for one component
  std::vector<KetTerm> ket;    // empty is the zero subdistribution
  std::vector<SideCondition> side;

  friend bool operator==(const Row&, const Row&) = default;
};

// Source positions are kept for error messages and ignored by equality.
struct TypeDecl {
  TypeName name;
  std::vector<Outcome> values;
  std::size_t line = 0;

  friend bool operator==(const TypeDecl& a, const TypeDecl& b) { return a.name == b.name && a.values == b.values; }
};

struct GenDecl {
  Generator generator;
  std::vector<Row> table;
  std::size_t line = 0;

  friend bool operator==(const GenDecl& a, const GenDecl& b) {
    return a.generator == b.generator && a.table == b.table;
  }
};

using Declaration = std::variant<TypeDecl, GenDecl>;

struct UniformRhs {
  std::vector<Outcome> values;

  friend bool operator==(const UniformRhs&, const UniformRhs&) = default;
};

struct CaseRhs {
  std::vector<Var> scrutinee;
  bool parenthesized = false;
  std::vector<Row> rows;

  friend bool operator==(const CaseRhs&, const CaseRhs&) = default;
};

struct CallRhs {
  std::string generator;
  std::vector<Var> args;

  friend bool operator==(const CallRhs&, const CallRhs&) = default;
};

using SampleRhs = std::variant<UniformRhs, CaseRhs, CallRhs>;

struct Binder {
  Var name;
  std::optional<TypeName> type;

  friend bool operator==(const Binder&, const Binder&) = default;
};

struct SampleStmt {
  std::vector<Binder> outs;
  SampleRhs rhs;

  friend bool operator==(const SampleStmt&, const SampleStmt&) = default;
};

/// Operands that are identifiers are stored as variables until elaboration.
struct ObserveStmt {
  Predicate predicate;

  friend bool operator==(const ObserveStmt&, const ObserveStmt&) = default;
};

struct SourceStatement {
  std::variant<SampleStmt, ObserveStmt> body;
  std::size_t line = 0;
  std::size_t column = 0;

  friend bool operator==(const SourceStatement& a, const SourceStatement& b) { return a.body == b.body; }
};

struct SourceProgram {
  std::vector<Declaration> declarations;
  std::vector<SourceStatement> statements;
  std::vector<Var> result;

  friend bool operator==(const SourceProgram&, const SourceProgram&) = default;
};

/// Throws SourceError with code ParseError.
SourceProgram parse(std::string_view text);

/// Canonical source: declarations, a blank line, one statement per line
/// (CASE rows indented on their own lines), rationals in lowest terms.
std::string pretty(const SourceProgram& p);
/// A statement on a single line, as shown in traces.
std::string pretty(const SourceStatement& s);

/// An elaborated program: a closed core term with its signature and
/// interpretation.
struct Program {
  Signature signature;
  Interpretation interpretation;
  TypedTerm term;
  Listing listing;
  std::vector<Declaration> declarations;
  /// Generators synthesised from UNIFORM and CASE, with the sugar they came
  /// from (argument names are those of the first use).
  std::map<std::string, SampleRhs> origins;
};

/// Resolves identifiers, expands CASE tables over the carriers, desugars
/// `OBSERVE(x = a)` for a nullary generator `a` into `_k <- a(); OBSERVE(x = _k)`
/// and typechecks. Throws SourceError (ElaborationError, PredicateTypeError,
/// UnboundVariable, ...) pointing at the offending statement.
Program elaborate(const SourceProgram& source);

/// parse then elaborate.
Program load(std::string_view text);

/// Source for `t` using `p`'s declarations; synthesised generators print as
/// the UNIFORM or CASE they came from.
SourceProgram to_source(const Program& p, const Term& t);

/// Source for an arbitrary closed term: every type and generator is
/// declared, generators through their full kernel tables.
SourceProgram to_source(const Signature& sig, const Interpretation& interp, const Term& t);

}  // namespace arrow
