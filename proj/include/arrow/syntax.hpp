#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "arrow/outcome.hpp"

namespace arrow {

using TypeName = std::string;
using Var = std::string;

/// A generator symbol `name : inputs -> outputs`.
struct Generator {
  std::string name;
  std::vector<TypeName> inputs;
  std::vector<TypeName> outputs;

  friend bool operator==(const Generator&, const Generator&) = default;
};

/// Declared types and generators. Generator names are unique across the
/// whole signature.
class Signature {
 public:
  void add_type(const TypeName& type);
  /// Throws UnknownType for undeclared input/output types and
  /// DuplicateDeclaration for a clashing name.
  void add_generator(Generator g);

  bool has_type(const TypeName& type) const;
  const Generator* find(const std::string& name) const;
  /// Throws UnknownGenerator.
  const Generator& at(const std::string& name) const;

  const std::vector<TypeName>& types() const { return types_; }
  const std::map<std::string, Generator>& generators() const { return generators_; }

 private:
  std::vector<TypeName> types_;
  std::map<std::string, Generator> generators_;
};

struct Binding {
  Var name;
  TypeName type;

  friend bool operator==(const Binding&, const Binding&) = default;
};

/// Ordered typed variables; names are distinct.
using Context = std::vector<Binding>;

std::optional<TypeName> lookup(const Context& ctx, const Var& v);

// Predicate observes: a conjunction of atoms over variables and literals.
// These go beyond the core `OBSERVE(x = y)` and are not encodable as
// combinators.
struct Operand {
  std::variant<Var, Outcome> value;

  bool is_var() const { return std::holds_alternative<Var>(value); }
  const Var& var() const { return std::get<Var>(value); }
  const Outcome& literal() const { return std::get<Outcome>(value); }

  friend bool operator==(const Operand&, const Operand&) = default;
};

struct Comparison {
  Operand lhs;
  Operand rhs;
  bool equal = true;  // `=` when true, `!=` otherwise

  friend bool operator==(const Comparison&, const Comparison&) = default;
};

struct Membership {
  Outcome element;
  Var set;

  friend bool operator==(const Membership&, const Membership&) = default;
};

using Atom = std::variant<Comparison, Membership>;

struct Predicate {
  std::vector<Atom> conjuncts;  // empty means true

  std::vector<Var> variables() const;
  friend bool operator==(const Predicate&, const Predicate&) = default;
};

/// `outs <- generator(args)`
struct Sample {
  std::string generator;
  std::vector<Var> args;
  std::vector<Var> outs;

  friend bool operator==(const Sample&, const Sample&) = default;
};

/// `OBSERVE(lhs = rhs)`
struct Observe {
  Var lhs;
  Var rhs;

  friend bool operator==(const Observe&, const Observe&) = default;
};

/// `OBSERVE(<predicate>)` for anything other than two variables compared
/// for equality.
struct Condition {
  Predicate predicate;

  friend bool operator==(const Condition&, const Condition&) = default;
};

using Statement = std::variant<Sample, Observe, Condition>;

/// An arrow-notation term: a statement list closed by `RETURN(result)`.
struct Term {
  std::vector<Statement> body;
  std::vector<Var> result;

  /// True when every statement is a generator or an equality observe.
  bool is_core() const;

  friend bool operator==(const Term&, const Term&) = default;
};

struct TypedTerm {
  Context context;
  Term term;
  std::vector<TypeName> outputs;
};

/// Checks `ctx |- t : outputs`. Errors (UnboundVariable, TypeMismatch,
/// NonFreshOutput, UnknownGenerator, ArityMismatch) name the statement.
TypedTerm typecheck(const Signature& sig, const Context& ctx, const Term& t);

/// Equality up to consistent renaming of generator-bound variables.
bool alpha_eq(const Term& a, const Term& b);

/// Renames bound variables to `#1, #2, ...` in binding order. `#` never
/// occurs in source identifiers, so free names cannot collide.
Term canonical_names(const Term& t);

/// `t[x\u]`: replaces free occurrences of `x` by `u`. Bound outputs are
/// never touched.
Term substitute(const Term& t, const Var& x, const Var& u);
/// Same, after checking that `x` and `u` have the same type in `ctx`.
Term substitute(const Context& ctx, const Term& t, const Var& x, const Var& u);

std::string render(const Predicate& p);
std::string render(const Statement& s);
/// One statement per line, ending with the RETURN line.
std::string render(const Term& t);

}  // namespace arrow
