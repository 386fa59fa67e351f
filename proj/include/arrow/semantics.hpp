#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arrow/combinator.hpp"
#include "arrow/subdist.hpp"
#include "arrow/syntax.hpp"

namespace arrow {

/// Finite carriers for types and substochastic kernels for generators.
///
/// A value of a type list is the flattened tuple of one carrier element
/// per type: `()` for the empty list, the element itself for one type.
/// Kernels map the input value of their generator to a subdistribution
/// over output values.
struct Interpretation {
  std::map<TypeName, std::vector<Outcome>> carriers;
  std::map<std::string, Channel> kernels;
};

/// Carriers nonempty, duplicate-free and tuple-free; every generator has a
/// kernel defined on exactly its input values and landing in its output
/// values. Throws CarrierMismatch, UnknownType or UnknownGenerator.
void validate(const Signature& sig, const Interpretation& interp);

/// All values of a type list, in canonical order.
std::vector<Outcome> values(const Interpretation& interp, const TypeList& types);

/// Splits a value of an n-element type list into its n components.
std::vector<Outcome> split(const Outcome& value, std::size_t n);

/// Throws PredicateTypeError when a literal is compared with a variable
/// whose carrier does not contain it, or when a membership test targets a
/// variable whose carrier holds non-sets.
void check_predicate(const Predicate& p, const Context& scope, const Interpretation& interp);

/// Truth of `p` under an assignment. Throws PredicateTypeError if a
/// membership test meets a non-set value.
bool holds(const Predicate& p, const std::map<Var, Outcome>& env);

/// Restricts a joint state whose tuple positions are named by `layout`.
Subdistribution observe_predicate(const Subdistribution& state, const Predicate& p, const std::vector<Var>& layout);

/// Denotation of a term at one input value, computed statement by
/// statement through Kleisli extension. Throws CarrierMismatch when
/// `input` is not a value of the context.
Subdistribution interpret(const Signature& sig, const TypedTerm& t, const Interpretation& interp, const Outcome& input);

/// The denotation tabulated over every input value.
Channel denotation(const Signature& sig, const TypedTerm& t, const Interpretation& interp);

/// Denotation of a combinator term, read directly off its index lists.
Channel semantics_of_comb(const CombTerm& c, const Interpretation& interp);

/// How trace lines are labelled. `text` has one entry per displayed line,
/// the last one being the RETURN line; `line_of[k]` is the displayed line
/// that statement k belongs to. Several statements may share a line when a
/// source statement elaborates into more than one.
struct Listing {
  std::vector<std::string> text;
  std::vector<std::size_t> line_of;

  /// One line per statement, rendered from the term itself.
  static Listing of(const Term& t);
};

struct TraceLine {
  std::size_t number = 0;  // 1-based
  std::string statement;
  Subdistribution state;   // joint over every variable so far; the RETURN line holds the result
  Rational mass;
};

struct EvalResult {
  Subdistribution final;
  Rational validity;
  std::optional<Subdistribution> posterior;  // nullopt is Failure
};

struct Trace {
  std::vector<TraceLine> lines;
  EvalResult result;
  /// Set by the normalising trace when some line leaves no mass; the trace
  /// stops there.
  std::optional<std::size_t> zero_mass_line;
};

/// Line-by-line evaluation of a closed program over its joint state.
Trace trace(const Signature& sig, const TypedTerm& program, const Interpretation& interp, const Listing& listing);
/// Same, rescaling the state to mass one after every line. The reported
/// validity is the product of the per-line validities.
Trace trace_normalized(const Signature& sig, const TypedTerm& program, const Interpretation& interp,
                       const Listing& listing);

}  // namespace arrow
