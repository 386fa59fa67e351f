#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "arrow/syntax.hpp"

namespace arrow {

/// A function m -> n written as the list of its 1-based images
/// `[a_1, ..., a_m]`, each in `1..n`.
struct FiniteFunction {
  std::vector<std::size_t> targets;
  std::size_t codomain = 0;

  FiniteFunction() = default;
  /// Throws DomainError when a target is outside `1..codomain`.
  FiniteFunction(std::vector<std::size_t> targets, std::size_t codomain);

  std::size_t domain() const { return targets.size(); }
  /// The image of `i` (1-based).
  std::size_t operator()(std::size_t i) const { return targets.at(i - 1); }

  std::string str() const;  // `[1,2,1]`

  friend bool operator==(const FiniteFunction&, const FiniteFunction&) = default;
};

FiniteFunction ff_identity(std::size_t n);

/// `[a_{b_1}, ..., a_{b_k}]`: apply `beta`, then look up in `alpha`.
/// Requires codomain(beta) == domain(alpha); throws ArityMismatch.
FiniteFunction ff_compose(const FiniteFunction& alpha, const FiniteFunction& beta);

/// Diagrammatic order: `(ff_then(a, b))_i = b_{a_i}`, first `a` then `b`.
/// This is the order the term action and whiskering are written in.
FiniteFunction ff_then(const FiniteFunction& alpha, const FiniteFunction& beta);

/// `[n+1, ..., n+m, 1, ..., n]`, codomain n+m.
FiniteFunction ff_symmetry(std::size_t n, std::size_t m);
/// `[1, ..., n]` into n+k.
FiniteFunction ff_incl_left(std::size_t n, std::size_t k);
/// `[m+1, ..., m+n]` into m+n.
FiniteFunction ff_incl_right(std::size_t n, std::size_t m);
/// For `beta : 2 -> n`, the map sending beta_2 to beta_1 and fixing the rest.
FiniteFunction ff_collapse(const FiniteFunction& beta);
/// `[1, ..., k, k+a_1, ..., k+a_n]`.
FiniteFunction ff_whisker_left(std::size_t k, const FiniteFunction& alpha);
/// `[a_1, ..., a_n, m+1, ..., m+k]` where m is alpha's codomain.
FiniteFunction ff_whisker_right(const FiniteFunction& alpha, std::size_t k);

using TypeList = std::vector<TypeName>;

struct CombObserve {
  FiniteFunction beta;  // 2 -> current context

  friend bool operator==(const CombObserve&, const CombObserve&) = default;
};

struct CombGenerate {
  Generator generator;
  FiniteFunction gamma;  // arity -> current context

  friend bool operator==(const CombGenerate&, const CombGenerate&) = default;
};

using CombStatement = std::variant<CombObserve, CombGenerate>;

/// A variable-free term: statements that index into the running context
/// (inputs followed by every generator output so far), closed by
/// `ret(result)`.
struct CombTerm {
  TypeList inputs;
  TypeList outputs;
  std::vector<CombStatement> body;
  FiniteFunction result;

  /// Context after the whole body.
  TypeList final_context() const;

  friend bool operator==(const CombTerm&, const CombTerm&) = default;
};

/// Checks every index and type annotation; throws TypeMismatch or
/// ArityMismatch.
void check(const CombTerm& t);

std::string render(const CombTerm& t);  // `f([1]); obs([1,2]); ret([2])`

CombTerm comb_return(const TypeList& inputs, const FiniteFunction& alpha);

/// `phi * t`: input i of `t` becomes input phi_i of a term over `target`.
/// Requires target[phi_i] == t.inputs[i].
CombTerm act(const FiniteFunction& phi, const TypeList& target, const CombTerm& t);

/// `s ; t`. Throws TypeMismatch unless s.outputs == t.inputs.
CombTerm comb_compose(const CombTerm& s, const CombTerm& t);

/// `z x t : z, x -> z, y`.
CombTerm comb_whisker_left(const TypeList& z, const CombTerm& t);
/// `t x z : x, z -> y, z`.
CombTerm comb_whisker_right(const CombTerm& t, const TypeList& z);

/// `(t1 x x2) ; (y1 x t2)`.
CombTerm comb_tensor(const CombTerm& t1, const CombTerm& t2);
/// The other bracketing, `(x1 x t2) ; (t1 x y2)`.
CombTerm comb_tensor_alt(const CombTerm& t1, const CombTerm& t2);

/// `ret(sigma) : x, y -> y, x`.
CombTerm comb_swap(const TypeList& x, const TypeList& y);

struct StructureMaps {
  CombTerm copy;     // x -> x, x
  CombTerm discard;  // x -> ()
  CombTerm compare;  // x, x -> x
};

/// Atomic types use `ret([1,1])`, `ret([])` and `obs([1,2]); ret([1])`;
/// lists are built from these by tensoring and reordering.
StructureMaps structure_maps(const TypeList& x);

/// Throws NotEncodable for terms with predicate observes.
CombTerm encode(const Signature& sig, const Context& ctx, const Term& t);
/// Names inputs `x1..xn` and generator outputs `x(n+1)...` in order.
TypedTerm decode(const CombTerm& c);

}  // namespace arrow
