#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "arrow/syntax.hpp"

namespace arrow {

// Axioms of arrow notation for copy-discard-compare categories:
//   1a  two generator statements interchange when neither reads the
//       other's outputs
//   1b  a generator statement and an observe interchange
//   1c  two observes interchange
//   2   OBSERVE(x = y) == OBSERVE(y = x)
//   3   OBSERVE(x = y); cont == OBSERVE(x = y); cont[x\y]
//   4   OBSERVE(x = x); cont == cont
enum class Axiom { Interchange, InterchangeObserve, InterchangeObserves, Symmetry, Frobenius, Idempotency };

enum class Direction { Forward, Backward };

std::string_view to_string(Axiom a);
std::optional<Axiom> parse_axiom(std::string_view id);

/// One rewrite at a statement position (0-based index into the body).
///
/// Forward/backward meaning per axiom:
///   1a, 1c, 2   symmetric; the direction is ignored
///   1b          forward moves an observe above the generator before it,
///               backward moves it below the generator after it
///   3           forward substitutes lhs by rhs in the continuation,
///               backward substitutes rhs by lhs
///   4           forward deletes OBSERVE(x = x) at `position`, backward
///               inserts OBSERVE(var = var) there
struct AxiomStep {
  Axiom axiom;
  std::size_t position = 0;
  Direction direction = Direction::Forward;
  std::optional<Var> var;  // only for Idempotency backward
};

std::string to_string(const AxiomStep& step);

/// Applies `step`; `nullopt` when the statement shape or a side condition
/// does not allow it. `ctx` is the term's input context.
std::optional<Term> axiom_step(const Context& ctx, const Term& t, const AxiomStep& step);

/// Every step that `axiom_step` accepts on `t`. Idempotency insertions are
/// listed for each variable in scope.
std::vector<AxiomStep> applicable_steps(const Context& ctx, const Term& t);

}  // namespace arrow
