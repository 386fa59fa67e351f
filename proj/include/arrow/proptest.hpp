#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "arrow/combinator.hpp"
#include "arrow/semantics.hpp"
#include "arrow/syntax.hpp"

namespace arrow::proptest {

/// Size bounds for random signatures, terms and interpretations. All bounds
/// are at least 1, except that inputs and context sizes may be 0.
struct GenBudget {
  std::size_t max_types = 3;
  std::size_t max_generators = 4;
  std::size_t max_inputs = 2;
  std::size_t max_outputs = 2;
  std::size_t max_statements = 6;
  std::size_t max_context = 2;
  std::size_t max_result = 3;
  std::size_t max_carrier = 3;
  std::uint32_t max_denominator = 8;
  std::uint64_t seed = 0;
  bool closed = false;           // empty input context
  bool conditions = false;       // also emit predicate observes
  bool substochastic = true;     // allow kernels with mass below 1
};

struct GeneratedTerm {
  Signature signature;
  Context context;
  Term term;
};

/// A deterministic stream of random objects seeded from a budget.
class Gen {
 public:
  explicit Gen(GenBudget budget);

  std::mt19937_64& rng() { return rng_; }
  const GenBudget& budget() const { return budget_; }

  std::size_t uniform(std::size_t lo, std::size_t hi);  // inclusive
  bool chance(std::uint32_t num, std::uint32_t den);

  /// A fresh signature with at least one nullary generator.
  Signature signature();
  /// A well-typed term over `sig`. Variables are named x1, x2, ...
  Term term(const Signature& sig, const Context& ctx);
  Context context(const Signature& sig);
  GeneratedTerm term();

  /// Carriers with symbols A, B, C and random kernels for every generator.
  Interpretation interpretation(const Signature& sig);
  /// Random kernels for the generators of `sig` over the given carriers.
  Interpretation kernels(const Signature& sig, std::map<TypeName, std::vector<Outcome>> carriers);
  /// Weights with denominators at most `max_denominator`.
  Subdistribution subdistribution(const std::vector<Outcome>& support, bool stochastic);
  Channel channel(const std::vector<Outcome>& domain, const std::vector<Outcome>& codomain);

  FiniteFunction ff(std::size_t domain, std::size_t codomain);
  FiniteFunction ff();
  TypeList type_list(const Signature& sig, std::size_t max_length);
  /// A random input value of `ctx`.
  Outcome input(const Interpretation& interp, const Context& ctx);

 private:
  GenBudget budget_;
  std::mt19937_64 rng_;
};

GeneratedTerm gen_term(const GenBudget& budget);
Interpretation gen_interpretation(const GenBudget& budget, const Signature& sig);
FiniteFunction gen_ff(const GenBudget& budget);

/// Denotation at `input` by enumerating every joint assignment of generator
/// outputs, weighting it by the product of kernel entries, dropping those
/// violating an observation and projecting onto the result. Shares no
/// evaluation code with `interpret`.
Subdistribution oracle_denote(const Signature& sig, const TypedTerm& program, const Interpretation& interp,
                              const Outcome& input);

}  // namespace arrow::proptest
