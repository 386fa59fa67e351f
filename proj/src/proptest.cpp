#include "arrow/proptest.hpp"

#include <algorithm>
#include <functional>
#include <iterator>
#include <string>

#include "arrow/detail/overloaded.hpp"
#include "arrow/error.hpp"

namespace arrow::proptest {

using detail::overloaded;

Gen::Gen(GenBudget budget) : budget_(budget), rng_(budget.seed) {}

std::size_t Gen::uniform(std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
}

bool Gen::chance(std::uint32_t num, std::uint32_t den) { return uniform(1, den) <= num; }

Signature Gen::signature() {
  Signature sig;
  const std::size_t types = uniform(1, budget_.max_types);
  for (std::size_t i = 1; i <= types; ++i) sig.add_type("T" + std::to_string(i));
  const std::size_t gens = uniform(1, budget_.max_generators);
  for (std::size_t i = 1; i <= gens; ++i) {
    Generator g{"g" + std::to_string(i), {}, {}};
    const std::size_t ins = i == 1 ? 0 : uniform(0, budget_.max_inputs);
    const std::size_t outs = uniform(1, budget_.max_outputs);
    for (std::size_t k = 0; k < ins; ++k) g.inputs.push_back(sig.types()[uniform(0, types - 1)]);
    for (std::size_t k = 0; k < outs; ++k) g.outputs.push_back(sig.types()[uniform(0, types - 1)]);
    sig.add_generator(std::move(g));
  }
  return sig;
}

Context Gen::context(const Signature& sig) {
  Context ctx;
  if (budget_.closed) return ctx;
  const std::size_t n = uniform(0, budget_.max_context);
  for (std::size_t i = 1; i <= n; ++i) ctx.push_back({"x" + std::to_string(i), sig.types()[uniform(0, sig.types().size() - 1)]});
  return ctx;
}

Term Gen::term(const Signature& sig, const Context& ctx) {
  Context scope = ctx;
  std::size_t next = ctx.size();
  auto var_of = [&](const TypeName& type) -> std::optional<Var> {
    std::vector<Var> xs;
    for (const auto& b : scope) {
      if (b.type == type) xs.push_back(b.name);
    }
    if (xs.empty()) return std::nullopt;
    return xs[uniform(0, xs.size() - 1)];
  };
  auto any_var = [&]() -> const Binding& { return scope[uniform(0, scope.size() - 1)]; };

  Term t;
  const std::size_t n = uniform(0, budget_.max_statements);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t kind = uniform(0, 9);
    if (!scope.empty() && kind >= 6 && (kind < 9 || !budget_.conditions)) {
      const Binding& a = any_var();
      t.body.push_back(Observe{a.name, *var_of(a.type)});
    } else if (!scope.empty() && kind == 9) {
      const Binding& a = any_var();
      Predicate p;
      p.conjuncts.push_back(Comparison{Operand{a.name}, Operand{Outcome::symbol("A")}, chance(1, 2)});
      if (chance(1, 2)) p.conjuncts.push_back(Comparison{Operand{a.name}, Operand{*var_of(a.type)}, chance(1, 2)});
      t.body.push_back(Condition{std::move(p)});
    } else {
      std::vector<const Generator*> usable;
      for (const auto& [name, g] : sig.generators()) {
        if (std::all_of(g.inputs.begin(), g.inputs.end(), [&](const TypeName& x) { return var_of(x).has_value(); })) {
          usable.push_back(&g);
        }
      }
      const Generator& g = *usable[uniform(0, usable.size() - 1)];
      Sample s{g.name, {}, {}};
      for (const auto& type : g.inputs) s.args.push_back(*var_of(type));
      for (const auto& type : g.outputs) {
        s.outs.push_back("x" + std::to_string(++next));
        scope.push_back({s.outs.back(), type});
      }
      t.body.push_back(std::move(s));
    }
  }
  if (!scope.empty()) {
    const std::size_t m = uniform(0, budget_.max_result);
    for (std::size_t i = 0; i < m; ++i) t.result.push_back(any_var().name);
  }
  return t;
}

GeneratedTerm Gen::term() {
  GeneratedTerm out;
  out.signature = signature();
  out.context = context(out.signature);
  out.term = term(out.signature, out.context);
  return out;
}

Subdistribution Gen::subdistribution(const std::vector<Outcome>& support, bool stochastic) {
  const std::uint32_t d = static_cast<std::uint32_t>(uniform(1, budget_.max_denominator));
  const std::uint32_t units = stochastic ? d : static_cast<std::uint32_t>(uniform(0, d));
  std::vector<std::int64_t> counts(support.size(), 0);
  for (std::uint32_t u = 0; u < units; ++u) ++counts[uniform(0, support.size() - 1)];
  SubdistributionBuilder b;
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (counts[i]) b.add(support[i], Rational(counts[i], d));
  }
  return std::move(b).build();
}

Channel Gen::channel(const std::vector<Outcome>& domain, const std::vector<Outcome>& codomain) {
  const bool stochastic = !budget_.substochastic || chance(2, 3);
  Channel::Table table;
  for (const auto& x : domain) table.emplace(x, subdistribution(codomain, stochastic || chance(1, 2)));
  return Channel(std::move(table));
}

Interpretation Gen::kernels(const Signature& sig, std::map<TypeName, std::vector<Outcome>> carriers) {
  Interpretation interp;
  interp.carriers = std::move(carriers);
  for (const auto& [name, g] : sig.generators()) {
    interp.kernels.emplace(name, channel(values(interp, g.inputs), values(interp, g.outputs)));
  }
  return interp;
}

Interpretation Gen::interpretation(const Signature& sig) {
  static const char* symbols[] = {"A", "B", "C", "D", "E", "F"};
  std::map<TypeName, std::vector<Outcome>> carriers;
  const std::size_t cap = std::min<std::size_t>(budget_.max_carrier, std::size(symbols));
  for (const auto& type : sig.types()) {
    auto& c = carriers[type];
    const std::size_t n = uniform(1, cap);
    for (std::size_t i = 0; i < n; ++i) c.push_back(Outcome::symbol(symbols[i]));
  }
  return kernels(sig, std::move(carriers));
}

FiniteFunction Gen::ff(std::size_t domain, std::size_t codomain) {
  std::vector<std::size_t> targets;
  for (std::size_t i = 0; i < domain; ++i) targets.push_back(uniform(1, codomain));
  return FiniteFunction(std::move(targets), codomain);
}

FiniteFunction Gen::ff() {
  const std::size_t codomain = uniform(0, 4);
  return ff(codomain == 0 ? 0 : uniform(0, 4), codomain);
}

TypeList Gen::type_list(const Signature& sig, std::size_t max_length) {
  TypeList out;
  const std::size_t n = uniform(0, max_length);
  for (std::size_t i = 0; i < n; ++i) out.push_back(sig.types()[uniform(0, sig.types().size() - 1)]);
  return out;
}

Outcome Gen::input(const Interpretation& interp, const Context& ctx) {
  std::vector<Outcome> parts;
  for (const auto& b : ctx) {
    const auto& c = interp.carriers.at(b.type);
    parts.push_back(c[uniform(0, c.size() - 1)]);
  }
  return Outcome::tuple(std::move(parts));
}

GeneratedTerm gen_term(const GenBudget& budget) { return Gen(budget).term(); }

Interpretation gen_interpretation(const GenBudget& budget, const Signature& sig) {
  return Gen(budget).interpretation(sig);
}

FiniteFunction gen_ff(const GenBudget& budget) { return Gen(budget).ff(); }

namespace {

class Worlds {
 public:
  Worlds(const Signature& sig, const TypedTerm& program, const Interpretation& interp)
      : sig_(sig), t_(program.term), interp_(interp) {}

  Subdistribution run(const Context& ctx, const Outcome& input) {
    const std::vector<Outcome> parts = ctx.size() == 1 ? std::vector<Outcome>{input} : input.items();
    if (parts.size() != ctx.size()) throw Error(ErrorCode::CarrierMismatch, "input " + input.str() + " has the wrong width");
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      const auto& c = interp_.carriers.at(ctx[i].type);
      if (std::find(c.begin(), c.end(), parts[i]) == c.end()) {
        throw Error(ErrorCode::CarrierMismatch, parts[i].str() + " is not a value of " + ctx[i].type);
      }
      env_[ctx[i].name] = parts[i];
    }
    visit(0, Rational(1));
    return std::move(out_).build();
  }

 private:
  const Signature& sig_;
  const Term& t_;
  const Interpretation& interp_;
  std::map<Var, Outcome> env_;
  SubdistributionBuilder out_;

  Outcome get(const Operand& op) const { return op.is_var() ? env_.at(op.var()) : op.literal(); }

  bool satisfied(const Statement& s) const {
    if (const auto* o = std::get_if<Observe>(&s)) return env_.at(o->lhs) == env_.at(o->rhs);
    for (const auto& atom : std::get<Condition>(s).predicate.conjuncts) {
      const bool ok = std::visit(overloaded{[&](const Comparison& c) { return (get(c.lhs) == get(c.rhs)) == c.equal; },
                                            [&](const Membership& m) {
                                              const Outcome& v = env_.at(m.set);
                                              const auto& xs = v.items();
                                              return v.is_set() && std::find(xs.begin(), xs.end(), m.element) != xs.end();
                                            }},
                                 atom);
      if (!ok) return false;
    }
    return true;
  }

  // Every assignment of one carrier element per output, in no particular order.
  void assignments(const Generator& g, std::size_t k, std::vector<Outcome>& chosen,
                   const std::function<void(const std::vector<Outcome>&)>& each) const {
    if (k == g.outputs.size()) {
      each(chosen);
      return;
    }
    for (const auto& x : interp_.carriers.at(g.outputs[k])) {
      chosen.push_back(x);
      assignments(g, k + 1, chosen, each);
      chosen.pop_back();
    }
  }

  void visit(std::size_t k, const Rational& weight) {
    if (k == t_.body.size()) {
      std::vector<Outcome> ys;
      for (const auto& v : t_.result) ys.push_back(env_.at(v));
      out_.add(Outcome::tuple(std::move(ys)), weight);
      return;
    }
    const Statement& s = t_.body[k];
    const auto* sample = std::get_if<Sample>(&s);
    if (!sample) {
      if (satisfied(s)) visit(k + 1, weight);
      return;
    }
    const Generator& g = sig_.at(sample->generator);
    std::vector<Outcome> args;
    for (const auto& v : sample->args) args.push_back(env_.at(v));
    const Subdistribution& row = interp_.kernels.at(g.name)(Outcome::tuple(std::move(args)));
    std::vector<Outcome> chosen;
    assignments(g, 0, chosen, [&](const std::vector<Outcome>& ys) {
      const Rational w = row.weight(Outcome::tuple(ys));
      if (w.is_zero()) return;
      std::map<Var, Outcome> saved = env_;
      for (std::size_t i = 0; i < ys.size(); ++i) env_[sample->outs[i]] = ys[i];
      visit(k + 1, weight * w);
      env_ = std::move(saved);
    });
  }
};

}  // namespace

Subdistribution oracle_denote(const Signature& sig, const TypedTerm& program, const Interpretation& interp,
                              const Outcome& input) {
  return Worlds(sig, program, interp).run(program.context, input);
}

}  // namespace arrow::proptest
