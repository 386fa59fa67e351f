#include "arrow/semantics.hpp"

#include <algorithm>
#include <set>

#include "arrow/detail/overloaded.hpp"
#include "arrow/error.hpp"

namespace arrow {

using detail::overloaded;

namespace {

const std::vector<Outcome>& carrier(const Interpretation& interp, const TypeName& type) {
  auto it = interp.carriers.find(type);
  if (it == interp.carriers.end()) throw Error(ErrorCode::UnknownType, "no carrier for type " + type);
  return it->second;
}

const Channel& kernel(const Interpretation& interp, const std::string& name) {
  auto it = interp.kernels.find(name);
  if (it == interp.kernels.end()) throw Error(ErrorCode::UnknownGenerator, "no kernel for generator " + name);
  return it->second;
}

Outcome pick(const std::vector<Outcome>& env, const std::vector<std::size_t>& positions) {
  std::vector<Outcome> xs;
  xs.reserve(positions.size());
  for (std::size_t p : positions) xs.push_back(env[p]);
  return Outcome::tuple(std::move(xs));
}

std::size_t position(const std::vector<Var>& layout, const Var& v) {
  auto it = std::find(layout.begin(), layout.end(), v);
  if (it == layout.end()) throw Error(ErrorCode::UnboundVariable, "unbound variable " + v);
  return static_cast<std::size_t>(it - layout.begin());
}

std::vector<std::size_t> positions(const std::vector<Var>& layout, const std::vector<Var>& vs) {
  std::vector<std::size_t> ps;
  ps.reserve(vs.size());
  for (const auto& v : vs) ps.push_back(position(layout, v));
  return ps;
}

std::vector<Var> names(const Context& ctx) {
  std::vector<Var> out;
  for (const auto& b : ctx) out.push_back(b.name);
  return out;
}

TypeList types(const Context& ctx) {
  TypeList out;
  for (const auto& b : ctx) out.push_back(b.type);
  return out;
}

Outcome operand_value(const Operand& o, const std::map<Var, Outcome>& env) {
  if (!o.is_var()) return o.literal();
  auto it = env.find(o.var());
  if (it == env.end()) throw Error(ErrorCode::UnboundVariable, "unbound variable " + o.var());
  return it->second;
}

// Checks every predicate observe of `t` against the carriers of the
// variables it mentions.
void check_conditions(const Signature& sig, const Context& ctx, const Term& t, const Interpretation& interp) {
  Context scope = ctx;
  for (const auto& s : t.body) {
    if (const auto* g = std::get_if<Sample>(&s)) {
      const Generator& gen = sig.at(g->generator);
      for (std::size_t k = 0; k < g->outs.size(); ++k) scope.push_back({g->outs[k], gen.outputs[k]});
    } else if (const auto* c = std::get_if<Condition>(&s)) {
      check_predicate(c->predicate, scope, interp);
    }
  }
}

}  // namespace

void validate(const Signature& sig, const Interpretation& interp) {
  for (const auto& type : sig.types()) {
    const auto& xs = carrier(interp, type);
    if (xs.empty()) throw Error(ErrorCode::CarrierMismatch, "carrier of " + type + " is empty");
    const std::set<Outcome> distinct(xs.begin(), xs.end());
    if (distinct.size() != xs.size()) throw Error(ErrorCode::CarrierMismatch, "carrier of " + type + " repeats an element");
    for (const auto& x : xs) {
      if (x.is_tuple()) throw Error(ErrorCode::CarrierMismatch, "carrier of " + type + " contains tuple " + x.str());
    }
  }
  for (const auto& [name, gen] : sig.generators()) {
    const Channel& k = kernel(interp, name);
    const auto inputs = values(interp, gen.inputs);
    if (k.domain() != inputs) {
      throw Error(ErrorCode::CarrierMismatch, "kernel of " + name + " is not defined on exactly its input values");
    }
    const auto outputs = values(interp, gen.outputs);
    const std::set<Outcome> allowed(outputs.begin(), outputs.end());
    for (const auto& [x, d] : k.table()) {
      for (const auto& [y, w] : d) {
        if (!allowed.contains(y)) {
          throw Error(ErrorCode::CarrierMismatch, "kernel of " + name + " at " + x.str() + " produces " + y.str() +
                                                      ", not a value of its output types");
        }
      }
    }
  }
}

std::vector<Outcome> values(const Interpretation& interp, const TypeList& types) {
  std::vector<std::vector<Outcome>> rows{{}};
  for (const auto& type : types) {
    std::vector<std::vector<Outcome>> next;
    for (const auto& row : rows) {
      for (const auto& x : carrier(interp, type)) {
        next.push_back(row);
        next.back().push_back(x);
      }
    }
    rows = std::move(next);
  }
  std::vector<Outcome> out;
  out.reserve(rows.size());
  for (auto& row : rows) out.push_back(Outcome::tuple(std::move(row)));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Outcome> split(const Outcome& value, std::size_t n) {
  if (n == 1) return {value};
  if (!value.is_tuple() || value.items().size() != n) {
    throw Error(ErrorCode::CarrierMismatch, "expected a tuple of " + std::to_string(n) + " values, got " + value.str());
  }
  return value.items();
}

void check_predicate(const Predicate& p, const Context& scope, const Interpretation& interp) {
  auto type_of = [&](const Var& v) {
    auto t = lookup(scope, v);
    if (!t) throw Error(ErrorCode::UnboundVariable, "unbound variable " + v + " in OBSERVE(" + render(p) + ")");
    return *t;
  };
  for (const auto& atom : p.conjuncts) {
    std::visit(overloaded{[&](const Comparison& c) {
                            const Operand* var = c.lhs.is_var() ? &c.lhs : c.rhs.is_var() ? &c.rhs : nullptr;
                            const Operand* lit = !c.lhs.is_var() ? &c.lhs : !c.rhs.is_var() ? &c.rhs : nullptr;
                            if (var && lit) {
                              const TypeName type = type_of(var->var());
                              const auto& xs = carrier(interp, type);
                              if (std::find(xs.begin(), xs.end(), lit->literal()) == xs.end()) {
                                throw Error(ErrorCode::PredicateTypeError, lit->literal().str() + " is not a value of " +
                                                                               type + " in OBSERVE(" + render(p) + ")");
                              }
                            } else if (var) {
                              if (type_of(c.lhs.var()) != type_of(c.rhs.var())) {
                                throw Error(ErrorCode::PredicateTypeError,
                                            "compared variables differ in type in OBSERVE(" + render(p) + ")");
                              }
                            }
                          },
                          [&](const Membership& m) {
                            const TypeName type = type_of(m.set);
                            for (const auto& x : carrier(interp, type)) {
                              if (!x.is_set()) {
                                throw Error(ErrorCode::PredicateTypeError, m.set + " : " + type +
                                                                               " is not set-valued in OBSERVE(" +
                                                                               render(p) + ")");
                              }
                            }
                          }},
               atom);
  }
}

bool holds(const Predicate& p, const std::map<Var, Outcome>& env) {
  for (const auto& atom : p.conjuncts) {
    const bool ok = std::visit(
        overloaded{[&](const Comparison& c) { return (operand_value(c.lhs, env) == operand_value(c.rhs, env)) == c.equal; },
                   [&](const Membership& m) {
                     const Outcome v = operand_value(Operand{m.set}, env);
                     if (!v.is_set()) throw Error(ErrorCode::PredicateTypeError, m.set + " = " + v.str() + " is not a set");
                     return v.contains(m.element);
                   }},
        atom);
    if (!ok) return false;
  }
  return true;
}

Subdistribution observe_predicate(const Subdistribution& state, const Predicate& p, const std::vector<Var>& layout) {
  return restrict(state, [&](const Outcome& x) {
    const auto parts = split(x, layout.size());
    std::map<Var, Outcome> env;
    for (std::size_t i = 0; i < layout.size(); ++i) env.emplace(layout[i], parts[i]);
    return holds(p, env);
  });
}

namespace {

// Evaluates statements from `k` on, given the values of every variable in
// `layout`.
Subdistribution run(const Signature& sig, const Term& t, const Interpretation& interp, std::size_t k,
                    std::vector<Var>& layout, const std::vector<Outcome>& env) {
  if (k == t.body.size()) return dirac(pick(env, positions(layout, t.result)));
  return std::visit(
      overloaded{
          [&](const Sample& g) {
            const Channel& f = kernel(interp, g.generator);
            const Subdistribution joint = tensor(dirac(Outcome::tuple(env)), f(pick(env, positions(layout, g.args))));
            const std::size_t before = layout.size();
            layout.insert(layout.end(), g.outs.begin(), g.outs.end());
            const Subdistribution out = kleisli_extend(
                [&](const Outcome& w) { return run(sig, t, interp, k + 1, layout, split(w, layout.size())); }, joint);
            layout.resize(before);
            return out;
          },
          [&](const Observe& o) {
            if (env[position(layout, o.lhs)] != env[position(layout, o.rhs)]) return Subdistribution::zero();
            return run(sig, t, interp, k + 1, layout, env);
          },
          [&](const Condition& c) {
            std::map<Var, Outcome> named;
            for (std::size_t i = 0; i < layout.size(); ++i) named.emplace(layout[i], env[i]);
            if (!holds(c.predicate, named)) return Subdistribution::zero();
            return run(sig, t, interp, k + 1, layout, env);
          }},
      t.body[k]);
}

}  // namespace

Subdistribution interpret(const Signature& sig, const TypedTerm& t, const Interpretation& interp, const Outcome& input) {
  const auto inputs = values(interp, types(t.context));
  if (!std::binary_search(inputs.begin(), inputs.end(), input)) {
    throw Error(ErrorCode::CarrierMismatch, "input " + input.str() + " is not a value of the context");
  }
  check_conditions(sig, t.context, t.term, interp);
  std::vector<Var> layout = names(t.context);
  return run(sig, t.term, interp, 0, layout, split(input, layout.size()));
}

Channel denotation(const Signature& sig, const TypedTerm& t, const Interpretation& interp) {
  Channel::Table table;
  for (const auto& x : values(interp, types(t.context))) table.emplace(x, interpret(sig, t, interp, x));
  return Channel(std::move(table));
}

Channel semantics_of_comb(const CombTerm& c, const Interpretation& interp) {
  check(c);
  // Each state pairs the running context values with an accumulated weight.
  Channel::Table table;
  for (const auto& x : values(interp, c.inputs)) {
    std::vector<std::pair<std::vector<Outcome>, Rational>> states{{split(x, c.inputs.size()), Rational(1)}};
    for (const auto& s : c.body) {
      std::vector<std::pair<std::vector<Outcome>, Rational>> next;
      for (auto& [env, w] : states) {
        auto at = [&](const FiniteFunction& f) {
          std::vector<Outcome> xs;
          for (std::size_t i : f.targets) xs.push_back(env[i - 1]);
          return xs;
        };
        if (const auto* o = std::get_if<CombObserve>(&s)) {
          const auto pair = at(o->beta);
          if (pair[0] == pair[1]) next.emplace_back(std::move(env), w);
        } else {
          const auto& g = std::get<CombGenerate>(s);
          for (const auto& [y, v] : kernel(interp, g.generator.name)(Outcome::tuple(at(g.gamma)))) {
            auto extended = env;
            for (auto& part : split(y, g.generator.outputs.size())) extended.push_back(std::move(part));
            next.emplace_back(std::move(extended), w * v);
          }
        }
      }
      states = std::move(next);
    }
    SubdistributionBuilder b;
    for (const auto& [env, w] : states) {
      std::vector<Outcome> xs;
      for (std::size_t i : c.result.targets) xs.push_back(env[i - 1]);
      b.add(Outcome::tuple(std::move(xs)), w);
    }
    table.emplace(x, std::move(b).build());
  }
  return Channel(std::move(table));
}

Listing Listing::of(const Term& t) {
  Listing l;
  for (std::size_t k = 0; k < t.body.size(); ++k) {
    l.text.push_back(render(t.body[k]));
    l.line_of.push_back(k);
  }
  std::string ret = "RETURN(";
  for (std::size_t i = 0; i < t.result.size(); ++i) ret += (i ? ", " : "") + t.result[i];
  l.text.push_back(ret + ")");
  return l;
}

namespace {

Trace run_trace(const Signature& sig, const TypedTerm& program, const Interpretation& interp, const Listing& listing,
                bool normalize) {
  const Term& t = program.term;
  if (!program.context.empty()) throw Error(ErrorCode::DomainError, "a traced program takes no inputs");
  if (listing.line_of.size() != t.body.size() || listing.text.empty()) {
    throw Error(ErrorCode::DomainError, "listing does not match the program");
  }
  check_conditions(sig, program.context, t, interp);

  Trace out;
  Subdistribution state = dirac(Outcome::unit());
  std::vector<Var> layout;
  Rational validity(1);

  // Returns false when the normalising trace hits zero mass.
  auto emit = [&](std::size_t line) {
    out.lines.push_back({line + 1, listing.text[line], state, state.mass()});
    if (!normalize) return true;
    auto r = rescale(state);
    if (!r) {
      out.zero_mass_line = line + 1;
      out.result = EvalResult{Subdistribution::zero(), Rational(0), std::nullopt};
      return false;
    }
    validity *= r->validity;
    state = std::move(r->posterior);
    out.lines.back().state = state;
    out.lines.back().mass = state.mass();
    return true;
  };

  for (std::size_t k = 0; k < t.body.size(); ++k) {
    std::visit(overloaded{[&](const Sample& g) {
                            const Channel& f = kernel(interp, g.generator);
                            const auto args = positions(layout, g.args);
                            const std::size_t n = layout.size();
                            state = kleisli_extend(
                                [&](const Outcome& x) { return tensor(dirac(x), f(pick(split(x, n), args))); }, state);
                            layout.insert(layout.end(), g.outs.begin(), g.outs.end());
                          },
                          [&](const Observe& o) {
                            const std::size_t a = position(layout, o.lhs);
                            const std::size_t b = position(layout, o.rhs);
                            const std::size_t n = layout.size();
                            state = restrict(state, [&](const Outcome& x) {
                              const auto parts = split(x, n);
                              return parts[a] == parts[b];
                            });
                          },
                          [&](const Condition& c) { state = observe_predicate(state, c.predicate, layout); }},
               t.body[k]);
    const bool last_of_line = k + 1 == t.body.size() || listing.line_of[k + 1] != listing.line_of[k];
    if (last_of_line && !emit(listing.line_of[k])) return out;
  }

  const auto result = positions(layout, t.result);
  const std::size_t n = layout.size();
  state = kleisli_extend([&](const Outcome& x) { return dirac(pick(split(x, n), result)); }, state);
  if (!emit(listing.text.size() - 1)) return out;

  if (normalize) {
    out.result = EvalResult{state, validity, state};
  } else {
    auto r = rescale(state);
    out.result = EvalResult{state, state.mass(), r ? std::optional(r->posterior) : std::nullopt};
  }
  return out;
}

}  // namespace

Trace trace(const Signature& sig, const TypedTerm& program, const Interpretation& interp, const Listing& listing) {
  return run_trace(sig, program, interp, listing, false);
}

Trace trace_normalized(const Signature& sig, const TypedTerm& program, const Interpretation& interp,
                       const Listing& listing) {
  return run_trace(sig, program, interp, listing, true);
}

}  // namespace arrow
