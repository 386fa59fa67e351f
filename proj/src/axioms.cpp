#include "arrow/axioms.hpp"

#include <algorithm>

namespace arrow {

namespace {

bool disjoint(const std::vector<Var>& a, const std::vector<Var>& b) {
  return std::none_of(a.begin(), a.end(), [&](const Var& v) { return std::find(b.begin(), b.end(), v) != b.end(); });
}

std::vector<Var> scope_at(const Context& ctx, const Term& t, std::size_t position) {
  std::vector<Var> scope;
  for (const auto& b : ctx) scope.push_back(b.name);
  for (std::size_t i = 0; i < position && i < t.body.size(); ++i) {
    if (const auto* g = std::get_if<Sample>(&t.body[i])) scope.insert(scope.end(), g->outs.begin(), g->outs.end());
  }
  return scope;
}

Term swapped(const Term& t, std::size_t i) {
  Term out = t;
  std::swap(out.body[i], out.body[i + 1]);
  return out;
}

// The statements after `i`, closed by the return, as a term of their own.
Term continuation(const Term& t, std::size_t i) {
  Term rest;
  rest.body.assign(t.body.begin() + static_cast<long>(i) + 1, t.body.end());
  rest.result = t.result;
  return rest;
}

Term splice(const Term& t, std::size_t i, const Term& rest) {
  Term out;
  out.body.assign(t.body.begin(), t.body.begin() + static_cast<long>(i) + 1);
  out.body.insert(out.body.end(), rest.body.begin(), rest.body.end());
  out.result = rest.result;
  return out;
}

}  // namespace

std::string_view to_string(Axiom a) {
  switch (a) {
    case Axiom::Interchange: return "1a";
    case Axiom::InterchangeObserve: return "1b";
    case Axiom::InterchangeObserves: return "1c";
    case Axiom::Symmetry: return "2";
    case Axiom::Frobenius: return "3";
    case Axiom::Idempotency: return "4";
  }
  return "?";
}

std::optional<Axiom> parse_axiom(std::string_view id) {
  for (Axiom a : {Axiom::Interchange, Axiom::InterchangeObserve, Axiom::InterchangeObserves, Axiom::Symmetry,
                  Axiom::Frobenius, Axiom::Idempotency}) {
    if (to_string(a) == id) return a;
  }
  return std::nullopt;
}

std::string to_string(const AxiomStep& step) {
  std::string out = "axiom " + std::string(to_string(step.axiom)) + " at " + std::to_string(step.position + 1);
  if (step.direction == Direction::Backward) out += " backward";
  if (step.var) out += " on " + *step.var;
  return out;
}

std::optional<Term> axiom_step(const Context& ctx, const Term& t, const AxiomStep& step) {
  const std::size_t i = step.position;
  const std::size_t n = t.body.size();
  auto sample_at = [&](std::size_t k) { return k < n ? std::get_if<Sample>(&t.body[k]) : nullptr; };
  auto observe_at = [&](std::size_t k) { return k < n ? std::get_if<Observe>(&t.body[k]) : nullptr; };

  switch (step.axiom) {
    case Axiom::Interchange: {
      const Sample* f = sample_at(i);
      const Sample* g = sample_at(i + 1);
      if (!f || !g) return std::nullopt;
      if (!disjoint(f->outs, g->args) || !disjoint(g->outs, f->args) || !disjoint(f->outs, g->outs)) {
        return std::nullopt;
      }
      return swapped(t, i);
    }
    case Axiom::InterchangeObserve: {
      if (step.direction == Direction::Forward) {
        const Sample* f = sample_at(i);
        const Observe* o = observe_at(i + 1);
        if (!f || !o || !disjoint(f->outs, {o->lhs, o->rhs})) return std::nullopt;
        return swapped(t, i);
      }
      const Observe* o = observe_at(i);
      const Sample* f = sample_at(i + 1);
      if (!o || !f || !disjoint(f->outs, {o->lhs, o->rhs})) return std::nullopt;
      return swapped(t, i);
    }
    case Axiom::InterchangeObserves: {
      if (!observe_at(i) || !observe_at(i + 1)) return std::nullopt;
      return swapped(t, i);
    }
    case Axiom::Symmetry: {
      const Observe* o = observe_at(i);
      if (!o) return std::nullopt;
      Term out = t;
      out.body[i] = Observe{o->rhs, o->lhs};
      return out;
    }
    case Axiom::Frobenius: {
      const Observe* o = observe_at(i);
      if (!o) return std::nullopt;
      const Term rest = continuation(t, i);
      const Term replaced = step.direction == Direction::Forward ? substitute(rest, o->lhs, o->rhs)
                                                                 : substitute(rest, o->rhs, o->lhs);
      return splice(t, i, replaced);
    }
    case Axiom::Idempotency: {
      if (step.direction == Direction::Forward) {
        const Observe* o = observe_at(i);
        if (!o || o->lhs != o->rhs) return std::nullopt;
        Term out = t;
        out.body.erase(out.body.begin() + static_cast<long>(i));
        return out;
      }
      if (!step.var || i > n) return std::nullopt;
      const auto scope = scope_at(ctx, t, i);
      if (std::find(scope.begin(), scope.end(), *step.var) == scope.end()) return std::nullopt;
      Term out = t;
      out.body.insert(out.body.begin() + static_cast<long>(i), Observe{*step.var, *step.var});
      return out;
    }
  }
  return std::nullopt;
}

std::vector<AxiomStep> applicable_steps(const Context& ctx, const Term& t) {
  std::vector<AxiomStep> steps;
  auto consider = [&](AxiomStep s) {
    if (axiom_step(ctx, t, s)) steps.push_back(std::move(s));
  };
  for (std::size_t i = 0; i < t.body.size(); ++i) {
    consider({Axiom::Interchange, i});
    consider({Axiom::InterchangeObserve, i, Direction::Forward});
    consider({Axiom::InterchangeObserve, i, Direction::Backward});
    consider({Axiom::InterchangeObserves, i});
    consider({Axiom::Symmetry, i});
    consider({Axiom::Frobenius, i, Direction::Forward});
    consider({Axiom::Frobenius, i, Direction::Backward});
    consider({Axiom::Idempotency, i, Direction::Forward});
  }
  for (std::size_t i = 0; i <= t.body.size(); ++i) {
    for (const auto& v : scope_at(ctx, t, i)) consider({Axiom::Idempotency, i, Direction::Backward, v});
  }
  return steps;
}

}  // namespace arrow
