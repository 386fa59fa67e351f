#include "arrow/syntax.hpp"

#include <algorithm>

#include "arrow/detail/overloaded.hpp"
#include "arrow/error.hpp"

namespace arrow {

using detail::overloaded;

void Signature::add_type(const TypeName& type) {
  if (has_type(type)) throw Error(ErrorCode::DuplicateDeclaration, "type " + type + " declared twice");
  types_.push_back(type);
}

void Signature::add_generator(Generator g) {
  for (const auto& t : g.inputs) {
    if (!has_type(t)) throw Error(ErrorCode::UnknownType, "generator " + g.name + " uses undeclared type " + t);
  }
  for (const auto& t : g.outputs) {
    if (!has_type(t)) throw Error(ErrorCode::UnknownType, "generator " + g.name + " uses undeclared type " + t);
  }
  if (generators_.contains(g.name)) {
    throw Error(ErrorCode::DuplicateDeclaration, "generator " + g.name + " declared twice");
  }
  std::string name = g.name;
  generators_.emplace(std::move(name), std::move(g));
}

bool Signature::has_type(const TypeName& type) const {
  return std::find(types_.begin(), types_.end(), type) != types_.end();
}

const Generator* Signature::find(const std::string& name) const {
  auto it = generators_.find(name);
  return it == generators_.end() ? nullptr : &it->second;
}

const Generator& Signature::at(const std::string& name) const {
  const Generator* g = find(name);
  if (!g) throw Error(ErrorCode::UnknownGenerator, "unknown generator " + name);
  return *g;
}

std::optional<TypeName> lookup(const Context& ctx, const Var& v) {
  for (const auto& b : ctx) {
    if (b.name == v) return b.type;
  }
  return std::nullopt;
}

std::vector<Var> Predicate::variables() const {
  std::vector<Var> vars;
  for (const auto& atom : conjuncts) {
    std::visit(overloaded{[&](const Comparison& c) {
                            if (c.lhs.is_var()) vars.push_back(c.lhs.var());
                            if (c.rhs.is_var()) vars.push_back(c.rhs.var());
                          },
                          [&](const Membership& m) { vars.push_back(m.set); }},
               atom);
  }
  return vars;
}

bool Term::is_core() const {
  return std::none_of(body.begin(), body.end(),
                      [](const Statement& s) { return std::holds_alternative<Condition>(s); });
}

namespace {

std::string where(std::size_t index, const Statement& s) {
  return "statement (" + std::to_string(index + 1) + ") '" + render(s) + "'";
}

TypeName require(const Context& scope, const Var& v, const std::string& at) {
  auto t = lookup(scope, v);
  if (!t) throw Error(ErrorCode::UnboundVariable, "unbound variable " + v + " in " + at);
  return *t;
}

}  // namespace

TypedTerm typecheck(const Signature& sig, const Context& ctx, const Term& t) {
  Context scope;
  for (const auto& b : ctx) {
    if (lookup(scope, b.name)) {
      throw Error(ErrorCode::DuplicateDeclaration, "variable " + b.name + " appears twice in the context");
    }
    if (!sig.has_type(b.type)) throw Error(ErrorCode::UnknownType, "context variable " + b.name + " has undeclared type " + b.type);
    scope.push_back(b);
  }
  for (std::size_t i = 0; i < t.body.size(); ++i) {
    const Statement& s = t.body[i];
    const std::string at = where(i, s);
    std::visit(
        overloaded{
            [&](const Sample& g) {
              const Generator* gen = sig.find(g.generator);
              if (!gen) throw Error(ErrorCode::UnknownGenerator, "unknown generator " + g.generator + " in " + at);
              if (gen->inputs.size() != g.args.size() || gen->outputs.size() != g.outs.size()) {
                throw Error(ErrorCode::ArityMismatch, "generator " + g.generator + " used with the wrong arity in " + at);
              }
              for (std::size_t k = 0; k < g.args.size(); ++k) {
                const TypeName have = require(scope, g.args[k], at);
                if (have != gen->inputs[k]) {
                  throw Error(ErrorCode::TypeMismatch, "argument " + g.args[k] + " has type " + have + ", expected " +
                                                           gen->inputs[k] + " in " + at);
                }
              }
              for (std::size_t k = 0; k < g.outs.size(); ++k) {
                const bool repeated = std::find(g.outs.begin(), g.outs.begin() + static_cast<long>(k), g.outs[k]) !=
                                      g.outs.begin() + static_cast<long>(k);
                if (lookup(scope, g.outs[k]) || repeated) {
                  throw Error(ErrorCode::NonFreshOutput, "output variable " + g.outs[k] + " is not fresh in " + at);
                }
              }
              for (std::size_t k = 0; k < g.outs.size(); ++k) scope.push_back({g.outs[k], gen->outputs[k]});
            },
            [&](const Observe& o) {
              const TypeName a = require(scope, o.lhs, at);
              const TypeName b = require(scope, o.rhs, at);
              if (a != b) {
                throw Error(ErrorCode::TypeMismatch, "observed variables " + o.lhs + " : " + a + " and " + o.rhs + " : " +
                                                         b + " differ in type in " + at);
              }
            },
            [&](const Condition& c) {
              for (const auto& atom : c.predicate.conjuncts) {
                if (const auto* cmp = std::get_if<Comparison>(&atom)) {
                  if (cmp->lhs.is_var() && cmp->rhs.is_var()) {
                    const TypeName a = require(scope, cmp->lhs.var(), at);
                    const TypeName b = require(scope, cmp->rhs.var(), at);
                    if (a != b) throw Error(ErrorCode::TypeMismatch, "compared variables differ in type in " + at);
                    continue;
                  }
                }
                for (const auto& v : Predicate{{atom}}.variables()) require(scope, v, at);
              }
            }},
        s);
  }
  TypedTerm typed{ctx, t, {}};
  for (const auto& v : t.result) typed.outputs.push_back(require(scope, v, "RETURN"));
  return typed;
}

namespace {

class Renaming {
 public:
  Var operator()(const Var& v) const {
    auto it = map_.find(v);
    return it == map_.end() ? v : it->second;
  }
  void bind(const Var& from, const Var& to) { map_[from] = to; }

 private:
  std::map<Var, Var> map_;
};

Operand rename(const Operand& o, const Renaming& r) {
  if (o.is_var()) return Operand{r(o.var())};
  return o;
}

Predicate rename(const Predicate& p, const Renaming& r) {
  Predicate out;
  for (const auto& atom : p.conjuncts) {
    out.conjuncts.push_back(std::visit(
        overloaded{[&](const Comparison& c) -> Atom { return Comparison{rename(c.lhs, r), rename(c.rhs, r), c.equal}; },
                   [&](const Membership& m) -> Atom { return Membership{m.element, r(m.set)}; }},
        atom));
  }
  return out;
}

std::vector<Var> rename(const std::vector<Var>& vs, const Renaming& r) {
  std::vector<Var> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.push_back(r(v));
  return out;
}

// Applies `r` to free occurrences; bound outputs are renamed through
// `fresh` when provided.
template <class Fresh>
Term rename_term(const Term& t, Renaming r, Fresh fresh) {
  Term out;
  for (const auto& s : t.body) {
    out.body.push_back(std::visit(overloaded{[&](const Sample& g) -> Statement {
                                               Sample n{g.generator, rename(g.args, r), {}};
                                               for (const auto& o : g.outs) {
                                                 const Var to = fresh(o);
                                                 r.bind(o, to);
                                                 n.outs.push_back(to);
                                               }
                                               return n;
                                             },
                                             [&](const Observe& o) -> Statement { return Observe{r(o.lhs), r(o.rhs)}; },
                                             [&](const Condition& c) -> Statement {
                                               return Condition{rename(c.predicate, r)};
                                             }},
                                  s));
  }
  out.result = rename(t.result, r);
  return out;
}

}  // namespace

Term canonical_names(const Term& t) {
  int counter = 0;
  return rename_term(t, Renaming{}, [&](const Var&) { return "#" + std::to_string(++counter); });
}

bool alpha_eq(const Term& a, const Term& b) { return canonical_names(a) == canonical_names(b); }

Term substitute(const Term& t, const Var& x, const Var& u) {
  Renaming r;
  r.bind(x, u);
  return rename_term(t, r, [](const Var& o) { return o; });
}

Term substitute(const Context& ctx, const Term& t, const Var& x, const Var& u) {
  auto tx = lookup(ctx, x);
  auto tu = lookup(ctx, u);
  if (!tx) throw Error(ErrorCode::UnboundVariable, "unbound variable " + x);
  if (!tu) throw Error(ErrorCode::UnboundVariable, "unbound variable " + u);
  if (*tx != *tu) throw Error(ErrorCode::TypeMismatch, "cannot substitute " + u + " : " + *tu + " for " + x + " : " + *tx);
  return substitute(t, x, u);
}

namespace {

std::string join(const std::vector<Var>& vs) {
  std::string out;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) out += ", ";
    out += vs[i];
  }
  return out;
}

std::string render(const Operand& o) { return o.is_var() ? o.var() : o.literal().str(); }

}  // namespace

std::string render(const Predicate& p) {
  if (p.conjuncts.empty()) return "TRUE";
  std::string out;
  for (const auto& atom : p.conjuncts) {
    if (!out.empty()) out += " AND ";
    out += std::visit(overloaded{[](const Comparison& c) {
                                   return render(c.lhs) + (c.equal ? " = " : " != ") + render(c.rhs);
                                 },
                                 [](const Membership& m) { return m.element.str() + " IN " + m.set; }},
                      atom);
  }
  return out;
}

std::string render(const Statement& s) {
  return std::visit(overloaded{[](const Sample& g) { return join(g.outs) + " <- " + g.generator + "(" + join(g.args) + ")"; },
                               [](const Observe& o) { return "OBSERVE(" + o.lhs + " = " + o.rhs + ")"; },
                               [](const Condition& c) { return "OBSERVE(" + render(c.predicate) + ")"; }},
                    s);
}

std::string render(const Term& t) {
  std::string out;
  for (const auto& s : t.body) out += render(s) + "\n";
  out += "RETURN(" + join(t.result) + ")\n";
  return out;
}

}  // namespace arrow
