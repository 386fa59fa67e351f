#include "arrow/combinator.hpp"

#include <map>

#include "arrow/detail/overloaded.hpp"
#include "arrow/error.hpp"

namespace arrow {

using detail::overloaded;

FiniteFunction::FiniteFunction(std::vector<std::size_t> ts, std::size_t cod) : targets(std::move(ts)), codomain(cod) {
  for (std::size_t t : targets) {
    if (t < 1 || t > codomain) {
      throw Error(ErrorCode::DomainError, "finite function target " + std::to_string(t) + " outside 1.." +
                                              std::to_string(codomain));
    }
  }
}

std::string FiniteFunction::str() const {
  std::string out = "[";
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(targets[i]);
  }
  return out + "]";
}

FiniteFunction ff_identity(std::size_t n) {
  std::vector<std::size_t> ts(n);
  for (std::size_t i = 0; i < n; ++i) ts[i] = i + 1;
  return {std::move(ts), n};
}

FiniteFunction ff_compose(const FiniteFunction& alpha, const FiniteFunction& beta) {
  if (beta.codomain != alpha.domain()) {
    throw Error(ErrorCode::ArityMismatch, "cannot compose " + alpha.str() + " after " + beta.str());
  }
  std::vector<std::size_t> ts;
  ts.reserve(beta.domain());
  for (std::size_t b : beta.targets) ts.push_back(alpha(b));
  return {std::move(ts), alpha.codomain};
}

FiniteFunction ff_then(const FiniteFunction& alpha, const FiniteFunction& beta) { return ff_compose(beta, alpha); }

FiniteFunction ff_symmetry(std::size_t n, std::size_t m) {
  std::vector<std::size_t> ts;
  for (std::size_t i = 1; i <= m; ++i) ts.push_back(n + i);
  for (std::size_t i = 1; i <= n; ++i) ts.push_back(i);
  return {std::move(ts), n + m};
}

FiniteFunction ff_incl_left(std::size_t n, std::size_t k) {
  FiniteFunction f = ff_identity(n);
  f.codomain = n + k;
  return f;
}

FiniteFunction ff_incl_right(std::size_t n, std::size_t m) {
  std::vector<std::size_t> ts;
  for (std::size_t i = 1; i <= n; ++i) ts.push_back(m + i);
  return {std::move(ts), m + n};
}

FiniteFunction ff_collapse(const FiniteFunction& beta) {
  if (beta.domain() != 2) throw Error(ErrorCode::ArityMismatch, "collapse needs a pair, got " + beta.str());
  FiniteFunction c = ff_identity(beta.codomain);
  c.targets[beta(2) - 1] = beta(1);
  return c;
}

FiniteFunction ff_whisker_left(std::size_t k, const FiniteFunction& alpha) {
  std::vector<std::size_t> ts;
  for (std::size_t i = 1; i <= k; ++i) ts.push_back(i);
  for (std::size_t a : alpha.targets) ts.push_back(k + a);
  return {std::move(ts), k + alpha.codomain};
}

FiniteFunction ff_whisker_right(const FiniteFunction& alpha, std::size_t k) {
  std::vector<std::size_t> ts = alpha.targets;
  for (std::size_t i = 1; i <= k; ++i) ts.push_back(alpha.codomain + i);
  return {std::move(ts), alpha.codomain + k};
}

namespace {

TypeList concat(TypeList a, const TypeList& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

TypeList select(const TypeList& ctx, const FiniteFunction& f) {
  TypeList out;
  for (std::size_t i : f.targets) out.push_back(ctx.at(i - 1));
  return out;
}

std::string join(const TypeList& ts) {
  std::string out;
  for (std::size_t i = 0; i < ts.size(); ++i) out += (i ? "," : "") + ts[i];
  return "(" + out + ")";
}

void require_codomain(const FiniteFunction& f, const TypeList& ctx, const char* what) {
  if (f.codomain != ctx.size()) {
    throw Error(ErrorCode::ArityMismatch, std::string(what) + " " + f.str() + " indexes a context of " +
                                              std::to_string(f.codomain) + ", have " + std::to_string(ctx.size()));
  }
}

// Reindexes a statement from one context into another.
CombStatement reindexed(const CombStatement& s, const FiniteFunction& phi) {
  return std::visit(overloaded{[&](const CombObserve& o) -> CombStatement { return CombObserve{ff_then(o.beta, phi)}; },
                               [&](const CombGenerate& g) -> CombStatement {
                                 return CombGenerate{g.generator, ff_then(g.gamma, phi)};
                               }},
                    s);
}

std::size_t outputs_of(const CombStatement& s) {
  if (const auto* g = std::get_if<CombGenerate>(&s)) return g->generator.outputs.size();
  return 0;
}

// A term for the suffix of `t` starting at statement `from`, whose inputs
// are the context reached at that point.
CombTerm suffix(const CombTerm& t, std::size_t from, const TypeList& ctx) {
  CombTerm rest;
  rest.inputs = ctx;
  rest.outputs = t.outputs;
  rest.body.assign(t.body.begin() + static_cast<long>(from), t.body.end());
  rest.result = t.result;
  return rest;
}

}  // namespace

TypeList CombTerm::final_context() const {
  TypeList ctx = inputs;
  for (const auto& s : body) {
    if (const auto* g = std::get_if<CombGenerate>(&s)) ctx = concat(std::move(ctx), g->generator.outputs);
  }
  return ctx;
}

void check(const CombTerm& t) {
  TypeList ctx = t.inputs;
  for (const auto& s : t.body) {
    std::visit(overloaded{[&](const CombObserve& o) {
                            require_codomain(o.beta, ctx, "obs");
                            if (o.beta.domain() != 2) throw Error(ErrorCode::ArityMismatch, "obs needs two positions");
                            if (ctx[o.beta(1) - 1] != ctx[o.beta(2) - 1]) {
                              throw Error(ErrorCode::TypeMismatch, "obs" + o.beta.str() + " compares different types");
                            }
                          },
                          [&](const CombGenerate& g) {
                            require_codomain(g.gamma, ctx, g.generator.name.c_str());
                            if (select(ctx, g.gamma) != g.generator.inputs) {
                              throw Error(ErrorCode::TypeMismatch, g.generator.name + g.gamma.str() + " has inputs " +
                                                                       join(select(ctx, g.gamma)) + ", expected " +
                                                                       join(g.generator.inputs));
                            }
                            ctx = concat(std::move(ctx), g.generator.outputs);
                          }},
               s);
  }
  require_codomain(t.result, ctx, "ret");
  if (select(ctx, t.result) != t.outputs) {
    throw Error(ErrorCode::TypeMismatch, "ret" + t.result.str() + " returns " + join(select(ctx, t.result)) +
                                             ", annotated " + join(t.outputs));
  }
}

std::string render(const CombTerm& t) {
  std::string out;
  for (const auto& s : t.body) {
    out += std::visit(overloaded{[](const CombObserve& o) { return "obs(" + o.beta.str() + ")"; },
                                 [](const CombGenerate& g) { return g.generator.name + "(" + g.gamma.str() + ")"; }},
                      s);
    out += "; ";
  }
  return out + "ret(" + t.result.str() + ")";
}

CombTerm comb_return(const TypeList& inputs, const FiniteFunction& alpha) {
  require_codomain(alpha, inputs, "ret");
  return CombTerm{inputs, select(inputs, alpha), {}, alpha};
}

CombTerm act(const FiniteFunction& phi, const TypeList& target, const CombTerm& t) {
  if (phi.domain() != t.inputs.size()) {
    throw Error(ErrorCode::ArityMismatch, "action by " + phi.str() + " on a term with " +
                                              std::to_string(t.inputs.size()) + " inputs");
  }
  require_codomain(phi, target, "action");
  if (select(target, phi) != t.inputs) {
    throw Error(ErrorCode::TypeMismatch, "action by " + phi.str() + " sends inputs " + join(t.inputs) + " to " +
                                             join(select(target, phi)));
  }
  CombTerm out{target, t.outputs, {}, {}};
  FiniteFunction current = phi;
  for (const auto& s : t.body) {
    out.body.push_back(reindexed(s, current));
    current = ff_whisker_right(current, outputs_of(s));
  }
  out.result = ff_then(t.result, current);
  return out;
}

CombTerm comb_compose(const CombTerm& s, const CombTerm& t) {
  if (s.outputs != t.inputs) {
    throw Error(ErrorCode::TypeMismatch, "cannot compose a term returning " + join(s.outputs) + " with one expecting " +
                                             join(t.inputs));
  }
  CombTerm tail = act(s.result, s.final_context(), t);
  CombTerm out{s.inputs, t.outputs, s.body, tail.result};
  out.body.insert(out.body.end(), tail.body.begin(), tail.body.end());
  return out;
}

CombTerm comb_whisker_left(const TypeList& z, const CombTerm& t) {
  CombTerm out{concat(z, t.inputs), concat(z, t.outputs), {}, {}};
  std::size_t ctx_size = t.inputs.size();
  for (const auto& s : t.body) {
    out.body.push_back(reindexed(s, ff_incl_right(ctx_size, z.size())));
    ctx_size += outputs_of(s);
  }
  out.result = ff_whisker_left(z.size(), t.result);
  return out;
}

CombTerm comb_whisker_right(const CombTerm& t, const TypeList& z) {
  CombTerm out{concat(t.inputs, z), concat(t.outputs, z), {}, {}};
  TypeList ctx = t.inputs;
  for (std::size_t k = 0; k < t.body.size(); ++k) {
    const CombStatement& s = t.body[k];
    // The padding sits right after the original inputs, so indices into
    // the context are unchanged.
    out.body.push_back(reindexed(s, ff_incl_left(ctx.size(), z.size())));
    if (const auto* g = std::get_if<CombGenerate>(&s)) {
      // Fresh outputs land after the padding; move them in front of it
      // for the rest of the term.
      const TypeList& ys = g->generator.outputs;
      const TypeList here = concat(concat(ctx, z), ys);
      const CombTerm rest = comb_whisker_right(suffix(t, k + 1, concat(ctx, ys)), z);
      const FiniteFunction rho = ff_whisker_left(ctx.size(), ff_symmetry(z.size(), ys.size()));
      const CombTerm moved = act(rho, here, rest);
      out.body.insert(out.body.end(), moved.body.begin(), moved.body.end());
      out.result = moved.result;
      return out;
    }
  }
  out.result = ff_whisker_right(t.result, z.size());
  return out;
}

CombTerm comb_tensor(const CombTerm& t1, const CombTerm& t2) {
  return comb_compose(comb_whisker_right(t1, t2.inputs), comb_whisker_left(t1.outputs, t2));
}

CombTerm comb_tensor_alt(const CombTerm& t1, const CombTerm& t2) {
  return comb_compose(comb_whisker_left(t1.inputs, t2), comb_whisker_right(t1, t2.outputs));
}

CombTerm comb_swap(const TypeList& x, const TypeList& y) {
  return comb_return(concat(x, y), ff_symmetry(x.size(), y.size()));
}

StructureMaps structure_maps(const TypeList& x) {
  if (x.empty()) {
    const CombTerm id = comb_return({}, ff_identity(0));
    return {id, id, id};
  }
  const TypeList head{x.front()};
  StructureMaps atom{comb_return(head, FiniteFunction({1, 1}, 1)), comb_return(head, FiniteFunction({}, 1)),
                     CombTerm{{x.front(), x.front()}, head, {CombObserve{FiniteFunction({1, 2}, 2)}},
                              FiniteFunction({1}, 2)}};
  if (x.size() == 1) return atom;

  const TypeList tail(x.begin() + 1, x.end());
  const StructureMaps rest = structure_maps(tail);
  // X, X, R, R  <->  X, R, X, R
  const CombTerm middle = comb_whisker_right(comb_whisker_left(head, comb_swap(head, tail)), tail);
  const CombTerm middle_back = comb_whisker_right(comb_whisker_left(head, comb_swap(tail, head)), tail);
  return {comb_compose(comb_tensor(atom.copy, rest.copy), middle), comb_tensor(atom.discard, rest.discard),
          comb_compose(middle_back, comb_tensor(atom.compare, rest.compare))};
}

CombTerm encode(const Signature& sig, const Context& ctx, const Term& t) {
  const TypedTerm typed = typecheck(sig, ctx, t);
  CombTerm out;
  std::map<Var, std::size_t> index;
  for (const auto& b : ctx) {
    out.inputs.push_back(b.type);
    index[b.name] = out.inputs.size();
  }
  std::size_t size = ctx.size();
  auto positions = [&](const std::vector<Var>& vs) {
    std::vector<std::size_t> ps;
    for (const auto& v : vs) ps.push_back(index.at(v));
    return FiniteFunction(std::move(ps), size);
  };
  for (const auto& s : t.body) {
    std::visit(overloaded{[&](const Sample& g) {
                            out.body.push_back(CombGenerate{sig.at(g.generator), positions(g.args)});
                            for (const auto& o : g.outs) index[o] = ++size;
                          },
                          [&](const Observe& o) { out.body.push_back(CombObserve{positions({o.lhs, o.rhs})}); },
                          [&](const Condition& c) {
                            throw Error(ErrorCode::NotEncodable,
                                        "OBSERVE(" + render(c.predicate) + ") is not an equality of two variables");
                          }},
               s);
  }
  out.result = positions(t.result);
  out.outputs = typed.outputs;
  return out;
}

TypedTerm decode(const CombTerm& c) {
  check(c);
  TypedTerm out;
  std::vector<Var> names;
  auto fresh = [&] {
    names.push_back("x" + std::to_string(names.size() + 1));
    return names.back();
  };
  for (const auto& type : c.inputs) out.context.push_back({fresh(), type});
  auto pick = [&](const FiniteFunction& f) {
    std::vector<Var> vs;
    for (std::size_t i : f.targets) vs.push_back(names[i - 1]);
    return vs;
  };
  for (const auto& s : c.body) {
    std::visit(overloaded{[&](const CombObserve& o) {
                            const auto vs = pick(o.beta);
                            out.term.body.push_back(Observe{vs[0], vs[1]});
                          },
                          [&](const CombGenerate& g) {
                            Sample sample{g.generator.name, pick(g.gamma), {}};
                            for (std::size_t k = 0; k < g.generator.outputs.size(); ++k) sample.outs.push_back(fresh());
                            out.term.body.push_back(std::move(sample));
                          }},
               s);
  }
  out.term.result = pick(c.result);
  out.outputs = c.outputs;
  return out;
}

}  // namespace arrow
