#include <algorithm>
#include <set>

#include "arrow/detail/overloaded.hpp"
#include "arrow/error.hpp"
#include "arrow/parser.hpp"

namespace arrow {

using detail::overloaded;

namespace {

std::string join(const std::vector<std::string>& xs, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += xs[i];
  }
  return out;
}

struct Where {
  std::size_t line;
  std::size_t column;
};

[[noreturn]] void fail(ErrorCode code, Where at, const std::string& message) {
  throw SourceError(code, at.line, at.column, message);
}

// Table rows with every identifier resolved against the carriers.
class TableExpander {
 public:
  TableExpander(const Interpretation& interp, TypeList inputs, TypeList outputs, Where at)
      : interp_(interp), inputs_(std::move(inputs)), outputs_(std::move(outputs)), at_(at) {}

  Channel expand(const std::vector<Row>& rows) const {
    std::vector<Resolved> resolved;
    for (std::size_t r = 0; r < rows.size(); ++r) resolved.push_back(resolve(rows[r], r + 1));
    Channel::Table table;
    for (const auto& v : values(interp_, inputs_)) {
      const auto parts = split(v, inputs_.size());
      std::optional<Subdistribution> chosen;
      for (const auto& row : resolved) {
        chosen = apply(row, parts, v);
        if (chosen) break;
      }
      if (!chosen) fail(ErrorCode::ElaborationError, at_, "table is not exhaustive: no row matches " + show_input(v));
      table.emplace(v, std::move(*chosen));
    }
    return Channel(std::move(table));
  }

 private:
  struct Slot {
    std::optional<Var> var;     // bound by the pattern or ranging over a carrier
    std::optional<Outcome> literal;
  };
  struct Resolved {
    std::size_t number;
    std::vector<Slot> pattern;  // a slot with neither field is a wildcard
    std::vector<std::pair<Rational, std::vector<Slot>>> ket;
    std::vector<std::tuple<Slot, Slot, bool>> side;
    std::vector<std::pair<Var, TypeName>> extra;  // variables not bound by the pattern
  };

  const Interpretation& interp_;
  TypeList inputs_;
  TypeList outputs_;
  Where at_;

  bool in_carrier(const TypeName& type, const Outcome& x) const {
    const auto& xs = interp_.carriers.at(type);
    return std::find(xs.begin(), xs.end(), x) != xs.end();
  }

  std::string show_input(const Outcome& v) const { return inputs_.size() > 1 ? "(" + v.str() + ")" : v.str(); }

  Resolved resolve(const Row& row, std::size_t number) const {
    Resolved out{number, {}, {}, {}, {}};
    const std::string where = "row " + std::to_string(number);
    if (row.pattern.size() != inputs_.size()) {
      fail(ErrorCode::ElaborationError, at_, where + " has " + std::to_string(row.pattern.size()) +
                                                 " pattern components, expected " + std::to_string(inputs_.size()));
    }
    std::set<Var> bound;
    for (std::size_t i = 0; i < row.pattern.size(); ++i) {
      const Token& t = row.pattern[i];
      Slot s;
      if (t.kind == Token::Kind::Literal) {
        if (!in_carrier(inputs_[i], t.literal)) {
          fail(ErrorCode::ElaborationError, at_, where + ": " + t.literal.str() + " is not a value of " + inputs_[i]);
        }
        s.literal = t.literal;
      } else if (t.kind == Token::Kind::Identifier) {
        if (in_carrier(inputs_[i], Outcome::symbol(t.name))) {
          s.literal = Outcome::symbol(t.name);
        } else {
          s.var = t.name;
          bound.insert(t.name);
        }
      }
      out.pattern.push_back(std::move(s));
    }
    std::map<Var, TypeName> extra;
    for (const auto& term : row.ket) {
      if (term.values.size() != outputs_.size()) {
        fail(ErrorCode::ElaborationError, at_, where + " has a ket of width " + std::to_string(term.values.size()) +
                                                   ", expected " + std::to_string(outputs_.size()));
      }
      std::vector<Slot> slots;
      for (std::size_t j = 0; j < term.values.size(); ++j) {
        const Token& t = term.values[j];
        Slot s;
        if (t.kind == Token::Kind::Wildcard) fail(ErrorCode::ElaborationError, at_, where + ": '_' inside a ket");
        if (t.kind == Token::Kind::Literal) {
          s.literal = t.literal;
        } else if (bound.contains(t.name)) {
          s.var = t.name;
        } else if (in_carrier(outputs_[j], Outcome::symbol(t.name))) {
          s.literal = Outcome::symbol(t.name);
        } else {
          auto [it, fresh] = extra.emplace(t.name, outputs_[j]);
          if (!fresh && it->second != outputs_[j]) {
            fail(ErrorCode::ElaborationError, at_, where + ": " + t.name + " is used at two different types");
          }
          s.var = t.name;
        }
        slots.push_back(std::move(s));
      }
      out.ket.emplace_back(term.weight, std::move(slots));
    }
    auto side_slot = [&](const Token& t) {
      Slot s;
      if (t.kind == Token::Kind::Wildcard) fail(ErrorCode::ElaborationError, at_, where + ": '_' inside FOR");
      if (t.kind == Token::Kind::Literal) {
        s.literal = t.literal;
      } else if (bound.contains(t.name) || extra.contains(t.name)) {
        s.var = t.name;
      } else {
        s.literal = Outcome::symbol(t.name);
      }
      return s;
    };
    for (const auto& c : row.side) out.side.emplace_back(side_slot(c.lhs), side_slot(c.rhs), c.equal);
    out.extra.assign(extra.begin(), extra.end());
    return out;
  }

  static Outcome value_of(const Slot& s, const std::map<Var, Outcome>& env) {
    return s.literal ? *s.literal : env.at(*s.var);
  }

  // The row's distribution at input `parts`, or nullopt when it does not
  // match.
  std::optional<Subdistribution> apply(const Resolved& row, const std::vector<Outcome>& parts, const Outcome& v) const {
    std::map<Var, Outcome> env;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const Slot& s = row.pattern[i];
      if (s.literal && *s.literal != parts[i]) return std::nullopt;
      if (s.var) {
        auto [it, fresh] = env.emplace(*s.var, parts[i]);
        if (!fresh && it->second != parts[i]) return std::nullopt;
      }
    }
    std::optional<Subdistribution> result;
    // Every assignment of the extra variables satisfying the side
    // conditions must give the same distribution.
    std::vector<std::size_t> index(row.extra.size(), 0);
    while (true) {
      for (std::size_t k = 0; k < row.extra.size(); ++k) {
        env[row.extra[k].first] = interp_.carriers.at(row.extra[k].second)[index[k]];
      }
      const bool ok = std::all_of(row.side.begin(), row.side.end(), [&](const auto& c) {
        return (value_of(std::get<0>(c), env) == value_of(std::get<1>(c), env)) == std::get<2>(c);
      });
      if (ok) {
        Subdistribution d = distribution(row, env, v);
        if (result && *result != d) {
          fail(ErrorCode::ElaborationError, at_, "row " + std::to_string(row.number) + " is ambiguous at " +
                                                     show_input(v) + ": " + result->ket() + " or " + d.ket());
        }
        result = std::move(d);
      }
      std::size_t k = 0;
      while (k < index.size() && ++index[k] == interp_.carriers.at(row.extra[k].second).size()) index[k++] = 0;
      if (k == index.size()) break;
    }
    return result;
  }

  Subdistribution distribution(const Resolved& row, const std::map<Var, Outcome>& env, const Outcome& v) const {
    SubdistributionBuilder b;
    for (const auto& [w, slots] : row.ket) {
      std::vector<Outcome> ys;
      for (std::size_t j = 0; j < slots.size(); ++j) {
        Outcome y = value_of(slots[j], env);
        if (!in_carrier(outputs_[j], y)) {
          fail(ErrorCode::ElaborationError, at_, "row " + std::to_string(row.number) + " produces " + y.str() +
                                                     ", not a value of " + outputs_[j]);
        }
        ys.push_back(std::move(y));
      }
      if (w.sign() < 0) {
        fail(ErrorCode::ElaborationError, at_, "row " + std::to_string(row.number) + " has negative weight " + w.str());
      }
      b.add(Outcome::tuple(std::move(ys)), w);
    }
    try {
      return std::move(b).build();
    } catch (const Error&) {
      fail(ErrorCode::ElaborationError, at_, "row " + std::to_string(row.number) + " has mass above 1 at " +
                                                 show_input(v));
    }
  }
};

class Elaborator {
 public:
  Program run(const SourceProgram& source) {
    for (const auto& d : source.declarations) declare(d);
    p_.declarations = source.declarations;
    collect_names(source);
    for (const auto& s : source.statements) statement(s);
    for (const auto& v : source.result) {
      if (!lookup(scope_, v)) fail(ErrorCode::UnboundVariable, {0, 0}, "RETURN mentions unbound variable " + v);
    }
    p_.term.term.result = source.result;
    std::string ret = "RETURN(" + join(source.result, ", ") + ")";
    p_.listing.text.push_back(ret);
    p_.term = typecheck(p_.signature, {}, p_.term.term);
    return std::move(p_);
  }

 private:
  Program p_;
  Context scope_;
  std::set<Var> names_;
  std::size_t fresh_ = 0;

  const std::vector<Outcome>& carrier(const TypeName& type, Where at) const {
    auto it = p_.interpretation.carriers.find(type);
    if (it == p_.interpretation.carriers.end()) fail(ErrorCode::UnknownType, at, "unknown type " + type);
    return it->second;
  }

  void declare(const Declaration& d) {
    std::visit(overloaded{[&](const TypeDecl& t) {
                            const Where at{t.line, 1};
                            if (p_.signature.has_type(t.name)) {
                              fail(ErrorCode::DuplicateDeclaration, at, "type " + t.name + " declared twice");
                            }
                            for (const auto& x : t.values) {
                              if (x.is_tuple()) fail(ErrorCode::ElaborationError, at, "tuple values are not allowed");
                            }
                            p_.signature.add_type(t.name);
                            p_.interpretation.carriers[t.name] = t.values;
                          },
                          [&](const GenDecl& g) {
                            const Where at{g.line, 1};
                            if (p_.signature.find(g.generator.name)) {
                              fail(ErrorCode::DuplicateDeclaration, at, "generator " + g.generator.name + " declared twice");
                            }
                            for (const auto& type : g.generator.inputs) carrier(type, at);
                            for (const auto& type : g.generator.outputs) carrier(type, at);
                            if (g.generator.outputs.empty()) {
                              fail(ErrorCode::ElaborationError, at, "generator " + g.generator.name + " has no outputs");
                            }
                            TableExpander ex(p_.interpretation, g.generator.inputs, g.generator.outputs, at);
                            p_.interpretation.kernels[g.generator.name] = ex.expand(g.table);
                            p_.signature.add_generator(g.generator);
                          }},
               d);
  }

  void collect_names(const SourceProgram& source) {
    for (const auto& s : source.statements) {
      if (const auto* g = std::get_if<SampleStmt>(&s.body)) {
        for (const auto& b : g->outs) names_.insert(b.name);
      }
    }
  }

  Var fresh_name() {
    Var v;
    do {
      v = "_" + std::to_string(++fresh_);
    } while (names_.contains(v));
    names_.insert(v);
    return v;
  }

  TypeName type_of(const Var& v, Where at) const {
    auto t = lookup(scope_, v);
    if (!t) fail(ErrorCode::UnboundVariable, at, "unbound variable " + v);
    return *t;
  }

  // The one declared type whose carrier holds every value in `xs`.
  TypeName infer(const std::vector<Outcome>& xs, Where at, const std::string& what) const {
    std::vector<TypeName> candidates;
    for (const auto& type : p_.signature.types()) {
      const auto& c = p_.interpretation.carriers.at(type);
      if (std::all_of(xs.begin(), xs.end(), [&](const Outcome& x) { return std::find(c.begin(), c.end(), x) != c.end(); })) {
        candidates.push_back(type);
      }
    }
    if (xs.empty() || candidates.size() != 1) {
      fail(ErrorCode::ElaborationError, at,
           "cannot infer the type of " + what + (candidates.size() > 1 ? " (candidates " + join(candidates, ", ") + ")" : "") +
               "; annotate it as `" + what + " : Type`");
    }
    return candidates.front();
  }

  // Adds a synthesised generator, or checks that an existing one with the
  // same name has the same kernel.
  void synthesise(const Generator& g, Channel kernel, const SampleRhs& origin) {
    if (p_.signature.find(g.name)) return;
    p_.signature.add_generator(g);
    p_.interpretation.kernels.emplace(g.name, std::move(kernel));
    p_.origins.emplace(g.name, origin);
  }

  void bind_outputs(const SampleStmt& g, const TypeList& types, Where at) {
    for (std::size_t k = 0; k < g.outs.size(); ++k) {
      const Binder& b = g.outs[k];
      if (lookup(scope_, b.name)) fail(ErrorCode::NonFreshOutput, at, "variable " + b.name + " is already bound");
      for (std::size_t j = 0; j < k; ++j) {
        if (g.outs[j].name == b.name) fail(ErrorCode::NonFreshOutput, at, "variable " + b.name + " bound twice");
      }
      if (b.type && *b.type != types[k]) {
        fail(ErrorCode::TypeMismatch, at, b.name + " is annotated " + *b.type + " but has type " + types[k]);
      }
    }
    for (std::size_t k = 0; k < g.outs.size(); ++k) scope_.push_back({g.outs[k].name, types[k]});
  }

  void emit(Statement s) {
    p_.term.term.body.push_back(std::move(s));
    p_.listing.line_of.push_back(p_.listing.text.size());
  }

  void statement(const SourceStatement& s) {
    const Where at{s.line, s.column};
    std::visit(overloaded{[&](const SampleStmt& g) { sample(g, at); }, [&](const ObserveStmt& o) { observe(o, at); }},
               s.body);
    p_.listing.text.push_back(pretty(s));
  }

  void sample(const SampleStmt& g, Where at) {
    std::vector<Var> outs;
    for (const auto& b : g.outs) outs.push_back(b.name);
    std::visit(
        overloaded{
            [&](const UniformRhs& u) {
              if (g.outs.size() != 1) fail(ErrorCode::ElaborationError, at, "UNIFORM binds exactly one variable");
              const TypeName type = g.outs[0].type ? *g.outs[0].type : infer(u.values, at, g.outs[0].name);
              const auto& c = carrier(type, at);
              std::vector<std::string> shown;
              for (const auto& x : u.values) {
                if (std::find(c.begin(), c.end(), x) == c.end()) {
                  fail(ErrorCode::ElaborationError, at, x.str() + " is not a value of " + type);
                }
                shown.push_back(x.str());
              }
              const Generator gen{"UNIFORM:" + type + "{" + join(shown, ",") + "}", {}, {type}};
              synthesise(gen, Channel(Channel::Table{{Outcome::unit(), uniform(u.values)}}), u);
              bind_outputs(g, gen.outputs, at);
              emit(Sample{gen.name, {}, outs});
            },
            [&](const CaseRhs& c) {
              if (g.outs.size() != 1) fail(ErrorCode::ElaborationError, at, "CASE binds exactly one variable");
              TypeList inputs;
              for (const auto& v : c.scrutinee) inputs.push_back(type_of(v, at));
              const TypeName out = g.outs[0].type ? *g.outs[0].type : infer_case(c, inputs, at, g.outs[0].name);
              carrier(out, at);
              const Channel kernel = TableExpander(p_.interpretation, inputs, {out}, at).expand(c.rows);
              std::vector<std::string> rows;
              for (const auto& [x, d] : kernel.table()) rows.push_back(x.str() + ":" + d.ket());
              const Generator gen{"CASE:(" + join(inputs, ",") + ")->" + out + "{" + join(rows, ";") + "}", inputs, {out}};
              synthesise(gen, kernel, c);
              bind_outputs(g, gen.outputs, at);
              emit(Sample{gen.name, c.scrutinee, outs});
            },
            [&](const CallRhs& call) {
              const Generator* gen = p_.signature.find(call.generator);
              if (!gen || p_.origins.contains(call.generator)) {
                fail(ErrorCode::UnknownGenerator, at, "unknown generator " + call.generator);
              }
              if (gen->inputs.size() != call.args.size() || gen->outputs.size() != g.outs.size()) {
                fail(ErrorCode::ArityMismatch, at,
                     call.generator + " takes " + std::to_string(gen->inputs.size()) + " arguments and binds " +
                         std::to_string(gen->outputs.size()) + " variables");
              }
              for (std::size_t k = 0; k < call.args.size(); ++k) {
                const TypeName have = type_of(call.args[k], at);
                if (have != gen->inputs[k]) {
                  fail(ErrorCode::TypeMismatch, at, "argument " + call.args[k] + " has type " + have + ", " +
                                                        call.generator + " expects " + gen->inputs[k]);
                }
              }
              const TypeList types = gen->outputs;
              bind_outputs(g, types, at);
              emit(Sample{call.generator, call.args, outs});
            }},
        g.rhs);
  }

  // Output type of a CASE from the values its kets mention: identifiers
  // bound by a pattern or constrained in FOR are variables, the rest are
  // values.
  TypeName infer_case(const CaseRhs& c, const TypeList& inputs, Where at, const Var& out) const {
    std::vector<Outcome> xs;
    for (const auto& row : c.rows) {
      std::set<std::string> vars;
      for (std::size_t i = 0; i < row.pattern.size() && i < inputs.size(); ++i) {
        const Token& t = row.pattern[i];
        const auto& cin = carrier(inputs[i], at);
        if (t.kind == Token::Kind::Identifier &&
            std::find(cin.begin(), cin.end(), Outcome::symbol(t.name)) == cin.end()) {
          vars.insert(t.name);
        }
      }
      for (const auto& side : row.side) {
        for (const Token* t : {&side.lhs, &side.rhs}) {
          if (t->kind == Token::Kind::Identifier) vars.insert(t->name);
        }
      }
      for (const auto& term : row.ket) {
        for (const auto& t : term.values) {
          if (t.kind == Token::Kind::Literal) xs.push_back(t.literal);
          if (t.kind == Token::Kind::Identifier && !vars.contains(t.name)) xs.push_back(Outcome::symbol(t.name));
        }
      }
    }
    return infer(xs, at, out);
  }

  // A nullary generator with a single output named by `name`, if any.
  const Generator* constant(const std::string& name) const {
    if (lookup(scope_, name)) return nullptr;
    const Generator* g = p_.signature.find(name);
    if (!g || p_.origins.contains(name) || !g->inputs.empty() || g->outputs.size() != 1) return nullptr;
    return g;
  }

  void observe(const ObserveStmt& o, Where at) {
    const auto& atoms = o.predicate.conjuncts;
    if (atoms.size() == 1) {
      if (const auto* cmp = std::get_if<Comparison>(&atoms[0]); cmp && cmp->equal && cmp->lhs.is_var() && cmp->rhs.is_var()) {
        const Var& a = cmp->lhs.var();
        const Var& b = cmp->rhs.var();
        const bool a_bound = lookup(scope_, a).has_value();
        const bool b_bound = lookup(scope_, b).has_value();
        if (a_bound && b_bound) {
          if (type_of(a, at) != type_of(b, at)) {
            fail(ErrorCode::TypeMismatch, at, "observed variables " + a + " : " + type_of(a, at) + " and " + b + " : " +
                                                  type_of(b, at) + " differ in type");
          }
          emit(Observe{a, b});
          return;
        }
        // OBSERVE(x = a) for a nullary generator a.
        const Generator* ga = a_bound ? nullptr : constant(a);
        const Generator* gb = b_bound ? nullptr : constant(b);
        if ((a_bound && gb) || (b_bound && ga)) {
          const Generator* gen = a_bound ? gb : ga;
          const Var& x = a_bound ? a : b;
          if (gen->outputs[0] != type_of(x, at)) {
            fail(ErrorCode::TypeMismatch, at, gen->name + " produces " + gen->outputs[0] + ", " + x + " has type " +
                                                  type_of(x, at));
          }
          const Var k = fresh_name();
          emit(Sample{gen->name, {}, {k}});
          scope_.push_back({k, gen->outputs[0]});
          emit(a_bound ? Observe{a, k} : Observe{k, b});
          return;
        }
      }
    }
    Predicate resolved;
    auto resolve = [&](const Operand& op) -> Operand {
      if (!op.is_var() || lookup(scope_, op.var())) return op;
      if (constant(op.var())) {
        fail(ErrorCode::ElaborationError, at, "generator " + op.var() + " can only be observed alone, as OBSERVE(x = " +
                                                  op.var() + ")");
      }
      return Operand{Outcome::symbol(op.var())};
    };
    for (const auto& atom : atoms) {
      resolved.conjuncts.push_back(std::visit(
          overloaded{[&](const Comparison& c) -> Atom { return Comparison{resolve(c.lhs), resolve(c.rhs), c.equal}; },
                     [&](const Membership& m) -> Atom {
                       type_of(m.set, at);
                       return m;
                     }},
          atom));
    }
    for (const auto& atom : resolved.conjuncts) {
      if (const auto* c = std::get_if<Comparison>(&atom); c && !c->lhs.is_var() && !c->rhs.is_var()) {
        fail(ErrorCode::PredicateTypeError, at, "OBSERVE(" + render(resolved) + ") compares two values");
      }
    }
    try {
      check_predicate(resolved, scope_, p_.interpretation);
    } catch (const SourceError&) {
      throw;
    } catch (const Error& e) {
      fail(e.code(), at, e.what());
    }
    emit(Condition{std::move(resolved)});
  }
};

Token literal_token(const Outcome& x) {
  return x.is_symbol() ? Token::identifier(x.name()) : Token::value(x);
}

std::vector<KetTerm> ket_of(const Subdistribution& d, std::size_t width) {
  std::vector<KetTerm> out;
  for (const auto& [y, w] : d) {
    KetTerm t{w, {}};
    for (const auto& part : split(y, width)) t.values.push_back(literal_token(part));
    out.push_back(std::move(t));
  }
  return out;
}

SourceStatement statement_of(const Statement& s, const Signature& sig, const std::map<std::string, SampleRhs>& origins) {
  SourceStatement out;
  out.body = std::visit(
      overloaded{[&](const Sample& g) -> std::variant<SampleStmt, ObserveStmt> {
                   SampleStmt stmt;
                   auto it = origins.find(g.generator);
                   const Generator& gen = sig.at(g.generator);
                   for (std::size_t k = 0; k < g.outs.size(); ++k) {
                     std::optional<TypeName> type;
                     if (it != origins.end()) type = gen.outputs[k];
                     stmt.outs.push_back({g.outs[k], type});
                   }
                   if (it == origins.end()) {
                     stmt.rhs = CallRhs{g.generator, g.args};
                   } else if (const auto* c = std::get_if<CaseRhs>(&it->second)) {
                     CaseRhs moved = *c;
                     moved.scrutinee = g.args;
                     stmt.rhs = std::move(moved);
                   } else {
                     stmt.rhs = it->second;
                   }
                   return stmt;
                 },
                 [](const Observe& o) -> std::variant<SampleStmt, ObserveStmt> {
                   return ObserveStmt{Predicate{{Comparison{Operand{o.lhs}, Operand{o.rhs}, true}}}};
                 },
                 [](const Condition& c) -> std::variant<SampleStmt, ObserveStmt> {
                   // Symbols print bare, as they were written.
                   Predicate p;
                   for (const auto& atom : c.predicate.conjuncts) {
                     if (const auto* cmp = std::get_if<Comparison>(&atom)) {
                       auto bare = [](const Operand& op) {
                         return !op.is_var() && op.literal().is_symbol() ? Operand{Var(op.literal().name())} : op;
                       };
                       p.conjuncts.push_back(Comparison{bare(cmp->lhs), bare(cmp->rhs), cmp->equal});
                     } else {
                       p.conjuncts.push_back(atom);
                     }
                   }
                   return ObserveStmt{std::move(p)};
                 }},
      s);
  return out;
}

}  // namespace

Program elaborate(const SourceProgram& source) { return Elaborator().run(source); }

Program load(std::string_view text) { return elaborate(parse(text)); }

SourceProgram to_source(const Program& p, const Term& t) {
  SourceProgram out;
  out.declarations = p.declarations;
  for (const auto& s : t.body) out.statements.push_back(statement_of(s, p.signature, p.origins));
  out.result = t.result;
  return out;
}

SourceProgram to_source(const Signature& sig, const Interpretation& interp, const Term& t) {
  SourceProgram out;
  for (const auto& type : sig.types()) out.declarations.push_back(TypeDecl{type, interp.carriers.at(type), 0});
  for (const auto& [name, gen] : sig.generators()) {
    GenDecl d{gen, {}, 0};
    const Channel& k = interp.kernels.at(name);
    for (const auto& [x, dist] : k.table()) {
      Row row;
      if (!gen.inputs.empty()) {
        for (const auto& part : split(x, gen.inputs.size())) row.pattern.push_back(literal_token(part));
        row.parenthesized = gen.inputs.size() > 1;
      }
      row.ket = ket_of(dist, gen.outputs.size());
      d.table.push_back(std::move(row));
    }
    out.declarations.push_back(std::move(d));
  }
  for (const auto& s : t.body) out.statements.push_back(statement_of(s, sig, {}));
  out.result = t.result;
  return out;
}

}  // namespace arrow
