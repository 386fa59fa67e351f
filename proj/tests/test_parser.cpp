#include <filesystem>
#include <fstream>
#include <sstream>

#include "arrow/error.hpp"
#include "arrow/parser.hpp"
#include "arrow/proptest.hpp"
#include "doctest.h"

using namespace arrow;

namespace {

const char* kMontyHall = R"(
TYPE Door = {L, M, R}

car <- UNIFORM {L, M, R}
host <- CASE car OF
  L -> 1|R>;
  M -> 1/2|L> + 1/2|R>;
  R -> 1|L>
OBSERVE(host = L)
RETURN(car)
)";

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ErrorCode code_of(const std::string& text) {
  try {
    load(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("program was accepted: " << text);
  return ErrorCode::DomainError;
}

std::size_t line_of(const std::string& text) {
  try {
    load(text);
  } catch (const SourceError& e) {
    return e.line();
  }
  return 0;
}

Subdistribution run(const Program& p) { return interpret(p.signature, p.term, p.interpretation, Outcome::unit()); }

}  // namespace

TEST_CASE("the Monty Hall program parses, elaborates and typechecks") {
  const Program p = load(kMontyHall);
  const Term& t = p.term.term;
  REQUIRE(t.body.size() == 3);
  CHECK(std::holds_alternative<Sample>(t.body[0]));
  CHECK(std::get<Sample>(t.body[1]).args == std::vector<Var>{"car"});
  CHECK(std::holds_alternative<Condition>(t.body[2]));
  CHECK(t.result == std::vector<Var>{"car"});
  CHECK(p.term.outputs == TypeList{"Door"});
  CHECK(run(p).ket() == "1/6|M> + 1/3|R>");
  CHECK(p.listing.text.back() == "RETURN(car)");
}

TEST_CASE("an inequality against a literal is a predicate observe") {
  const Program p = load("TYPE Door = {L, M, R}\ncar <- UNIFORM {L, M, R}\nOBSERVE(car != L)\nRETURN(car)\n");
  const auto& c = std::get<Condition>(p.term.term.body[1]);
  REQUIRE(c.predicate.conjuncts.size() == 1);
  const auto& cmp = std::get<Comparison>(c.predicate.conjuncts[0]);
  CHECK_FALSE(cmp.equal);
  CHECK(cmp.lhs.var() == "car");
  CHECK(cmp.rhs.literal() == Outcome::symbol("L"));
  CHECK(run(p).ket() == "1/3|M> + 1/3|R>");
}

TEST_CASE("a CASE that misses carrier values is rejected") {
  const std::string text = "TYPE Door = {L, M, R}\ny <- UNIFORM {L, M, R}\nx <- CASE y OF L -> 1|R>\nRETURN(x)\n";
  CHECK(code_of(text) == ErrorCode::ElaborationError);
  CHECK(line_of(text) == 3);
}

TEST_CASE("rational literals print in lowest terms") {
  const SourceProgram p = parse("TYPE C = {H, T}\nGEN f() -> (C) = 2/4|H> + 2/4|T>\nx <- f()\nRETURN(x)\n");
  CHECK(pretty(p).find("GEN f() -> (C) = 1/2|H> + 1/2|T>") != std::string::npos);
}

TEST_CASE("pretty printing is stable and round-trips") {
  const SourceProgram p = parse(kMontyHall);
  const std::string once = pretty(p);
  CHECK(pretty(parse(once)) == once);
  CHECK(parse(once) == p);
  CHECK(once ==
        "TYPE Door = {L, M, R}\n\n"
        "car <- UNIFORM {L, M, R}\n"
        "host <- CASE car OF\n"
        "  L -> 1|R>;\n"
        "  M -> 1/2|L> + 1/2|R>;\n"
        "  R -> 1|L>\n"
        "OBSERVE(host = L)\n"
        "RETURN(car)\n");
}

TEST_CASE("every corpus program round-trips through the pretty printer") {
  std::size_t seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(ARROW_PUZZLES_DIR)) {
    if (entry.path().extension() != ".arrow") continue;
    ++seen;
    CAPTURE(entry.path().string());
    const std::string text = slurp(entry.path());
    const SourceProgram p = parse(text);
    const std::string once = pretty(p);
    CHECK(pretty(parse(once)) == once);
    const Program a = elaborate(p);
    const Program b = load(once);
    CHECK(alpha_eq(a.term.term, b.term.term));
    CHECK(run(a) == run(b));
    // Source regenerated from the core term elaborates to the same term.
    const Program c = load(pretty(to_source(a, a.term.term)));
    CHECK(alpha_eq(a.term.term, c.term.term));
    CHECK(run(a) == run(c));
  }
  CHECK(seen >= 7);
}

TEST_CASE("random programs round-trip through source") {
  proptest::GenBudget budget;
  budget.closed = true;
  budget.conditions = true;
  budget.seed = 11;
  proptest::Gen gen(budget);
  for (int trial = 0; trial < 300; ++trial) {
    const auto g = gen.term();
    const Interpretation interp = gen.interpretation(g.signature);
    const TypedTerm typed = typecheck(g.signature, {}, g.term);
    const std::string text = pretty(to_source(g.signature, interp, g.term));
    CAPTURE(text);
    const Program p = load(text);
    CHECK(alpha_eq(p.term.term, g.term));
    CHECK(pretty(parse(text)) == text);
    CHECK(run(p) == interpret(g.signature, typed, interp, Outcome::unit()));
  }
}

TEST_CASE("FOR side conditions expand over the carriers") {
  const Program p = load(R"(
TYPE Door = {L, M, R}
car <- UNIFORM {L, M, R}
player <- UNIFORM {L, M, R}
host : Door <- CASE (car, player) OF
  (x, x) -> 1/2|y> + 1/2|z> FOR x != y, y != z, z != x;
  (x, y) -> 1|z> FOR x != y, y != z, z != x
RETURN(car, player, host)
)");
  const Channel& k = p.interpretation.kernels.at(std::get<Sample>(p.term.term.body[2]).generator);
  auto at = [&](const char* a, const char* b) {
    return k(Outcome::tuple({Outcome::symbol(a), Outcome::symbol(b)})).ket();
  };
  CHECK(at("L", "L") == "1/2|M> + 1/2|R>");
  CHECK(at("M", "M") == "1/2|L> + 1/2|R>");
  CHECK(at("L", "M") == "1|R>");
  CHECK(at("R", "L") == "1|M>");
}

TEST_CASE("first matching row wins and wildcards match anything") {
  const Program p = load(R"(
TYPE C = {H, T}
c <- UNIFORM {H, T}
d <- CASE c OF H -> 1|T>; _ -> 1/3|H>
RETURN(d)
)");
  CHECK(run(p).ket() == "1/6|H> + 1/2|T>");
}

TEST_CASE("a nullary generator can be observed directly") {
  const Program p = load(R"(
TYPE Door = {L, M, R}
GEN left() -> (Door) = 1|L>
car <- UNIFORM {L, M, R}
host <- CASE car OF L -> 1|R>; M -> 1/2|L> + 1/2|R>; R -> 1|L>
OBSERVE(host = left)
RETURN(car)
)");
  const Term& t = p.term.term;
  REQUIRE(t.body.size() == 4);
  const auto& s = std::get<Sample>(t.body[2]);
  CHECK(s.generator == "left");
  CHECK(std::get<Observe>(t.body[3]) == Observe{"host", s.outs[0]});
  CHECK(p.listing.line_of == std::vector<std::size_t>{0, 1, 2, 2});
  CHECK(p.listing.text[2] == "OBSERVE(host = left)");
  CHECK(run(p).ket() == "1/6|M> + 1/3|R>");
}

TEST_CASE("sets, dollar amounts, dashes and comments") {
  const Program p = load(R"(
# ports a child may live in
TYPE Ports = {{A}, {B}, {A, B}}
TYPE Dollars = {$0, $10}
GEN pay() -> (Dollars) = 1/2|$0> + 1/2|$10>  # fair
x <- pay()
the-ports <- CASE x OF $0 -> 1|{A}>; $10 -> 1|{B, A}>
OBSERVE(B IN the-ports)
RETURN(the-ports, x)
)");
  CHECK(run(p).ket() == "1/2|{A,B},$10>");
}

TEST_CASE("elaboration errors point at the statement") {
  const std::string door = "TYPE Door = {L, M, R}\n";
  CHECK(code_of(door + "x <- UNIFORM {L, M}\nRETURN(y)\n") == ErrorCode::UnboundVariable);
  CHECK(code_of(door + "x <- UNIFORM {L, M}\nx <- UNIFORM {L}\nRETURN(x)\n") == ErrorCode::NonFreshOutput);
  CHECK(code_of(door + "x <- f()\nRETURN(x)\n") == ErrorCode::UnknownGenerator);
  CHECK(code_of(door + "GEN f(Door) -> (Door) = _ -> 1|L>\nx <- f()\nRETURN(x)\n") == ErrorCode::ArityMismatch);
  CHECK(code_of(door + "TYPE C = {H}\nx <- UNIFORM {L}\ny <- UNIFORM {H}\nOBSERVE(x = y)\nRETURN(x)\n") ==
        ErrorCode::TypeMismatch);
  CHECK(code_of(door + "x <- UNIFORM {L}\nOBSERVE(x != Q)\nRETURN(x)\n") == ErrorCode::PredicateTypeError);
  CHECK(code_of(door + "x <- UNIFORM {L}\nOBSERVE(L IN x)\nRETURN(x)\n") == ErrorCode::PredicateTypeError);
  CHECK(code_of(door + "TYPE Door = {A}\nRETURN()\n") == ErrorCode::DuplicateDeclaration);
  CHECK(code_of(door + "x <- UNIFORM {L}\ny <- CASE x OF _ -> 2/3|L> + 2/3|M>\nRETURN(y)\n") ==
        ErrorCode::ElaborationError);
  CHECK(code_of(door + "x <- UNIFORM {L}\ny <- CASE x OF _ -> 1|Q>\nRETURN(y)\n") == ErrorCode::ElaborationError);
  // y ranges over two values satisfying the side condition.
  CHECK(code_of(door + "x <- UNIFORM {L}\ny : Door <- CASE x OF z -> 1|y> FOR y != z\nRETURN(y)\n") ==
        ErrorCode::ElaborationError);
  // Two types contain L, so the output type needs an annotation.
  CHECK(code_of(door + "TYPE Side = {L, R}\nx <- UNIFORM {L}\nRETURN(x)\n") == ErrorCode::ElaborationError);
  CHECK(load(door + "TYPE Side = {L, R}\nx : Side <- UNIFORM {L}\nRETURN(x)\n").term.outputs == TypeList{"Side"});
  CHECK(line_of(door + "x <- UNIFORM {L}\n\nOBSERVE(x = zz)\nRETURN(x)\n") == 4);
}

TEST_CASE("syntax errors carry line and column") {
  try {
    parse("TYPE Door = {L, M, R}\nx <- UNIFORM {L\nRETURN(x)\n");
    FAIL("accepted");
  } catch (const SourceError& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse("x <- UNIFORM {L}\n"), SourceError);
  CHECK_THROWS_AS(parse("RETURN(x)\nx <- UNIFORM {L}\n"), SourceError);
  CHECK_THROWS_AS(parse("OBSERVE(x < y)\nRETURN(x)\n"), SourceError);
}
