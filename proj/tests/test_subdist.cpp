#include <random>

#include "arrow/error.hpp"
#include "arrow/subdist.hpp"
#include "doctest.h"

using namespace arrow;

namespace {

Outcome s(const char* n) { return Outcome::symbol(n); }
Outcome tup(std::initializer_list<Outcome> xs) { return Outcome::tuple(xs); }
Rational q(std::int64_t a, std::int64_t b = 1) { return Rational(a, b); }

Subdistribution random_subdist(std::mt19937_64& rng, int support, int den) {
  // Integer weights over a common denominator keep the mass bound exact.
  std::uniform_int_distribution<int> pick(0, den);
  Subdistribution::Entries e;
  int left = den;
  for (int i = 0; i < support && left > 0; ++i) {
    const int w = std::min(left, pick(rng) % (left + 1));
    left -= w;
    if (w) e.emplace(Outcome::integer(i), q(w, den));
  }
  return Subdistribution(std::move(e));
}

}  // namespace

TEST_CASE("rational arithmetic is exact and canonical") {
  CHECK(q(2, 4) == q(1, 2));
  CHECK(q(2, 4).str() == "1/2");
  CHECK(q(-3, -6).str() == "1/2");
  CHECK(q(4, 2).str() == "2");
  CHECK(q(1, 3) + q(1, 6) == q(1, 2));
  CHECK(q(1, 3) * q(3, 4) == q(1, 4));
  CHECK(q(1, 6) / q(1, 2) == q(1, 3));
  CHECK(Rational::parse("6/8") == q(3, 4));
  CHECK_THROWS_AS(Rational::parse("1/0"), Error);
  CHECK_THROWS_AS(q(1) / q(0), Error);
}

TEST_CASE("outcome rendering and order") {
  CHECK(tup({s("M"), s("L")}).str() == "M,L");
  CHECK(Outcome::set({s("B"), s("A"), s("A")}).str() == "{A,B}");
  CHECK(Outcome::integer(10, true).str() == "$10");
  CHECK(tup({s("a"), tup({s("b"), s("c")})}).str() == "a,(b,c)");
  CHECK(tup({s("x")}) == s("x"));
  CHECK(s("A") < s("B"));
  CHECK(Outcome::integer(2) < Outcome::integer(10));
  CHECK(concat(tup({s("a"), s("b")}), s("c")) == tup({s("a"), s("b"), s("c")}));
  CHECK(concat(Outcome::unit(), s("c")) == s("c"));
}

TEST_CASE("dirac") {
  CHECK(dirac(s("H")).ket() == "1|H>");
  CHECK(dirac(tup({s("M"), s("L")})).ket() == "1|M,L>");
  CHECK(dirac(Outcome::set({s("A"), s("B")})).ket() == "1|{A,B}>");
}

TEST_CASE("uniform") {
  CHECK(uniform({s("L"), s("M"), s("R")}).ket() == "1/3|L> + 1/3|M> + 1/3|R>");
  CHECK(uniform({s("H")}).ket() == "1|H>");
  CHECK(uniform({s("a"), s("b")}).ket() == "1/2|a> + 1/2|b>");
  std::vector<Outcome> none;
  try {
    uniform(none);
    FAIL("expected EmptySupport");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptySupport);
  }
}

TEST_CASE("tensor") {
  const auto coin = uniform({s("H"), s("T")});
  const auto ab = uniform({s("A"), s("B")});
  CHECK(tensor(coin, ab).ket() == "1/4|H,A> + 1/4|H,B> + 1/4|T,A> + 1/4|T,B>");
  CHECK(tensor(coin, dirac(Outcome::unit())) == coin);
  const Subdistribution l{{s("L"), q(1, 3)}};
  const Subdistribution xy{{s("x"), q(1, 2)}, {s("y"), q(1, 4)}};
  const auto lxy = tensor(l, xy);
  CHECK(lxy.weight(tup({s("L"), s("x")})) == q(1, 6));
  CHECK(lxy.weight(tup({s("L"), s("y")})) == q(1, 12));
  CHECK(lxy.size() == 2);
}

TEST_CASE("restrict") {
  const Subdistribution host{{tup({s("L"), s("R")}), q(1, 3)},
                             {tup({s("M"), s("L")}), q(1, 6)},
                             {tup({s("M"), s("R")}), q(1, 6)},
                             {tup({s("R"), s("L")}), q(1, 3)}};
  const auto kept = restrict(host, [](const Outcome& x) { return x.items()[1] == Outcome::symbol("L"); });
  CHECK(kept.ket() == "1/6|M,L> + 1/3|R,L>");
  CHECK(restrict(host, [](const Outcome&) { return true; }) == host);
  const auto doors = uniform({s("L"), s("M"), s("R")});
  CHECK(restrict(doors, [](const Outcome& x) { return x != Outcome::symbol("L"); }).ket() == "1/3|M> + 1/3|R>");
}

TEST_CASE("rescale") {
  const Subdistribution mr{{s("M"), q(1, 6)}, {s("R"), q(1, 3)}};
  auto r = rescale(mr);
  REQUIRE(r);
  CHECK(r->validity == q(1, 2));
  CHECK(r->posterior.ket() == "1/3|M> + 2/3|R>");
  CHECK_FALSE(rescale(Subdistribution::zero()));
  auto sailor = rescale(Subdistribution{{s("H"), q(1, 4)}, {s("T"), q(1, 2)}});
  REQUIRE(sailor);
  CHECK(sailor->validity == q(3, 4));
  CHECK(sailor->posterior.ket() == "1/3|H> + 2/3|T>");
}

TEST_CASE("kleisli extension") {
  const auto doors = uniform({s("L"), s("M"), s("R")});
  CHECK(kleisli_extend([](const Outcome& x) { return dirac(x); }, doors) == doors);
  const Channel host(Channel::Table{{s("L"), dirac(s("R"))},
                                    {s("M"), uniform({s("L"), s("R")})},
                                    {s("R"), dirac(s("L"))}});
  CHECK(kleisli_extend(host, dirac(s("M"))) == host(s("M")));
  // By hand: 1/3 R + 1/6 L + 1/6 R + 1/3 L.
  CHECK(kleisli_extend(host, doors) == Subdistribution{{s("L"), q(1, 2)}, {s("R"), q(1, 2)}});
  const Channel partial(Channel::Table{{s("L"), dirac(s("R"))}});
  try {
    kleisli_extend(partial, doors);
    FAIL("expected DomainError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DomainError);
  }
}

TEST_CASE("normalize_channel") {
  const Channel stochastic(Channel::Table{{s("a"), uniform({s("L"), s("R")})}, {s("b"), dirac(s("L"))}});
  CHECK(normalize_channel(stochastic) == stochastic);
  const Channel f(Channel::Table{{s("x"), Subdistribution{{s("M"), q(1, 6)}, {s("R"), q(1, 3)}}},
                                 {s("y"), Subdistribution::zero()}});
  const auto n = normalize_channel(f);
  CHECK(n(s("x")).ket() == "1/3|M> + 2/3|R>");
  CHECK(n(s("y")).empty());
}

TEST_CASE("expected value") {
  const Subdistribution a{{Outcome::integer(11, true), q(1, 5)}, {Outcome::integer(1, true), q(4, 5)}};
  CHECK(expected_value(a) == q(3));
  const Subdistribution b{{Outcome::integer(10, true), q(4, 5)}, {Outcome::integer(0, true), q(1, 5)}};
  CHECK(expected_value(b) == q(8));
  CHECK(expected_value(dirac(Outcome::integer(0))) == q(0));
  try {
    expected_value(dirac(s("H")));
    FAIL("expected NonNumericOutcome");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonNumericOutcome);
  }
}

TEST_CASE("mass overflow is rejected") {
  CHECK_THROWS_AS((Subdistribution{{s("a"), q(2, 3)}, {s("b"), q(2, 3)}}), Error);
  CHECK_THROWS_AS((Subdistribution{{s("a"), q(-1, 3)}}), Error);
}

TEST_CASE("subdistribution properties on random inputs") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = random_subdist(rng, 4, 8);
    const auto b = random_subdist(rng, 3, 6);
    CHECK(tensor(a, b).mass() == a.mass() * b.mass());

    auto even = [](const Outcome& x) { return x.value() % 2 == 0; };
    const auto u = restrict(a, even);
    const auto nu = restrict(a, [&](const Outcome& x) { return !even(x); });
    CHECK(add(u, nu) == a);
    CHECK(u.mass() <= a.mass());

    if (auto r = rescale(a)) {
      CHECK(scale(r->validity, r->posterior) == a);
      CHECK(r->posterior.mass() == q(1));
    } else {
      CHECK(a.empty());
    }

    // Linearity with a = 1/2, b = 1/2 so the mixture stays within mass one.
    Channel::Table t;
    for (int i = 0; i < 4; ++i) t.emplace(Outcome::integer(i), random_subdist(rng, 3, 4));
    const Channel f(std::move(t));
    const auto mix = add(scale(q(1, 2), a), scale(q(1, 2), b));
    CHECK(kleisli_extend(f, mix) ==
          add(scale(q(1, 2), kleisli_extend(f, a)), scale(q(1, 2), kleisli_extend(f, b))));

    const auto n = normalize_channel(f);
    for (const auto& [x, d] : f.table()) {
      CHECK(scale(d.mass(), n(x)) == d);
      CHECK((n(x).mass() == q(0) || n(x).mass() == q(1)));
    }

    Channel::Table gt;
    for (int i = 0; i < 3; ++i) gt.emplace(Outcome::integer(i), random_subdist(rng, 4, 5));
    const Channel g(std::move(gt));
    CHECK(normalize_channel(kleisli_compose(f, g)) == normalize_channel(kleisli_compose(normalize_channel(f), g)));
  }
}
