#include <doctest.h>

#include "forge/terms.hpp"
#include "oracles.hpp"

using namespace forge;

namespace {

  Signature dl01() {
    return Signature("DL01", {{"meet", 2}, {"join", 2}, {"bot", 0}, {"top", 0}});
  }

  Signature ka() {
    return Signature("KA", {{"meet", 2}, {"join", 2}, {"neg", 1}, {"bot", 0},
                            {"top", 0}});
  }

  Term random_term(Signature const& sig, std::size_t vars, int depth) {
    auto& gen = oracle::rng();
    if (depth == 0 || gen() % 4 == 0) {
      auto choice = gen() % (vars + sig.size());
      if (choice < vars) {
        return Term::var(choice);
      }
      for (std::size_t s = 0; s < sig.size(); ++s) {
        if (sig.arity(s) == 0) {
          return Term::app(s);
        }
      }
      return Term::var(0);
    }
    auto              s = gen() % sig.size();
    std::vector<Term> args;
    for (std::size_t i = 0; i < sig.arity(s); ++i) {
      args.push_back(random_term(sig, vars, depth - 1));
    }
    return Term::app(s, std::move(args));
  }

}  // namespace

TEST_CASE("parse builds the expected syntax tree") {
  auto sig = dl01();
  auto t   = parse_term("meet(x0, join(x1, x0))", sig);
  CHECK(t == Term::app(0, {Term::var(0),
                           Term::app(1, {Term::var(1), Term::var(0)})}));
  CHECK(parse_term("bot", sig) == Term::app(2));
  CHECK(parse_term("  top ", sig) == Term::app(3));
}

TEST_CASE("parse errors") {
  auto sig = dl01();
  CHECK_THROWS_AS(parse_term("meet(x0)", sig), ParseError);
  CHECK_THROWS_AS(parse_term("meet(x0, x1", sig), ParseError);
  CHECK_THROWS_AS(parse_term("frob(x0)", sig), ParseError);
  CHECK_THROWS_AS(parse_term("bot()", sig), ParseError);
  CHECK_THROWS_AS(parse_term("", sig), ParseError);
  CHECK_THROWS_AS(parse_term("meet(x0, x1) x2", sig), ParseError);
  try {
    parse_term("meet(x0, ?)", sig);
    FAIL("expected a parse error");
  } catch (ParseError const& e) {
    CHECK(e.position() == 9);
  }
}

TEST_CASE("block variables") {
  auto sig = dl01();
  CHECK(parse_term("x1_0", sig, 2) == Term::var(2));
  CHECK(parse_term("x2_1", sig, 3) == Term::var(7));
  CHECK(parse_term("x5", sig, 3) == Term::var(5));
  CHECK_THROWS_AS(parse_term("x1_0", sig), ParseError);
  CHECK_THROWS_AS(parse_term("x1_3", sig, 3), ParseError);
}

TEST_CASE("signature validation") {
  CHECK_THROWS_AS(Signature("S", {{"f", 1}, {"f", 2}}), Error);
  CHECK_THROWS_AS(Signature("S", {{"x1", 1}}), Error);
  CHECK_THROWS_AS(Signature("S", {{"1f", 1}}), Error);
  auto sig = ka();
  CHECK(sig.index_of("neg") == 2);
  CHECK_FALSE(sig.find("imp"));
  CHECK(sig.has_constants());
  CHECK(sig.max_arity() == 2);
}

TEST_CASE("substitute") {
  auto sig = ka();
  auto s   = parse_term("join(x1, top)", sig);
  CHECK(substitute(Term::var(0), std::map<std::size_t, Term>{{0, s}}) == s);
  auto m = parse_term("meet(x0, x1)", sig);
  CHECK(substitute(m, std::map<std::size_t, Term>{}) == m);
  auto n = parse_term("neg(x0)", sig);
  CHECK(substitute(n, std::map<std::size_t, Term>{{0, n}})
        == parse_term("neg(neg(x0))", sig));
  // Simultaneous, not sequential.
  std::map<std::size_t, Term> swap{{0, Term::var(1)}, {1, Term::var(0)}};
  CHECK(substitute(m, swap) == parse_term("meet(x1, x0)", sig));
}

TEST_CASE("variables_of") {
  auto sig = ka();
  CHECK(variables_of(Term::var(3)) == std::vector<std::size_t>{3});
  CHECK(variables_of(parse_term("bot", sig)).empty());
  CHECK(variables_of(parse_term("meet(x1, join(x0, x1))", sig))
        == std::vector<std::size_t>{0, 1});
  CHECK(variable_bound(parse_term("meet(x1, x4)", sig)) == 5);
  CHECK(variable_bound(parse_term("top", sig)) == 0);
}

TEST_CASE("canonical order prefers shallow terms, variables, low indices") {
  auto sig = ka();
  CHECK(Term::var(5) < parse_term("bot", sig));
  CHECK(parse_term("top", sig) < parse_term("neg(x0)", sig));
  CHECK(parse_term("meet(x0, x1)", sig) < parse_term("meet(x1, x0)", sig));
  CHECK(parse_term("meet(x0, x1)", sig) < parse_term("join(x0, x0)", sig));
}

TEST_CASE("property: printer and parser round-trip") {
  auto sig = ka();
  for (int i = 0; i < 300; ++i) {
    auto t = random_term(sig, 4, 5);
    CHECK(parse_term(to_string(t, sig), sig) == t);
    Equation e{t, random_term(sig, 4, 3)};
    CHECK(parse_equation(to_string(e, sig), sig) == e);
  }
  CHECK(to_string(parse_term("bot", sig), sig) == "bot");
  CHECK(to_string(parse_term("meet(x0,neg(x1))", sig), sig)
        == "meet(x0, neg(x1))");
}

TEST_CASE("property: substitution composes") {
  auto sig = ka();
  for (int i = 0; i < 200; ++i) {
    auto                        t = random_term(sig, 3, 4);
    std::map<std::size_t, Term> sigma, rho, composed;
    for (std::size_t j = 0; j < 3; ++j) {
      sigma[j] = random_term(sig, 3, 2);
      rho[j]   = random_term(sig, 3, 2);
    }
    for (auto const& [j, s] : sigma) {
      composed[j] = substitute(s, rho);
    }
    CHECK(substitute(substitute(t, sigma), rho) == substitute(t, composed));
  }
}

TEST_CASE("shift_variables moves every variable") {
  auto sig = ka();
  CHECK(shift_variables(parse_term("meet(x0, neg(x2))", sig), 3)
        == parse_term("meet(x3, neg(x5))", sig));
}
