#include <doctest.h>

#include "forge/catalog.hpp"
#include "forge/classes.hpp"
#include "forge/finalg.hpp"
#include "oracles.hpp"

using namespace forge;

namespace {

  FiniteAlgebra const& alg(char const* cls, char const* name) {
    return catalog::find_algebra(cls, name);
  }

  Signature const& sig_of(char const* cls) {
    return catalog::find_class(cls).battery.signature();
  }

  // All catalog algebras, any class.
  std::vector<FiniteAlgebra> everything() {
    std::vector<FiniteAlgebra> out;
    for (auto const& c : catalog::classes()) {
      for (auto const& a : c.algebras) {
        out.push_back(a.algebra);
      }
    }
    return out;
  }

}  // namespace

TEST_CASE("evaluate") {
  auto const& c2 = alg("DL01", "chain2");
  auto        t  = parse_term("meet(x0, x1)", c2.signature());
  std::vector<Element> a{1, 0};
  CHECK(evaluate(c2, t, a) == 0);
  CHECK(evaluate(c2, Term::var(0), std::vector<Element>{1}) == 1);
  auto const& k3 = alg("KA", "chain3");
  CHECK(evaluate(k3, parse_term("neg(x0)", k3.signature()),
                 std::vector<Element>{1})
        == 1);
  CHECK_THROWS_AS(evaluate(c2, Term::var(2), a), Error);
}

TEST_CASE("satisfies_quasi_equation") {
  auto const& k3  = alg("KA", "chain3");
  auto const& ksg = k3.signature();
  // meet(x, neg x) <= join(y, neg y), as an equation.
  auto lhs = parse_term("meet(x0, neg(x0))", ksg);
  auto rhs = parse_term("join(x1, neg(x1))", ksg);
  QuasiEquation kleene{{}, {make_term(ksg, "meet", {lhs, rhs}), lhs}};
  CHECK(satisfies_quasi_equation(k3, kleene));

  auto const& c2  = alg("DL01", "chain2");
  auto const& dsg = c2.signature();
  QuasiEquation trivial{{parse_equation("x0 = x1", dsg)},
                        parse_equation("x0 = x1", dsg)};
  CHECK(satisfies_quasi_equation(c2, trivial));

  auto const& sq = alg("DL01", "square");
  std::vector<Equation> complement{parse_equation("meet(x0, x1) = bot", dsg),
                                   parse_equation("join(x0, x1) = top", dsg)};
  CHECK(satisfies_quasi_equation(
      sq, {complement, parse_equation("x0 = x0", dsg)}));
  CHECK_FALSE(satisfies_quasi_equation(
      sq, {complement, parse_equation("x0 = x1", dsg)}));
  // Complements are unique in a distributive lattice.
  CHECK(satisfies_quasi_equation(
      sq, {{parse_equation("meet(x0, x1) = bot", dsg),
            parse_equation("join(x0, x1) = top", dsg),
            parse_equation("meet(x0, x2) = bot", dsg),
            parse_equation("join(x0, x2) = top", dsg)},
           parse_equation("x1 = x2", dsg)}));
}

TEST_CASE("enumerate_homs examples") {
  auto const& c2 = alg("DL01", "chain2");
  auto        id = enumerate_homs(c2, c2);
  REQUIRE(id.size() == 1);
  CHECK(id[0] == Homomorphism::identity(c2));

  auto const& k   = catalog::find_class("DL01").battery;
  auto        f1  = free_algebra(k, 1);
  CHECK(f1.algebra.size() == 3);
  CHECK(count_homs(f1.algebra, c2) == 2);

  auto one = alg("DL01", "chain1");
  for (auto const& a : everything()) {
    if (a.signature() == one.signature()) {
      CHECK(count_homs(a, one) == 1);
    }
  }
  CHECK_THROWS_AS(enumerate_homs(c2, alg("KA", "chain2")), Error);
}

TEST_CASE("property: enumerate_homs agrees with the naive filter") {
  auto all = everything();
  int  pairs = 0;
  for (auto const& a : all) {
    if (a.size() > 4) {
      continue;
    }
    for (auto const& b : all) {
      if (!(a.signature() == b.signature()) || b.size() > 8) {
        continue;
      }
      auto                              fast = enumerate_homs(a, b);
      std::vector<std::vector<Element>> maps;
      for (auto const& h : fast) {
        maps.push_back(h.map());
      }
      CHECK(maps == oracle::homs(a, b));
      CHECK(count_homs(a, b) == maps.size());
      ++pairs;
    }
  }
  CHECK(pairs > 30);
}

TEST_CASE("homomorphisms are validated") {
  auto const& c2 = alg("DL01", "chain2");
  auto const& c3 = alg("DL01", "chain3");
  CHECK_THROWS_AS(Homomorphism(c2, c3, {0, 1}), Error);  // top not preserved
  CHECK_NOTHROW(Homomorphism(c2, c3, {0, 2}));
  CHECK_THROWS_AS(Homomorphism(c2, c3, {0}), Error);
  auto f = Homomorphism(c3, c2, {0, 0, 1});
  auto g = Homomorphism(c2, c3, {0, 2});
  CHECK(compose(g, f).map() == std::vector<Element>{0, 0, 2});
}

TEST_CASE("product") {
  auto const& sig = sig_of("DL01");
  auto        p0  = product(sig, std::span<FiniteAlgebra const>{});
  CHECK(p0.algebra.size() == 1);
  std::vector<FiniteAlgebra> two{alg("DL01", "chain2"), alg("DL01", "chain2")};
  auto p = product(sig, two);
  CHECK(p.algebra.size() == 4);
  CHECK(oracle::isomorphic(p.algebra, alg("DL01", "square")));
  for (auto const& pr : p.projections) {
    CHECK(oracle::preserves(pr.source(), pr.target(), pr.map()));
  }
  std::vector<Element> c{1, 0};
  CHECK(p.coordinates(p.encode(c)) == c);
  CHECK(p.encode(c) == 1);  // coordinate 0 least significant
  std::vector<FiniteAlgebra> mixed{alg("DL01", "chain2"), alg("KA", "chain2")};
  CHECK_THROWS_AS(product(sig, mixed), Error);
}

TEST_CASE("subalgebra_generated") {
  auto const&          sq   = alg("DL01", "square");
  auto const&          sig  = sq.signature();
  std::vector<FiniteAlgebra> two{alg("DL01", "chain2"), alg("DL01", "chain2")};
  auto                 p    = product(sig, two);
  std::vector<Element> seed{p.encode(std::vector<Element>{0, 1})};
  auto                 s    = subalgebra_generated(p.algebra, seed);
  CHECK(s.algebra.size() == 3);
  CHECK(s.inclusion(0) == seed[0]);
  std::vector<Element> members = s.inclusion.map();
  std::sort(members.begin(), members.end());
  CHECK(members
        == std::vector<Element>{p.encode(std::vector<Element>{0, 0}),
                                p.encode(std::vector<Element>{0, 1}),
                                p.encode(std::vector<Element>{1, 1})});

  std::vector<Element> everything_seed{0, 1, 2, 3};
  auto whole = subalgebra_generated(sq, everything_seed);
  CHECK(whole.inclusion == Homomorphism::identity(sq));

  auto const&          k3 = alg("KA", "chain3");
  std::vector<Element> half{1};
  CHECK(subalgebra_generated(k3, half).algebra.size() == 3);
}

TEST_CASE("empty algebras only without constants") {
  Signature lat("L", {{"meet", 2}, {"join", 2}});
  CHECK_NOTHROW(FiniteAlgebra(lat, 0, {{}, {}}));
  CHECK_THROWS_AS(FiniteAlgebra(sig_of("DL01"), 0, {{}, {}, {}, {}}), Error);
  CHECK_THROWS_AS(FiniteAlgebra(lat, 2, {{0, 0, 0}, {0, 1, 1, 1}}), Error);
  CHECK_THROWS_AS(FiniteAlgebra(lat, 2, {{0, 0, 0, 2}, {0, 1, 1, 1}}), Error);
}

TEST_CASE("quotient and kernel") {
  auto const& c3 = alg("DL01", "chain3");
  auto        qi = quotient(c3, Congruence::identity(c3));
  CHECK(oracle::isomorphic(qi.algebra, c3));
  CHECK(quotient(c3, Congruence::total(c3)).algebra.size() == 1);

  auto const& k  = catalog::find_class("DL01").battery;
  auto        f2 = free_algebra(k, 2);
  REQUIRE(f2.algebra.size() == 6);
  auto meet = f2.element_of(parse_term("meet(x0, x1)", k.signature()));
  auto bot  = f2.element_of(parse_term("bot", k.signature()));
  auto theta = cgK(k, f2.algebra, {{meet, bot}});
  auto q     = quotient(f2.algebra, theta);
  CHECK(q.algebra.size() == 5);
  auto ker = kernel(q.projection);
  CHECK(ker == theta);
  CHECK(ker.pairs() == std::vector<std::pair<Element, Element>>{
                           {std::min(meet, bot), std::max(meet, bot)}});
  CHECK(kernel(Homomorphism::identity(c3)) == Congruence::identity(c3));
  auto to_one = enumerate_homs(c3, alg("DL01", "chain1"));
  CHECK(kernel(to_one.at(0)).num_blocks() == 1);

  // Not compatible with join: {0, 2} in one block but {1} alone.
  Congruence bad(c3, {0, 1, 0});
  CHECK(bad.find_incompatibility());
  CHECK_THROWS_AS(quotient(c3, bad), Error);
}

TEST_CASE("property: first isomorphism theorem") {
  auto all    = everything();
  int  checks = 0;
  for (auto const& a : all) {
    if (a.size() > 8) {
      continue;
    }
    for (auto const& b : all) {
      if (!(a.signature() == b.signature()) || b.size() > 8) {
        continue;
      }
      for (auto const& f : enumerate_homs(a, b)) {
        auto q   = quotient(a, kernel(f));
        auto img = image(f);
        CHECK(q.algebra.size() == img.algebra.size());
        if (img.algebra.size() <= 6) {
          CHECK(oracle::isomorphic(q.algebra, img.algebra));
        } else {
          CHECK(are_isomorphic(q.algebra, img.algebra));
        }
        ++checks;
      }
    }
  }
  CHECK(checks > 100);
}

TEST_CASE("find_isomorphism agrees with permutation search") {
  auto all = everything();
  for (auto const& a : all) {
    for (auto const& b : all) {
      if (!(a.signature() == b.signature()) || a.size() != b.size()
          || a.size() > 6) {
        continue;
      }
      auto iso = find_isomorphism(a, b);
      CHECK(iso.has_value() == oracle::isomorphic(a, b));
      if (iso) {
        CHECK(iso->is_injective());
        CHECK(oracle::preserves(a, b, iso->map()));
      }
    }
  }
}

TEST_CASE("extend_from_generators") {
  auto const& k  = catalog::find_class("DL01").battery;
  auto        f2 = free_algebra(k, 2);
  auto const& c2 = alg("DL01", "chain2");
  for (Element a = 0; a < 2; ++a) {
    for (Element b = 0; b < 2; ++b) {
      std::vector<Element> images{a, b};
      auto h = extend_from_generators(f2.algebra, f2.generators, c2, images);
      REQUIRE(h);
      CHECK((*h)(f2.generators[0]) == a);
      CHECK((*h)(f2.generators[1]) == b);
    }
  }
  // No homomorphism from the 3-chain sending the middle to a fixed element
  // inconsistent with bounds.
  auto const&          c3 = alg("DL01", "chain3");
  std::vector<Element> gen{1}, img{0};
  CHECK(extend_from_generators(c3, gen, c2, img));
  std::vector<Element> none{};
  CHECK_THROWS_AS(extend_from_generators(c3, none, c2, none), Error);
}
