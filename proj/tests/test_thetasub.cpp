#include <doctest.h>

#include "forge/catalog.hpp"
#include "forge/thetasub.hpp"
#include "checks.hpp"
#include "oracles.hpp"

using namespace forge;

namespace {

  FiniteAlgebra const& alg(char const* cls, char const* name) {
    return catalog::find_algebra(cls, name);
  }

  Signature const& sig_of(char const* cls) {
    return catalog::find_class(cls).battery.signature();
  }

  ThetaSpec kleene_spec() {
    auto const& sig = sig_of("DL01");
    auto        t   = [&](char const* s) { return parse_term(s, sig, 2); };
    MatrixLanguage lang(
        sig, 2,
        {{"meet", 2, {t("meet(x0_0, x1_0)"), t("join(x0_1, x1_1)")}},
         {"join", 2, {t("join(x0_0, x1_0)"), t("meet(x0_1, x1_1)")}},
         {"neg", 1, {t("x0_1"), t("x0_0")}},
         {"bot", 0, {t("bot"), t("top")}},
         {"top", 0, {t("top"), t("bot")}}});
    auto m = t("meet(x0_0, x0_1)");
    auto b = t("bot");
    return {lang, {TupleEquation{{m, m}, {b, b}}}};
  }

  // One-variable spec over a class with the given operations.
  ThetaSpec unary_spec(char const* cls, char const* theta,
                       std::vector<std::pair<char const*, char const*>> ops) {
    auto const&           sig = sig_of(cls);
    std::vector<MatrixOp> mops;
    for (auto [name, body] : ops) {
      auto t = parse_term(body, sig);
      mops.push_back({name, variable_bound(t), {t}});
    }
    return {MatrixLanguage(sig, 1, std::move(mops)),
            {constant_tuple_equation(parse_equation(theta, sig), 1)}};
  }

  ThetaSpec godel_spec() {
    return unary_spec("IA", "x0 = box(x0)",
                      {{"meet", "meet(x0, x1)"},
                       {"join", "join(x0, x1)"},
                       {"imp", "box(imp(x0, x1))"},
                       {"neg", "box(neg(x0))"},
                       {"bot", "bot"},
                       {"top", "top"}});
  }

  ThetaSpec regular_spec() {
    return unary_spec("HA", "x0 = neg(neg(x0))",
                      {{"meet", "meet(x0, x1)"},
                       {"join", "neg(neg(join(x0, x1)))"},
                       {"imp", "imp(x0, x1)"},
                       {"neg", "neg(x0)"},
                       {"bot", "bot"},
                       {"top", "top"}});
  }

}  // namespace

TEST_CASE("compatibility") {
  auto const& dl = catalog::find_class("DL01");
  std::vector<FiniteAlgebra> algebras;
  for (auto const& a : dl.algebras) {
    algebras.push_back(a.algebra);
  }
  CHECK(is_compatible(algebras, kleene_spec()));

  auto empty = kleene_spec();
  empty.theta.clear();
  CHECK(is_compatible(algebras, empty));

  auto const&    sig = sig_of("DL01");
  MatrixLanguage only_top(sig, 1, {{"top", 0, {parse_term("top", sig)}}});
  ThetaSpec      bottom{only_top,
                   {constant_tuple_equation(parse_equation("x0 = bot", sig), 1)}};
  auto           bad = find_incompatibility(algebras, bottom);
  REQUIRE(bad);
  CHECK(bad->op == 0);
  CHECK(bad->args.empty());
  CHECK_THROWS_AS(theta_sub(alg("DL01", "chain2"), bottom), Error);
}

TEST_CASE("spec validation") {
  auto spec = kleene_spec();
  spec.theta[0].lhs.pop_back();
  CHECK_THROWS_AS(check_theta_spec(spec), Error);
  auto wide = kleene_spec();
  wide.theta[0].lhs[0] = Term::var(2);
  CHECK_THROWS_AS(check_theta_spec(wide), Error);
}

TEST_CASE("theta_sub examples") {
  auto const& c2 = alg("DL01", "chain2");
  auto        g  = theta_sub(c2, kleene_spec());
  std::vector<std::vector<Element>> tuples;
  for (auto e : g.elements) {
    tuples.push_back(matrix_coordinates(2, 2, e));
  }
  CHECK(tuples
        == std::vector<std::vector<Element>>{{0, 0}, {1, 0}, {0, 1}});
  CHECK(oracle::isomorphic(g.algebra.relabel(sig_of("KA")),
                           alg("KA", "chain3")));

  auto reg = theta_sub(alg("HA", "chain3"), regular_spec());
  CHECK(reg.algebra.size() == 2);
  CHECK(reg.elements == std::vector<Element>{0, 2});

  auto op = theta_sub(alg("IA", "op4"), godel_spec());
  CHECK(op.algebra.size() == 3);
  CHECK(oracle::isomorphic(op.algebra.relabel(sig_of("HA")), alg("HA", "chain3")));
}

TEST_CASE("Kleene solutions agree with the pair construction") {
  for (auto const& a : catalog::find_class("DL01").algebras) {
    auto g = theta_sub(a.algebra, kleene_spec());
    auto o = oracle::kleene_pairs(a.algebra);
    CHECK(g.algebra.size() == o.size());
    CHECK(are_isomorphic(g.algebra.relabel(sig_of("KA")), o));
  }
}

TEST_CASE("constant-free languages may have no solutions") {
  auto const&    sig = sig_of("DL01");
  MatrixLanguage lattice(sig, 1, {{"meet", 2, {parse_term("meet(x0, x1)", sig)}}});
  ThetaSpec      never{lattice,
                  {constant_tuple_equation(parse_equation("bot = top", sig), 1)}};
  auto           g = theta_sub(alg("DL01", "chain3"), never);
  CHECK(g.algebra.size() == 0);
  CHECK(g.elements.empty());
}

TEST_CASE("theta_sub_hom") {
  auto const& c3   = alg("DL01", "chain3");
  auto const& c2   = alg("DL01", "chain2");
  auto        spec = kleene_spec();
  auto        id   = theta_sub_hom(Homomorphism::identity(c3), spec);
  CHECK(id == Homomorphism::identity(theta_sub(c3, spec).algebra));
  Homomorphism f(c3, c2, {0, 0, 1});
  auto         h = theta_sub_hom(f, spec);
  CHECK(h.source().size() == 5);
  CHECK(h.target().size() == 3);
  CHECK(oracle::preserves(h.source(), h.target(), h.map()));
}

TEST_CASE("property: theta_sub is functorial") {
  auto spec     = kleene_spec();
  auto algebras = catalog::find_class("DL01").algebras;
  int  checked  = 0;
  for (auto const& a : algebras) {
    for (auto const& b : algebras) {
      for (auto const& c : algebras) {
        if (a.algebra.size() > 4 || b.algebra.size() > 4 || c.algebra.size() > 4) {
          continue;
        }
        auto fs = enumerate_homs(a.algebra, b.algebra);
        auto gs = enumerate_homs(b.algebra, c.algebra);
        for (std::size_t i = 0; i < fs.size() && i < 3; ++i) {
          for (std::size_t j = 0; j < gs.size() && j < 3; ++j) {
            CHECK(theta_sub_hom(compose(gs[j], fs[i]), spec)
                  == compose(theta_sub_hom(gs[j], spec),
                             theta_sub_hom(fs[i], spec)));
            ++checked;
          }
        }
      }
    }
  }
  CHECK(checked > 50);
}

TEST_CASE("property: theta_sub preserves products") {
  struct Case {
    char const* cls;
    ThetaSpec   spec;
  };
  for (auto const& [cls, spec] : {Case{"DL01", kleene_spec()},
                                  Case{"HA", regular_spec()},
                                  Case{"IA", godel_spec()}}) {
    auto const& algebras = catalog::find_class(cls).algebras;
    for (auto const& a : algebras) {
      for (auto const& b : algebras) {
        CAPTURE(a.name);
        CAPTURE(b.name);
        CHECK(checks::product_preserved(a.algebra, b.algebra, spec));
      }
    }
  }
}

TEST_CASE("property: more equations, fewer solutions") {
  auto const& sig  = sig_of("DL01");
  auto        lang = kleene_spec().lang;
  auto        t    = [&](char const* s) { return parse_term(s, sig, 2); };
  ThetaSpec   none{lang, {}};
  ThetaSpec   one  = kleene_spec();
  ThetaSpec   two  = one;
  two.theta.push_back({{t("join(x0_0, x0_1)"), t("join(x0_0, x0_1)")},
                       {t("top"), t("top")}});
  for (auto const& a : catalog::find_class("DL01").algebras) {
    auto s0 = theta_solutions(a.algebra, none);
    auto s1 = theta_solutions(a.algebra, one);
    auto s2 = theta_solutions(a.algebra, two);
    CHECK(s0.size() == a.algebra.size() * a.algebra.size());
    CHECK(std::includes(s0.begin(), s0.end(), s1.begin(), s1.end()));
    CHECK(std::includes(s1.begin(), s1.end(), s2.begin(), s2.end()));
  }
}
