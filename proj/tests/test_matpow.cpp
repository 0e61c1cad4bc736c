#include <doctest.h>

#include "forge/catalog.hpp"
#include "forge/matpow.hpp"
#include "oracles.hpp"

using namespace forge;

namespace {

  FiniteAlgebra const& alg(char const* cls, char const* name) {
    return catalog::find_algebra(cls, name);
  }

  // The Kleene operations on pairs over a bounded distributive lattice.
  MatrixLanguage kleene_language() {
    auto const& sig = catalog::find_class("DL01").battery.signature();
    auto        t   = [&](char const* s) { return parse_term(s, sig, 2); };
    return MatrixLanguage(
        sig, 2,
        {{"meet", 2, {t("meet(x0_0, x1_0)"), t("join(x0_1, x1_1)")}},
         {"join", 2, {t("join(x0_0, x1_0)"), t("meet(x0_1, x1_1)")}},
         {"neg", 1, {t("x0_1"), t("x0_0")}},
         {"bot", 0, {t("bot"), t("top")}},
         {"top", 0, {t("top"), t("bot")}}});
  }

  Element pair(std::size_t n, Element a, Element b) {
    std::vector<Element> c{a, b};
    return matrix_encode(n, c);
  }

}  // namespace

TEST_CASE("matrix power: Kleene operations on pairs") {
  auto const& c2   = alg("DL01", "chain2");
  auto        lang = kleene_language();
  auto        p    = matrix_power(c2, lang);
  CHECK(p.size() == 4);
  CHECK(pair(2, 0, 1) == 2);  // coordinate 0 least significant
  CHECK(p.apply("neg", {pair(2, 0, 1)}) == pair(2, 1, 0));
  CHECK(p.apply("meet", {pair(2, 1, 0), pair(2, 1, 1)}) == pair(2, 1, 1));
  CHECK(apply_matrix_op(c2, lang, 2, std::vector<Element>{pair(2, 0, 1)})
        == pair(2, 1, 0));
  CHECK(matrix_coordinates(2, 2, 2) == std::vector<Element>{0, 1});
}

TEST_CASE("matrix language validation") {
  auto const& sig = catalog::find_class("DL01").battery.signature();
  auto        x   = [&](char const* s) { return parse_term(s, sig); };
  CHECK_THROWS_AS(MatrixLanguage(sig, 2, {{"f", 1, {x("x0")}}}), Error);
  CHECK_THROWS_AS(MatrixLanguage(sig, 2, {{"f", 1, {x("x0"), x("x2")}}}), Error);
  CHECK_THROWS_AS(MatrixLanguage(sig, 1, {{"f", 1, {x("x0")}},
                                          {"f", 1, {x("x0")}}}),
                  Error);
}

TEST_CASE("exponent one gives back the algebra") {
  for (auto const& c : catalog::classes()) {
    for (auto const& a : c.algebras) {
      if (a.algebra.size() > 8) {
        continue;
      }
      auto p = matrix_power(a.algebra, pointwise_language(a.algebra.signature(), 1));
      CHECK(p.tables() == a.algebra.tables());
    }
  }
}

TEST_CASE("matrix_power_hom") {
  auto const& c3   = alg("DL01", "chain3");
  auto const& c2   = alg("DL01", "chain2");
  auto        lang = pointwise_language(c3.signature(), 2);
  auto        id   = matrix_power_hom(Homomorphism::identity(c3), lang);
  CHECK(id == Homomorphism::identity(matrix_power(c3, lang)));
  Homomorphism f(c3, c2, {0, 0, 1});
  auto         f2 = matrix_power_hom(f, lang);
  CHECK(f2.source().size() == 9);
  CHECK(f2.target().size() == 4);
  CHECK(f2.is_surjective());
  CHECK(oracle::preserves(f2.source(), f2.target(), f2.map()));
  auto kf = matrix_power_hom(f, kleene_language());
  CHECK(oracle::preserves(kf.source(), kf.target(), kf.map()));
}

TEST_CASE("universe limit") {
  CHECK(matrix_universe(10, 6) == 1'000'000);
  CHECK_THROWS_AS(matrix_universe(10, 7), Error);
  CHECK_THROWS_AS(matrix_power(alg("DL01", "cube"),
                               pointwise_language(alg("DL01", "cube").signature(), 7)),
                  Error);
}

TEST_CASE("property: hom counts survive matrix powers") {
  for (auto const* cls : {"DL01", "KA"}) {
    auto const& algebras = catalog::find_class(cls).algebras;
    for (auto const& a : algebras) {
      for (auto const& b : algebras) {
        if (a.algebra.size() > 6 || b.algebra.size() > 6) {
          continue;
        }
        auto n = count_homs(a.algebra, b.algebra);
        for (std::size_t k : {1u, 2u}) {
          auto lang = pointwise_language(a.algebra.signature(), k);
          CAPTURE(a.name);
          CAPTURE(b.name);
          CAPTURE(k);
          CHECK(count_homs(matrix_power(a.algebra, lang),
                           matrix_power(b.algebra, lang))
                == n);
        }
      }
    }
  }
}

TEST_CASE("without the structural operations the count can grow") {
  // Coordinatewise operations alone admit the coordinate swap of 2^[2].
  auto const& c2   = alg("DL01", "chain2");
  auto        lang = pointwise_language(c2.signature(), 2, false);
  auto        p    = matrix_power(c2, lang);
  CHECK(count_homs(p, p) > count_homs(c2, c2));
}

TEST_CASE("property: matrix powers commute with products") {
  auto const& algebras = catalog::find_class("DL01").algebras;
  for (auto const& a : algebras) {
    for (auto const& b : algebras) {
      if (a.algebra.size() > 3 || b.algebra.size() > 3) {
        continue;
      }
      auto const&                sig = a.algebra.signature();
      auto                       lang = pointwise_language(sig, 2);
      std::vector<FiniteAlgebra> ab{a.algebra, b.algebra};
      auto                       prod = product(sig, ab);
      auto                       lhs  = matrix_power(prod.algebra, lang);
      std::vector<FiniteAlgebra> powers{matrix_power(a.algebra, lang),
                                        matrix_power(b.algebra, lang)};
      auto                       rhs = product(lang.signature(), powers);
      // ((a0, b0), (a1, b1)) |-> ((a0, a1), (b0, b1))
      std::vector<Element> shuffle(lhs.size());
      for (Element e = 0; e < lhs.size(); ++e) {
        auto cs  = matrix_coordinates(prod.algebra.size(), 2, e);
        auto c0  = prod.coordinates(cs[0]);
        auto c1  = prod.coordinates(cs[1]);
        std::vector<Element> pa{c0[0], c1[0]}, pb{c0[1], c1[1]};
        std::vector<Element> parts{matrix_encode(a.algebra.size(), pa),
                                   matrix_encode(b.algebra.size(), pb)};
        shuffle[e] = rhs.encode(parts);
      }
      Homomorphism h(lhs, rhs.algebra, shuffle);
      CHECK(h.is_injective());
      CHECK(h.is_surjective());
    }
  }
}

TEST_CASE("sigma_check") {
  for (auto const& c : catalog::classes()) {
    auto r = sigma_check(c.battery, Term::var(0));
    CHECK(r.idempotent);
    CHECK(r.invertible);
    REQUIRE(r.witness);
  }
  auto const& dl  = catalog::find_class("DL01").battery;
  auto        bad = sigma_check(dl, parse_term("meet(x0, bot)", dl.signature()));
  CHECK(bad.idempotent);
  CHECK_FALSE(bad.invertible);
  CHECK_FALSE(bad.witness);
  auto const& ka = catalog::find_class("KA").battery;
  auto        nn = sigma_check(ka, parse_term("neg(neg(x0))", ka.signature()));
  CHECK(nn.idempotent);
  CHECK(nn.invertible);
  auto neg = sigma_check(ka, parse_term("neg(x0)", ka.signature()));
  CHECK_FALSE(neg.idempotent);
  CHECK(neg.invertible);
  REQUIRE(neg.witness);
  CHECK_THROWS_AS(sigma_check(ka, parse_term("meet(x0, x1)", ka.signature())),
                  Error);
}

TEST_CASE("sigma_construction") {
  for (auto const& c : catalog::classes()) {
    for (auto const& a : c.algebras) {
      auto s = sigma_construction(a.algebra, c.battery, Term::var(0));
      CHECK(s.signature() == a.algebra.signature());
      CHECK(are_isomorphic(s, a.algebra));
    }
  }
  auto const& ka = catalog::find_class("KA").battery;
  auto        k3 = alg("KA", "chain3");
  auto        s  = sigma_construction(k3, ka, parse_term("neg(neg(x0))", ka.signature()));
  CHECK(s.size() == 3);
  auto const& dl = catalog::find_class("DL01").battery;
  CHECK_THROWS_AS(sigma_construction(alg("DL01", "chain3"), dl,
                                     parse_term("meet(x0, bot)", dl.signature())),
                  Error);
}
