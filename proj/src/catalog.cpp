#include "forge/catalog.hpp"

#include <functional>

#include "forge/formats.hpp"

namespace forge::catalog {

  namespace {
    using Fn2 = std::function<Element(Element, Element)>;

    Signature make_sig(std::string name, std::vector<OpSymbol> ops) {
      return Signature(std::move(name), std::move(ops));
    }

    Signature const& dl01_sig() {
      static Signature const s = make_sig(
          "DL01", {{"meet", 2}, {"join", 2}, {"bot", 0}, {"top", 0}});
      return s;
    }
    Signature const& ka_sig() {
      static Signature const s = make_sig(
          "KA", {{"meet", 2}, {"join", 2}, {"neg", 1}, {"bot", 0}, {"top", 0}});
      return s;
    }
    Signature ha_like(std::string name) {
      return make_sig(std::move(name), {{"meet", 2},
                                        {"join", 2},
                                        {"imp", 2},
                                        {"neg", 1},
                                        {"bot", 0},
                                        {"top", 0}});
    }
    Signature const& ba_sig() {
      static Signature const s = ha_like("BA");
      return s;
    }
    Signature const& ha_sig() {
      static Signature const s = ha_like("HA");
      return s;
    }
    Signature const& ia_sig() {
      static Signature const s = make_sig("IA", {{"meet", 2},
                                                 {"join", 2},
                                                 {"imp", 2},
                                                 {"neg", 1},
                                                 {"box", 1},
                                                 {"bot", 0},
                                                 {"top", 0}});
      return s;
    }

    // A finite lattice given by its order; meets and joins by search.
    struct Lattice {
      std::size_t                    n = 0;
      std::vector<std::vector<bool>> leq;
      std::vector<Element>           meet, join;  // n*n, row-major
      Element                        bot = 0, top = 0;

      Lattice(std::size_t size, std::function<bool(Element, Element)> const& le)
          : n(size), leq(size, std::vector<bool>(size)), meet(size * size),
            join(size * size) {
        for (Element a = 0; a < n; ++a) {
          for (Element b = 0; b < n; ++b) {
            leq[a][b] = le(a, b);
          }
        }
        for (Element a = 0; a < n; ++a) {
          for (Element b = 0; b < n; ++b) {
            meet[a * n + b] = extremum(a, b, true);
            join[a * n + b] = extremum(a, b, false);
          }
        }
        for (Element a = 0; a < n; ++a) {
          if (extremum_of_all(a, true)) {
            bot = a;
          }
          if (extremum_of_all(a, false)) {
            top = a;
          }
        }
      }

      Element m(Element a, Element b) const {
        return meet[a * n + b];
      }
      Element j(Element a, Element b) const {
        return join[a * n + b];
      }
      // Heyting implication: the largest c with c meet a <= b.
      Element imp(Element a, Element b) const {
        Element best = bot;
        for (Element c = 0; c < n; ++c) {
          if (leq[m(c, a)][b]) {
            best = j(best, c);
          }
        }
        return best;
      }

     private:
      // Greatest lower bound (lower = true) or least upper bound of a, b.
      Element extremum(Element a, Element b, bool lower) const {
        std::optional<Element> best;
        for (Element c = 0; c < n; ++c) {
          bool bound = lower ? (leq[c][a] && leq[c][b]) : (leq[a][c] && leq[b][c]);
          if (bound && (!best || (lower ? leq[*best][c] : leq[c][*best]))) {
            best = c;
          }
        }
        if (!best) {
          throw Error("catalog: order is not a lattice");
        }
        return *best;
      }
      bool extremum_of_all(Element a, bool lower) const {
        for (Element c = 0; c < n; ++c) {
          if (!(lower ? leq[a][c] : leq[c][a])) {
            return false;
          }
        }
        return true;
      }
    };

    using Table = std::vector<Element>;

    Table binary(Lattice const& l, Fn2 const& f) {
      Table t;
      for (Element a = 0; a < l.n; ++a) {
        for (Element b = 0; b < l.n; ++b) {
          t.push_back(f(a, b));
        }
      }
      return t;
    }

    Table unary(Lattice const& l, std::function<Element(Element)> const& f) {
      Table t;
      for (Element a = 0; a < l.n; ++a) {
        t.push_back(f(a));
      }
      return t;
    }

    Table meet_table(Lattice const& l) {
      return l.meet;
    }
    Table join_table(Lattice const& l) {
      return l.join;
    }

    FiniteAlgebra dl01(Lattice const& l) {
      return FiniteAlgebra(dl01_sig(), l.n,
                           {meet_table(l), join_table(l), {l.bot}, {l.top}});
    }

    FiniteAlgebra heyting(Lattice const& l, Signature const& sig) {
      auto imp = [&](Element a, Element b) { return l.imp(a, b); };
      auto neg = [&](Element a) { return l.imp(a, l.bot); };
      return FiniteAlgebra(sig, l.n,
                           {meet_table(l), join_table(l), binary(l, imp),
                            unary(l, neg), {l.bot}, {l.top}});
    }

    FiniteAlgebra kleene(Lattice const& l, std::vector<Element> const& neg) {
      return FiniteAlgebra(ka_sig(), l.n,
                           {meet_table(l), join_table(l), neg, {l.bot}, {l.top}});
    }

    Lattice boolean(std::size_t k) {
      return Lattice(std::size_t(1) << k,
                     [](Element a, Element b) { return (a & ~b) == 0; });
    }

    // Boolean algebra on the subsets of {0..k-1}, with the interior operator
    // of the given family of open sets (closed under meets and joins).
    FiniteAlgebra interior(std::size_t k, std::vector<Element> const& opens) {
      Lattice l = boolean(k);
      auto    box = [&](Element a) {
        Element best = 0;
        for (auto o : opens) {
          if ((o & ~a) == 0) {
            best |= o;
          }
        }
        return best;
      };
      auto imp = [&](Element a, Element b) { return l.imp(a, b); };
      auto neg = [&](Element a) { return l.imp(a, l.bot); };
      return FiniteAlgebra(ia_sig(), l.n,
                           {meet_table(l), join_table(l), binary(l, imp),
                            unary(l, neg), unary(l, box), {l.bot}, {l.top}});
    }

    Lattice chain(std::size_t n) {
      return Lattice(n, [](Element a, Element b) { return a <= b; });
    }

    // 0 < a, b < c < 1 with a, b incomparable.
    Lattice diamond_with_top() {
      // 0:0  1:a  2:b  3:c  4:1
      static bool const le[5][5] = {{1, 1, 1, 1, 1},
                                    {0, 1, 0, 1, 1},
                                    {0, 0, 1, 1, 1},
                                    {0, 0, 0, 1, 1},
                                    {0, 0, 0, 0, 1}};
      return Lattice(5, [](Element a, Element b) { return le[a][b]; });
    }

    FiniteAlgebra power(std::vector<FiniteAlgebra> const& factors) {
      return product(factors.front().signature(), factors).algebra;
    }

    std::vector<QuasiEquation> laws(Signature const&                sig,
                                    std::vector<std::string> const& lines) {
      std::vector<QuasiEquation> out;
      for (auto const& line : lines) {
        // "p1; p2 => c" or just "c"
        QuasiEquation q;
        auto          arrow = line.find("=>");
        std::string   concl = line;
        if (arrow != std::string::npos) {
          std::string prem = line.substr(0, arrow);
          concl            = line.substr(arrow + 2);
          std::size_t start = 0;
          while (start < prem.size()) {
            auto end = prem.find(';', start);
            if (end == std::string::npos) {
              end = prem.size();
            }
            q.premises.push_back(
                parse_equation(prem.substr(start, end - start), sig));
            start = end + 1;
          }
        }
        q.conclusion = parse_equation(concl, sig);
        out.push_back(std::move(q));
      }
      return out;
    }

    std::vector<std::string> lattice_laws() {
      return {
          "meet(x0, x1) = meet(x1, x0)",
          "join(x0, x1) = join(x1, x0)",
          "meet(x0, meet(x1, x2)) = meet(meet(x0, x1), x2)",
          "join(x0, join(x1, x2)) = join(join(x0, x1), x2)",
          "meet(x0, join(x0, x1)) = x0",
          "join(x0, meet(x0, x1)) = x0",
          "meet(x0, join(x1, x2)) = join(meet(x0, x1), meet(x0, x2))",
          "join(x0, meet(x1, x2)) = meet(join(x0, x1), join(x0, x2))",
          "meet(x0, bot) = bot",
          "join(x0, top) = top",
          "meet(x0, top) = x0",
          "join(x0, bot) = x0",
          "meet(x0, x1) = meet(x0, x2); join(x0, x1) = join(x0, x2) => x1 = x2",
      };
    }

    std::vector<std::string> heyting_laws() {
      auto v = lattice_laws();
      v.insert(v.end(), {
                            "imp(x0, x0) = top",
                            "meet(x0, imp(x0, x1)) = meet(x0, x1)",
                            "meet(x1, imp(x0, x1)) = x1",
                            "imp(x0, meet(x1, x2)) = meet(imp(x0, x1), imp(x0, x2))",
                            "neg(x0) = imp(x0, bot)",
                            "x0 = top; imp(x0, x1) = top => x1 = top",
                        });
      return v;
    }

    std::vector<std::string> boolean_laws() {
      auto v = heyting_laws();
      v.push_back("join(x0, neg(x0)) = top");
      return v;
    }

    std::vector<NamedPresentation> presentations(
        Signature const&                sig,
        std::vector<std::string> const& texts) {
      std::vector<NamedPresentation> out;
      for (auto const& t : texts) {
        out.push_back({t, parse_presentation(t, sig)});
      }
      return out;
    }

    std::vector<ClassEntry> build_classes() {
      std::vector<ClassEntry> out;

      {  // Bounded distributive lattices.
        auto const& sig = dl01_sig();
        auto c2 = dl01(chain(2));
        auto c3 = dl01(chain(3));
        out.push_back(
            {"DL01",
             ClassBattery("DL01", sig, {c2}, laws(sig, lattice_laws())),
             {{"chain1", dl01(chain(1))},
              {"chain2", c2},
              {"chain3", c3},
              {"chain4", dl01(chain(4))},
              {"square", power({c2, c2})},
              {"chain2xchain3", power({c2, c3})},
              {"cube", power({c2, c2, c2})}},
             presentations(sig, {"0;", "1;", "2;", "2; meet(x0, x1) = bot"})});
      }
      {  // Kleene algebras.
        auto const& sig = ka_sig();
        auto        k2  = kleene(chain(2), {1, 0});
        auto        k3  = kleene(chain(3), {2, 1, 0});
        auto ka_laws = lattice_laws();
        ka_laws.insert(
            ka_laws.end(),
            {"neg(neg(x0)) = x0",
             "neg(meet(x0, x1)) = join(neg(x0), neg(x1))",
             "neg(join(x0, x1)) = meet(neg(x0), neg(x1))",
             "neg(bot) = top",
             "meet(meet(x0, neg(x0)), join(x1, neg(x1))) = meet(x0, neg(x0))"});
        out.push_back(
            {"KA",
             ClassBattery("KA", sig, {k3}, laws(sig, ka_laws)),
             {{"chain2", k2},
              {"chain3", k3},
              {"chain4", kleene(chain(4), {3, 2, 1, 0})},
              {"chain2xchain3", power({k2, k3})}},
             presentations(sig, {"0;", "1;", "1; neg(x0) = x0", "2;"})});
      }
      {  // Boolean algebras.
        auto const& sig = ba_sig();
        auto        b2  = heyting(boolean(1), sig);
        out.push_back({"BA",
                       ClassBattery("BA", sig, {b2}, laws(sig, boolean_laws())),
                       {{"ba2", b2},
                        {"ba4", heyting(boolean(2), sig)},
                        {"ba8", heyting(boolean(3), sig)}},
                       presentations(sig, {"0;", "1;", "2;", "1; x0 = neg(x0)"})});
      }
      {  // Heyting algebras.
        auto const& sig = ha_sig();
        auto        c2  = heyting(chain(2), sig);
        auto        c3  = heyting(chain(3), sig);
        auto        c4  = heyting(chain(4), sig);
        auto        d5  = heyting(diamond_with_top(), sig);
        out.push_back(
            {"HA",
             ClassBattery("HA", sig, {c2, c3, c4, d5}, laws(sig, heyting_laws())),
             {{"chain2", c2},
              {"chain3", c3},
              {"chain4", c4},
              {"d5", d5},
              {"square", heyting(boolean(2), sig)}},
             presentations(sig, {"0;", "1;", "1; neg(neg(x0)) = x0"})});
      }
      {  // Interior algebras.
        auto const& sig = ia_sig();
        auto ia_laws = boolean_laws();
        ia_laws.insert(ia_laws.end(),
                       {"box(top) = top",
                        "meet(box(x0), x0) = box(x0)",
                        "box(box(x0)) = box(x0)",
                        "box(meet(x0, x1)) = meet(box(x0), box(x1))"});
        auto ia2       = interior(1, {0, 1});
        auto op4       = interior(2, {0, 1, 3});
        auto ia8chain  = interior(3, {0, 1, 3, 7});
        auto ia8diamond = interior(3, {0, 1, 2, 3, 7});
        out.push_back({"IA",
                       ClassBattery("IA", sig, {ia2, op4, ia8chain, ia8diamond},
                                    laws(sig, ia_laws)),
                       {{"ia2", ia2},
                        {"op4", op4},
                        {"ia8chain", ia8chain},
                        {"ia8diamond", ia8diamond}},
                       presentations(sig, {"0;", "1;", "1; box(x0) = x0"})});
      }
      return out;
    }

    char const* const kleene_text = R"(kappa 2
source KA
target DL01
map meet := meet(x0_0, x1_0), join(x0_1, x1_1)
map join := join(x0_0, x1_0), meet(x0_1, x1_1)
map neg := x0_1, x0_0
map bot := bot, top
map top := top, bot
context meet(x0, x1) = bot
)";

    char const* const godel_text = R"(kappa 1
source HA
target IA
map meet := meet(x0, x1)
map join := join(x0, x1)
map imp := box(imp(x0, x1))
map neg := box(neg(x0))
map bot := bot
map top := top
context x0 = box(x0)
)";

    char const* const kolmogorov_text = R"(kappa 1
source BA
target HA
map meet := neg(neg(meet(x0, x1)))
map join := neg(neg(join(x0, x1)))
map imp := neg(neg(imp(x0, x1)))
map neg := neg(x0)
map bot := bot
map top := top
context x0 = neg(neg(x0))
)";

    std::vector<TranslationEntry> build_translations() {
      std::vector<TranslationEntry> out;
      for (auto [name, text] : {std::pair{"kleene", kleene_text},
                                std::pair{"godel", godel_text},
                                std::pair{"kolmogorov", kolmogorov_text}}) {
        auto t = parse_translation(text);
        out.push_back({name, t.source, t.target, std::move(t.ct)});
      }
      return out;
    }
  }  // namespace

  std::vector<ClassEntry> const& classes() {
    static std::vector<ClassEntry> const c = build_classes();
    return c;
  }

  std::vector<TranslationEntry> const& translations() {
    static std::vector<TranslationEntry> const t = build_translations();
    return t;
  }

  ClassEntry const& find_class(std::string_view name) {
    for (auto const& c : classes()) {
      if (c.name == name) {
        return c;
      }
    }
    throw Error("unknown class '" + std::string(name) + "'");
  }

  FiniteAlgebra const& find_algebra(std::string_view cls, std::string_view name) {
    for (auto const& a : find_class(cls).algebras) {
      if (a.name == name) {
        return a.algebra;
      }
    }
    throw Error("unknown algebra '" + std::string(name) + "' in class "
                + std::string(cls));
  }

  TranslationEntry const& find_translation(std::string_view name) {
    for (auto const& t : translations()) {
      if (t.name == name) {
        return t;
      }
    }
    throw Error("unknown translation '" + std::string(name) + "'");
  }

}  // namespace forge::catalog
