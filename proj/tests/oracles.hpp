// Brute-force reference implementations used to cross-check the library.
// Everything here works straight off the operation tables and avoids the
// search and closure code under test.

#ifndef FORGE_TESTS_ORACLES_HPP
#define FORGE_TESTS_ORACLES_HPP

#include <functional>
#include <random>
#include <vector>

#include "forge/catalog.hpp"
#include "forge/finalg.hpp"

namespace oracle {

  using forge::Element;
  using forge::FiniteAlgebra;

  inline Element lookup(FiniteAlgebra const& a, std::size_t op,
                        std::vector<Element> const& args) {
    std::size_t index = 0;
    for (auto x : args) {
      index = index * a.size() + x;
    }
    return a.tables()[op][index];
  }

  // Every tuple in {0..n-1}^k.
  inline void tuples(std::size_t n, std::size_t k,
                     std::function<void(std::vector<Element> const&)> const& f) {
    std::vector<Element> t(k, 0);
    if (n == 0 && k > 0) {
      return;
    }
    while (true) {
      f(t);
      std::size_t i = k;
      while (i > 0 && ++t[i - 1] == n) {
        t[--i] = 0;
      }
      if (i == 0) {
        return;
      }
    }
  }

  inline bool preserves(FiniteAlgebra const& a, FiniteAlgebra const& b,
                        std::vector<Element> const& map) {
    bool ok = true;
    for (std::size_t op = 0; op < a.signature().size() && ok; ++op) {
      tuples(a.size(), a.signature().arity(op), [&](auto const& args) {
        std::vector<Element> image;
        for (auto x : args) {
          image.push_back(map[x]);
        }
        ok = ok && map[lookup(a, op, args)] == lookup(b, op, image);
      });
    }
    return ok;
  }

  // All maps A -> B filtered by preservation, in lexicographic order.
  inline std::vector<std::vector<Element>> homs(FiniteAlgebra const& a,
                                                FiniteAlgebra const& b) {
    std::vector<std::vector<Element>> out;
    tuples(b.size(), a.size(), [&](auto const& map) {
      if (preserves(a, b, map)) {
        out.push_back(map);
      }
    });
    return out;
  }

  // Isomorphism by trying every permutation.
  inline bool isomorphic(FiniteAlgebra const& a, FiniteAlgebra const& b) {
    if (a.size() != b.size() || !(a.signature() == b.signature())) {
      return false;
    }
    std::vector<Element> p(a.size());
    for (Element i = 0; i < p.size(); ++i) {
      p[i] = i;
    }
    do {
      if (preserves(a, b, p)) {
        return true;
      }
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
  }

  // G(A) = {<a, b> : a meet b = bot} for a bounded distributive lattice A,
  // with <a,b> meet <c,d> = <a meet c, b join d>, join dually, neg swapping
  // the coordinates, bot = <0, 1> and top = <1, 0>.
  inline FiniteAlgebra kleene_pairs(FiniteAlgebra const& a) {
    auto meet = a.signature().index_of("meet");
    auto join = a.signature().index_of("join");
    auto bot  = a.tables()[a.signature().index_of("bot")][0];
    auto top  = a.tables()[a.signature().index_of("top")][0];
    std::vector<std::pair<Element, Element>> pairs;
    for (Element x = 0; x < a.size(); ++x) {
      for (Element y = 0; y < a.size(); ++y) {
        if (lookup(a, meet, {x, y}) == bot) {
          pairs.emplace_back(x, y);
        }
      }
    }
    auto index = [&](Element x, Element y) {
      return static_cast<Element>(
          std::find(pairs.begin(), pairs.end(), std::pair{x, y}) - pairs.begin());
    };
    auto const&          sig = forge::catalog::find_class("KA").battery.signature();
    std::size_t          n   = pairs.size();
    std::vector<std::vector<Element>> tables(sig.size());
    for (std::size_t op = 0; op < sig.size(); ++op) {
      auto const& name = sig.op(op).name;
      if (name == "meet" || name == "join") {
        auto dual = name == "meet" ? join : meet;
        auto same = name == "meet" ? meet : join;
        for (auto [p, q] : pairs) {
          for (auto [r, s] : pairs) {
            tables[op].push_back(
                index(lookup(a, same, {p, r}), lookup(a, dual, {q, s})));
          }
        }
      } else if (name == "neg") {
        for (auto [p, q] : pairs) {
          tables[op].push_back(index(q, p));
        }
      } else if (name == "bot") {
        tables[op].push_back(index(bot, top));
      } else {
        tables[op].push_back(index(top, bot));
      }
    }
    return FiniteAlgebra(sig, n, std::move(tables));
  }

  inline std::mt19937& rng() {
    static std::mt19937 gen(20240601);
    return gen;
  }

}  // namespace oracle

#endif  // FORGE_TESTS_ORACLES_HPP
