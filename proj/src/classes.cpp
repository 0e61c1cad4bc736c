#include "forge/classes.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace forge {

  ClassBattery::ClassBattery(std::string                label,
                             Signature                  sig,
                             std::vector<FiniteAlgebra> generators,
                             std::vector<QuasiEquation> axioms)
      : label_(std::move(label)),
        sig_(std::move(sig)),
        generators_(std::move(generators)),
        axioms_(std::move(axioms)) {
    if (generators_.empty()) {
      throw Error("battery '" + label_ + "' has no generators");
    }
    for (std::size_t g = 0; g < generators_.size(); ++g) {
      if (!(generators_[g].signature() == sig_)) {
        throw Error("battery '" + label_ + "': generator "
                    + std::to_string(g) + " has another signature");
      }
      for (auto const& ax : axioms_) {
        if (find_violation(generators_[g], ax)) {
          throw Error("battery '" + label_ + "': generator "
                      + std::to_string(g) + " violates "
                      + to_string(ax.conclusion, sig_));
        }
      }
    }
  }

  void check_presentation(Signature const& sig, Presentation const& p) {
    for (auto const& r : p.relations) {
      check_equation(sig, r);
      if (variable_bound(r) > p.num_generators) {
        throw Error("relation " + to_string(r, sig)
                    + " uses a variable beyond x"
                    + std::to_string(p.num_generators) + "-1");
      }
    }
  }

  std::optional<Counterexample> find_counterexample(
      ClassBattery const&          k,
      std::vector<Equation> const& premises,
      Equation const&              conclusion,
      std::size_t                  num_vars) {
    auto const& sig = k.signature();
    check_equation(sig, conclusion);
    std::size_t need = variable_bound(conclusion);
    for (auto const& p : premises) {
      check_equation(sig, p);
      need = std::max(need, variable_bound(p));
    }
    if (need > num_vars) {
      throw Error("deduction uses x" + std::to_string(need - 1)
                  + " but only " + std::to_string(num_vars)
                  + " variables were declared");
    }
    for (std::size_t g = 0; g < k.generators().size(); ++g) {
      auto const&                   a = k.generators()[g];
      std::optional<Counterexample> found;
      for_each_assignment(a.size(), num_vars, [&](std::span<Element const> v) {
        for (auto const& p : premises) {
          if (evaluate_unchecked(a, p.lhs, v) != evaluate_unchecked(a, p.rhs, v)) {
            return true;
          }
        }
        if (evaluate_unchecked(a, conclusion.lhs, v) != evaluate_unchecked(a, conclusion.rhs, v)) {
          found = Counterexample{g, std::vector<Element>(v.begin(), v.end())};
          return false;
        }
        return true;
      });
      if (found) {
        return found;
      }
    }
    return std::nullopt;
  }

  bool entails(ClassBattery const&          k,
               std::vector<Equation> const& premises,
               Equation const&              conclusion,
               std::size_t                  num_vars) {
    return !find_counterexample(k, premises, conclusion, num_vars);
  }

  namespace {
    struct TupleHash {
      std::size_t operator()(std::vector<Element> const& v) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (auto x : v) {
          h = (h ^ x) * 1099511628211ull;
        }
        return h;
      }
    };

    // One factor of the product: a pointed algebra (A, g_1..g_λ) reduced to
    // the subalgebra generated by the points.
    struct Coordinate {
      FiniteAlgebra        algebra;
      std::vector<Element> points;
    };

    // All pointed generators satisfying the relations, with duplicates
    // (equal canonical form) and homomorphic images of other coordinates
    // removed.  Neither changes the kernel of the map from the free algebra.
    std::vector<Coordinate> reduced_coordinates(ClassBattery const& k,
                                                Presentation const& p) {
      using Key = std::pair<std::vector<Element>,
                            std::vector<std::vector<Element>>>;
      std::map<Key, std::size_t> seen;
      std::vector<Coordinate>    unique;
      for (auto const& a : k.generators()) {
        for_each_assignment(
            a.size(), p.num_generators, [&](std::span<Element const> v) {
              for (auto const& r : p.relations) {
                if (evaluate_unchecked(a, r.lhs, v) != evaluate_unchecked(a, r.rhs, v)) {
                  return true;
                }
              }
              auto sub = subalgebra_generated(a, v);
              // Positions of the points inside the subalgebra.
              std::vector<Element> points(v.size());
              auto const&          incl = sub.inclusion.map();
              for (std::size_t j = 0; j < v.size(); ++j) {
                points[j] = static_cast<Element>(
                    std::find(incl.begin(), incl.end(), v[j]) - incl.begin());
              }
              Key key{points, sub.algebra.tables()};
              if (seen.emplace(std::move(key), unique.size()).second) {
                unique.push_back({sub.algebra, std::move(points)});
              }
              return true;
            });
      }
      std::stable_sort(unique.begin(), unique.end(),
                       [](Coordinate const& x, Coordinate const& y) {
                         return x.algebra.size() > y.algebra.size();
                       });
      std::vector<Coordinate> kept;
      for (auto& c : unique) {
        bool dominated = false;
        for (auto const& d : kept) {
          if (d.algebra.size() > c.algebra.size()
              && extend_from_generators(d.algebra, d.points, c.algebra,
                                        c.points)) {
            dominated = true;
            break;
          }
        }
        if (!dominated) {
          kept.push_back(std::move(c));
        }
      }
      return kept;
    }

    // Subalgebra of the product of the coordinates generated by the point
    // tuples, explored by term depth so that every element gets its least
    // representative and elements are numbered in representative order.
    FreeAlgebra generate_by_depth(Signature const&               sig,
                                  std::size_t                    num_generators,
                                  std::vector<Coordinate> const& coords) {
      std::size_t const    width = coords.size();
      std::vector<Element> values;  // element e occupies [e*width, (e+1)*width)
      std::unordered_map<std::vector<Element>, Element, TupleHash> index;
      FreeAlgebra                                                  out;

      auto intern = [&](std::vector<Element> const& t, Term term) {
        auto [it, fresh] = index.emplace(t, static_cast<Element>(index.size()));
        if (fresh) {
          if (index.size() > universe_limit()) {
            throw Error("generated algebra exceeds the universe limit "
                        + std::to_string(universe_limit()));
          }
          values.insert(values.end(), t.begin(), t.end());
          out.terms.push_back(std::move(term));
        }
        return it->second;
      };

      std::vector<Element> tuple(width);
      // Depth 0: variables, then constants.
      for (std::size_t j = 0; j < num_generators; ++j) {
        for (std::size_t c = 0; c < width; ++c) {
          tuple[c] = coords[c].points[j];
        }
        out.generators.push_back(intern(tuple, Term::var(j)));
      }
      std::vector<Element> args;
      auto apply = [&](std::size_t op, std::span<Element const> elems) {
        args.resize(elems.size());
        for (std::size_t c = 0; c < width; ++c) {
          for (std::size_t k = 0; k < elems.size(); ++k) {
            args[k] = values[elems[k] * width + c];
          }
          tuple[c] = coords[c].algebra.apply(op, args);
        }
      };
      for (std::size_t op = 0; op < sig.size(); ++op) {
        if (sig.arity(op) == 0) {
          apply(op, {});
          intern(tuple, Term::app(op));
        }
      }

      // Deeper levels: tuples using at least one element of the previous
      // level.  Among the ways of producing a new element keep the least
      // (op, argument ranks); ranks are element indices.
      struct Candidate {
        std::size_t          op;
        std::vector<Element> args;
      };
      std::size_t level_begin = 0;
      std::size_t level_end   = index.size();
      while (level_begin < level_end) {
        std::unordered_map<std::vector<Element>, Candidate, TupleHash> pending;
        for (std::size_t op = 0; op < sig.size(); ++op) {
          std::size_t arity = sig.arity(op);
          if (arity == 0) {
            continue;
          }
          std::vector<Element> t(arity);
          // Enumerate tuples over [0, level_end) with a component in
          // [level_begin, level_end).
          for (std::size_t p = 0; p < arity; ++p) {
            if (p > 0 && level_begin == 0) {
              break;
            }
            std::vector<std::size_t> lo(arity), hi(arity);
            for (std::size_t q = 0; q < arity; ++q) {
              lo[q] = q == p ? level_begin : 0;
              hi[q] = q < p ? level_begin : level_end;
            }
            for (std::size_t q = 0; q < arity; ++q) {
              t[q] = static_cast<Element>(lo[q]);
            }
            bool more = true;
            while (more) {
              apply(op, t);
              if (!index.count(tuple)) {
                auto [it, fresh] = pending.try_emplace(tuple, Candidate{op, t});
                if (!fresh) {
                  auto& best = it->second;
                  if (std::tie(op, t) < std::tie(best.op, best.args)) {
                    best = Candidate{op, t};
                  }
                }
              }
              more = false;
              for (std::size_t q = arity; q-- > 0;) {
                if (t[q] + 1 < hi[q]) {
                  ++t[q];
                  more = true;
                  break;
                }
                t[q] = static_cast<Element>(lo[q]);
              }
            }
          }
        }
        std::vector<std::pair<Candidate, std::vector<Element>>> fresh;
        fresh.reserve(pending.size());
        for (auto& [t, cand] : pending) {
          fresh.emplace_back(std::move(cand), t);
        }
        std::sort(fresh.begin(), fresh.end(), [](auto const& x, auto const& y) {
          return std::tie(x.first.op, x.first.args)
                 < std::tie(y.first.op, y.first.args);
        });
        for (auto& [cand, t] : fresh) {
          std::vector<Term> sub;
          sub.reserve(cand.args.size());
          for (auto a : cand.args) {
            sub.push_back(out.terms[a]);
          }
          intern(t, Term::app(cand.op, std::move(sub)));
        }
        level_begin = level_end;
        level_end   = index.size();
      }

      std::size_t const                 n = index.size();
      std::vector<std::vector<Element>> tables(sig.size());
      for (std::size_t op = 0; op < sig.size(); ++op) {
        for_each_assignment(n, sig.arity(op), [&](std::span<Element const> e) {
          apply(op, e);
          tables[op].push_back(index.at(tuple));
          return true;
        });
      }
      out.algebra = FiniteAlgebra(sig, n, std::move(tables));
      return out;
    }
  }  // namespace

  FreeAlgebra free_algebra(ClassBattery const& k, std::size_t num_generators) {
    return present_algebra(k, Presentation{num_generators, {}});
  }

  FreeAlgebra present_algebra(ClassBattery const& k, Presentation const& p) {
    check_presentation(k.signature(), p);
    return generate_by_depth(k.signature(), p.num_generators,
                             reduced_coordinates(k, p));
  }

  Congruence cgK(ClassBattery const&                             k,
                 FiniteAlgebra const&                            a,
                 std::vector<std::pair<Element, Element>> const& pairs) {
    for (auto const& [x, y] : pairs) {
      if (x >= a.size() || y >= a.size()) {
        throw Error("cgK: pair element outside the universe");
      }
    }
    std::vector<Element> block(a.size(), 0);
    bool                 any = false;
    for (auto const& g : k.generators()) {
      for_each_hom(a, g, [&](std::span<Element const> h) {
        for (auto const& [x, y] : pairs) {
          if (h[x] != h[y]) {
            return true;
          }
        }
        any = true;
        std::map<std::pair<Element, Element>, Element> refined;
        for (std::size_t e = 0; e < block.size(); ++e) {
          auto [it, fresh] = refined.try_emplace(
              {block[e], h[e]}, static_cast<Element>(refined.size()));
          block[e] = it->second;
        }
        return true;
      });
    }
    if (!any) {
      return Congruence::total(a);
    }
    return Congruence(a, std::move(block));
  }

  PresentedAlgebra present(ClassBattery const& k, Presentation const& p) {
    check_presentation(k.signature(), p);
    PresentedAlgebra out;
    out.free = free_algebra(k, p.num_generators);
    std::vector<std::pair<Element, Element>> pairs;
    for (auto const& r : p.relations) {
      pairs.emplace_back(out.free.element_of(r.lhs), out.free.element_of(r.rhs));
    }
    auto q                 = quotient(out.free.algebra,
                                      cgK(k, out.free.algebra, pairs));
    out.algebra.algebra    = q.algebra;
    out.projection         = q.projection;
    for (auto g : out.free.generators) {
      out.algebra.generators.push_back(q.projection(g));
    }
    // Blocks are numbered by first occurrence, and free elements in term
    // order, so the first member of each block carries its least term.
    out.algebra.terms.resize(q.algebra.size());
    std::vector<bool> seen(q.algebra.size(), false);
    for (Element e = 0; e < out.free.algebra.size(); ++e) {
      Element b = q.projection(e);
      if (!seen[b]) {
        seen[b]              = true;
        out.algebra.terms[b] = out.free.terms[e];
      }
    }
    return out;
  }

}  // namespace forge
