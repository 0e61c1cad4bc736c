#include "forge/thetasub.hpp"

#include <algorithm>

namespace forge {

  TupleEquation constant_tuple_equation(Equation const& e, std::size_t kappa) {
    return TupleEquation{std::vector<Term>(kappa, e.lhs),
                         std::vector<Term>(kappa, e.rhs)};
  }

  void check_theta_spec(ThetaSpec const& spec) {
    std::size_t kappa = spec.lang.kappa();
    for (auto const& eq : spec.theta) {
      if (eq.lhs.size() != kappa || eq.rhs.size() != kappa) {
        throw Error("tuple equation of width " + std::to_string(eq.lhs.size())
                    + " in a language of exponent " + std::to_string(kappa));
      }
      for (auto const* side : {&eq.lhs, &eq.rhs}) {
        for (auto const& t : *side) {
          check_term(spec.lang.base(), t);
          if (variable_bound(t) > kappa) {
            throw Error("tuple equation uses a variable beyond x"
                        + std::to_string(kappa - 1));
          }
        }
      }
    }
  }

  namespace {
    bool solves(FiniteAlgebra const&              a,
                std::vector<TupleEquation> const& theta,
                std::span<Element const>          coords) {
      for (auto const& eq : theta) {
        for (std::size_t i = 0; i < eq.lhs.size(); ++i) {
          if (evaluate_unchecked(a, eq.lhs[i], coords)
              != evaluate_unchecked(a, eq.rhs[i], coords)) {
            return false;
          }
        }
      }
      return true;
    }

    void check_base(FiniteAlgebra const& a, ThetaSpec const& spec) {
      if (!(a.signature() == spec.lang.base())) {
        throw Error("algebra signature " + a.signature().name()
                    + " does not match the base of the matrix language");
      }
      check_theta_spec(spec);
    }

    // Applies op to encoded solutions; `flat` and `out` are scratch.
    Element apply_op(FiniteAlgebra const&     a,
                     MatrixOp const&          op,
                     std::size_t              kappa,
                     std::span<Element const> args,
                     std::vector<Element>&    flat,
                     std::vector<Element>&    out) {
      flat.resize(op.arity * kappa);
      for (std::size_t m = 0; m < op.arity; ++m) {
        Element e = args[m];
        for (std::size_t i = 0; i < kappa; ++i) {
          flat[m * kappa + i] = static_cast<Element>(e % a.size());
          e                   = static_cast<Element>(e / a.size());
        }
      }
      out.resize(kappa);
      for (std::size_t i = 0; i < kappa; ++i) {
        out[i] = evaluate_unchecked(a, op.components[i], flat);
      }
      return matrix_encode(a.size(), out);
    }

    // Fills the operation tables of the solution algebra, or reports the
    // first operation/argument tuple leaving the solution set.
    std::optional<std::pair<std::size_t, std::vector<Element>>> restrict_ops(
        FiniteAlgebra const&               a,
        ThetaSpec const&                   spec,
        std::vector<Element> const&        solutions,
        std::vector<std::vector<Element>>* tables) {
      std::size_t const    kappa = spec.lang.kappa();
      std::size_t const    n     = solutions.size();
      std::vector<Element> args, flat, out;
      for (std::size_t o = 0; o < spec.lang.ops().size(); ++o) {
        auto const&          op = spec.lang.ops()[o];
        std::vector<Element> table;
        std::optional<std::vector<Element>> bad;
        args.resize(op.arity);
        for_each_assignment(n, op.arity, [&](std::span<Element const> pos) {
          for (std::size_t m = 0; m < op.arity; ++m) {
            args[m] = solutions[pos[m]];
          }
          Element r  = apply_op(a, op, kappa, args, flat, out);
          auto    it = std::lower_bound(solutions.begin(), solutions.end(), r);
          if (it == solutions.end() || *it != r) {
            bad = args;
            return false;
          }
          if (tables) {
            table.push_back(static_cast<Element>(it - solutions.begin()));
          }
          return true;
        });
        if (bad) {
          return std::make_pair(o, std::move(*bad));
        }
        if (tables) {
          tables->push_back(std::move(table));
        }
      }
      return std::nullopt;
    }
  }  // namespace

  std::vector<Element> theta_solutions(FiniteAlgebra const& a,
                                       ThetaSpec const&     spec) {
    check_base(a, spec);
    std::size_t const    kappa = spec.lang.kappa();
    std::size_t const    size  = matrix_universe(a.size(), kappa);
    std::vector<Element> out;
    std::vector<Element> coords;
    for (Element e = 0; e < size; ++e) {
      coords = matrix_coordinates(a.size(), kappa, e);
      if (solves(a, spec.theta, coords)) {
        out.push_back(e);
      }
    }
    return out;
  }

  std::optional<Incompatibility> find_incompatibility(
      std::vector<FiniteAlgebra> const& algebras,
      ThetaSpec const&                  spec) {
    for (std::size_t k = 0; k < algebras.size(); ++k) {
      auto solutions = theta_solutions(algebras[k], spec);
      if (auto bad = restrict_ops(algebras[k], spec, solutions, nullptr)) {
        return Incompatibility{k, bad->first, std::move(bad->second)};
      }
    }
    return std::nullopt;
  }

  bool is_compatible(std::vector<FiniteAlgebra> const& algebras,
                     ThetaSpec const&                  spec) {
    return !find_incompatibility(algebras, spec);
  }

  ThetaSub theta_sub(FiniteAlgebra const& a, ThetaSpec const& spec) {
    auto                              solutions = theta_solutions(a, spec);
    std::vector<std::vector<Element>> tables;
    if (auto bad = restrict_ops(a, spec, solutions, &tables)) {
      throw Error("solution set is not closed under '"
                  + spec.lang.ops()[bad->first].name + "'");
    }
    FiniteAlgebra sub(spec.lang.signature(), solutions.size(),
                      std::move(tables));
    return ThetaSub{std::move(sub), std::move(solutions), spec.lang.kappa()};
  }

  Homomorphism theta_sub_hom(Homomorphism const& f,
                             ThetaSub const&     source,
                             ThetaSub const&     target) {
    if (source.kappa != target.kappa) {
      throw Error("theta_sub_hom: solution sets of different exponents");
    }
    if (source.elements.size() != source.algebra.size()
        || target.elements.size() != target.algebra.size()) {
      throw Error("theta_sub_hom: malformed solution set");
    }
    std::vector<Element> map(source.elements.size());
    for (std::size_t s = 0; s < source.elements.size(); ++s) {
      auto c = matrix_coordinates(f.source().size(), source.kappa,
                                  source.elements[s]);
      for (auto& x : c) {
        x = f(x);
      }
      Element image = matrix_encode(f.target().size(), c);
      auto    it    = std::lower_bound(target.elements.begin(),
                                       target.elements.end(), image);
      if (it == target.elements.end() || *it != image) {
        throw Error("theta_sub_hom: a solution is mapped outside the target "
                    "solution set");
      }
      map[s] = static_cast<Element>(it - target.elements.begin());
    }
    return Homomorphism(source.algebra, target.algebra, std::move(map));
  }

  Homomorphism theta_sub_hom(Homomorphism const& f, ThetaSpec const& spec) {
    return theta_sub_hom(f, theta_sub(f.source(), spec),
                         theta_sub(f.target(), spec));
  }

}  // namespace forge
