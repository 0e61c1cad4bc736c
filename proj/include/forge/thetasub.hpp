// Compatible equation sets and the subalgebras they cut out of matrix powers.
//
// A one-variable equation over A^[k] is written as a pair of k-tuples of base
// terms in x^0 .. x^{k-1} (Var(0) .. Var(k-1)); an element <a_0, ..., a_{k-1}>
// solves it when both tuples evaluate to the same element.

#ifndef FORGE_THETASUB_HPP
#define FORGE_THETASUB_HPP

#include <optional>
#include <vector>

#include "forge/matpow.hpp"

namespace forge {

  struct TupleEquation {
    std::vector<Term> lhs;
    std::vector<Term> rhs;
  };

  // <e, ..., e> = <d, ..., d>: the equation e = d lifted to constant tuples.
  TupleEquation constant_tuple_equation(Equation const& e, std::size_t kappa);

  struct ThetaSpec {
    MatrixLanguage             lang;
    std::vector<TupleEquation> theta;
  };
  // Throws Error if an equation has the wrong width or uses a variable
  // beyond x^{k-1}.
  void check_theta_spec(ThetaSpec const& spec);

  // Encoded solutions in A^k, ascending.
  std::vector<Element> theta_solutions(FiniteAlgebra const& a,
                                       ThetaSpec const&     spec);

  struct Incompatibility {
    std::size_t          algebra;  // index into the list
    std::size_t          op;       // index into spec.lang.ops()
    std::vector<Element> args;     // encoded solutions
  };
  // The first operation of the language that leads out of the solution set
  // in one of the (base) algebras.
  std::optional<Incompatibility> find_incompatibility(
      std::vector<FiniteAlgebra> const& algebras,
      ThetaSpec const&                  spec);
  bool is_compatible(std::vector<FiniteAlgebra> const& algebras,
                     ThetaSpec const&                  spec);

  struct ThetaSub {
    FiniteAlgebra        algebra;   // over spec.lang.signature()
    std::vector<Element> elements;  // element -> encoded tuple in A^k
    std::size_t          kappa = 1;
  };
  // Throws Error (naming the operation) if the solutions are not closed.
  ThetaSub theta_sub(FiniteAlgebra const& a, ThetaSpec const& spec);

  // The restriction of f^[k] to the solution sets.
  Homomorphism theta_sub_hom(Homomorphism const& f,
                             ThetaSub const&     source,
                             ThetaSub const&     target);
  Homomorphism theta_sub_hom(Homomorphism const& f, ThetaSpec const& spec);

}  // namespace forge

#endif  // FORGE_THETASUB_HPP
