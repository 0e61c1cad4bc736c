// The adjunction induced by a contextual translation <tau, Theta> from X to
// Y: the right adjoint G = theta_L o [k] : Y -> X, the left adjoint on
// finite presentations, and exhaustive checks of adjointness.

#ifndef FORGE_ADJOINT_HPP
#define FORGE_ADJOINT_HPP

#include <string>
#include <vector>

#include "forge/classes.hpp"
#include "forge/thetasub.hpp"
#include "forge/xlate.hpp"

namespace forge {

  struct RightAdjointSpec {
    ContextualTranslation ct;
    ClassBattery          x;
    ClassBattery          y;
    MatrixLanguage        lang;   // one op per X-symbol, components tau(psi)
    ThetaSpec             theta;  // Theta lifted to constant tuples
  };
  // Throws Error if the batteries do not match the translation's signatures.
  RightAdjointSpec make_right_adjoint(ContextualTranslation ct,
                                      ClassBattery          x,
                                      ClassBattery          y);

  // G(B) with X's signature; elements are the solutions of Theta in B^k.
  // Throws Error if the solutions are not closed under the translated
  // operations or the result violates an axiom of X.
  ThetaSub apply_right_adjoint(RightAdjointSpec const& spec,
                               FiniteAlgebra const&    b);
  Homomorphism apply_right_adjoint_hom(RightAdjointSpec const& spec,
                                       Homomorphism const&     f);

  struct LeftAdjointImage {
    Presentation presentation;  // over Y: k*lambda generators
    FreeAlgebra  algebra;       // present_algebra(Y, presentation)
  };
  LeftAdjointImage apply_left_adjoint(RightAdjointSpec const& spec,
                                      Presentation const&     p);

  struct HomsetBijection {
    std::size_t count_left  = 0;  // |hom_Y(F(P), B)|
    std::size_t count_right = 0;  // |hom_X(P, G(B))|
    // The restriction map f |-> (x_j |-> <f(x^i_j)>_i) is well defined,
    // injective and onto.
    bool correspondence = false;
    bool passes() const {
      return count_left == count_right && correspondence;
    }
  };
  HomsetBijection verify_homset_bijection(RightAdjointSpec const& spec,
                                          Presentation const&     p,
                                          FiniteAlgebra const&    b);

  // The left adjoint on the free X-algebras on 1 and n generators and on the
  // basic operations.
  struct FunctorData {
    FreeAlgebra               f1;    // generators: pi1(x^0) .. pi1(x^{k-1})
    Homomorphism              pi1;   // free Y-algebra on k generators -> f1
    std::vector<FreeAlgebra>  fn;    // per X-symbol psi of arity n: F(Tm_X(n))
    std::vector<Homomorphism> fops;  // per X-symbol: F(psi) : f1 -> fn
  };
  // Read off the translation: F(psi) sends x^i to tau(psi)_i.
  FunctorData functor_data(RightAdjointSpec const& spec);
  // The same data recovered from G alone (Yoneda): F(psi) sends x^i to the
  // i-th coordinate of psi^{G(Fn)} applied to the generator blocks of Fn.
  FunctorData functor_data_from_right_adjoint(RightAdjointSpec const& spec);

  struct SigmaReport {
    std::size_t homs      = 0;  // |hom_Y(F(Tm_X(1)), B)|
    std::size_t solutions = 0;  // |G(B)|
    bool        bijective      = false;
    bool        homomorphism   = false;
    bool passes() const {
      return bijective && homomorphism;
    }
  };
  // sigma_B : hom_Y(F1, B) -> G(B), f |-> <f(pi1(x^i))>_i, with the X-structure
  // psi(f_1, ..., f_n) = <f_1, ..., f_n> o F(psi) on the left.
  SigmaReport verify_sigma_iso(RightAdjointSpec const& spec,
                               FunctorData const&      data,
                               FiniteAlgebra const&    b);

  struct FinitenessReport {
    bool         kappa_finite = true;
    bool         theta_finite = true;
    Presentation witness;  // F(Tm_X(1)) = (k, Theta)
  };
  FinitenessReport finiteness_report(RightAdjointSpec const& spec);

}  // namespace forge

#endif  // FORGE_ADJOINT_HPP
