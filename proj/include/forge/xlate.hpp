// k-translations between signatures, their liftings to terms and equations,
// the contextual-translation conditions, and recovery of a contextual
// translation from the data of a left adjoint.
//
// Variable convention: the source variable x_j becomes the block
// x^0_j .. x^{k-1}_j, flattened to Var(j*k) .. Var(j*k + k - 1).

#ifndef FORGE_XLATE_HPP
#define FORGE_XLATE_HPP

#include <optional>
#include <vector>

#include "forge/classes.hpp"
#include "forge/finalg.hpp"
#include "forge/terms.hpp"

namespace forge {

  class Translation {
   public:
    Translation() = default;
    // images[s] is the k-tuple for source symbol s: target terms over
    // Var(0) .. Var(arity*k - 1).  Constants go to tuples of ground terms.
    Translation(std::size_t                    kappa,
                Signature                      source,
                Signature                      target,
                std::vector<std::vector<Term>> images);

    std::size_t kappa() const noexcept {
      return kappa_;
    }
    Signature const& source() const noexcept {
      return source_;
    }
    Signature const& target() const noexcept {
      return target_;
    }
    std::vector<Term> const& image(std::size_t symbol) const {
      return images_.at(symbol);
    }
    std::vector<std::vector<Term>> const& images() const noexcept {
      return images_;
    }

   private:
    std::size_t                    kappa_ = 1;
    Signature                      source_;
    Signature                      target_;
    std::vector<std::vector<Term>> images_;
  };

  struct ContextualTranslation {
    Translation           tau;
    std::vector<Equation> context;  // target equations over Var(0..k-1)
  };
  // Throws Error if a context equation is malformed or uses Var(k) or above.
  void check_contextual(ContextualTranslation const& ct);

  struct Deduction {
    std::size_t           num_vars = 0;
    std::vector<Equation> premises;
    Equation              conclusion;
  };

  // tau_*: k target terms over k*(variable_bound(t)) variables.
  std::vector<Term> lift_term(Translation const& tau, Term const& t);
  // Componentwise lifting, duplicates removed (first occurrence kept).
  std::vector<Equation> lift_equations(Translation const&           tau,
                                       std::vector<Equation> const& phi);
  // The context instantiated on blocks 0 .. num_blocks-1.
  std::vector<Equation> context_instances(ContextualTranslation const& ct,
                                          std::size_t                  num_blocks);

  struct Condition1 {
    bool holds_in_source = false;
    bool transferred     = false;
    bool passes() const {
      return !holds_in_source || transferred;
    }
  };
  Condition1 check_condition1(ContextualTranslation const& ct,
                              ClassBattery const&          x,
                              ClassBattery const&          y,
                              Deduction const&             d);

  // Deductions valid in x used to sample condition 1: every axiom of the
  // battery, plus the replacement law for every symbol and a few derived
  // consequences.
  std::vector<Deduction> sample_deductions(ClassBattery const& x);

  struct Condition2Failure {
    std::size_t    symbol;       // source symbol
    Equation       equation;     // the instance that is not entailed
    Counterexample counterexample;
  };
  std::optional<Condition2Failure> find_condition2_failure(
      ContextualTranslation const& ct,
      ClassBattery const&          y);
  bool check_condition2(ContextualTranslation const& ct, ClassBattery const& y);

  struct Nontriviality {
    bool nontrivial = false;
    // No ground tuple of depth <= 2 satisfies the context.
    bool vacuous = false;
    std::optional<std::vector<Term>> ground;  // a ground solution of Theta
    std::optional<std::size_t>       index;   // i0
  };
  Nontriviality check_nontrivial(ContextualTranslation const& ct,
                                 ClassBattery const&          y);

  // Recovers <tau, Theta> from the data of a left adjoint F: pi1 is a
  // surjection from the free y-algebra on kappa generators onto F(Tm_x(1)),
  // and fops[s] is F(psi_s) : F(Tm_x(1)) -> F(Tm_x(n)), whose target must be
  // the algebra present_algebra(y, (kappa*n, Theta on every block)).
  // Throws Error when the kernel of pi1 is not a y-congruence or fops do not
  // fit the computed presentations.
  ContextualTranslation derive_translation(ClassBattery const&              x,
                                           ClassBattery const&              y,
                                           std::size_t                      kappa,
                                           Homomorphism const&              pi1,
                                           std::vector<Homomorphism> const& fops);

}  // namespace forge

#endif  // FORGE_XLATE_HPP
