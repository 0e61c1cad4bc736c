// Classes of algebras given by a finite battery of generators: relative
// consequence, free algebras, K-congruence generation and finitely presented
// algebras.  All answers are exact for the quasi-variety generated by the
// battery and make no claim about larger classes.

#ifndef FORGE_CLASSES_HPP
#define FORGE_CLASSES_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "forge/finalg.hpp"
#include "forge/terms.hpp"

namespace forge {

  class ClassBattery {
   public:
    ClassBattery() = default;
    // Throws Error if the list is empty, a generator has another signature,
    // or a generator violates one of the axioms.
    ClassBattery(std::string                label,
                 Signature                  sig,
                 std::vector<FiniteAlgebra> generators,
                 std::vector<QuasiEquation> axioms = {});

    std::string const& label() const noexcept {
      return label_;
    }
    Signature const& signature() const noexcept {
      return sig_;
    }
    std::vector<FiniteAlgebra> const& generators() const noexcept {
      return generators_;
    }
    // Laws known to hold in the class; used for validation and as a source
    // of sample deductions.  Not required to axiomatize anything.
    std::vector<QuasiEquation> const& axioms() const noexcept {
      return axioms_;
    }

   private:
    std::string                label_;
    Signature                  sig_;
    std::vector<FiniteAlgebra> generators_;
    std::vector<QuasiEquation> axioms_;
  };

  struct Presentation {
    std::size_t           num_generators = 0;
    std::vector<Equation> relations;
  };
  // Throws Error if a relation uses a variable >= num_generators or a symbol
  // outside sig.
  void check_presentation(Signature const& sig, Presentation const& p);

  struct Counterexample {
    std::size_t          generator;   // index into the battery
    std::vector<Element> assignment;  // x_j -> assignment[j]
  };

  // An assignment in some generator satisfying every premise but not the
  // conclusion.
  std::optional<Counterexample> find_counterexample(
      ClassBattery const&          k,
      std::vector<Equation> const& premises,
      Equation const&              conclusion,
      std::size_t                  num_vars);

  // premises |=_K conclusion, with variables x0 .. x_{num_vars-1}.
  bool entails(ClassBattery const&          k,
               std::vector<Equation> const& premises,
               Equation const&              conclusion,
               std::size_t                  num_vars);

  // An algebra generated by named elements, every element labelled with its
  // least term: minimal depth, then the canonical Term order.  Elements are
  // numbered in the order of their terms.
  struct FreeAlgebra {
    FiniteAlgebra        algebra;
    std::vector<Element> generators;  // image of x_j
    std::vector<Term>    terms;       // element -> representative

    Element element_of(Term const& t) const {
      return evaluate(algebra, t, generators);
    }
  };

  // The free algebra of Q(K) on num_generators generators.
  FreeAlgebra free_algebra(ClassBattery const& k, std::size_t num_generators);

  // Intersection of the kernels of all homomorphisms a -> G (G in the
  // battery) that identify every given pair; the total congruence if there
  // are none.
  Congruence cgK(ClassBattery const&                             k,
                 FiniteAlgebra const&                            a,
                 std::vector<std::pair<Element, Element>> const& pairs);

  struct PresentedAlgebra {
    FreeAlgebra  free;        // free algebra on P.num_generators generators
    FreeAlgebra  algebra;     // free / cgK(relations); generators and least
                              // terms carried over from the free algebra
    Homomorphism projection;  // free.algebra -> algebra.algebra
  };
  // The quotient of the free algebra by the K-congruence generated by the
  // relations.
  PresentedAlgebra present(ClassBattery const& k, Presentation const& p);

  // The same algebra built directly as the subalgebra generated by the
  // generator tuples in the product over all assignments that satisfy the
  // relations; avoids materialising the free algebra.  Elements carry
  // representative terms as in free_algebra.
  FreeAlgebra present_algebra(ClassBattery const& k, Presentation const& p);

}  // namespace forge

#endif  // FORGE_CLASSES_HPP
