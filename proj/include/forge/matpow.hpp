// Matrix powers A^[k]: the universe A^k with operations given by k-tuples of
// base terms applied blockwise.
//
// An n-ary matrix operation has k components, each a base term over the
// flattened variables x^i_m -> Var(m*k + i) (m < n is the argument, i < k the
// coordinate).  Elements of A^k are encoded in mixed radix with coordinate 0
// least significant.

#ifndef FORGE_MATPOW_HPP
#define FORGE_MATPOW_HPP

#include <optional>
#include <string>
#include <vector>

#include "forge/classes.hpp"
#include "forge/finalg.hpp"
#include "forge/terms.hpp"

namespace forge {

  struct MatrixOp {
    std::string       name;
    std::size_t       arity = 0;
    std::vector<Term> components;
  };

  class MatrixLanguage {
   public:
    MatrixLanguage() = default;
    // Throws Error on duplicate names, a wrong number of components, or a
    // component using a symbol outside base or a variable beyond arity*kappa.
    MatrixLanguage(Signature base, std::size_t kappa, std::vector<MatrixOp> ops);

    Signature const& base() const noexcept {
      return base_;
    }
    std::size_t kappa() const noexcept {
      return kappa_;
    }
    std::vector<MatrixOp> const& ops() const noexcept {
      return ops_;
    }
    // The signature of the matrix power: one symbol per op.
    Signature const& signature() const noexcept {
      return sig_;
    }

   private:
    Signature             base_;
    std::size_t           kappa_ = 1;
    std::vector<MatrixOp> ops_;
    Signature             sig_;
  };

  // Every base operation applied coordinatewise.  With structural ops the
  // language also contains
  //   diag(x_0, ..., x_{k-1}) = <x_0^0, x_1^1, ..., x_{k-1}^{k-1}>
  //   shift(x)                = <x^1, ..., x^{k-1}, x^0>
  // which together with the coordinatewise operations generate every
  // operation of the full matrix power (only added for k > 1).
  MatrixLanguage pointwise_language(Signature const& base,
                                    std::size_t      kappa,
                                    bool             structural = true);

  // Element <-> coordinates in A^k.
  std::vector<Element> matrix_coordinates(std::size_t n,
                                          std::size_t kappa,
                                          Element     e);
  Element matrix_encode(std::size_t n, std::span<Element const> coords);
  // n^k; throws Error when above the universe limit.
  std::size_t matrix_universe(std::size_t n, std::size_t kappa);

  // One matrix operation applied to encoded elements, without building the
  // power.
  Element apply_matrix_op(FiniteAlgebra const&     a,
                          MatrixLanguage const&    lang,
                          std::size_t              op,
                          std::span<Element const> args);

  FiniteAlgebra matrix_power(FiniteAlgebra const& a, MatrixLanguage const& lang);

  // f^[k] acting coordinatewise, between the matrix powers of its source and
  // target.
  Homomorphism matrix_power_hom(Homomorphism const& f, MatrixLanguage const& lang);

  struct SigmaCheck {
    bool idempotent = false;
    bool invertible = false;
    // x0 written in terms of sigma-images, when invertible.
    std::optional<Term> witness;
  };
  // sigma must be a term in x0 only.
  SigmaCheck sigma_check(ClassBattery const& k, Term const& sigma);

  // X(sigma): the solutions of x = sigma(x) in A with the operations
  // sigma(psi(x_1, ..., x_n)).  Throws Error unless sigma is idempotent and
  // invertible over k.
  FiniteAlgebra sigma_construction(FiniteAlgebra const& a,
                                   ClassBattery const&  k,
                                   Term const&          sigma);

}  // namespace forge

#endif  // FORGE_MATPOW_HPP
