// Finite algebras given by operation tables over the universe {0, ..., n-1}.

#ifndef FORGE_FINALG_HPP
#define FORGE_FINALG_HPP

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "forge/terms.hpp"

namespace forge {

  using Element = std::uint32_t;

  // Largest universe (and largest single operation table) any construction
  // will materialise.  Defaults to 10^6; the FORGE_MAX_UNIVERSE environment
  // variable overrides it.
  std::size_t universe_limit();

  // Tables are stored row-major: the entry for (a_1, ..., a_m) lives at
  // a_1 * n^(m-1) + ... + a_m.  Copies share the (immutable) tables.
  class FiniteAlgebra {
   public:
    // The 0-element algebra over the empty signature.
    FiniteAlgebra();
    // Validates table shapes and entries; a 0-element universe is rejected
    // when the signature has constants.
    FiniteAlgebra(Signature                         sig,
                  std::size_t                       size,
                  std::vector<std::vector<Element>> tables);

    Signature const& signature() const noexcept {
      return data_->sig;
    }
    std::size_t size() const noexcept {
      return data_->size;
    }
    std::span<Element const> table(std::size_t op) const {
      return data_->tables.at(op);
    }
    std::vector<std::vector<Element>> const& tables() const noexcept {
      return data_->tables;
    }

    Element apply(std::size_t op, std::span<Element const> args) const;
    Element apply(std::size_t op, std::initializer_list<Element> args) const {
      return apply(op, std::span<Element const>(args.begin(), args.size()));
    }
    // Convenience: apply by symbol name.
    Element apply(std::string_view                symbol,
                  std::initializer_list<Element> args) const {
      return apply(signature().index_of(symbol), args);
    }

    // Same tables under another signature with identical arities.
    FiniteAlgebra relabel(Signature sig) const;

    friend bool operator==(FiniteAlgebra const& a, FiniteAlgebra const& b);

   private:
    struct Data {
      Signature                         sig;
      std::size_t                       size = 0;
      std::vector<std::vector<Element>> tables;
    };
    std::shared_ptr<Data const> data_;
  };

  // Row-major index of args in a table of an algebra with n elements.
  std::size_t table_index(std::size_t n, std::span<Element const> args);

  class Homomorphism {
   public:
    Homomorphism() = default;
    // Throws Error if map is not a homomorphism from source to target.
    Homomorphism(FiniteAlgebra source, FiniteAlgebra target,
                 std::vector<Element> map);
    // Skips the preservation check; for maps already known to be homomorphisms.
    static Homomorphism trusted(FiniteAlgebra        source,
                                FiniteAlgebra        target,
                                std::vector<Element> map);
    static Homomorphism identity(FiniteAlgebra const& a);

    FiniteAlgebra const& source() const noexcept {
      return source_;
    }
    FiniteAlgebra const& target() const noexcept {
      return target_;
    }
    std::vector<Element> const& map() const noexcept {
      return map_;
    }
    Element operator()(Element a) const {
      return map_.at(a);
    }

    bool is_injective() const;
    bool is_surjective() const;

    friend bool operator==(Homomorphism const&, Homomorphism const&) = default;

   private:
    FiniteAlgebra        source_;
    FiniteAlgebra        target_;
    std::vector<Element> map_;
  };

  // g after f.
  Homomorphism compose(Homomorphism const& g, Homomorphism const& f);

  // Witness of a failed preservation check: op applied to args.
  struct PreservationFailure {
    std::size_t          op;
    std::vector<Element> args;
  };
  std::optional<PreservationFailure> find_preservation_failure(
      FiniteAlgebra const&     a,
      FiniteAlgebra const&     b,
      std::span<Element const> map);
  bool is_homomorphism(FiniteAlgebra const&     a,
                       FiniteAlgebra const&     b,
                       std::span<Element const> map);

  // A partition of the universe, block ids dense in order of first
  // occurrence.
  class Congruence {
   public:
    Congruence() = default;
    Congruence(FiniteAlgebra algebra, std::vector<Element> block_of);

    static Congruence identity(FiniteAlgebra const& a);
    static Congruence total(FiniteAlgebra const& a);

    FiniteAlgebra const& algebra() const noexcept {
      return algebra_;
    }
    std::vector<Element> const& block_of() const noexcept {
      return block_of_;
    }
    std::size_t num_blocks() const noexcept {
      return num_blocks_;
    }
    bool related(Element a, Element b) const {
      return block_of_.at(a) == block_of_.at(b);
    }
    // Generating-free description: the pairs (a, b), a < b, in the same
    // block.
    std::vector<std::pair<Element, Element>> pairs() const;
    // Witness that the partition is not compatible with some operation.
    std::optional<PreservationFailure> find_incompatibility() const;

    friend bool operator==(Congruence const& a, Congruence const& b) {
      return a.block_of_ == b.block_of_;
    }
    // Inclusion of relations.
    bool refines(Congruence const& other) const;

   private:
    FiniteAlgebra        algebra_;
    std::vector<Element> block_of_;
    std::size_t          num_blocks_ = 0;
  };

  // Terms are evaluated under assignment[j] for Var(j); throws Error for an
  // unassigned variable or an unknown symbol.
  Element evaluate(FiniteAlgebra const&     a,
                   Term const&              t,
                   std::span<Element const> assignment);
  // As evaluate, for terms and assignments already known to be valid.
  Element evaluate_unchecked(FiniteAlgebra const&     a,
                             Term const&              t,
                             std::span<Element const> assignment);

  // Calls visit on every tuple in {0..n-1}^vars, last coordinate fastest.
  // Stops early when visit returns false; returns false iff stopped.
  bool for_each_assignment(
      std::size_t                                           n,
      std::size_t                                           vars,
      std::function<bool(std::span<Element const>)> const& visit);

  bool satisfies(FiniteAlgebra const& a, Equation const& e);
  std::optional<std::vector<Element>> find_violation(FiniteAlgebra const& a,
                                                     QuasiEquation const& q);
  bool satisfies_quasi_equation(FiniteAlgebra const& a, QuasiEquation const& q);

  // Homomorphisms a -> b.  The search fixes images of a generating sequence
  // chosen in index order and propagates through the operation tables.
  // enumerate_homs returns maps sorted lexicographically.
  void for_each_hom(FiniteAlgebra const&                                  a,
                    FiniteAlgebra const&                                  b,
                    std::function<bool(std::span<Element const>)> const& visit);
  std::vector<Homomorphism> enumerate_homs(FiniteAlgebra const& a,
                                           FiniteAlgebra const& b);
  std::size_t count_homs(FiniteAlgebra const& a, FiniteAlgebra const& b);

  // The unique homomorphism sending generators[k] to images[k], if any.
  // Throws Error if the generators do not generate a.
  std::optional<Homomorphism> extend_from_generators(
      FiniteAlgebra const&     a,
      std::span<Element const> generators,
      FiniteAlgebra const&     b,
      std::span<Element const> images);

  std::optional<Homomorphism> find_isomorphism(FiniteAlgebra const& a,
                                               FiniteAlgebra const& b);
  bool are_isomorphic(FiniteAlgebra const& a, FiniteAlgebra const& b);

  struct Product {
    FiniteAlgebra             algebra;
    std::vector<Homomorphism> projections;
    // Element e encodes (e mod n_0, (e / n_0) mod n_1, ...).
    std::vector<Element> coordinates(Element e) const;
    Element              encode(std::span<Element const> coords) const;

    std::vector<std::size_t> sizes;
  };
  // The empty product is the 1-element algebra over sig.
  Product product(Signature const& sig, std::span<FiniteAlgebra const> factors);

  struct Subalgebra {
    FiniteAlgebra algebra;
    Homomorphism  inclusion;
  };
  // Least subuniverse containing seed and the constants; elements are
  // numbered in discovery order, seed first.
  Subalgebra subalgebra_generated(FiniteAlgebra const&     a,
                                  std::span<Element const> seed);

  struct Quotient {
    FiniteAlgebra algebra;
    Homomorphism  projection;
  };
  // Throws Error (naming the offending operation and arguments) if theta is
  // not compatible with the operations.
  Quotient quotient(FiniteAlgebra const& a, Congruence const& theta);

  Congruence kernel(Homomorphism const& f);

  // The subalgebra of the target on the image of f.
  Subalgebra image(Homomorphism const& f);

}  // namespace forge

#endif  // FORGE_FINALG_HPP
