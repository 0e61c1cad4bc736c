// Signatures, terms, equations and quasi-equations.
//
// Terms do not carry their signature: an App node stores the index of its
// operation symbol, and every operation that needs names or arities takes the
// Signature explicitly.  Variables are indexed, x<j> denotes Var(j).

#ifndef FORGE_TERMS_HPP
#define FORGE_TERMS_HPP

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace forge {

  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  class ParseError : public Error {
   public:
    ParseError(std::string const& message, std::size_t position);

    std::size_t position() const noexcept {
      return position_;
    }

   private:
    std::size_t position_;
  };

  struct OpSymbol {
    std::string name;
    std::size_t arity = 0;

    friend bool operator==(OpSymbol const&, OpSymbol const&) = default;
  };

  class Signature {
   public:
    Signature() = default;
    // Throws Error on duplicate or malformed symbol names.
    Signature(std::string name, std::vector<OpSymbol> ops);

    std::string const& name() const noexcept {
      return name_;
    }
    std::span<OpSymbol const> ops() const noexcept {
      return ops_;
    }
    std::size_t size() const noexcept {
      return ops_.size();
    }
    OpSymbol const& op(std::size_t i) const {
      return ops_.at(i);
    }
    std::size_t arity(std::size_t i) const {
      return ops_.at(i).arity;
    }

    std::optional<std::size_t> find(std::string_view symbol) const;
    // Like find, but throws Error for an unknown symbol.
    std::size_t index_of(std::string_view symbol) const;
    bool has_constants() const;
    std::size_t max_arity() const;

    // Two signatures are equal when they list the same symbols with the same
    // arities in the same order; the name is only a label.
    friend bool operator==(Signature const& a, Signature const& b) {
      return a.ops_ == b.ops_;
    }

   private:
    std::string           name_;
    std::vector<OpSymbol> ops_;
  };

  class Term {
   public:
    Term() = default;  // Var(0)

    static Term var(std::size_t index);
    static Term app(std::size_t symbol, std::vector<Term> args = {});

    bool is_var() const noexcept {
      return is_var_;
    }
    // Variable index for Var, symbol index for App.
    std::size_t index() const noexcept {
      return index_;
    }
    std::span<Term const> args() const noexcept {
      return args_;
    }
    // Variables and constants have depth 0.
    std::size_t depth() const noexcept {
      return depth_;
    }

    friend bool operator==(Term const& a, Term const& b);
    // Canonical order: depth, then Var before App, then index, then arguments
    // lexicographically.  Used for choosing representatives.
    friend std::strong_ordering operator<=>(Term const& a, Term const& b);

   private:
    bool              is_var_ = true;
    std::size_t       index_  = 0;
    std::size_t       depth_  = 0;
    std::vector<Term> args_;
  };

  struct Equation {
    Term lhs;
    Term rhs;

    friend bool operator==(Equation const&, Equation const&) = default;
    friend std::strong_ordering operator<=>(Equation const& a,
                                            Equation const& b) {
      if (auto c = a.lhs <=> b.lhs; c != 0) {
        return c;
      }
      return a.rhs <=> b.rhs;
    }
  };

  struct QuasiEquation {
    std::vector<Equation> premises;
    Equation              conclusion;
  };

  // Throws Error if t uses a symbol outside sig or with the wrong arity.
  void check_term(Signature const& sig, Term const& t);
  void check_equation(Signature const& sig, Equation const& e);

  // Builds App(symbol, args) by name, checking the arity.
  Term make_term(Signature const&   sig,
                 std::string_view   symbol,
                 std::vector<Term>  args = {});

  // Grammar:  term ::= var | ident | ident '(' term (',' term)* ')'
  //           var  ::= 'x' digits            (Var(digits))
  //                  | 'x' digits '_' digits  (only when block_width > 0:
  //                                            x<j>_<i> is Var(j*block_width+i))
  // Identifiers are [A-Za-z][A-Za-z0-9_]*; identifiers of the form x<digits>
  // are always variables.
  Term parse_term(std::string_view text,
                  Signature const& sig,
                  std::size_t      block_width = 0);
  // "lhs = rhs"
  Equation parse_equation(std::string_view text,
                          Signature const& sig,
                          std::size_t      block_width = 0);

  std::string to_string(Term const& t, Signature const& sig);
  std::string to_string(Equation const& e, Signature const& sig);

  // Simultaneous substitution; unmapped variables are left fixed.
  Term substitute(Term const& t, std::map<std::size_t, Term> const& images);
  // Dense form: Var(j) becomes images[j] when j < images.size().
  Term substitute(Term const& t, std::span<Term const> images);
  // Checked form: validates t and every image against sig.
  Term substitute(Signature const&                   sig,
                  Term const&                        t,
                  std::map<std::size_t, Term> const& images);

  Equation substitute(Equation const& e, std::span<Term const> images);

  // Sorted, without duplicates.
  std::vector<std::size_t> variables_of(Term const& t);
  std::vector<std::size_t> variables_of(Equation const& e);
  // One more than the largest variable index in t (0 for ground terms).
  std::size_t variable_bound(Term const& t);
  std::size_t variable_bound(Equation const& e);

  // Var(0), ..., Var(n-1)
  std::vector<Term> variables(std::size_t n, std::size_t first = 0);

  // Var(k) becomes Var(k + offset).
  Term shift_variables(Term const& t, std::size_t offset);
  Equation shift_variables(Equation const& e, std::size_t offset);

}  // namespace forge

#endif  // FORGE_TERMS_HPP
