#include "forge/matpow.hpp"

#include <set>

#include "detail/closure.hpp"
#include "forge/thetasub.hpp"

namespace forge {

  MatrixLanguage::MatrixLanguage(Signature             base,
                                 std::size_t           kappa,
                                 std::vector<MatrixOp> ops)
      : base_(std::move(base)), kappa_(kappa), ops_(std::move(ops)) {
    if (kappa_ == 0) {
      throw Error("matrix exponent must be positive");
    }
    std::vector<OpSymbol> symbols;
    for (auto const& op : ops_) {
      if (op.components.size() != kappa_) {
        throw Error("matrix operation '" + op.name + "' has "
                    + std::to_string(op.components.size())
                    + " components, expected " + std::to_string(kappa_));
      }
      for (auto const& c : op.components) {
        check_term(base_, c);
        if (variable_bound(c) > op.arity * kappa_) {
          throw Error("matrix operation '" + op.name + "' uses variable x"
                      + std::to_string(variable_bound(c) - 1)
                      + " beyond its arity");
        }
      }
      symbols.push_back({op.name, op.arity});
    }
    sig_ = Signature(base_.name() + "^[" + std::to_string(kappa_) + "]",
                     std::move(symbols));
  }

  MatrixLanguage pointwise_language(Signature const& base,
                                    std::size_t      kappa,
                                    bool             structural) {
    std::vector<MatrixOp> ops;
    for (std::size_t s = 0; s < base.size(); ++s) {
      MatrixOp op{base.op(s).name, base.arity(s), {}};
      for (std::size_t i = 0; i < kappa; ++i) {
        std::vector<Term> args;
        for (std::size_t m = 0; m < op.arity; ++m) {
          args.push_back(Term::var(m * kappa + i));
        }
        op.components.push_back(Term::app(s, std::move(args)));
      }
      ops.push_back(std::move(op));
    }
    if (structural && kappa > 1) {
      MatrixOp diag{"diag", kappa, {}};
      MatrixOp shift{"shift", 1, {}};
      for (std::size_t i = 0; i < kappa; ++i) {
        diag.components.push_back(Term::var(i * kappa + i));
        shift.components.push_back(Term::var((i + 1) % kappa));
      }
      ops.push_back(std::move(diag));
      ops.push_back(std::move(shift));
    }
    return MatrixLanguage(base, kappa, std::move(ops));
  }

  std::vector<Element> matrix_coordinates(std::size_t n,
                                          std::size_t kappa,
                                          Element     e) {
    std::vector<Element> c(kappa);
    for (std::size_t i = 0; i < kappa; ++i) {
      c[i] = static_cast<Element>(e % n);
      e    = static_cast<Element>(e / n);
    }
    return c;
  }

  Element matrix_encode(std::size_t n, std::span<Element const> coords) {
    std::size_t e = 0;
    for (std::size_t i = coords.size(); i-- > 0;) {
      e = e * n + coords[i];
    }
    return static_cast<Element>(e);
  }

  std::size_t matrix_universe(std::size_t n, std::size_t kappa) {
    auto size = detail::checked_power(n, kappa, universe_limit());
    if (size > universe_limit()) {
      throw Error("matrix power universe " + std::to_string(n) + "^"
                  + std::to_string(kappa) + " exceeds the limit "
                  + std::to_string(universe_limit()));
    }
    return size;
  }

  namespace {
    void check_base(FiniteAlgebra const& a, MatrixLanguage const& lang) {
      if (!(a.signature() == lang.base())) {
        throw Error("algebra signature " + a.signature().name()
                    + " does not match the base of the matrix language");
      }
    }

    // Evaluates op on the flattened coordinates of its arguments.
    Element apply_flat(FiniteAlgebra const&     a,
                       MatrixOp const&          op,
                       std::span<Element const> flat,
                       std::vector<Element>&    out) {
      out.resize(op.components.size());
      for (std::size_t i = 0; i < op.components.size(); ++i) {
        out[i] = evaluate_unchecked(a, op.components[i], flat);
      }
      return matrix_encode(a.size(), out);
    }
  }  // namespace

  Element apply_matrix_op(FiniteAlgebra const&     a,
                          MatrixLanguage const&    lang,
                          std::size_t              op,
                          std::span<Element const> args) {
    check_base(a, lang);
    auto const&          mop   = lang.ops().at(op);
    std::size_t          kappa = lang.kappa();
    std::vector<Element> flat(mop.arity * kappa), out;
    if (args.size() != mop.arity) {
      throw Error("matrix operation '" + mop.name + "' expects "
                  + std::to_string(mop.arity) + " arguments");
    }
    for (std::size_t m = 0; m < mop.arity; ++m) {
      auto c = matrix_coordinates(a.size(), kappa, args[m]);
      std::copy(c.begin(), c.end(), flat.begin() + m * kappa);
    }
    return apply_flat(a, mop, flat, out);
  }

  FiniteAlgebra matrix_power(FiniteAlgebra const& a, MatrixLanguage const& lang) {
    check_base(a, lang);
    std::size_t const kappa = lang.kappa();
    std::size_t const n     = a.size();
    std::size_t const size  = matrix_universe(n, kappa);

    std::vector<Element> coords(size * kappa);
    for (Element e = 0; e < size; ++e) {
      auto c = matrix_coordinates(n, kappa, e);
      std::copy(c.begin(), c.end(), coords.begin() + e * kappa);
    }
    std::vector<std::vector<Element>> tables;
    std::vector<Element>              flat, out;
    for (auto const& op : lang.ops()) {
      if (detail::checked_power(size, op.arity, detail::table_limit)
          > detail::table_limit) {
        throw Error("table of matrix operation '" + op.name + "' too large");
      }
      std::vector<Element> table;
      flat.resize(op.arity * kappa);
      for_each_assignment(size, op.arity, [&](std::span<Element const> args) {
        for (std::size_t m = 0; m < op.arity; ++m) {
          std::copy_n(coords.begin() + args[m] * kappa, kappa,
                      flat.begin() + m * kappa);
        }
        table.push_back(apply_flat(a, op, flat, out));
        return true;
      });
      tables.push_back(std::move(table));
    }
    return FiniteAlgebra(lang.signature(), size, std::move(tables));
  }

  Homomorphism matrix_power_hom(Homomorphism const&   f,
                                MatrixLanguage const& lang) {
    auto source = matrix_power(f.source(), lang);
    auto target = matrix_power(f.target(), lang);
    std::vector<Element> map(source.size());
    for (Element e = 0; e < source.size(); ++e) {
      auto c = matrix_coordinates(f.source().size(), lang.kappa(), e);
      for (auto& x : c) {
        x = f(x);
      }
      map[e] = matrix_encode(f.target().size(), c);
    }
    return Homomorphism(std::move(source), std::move(target), std::move(map));
  }

  namespace {
    void check_unary(Signature const& sig, Term const& sigma) {
      check_term(sig, sigma);
      for (auto v : variables_of(sigma)) {
        if (v != 0) {
          throw Error("sigma must be a term in x0 only");
        }
      }
    }
  }  // namespace

  SigmaCheck sigma_check(ClassBattery const& k, Term const& sigma) {
    check_unary(k.signature(), sigma);
    SigmaCheck out;
    Term       twice = substitute(sigma, std::span<Term const>(&sigma, 1));
    out.idempotent   = entails(k, {}, Equation{twice, sigma}, 1);

    auto free = free_algebra(k, 1);
    auto const& f = free.algebra;
    std::vector<Element> order;
    std::vector<Term>    terms;
    std::vector<bool>    known(f.size(), false);
    auto add = [&](Element e, Term t) {
      if (!known[e]) {
        known[e] = true;
        order.push_back(e);
        terms.push_back(std::move(t));
      }
    };
    for (Element u = 0; u < f.size(); ++u) {
      add(evaluate(f, sigma, std::span<Element const>(&u, 1)),
          substitute(sigma, std::span<Term const>(&free.terms[u], 1)));
    }
    std::vector<Element> elems;
    detail::close_under(
        f.signature(), [&] { return order.size(); },
        [&](std::size_t op, std::span<Element const> pos) {
          elems.resize(pos.size());
          std::vector<Term> args;
          for (std::size_t i = 0; i < pos.size(); ++i) {
            elems[i] = order[pos[i]];
            args.push_back(terms[pos[i]]);
          }
          Element r = f.apply(op, elems);
          if (!known[r]) {
            add(r, Term::app(op, std::move(args)));
          }
        });
    Element x = free.generators.at(0);
    if (known[x]) {
      out.invertible = true;
      for (std::size_t p = 0; p < order.size(); ++p) {
        if (order[p] == x) {
          out.witness = terms[p];
        }
      }
    }
    return out;
  }

  FiniteAlgebra sigma_construction(FiniteAlgebra const& a,
                                   ClassBattery const&  k,
                                   Term const&          sigma) {
    auto const& sig = k.signature();
    if (!(a.signature() == sig)) {
      throw Error("algebra is not over the battery's signature");
    }
    auto check = sigma_check(k, sigma);
    if (!check.idempotent) {
      throw Error("sigma is not idempotent over " + k.label());
    }
    if (!check.invertible) {
      throw Error("sigma is not invertible over " + k.label());
    }
    std::vector<MatrixOp> ops;
    for (std::size_t s = 0; s < sig.size(); ++s) {
      Term basic = Term::app(s, variables(sig.arity(s)));
      ops.push_back(MatrixOp{sig.op(s).name, sig.arity(s),
                             {substitute(sigma, std::span<Term const>(&basic, 1))}});
    }
    ThetaSpec spec{MatrixLanguage(sig, 1, std::move(ops)),
                   {TupleEquation{{Term::var(0)}, {sigma}}}};
    return theta_sub(a, spec).algebra.relabel(sig);
  }

}  // namespace forge
