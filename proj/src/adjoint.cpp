#include "forge/adjoint.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace forge {

  RightAdjointSpec make_right_adjoint(ContextualTranslation ct,
                                      ClassBattery          x,
                                      ClassBattery          y) {
    if (!(ct.tau.source() == x.signature())) {
      throw Error("translation source does not match battery " + x.label());
    }
    if (!(ct.tau.target() == y.signature())) {
      throw Error("translation target does not match battery " + y.label());
    }
    check_contextual(ct);
    std::size_t const     kappa = ct.tau.kappa();
    std::vector<MatrixOp> ops;
    auto const&           xsig = x.signature();
    for (std::size_t s = 0; s < xsig.size(); ++s) {
      ops.push_back({xsig.op(s).name, xsig.arity(s), ct.tau.image(s)});
    }
    MatrixLanguage             lang(y.signature(), kappa, std::move(ops));
    std::vector<TupleEquation> theta;
    for (auto const& e : ct.context) {
      theta.push_back(constant_tuple_equation(e, kappa));
    }
    ThetaSpec spec{lang, std::move(theta)};
    return RightAdjointSpec{std::move(ct), std::move(x), std::move(y),
                            std::move(lang), std::move(spec)};
  }

  ThetaSub apply_right_adjoint(RightAdjointSpec const& spec,
                               FiniteAlgebra const&    b) {
    auto g    = theta_sub(b, spec.theta);
    g.algebra = g.algebra.relabel(spec.x.signature());
    for (auto const& ax : spec.x.axioms()) {
      if (find_violation(g.algebra, ax)) {
        throw Error("image of the right adjoint violates "
                    + to_string(ax.conclusion, spec.x.signature()) + " of "
                    + spec.x.label());
      }
    }
    return g;
  }

  Homomorphism apply_right_adjoint_hom(RightAdjointSpec const& spec,
                                       Homomorphism const&     f) {
    return theta_sub_hom(f, apply_right_adjoint(spec, f.source()),
                         apply_right_adjoint(spec, f.target()));
  }

  LeftAdjointImage apply_left_adjoint(RightAdjointSpec const& spec,
                                      Presentation const&     p) {
    check_presentation(spec.x.signature(), p);
    LeftAdjointImage out;
    out.presentation.num_generators = spec.ct.tau.kappa() * p.num_generators;
    out.presentation.relations      = lift_equations(spec.ct.tau, p.relations);
    for (auto& e : context_instances(spec.ct, p.num_generators)) {
      if (std::find(out.presentation.relations.begin(),
                    out.presentation.relations.end(), e)
          == out.presentation.relations.end()) {
        out.presentation.relations.push_back(std::move(e));
      }
    }
    out.algebra = present_algebra(spec.y, out.presentation);
    return out;
  }

  namespace {
    // Position of an encoded tuple among the elements of G(B), if present.
    std::optional<Element> locate(ThetaSub const& g, Element e) {
      auto it = std::lower_bound(g.elements.begin(), g.elements.end(), e);
      if (it == g.elements.end() || *it != e) {
        return std::nullopt;
      }
      return static_cast<Element>(it - g.elements.begin());
    }
  }  // namespace

  HomsetBijection verify_homset_bijection(RightAdjointSpec const& spec,
                                          Presentation const&     p,
                                          FiniteAlgebra const&    b) {
    std::size_t const kappa = spec.ct.tau.kappa();
    auto              left  = apply_left_adjoint(spec, p);
    auto              g     = apply_right_adjoint(spec, b);
    auto              px    = present(spec.x, p);
    auto const&       xgens = px.algebra.generators;

    HomsetBijection out;
    out.count_right = count_homs(px.algebra.algebra, g.algebra);

    bool                              well_defined = true;
    std::set<std::vector<Element>>    images;
    std::vector<Element>              coords(kappa), targets(p.num_generators);
    for_each_hom(left.algebra.algebra, b, [&](std::span<Element const> f) {
      ++out.count_left;
      for (std::size_t j = 0; j < p.num_generators && well_defined; ++j) {
        for (std::size_t i = 0; i < kappa; ++i) {
          coords[i] = f[left.algebra.generators[j * kappa + i]];
        }
        auto pos = locate(g, matrix_encode(b.size(), coords));
        if (!pos) {
          well_defined = false;
        } else {
          targets[j] = *pos;
        }
      }
      if (!well_defined) {
        return false;
      }
      auto h = extend_from_generators(px.algebra.algebra, xgens, g.algebra, targets);
      if (!h) {
        well_defined = false;
        return false;
      }
      images.insert(h->map());
      return true;
    });
    out.correspondence = well_defined && images.size() == out.count_left
                         && images.size() == out.count_right;
    return out;
  }

  namespace {
    FunctorData unit_data(RightAdjointSpec const& spec) {
      auto        p1 = present(spec.y, Presentation{spec.ct.tau.kappa(),
                                                    spec.ct.context});
      FunctorData out;
      out.f1  = std::move(p1.algebra);
      out.pi1 = std::move(p1.projection);
      return out;
    }

    FreeAlgebra block_presentation(RightAdjointSpec const& spec,
                                   std::size_t             n) {
      return present_algebra(
          spec.y,
          Presentation{spec.ct.tau.kappa() * n, context_instances(spec.ct, n)});
    }

    void add_op(FunctorData& out, std::string const& name, FreeAlgebra fn,
                std::vector<Element> const& images) {
      auto f = extend_from_generators(out.f1.algebra, out.f1.generators,
                                      fn.algebra, images);
      if (!f) {
        throw Error("translation of '" + name
                    + "' does not respect the context");
      }
      out.fn.push_back(std::move(fn));
      out.fops.push_back(std::move(*f));
    }
  }  // namespace

  FunctorData functor_data(RightAdjointSpec const& spec) {
    auto const& xsig = spec.x.signature();
    auto        out  = unit_data(spec);
    for (std::size_t s = 0; s < xsig.size(); ++s) {
      auto                 fn = block_presentation(spec, xsig.arity(s));
      std::vector<Element> images;
      for (auto const& t : spec.ct.tau.image(s)) {
        images.push_back(fn.element_of(t));
      }
      add_op(out, xsig.op(s).name, std::move(fn), images);
    }
    return out;
  }

  FunctorData functor_data_from_right_adjoint(RightAdjointSpec const& spec) {
    std::size_t const kappa = spec.ct.tau.kappa();
    auto const&       xsig  = spec.x.signature();
    auto              out   = unit_data(spec);
    for (std::size_t s = 0; s < xsig.size(); ++s) {
      std::size_t const    n  = xsig.arity(s);
      auto                 fn = block_presentation(spec, n);
      auto                 g  = apply_right_adjoint(spec, fn.algebra);
      std::vector<Element> blocks(n), coords(kappa);
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < kappa; ++i) {
          coords[i] = fn.generators[j * kappa + i];
        }
        auto pos = locate(g, matrix_encode(fn.algebra.size(), coords));
        if (!pos) {
          throw Error("generator block does not satisfy the context");
        }
        blocks[j] = *pos;
      }
      auto images = matrix_coordinates(fn.algebra.size(), kappa,
                                       g.elements[g.algebra.apply(s, blocks)]);
      add_op(out, xsig.op(s).name, std::move(fn), images);
    }
    return out;
  }

  SigmaReport verify_sigma_iso(RightAdjointSpec const& spec,
                               FunctorData const&      data,
                               FiniteAlgebra const&    b) {
    std::size_t const kappa = spec.ct.tau.kappa();
    auto const&       xsig  = spec.x.signature();
    if (data.f1.generators.size() != kappa || data.fops.size() != xsig.size()
        || data.fn.size() != xsig.size()) {
      throw Error("functor data does not match the translation");
    }
    auto homs = enumerate_homs(data.f1.algebra, b);
    auto g    = apply_right_adjoint(spec, b);

    SigmaReport out;
    out.homs      = homs.size();
    out.solutions = g.algebra.size();

    std::map<std::vector<Element>, std::size_t> index_of;
    std::vector<Element>                         sigma(homs.size());
    std::vector<bool>                            hit(g.algebra.size(), false);
    std::vector<Element>                         coords(kappa);
    bool                                         bijective = true;
    for (std::size_t h = 0; h < homs.size(); ++h) {
      index_of.emplace(homs[h].map(), h);
      for (std::size_t i = 0; i < kappa; ++i) {
        coords[i] = homs[h](data.f1.generators[i]);
      }
      auto pos = locate(g, matrix_encode(b.size(), coords));
      if (!pos || hit[*pos]) {
        bijective = false;
        continue;
      }
      hit[*pos] = true;
      sigma[h]  = *pos;
    }
    out.bijective = bijective && homs.size() == g.algebra.size();
    if (!out.bijective) {
      return out;
    }

    bool hom = true;
    for (std::size_t s = 0; s < xsig.size() && hom; ++s) {
      std::size_t const n  = xsig.arity(s);
      auto const&       fn = data.fn[s];
      auto const&       fp = data.fops[s];
      std::vector<Element> images(kappa * n), args(n), composite;
      for_each_assignment(homs.size(), n, [&](std::span<Element const> pick) {
        for (std::size_t j = 0; j < n; ++j) {
          for (std::size_t i = 0; i < kappa; ++i) {
            images[j * kappa + i] = homs[pick[j]](data.f1.generators[i]);
          }
          args[j] = sigma[pick[j]];
        }
        // <f_1, ..., f_n> : F(Tm_X(n)) -> B, then precompose with F(psi).
        auto tuple = extend_from_generators(fn.algebra, fn.generators, b, images);
        if (!tuple) {
          hom = false;
          return false;
        }
        composite.resize(data.f1.algebra.size());
        for (Element e = 0; e < composite.size(); ++e) {
          composite[e] = (*tuple)(fp(e));
        }
        auto it = index_of.find(composite);
        if (it == index_of.end()
            || sigma[it->second] != g.algebra.apply(s, args)) {
          hom = false;
          return false;
        }
        return true;
      });
    }
    out.homomorphism = hom;
    return out;
  }

  FinitenessReport finiteness_report(RightAdjointSpec const& spec) {
    FinitenessReport out;
    out.witness = Presentation{spec.ct.tau.kappa(), spec.ct.context};
    return out;
  }

}  // namespace forge
