#include "forge/xlate.hpp"

#include <algorithm>
#include <set>

namespace forge {

  Translation::Translation(std::size_t                    kappa,
                           Signature                      source,
                           Signature                      target,
                           std::vector<std::vector<Term>> images)
      : kappa_(kappa),
        source_(std::move(source)),
        target_(std::move(target)),
        images_(std::move(images)) {
    if (kappa_ == 0) {
      throw Error("translation exponent must be positive");
    }
    if (images_.size() != source_.size()) {
      throw Error("translation maps " + std::to_string(images_.size())
                  + " symbols, source signature has "
                  + std::to_string(source_.size()));
    }
    for (std::size_t s = 0; s < source_.size(); ++s) {
      auto const& name = source_.op(s).name;
      if (images_[s].size() != kappa_) {
        throw Error("image of '" + name + "' has "
                    + std::to_string(images_[s].size())
                    + " components, expected " + std::to_string(kappa_));
      }
      for (auto const& t : images_[s]) {
        check_term(target_, t);
        if (variable_bound(t) > source_.arity(s) * kappa_) {
          throw Error("image of '" + name + "' uses variable x"
                      + std::to_string(variable_bound(t) - 1)
                      + " beyond its arity");
        }
      }
    }
  }

  void check_contextual(ContextualTranslation const& ct) {
    for (auto const& e : ct.context) {
      check_equation(ct.tau.target(), e);
      if (variable_bound(e) > ct.tau.kappa()) {
        throw Error("context equation " + to_string(e, ct.tau.target())
                    + " uses a variable beyond x"
                    + std::to_string(ct.tau.kappa() - 1));
      }
    }
  }

  std::vector<Term> lift_term(Translation const& tau, Term const& t) {
    std::size_t const kappa = tau.kappa();
    if (t.is_var()) {
      return variables(kappa, t.index() * kappa);
    }
    if (t.index() >= tau.source().size()
        || t.args().size() != tau.source().arity(t.index())) {
      throw Error("term is not over the translation's source signature");
    }
    std::vector<Term> flat;
    flat.reserve(t.args().size() * kappa);
    for (auto const& a : t.args()) {
      auto lifted = lift_term(tau, a);
      flat.insert(flat.end(), lifted.begin(), lifted.end());
    }
    std::vector<Term> out;
    out.reserve(kappa);
    for (auto const& c : tau.image(t.index())) {
      out.push_back(substitute(c, std::span<Term const>(flat)));
    }
    return out;
  }

  std::vector<Equation> lift_equations(Translation const&           tau,
                                       std::vector<Equation> const& phi) {
    std::vector<Equation> out;
    std::set<Equation>    seen;
    for (auto const& e : phi) {
      auto l = lift_term(tau, e.lhs);
      auto r = lift_term(tau, e.rhs);
      for (std::size_t i = 0; i < tau.kappa(); ++i) {
        Equation q{l[i], r[i]};
        if (seen.insert(q).second) {
          out.push_back(std::move(q));
        }
      }
    }
    return out;
  }

  namespace {
    std::vector<Equation> block_instances(std::vector<Equation> const& context,
                                          std::size_t                  kappa,
                                          std::size_t num_blocks) {
      std::vector<Equation> out;
      for (std::size_t j = 0; j < num_blocks; ++j) {
        for (auto const& e : context) {
          out.push_back(shift_variables(e, j * kappa));
        }
      }
      return out;
    }
  }  // namespace

  std::vector<Equation> context_instances(ContextualTranslation const& ct,
                                          std::size_t num_blocks) {
    return block_instances(ct.context, ct.tau.kappa(), num_blocks);
  }

  Condition1 check_condition1(ContextualTranslation const& ct,
                              ClassBattery const&          x,
                              ClassBattery const&          y,
                              Deduction const&             d) {
    Condition1 out;
    out.holds_in_source = entails(x, d.premises, d.conclusion, d.num_vars);
    auto premises       = lift_equations(ct.tau, d.premises);
    auto context        = context_instances(ct, d.num_vars);
    premises.insert(premises.end(), context.begin(), context.end());
    out.transferred = true;
    for (auto const& e : lift_equations(ct.tau, {d.conclusion})) {
      if (!entails(y, premises, e, d.num_vars * ct.tau.kappa())) {
        out.transferred = false;
        break;
      }
    }
    return out;
  }

  std::vector<Deduction> sample_deductions(ClassBattery const& x) {
    std::vector<Deduction> out;
    for (auto const& ax : x.axioms()) {
      std::size_t n = variable_bound(ax.conclusion);
      for (auto const& p : ax.premises) {
        n = std::max(n, variable_bound(p));
      }
      out.push_back({n, ax.premises, ax.conclusion});
    }
    auto v = [](std::size_t j) { return Term::var(j); };
    // Equality is an equivalence relation.
    out.push_back({2, {{v(0), v(1)}}, {v(1), v(0)}});
    out.push_back({3, {{v(0), v(1)}, {v(1), v(2)}}, {v(0), v(2)}});
    // Replacement, one instance per symbol.
    auto const& sig = x.signature();
    for (std::size_t s = 0; s < sig.size(); ++s) {
      std::size_t n = sig.arity(s);
      if (n == 0) {
        continue;
      }
      std::vector<Equation> premises;
      for (std::size_t j = 0; j < n; ++j) {
        premises.push_back({v(j), v(n + j)});
      }
      out.push_back({2 * n, std::move(premises),
                     {Term::app(s, variables(n)), Term::app(s, variables(n, n))}});
    }
    return out;
  }

  std::optional<Condition2Failure> find_condition2_failure(
      ContextualTranslation const& ct,
      ClassBattery const&          y) {
    check_contextual(ct);
    auto const& tau = ct.tau;
    for (std::size_t s = 0; s < tau.source().size(); ++s) {
      std::size_t n        = tau.source().arity(s);
      auto        premises = context_instances(ct, n);
      for (auto const& e : ct.context) {
        Equation q = substitute(e, std::span<Term const>(tau.image(s)));
        if (auto c = find_counterexample(y, premises, q, n * tau.kappa())) {
          return Condition2Failure{s, std::move(q), std::move(*c)};
        }
      }
    }
    return std::nullopt;
  }

  bool check_condition2(ContextualTranslation const& ct, ClassBattery const& y) {
    return !find_condition2_failure(ct, y);
  }

  Nontriviality check_nontrivial(ContextualTranslation const& ct,
                                 ClassBattery const&          y) {
    check_contextual(ct);
    std::size_t const kappa = ct.tau.kappa();
    // Ground terms up to depth 2, one per value in the battery.
    std::vector<Term> ground;
    for (auto const& t : free_algebra(y, 0).terms) {
      if (t.depth() <= 2) {
        ground.push_back(t);
      }
    }
    Nontriviality out;
    for_each_assignment(ground.size(), kappa, [&](std::span<Element const> pick) {
      std::vector<Term> tuple;
      for (auto p : pick) {
        tuple.push_back(ground[p]);
      }
      for (auto const& e : ct.context) {
        if (!entails(y, {}, substitute(e, std::span<Term const>(tuple)), 0)) {
          return true;
        }
      }
      out.ground = std::move(tuple);
      return false;
    });
    if (!out.ground) {
      out.vacuous    = true;
      out.nontrivial = true;
      return out;
    }
    auto premises = context_instances(ct, 2);
    for (std::size_t i = 0; i < kappa; ++i) {
      if (!entails(y, premises, {Term::var(i), Term::var(kappa + i)},
                   2 * kappa)) {
        out.index      = i;
        out.nontrivial = true;
        break;
      }
    }
    return out;
  }

  ContextualTranslation derive_translation(
      ClassBattery const&              x,
      ClassBattery const&              y,
      std::size_t                      kappa,
      Homomorphism const&              pi1,
      std::vector<Homomorphism> const& fops) {
    auto const& xsig = x.signature();
    auto const& ysig = y.signature();
    if (fops.size() != xsig.size()) {
      throw Error("expected one functor image per symbol of "
                  + xsig.name());
    }
    auto free = free_algebra(y, kappa);
    if (!(pi1.source() == free.algebra)) {
      throw Error("pi1 must start at the free algebra on "
                  + std::to_string(kappa) + " generators");
    }
    if (!pi1.is_surjective()) {
      throw Error("pi1 is not surjective");
    }

    // Theta: a greedy generating set of the kernel of pi1.
    auto ker = kernel(pi1);
    if (!(cgK(y, free.algebra, ker.pairs()) == ker)) {
      throw Error("the kernel of pi1 is not a congruence relative to "
                  + y.label());
    }
    ContextualTranslation                    ct;
    std::vector<std::pair<Element, Element>> chosen;
    auto current = Congruence::identity(free.algebra);
    for (auto const& [a, b] : ker.pairs()) {
      if (current == ker) {
        break;
      }
      if (!current.related(a, b)) {
        chosen.emplace_back(a, b);
        current = cgK(y, free.algebra, chosen);
        ct.context.push_back({free.terms[b], free.terms[a]});
      }
    }

    std::vector<Element> units;  // pi1(x^i)
    for (auto g : free.generators) {
      units.push_back(pi1(g));
    }
    std::vector<std::vector<Term>> images;
    for (std::size_t s = 0; s < xsig.size(); ++s) {
      std::size_t n  = xsig.arity(s);
      auto        fn = present_algebra(
          y, Presentation{kappa * n, block_instances(ct.context, kappa, n)});
      auto const& f = fops[s];
      if (!(f.source() == pi1.target()) || !(f.target() == fn.algebra)) {
        throw Error("functor data inconsistent: the image of '"
                    + xsig.op(s).name
                    + "' does not run between the expected presentations");
      }
      // The least term of an element of the presented algebra is the least
      // term among all its preimages in the free algebra.
      std::vector<Term> comps;
      for (auto u : units) {
        comps.push_back(fn.terms[f(u)]);
      }
      images.push_back(std::move(comps));
    }
    ct.tau = Translation(kappa, xsig, ysig, std::move(images));
    if (auto failure = find_condition2_failure(ct, y)) {
      throw Error("functor data inconsistent: derived translation violates "
                  "context preservation at '"
                  + xsig.op(failure->symbol).name + "'");
    }
    return ct;
  }

}  // namespace forge
