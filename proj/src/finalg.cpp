#include "forge/finalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>

#include "detail/closure.hpp"

namespace forge {

  std::size_t universe_limit() {
    static std::size_t const limit = [] {
      if (char const* env = std::getenv("FORGE_MAX_UNIVERSE")) {
        try {
          auto v = std::stoull(env);
          if (v > 0) {
            return static_cast<std::size_t>(v);
          }
        } catch (std::exception const&) {
        }
      }
      return static_cast<std::size_t>(1'000'000);
    }();
    return limit;
  }

  std::size_t table_index(std::size_t n, std::span<Element const> args) {
    std::size_t idx = 0;
    for (auto a : args) {
      idx = idx * n + a;
    }
    return idx;
  }

  ////////////////////////////////////////////////////////////////////////
  // FiniteAlgebra
  ////////////////////////////////////////////////////////////////////////

  FiniteAlgebra::FiniteAlgebra() : data_(std::make_shared<Data const>()) {}

  FiniteAlgebra::FiniteAlgebra(Signature                         sig,
                               std::size_t                       size,
                               std::vector<std::vector<Element>> tables) {
    if (size > universe_limit()) {
      throw Error("universe of size " + std::to_string(size)
                  + " exceeds the limit " + std::to_string(universe_limit()));
    }
    if (size == 0 && sig.has_constants()) {
      throw Error("the empty algebra needs a signature without constants");
    }
    if (tables.size() != sig.size()) {
      throw Error("expected " + std::to_string(sig.size())
                  + " operation tables, got " + std::to_string(tables.size()));
    }
    for (std::size_t op = 0; op < sig.size(); ++op) {
      auto expect
          = detail::checked_power(size, sig.arity(op), detail::table_limit);
      if (tables[op].size() != expect) {
        throw Error("table for '" + sig.op(op).name + "' has "
                    + std::to_string(tables[op].size()) + " entries, expected "
                    + std::to_string(expect));
      }
      for (auto v : tables[op]) {
        if (v >= size) {
          throw Error("table for '" + sig.op(op).name + "' has entry "
                      + std::to_string(v) + " outside the universe");
        }
      }
    }
    data_ = std::make_shared<Data const>(
        Data{std::move(sig), size, std::move(tables)});
  }

  Element FiniteAlgebra::apply(std::size_t              op,
                               std::span<Element const> args) const {
    return data_->tables[op][table_index(data_->size, args)];
  }

  FiniteAlgebra FiniteAlgebra::relabel(Signature sig) const {
    if (sig.size() != signature().size()) {
      throw Error("relabel: signature has a different number of symbols");
    }
    for (std::size_t i = 0; i < sig.size(); ++i) {
      if (sig.arity(i) != signature().arity(i)) {
        throw Error("relabel: arity of '" + sig.op(i).name + "' differs");
      }
    }
    FiniteAlgebra out;
    out.data_ = std::make_shared<Data const>(
        Data{std::move(sig), data_->size, data_->tables});
    return out;
  }

  bool operator==(FiniteAlgebra const& a, FiniteAlgebra const& b) {
    if (a.data_ == b.data_) {
      return true;
    }
    return a.data_->size == b.data_->size && a.data_->sig == b.data_->sig
           && a.data_->tables == b.data_->tables;
  }

  ////////////////////////////////////////////////////////////////////////
  // Homomorphism
  ////////////////////////////////////////////////////////////////////////

  std::optional<PreservationFailure> find_preservation_failure(
      FiniteAlgebra const&     a,
      FiniteAlgebra const&     b,
      std::span<Element const> map) {
    auto const& sig = a.signature();
    std::vector<Element> image;
    std::optional<PreservationFailure> failure;
    for (std::size_t op = 0; op < sig.size() && !failure; ++op) {
      std::size_t arity = sig.arity(op);
      image.resize(arity);
      for_each_assignment(
          a.size(), arity, [&](std::span<Element const> args) {
            for (std::size_t k = 0; k < arity; ++k) {
              image[k] = map[args[k]];
            }
            if (map[a.apply(op, args)] != b.apply(op, image)) {
              failure = PreservationFailure{
                  op, std::vector<Element>(args.begin(), args.end())};
              return false;
            }
            return true;
          });
    }
    return failure;
  }

  namespace {
    void check_map_shape(FiniteAlgebra const&     a,
                         FiniteAlgebra const&     b,
                         std::span<Element const> map) {
      if (!(a.signature() == b.signature())) {
        throw Error("signature mismatch between " + a.signature().name()
                    + " and " + b.signature().name());
      }
      if (map.size() != a.size()) {
        throw Error("map has " + std::to_string(map.size())
                    + " entries, source has " + std::to_string(a.size()));
      }
      for (auto v : map) {
        if (v >= b.size()) {
          throw Error("map value " + std::to_string(v)
                      + " outside the target universe");
        }
      }
    }
  }  // namespace

  bool is_homomorphism(FiniteAlgebra const&     a,
                       FiniteAlgebra const&     b,
                       std::span<Element const> map) {
    check_map_shape(a, b, map);
    return !find_preservation_failure(a, b, map);
  }

  Homomorphism::Homomorphism(FiniteAlgebra        source,
                             FiniteAlgebra        target,
                             std::vector<Element> map)
      : source_(std::move(source)),
        target_(std::move(target)),
        map_(std::move(map)) {
    check_map_shape(source_, target_, map_);
    if (auto f = find_preservation_failure(source_, target_, map_)) {
      throw Error("map does not preserve '"
                  + source_.signature().op(f->op).name + "'");
    }
  }

  Homomorphism Homomorphism::trusted(FiniteAlgebra        source,
                                     FiniteAlgebra        target,
                                     std::vector<Element> map) {
    Homomorphism h;
    h.source_ = std::move(source);
    h.target_ = std::move(target);
    h.map_    = std::move(map);
    return h;
  }

  Homomorphism Homomorphism::identity(FiniteAlgebra const& a) {
    std::vector<Element> map(a.size());
    std::iota(map.begin(), map.end(), Element(0));
    return trusted(a, a, std::move(map));
  }

  bool Homomorphism::is_injective() const {
    std::vector<bool> hit(target_.size(), false);
    for (auto v : map_) {
      if (hit[v]) {
        return false;
      }
      hit[v] = true;
    }
    return true;
  }

  bool Homomorphism::is_surjective() const {
    std::vector<bool> hit(target_.size(), false);
    for (auto v : map_) {
      hit[v] = true;
    }
    return std::all_of(hit.begin(), hit.end(), [](bool h) { return h; });
  }

  Homomorphism compose(Homomorphism const& g, Homomorphism const& f) {
    if (!(f.target() == g.source())) {
      throw Error("compose: target of the first map is not the source of the "
                  "second");
    }
    std::vector<Element> map(f.map().size());
    for (std::size_t i = 0; i < map.size(); ++i) {
      map[i] = g.map()[f.map()[i]];
    }
    return Homomorphism::trusted(f.source(), g.target(), std::move(map));
  }

  ////////////////////////////////////////////////////////////////////////
  // Congruence
  ////////////////////////////////////////////////////////////////////////

  Congruence::Congruence(FiniteAlgebra algebra, std::vector<Element> block_of)
      : algebra_(std::move(algebra)) {
    if (block_of.size() != algebra_.size()) {
      throw Error("partition has " + std::to_string(block_of.size())
                  + " entries, algebra has "
                  + std::to_string(algebra_.size()));
    }
    std::map<Element, Element> dense;
    block_of_.reserve(block_of.size());
    for (auto b : block_of) {
      auto [it, fresh] = dense.emplace(b, static_cast<Element>(dense.size()));
      block_of_.push_back(it->second);
    }
    num_blocks_ = dense.size();
  }

  Congruence Congruence::identity(FiniteAlgebra const& a) {
    std::vector<Element> b(a.size());
    std::iota(b.begin(), b.end(), Element(0));
    return Congruence(a, std::move(b));
  }

  Congruence Congruence::total(FiniteAlgebra const& a) {
    return Congruence(a, std::vector<Element>(a.size(), 0));
  }

  std::vector<std::pair<Element, Element>> Congruence::pairs() const {
    std::vector<std::pair<Element, Element>> out;
    for (Element a = 0; a < block_of_.size(); ++a) {
      for (Element b = a + 1; b < block_of_.size(); ++b) {
        if (block_of_[a] == block_of_[b]) {
          out.emplace_back(a, b);
        }
      }
    }
    return out;
  }

  std::optional<PreservationFailure> Congruence::find_incompatibility() const {
    // Compare every table entry with the entry at the block representatives.
    std::vector<Element> rep(num_blocks_, 0);
    for (Element a = static_cast<Element>(block_of_.size()); a-- > 0;) {
      rep[block_of_[a]] = a;
    }
    auto const&                        sig = algebra_.signature();
    std::vector<Element>               reps;
    std::optional<PreservationFailure> failure;
    for (std::size_t op = 0; op < sig.size() && !failure; ++op) {
      std::size_t arity = sig.arity(op);
      reps.resize(arity);
      for_each_assignment(
          algebra_.size(), arity, [&](std::span<Element const> args) {
            for (std::size_t k = 0; k < arity; ++k) {
              reps[k] = rep[block_of_[args[k]]];
            }
            if (block_of_[algebra_.apply(op, args)]
                != block_of_[algebra_.apply(op, reps)]) {
              failure = PreservationFailure{
                  op, std::vector<Element>(args.begin(), args.end())};
              return false;
            }
            return true;
          });
    }
    return failure;
  }

  bool Congruence::refines(Congruence const& other) const {
    std::vector<std::optional<Element>> to(num_blocks_);
    for (std::size_t a = 0; a < block_of_.size(); ++a) {
      auto& slot = to[block_of_[a]];
      if (!slot) {
        slot = other.block_of_.at(a);
      } else if (*slot != other.block_of_.at(a)) {
        return false;
      }
    }
    return true;
  }

  ////////////////////////////////////////////////////////////////////////
  // Evaluation and satisfaction
  ////////////////////////////////////////////////////////////////////////

  namespace {
    Element eval(FiniteAlgebra const&     a,
                 Term const&              t,
                 std::span<Element const> assignment) {
      if (t.is_var()) {
        if (t.index() >= assignment.size()) {
          throw Error("unassigned variable x" + std::to_string(t.index()));
        }
        return assignment[t.index()];
      }
      std::size_t arity = t.args().size();
      if (arity <= 4) {
        Element args[4];
        for (std::size_t k = 0; k < arity; ++k) {
          args[k] = eval(a, t.args()[k], assignment);
        }
        return a.apply(t.index(), std::span<Element const>(args, arity));
      }
      std::vector<Element> args(arity);
      for (std::size_t k = 0; k < arity; ++k) {
        args[k] = eval(a, t.args()[k], assignment);
      }
      return a.apply(t.index(), args);
    }
  }  // namespace

  Element evaluate(FiniteAlgebra const&     a,
                   Term const&              t,
                   std::span<Element const> assignment) {
    check_term(a.signature(), t);
    for (auto v : assignment) {
      if (v >= a.size()) {
        throw Error("assignment value " + std::to_string(v)
                    + " outside the universe");
      }
    }
    return eval(a, t, assignment);
  }

  Element evaluate_unchecked(FiniteAlgebra const&     a,
                             Term const&              t,
                             std::span<Element const> assignment) {
    return eval(a, t, assignment);
  }

  bool for_each_assignment(
      std::size_t                                           n,
      std::size_t                                           vars,
      std::function<bool(std::span<Element const>)> const& visit) {
    std::vector<Element> t(vars, 0);
    if (vars > 0 && n == 0) {
      return true;
    }
    while (true) {
      if (!visit(t)) {
        return false;
      }
      std::size_t k = vars;
      while (k > 0) {
        --k;
        if (t[k] + 1 < n) {
          ++t[k];
          break;
        }
        t[k] = 0;
        if (k == 0) {
          return true;
        }
      }
      if (vars == 0) {
        return true;
      }
    }
  }

  bool satisfies(FiniteAlgebra const& a, Equation const& e) {
    return satisfies_quasi_equation(a, QuasiEquation{{}, e});
  }

  std::optional<std::vector<Element>> find_violation(FiniteAlgebra const& a,
                                                     QuasiEquation const& q) {
    auto const& sig = a.signature();
    std::size_t vars = variable_bound(q.conclusion);
    check_equation(sig, q.conclusion);
    for (auto const& p : q.premises) {
      check_equation(sig, p);
      vars = std::max(vars, variable_bound(p));
    }
    std::optional<std::vector<Element>> witness;
    for_each_assignment(a.size(), vars, [&](std::span<Element const> g) {
      for (auto const& p : q.premises) {
        if (eval(a, p.lhs, g) != eval(a, p.rhs, g)) {
          return true;
        }
      }
      if (eval(a, q.conclusion.lhs, g) != eval(a, q.conclusion.rhs, g)) {
        witness = std::vector<Element>(g.begin(), g.end());
        return false;
      }
      return true;
    });
    return witness;
  }

  bool satisfies_quasi_equation(FiniteAlgebra const& a,
                                QuasiEquation const& q) {
    return !find_violation(a, q);
  }

  ////////////////////////////////////////////////////////////////////////
  // Homomorphism search
  ////////////////////////////////////////////////////////////////////////

  namespace {
    constexpr Element unset = static_cast<Element>(-1);

    // A generating sequence of `a` in index order together with, for every
    // element, how it is first obtained.  Positions are indices into
    // `order`.
    struct SearchPlan {
      struct Step {
        std::size_t          op;     // derivation op (unused for choices)
        std::vector<Element> args;   // argument positions
        bool                 choice = false;
      };
      std::vector<Element>     order;     // position -> element
      std::vector<Element>     pos_of;    // element -> position
      std::vector<Step>        steps;     // position -> how it is obtained
      std::vector<std::size_t> stage_begin;  // first position of each stage

      explicit SearchPlan(FiniteAlgebra const& a) : pos_of(a.size(), unset) {
        auto const& sig = a.signature();
        std::vector<Element> elems;
        auto add = [&](Element e, Step step) {
          if (pos_of[e] == unset) {
            pos_of[e] = static_cast<Element>(order.size());
            order.push_back(e);
            steps.push_back(std::move(step));
          }
        };
        auto close_from = [&](std::size_t start) {
          std::size_t end = order.size();
          while (start < end) {
            for (std::size_t op = 0; op < sig.size(); ++op) {
              std::size_t arity = sig.arity(op);
              if (arity == 0) {
                continue;
              }
              elems.resize(arity);
              detail::for_each_new_tuple(
                  arity, start, end, [&](std::span<Element const> pos) {
                    for (std::size_t k = 0; k < arity; ++k) {
                      elems[k] = order[pos[k]];
                    }
                    add(a.apply(op, elems),
                        Step{op, std::vector<Element>(pos.begin(), pos.end())});
                  });
            }
            start = end;
            end   = order.size();
          }
        };
        stage_begin.push_back(0);
        for (std::size_t op = 0; op < sig.size(); ++op) {
          if (sig.arity(op) == 0) {
            add(a.apply(op, std::span<Element const>()), Step{op, {}});
          }
        }
        close_from(0);
        for (Element e = 0; e < a.size(); ++e) {
          if (pos_of[e] == unset) {
            stage_begin.push_back(order.size());
            add(e, Step{0, {}, true});
            close_from(stage_begin.back());
          }
        }
        stage_begin.push_back(order.size());
      }
    };

    class HomSearch {
     public:
      HomSearch(FiniteAlgebra const&                                  a,
                FiniteAlgebra const&                                  b,
                std::function<bool(std::span<Element const>)> const& visit)
          : a_(a), b_(b), plan_(a), visit_(visit), img_(a.size(), 0),
            map_(a.size(), 0) {}

      void run() {
        std::size_t stages = plan_.stage_begin.size() - 1;
        if (stages == 0) {
          visit_(map_);
          return;
        }
        // Stage 0 has no choice: it is the subuniverse of the constants.
        if (plan_.stage_begin[1] > 0 || plan_.steps.empty()
            || !plan_.steps[0].choice) {
          derive(0);
          if (!consistent(0)) {
            return;
          }
          search(1);
        } else {
          search(0);
        }
      }

     private:
      bool search(std::size_t stage) {
        if (stage + 1 == plan_.stage_begin.size()) {
          for (std::size_t p = 0; p < plan_.order.size(); ++p) {
            map_[plan_.order[p]] = img_[p];
          }
          return visit_(map_);
        }
        std::size_t first = plan_.stage_begin[stage];
        for (Element v = 0; v < b_.size(); ++v) {
          img_[first] = v;
          derive(stage);
          if (consistent(stage) && !search(stage + 1)) {
            return false;
          }
        }
        return true;
      }

      void derive(std::size_t stage) {
        std::size_t first = plan_.stage_begin[stage];
        std::size_t last  = plan_.stage_begin[stage + 1];
        for (std::size_t p = first; p < last; ++p) {
          auto const& step = plan_.steps[p];
          if (step.choice) {
            continue;
          }
          args_.resize(step.args.size());
          for (std::size_t k = 0; k < step.args.size(); ++k) {
            args_[k] = img_[step.args[k]];
          }
          img_[p] = b_.apply(step.op, args_);
        }
      }

      // Checks every table entry whose arguments became available in this
      // stage.
      bool consistent(std::size_t stage) {
        auto const& sig   = a_.signature();
        std::size_t first = plan_.stage_begin[stage];
        std::size_t last  = plan_.stage_begin[stage + 1];
        if (stage == 0) {
          for (std::size_t op = 0; op < sig.size(); ++op) {
            if (sig.arity(op) == 0
                && img_[plan_.pos_of[a_.apply(op, std::span<Element const>())]]
                       != b_.apply(op, std::span<Element const>())) {
              return false;
            }
          }
        }
        bool ok = true;
        for (std::size_t op = 0; op < sig.size() && ok; ++op) {
          std::size_t arity = sig.arity(op);
          if (arity == 0) {
            continue;
          }
          elems_.resize(arity);
          args_.resize(arity);
          detail::for_each_new_tuple(
              arity, first, last, [&](std::span<Element const> pos) {
                if (!ok) {
                  return;
                }
                for (std::size_t k = 0; k < arity; ++k) {
                  elems_[k] = plan_.order[pos[k]];
                  args_[k]  = img_[pos[k]];
                }
                if (img_[plan_.pos_of[a_.apply(op, elems_)]]
                    != b_.apply(op, args_)) {
                  ok = false;
                }
              });
        }
        return ok;
      }

      FiniteAlgebra const&                                  a_;
      FiniteAlgebra const&                                  b_;
      SearchPlan                                            plan_;
      std::function<bool(std::span<Element const>)> const& visit_;
      std::vector<Element>                                  img_;
      std::vector<Element>                                  map_;
      std::vector<Element>                                  args_;
      std::vector<Element>                                  elems_;
    };
  }  // namespace

  void for_each_hom(
      FiniteAlgebra const&                                  a,
      FiniteAlgebra const&                                  b,
      std::function<bool(std::span<Element const>)> const& visit) {
    if (!(a.signature() == b.signature())) {
      throw Error("signature mismatch between " + a.signature().name()
                  + " and " + b.signature().name());
    }
    HomSearch(a, b, visit).run();
  }

  std::vector<Homomorphism> enumerate_homs(FiniteAlgebra const& a,
                                           FiniteAlgebra const& b) {
    std::vector<std::vector<Element>> maps;
    for_each_hom(a, b, [&](std::span<Element const> m) {
      maps.emplace_back(m.begin(), m.end());
      return true;
    });
    std::sort(maps.begin(), maps.end());
    std::vector<Homomorphism> out;
    out.reserve(maps.size());
    for (auto& m : maps) {
      out.push_back(Homomorphism::trusted(a, b, std::move(m)));
    }
    return out;
  }

  std::size_t count_homs(FiniteAlgebra const& a, FiniteAlgebra const& b) {
    std::size_t n = 0;
    for_each_hom(a, b, [&](std::span<Element const>) {
      ++n;
      return true;
    });
    return n;
  }

  std::optional<Homomorphism> extend_from_generators(
      FiniteAlgebra const&     a,
      std::span<Element const> generators,
      FiniteAlgebra const&     b,
      std::span<Element const> images) {
    if (!(a.signature() == b.signature())) {
      throw Error("signature mismatch between " + a.signature().name()
                  + " and " + b.signature().name());
    }
    if (generators.size() != images.size()) {
      throw Error("extend_from_generators: generators and images differ in "
                  "length");
    }
    std::vector<Element> map(a.size(), unset);
    std::vector<Element> order;
    bool                 ok = true;
    auto assign = [&](Element x, Element v) {
      if (map[x] == unset) {
        map[x] = v;
        order.push_back(x);
      } else if (map[x] != v) {
        ok = false;
      }
    };
    for (std::size_t k = 0; k < generators.size(); ++k) {
      if (generators[k] >= a.size() || images[k] >= b.size()) {
        throw Error("extend_from_generators: element outside the universe");
      }
      assign(generators[k], images[k]);
    }
    std::vector<Element> elems, imgs;
    detail::close_under(
        a.signature(),
        [&] { return order.size(); },
        [&](std::size_t op, std::span<Element const> pos) {
          if (!ok) {
            return;
          }
          elems.resize(pos.size());
          imgs.resize(pos.size());
          for (std::size_t k = 0; k < pos.size(); ++k) {
            elems[k] = order[pos[k]];
            imgs[k]  = map[elems[k]];
          }
          assign(a.apply(op, elems), b.apply(op, imgs));
        });
    if (!ok) {
      return std::nullopt;
    }
    if (order.size() != a.size()) {
      throw Error("extend_from_generators: the given elements do not generate "
                  "the source algebra");
    }
    return Homomorphism::trusted(a, b, std::move(map));
  }

  std::optional<Homomorphism> find_isomorphism(FiniteAlgebra const& a,
                                               FiniteAlgebra const& b) {
    if (!(a.signature() == b.signature()) || a.size() != b.size()) {
      return std::nullopt;
    }
    // Cheap invariant: number of idempotents of each unary/binary op.
    auto const& sig = a.signature();
    for (std::size_t op = 0; op < sig.size(); ++op) {
      std::size_t arity = sig.arity(op);
      if (arity == 0) {
        continue;
      }
      auto fixed = [&](FiniteAlgebra const& x) {
        std::size_t          n = 0;
        std::vector<Element> args(arity);
        for (Element e = 0; e < x.size(); ++e) {
          std::fill(args.begin(), args.end(), e);
          n += x.apply(op, args) == e;
        }
        return n;
      };
      if (fixed(a) != fixed(b)) {
        return std::nullopt;
      }
    }
    std::optional<Homomorphism> iso;
    for_each_hom(a, b, [&](std::span<Element const> m) {
      std::vector<bool> hit(b.size(), false);
      for (auto v : m) {
        if (hit[v]) {
          return true;
        }
        hit[v] = true;
      }
      iso = Homomorphism::trusted(a, b, std::vector<Element>(m.begin(), m.end()));
      return false;
    });
    return iso;
  }

  bool are_isomorphic(FiniteAlgebra const& a, FiniteAlgebra const& b) {
    return find_isomorphism(a, b).has_value();
  }

  ////////////////////////////////////////////////////////////////////////
  // Constructions
  ////////////////////////////////////////////////////////////////////////

  std::vector<Element> Product::coordinates(Element e) const {
    std::vector<Element> c(sizes.size());
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      c[i] = static_cast<Element>(e % sizes[i]);
      e    = static_cast<Element>(e / sizes[i]);
    }
    return c;
  }

  Element Product::encode(std::span<Element const> coords) const {
    std::size_t e = 0;
    for (std::size_t i = sizes.size(); i-- > 0;) {
      e = e * sizes[i] + coords[i];
    }
    return static_cast<Element>(e);
  }

  Product product(Signature const& sig, std::span<FiniteAlgebra const> factors) {
    Product     p;
    std::size_t n = 1;
    for (auto const& f : factors) {
      if (!(f.signature() == sig)) {
        throw Error("product: signature mismatch with " + f.signature().name());
      }
      p.sizes.push_back(f.size());
      if (f.size() != 0 && n > universe_limit() / f.size()) {
        throw Error("product universe exceeds the limit "
                    + std::to_string(universe_limit()));
      }
      n *= f.size();
    }
    std::vector<std::vector<Element>> tables(sig.size());
    std::vector<Element>              comp;
    std::vector<std::vector<Element>> coords(n);
    for (Element e = 0; e < n; ++e) {
      coords[e] = p.coordinates(e);
    }
    for (std::size_t op = 0; op < sig.size(); ++op) {
      std::size_t arity = sig.arity(op);
      auto        total = detail::checked_power(n, arity, detail::table_limit);
      if (total > detail::table_limit) {
        throw Error("product operation table too large");
      }
      tables[op].reserve(total);
      comp.resize(factors.size());
      std::vector<Element> fargs(arity);
      for_each_assignment(n, arity, [&](std::span<Element const> args) {
        for (std::size_t i = 0; i < factors.size(); ++i) {
          for (std::size_t k = 0; k < arity; ++k) {
            fargs[k] = coords[args[k]][i];
          }
          comp[i] = factors[i].apply(op, fargs);
        }
        tables[op].push_back(p.encode(comp));
        return true;
      });
    }
    p.algebra = FiniteAlgebra(sig, n, std::move(tables));
    for (std::size_t i = 0; i < factors.size(); ++i) {
      std::vector<Element> map(n);
      for (Element e = 0; e < n; ++e) {
        map[e] = coords[e][i];
      }
      p.projections.push_back(
          Homomorphism::trusted(p.algebra, factors[i], std::move(map)));
    }
    return p;
  }

  Subalgebra subalgebra_generated(FiniteAlgebra const&     a,
                                  std::span<Element const> seed) {
    std::vector<Element> order;
    std::vector<Element> pos_of(a.size(), unset);
    auto add = [&](Element e) {
      if (pos_of[e] == unset) {
        pos_of[e] = static_cast<Element>(order.size());
        order.push_back(e);
      }
    };
    for (auto e : seed) {
      if (e >= a.size()) {
        throw Error("seed element outside the universe");
      }
      add(e);
    }
    std::vector<Element> elems;
    detail::close_under(
        a.signature(),
        [&] { return order.size(); },
        [&](std::size_t op, std::span<Element const> pos) {
          elems.resize(pos.size());
          for (std::size_t k = 0; k < pos.size(); ++k) {
            elems[k] = order[pos[k]];
          }
          add(a.apply(op, elems));
        });
    auto const&                       sig = a.signature();
    std::size_t                       n   = order.size();
    std::vector<std::vector<Element>> tables(sig.size());
    for (std::size_t op = 0; op < sig.size(); ++op) {
      std::size_t arity = sig.arity(op);
      elems.resize(arity);
      for_each_assignment(n, arity, [&](std::span<Element const> args) {
        for (std::size_t k = 0; k < arity; ++k) {
          elems[k] = order[args[k]];
        }
        tables[op].push_back(pos_of[a.apply(op, elems)]);
        return true;
      });
    }
    FiniteAlgebra sub(sig, n, std::move(tables));
    return {sub, Homomorphism::trusted(sub, a, std::move(order))};
  }

  Quotient quotient(FiniteAlgebra const& a, Congruence const& theta) {
    if (!(theta.algebra() == a)) {
      throw Error("quotient: congruence belongs to another algebra");
    }
    if (auto f = theta.find_incompatibility()) {
      std::string args;
      for (auto x : f->args) {
        args += (args.empty() ? "" : ", ") + std::to_string(x);
      }
      throw Error("partition is not compatible with '"
                  + a.signature().op(f->op).name + "' at (" + args + ")");
    }
    auto const&          sig = a.signature();
    std::size_t          k   = theta.num_blocks();
    std::vector<Element> rep(k, 0);
    for (Element e = static_cast<Element>(a.size()); e-- > 0;) {
      rep[theta.block_of()[e]] = e;
    }
    std::vector<std::vector<Element>> tables(sig.size());
    std::vector<Element>              elems;
    for (std::size_t op = 0; op < sig.size(); ++op) {
      std::size_t arity = sig.arity(op);
      elems.resize(arity);
      for_each_assignment(k, arity, [&](std::span<Element const> args) {
        for (std::size_t i = 0; i < arity; ++i) {
          elems[i] = rep[args[i]];
        }
        tables[op].push_back(theta.block_of()[a.apply(op, elems)]);
        return true;
      });
    }
    FiniteAlgebra q(sig, k, std::move(tables));
    return {q, Homomorphism::trusted(a, q, theta.block_of())};
  }

  Congruence kernel(Homomorphism const& f) {
    return Congruence(f.source(), f.map());
  }

  Subalgebra image(Homomorphism const& f) {
    std::vector<Element> seed(f.map());
    std::sort(seed.begin(), seed.end());
    seed.erase(std::unique(seed.begin(), seed.end()), seed.end());
    return subalgebra_generated(f.target(), seed);
  }

}  // namespace forge
