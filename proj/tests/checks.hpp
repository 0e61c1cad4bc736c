// Property checks shared by the unit tests and the acceptance suite.

#ifndef FORGE_TESTS_CHECKS_HPP
#define FORGE_TESTS_CHECKS_HPP

#include <algorithm>
#include <vector>

#include "forge/finalg.hpp"
#include "forge/matpow.hpp"
#include "forge/thetasub.hpp"

namespace checks {

  using namespace forge;

  // ((a0, b0), ..., (ak, bk)) |-> ((a0, ..., ak), (b0, ..., bk)) restricted
  // to the solutions, checked to be an isomorphism onto the product.
  inline bool product_preserved(FiniteAlgebra const& a, FiniteAlgebra const& b,
                                ThetaSpec const& spec) {
    auto const&                sig = a.signature();
    std::size_t const          k   = spec.lang.kappa();
    std::vector<FiniteAlgebra> ab{a, b};
    auto                       prod = product(sig, ab);
    auto                       lhs  = theta_sub(prod.algebra, spec);
    auto                       ta   = theta_sub(a, spec);
    auto                       tb   = theta_sub(b, spec);
    std::vector<FiniteAlgebra> parts{ta.algebra, tb.algebra};
    auto                       rhs = product(spec.lang.signature(), parts);
    if (lhs.algebra.size() != rhs.algebra.size()) {
      return false;
    }
    std::vector<Element> map;
    for (auto e : lhs.elements) {
      std::vector<Element> pa, pb;
      for (auto c : matrix_coordinates(prod.algebra.size(), k, e)) {
        auto cc = prod.coordinates(c);
        pa.push_back(cc[0]);
        pb.push_back(cc[1]);
      }
      auto ia = std::lower_bound(ta.elements.begin(), ta.elements.end(),
                                 matrix_encode(a.size(), pa));
      auto ib = std::lower_bound(tb.elements.begin(), tb.elements.end(),
                                 matrix_encode(b.size(), pb));
      std::vector<Element> idx{static_cast<Element>(ia - ta.elements.begin()),
                               static_cast<Element>(ib - tb.elements.begin())};
      map.push_back(rhs.encode(idx));
    }
    Homomorphism h(lhs.algebra, rhs.algebra, map);
    return h.is_injective() && h.is_surjective();
  }

}  // namespace checks

#endif  // FORGE_TESTS_CHECKS_HPP
