// Shared machinery for closing a set of elements under operations.

#ifndef FORGE_DETAIL_CLOSURE_HPP
#define FORGE_DETAIL_CLOSURE_HPP

#include <cstddef>
#include <vector>

#include "forge/finalg.hpp"

namespace forge::detail {

  // Visits every tuple in [0, end)^arity with at least one component in
  // [start, end).  Each such tuple is visited exactly once.
  template <typename Visit>
  void for_each_new_tuple(std::size_t arity,
                          std::size_t start,
                          std::size_t end,
                          Visit&&     visit) {
    if (arity == 0 || start >= end) {
      return;
    }
    std::vector<Element> t(arity);
    // p is the first position holding a new element: positions before p are
    // old, position p is new, positions after p are arbitrary.
    for (std::size_t p = 0; p < arity; ++p) {
      if (p > 0 && start == 0) {
        break;
      }
      std::vector<std::size_t> lo(arity), hi(arity);
      for (std::size_t k = 0; k < arity; ++k) {
        lo[k] = k < p ? 0 : (k == p ? start : 0);
        hi[k] = k < p ? start : end;
      }
      for (std::size_t k = 0; k < arity; ++k) {
        t[k] = static_cast<Element>(lo[k]);
      }
      bool more = true;
      while (more) {
        visit(std::span<Element const>(t));
        more = false;
        for (std::size_t k = arity; k-- > 0;) {
          if (t[k] + 1 < hi[k]) {
            ++t[k];
            more = true;
            break;
          }
          t[k] = static_cast<Element>(lo[k]);
        }
      }
    }
  }

  // Hard cap on the number of entries in one operation table.
  inline constexpr std::size_t table_limit = 100'000'000;

  // Semi-naive closure.  `count()` returns the number of elements known so
  // far; `apply(op, args)` interns the result of op on the (already known)
  // args, appending it when new.  Constants are applied first, then rounds
  // over tuples that involve at least one element discovered in the previous
  // round.  The discovery order depends only on the structure, never on
  // element labels.
  template <typename Count, typename Apply>
  void close_under(Signature const& sig, Count&& count, Apply&& apply) {
    for (std::size_t op = 0; op < sig.size(); ++op) {
      if (sig.arity(op) == 0) {
        apply(op, std::span<Element const>());
      }
    }
    std::size_t start = 0;
    std::size_t end   = count();
    while (start < end) {
      for (std::size_t op = 0; op < sig.size(); ++op) {
        if (sig.arity(op) == 0) {
          continue;
        }
        for_each_new_tuple(sig.arity(op), start, end,
                           [&](std::span<Element const> args) {
                             apply(op, args);
                           });
      }
      start = end;
      end   = count();
    }
  }

  // base^exp, saturating at limit + 1.
  inline std::size_t checked_power(std::size_t base,
                                   std::size_t exp,
                                   std::size_t limit) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) {
      if (base != 0 && r > limit / base) {
        return limit + 1;
      }
      r *= base;
    }
    return r;
  }

}  // namespace forge::detail

#endif  // FORGE_DETAIL_CLOSURE_HPP
