#ifndef LF_REDUCTION_HPP
#define LF_REDUCTION_HPP

#include <cstdint>
#include <optional>

#include "lf/diag.hpp"
#include "lf/syntax.hpp"

// Weak head reduction: beta steps at the head of the outermost application
// spine only, and its fuel-bounded iteration.

namespace lf {

// The unique weak head reduct when one exists. A redex head contracts by
// opening the body with the argument; otherwise the step recurses into the
// function position of an application. Deterministic by construction.
std::optional<ObjPtr> whr_step(const ObjPtr& m);

struct WhnfResult {
  ObjPtr term;          // first term with no step, or last term reached
  std::uint64_t steps;  // steps actually taken
  bool out_of_fuel;     // true when the budget ran out before a normal form
};

// Iterates whr_step, spending one fuel unit per step.
WhnfResult whnf(ObjPtr m, Fuel& fuel);

}  // namespace lf

#endif
