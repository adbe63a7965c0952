#ifndef LF_TEST_HELPERS_HPP
#define LF_TEST_HELPERS_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "lf/syntax.hpp"

namespace lftest {

using namespace lf;

inline Name nm(const char* base, std::uint64_t index = 0) {
  return Name{base, index};
}

// Deterministic generator for locally nameless terms. depth bounds the tree
// height; level bounds the loose indices that may appear, so level 0 yields
// locally closed terms.
struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  std::size_t pick(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  }

  Name name() {
    static const char* bases[] = {"x", "y", "z"};
    return Name{bases[pick(3)], pick(3)};
  }

  Ident obj_ident() {
    static const char* ids[] = {"c", "d", "f"};
    return ids[pick(3)];
  }

  Ident fam_ident() {
    static const char* ids[] = {"a", "b"};
    return ids[pick(2)];
  }

  FamPtr fam(std::size_t depth, std::size_t level) {
    enum { ConstA, PiA, AppA };
    std::vector<int> choices = {ConstA};
    if (depth > 0) {
      choices.push_back(PiA);
      choices.push_back(AppA);
    }
    switch (choices[pick(choices.size())]) {
      case PiA:
        return pi_f(fam(depth - 1, level), fam(depth - 1, level + 1));
      case AppA:
        return f_app(fam(depth - 1, level), obj(depth - 1, level));
      default:
        return a_const(fam_ident());
    }
  }

  ObjPtr obj(std::size_t depth, std::size_t level) {
    enum { ConstO, FreeO, BoundO, LamO, AppO };
    std::vector<int> choices = {ConstO, FreeO};
    if (level > 0) choices.push_back(BoundO);
    if (depth > 0) {
      choices.push_back(LamO);
      choices.push_back(AppO);
      choices.push_back(AppO);
    }
    switch (choices[pick(choices.size())]) {
      case FreeO:
        return o_free(name());
      case BoundO:
        return o_bound(pick(level));
      case LamO:
        return o_lam(fam(depth - 1, level), obj(depth - 1, level + 1));
      case AppO:
        return o_app(obj(depth - 1, level), obj(depth - 1, level));
      default:
        return o_const(obj_ident());
    }
  }
};

}  // namespace lftest

#endif
