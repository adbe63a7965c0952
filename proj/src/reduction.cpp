#include "lf/reduction.hpp"

namespace lf {

std::optional<ObjPtr> whr_step(const ObjPtr& m) {
  const auto* app = std::get_if<OApp>(&m->node);
  if (!app) return std::nullopt;
  if (const auto* lam = std::get_if<Lam>(&app->fun->node))
    return open_obj(lam->body, 0, app->arg);
  if (auto fun = whr_step(app->fun)) return o_app(*fun, app->arg);
  return std::nullopt;
}

WhnfResult whnf(ObjPtr m, Fuel& fuel) {
  std::uint64_t steps = 0;
  for (;;) {
    auto next = whr_step(m);
    if (!next) return WhnfResult{std::move(m), steps, false};
    if (!fuel.spend()) return WhnfResult{std::move(m), steps, true};
    m = std::move(*next);
    ++steps;
  }
}

}  // namespace lf
