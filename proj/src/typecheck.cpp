#include "lf/typecheck.hpp"

#include <string>
#include <vector>

#include "lf/detail.hpp"

namespace lf {

using detail::overload;

namespace {

struct Tc {
  const Signature& sig;
  const SimpleSignature& ssig;
  Fuel& fuel;
  std::vector<std::string> path;

  struct Frame {
    Tc& tc;
    Frame(Tc& checker, std::string label) : tc(checker) {
      tc.path.push_back(std::move(label));
    }
    ~Frame() { tc.path.pop_back(); }
  };

  Diagnostic err(const char* code_id, std::string msg, std::string subterm) const {
    return Diagnostic{code_id, std::move(msg), path, std::move(subterm),
                      std::nullopt};
  }

  Name fresh(const Context& g, const std::set<Name>& more,
             const std::set<Name>& annot) const {
    std::set<Name> in_ctx = fv_ctx(g);
    return maxi(name_list({&in_ctx, &more, &annot}));
  }

  std::optional<Diagnostic> require_fam_equal(const SimpleContext& d,
                                              const FamPtr& got,
                                              const FamPtr& want,
                                              const char* code_id,
                                              const char* what) {
    auto r = fam_equiv(ssig, d, got, want, s_type(), fuel);
    if (is_equal(r)) return std::nullopt;
    if (is_out_of_fuel(r))
      return err(code::out_of_fuel, "step budget exhausted", "");
    return err(code_id, std::string(what) + ": " + not_equal_reason(r)->message,
               show_fam(got) + " vs " + show_fam(want));
  }

  std::variant<FamPtr, Diagnostic> obj(const Context& g, const SimpleContext& d,
                                       const ObjPtr& m);
  std::variant<KindPtr, Diagnostic> fam(const Context& g, const SimpleContext& d,
                                        const FamPtr& a);
  std::optional<Diagnostic> kind(const Context& g, const SimpleContext& d,
                                 const KindPtr& k);
};

std::variant<FamPtr, Diagnostic> Tc::obj(const Context& g, const SimpleContext& d,
                                         const ObjPtr& m) {
  using R = std::variant<FamPtr, Diagnostic>;
  return std::visit(
      overload{
          [&](const OConst& c) -> R {
            const FamPtr* t = sig.lookup_obj_const(c.id);
            if (!t)
              return err(code::unbound_constant,
                         "object constant not declared in signature", c.id);
            return *t;
          },
          [&](const Free& x) -> R {
            const FamPtr* t = g.lookup(x.name);
            if (!t)
              return err(code::unbound_variable, "variable not bound in context",
                         show_name(x.name));
            return *t;
          },
          [&](const Bound& b) -> R {
            return err(code::loose_index, "loose bound index in object",
                       "#" + std::to_string(b.index));
          },
          [&](const Lam& l) -> R {
            Frame frame(*this, "obj-lam");
            auto dk = fam(g, d, l.domain);
            if (auto* diag = std::get_if<Diagnostic>(&dk)) return *diag;
            if (!std::holds_alternative<TypeK>(std::get<KindPtr>(dk)->node))
              return err(code::ill_kinded, "lambda annotation is not of kind type",
                         show_fam(l.domain));
            Name x = fresh(g, fv_obj(l.body), fv_fam(l.domain));
            auto bt = obj(g.extended(x, l.domain),
                          d.extended(x, erase_family(l.domain)),
                          open_obj(l.body, 0, o_free(x)));
            if (auto* diag = std::get_if<Diagnostic>(&bt)) return *diag;
            return pi_f(l.domain, close_fam(std::get<FamPtr>(bt), x, 0));
          },
          [&](const OApp& app) -> R {
            Frame frame(*this, "obj-app");
            auto ft = obj(g, d, app.fun);
            if (auto* diag = std::get_if<Diagnostic>(&ft)) return *diag;
            FamPtr fty = std::get<FamPtr>(ft);
            const auto* pi = std::get_if<PiF>(&fty->node);
            if (!pi)
              return err(code::not_a_function,
                         "application head does not have a Pi type",
                         show_obj(app.fun));
            auto at = obj(g, d, app.arg);
            if (auto* diag = std::get_if<Diagnostic>(&at)) return *diag;
            Frame arg_frame(*this, "obj-app-arg");
            if (auto diag = require_fam_equal(
                    d, std::get<FamPtr>(at), pi->domain, code::domain_mismatch,
                    "argument type does not match the Pi domain"))
              return *diag;
            return open_fam(pi->body, 0, app.arg);
          },
      },
      m->node);
}

std::variant<KindPtr, Diagnostic> Tc::fam(const Context& g, const SimpleContext& d,
                                          const FamPtr& a) {
  using R = std::variant<KindPtr, Diagnostic>;
  return std::visit(
      overload{
          [&](const AConst& c) -> R {
            const KindPtr* k = sig.lookup_fam_const(c.id);
            if (!k)
              return err(code::unbound_constant,
                         "family constant not declared in signature", c.id);
            return *k;
          },
          [&](const PiF& p) -> R {
            Frame frame(*this, "fam-pi");
            auto dk = fam(g, d, p.domain);
            if (auto* diag = std::get_if<Diagnostic>(&dk)) return *diag;
            if (!std::holds_alternative<TypeK>(std::get<KindPtr>(dk)->node))
              return err(code::ill_kinded, "Pi domain is not of kind type",
                         show_fam(p.domain));
            Name x = fresh(g, fv_fam(p.body), fv_fam(p.domain));
            auto bk = fam(g.extended(x, p.domain),
                          d.extended(x, erase_family(p.domain)),
                          open_fam(p.body, 0, o_free(x)));
            if (auto* diag = std::get_if<Diagnostic>(&bk)) return *diag;
            if (!std::holds_alternative<TypeK>(std::get<KindPtr>(bk)->node))
              return err(code::ill_kinded, "Pi body is not of kind type",
                         show_fam(p.body));
            return type_k();
          },
          [&](const FApp& f) -> R {
            Frame frame(*this, "fam-app");
            auto fk = fam(g, d, f.fun);
            if (auto* diag = std::get_if<Diagnostic>(&fk)) return *diag;
            KindPtr k = std::get<KindPtr>(fk);
            const auto* pk = std::get_if<PiK>(&k->node);
            if (!pk)
              return err(code::not_a_function,
                         "family application head does not have a Pi kind",
                         show_fam(f.fun));
            auto at = obj(g, d, f.arg);
            if (auto* diag = std::get_if<Diagnostic>(&at)) return *diag;
            Frame arg_frame(*this, "fam-app-arg");
            if (auto diag = require_fam_equal(
                    d, std::get<FamPtr>(at), pk->domain, code::domain_mismatch,
                    "argument type does not match the Pi kind domain"))
              return *diag;
            return open_kind(pk->body, 0, f.arg);
          },
      },
      a->node);
}

std::optional<Diagnostic> Tc::kind(const Context& g, const SimpleContext& d,
                                   const KindPtr& k) {
  return std::visit(
      overload{
          [&](const TypeK&) -> std::optional<Diagnostic> { return std::nullopt; },
          [&](const PiK& p) -> std::optional<Diagnostic> {
            Frame frame(*this, "kind-pi");
            auto dk = fam(g, d, p.domain);
            if (auto* diag = std::get_if<Diagnostic>(&dk)) return *diag;
            if (!std::holds_alternative<TypeK>(std::get<KindPtr>(dk)->node))
              return err(code::ill_kinded, "Pi domain is not of kind type",
                         show_fam(p.domain));
            Name x = fresh(g, fv_kind(p.body), fv_fam(p.domain));
            return kind(g.extended(x, p.domain),
                        d.extended(x, erase_family(p.domain)),
                        open_kind(p.body, 0, o_free(x)));
          },
      },
      k->node);
}

}  // namespace

SigResult check_sig(const Signature& sg, Fuel& fuel) {
  Signature prefix;
  SimpleSignature sprefix;
  for (auto it = sg.entries.rbegin(); it != sg.entries.rend(); ++it) {
    const SigEntry& e = *it;
    Tc tc{prefix, sprefix, fuel, {"sig " + e.id}};
    if (prefix.declares(e.id))
      return tc.err(code::duplicate_ident,
                    "identifier declared twice in signature", e.id);
    if (const auto* fd = std::get_if<FamDecl>(&e.decl)) {
      if (!locally_closed_fam(fd->type))
        return tc.err(code::loose_index, "declared type has a loose bound index",
                      show_fam(fd->type));
      auto k = tc.fam(Context{}, SimpleContext{}, fd->type);
      if (auto* diag = std::get_if<Diagnostic>(&k)) return *diag;
      if (!std::holds_alternative<TypeK>(std::get<KindPtr>(k)->node))
        return tc.err(code::ill_kinded,
                      "an object constant must be declared at kind type",
                      show_fam(fd->type));
      sprefix.entries.insert(sprefix.entries.begin(),
                             SSigEntry{e.id, erase_family(fd->type)});
    } else {
      const KindPtr& kd = std::get<KindDecl>(e.decl).kind;
      if (!locally_closed_kind(kd))
        return tc.err(code::loose_index, "declared kind has a loose bound index",
                      show_kind(kd));
      if (auto diag = tc.kind(Context{}, SimpleContext{}, kd)) return *diag;
      sprefix.entries.insert(sprefix.entries.begin(),
                             SSigEntry{e.id, erase_kind(kd)});
    }
    prefix = prefix.extended(e);
  }
  return SigResult{std::in_place_index<0>,
                   ValidSig(std::move(prefix), std::move(sprefix))};
}

CtxResult check_ctx(const ValidSig& vs, const Context& g, Fuel& fuel) {
  Context prefix;
  SimpleContext sprefix;
  for (auto it = g.entries.rbegin(); it != g.entries.rend(); ++it) {
    const CtxEntry& e = *it;
    Tc tc{vs.sig(), vs.erased(), fuel, {"ctx " + show_name(e.name)}};
    if (prefix.binds(e.name))
      return tc.err(code::duplicate_name, "name bound twice in context",
                    show_name(e.name));
    if (!locally_closed_fam(e.type))
      return tc.err(code::loose_index, "binding type has a loose bound index",
                    show_fam(e.type));
    auto k = tc.fam(prefix, sprefix, e.type);
    if (auto* diag = std::get_if<Diagnostic>(&k)) return *diag;
    if (!std::holds_alternative<TypeK>(std::get<KindPtr>(k)->node))
      return tc.err(code::ill_kinded, "a binding type must have kind type",
                    show_fam(e.type));
    prefix = prefix.extended(e.name, e.type);
    sprefix = sprefix.extended(e.name, erase_family(e.type));
  }
  return CtxResult{std::in_place_index<0>,
                   ValidCtx(std::move(prefix), std::move(sprefix))};
}

ObjResult synth_obj(const ValidSig& vs, const ValidCtx& vc, const ObjPtr& m,
                    Fuel& fuel) {
  Tc tc{vs.sig(), vs.erased(), fuel, {}};
  if (!locally_closed_obj(m))
    return tc.err(code::loose_index, "object has a loose bound index",
                  show_obj(m));
  return tc.obj(vc.ctx(), vc.erased(), m);
}

KindResult check_obj(const ValidSig& vs, const ValidCtx& vc, const ObjPtr& m,
                     const FamPtr& a, Fuel& fuel) {
  Tc tc{vs.sig(), vs.erased(), fuel, {}};
  if (!locally_closed_fam(a))
    return tc.err(code::loose_index, "expected type has a loose bound index",
                  show_fam(a));
  auto k = tc.fam(vc.ctx(), vc.erased(), a);
  if (auto* diag = std::get_if<Diagnostic>(&k)) return *diag;
  if (!std::holds_alternative<TypeK>(std::get<KindPtr>(k)->node))
    return tc.err(code::ill_kinded, "expected type is not of kind type",
                  show_fam(a));
  auto t = synth_obj(vs, vc, m, fuel);
  if (auto* diag = std::get_if<Diagnostic>(&t)) return *diag;
  return tc.require_fam_equal(vc.erased(), std::get<FamPtr>(t), a,
                              code::ill_typed,
                              "synthesized type does not match the stated one");
}

FamResult synth_fam(const ValidSig& vs, const ValidCtx& vc, const FamPtr& a,
                    Fuel& fuel) {
  Tc tc{vs.sig(), vs.erased(), fuel, {}};
  if (!locally_closed_fam(a))
    return tc.err(code::loose_index, "family has a loose bound index",
                  show_fam(a));
  return tc.fam(vc.ctx(), vc.erased(), a);
}

KindResult check_kind(const ValidSig& vs, const ValidCtx& vc, const KindPtr& k,
                      Fuel& fuel) {
  Tc tc{vs.sig(), vs.erased(), fuel, {}};
  if (!locally_closed_kind(k))
    return tc.err(code::loose_index, "kind has a loose bound index",
                  show_kind(k));
  return tc.kind(vc.ctx(), vc.erased(), k);
}

}  // namespace lf
