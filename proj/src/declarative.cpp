#include "lf/declarative.hpp"

#include <array>
#include <algorithm>
#include <set>

#include "lf/detail.hpp"

namespace lf {

using detail::overload;

bool equal(const JudgmentForm& a, const JudgmentForm& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      overload{
          [&](const SigOk& x) { return equal(x.sig, std::get<SigOk>(b).sig); },
          [&](const CtxOk& x) {
            const auto& y = std::get<CtxOk>(b);
            return equal(x.sig, y.sig) && equal(x.ctx, y.ctx);
          },
          [&](const ObjTy& x) {
            const auto& y = std::get<ObjTy>(b);
            return equal(x.sig, y.sig) && equal(x.ctx, y.ctx) &&
                   equal(x.obj, y.obj) && equal(x.type, y.type);
          },
          [&](const FamKi& x) {
            const auto& y = std::get<FamKi>(b);
            return equal(x.sig, y.sig) && equal(x.ctx, y.ctx) &&
                   equal(x.fam, y.fam) && equal(x.kind, y.kind);
          },
          [&](const KindOk& x) {
            const auto& y = std::get<KindOk>(b);
            return equal(x.sig, y.sig) && equal(x.ctx, y.ctx) &&
                   equal(x.kind, y.kind);
          },
          [&](const ObjEq& x) {
            const auto& y = std::get<ObjEq>(b);
            return equal(x.sig, y.sig) && equal(x.ctx, y.ctx) &&
                   equal(x.lhs, y.lhs) && equal(x.rhs, y.rhs) &&
                   equal(x.type, y.type);
          },
          [&](const FamEq& x) {
            const auto& y = std::get<FamEq>(b);
            return equal(x.sig, y.sig) && equal(x.ctx, y.ctx) &&
                   equal(x.lhs, y.lhs) && equal(x.rhs, y.rhs) &&
                   equal(x.kind, y.kind);
          },
          [&](const KindEq& x) {
            const auto& y = std::get<KindEq>(b);
            return equal(x.sig, y.sig) && equal(x.ctx, y.ctx) &&
                   equal(x.lhs, y.lhs) && equal(x.rhs, y.rhs);
          },
      },
      a);
}

namespace {

std::string show_ctx_brief(const Context& g) {
  std::string out = "[";
  for (auto it = g.entries.rbegin(); it != g.entries.rend(); ++it) {
    if (out.size() > 1) out += ", ";
    out += show_name(it->name) + ":" + show_fam(it->type);
  }
  return out + "]";
}

}  // namespace

std::string show_judgment(const JudgmentForm& j) {
  return std::visit(
      overload{
          [&](const SigOk& x) {
            return "sig(" + std::to_string(x.sig.entries.size()) + " entries) ok";
          },
          [&](const CtxOk& x) { return show_ctx_brief(x.ctx) + " ctx"; },
          [&](const ObjTy& x) {
            return show_ctx_brief(x.ctx) + " |- " + show_obj(x.obj) + " : " +
                   show_fam(x.type);
          },
          [&](const FamKi& x) {
            return show_ctx_brief(x.ctx) + " |- " + show_fam(x.fam) + " : " +
                   show_kind(x.kind);
          },
          [&](const KindOk& x) {
            return show_ctx_brief(x.ctx) + " |- " + show_kind(x.kind) + " kind";
          },
          [&](const ObjEq& x) {
            return show_ctx_brief(x.ctx) + " |- " + show_obj(x.lhs) + " = " +
                   show_obj(x.rhs) + " : " + show_fam(x.type);
          },
          [&](const FamEq& x) {
            return show_ctx_brief(x.ctx) + " |- " + show_fam(x.lhs) + " = " +
                   show_fam(x.rhs) + " : " + show_kind(x.kind);
          },
          [&](const KindEq& x) {
            return show_ctx_brief(x.ctx) + " |- " + show_kind(x.lhs) + " = " +
                   show_kind(x.rhs) + " kind";
          },
      },
      j);
}

DerivPtr deriv(std::string rule, JudgmentForm conclusion,
               std::vector<DerivPtr> premises, std::optional<Name> fresh_witness) {
  return std::make_shared<const Derivation>(Derivation{
      std::move(rule), std::move(conclusion), std::move(premises),
      std::move(fresh_witness)});
}

namespace {

constexpr std::array<const char*, 35> kRules = {
    "sig-empty", "sig-obj",   "sig-fam",  "ctx-empty", "ctx-bind", "ty-const",
    "ty-var",    "ty-lam",    "ty-app",   "ty-conv",   "ki-const", "ki-pi",
    "ki-app",    "ki-conv",   "kd-type",  "kd-pi",     "oeq-var",  "oeq-const",
    "oeq-lam",   "oeq-app",   "oeq-ext",  "oeq-beta",  "oeq-sym",  "oeq-trans",
    "oeq-conv",  "feq-const", "feq-pi",   "feq-app",   "feq-sym",  "feq-trans",
    "feq-conv",  "keq-type",  "keq-pi",   "keq-sym",   "keq-trans"};

constexpr std::array<const char*, 8> kWitnessRules = {
    "ty-lam", "ki-pi", "kd-pi", "oeq-lam", "oeq-ext", "oeq-beta", "feq-pi",
    "keq-pi"};

bool sig_closed(const Signature& s) {
  for (const auto& e : s.entries) {
    if (const auto* fd = std::get_if<FamDecl>(&e.decl)) {
      if (!locally_closed_fam(fd->type)) return false;
    } else if (!locally_closed_kind(std::get<KindDecl>(e.decl).kind)) {
      return false;
    }
  }
  return true;
}

bool ctx_closed(const Context& g) {
  return std::all_of(g.entries.begin(), g.entries.end(), [](const CtxEntry& e) {
    return locally_closed_fam(e.type);
  });
}

bool judgment_closed(const JudgmentForm& j) {
  return std::visit(
      overload{
          [&](const SigOk& x) { return sig_closed(x.sig); },
          [&](const CtxOk& x) { return sig_closed(x.sig) && ctx_closed(x.ctx); },
          [&](const ObjTy& x) {
            return sig_closed(x.sig) && ctx_closed(x.ctx) &&
                   locally_closed_obj(x.obj) && locally_closed_fam(x.type);
          },
          [&](const FamKi& x) {
            return sig_closed(x.sig) && ctx_closed(x.ctx) &&
                   locally_closed_fam(x.fam) && locally_closed_kind(x.kind);
          },
          [&](const KindOk& x) {
            return sig_closed(x.sig) && ctx_closed(x.ctx) &&
                   locally_closed_kind(x.kind);
          },
          [&](const ObjEq& x) {
            return sig_closed(x.sig) && ctx_closed(x.ctx) &&
                   locally_closed_obj(x.lhs) && locally_closed_obj(x.rhs) &&
                   locally_closed_fam(x.type);
          },
          [&](const FamEq& x) {
            return sig_closed(x.sig) && ctx_closed(x.ctx) &&
                   locally_closed_fam(x.lhs) && locally_closed_fam(x.rhs) &&
                   locally_closed_kind(x.kind);
          },
          [&](const KindEq& x) {
            return sig_closed(x.sig) && ctx_closed(x.ctx) &&
                   locally_closed_kind(x.lhs) && locally_closed_kind(x.rhs);
          },
      },
      j);
}

struct Dc {
  std::vector<std::string> path;

  struct Frame {
    Dc& dc;
    Frame(Dc& checker, std::string label) : dc(checker) {
      dc.path.push_back(std::move(label));
    }
    ~Frame() { dc.path.pop_back(); }
  };

  std::optional<Diagnostic> fail(std::string msg, std::string subterm = "") {
    return Diagnostic{code::invalid_derivation, std::move(msg), path,
                      std::move(subterm), std::nullopt};
  }

  std::optional<Diagnostic> wrong_form(const Derivation& d) {
    return fail("conclusion form does not match the rule",
                show_judgment(d.conclusion));
  }

  std::optional<Diagnostic> arity(const Derivation& d, std::size_t n) {
    if (d.premises.size() != n)
      return fail("rule expects " + std::to_string(n) + " premises, found " +
                  std::to_string(d.premises.size()));
    for (const auto& p : d.premises)
      if (!p) return fail("missing premise subtree");
    return std::nullopt;
  }

  std::optional<Diagnostic> sub(const Derivation& d, std::size_t i) {
    Frame frame(*this, "premise " + std::to_string(i + 1));
    return check(*d.premises[i]);
  }

  std::optional<Diagnostic> use(const Derivation& d, std::size_t i,
                                const JudgmentForm& want) {
    if (!equal(d.premises[i]->conclusion, want))
      return fail("premise " + std::to_string(i + 1) +
                      " concludes the wrong judgment",
                  show_judgment(d.premises[i]->conclusion) + " vs " +
                      show_judgment(want));
    return sub(d, i);
  }

  std::optional<Diagnostic> fresh_for(
      const Name& x, const Context& g,
      std::initializer_list<const std::set<Name>*> more) {
    std::set<Name> avoid = fv_ctx(g);
    for (const auto* s : more) avoid.insert(s->begin(), s->end());
    if (avoid.count(x))
      return fail("witness name is not fresh", show_name(x));
    return std::nullopt;
  }

  std::optional<Diagnostic> check(const Derivation& d);
};

std::optional<Diagnostic> Dc::check(const Derivation& d) {
  Frame frame(*this, d.rule);
  if (!rule_known(d.rule)) return fail("unknown rule identifier", d.rule);
  if (rule_needs_witness(d.rule) && !d.fresh_witness)
    return fail("rule opens a binder and must record its fresh witness", d.rule);
  if (!rule_needs_witness(d.rule) && d.fresh_witness)
    return fail("rule does not open a binder but records a witness", d.rule);
  if (!judgment_closed(d.conclusion))
    return fail("conclusion contains a loose bound index",
                show_judgment(d.conclusion));

  const std::string& r = d.rule;

  /* signatures */

  if (r == "sig-empty") {
    const auto* c = std::get_if<SigOk>(&d.conclusion);
    if (!c) return wrong_form(d);
    if (auto e = arity(d, 0)) return e;
    if (!c->sig.entries.empty())
      return fail("signature is not empty");
    return std::nullopt;
  }

  if (r == "sig-obj" || r == "sig-fam") {
    const auto* c = std::get_if<SigOk>(&d.conclusion);
    if (!c) return wrong_form(d);
    if (c->sig.entries.empty())
      return fail("signature has no newest declaration");
    const SigEntry& newest = c->sig.entries.front();
    Signature rest{std::vector<SigEntry>(c->sig.entries.begin() + 1,
                                         c->sig.entries.end())};
    if (rest.declares(newest.id))
      return fail("identifier already declared", newest.id);
    if (auto e = arity(d, 2)) return e;
    if (auto e = use(d, 0, SigOk{rest})) return e;
    if (r == "sig-obj") {
      const auto* fd = std::get_if<FamDecl>(&newest.decl);
      if (!fd)
        return fail("newest declaration is not an object constant", newest.id);
      return use(d, 1, FamKi{rest, Context{}, fd->type, type_k()});
    }
    const auto* kd = std::get_if<KindDecl>(&newest.decl);
    if (!kd)
      return fail("newest declaration is not a family constant", newest.id);
    return use(d, 1, KindOk{rest, Context{}, kd->kind});
  }

  /* contexts */

  if (r == "ctx-empty") {
    const auto* c = std::get_if<CtxOk>(&d.conclusion);
    if (!c) return wrong_form(d);
    if (!c->ctx.entries.empty()) return fail("context is not empty");
    if (auto e = arity(d, 1)) return e;
    return use(d, 0, SigOk{c->sig});
  }

  if (r == "ctx-bind") {
    const auto* c = std::get_if<CtxOk>(&d.conclusion);
    if (!c) return wrong_form(d);
    if (c->ctx.entries.empty()) return fail("context has no newest binding");
    const CtxEntry& newest = c->ctx.entries.front();
    Context rest = c->ctx.rest();
    if (rest.binds(newest.name))
      return fail("name already bound", show_name(newest.name));
    if (auto e = arity(d, 2)) return e;
    if (auto e = use(d, 0, CtxOk{c->sig, rest})) return e;
    return use(d, 1, FamKi{c->sig, rest, newest.type, type_k()});
  }

  /* object typing */

  if (r == "ty-const") {
    const auto* c = std::get_if<ObjTy>(&d.conclusion);
    if (!c) return wrong_form(d);
    const auto* oc = std::get_if<OConst>(&c->obj->node);
    if (!oc) return fail("subject is not a constant", show_obj(c->obj));
    const FamPtr* a = c->sig.lookup_obj_const(oc->id);
    if (!a) return fail("constant not declared in signature", oc->id);
    if (!equal(*a, c->type))
      return fail("conclusion type differs from the declared type", oc->id);
    if (auto e = arity(d, 1)) return e;
    return use(d, 0, CtxOk{c->sig, c->ctx});
  }

  if (r == "ty-var") {
    const auto* c = std::get_if<ObjTy>(&d.conclusion);
    if (!c) return wrong_form(d);
    const auto* fx = std::get_if<Free>(&c->obj->node);
    if (!fx) return fail("subject is not a variable", show_obj(c->obj));
    const FamPtr* a = c->ctx.lookup(fx->name);
    if (!a) return fail("variable not bound in context", show_name(fx->name));
    if (!equal(*a, c->type))
      return fail("conclusion type differs from the bound type",
                  show_name(fx->name));
    if (auto e = arity(d, 1)) return e;
    return use(d, 0, CtxOk{c->sig, c->ctx});
  }

  if (r == "ty-lam") {
    const auto* c = std::get_if<ObjTy>(&d.conclusion);
    if (!c) return wrong_form(d);
    const auto* lam = std::get_if<Lam>(&c->obj->node);
    if (!lam) return fail("subject is not a lambda", show_obj(c->obj));
    const auto* pi = std::get_if<PiF>(&c->type->node);
    if (!pi) return fail("conclusion type is not a Pi", show_fam(c->type));
    if (!equal(lam->domain, pi->domain))
      return fail("lambda annotation differs from the Pi domain",
                  show_fam(lam->domain));
    Name x = *d.fresh_witness;
    std::set<Name> s1 = fv_fam(lam->domain);
    std::set<Name> s2 = fv_obj(lam->body);
    std::set<Name> s3 = fv_fam(pi->body);
    if (auto e = fresh_for(x, c->ctx, {&s1, &s2, &s3})) return e;
    if (auto e = arity(d, 2)) return e;
    if (auto e = use(d, 0, FamKi{c->sig, c->ctx, lam->domain, type_k()}))
      return e;
    return use(d, 1,
               ObjTy{c->sig, c->ctx.extended(x, lam->domain),
                     open_obj(lam->body, 0, o_free(x)),
                     open_fam(pi->body, 0, o_free(x))});
  }

  if (r == "ty-app") {
    const auto* c = std::get_if<ObjTy>(&d.conclusion);
    if (!c) return wrong_form(d);
    const auto* app = std::get_if<OApp>(&c->obj->node);
    if (!app) return fail("subject is not an application", show_obj(c->obj));
    if (auto e = arity(d, 2)) return e;
    const auto* p1 = std::get_if<ObjTy>(&d.premises[0]->conclusion);
    if (!p1) return fail("first premise is not a typing judgment");
    if (!equal(p1->sig, c->sig) || !equal(p1->ctx, c->ctx))
      return fail("first premise changes the signature or context");
    if (!equal(p1->obj, app->fun))
      return fail("first premise does not type the application head",
                  show_obj(app->fun));
    const auto* pi = std::get_if<PiF>(&p1->type->node);
    if (!pi) return fail("head type is not a Pi", show_fam(p1->type));
    if (auto e = sub(d, 0)) return e;
    if (auto e = use(d, 1, ObjTy{c->sig, c->ctx, app->arg, pi->domain}))
      return e;
    if (!equal(c->type, open_fam(pi->body, 0, app->arg)))
      return fail("conclusion type is not the instantiated codomain",
                  show_fam(c->type));
    return std::nullopt;
  }

  if (r == "ty-conv") {
    const auto* c = std::get_if<ObjTy>(&d.conclusion);
    if (!c) return wrong_form(d);
    if (auto e = arity(d, 2)) return e;
    const auto* p1 = std::get_if<ObjTy>(&d.premises[0]->conclusion);
    if (!p1) return fail("first premise is not a typing judgment");
    if (!equal(p1->sig, c->sig) || !equal(p1->ctx, c->ctx))
      return fail("first premise changes the signature or context");
    if (!equal(p1->obj, c->obj))
      return fail("first premise types a different subject", show_obj(c->obj));
    if (auto e = sub(d, 0)) return e;
    return use(d, 1, FamEq{c->sig, c->ctx, p1->type, c->type, type_k()});
  }

  /* family kinding */

  if (r == "ki-const") {
    const auto* c = std::get_if<FamKi>(&d.conclusion);
    if (!c) return wrong_form(d);
    const auto* ac = std::get_if<AConst>(&c->fam->node);
    if (!ac) return fail("subject is not a family constant", show_fam(c->fam));
    const KindPtr* k = c->sig.lookup_fam_const(ac->id);
    if (!k) return fail("family constant not declared in signature", ac->id);
    if (!equal(*k, c->kind))
      return fail("conclusion kind differs from the declared kind", ac->id);
    if (auto e = arity(d, 1)) return e;
    return use(d, 0, CtxOk{c->sig, c->ctx});
  }

  if (r == "ki-pi") {
    const auto* c = std::get_if<FamKi>(&d.conclusion);
    if (!c) return wrong_form(d);
    const auto* pi = std::get_if<PiF>(&c->fam->node);
    if (!pi) return fail("subject is not a Pi family", show_fam(c->fam));
    if (!std::holds_alternative<TypeK>(c->kind->node))
      return fail("a Pi family is classified by kind type", show_kind(c->kind));
    Name x = *d.fresh_witness;
    std::set<Name> s1 = fv_fam(pi->domain);
    std::set<Name> s2 = fv_fam(pi->body);
    if (auto e = fresh_for(x, c->ctx, {&s1, &s2})) return e;
    if (auto e = arity(d, 2)) return e;
    if (auto e = use(d, 0, FamKi{c->sig, c->ctx, pi->domain, type_k()}))
      return e;
    return use(d, 1,
               FamKi{c->sig, c->ctx.extended(x, pi->domain),
                     open_fam(pi->body, 0, o_free(x)), type_k()});
  }

  if (r == "ki-app") {
    const auto* c = std::get_if<FamKi>(&d.conclusion);
    if (!c) return wrong_form(d);
    const auto* fa = std::get_if<FApp>(&c->fam->node);
    if (!fa) return fail("subject is not a family application", show_fam(c->fam));
    if (auto e = arity(d, 2)) return e;
    const auto* p1 = std::get_if<FamKi>(&d.premises[0]->conclusion);
    if (!p1) return fail("first premise is not a kinding judgment");
    if (!equal(p1->sig, c->sig) || !equal(p1->ctx, c->ctx))
      return fail("first premise changes the signature or context");
    if (!equal(p1->fam, fa->fun))
      return fail("first premise does not kind the application head",
                  show_fam(fa->fun));
    const auto* pk = std::get_if<PiK>(&p1->kind->node);
    if (!pk) return fail("head kind is not a Pi", show_kind(p1->kind));
    if (auto e = sub(d, 0)) return e;
    if (auto e = use(d, 1, ObjTy{c->sig, c->ctx, fa->arg, pk->domain})) return e;
    if (!equal(c->kind, open_kind(pk->body, 0, fa->arg)))
      return fail("conclusion kind is not the instantiated one",
                  show_kind(c->kind));
    return std::nullopt;
  }

  if (r == "ki-conv") {
    const auto* c = std::get_if<FamKi>(&d.conclusion);
    if (!c) return wrong_form(d);
    if (auto e = arity(d, 2)) return e;
    const auto* p1 = std::get_if<FamKi>(&d.premises[0]->conclusion);
    if (!p1) return fail("first premise is not a kinding judgment");
    if (!equal(p1->sig, c->sig) || !equal(p1->ctx, c->ctx))
      return fail("first premise changes the signature or context");
    if (!equal(p1->fam, c->fam))
      return fail("first premise kinds a different subject", show_fam(c->fam));
    if (auto e = sub(d, 0)) return e;
    return use(d, 1, KindEq{c->sig, c->ctx, p1->kind, c->kind});
  }

  /* kind formation */

  if (r == "kd-type") {
    const auto* c = std::get_if<KindOk>(&d.conclusion);
    if (!c) return wrong_form(d);
    if (!std::holds_alternative<TypeK>(c->kind->node))
      return fail("subject is not the kind type", show_kind(c->kind));
    if (auto e = arity(d, 1)) return e;
    return use(d, 0, CtxOk{c->sig, c->ctx});
  }

  if (r == "kd-pi") {
    const auto* c = std::get_if<KindOk>(&d.conclusion);
    if (!c) return wrong_form(d);
    const auto* pk = std::get_if<PiK>(&c->kind->node);
    if (!pk) return fail("subject is not a Pi kind", show_kind(c->kind));
    Name x = *d.fresh_witness;
    std::set<Name> s1 = fv_fam(pk->domain);
    std::set<Name> s2 = fv_kind(pk->body);
    if (auto e = fresh_for(x, c->ctx, {&s1, &s2})) return e;
    if (auto e = arity(d, 2)) return e;
    if (auto e = use(d, 0, FamKi{c->sig, c->ctx, pk->domain, type_k()}))
      return e;
    return use(d, 1,
               KindOk{c->sig, c->ctx.extended(x, pk->domain),
                      open_kind(pk->body, 0, o_free(x))});
  }

  /* object equality */

  if (r == "oeq-var") {
    const auto* c = std::get_if<ObjEq>(&d.conclusion);
    if (!c) return wrong_form(d);
    const auto* fx = std::get_if<Free>(&c->lhs->node);
    if (!fx || !equal(c->lhs, c->rhs))
      return fail("both sides must be the same variable",
                  show_obj(c->lhs) + " vs " + show_obj(c->rhs));
    const FamPtr* a = c->ctx.lookup(fx->name);
    if (!a) return fail("variable not bound in context", show_name(fx->name));
    if (!equal(*a, c->type))
      return fail("conclusion type differs from the bound type",
                  show_name(fx->name));
    if (auto e = arity(d, 1)) return e;
    return use(d, 0, CtxOk{c->sig, c->ctx});
  }

  if (r == "oeq-const") {
    const auto* c = std::get_if<ObjEq>(&d.conclusion);
    if (!c) return wrong_form(d);
    const auto* oc = std::get_if<OConst>(&c->lhs->node);
    if (!oc || !equal(c->lhs, c->rhs))
      return fail("both sides must be the same constant",
                  show_obj(c->lhs) + " vs " + show_obj(c->rhs));
    const FamPtr* a = c->sig.lookup_obj_const(oc->id);
    if (!a) return fail("constant not declared in signature", oc->id);
    if (!equal(*a, c->type))
      return fail("conclusion type differs from the declared type", oc->id);
    if (auto e = arity(d, 1)) return e;
    return use(d, 0, CtxOk{c->sig, c->ctx});
  }

  if (r == "oeq-lam") {
    const auto* c = std::get_if<ObjEq>(&d.conclusion);
    if (!c) return wrong_form(d);
    const auto* lamL = std::get_if<Lam>(&c->lhs->node);
    const auto* lamR = std::get_if<Lam>(&c->rhs->node);
    if (!lamL || !lamR)
      return fail("both sides must be lambdas",
                  show_obj(c->lhs) + " vs " + show_obj(c->rhs));
    const auto* pi = std::get_if<PiF>(&c->type->node);
    if (!pi) return fail("conclusion type is not a Pi", show_fam(c->type));
    Name x = *d.fresh_witness;
    std::set<Name> s1 = fv_fam(pi->domain);
    std::set<Name> s2 = fv_fam(lamL->domain);
    std::set<Name> s3 = fv_fam(lamR->domain);
    std::set<Name> s4 = fv_obj(lamL->body);
    std::set<Name> s5 = fv_obj(lamR->body);
    std::set<Name> s6 = fv_fam(pi->body);
    if (auto e = fresh_for(x, c->ctx, {&s1, &s2, &s3, &s4, &s5, &s6})) return e;
    if (auto e = arity(d, 4)) return e;
    if (auto e =
            use(d, 0, FamEq{c->sig, c->ctx, lamL->domain, pi->domain, type_k()}))
      return e;
    if (auto e =
            use(d, 1, FamEq{c->sig, c->ctx, lamR->domain, pi->domain, type_k()}))
      return e;
    if (auto e = use(d, 2, FamKi{c->sig, c->ctx, pi->domain, type_k()}))
      return e;
    return use(d, 3,
               ObjEq{c->sig, c->ctx.extended(x, pi->domain),
                     open_obj(lamL->body, 0, o_free(x)),
                     open_obj(lamR->body, 0, o_free(x)),
                     open_fam(pi->body, 0, o_free(x))});
  }

  if (r == "oeq-app") {
    const auto* c = std::get_if<ObjEq>(&d.conclusion);
    if (!c) return wrong_form(d);
    const auto* appL = std::get_if<OApp>(&c->lhs->node);
    const auto* appR = std::get_if<OApp>(&c->rhs->node);
    if (!appL || !appR)
      return fail("both sides must be applications",
                  show_obj(c->lhs) + " vs " + show_obj(c->rhs));
    if (auto e = arity(d, 2)) return e;
    const auto* p1 = std::get_if<ObjEq>(&d.premises[0]->conclusion);
    if (!p1) return fail("first premise is not an object equality");
    if (!equal(p1->sig, c->sig) || !equal(p1->ctx, c->ctx))
      return fail("first premise changes the signature or context");
    if (!equal(p1->lhs, appL->fun) || !equal(p1->rhs, appR->fun))
      return fail("first premise does not equate the application heads");
    const auto* pi = std::get_if<PiF>(&p1->type->node);
    if (!pi) return fail("head type is not a Pi", show_fam(p1->type));
    if (auto e = sub(d, 0)) return e;
    if (auto e =
            use(d, 1, ObjEq{c->sig, c->ctx, appL->arg, appR->arg, pi->domain}))
      return e;
    if (!equal(c->type, open_fam(pi->body, 0, appL->arg)))
      return fail("conclusion type is not the instantiated codomain",
                  show_fam(c->type));
    return std::nullopt;
  }

  if (r == "oeq-ext") {
    const auto* c = std::get_if<ObjEq>(&d.conclusion);
    if (!c) return wrong_form(d);
    const auto* pi = std::get_if<PiF>(&c->type->node);
    if (!pi) return fail("conclusion type is not a Pi", show_fam(c->type));
    Name x = *d.fresh_witness;
    std::set<Name> s1 = fv_obj(c->lhs);
    std::set<Name> s2 = fv_obj(c->rhs);
    std::set<Name> s3 = fv_fam(pi->domain);
    std::set<Name> s4 = fv_fam(pi->body);
    if (auto e = fresh_for(x, c->ctx, {&s1, &s2, &s3, &s4})) return e;
    if (auto e = arity(d, 4)) return e;
    if (auto e = use(d, 0, ObjTy{c->sig, c->ctx, c->lhs, c->type})) return e;
    if (auto e = use(d, 1, ObjTy{c->sig, c->ctx, c->rhs, c->type})) return e;
    if (auto e = use(d, 2, FamKi{c->sig, c->ctx, pi->domain, type_k()}))
      return e;
    return use(d, 3,
               ObjEq{c->sig, c->ctx.extended(x, pi->domain),
                     o_app(c->lhs, o_free(x)), o_app(c->rhs, o_free(x)),
                     open_fam(pi->body, 0, o_free(x))});
  }

  if (r == "oeq-beta") {
    const auto* c = std::get_if<ObjEq>(&d.conclusion);
    if (!c) return wrong_form(d);
    const auto* app = std::get_if<OApp>(&c->lhs->node);
    if (!app)
      return fail("left side is not an application", show_obj(c->lhs));
    const auto* lam = std::get_if<Lam>(&app->fun->node);
    if (!lam)
      return fail("left side is not a beta redex", show_obj(c->lhs));
    const FamPtr& dom = lam->domain;
    const ObjPtr& body = lam->body;
    const ObjPtr& arg = app->arg;
    Name x = *d.fresh_witness;
    std::set<Name> s1 = fv_fam(dom);
    std::set<Name> s2 = fv_obj(body);
    std::set<Name> s3 = fv_obj(arg);
    if (auto e = fresh_for(x, c->ctx, {&s1, &s2, &s3})) return e;
    if (auto e = arity(d, 3)) return e;
    if (auto e = use(d, 0, FamKi{c->sig, c->ctx, dom, type_k()})) return e;
    const auto* p2 = std::get_if<ObjEq>(&d.premises[1]->conclusion);
    if (!p2) return fail("second premise is not an object equality");
    if (!equal(p2->sig, c->sig) ||
        !equal(p2->ctx, c->ctx.extended(x, dom)))
      return fail(
          "second premise must extend the context with the witness binding");
    if (!equal(p2->lhs, open_obj(body, 0, o_free(x))))
      return fail("second premise does not equate the opened body",
                  show_obj(p2->lhs));
    if (auto e = sub(d, 1)) return e;
    const auto* p3 = std::get_if<ObjEq>(&d.premises[2]->conclusion);
    if (!p3) return fail("third premise is not an object equality");
    if (!equal(p3->sig, c->sig) || !equal(p3->ctx, c->ctx))
      return fail("third premise changes the signature or context");
    if (!equal(p3->lhs, arg))
      return fail("third premise does not equate the argument",
                  show_obj(arg));
    if (!equal(p3->type, dom))
      return fail("third premise is not stated at the lambda domain",
                  show_fam(p3->type));
    if (auto e = sub(d, 2)) return e;
    if (!equal(c->rhs, subst_free_obj(p2->rhs, x, p3->rhs)))
      return fail("right side is not the substituted body",
                  show_obj(c->rhs));
    if (!equal(c->type, subst_free_fam(p2->type, x, arg)))
      return fail("conclusion type is not the substituted body type",
                  show_fam(c->type));
    return std::nullopt;
  }

  if (r == "oeq-sym") {
    const auto* c = std::get_if<ObjEq>(&d.conclusion);
    if (!c) return wrong_form(d);
    if (auto e = arity(d, 1)) return e;
    return use(d, 0, ObjEq{c->sig, c->ctx, c->rhs, c->lhs, c->type});
  }

  if (r == "oeq-trans") {
    const auto* c = std::get_if<ObjEq>(&d.conclusion);
    if (!c) return wrong_form(d);
    if (auto e = arity(d, 2)) return e;
    const auto* p1 = std::get_if<ObjEq>(&d.premises[0]->conclusion);
    if (!p1) return fail("first premise is not an object equality");
    if (!equal(p1->sig, c->sig) || !equal(p1->ctx, c->ctx))
      return fail("first premise changes the signature or context");
    if (!equal(p1->lhs, c->lhs) || !equal(p1->type, c->type))
      return fail("first premise does not start from the left side");
    if (auto e = sub(d, 0)) return e;
    return use(d, 1, ObjEq{c->sig, c->ctx, p1->rhs, c->rhs, c->type});
  }

  if (r == "oeq-conv") {
    const auto* c = std::get_if<ObjEq>(&d.conclusion);
    if (!c) return wrong_form(d);
    if (auto e = arity(d, 2)) return e;
    const auto* p1 = std::get_if<ObjEq>(&d.premises[0]->conclusion);
    if (!p1) return fail("first premise is not an object equality");
    if (!equal(p1->sig, c->sig) || !equal(p1->ctx, c->ctx))
      return fail("first premise changes the signature or context");
    if (!equal(p1->lhs, c->lhs) || !equal(p1->rhs, c->rhs))
      return fail("first premise equates different objects");
    if (auto e = sub(d, 0)) return e;
    return use(d, 1, FamEq{c->sig, c->ctx, p1->type, c->type, type_k()});
  }

  /* family equality */

  if (r == "feq-const") {
    const auto* c = std::get_if<FamEq>(&d.conclusion);
    if (!c) return wrong_form(d);
    const auto* ac = std::get_if<AConst>(&c->lhs->node);
    if (!ac || !equal(c->lhs, c->rhs))
      return fail("both sides must be the same family constant",
                  show_fam(c->lhs) + " vs " + show_fam(c->rhs));
    const KindPtr* k = c->sig.lookup_fam_const(ac->id);
    if (!k) return fail("family constant not declared in signature", ac->id);
    if (!equal(*k, c->kind))
      return fail("conclusion kind differs from the declared kind", ac->id);
    if (auto e = arity(d, 1)) return e;
    return use(d, 0, CtxOk{c->sig, c->ctx});
  }

  if (r == "feq-pi") {
    const auto* c = std::get_if<FamEq>(&d.conclusion);
    if (!c) return wrong_form(d);
    const auto* piL = std::get_if<PiF>(&c->lhs->node);
    const auto* piR = std::get_if<PiF>(&c->rhs->node);
    if (!piL || !piR)
      return fail("both sides must be Pi families",
                  show_fam(c->lhs) + " vs " + show_fam(c->rhs));
    if (!std::holds_alternative<TypeK>(c->kind->node))
      return fail("Pi families are classified by kind type", show_kind(c->kind));
    Name x = *d.fresh_witness;
    std::set<Name> s1 = fv_fam(piL->domain);
    std::set<Name> s2 = fv_fam(piR->domain);
    std::set<Name> s3 = fv_fam(piL->body);
    std::set<Name> s4 = fv_fam(piR->body);
    if (auto e = fresh_for(x, c->ctx, {&s1, &s2, &s3, &s4})) return e;
    if (auto e = arity(d, 2)) return e;
    if (auto e =
            use(d, 0, FamEq{c->sig, c->ctx, piL->domain, piR->domain, type_k()}))
      return e;
    return use(d, 1,
               FamEq{c->sig, c->ctx.extended(x, piL->domain),
                     open_fam(piL->body, 0, o_free(x)),
                     open_fam(piR->body, 0, o_free(x)), type_k()});
  }

  if (r == "feq-app") {
    const auto* c = std::get_if<FamEq>(&d.conclusion);
    if (!c) return wrong_form(d);
    const auto* faL = std::get_if<FApp>(&c->lhs->node);
    const auto* faR = std::get_if<FApp>(&c->rhs->node);
    if (!faL || !faR)
      return fail("both sides must be family applications",
                  show_fam(c->lhs) + " vs " + show_fam(c->rhs));
    if (auto e = arity(d, 2)) return e;
    const auto* p1 = std::get_if<FamEq>(&d.premises[0]->conclusion);
    if (!p1) return fail("first premise is not a family equality");
    if (!equal(p1->sig, c->sig) || !equal(p1->ctx, c->ctx))
      return fail("first premise changes the signature or context");
    if (!equal(p1->lhs, faL->fun) || !equal(p1->rhs, faR->fun))
      return fail("first premise does not equate the application heads");
    const auto* pk = std::get_if<PiK>(&p1->kind->node);
    if (!pk) return fail("head kind is not a Pi", show_kind(p1->kind));
    if (auto e = sub(d, 0)) return e;
    if (auto e =
            use(d, 1, ObjEq{c->sig, c->ctx, faL->arg, faR->arg, pk->domain}))
      return e;
    if (!equal(c->kind, open_kind(pk->body, 0, faL->arg)))
      return fail("conclusion kind is not the instantiated one",
                  show_kind(c->kind));
    return std::nullopt;
  }

  if (r == "feq-sym") {
    const auto* c = std::get_if<FamEq>(&d.conclusion);
    if (!c) return wrong_form(d);
    if (auto e = arity(d, 1)) return e;
    return use(d, 0, FamEq{c->sig, c->ctx, c->rhs, c->lhs, c->kind});
  }

  if (r == "feq-trans") {
    const auto* c = std::get_if<FamEq>(&d.conclusion);
    if (!c) return wrong_form(d);
    if (auto e = arity(d, 2)) return e;
    const auto* p1 = std::get_if<FamEq>(&d.premises[0]->conclusion);
    if (!p1) return fail("first premise is not a family equality");
    if (!equal(p1->sig, c->sig) || !equal(p1->ctx, c->ctx))
      return fail("first premise changes the signature or context");
    if (!equal(p1->lhs, c->lhs) || !equal(p1->kind, c->kind))
      return fail("first premise does not start from the left side");
    if (auto e = sub(d, 0)) return e;
    return use(d, 1, FamEq{c->sig, c->ctx, p1->rhs, c->rhs, c->kind});
  }

  if (r == "feq-conv") {
    const auto* c = std::get_if<FamEq>(&d.conclusion);
    if (!c) return wrong_form(d);
    if (auto e = arity(d, 2)) return e;
    const auto* p1 = std::get_if<FamEq>(&d.premises[0]->conclusion);
    if (!p1) return fail("first premise is not a family equality");
    if (!equal(p1->sig, c->sig) || !equal(p1->ctx, c->ctx))
      return fail("first premise changes the signature or context");
    if (!equal(p1->lhs, c->lhs) || !equal(p1->rhs, c->rhs))
      return fail("first premise equates different families");
    if (auto e = sub(d, 0)) return e;
    return use(d, 1, KindEq{c->sig, c->ctx, p1->kind, c->kind});
  }

  /* kind equality */

  if (r == "keq-type") {
    const auto* c = std::get_if<KindEq>(&d.conclusion);
    if (!c) return wrong_form(d);
    if (!std::holds_alternative<TypeK>(c->lhs->node) ||
        !std::holds_alternative<TypeK>(c->rhs->node))
      return fail("both sides must be the kind type",
                  show_kind(c->lhs) + " vs " + show_kind(c->rhs));
    if (auto e = arity(d, 1)) return e;
    return use(d, 0, CtxOk{c->sig, c->ctx});
  }

  if (r == "keq-pi") {
    const auto* c = std::get_if<KindEq>(&d.conclusion);
    if (!c) return wrong_form(d);
    const auto* pkL = std::get_if<PiK>(&c->lhs->node);
    const auto* pkR = std::get_if<PiK>(&c->rhs->node);
    if (!pkL || !pkR)
      return fail("both sides must be Pi kinds",
                  show_kind(c->lhs) + " vs " + show_kind(c->rhs));
    Name x = *d.fresh_witness;
    std::set<Name> s1 = fv_fam(pkL->domain);
    std::set<Name> s2 = fv_fam(pkR->domain);
    std::set<Name> s3 = fv_kind(pkL->body);
    std::set<Name> s4 = fv_kind(pkR->body);
    if (auto e = fresh_for(x, c->ctx, {&s1, &s2, &s3, &s4})) return e;
    if (auto e = arity(d, 2)) return e;
    if (auto e =
            use(d, 0, FamEq{c->sig, c->ctx, pkL->domain, pkR->domain, type_k()}))
      return e;
    return use(d, 1,
               KindEq{c->sig, c->ctx.extended(x, pkL->domain),
                      open_kind(pkL->body, 0, o_free(x)),
                      open_kind(pkR->body, 0, o_free(x))});
  }

  if (r == "keq-sym") {
    const auto* c = std::get_if<KindEq>(&d.conclusion);
    if (!c) return wrong_form(d);
    if (auto e = arity(d, 1)) return e;
    return use(d, 0, KindEq{c->sig, c->ctx, c->rhs, c->lhs});
  }

  if (r == "keq-trans") {
    const auto* c = std::get_if<KindEq>(&d.conclusion);
    if (!c) return wrong_form(d);
    if (auto e = arity(d, 2)) return e;
    const auto* p1 = std::get_if<KindEq>(&d.premises[0]->conclusion);
    if (!p1) return fail("first premise is not a kind equality");
    if (!equal(p1->sig, c->sig) || !equal(p1->ctx, c->ctx))
      return fail("first premise changes the signature or context");
    if (!equal(p1->lhs, c->lhs))
      return fail("first premise does not start from the left side");
    if (auto e = sub(d, 0)) return e;
    return use(d, 1, KindEq{c->sig, c->ctx, p1->rhs, c->rhs});
  }

  return fail("unhandled rule identifier", r);
}

}  // namespace

bool rule_needs_witness(const std::string& rule) {
  return std::find_if(kWitnessRules.begin(), kWitnessRules.end(),
                      [&](const char* r) { return rule == r; }) !=
         kWitnessRules.end();
}

bool rule_known(const std::string& rule) {
  return std::find_if(kRules.begin(), kRules.end(), [&](const char* r) {
           return rule == r;
         }) != kRules.end();
}

std::optional<Diagnostic> check_derivation(const Derivation& d) {
  Dc dc;
  return dc.check(d);
}

}  // namespace lf
