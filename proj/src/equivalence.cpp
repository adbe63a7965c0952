#include "lf/equivalence.hpp"

#include <vector>

#include "lf/detail.hpp"
#include "lf/reduction.hpp"

namespace lf {

using detail::overload;

/* ----------------------------------------------------
 * Quasicanonical forms
 * ------------------------------------------------- */

QAtomPtr q_var(Name x) {
  return std::make_shared<const QAtom>(QVar{std::move(x)});
}
QAtomPtr q_bound(std::size_t n) {
  return std::make_shared<const QAtom>(QBound{n});
}
QAtomPtr q_const(Ident id) {
  return std::make_shared<const QAtom>(QConst{std::move(id)});
}
QAtomPtr q_app(QAtomPtr fun, QCanPtr arg) {
  return std::make_shared<const QAtom>(QApp{std::move(fun), std::move(arg)});
}
QCanPtr q_at(QAtomPtr atom) {
  return std::make_shared<const QCan>(QAt{std::move(atom)});
}
QCanPtr q_lam(QCanPtr body) {
  return std::make_shared<const QCan>(QLam{std::move(body)});
}

bool equal(const QAtomPtr& a, const QAtomPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return std::visit(
      overload{
          [&](const QVar& x) {
            const auto* y = std::get_if<QVar>(&b->node);
            return y && x.name == y->name;
          },
          [&](const QBound& i) {
            const auto* j = std::get_if<QBound>(&b->node);
            return j && i.index == j->index;
          },
          [&](const QConst& c) {
            const auto* d = std::get_if<QConst>(&b->node);
            return d && c.id == d->id;
          },
          [&](const QApp& f) {
            const auto* g = std::get_if<QApp>(&b->node);
            return g && equal(f.fun, g->fun) && equal(f.arg, g->arg);
          },
      },
      a->node);
}

bool equal(const QCanPtr& a, const QCanPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return std::visit(
      overload{
          [&](const QAt& x) {
            const auto* y = std::get_if<QAt>(&b->node);
            return y && equal(x.atom, y->atom);
          },
          [&](const QLam& l) {
            const auto* r = std::get_if<QLam>(&b->node);
            return r && equal(l.body, r->body);
          },
      },
      a->node);
}

namespace {

QAtomPtr close_qatom(const QAtomPtr& a, const Name& x, std::size_t n) {
  return std::visit(
      overload{
          [&](const QVar& v) { return v.name == x ? q_bound(n) : a; },
          [&](const QBound&) { return a; },
          [&](const QConst&) { return a; },
          [&](const QApp& f) {
            return q_app(close_qatom(f.fun, x, n), close_qcan(f.arg, x, n));
          },
      },
      a->node);
}

QAtomPtr open_qatom(const QAtomPtr& a, std::size_t n, const Name& x) {
  return std::visit(
      overload{
          [&](const QVar&) { return a; },
          [&](const QBound& b) { return b.index == n ? q_var(x) : a; },
          [&](const QConst&) { return a; },
          [&](const QApp& f) {
            return q_app(open_qatom(f.fun, n, x), open_qcan(f.arg, n, x));
          },
      },
      a->node);
}

void collect_fv_qatom(const QAtomPtr& a, std::set<Name>& out) {
  std::visit(overload{
                 [&](const QVar& v) { out.insert(v.name); },
                 [&](const QBound&) {},
                 [&](const QConst&) {},
                 [&](const QApp& f) {
                   collect_fv_qatom(f.fun, out);
                   std::set<Name> sub = fv_qcan(f.arg);
                   out.insert(sub.begin(), sub.end());
                 },
             },
             a->node);
}

bool lc_qatom(const QAtomPtr& a, std::size_t level) {
  return std::visit(
      overload{
          [&](const QVar&) { return true; },
          [&](const QBound& b) { return b.index < level; },
          [&](const QConst&) { return true; },
          [&](const QApp& f) {
            return lc_qatom(f.fun, level) && locally_closed_qcan(f.arg, level);
          },
      },
      a->node);
}

}  // namespace

QCanPtr close_qcan(const QCanPtr& q, const Name& x, std::size_t n) {
  return std::visit(
      overload{
          [&](const QAt& a) { return q_at(close_qatom(a.atom, x, n)); },
          [&](const QLam& l) { return q_lam(close_qcan(l.body, x, n + 1)); },
      },
      q->node);
}

QCanPtr open_qcan(const QCanPtr& q, std::size_t n, const Name& x) {
  return std::visit(
      overload{
          [&](const QAt& a) { return q_at(open_qatom(a.atom, n, x)); },
          [&](const QLam& l) { return q_lam(open_qcan(l.body, n + 1, x)); },
      },
      q->node);
}

std::set<Name> fv_qcan(const QCanPtr& q) {
  std::set<Name> out;
  std::visit(overload{
                 [&](const QAt& a) { collect_fv_qatom(a.atom, out); },
                 [&](const QLam& l) { out = fv_qcan(l.body); },
             },
             q->node);
  return out;
}

bool locally_closed_qcan(const QCanPtr& q, std::size_t level) {
  return std::visit(
      overload{
          [&](const QAt& a) { return lc_qatom(a.atom, level); },
          [&](const QLam& l) { return locally_closed_qcan(l.body, level + 1); },
      },
      q->node);
}

std::string show_qatom(const QAtomPtr& a) {
  return std::visit(
      overload{
          [&](const QVar& v) { return show_name(v.name); },
          [&](const QBound& b) { return "#" + std::to_string(b.index); },
          [&](const QConst& c) { return c.id; },
          [&](const QApp& f) {
            return "(" + show_qatom(f.fun) + " " + show_qcan(f.arg) + ")";
          },
      },
      a->node);
}

std::string show_qcan(const QCanPtr& q) {
  return std::visit(
      overload{
          [&](const QAt& a) { return show_qatom(a.atom); },
          [&](const QLam& l) { return "(lam. " + show_qcan(l.body) + ")"; },
      },
      q->node);
}

/* ----------------------------------------------------
 * The algorithm
 * ------------------------------------------------- */

namespace {

struct Checker {
  const SimpleSignature& ssig;
  Fuel& fuel;
  std::vector<std::string> path;

  struct Frame {
    Checker& c;
    Frame(Checker& checker, const char* label) : c(checker) {
      c.path.push_back(label);
    }
    ~Frame() { c.path.pop_back(); }
  };

  NotEqual fail(const char* code_id, std::string msg, std::string subterm) const {
    return NotEqual{
        Diagnostic{code_id, std::move(msg), path, std::move(subterm), std::nullopt}};
  }

  Name fresh(const SimpleContext& d, const std::set<Name>& left,
             const std::set<Name>& right) const {
    std::vector<Name> pool = d.names();
    pool.insert(pool.end(), left.begin(), left.end());
    pool.insert(pool.end(), right.begin(), right.end());
    return maxi(pool);
  }

  QEquivOutcome equiv(const SimpleContext& d, const ObjPtr& m0, const ObjPtr& n0,
                      const STypePtr& tau);
  QStructOutcome strct(const SimpleContext& d, const ObjPtr& m, const ObjPtr& n);
  EquivOutcome fam_eq(const SimpleContext& d, const FamPtr& a, const FamPtr& b,
                      const SKindPtr& kappa);
  FamStructOutcome fam_st(const SimpleContext& d, const FamPtr& a, const FamPtr& b);
  FamStructOutcome fam_weak(const SimpleContext& d, const FamPtr& a, const FamPtr& b);
  EquivOutcome kind_eq(const SimpleContext& d, const KindPtr& k, const KindPtr& l);
};

QEquivOutcome Checker::equiv(const SimpleContext& d, const ObjPtr& m0,
                             const ObjPtr& n0, const STypePtr& tau) {
  if (const auto* arrow = std::get_if<SArrow>(&tau->node)) {
    Frame frame(*this, "obj-equiv-ext");
    Name x = fresh(d, fv_obj(m0), fv_obj(n0));
    auto sub = equiv(d.extended(x, arrow->dom), o_app(m0, o_free(x)),
                     o_app(n0, o_free(x)), arrow->cod);
    if (auto* ok = std::get_if<QEquivOk>(&sub))
      return QEquivOk{q_lam(close_qcan(ok->canon, x, 0))};
    return sub;
  }

  Frame frame(*this, "obj-equiv-base");
  WhnfResult wm = whnf(m0, fuel);
  if (wm.out_of_fuel) return OutOfFuel{};
  WhnfResult wn = whnf(n0, fuel);
  if (wn.out_of_fuel) return OutOfFuel{};

  auto st = strct(d, wm.term, wn.term);
  if (auto* ok = std::get_if<QStructOk>(&st)) {
    if (!equal(ok->type, tau))
      return fail(code::not_equal,
                  "structural comparison synthesized a different type than required",
                  show_stype(ok->type) + " vs " + show_stype(tau));
    return QEquivOk{q_at(ok->atom)};
  }
  if (std::holds_alternative<OutOfFuel>(st)) return OutOfFuel{};
  return std::get<NotEqual>(st);
}

QStructOutcome Checker::strct(const SimpleContext& d, const ObjPtr& m,
                              const ObjPtr& n) {
  return std::visit(
      overload{
          [&](const Free& x) -> QStructOutcome {
            const auto* y = std::get_if<Free>(&n->node);
            if (!y || x.name != y->name)
              return fail(code::not_equal, "head mismatch",
                          show_obj(m) + " vs " + show_obj(n));
            const STypePtr* t = d.lookup(x.name);
            if (!t)
              return fail(code::unbound_variable, "variable not bound in context",
                          show_name(x.name));
            return QStructOk{*t, q_var(x.name)};
          },
          [&](const OConst& c) -> QStructOutcome {
            const auto* e = std::get_if<OConst>(&n->node);
            if (!e || c.id != e->id)
              return fail(code::not_equal, "head mismatch",
                          show_obj(m) + " vs " + show_obj(n));
            const STypePtr* t = ssig.lookup_obj_const(c.id);
            if (!t)
              return fail(code::unbound_constant,
                          "constant not declared at object level", c.id);
            return QStructOk{*t, q_const(c.id)};
          },
          [&](const OApp& a) -> QStructOutcome {
            const auto* b = std::get_if<OApp>(&n->node);
            if (!b)
              return fail(code::not_equal, "head mismatch",
                          show_obj(m) + " vs " + show_obj(n));
            Frame frame(*this, "obj-struct-app");
            auto fr = strct(d, a.fun, b->fun);
            auto* ok = std::get_if<QStructOk>(&fr);
            if (!ok) return fr;
            const auto* arrow = std::get_if<SArrow>(&ok->type->node);
            if (!arrow)
              return fail(code::not_a_function,
                          "application head synthesized a base type",
                          show_obj(a.fun));
            auto ar = equiv(d, a.arg, b->arg, arrow->dom);
            if (auto* aok = std::get_if<QEquivOk>(&ar))
              return QStructOk{arrow->cod, q_app(ok->atom, aok->canon)};
            if (std::holds_alternative<OutOfFuel>(ar)) return OutOfFuel{};
            return std::get<NotEqual>(ar);
          },
          [&](const Lam&) -> QStructOutcome {
            return fail(code::not_equal, "lambda in atomic position", show_obj(m));
          },
          [&](const Bound&) -> QStructOutcome {
            return fail(code::loose_index, "loose bound index", show_obj(m));
          },
      },
      m->node);
}

EquivOutcome Checker::fam_eq(const SimpleContext& d, const FamPtr& a,
                             const FamPtr& b, const SKindPtr& kappa) {
  if (const auto* arrow = std::get_if<SKArrow>(&kappa->node)) {
    Frame frame(*this, "fam-equiv-ext");
    Name x = fresh(d, fv_fam(a), fv_fam(b));
    return fam_eq(d.extended(x, arrow->dom), f_app(a, o_free(x)),
                  f_app(b, o_free(x)), arrow->cod);
  }

  const auto* pa = std::get_if<PiF>(&a->node);
  const auto* pb = std::get_if<PiF>(&b->node);
  if (pa && pb) {
    Frame frame(*this, "fam-equiv-pi");
    auto dom = fam_eq(d, pa->domain, pb->domain, s_type());
    if (!is_equal(dom)) return dom;
    Name x = fresh(d, fv_fam(a), fv_fam(b));
    return fam_eq(d.extended(x, erase_family(pa->domain)),
                  open_fam(pa->body, 0, o_free(x)),
                  open_fam(pb->body, 0, o_free(x)), s_type());
  }
  if (pa || pb)
    return fail(code::not_equal, "Pi family against non-Pi family",
                show_fam(a) + " vs " + show_fam(b));

  Frame frame(*this, "fam-equiv-base");
  auto st = fam_st(d, a, b);
  if (auto* k = std::get_if<SKindPtr>(&st)) {
    if (!equal(*k, s_type()))
      return fail(code::not_equal,
                  "family synthesized a higher kind where kind type is required",
                  show_skind(*k));
    return Equal{};
  }
  if (std::holds_alternative<OutOfFuel>(st)) return OutOfFuel{};
  return std::get<NotEqual>(st);
}

FamStructOutcome Checker::fam_st(const SimpleContext& d, const FamPtr& a,
                                 const FamPtr& b) {
  return std::visit(
      overload{
          [&](const AConst& c) -> FamStructOutcome {
            const auto* e = std::get_if<AConst>(&b->node);
            if (!e || c.id != e->id)
              return fail(code::not_equal, "head mismatch",
                          show_fam(a) + " vs " + show_fam(b));
            const SKindPtr* k = ssig.lookup_fam_const(c.id);
            if (!k)
              return fail(code::unbound_constant,
                          "constant not declared at family level", c.id);
            return *k;
          },
          [&](const FApp& f) -> FamStructOutcome {
            const auto* g = std::get_if<FApp>(&b->node);
            if (!g)
              return fail(code::not_equal, "head mismatch",
                          show_fam(a) + " vs " + show_fam(b));
            Frame frame(*this, "fam-struct-app");
            auto fr = fam_st(d, f.fun, g->fun);
            auto* k = std::get_if<SKindPtr>(&fr);
            if (!k) return fr;
            const auto* arrow = std::get_if<SKArrow>(&(*k)->node);
            if (!arrow)
              return fail(code::not_a_function,
                          "family application head has kind type", show_fam(f.fun));
            auto ar = equiv(d, f.arg, g->arg, arrow->dom);
            if (std::holds_alternative<QEquivOk>(ar))
              return arrow->cod;
            if (std::holds_alternative<OutOfFuel>(ar)) return OutOfFuel{};
            return std::get<NotEqual>(ar);
          },
          [&](const PiF&) -> FamStructOutcome {
            return fail(code::not_equal, "Pi family in structural position",
                        show_fam(a));
          },
      },
      a->node);
}

FamStructOutcome Checker::fam_weak(const SimpleContext& d, const FamPtr& a,
                                   const FamPtr& b) {
  return std::visit(
      overload{
          [&](const AConst& c) -> FamStructOutcome {
            const auto* e = std::get_if<AConst>(&b->node);
            if (!e || c.id != e->id)
              return fail(code::not_equal, "head mismatch",
                          show_fam(a) + " vs " + show_fam(b));
            const SKindPtr* k = ssig.lookup_fam_const(c.id);
            if (!k)
              return fail(code::unbound_constant,
                          "constant not declared at family level", c.id);
            return *k;
          },
          [&](const FApp& f) -> FamStructOutcome {
            const auto* g = std::get_if<FApp>(&b->node);
            if (!g)
              return fail(code::not_equal, "head mismatch",
                          show_fam(a) + " vs " + show_fam(b));
            Frame frame(*this, "fam-weak-app");
            auto fr = fam_weak(d, f.fun, g->fun);
            auto* k = std::get_if<SKindPtr>(&fr);
            if (!k) return fr;
            const auto* arrow = std::get_if<SKArrow>(&(*k)->node);
            if (!arrow)
              return fail(code::not_a_function,
                          "family application head has kind type", show_fam(f.fun));
            auto ar = equiv(d, f.arg, g->arg, arrow->dom);
            if (std::holds_alternative<QEquivOk>(ar))
              return arrow->cod;
            if (std::holds_alternative<OutOfFuel>(ar)) return OutOfFuel{};
            return std::get<NotEqual>(ar);
          },
          [&](const PiF& p) -> FamStructOutcome {
            const auto* q = std::get_if<PiF>(&b->node);
            if (!q)
              return fail(code::not_equal, "head mismatch",
                          show_fam(a) + " vs " + show_fam(b));
            Frame frame(*this, "fam-weak-pi");
            auto dom = fam_weak(d, p.domain, q->domain);
            auto* dk = std::get_if<SKindPtr>(&dom);
            if (!dk) return dom;
            if (!equal(*dk, s_type()))
              return fail(code::not_equal, "Pi domain is not of kind type",
                          show_fam(p.domain));
            Name x = fresh(d, fv_fam(a), fv_fam(b));
            auto body = fam_weak(d.extended(x, erase_family(p.domain)),
                                 open_fam(p.body, 0, o_free(x)),
                                 open_fam(q->body, 0, o_free(x)));
            auto* bk = std::get_if<SKindPtr>(&body);
            if (!bk) return body;
            if (!equal(*bk, s_type()))
              return fail(code::not_equal, "Pi body is not of kind type",
                          show_fam(p.body));
            return s_type();
          },
      },
      a->node);
}

EquivOutcome Checker::kind_eq(const SimpleContext& d, const KindPtr& k,
                              const KindPtr& l) {
  return std::visit(
      overload{
          [&](const TypeK&) -> EquivOutcome {
            if (!std::holds_alternative<TypeK>(l->node))
              return fail(code::not_equal, "head mismatch",
                          show_kind(k) + " vs " + show_kind(l));
            return Equal{};
          },
          [&](const PiK& p) -> EquivOutcome {
            const auto* q = std::get_if<PiK>(&l->node);
            if (!q)
              return fail(code::not_equal, "head mismatch",
                          show_kind(k) + " vs " + show_kind(l));
            Frame frame(*this, "kind-equiv-pi");
            auto dom = fam_eq(d, p.domain, q->domain, s_type());
            if (!is_equal(dom)) return dom;
            Name x = fresh(d, fv_kind(k), fv_kind(l));
            return kind_eq(d.extended(x, erase_family(p.domain)),
                           open_kind(p.body, 0, o_free(x)),
                           open_kind(q->body, 0, o_free(x)));
          },
      },
      k->node);
}

std::optional<NotEqual> validate(const SimpleSignature& ssig,
                                 const SimpleContext& sctx) {
  if (!ssig_valid(ssig))
    return NotEqual{Diagnostic{code::duplicate_ident,
                               "signature declares an identifier twice",
                               {},
                               "",
                               std::nullopt}};
  if (!sctx_valid(sctx))
    return NotEqual{Diagnostic{
        code::duplicate_name, "context binds a name twice", {}, "", std::nullopt}};
  return std::nullopt;
}

NotEqual loose(const char* what) {
  return NotEqual{Diagnostic{
      code::loose_index, std::string(what) + " contains a loose bound index",
      {},
      "",
      std::nullopt}};
}

}  // namespace

EquivOutcome obj_equiv(const SimpleSignature& ssig, const SimpleContext& sctx,
                       const ObjPtr& m, const ObjPtr& n, const STypePtr& tau,
                       Fuel& fuel) {
  auto q = obj_equiv_q(ssig, sctx, m, n, tau, fuel);
  if (std::holds_alternative<QEquivOk>(q)) return Equal{};
  if (std::holds_alternative<OutOfFuel>(q)) return OutOfFuel{};
  return std::get<NotEqual>(std::move(q));
}

QEquivOutcome obj_equiv_q(const SimpleSignature& ssig, const SimpleContext& sctx,
                          const ObjPtr& m, const ObjPtr& n, const STypePtr& tau,
                          Fuel& fuel) {
  if (auto bad = validate(ssig, sctx)) return *bad;
  if (!locally_closed_obj(m)) return loose("left object");
  if (!locally_closed_obj(n)) return loose("right object");
  Checker c{ssig, fuel, {}};
  return c.equiv(sctx, m, n, tau);
}

StructOutcome obj_struct(const SimpleSignature& ssig, const SimpleContext& sctx,
                         const ObjPtr& m, const ObjPtr& n, Fuel& fuel) {
  auto q = obj_struct_q(ssig, sctx, m, n, fuel);
  if (auto* ok = std::get_if<QStructOk>(&q)) return ok->type;
  if (std::holds_alternative<OutOfFuel>(q)) return OutOfFuel{};
  return std::get<NotEqual>(std::move(q));
}

QStructOutcome obj_struct_q(const SimpleSignature& ssig, const SimpleContext& sctx,
                            const ObjPtr& m, const ObjPtr& n, Fuel& fuel) {
  if (auto bad = validate(ssig, sctx)) return *bad;
  if (!locally_closed_obj(m)) return loose("left object");
  if (!locally_closed_obj(n)) return loose("right object");
  Checker c{ssig, fuel, {}};
  return c.strct(sctx, m, n);
}

EquivOutcome fam_equiv(const SimpleSignature& ssig, const SimpleContext& sctx,
                       const FamPtr& a, const FamPtr& b, const SKindPtr& kappa,
                       Fuel& fuel) {
  if (auto bad = validate(ssig, sctx)) return *bad;
  if (!locally_closed_fam(a)) return loose("left family");
  if (!locally_closed_fam(b)) return loose("right family");
  Checker c{ssig, fuel, {}};
  return c.fam_eq(sctx, a, b, kappa);
}

FamStructOutcome fam_struct(const SimpleSignature& ssig, const SimpleContext& sctx,
                            const FamPtr& a, const FamPtr& b, Fuel& fuel) {
  if (auto bad = validate(ssig, sctx)) return *bad;
  if (!locally_closed_fam(a)) return loose("left family");
  if (!locally_closed_fam(b)) return loose("right family");
  Checker c{ssig, fuel, {}};
  return c.fam_st(sctx, a, b);
}

EquivOutcome fam_equiv_weak(const SimpleSignature& ssig, const SimpleContext& sctx,
                            const FamPtr& a, const FamPtr& b, const SKindPtr& kappa,
                            Fuel& fuel) {
  if (auto bad = validate(ssig, sctx)) return *bad;
  if (!locally_closed_fam(a)) return loose("left family");
  if (!locally_closed_fam(b)) return loose("right family");
  Checker c{ssig, fuel, {}};
  auto r = c.fam_weak(sctx, a, b);
  if (auto* k = std::get_if<SKindPtr>(&r)) {
    if (equal(*k, kappa)) return Equal{};
    return NotEqual{Diagnostic{code::not_equal,
                               "weak equivalence synthesized a different kind",
                               {},
                               show_skind(*k) + " vs " + show_skind(kappa),
                               std::nullopt}};
  }
  if (std::holds_alternative<OutOfFuel>(r)) return OutOfFuel{};
  return std::get<NotEqual>(std::move(r));
}

EquivOutcome kind_equiv(const SimpleSignature& ssig, const SimpleContext& sctx,
                        const KindPtr& k, const KindPtr& l, Fuel& fuel) {
  if (auto bad = validate(ssig, sctx)) return *bad;
  if (!locally_closed_kind(k)) return loose("left kind");
  if (!locally_closed_kind(l)) return loose("right kind");
  Checker c{ssig, fuel, {}};
  return c.kind_eq(sctx, k, l);
}

/* ----------------------------------------------------
 * Label erasure
 * ------------------------------------------------- */

namespace {

std::optional<QAtomPtr> erase_atomic(const ObjPtr& m) {
  return std::visit(
      overload{
          [&](const OConst& c) -> std::optional<QAtomPtr> { return q_const(c.id); },
          [&](const Free& x) -> std::optional<QAtomPtr> { return q_var(x.name); },
          [&](const Bound& b) -> std::optional<QAtomPtr> { return q_bound(b.index); },
          [&](const Lam&) -> std::optional<QAtomPtr> { return std::nullopt; },
          [&](const OApp& a) -> std::optional<QAtomPtr> {
            auto fun = erase_atomic(a.fun);
            if (!fun) return std::nullopt;
            auto arg = erase_labels(a.arg);
            if (!arg) return std::nullopt;
            return q_app(*fun, *arg);
          },
      },
      m->node);
}

}  // namespace

std::optional<QCanPtr> erase_labels(const ObjPtr& m) {
  if (const auto* l = std::get_if<Lam>(&m->node)) {
    auto body = erase_labels(l->body);
    if (!body) return std::nullopt;
    return q_lam(*body);
  }
  auto atom = erase_atomic(m);
  if (!atom) return std::nullopt;
  return q_at(*atom);
}

}  // namespace lf
