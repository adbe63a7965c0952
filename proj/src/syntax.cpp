#include "lf/syntax.hpp"

#include <algorithm>

#include "lf/detail.hpp"

namespace lf {

using detail::overload;

std::string show_name(const Name& x) {
  if (x.index == 0) return x.base;
  return x.base + "$" + std::to_string(x.index);
}

KindPtr type_k() {
  static const KindPtr k = std::make_shared<const KindExpr>(TypeK{});
  return k;
}
KindPtr pi_k(FamPtr domain, KindPtr body) {
  return std::make_shared<const KindExpr>(PiK{std::move(domain), std::move(body)});
}
FamPtr a_const(Ident id) {
  return std::make_shared<const FamilyExpr>(AConst{std::move(id)});
}
FamPtr pi_f(FamPtr domain, FamPtr body) {
  return std::make_shared<const FamilyExpr>(PiF{std::move(domain), std::move(body)});
}
FamPtr f_app(FamPtr fun, ObjPtr arg) {
  return std::make_shared<const FamilyExpr>(FApp{std::move(fun), std::move(arg)});
}
ObjPtr o_const(Ident id) {
  return std::make_shared<const ObjectExpr>(OConst{std::move(id)});
}
ObjPtr o_free(Name x) {
  return std::make_shared<const ObjectExpr>(Free{std::move(x)});
}
ObjPtr o_bound(std::size_t n) {
  return std::make_shared<const ObjectExpr>(Bound{n});
}
ObjPtr o_lam(FamPtr domain, ObjPtr body) {
  return std::make_shared<const ObjectExpr>(Lam{std::move(domain), std::move(body)});
}
ObjPtr o_app(ObjPtr fun, ObjPtr arg) {
  return std::make_shared<const ObjectExpr>(OApp{std::move(fun), std::move(arg)});
}

/* ----------------------------------------------------
 * Structural equality
 * ------------------------------------------------- */

bool equal(const KindPtr& k, const KindPtr& l) {
  if (k == l) return true;
  if (!k || !l) return false;
  return std::visit(
      overload{
          [&](const TypeK&) { return std::holds_alternative<TypeK>(l->node); },
          [&](const PiK& p) {
            const auto* q = std::get_if<PiK>(&l->node);
            return q && equal(p.domain, q->domain) && equal(p.body, q->body);
          },
      },
      k->node);
}

bool equal(const FamPtr& a, const FamPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return std::visit(
      overload{
          [&](const AConst& c) {
            const auto* d = std::get_if<AConst>(&b->node);
            return d && c.id == d->id;
          },
          [&](const PiF& p) {
            const auto* q = std::get_if<PiF>(&b->node);
            return q && equal(p.domain, q->domain) && equal(p.body, q->body);
          },
          [&](const FApp& f) {
            const auto* g = std::get_if<FApp>(&b->node);
            return g && equal(f.fun, g->fun) && equal(f.arg, g->arg);
          },
      },
      a->node);
}

bool equal(const ObjPtr& m, const ObjPtr& n) {
  if (m == n) return true;
  if (!m || !n) return false;
  return std::visit(
      overload{
          [&](const OConst& c) {
            const auto* d = std::get_if<OConst>(&n->node);
            return d && c.id == d->id;
          },
          [&](const Free& x) {
            const auto* y = std::get_if<Free>(&n->node);
            return y && x.name == y->name;
          },
          [&](const Bound& i) {
            const auto* j = std::get_if<Bound>(&n->node);
            return j && i.index == j->index;
          },
          [&](const Lam& l) {
            const auto* r = std::get_if<Lam>(&n->node);
            return r && equal(l.domain, r->domain) && equal(l.body, r->body);
          },
          [&](const OApp& f) {
            const auto* g = std::get_if<OApp>(&n->node);
            return g && equal(f.fun, g->fun) && equal(f.arg, g->arg);
          },
      },
      m->node);
}

/* ----------------------------------------------------
 * Signatures, contexts, substitutions
 * ------------------------------------------------- */

const FamPtr* Signature::lookup_obj_const(const Ident& c) const {
  for (const auto& e : entries) {
    if (e.id != c) continue;
    if (const auto* d = std::get_if<FamDecl>(&e.decl)) return &d->type;
    return nullptr;
  }
  return nullptr;
}

const KindPtr* Signature::lookup_fam_const(const Ident& a) const {
  for (const auto& e : entries) {
    if (e.id != a) continue;
    if (const auto* d = std::get_if<KindDecl>(&e.decl)) return &d->kind;
    return nullptr;
  }
  return nullptr;
}

bool Signature::declares(const Ident& id) const {
  return std::any_of(entries.begin(), entries.end(),
                     [&](const SigEntry& e) { return e.id == id; });
}

Signature Signature::extended(SigEntry e) const {
  Signature out;
  out.entries.reserve(entries.size() + 1);
  out.entries.push_back(std::move(e));
  out.entries.insert(out.entries.end(), entries.begin(), entries.end());
  return out;
}

bool equal(const Signature& s1, const Signature& s2) {
  if (s1.entries.size() != s2.entries.size()) return false;
  for (std::size_t i = 0; i < s1.entries.size(); ++i) {
    const auto& a = s1.entries[i];
    const auto& b = s2.entries[i];
    if (a.id != b.id) return false;
    if (a.decl.index() != b.decl.index()) return false;
    if (const auto* fa = std::get_if<FamDecl>(&a.decl)) {
      if (!equal(fa->type, std::get<FamDecl>(b.decl).type)) return false;
    } else {
      if (!equal(std::get<KindDecl>(a.decl).kind, std::get<KindDecl>(b.decl).kind))
        return false;
    }
  }
  return true;
}

const FamPtr* Context::lookup(const Name& x) const {
  for (const auto& e : entries)
    if (e.name == x) return &e.type;
  return nullptr;
}

bool Context::binds(const Name& x) const { return lookup(x) != nullptr; }

Context Context::extended(Name x, FamPtr a) const {
  Context out;
  out.entries.reserve(entries.size() + 1);
  out.entries.push_back(CtxEntry{std::move(x), std::move(a)});
  out.entries.insert(out.entries.end(), entries.begin(), entries.end());
  return out;
}

Context Context::rest() const {
  Context out;
  out.entries.assign(entries.begin() + 1, entries.end());
  return out;
}

bool equal(const Context& g1, const Context& g2) {
  if (g1.entries.size() != g2.entries.size()) return false;
  for (std::size_t i = 0; i < g1.entries.size(); ++i) {
    if (g1.entries[i].name != g2.entries[i].name) return false;
    if (!equal(g1.entries[i].type, g2.entries[i].type)) return false;
  }
  return true;
}

const ObjPtr* NamedSubst::lookup(const Name& x) const {
  for (const auto& e : entries)
    if (e.name == x) return &e.value;
  return nullptr;
}

/* ----------------------------------------------------
 * open / close / substitution
 * ------------------------------------------------- */

ObjPtr open_obj(const ObjPtr& m, std::size_t n, const ObjPtr& v) {
  return std::visit(
      overload{
          [&](const OConst&) { return m; },
          [&](const Free&) { return m; },
          [&](const Bound& b) { return b.index == n ? v : m; },
          [&](const Lam& l) {
            return o_lam(open_fam(l.domain, n, v), open_obj(l.body, n + 1, v));
          },
          [&](const OApp& a) {
            return o_app(open_obj(a.fun, n, v), open_obj(a.arg, n, v));
          },
      },
      m->node);
}

FamPtr open_fam(const FamPtr& a, std::size_t n, const ObjPtr& v) {
  return std::visit(
      overload{
          [&](const AConst&) { return a; },
          [&](const PiF& p) {
            return pi_f(open_fam(p.domain, n, v), open_fam(p.body, n + 1, v));
          },
          [&](const FApp& f) {
            return f_app(open_fam(f.fun, n, v), open_obj(f.arg, n, v));
          },
      },
      a->node);
}

KindPtr open_kind(const KindPtr& k, std::size_t n, const ObjPtr& v) {
  return std::visit(
      overload{
          [&](const TypeK&) { return k; },
          [&](const PiK& p) {
            return pi_k(open_fam(p.domain, n, v), open_kind(p.body, n + 1, v));
          },
      },
      k->node);
}

ObjPtr close_obj(const ObjPtr& m, const Name& x, std::size_t n) {
  return std::visit(
      overload{
          [&](const OConst&) { return m; },
          [&](const Free& f) { return f.name == x ? o_bound(n) : m; },
          [&](const Bound&) { return m; },
          [&](const Lam& l) {
            return o_lam(close_fam(l.domain, x, n), close_obj(l.body, x, n + 1));
          },
          [&](const OApp& a) {
            return o_app(close_obj(a.fun, x, n), close_obj(a.arg, x, n));
          },
      },
      m->node);
}

FamPtr close_fam(const FamPtr& a, const Name& x, std::size_t n) {
  return std::visit(
      overload{
          [&](const AConst&) { return a; },
          [&](const PiF& p) {
            return pi_f(close_fam(p.domain, x, n), close_fam(p.body, x, n + 1));
          },
          [&](const FApp& f) {
            return f_app(close_fam(f.fun, x, n), close_obj(f.arg, x, n));
          },
      },
      a->node);
}

KindPtr close_kind(const KindPtr& k, const Name& x, std::size_t n) {
  return std::visit(
      overload{
          [&](const TypeK&) { return k; },
          [&](const PiK& p) {
            return pi_k(close_fam(p.domain, x, n), close_kind(p.body, x, n + 1));
          },
      },
      k->node);
}

ObjPtr subst_free_obj(const ObjPtr& m, const Name& x, const ObjPtr& v) {
  return std::visit(
      overload{
          [&](const OConst&) { return m; },
          [&](const Free& f) { return f.name == x ? v : m; },
          [&](const Bound&) { return m; },
          [&](const Lam& l) {
            return o_lam(subst_free_fam(l.domain, x, v), subst_free_obj(l.body, x, v));
          },
          [&](const OApp& a) {
            return o_app(subst_free_obj(a.fun, x, v), subst_free_obj(a.arg, x, v));
          },
      },
      m->node);
}

FamPtr subst_free_fam(const FamPtr& a, const Name& x, const ObjPtr& v) {
  return std::visit(
      overload{
          [&](const AConst&) { return a; },
          [&](const PiF& p) {
            return pi_f(subst_free_fam(p.domain, x, v), subst_free_fam(p.body, x, v));
          },
          [&](const FApp& f) {
            return f_app(subst_free_fam(f.fun, x, v), subst_free_obj(f.arg, x, v));
          },
      },
      a->node);
}

KindPtr subst_free_kind(const KindPtr& k, const Name& x, const ObjPtr& v) {
  return std::visit(
      overload{
          [&](const TypeK&) { return k; },
          [&](const PiK& p) {
            return pi_k(subst_free_fam(p.domain, x, v), subst_free_kind(p.body, x, v));
          },
      },
      k->node);
}

ObjPtr subst_multi_obj(const ObjPtr& m, const NamedSubst& s) {
  return std::visit(
      overload{
          [&](const OConst&) { return m; },
          [&](const Free& f) {
            const ObjPtr* hit = s.lookup(f.name);
            return hit ? *hit : m;
          },
          [&](const Bound&) { return m; },
          [&](const Lam& l) {
            return o_lam(subst_multi_fam(l.domain, s), subst_multi_obj(l.body, s));
          },
          [&](const OApp& a) {
            return o_app(subst_multi_obj(a.fun, s), subst_multi_obj(a.arg, s));
          },
      },
      m->node);
}

FamPtr subst_multi_fam(const FamPtr& a, const NamedSubst& s) {
  return std::visit(
      overload{
          [&](const AConst&) { return a; },
          [&](const PiF& p) {
            return pi_f(subst_multi_fam(p.domain, s), subst_multi_fam(p.body, s));
          },
          [&](const FApp& f) {
            return f_app(subst_multi_fam(f.fun, s), subst_multi_obj(f.arg, s));
          },
      },
      a->node);
}

KindPtr subst_multi_kind(const KindPtr& k, const NamedSubst& s) {
  return std::visit(
      overload{
          [&](const TypeK&) { return k; },
          [&](const PiK& p) {
            return pi_k(subst_multi_fam(p.domain, s), subst_multi_kind(p.body, s));
          },
      },
      k->node);
}

/* ----------------------------------------------------
 * Free names / identifiers, freshness
 * ------------------------------------------------- */

namespace {

void collect_fv(const ObjPtr& m, std::set<Name>& out);
void collect_fv(const FamPtr& a, std::set<Name>& out);
void collect_fv(const KindPtr& k, std::set<Name>& out);

void collect_fv(const ObjPtr& m, std::set<Name>& out) {
  std::visit(overload{
                 [&](const OConst&) {},
                 [&](const Free& f) { out.insert(f.name); },
                 [&](const Bound&) {},
                 [&](const Lam& l) {
                   collect_fv(l.domain, out);
                   collect_fv(l.body, out);
                 },
                 [&](const OApp& a) {
                   collect_fv(a.fun, out);
                   collect_fv(a.arg, out);
                 },
             },
             m->node);
}

void collect_fv(const FamPtr& a, std::set<Name>& out) {
  std::visit(overload{
                 [&](const AConst&) {},
                 [&](const PiF& p) {
                   collect_fv(p.domain, out);
                   collect_fv(p.body, out);
                 },
                 [&](const FApp& f) {
                   collect_fv(f.fun, out);
                   collect_fv(f.arg, out);
                 },
             },
             a->node);
}

void collect_fv(const KindPtr& k, std::set<Name>& out) {
  std::visit(overload{
                 [&](const TypeK&) {},
                 [&](const PiK& p) {
                   collect_fv(p.domain, out);
                   collect_fv(p.body, out);
                 },
             },
             k->node);
}

void collect_fi(const ObjPtr& m, std::set<Ident>& out);
void collect_fi(const FamPtr& a, std::set<Ident>& out);
void collect_fi(const KindPtr& k, std::set<Ident>& out);

void collect_fi(const ObjPtr& m, std::set<Ident>& out) {
  std::visit(overload{
                 [&](const OConst& c) { out.insert(c.id); },
                 [&](const Free&) {},
                 [&](const Bound&) {},
                 [&](const Lam& l) {
                   collect_fi(l.domain, out);
                   collect_fi(l.body, out);
                 },
                 [&](const OApp& a) {
                   collect_fi(a.fun, out);
                   collect_fi(a.arg, out);
                 },
             },
             m->node);
}

void collect_fi(const FamPtr& a, std::set<Ident>& out) {
  std::visit(overload{
                 [&](const AConst& c) { out.insert(c.id); },
                 [&](const PiF& p) {
                   collect_fi(p.domain, out);
                   collect_fi(p.body, out);
                 },
                 [&](const FApp& f) {
                   collect_fi(f.fun, out);
                   collect_fi(f.arg, out);
                 },
             },
             a->node);
}

void collect_fi(const KindPtr& k, std::set<Ident>& out) {
  std::visit(overload{
                 [&](const TypeK&) {},
                 [&](const PiK& p) {
                   collect_fi(p.domain, out);
                   collect_fi(p.body, out);
                 },
             },
             k->node);
}

}  // namespace

std::set<Name> fv_obj(const ObjPtr& m) {
  std::set<Name> out;
  collect_fv(m, out);
  return out;
}
std::set<Name> fv_fam(const FamPtr& a) {
  std::set<Name> out;
  collect_fv(a, out);
  return out;
}
std::set<Name> fv_kind(const KindPtr& k) {
  std::set<Name> out;
  collect_fv(k, out);
  return out;
}
std::set<Name> fv_ctx(const Context& g) {
  std::set<Name> out;
  for (const auto& e : g.entries) {
    out.insert(e.name);
    collect_fv(e.type, out);
  }
  return out;
}

std::set<Ident> fi_obj(const ObjPtr& m) {
  std::set<Ident> out;
  collect_fi(m, out);
  return out;
}
std::set<Ident> fi_fam(const FamPtr& a) {
  std::set<Ident> out;
  collect_fi(a, out);
  return out;
}
std::set<Ident> fi_kind(const KindPtr& k) {
  std::set<Ident> out;
  collect_fi(k, out);
  return out;
}
std::set<Ident> fi_sig(const Signature& s) {
  std::set<Ident> out;
  for (const auto& e : s.entries) {
    out.insert(e.id);
    if (const auto* f = std::get_if<FamDecl>(&e.decl))
      collect_fi(f->type, out);
    else
      collect_fi(std::get<KindDecl>(e.decl).kind, out);
  }
  return out;
}

Name maxi(const std::vector<Name>& names) {
  if (names.empty()) return Name{"v", 0};
  Name best = names.front();
  for (const auto& n : names)
    if (best < n) best = n;
  return Name{best.base, best.index + 1};
}

std::vector<Name> name_list(std::initializer_list<const std::set<Name>*> parts) {
  std::vector<Name> out;
  for (const auto* p : parts) out.insert(out.end(), p->begin(), p->end());
  return out;
}

/* ----------------------------------------------------
 * Local closure
 * ------------------------------------------------- */

bool locally_closed_obj(const ObjPtr& m, std::size_t level) {
  return std::visit(
      overload{
          [&](const OConst&) { return true; },
          [&](const Free&) { return true; },
          [&](const Bound& b) { return b.index < level; },
          [&](const Lam& l) {
            return locally_closed_fam(l.domain, level) &&
                   locally_closed_obj(l.body, level + 1);
          },
          [&](const OApp& a) {
            return locally_closed_obj(a.fun, level) &&
                   locally_closed_obj(a.arg, level);
          },
      },
      m->node);
}

bool locally_closed_fam(const FamPtr& a, std::size_t level) {
  return std::visit(
      overload{
          [&](const AConst&) { return true; },
          [&](const PiF& p) {
            return locally_closed_fam(p.domain, level) &&
                   locally_closed_fam(p.body, level + 1);
          },
          [&](const FApp& f) {
            return locally_closed_fam(f.fun, level) &&
                   locally_closed_obj(f.arg, level);
          },
      },
      a->node);
}

bool locally_closed_kind(const KindPtr& k, std::size_t level) {
  return std::visit(
      overload{
          [&](const TypeK&) { return true; },
          [&](const PiK& p) {
            return locally_closed_fam(p.domain, level) &&
                   locally_closed_kind(p.body, level + 1);
          },
      },
      k->node);
}

/* ----------------------------------------------------
 * Debug rendering
 * ------------------------------------------------- */

std::string show_obj(const ObjPtr& m) {
  return std::visit(
      overload{
          [&](const OConst& c) { return c.id; },
          [&](const Free& f) { return show_name(f.name); },
          [&](const Bound& b) { return "#" + std::to_string(b.index); },
          [&](const Lam& l) {
            return "(lam " + show_fam(l.domain) + ". " + show_obj(l.body) + ")";
          },
          [&](const OApp& a) {
            return "(" + show_obj(a.fun) + " " + show_obj(a.arg) + ")";
          },
      },
      m->node);
}

std::string show_fam(const FamPtr& a) {
  return std::visit(
      overload{
          [&](const AConst& c) { return c.id; },
          [&](const PiF& p) {
            return "(pi " + show_fam(p.domain) + ". " + show_fam(p.body) + ")";
          },
          [&](const FApp& f) {
            return "(" + show_fam(f.fun) + " " + show_obj(f.arg) + ")";
          },
      },
      a->node);
}

std::string show_kind(const KindPtr& k) {
  return std::visit(
      overload{
          [&](const TypeK&) { return std::string("type"); },
          [&](const PiK& p) {
            return "(pi " + show_fam(p.domain) + ". " + show_kind(p.body) + ")";
          },
      },
      k->node);
}

}  // namespace lf
