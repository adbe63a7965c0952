#include "lf/erasure.hpp"

#include <set>

#include "lf/detail.hpp"

namespace lf {

using detail::overload;

STypePtr s_base(Ident id) {
  return std::make_shared<const SimpleType>(SBase{std::move(id)});
}
STypePtr s_arrow(STypePtr dom, STypePtr cod) {
  return std::make_shared<const SimpleType>(SArrow{std::move(dom), std::move(cod)});
}
SKindPtr s_type() {
  static const SKindPtr k = std::make_shared<const SimpleKind>(SType{});
  return k;
}
SKindPtr s_karrow(STypePtr dom, SKindPtr cod) {
  return std::make_shared<const SimpleKind>(SKArrow{std::move(dom), std::move(cod)});
}

bool equal(const STypePtr& a, const STypePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return std::visit(
      overload{
          [&](const SBase& x) {
            const auto* y = std::get_if<SBase>(&b->node);
            return y && x.id == y->id;
          },
          [&](const SArrow& x) {
            const auto* y = std::get_if<SArrow>(&b->node);
            return y && equal(x.dom, y->dom) && equal(x.cod, y->cod);
          },
      },
      a->node);
}

bool equal(const SKindPtr& a, const SKindPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return std::visit(
      overload{
          [&](const SType&) { return std::holds_alternative<SType>(b->node); },
          [&](const SKArrow& x) {
            const auto* y = std::get_if<SKArrow>(&b->node);
            return y && equal(x.dom, y->dom) && equal(x.cod, y->cod);
          },
      },
      a->node);
}

std::string show_stype(const STypePtr& t) {
  return std::visit(
      overload{
          [&](const SBase& b) { return b.id + "-"; },
          [&](const SArrow& a) {
            std::string dom = show_stype(a.dom);
            if (std::holds_alternative<SArrow>(a.dom->node)) dom = "(" + dom + ")";
            return dom + " -> " + show_stype(a.cod);
          },
      },
      t->node);
}

std::string show_skind(const SKindPtr& k) {
  return std::visit(
      overload{
          [&](const SType&) { return std::string("type-"); },
          [&](const SKArrow& a) {
            std::string dom = show_stype(a.dom);
            if (std::holds_alternative<SArrow>(a.dom->node)) dom = "(" + dom + ")";
            return dom + " -> " + show_skind(a.cod);
          },
      },
      k->node);
}

const STypePtr* SimpleContext::lookup(const Name& x) const {
  for (const auto& e : entries)
    if (e.name == x) return &e.type;
  return nullptr;
}

SimpleContext SimpleContext::extended(Name x, STypePtr t) const {
  SimpleContext out;
  out.entries.reserve(entries.size() + 1);
  out.entries.push_back(SCtxEntry{std::move(x), std::move(t)});
  out.entries.insert(out.entries.end(), entries.begin(), entries.end());
  return out;
}

std::vector<Name> SimpleContext::names() const {
  std::vector<Name> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.name);
  return out;
}

const STypePtr* SimpleSignature::lookup_obj_const(const Ident& c) const {
  for (const auto& e : entries) {
    if (e.id != c) continue;
    if (const auto* t = std::get_if<STypePtr>(&e.decl)) return t;
    return nullptr;
  }
  return nullptr;
}

const SKindPtr* SimpleSignature::lookup_fam_const(const Ident& a) const {
  for (const auto& e : entries) {
    if (e.id != a) continue;
    if (const auto* k = std::get_if<SKindPtr>(&e.decl)) return k;
    return nullptr;
  }
  return nullptr;
}

STypePtr erase_family(const FamPtr& a) {
  return std::visit(
      overload{
          [&](const AConst& c) { return s_base(c.id); },
          [&](const PiF& p) {
            return s_arrow(erase_family(p.domain), erase_family(p.body));
          },
          [&](const FApp& f) { return erase_family(f.fun); },
      },
      a->node);
}

SKindPtr erase_kind(const KindPtr& k) {
  return std::visit(
      overload{
          [&](const TypeK&) { return s_type(); },
          [&](const PiK& p) {
            return s_karrow(erase_family(p.domain), erase_kind(p.body));
          },
      },
      k->node);
}

SimpleContext erase_ctx(const Context& g) {
  SimpleContext out;
  out.entries.reserve(g.entries.size());
  for (const auto& e : g.entries)
    out.entries.push_back(SCtxEntry{e.name, erase_family(e.type)});
  return out;
}

SimpleSignature erase_sig(const Signature& s) {
  SimpleSignature out;
  out.entries.reserve(s.entries.size());
  for (const auto& e : s.entries) {
    if (const auto* f = std::get_if<FamDecl>(&e.decl))
      out.entries.push_back(SSigEntry{e.id, erase_family(f->type)});
    else
      out.entries.push_back(SSigEntry{e.id, erase_kind(std::get<KindDecl>(e.decl).kind)});
  }
  return out;
}

bool sctx_valid(const SimpleContext& d) {
  std::set<Name> seen;
  for (const auto& e : d.entries)
    if (!seen.insert(e.name).second) return false;
  return true;
}

bool ssig_valid(const SimpleSignature& s) {
  std::set<Ident> seen;
  for (const auto& e : s.entries)
    if (!seen.insert(e.id).second) return false;
  return true;
}

}  // namespace lf
