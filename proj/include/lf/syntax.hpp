#ifndef LF_SYNTAX_HPP
#define LF_SYNTAX_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

// Locally nameless LF terms at the three syntactic levels, plus signatures,
// contexts, substitutions, free-variable/identifier computation and the
// deterministic fresh-name chooser. Bound variables are de Bruijn indices,
// free variables carry names; structural equality on locally closed terms
// coincides with alpha-equivalence of the named presentation.

namespace lf {

using Ident = std::string;

struct Name {
  std::string base;
  std::uint64_t index = 0;
  friend auto operator<=>(const Name&, const Name&) = default;
};

// Renders "base" when index is 0, "base$index" otherwise.
std::string show_name(const Name& x);

class KindExpr;
class FamilyExpr;
class ObjectExpr;
using KindPtr = std::shared_ptr<const KindExpr>;
using FamPtr = std::shared_ptr<const FamilyExpr>;
using ObjPtr = std::shared_ptr<const ObjectExpr>;

struct TypeK {};
struct PiK {
  FamPtr domain;
  KindPtr body;  // binds index 0
};

struct AConst {
  Ident id;
};
struct PiF {
  FamPtr domain;
  FamPtr body;  // binds index 0
};
struct FApp {
  FamPtr fun;
  ObjPtr arg;
};

struct OConst {
  Ident id;
};
struct Free {
  Name name;
};
struct Bound {
  std::size_t index;
};
struct Lam {
  FamPtr domain;
  ObjPtr body;  // binds index 0
};
struct OApp {
  ObjPtr fun;
  ObjPtr arg;
};

class KindExpr {
 public:
  using Node = std::variant<TypeK, PiK>;
  explicit KindExpr(Node n) : node(std::move(n)) {}
  Node node;
};

class FamilyExpr {
 public:
  using Node = std::variant<AConst, PiF, FApp>;
  explicit FamilyExpr(Node n) : node(std::move(n)) {}
  Node node;
};

class ObjectExpr {
 public:
  using Node = std::variant<OConst, Free, Bound, Lam, OApp>;
  explicit ObjectExpr(Node n) : node(std::move(n)) {}
  Node node;
};

KindPtr type_k();
KindPtr pi_k(FamPtr domain, KindPtr body);
FamPtr a_const(Ident id);
FamPtr pi_f(FamPtr domain, FamPtr body);
FamPtr f_app(FamPtr fun, ObjPtr arg);
ObjPtr o_const(Ident id);
ObjPtr o_free(Name x);
ObjPtr o_bound(std::size_t n);
ObjPtr o_lam(FamPtr domain, ObjPtr body);
ObjPtr o_app(ObjPtr fun, ObjPtr arg);

bool equal(const KindPtr& k, const KindPtr& l);
bool equal(const FamPtr& a, const FamPtr& b);
bool equal(const ObjPtr& m, const ObjPtr& n);

/* Signatures, contexts, substitutions: cons lists, most recent entry first. */

struct FamDecl {
  FamPtr type;  // c : A
};
struct KindDecl {
  KindPtr kind;  // a : K
};

struct SigEntry {
  Ident id;
  std::variant<FamDecl, KindDecl> decl;
};

class Signature {
 public:
  std::vector<SigEntry> entries;  // entries[0] is the most recent declaration

  // Most recent binding, or null. Each accessor matches only its own
  // declaration form: an Ident declared as a family constant is not an
  // object constant, and vice versa.
  const FamPtr* lookup_obj_const(const Ident& c) const;
  const KindPtr* lookup_fam_const(const Ident& a) const;
  bool declares(const Ident& id) const;
  Signature extended(SigEntry e) const;
};

bool equal(const Signature& s1, const Signature& s2);

struct CtxEntry {
  Name name;
  FamPtr type;
};

class Context {
 public:
  std::vector<CtxEntry> entries;  // entries[0] is the most recent binding

  const FamPtr* lookup(const Name& x) const;
  bool binds(const Name& x) const;
  Context extended(Name x, FamPtr a) const;
  // Drops the most recent entry; precondition: nonempty.
  Context rest() const;
};

bool equal(const Context& g1, const Context& g2);

struct SubstEntry {
  Name name;
  ObjPtr value;
};

// Simultaneous substitution; lookup returns the first matching binding and
// unmatched names map to themselves.
class NamedSubst {
 public:
  std::vector<SubstEntry> entries;  // entries[0] is consulted first
  const ObjPtr* lookup(const Name& x) const;
};

/* Substitution operators. open replaces a loose index by a term, close
   abstracts a free name into an index; both adjust the index under binders. */

ObjPtr open_obj(const ObjPtr& m, std::size_t n, const ObjPtr& v);
FamPtr open_fam(const FamPtr& a, std::size_t n, const ObjPtr& v);
KindPtr open_kind(const KindPtr& k, std::size_t n, const ObjPtr& v);

ObjPtr close_obj(const ObjPtr& m, const Name& x, std::size_t n);
FamPtr close_fam(const FamPtr& a, const Name& x, std::size_t n);
KindPtr close_kind(const KindPtr& k, const Name& x, std::size_t n);

ObjPtr subst_free_obj(const ObjPtr& m, const Name& x, const ObjPtr& v);
FamPtr subst_free_fam(const FamPtr& a, const Name& x, const ObjPtr& v);
KindPtr subst_free_kind(const KindPtr& k, const Name& x, const ObjPtr& v);

ObjPtr subst_multi_obj(const ObjPtr& m, const NamedSubst& s);
FamPtr subst_multi_fam(const FamPtr& a, const NamedSubst& s);
KindPtr subst_multi_kind(const KindPtr& k, const NamedSubst& s);

/* Free names and identifiers, deduplicated and ordered. */

std::set<Name> fv_obj(const ObjPtr& m);
std::set<Name> fv_fam(const FamPtr& a);
std::set<Name> fv_kind(const KindPtr& k);
// Declared names together with names free in the stored types.
std::set<Name> fv_ctx(const Context& g);

std::set<Ident> fi_obj(const ObjPtr& m);
std::set<Ident> fi_fam(const FamPtr& a);
std::set<Ident> fi_kind(const KindPtr& k);
// Declared identifiers together with identifiers occurring in stored
// classifiers.
std::set<Ident> fi_sig(const Signature& s);

// Highest listed name with its index increased by one; on an empty list the
// reserved base "v" at index 0. maxi(L) is strictly greater than, hence
// distinct from, every element of L.
Name maxi(const std::vector<Name>& names);

// Collects sets into a list suitable for maxi.
std::vector<Name> name_list(std::initializer_list<const std::set<Name>*> parts);

/* Loose-index detection. locally_closed_* at level k holds when every Bound
   index under b extra binders is below k + b; public entry points require
   level 0. */

bool locally_closed_obj(const ObjPtr& m, std::size_t level = 0);
bool locally_closed_fam(const FamPtr& a, std::size_t level = 0);
bool locally_closed_kind(const KindPtr& k, std::size_t level = 0);

/* Compact debug rendering used in diagnostics; the round-trip printer lives
   in the surface layer. */

std::string show_obj(const ObjPtr& m);
std::string show_fam(const FamPtr& a);
std::string show_kind(const KindPtr& k);

}  // namespace lf

#endif
