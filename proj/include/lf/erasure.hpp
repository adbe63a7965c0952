#ifndef LF_ERASURE_HPP
#define LF_ERASURE_HPP

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "lf/syntax.hpp"

// Simple types and kinds: the dependency-forgetting approximations of
// families and kinds that direct the equivalence algorithm, together with
// erased signatures/contexts and their validity checks.

namespace lf {

class SimpleType;
class SimpleKind;
using STypePtr = std::shared_ptr<const SimpleType>;
using SKindPtr = std::shared_ptr<const SimpleKind>;

struct SBase {
  Ident id;
};
struct SArrow {
  STypePtr dom;
  STypePtr cod;
};

class SimpleType {
 public:
  using Node = std::variant<SBase, SArrow>;
  explicit SimpleType(Node n) : node(std::move(n)) {}
  Node node;
};

struct SType {};
struct SKArrow {
  STypePtr dom;
  SKindPtr cod;
};

class SimpleKind {
 public:
  using Node = std::variant<SType, SKArrow>;
  explicit SimpleKind(Node n) : node(std::move(n)) {}
  Node node;
};

STypePtr s_base(Ident id);
STypePtr s_arrow(STypePtr dom, STypePtr cod);
SKindPtr s_type();
SKindPtr s_karrow(STypePtr dom, SKindPtr cod);

bool equal(const STypePtr& a, const STypePtr& b);
bool equal(const SKindPtr& a, const SKindPtr& b);

std::string show_stype(const STypePtr& t);
std::string show_skind(const SKindPtr& k);

struct SCtxEntry {
  Name name;
  STypePtr type;
};

class SimpleContext {
 public:
  std::vector<SCtxEntry> entries;  // entries[0] is the most recent binding

  const STypePtr* lookup(const Name& x) const;
  SimpleContext extended(Name x, STypePtr t) const;
  std::vector<Name> names() const;
};

struct SSigEntry {
  Ident id;
  std::variant<STypePtr, SKindPtr> decl;  // (c, tau) or (a, kappa)
};

class SimpleSignature {
 public:
  std::vector<SSigEntry> entries;  // entries[0] is the most recent declaration

  const STypePtr* lookup_obj_const(const Ident& c) const;
  const SKindPtr* lookup_fam_const(const Ident& a) const;
};

// Erasure is total on raw locally nameless trees: loose indices can occur
// only inside application arguments, which erasure drops.
STypePtr erase_family(const FamPtr& a);
SKindPtr erase_kind(const KindPtr& k);
SimpleContext erase_ctx(const Context& g);
SimpleSignature erase_sig(const Signature& s);

// Validity: no repeated keys.
bool sctx_valid(const SimpleContext& d);
bool ssig_valid(const SimpleSignature& s);

}  // namespace lf

#endif
