#ifndef LF_DECLARATIVE_HPP
#define LF_DECLARATIVE_HPP

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lf/diag.hpp"
#include "lf/syntax.hpp"

// Derivation trees over the declarative judgments and their checker. Each
// node names a rule, states its conclusion in full (including signature and
// context) and carries one subtree per premise. Rules that open a binder
// additionally record the fresh name used; the checker recomputes every
// opened body and rejects stale or captured witnesses.

namespace lf {

struct SigOk {
  Signature sig;
};
struct CtxOk {
  Signature sig;
  Context ctx;
};
struct ObjTy {
  Signature sig;
  Context ctx;
  ObjPtr obj;
  FamPtr type;
};
struct FamKi {
  Signature sig;
  Context ctx;
  FamPtr fam;
  KindPtr kind;
};
struct KindOk {
  Signature sig;
  Context ctx;
  KindPtr kind;
};
struct ObjEq {
  Signature sig;
  Context ctx;
  ObjPtr lhs;
  ObjPtr rhs;
  FamPtr type;
};
struct FamEq {
  Signature sig;
  Context ctx;
  FamPtr lhs;
  FamPtr rhs;
  KindPtr kind;
};
struct KindEq {
  Signature sig;
  Context ctx;
  KindPtr lhs;
  KindPtr rhs;
};

using JudgmentForm =
    std::variant<SigOk, CtxOk, ObjTy, FamKi, KindOk, ObjEq, FamEq, KindEq>;

bool equal(const JudgmentForm& a, const JudgmentForm& b);
std::string show_judgment(const JudgmentForm& j);

struct Derivation;
using DerivPtr = std::shared_ptr<const Derivation>;

struct Derivation {
  std::string rule;
  JudgmentForm conclusion;
  std::vector<DerivPtr> premises;
  std::optional<Name> fresh_witness;
};

DerivPtr deriv(std::string rule, JudgmentForm conclusion,
               std::vector<DerivPtr> premises = {},
               std::optional<Name> fresh_witness = std::nullopt);

// The thirty-five rule identifiers, grouped by judgment:
//   sig-empty sig-obj sig-fam
//   ctx-empty ctx-bind
//   ty-const ty-var ty-lam ty-app ty-conv
//   ki-const ki-pi ki-app ki-conv
//   kd-type kd-pi
//   oeq-var oeq-const oeq-lam oeq-app oeq-ext oeq-beta oeq-sym oeq-trans
//   oeq-conv
//   feq-const feq-pi feq-app feq-sym feq-trans feq-conv
//   keq-type keq-pi keq-sym keq-trans
// ty-lam, ki-pi, kd-pi, oeq-lam, oeq-ext, oeq-beta, feq-pi and keq-pi bind a
// variable and require a fresh witness; every other rule must not carry one.
bool rule_needs_witness(const std::string& rule);
bool rule_known(const std::string& rule);

// Validates the tree bottom-up: every node must use a known rule, conclude a
// judgment of the matching form with locally closed components, present its
// premises in the stated order, and satisfy the rule's side conditions.
// Absence of a result means the derivation is valid.
std::optional<Diagnostic> check_derivation(const Derivation& d);

}  // namespace lf

#endif
