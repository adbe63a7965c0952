#ifndef LF_EQUIVALENCE_HPP
#define LF_EQUIVALENCE_HPP

#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "lf/diag.hpp"
#include "lf/erasure.hpp"
#include "lf/syntax.hpp"

// Type-directed algorithmic equivalence for objects, families and kinds; the
// syntax-directed structural companions; the weak family-level variant
// without extensionality; and the instrumented object judgments that emit
// quasicanonical forms.

namespace lf {

/* Quasicanonical (beta-normal eta-long skeleton) and quasiatomic forms.
   Type labels and binder names are erased; lambda bodies bind index 0, so
   structural equality is alpha-equivalence. */

class QAtom;
class QCan;
using QAtomPtr = std::shared_ptr<const QAtom>;
using QCanPtr = std::shared_ptr<const QCan>;

struct QVar {
  Name name;
};
struct QBound {
  std::size_t index;
};
struct QConst {
  Ident id;
};
struct QApp {
  QAtomPtr fun;
  QCanPtr arg;
};

class QAtom {
 public:
  using Node = std::variant<QVar, QBound, QConst, QApp>;
  explicit QAtom(Node n) : node(std::move(n)) {}
  Node node;
};

struct QAt {
  QAtomPtr atom;
};
struct QLam {
  QCanPtr body;  // binds index 0
};

class QCan {
 public:
  using Node = std::variant<QAt, QLam>;
  explicit QCan(Node n) : node(std::move(n)) {}
  Node node;
};

QAtomPtr q_var(Name x);
QAtomPtr q_bound(std::size_t n);
QAtomPtr q_const(Ident id);
QAtomPtr q_app(QAtomPtr fun, QCanPtr arg);
QCanPtr q_at(QAtomPtr atom);
QCanPtr q_lam(QCanPtr body);

bool equal(const QAtomPtr& a, const QAtomPtr& b);
bool equal(const QCanPtr& a, const QCanPtr& b);

QCanPtr close_qcan(const QCanPtr& q, const Name& x, std::size_t n);
QCanPtr open_qcan(const QCanPtr& q, std::size_t n, const Name& x);
std::set<Name> fv_qcan(const QCanPtr& q);
bool locally_closed_qcan(const QCanPtr& q, std::size_t level = 0);

std::string show_qatom(const QAtomPtr& a);
std::string show_qcan(const QCanPtr& q);

/* Outcomes. Fuel exhaustion is never folded into a definite NotEqual. */

struct Equal {};
struct NotEqual {
  Diagnostic why;
};
struct OutOfFuel {};

using EquivOutcome = std::variant<Equal, NotEqual, OutOfFuel>;
using StructOutcome = std::variant<STypePtr, NotEqual, OutOfFuel>;
using FamStructOutcome = std::variant<SKindPtr, NotEqual, OutOfFuel>;

struct QEquivOk {
  QCanPtr canon;
};
struct QStructOk {
  STypePtr type;
  QAtomPtr atom;
};
using QEquivOutcome = std::variant<QEquivOk, NotEqual, OutOfFuel>;
using QStructOutcome = std::variant<QStructOk, NotEqual, OutOfFuel>;

inline bool is_equal(const EquivOutcome& o) { return std::holds_alternative<Equal>(o); }
inline bool is_out_of_fuel(const EquivOutcome& o) { return std::holds_alternative<OutOfFuel>(o); }
inline const Diagnostic* not_equal_reason(const EquivOutcome& o) {
  const auto* ne = std::get_if<NotEqual>(&o);
  return ne ? &ne->why : nullptr;
}

/* Object equivalence, directed by a simple type: at a base type both sides
   are fully weak-head normalized (left first, then right) and compared
   structurally, requiring the synthesized type to be exactly the base; at an
   arrow type both sides are applied to a maxi-fresh variable and compared at
   the codomain under the extended context. */

EquivOutcome obj_equiv(const SimpleSignature& ssig, const SimpleContext& sctx,
                       const ObjPtr& m, const ObjPtr& n, const STypePtr& tau,
                       Fuel& fuel);

// Structural companion: same variable, same constant, or application with
// structurally equivalent functions and arguments equivalent at the
// synthesized domain. Returns the synthesized simple type.
StructOutcome obj_struct(const SimpleSignature& ssig, const SimpleContext& sctx,
                         const ObjPtr& m, const ObjPtr& n, Fuel& fuel);

// Family equivalence directed by a simple kind; at kind type a Pi pair uses
// congruence and anything else delegates to fam_struct, at an arrow kind
// extensionality applies both sides to a maxi-fresh variable.
EquivOutcome fam_equiv(const SimpleSignature& ssig, const SimpleContext& sctx,
                       const FamPtr& a, const FamPtr& b, const SKindPtr& kappa,
                       Fuel& fuel);

FamStructOutcome fam_struct(const SimpleSignature& ssig, const SimpleContext& sctx,
                            const FamPtr& a, const FamPtr& b, Fuel& fuel);

// Fully syntax-directed family equivalence without the extensionality rule:
// constant, application and Pi congruence only.
EquivOutcome fam_equiv_weak(const SimpleSignature& ssig, const SimpleContext& sctx,
                            const FamPtr& a, const FamPtr& b, const SKindPtr& kappa,
                            Fuel& fuel);

EquivOutcome kind_equiv(const SimpleSignature& ssig, const SimpleContext& sctx,
                        const KindPtr& k, const KindPtr& l, Fuel& fuel);

/* Instrumented variants: succeed exactly when the plain judgments do and
   additionally return the quasicanonical/quasiatomic witness; the
   extensionality rule closes its fresh variable back to index 0. */

QEquivOutcome obj_equiv_q(const SimpleSignature& ssig, const SimpleContext& sctx,
                          const ObjPtr& m, const ObjPtr& n, const STypePtr& tau,
                          Fuel& fuel);

QStructOutcome obj_struct_q(const SimpleSignature& ssig, const SimpleContext& sctx,
                            const ObjPtr& m, const ObjPtr& n, Fuel& fuel);

// Label erasure in functional orientation: a lambda maps to QLam, other
// constructors map through the quasiatomic grammar. Absent exactly when a
// lambda occurs in atomic (spine-head) position, which has no quasiatomic
// image.
std::optional<QCanPtr> erase_labels(const ObjPtr& m);

}  // namespace lf

#endif
