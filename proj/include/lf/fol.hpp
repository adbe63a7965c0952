#ifndef LF_FOL_HPP
#define LF_FOL_HPP

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lf/diag.hpp"
#include "lf/equivalence.hpp"
#include "lf/syntax.hpp"

// A small first-order language over a fixed vocabulary (one binary function
// symbol, equality, conjunction and universal quantification) together with
// its embedding into the kernel: a fixed signature, a translation of terms
// and formulas to quasicanonical forms, the inverse translation, and
// type-directed reconstruction of a fully labelled object from a
// quasicanonical form.

namespace lf {

class FolTerm;
class FolFormula;
using FolTermPtr = std::shared_ptr<const FolTerm>;
using FolFormulaPtr = std::shared_ptr<const FolFormula>;

struct FVar {
  Name name;
};
struct FApp2 {  // the single binary function symbol applied to two terms
  FolTermPtr t1;
  FolTermPtr t2;
};

class FolTerm {
 public:
  using Node = std::variant<FVar, FApp2>;
  explicit FolTerm(Node n) : node(std::move(n)) {}
  Node node;
};

struct FEq {
  FolTermPtr lhs;
  FolTermPtr rhs;
};
struct FAnd {
  FolFormulaPtr lhs;
  FolFormulaPtr rhs;
};
struct FForall {
  Name bound;
  FolFormulaPtr body;
};

class FolFormula {
 public:
  using Node = std::variant<FEq, FAnd, FForall>;
  explicit FolFormula(Node n) : node(std::move(n)) {}
  Node node;
};

FolTermPtr fol_var(Name x);
FolTermPtr fol_app(FolTermPtr t1, FolTermPtr t2);
FolFormulaPtr fol_eq(FolTermPtr lhs, FolTermPtr rhs);
FolFormulaPtr fol_and(FolFormulaPtr lhs, FolFormulaPtr rhs);
FolFormulaPtr fol_forall(Name bound, FolFormulaPtr body);

// Structural equality; binder names matter.
bool equal(const FolTermPtr& a, const FolTermPtr& b);
bool equal(const FolFormulaPtr& a, const FolFormulaPtr& b);

// Equality up to consistent renaming of bound variables.
bool alpha_equal(const FolFormulaPtr& a, const FolFormulaPtr& b);

std::set<Name> fol_free_vars(const FolTermPtr& t);
std::set<Name> fol_free_vars(const FolFormulaPtr& f);

// The fixed embedding signature: individuals and propositions as the two
// base families, then the function symbol, equality, conjunction, and the
// quantifier constant taking a propositional function.
const Signature& sigma_fo();

// Translation to quasicanonical forms. Every free variable of the input must
// be listed in scope (outermost first); a variable not in scope yields an
// UnboundFolVariable diagnostic. Terms translate to quasiatomic forms over
// the individuals, formulas to quasiatomic forms over the propositions; a
// quantifier produces its constant applied to a one-binder abstraction whose
// bound variable is closed to index 0.
std::variant<QCanPtr, Diagnostic> encode_term(const std::vector<Name>& scope,
                                              const FolTermPtr& t);
std::variant<QCanPtr, Diagnostic> encode_formula(const std::vector<Name>& scope,
                                                 const FolFormulaPtr& f);

// Exact inverse of the translation on its image over the same scope; any
// quasicanonical form outside that image is rejected with NotInImage naming
// the offending node. Binder names are regenerated by the fresh-name policy,
// so decoding a translated quantifier recovers the formula up to the choice
// of bound names.
std::variant<FolTermPtr, Diagnostic> decode_term(const std::vector<Name>& scope,
                                                 const QCanPtr& q);
std::variant<FolFormulaPtr, Diagnostic> decode_formula(
    const std::vector<Name>& scope, const QCanPtr& q);

// Type-directed reconstruction of a fully labelled object from a
// quasicanonical form: at a product the form must be an abstraction and the
// binder is annotated with the product's domain; at an atomic family the
// form must be quasiatomic and its head is synthesized from the signature
// and context, with the synthesized type compared to the expected one.
// Succeeds with an object whose label erasure is the input and whose
// synthesized type matches expected; fails with CannotElaborate otherwise.
std::variant<ObjPtr, Diagnostic> elaborate(const Signature& sig,
                                           const Context& ctx, const QCanPtr& q,
                                           const FamPtr& expected, Fuel& fuel);

// Concrete syntax: `x`, `f(t,u)`, `t = u`, `phi & psi` (right associative),
// `forall x. phi` (body extends as far right as possible). Parenthesized
// formulas group; `%` starts a comment to end of line.
std::variant<FolTermPtr, Diagnostic> parse_fol_term(std::string_view text);
std::variant<FolFormulaPtr, Diagnostic> parse_fol_formula(std::string_view text);
std::string print_fol_term(const FolTermPtr& t);
std::string print_fol_formula(const FolFormulaPtr& f);

}  // namespace lf

#endif
