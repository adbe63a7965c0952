#ifndef LF_TYPECHECK_HPP
#define LF_TYPECHECK_HPP

#include <optional>
#include <variant>

#include "lf/diag.hpp"
#include "lf/equivalence.hpp"
#include "lf/erasure.hpp"
#include "lf/syntax.hpp"

// Bidirectional checking for signatures, contexts, objects, families and
// kinds. Validity of the ambient signature and context is established once
// at the query boundary and witnessed by tokens that also cache the erased
// forms consumed by the equivalence algorithm.

namespace lf {

class ValidSig {
 public:
  const Signature& sig() const { return sig_; }
  const SimpleSignature& erased() const { return erased_; }

 private:
  friend std::variant<ValidSig, Diagnostic> check_sig(const Signature&, Fuel&);
  ValidSig(Signature s, SimpleSignature e)
      : sig_(std::move(s)), erased_(std::move(e)) {}
  Signature sig_;
  SimpleSignature erased_;
};

class ValidCtx {
 public:
  const Context& ctx() const { return ctx_; }
  const SimpleContext& erased() const { return erased_; }

 private:
  friend std::variant<ValidCtx, Diagnostic> check_ctx(const ValidSig&,
                                                      const Context&, Fuel&);
  ValidCtx(Context g, SimpleContext d)
      : ctx_(std::move(g)), erased_(std::move(d)) {}
  Context ctx_;
  SimpleContext erased_;
};

using SigResult = std::variant<ValidSig, Diagnostic>;
using CtxResult = std::variant<ValidCtx, Diagnostic>;
using ObjResult = std::variant<FamPtr, Diagnostic>;   // synthesized type
using FamResult = std::variant<KindPtr, Diagnostic>;  // synthesized kind
using KindResult = std::optional<Diagnostic>;         // absent means well formed

// Checks declarations oldest first: classifiers are validated against the
// preceding prefix and identifiers may not repeat.
SigResult check_sig(const Signature& sig, Fuel& fuel);

// Checks bindings oldest first under the given signature; each type must
// have kind type and names may not repeat.
CtxResult check_ctx(const ValidSig& vs, const Context& g, Fuel& fuel);

// Synthesizes the type of a locally closed object. Application arguments
// are checked against the Pi domain up to definitional equivalence and the
// codomain is instantiated with the argument.
ObjResult synth_obj(const ValidSig& vs, const ValidCtx& vc, const ObjPtr& m,
                    Fuel& fuel);

// Checks a locally closed object against an expected type.
KindResult check_obj(const ValidSig& vs, const ValidCtx& vc, const ObjPtr& m,
                     const FamPtr& a, Fuel& fuel);

// Synthesizes the kind of a locally closed family.
FamResult synth_fam(const ValidSig& vs, const ValidCtx& vc, const FamPtr& a,
                    Fuel& fuel);

// Checks that a locally closed kind is well formed.
KindResult check_kind(const ValidSig& vs, const ValidCtx& vc, const KindPtr& k,
                      Fuel& fuel);

}  // namespace lf

#endif
