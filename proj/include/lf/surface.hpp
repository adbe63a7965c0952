#ifndef LF_SURFACE_HPP
#define LF_SURFACE_HPP

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "lf/declarative.hpp"
#include "lf/diag.hpp"
#include "lf/syntax.hpp"

// Concrete syntax. Terms are written with `type`, `pi x : A . B`,
// `lam x : A . M`, application by juxtaposition, and `->` as shorthand for a
// product whose body ignores its binder. Declarations end with `.`; `%`
// starts a line comment; `λ` and `Π` are accepted for `lam` and `pi`. Names
// print as `base` or `base$index`; `$` is reserved for that use.
//
// Parsing goes through a named tree in which binders carry explicit names and
// alpha-variants are distinct; conversion to the shared locally nameless core
// resolves names positionally. Printers emit one canonical spelling, so
// parse ∘ print is the identity on accepted values.

namespace lf {

struct NamedTerm;
using NamedPtr = std::shared_ptr<const NamedTerm>;

struct NType {};  // the classifier keyword at kind level
struct NConst {
  Ident id;
};
struct NVar {
  Name name;
};
struct NLam {
  Name binder;
  NamedPtr ann;
  NamedPtr body;
};
struct NPi {
  Name binder;
  NamedPtr dom;
  NamedPtr body;
};
struct NArrow {  // product that does not use its binder
  NamedPtr dom;
  NamedPtr cod;
};
struct NApp {
  NamedPtr fun;
  NamedPtr arg;
};

struct NamedTerm {
  std::variant<NType, NConst, NVar, NLam, NPi, NArrow, NApp> node;
  std::optional<SourceSpan> span;
};

NamedPtr n_type();
NamedPtr n_const(Ident id);
NamedPtr n_var(Name x);
NamedPtr n_lam(Name binder, NamedPtr ann, NamedPtr body);
NamedPtr n_pi(Name binder, NamedPtr dom, NamedPtr body);
NamedPtr n_arrow(NamedPtr dom, NamedPtr cod);
NamedPtr n_app(NamedPtr fun, NamedPtr arg);

// Structural equality, spans ignored.
bool equal(const NamedPtr& a, const NamedPtr& b);

// Conversion to locally nameless terms. xs lists the enclosing binder names,
// innermost first: a variable found at position i becomes Bound i, one not
// listed stays Free. The object level is total; the family and kind levels
// reject nodes that cannot occur there (a lambda, a bound variable used as a
// family, the classifier keyword in a family).
std::variant<ObjPtr, Diagnostic> to_ln_obj(const NamedPtr& t,
                                           const std::vector<Name>& xs);
std::variant<FamPtr, Diagnostic> to_ln_fam(const NamedPtr& t,
                                           const std::vector<Name>& xs);
std::variant<KindPtr, Diagnostic> to_ln_kind(const NamedPtr& t,
                                             const std::vector<Name>& xs);

// Conversion back to the named tree. Requires a locally closed input; binder
// names are taken from hints (outermost first) when fresh, otherwise chosen
// by the fresh-name policy, so that converting the result forward again
// reproduces the input exactly.
std::variant<NamedPtr, Diagnostic> from_ln_obj(
    const ObjPtr& m, const std::vector<Name>& hints = {});
std::variant<NamedPtr, Diagnostic> from_ln_fam(
    const FamPtr& a, const std::vector<Name>& hints = {});
std::variant<NamedPtr, Diagnostic> from_ln_kind(
    const KindPtr& k, const std::vector<Name>& hints = {});

// Canonical text. print_obj/print_fam/print_kind expect locally closed input
// and fall back to the debug rendering when handed a loose term.
std::string print_named(const NamedPtr& t);
std::string print_obj(const ObjPtr& m);
std::string print_fam(const FamPtr& a);
std::string print_kind(const KindPtr& k);

// Parsing. The signature classifies identifiers: names bound by an enclosing
// binder resolve to variables (shadowing any constant of the same spelling),
// declared identifiers resolve to constants, and anything else is a free
// variable at object level or a constant reference at family level. Binders
// are renamed apart before conversion, so source shadowing is harmless.
std::variant<NamedPtr, Diagnostic> parse_term_named(std::string_view text,
                                                    const Signature& sig);
std::variant<ObjPtr, Diagnostic> parse_obj(std::string_view text,
                                           const Signature& sig);
std::variant<FamPtr, Diagnostic> parse_fam(std::string_view text,
                                           const Signature& sig);
std::variant<KindPtr, Diagnostic> parse_kind(std::string_view text,
                                             const Signature& sig);

// Comma-separated bindings `x : A, y : B`, oldest first.
std::variant<Context, Diagnostic> parse_context(std::string_view text,
                                                const Signature& sig);

// Signature files: one declaration `ident : classifier.` per entry, oldest
// first. A classifier that parses as a kind declares a family constant;
// otherwise it must parse as a family and declares an object constant.
struct ParsedSignature {
  Signature sig;
  std::vector<std::pair<Ident, SourceSpan>> spans;  // oldest first
};
std::variant<ParsedSignature, Diagnostic> parse_signature(
    std::string_view text);
std::string print_signature(const Signature& sig);

// Derivation trees as parenthesized text. Each node spells its rule, its full
// conclusion (signature, context, and terms, oldest entries first), the fresh
// witness when present, and its premises.
std::variant<DerivPtr, Diagnostic> parse_derivation(std::string_view text);
std::string print_derivation(const Derivation& d);

}  // namespace lf

#endif  // LF_SURFACE_HPP
