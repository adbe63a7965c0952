#include <string>
#include <variant>
#include <vector>

#include "doctest.h"
#include "deriv_builders.hpp"
#include "helpers.hpp"
#include "lf/declarative.hpp"
#include "lf/surface.hpp"
#include "lf/syntax.hpp"

using namespace lf;

namespace {

template <class T, class V>
T unwrap(V v) {
  if (auto* d = std::get_if<Diagnostic>(&v))
    FAIL(d->code << ": " << d->message << " [" << d->subterm << "]");
  return std::get<T>(std::move(v));
}

template <class V>
Diagnostic expect_err(V v) {
  REQUIRE(std::holds_alternative<Diagnostic>(v));
  return std::get<Diagnostic>(std::move(v));
}

ObjPtr pobj(std::string_view text, const Signature& sig) {
  return unwrap<ObjPtr>(parse_obj(text, sig));
}
FamPtr pfam(std::string_view text, const Signature& sig) {
  return unwrap<FamPtr>(parse_fam(text, sig));
}
KindPtr pkind(std::string_view text, const Signature& sig) {
  return unwrap<KindPtr>(parse_kind(text, sig));
}

}  // namespace

TEST_CASE("named to locally nameless on the standard examples") {
  Name x{"x", 0}, y{"y", 0};
  NamedPtr a = n_var(Name{"a", 0});
  NamedPtr b = n_var(Name{"b", 0});

  SUBCASE("a variable listed in the environment becomes an index") {
    ObjPtr m = unwrap<ObjPtr>(to_ln_obj(n_var(x), {x}));
    CHECK(equal(m, o_bound(0)));
  }
  SUBCASE("a variable not listed stays free") {
    ObjPtr m = unwrap<ObjPtr>(to_ln_obj(n_var(x), {y}));
    CHECK(equal(m, o_free(x)));
  }
  SUBCASE("the respected binder") {
    NamedPtr t = n_lam(x, a, n_var(x));
    ObjPtr m = unwrap<ObjPtr>(to_ln_obj(t, {}));
    CHECK(equal(m, o_lam(a_const("a"), o_bound(0))));
  }
  SUBCASE("an outer binder is reachable through an inner one") {
    NamedPtr t = n_lam(x, a, n_lam(y, b, n_var(x)));
    ObjPtr m = unwrap<ObjPtr>(to_ln_obj(t, {}));
    CHECK(equal(m, o_lam(a_const("a"), o_lam(a_const("b"), o_bound(1)))));
  }
  SUBCASE("shadowing picks the innermost binder") {
    NamedPtr t = n_lam(x, a, n_lam(x, b, n_var(x)));
    ObjPtr m = unwrap<ObjPtr>(to_ln_obj(t, {}));
    CHECK(equal(m, o_lam(a_const("a"), o_lam(a_const("b"), o_bound(0)))));
  }
  SUBCASE("family and kind levels reject impossible nodes") {
    CHECK(expect_err(to_ln_fam(n_lam(x, a, n_var(x)), {})).code ==
          code::parse_error);
    CHECK(expect_err(to_ln_fam(n_var(x), {x})).code == code::parse_error);
    CHECK(expect_err(to_ln_fam(n_type(), {})).code == code::parse_error);
    CHECK(expect_err(to_ln_kind(n_var(x), {})).code == code::parse_error);
    CHECK(expect_err(to_ln_obj(n_type(), {})).code == code::parse_error);
    CHECK(expect_err(to_ln_obj(n_pi(x, a, b), {})).code == code::parse_error);
  }
}

TEST_CASE("locally nameless to named") {
  SUBCASE("a closed lambda gets the first generated binder name") {
    NamedPtr t = unwrap<NamedPtr>(from_ln_obj(o_lam(a_const("a"), o_bound(0))));
    const auto& l = std::get<NLam>(t->node);
    CHECK(l.binder == Name{"v", 0});
    CHECK(print_named(t) == "lam v : a . v");
  }
  SUBCASE("a loose index is rejected") {
    CHECK(expect_err(from_ln_obj(o_bound(0))).code == code::loose_index);
    CHECK(expect_err(from_ln_fam(pi_f(a_const("a"), f_app(a_const("p"), o_bound(1)))))
              .code == code::loose_index);
  }
  SUBCASE("hints are consumed outermost first") {
    ObjPtr m = o_lam(a_const("a"), o_lam(a_const("b"), o_bound(1)));
    NamedPtr t =
        unwrap<NamedPtr>(from_ln_obj(m, {Name{"x", 0}, Name{"y", 0}}));
    CHECK(print_named(t) == "lam x : a . lam y : b . x");
  }
  SUBCASE("a hint colliding with a free variable is skipped") {
    ObjPtr m = o_lam(a_const("a"), o_app(o_bound(0), o_free(Name{"x", 0})));
    NamedPtr t = unwrap<NamedPtr>(from_ln_obj(m, {Name{"x", 0}}));
    const auto& l = std::get<NLam>(t->node);
    CHECK(l.binder == Name{"x", 1});
    CHECK(print_named(t) == "lam x$1 : a . x$1 x");
  }
  SUBCASE("generated names avoid every free variable") {
    ObjPtr m = o_lam(a_const("a"), o_app(o_bound(0), o_free(Name{"v", 4})));
    NamedPtr t = unwrap<NamedPtr>(from_ln_obj(m));
    const auto& l = std::get<NLam>(t->node);
    CHECK(l.binder == Name{"v", 5});
  }
}

TEST_CASE("parsing resolves identifiers against scope then signature") {
  Signature sig = lftest::fo_sig();
  SUBCASE("a declared identifier is a constant") {
    CHECK(equal(pobj("f", sig), o_const("f")));
    CHECK(equal(pfam("o", sig), a_const("o")));
  }
  SUBCASE("an undeclared identifier is a free variable or atomic family") {
    CHECK(equal(pobj("z", sig), o_free(Name{"z", 0})));
    CHECK(equal(pfam("zz", sig), a_const("zz")));
  }
  SUBCASE("a binder shadows a declared constant") {
    ObjPtr m = pobj("lam f : iota . f", sig);
    CHECK(equal(m, o_lam(a_const("iota"), o_bound(0))));
  }
  SUBCASE("application is left associative and binds tighter than arrows") {
    ObjPtr m = pobj("f x y", sig);
    CHECK(equal(m, o_app(o_app(o_const("f"), o_free(Name{"x", 0})),
                         o_free(Name{"y", 0}))));
    KindPtr k = pkind("iota -> iota -> type", sig);
    CHECK(equal(k, pi_k(a_const("iota"), pi_k(a_const("iota"), type_k()))));
    KindPtr k2 = pkind("(iota -> iota) -> type", sig);
    CHECK_FALSE(equal(k, k2));
  }
  SUBCASE("alpha variant sources parse to the same term") {
    ObjPtr m1 = pobj("lam x : iota . lam y : iota . f x y", sig);
    ObjPtr m2 = pobj("lam u : iota . lam w : iota . f u w", sig);
    CHECK(equal(m1, m2));
  }
  SUBCASE("unicode binder keywords are aliases") {
    CHECK(equal(pobj("\xce\xbb x : iota . x", sig), pobj("lam x : iota . x", sig)));
    CHECK(equal(pkind("\xce\xa0 x : iota . type", sig),
                pkind("pi x : iota . type", sig)));
  }
  SUBCASE("an unused explicit product equals its arrow form") {
    CHECK(equal(pkind("pi x : iota . type", sig), pkind("iota -> type", sig)));
    CHECK(equal(pfam("pi x : o . o", sig), pfam("o -> o", sig)));
  }
  SUBCASE("comments and layout are ignored") {
    ObjPtr m = pobj("f % first argument follows\n  x % then\n y", sig);
    CHECK(equal(m, pobj("f x y", sig)));
  }
  SUBCASE("indexed names round through the name grammar") {
    CHECK(equal(pobj("x$3", sig), o_free(Name{"x", 3})));
    CHECK(equal(pobj("x$0", sig), o_free(Name{"x", 0})));
    CHECK(equal(pobj("lam x$2 : iota . x$2", sig),
                o_lam(a_const("iota"), o_bound(0))));
  }
  SUBCASE("a dependent product parses at every level it may appear") {
    Signature dep;
    dep = dep.extended({"a", KindDecl{type_k()}});
    dep = dep.extended({"arr", KindDecl{pi_k(a_const("a"), type_k())}});
    FamPtr f = pfam("pi x : a . arr x", dep);
    CHECK(equal(f, pi_f(a_const("a"), f_app(a_const("arr"), o_bound(0)))));
    KindPtr k = pkind("pi x : a . arr x -> type", dep);
    CHECK(equal(k, pi_k(a_const("a"),
                        pi_k(f_app(a_const("arr"), o_bound(0)), type_k()))));
  }
}

TEST_CASE("parse errors carry spans and stable codes") {
  Signature sig = lftest::fo_sig();
  SUBCASE("unexpected characters") {
    Diagnostic d = expect_err(parse_obj("f @ x", sig));
    CHECK(d.code == code::parse_error);
    REQUIRE(d.span.has_value());
    CHECK(d.span->begin == 2);
  }
  SUBCASE("a bare dash is not an arrow") {
    CHECK(expect_err(parse_obj("iota - o", sig)).code == code::parse_error);
  }
  SUBCASE("malformed name indices") {
    CHECK(expect_err(parse_obj("x$", sig)).code == code::parse_error);
    CHECK(expect_err(parse_obj("x$3y", sig)).code == code::parse_error);
  }
  SUBCASE("unbalanced parentheses") {
    CHECK(expect_err(parse_obj("(f x", sig)).code == code::parse_error);
    CHECK(expect_err(parse_obj("f x)", sig)).code == code::parse_error);
  }
  SUBCASE("a missing binder body") {
    CHECK(expect_err(parse_obj("lam x : iota .", sig)).code ==
          code::parse_error);
  }
  SUBCASE("trailing input is rejected") {
    CHECK(expect_err(parse_obj("f x .", sig)).code == code::parse_error);
  }
}

TEST_CASE("printing produces minimal canonical text that reparses") {
  Signature sig = lftest::fo_sig();
  std::vector<std::string> objs = {
      "f x y",
      "lam v : iota . v",
      "lam v : iota . lam v$1 : iota . eq v v$1",
      "and (eq x x) (eq y y)",
      "all (lam v : iota . eq v v)",
      "f (f x y) (f y x)",
  };
  for (const auto& s : objs) {
    CAPTURE(s);
    ObjPtr m = pobj(s, sig);
    CHECK(print_obj(m) == s);
    CHECK(equal(pobj(print_obj(m), sig), m));
  }
  std::vector<std::string> fams = {
      "iota",
      "iota -> iota -> o",
      "(iota -> o) -> o",
      "eq x y",
      "pi v : iota . eq v v",
      "(pi v : iota . eq v v) -> o",
  };
  for (const auto& s : fams) {
    CAPTURE(s);
    FamPtr a = pfam(s, sig);
    CHECK(print_fam(a) == s);
    CHECK(equal(pfam(print_fam(a), sig), a));
  }
  std::vector<std::string> kinds = {
      "type",
      "iota -> type",
      "(iota -> o) -> type",
      "pi v : iota . eq v v -> type",
  };
  for (const auto& s : kinds) {
    CAPTURE(s);
    KindPtr k = pkind(s, sig);
    CHECK(print_kind(k) == s);
    CHECK(equal(pkind(print_kind(k), sig), k));
  }
}

TEST_CASE("printing a term with a loose index falls back to a debug form") {
  std::string s = print_obj(o_bound(3));
  CHECK(!s.empty());
}

TEST_CASE("signature files") {
  SUBCASE("empty input is the empty signature") {
    ParsedSignature ps = unwrap<ParsedSignature>(parse_signature(""));
    CHECK(ps.sig.entries.empty());
    CHECK(ps.spans.empty());
  }
  SUBCASE("the first-order signature round trips") {
    std::string text = print_signature(lftest::fo_sig());
    ParsedSignature ps = unwrap<ParsedSignature>(parse_signature(text));
    CHECK(equal(ps.sig, lftest::fo_sig()));
    CHECK(ps.spans.size() == 6);
    CHECK(ps.spans.front().first == "iota");
    CHECK(ps.spans.back().first == "all");
    CHECK(print_signature(ps.sig) == text);
  }
  SUBCASE("declarations see only what precedes them") {
    std::string text = "a : type.\nf : a -> a.\n";
    ParsedSignature ps = unwrap<ParsedSignature>(parse_signature(text));
    const FamPtr* fa = ps.sig.lookup_obj_const("f");
    REQUIRE(fa != nullptr);
    CHECK(equal(*fa, pi_f(a_const("a"), a_const("a"))));
  }
  SUBCASE("a classifier ending in the kind keyword declares a family") {
    std::string text = "a : type.\narr : a -> type.\n";
    ParsedSignature ps = unwrap<ParsedSignature>(parse_signature(text));
    CHECK(ps.sig.lookup_fam_const("arr") != nullptr);
    CHECK(ps.sig.lookup_obj_const("arr") == nullptr);
  }
  SUBCASE("duplicates are rejected with the offending span") {
    Diagnostic d = expect_err(parse_signature("a : type.\na : type.\n"));
    CHECK(d.code == code::duplicate_ident);
    REQUIRE(d.span.has_value());
    CHECK(d.span->begin == 10);
    CHECK(d.span->line == 2);
  }
  SUBCASE("a dollar name cannot be declared") {
    CHECK(expect_err(parse_signature("a$1 : type.")).code ==
          code::parse_error);
  }
  SUBCASE("an empty classifier is a parse error at the dot") {
    Diagnostic d = expect_err(parse_signature("c : ."));
    CHECK(d.code == code::parse_error);
    REQUIRE(d.span.has_value());
    CHECK(d.span->begin == 4);
  }
  SUBCASE("a dependent signature round trips") {
    std::string text =
        "a : type.\n"
        "arr : a -> type.\n"
        "f : pi v : a . arr v.\n"
        "mk : pi v : a . arr v -> a.\n";
    ParsedSignature ps = unwrap<ParsedSignature>(parse_signature(text));
    CHECK(print_signature(ps.sig) == text);
  }
}

TEST_CASE("context strings") {
  Signature sig = lftest::fo_sig();
  SUBCASE("empty text is the empty context") {
    Context g = unwrap<Context>(parse_context("", sig));
    CHECK(g.entries.empty());
  }
  SUBCASE("entries are oldest first and newest at the front") {
    Context g = unwrap<Context>(parse_context("x : iota, p : eq x x", sig));
    REQUIRE(g.entries.size() == 2);
    CHECK(g.entries[0].name == Name{"p", 0});
    CHECK(equal(g.entries[0].type,
                f_app(f_app(a_const("eq"), o_free(Name{"x", 0})),
                      o_free(Name{"x", 0}))));
    CHECK(g.entries[1].name == Name{"x", 0});
  }
  SUBCASE("a trailing comma is rejected") {
    CHECK(expect_err(parse_context("x : iota,", sig)).code ==
          code::parse_error);
  }
}

TEST_CASE("derivation files round trip and stay checkable") {
  // Trimmed signature: derivation size grows multiplicatively with the
  // number of declarations, so the full first-order one is overkill here.
  Signature fo3;
  fo3 = fo3.extended({"iota", KindDecl{type_k()}});
  fo3 = fo3.extended({"o", KindDecl{type_k()}});
  fo3 = fo3.extended(
      {"eq", FamDecl{pi_f(a_const("iota"),
                          pi_f(a_const("iota"), a_const("o")))}});
  lftest::Db db{fo3};
  Context g;
  g = g.extended(Name{"x", 0}, a_const("iota"));

  std::vector<DerivPtr> goldens;
  goldens.push_back(db.d_sig_tree(db.sig));
  goldens.push_back(db.d_ctx(g));
  goldens.push_back(db.d_objty(g, o_const("eq")));
  goldens.push_back(db.d_objty(
      g, o_app(o_app(o_const("eq"), o_free(Name{"x", 0})), o_free(Name{"x", 0}))));
  goldens.push_back(db.d_objty(
      g, o_lam(a_const("iota"),
               o_app(o_app(o_const("eq"), o_bound(0)), o_bound(0)))));
  goldens.push_back(db.d_objeq_beta(
      g, o_app(o_lam(a_const("iota"),
                     o_app(o_app(o_const("eq"), o_bound(0)), o_bound(0))),
               o_free(Name{"x", 0}))));
  goldens.push_back(db.d_fameq_refl(g, pi_f(a_const("iota"), a_const("o"))));
  goldens.push_back(db.d_kindeq_refl(g, pi_k(a_const("iota"), type_k())));

  Signature dep;
  dep = dep.extended({"a", KindDecl{type_k()}});
  dep = dep.extended({"arr", KindDecl{pi_k(a_const("a"), type_k())}});
  lftest::Db db2{dep};
  Context g2;
  g2 = g2.extended(Name{"y", 0}, a_const("a"));
  goldens.push_back(db2.d_fameq_refl(
      g2, pi_f(a_const("a"), f_app(a_const("arr"), o_bound(0)))));
  goldens.push_back(
      db2.d_kindok(g2, pi_k(a_const("a"), pi_k(f_app(a_const("arr"), o_bound(0)),
                                               type_k()))));

  for (std::size_t i = 0; i < goldens.size(); ++i) {
    CAPTURE(i);
    const DerivPtr& d = goldens[i];
    REQUIRE(d != nullptr);
    REQUIRE_FALSE(check_derivation(*d).has_value());
    std::string text = print_derivation(*d);
    DerivPtr back = unwrap<DerivPtr>(parse_derivation(text));
    CHECK(equal(back->conclusion, d->conclusion));
    auto verdict = check_derivation(*back);
    if (verdict) {
      CAPTURE(verdict->message);
      CHECK_FALSE(verdict.has_value());
    }
    CHECK(print_derivation(*back) == text);
  }
}

TEST_CASE("derivation files reject malformed input") {
  CHECK(expect_err(parse_derivation("")).code == code::parse_error);
  CHECK(expect_err(parse_derivation("(rule)")).code == code::parse_error);
  CHECK(expect_err(parse_derivation(
                       "(rule sig-empty (sig-ok (sig)) (prems)"))
            .code == code::parse_error);
  CHECK(expect_err(parse_derivation(
                       "(rule sig-empty (bogus-tag (sig)) (prems))"))
            .code == code::parse_error);
  DerivPtr d = unwrap<DerivPtr>(
      parse_derivation("(rule sig-empty\n  (sig-ok (sig))\n  (prems))\n"));
  CHECK_FALSE(check_derivation(*d).has_value());
}
