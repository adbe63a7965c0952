#include <set>
#include <string>
#include <variant>
#include <vector>

#include "doctest.h"
#include "deriv_builders.hpp"
#include "fol_corpus.hpp"
#include "lf/erasure.hpp"
#include "lf/fol.hpp"
#include "lf/typecheck.hpp"

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

const Name kX{"x", 0};
const Name kY{"y", 0};
const Name kZ{"z", 0};

std::vector<Name> xy() { return {kX, kY}; }

Context fo_ctx() {
  Context g;
  g = g.extended(kX, a_const("iota"));
  g = g.extended(kY, a_const("iota"));
  return g;
}

// Substitution of a quasiatomic form for a free variable. Sound here because
// substituted encodings of terms contain no abstractions and no loose
// indices, so no shifting or capture can occur.
QAtomPtr qsubst_atom(const QAtomPtr& a, const Name& x, const QAtomPtr& v);
QCanPtr qsubst(const QCanPtr& q, const Name& x, const QAtomPtr& v) {
  if (const auto* at = std::get_if<QAt>(&q->node))
    return q_at(qsubst_atom(at->atom, x, v));
  return q_lam(qsubst(std::get<QLam>(q->node).body, x, v));
}
QAtomPtr qsubst_atom(const QAtomPtr& a, const Name& x, const QAtomPtr& v) {
  if (const auto* var = std::get_if<QVar>(&a->node))
    return var->name == x ? v : a;
  if (const auto* app = std::get_if<QApp>(&a->node))
    return q_app(qsubst_atom(app->fun, x, v), qsubst(app->arg, x, v));
  return a;
}

FolTermPtr tsub(const FolTermPtr& t, const Name& x, const FolTermPtr& v) {
  if (const auto* var = std::get_if<FVar>(&t->node))
    return var->name == x ? v : t;
  const auto& a = std::get<FApp2>(t->node);
  return fol_app(tsub(a.t1, x, v), tsub(a.t2, x, v));
}

FolFormulaPtr fsub(const FolFormulaPtr& f, const Name& x, const FolTermPtr& v) {
  if (const auto* e = std::get_if<FEq>(&f->node))
    return fol_eq(tsub(e->lhs, x, v), tsub(e->rhs, x, v));
  if (const auto* a = std::get_if<FAnd>(&f->node))
    return fol_and(fsub(a->lhs, x, v), fsub(a->rhs, x, v));
  const auto& q = std::get<FForall>(f->node);
  if (q.bound == x) return f;
  return fol_forall(q.bound, fsub(q.body, x, v));
}

}  // namespace

TEST_CASE("the fixed first-order signature") {
  SUBCASE("matches the frozen expected table") {
    CHECK(equal(sigma_fo(), lftest::fo_sig()));
  }
  SUBCASE("is accepted by the signature checker") {
    Fuel fuel;
    auto r = check_sig(sigma_fo(), fuel);
    CHECK(std::holds_alternative<ValidSig>(r));
  }
}

TEST_CASE("encoding terms and formulas") {
  SUBCASE("a scoped variable becomes itself") {
    QCanPtr q = unwrap<QCanPtr>(encode_term({kX}, fol_var(kX)));
    CHECK(equal(q, q_at(q_var(kX))));
  }
  SUBCASE("an unscoped variable is rejected") {
    Diagnostic d = expect_err(encode_term({}, fol_var(kX)));
    CHECK(d.code == code::unbound_fol_variable);
    CHECK(d.subterm == "x");
  }
  SUBCASE("the function symbol becomes a two-argument spine") {
    QCanPtr q = unwrap<QCanPtr>(
        encode_term(xy(), fol_app(fol_var(kX), fol_var(kY))));
    CHECK(equal(q, q_at(q_app(q_app(q_const("f"), q_at(q_var(kX))),
                              q_at(q_var(kY))))));
  }
  SUBCASE("a quantifier closes its bound variable to index 0") {
    FolFormulaPtr all_refl = fol_forall(kX, fol_eq(fol_var(kX), fol_var(kX)));
    QCanPtr q = unwrap<QCanPtr>(encode_formula({}, all_refl));
    QCanPtr expected = q_at(q_app(
        q_const("all"),
        q_lam(q_at(q_app(q_app(q_const("eq"), q_at(q_bound(0))),
                         q_at(q_bound(0)))))));
    CHECK(equal(q, expected));
  }
  SUBCASE("shadowed binders close to the innermost abstraction") {
    FolFormulaPtr inner = fol_forall(kX, fol_eq(fol_var(kX), fol_var(kX)));
    FolFormulaPtr outer = fol_forall(kX, inner);
    QCanPtr q = unwrap<QCanPtr>(encode_formula({}, outer));
    QCanPtr body_refl = q_at(q_app(q_app(q_const("eq"), q_at(q_bound(0))),
                                   q_at(q_bound(0))));
    QCanPtr expected = q_at(q_app(
        q_const("all"),
        q_lam(q_at(q_app(q_const("all"), q_lam(body_refl))))));
    CHECK(equal(q, expected));
  }
  SUBCASE("a variable bound further out stays free in the body encoding") {
    FolFormulaPtr f = fol_forall(kX, fol_eq(fol_var(kX), fol_var(kY)));
    QCanPtr q = unwrap<QCanPtr>(encode_formula({kY}, f));
    QCanPtr expected = q_at(q_app(
        q_const("all"),
        q_lam(q_at(q_app(q_app(q_const("eq"), q_at(q_bound(0))),
                         q_at(q_var(kY)))))));
    CHECK(equal(q, expected));
  }
}

TEST_CASE("decoding is the exact inverse on the image") {
  SUBCASE("a foreign constant at term level is out of the image") {
    Diagnostic d = expect_err(decode_term({}, q_at(q_const("and"))));
    CHECK(d.code == code::not_in_image);
  }
  SUBCASE("a bare abstraction is out of the image") {
    CHECK(expect_err(decode_formula({}, q_lam(q_at(q_bound(0))))).code ==
          code::not_in_image);
  }
  SUBCASE("a partial application is out of the image") {
    QCanPtr part = q_at(q_app(q_const("f"), q_at(q_var(kX))));
    CHECK(expect_err(decode_term({kX}, part)).code == code::not_in_image);
  }
  SUBCASE("an unscoped variable is out of the image") {
    CHECK(expect_err(decode_term({}, q_at(q_var(kX)))).code ==
          code::not_in_image);
  }
  SUBCASE("the quantifier needs an abstraction argument") {
    QCanPtr bad = q_at(q_app(q_const("all"), q_at(q_var(kX))));
    CHECK(expect_err(decode_formula({kX}, bad)).code == code::not_in_image);
  }
  SUBCASE("decoding the quantified reflexivity recovers it up to binder names") {
    FolFormulaPtr all_refl = fol_forall(kX, fol_eq(fol_var(kX), fol_var(kX)));
    QCanPtr q = unwrap<QCanPtr>(encode_formula({}, all_refl));
    FolFormulaPtr back = unwrap<FolFormulaPtr>(decode_formula({}, q));
    CHECK(alpha_equal(back, all_refl));
  }
}

TEST_CASE("round trips and injectivity over the exhaustive corpus") {
  std::vector<FolTermPtr> terms = lftest::fol_term_corpus(3);
  CHECK(terms.size() == 38);
  for (const auto& t : terms) {
    QCanPtr q = unwrap<QCanPtr>(encode_term(xy(), t));
    FolTermPtr back = unwrap<FolTermPtr>(decode_term(xy(), q));
    CHECK(equal(back, t));
    QCanPtr again = unwrap<QCanPtr>(encode_term(xy(), back));
    CHECK(equal(again, q));
  }

  std::vector<FolFormulaPtr> corpus = lftest::fol_formula_corpus(3);
  CHECK(corpus.size() == 844);
  std::vector<std::string> keys;
  keys.reserve(corpus.size());
  for (const auto& f : corpus) {
    QCanPtr q = unwrap<QCanPtr>(encode_formula(xy(), f));
    FolFormulaPtr back = unwrap<FolFormulaPtr>(decode_formula(xy(), q));
    CHECK(alpha_equal(back, f));
    QCanPtr again = unwrap<QCanPtr>(encode_formula(xy(), back));
    CHECK(equal(again, q));
    keys.push_back(show_qcan(q));
  }

  // Distinct formulas collide in the image exactly when they are renamings
  // of each other.
  std::size_t alpha_pairs = 0, key_pairs = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i)
    for (std::size_t j = i + 1; j < corpus.size(); ++j) {
      bool same_key = keys[i] == keys[j];
      bool same_alpha = alpha_equal(corpus[i], corpus[j]);
      if (same_key != same_alpha) {
        CAPTURE(i);
        CAPTURE(j);
        CAPTURE(keys[i]);
        REQUIRE(same_key == same_alpha);
      }
      alpha_pairs += same_alpha;
      key_pairs += same_key;
    }
  CHECK(alpha_pairs == key_pairs);
  CHECK(alpha_pairs > 0);
}

TEST_CASE("substitution of quasiatomic encodings commutes with encoding") {
  std::vector<FolTermPtr> reps = {
      fol_var(kY),
      fol_app(fol_var(kY), fol_var(kY)),
      fol_app(fol_var(kX), fol_var(kY)),
  };
  std::vector<FolFormulaPtr> corpus = lftest::fol_formula_corpus(2);
  for (const auto& t : reps) {
    QCanPtr enc_t = unwrap<QCanPtr>(encode_term(xy(), t));
    const QAtomPtr& atom_t = std::get<QAt>(enc_t->node).atom;
    for (const auto& f : corpus) {
      QCanPtr lhs = qsubst(unwrap<QCanPtr>(encode_formula(xy(), f)), kX, atom_t);
      QCanPtr rhs = unwrap<QCanPtr>(encode_formula(xy(), fsub(f, kX, t)));
      CHECK(equal(lhs, rhs));
    }
  }
}

TEST_CASE("reconstruction of labelled objects") {
  FamPtr iota = a_const("iota");
  FamPtr oo = a_const("o");
  SUBCASE("the identity abstraction at a simple product") {
    Fuel fuel;
    ObjPtr m = unwrap<ObjPtr>(elaborate(sigma_fo(), {}, q_lam(q_at(q_bound(0))),
                                        pi_f(iota, iota), fuel));
    CHECK(equal(m, o_lam(iota, o_bound(0))));
  }
  SUBCASE("a foreign constant at the individuals is rejected") {
    Fuel fuel;
    Diagnostic d = expect_err(
        elaborate(sigma_fo(), {}, q_at(q_const("and")), iota, fuel));
    CHECK(d.code == code::cannot_elaborate);
  }
  SUBCASE("an abstraction cannot inhabit a base family") {
    Fuel fuel;
    CHECK(expect_err(elaborate(sigma_fo(), {}, q_lam(q_at(q_bound(0))), oo, fuel))
              .code == code::cannot_elaborate);
  }
  SUBCASE("an atomic form cannot inhabit a product") {
    Fuel fuel;
    Context g = fo_ctx();
    CHECK(expect_err(
              elaborate(sigma_fo(), g, q_at(q_var(kX)), pi_f(iota, iota), fuel))
              .code == code::cannot_elaborate);
  }
  SUBCASE("the quantified reflexivity elaborates and synthesizes o") {
    FolFormulaPtr all_refl = fol_forall(kX, fol_eq(fol_var(kX), fol_var(kX)));
    QCanPtr q = unwrap<QCanPtr>(encode_formula({}, all_refl));
    Fuel fuel;
    ObjPtr m = unwrap<ObjPtr>(elaborate(sigma_fo(), {}, q, oo, fuel));
    auto vs = std::get<ValidSig>(check_sig(sigma_fo(), fuel));
    auto vc = std::get<ValidCtx>(check_ctx(vs, {}, fuel));
    FamPtr ty = unwrap<FamPtr>(synth_obj(vs, vc, m, fuel));
    CHECK(equal(ty, oo));
    REQUIRE(erase_labels(m).has_value());
    CHECK(equal(*erase_labels(m), q));
  }
}

TEST_CASE("every corpus encoding elaborates, typechecks at o, and erases back") {
  std::vector<FolFormulaPtr> corpus = lftest::fol_formula_corpus(2);
  CHECK(corpus.size() == 28);
  Fuel fuel{10000000};
  Context g = fo_ctx();
  auto vs = std::get<ValidSig>(check_sig(sigma_fo(), fuel));
  auto vc = std::get<ValidCtx>(check_ctx(vs, g, fuel));
  FamPtr oo = a_const("o");
  for (const auto& f : corpus) {
    CAPTURE(print_fol_formula(f));
    QCanPtr q = unwrap<QCanPtr>(encode_formula(xy(), f));
    ObjPtr m = unwrap<ObjPtr>(elaborate(sigma_fo(), g, q, oo, fuel));
    FamPtr ty = unwrap<FamPtr>(synth_obj(vs, vc, m, fuel));
    EquivOutcome eq = fam_equiv(vs.erased(), vc.erased(), ty, oo,
                                erase_kind(type_k()), fuel);
    CHECK(is_equal(eq));
    auto q2 = erase_labels(m);
    REQUIRE(q2.has_value());
    CHECK(equal(*q2, q));
  }
}

TEST_CASE("first-order concrete syntax") {
  SUBCASE("terms parse and print canonically") {
    FolTermPtr t = unwrap<FolTermPtr>(parse_fol_term("f(f(x,y),z)"));
    CHECK(equal(t, fol_app(fol_app(fol_var(kX), fol_var(kY)), fol_var(kZ))));
    CHECK(print_fol_term(t) == "f(f(x,y),z)");
  }
  SUBCASE("a quantifier body extends as far right as possible") {
    FolFormulaPtr f =
        unwrap<FolFormulaPtr>(parse_fol_formula("forall x. x = x & y = y"));
    const auto* q = std::get_if<FForall>(&f->node);
    REQUIRE(q != nullptr);
    CHECK(std::holds_alternative<FAnd>(q->body->node));
    CHECK(print_fol_formula(f) == "forall x. x = x & y = y");
  }
  SUBCASE("parentheses restrict a quantifier") {
    FolFormulaPtr f = unwrap<FolFormulaPtr>(
        parse_fol_formula("(forall x. x = x) & y = y"));
    const auto* a = std::get_if<FAnd>(&f->node);
    REQUIRE(a != nullptr);
    CHECK(std::holds_alternative<FForall>(a->lhs->node));
    CHECK(print_fol_formula(f) == "(forall x. x = x) & y = y");
  }
  SUBCASE("conjunction is right associative") {
    FolFormulaPtr f = unwrap<FolFormulaPtr>(
        parse_fol_formula("x = x & y = y & z = z"));
    const auto* a = std::get_if<FAnd>(&f->node);
    REQUIRE(a != nullptr);
    CHECK(std::holds_alternative<FEq>(a->lhs->node));
    CHECK(std::holds_alternative<FAnd>(a->rhs->node));
    CHECK(print_fol_formula(f) == "x = x & y = y & z = z");
  }
  SUBCASE("print and parse are mutually inverse on the corpus") {
    for (const auto& f : lftest::fol_formula_corpus(2)) {
      std::string s = print_fol_formula(f);
      FolFormulaPtr back = unwrap<FolFormulaPtr>(parse_fol_formula(s));
      CHECK(equal(back, f));
      CHECK(print_fol_formula(back) == s);
    }
  }
  SUBCASE("errors") {
    CHECK(expect_err(parse_fol_term("g(x,y)")).code == code::parse_error);
    CHECK(expect_err(parse_fol_term("f(x)")).code == code::parse_error);
    CHECK(expect_err(parse_fol_formula("x =")).code == code::parse_error);
    CHECK(expect_err(parse_fol_formula("x = y &")).code == code::parse_error);
    CHECK(expect_err(parse_fol_formula("forall . x = x")).code ==
          code::parse_error);
    CHECK(expect_err(parse_fol_formula("x")).code == code::parse_error);
  }
}
