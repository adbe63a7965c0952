#include "lf/fol.hpp"

#include <algorithm>
#include <cctype>

#include "lf/detail.hpp"
#include "lf/erasure.hpp"

namespace lf {

using detail::overload;

FolTermPtr fol_var(Name x) {
  return std::make_shared<const FolTerm>(FolTerm{FVar{std::move(x)}});
}
FolTermPtr fol_app(FolTermPtr t1, FolTermPtr t2) {
  return std::make_shared<const FolTerm>(
      FolTerm{FApp2{std::move(t1), std::move(t2)}});
}
FolFormulaPtr fol_eq(FolTermPtr lhs, FolTermPtr rhs) {
  return std::make_shared<const FolFormula>(
      FolFormula{FEq{std::move(lhs), std::move(rhs)}});
}
FolFormulaPtr fol_and(FolFormulaPtr lhs, FolFormulaPtr rhs) {
  return std::make_shared<const FolFormula>(
      FolFormula{FAnd{std::move(lhs), std::move(rhs)}});
}
FolFormulaPtr fol_forall(Name bound, FolFormulaPtr body) {
  return std::make_shared<const FolFormula>(
      FolFormula{FForall{std::move(bound), std::move(body)}});
}

bool equal(const FolTermPtr& a, const FolTermPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      overload{
          [&](const FVar& x) { return x.name == std::get<FVar>(b->node).name; },
          [&](const FApp2& x) {
            const auto& y = std::get<FApp2>(b->node);
            return equal(x.t1, y.t1) && equal(x.t2, y.t2);
          },
      },
      a->node);
}

bool equal(const FolFormulaPtr& a, const FolFormulaPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      overload{
          [&](const FEq& x) {
            const auto& y = std::get<FEq>(b->node);
            return equal(x.lhs, y.lhs) && equal(x.rhs, y.rhs);
          },
          [&](const FAnd& x) {
            const auto& y = std::get<FAnd>(b->node);
            return equal(x.lhs, y.lhs) && equal(x.rhs, y.rhs);
          },
          [&](const FForall& x) {
            const auto& y = std::get<FForall>(b->node);
            return x.bound == y.bound && equal(x.body, y.body);
          },
      },
      a->node);
}

namespace {

using RenEnv = std::vector<std::pair<Name, Name>>;

bool term_alpha(const FolTermPtr& a, const FolTermPtr& b, const RenEnv& env) {
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      overload{
          [&](const FVar& x) {
            const Name& y = std::get<FVar>(b->node).name;
            for (auto it = env.rbegin(); it != env.rend(); ++it) {
              if (it->first == x.name || it->second == y)
                return it->first == x.name && it->second == y;
            }
            return x.name == y;
          },
          [&](const FApp2& x) {
            const auto& y = std::get<FApp2>(b->node);
            return term_alpha(x.t1, y.t1, env) && term_alpha(x.t2, y.t2, env);
          },
      },
      a->node);
}

bool form_alpha(const FolFormulaPtr& a, const FolFormulaPtr& b, RenEnv& env) {
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      overload{
          [&](const FEq& x) {
            const auto& y = std::get<FEq>(b->node);
            return term_alpha(x.lhs, y.lhs, env) && term_alpha(x.rhs, y.rhs, env);
          },
          [&](const FAnd& x) {
            const auto& y = std::get<FAnd>(b->node);
            return form_alpha(x.lhs, y.lhs, env) && form_alpha(x.rhs, y.rhs, env);
          },
          [&](const FForall& x) {
            const auto& y = std::get<FForall>(b->node);
            env.emplace_back(x.bound, y.bound);
            bool ok = form_alpha(x.body, y.body, env);
            env.pop_back();
            return ok;
          },
      },
      a->node);
}

}  // namespace

bool alpha_equal(const FolFormulaPtr& a, const FolFormulaPtr& b) {
  RenEnv env;
  return form_alpha(a, b, env);
}

namespace {

void fv_term(const FolTermPtr& t, std::set<Name>& out) {
  std::visit(overload{
                 [&](const FVar& x) { out.insert(x.name); },
                 [&](const FApp2& x) {
                   fv_term(x.t1, out);
                   fv_term(x.t2, out);
                 },
             },
             t->node);
}

void fv_form(const FolFormulaPtr& f, std::set<Name>& out) {
  std::visit(overload{
                 [&](const FEq& x) {
                   fv_term(x.lhs, out);
                   fv_term(x.rhs, out);
                 },
                 [&](const FAnd& x) {
                   fv_form(x.lhs, out);
                   fv_form(x.rhs, out);
                 },
                 [&](const FForall& x) {
                   std::set<Name> inner;
                   fv_form(x.body, inner);
                   inner.erase(x.bound);
                   out.insert(inner.begin(), inner.end());
                 },
             },
             f->node);
}

}  // namespace

std::set<Name> fol_free_vars(const FolTermPtr& t) {
  std::set<Name> out;
  fv_term(t, out);
  return out;
}

std::set<Name> fol_free_vars(const FolFormulaPtr& f) {
  std::set<Name> out;
  fv_form(f, out);
  return out;
}

const Signature& sigma_fo() {
  static const Signature sig = [] {
    FamPtr i = a_const("iota");
    FamPtr oo = a_const("o");
    auto arrow = [](FamPtr d, FamPtr c) {
      return pi_f(std::move(d), std::move(c));
    };
    Signature s;
    s = s.extended({"iota", KindDecl{type_k()}});
    s = s.extended({"o", KindDecl{type_k()}});
    s = s.extended({"f", FamDecl{arrow(i, arrow(i, i))}});
    s = s.extended({"eq", FamDecl{arrow(i, arrow(i, oo))}});
    s = s.extended({"and", FamDecl{arrow(oo, arrow(oo, oo))}});
    s = s.extended({"all", FamDecl{arrow(arrow(i, oo), oo)}});
    return s;
  }();
  return sig;
}

/* translation to quasicanonical forms */

namespace {

struct Unbound {
  Diagnostic d;
};

bool in_scope(const std::vector<Name>& scope, const Name& x) {
  return std::find(scope.begin(), scope.end(), x) != scope.end();
}

QCanPtr enc_term(std::vector<Name>& scope, const FolTermPtr& t) {
  return std::visit(
      overload{
          [&](const FVar& v) -> QCanPtr {
            if (!in_scope(scope, v.name))
              throw Unbound{Diagnostic{code::unbound_fol_variable,
                                       "variable not in scope",
                                       {},
                                       show_name(v.name),
                                       std::nullopt}};
            return q_at(q_var(v.name));
          },
          [&](const FApp2& a) -> QCanPtr {
            QCanPtr t1 = enc_term(scope, a.t1);
            QCanPtr t2 = enc_term(scope, a.t2);
            return q_at(q_app(q_app(q_const("f"), t1), t2));
          },
      },
      t->node);
}

QCanPtr enc_form(std::vector<Name>& scope, const FolFormulaPtr& f) {
  return std::visit(
      overload{
          [&](const FEq& x) -> QCanPtr {
            QCanPtr l = enc_term(scope, x.lhs);
            QCanPtr r = enc_term(scope, x.rhs);
            return q_at(q_app(q_app(q_const("eq"), l), r));
          },
          [&](const FAnd& x) -> QCanPtr {
            QCanPtr l = enc_form(scope, x.lhs);
            QCanPtr r = enc_form(scope, x.rhs);
            return q_at(q_app(q_app(q_const("and"), l), r));
          },
          [&](const FForall& x) -> QCanPtr {
            scope.push_back(x.bound);
            QCanPtr body = enc_form(scope, x.body);
            scope.pop_back();
            return q_at(q_app(q_const("all"),
                              q_lam(close_qcan(body, x.bound, 0))));
          },
      },
      f->node);
}

}  // namespace

std::variant<QCanPtr, Diagnostic> encode_term(const std::vector<Name>& scope,
                                              const FolTermPtr& t) {
  try {
    std::vector<Name> s = scope;
    return enc_term(s, t);
  } catch (const Unbound& u) {
    return u.d;
  }
}

std::variant<QCanPtr, Diagnostic> encode_formula(const std::vector<Name>& scope,
                                                 const FolFormulaPtr& f) {
  try {
    std::vector<Name> s = scope;
    return enc_form(s, f);
  } catch (const Unbound& u) {
    return u.d;
  }
}

/* inverse translation */

namespace {

struct NotImage {
  Diagnostic d;
};

[[noreturn]] void reject(const std::string& what, std::string shown) {
  throw NotImage{Diagnostic{code::not_in_image, what, {}, std::move(shown),
                            std::nullopt}};
}

// Spine view of a quasiatomic form: head atom plus arguments left to right.
struct Spine {
  const QAtom* head;
  std::vector<QCanPtr> args;
};

Spine spine_of(const QAtomPtr& a) {
  Spine s;
  const QAtom* cur = a.get();
  while (const auto* app = std::get_if<QApp>(&cur->node)) {
    s.args.insert(s.args.begin(), app->arg);
    cur = app->fun.get();
  }
  s.head = cur;
  return s;
}

struct Dec {
  std::vector<Name> scope;
  std::set<Name> avoid;

  Name pick() {
    std::vector<Name> v(avoid.begin(), avoid.end());
    Name x = maxi(v);
    avoid.insert(x);
    return x;
  }

  const QAtomPtr& atom_of(const QCanPtr& q) {
    if (const auto* at = std::get_if<QAt>(&q->node)) return at->atom;
    reject("an abstraction cannot stand alone here", show_qcan(q));
  }

  FolTermPtr term(const QCanPtr& q) {
    const QAtomPtr& a = atom_of(q);
    Spine s = spine_of(a);
    if (const auto* v = std::get_if<QVar>(&s.head->node)) {
      if (!s.args.empty())
        reject("a variable cannot be applied", show_qatom(a));
      if (!in_scope(scope, v->name))
        reject("variable not in scope", show_name(v->name));
      return fol_var(v->name);
    }
    if (const auto* c = std::get_if<QConst>(&s.head->node)) {
      if (c->id == "f" && s.args.size() == 2)
        return fol_app(term(s.args[0]), term(s.args[1]));
      reject("head is not the function symbol", show_qatom(a));
    }
    reject("head is not a variable or constant", show_qatom(a));
  }

  FolFormulaPtr formula(const QCanPtr& q) {
    const QAtomPtr& a = atom_of(q);
    Spine s = spine_of(a);
    const auto* c = std::get_if<QConst>(&s.head->node);
    if (!c) reject("head is not a logical constant", show_qatom(a));
    if (c->id == "eq" && s.args.size() == 2)
      return fol_eq(term(s.args[0]), term(s.args[1]));
    if (c->id == "and" && s.args.size() == 2)
      return fol_and(formula(s.args[0]), formula(s.args[1]));
    if (c->id == "all" && s.args.size() == 1) {
      const auto* l = std::get_if<QLam>(&s.args[0]->node);
      if (!l) reject("the quantifier needs an abstraction", show_qcan(s.args[0]));
      Name x = pick();
      scope.push_back(x);
      FolFormulaPtr body = formula(open_qcan(l->body, 0, x));
      scope.pop_back();
      return fol_forall(x, body);
    }
    reject("head is not a logical constant of the right arity", show_qatom(a));
  }
};

}  // namespace

std::variant<FolTermPtr, Diagnostic> decode_term(const std::vector<Name>& scope,
                                                 const QCanPtr& q) {
  try {
    Dec d{scope, {}};
    d.avoid.insert(scope.begin(), scope.end());
    std::set<Name> fv = fv_qcan(q);
    d.avoid.insert(fv.begin(), fv.end());
    return d.term(q);
  } catch (const NotImage& n) {
    return n.d;
  }
}

std::variant<FolFormulaPtr, Diagnostic> decode_formula(
    const std::vector<Name>& scope, const QCanPtr& q) {
  try {
    Dec d{scope, {}};
    d.avoid.insert(scope.begin(), scope.end());
    std::set<Name> fv = fv_qcan(q);
    d.avoid.insert(fv.begin(), fv.end());
    return d.formula(q);
  } catch (const NotImage& n) {
    return n.d;
  }
}

/* reconstruction of labelled objects */

namespace {

struct ElabFail {
  Diagnostic d;
};

[[noreturn]] void cannot(const std::string& why, std::string shown) {
  throw ElabFail{Diagnostic{code::cannot_elaborate, why, {}, std::move(shown),
                            std::nullopt}};
}

struct Elab {
  const Signature& sig;
  SimpleSignature ssig;
  Context ctx;
  SimpleContext sctx;
  std::set<Name> avoid;
  Fuel& fuel;

  Name pick() {
    std::vector<Name> v(avoid.begin(), avoid.end());
    Name x = maxi(v);
    avoid.insert(x);
    return x;
  }

  void require_equal(const FamPtr& got, const FamPtr& want) {
    EquivOutcome eq =
        fam_equiv_weak(ssig, sctx, got, want, s_type(), fuel);
    if (std::holds_alternative<Equal>(eq)) return;
    if (std::holds_alternative<OutOfFuel>(eq))
      throw ElabFail{Diagnostic{code::out_of_fuel,
                                "step budget exhausted while comparing types",
                                {},
                                show_fam(got),
                                std::nullopt}};
    cannot("synthesized type does not match the expected one",
           show_fam(got) + " vs " + show_fam(want));
  }

  // Synthesis along a quasiatomic spine: head from the context or signature,
  // each argument checked against the successive domains.
  std::pair<ObjPtr, FamPtr> synth(const QAtomPtr& a) {
    return std::visit(
        overload{
            [&](const QVar& v) -> std::pair<ObjPtr, FamPtr> {
              if (const FamPtr* t = ctx.lookup(v.name))
                return {o_free(v.name), *t};
              cannot("variable not bound in the context", show_name(v.name));
            },
            [&](const QBound& b) -> std::pair<ObjPtr, FamPtr> {
              cannot("loose bound index", std::to_string(b.index));
            },
            [&](const QConst& c) -> std::pair<ObjPtr, FamPtr> {
              if (const FamPtr* t = sig.lookup_obj_const(c.id))
                return {o_const(c.id), *t};
              cannot("identifier is not an object constant", c.id);
            },
            [&](const QApp& app) -> std::pair<ObjPtr, FamPtr> {
              auto [fun, fun_ty] = synth(app.fun);
              const auto* pi = std::get_if<PiF>(&fun_ty->node);
              if (!pi)
                cannot("applied head does not have a product type",
                       show_fam(fun_ty));
              ObjPtr arg = check(app.arg, pi->domain);
              return {o_app(fun, arg), open_fam(pi->body, 0, arg)};
            },
        },
        a->node);
  }

  ObjPtr check(const QCanPtr& q, const FamPtr& expected) {
    if (const auto* pi = std::get_if<PiF>(&expected->node)) {
      const auto* l = std::get_if<QLam>(&q->node);
      if (!l)
        cannot("a product type needs an abstraction", show_qcan(q));
      Name x = pick();
      Context saved_ctx = ctx;
      SimpleContext saved_sctx = sctx;
      ctx = ctx.extended(x, pi->domain);
      sctx = sctx.extended(x, erase_family(pi->domain));
      ObjPtr body =
          check(open_qcan(l->body, 0, x), open_fam(pi->body, 0, o_free(x)));
      ctx = saved_ctx;
      sctx = saved_sctx;
      return o_lam(pi->domain, close_obj(body, x, 0));
    }
    const auto* at = std::get_if<QAt>(&q->node);
    if (!at)
      cannot("an abstraction cannot inhabit an atomic type", show_qcan(q));
    auto [m, ty] = synth(at->atom);
    require_equal(ty, expected);
    return m;
  }
};

}  // namespace

std::variant<ObjPtr, Diagnostic> elaborate(const Signature& sig,
                                           const Context& ctx, const QCanPtr& q,
                                           const FamPtr& expected, Fuel& fuel) {
  try {
    Elab e{sig, erase_sig(sig), ctx, erase_ctx(ctx), {}, fuel};
    std::set<Name> in_ctx = fv_ctx(ctx);
    e.avoid.insert(in_ctx.begin(), in_ctx.end());
    for (const auto& entry : ctx.entries) e.avoid.insert(entry.name);
    std::set<Name> in_q = fv_qcan(q);
    e.avoid.insert(in_q.begin(), in_q.end());
    std::set<Name> in_a = fv_fam(expected);
    e.avoid.insert(in_a.begin(), in_a.end());
    return e.check(q, expected);
  } catch (const ElabFail& f) {
    return f.d;
  }
}

/* concrete syntax */

namespace {

enum class Ft { Ident, KwForall, LParen, RParen, Comma, Dot, Eq, Amp, End };

struct FTok {
  Ft kind;
  std::string text;
  SourceSpan span;
};

[[noreturn]] void fol_err(std::string msg, SourceSpan sp, std::string sub = "") {
  throw NotImage{Diagnostic{code::parse_error, std::move(msg), {},
                            std::move(sub), sp}};
}

std::vector<FTok> fol_lex(std::string_view src) {
  std::vector<FTok> out;
  std::size_t pos = 0, line = 1, col = 1;
  auto adv = [&] {
    if (src[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  };
  while (true) {
    while (pos < src.size() &&
           (std::isspace(static_cast<unsigned char>(src[pos])) ||
            src[pos] == '%')) {
      if (src[pos] == '%')
        while (pos < src.size() && src[pos] != '\n') adv();
      else
        adv();
    }
    SourceSpan sp{pos, pos, line, col};
    if (pos >= src.size()) {
      out.push_back({Ft::End, "", sp});
      return out;
    }
    char c = src[pos];
    auto single = [&](Ft k) {
      adv();
      sp.end = pos;
      out.push_back({k, std::string(1, c), sp});
    };
    if (c == '(') {
      single(Ft::LParen);
    } else if (c == ')') {
      single(Ft::RParen);
    } else if (c == ',') {
      single(Ft::Comma);
    } else if (c == '.') {
      single(Ft::Dot);
    } else if (c == '=') {
      single(Ft::Eq);
    } else if (c == '&') {
      single(Ft::Amp);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string text;
      while (pos < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[pos])) ||
              src[pos] == '_')) {
        text += src[pos];
        adv();
      }
      if (pos < src.size() && src[pos] == '$') {
        text += src[pos];
        adv();
        std::size_t digits = 0;
        while (pos < src.size() &&
               std::isdigit(static_cast<unsigned char>(src[pos]))) {
          text += src[pos];
          adv();
          ++digits;
        }
        if (digits == 0 || digits > 19)
          fol_err("'$' must be followed by a short index", sp, text);
      }
      sp.end = pos;
      out.push_back({text == "forall" ? Ft::KwForall : Ft::Ident, text, sp});
    } else {
      fol_err("unexpected character", sp, std::string(1, c));
    }
  }
}

Name fol_name(const std::string& text) {
  auto k = text.find('$');
  if (k == std::string::npos) return Name{text, 0};
  return Name{text.substr(0, k), std::stoull(text.substr(k + 1))};
}

struct FolParser {
  std::vector<FTok> ts;
  std::size_t i = 0;

  explicit FolParser(std::string_view text) : ts(fol_lex(text)) {}

  const FTok& peek(std::size_t k = 0) const {
    return ts[std::min(i + k, ts.size() - 1)];
  }
  bool at(Ft k) const { return peek().kind == k; }
  FTok take() {
    FTok t = ts[i];
    if (t.kind != Ft::End) ++i;
    return t;
  }
  FTok expect(Ft k, const char* what) {
    if (!at(k)) fol_err(std::string("expected ") + what, peek().span, peek().text);
    return take();
  }

  FolTermPtr term() {
    FTok id = expect(Ft::Ident, "a term");
    if (at(Ft::LParen)) {
      if (id.text != "f")
        fol_err("the only function symbol is 'f'", id.span, id.text);
      take();
      FolTermPtr t1 = term();
      expect(Ft::Comma, "','");
      FolTermPtr t2 = term();
      expect(Ft::RParen, "')'");
      return fol_app(t1, t2);
    }
    return fol_var(fol_name(id.text));
  }

  FolFormulaPtr formula() {
    if (at(Ft::KwForall)) {
      take();
      FTok x = expect(Ft::Ident, "a variable name");
      expect(Ft::Dot, "'.'");
      return fol_forall(fol_name(x.text), formula());
    }
    FolFormulaPtr l = atom_formula();
    if (at(Ft::Amp)) {
      take();
      return fol_and(l, formula());
    }
    return l;
  }

  FolFormulaPtr atom_formula() {
    if (at(Ft::LParen)) {
      take();
      FolFormulaPtr f = formula();
      expect(Ft::RParen, "')'");
      return f;
    }
    FolTermPtr l = term();
    expect(Ft::Eq, "'='");
    FolTermPtr r = term();
    return fol_eq(l, r);
  }
};

int fprec(const FolFormula& f) {
  return std::visit(overload{
                        [](const FEq&) { return 2; },
                        [](const FAnd&) { return 1; },
                        [](const FForall&) { return 0; },
                    },
                    f.node);
}

std::string pfol(const FolFormulaPtr& f, int p) {
  std::string s = std::visit(
      overload{
          [&](const FEq& x) {
            return print_fol_term(x.lhs) + " = " + print_fol_term(x.rhs);
          },
          [&](const FAnd& x) { return pfol(x.lhs, 2) + " & " + pfol(x.rhs, 1); },
          [&](const FForall& x) {
            return "forall " + show_name(x.bound) + ". " + pfol(x.body, 0);
          },
      },
      f->node);
  if (fprec(*f) < p) return "(" + s + ")";
  return s;
}

}  // namespace

std::variant<FolTermPtr, Diagnostic> parse_fol_term(std::string_view text) {
  try {
    FolParser p(text);
    FolTermPtr t = p.term();
    p.expect(Ft::End, "end of input");
    return t;
  } catch (const NotImage& n) {
    return n.d;
  }
}

std::variant<FolFormulaPtr, Diagnostic> parse_fol_formula(std::string_view text) {
  try {
    FolParser p(text);
    FolFormulaPtr f = p.formula();
    p.expect(Ft::End, "end of input");
    return f;
  } catch (const NotImage& n) {
    return n.d;
  }
}

std::string print_fol_term(const FolTermPtr& t) {
  return std::visit(
      overload{
          [](const FVar& x) { return show_name(x.name); },
          [](const FApp2& a) {
            return "f(" + print_fol_term(a.t1) + "," + print_fol_term(a.t2) +
                   ")";
          },
      },
      t->node);
}

std::string print_fol_formula(const FolFormulaPtr& f) { return pfol(f, 0); }

}  // namespace lf
