#include "lf/surface.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <string>

#include "lf/detail.hpp"

namespace lf {

using detail::overload;

NamedPtr n_type() { return std::make_shared<const NamedTerm>(NamedTerm{NType{}, {}}); }
NamedPtr n_const(Ident id) {
  return std::make_shared<const NamedTerm>(NamedTerm{NConst{std::move(id)}, {}});
}
NamedPtr n_var(Name x) {
  return std::make_shared<const NamedTerm>(NamedTerm{NVar{std::move(x)}, {}});
}
NamedPtr n_lam(Name binder, NamedPtr ann, NamedPtr body) {
  return std::make_shared<const NamedTerm>(
      NamedTerm{NLam{std::move(binder), std::move(ann), std::move(body)}, {}});
}
NamedPtr n_pi(Name binder, NamedPtr dom, NamedPtr body) {
  return std::make_shared<const NamedTerm>(
      NamedTerm{NPi{std::move(binder), std::move(dom), std::move(body)}, {}});
}
NamedPtr n_arrow(NamedPtr dom, NamedPtr cod) {
  return std::make_shared<const NamedTerm>(
      NamedTerm{NArrow{std::move(dom), std::move(cod)}, {}});
}
NamedPtr n_app(NamedPtr fun, NamedPtr arg) {
  return std::make_shared<const NamedTerm>(
      NamedTerm{NApp{std::move(fun), std::move(arg)}, {}});
}

bool equal(const NamedPtr& a, const NamedPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      overload{
          [&](const NType&) { return true; },
          [&](const NConst& x) { return x.id == std::get<NConst>(b->node).id; },
          [&](const NVar& x) { return x.name == std::get<NVar>(b->node).name; },
          [&](const NLam& x) {
            const auto& y = std::get<NLam>(b->node);
            return x.binder == y.binder && equal(x.ann, y.ann) &&
                   equal(x.body, y.body);
          },
          [&](const NPi& x) {
            const auto& y = std::get<NPi>(b->node);
            return x.binder == y.binder && equal(x.dom, y.dom) &&
                   equal(x.body, y.body);
          },
          [&](const NArrow& x) {
            const auto& y = std::get<NArrow>(b->node);
            return equal(x.dom, y.dom) && equal(x.cod, y.cod);
          },
          [&](const NApp& x) {
            const auto& y = std::get<NApp>(b->node);
            return equal(x.fun, y.fun) && equal(x.arg, y.arg);
          },
      },
      a->node);
}

namespace {

struct Fail {
  Diagnostic d;
};

[[noreturn]] void bail(std::string msg, std::optional<SourceSpan> span,
                       std::string subterm = "",
                       const char* code_id = code::parse_error) {
  throw Fail{Diagnostic{code_id, std::move(msg), {}, std::move(subterm), span}};
}

/* lexing */

enum class Tk {
  Ident,
  KwType,
  KwPi,
  KwLam,
  Arrow,
  Colon,
  Dot,
  LParen,
  RParen,
  Comma,
  End
};

struct Token {
  Tk kind;
  std::string text;
  SourceSpan span;
};

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

struct Lexer {
  std::string_view src;
  std::size_t pos = 0, line = 1, col = 1;

  bool done() const { return pos >= src.size(); }
  char cur() const { return src[pos]; }
  char at(std::size_t k) const {
    return pos + k < src.size() ? src[pos + k] : '\0';
  }
  void adv() {
    if (src[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      while (!done() &&
             (std::isspace(static_cast<unsigned char>(cur())) || cur() == '%')) {
        if (cur() == '%')
          while (!done() && cur() != '\n') adv();
        else
          adv();
      }
      SourceSpan sp{pos, pos, line, col};
      if (done()) {
        out.push_back({Tk::End, "", sp});
        return out;
      }
      char c = cur();
      auto single = [&](Tk k) {
        adv();
        sp.end = pos;
        out.push_back({k, std::string(1, c), sp});
      };
      if (c == '(') {
        single(Tk::LParen);
      } else if (c == ')') {
        single(Tk::RParen);
      } else if (c == ':') {
        single(Tk::Colon);
      } else if (c == '.') {
        single(Tk::Dot);
      } else if (c == ',') {
        single(Tk::Comma);
      } else if (c == '-') {
        if (at(1) != '>') bail("stray '-', expected '->'", sp);
        adv();
        adv();
        sp.end = pos;
        out.push_back({Tk::Arrow, "->", sp});
      } else if (static_cast<unsigned char>(c) == 0xCE &&
                 static_cast<unsigned char>(at(1)) == 0xBB) {
        adv();
        adv();
        sp.end = pos;
        out.push_back({Tk::KwLam, "lam", sp});
      } else if (static_cast<unsigned char>(c) == 0xCE &&
                 static_cast<unsigned char>(at(1)) == 0xA0) {
        adv();
        adv();
        sp.end = pos;
        out.push_back({Tk::KwPi, "pi", sp});
      } else if (ident_start(c)) {
        std::string text;
        while (!done() && (ident_char(cur()) ||
                           (cur() == '-' && ident_char(at(1))))) {
          text += cur();
          adv();
        }
        if (!done() && cur() == '$') {
          text += cur();
          adv();
          std::size_t digits = 0;
          while (!done() && std::isdigit(static_cast<unsigned char>(cur()))) {
            text += cur();
            adv();
            ++digits;
          }
          if (digits == 0 || digits > 19)
            bail("'$' must be followed by a short index", sp, text);
          if (!done() && ident_char(cur()))
            bail("a name index must end the identifier", sp, text);
        }
        sp.end = pos;
        if (text == "type")
          out.push_back({Tk::KwType, text, sp});
        else if (text == "pi")
          out.push_back({Tk::KwPi, text, sp});
        else if (text == "lam")
          out.push_back({Tk::KwLam, text, sp});
        else
          out.push_back({Tk::Ident, text, sp});
      } else {
        bail("unexpected character", sp, std::string(1, c));
      }
    }
  }
};

Name ident_name(const std::string& text) {
  auto k = text.find('$');
  if (k == std::string::npos) return Name{text, 0};
  return Name{text.substr(0, k), std::stoull(text.substr(k + 1))};
}

std::vector<Token> lex(std::string_view text) { return Lexer{text}.run(); }

/* term parsing over a token stream */

struct Parser {
  std::vector<Token> ts;
  std::size_t i = 0;
  const Signature* sig = nullptr;
  std::set<Name> avoid;
  std::vector<std::pair<Name, Name>> scope;  // source -> machine, innermost last

  explicit Parser(std::string_view text) : ts(lex(text)) {
    for (const auto& t : ts)
      if (t.kind == Tk::Ident) avoid.insert(ident_name(t.text));
  }

  const Token& peek(std::size_t k = 0) const {
    return ts[std::min(i + k, ts.size() - 1)];
  }
  bool at(Tk k) const { return peek().kind == k; }
  bool at_word(const char* w) const {
    return at(Tk::Ident) && peek().text == w;
  }
  Token take() {
    Token t = ts[i];
    if (t.kind != Tk::End) ++i;
    return t;
  }
  Token expect(Tk k, const char* what) {
    if (!at(k)) bail(std::string("expected ") + what, peek().span, peek().text);
    return take();
  }
  void expect_word(const char* w) {
    if (!at_word(w)) bail(std::string("expected '") + w + "'", peek().span, peek().text);
    take();
  }

  Name fresh_machine() {
    std::vector<Name> v(avoid.begin(), avoid.end());
    Name x = maxi(v);
    avoid.insert(x);
    return x;
  }

  NamedPtr with_span(NamedPtr t, std::size_t beg_tok) {
    auto c = std::make_shared<NamedTerm>(*t);
    SourceSpan s = ts[beg_tok].span;
    if (i > 0) s.end = ts[i - 1].span.end;
    c->span = s;
    return c;
  }

  bool starts_atom() const {
    Tk k = peek().kind;
    return k == Tk::Ident || k == Tk::KwType || k == Tk::LParen;
  }

  NamedPtr term() {
    std::size_t beg = i;
    if (at(Tk::KwPi) || at(Tk::KwLam)) {
      bool is_pi = at(Tk::KwPi);
      take();
      Token b = expect(Tk::Ident, "a binder name");
      Name source = ident_name(b.text);
      expect(Tk::Colon, "':'");
      NamedPtr dom = arrowp();
      expect(Tk::Dot, "'.'");
      Name machine = fresh_machine();
      scope.emplace_back(source, machine);
      NamedPtr body = term();
      scope.pop_back();
      NamedPtr out = is_pi ? n_pi(machine, dom, body) : n_lam(machine, dom, body);
      return with_span(out, beg);
    }
    return arrowp();
  }

  NamedPtr arrowp() {
    std::size_t beg = i;
    NamedPtr l = appp();
    if (at(Tk::Arrow)) {
      take();
      NamedPtr r = arrowp();
      return with_span(n_arrow(l, r), beg);
    }
    return l;
  }

  NamedPtr appp() {
    std::size_t beg = i;
    NamedPtr f = atom();
    while (starts_atom()) f = with_span(n_app(f, atom()), beg);
    return f;
  }

  NamedPtr atom() {
    std::size_t beg = i;
    if (at(Tk::LParen)) {
      take();
      NamedPtr t = term();
      expect(Tk::RParen, "')'");
      return t;
    }
    if (at(Tk::KwType)) {
      take();
      return with_span(n_type(), beg);
    }
    Token id = expect(Tk::Ident, "a term");
    Name src = ident_name(id.text);
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->first == src) return with_span(n_var(it->second), beg);
    if (sig && sig->declares(id.text))
      return with_span(n_const(id.text), beg);
    return with_span(n_var(src), beg);
  }
};

/* named -> locally nameless */

struct ToLn {
  std::vector<Name> stack;  // back = innermost

  std::optional<std::uint64_t> lookup(const Name& x) const {
    std::uint64_t k = 0;
    for (auto it = stack.rbegin(); it != stack.rend(); ++it, ++k)
      if (*it == x) return k;
    return std::nullopt;
  }

  ObjPtr obj(const NamedPtr& t) {
    return std::visit(
        overload{
            [&](const NType&) -> ObjPtr {
              bail("the kind classifier cannot appear in an object", t->span);
            },
            [&](const NConst& c) -> ObjPtr { return o_const(c.id); },
            [&](const NVar& v) -> ObjPtr {
              if (auto k = lookup(v.name)) return o_bound(*k);
              return o_free(v.name);
            },
            [&](const NLam& l) -> ObjPtr {
              FamPtr a = fam(l.ann);
              stack.push_back(l.binder);
              ObjPtr b = obj(l.body);
              stack.pop_back();
              return o_lam(a, b);
            },
            [&](const NPi&) -> ObjPtr {
              bail("a product cannot appear in an object", t->span);
            },
            [&](const NArrow&) -> ObjPtr {
              bail("a product cannot appear in an object", t->span);
            },
            [&](const NApp& a) -> ObjPtr {
              ObjPtr f = obj(a.fun);
              return o_app(f, obj(a.arg));
            },
        },
        t->node);
  }

  FamPtr fam(const NamedPtr& t) {
    return std::visit(
        overload{
            [&](const NType&) -> FamPtr {
              bail("expected a family, found the kind classifier", t->span);
            },
            [&](const NConst& c) -> FamPtr { return a_const(c.id); },
            [&](const NVar& v) -> FamPtr {
              if (lookup(v.name))
                bail("a variable cannot stand for a family", t->span,
                     show_name(v.name));
              return a_const(show_name(v.name));
            },
            [&](const NLam&) -> FamPtr {
              bail("a lambda cannot appear in a family", t->span);
            },
            [&](const NPi& p) -> FamPtr {
              FamPtr d = fam(p.dom);
              stack.push_back(p.binder);
              FamPtr b = fam(p.body);
              stack.pop_back();
              return pi_f(d, b);
            },
            [&](const NArrow& ar) -> FamPtr {
              FamPtr d = fam(ar.dom);
              stack.push_back(Name{});
              FamPtr b = fam(ar.cod);
              stack.pop_back();
              return pi_f(d, b);
            },
            [&](const NApp& a) -> FamPtr {
              FamPtr f = fam(a.fun);
              return f_app(f, obj(a.arg));
            },
        },
        t->node);
  }

  KindPtr kind(const NamedPtr& t) {
    return std::visit(
        overload{
            [&](const NType&) -> KindPtr { return type_k(); },
            [&](const NPi& p) -> KindPtr {
              FamPtr d = fam(p.dom);
              stack.push_back(p.binder);
              KindPtr b = kind(p.body);
              stack.pop_back();
              return pi_k(d, b);
            },
            [&](const NArrow& ar) -> KindPtr {
              FamPtr d = fam(ar.dom);
              stack.push_back(Name{});
              KindPtr b = kind(ar.cod);
              stack.pop_back();
              return pi_k(d, b);
            },
            [&](const auto&) -> KindPtr {
              bail("expected a kind", t->span);
            },
        },
        t->node);
  }
};

std::vector<Name> reversed(const std::vector<Name>& xs) {
  return std::vector<Name>(xs.rbegin(), xs.rend());
}

/* bound-index usage, for printing products as arrows */

bool ub_obj(const ObjPtr& m, std::uint64_t k);
bool ub_fam(const FamPtr& a, std::uint64_t k);
bool ub_kind(const KindPtr& kk, std::uint64_t k);

bool ub_obj(const ObjPtr& m, std::uint64_t k) {
  return std::visit(
      overload{
          [&](const OConst&) { return false; },
          [&](const Free&) { return false; },
          [&](const Bound& b) { return b.index == k; },
          [&](const Lam& l) {
            return ub_fam(l.domain, k) || ub_obj(l.body, k + 1);
          },
          [&](const OApp& a) { return ub_obj(a.fun, k) || ub_obj(a.arg, k); },
      },
      m->node);
}

bool ub_fam(const FamPtr& a, std::uint64_t k) {
  return std::visit(
      overload{
          [&](const AConst&) { return false; },
          [&](const PiF& p) {
            return ub_fam(p.domain, k) || ub_fam(p.body, k + 1);
          },
          [&](const FApp& f) { return ub_fam(f.fun, k) || ub_obj(f.arg, k); },
      },
      a->node);
}

bool ub_kind(const KindPtr& kk, std::uint64_t k) {
  return std::visit(
      overload{
          [&](const TypeK&) { return false; },
          [&](const PiK& p) {
            return ub_fam(p.domain, k) || ub_kind(p.body, k + 1);
          },
      },
      kk->node);
}

/* locally nameless -> named */

struct FromLn {
  std::vector<Name> stack;  // back = innermost
  std::set<Name> avoid;
  std::vector<Name> hints;
  std::size_t hint_i = 0;

  Name pick() {
    while (hint_i < hints.size()) {
      Name h = hints[hint_i++];
      if (!avoid.count(h)) {
        avoid.insert(h);
        return h;
      }
    }
    std::vector<Name> v(avoid.begin(), avoid.end());
    Name x = maxi(v);
    avoid.insert(x);
    return x;
  }

  const Name& named_at(std::uint64_t k, const std::optional<SourceSpan>& sp) {
    if (k >= stack.size())
      bail("loose bound index", sp, std::to_string(k), code::loose_index);
    return stack[stack.size() - 1 - k];
  }

  NamedPtr obj(const ObjPtr& m) {
    return std::visit(
        overload{
            [&](const OConst& c) { return n_const(c.id); },
            [&](const Free& f) { return n_var(f.name); },
            [&](const Bound& b) { return n_var(named_at(b.index, {})); },
            [&](const Lam& l) {
              NamedPtr ann = fam(l.domain);
              Name x = pick();
              stack.push_back(x);
              NamedPtr body = obj(l.body);
              stack.pop_back();
              return n_lam(x, ann, body);
            },
            [&](const OApp& a) { return n_app(obj(a.fun), obj(a.arg)); },
        },
        m->node);
  }

  NamedPtr fam(const FamPtr& a) {
    return std::visit(
        overload{
            [&](const AConst& c) { return n_const(c.id); },
            [&](const PiF& p) {
              NamedPtr dom = fam(p.domain);
              if (!ub_fam(p.body, 0)) {
                stack.push_back(Name{});
                NamedPtr cod = fam(p.body);
                stack.pop_back();
                return n_arrow(dom, cod);
              }
              Name x = pick();
              stack.push_back(x);
              NamedPtr body = fam(p.body);
              stack.pop_back();
              return n_pi(x, dom, body);
            },
            [&](const FApp& f) { return n_app(fam(f.fun), obj(f.arg)); },
        },
        a->node);
  }

  NamedPtr kind(const KindPtr& k) {
    return std::visit(
        overload{
            [&](const TypeK&) { return n_type(); },
            [&](const PiK& p) {
              NamedPtr dom = fam(p.domain);
              if (!ub_kind(p.body, 0)) {
                stack.push_back(Name{});
                NamedPtr cod = kind(p.body);
                stack.pop_back();
                return n_arrow(dom, cod);
              }
              Name x = pick();
              stack.push_back(x);
              NamedPtr body = kind(p.body);
              stack.pop_back();
              return n_pi(x, dom, body);
            },
        },
        k->node);
  }
};

/* canonical text */

int nprec(const NamedTerm& t) {
  return std::visit(
      overload{
          [](const NType&) { return 3; },
          [](const NConst&) { return 3; },
          [](const NVar&) { return 3; },
          [](const NLam&) { return 0; },
          [](const NPi&) { return 0; },
          [](const NArrow&) { return 1; },
          [](const NApp&) { return 2; },
      },
      t.node);
}

std::string pn(const NamedPtr& t, int p) {
  std::string s = std::visit(
      overload{
          [&](const NType&) -> std::string { return "type"; },
          [&](const NConst& c) -> std::string { return c.id; },
          [&](const NVar& v) -> std::string { return show_name(v.name); },
          [&](const NLam& l) -> std::string {
            return "lam " + show_name(l.binder) + " : " + pn(l.ann, 1) + " . " +
                   pn(l.body, 0);
          },
          [&](const NPi& pi) -> std::string {
            return "pi " + show_name(pi.binder) + " : " + pn(pi.dom, 1) +
                   " . " + pn(pi.body, 0);
          },
          [&](const NArrow& a) -> std::string {
            return pn(a.dom, 2) + " -> " + pn(a.cod, 1);
          },
          [&](const NApp& a) -> std::string {
            return pn(a.fun, 2) + " " + pn(a.arg, 3);
          },
      },
      t->node);
  if (nprec(*t) < p) return "(" + s + ")";
  return s;
}

}  // namespace

std::variant<ObjPtr, Diagnostic> to_ln_obj(const NamedPtr& t,
                                           const std::vector<Name>& xs) {
  try {
    ToLn c{reversed(xs)};
    return c.obj(t);
  } catch (const Fail& f) {
    return f.d;
  }
}

std::variant<FamPtr, Diagnostic> to_ln_fam(const NamedPtr& t,
                                           const std::vector<Name>& xs) {
  try {
    ToLn c{reversed(xs)};
    return c.fam(t);
  } catch (const Fail& f) {
    return f.d;
  }
}

std::variant<KindPtr, Diagnostic> to_ln_kind(const NamedPtr& t,
                                             const std::vector<Name>& xs) {
  try {
    ToLn c{reversed(xs)};
    return c.kind(t);
  } catch (const Fail& f) {
    return f.d;
  }
}

std::variant<NamedPtr, Diagnostic> from_ln_obj(const ObjPtr& m,
                                               const std::vector<Name>& hints) {
  try {
    FromLn c;
    c.avoid = fv_obj(m);
    c.hints = hints;
    return c.obj(m);
  } catch (const Fail& f) {
    return f.d;
  }
}

std::variant<NamedPtr, Diagnostic> from_ln_fam(const FamPtr& a,
                                               const std::vector<Name>& hints) {
  try {
    FromLn c;
    c.avoid = fv_fam(a);
    c.hints = hints;
    return c.fam(a);
  } catch (const Fail& f) {
    return f.d;
  }
}

std::variant<NamedPtr, Diagnostic> from_ln_kind(const KindPtr& k,
                                                const std::vector<Name>& hints) {
  try {
    FromLn c;
    c.avoid = fv_kind(k);
    c.hints = hints;
    return c.kind(k);
  } catch (const Fail& f) {
    return f.d;
  }
}

std::string print_named(const NamedPtr& t) { return pn(t, 0); }

std::string print_obj(const ObjPtr& m) {
  auto r = from_ln_obj(m);
  if (const auto* p = std::get_if<NamedPtr>(&r)) return print_named(*p);
  return show_obj(m);
}

std::string print_fam(const FamPtr& a) {
  auto r = from_ln_fam(a);
  if (const auto* p = std::get_if<NamedPtr>(&r)) return print_named(*p);
  return show_fam(a);
}

std::string print_kind(const KindPtr& k) {
  auto r = from_ln_kind(k);
  if (const auto* p = std::get_if<NamedPtr>(&r)) return print_named(*p);
  return show_kind(k);
}

std::variant<NamedPtr, Diagnostic> parse_term_named(std::string_view text,
                                                    const Signature& sig) {
  try {
    Parser p(text);
    p.sig = &sig;
    NamedPtr t = p.term();
    p.expect(Tk::End, "end of input");
    return t;
  } catch (const Fail& f) {
    return f.d;
  }
}

namespace {

template <class T, class Conv>
std::variant<T, Diagnostic> parse_at_level(std::string_view text,
                                           const Signature& sig, Conv conv) {
  try {
    Parser p(text);
    p.sig = &sig;
    NamedPtr t = p.term();
    p.expect(Tk::End, "end of input");
    ToLn c;
    return conv(c, t);
  } catch (const Fail& f) {
    return f.d;
  }
}

}  // namespace

std::variant<ObjPtr, Diagnostic> parse_obj(std::string_view text,
                                           const Signature& sig) {
  return parse_at_level<ObjPtr>(
      text, sig, [](ToLn& c, const NamedPtr& t) { return c.obj(t); });
}

std::variant<FamPtr, Diagnostic> parse_fam(std::string_view text,
                                           const Signature& sig) {
  return parse_at_level<FamPtr>(
      text, sig, [](ToLn& c, const NamedPtr& t) { return c.fam(t); });
}

std::variant<KindPtr, Diagnostic> parse_kind(std::string_view text,
                                             const Signature& sig) {
  return parse_at_level<KindPtr>(
      text, sig, [](ToLn& c, const NamedPtr& t) { return c.kind(t); });
}

std::variant<Context, Diagnostic> parse_context(std::string_view text,
                                                const Signature& sig) {
  try {
    Parser p(text);
    p.sig = &sig;
    Context g;
    if (p.at(Tk::End)) return g;
    while (true) {
      Token id = p.expect(Tk::Ident, "a variable name");
      p.expect(Tk::Colon, "':'");
      NamedPtr t = p.term();
      ToLn c;
      g = g.extended(ident_name(id.text), c.fam(t));
      if (p.at(Tk::Comma)) {
        p.take();
        continue;
      }
      p.expect(Tk::End, "',' or end of input");
      return g;
    }
  } catch (const Fail& f) {
    return f.d;
  }
}

namespace {

// A classifier that converts as a kind declares a family constant; otherwise
// it must convert as a family and declares an object constant.
std::variant<FamDecl, KindDecl> classify(const NamedPtr& t) {
  try {
    ToLn c;
    return KindDecl{c.kind(t)};
  } catch (const Fail&) {
  }
  ToLn c;
  return FamDecl{c.fam(t)};
}

}  // namespace

std::variant<ParsedSignature, Diagnostic> parse_signature(
    std::string_view text) {
  try {
    Parser p(text);
    ParsedSignature out;
    p.sig = &out.sig;
    while (!p.at(Tk::End)) {
      Token id = p.expect(Tk::Ident, "a declaration name");
      if (id.text.find('$') != std::string::npos)
        bail("'$' is reserved and cannot name a constant", id.span, id.text);
      if (out.sig.declares(id.text))
        bail("identifier already declared", id.span, id.text,
             code::duplicate_ident);
      p.expect(Tk::Colon, "':'");
      NamedPtr t = p.term();
      Token dot = p.expect(Tk::Dot, "'.'");
      auto decl = classify(t);
      if (auto* fd = std::get_if<FamDecl>(&decl))
        out.sig = out.sig.extended({id.text, std::move(*fd)});
      else
        out.sig = out.sig.extended({id.text, std::move(std::get<KindDecl>(decl))});
      SourceSpan sp = id.span;
      sp.end = dot.span.end;
      out.spans.emplace_back(id.text, sp);
    }
    return out;
  } catch (const Fail& f) {
    return f.d;
  }
}

std::string print_signature(const Signature& sig) {
  std::string out;
  for (auto it = sig.entries.rbegin(); it != sig.entries.rend(); ++it) {
    out += it->id + " : ";
    if (const auto* fd = std::get_if<FamDecl>(&it->decl))
      out += print_fam(fd->type);
    else
      out += print_kind(std::get<KindDecl>(it->decl).kind);
    out += ".\n";
  }
  return out;
}

/* derivation trees */

namespace {

Signature parse_sig_block(Parser& p) {
  p.expect(Tk::LParen, "'('");
  p.expect_word("sig");
  Signature s;
  const Signature* outer = p.sig;
  p.sig = &s;
  while (p.at(Tk::LParen)) {
    p.take();
    Token id = p.expect(Tk::Ident, "a declaration name");
    p.expect(Tk::Colon, "':'");
    NamedPtr t = p.term();
    p.expect(Tk::RParen, "')'");
    auto decl = classify(t);
    if (auto* fd = std::get_if<FamDecl>(&decl))
      s = s.extended({id.text, std::move(*fd)});
    else
      s = s.extended({id.text, std::move(std::get<KindDecl>(decl))});
  }
  p.expect(Tk::RParen, "')'");
  p.sig = outer;
  return s;
}

Context parse_ctx_block(Parser& p, const Signature& sig) {
  p.expect(Tk::LParen, "'('");
  p.expect_word("ctx");
  const Signature* outer = p.sig;
  p.sig = &sig;
  Context g;
  while (p.at(Tk::LParen)) {
    p.take();
    Token id = p.expect(Tk::Ident, "a variable name");
    p.expect(Tk::Colon, "':'");
    NamedPtr t = p.term();
    p.expect(Tk::RParen, "')'");
    ToLn c;
    g = g.extended(ident_name(id.text), c.fam(t));
  }
  p.expect(Tk::RParen, "')'");
  p.sig = outer;
  return g;
}

NamedPtr parse_wrapped(Parser& p, const Signature& sig) {
  const Signature* outer = p.sig;
  p.sig = &sig;
  p.expect(Tk::LParen, "'('");
  NamedPtr t = p.term();
  p.expect(Tk::RParen, "')'");
  p.sig = outer;
  return t;
}

JudgmentForm parse_judgment(Parser& p) {
  p.expect(Tk::LParen, "'('");
  Token tag = p.expect(Tk::Ident, "a judgment tag");
  Signature s = parse_sig_block(p);
  auto finish = [&](JudgmentForm j) {
    p.expect(Tk::RParen, "')'");
    return j;
  };
  if (tag.text == "sig-ok") return finish(SigOk{std::move(s)});
  Context g = parse_ctx_block(p, s);
  if (tag.text == "ctx-ok") return finish(CtxOk{std::move(s), std::move(g)});
  if (tag.text == "obj-ty") {
    ObjPtr m = ToLn{}.obj(parse_wrapped(p, s));
    FamPtr a = ToLn{}.fam(parse_wrapped(p, s));
    return finish(ObjTy{std::move(s), std::move(g), std::move(m), std::move(a)});
  }
  if (tag.text == "fam-ki") {
    FamPtr a = ToLn{}.fam(parse_wrapped(p, s));
    KindPtr k = ToLn{}.kind(parse_wrapped(p, s));
    return finish(FamKi{std::move(s), std::move(g), std::move(a), std::move(k)});
  }
  if (tag.text == "kind-ok") {
    KindPtr k = ToLn{}.kind(parse_wrapped(p, s));
    return finish(KindOk{std::move(s), std::move(g), std::move(k)});
  }
  if (tag.text == "obj-eq") {
    ObjPtr m = ToLn{}.obj(parse_wrapped(p, s));
    ObjPtr n = ToLn{}.obj(parse_wrapped(p, s));
    FamPtr a = ToLn{}.fam(parse_wrapped(p, s));
    return finish(ObjEq{std::move(s), std::move(g), std::move(m), std::move(n),
                        std::move(a)});
  }
  if (tag.text == "fam-eq") {
    FamPtr a = ToLn{}.fam(parse_wrapped(p, s));
    FamPtr b = ToLn{}.fam(parse_wrapped(p, s));
    KindPtr k = ToLn{}.kind(parse_wrapped(p, s));
    return finish(FamEq{std::move(s), std::move(g), std::move(a), std::move(b),
                        std::move(k)});
  }
  if (tag.text == "kind-eq") {
    KindPtr k = ToLn{}.kind(parse_wrapped(p, s));
    KindPtr l = ToLn{}.kind(parse_wrapped(p, s));
    return finish(
        KindEq{std::move(s), std::move(g), std::move(k), std::move(l)});
  }
  bail("unknown judgment tag", tag.span, tag.text);
}

DerivPtr parse_deriv_node(Parser& p) {
  p.expect(Tk::LParen, "'('");
  p.expect_word("rule");
  Token rule = p.expect(Tk::Ident, "a rule identifier");
  JudgmentForm j = parse_judgment(p);
  std::optional<Name> witness;
  if (p.at(Tk::LParen) && p.peek(1).kind == Tk::Ident &&
      p.peek(1).text == "fresh") {
    p.take();
    p.take();
    Token w = p.expect(Tk::Ident, "a witness name");
    p.expect(Tk::RParen, "')'");
    witness = ident_name(w.text);
  }
  p.expect(Tk::LParen, "'('");
  p.expect_word("prems");
  std::vector<DerivPtr> prems;
  while (p.at(Tk::LParen)) prems.push_back(parse_deriv_node(p));
  p.expect(Tk::RParen, "')'");
  p.expect(Tk::RParen, "')'");
  return deriv(rule.text, std::move(j), std::move(prems), witness);
}

std::string sig_sexp(const Signature& s) {
  std::string out = "(sig";
  for (auto it = s.entries.rbegin(); it != s.entries.rend(); ++it) {
    out += " (" + it->id + " : ";
    if (const auto* fd = std::get_if<FamDecl>(&it->decl))
      out += print_fam(fd->type);
    else
      out += print_kind(std::get<KindDecl>(it->decl).kind);
    out += ")";
  }
  return out + ")";
}

std::string ctx_sexp(const Context& g) {
  std::string out = "(ctx";
  for (auto it = g.entries.rbegin(); it != g.entries.rend(); ++it)
    out += " (" + show_name(it->name) + " : " + print_fam(it->type) + ")";
  return out + ")";
}

std::string judgment_sexp(const JudgmentForm& j) {
  auto wrap = [](const std::string& s) { return " (" + s + ")"; };
  return std::visit(
      overload{
          [&](const SigOk& x) {
            return "(sig-ok " + sig_sexp(x.sig) + ")";
          },
          [&](const CtxOk& x) {
            return "(ctx-ok " + sig_sexp(x.sig) + " " + ctx_sexp(x.ctx) + ")";
          },
          [&](const ObjTy& x) {
            return "(obj-ty " + sig_sexp(x.sig) + " " + ctx_sexp(x.ctx) +
                   wrap(print_obj(x.obj)) + wrap(print_fam(x.type)) + ")";
          },
          [&](const FamKi& x) {
            return "(fam-ki " + sig_sexp(x.sig) + " " + ctx_sexp(x.ctx) +
                   wrap(print_fam(x.fam)) + wrap(print_kind(x.kind)) + ")";
          },
          [&](const KindOk& x) {
            return "(kind-ok " + sig_sexp(x.sig) + " " + ctx_sexp(x.ctx) +
                   wrap(print_kind(x.kind)) + ")";
          },
          [&](const ObjEq& x) {
            return "(obj-eq " + sig_sexp(x.sig) + " " + ctx_sexp(x.ctx) +
                   wrap(print_obj(x.lhs)) + wrap(print_obj(x.rhs)) +
                   wrap(print_fam(x.type)) + ")";
          },
          [&](const FamEq& x) {
            return "(fam-eq " + sig_sexp(x.sig) + " " + ctx_sexp(x.ctx) +
                   wrap(print_fam(x.lhs)) + wrap(print_fam(x.rhs)) +
                   wrap(print_kind(x.kind)) + ")";
          },
          [&](const KindEq& x) {
            return "(kind-eq " + sig_sexp(x.sig) + " " + ctx_sexp(x.ctx) +
                   wrap(print_kind(x.lhs)) + wrap(print_kind(x.rhs)) + ")";
          },
      },
      j);
}

void print_deriv_node(std::string& out, const Derivation& d, int indent) {
  std::string pad(static_cast<std::size_t>(indent), ' ');
  std::string pad2(static_cast<std::size_t>(indent + 2), ' ');
  out += pad + "(rule " + d.rule + "\n";
  out += pad2 + judgment_sexp(d.conclusion);
  if (d.fresh_witness)
    out += "\n" + pad2 + "(fresh " + show_name(*d.fresh_witness) + ")";
  if (d.premises.empty()) {
    out += "\n" + pad2 + "(prems)";
  } else {
    out += "\n" + pad2 + "(prems";
    for (const auto& p : d.premises) {
      out += "\n";
      print_deriv_node(out, *p, indent + 4);
    }
    out += ")";
  }
  out += ")";
}

}  // namespace

std::variant<DerivPtr, Diagnostic> parse_derivation(std::string_view text) {
  try {
    Parser p(text);
    DerivPtr d = parse_deriv_node(p);
    p.expect(Tk::End, "end of input");
    return d;
  } catch (const Fail& f) {
    return f.d;
  }
}

std::string print_derivation(const Derivation& d) {
  std::string out;
  print_deriv_node(out, d, 0);
  out += "\n";
  return out;
}

}  // namespace lf
