// End-to-end acceptance checks. Each numbered check prints one PASS/FAIL
// line with its wall time; the process exits with the number of failures.
// Wall-clock budgets and fuel limits are pinned next to each check.
#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <variant>
#include <vector>

#include "deriv_builders.hpp"
#include "fol_corpus.hpp"
#include "helpers.hpp"
#include "lf/declarative.hpp"
#include "lf/equivalence.hpp"
#include "lf/fol.hpp"
#include "lf/reduction.hpp"
#include "lf/surface.hpp"
#include "lf/typecheck.hpp"

using namespace lf;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool ok;
  std::string detail;
};

Outcome pass() { return {true, ""}; }
Outcome fail(std::string detail) { return {false, std::move(detail)}; }

Name fresh_for(const std::set<Name>& used) {
  std::vector<Name> flat(used.begin(), used.end());
  return maxi(flat);
}

/* 1. Locally nameless round trips: close o open is the identity on binder
   bodies, open o close is the identity on terms containing the name, and
   the named-tree conversion inverts exactly. 1000 terms, budget 5 s. */
Outcome check_round_trips() {
  lftest::Gen gen(20260821);
  for (int i = 0; i < 1000; ++i) {
    ObjPtr body = gen.obj(4, 1);
    Name x = fresh_for(fv_obj(body));
    if (!equal(close_obj(open_obj(body, 0, o_free(x)), x, 0), body))
      return fail("close/open mismatch on " + show_obj(body));

    ObjPtr m = gen.obj(4, 0);
    Name y = fresh_for(fv_obj(m));
    ObjPtr with_y = o_app(m, o_free(y));
    if (!equal(open_obj(close_obj(with_y, y, 0), 0, o_free(y)), with_y))
      return fail("open/close mismatch on " + show_obj(with_y));

    auto named = from_ln_obj(m);
    const auto* nt = std::get_if<NamedPtr>(&named);
    if (!nt)
      return fail("named conversion failed on " + show_obj(m) + ": " +
                  std::get<Diagnostic>(named).message);
    auto back = to_ln_obj(*nt, {});
    const auto* lm = std::get_if<ObjPtr>(&back);
    if (!lm || !equal(*lm, m))
      return fail("named round trip changed " + show_obj(m));
  }
  return pass();
}

/* 2. Head reduction: the implementation's step agrees with an independent
   walker (so at most one rule applies at the head), and free variables
   never grow along a reduction chain. 1000 terms, budget 5 s. */
std::optional<ObjPtr> spec_head_step(const ObjPtr& m) {
  const auto* app = std::get_if<OApp>(&m->node);
  if (!app) return std::nullopt;
  if (const auto* lam = std::get_if<Lam>(&app->fun->node))
    return open_obj(lam->body, 0, app->arg);
  if (auto fun = spec_head_step(app->fun)) return o_app(*fun, app->arg);
  return std::nullopt;
}

Outcome check_head_reduction() {
  lftest::Gen gen(7);
  for (int i = 0; i < 1000; ++i) {
    ObjPtr m = i % 3 == 0
                   ? o_app(o_lam(gen.fam(2, 0), gen.obj(3, 1)), gen.obj(3, 0))
                   : gen.obj(4, 0);
    ObjPtr cur = m;
    for (int steps = 0; steps < 64; ++steps) {
      auto got = whr_step(cur);
      auto want = spec_head_step(cur);
      if (got.has_value() != want.has_value())
        return fail("step disagreement on " + show_obj(cur));
      if (!got) break;
      if (!equal(*got, *want))
        return fail("nondeterministic step on " + show_obj(cur));
      std::set<Name> before = fv_obj(cur);
      for (const Name& n : fv_obj(*got))
        if (!before.count(n))
          return fail("free variables grew stepping " + show_obj(cur));
      cur = *got;
    }
  }
  return pass();
}

/* 3. Erasure cancels substitution: erase(A[x:=V]) equals erase(A) exactly.
   1000 triples, budget 5 s. */
Outcome check_erasure_subst() {
  lftest::Gen gen(99);
  for (int i = 0; i < 1000; ++i) {
    FamPtr a = gen.fam(4, 0);
    Name x = gen.name();
    ObjPtr v = gen.obj(3, 0);
    if (!equal(erase_family(subst_free_fam(a, x, v)), erase_family(a)))
      return fail("erasure changed under substitution in " + show_fam(a));
  }
  return pass();
}

/* 4. The worked equivalence pair: (lam x : a . c) y and c are Equal at the
   erased base type, and the self-applied looping term against c exhausts
   the budget at every sampled fuel (1..1000 and 10^4, 10^5, 10^6) without
   ever reporting NotEqual. */
Outcome check_worked_pair() {
  Signature sig;
  sig = sig.extended({"a", KindDecl{type_k()}});
  sig = sig.extended({"b", KindDecl{type_k()}});
  sig = sig.extended({"c", FamDecl{a_const("b")}});
  SimpleSignature ss = erase_sig(sig);
  SimpleContext d = SimpleContext{}.extended(Name{"y", 0}, s_base("a"));

  ObjPtr redex = o_app(o_lam(a_const("a"), o_const("c")), o_free(Name{"y", 0}));
  Fuel fuel(1000);
  if (!is_equal(obj_equiv(ss, d, redex, o_const("c"), s_base("b"), fuel)))
    return fail("redex pair not Equal at the base type");

  ObjPtr self = o_lam(a_const("a"), o_app(o_bound(0), o_bound(0)));
  ObjPtr omega = o_app(self, self);
  std::vector<std::uint64_t> fuels;
  for (std::uint64_t f = 1; f <= 1000; ++f) fuels.push_back(f);
  fuels.insert(fuels.end(), {10000, 100000, 1000000});
  for (std::uint64_t f : fuels) {
    Fuel budget(f);
    EquivOutcome o = obj_equiv(ss, d, omega, o_const("c"), s_base("b"), budget);
    if (!std::holds_alternative<OutOfFuel>(o))
      return fail("looping comparison at fuel " + std::to_string(f) +
                  " did not report exhaustion");
  }
  return pass();
}

/* Shared corpus for checks 5 through 8: exhaustive well-typed objects over
   the first-order signature under x, y : iota, by maximum depth.
     iota terms:        x | y | f M N
     o terms:           eq M N | and P Q | all F
     iota -> o terms:   eq M | lam v : iota . B
   Depth 4 yields several thousand terms; every term carries its type. */
struct Typed {
  ObjPtr m;
  FamPtr ty;
};

struct Corpus {
  Signature sig = sigma_fo();
  Context ctx;
  SimpleSignature ss;
  SimpleContext sd;
  std::vector<Typed> terms;        // all levels mixed, depth <= 4
  std::vector<Typed> slice;        // depth <= 3 plus a stride of depth 4
  std::vector<Typed> pi_typed;     // the iota -> o subset

  Corpus() {
    ctx = Context{}
              .extended(Name{"x", 0}, a_const("iota"))
              .extended(Name{"y", 0}, a_const("iota"));
    ss = erase_sig(sig);
    sd = erase_ctx(ctx);

    FamPtr iota = a_const("iota");
    FamPtr o = a_const("o");
    FamPtr io = pi_f(iota, o);
    ObjPtr f = o_const("f"), eq = o_const("eq"), an = o_const("and"),
           al = o_const("all");

    std::array<std::vector<ObjPtr>, 5> t, oo, fn;
    t[1] = {o_free(Name{"x", 0}), o_free(Name{"y", 0})};
    for (int d = 2; d <= 4; ++d) {
      t[d] = t[1];
      for (const ObjPtr& m : t[d - 1])
        for (const ObjPtr& n : t[d - 1])
          t[d].push_back(o_app(o_app(f, m), n));
      for (const ObjPtr& m : t[d - 1])
        for (const ObjPtr& n : t[d - 1])
          oo[d].push_back(o_app(o_app(eq, m), n));
      for (const ObjPtr& p : oo[d - 1])
        for (const ObjPtr& q : oo[d - 1])
          oo[d].push_back(o_app(o_app(an, p), q));
      for (const ObjPtr& g : fn[d - 1]) oo[d].push_back(o_app(al, g));
      for (const ObjPtr& m : t[d - 1]) fn[d].push_back(o_app(eq, m));
      fn[d].push_back(
          o_lam(iota, o_app(o_app(eq, o_bound(0)), o_bound(0))));
      for (const ObjPtr& p : oo[d - 1]) fn[d].push_back(o_lam(iota, p));
      if (d >= 3)
        for (const ObjPtr& m : t[d - 2])
          fn[d].push_back(o_lam(iota, o_app(o_app(eq, o_bound(0)), m)));
    }

    auto fill = [&](int d, std::vector<Typed>& out) {
      for (const ObjPtr& m : t[d]) out.push_back({m, iota});
      for (const ObjPtr& m : oo[d]) out.push_back({m, o});
      for (const ObjPtr& m : fn[d]) out.push_back({m, io});
    };
    fill(4, terms);
    fill(3, slice);
    std::size_t stride = 1 + terms.size() / 300;
    for (std::size_t i = 0; i < terms.size(); i += stride)
      slice.push_back(terms[i]);
    for (const ObjPtr& m : fn[4]) pi_typed.push_back({m, io});
  }

  ObjPtr idwrap(const Typed& tm) const {
    return o_app(o_lam(tm.ty, o_bound(0)), tm.m);
  }
};

const Corpus& corpus() {
  static Corpus c;
  return c;
}

/* 5. Equal verdicts are symmetric, transitive along redex chains, and
   stable under deleting an unused context entry. At least 200 pairs,
   budget 60 s. */
Outcome check_equal_is_an_equivalence() {
  const Corpus& c = corpus();
  SimpleContext wide = c.sd.extended(Name{"z", 9}, s_base("iota"));
  std::size_t pairs = 0;
  for (const Typed& tm : c.slice) {
    STypePtr tau = erase_family(tm.ty);
    ObjPtr r1 = c.idwrap(tm);
    ObjPtr r2 = o_app(o_lam(tm.ty, o_bound(0)), r1);
    std::array<std::pair<ObjPtr, ObjPtr>, 3> batch = {
        std::make_pair(tm.m, r1), std::make_pair(r1, r2),
        std::make_pair(tm.m, r2)};
    for (const auto& [lhs, rhs] : batch) {
      Fuel f1(100000), f2(100000), f3(100000);
      if (!is_equal(obj_equiv(c.ss, c.sd, lhs, rhs, tau, f1)))
        return fail("pair not Equal: " + show_obj(lhs) + " vs " +
                    show_obj(rhs));
      if (!is_equal(obj_equiv(c.ss, c.sd, rhs, lhs, tau, f2)))
        return fail("Equal not symmetric on " + show_obj(lhs));
      if (!is_equal(obj_equiv(c.ss, wide, lhs, rhs, tau, f3)))
        return fail("Equal not stable under an unused entry on " +
                    show_obj(lhs));
      ++pairs;
    }
  }
  if (pairs < 200)
    return fail("only " + std::to_string(pairs) + " pairs exercised");
  return pass();
}

/* 6. Reflexive completeness and subject reduction: every corpus term is
   Equal to itself at its erased synthesized type, and contracting the
   identity wrapper preserves the synthesized type up to family
   equivalence. Budget 60 s. */
Outcome check_synthesis_agrees() {
  const Corpus& c = corpus();
  Fuel fuel(50000000);
  auto vs = check_sig(c.sig, fuel);
  const auto* sig_ok = std::get_if<ValidSig>(&vs);
  if (!sig_ok) return fail("first-order signature rejected");
  auto vc = check_ctx(*sig_ok, c.ctx, fuel);
  const auto* ctx_ok = std::get_if<ValidCtx>(&vc);
  if (!ctx_ok) return fail("x, y : iota rejected");

  for (const Typed& tm : c.terms) {
    ObjResult r = synth_obj(*sig_ok, *ctx_ok, tm.m, fuel);
    const auto* a = std::get_if<FamPtr>(&r);
    if (!a)
      return fail("corpus term failed to typecheck: " + show_obj(tm.m) +
                  ": " + std::get<Diagnostic>(r).message);
    if (!is_equal(
            obj_equiv(c.ss, c.sd, tm.m, tm.m, erase_family(*a), fuel)))
      return fail("not self-Equal: " + show_obj(tm.m));
  }

  for (const Typed& tm : c.slice) {
    ObjPtr wrapped = c.idwrap(tm);
    ObjResult before = synth_obj(*sig_ok, *ctx_ok, wrapped, fuel);
    auto stepped = whr_step(wrapped);
    if (!stepped) return fail("identity wrapper did not step");
    ObjResult after = synth_obj(*sig_ok, *ctx_ok, *stepped, fuel);
    const auto* a1 = std::get_if<FamPtr>(&before);
    const auto* a2 = std::get_if<FamPtr>(&after);
    if (!a1 || !a2)
      return fail("synthesis failed around a step on " + show_obj(tm.m));
    if (!is_equal(fam_equiv(c.ss, c.sd, *a1, *a2, s_type(), fuel)))
      return fail("type changed across a step on " + show_obj(tm.m));
  }
  return pass();
}

/* 7. Extensionality: every function-typed corpus term is Equal to its
   one-step eta-expansion at the erased Pi type. */
Outcome check_eta() {
  const Corpus& c = corpus();
  for (const Typed& tm : c.pi_typed) {
    const auto* pi = std::get_if<PiF>(&tm.ty->node);
    if (!pi) return fail("non-Pi in the function-typed subset");
    ObjPtr expanded = o_lam(pi->domain, o_app(tm.m, o_bound(0)));
    Fuel fuel(100000);
    if (!is_equal(
            obj_equiv(c.ss, c.sd, tm.m, expanded, erase_family(tm.ty), fuel)))
      return fail("eta expansion not Equal for " + show_obj(tm.m));
  }
  return pass();
}

/* 8. The family equivalence and its syntax-directed weak variant agree on
   every pair of well-kinded families: all pairs from the closure of
   {iota, o} under arrows to depth 3, plus dependent pairs whose argument
   positions differ by a beta step. */
Outcome check_weak_agreement() {
  const Corpus& c = corpus();
  std::array<std::vector<FamPtr>, 4> fams;
  fams[1] = {a_const("iota"), a_const("o")};
  for (int d = 2; d <= 3; ++d) {
    fams[d] = fams[1];
    for (const FamPtr& a : fams[d - 1])
      for (const FamPtr& b : fams[d - 1]) fams[d].push_back(pi_f(a, b));
  }
  for (const FamPtr& a : fams[3])
    for (const FamPtr& b : fams[3]) {
      Fuel f1(100000), f2(100000);
      EquivOutcome strong = fam_equiv(c.ss, c.sd, a, b, s_type(), f1);
      EquivOutcome weak = fam_equiv_weak(c.ss, c.sd, a, b, s_type(), f2);
      if (strong.index() != weak.index())
        return fail("weak/strong disagree on " + show_fam(a) + " vs " +
                    show_fam(b));
    }

  Signature dep;
  dep = dep.extended({"a", KindDecl{type_k()}});
  dep = dep.extended({"arr", KindDecl{pi_k(a_const("a"), type_k())}});
  dep = dep.extended({"c", FamDecl{a_const("a")}});
  SimpleSignature ss = erase_sig(dep);
  SimpleContext sd;
  ObjPtr cc = o_const("c");
  ObjPtr redexc = o_app(o_lam(a_const("a"), o_bound(0)), cc);
  std::vector<std::pair<FamPtr, FamPtr>> hand = {
      {f_app(a_const("arr"), cc), f_app(a_const("arr"), redexc)},
      {pi_f(a_const("a"), f_app(a_const("arr"), o_bound(0))),
       pi_f(a_const("a"), f_app(a_const("arr"), o_bound(0)))},
      {f_app(a_const("arr"), cc), f_app(a_const("arr"), o_const("c"))},
  };
  for (const auto& [a, b] : hand) {
    Fuel f1(100000), f2(100000);
    EquivOutcome strong = fam_equiv(ss, sd, a, b, s_type(), f1);
    EquivOutcome weak = fam_equiv_weak(ss, sd, a, b, s_type(), f2);
    if (!is_equal(strong) || !is_equal(weak))
      return fail("dependent pair not Equal under both variants: " +
                  show_fam(a) + " vs " + show_fam(b));
  }
  return pass();
}

/* 9. Derivation corpus: every reference file is accepted, 100 seeded
   single-field mutations of each are rejected, and each accepted object
   equality node is confirmed by the decision procedure. Budget 30 s. */
void collect_obj_eqs(const DerivPtr& d, std::vector<const ObjEq*>& out) {
  if (const auto* oe = std::get_if<ObjEq>(&d->conclusion)) out.push_back(oe);
  for (const DerivPtr& p : d->premises) collect_obj_eqs(p, out);
}

Outcome check_derivation_corpus() {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(LF_GOLDEN_DIR))
    if (entry.path().extension() == ".lfd") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.size() < 10)
    return fail("only " + std::to_string(files.size()) +
                " derivation files found");

  lftest::Mutator mut(4177);
  for (const fs::path& path : files) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    auto parsed = parse_derivation(buf.str());
    const auto* d = std::get_if<DerivPtr>(&parsed);
    if (!d)
      return fail(path.filename().string() + " does not parse: " +
                  std::get<Diagnostic>(parsed).message);
    if (auto err = check_derivation(**d))
      return fail(path.filename().string() + " rejected: " + err->message);

    for (int i = 0; i < 100; ++i) {
      DerivPtr m = mut.mutate(*d);
      if (!m) return fail("mutation failed on " + path.filename().string());
      if (!check_derivation(*m))
        return fail("a mutation of " + path.filename().string() +
                    " was accepted");
    }

    std::vector<const ObjEq*> eqs;
    collect_obj_eqs(*d, eqs);
    for (const ObjEq* oe : eqs) {
      Fuel fuel(1000000);
      if (!is_equal(obj_equiv(erase_sig(oe->sig), erase_ctx(oe->ctx), oe->lhs,
                              oe->rhs, erase_family(oe->type), fuel)))
        return fail("accepted equality not confirmed in " +
                    path.filename().string());
    }
  }
  return pass();
}

/* 10. Canonical witnesses and the first-order encoding: the quasicanonical
   witness is byte-identical under every permutation of the context, the
   depth-3 formula enumeration round-trips through encode/decode, and every
   encoding elaborates to a well-typed object. Budget 60 s. */
Outcome check_canonical_and_encoding() {
  const Corpus& c = corpus();

  std::vector<SCtxEntry> entries = {
      {Name{"x", 0}, s_base("iota")},
      {Name{"y", 0}, s_base("iota")},
      {Name{"z", 0}, s_base("iota")},
  };
  std::vector<Typed> sample;
  for (std::size_t i = 0; i < c.slice.size(); i += 7)
    sample.push_back(c.slice[i]);
  std::sort(entries.begin(), entries.end(),
            [](const SCtxEntry& a, const SCtxEntry& b) {
              return a.name < b.name;
            });
  for (const Typed& tm : sample) {
    std::string first;
    std::vector<SCtxEntry> perm = entries;
    do {
      SimpleContext d;
      d.entries = perm;
      Fuel fuel(100000);
      QEquivOutcome q =
          obj_equiv_q(c.ss, d, tm.m, tm.m, erase_family(tm.ty), fuel);
      const auto* ok = std::get_if<QEquivOk>(&q);
      if (!ok) return fail("no canonical witness for " + show_obj(tm.m));
      std::string shown = show_qcan(ok->canon);
      if (first.empty())
        first = shown;
      else if (shown != first)
        return fail("witness depends on context order for " +
                    show_obj(tm.m));
    } while (std::next_permutation(perm.begin(), perm.end(),
                                   [](const SCtxEntry& a, const SCtxEntry& b) {
                                     return a.name < b.name;
                                   }));
  }

  std::vector<Name> scope = {Name{"x", 0}, Name{"y", 0}};
  auto fol_ctx = Context{}
                     .extended(Name{"x", 0}, a_const("iota"))
                     .extended(Name{"y", 0}, a_const("iota"));
  std::vector<FolFormulaPtr> formulas = lftest::fol_formula_corpus(3);
  if (formulas.size() < 200)
    return fail("formula enumeration unexpectedly small");
  Fuel big(50000000);
  auto vs = check_sig(sigma_fo(), big);
  const auto* sig_ok = std::get_if<ValidSig>(&vs);
  if (!sig_ok) return fail("encoding signature rejected");
  auto vc = check_ctx(*sig_ok, fol_ctx, big);
  const auto* ctx_ok = std::get_if<ValidCtx>(&vc);
  if (!ctx_ok) return fail("encoding context rejected");

  for (const FolFormulaPtr& phi : formulas) {
    auto enc = encode_formula(scope, phi);
    const auto* q = std::get_if<QCanPtr>(&enc);
    if (!q)
      return fail("encoding failed: " + print_fol_formula(phi));
    auto dec = decode_formula(scope, *q);
    const auto* back = std::get_if<FolFormulaPtr>(&dec);
    if (!back || !alpha_equal(*back, phi))
      return fail("decode did not invert encode on " +
                  print_fol_formula(phi));

    auto elab = elaborate(sigma_fo(), fol_ctx, *q, a_const("o"), big);
    const auto* obj = std::get_if<ObjPtr>(&elab);
    if (!obj)
      return fail("elaboration failed on " + print_fol_formula(phi));
    ObjResult r = synth_obj(*sig_ok, *ctx_ok, *obj, big);
    const auto* a = std::get_if<FamPtr>(&r);
    if (!a)
      return fail("elaborated encoding ill-typed on " +
                  print_fol_formula(phi));
    if (!is_equal(fam_equiv(c.ss, erase_ctx(fol_ctx), *a, a_const("o"),
                            s_type(), big)))
      return fail("elaborated encoding not at o: " +
                  print_fol_formula(phi));
  }
  return pass();
}

/* 11. Command line end to end: checking the shipped signatures produces
   byte-identical machine output and the pinned exit codes (0 accepted,
   1 rejected, 2 out of fuel at --fuel 50). */
Outcome check_cli() {
  struct Run {
    std::string args;
    std::string golden;
    int code;
  };
  std::vector<Run> runs = {
      {"check --json " + std::string(LF_GOLDEN_DIR) + "/sigma_fo.lf",
       "check_sigma_fo.json", 0},
      {"check --json " + std::string(LF_GOLDEN_DIR) + "/stlc.lf",
       "check_stlc.json", 0},
      {"check --json " + std::string(LF_GOLDEN_DIR) + "/nat.lf",
       "check_nat.json", 0},
      {"check --json " + std::string(LF_GOLDEN_DIR) + "/dup.lf",
       "check_dup.json", 1},
      {"check --json --fuel 50 " + std::string(LF_GOLDEN_DIR) + "/omega.lf",
       "check_omega_fuel50.json", 2},
  };
  for (const Run& run : runs) {
    std::string cmd = std::string(LF_CLI_PATH) + " " + run.args;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return fail("cannot spawn " + cmd);
    std::string out;
    char chunk[4096];
    std::size_t got;
    while ((got = fread(chunk, 1, sizeof chunk, pipe)) > 0)
      out.append(chunk, got);
    int status = pclose(pipe);
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    if (code != run.code)
      return fail(run.golden + ": exit " + std::to_string(code) +
                  ", expected " + std::to_string(run.code));
    std::ifstream in(std::string(LF_GOLDEN_DIR) + "/json/" + run.golden,
                     std::ios::binary);
    std::stringstream want;
    want << in.rdbuf();
    if (out != want.str())
      return fail(run.golden + ": output differs from the reference");
  }
  return pass();
}

}  // namespace

int main() {
  struct Check {
    const char* label;
    double budget_s;  // 0 means no wall budget pinned
    std::function<Outcome()> run;
  };
  std::vector<Check> checks = {
      {"locally nameless and named round trips on 1000 terms", 5,
       check_round_trips},
      {"head reduction is deterministic and never grows free variables", 5,
       check_head_reduction},
      {"erasure cancels substitution on 1000 triples", 5,
       check_erasure_subst},
      {"worked equivalence pair and fuel exhaustion sweep", 0,
       check_worked_pair},
      {"Equal verdicts: symmetric, transitive, stable under unused entries",
       60, check_equal_is_an_equivalence},
      {"self-equivalence at synthesized types and subject reduction", 60,
       check_synthesis_agrees},
      {"eta expansion is an equality at every function type", 0, check_eta},
      {"weak and strong family equivalence agree on all pairs", 0,
       check_weak_agreement},
      {"derivation corpus accepted, mutations rejected, equalities confirmed",
       30, check_derivation_corpus},
      {"canonical witnesses are context-order independent; encoding round trips",
       60, check_canonical_and_encoding},
      {"command line output and exit codes match the references", 0,
       check_cli},
  };

  int failures = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    auto start = Clock::now();
    Outcome o = checks[i].run();
    double secs = std::chrono::duration<double>(Clock::now() - start).count();
    bool in_budget = checks[i].budget_s == 0 || secs <= checks[i].budget_s;
    bool ok = o.ok && in_budget;
    std::printf("%2zu  %s  %6.2fs  %s", i + 1, ok ? "PASS" : "FAIL", secs,
                checks[i].label);
    if (checks[i].budget_s > 0)
      std::printf("  (budget %.0fs)", checks[i].budget_s);
    std::printf("\n");
    if (!o.ok) std::printf("      %s\n", o.detail.c_str());
    if (o.ok && !in_budget) std::printf("      over budget\n");
    if (!ok) ++failures;
  }
  std::printf("%d of %zu failed\n", failures, checks.size());
  return failures;
}
