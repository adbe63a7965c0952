#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "lf/declarative.hpp"
#include "lf/diag.hpp"
#include "lf/equivalence.hpp"
#include "lf/erasure.hpp"
#include "lf/fol.hpp"
#include "lf/surface.hpp"
#include "lf/syntax.hpp"
#include "lf/typecheck.hpp"

namespace {

struct Report {
  std::string status = "ok";  // ok | error | fuel
  std::vector<lf::Diagnostic> diagnostics;
  std::optional<std::string> result;
};

Report from_diag(lf::Diagnostic d) {
  Report r;
  r.status = d.code == lf::code::out_of_fuel ? "fuel" : "error";
  r.diagnostics.push_back(std::move(d));
  return r;
}

Report ok_report(std::optional<std::string> result = std::nullopt) {
  Report r;
  r.result = std::move(result);
  return r;
}

int exit_code_for(const Report& r) {
  if (r.status == "ok") return 0;
  if (r.status == "fuel") return 2;
  for (const auto& d : r.diagnostics)
    if (d.code == lf::code::parse_error || d.code == lf::code::io_error)
      return 3;
  return 1;
}

void emit(const Report& r, bool json, bool quiet) {
  if (json) {
    nlohmann::ordered_json j;
    j["status"] = r.status;
    j["diagnostics"] = nlohmann::ordered_json::array();
    for (const auto& d : r.diagnostics) {
      nlohmann::ordered_json jd;
      jd["code"] = d.code;
      jd["message"] = d.message;
      jd["path"] = d.path;
      if (d.span) {
        jd["span"] = {{"begin", d.span->begin},
                      {"end", d.span->end},
                      {"line", d.span->line},
                      {"column", d.span->column}};
      } else {
        jd["span"] = nullptr;
      }
      j["diagnostics"].push_back(std::move(jd));
    }
    if (r.result) j["result"] = *r.result;
    std::cout << j.dump(2) << "\n";
    return;
  }
  if (quiet) return;
  for (const auto& d : r.diagnostics) {
    std::cout << "error[" << d.code << "]: " << d.message << "\n";
    if (d.span)
      std::cout << "  at line " << d.span->line << ", column " << d.span->column
                << "\n";
    if (!d.path.empty()) {
      std::cout << "  in ";
      for (std::size_t i = 0; i < d.path.size(); ++i) {
        if (i) std::cout << " / ";
        std::cout << d.path[i];
      }
      std::cout << "\n";
    }
    if (!d.subterm.empty()) std::cout << "  subterm: " << d.subterm << "\n";
  }
  if (r.status == "fuel" && r.diagnostics.empty())
    std::cout << "out of fuel\n";
  if (r.status == "ok") std::cout << (r.result ? *r.result : "ok") << "\n";
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Report io_fail(const std::string& path) {
  return from_diag(lf::Diagnostic{lf::code::io_error, "cannot read file", {},
                                  path, std::nullopt});
}

// Loads and validates a signature file, producing everything the term verbs
// need. On failure the report is already filled in.
struct SigEnv {
  lf::Signature sig;
  std::optional<lf::ValidSig> valid;
};

std::variant<SigEnv, Report> load_sig(const std::string& path, lf::Fuel& fuel) {
  auto text = read_file(path);
  if (!text) return io_fail(path);
  auto parsed = lf::parse_signature(*text);
  if (auto* d = std::get_if<lf::Diagnostic>(&parsed))
    return from_diag(std::move(*d));
  SigEnv env;
  env.sig = std::move(std::get<lf::ParsedSignature>(parsed).sig);
  auto checked = lf::check_sig(env.sig, fuel);
  if (auto* d = std::get_if<lf::Diagnostic>(&checked))
    return from_diag(std::move(*d));
  env.valid = std::move(std::get<lf::ValidSig>(checked));
  return env;
}

struct CtxEnv {
  lf::Context ctx;
  std::optional<lf::ValidCtx> valid;
};

std::variant<CtxEnv, Report> load_ctx(const SigEnv& env, const std::string& text,
                                      lf::Fuel& fuel) {
  auto parsed = lf::parse_context(text, env.sig);
  if (auto* d = std::get_if<lf::Diagnostic>(&parsed))
    return from_diag(std::move(*d));
  CtxEnv c;
  c.ctx = std::move(std::get<lf::Context>(parsed));
  auto checked = lf::check_ctx(*env.valid, c.ctx, fuel);
  if (auto* d = std::get_if<lf::Diagnostic>(&checked))
    return from_diag(std::move(*d));
  c.valid = std::move(std::get<lf::ValidCtx>(checked));
  return c;
}

Report do_check(const std::string& path, lf::Fuel& fuel) {
  auto env = load_sig(path, fuel);
  if (auto* r = std::get_if<Report>(&env)) return std::move(*r);
  return ok_report();
}

Report do_synth(const std::string& sig_path, const std::string& ctx_text,
                const std::string& term_text, const std::string& level,
                lf::Fuel& fuel) {
  auto env_v = load_sig(sig_path, fuel);
  if (auto* r = std::get_if<Report>(&env_v)) return std::move(*r);
  const SigEnv& env = std::get<SigEnv>(env_v);
  auto ctx_v = load_ctx(env, ctx_text, fuel);
  if (auto* r = std::get_if<Report>(&ctx_v)) return std::move(*r);
  const CtxEnv& ctx = std::get<CtxEnv>(ctx_v);

  if (level == "obj") {
    auto term = lf::parse_obj(term_text, env.sig);
    if (auto* d = std::get_if<lf::Diagnostic>(&term))
      return from_diag(std::move(*d));
    auto ty = lf::synth_obj(*env.valid, *ctx.valid, std::get<lf::ObjPtr>(term),
                            fuel);
    if (auto* d = std::get_if<lf::Diagnostic>(&ty))
      return from_diag(std::move(*d));
    return ok_report(lf::print_fam(std::get<lf::FamPtr>(ty)));
  }
  if (level == "fam") {
    auto term = lf::parse_fam(term_text, env.sig);
    if (auto* d = std::get_if<lf::Diagnostic>(&term))
      return from_diag(std::move(*d));
    auto ki = lf::synth_fam(*env.valid, *ctx.valid, std::get<lf::FamPtr>(term),
                            fuel);
    if (auto* d = std::get_if<lf::Diagnostic>(&ki))
      return from_diag(std::move(*d));
    return ok_report(lf::print_kind(std::get<lf::KindPtr>(ki)));
  }
  auto term = lf::parse_kind(term_text, env.sig);
  if (auto* d = std::get_if<lf::Diagnostic>(&term))
    return from_diag(std::move(*d));
  auto verdict =
      lf::check_kind(*env.valid, *ctx.valid, std::get<lf::KindPtr>(term), fuel);
  if (verdict) return from_diag(std::move(*verdict));
  return ok_report();
}

Report outcome_report(const lf::EquivOutcome& eq) {
  if (std::holds_alternative<lf::Equal>(eq)) return ok_report("equal");
  if (std::holds_alternative<lf::OutOfFuel>(eq))
    return from_diag(lf::Diagnostic{lf::code::out_of_fuel,
                                    "step budget exhausted", {}, "",
                                    std::nullopt});
  return from_diag(std::get<lf::NotEqual>(eq).why);
}

Report do_equiv(const std::string& sig_path, const std::string& ctx_text,
                const std::string& lhs_text, const std::string& rhs_text,
                const std::string& at_text, const std::string& level,
                lf::Fuel& fuel) {
  auto env_v = load_sig(sig_path, fuel);
  if (auto* r = std::get_if<Report>(&env_v)) return std::move(*r);
  const SigEnv& env = std::get<SigEnv>(env_v);
  auto ctx_v = load_ctx(env, ctx_text, fuel);
  if (auto* r = std::get_if<Report>(&ctx_v)) return std::move(*r);
  const CtxEnv& ctx = std::get<CtxEnv>(ctx_v);
  const lf::SimpleSignature& ssig = env.valid->erased();
  const lf::SimpleContext& sctx = ctx.valid->erased();

  if (level == "obj") {
    auto lhs = lf::parse_obj(lhs_text, env.sig);
    if (auto* d = std::get_if<lf::Diagnostic>(&lhs))
      return from_diag(std::move(*d));
    auto rhs = lf::parse_obj(rhs_text, env.sig);
    if (auto* d = std::get_if<lf::Diagnostic>(&rhs))
      return from_diag(std::move(*d));
    auto at = lf::parse_fam(at_text, env.sig);
    if (auto* d = std::get_if<lf::Diagnostic>(&at))
      return from_diag(std::move(*d));
    return outcome_report(lf::obj_equiv(
        ssig, sctx, std::get<lf::ObjPtr>(lhs), std::get<lf::ObjPtr>(rhs),
        lf::erase_family(std::get<lf::FamPtr>(at)), fuel));
  }
  if (level == "fam") {
    auto lhs = lf::parse_fam(lhs_text, env.sig);
    if (auto* d = std::get_if<lf::Diagnostic>(&lhs))
      return from_diag(std::move(*d));
    auto rhs = lf::parse_fam(rhs_text, env.sig);
    if (auto* d = std::get_if<lf::Diagnostic>(&rhs))
      return from_diag(std::move(*d));
    auto at = lf::parse_kind(at_text, env.sig);
    if (auto* d = std::get_if<lf::Diagnostic>(&at))
      return from_diag(std::move(*d));
    return outcome_report(lf::fam_equiv(
        ssig, sctx, std::get<lf::FamPtr>(lhs), std::get<lf::FamPtr>(rhs),
        lf::erase_kind(std::get<lf::KindPtr>(at)), fuel));
  }
  auto lhs = lf::parse_kind(lhs_text, env.sig);
  if (auto* d = std::get_if<lf::Diagnostic>(&lhs))
    return from_diag(std::move(*d));
  auto rhs = lf::parse_kind(rhs_text, env.sig);
  if (auto* d = std::get_if<lf::Diagnostic>(&rhs))
    return from_diag(std::move(*d));
  return outcome_report(lf::kind_equiv(ssig, sctx, std::get<lf::KindPtr>(lhs),
                                       std::get<lf::KindPtr>(rhs), fuel));
}

Report do_qnf(const std::string& sig_path, const std::string& ctx_text,
              const std::string& term_text, const std::string& at_text,
              lf::Fuel& fuel) {
  auto env_v = load_sig(sig_path, fuel);
  if (auto* r = std::get_if<Report>(&env_v)) return std::move(*r);
  const SigEnv& env = std::get<SigEnv>(env_v);
  auto ctx_v = load_ctx(env, ctx_text, fuel);
  if (auto* r = std::get_if<Report>(&ctx_v)) return std::move(*r);
  const CtxEnv& ctx = std::get<CtxEnv>(ctx_v);
  auto term = lf::parse_obj(term_text, env.sig);
  if (auto* d = std::get_if<lf::Diagnostic>(&term))
    return from_diag(std::move(*d));
  auto at = lf::parse_fam(at_text, env.sig);
  if (auto* d = std::get_if<lf::Diagnostic>(&at))
    return from_diag(std::move(*d));
  const lf::ObjPtr& m = std::get<lf::ObjPtr>(term);
  lf::QEquivOutcome q =
      lf::obj_equiv_q(env.valid->erased(), ctx.valid->erased(), m, m,
                      lf::erase_family(std::get<lf::FamPtr>(at)), fuel);
  if (auto* okq = std::get_if<lf::QEquivOk>(&q))
    return ok_report(lf::show_qcan(okq->canon));
  if (std::holds_alternative<lf::OutOfFuel>(q))
    return from_diag(lf::Diagnostic{lf::code::out_of_fuel,
                                    "step budget exhausted", {}, "",
                                    std::nullopt});
  return from_diag(std::get<lf::NotEqual>(q).why);
}

Report do_checkderiv(const std::string& path) {
  auto text = read_file(path);
  if (!text) return io_fail(path);
  auto parsed = lf::parse_derivation(*text);
  if (auto* d = std::get_if<lf::Diagnostic>(&parsed))
    return from_diag(std::move(*d));
  auto verdict = lf::check_derivation(*std::get<lf::DerivPtr>(parsed));
  if (verdict) return from_diag(std::move(*verdict));
  return ok_report();
}

Report do_fol_encode(const std::string& text, lf::Fuel& fuel) {
  auto as_formula = lf::parse_fol_formula(text);
  lf::QCanPtr q;
  lf::FamPtr expected;
  std::set<lf::Name> vars;
  if (auto* f = std::get_if<lf::FolFormulaPtr>(&as_formula)) {
    vars = lf::fol_free_vars(*f);
    std::vector<lf::Name> scope(vars.begin(), vars.end());
    auto enc = lf::encode_formula(scope, *f);
    if (auto* d = std::get_if<lf::Diagnostic>(&enc))
      return from_diag(std::move(*d));
    q = std::get<lf::QCanPtr>(enc);
    expected = lf::a_const("o");
  } else {
    auto as_term = lf::parse_fol_term(text);
    if (std::holds_alternative<lf::Diagnostic>(as_term))
      return from_diag(std::get<lf::Diagnostic>(std::move(as_formula)));
    const auto& t = std::get<lf::FolTermPtr>(as_term);
    vars = lf::fol_free_vars(t);
    std::vector<lf::Name> scope(vars.begin(), vars.end());
    auto enc = lf::encode_term(scope, t);
    if (auto* d = std::get_if<lf::Diagnostic>(&enc))
      return from_diag(std::move(*d));
    q = std::get<lf::QCanPtr>(enc);
    expected = lf::a_const("iota");
  }
  lf::Context ctx;
  for (const auto& x : vars) ctx = ctx.extended(x, lf::a_const("iota"));
  auto obj = lf::elaborate(lf::sigma_fo(), ctx, q, expected, fuel);
  if (auto* d = std::get_if<lf::Diagnostic>(&obj))
    return from_diag(std::move(*d));
  return ok_report(lf::print_obj(std::get<lf::ObjPtr>(obj)));
}

Report do_fol_decode(const std::string& text) {
  auto parsed = lf::parse_obj(text, lf::sigma_fo());
  if (auto* d = std::get_if<lf::Diagnostic>(&parsed))
    return from_diag(std::move(*d));
  auto q = lf::erase_labels(std::get<lf::ObjPtr>(parsed));
  if (!q)
    return from_diag(lf::Diagnostic{
        lf::code::not_in_image,
        "object has an abstraction in head position and no quasiatomic form",
        {},
        lf::print_obj(std::get<lf::ObjPtr>(parsed)),
        std::nullopt});
  std::set<lf::Name> vars = lf::fv_qcan(*q);
  std::vector<lf::Name> scope(vars.begin(), vars.end());
  auto as_formula = lf::decode_formula(scope, *q);
  if (auto* f = std::get_if<lf::FolFormulaPtr>(&as_formula))
    return ok_report(lf::print_fol_formula(*f));
  auto as_term = lf::decode_term(scope, *q);
  if (auto* t = std::get_if<lf::FolTermPtr>(&as_term))
    return ok_report(lf::print_fol_term(*t));
  return from_diag(std::get<lf::Diagnostic>(std::move(as_formula)));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LF kernel: typechecking, equivalence, quasicanonical forms, "
               "derivation checking, and the first-order embedding"};
  app.require_subcommand(1);
  app.fallthrough(false);

  std::uint64_t fuel_units = lf::kDefaultFuel;
  bool json = false;
  bool quiet = false;
  std::string ctx_text;
  std::string level = "obj";
  std::string at_text;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--fuel", fuel_units, "step budget")
        ->capture_default_str();
    cmd->add_flag("--json", json, "machine readable report");
    cmd->add_flag("--quiet", quiet, "suppress human readable output");
  };

  std::string sig_path, deriv_path, term_text, lhs_text, rhs_text, fol_text;

  CLI::App* c_check = app.add_subcommand("check", "validate a signature file");
  c_check->add_option("signature", sig_path, "path to a .lf file")->required();
  add_common(c_check);

  CLI::App* c_synth = app.add_subcommand(
      "synth", "synthesize the classifier of a term");
  c_synth->add_option("signature", sig_path, "path to a .lf file")->required();
  c_synth->add_option("term", term_text, "term text")->required();
  c_synth->add_option("--ctx", ctx_text, "context entries `x : A, y : B`");
  c_synth->add_option("--level", level, "judgment level")
      ->check(CLI::IsMember({"obj", "fam", "kind"}))
      ->capture_default_str();
  add_common(c_synth);

  CLI::App* c_equiv = app.add_subcommand("equiv", "decide definitional equality");
  c_equiv->add_option("signature", sig_path, "path to a .lf file")->required();
  c_equiv->add_option("lhs", lhs_text, "left term text")->required();
  c_equiv->add_option("rhs", rhs_text, "right term text")->required();
  c_equiv->add_option("--ctx", ctx_text, "context entries `x : A, y : B`");
  c_equiv->add_option("--at", at_text,
                      "classifier to compare at (family for objects, kind for "
                      "families)");
  c_equiv->add_option("--level", level, "judgment level")
      ->check(CLI::IsMember({"obj", "fam", "kind"}))
      ->capture_default_str();
  add_common(c_equiv);

  CLI::App* c_qnf = app.add_subcommand(
      "qnf", "print the quasicanonical form of a well typed object");
  c_qnf->add_option("signature", sig_path, "path to a .lf file")->required();
  c_qnf->add_option("term", term_text, "object text")->required();
  c_qnf->add_option("--ctx", ctx_text, "context entries `x : A, y : B`");
  c_qnf->add_option("--at", at_text, "family to normalize at")->required();
  add_common(c_qnf);

  CLI::App* c_deriv =
      app.add_subcommand("check-deriv", "check a derivation tree file");
  c_deriv->add_option("derivation", deriv_path, "path to a .lfd file")
      ->required();
  add_common(c_deriv);

  CLI::App* c_enc = app.add_subcommand(
      "fol-encode", "embed a first-order formula or term as a labelled object");
  c_enc->add_option("input", fol_text, "formula or term text")->required();
  add_common(c_enc);

  CLI::App* c_dec = app.add_subcommand(
      "fol-decode", "read back a first-order formula or term from an object");
  c_dec->add_option("input", fol_text, "object text")->required();
  add_common(c_dec);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  lf::Fuel fuel{fuel_units};
  Report r;
  if (app.got_subcommand(c_check)) {
    r = do_check(sig_path, fuel);
  } else if (app.got_subcommand(c_synth)) {
    r = do_synth(sig_path, ctx_text, term_text, level, fuel);
  } else if (app.got_subcommand(c_equiv)) {
    if (level != "kind" && at_text.empty()) {
      r = from_diag(lf::Diagnostic{lf::code::parse_error,
                                   "--at is required at this level", {}, level,
                                   std::nullopt});
    } else {
      r = do_equiv(sig_path, ctx_text, lhs_text, rhs_text, at_text, level, fuel);
    }
  } else if (app.got_subcommand(c_qnf)) {
    r = do_qnf(sig_path, ctx_text, term_text, at_text, fuel);
  } else if (app.got_subcommand(c_deriv)) {
    r = do_checkderiv(deriv_path);
  } else if (app.got_subcommand(c_enc)) {
    r = do_fol_encode(fol_text, fuel);
  } else {
    r = do_fol_decode(fol_text);
  }
  emit(r, json, quiet);
  return exit_code_for(r);
}
