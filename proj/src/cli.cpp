#include "systole/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "systole/bounds.hpp"
#include "systole/builders.hpp"
#include "systole/engine.hpp"
#include "systole/error.hpp"
#include "systole/surface_io.hpp"
#include "systole/table.hpp"
#include "systole/verify.hpp"

namespace systole::cli {

namespace {

using json = nlohmann::ordered_json;

// Builtin names win over files of the same name.
SurfaceSpec resolve_spec(const std::string& arg) {
  if (is_builtin_spec(arg)) return builtin_spec(arg);
  return load_spec(arg);
}

std::vector<TwistParam> parse_twists(const std::string& text) {
  std::vector<TwistParam> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || !std::isfinite(v))
      throw Error(Errc::parse, "bad twist value '" + item + "'");
    out.emplace_back(v);
  }
  return out;
}

json signature_json(const Signature& s) {
  return json{{"genus", s.genus}, {"boundaries", s.boundaries}, {"cusps", s.cusps}};
}

json estimate_json(const SystoleEstimate& e) {
  json j;
  j["value"] = e.value;
  j["witness"] = format_word(e.witness_word);
  j["cutoff"] = e.cutoff;
  j["stable"] = e.stable;
  j["exhausted"] = e.exhausted;
  j["length_bound"] = e.upper_bound_used;
  j["search_radius"] = e.search_radius;
  j["elements"] = e.elements;
  j["elliptic"] = e.elliptic;
  return j;
}

json report_json(const VerifyReport& r) {
  json j;
  j["check"] = r.check;
  j["verdict"] = verdict_name(r.verdict);
  j["reason"] = r.reason;
  j["curve"] = r.curve;
  j["k"] = r.k;
  j["cutoff"] = r.cutoff;
  j["tolerance"] = r.tolerance;
  json tw = json::array();
  for (const TwistParam& t : r.twists) tw.push_back(t.value());
  j["twists"] = tw;
  j["base_signature"] = signature_json(r.base_signature);
  j["derived_signature"] = signature_json(r.derived_signature);
  j["base"] = estimate_json(r.base);
  j["derived"] = estimate_json(r.derived);
  j["stable"] = r.base.stable && r.derived.stable;
  return j;
}

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::pass: return kExitOk;
    case Verdict::fail: return kExitFail;
    case Verdict::inconclusive: return kExitInconclusive;
  }
  return kExitFail;
}

BoundRecord parse_record(const std::string& text) {
  // genus:systole or genus:cusps:systole
  std::vector<std::string> f;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) f.push_back(item);
  try {
    if (f.size() == 2) return base_record(std::stoi(f[0]), std::stod(f[1]), "S_" + f[0]);
    if (f.size() == 3) {
      const int g = std::stoi(f[0]);
      const int n = std::stoi(f[1]);
      return base_record(Signature{g, n, n}, std::stod(f[2]), "S_" + f[0] + "," + f[1]);
    }
  } catch (const std::logic_error&) {
  }
  throw Error(Errc::parse, "bad record '" + text + "' (want g:s or g:n:s)");
}

json record_json(const BoundRecord& r) {
  json j;
  j["signature"] = signature_json(r.signature);
  j["systole"] = r.systole_value;
  j["strict"] = r.strict;
  j["rule"] = rule_id(r.rule);
  if (r.k) j["k"] = r.k;
  j["name"] = r.name;
  j["depth"] = r.depth();
  j["provenance"] = r.provenance();
  if (r.signature.cusps == 0 && r.signature.genus >= 2) {
    j["ratio"] = r.ratio();
    j["upper_bound"] = compact_upper_bound(r.signature.genus);
  } else if (r.signature.cusps >= 2) {
    j["upper_bound"] = cusped_upper_bound(r.signature.genus, r.signature.cusps);
  }
  return j;
}

std::string resolve_base_path(const std::string& p) {
  std::ifstream probe(p);
  if (probe) return p;
  return p + ".csv";
}

struct Options {
  std::string spec, curve, twists, rule, family = "genus2", name, out_path, format = "json";
  std::string base = "fixtures/table1_bases";
  std::vector<std::string> inputs;
  int k = 2, cutoff = 12, threads = 0, genus = 2, cusps = 0, max_genus = 25, max_depth = 3, k_max = 10;
  std::uint64_t seed = 1;
  double b = 2.0, x = 0.0, y = 0.0, interior = 0.0, twist = 0.0, c0 = 0.0, c1 = 0.0;
  double sys2 = 3.06, sys3 = 3.98;
  bool with_fpiece = false;
};

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(std::vector<std::string> args);

 private:
  void emit(const json& j) { out_ << j.dump(2) << '\n'; }
  void emit_spec(const SurfaceSpec& s);

  int cmd_validate();
  int cmd_construct(const std::string& op);
  int cmd_systole();
  int cmd_verify(const std::string& what);
  int cmd_bounds(const std::string& what);
  int cmd_table();

  std::ostream& out_;
  std::ostream& err_;
  Options o_;
};

void Runner::emit_spec(const SurfaceSpec& s) {
  validate(s);
  if (o_.out_path.empty()) {
    out_ << write_spec(s);
  } else {
    save_spec(s, o_.out_path);
    emit(json{{"written", o_.out_path}, {"signature", signature_json(validate(s))}});
  }
}

int Runner::cmd_validate() {
  const SurfaceSpec s = resolve_spec(o_.spec);
  const Signature sig = validate(s);
  json curves = json::array();
  for (int c = 0; c < s.curve_count(); ++c) {
    curves.push_back(json{{"name", s.curve_name(c)},
                          {"length", curve_length(s, CurveRef{c})},
                          {"twist", s.gluings[c].twist.value()},
                          {"separating", !is_nonseparating(s, CurveRef{c})}});
  }
  emit(json{{"valid", true},
            {"signature", signature_json(sig)},
            {"pants", s.pants.size()},
            {"curves", curves},
            {"canonical", canonical_form(s)}});
  return kExitOk;
}

int Runner::cmd_construct(const std::string& op) {
  if (op == "builtin") {
    emit_spec(builtin_spec(o_.name));
  } else if (op == "random") {
    emit_spec(random_spec(o_.family, o_.seed));
  } else if (op == "fpiece") {
    const double s = fpiece_max_systole(GeodesicLength(o_.b));
    emit_spec(make_fpiece(o_.b, o_.x > 0 ? o_.x : s, o_.y > 0 ? o_.y : s));
  } else if (op == "qpiece") {
    const double s = qpiece_max_systole(GeodesicLength::or_zero(o_.b));
    emit_spec(make_qpiece(o_.interior > 0 ? o_.interior : s, o_.b, o_.twist));
  } else {
    const SurfaceSpec s = resolve_spec(o_.spec);
    const CurveRef c = find_curve(s, o_.curve);
    if (op == "cut") {
      emit_spec(cut_along(s, c).spec);
    } else if (op == "cover") {
      if (o_.twists.empty()) {
        emit_spec(cyclic_cover(s, c, o_.k).spec);
      } else {
        emit_spec(cyclic_cover(s, c, o_.k, parse_twists(o_.twists)).spec);
      }
    } else if (op == "double") {
      // Excise the two-cusp pants behind `curve`, then double or bridge.
      const ExcisedSurface ex = excise_cusp_pair(s, c);
      const double b = ex.remainder.lengths.at(ex.boundary);
      if (o_.with_fpiece) {
        const double f = fpiece_max_systole(GeodesicLength(b));
        emit_spec(double_with_fpiece(ex.remainder, ex.boundary, make_fpiece(b, f, f),
                                     {TwistParam(o_.twist), TwistParam(o_.twist)}));
      } else {
        emit_spec(double_along(ex.remainder, ex.boundary, TwistParam(o_.twist)));
      }
    } else if (op == "qcap") {
      const ExcisedSurface ex = excise_cusp_pair(s, c);
      const double b = ex.remainder.lengths.at(ex.boundary);
      const double q = qpiece_max_systole(GeodesicLength(b));
      emit_spec(attach_qpiece(ex.remainder, ex.boundary, make_qpiece(q, b), TwistParam(o_.twist)));
    } else {
      throw Error(Errc::parse, "unknown construction '" + op + "'");
    }
  }
  return kExitOk;
}

int Runner::cmd_systole() {
  const SurfaceSpec s = resolve_spec(o_.spec);
  const Signature sig = validate(s);
  const SystoleEstimate e = systole::systole(s, o_.cutoff, o_.threads);
  json j;
  j["signature"] = signature_json(sig);
  j["estimate"] = estimate_json(e);
  if (sig.is_closed()) j["upper_bound"] = compact_upper_bound(sig.genus);
  else if (sig.is_complete() && sig.cusps >= 2) j["upper_bound"] = cusped_upper_bound(sig.genus, sig.cusps);
  emit(j);
  return e.stable ? kExitOk : kExitInconclusive;
}

int Runner::cmd_verify(const std::string& what) {
  const SurfaceSpec s = resolve_spec(o_.spec);
  const CurveRef c = find_curve(s, o_.curve);
  VerifyReport r;
  if (what == "cover") {
    r = verify_cover_monotone(s, c, o_.k, o_.cutoff, o_.threads);
  } else {
    std::vector<TwistParam> tw;
    if (o_.twists.empty()) {
      SpecRng rng(o_.seed);
      for (int i = 0; i < o_.k; ++i) tw.emplace_back(rng.twist());
    } else {
      tw = parse_twists(o_.twists);
    }
    if (static_cast<int>(tw.size()) != o_.k) throw Error(Errc::parse, "need exactly k twists");
    r = verify_cover_equality(s, c, o_.k, tw, o_.cutoff, o_.threads);
  }
  emit(report_json(r));
  return verdict_exit(r.verdict);
}

int Runner::cmd_bounds(const std::string& what) {
  if (what == "upper") {
    const double v = o_.cusps == 0 ? compact_upper_bound(o_.genus) : cusped_upper_bound(o_.genus, o_.cusps);
    emit(json{{"genus", o_.genus}, {"cusps", o_.cusps}, {"upper_bound", v}});
  } else if (what == "apply") {
    const auto rule = parse_rule(o_.rule);
    if (!rule || *rule == Rule::base) throw Error(Errc::parse, "unknown rule '" + o_.rule + "'");
    std::vector<BoundRecord> in;
    for (const std::string& t : o_.inputs) in.push_back(parse_record(t));
    const bool takes_k = *rule == Rule::cover || *rule == Rule::cusp_cover;
    emit(record_json(apply_rule(*rule, in, takes_k ? std::optional<int>(o_.k) : std::nullopt)));
  } else if (what == "corollary") {
    const std::vector<BoundRecord> bases = {base_record(2, o_.sys2, "S_2"), base_record(3, o_.sys3, "S_3")};
    const auto table = compose_best_known_table(bases, o_.max_genus, o_.max_depth);
    const CorollaryCheck c = check_low_genus_corollary(table, o_.sys2, o_.sys3);
    emit(json{{"holds", c.holds}, {"max_genus", o_.max_genus}, {"violations", c.violations}});
    return c.holds ? kExitOk : kExitFail;
  } else if (what == "asymptotic") {
    json rows = json::array();
    for (const AsymptoticRow& r : asymptotic_report(o_.genus, o_.c0, o_.c1, o_.k_max))
      rows.push_back(json{{"k", r.k},
                          {"genus", r.genus},
                          {"value", r.value},
                          {"rhs", r.rhs},
                          {"c1_needed", r.c1_needed},
                          {"holds", r.holds}});
    emit(json{{"base_genus", o_.genus}, {"c0", o_.c0}, {"c1", o_.c1}, {"rows", rows}});
  }
  return kExitOk;
}

int Runner::cmd_table() {
  const TableFormat fmt = parse_table_format(o_.format);
  const auto bases = load_base_records(resolve_base_path(o_.base));
  out_ << format_table(compose_best_known_table(bases, o_.max_genus, o_.max_depth), fmt);
  return kExitOk;
}

int Runner::run(std::vector<std::string> args) {
  CLI::App app{"Hyperbolic surfaces from pants decompositions: systoles and bound tables", "systole"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_help_all_flag("--help-all");
  app.add_option("--threads", o_.threads, "worker threads (0: SYSTOLE_THREADS or all cores)");

  auto spec_opt = [&](CLI::App* a) { a->add_option("--spec", o_.spec, "spec file or builtin name")->required(); };
  auto curve_opt = [&](CLI::App* a) { a->add_option("--curve", o_.curve, "interior curve name")->required(); };

  auto* validate_cmd = app.add_subcommand("validate", "check a spec and print its signature");
  spec_opt(validate_cmd);

  auto* construct = app.add_subcommand("construct", "build a spec; writes JSON to stdout or --out");
  construct->require_subcommand(1);
  construct->add_option("--out", o_.out_path, "output file");
  auto* c_cut = construct->add_subcommand("cut", "cut along a non-separating curve");
  spec_opt(c_cut);
  curve_opt(c_cut);
  auto* c_cover = construct->add_subcommand("cover", "k-fold cyclic cover along a curve");
  spec_opt(c_cover);
  curve_opt(c_cover);
  c_cover->add_option("--k", o_.k, "cover order")->check(CLI::Range(2, 64));
  c_cover->add_option("--twists", o_.twists, "k comma-separated twists (default: base twist)");
  auto* c_fpiece = construct->add_subcommand("fpiece", "F-piece; interior curves default to the extremal value");
  c_fpiece->add_option("--b", o_.b, "boundary length")->required();
  c_fpiece->add_option("--x", o_.x);
  c_fpiece->add_option("--y", o_.y);
  auto* c_qpiece = construct->add_subcommand("qpiece", "Q-piece; boundary 0 is a cusp");
  c_qpiece->add_option("--b", o_.b, "boundary length")->required();
  c_qpiece->add_option("--interior", o_.interior, "interior curve (default: extremal)");
  c_qpiece->add_option("--twist", o_.twist);
  auto* c_double = construct->add_subcommand("double", "excise a two-cusp pants and double the rest");
  spec_opt(c_double);
  curve_opt(c_double);
  c_double->add_option("--twist", o_.twist);
  c_double->add_flag("--with-fpiece", o_.with_fpiece, "bridge the two copies with an F-piece");
  auto* c_qcap = construct->add_subcommand("qcap", "excise a two-cusp pants and cap with a Q-piece");
  spec_opt(c_qcap);
  curve_opt(c_qcap);
  c_qcap->add_option("--twist", o_.twist);
  auto* c_random = construct->add_subcommand("random", "seeded random spec (lengths in [1.5,4])");
  c_random->add_option("--family", o_.family, "genus2, genus3 or cusped12");
  c_random->add_option("--seed", o_.seed);
  auto* c_builtin = construct->add_subcommand("builtin", "named example spec");
  c_builtin->add_option("--name", o_.name)->required();

  auto* sys = app.add_subcommand("systole", "estimate the systole by word enumeration");
  spec_opt(sys);
  sys->add_option("--cutoff", o_.cutoff, "maximal word length")->check(CLI::Range(1, 64));

  auto* verify = app.add_subcommand("verify", "numeric checks of the cover constructions");
  verify->require_subcommand(1);
  auto* v_cover = verify->add_subcommand("cover", "cover systole >= base systole");
  auto* v_equal = verify->add_subcommand("equality", "cover systole == base systole for any twists");
  for (CLI::App* a : {v_cover, v_equal}) {
    spec_opt(a);
    curve_opt(a);
    a->add_option("--k", o_.k, "cover order")->check(CLI::Range(2, 64));
    a->add_option("--cutoff", o_.cutoff, "maximal word length")->check(CLI::Range(1, 64));
  }
  v_equal->add_option("--twists", o_.twists, "k comma-separated twists");
  v_equal->add_option("--seed", o_.seed, "seed for random twists when --twists is absent");

  auto* bounds = app.add_subcommand("bounds", "upper bounds and the rule calculus");
  bounds->require_subcommand(1);
  auto* b_upper = bounds->add_subcommand("upper", "upper bound for (g) or (g,n)");
  b_upper->add_option("--genus", o_.genus)->required();
  b_upper->add_option("--cusps", o_.cusps);
  auto* b_apply = bounds->add_subcommand("apply", "apply one rule to input records g:s or g:n:s");
  b_apply->add_option("--rule", o_.rule, "cover, handle, join, cusp-double, cusp-fpiece, cusp-qpiece, cusp-cover")
      ->required();
  b_apply->add_option("--input", o_.inputs, "input record (repeatable)")->required();
  b_apply->add_option("--k", o_.k);
  auto* b_cor = bounds->add_subcommand("corollary", "low-genus ordering check from genus 2 and 3");
  b_cor->add_option("--sys2", o_.sys2);
  b_cor->add_option("--sys3", o_.sys3);
  b_cor->add_option("--max-genus", o_.max_genus)->default_val(50);
  b_cor->add_option("--max-depth", o_.max_depth);
  auto* b_asym = bounds->add_subcommand("asymptotic", "cover-rule growth report for user constants");
  b_asym->add_option("--genus", o_.genus)->required();
  b_asym->add_option("--c0", o_.c0)->required();
  b_asym->add_option("--c1", o_.c1)->required();
  b_asym->add_option("--k-max", o_.k_max);

  auto* table = app.add_subcommand("table", "best-known systole table from base records");
  table->add_option("--base", o_.base, "CSV of base records (.csv optional)");
  table->add_option("--max-genus", o_.max_genus)->check(CLI::Range(2, 1000));
  table->add_option("--max-depth", o_.max_depth)->check(CLI::Range(0, 6));
  table->add_option("--format", o_.format)->check(CLI::IsMember({"csv", "text", "json"}));

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out_, err_);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (o_.threads < 0) {
    err_ << "error: --threads must be >= 0\n";
    return kExitUsage;
  }

  try {
    if (*validate_cmd) return cmd_validate();
    if (*construct) {
      for (CLI::App* sub : construct->get_subcommands()) return cmd_construct(sub->get_name());
    }
    if (*sys) return cmd_systole();
    if (*verify) return cmd_verify(*v_cover ? "cover" : "equality");
    if (*bounds) {
      for (CLI::App* sub : bounds->get_subcommands()) return cmd_bounds(sub->get_name());
    }
    if (*table) return cmd_table();
  } catch (const Error& e) {
    err_ << "error (" << errc_name(e.code()) << "): " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err_ << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Runner r(out, err);
  return r.run(args);
}

}  // namespace systole::cli
