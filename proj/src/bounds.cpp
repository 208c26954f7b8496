#include "systole/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "systole/error.hpp"
#include "systole/hyptrig.hpp"

namespace systole {

double compact_upper_bound(int genus) {
  if (genus < 2) throw Error(Errc::domain, "compact bound needs genus >= 2");
  return 2.0 * std::log(4.0 * genus - 2.0);
}

double cusped_upper_bound(int genus, int cusps) {
  if (genus < 0) throw Error(Errc::domain, "genus must be >= 0");
  if (cusps < 2) throw Error(Errc::domain, "cusped bound needs n >= 2");
  if (genus == 0 && cusps == 3) throw Error(Errc::domain, "signature (0,3) is excluded");
  const int num = 12 * genus - 12 + 2 * cusps;
  if (num <= 0) throw Error(Errc::domain, "argument 12g - 12 + 2n must be positive");
  return 4.0 * std::log(static_cast<double>(num) / cusps);
}

const char* rule_id(Rule r) noexcept {
  switch (r) {
    case Rule::base: return "base";
    case Rule::cover: return "cover";
    case Rule::add_handle: return "handle";
    case Rule::join: return "join";
    case Rule::cusp_double: return "cusp-double";
    case Rule::cusp_fpiece: return "cusp-fpiece";
    case Rule::cusp_qpiece: return "cusp-qpiece";
    case Rule::cusp_cover: return "cusp-cover";
  }
  return "?";
}

std::optional<Rule> parse_rule(const std::string& id) {
  for (Rule r : {Rule::base, Rule::cover, Rule::add_handle, Rule::join, Rule::cusp_double, Rule::cusp_fpiece,
                 Rule::cusp_qpiece, Rule::cusp_cover})
    if (id == rule_id(r)) return r;
  return std::nullopt;
}

int BoundRecord::depth() const noexcept {
  int d = 0;
  for (const BoundRecord& in : inputs) d = std::max(d, in.depth() + 1);
  return d;
}

double BoundRecord::ratio() const {
  if (signature.cusps != 0 || signature.genus < 2) throw Error(Errc::domain, "ratio is defined for compact records");
  return systole_value / std::log(static_cast<double>(signature.genus));
}

std::string BoundRecord::provenance() const {
  if (rule == Rule::base) return reference.empty() ? std::string("base") : "base: " + reference;
  std::ostringstream os;
  os << rule_id(rule) << '(';
  if (k) os << "k=" << k << "; ";
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (i) os << ", ";
    os << to_string(inputs[i].signature) << ' ' << inputs[i].name;
  }
  os << ')';
  return os.str();
}

BoundRecord base_record(Signature sig, double systole, std::string name, std::string reference) {
  if (!(systole > 0.0) || !std::isfinite(systole)) throw Error(Errc::domain, "systole must be positive");
  if (sig.boundaries != sig.cusps) throw Error(Errc::domain, "bound records have cusps only");
  if (!sig.is_hyperbolic()) throw Error(Errc::non_hyperbolic_signature, "signature is not hyperbolic");
  BoundRecord r;
  r.signature = sig;
  r.systole_value = systole;
  r.strict = false;
  r.rule = Rule::base;
  r.name = std::move(name);
  r.reference = std::move(reference);
  return r;
}

BoundRecord base_record(int genus, double systole, std::string name, std::string reference) {
  return base_record(Signature{genus, 0, 0}, systole, std::move(name), std::move(reference));
}

namespace {

void need_arity(Rule rule, const std::vector<BoundRecord>& in, std::size_t n) {
  if (in.size() != n)
    throw Error(Errc::precondition, std::string(rule_id(rule)) + " takes " + std::to_string(n) + " input record(s)");
}

void need_compact(Rule rule, const BoundRecord& r) {
  if (r.signature.cusps != 0 || r.signature.genus < 2)
    throw Error(Errc::precondition, std::string(rule_id(rule)) + " needs a compact record of genus >= 2");
}

void need_cusped(Rule rule, const BoundRecord& r) {
  if (r.signature.cusps < 2) throw Error(Errc::precondition, std::string(rule_id(rule)) + " needs n >= 2 cusps");
  if (r.systole_value < four_arcsinh_one())
    throw Error(Errc::precondition, std::string(rule_id(rule)) + " needs systole >= 4 asinh(1)");
}

int need_k(Rule rule, std::optional<int> k) {
  if (!k || *k < 2) throw Error(Errc::precondition, std::string(rule_id(rule)) + " needs k >= 2");
  return *k;
}

std::string sub_name(const BoundRecord& r) {
  return r.name.find(' ') == std::string::npos ? r.name : "(" + r.name + ")";
}

}  // namespace

BoundRecord apply_rule(Rule rule, const std::vector<BoundRecord>& in, std::optional<int> k) {
  BoundRecord out;
  out.rule = rule;
  out.inputs = in;
  out.strict = true;
  const auto g = [&](std::size_t i) { return in[i].signature.genus; };
  const auto n = [&](std::size_t i) { return in[i].signature.cusps; };
  const auto s = [&](std::size_t i) { return in[i].systole_value; };
  switch (rule) {
    case Rule::base:
      throw Error(Errc::precondition, "base records are not derived");
    case Rule::cover: {
      need_arity(rule, in, 1);
      need_compact(rule, in[0]);
      out.k = need_k(rule, k);
      out.signature = {out.k * (g(0) - 1) + 1, 0, 0};
      out.systole_value = s(0);
      out.name = std::to_string(out.k) + " x " + sub_name(in[0]);
      break;
    }
    case Rule::add_handle:
      need_arity(rule, in, 1);
      need_compact(rule, in[0]);
      out.signature = {g(0) + 1, 0, 0};
      out.systole_value = s(0) / 2.0;
      out.name = "via " + sub_name(in[0]);
      break;
    case Rule::join:
      need_arity(rule, in, 2);
      need_compact(rule, in[0]);
      need_compact(rule, in[1]);
      if (s(1) < s(0)) throw Error(Errc::precondition, "join needs sys(g2) >= sys(g1)");
      out.signature = {g(0) + g(1) - 1, 0, 0};
      out.systole_value = std::min(s(1) / 2.0, s(0));
      out.name = sub_name(in[1]) + ", " + sub_name(in[0]);
      break;
    case Rule::cusp_double: {
      need_arity(rule, in, 1);
      need_cusped(rule, in[0]);
      if (2 * n(0) - 4 < 0) throw Error(Errc::precondition, "cusp-double needs n >= 2");
      out.signature = {2 * g(0), 2 * n(0) - 4, 2 * n(0) - 4};
      const double x = s(0);
      out.systole_value = std::min(x, std::max(kDoublingConstant, x - 4.0 * std::asinh(1.0 / std::sinh(x / 4.0))));
      out.name = "double " + sub_name(in[0]);
      break;
    }
    case Rule::cusp_fpiece:
      need_arity(rule, in, 1);
      need_cusped(rule, in[0]);
      out.signature = {2 * g(0) + 1, 2 * n(0) - 4, 2 * n(0) - 4};
      out.systole_value = s(0) / 2.0;
      out.name = "double " + sub_name(in[0]) + " + F";
      break;
    case Rule::cusp_qpiece:
      need_arity(rule, in, 1);
      need_cusped(rule, in[0]);
      out.signature = {g(0) + 1, n(0) - 2, n(0) - 2};
      out.systole_value = s(0) / 3.0;
      out.name = sub_name(in[0]) + " + Q";
      break;
    case Rule::cusp_cover: {
      need_arity(rule, in, 1);
      if (g(0) < 1) throw Error(Errc::precondition, "cusp-cover needs genus >= 1");
      if (n(0) < 1) throw Error(Errc::precondition, "cusp-cover needs a cusped record");
      out.k = need_k(rule, k);
      out.signature = {out.k * (g(0) - 1) + 1, out.k * n(0), out.k * n(0)};
      out.systole_value = s(0);
      out.strict = false;
      out.name = std::to_string(out.k) + " x " + sub_name(in[0]);
      break;
    }
  }
  if (!out.signature.is_hyperbolic())
    throw Error(Errc::non_hyperbolic_signature, "rule output " + to_string(out.signature) + " is not hyperbolic");
  return out;
}

namespace {

int rule_rank(Rule r) { return static_cast<int>(r); }

bool better(const BoundRecord& a, const BoundRecord& b) {
  if (a.systole_value != b.systole_value) return a.systole_value > b.systole_value;
  if (a.depth() != b.depth()) return a.depth() < b.depth();
  return rule_rank(a.rule) < rule_rank(b.rule);
}

}  // namespace

std::vector<BoundRecord> compose_best_known_table(const std::vector<BoundRecord>& bases, int max_genus,
                                                  int max_depth) {
  std::map<int, BoundRecord> best;
  auto offer = [&](const BoundRecord& r) {
    const int g = r.genus();
    if (g < 2 || g > max_genus) return;
    const auto it = best.find(g);
    if (it == best.end()) best.emplace(g, r);
    else if (better(r, it->second)) it->second = r;
  };
  for (const BoundRecord& b : bases) {
    if (b.signature.cusps != 0) continue;
    offer(b);
  }
  for (int depth = 1; depth <= max_depth; ++depth) {
    // Sources are the records known at the previous level.
    std::vector<BoundRecord> src;
    for (const auto& [g, r] : best) src.push_back(r);
    for (const BoundRecord& a : src) {
      for (int k = 2; k * (a.genus() - 1) + 1 <= max_genus; ++k) offer(apply_rule(Rule::cover, {a}, k));
      if (a.genus() + 1 <= max_genus) offer(apply_rule(Rule::add_handle, {a}));
      for (const BoundRecord& b : src) {
        if (&a == &b || a.genus() + b.genus() - 1 > max_genus) continue;
        if (b.systole_value >= a.systole_value) offer(apply_rule(Rule::join, {a, b}));
      }
    }
  }
  std::vector<BoundRecord> out;
  for (auto& [g, r] : best) out.push_back(std::move(r));
  return out;
}

std::vector<BoundRecord> parse_base_records(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::vector<BoundRecord> out;
  bool header = true;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> f(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      const char c = line[i];
      if (quoted) {
        if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') f.back() += line[++i];
        else if (c == '"') quoted = false;
        else f.back() += c;
      } else if (c == '"') {
        quoted = true;
      } else if (c == ',') {
        f.emplace_back();
      } else {
        f.back() += c;
      }
    }
    if (quoted) throw Error(Errc::parse, "line " + std::to_string(lineno) + ": unterminated quote");
    if (f.size() < 2) throw Error(Errc::parse, "line " + std::to_string(lineno) + ": expected genus,systole,...");
    try {
      std::size_t used = 0;
      const int g = std::stoi(f[0], &used);
      if (used != f[0].size()) throw std::invalid_argument("genus");
      const double s = std::stod(f[1], &used);
      if (used != f[1].size()) throw std::invalid_argument("systole");
      out.push_back(base_record(g, s, f.size() > 2 ? f[2] : "S_" + f[0], f.size() > 3 ? f[3] : ""));
    } catch (const std::logic_error&) {
      throw Error(Errc::parse, "line " + std::to_string(lineno) + ": bad number");
    }
  }
  return out;
}

std::vector<BoundRecord> load_base_records(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::io, "cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_base_records(ss.str());
}

CorollaryCheck check_low_genus_corollary(const std::vector<BoundRecord>& table, double sys2, double sys3) {
  CorollaryCheck c;
  for (const BoundRecord& r : table) {
    const int g = r.genus();
    if (g < 3 || r.signature.cusps != 0) continue;
    const bool beats2 = r.systole_value > sys2 || (r.strict && r.systole_value >= sys2);
    bool ok = beats2;
    if (g % 2 == 1 && g >= 5) ok = ok && (r.systole_value > sys3 || (r.strict && r.systole_value >= sys3));
    if (!ok) c.violations.push_back(g);
  }
  c.holds = c.violations.empty();
  return c;
}

std::vector<AsymptoticRow> asymptotic_report(int genus, double c0, double c1, int k_max) {
  if (genus < 2) throw Error(Errc::domain, "base genus must be >= 2");
  const double s = 4.0 / 3.0 * std::log(static_cast<double>(genus)) - c0;
  std::vector<AsymptoticRow> rows;
  for (int k = 2; k <= k_max; ++k) {
    AsymptoticRow r;
    r.k = k;
    r.genus = k * (genus - 1) + 1;
    r.value = s;
    const double lg = 4.0 / 3.0 * std::log(static_cast<double>(r.genus));
    r.rhs = lg - c1;
    r.c1_needed = lg - s;
    r.holds = s >= r.rhs;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace systole
