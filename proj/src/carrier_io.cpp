#include "bsys/carrier_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace bsys {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

void only_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) parse_fail(where + ": expected an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto& [k, v] : j.items()) {
    (void)v;
    if (!ok.contains(k)) parse_fail(where + ": unknown key '" + k + "'");
  }
}

const json& need(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) parse_fail(where + ": missing key '" + key + "'");
  return *it;
}

std::string str(const json& j, const std::string& where) {
  if (!j.is_string()) parse_fail(where + ": expected a string");
  return j.get<std::string>();
}

std::size_t level_key(const std::string& k, const std::string& where) {
  if (k.empty() || k.size() > 6 || !std::all_of(k.begin(), k.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    parse_fail(where + ": level key '" + k + "' is not a natural number");
  }
  return std::stoul(k);
}

std::vector<std::vector<std::string>> levels(const json& j, const std::string& where) {
  if (!j.is_object()) parse_fail(where + ": expected an object of levels");
  std::vector<std::vector<std::string>> out;
  for (auto& [k, v] : j.items()) {
    std::size_t n = level_key(k, where);
    if (!v.is_array()) parse_fail(where + "." + k + ": expected an array");
    if (out.size() <= n) out.resize(n + 1);
    for (auto& x : v) out[n].push_back(str(x, where + "." + k));
  }
  return out;
}

std::map<std::string, std::string> string_map(const json& j, const std::string& where) {
  if (!j.is_object()) parse_fail(where + ": expected an object");
  std::map<std::string, std::string> out;
  for (auto& [k, v] : j.items()) out[k] = str(v, where + "." + k);
  return out;
}

std::map<FinBSysData::Key, std::string> table(const json& j, const char* a, const char* b, const std::string& where) {
  if (!j.is_array()) parse_fail(where + ": expected an array");
  std::map<FinBSysData::Key, std::string> out;
  for (auto& e : j) {
    only_keys(e, {a, b, "out"}, where);
    FinBSysData::Key key{str(need(e, a, where), where), str(need(e, b, where), where)};
    if (!out.emplace(key, str(need(e, "out", where), where)).second) {
      throw Error(ErrorKind::InvariantViolation, where + ": duplicate entry (" + key.first + ", " + key.second + ")");
    }
  }
  return out;
}

FinBSys load_finite(const json& j) {
  only_keys(j, {"kind", "cutoff", "B", "Bt", "ft", "del", "pt", "T", "Tt", "S", "St", "delta"}, "finite-bsystem");
  FinBSysData d;
  const json& c = need(j, "cutoff", "finite-bsystem");
  if (!c.is_number_unsigned()) parse_fail("cutoff: expected a natural number");
  d.cutoff = c.get<std::size_t>();
  d.B = levels(need(j, "B", "finite-bsystem"), "B");
  if (j.contains("Bt")) d.Bt = levels(j["Bt"], "Bt");
  if (j.contains("ft")) d.ft = string_map(j["ft"], "ft");
  if (j.contains("del")) d.del = string_map(j["del"], "del");
  if (j.contains("pt")) {
    d.pt = str(j["pt"], "pt");
  } else {
    // pt defaults to the only element of B_0
    if (d.B.empty() || d.B[0].size() != 1) parse_fail("pt: missing and B_0 is not a singleton");
    d.pt = d.B[0][0];
  }
  if (j.contains("T")) d.weaken = table(j["T"], "Y", "X", "T");
  if (j.contains("Tt")) d.weaken_judgement = table(j["Tt"], "Y", "r", "Tt");
  if (j.contains("S")) d.substitute = table(j["S"], "s", "X", "S");
  if (j.contains("St")) d.substitute_judgement = table(j["St"], "s", "r", "St");
  if (j.contains("delta")) {
    const json& dj = j["delta"];
    if (!dj.is_array()) parse_fail("delta: expected an array");
    d.unit.emplace();
    for (auto& e : dj) {
      only_keys(e, {"X", "out"}, "delta");
      auto x = str(need(e, "X", "delta"), "delta");
      if (!d.unit->emplace(x, str(need(e, "out", "delta"), "delta")).second) {
        throw Error(ErrorKind::InvariantViolation, "delta: duplicate entry for " + x);
      }
    }
  }
  return FinBSys(std::move(d));
}

TermBSysDescription load_term(const json& j) {
  only_keys(j, {"kind", "ops", "rules", "module", "unital", "depth", "terminating"}, "term-bsystem");
  TermBSysDescription d;
  std::map<std::string, std::size_t> ops;
  const json& oj = need(j, "ops", "term-bsystem");
  if (!oj.is_object()) parse_fail("ops: expected an object");
  for (auto& [k, v] : oj.items()) {
    if (!v.is_number_unsigned()) parse_fail("ops." + k + ": arity must be a natural number");
    ops[k] = v.get<std::size_t>();
  }
  d.sig = Sig(ops);
  std::vector<Rule> rules;
  if (j.contains("rules")) {
    if (!j["rules"].is_array()) parse_fail("rules: expected an array");
    for (auto& r : j["rules"]) {
      only_keys(r, {"lhs", "rhs"}, "rules");
      rules.push_back({parse_term(str(need(r, "lhs", "rules"), "rules"), d.sig, true),
                       parse_term(str(need(r, "rhs", "rules"), "rules"), d.sig, true)});
    }
  }
  bool certified = j.contains("terminating") && j["terminating"].is_boolean() && j["terminating"].get<bool>();
  d.rules = RewriteRules(std::move(rules), certified);
  auto module = str(need(j, "module", "term-bsystem"), "module");
  if (module == "pt") d.module = ModuleKind::Point;
  else if (module == "R") d.module = ModuleKind::Monad;
  else parse_fail("module: expected \"pt\" or \"R\"");
  if (j.contains("unital")) {
    if (!j["unital"].is_boolean()) parse_fail("unital: expected a boolean");
    d.unital = j["unital"].get<bool>();
  }
  if (j.contains("depth")) {
    if (!j["depth"].is_number_unsigned()) parse_fail("depth: expected a natural number");
    d.depth = j["depth"].get<std::size_t>();
  }
  if (d.module == ModuleKind::Point && d.sig.has("T")) {
    throw Error(ErrorKind::InvariantViolation, "operation name T is reserved for the point module");
  }
  return d;
}

json canonical(json j, bool keep_order = false) {
  if (j.is_object()) {
    for (auto& [k, v] : j.items()) v = canonical(v, k == "rules");
  } else if (j.is_array()) {
    for (auto& v : j) v = canonical(v);
    if (!keep_order) {
      std::vector<std::pair<std::string, json>> keyed;
      for (auto& v : j) keyed.emplace_back(v.dump(), v);
      std::sort(keyed.begin(), keyed.end(), [](auto& a, auto& b) { return a.first < b.first; });
      json out = json::array();
      for (auto& [k, v] : keyed) out.push_back(v);
      return out;
    }
  }
  return j;
}

std::string render(const json& j) { return canonical(j).dump(2) + "\n"; }

}  // namespace

LoadedSystem load(std::string_view bytes) {
  json j;
  try {
    j = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    parse_fail(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) parse_fail("top level must be an object");
  auto kind = str(need(j, "kind", "document"), "kind");
  if (kind == "finite-bsystem") return load_finite(j);
  if (kind == "term-bsystem") return load_term(j);
  parse_fail("kind: expected \"finite-bsystem\" or \"term-bsystem\"");
}

LoadedSystem load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_fail("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load(ss.str());
}

std::string store(const FinBSys& sys) {
  const auto& d = sys.data();
  json j;
  j["kind"] = "finite-bsystem";
  j["cutoff"] = d.cutoff;
  j["pt"] = d.pt;
  j["B"] = json::object();
  for (std::size_t n = 0; n < d.B.size(); ++n) j["B"][std::to_string(n)] = d.B[n];
  j["Bt"] = json::object();
  for (std::size_t n = 1; n < d.Bt.size(); ++n) j["Bt"][std::to_string(n)] = d.Bt[n];
  j["ft"] = d.ft;
  j["del"] = d.del;
  auto tab = [](const auto& t, const char* a, const char* b) {
    json arr = json::array();
    for (auto& [k, v] : t) arr.push_back({{a, k.first}, {b, k.second}, {"out", v}});
    return arr;
  };
  j["T"] = tab(d.weaken, "Y", "X");
  j["Tt"] = tab(d.weaken_judgement, "Y", "r");
  j["S"] = tab(d.substitute, "s", "X");
  j["St"] = tab(d.substitute_judgement, "s", "r");
  if (d.unit) {
    json arr = json::array();
    for (auto& [x, out] : *d.unit) arr.push_back({{"X", x}, {"out", out}});
    j["delta"] = arr;
  }
  return render(j);
}

std::string store(const TermBSysDescription& desc) {
  json j;
  j["kind"] = "term-bsystem";
  j["ops"] = desc.sig.ops();
  json rules = json::array();
  for (auto& r : desc.rules.rules()) rules.push_back({{"lhs", to_string(r.lhs)}, {"rhs", to_string(r.rhs)}});
  j["rules"] = rules;
  j["module"] = desc.module == ModuleKind::Point ? "pt" : "R";
  if (!desc.unital) j["unital"] = false;
  if (desc.depth != 6) j["depth"] = desc.depth;
  if (desc.rules.certified_terminating()) j["terminating"] = true;
  return render(j);
}

std::string canonicalize(std::string_view bytes) {
  try {
    return render(json::parse(bytes.begin(), bytes.end()));
  } catch (const json::parse_error& e) {
    parse_fail(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace bsys
