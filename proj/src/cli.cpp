#include "bsys/cli.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "bsys/carrier_io.hpp"
#include "bsys/csys.hpp"
#include "bsys/laws.hpp"
#include "bsys/towerdata.hpp"
#include "json.hpp"

namespace bsys::cli {

namespace {

struct Options {
  std::string in;
  std::optional<std::size_t> cutoff;
  std::size_t budget = 1'000'000;
  std::string out;
  bool json = false;
  std::vector<std::string> gens;
  bool with_unit = false;
};

std::unique_ptr<BSysView> open_view(const Options& o, std::optional<bool> unital = {}) {
  if (o.in.empty()) throw Error(ErrorKind::ParseError, "--in is required");
  LoadedSystem sys = load_file(o.in);
  if (auto* fin = std::get_if<FinBSys>(&sys)) {
    if (unital && !*unital && fin->unital()) {
      FinBSysData d = fin->data();
      d.unit.reset();
      return std::make_unique<FinView>(FinBSys(std::move(d)), o.in);
    }
    return std::make_unique<FinView>(std::move(*fin), o.in);
  }
  auto desc = std::get<TermBSysDescription>(sys);
  if (unital) desc.unital = *unital;
  return std::make_unique<TermView>(desc, o.in);
}

void emit(const Options& o, std::ostream& out, const std::string& payload) {
  if (o.out.empty()) {
    out << payload;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw Error(ErrorKind::ParseError, "cannot write " + o.out);
  f << payload;
}

int cmd_check(const Options& o, std::ostream& out) {
  auto v = open_view(o);
  std::size_t n = o.cutoff.value_or(4);
  auto reports = check_b0(*v, n);
  auto laws = check_laws(*v, n);
  reports.insert(reports.end(), laws.begin(), laws.end());
  if (o.json) {
    emit(o, out, reports_to_json(reports));
  } else {
    std::string text;
    for (auto& r : reports) text += report_line(r) + "\n";
    emit(o, out, text);
  }
  return all_passed(reports) ? ok : law_failure;
}

// A generator id is a judgement when the view has it as one.
Generators parse_generators(const BSysView& v, const std::vector<std::string>& ids) {
  Generators g;
  for (auto& id : ids) {
    bool found = false;
    for (std::size_t n = 0; n <= 64 && !found; ++n) {
      if (n >= 1 && v.contains(TElt{id, n})) {
        g.telements.push_back({id, n});
        found = true;
      } else if (v.contains(Elt{id, n})) {
        g.elements.push_back({id, n});
        found = true;
      }
      if (auto cap = v.capacity(); cap && n >= *cap) break;
    }
    if (!found) throw Error(ErrorKind::UnknownElement, "generator " + id + " is not an element of the system");
  }
  return g;
}

int cmd_close(const Options& o, std::ostream& out, std::ostream& err) {
  auto v = open_view(o);
  std::size_t n = o.cutoff.value_or(4);
  auto closure = close_subsystem(*v, parse_generators(*v, o.gens), n, o.with_unit);
  if (closure.truncated) err << "warning: generators above cutoff " << n << " were dropped\n";
  emit(o, out, store(closure.system));
  return ok;
}

std::string unit_json(const UnitSearch& u) {
  nlohmann::json j;
  j["cutoff"] = u.cutoff;
  switch (u.outcome) {
    case UnitSearch::Outcome::None: j["outcome"] = "none"; break;
    case UnitSearch::Outcome::Unique: j["outcome"] = "unique"; break;
    case UnitSearch::Outcome::Ambiguous: j["outcome"] = "ambiguous"; break;
  }
  j["delta"] = u.table;
  if (!u.other.empty()) j["other"] = u.other;
  if (u.delta_s) j["dS"] = to_string(u.delta_s->status);
  return j.dump(2) + "\n";
}

int cmd_unit(const Options& o, std::ostream& out) {
  auto v = open_view(o, false);
  std::size_t n = o.cutoff.value_or(4);
  auto u = find_unit(*v, n);
  if (o.json) {
    emit(o, out, unit_json(u));
  } else if (u.outcome == UnitSearch::Outcome::None) {
    emit(o, out, "none\n");
  } else {
    std::string text;
    if (u.outcome == UnitSearch::Outcome::Ambiguous) text += "ambiguous: two unit families found\n";
    for (auto& [x, d] : u.table) text += "delta " + x + " = " + d + "\n";
    if (u.delta_s) text += report_line(*u.delta_s) + "\n";
    emit(o, out, text);
  }
  if (u.outcome == UnitSearch::Outcome::Ambiguous) return law_failure;
  if (u.delta_s && !u.delta_s->passed()) return law_failure;
  return ok;
}

int cmd_csys(const Options& o, std::ostream& out) {
  auto v = open_view(o);
  std::size_t n = o.cutoff.value_or(3);
  auto cat = build_category(*v, n, {o.budget, true});
  if (o.json || !o.out.empty()) {
    emit(o, out, fincat_to_json(cat));
  } else {
    auto check = check_category(cat);
    std::ostringstream s;
    s << "objects " << cat.objects.size() << "\n"
      << "morphisms " << cat.morphisms.size() << "\n"
      << "associativity instances " << check.associativity << "\n"
      << "unit instances " << check.units << "\n"
      << "pullback squares " << check.squares << "\n"
      << "category laws: " << (check.failure ? "FAIL " + *check.failure : std::string("pass")) << "\n";
    out << s.str();
  }
  return ok;
}

int cmd_roundtrip(const Options& o, std::ostream& out) {
  auto v = open_view(o);
  std::size_t n = o.cutoff.value_or(3);
  auto cat = build_category(*v, n, {o.budget, true});
  FinBSys rebuilt = ub_of(cat);
  FinBSys original = materialize(*v, n);
  auto diff = diff_tables(rebuilt.data(), original.data());
  std::ostringstream s;
  s << "category: " << cat.objects.size() << " objects, " << cat.morphisms.size() << " morphisms\n";
  if (diff.empty()) {
    s << "roundtrip: operation tables identical at cutoff " << n << "\n";
  } else {
    s << "roundtrip: " << diff.size() << " differences\n";
    for (auto& line : diff) s << "  " << line << "\n";
  }
  emit(o, out, s.str());
  return diff.empty() ? ok : law_failure;
}

std::string terms_of(const std::map<std::string, std::string>& table) {
  std::string out;
  for (auto& [x, d] : table) out += "  delta " + x + " = " + d + "\n";
  return out;
}

int cmd_demo(const Options& o, std::ostream& out) {
  std::size_t n = o.cutoff.value_or(4);
  TermView r1(r1_description(), "uB(R1,pt)");
  TermView r2(r2_description(), "uB(R2,pt)");
  auto nub1 = close_subsystem(r1, {{}, {{"(T,T;s1(1))", 2}}}, n).system;
  auto nub2 = close_subsystem(r2, {{}, {{"(T,T;s1(1))", 2}, {"(T,T;s2(1))", 2}}}, n).system;
  FinView v1(nub1, "nuB1"), v2(nub2, "nuB2");

  auto u1 = find_unit(v1, n);
  auto u2 = find_unit(v2, n);
  out << "nuB1 unit (" << (u1.outcome == UnitSearch::Outcome::Unique ? "unique" : "not unique") << "):\n"
      << terms_of(u1.table);
  out << "nuB2 unit (" << (u2.outcome == UnitSearch::Outcome::Unique ? "unique" : "not unique") << "):\n"
      << terms_of(u2.table);
  if (u1.outcome != UnitSearch::Outcome::Unique || u2.outcome != UnitSearch::Outcome::Unique) {
    out << "unit search did not produce unique units\n";
    return law_failure;
  }

  Hom h = Hom::identity_on(v1, n);
  auto plain = check_hom(h, v1, v2, n, false);
  auto unital = check_hom(h, v1, v2, n, true, unit_from_table(v1, u1.table), unit_from_table(v2, u2.table));
  out << report_line(plain) << "\n" << report_line(unital) << "\n";
  bool expected = plain.status == LawStatus::Pass && unital.status == LawStatus::Fail;
  if (expected) {
    out << "hom nuB1→nuB2: operations preserved; unit NOT preserved\n";
    return ok;
  }
  out << "hom nuB1→nuB2: unexpected outcome\n";
  return law_failure;
}

int status_of(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::ParseError: return parse_error;
    case ErrorKind::CutoffTooLarge:
    case ErrorKind::StepBudgetExceeded: return budget_exceeded;
    default: return other_error;
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"B-system checker"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* sub, bool needs_input) {
    auto* in = sub->add_option("--in", o.in, "input system (JSON)");
    if (needs_input) in->required();
    sub->add_option("--cutoff", o.cutoff, "highest level considered");
    sub->add_option("--budget", o.budget, "candidate budget for hom-set enumeration");
    sub->add_option("--out", o.out, "write the result to a file");
    sub->add_flag("--json", o.json, "JSON output");
  };
  auto* check = app.add_subcommand("check", "run the typing and B-system law checkers");
  auto* close = app.add_subcommand("close", "sub-system generated by elements");
  auto* unit = app.add_subcommand("unit", "search for the unit of a non-unital system");
  auto* csys = app.add_subcommand("csys", "reconstruct the category of contexts");
  auto* roundtrip = app.add_subcommand("roundtrip", "rebuild the B-system from its category and compare");
  auto* demo = app.add_subcommand("demo", "non-unital homomorphism between two unital systems");
  for (auto* s : {check, close, unit, csys, roundtrip}) common(s, true);
  common(demo, false);
  close->add_option("--gen", o.gens, "generator id (repeatable)");
  close->add_flag("--unital", o.with_unit, "close under delta as well");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return parse_error;
  }

  try {
    if (*check) return cmd_check(o, out);
    if (*close) return cmd_close(o, out, err);
    if (*unit) return cmd_unit(o, out);
    if (*csys) return cmd_csys(o, out);
    if (*roundtrip) return cmd_roundtrip(o, out);
    if (*demo) return cmd_demo(o, out);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return status_of(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return other_error;
  }
  return other_error;
}

}  // namespace bsys::cli
