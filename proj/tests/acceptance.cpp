// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fails.
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "bsys/csys.hpp"
#include "bsys/towerdata.hpp"
#include "support.hpp"

using namespace bsys;
using namespace bsys::testing;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt_seconds(double s) {
  std::ostringstream o;
  o.precision(2);
  o << std::fixed << s << "s";
  return o.str();
}

std::vector<std::string> failing_ids(const std::vector<LawReport>& reports) {
  std::vector<std::string> ids;
  for (auto& r : reports)
    if (!r.passed()) ids.push_back(r.id);
  return ids;
}

std::string join(const std::vector<std::string>& xs, const char* sep = ",") {
  std::string s;
  for (auto& x : xs) s += (s.empty() ? "" : sep) + x;
  return s;
}

// 1. Typing laws on the terminal system and the two point-module systems.
Verdict typing_laws() {
  Verdict v;
  FinView terminal(make_terminal(4));
  TermView r1(r1_description()), r2(r2_description());
  std::vector<std::pair<std::string, const BSysView*>> systems{{"terminal", &terminal}, {"R1", &r1}, {"R2", &r2}};
  for (auto& [name, sys] : systems) {
    auto t0 = Clock::now();
    auto reports = check_b0(*sys, 4);
    double t = seconds_since(t0);
    auto failed = failing_ids(reports);
    bool ok = failed.empty() && t < 10;
    v.pass = v.pass && ok;
    v.detail += (v.detail.empty() ? "" : "; ") + name + " " + (failed.empty() ? "all pass" : "fail " + join(failed)) +
                " in " + fmt_seconds(t);
  }
  return v;
}

// 2. B-system and unit laws at cutoff 4, with at least 50 instances per law.
Verdict b_laws() {
  Verdict v;
  auto t0 = Clock::now();
  std::vector<std::string> thin;
  for (auto [name, desc] : {std::pair{"R1", r1_description()}, std::pair{"R2", r2_description()}}) {
    TermView sys(desc);
    auto reports = check_laws(sys, 4);
    auto failed = failing_ids(reports);
    if (!failed.empty()) {
      v.pass = false;
      v.detail += std::string(name) + " fails " + join(failed) + "; ";
    }
    // a family is a named law with its object and judgement variants (TT = TT.a + TT.b)
    std::map<std::string, std::size_t> families;
    for (auto& r : reports) {
      if (std::find(b0_law_ids().begin(), b0_law_ids().end(), r.id) != b0_law_ids().end()) continue;
      families[r.id.substr(0, r.id.find('.'))] += r.instances;
    }
    for (auto& [family, count] : families)
      if (count < 50) thin.push_back(std::string(name) + ":" + family + "=" + std::to_string(count));
  }
  double t = seconds_since(t0);
  if (!thin.empty()) {
    v.pass = false;
    v.detail += "below 50 instances: " + join(thin, " ") + "; ";
  }
  if (t >= 60) v.pass = false;
  if (v.detail.find("fails") == std::string::npos) v.detail += "all laws pass on R1 and R2; ";
  v.detail += "total " + fmt_seconds(t);
  return v;
}

// 3. The worked example: two closures, their units, and a homomorphism that
//    preserves the operations but not the unit.
Verdict worked_example() {
  Verdict v;
  auto fail = [&](const std::string& why) {
    v.pass = false;
    v.detail += (v.detail.empty() ? "" : "; ") + why;
  };
  const std::size_t n = 4;
  TermView r1(r1_description()), r2(r2_description());
  auto nub1 = close_subsystem(r1, term_generators(r1, {"(T,T;s1(1))"}), n).system;
  auto nub2 = close_subsystem(r2, term_generators(r2, {"(T,T;s1(1))", "(T,T;s2(1))"}), n).system;
  if (nub1.data() != fin_file("nub1.json").data()) fail("nuB1 differs from the shipped closure");
  if (nub2.data() != fin_file("nub2.json").data()) fail("nuB2 differs from the shipped closure");
  FinView v1(nub1), v2(nub2);

  // delta(T^k) must be (T^{k+1}; s_i(k)).
  auto expect_units = [&](const UnitSearch& u, const char* name, const char* s) {
    if (u.outcome != UnitSearch::Outcome::Unique) return fail(std::string(name) + " unit not unique");
    for (std::size_t k = 1; k < n; ++k) {
      std::string x = "(" + join(std::vector<std::string>(k, "T")) + ")";
      std::string want = "(" + join(std::vector<std::string>(k + 1, "T")) + ";" + s + "(" + std::to_string(k) + "))";
      auto it = u.table.find(x);
      if (it == u.table.end() || it->second != want)
        return fail(std::string(name) + " delta" + x + " = " + (it == u.table.end() ? "missing" : it->second));
    }
    if (u.delta_s && !u.delta_s->passed()) fail(std::string(name) + " unit fails dS");
  };
  auto u1 = find_unit(v1, n), u2 = find_unit(v2, n);
  expect_units(u1, "nuB1", "s1");
  expect_units(u2, "nuB2", "s2");
  if (!v.pass) return v;

  Hom h = Hom::identity_on(v1, n);
  auto plain = check_hom(h, v1, v2, n, false);
  auto unital = check_hom(h, v1, v2, n, true, unit_from_table(v1, u1.table), unit_from_table(v2, u2.table));
  if (plain.status != LawStatus::Pass) fail("operations not preserved");
  if (unital.status != LawStatus::Fail || !unital.witness) return fail("unit preserved"), v;
  auto& w = *unital.witness;
  v.detail = "units s1(n), s2(n); HOM pass; HOM.unit fails at X=" + w.args.at(0).id + " level " +
             std::to_string(w.args.at(0).level) + ": " + w.lhs + " vs " + w.rhs;
  return v;
}

// A random single-entry change of an operation table to another element of
// the same level and the same ft or boundary; nullopt when the draw is invalid.
std::optional<FinBSysData> random_mutant(const FinBSys& base, std::mt19937& rng) {
  FinBSysData d = base.data();
  auto pick = [&](std::size_t k) { return std::uniform_int_distribution<std::size_t>(0, k - 1)(rng); };
  auto tables = std::vector<std::map<FinBSysData::Key, std::string>*>{&d.weaken, &d.weaken_judgement, &d.substitute,
                                                                        &d.substitute_judgement};
  std::size_t which = pick(tables.size());
  auto& table = *tables[which];
  if (table.empty()) return std::nullopt;
  auto it = std::next(table.begin(), static_cast<std::ptrdiff_t>(pick(table.size())));
  bool judgement = which % 2 == 1;
  std::vector<std::string> candidates;
  if (judgement) {
    for (std::size_t l = 1; l <= d.cutoff; ++l)
      for (auto& r : d.Bt[l])
        if (r != it->second && d.del.at(r) == d.del.at(it->second)) candidates.push_back(r);
  } else {
    for (auto& level : d.B)
      for (auto& x : level)
        if (x != it->second && d.ft.count(x) && d.ft.count(it->second) && d.ft.at(x) == d.ft.at(it->second))
          candidates.push_back(x);
  }
  if (candidates.empty()) return std::nullopt;
  it->second = candidates[pick(candidates.size())];
  try {
    FinBSys checked(d);
  } catch (const Error&) {
    return std::nullopt;
  }
  return d;
}

// 4. The unit is unique whenever it exists.
Verdict unit_uniqueness() {
  Verdict v;
  FinBSys nub1 = fin_file("nub1.json"), nub2 = fin_file("nub2.json");
  std::vector<FinBSysData> systems{nub1.data(), nub2.data()};
  std::mt19937 rng(7);
  std::size_t draws = 0;
  while (systems.size() < 22 && draws < 10000) {
    ++draws;
    const FinBSys& base = systems.size() % 2 == 0 ? nub1 : nub2;
    if (auto d = random_mutant(base, rng)) systems.push_back(std::move(*d));
  }
  if (systems.size() < 22) return {false, "could not draw 20 valid mutants"};
  std::size_t unique = 0, none = 0, ambiguous = 0;
  for (auto& d : systems) {
    FinView sys{FinBSys(d)};
    switch (find_unit(sys, d.cutoff).outcome) {
      case UnitSearch::Outcome::Unique: ++unique; break;
      case UnitSearch::Outcome::None: ++none; break;
      case UnitSearch::Outcome::Ambiguous: ++ambiguous; break;
    }
  }
  v.pass = ambiguous == 0;
  v.detail = std::to_string(systems.size()) + " systems: " + std::to_string(unique) + " unique, " +
             std::to_string(none) + " none, " + std::to_string(ambiguous) + " ambiguous";
  return v;
}

// 5. The category of contexts of R1 at cutoff 3 and the round trip back.
Verdict category_of_contexts() {
  Verdict v;
  auto t0 = Clock::now();
  TermView r1(r1_description());
  auto cat = build_category(r1, 3);
  auto check = check_category(cat);
  auto t = cat.object_index("(T)");
  std::size_t hom_tt = t == FinCat::none ? 0 : cat.homs(t, t).size();
  auto diff = diff_tables(ub_of(cat).data(), materialize(r1, 3).data());
  double secs = seconds_since(t0);
  v.pass = !check.failure && hom_tt == 2 && diff.empty() && secs < 60;
  v.detail = std::to_string(cat.objects.size()) + " objects, " + std::to_string(cat.morphisms.size()) +
             " morphisms; associativity " + std::to_string(check.associativity) + ", units " +
             std::to_string(check.units) + ", squares " + std::to_string(check.squares) + "; |hom(T,T)|=" +
             std::to_string(hom_tt) + "; round-trip diffs " + std::to_string(diff.size()) + "; " + fmt_seconds(secs);
  if (check.failure) v.detail += "; " + *check.failure;
  return v;
}

// 6. Weakening and substitution recovered from the unit agree with the
//    originals on all inputs of level <= 4.
Verdict derived_operations() {
  TermView r1(r1_description());
  const std::size_t n = 4;
  std::size_t checked = 0, wrong = 0;
  for (std::size_t l = 1; l <= n; ++l)
    for (auto& y : r1.elements(l))
      for (std::size_t k = 1; l - 1 + k <= n; ++k)
        for (auto& x : r1.fiber(r1.ft(y), k)) {
          ++checked;
          if (derived_weaken(r1, y, x) != weaken(r1, y, x)) ++wrong;
        }
  for (std::size_t l = 1; l <= n; ++l)
    for (auto& s : r1.telements(l))
      for (std::size_t k = 1; l + k <= n; ++k)
        for (auto& x : r1.fiber(r1.boundary(s), k)) {
          ++checked;
          if (derived_substitute(r1, s, x) != substitute(r1, s, x)) ++wrong;
        }
  return {wrong == 0 && checked > 0, std::to_string(checked) + " inputs, " + std::to_string(wrong) + " disagreements"};
}

// 7. Carrier-function formulation: pentagons agree with the element-level laws
//    and the round trip through carrier functions is exact.
Verdict carrier_formulation() {
  Verdict v;
  auto corpus = load_corpus();
  std::vector<std::pair<std::string, FinBSys>> systems;
  systems.emplace_back("R1", materialize(TermView(r1_description()), 4));
  systems.emplace_back("R2", materialize(TermView(r2_description()), 4));
  for (std::size_t i = 0; i < 8 && i < corpus.mutants.size(); ++i) {
    auto& m = corpus.mutants[i];
    systems.emplace_back(m.family, FinBSys(mutate(corpus.bases.at(m.base).data(), m)));
  }
  std::size_t compared = 0;
  std::vector<std::string> problems;
  for (auto& [name, sys] : systems) {
    FinView view(sys);
    std::size_t n = sys.cutoff();
    BData bd;
    try {
      bd = to_bdata(view, n);
    } catch (const Error& e) {
      problems.push_back(name + " to_bdata: " + e.what());
      continue;
    }
    for (auto& p : check_pentagons(bd, n)) {
      bool element_passed = true;
      for (auto& id : element_laws_of(p.id)) element_passed = element_passed && check_law(view, id, n).passed();
      ++compared;
      if (p.passed() != element_passed) problems.push_back(name + " " + p.id);
    }
    if (!diff_tables(from_bdata(bd).data(), materialize(view, n, false).data()).empty())
      problems.push_back(name + " round trip");
  }
  v.pass = problems.empty() && systems.size() == 10;
  v.detail = std::to_string(systems.size()) + " systems, " + std::to_string(compared) + " pentagon comparisons, " +
             std::to_string(problems.size()) + " disagreements";
  if (!problems.empty()) v.detail += ": " + join(problems, "; ");
  return v;
}

// 8. Every law family has a single-entry mutant that fails exactly that
//    family, with a witness that replays.
Verdict mutation_sensitivity() {
  auto corpus = load_corpus();
  std::set<std::string> covered;
  std::vector<std::string> problems;
  for (auto& m : corpus.mutants) {
    FinView view{FinBSys(mutate(corpus.bases.at(m.base).data(), m))};
    std::size_t n = view.system().cutoff();
    auto reports = check_laws(view, n);
    auto failed = failing_ids(reports);
    if (failed != std::vector<std::string>{m.family}) {
      problems.push_back(m.family + " mutant fails {" + join(failed) + "}");
      continue;
    }
    auto& r = *std::find_if(reports.begin(), reports.end(), [&](auto& x) { return x.id == m.family; });
    if (!r.witness) {
      problems.push_back(m.family + " without witness");
      continue;
    }
    auto [lhs, rhs] = replay(view, r.id, r.witness->args);
    if (lhs != r.witness->lhs || rhs != r.witness->rhs || lhs == rhs) {
      problems.push_back(m.family + " witness does not replay");
      continue;
    }
    covered.insert(m.family);
  }
  std::vector<std::string> missing;
  for (auto* ids : {&b_law_ids(), &unit_law_ids()})
    for (auto& id : *ids)
      if (!covered.count(id)) missing.push_back(id);
  Verdict v{problems.empty() && missing.empty(), ""};
  v.detail = std::to_string(covered.size()) + " laws isolated by " + std::to_string(corpus.mutants.size()) + " mutants";
  if (!missing.empty()) v.detail += "; uncovered " + join(missing);
  if (!problems.empty()) v.detail += "; " + join(problems, "; ");
  return v;
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"typing laws", typing_laws},
      {"B-system and unit laws", b_laws},
      {"worked example", worked_example},
      {"unit uniqueness", unit_uniqueness},
      {"category of contexts", category_of_contexts},
      {"derived operations", derived_operations},
      {"carrier-function formulation", carrier_formulation},
      {"mutation sensitivity", mutation_sensitivity},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto& [name, run] = criteria[i];
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    if (!v.pass) ++failures;
    std::cout << (v.pass ? "PASS" : "FAIL") << " " << i + 1 << " " << name << ": " << v.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
