#pragma once

// Helpers shared by the unit tests and the acceptance suite: shipped data
// files and the mutant corpus.

#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "bsys/carrier_io.hpp"
#include "bsys/laws.hpp"
#include "json.hpp"

namespace bsys::testing {

inline std::string data_path(const std::string& name) { return std::string(BSYS_DATA_DIR "/") + name; }

inline TermBSysDescription term_file(const std::string& name) {
  return std::get<TermBSysDescription>(load_file(data_path(name)));
}

inline FinBSys fin_file(const std::string& name) { return std::get<FinBSys>(load_file(data_path(name))); }

/// Generators given by printed ids: a ';' marks a judgement.
inline Generators term_generators(const TermView& v, const std::vector<std::string>& ids) {
  Generators g;
  for (auto& id : ids) {
    if (id.find(';') != std::string::npos)
      g.telements.push_back(v.telt(v.system().parse_judgement(id)));
    else
      g.elements.push_back(v.elt(v.system().parse_context(id)));
  }
  return g;
}

struct Mutant {
  std::string family;
  std::string base;
  std::string table;  // T, Tt, S, St or delta
  std::vector<std::string> args;
  std::string out;
};

struct Corpus {
  std::map<std::string, FinBSys> bases;
  std::vector<Mutant> mutants;
};

/// Bases are materialized term systems or closures inside them.
inline Corpus load_corpus() {
  std::ifstream f(data_path("mutants.json"));
  auto j = nlohmann::json::parse(f);
  Corpus c;
  for (auto& [name, b] : j["bases"].items()) {
    TermView v(term_file(b["system"].get<std::string>()));
    std::size_t cutoff = b["cutoff"];
    if (b.contains("generators")) {
      auto gens = term_generators(v, b["generators"].get<std::vector<std::string>>());
      c.bases.emplace(name, close_subsystem(v, gens, cutoff, b.value("unital", false)).system);
    } else {
      c.bases.emplace(name, materialize(v, cutoff));
    }
  }
  for (auto& m : j["mutants"])
    c.mutants.push_back({m["family"], m["base"], m["table"], m["args"].get<std::vector<std::string>>(), m["out"]});
  return c;
}

/// The base tables with the single entry of `m` replaced; throws
/// InvariantViolation when the base has no such entry.
inline FinBSysData mutate(const FinBSysData& base, const Mutant& m) {
  FinBSysData d = base;
  auto set = [&](auto& table, const auto& key) {
    auto it = table.find(key);
    if (it == table.end()) throw Error(ErrorKind::InvariantViolation, "mutant " + m.family + ": no such entry");
    it->second = m.out;
  };
  if (m.table == "delta") {
    if (!d.unit) throw Error(ErrorKind::InvariantViolation, "mutant " + m.family + ": base is not unital");
    set(*d.unit, m.args.at(0));
    return d;
  }
  FinBSysData::Key key{m.args.at(0), m.args.at(1)};
  if (m.table == "T") set(d.weaken, key);
  else if (m.table == "Tt") set(d.weaken_judgement, key);
  else if (m.table == "S") set(d.substitute, key);
  else if (m.table == "St") set(d.substitute_judgement, key);
  else throw Error(ErrorKind::ParseError, "unknown table " + m.table);
  return d;
}

}  // namespace bsys::testing
