#pragma once

// Exhaustive checkers for the typing (B0) laws, the B-system laws and the
// unit laws; unit search; sub-system closure; homomorphisms.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bsys/ops.hpp"

namespace bsys {

enum class LawStatus { Pass, Fail, Vacuous };

std::string_view to_string(LawStatus s);

/// One quantified argument of a law instance.
struct WitnessArg {
  std::string role;   // e.g. "GT", "s", "R"
  bool tilde = false; // member of B~ rather than B
  std::string id;
  std::size_t level = 0;

  bool operator==(const WitnessArg&) const = default;
};

struct Witness {
  std::vector<WitnessArg> args;
  std::string lhs;
  std::string rhs;
};

struct LawReport {
  std::string id;
  std::size_t instances = 0;
  LawStatus status = LawStatus::Vacuous;
  std::optional<Witness> witness;
  std::size_t cutoff = 0;

  bool passed() const { return status != LawStatus::Fail; }
};

/// Ids in report order.
const std::vector<std::string>& b0_law_ids();
const std::vector<std::string>& b_law_ids();      // TT.a .. STid.b
const std::vector<std::string>& unit_law_ids();   // dT, dS, dSid, SdT.a, SdT.b

/// Quantification: every quantified input has level <= cutoff. Instances whose
/// evaluation leaves the backend capacity are skipped (not counted).
/// `unit` replaces the view's own delta; without either, unit laws are vacuous.
std::vector<LawReport> check_b0(const BSysView& v, std::size_t cutoff, const std::optional<UnitFn>& unit = {});
std::vector<LawReport> check_laws(const BSysView& v, std::size_t cutoff, const std::optional<UnitFn>& unit = {});
/// A single law by id (any id from the three lists above).
LawReport check_law(const BSysView& v, const std::string& id, std::size_t cutoff,
                    const std::optional<UnitFn>& unit = {});

/// Re-evaluates a failing witness; returns {lhs, rhs}.
std::pair<std::string, std::string> replay(const BSysView& v, const std::string& id, const std::vector<WitnessArg>& args,
                                           const std::optional<UnitFn>& unit = {});

bool all_passed(const std::vector<LawReport>& reports);

// ---------------------------------------------------------------------------
// Unit search

struct UnitSearch {
  enum class Outcome { None, Unique, Ambiguous } outcome = Outcome::None;
  std::map<std::string, std::string> table;   // X id -> delta(X) id
  std::map<std::string, std::string> other;   // second solution when ambiguous
  std::optional<LawReport> delta_s;           // dS on the unique solution
  std::size_t cutoff = 0;
};

/// Searches delta on B_1..B_{cutoff-1} satisfying dT, dSid and SdT.
UnitSearch find_unit(const BSysView& v, std::size_t cutoff);

/// UnitFn reading a delta table (throws OutsideCutoff for missing entries).
UnitFn unit_from_table(const BSysView& v, std::map<std::string, std::string> table);

// ---------------------------------------------------------------------------
// Sub-systems

struct Generators {
  std::vector<Elt> elements;
  std::vector<TElt> telements;
};

struct Closure {
  FinBSys system;
  bool truncated = false;  // some generator lies above the cutoff and was dropped
};

/// Least sub-system containing pt and the generators, closed under ft, del,
/// T, T~, S, S~ (and delta when `with_unit`) for outputs of level <= cutoff.
Closure close_subsystem(const BSysView& v, const Generators& gens, std::size_t cutoff, bool with_unit = false);

// ---------------------------------------------------------------------------
// Homomorphisms

/// Level-preserving maps on ids.
struct Hom {
  std::map<std::string, std::string> b;
  std::map<std::string, std::string> bt;

  static Hom identity_on(const BSysView& v, std::size_t cutoff);
};

/// Checks commutation with pt, ft, del, T, T~, S, S~; with `unital` also
/// delta (using the given units if the views have none). Report id "HOM" or
/// "HOM.unit".
LawReport check_hom(const Hom& h, const BSysView& src, const BSysView& dst, std::size_t cutoff, bool unital,
                    const std::optional<UnitFn>& src_unit = {}, const std::optional<UnitFn>& dst_unit = {});

// ---------------------------------------------------------------------------

std::string reports_to_json(const std::vector<LawReport>& reports);
std::string report_line(const LawReport& r);

}  // namespace bsys
