#pragma once

// The syntactic pre-B-system B(R, LM) of a finitely presented monad R with
// left module LM either the one-point module or R itself.
//
//   B_n        = LM(0) x LM({1}) x ... x LM({1..n-1})   (contexts)
//   B~_{n+1}   = B_{n+1} x R({1..n})                    (judgements G |- o : E)

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "bsys/term.hpp"

namespace bsys {

enum class ModuleKind { Point, Monad };

/// Parsed form of a `term-bsystem` file.
struct TermBSysDescription {
  Sig sig;
  RewriteRules rules;
  ModuleKind module = ModuleKind::Point;
  bool unital = true;
  std::size_t depth = 6;
};

/// Context entries; entry k (0-based) is a term over {1..k}. With the point
/// module every entry is the marker type `T`.
struct Context {
  std::vector<Term> entries;

  std::size_t length() const { return entries.size(); }
  bool operator==(const Context&) const = default;
};

struct Judgement {
  Context ctx;  // boundary, length >= 1
  Term term;    // over {1..ctx.length()-1}

  bool operator==(const Judgement&) const = default;
};

class TermBSys {
 public:
  TermBSys(Sig sig, RewriteRules rules, ModuleKind module, std::size_t step_budget = kDefaultStepBudget);
  explicit TermBSys(const TermBSysDescription& desc);

  const Sig& sig() const { return sig_; }
  const RewriteRules& rules() const { return rules_; }
  ModuleKind module() const { return module_; }

  /// The type `T` of the point module.
  static const Term& point_type();

  Term normalize(const Term& t) const;

  Context ft(const Context& x) const;

  /// T(Y, X): inserts the last entry of Y at position l(Y) and weakens the tail.
  Context weaken(const Context& y, const Context& x) const;
  Judgement weaken_judgement(const Context& y, const Judgement& r) const;
  /// S(s, X): removes the entry typed by s and substitutes s's term into the tail.
  Context substitute(const Judgement& s, const Context& x) const;
  Judgement substitute_judgement(const Judgement& s, const Judgement& r) const;
  /// delta(X) = (T(X, X), variable l(X)).
  Judgement unit(const Context& x) const;

  /// Normal-form terms over {1..scope} up to the depth bound (cached).
  const std::vector<Term>& terms(std::uint32_t scope, std::size_t depth) const;
  /// Candidate entries at position `position` (over {1..position}).
  std::vector<Term> entries(std::uint32_t position, std::size_t depth) const;

  std::string print(const Context& x) const;
  std::string print(const Judgement& r) const;
  Context parse_context(const std::string& text) const;
  Judgement parse_judgement(const std::string& text) const;

  /// Well-formedness of contexts and judgements: scoping and normal forms.
  void check(const Context& x) const;
  void check(const Judgement& r) const;

 private:
  Term entry_weaken(const Term& e, std::uint32_t n, std::uint32_t scope) const;
  Term entry_subst(const Term& e, const Term& s, std::uint32_t n, std::uint32_t scope) const;
  Term parse_entry(const std::string& text, std::uint32_t scope) const;

  Sig sig_;
  RewriteRules rules_;
  ModuleKind module_;
  std::size_t budget_;

  mutable std::mutex cache_mutex_;
  mutable std::map<std::pair<std::uint32_t, std::size_t>, std::unique_ptr<std::vector<Term>>> term_cache_;
};

/// The first-example monads: R1 has one idempotent unary s1; R2 has s1, s2
/// with s1 s1 = s1, s1 s2 = s1, s2 s1 = s1, s2 s2 = s2.
TermBSysDescription r1_description();
TermBSysDescription r2_description();

}  // namespace bsys
