#pragma once

// Terms of a finitely presented monad: a signature of operation symbols,
// terms over the variables {1..n} (variable k names the k-th context entry),
// and a rewrite system whose normal forms realize the monad's quotient.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bsys/error.hpp"

namespace bsys {

class Term {
 public:
  enum class Kind { Var, App, Meta };

  static Term var(std::uint32_t k);
  static Term app(std::string op, std::vector<Term> args = {});
  /// Pattern variable of a rewrite rule.
  static Term meta(char name);

  Kind kind() const { return kind_; }
  bool is_var() const { return kind_ == Kind::Var; }
  std::uint32_t index() const { return var_; }
  const std::string& op() const { return op_; }
  const std::vector<Term>& args() const { return args_; }
  char meta_name() const { return static_cast<char>(var_); }

  std::size_t depth() const;
  std::size_t size() const;
  /// Largest variable index, 0 when the term is closed.
  std::uint32_t max_var() const;

  bool operator==(const Term&) const = default;
  friend bool operator<(const Term& a, const Term& b);

 private:
  Kind kind_ = Kind::Var;
  std::uint32_t var_ = 0;
  std::string op_;
  std::vector<Term> args_;
};

std::string to_string(const Term& t);

/// Operation symbols with arities; arity 0 is a constant.
class Sig {
 public:
  Sig() = default;
  explicit Sig(std::map<std::string, std::size_t> ops);

  bool has(const std::string& op) const { return ops_.contains(op); }
  std::size_t arity(const std::string& op) const;
  const std::map<std::string, std::size_t>& ops() const { return ops_; }

 private:
  std::map<std::string, std::size_t> ops_;
};

struct Rule {
  Term lhs;
  Term rhs;
};

/// Ordered rule list. Construction checks that every pattern variable of a
/// right-hand side occurs on the left, and that each rule is size
/// non-increasing unless termination is certified by the caller.
class RewriteRules {
 public:
  RewriteRules() = default;
  explicit RewriteRules(std::vector<Rule> rules, bool certified_terminating = false);

  const std::vector<Rule>& rules() const { return rules_; }
  bool empty() const { return rules_.empty(); }
  bool certified_terminating() const { return certified_; }

 private:
  std::vector<Rule> rules_;
  bool certified_ = false;
};

inline constexpr std::size_t kDefaultStepBudget = 10'000;

enum class Strategy { Innermost, Outermost };

/// Rewrites to a normal form. Leftmost-innermost by default; throws
/// StepBudgetExceeded after `budget` rewrite steps.
Term normalize(const Term& t, const RewriteRules& rules, Strategy strategy = Strategy::Innermost,
               std::size_t budget = kDefaultStepBudget);

bool is_normal(const Term& t, const RewriteRules& rules);

/// t_n: variables >= n are shifted up by one. `scope` is m, the number of
/// variables E may use; requires 1 <= n <= m + 1.
Term weaken_term(const Term& e, std::uint32_t n, std::uint32_t scope);

/// Substitute-then-lower: for E over {1..scope} (scope = m+1), variables 1..n
/// stay, variable n+1 becomes s, variables >= n+2 drop by one. The result is
/// normalized and lies over {1..m}. Requires s over {1..n}, n + 1 <= scope.
Term subst_at(const Term& e, const Term& s, std::uint32_t n, std::uint32_t scope, const RewriteRules& rules,
              std::size_t budget = kDefaultStepBudget);

/// Simultaneous replacement of variable k by images[k-1] without normalizing.
Term rename(const Term& e, const std::vector<Term>& images);

/// Parses `3`, `c`, `c()`, `f(1,g(2))`. With `allow_meta`, a single lowercase
/// letter that is not a declared operation is a pattern variable.
Term parse_term(std::string_view text, const Sig& sig, bool allow_meta = false);

/// Normal forms of all terms over {1..scope} of depth <= max_depth.
std::vector<Term> enumerate_normal_terms(const Sig& sig, const RewriteRules& rules, std::uint32_t scope,
                                         std::size_t max_depth);

}  // namespace bsys
