#include "bsys/term.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace bsys {

Term Term::var(std::uint32_t k) {
  Term t;
  t.kind_ = Kind::Var;
  t.var_ = k;
  return t;
}

Term Term::app(std::string op, std::vector<Term> args) {
  Term t;
  t.kind_ = Kind::App;
  t.op_ = std::move(op);
  t.args_ = std::move(args);
  return t;
}

Term Term::meta(char name) {
  Term t;
  t.kind_ = Kind::Meta;
  t.var_ = static_cast<std::uint32_t>(name);
  return t;
}

std::size_t Term::depth() const {
  std::size_t d = 0;
  for (auto& a : args_) d = std::max(d, a.depth() + 1);
  return d;
}

std::size_t Term::size() const {
  std::size_t s = 1;
  for (auto& a : args_) s += a.size();
  return s;
}

std::uint32_t Term::max_var() const {
  std::uint32_t m = kind_ == Kind::Var ? var_ : 0;
  for (auto& a : args_) m = std::max(m, a.max_var());
  return m;
}

bool operator<(const Term& a, const Term& b) {
  if (a.kind_ != b.kind_) return a.kind_ < b.kind_;
  if (a.var_ != b.var_) return a.var_ < b.var_;
  if (a.op_ != b.op_) return a.op_ < b.op_;
  return std::lexicographical_compare(a.args_.begin(), a.args_.end(), b.args_.begin(), b.args_.end());
}

std::string to_string(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var: return std::to_string(t.index());
    case Term::Kind::Meta: return std::string(1, t.meta_name());
    case Term::Kind::App: break;
  }
  if (t.args().empty()) return t.op();
  std::string out = t.op() + "(";
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i) out += ",";
    out += to_string(t.args()[i]);
  }
  return out + ")";
}

// ---------------------------------------------------------------------------
// Signature and rules

Sig::Sig(std::map<std::string, std::size_t> ops) : ops_(std::move(ops)) {
  for (auto& [name, arity] : ops_) {
    (void)arity;
    if (name.empty()) throw Error(ErrorKind::InvariantViolation, "empty operation name");
    if (!(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')) {
      throw Error(ErrorKind::InvariantViolation, "operation name must start with a letter: " + name);
    }
    for (char c : name) {
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) {
        throw Error(ErrorKind::InvariantViolation, "bad character in operation name " + name);
      }
    }
  }
}

std::size_t Sig::arity(const std::string& op) const {
  auto it = ops_.find(op);
  if (it == ops_.end()) throw Error(ErrorKind::UnknownElement, "operation " + op);
  return it->second;
}

namespace {

void count_metas(const Term& t, std::map<char, std::size_t>& counts) {
  if (t.kind() == Term::Kind::Meta) ++counts[t.meta_name()];
  for (auto& a : t.args()) count_metas(a, counts);
}

}  // namespace

RewriteRules::RewriteRules(std::vector<Rule> rules, bool certified_terminating)
    : rules_(std::move(rules)), certified_(certified_terminating) {
  for (auto& r : rules_) {
    std::string shown = to_string(r.lhs) + " -> " + to_string(r.rhs);
    if (r.lhs.kind() != Term::Kind::App) {
      throw Error(ErrorKind::InvariantViolation, "rule lhs must be an application: " + shown);
    }
    if (r.lhs.max_var() || r.rhs.max_var()) {
      throw Error(ErrorKind::InvariantViolation, "rules may not mention context variables: " + shown);
    }
    std::map<char, std::size_t> lhs_metas, rhs_metas;
    count_metas(r.lhs, lhs_metas);
    count_metas(r.rhs, rhs_metas);
    bool nonincreasing = r.rhs.size() <= r.lhs.size();
    for (auto& [m, n] : rhs_metas) {
      auto it = lhs_metas.find(m);
      if (it == lhs_metas.end()) {
        throw Error(ErrorKind::InvariantViolation, "pattern variable of rhs missing from lhs: " + shown);
      }
      if (n > it->second) nonincreasing = false;
    }
    if (!nonincreasing && !certified_) {
      throw Error(ErrorKind::InvariantViolation, "rule is size-increasing and not certified terminating: " + shown);
    }
  }
}

// ---------------------------------------------------------------------------
// Rewriting

namespace {

using Binding = std::map<char, Term>;

bool match(const Term& pattern, const Term& t, Binding& b) {
  switch (pattern.kind()) {
    case Term::Kind::Meta: {
      auto [it, fresh] = b.emplace(pattern.meta_name(), t);
      return fresh || it->second == t;
    }
    case Term::Kind::Var: return t.is_var() && t.index() == pattern.index();
    case Term::Kind::App: break;
  }
  if (t.kind() != Term::Kind::App || t.op() != pattern.op() || t.args().size() != pattern.args().size()) {
    return false;
  }
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (!match(pattern.args()[i], t.args()[i], b)) return false;
  }
  return true;
}

Term instantiate(const Term& pattern, const Binding& b) {
  if (pattern.kind() == Term::Kind::Meta) return b.at(pattern.meta_name());
  if (pattern.kind() == Term::Kind::Var) return pattern;
  std::vector<Term> args;
  args.reserve(pattern.args().size());
  for (auto& a : pattern.args()) args.push_back(instantiate(a, b));
  return Term::app(pattern.op(), std::move(args));
}

std::optional<Term> rewrite_root(const Term& t, const RewriteRules& rules) {
  for (auto& r : rules.rules()) {
    Binding b;
    if (match(r.lhs, t, b)) return instantiate(r.rhs, b);
  }
  return std::nullopt;
}

class Rewriter {
 public:
  Rewriter(const RewriteRules& rules, std::size_t budget) : rules_(rules), budget_(budget) {}

  Term innermost(const Term& t) {
    if (t.kind() != Term::Kind::App) return t;
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (auto& a : t.args()) args.push_back(innermost(a));
    Term cur = Term::app(t.op(), std::move(args));
    if (auto next = rewrite_root(cur, rules_)) {
      tick(cur);
      return innermost(*next);
    }
    return cur;
  }

  // One leftmost-outermost step, or nullopt if t is normal.
  std::optional<Term> outermost_step(const Term& t) {
    if (t.kind() != Term::Kind::App) return std::nullopt;
    if (auto next = rewrite_root(t, rules_)) return next;
    for (std::size_t i = 0; i < t.args().size(); ++i) {
      if (auto sub = outermost_step(t.args()[i])) {
        auto args = t.args();
        args[i] = std::move(*sub);
        return Term::app(t.op(), std::move(args));
      }
    }
    return std::nullopt;
  }

  Term outermost(Term t) {
    while (auto next = outermost_step(t)) {
      tick(t);
      t = std::move(*next);
    }
    return t;
  }

 private:
  void tick(const Term& t) {
    if (++steps_ > budget_) {
      throw Error(ErrorKind::StepBudgetExceeded,
                  "more than " + std::to_string(budget_) + " rewrite steps while normalizing " + to_string(t));
    }
  }

  const RewriteRules& rules_;
  std::size_t budget_;
  std::size_t steps_ = 0;
};

}  // namespace

Term normalize(const Term& t, const RewriteRules& rules, Strategy strategy, std::size_t budget) {
  if (rules.empty()) return t;
  Rewriter rw(rules, budget);
  return strategy == Strategy::Innermost ? rw.innermost(t) : rw.outermost(t);
}

bool is_normal(const Term& t, const RewriteRules& rules) {
  Rewriter rw(rules, 0);
  return !rw.outermost_step(t).has_value();
}

// ---------------------------------------------------------------------------
// Variable calculus

namespace {

void check_scope(const Term& e, std::uint32_t scope, const char* what) {
  if (e.max_var() > scope) {
    throw Error(ErrorKind::ScopeError, std::string(what) + ": " + to_string(e) + " is not over {1.." +
                                           std::to_string(scope) + "}");
  }
}

template <class F>
Term map_vars(const Term& e, F&& f) {
  if (e.is_var()) return f(e.index());
  if (e.kind() == Term::Kind::Meta) return e;
  std::vector<Term> args;
  args.reserve(e.args().size());
  for (auto& a : e.args()) args.push_back(map_vars(a, f));
  return Term::app(e.op(), std::move(args));
}

}  // namespace

Term weaken_term(const Term& e, std::uint32_t n, std::uint32_t scope) {
  check_scope(e, scope, "weaken");
  if (n < 1 || n > scope + 1) {
    throw Error(ErrorKind::ScopeError, "weaken index " + std::to_string(n) + " outside 1.." +
                                           std::to_string(scope + 1));
  }
  return map_vars(e, [n](std::uint32_t k) { return Term::var(k >= n ? k + 1 : k); });
}

Term subst_at(const Term& e, const Term& s, std::uint32_t n, std::uint32_t scope, const RewriteRules& rules,
              std::size_t budget) {
  check_scope(e, scope, "subst_at target");
  check_scope(s, n, "subst_at replacement");
  if (n + 1 > scope) {
    throw Error(ErrorKind::ScopeError, "subst_at index " + std::to_string(n + 1) + " outside 1.." +
                                           std::to_string(scope));
  }
  Term out = map_vars(e, [&](std::uint32_t k) {
    if (k <= n) return Term::var(k);
    if (k == n + 1) return s;
    return Term::var(k - 1);
  });
  return normalize(out, rules, Strategy::Innermost, budget);
}

Term rename(const Term& e, const std::vector<Term>& images) {
  return map_vars(e, [&](std::uint32_t k) {
    if (k == 0 || k > images.size()) throw Error(ErrorKind::ScopeError, "rename: variable " + std::to_string(k));
    return images[k - 1];
  });
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Sig& sig, bool allow_meta)
      : text_(text), sig_(sig), allow_meta_(allow_meta) {}

  Term parse() {
    Term t = term();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorKind::ParseError, why + " at offset " + std::to_string(pos_) + " in '" +
                                           std::string(text_) + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Term term() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end");
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::uint64_t v = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        v = v * 10 + static_cast<std::uint64_t>(text_[pos_++] - '0');
        if (v > 1'000'000) fail("variable index too large");
      }
      if (v == 0) fail("variables are positive integers");
      return Term::var(static_cast<std::uint32_t>(v));
    }
    if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_')) fail("expected a term");
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    std::string name(text_.substr(start, pos_ - start));
    bool has_parens = false;
    std::vector<Term> args;
    if (eat('(')) {
      has_parens = true;
      if (!eat(')')) {
        do {
          args.push_back(term());
        } while (eat(','));
        if (!eat(')')) fail("expected ')'");
      }
    }
    if (!sig_.has(name)) {
      if (allow_meta_ && !has_parens && name.size() == 1 && std::islower(static_cast<unsigned char>(name[0]))) {
        return Term::meta(name[0]);
      }
      fail("unknown operation '" + name + "'");
    }
    if (sig_.arity(name) != args.size()) {
      fail("operation '" + name + "' expects " + std::to_string(sig_.arity(name)) + " arguments");
    }
    return Term::app(name, std::move(args));
  }

  std::string_view text_;
  const Sig& sig_;
  bool allow_meta_;
  std::size_t pos_ = 0;
};

}  // namespace

Term parse_term(std::string_view text, const Sig& sig, bool allow_meta) {
  return Parser(text, sig, allow_meta).parse();
}

std::vector<Term> enumerate_normal_terms(const Sig& sig, const RewriteRules& rules, std::uint32_t scope,
                                         std::size_t max_depth) {
  std::set<Term> layer;
  for (std::uint32_t k = 1; k <= scope; ++k) layer.insert(Term::var(k));
  for (auto& [op, arity] : sig.ops()) {
    if (arity == 0) layer.insert(normalize(Term::app(op), rules));
  }
  const std::set<Term> leaves = layer;
  for (std::size_t d = 1; d <= max_depth; ++d) {
    std::vector<Term> prev(layer.begin(), layer.end());
    std::set<Term> next = leaves;
    for (auto& [op, arity] : sig.ops()) {
      if (arity == 0) continue;
      // all arity-tuples over prev
      std::vector<std::size_t> idx(arity, 0);
      if (prev.empty()) continue;
      while (true) {
        std::vector<Term> args;
        args.reserve(arity);
        for (auto i : idx) args.push_back(prev[i]);
        next.insert(normalize(Term::app(op, std::move(args)), rules));
        std::size_t pos = 0;
        while (pos < arity && ++idx[pos] == prev.size()) idx[pos++] = 0;
        if (pos == arity) break;
      }
    }
    if (next == layer) break;
    layer = std::move(next);
  }
  return {layer.begin(), layer.end()};
}

}  // namespace bsys
