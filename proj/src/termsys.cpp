#include "bsys/termsys.hpp"

#include <algorithm>

namespace bsys {

namespace {

[[noreturn]] void side(const std::string& what) { throw Error(ErrorKind::SideConditionViolated, what); }

bool same_prefix(const Context& a, const Context& b, std::size_t n) {
  if (a.length() < n || b.length() < n) return false;
  return std::equal(a.entries.begin(), a.entries.begin() + static_cast<std::ptrdiff_t>(n), b.entries.begin());
}

// Splits on separators at parenthesis depth 0.
std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string strip(const std::string& s) {
  auto b = s.find_first_not_of(" \t\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

TermBSys::TermBSys(Sig sig, RewriteRules rules, ModuleKind module, std::size_t step_budget)
    : sig_(std::move(sig)), rules_(std::move(rules)), module_(module), budget_(step_budget) {
  if (module_ == ModuleKind::Point && sig_.has("T")) {
    throw Error(ErrorKind::InvariantViolation, "operation name T is reserved for the point module");
  }
}

TermBSys::TermBSys(const TermBSysDescription& desc) : TermBSys(desc.sig, desc.rules, desc.module) {}

const Term& TermBSys::point_type() {
  static const Term t = Term::app("T");
  return t;
}

Term TermBSys::normalize(const Term& t) const { return bsys::normalize(t, rules_, Strategy::Innermost, budget_); }

Term TermBSys::entry_weaken(const Term& e, std::uint32_t n, std::uint32_t scope) const {
  if (module_ == ModuleKind::Point) return e;
  return normalize(weaken_term(e, n, scope));
}

Term TermBSys::entry_subst(const Term& e, const Term& s, std::uint32_t n, std::uint32_t scope) const {
  if (module_ == ModuleKind::Point) return e;
  return subst_at(e, s, n, scope, rules_, budget_);
}

Context TermBSys::ft(const Context& x) const {
  if (x.length() == 0) throw Error(ErrorKind::LevelUnderflow, "ft of the empty context");
  Context out = x;
  out.entries.pop_back();
  return out;
}

Context TermBSys::weaken(const Context& y, const Context& x) const {
  const std::size_t n = y.length();
  if (n == 0) side("T: Y must have positive length");
  if (x.length() < n) side("T: l(X) < l(Y) - 1 + 1");
  if (!same_prefix(y, x, n - 1)) side("T: ft(Y) != ft^{m+1-n}(X) for Y=" + print(y) + ", X=" + print(x));
  Context out;
  out.entries.assign(x.entries.begin(), x.entries.begin() + static_cast<std::ptrdiff_t>(n - 1));
  out.entries.push_back(y.entries.back());
  for (std::size_t k = n - 1; k < x.length(); ++k) {
    out.entries.push_back(entry_weaken(x.entries[k], static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(k)));
  }
  return out;
}

Judgement TermBSys::weaken_judgement(const Context& y, const Judgement& r) const {
  const std::size_t n = y.length();
  if (n == 0) side("Tt: Y must have positive length");
  if (r.ctx.length() < n) side("Tt: l(r) < l(Y)");
  Judgement out;
  out.ctx = weaken(y, r.ctx);
  out.term = normalize(weaken_term(r.term, static_cast<std::uint32_t>(n),
                                   static_cast<std::uint32_t>(r.ctx.length() - 1)));
  return out;
}

Context TermBSys::substitute(const Judgement& s, const Context& x) const {
  const std::size_t n1 = s.ctx.length();  // n + 1
  if (x.length() < n1 + 1) side("S: l(X) < l(s) + 1");
  if (!same_prefix(s.ctx, x, n1)) side("S: del(s) != ft^{m+1-n}(X) for s=" + print(s) + ", X=" + print(x));
  const auto n = static_cast<std::uint32_t>(n1 - 1);
  Context out;
  out.entries.assign(x.entries.begin(), x.entries.begin() + n);
  for (std::size_t k = n1; k < x.length(); ++k) {
    out.entries.push_back(entry_subst(x.entries[k], s.term, n, static_cast<std::uint32_t>(k)));
  }
  return out;
}

Judgement TermBSys::substitute_judgement(const Judgement& s, const Judgement& r) const {
  const std::size_t n1 = s.ctx.length();
  if (r.ctx.length() < n1 + 1) side("St: l(r) < l(s) + 1");
  Judgement out;
  out.ctx = substitute(s, r.ctx);
  out.term = subst_at(r.term, s.term, static_cast<std::uint32_t>(n1 - 1),
                      static_cast<std::uint32_t>(r.ctx.length() - 1), rules_, budget_);
  return out;
}

Judgement TermBSys::unit(const Context& x) const {
  if (x.length() == 0) throw Error(ErrorKind::LevelUnderflow, "delta of the empty context");
  return {weaken(x, x), Term::var(static_cast<std::uint32_t>(x.length()))};
}

const std::vector<Term>& TermBSys::terms(std::uint32_t scope, std::size_t depth) const {
  std::lock_guard lock(cache_mutex_);
  auto& slot = term_cache_[{scope, depth}];
  if (!slot) slot = std::make_unique<std::vector<Term>>(enumerate_normal_terms(sig_, rules_, scope, depth));
  return *slot;
}

std::vector<Term> TermBSys::entries(std::uint32_t position, std::size_t depth) const {
  if (module_ == ModuleKind::Point) return {point_type()};
  return terms(position, depth);
}

std::string TermBSys::print(const Context& x) const {
  if (x.length() == 0) return "pt";
  std::string out = "(";
  for (std::size_t i = 0; i < x.length(); ++i) {
    if (i) out += ",";
    out += to_string(x.entries[i]);
  }
  return out + ")";
}

std::string TermBSys::print(const Judgement& r) const {
  std::string ctx = print(r.ctx);
  ctx.pop_back();
  return ctx + ";" + to_string(r.term) + ")";
}

Term TermBSys::parse_entry(const std::string& text, std::uint32_t scope) const {
  if (module_ == ModuleKind::Point) {
    if (strip(text) != "T") throw Error(ErrorKind::ParseError, "expected T, got '" + text + "'");
    return point_type();
  }
  Term t = parse_term(text, sig_);
  if (t.max_var() > scope) throw Error(ErrorKind::ScopeError, "context entry " + text + " out of scope");
  return t;
}

Context TermBSys::parse_context(const std::string& text) const {
  std::string s = strip(text);
  if (s == "pt") return {};
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') {
    throw Error(ErrorKind::ParseError, "context must be 'pt' or '(E1,...,En)': " + text);
  }
  Context out;
  auto parts = split_top(s.substr(1, s.size() - 2), ',');
  for (std::size_t k = 0; k < parts.size(); ++k) {
    out.entries.push_back(parse_entry(parts[k], static_cast<std::uint32_t>(k)));
  }
  check(out);
  return out;
}

Judgement TermBSys::parse_judgement(const std::string& text) const {
  std::string s = strip(text);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') {
    throw Error(ErrorKind::ParseError, "judgement must be '(E1,...,En;o)': " + text);
  }
  auto halves = split_top(s.substr(1, s.size() - 2), ';');
  if (halves.size() != 2) throw Error(ErrorKind::ParseError, "judgement needs exactly one ';': " + text);
  Judgement out;
  out.ctx = parse_context("(" + halves[0] + ")");
  out.term = parse_term(halves[1], sig_);
  check(out);
  return out;
}

void TermBSys::check(const Context& x) const {
  for (std::size_t k = 0; k < x.length(); ++k) {
    const Term& e = x.entries[k];
    if (module_ == ModuleKind::Point) {
      if (e != point_type()) throw Error(ErrorKind::InvariantViolation, "point-module entry must be T");
      continue;
    }
    if (e.max_var() > k) throw Error(ErrorKind::ScopeError, "entry " + std::to_string(k + 1) + " out of scope");
    if (!is_normal(e, rules_)) throw Error(ErrorKind::InvariantViolation, "entry not in normal form: " + to_string(e));
  }
}

void TermBSys::check(const Judgement& r) const {
  if (r.ctx.length() == 0) throw Error(ErrorKind::InvariantViolation, "judgement over the empty context");
  check(r.ctx);
  if (r.term.max_var() + 1 > r.ctx.length()) {
    throw Error(ErrorKind::ScopeError, "judgement term " + to_string(r.term) + " out of scope");
  }
  if (!is_normal(r.term, rules_)) {
    throw Error(ErrorKind::InvariantViolation, "judgement term not in normal form: " + to_string(r.term));
  }
}

TermBSysDescription r1_description() {
  TermBSysDescription d;
  d.sig = Sig({{"s1", 1}});
  d.rules = RewriteRules({{parse_term("s1(s1(x))", d.sig, true), parse_term("s1(x)", d.sig, true)}});
  return d;
}

TermBSysDescription r2_description() {
  TermBSysDescription d;
  d.sig = Sig({{"s1", 1}, {"s2", 1}});
  auto p = [&](const char* s) { return parse_term(s, d.sig, true); };
  d.rules = RewriteRules({{p("s1(s1(x))"), p("s1(x)")},
                          {p("s1(s2(x))"), p("s1(x)")},
                          {p("s2(s1(x))"), p("s1(x)")},
                          {p("s2(s2(x))"), p("s2(x)")}});
  return d;
}

}  // namespace bsys
