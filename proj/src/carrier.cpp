#include "bsys/carrier.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace bsys {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::LevelUnderflow: return "LevelUnderflow";
    case ErrorKind::UnknownElement: return "UnknownElement";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::StepBudgetExceeded: return "StepBudgetExceeded";
    case ErrorKind::ScopeError: return "ScopeError";
    case ErrorKind::SideConditionViolated: return "SideConditionViolated";
    case ErrorKind::NotUnital: return "NotUnital";
    case ErrorKind::OutsideCutoff: return "OutsideCutoff";
    case ErrorKind::LevelMismatch: return "LevelMismatch";
    case ErrorKind::CompositionMismatch: return "CompositionMismatch";
    case ErrorKind::CutoffTooLarge: return "CutoffTooLarge";
    case ErrorKind::NotACategory: return "NotACategory";
  }
  return "Error";
}

std::string describe(const Elt& x) { return x.id + "@" + std::to_string(x.level); }
std::string describe(const TElt& r) { return r.id + "@~" + std::to_string(r.level); }

// ---------------------------------------------------------------------------
// Carrier defaults

bool Carrier::contains(const Elt& x) const {
  if (!within(x.level)) return false;
  auto all = elements(x.level);
  return std::find(all.begin(), all.end(), x) != all.end();
}

bool Carrier::contains(const TElt& r) const {
  if (r.level == 0 || !within(r.level)) return false;
  auto all = telements(r.level);
  return std::find(all.begin(), all.end(), r) != all.end();
}

std::vector<Elt> Carrier::fiber(const Elt& base, std::size_t j) const {
  std::vector<Elt> out;
  for (auto& x : elements(base.level + j)) {
    if (ft_pow(*this, x, j) == base) out.push_back(x);
  }
  return out;
}

std::vector<TElt> Carrier::telements_over(const Elt& x) const {
  std::vector<TElt> out;
  if (x.level == 0) return out;
  for (auto& r : telements(x.level)) {
    if (boundary(r) == x) out.push_back(r);
  }
  return out;
}

Elt ft_pow(const Carrier& sys, const Elt& x, std::size_t j) {
  if (x.level < j) {
    throw Error(ErrorKind::LevelUnderflow,
                "ft^" + std::to_string(j) + " of " + describe(x));
  }
  Elt cur = x;
  for (std::size_t i = 0; i < j; ++i) cur = sys.ft(cur);
  return cur;
}

std::vector<TElt> tilde_fiber(const Carrier& sys, const Elt& base, std::size_t j) {
  std::vector<TElt> out;
  if (j == 0) return out;
  for (auto& x : sys.fiber(base, j)) {
    for (auto& r : sys.telements_over(x)) out.push_back(r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Tower

Tower::Tower(std::vector<std::vector<std::string>> sets, std::map<std::string, std::string> p)
    : sets_(std::move(sets)), p_(std::move(p)) {
  for (std::size_t n = 0; n < sets_.size(); ++n) {
    for (auto& x : sets_[n]) {
      if (!level_.emplace(x, n).second) {
        throw Error(ErrorKind::InvariantViolation, "tower: duplicate element " + x);
      }
    }
  }
  for (std::size_t n = 1; n < sets_.size(); ++n) {
    for (auto& x : sets_[n]) {
      auto it = p_.find(x);
      if (it == p_.end()) {
        throw Error(ErrorKind::InvariantViolation, "tower: p undefined on " + x);
      }
      auto lv = level_.find(it->second);
      if (lv == level_.end() || lv->second + 1 != n) {
        throw Error(ErrorKind::InvariantViolation, "tower: p(" + x + ") not one level down");
      }
    }
  }
}

const std::vector<std::string>& Tower::at(std::size_t level) const {
  static const std::vector<std::string> empty;
  return level < sets_.size() ? sets_[level] : empty;
}

const std::string& Tower::p(const std::string& x) const {
  auto it = p_.find(x);
  if (it == p_.end()) throw Error(ErrorKind::UnknownElement, "tower: p(" + x + ")");
  return it->second;
}

std::size_t Tower::level_of(const std::string& x) const {
  auto it = level_.find(x);
  if (it == level_.end()) throw Error(ErrorKind::UnknownElement, "tower: " + x);
  return it->second;
}

std::string Tower::ft_pow(const std::string& x, std::size_t j) const {
  if (level_of(x) < j) throw Error(ErrorKind::LevelUnderflow, "tower: ft^" + std::to_string(j) + " of " + x);
  std::string cur = x;
  for (std::size_t i = 0; i < j; ++i) cur = p(cur);
  return cur;
}

// ---------------------------------------------------------------------------
// Slices

bool SliceCarrier::contains(const Elt& x) const {
  if (x.level < base.level) return false;
  std::size_t j = x.level - base.level;
  if (j >= levels.size()) return false;
  return std::binary_search(levels[j].begin(), levels[j].end(), x);
}

bool SliceCarrier::contains(const TElt& r) const {
  if (r.level <= base.level) return false;
  std::size_t j = r.level - base.level;
  if (j >= tilde.size()) return false;
  return std::binary_search(tilde[j].begin(), tilde[j].end(), r);
}

SliceCarrier slice(const Carrier& sys, const Elt& base, std::optional<std::size_t> max_level) {
  if (!sys.contains(base)) throw Error(ErrorKind::UnknownElement, describe(base));
  auto top = max_level ? max_level : sys.capacity();
  if (!top) throw Error(ErrorKind::OutsideCutoff, "slice of an unbounded carrier needs a level bound");
  SliceCarrier out;
  out.base = base;
  for (std::size_t j = 0; base.level + j <= *top; ++j) {
    auto fib = sys.fiber(base, j);
    std::sort(fib.begin(), fib.end());
    out.levels.push_back(std::move(fib));
    out.tilde.push_back(tilde_fiber(sys, base, j));
  }
  return out;
}

// ---------------------------------------------------------------------------
// FinBSys

namespace {

[[noreturn]] void violation(const std::string& what) {
  throw Error(ErrorKind::InvariantViolation, what);
}

std::string key_str(const FinBSysData::Key& k) { return "(" + k.first + ", " + k.second + ")"; }

}  // namespace

FinBSys::FinBSys(FinBSysData data) : data_(std::move(data)) {
  if (data_.B.size() > data_.cutoff + 1) violation("B has levels above cutoff");
  if (data_.Bt.size() > data_.cutoff + 1) violation("Bt has levels above cutoff");
  data_.B.resize(data_.cutoff + 1);
  data_.Bt.resize(data_.cutoff + 1);
  if (!data_.Bt[0].empty()) violation("Bt has elements at level 0");
  for (auto& level : data_.B) std::sort(level.begin(), level.end());
  for (auto& level : data_.Bt) std::sort(level.begin(), level.end());
  index();
  validate();
}

void FinBSys::index() {
  for (std::size_t n = 0; n < data_.B.size(); ++n) {
    for (auto& x : data_.B[n]) {
      if (x.empty()) violation("empty element id");
      if (!elt_level_.emplace(x, n).second) violation("duplicate element id " + x);
    }
  }
  for (std::size_t n = 1; n < data_.Bt.size(); ++n) {
    for (auto& r : data_.Bt[n]) {
      if (r.empty()) violation("empty element id");
      if (elt_level_.contains(r) || !telt_level_.emplace(r, n).second) {
        violation("duplicate element id " + r);
      }
    }
  }
  for (auto& [r, x] : data_.del) over_[x].push_back(r);
  for (auto& [x, rs] : over_) std::sort(rs.begin(), rs.end());
}

void FinBSys::validate() const {
  const auto& d = data_;
  const std::size_t N = d.cutoff;

  if (!elt_level_.contains(d.pt) || elt_level_.at(d.pt) != 0) violation("pt is not an element of B_0");

  // ft lowers level by exactly one
  for (auto& [x, y] : d.ft) {
    auto it = elt_level_.find(x);
    if (it == elt_level_.end()) violation("ft defined on unknown element " + x);
    if (it->second == 0) violation("ft defined on level-0 element " + x);
    auto jt = elt_level_.find(y);
    if (jt == elt_level_.end() || jt->second + 1 != it->second) {
      violation("ft lowers level by exactly 1: ft(" + x + ") = " + y);
    }
  }
  for (std::size_t n = 1; n <= N; ++n) {
    for (auto& x : d.B[n]) {
      if (!d.ft.contains(x)) violation("ft undefined on " + x);
    }
  }
  // boundary preserves level
  for (auto& [r, x] : d.del) {
    auto it = telt_level_.find(r);
    if (it == telt_level_.end()) violation("del defined on unknown element " + r);
    auto jt = elt_level_.find(x);
    if (jt == elt_level_.end() || jt->second != it->second) {
      violation("del preserves level: del(" + r + ") = " + x);
    }
  }
  for (std::size_t n = 1; n <= N; ++n) {
    for (auto& r : d.Bt[n]) {
      if (!d.del.contains(r)) violation("del undefined on " + r);
    }
  }

  auto lvl = [&](const std::string& x) { return elt_level_.at(x); };
  auto tlvl = [&](const std::string& r) { return telt_level_.at(r); };
  auto ftp = [&](std::string x, std::size_t j) {
    for (std::size_t i = 0; i < j; ++i) x = d.ft.at(x);
    return x;
  };
  auto is_e = [&](const std::string& x) { return elt_level_.contains(x); };
  auto is_t = [&](const std::string& r) { return telt_level_.contains(r); };

  // Side conditions; each returns the output level or nullopt.
  auto weaken_ok = [&](const std::string& y, const std::string& x) -> std::optional<std::size_t> {
    if (!is_e(y) || !is_e(x)) return std::nullopt;
    std::size_t a = lvl(y), b = lvl(x);
    if (a == 0 || b < a) return std::nullopt;
    if (d.ft.at(y) != ftp(x, b - a + 1)) return std::nullopt;
    return b + 1;
  };
  auto weaken_t_ok = [&](const std::string& y, const std::string& r) -> std::optional<std::size_t> {
    if (!is_e(y) || !is_t(r)) return std::nullopt;
    std::size_t a = lvl(y), b = tlvl(r);
    if (a == 0 || b < a) return std::nullopt;
    if (d.ft.at(y) != ftp(d.del.at(r), b - a + 1)) return std::nullopt;
    return b + 1;
  };
  auto subst_ok = [&](const std::string& s, const std::string& x) -> std::optional<std::size_t> {
    if (!is_t(s) || !is_e(x)) return std::nullopt;
    std::size_t a = tlvl(s), b = lvl(x);
    if (b < a + 1) return std::nullopt;
    if (d.del.at(s) != ftp(x, b - a)) return std::nullopt;
    return b - 1;
  };
  auto subst_t_ok = [&](const std::string& s, const std::string& r) -> std::optional<std::size_t> {
    if (!is_t(s) || !is_t(r)) return std::nullopt;
    std::size_t a = tlvl(s), b = tlvl(r);
    if (b < a + 1) return std::nullopt;
    if (d.del.at(s) != ftp(d.del.at(r), b - a)) return std::nullopt;
    return b - 1;
  };

  auto check_table = [&](const std::map<FinBSysData::Key, std::string>& table, const std::string& name,
                         auto side, bool out_tilde) {
    for (auto& [k, out] : table) {
      auto level = side(k.first, k.second);
      if (!level) violation(name + " entry " + key_str(k) + " violates its side condition");
      bool ok = out_tilde ? (is_t(out) && tlvl(out) == *level) : (is_e(out) && lvl(out) == *level);
      if (!ok) violation(name + " entry " + key_str(k) + " has output " + out + " at the wrong level");
    }
  };
  check_table(d.weaken, "T", weaken_ok, false);
  check_table(d.weaken_judgement, "Tt", weaken_t_ok, true);
  check_table(d.substitute, "S", subst_ok, false);
  check_table(d.substitute_judgement, "St", subst_t_ok, true);

  // totality within cutoff
  auto all_e = [&](std::size_t n) -> const std::vector<std::string>& { return d.B[n]; };
  auto all_t = [&](std::size_t n) -> const std::vector<std::string>& { return d.Bt[n]; };
  for (std::size_t a = 1; a <= N; ++a) {
    for (std::size_t b = a; b + 1 <= N; ++b) {
      for (auto& y : all_e(a)) {
        for (auto& x : all_e(b)) {
          if (weaken_ok(y, x) && !d.weaken.contains({y, x})) violation("T missing entry " + key_str({y, x}));
        }
        for (auto& r : all_t(b)) {
          if (weaken_t_ok(y, r) && !d.weaken_judgement.contains({y, r})) {
            violation("Tt missing entry " + key_str({y, r}));
          }
        }
      }
      for (auto& s : all_t(a)) {
        for (auto& x : all_e(b + 1)) {
          if (subst_ok(s, x) && !d.substitute.contains({s, x})) violation("S missing entry " + key_str({s, x}));
        }
        for (auto& r : all_t(b + 1)) {
          if (subst_t_ok(s, r) && !d.substitute_judgement.contains({s, r})) {
            violation("St missing entry " + key_str({s, r}));
          }
        }
      }
    }
  }

  if (d.unit) {
    for (auto& [x, out] : *d.unit) {
      if (!is_e(x) || lvl(x) == 0) violation("delta defined on invalid element " + x);
      if (!is_t(out) || tlvl(out) != lvl(x) + 1) violation("delta(" + x + ") has output at the wrong level");
    }
    for (std::size_t a = 1; a + 1 <= N; ++a) {
      for (auto& x : all_e(a)) {
        if (!d.unit->contains(x)) violation("delta missing entry for " + x);
      }
    }
  }
}

std::vector<Elt> FinBSys::elements(std::size_t level) const {
  std::vector<Elt> out;
  if (level > data_.cutoff) return out;
  for (auto& x : data_.B[level]) out.push_back({x, level});
  return out;
}

std::vector<TElt> FinBSys::telements(std::size_t level) const {
  std::vector<TElt> out;
  if (level == 0 || level > data_.cutoff) return out;
  for (auto& r : data_.Bt[level]) out.push_back({r, level});
  return out;
}

Elt FinBSys::ft(const Elt& x) const {
  if (x.level == 0) throw Error(ErrorKind::LevelUnderflow, "ft of " + describe(x));
  if (!contains(x)) throw Error(ErrorKind::UnknownElement, describe(x));
  return {data_.ft.at(x.id), x.level - 1};
}

Elt FinBSys::boundary(const TElt& r) const {
  if (!contains(r)) throw Error(ErrorKind::UnknownElement, describe(r));
  return {data_.del.at(r.id), r.level};
}

bool FinBSys::contains(const Elt& x) const {
  auto it = elt_level_.find(x.id);
  return it != elt_level_.end() && it->second == x.level;
}

bool FinBSys::contains(const TElt& r) const {
  auto it = telt_level_.find(r.id);
  return it != telt_level_.end() && it->second == r.level;
}

std::vector<TElt> FinBSys::telements_over(const Elt& x) const {
  std::vector<TElt> out;
  auto it = over_.find(x.id);
  if (it == over_.end() || !contains(x)) return out;
  for (auto& r : it->second) out.push_back({r, x.level});
  return out;
}

Elt FinBSys::elt(const std::string& id) const {
  auto it = elt_level_.find(id);
  if (it == elt_level_.end()) throw Error(ErrorKind::UnknownElement, id);
  return {id, it->second};
}

TElt FinBSys::telt(const std::string& id) const {
  auto it = telt_level_.find(id);
  if (it == telt_level_.end()) throw Error(ErrorKind::UnknownElement, id);
  return {id, it->second};
}

bool FinBSys::is_elt(const std::string& id) const { return elt_level_.contains(id); }
bool FinBSys::is_telt(const std::string& id) const { return telt_level_.contains(id); }

namespace {

template <class Table>
std::optional<std::string> find_entry(const Table& table, const std::string& a, const std::string& b) {
  auto it = table.find({a, b});
  if (it == table.end()) return std::nullopt;
  return it->second;
}

}  // namespace

std::optional<Elt> FinBSys::lookup_weaken(const Elt& y, const Elt& x) const {
  auto out = find_entry(data_.weaken, y.id, x.id);
  if (!out) return std::nullopt;
  return elt(*out);
}

std::optional<TElt> FinBSys::lookup_weaken_judgement(const Elt& y, const TElt& r) const {
  auto out = find_entry(data_.weaken_judgement, y.id, r.id);
  if (!out) return std::nullopt;
  return telt(*out);
}

std::optional<Elt> FinBSys::lookup_substitute(const TElt& s, const Elt& x) const {
  auto out = find_entry(data_.substitute, s.id, x.id);
  if (!out) return std::nullopt;
  return elt(*out);
}

std::optional<TElt> FinBSys::lookup_substitute_judgement(const TElt& s, const TElt& r) const {
  auto out = find_entry(data_.substitute_judgement, s.id, r.id);
  if (!out) return std::nullopt;
  return telt(*out);
}

std::optional<TElt> FinBSys::lookup_unit(const Elt& x) const {
  if (!data_.unit) return std::nullopt;
  auto it = data_.unit->find(x.id);
  if (it == data_.unit->end()) return std::nullopt;
  return telt(it->second);
}

std::vector<std::string> diff_tables(const FinBSysData& a, const FinBSysData& b) {
  std::vector<std::string> out;
  if (a.cutoff != b.cutoff) {
    out.push_back("cutoff: " + std::to_string(a.cutoff) + " vs " + std::to_string(b.cutoff));
  }
  if (a.pt != b.pt) out.push_back("pt: " + a.pt + " vs " + b.pt);
  auto levels = [&](const auto& la, const auto& lb, const std::string& name) {
    std::size_t n = std::max(la.size(), lb.size());
    for (std::size_t i = 0; i < n; ++i) {
      std::set<std::string> sa, sb;
      if (i < la.size()) sa.insert(la[i].begin(), la[i].end());
      if (i < lb.size()) sb.insert(lb[i].begin(), lb[i].end());
      for (auto& x : sa) if (!sb.contains(x)) out.push_back(name + "[" + std::to_string(i) + "]: only left " + x);
      for (auto& x : sb) if (!sa.contains(x)) out.push_back(name + "[" + std::to_string(i) + "]: only right " + x);
    }
  };
  levels(a.B, b.B, "B");
  levels(a.Bt, b.Bt, "Bt");
  auto maps = [&](const auto& ma, const auto& mb, const std::string& name, auto fmt) {
    for (auto& [k, v] : ma) {
      auto it = mb.find(k);
      if (it == mb.end()) out.push_back(name + fmt(k) + ": only left -> " + v);
      else if (it->second != v) out.push_back(name + fmt(k) + ": " + v + " vs " + it->second);
    }
    for (auto& [k, v] : mb) {
      if (!ma.contains(k)) out.push_back(name + fmt(k) + ": only right -> " + v);
    }
  };
  auto fmt1 = [](const std::string& k) { return "(" + k + ")"; };
  auto fmt2 = [](const FinBSysData::Key& k) { return key_str(k); };
  maps(a.ft, b.ft, "ft", fmt1);
  maps(a.del, b.del, "del", fmt1);
  maps(a.weaken, b.weaken, "T", fmt2);
  maps(a.weaken_judgement, b.weaken_judgement, "Tt", fmt2);
  maps(a.substitute, b.substitute, "S", fmt2);
  maps(a.substitute_judgement, b.substitute_judgement, "St", fmt2);
  if (a.unit.has_value() != b.unit.has_value()) {
    out.push_back(std::string("delta: present on ") + (a.unit ? "left" : "right") + " only");
  } else if (a.unit) {
    maps(*a.unit, *b.unit, "delta", fmt1);
  }
  return out;
}

FinBSys make_terminal(std::size_t cutoff) {
  FinBSysData d;
  d.cutoff = cutoff;
  d.pt = "pt";
  auto e = [](std::size_t n) { return n == 0 ? std::string("pt") : "e" + std::to_string(n); };
  auto t = [](std::size_t n) { return "t" + std::to_string(n); };
  d.B.resize(cutoff + 1);
  d.Bt.resize(cutoff + 1);
  d.unit.emplace();
  for (std::size_t n = 0; n <= cutoff; ++n) {
    d.B[n] = {e(n)};
    if (n >= 1) {
      d.Bt[n] = {t(n)};
      d.ft[e(n)] = e(n - 1);
      d.del[t(n)] = e(n);
    }
  }
  // Each operation is forced by its output level.
  for (std::size_t a = 1; a <= cutoff; ++a) {
    for (std::size_t b = a; b + 1 <= cutoff; ++b) {
      d.weaken[{e(a), e(b)}] = e(b + 1);
      d.weaken_judgement[{e(a), t(b)}] = t(b + 1);
      d.substitute[{t(a), e(b + 1)}] = e(b);
      d.substitute_judgement[{t(a), t(b + 1)}] = t(b);
    }
    if (a + 1 <= cutoff) (*d.unit)[e(a)] = t(a + 1);
  }
  return FinBSys(std::move(d));
}

}  // namespace bsys
