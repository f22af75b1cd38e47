#include "bsys/ops.hpp"

#include <algorithm>

namespace bsys {

namespace {

[[noreturn]] void side(const std::string& what) { throw Error(ErrorKind::SideConditionViolated, what); }

void need_capacity(const BSysView& v, std::size_t level, const char* op) {
  if (!v.within(level)) {
    throw Error(ErrorKind::OutsideCutoff, std::string(op) + " output at level " + std::to_string(level) +
                                              " exceeds cutoff " + std::to_string(*v.capacity()));
  }
}

void need(const BSysView& v, const Elt& x) {
  if (!v.contains(x)) throw Error(ErrorKind::UnknownElement, describe(x));
}

void need(const BSysView& v, const TElt& r) {
  if (!v.contains(r)) throw Error(ErrorKind::UnknownElement, describe(r));
}

template <class E>
E check_level(E out, std::size_t expected, const char* op) {
  if (out.level != expected) {
    throw Error(ErrorKind::InvariantViolation, std::string(op) + " returned " + describe(out) + ", expected level " +
                                                   std::to_string(expected));
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// FinView

FinView::FinView(std::shared_ptr<const FinBSys> sys, std::string name) : sys_(std::move(sys)), name_(std::move(name)) {}
FinView::FinView(FinBSys sys, std::string name)
    : sys_(std::make_shared<const FinBSys>(std::move(sys))), name_(std::move(name)) {}

namespace {

template <class T>
T table_hit(const std::optional<T>& hit, const char* op, const std::string& args) {
  if (!hit) throw Error(ErrorKind::OutsideCutoff, std::string(op) + args + " is not tabulated");
  return *hit;
}

}  // namespace

Elt FinView::raw_weaken(const Elt& y, const Elt& x) const {
  return table_hit(sys_->lookup_weaken(y, x), "T", "(" + y.id + ", " + x.id + ")");
}
TElt FinView::raw_weaken_judgement(const Elt& y, const TElt& r) const {
  return table_hit(sys_->lookup_weaken_judgement(y, r), "Tt", "(" + y.id + ", " + r.id + ")");
}
Elt FinView::raw_substitute(const TElt& s, const Elt& x) const {
  return table_hit(sys_->lookup_substitute(s, x), "S", "(" + s.id + ", " + x.id + ")");
}
TElt FinView::raw_substitute_judgement(const TElt& s, const TElt& r) const {
  return table_hit(sys_->lookup_substitute_judgement(s, r), "St", "(" + s.id + ", " + r.id + ")");
}
TElt FinView::raw_unit(const Elt& x) const { return table_hit(sys_->lookup_unit(x), "delta", "(" + x.id + ")"); }

// ---------------------------------------------------------------------------
// TermView

TermView::TermView(std::shared_ptr<const TermBSys> sys, std::size_t depth, bool unital, std::string name)
    : sys_(std::move(sys)), depth_(depth), unital_(unital), name_(std::move(name)) {}

TermView::TermView(const TermBSysDescription& desc, std::string name)
    : TermView(std::make_shared<const TermBSys>(desc), desc.depth, desc.unital, std::move(name)) {}

Elt TermView::elt(const Context& c) const { return {sys_->print(c), c.length()}; }
TElt TermView::telt(const Judgement& r) const { return {sys_->print(r), r.ctx.length()}; }

Context TermView::context(const Elt& x) const {
  Context c = sys_->parse_context(x.id);
  if (c.length() != x.level) throw Error(ErrorKind::UnknownElement, describe(x));
  return c;
}

Judgement TermView::judgement(const TElt& r) const {
  Judgement j = sys_->parse_judgement(r.id);
  if (j.ctx.length() != r.level) throw Error(ErrorKind::UnknownElement, describe(r));
  return j;
}

namespace {

void extend_contexts(const TermBSys& sys, std::size_t depth, Context& cur, std::size_t target,
                     std::vector<Context>& out) {
  if (cur.length() == target) {
    out.push_back(cur);
    return;
  }
  for (auto& e : sys.entries(static_cast<std::uint32_t>(cur.length()), depth)) {
    cur.entries.push_back(e);
    extend_contexts(sys, depth, cur, target, out);
    cur.entries.pop_back();
  }
}

}  // namespace

std::vector<Elt> TermView::elements(std::size_t level) const {
  Context empty;
  std::vector<Context> ctxs;
  extend_contexts(*sys_, depth_, empty, level, ctxs);
  std::vector<Elt> out;
  out.reserve(ctxs.size());
  for (auto& c : ctxs) out.push_back(elt(c));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<TElt> TermView::telements(std::size_t level) const {
  std::vector<TElt> out;
  if (level == 0) return out;
  for (auto& x : elements(level)) {
    auto over = telements_over(x);
    out.insert(out.end(), over.begin(), over.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

Elt TermView::ft(const Elt& x) const { return elt(sys_->ft(context(x))); }
Elt TermView::boundary(const TElt& r) const { return elt(judgement(r).ctx); }

bool TermView::contains(const Elt& x) const {
  try {
    return context(x).length() == x.level;
  } catch (const Error&) {
    return false;
  }
}

bool TermView::contains(const TElt& r) const {
  try {
    return judgement(r).ctx.length() == r.level;
  } catch (const Error&) {
    return false;
  }
}

std::vector<Elt> TermView::fiber(const Elt& base, std::size_t j) const {
  Context cur = context(base);
  std::vector<Context> ctxs;
  extend_contexts(*sys_, depth_, cur, base.level + j, ctxs);
  std::vector<Elt> out;
  for (auto& c : ctxs) out.push_back(elt(c));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<TElt> TermView::telements_over(const Elt& x) const {
  std::vector<TElt> out;
  if (x.level == 0) return out;
  Context c = context(x);
  for (auto& t : sys_->terms(static_cast<std::uint32_t>(x.level - 1), depth_)) out.push_back(telt({c, t}));
  std::sort(out.begin(), out.end());
  return out;
}

Elt TermView::raw_weaken(const Elt& y, const Elt& x) const { return elt(sys_->weaken(context(y), context(x))); }
TElt TermView::raw_weaken_judgement(const Elt& y, const TElt& r) const {
  return telt(sys_->weaken_judgement(context(y), judgement(r)));
}
Elt TermView::raw_substitute(const TElt& s, const Elt& x) const {
  return elt(sys_->substitute(judgement(s), context(x)));
}
TElt TermView::raw_substitute_judgement(const TElt& s, const TElt& r) const {
  return telt(sys_->substitute_judgement(judgement(s), judgement(r)));
}
TElt TermView::raw_unit(const Elt& x) const { return telt(sys_->unit(context(x))); }

// ---------------------------------------------------------------------------
// Side conditions

bool weaken_defined(const BSysView& v, const Elt& y, const Elt& x) {
  if (y.level == 0 || x.level < y.level) return false;
  return v.ft(y) == ft_pow(v, x, x.level - y.level + 1);
}

bool weaken_judgement_defined(const BSysView& v, const Elt& y, const TElt& r) {
  if (y.level == 0 || r.level < y.level) return false;
  return v.ft(y) == ft_pow(v, v.boundary(r), r.level - y.level + 1);
}

bool substitute_defined(const BSysView& v, const TElt& s, const Elt& x) {
  if (x.level < s.level + 1) return false;
  return v.boundary(s) == ft_pow(v, x, x.level - s.level);
}

bool substitute_judgement_defined(const BSysView& v, const TElt& s, const TElt& r) {
  if (r.level < s.level + 1) return false;
  return v.boundary(s) == ft_pow(v, v.boundary(r), r.level - s.level);
}

// ---------------------------------------------------------------------------
// Checked operations

Elt weaken(const BSysView& v, const Elt& y, const Elt& x) {
  need(v, y);
  need(v, x);
  if (!weaken_defined(v, y, x)) side("T(" + describe(y) + ", " + describe(x) + "): ft(Y) != ft^{m+1-n}(X)");
  need_capacity(v, x.level + 1, "T");
  return check_level(v.raw_weaken(y, x), x.level + 1, "T");
}

TElt weaken_judgement(const BSysView& v, const Elt& y, const TElt& r) {
  need(v, y);
  need(v, r);
  if (!weaken_judgement_defined(v, y, r)) {
    side("Tt(" + describe(y) + ", " + describe(r) + "): ft(Y) != ft^{m+1-n}(del r)");
  }
  need_capacity(v, r.level + 1, "Tt");
  return check_level(v.raw_weaken_judgement(y, r), r.level + 1, "Tt");
}

Elt substitute(const BSysView& v, const TElt& s, const Elt& x) {
  need(v, s);
  need(v, x);
  if (!substitute_defined(v, s, x)) side("S(" + describe(s) + ", " + describe(x) + "): del(s) != ft^{m+1-n}(X)");
  return check_level(v.raw_substitute(s, x), x.level - 1, "S");
}

TElt substitute_judgement(const BSysView& v, const TElt& s, const TElt& r) {
  need(v, s);
  need(v, r);
  if (!substitute_judgement_defined(v, s, r)) {
    side("St(" + describe(s) + ", " + describe(r) + "): del(s) != ft^{m+1-n}(del r)");
  }
  return check_level(v.raw_substitute_judgement(s, r), r.level - 1, "St");
}

TElt unit(const BSysView& v, const Elt& x) {
  if (!v.unital()) throw Error(ErrorKind::NotUnital, v.name() + " has no unit");
  need(v, x);
  if (x.level == 0) throw Error(ErrorKind::LevelUnderflow, "delta of a level-0 element");
  need_capacity(v, x.level + 1, "delta");
  return check_level(v.raw_unit(x), x.level + 1, "delta");
}

Elt weaken_slice(const BSysView& v, const Elt& y, const Elt& x) {
  if (y.level >= 1 && x.level + 1 == y.level) {
    if (v.ft(y) != x) side("T(" + describe(y) + ", " + describe(x) + "): X is not ft(Y)");
    return y;
  }
  return weaken(v, y, x);
}

Elt substitute_slice(const BSysView& v, const TElt& s, const Elt& x) {
  if (x.level == s.level) {
    Elt d = v.boundary(s);
    if (d != x) side("S(" + describe(s) + ", " + describe(x) + "): X is not del(s)");
    return v.ft(d);
  }
  return substitute(v, s, x);
}

Elt weaken_iter(const BSysView& v, const Elt& y, std::size_t j, const Elt& x) {
  if (j == 0) return x;
  if (y.level < j) throw Error(ErrorKind::LevelUnderflow, "T_j with l(Y) < j");
  std::size_t base = y.level - j;
  if (x.level < base || ft_pow(v, y, j) != ft_pow(v, x, x.level - base)) {
    side("T_" + std::to_string(j) + "(" + describe(y) + ", " + describe(x) + "): ft^j(Y) != ft^{m+1-n}(X)");
  }
  return weaken_slice(v, y, weaken_iter(v, v.ft(y), j - 1, x));
}

TElt weaken_judgement_iter(const BSysView& v, const Elt& y, std::size_t j, const TElt& s) {
  if (j == 0) return s;
  if (y.level < j) throw Error(ErrorKind::LevelUnderflow, "T~_j with l(Y) < j");
  std::size_t base = y.level - j;
  if (s.level < base + 1 || ft_pow(v, y, j) != ft_pow(v, v.boundary(s), s.level - base)) {
    side("T~_" + std::to_string(j) + "(" + describe(y) + ", " + describe(s) + "): ft^j(Y) != ft^{m+1-n}(del s)");
  }
  return weaken_judgement(v, y, weaken_judgement_iter(v, v.ft(y), j - 1, s));
}

Elt derived_weaken(const BSysView& v, const Elt& y, const Elt& x) {
  if (y.level >= 1 && x.level + 1 == y.level) {
    if (v.ft(y) != x) side("derived T: X is not ft(Y)");
    return y;
  }
  if (!weaken_defined(v, y, x)) side("derived T(" + describe(y) + ", " + describe(x) + ") undefined");
  return v.ft(v.boundary(weaken_judgement(v, y, unit(v, x))));
}

Elt derived_substitute(const BSysView& v, const TElt& s, const Elt& x) {
  if (x.level == s.level) {
    Elt d = v.boundary(s);
    if (d != x) side("derived S: X is not del(s)");
    return v.ft(d);
  }
  if (!substitute_defined(v, s, x)) side("derived S(" + describe(s) + ", " + describe(x) + ") undefined");
  return v.ft(v.boundary(substitute_judgement(v, s, unit(v, x))));
}

// ---------------------------------------------------------------------------

FinBSys materialize(const BSysView& v, std::size_t cutoff, bool keep_unit) {
  if (auto cap = v.capacity(); cap && *cap < cutoff) {
    throw Error(ErrorKind::OutsideCutoff, "materialize beyond the backend cutoff");
  }
  FinBSysData d;
  d.cutoff = cutoff;
  d.pt = v.pt().id;
  d.B.resize(cutoff + 1);
  d.Bt.resize(cutoff + 1);
  std::vector<std::vector<Elt>> B(cutoff + 1);
  std::vector<std::vector<TElt>> Bt(cutoff + 1);
  for (std::size_t n = 0; n <= cutoff; ++n) {
    B[n] = v.elements(n);
    for (auto& x : B[n]) {
      d.B[n].push_back(x.id);
      if (n > 0) d.ft[x.id] = v.ft(x).id;
    }
    if (n > 0) {
      Bt[n] = v.telements(n);
      for (auto& r : Bt[n]) {
        d.Bt[n].push_back(r.id);
        d.del[r.id] = v.boundary(r).id;
      }
    }
  }
  for (std::size_t a = 1; a <= cutoff; ++a) {
    for (auto& y : B[a]) {
      Elt base = v.ft(y);
      for (std::size_t k = 1; a + k <= cutoff; ++k) {
        for (auto& x : v.fiber(base, k)) d.weaken[{y.id, x.id}] = v.raw_weaken(y, x).id;
        for (auto& r : tilde_fiber(v, base, k)) d.weaken_judgement[{y.id, r.id}] = v.raw_weaken_judgement(y, r).id;
      }
    }
    for (auto& s : Bt[a]) {
      Elt base = v.boundary(s);
      for (std::size_t k = 1; a + k <= cutoff; ++k) {
        for (auto& x : v.fiber(base, k)) d.substitute[{s.id, x.id}] = v.raw_substitute(s, x).id;
        for (auto& r : tilde_fiber(v, base, k)) {
          d.substitute_judgement[{s.id, r.id}] = v.raw_substitute_judgement(s, r).id;
        }
      }
    }
  }
  if (keep_unit && v.unital()) {
    d.unit.emplace();
    for (std::size_t a = 1; a + 1 <= cutoff; ++a) {
      for (auto& x : B[a]) (*d.unit)[x.id] = v.raw_unit(x).id;
    }
  }
  return FinBSys(std::move(d));
}

}  // namespace bsys
