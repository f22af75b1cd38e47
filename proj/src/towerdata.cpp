#include "bsys/towerdata.hpp"

#include <functional>

namespace bsys {

std::size_t BCarrier::tilde_level(const std::string& r) const {
  for (std::size_t n = 1; n < Bt.size(); ++n)
    for (auto& x : Bt[n])
      if (x == r) return n;
  throw Error(ErrorKind::UnknownElement, "no judgement " + r);
}

namespace {

[[noreturn]] void violation(const std::string& what) { throw Error(ErrorKind::InvariantViolation, what); }

std::optional<std::string> apply(const std::map<std::string, std::string>& m, const std::string& x) {
  auto it = m.find(x);
  if (it == m.end()) return std::nullopt;
  return it->second;
}

// Checks that a slice map lands in its target slice and commutes with ft and del.
void validate(const BCarrier& c, const CarrierFn& fn, const std::string& name) {
  const std::size_t src0 = c.B.level_of(fn.src_base), dst0 = c.B.level_of(fn.dst_base);
  auto here = [&](const std::string& x) { return name + " at " + x; };
  for (auto& [x, y] : fn.b) {
    std::size_t k = c.B.level_of(x) - src0;
    if (!c.B.contains(y) || c.B.level_of(y) != dst0 + k || c.B.ft_pow(y, k) != fn.dst_base) {
      violation(here(x) + ": image " + y + " is not in the target slice");
    }
    if (k == 0) continue;
    auto below = apply(fn.b, c.B.p(x));
    if (!below || *below != c.B.p(y)) violation(here(x) + ": does not commute with ft");
  }
  for (auto& [r, t] : fn.bt) {
    auto dr = apply(fn.b, c.del.at(r));
    auto dt = c.del.find(t);
    if (dt == c.del.end()) violation(here(r) + ": image " + t + " is not a judgement");
    if (!dr || *dr != dt->second) violation(here(r) + ": does not commute with the boundary");
  }
}

BCarrier carrier_of(const BSysView& v, std::size_t cutoff) {
  std::vector<std::vector<std::string>> sets(cutoff + 1);
  std::map<std::string, std::string> p;
  BCarrier c;
  c.Bt.resize(cutoff + 1);
  for (std::size_t n = 0; n <= cutoff; ++n) {
    for (auto& x : v.elements(n)) {
      sets[n].push_back(x.id);
      if (n > 0) p[x.id] = v.ft(x).id;
    }
    if (n == 0) continue;
    for (auto& r : v.telements(n)) {
      c.Bt[n].push_back(r.id);
      c.del[r.id] = v.boundary(r).id;
    }
  }
  c.B = Tower(std::move(sets), std::move(p));
  c.pt = v.pt().id;
  return c;
}

}  // namespace

BData to_bdata(const BSysView& v, std::size_t cutoff) {
  BData bd;
  bd.cutoff = cutoff;
  bd.carrier = carrier_of(v, cutoff);
  for (std::size_t a = 1; a <= cutoff; ++a) {
    for (auto& y : v.elements(a)) {
      Elt base = v.ft(y);
      CarrierFn fn{base.id, y.id, {{base.id, y.id}}, {}};
      for (std::size_t k = 1; base.level + k + 1 <= cutoff; ++k) {
        for (auto& x : v.fiber(base, k)) fn.b[x.id] = weaken(v, y, x).id;
        for (auto& r : tilde_fiber(v, base, k)) fn.bt[r.id] = weaken_judgement(v, y, r).id;
      }
      validate(bd.carrier, fn, "T_" + y.id);
      bd.weaken_fns.emplace(y.id, std::move(fn));
    }
    for (auto& s : v.telements(a)) {
      Elt base = v.boundary(s);
      Elt down = v.ft(base);
      CarrierFn fn{base.id, down.id, {{base.id, down.id}}, {}};
      for (std::size_t k = 1; base.level + k <= cutoff; ++k) {
        for (auto& x : v.fiber(base, k)) fn.b[x.id] = substitute(v, s, x).id;
        for (auto& r : tilde_fiber(v, base, k)) fn.bt[r.id] = substitute_judgement(v, s, r).id;
      }
      validate(bd.carrier, fn, "S_" + s.id);
      bd.subst_fns.emplace(s.id, std::move(fn));
    }
  }
  return bd;
}

FinBSys from_bdata(const BData& bd) {
  const BCarrier& c = bd.carrier;
  FinBSysData d;
  d.cutoff = bd.cutoff;
  d.pt = c.pt;
  d.B.resize(bd.cutoff + 1);
  for (std::size_t n = 0; n <= bd.cutoff && n <= c.height(); ++n) {
    d.B[n] = c.B.at(n);
    if (n > 0)
      for (auto& x : d.B[n]) d.ft[x] = c.B.p(x);
  }
  d.Bt = c.Bt;
  d.Bt.resize(bd.cutoff + 1);
  d.del = c.del;
  for (auto& [y, fn] : bd.weaken_fns) {
    for (auto& [x, out] : fn.b)
      if (x != fn.src_base) d.weaken[{y, x}] = out;
    for (auto& [r, out] : fn.bt) d.weaken_judgement[{y, r}] = out;
  }
  for (auto& [s, fn] : bd.subst_fns) {
    for (auto& [x, out] : fn.b)
      if (x != fn.src_base) d.substitute[{s, x}] = out;
    for (auto& [r, out] : fn.bt) d.substitute_judgement[{s, r}] = out;
  }
  return FinBSys(std::move(d));
}

BData slice_data(const BData& bd, const std::string& g) {
  const BCarrier& c = bd.carrier;
  if (!c.B.contains(g)) throw Error(ErrorKind::UnknownElement, "no element " + g);
  const std::size_t l0 = c.B.level_of(g);
  BData out;
  out.cutoff = bd.cutoff - l0;
  std::vector<std::vector<std::string>> sets(out.cutoff + 1);
  std::map<std::string, std::string> p;
  out.carrier.Bt.resize(out.cutoff + 1);
  for (std::size_t j = 0; j <= out.cutoff; ++j) {
    for (auto& x : c.B.at(l0 + j)) {
      if (c.B.ft_pow(x, j) != g) continue;
      sets[j].push_back(x);
      if (j > 0) p[x] = c.B.p(x);
      if (j > 0 && bd.weaken_fns.contains(x)) out.weaken_fns.emplace(x, bd.weaken_fns.at(x));
    }
    if (j == 0) continue;
    for (auto& r : c.Bt[l0 + j]) {
      const std::string& dr = c.del.at(r);
      if (c.B.ft_pow(dr, j) != g) continue;
      out.carrier.Bt[j].push_back(r);
      out.carrier.del[r] = dr;
      if (bd.subst_fns.contains(r)) out.subst_fns.emplace(r, bd.subst_fns.at(r));
    }
  }
  out.carrier.B = Tower(std::move(sets), std::move(p));
  out.carrier.pt = g;
  return out;
}

// ---------------------------------------------------------------------------
// Pentagons

namespace {

struct Checker {
  const BData& bd;
  std::size_t cutoff;
  const BCarrier& c = bd.carrier;

  std::size_t level(const std::string& x) const { return c.B.level_of(x); }

  std::vector<std::string> fiber(const std::string& base, std::size_t k) const {
    std::vector<std::string> out;
    std::size_t n = level(base) + k;
    if (n > c.height()) return out;
    for (auto& x : c.B.at(n))
      if (c.B.ft_pow(x, k) == base) out.push_back(x);
    return out;
  }

  std::vector<std::string> tfiber(const std::string& base, std::size_t k) const {
    std::vector<std::string> out;
    std::size_t n = level(base) + k;
    if (k == 0 || n >= c.Bt.size()) return out;
    for (auto& r : c.Bt[n])
      if (c.B.ft_pow(c.del.at(r), k) == base) out.push_back(r);
    return out;
  }

  const CarrierFn* T(const std::string& y) const {
    auto it = bd.weaken_fns.find(y);
    return it == bd.weaken_fns.end() ? nullptr : &it->second;
  }
  const CarrierFn* S(const std::string& s) const {
    auto it = bd.subst_fns.find(s);
    return it == bd.subst_fns.end() ? nullptr : &it->second;
  }

  static std::optional<std::string> at(const CarrierFn* f, const std::optional<std::string>& x, bool tilde) {
    if (!f || !x) return std::nullopt;
    return apply(tilde ? f->bt : f->b, *x);
  }

  // Compares first-then-second composites over B(base)_* and B~(base)_*.
  void pentagon(LawReport& rep, const std::vector<WitnessArg>& prefix, const std::string& base,
                const CarrierFn* l1, const CarrierFn* l2, const CarrierFn* r1, const CarrierFn* r2,
                bool right_identity = false) const {
    for (std::size_t k = 0; level(base) + k <= cutoff; ++k) {
      for (int tilde = 0; tilde < 2; ++tilde) {
        auto xs = tilde ? tfiber(base, k) : fiber(base, k);
        for (auto& x : xs) {
          auto lhs = at(l2, at(l1, x, tilde), tilde);
          auto rhs = right_identity ? std::optional<std::string>(x) : at(r2, at(r1, x, tilde), tilde);
          if (!lhs || !rhs) continue;
          ++rep.instances;
          if (*lhs != *rhs && !rep.witness) {
            auto args = prefix;
            args.push_back({tilde ? "r" : "R", bool(tilde), x, tilde ? c.tilde_level(x) : level(x)});
            rep.witness = Witness{args, *lhs, *rhs};
          }
        }
      }
    }
  }
};

LawReport finish(LawReport rep) {
  if (rep.witness) rep.status = LawStatus::Fail;
  else if (rep.instances > 0) rep.status = LawStatus::Pass;
  return rep;
}

}  // namespace

std::vector<std::string> element_laws_of(const std::string& pentagon_id) {
  if (pentagon_id.size() < 3 || pentagon_id.substr(pentagon_id.size() - 2) != "ax") {
    throw Error(ErrorKind::UnknownElement, "not a pentagon id: " + pentagon_id);
  }
  std::string base = pentagon_id.substr(0, pentagon_id.size() - 2);
  return {base + ".a", base + ".b"};
}

std::vector<LawReport> check_pentagons(const BData& bd, std::size_t cutoff) {
  Checker ck{bd, std::min(cutoff, bd.cutoff)};
  const BCarrier& c = bd.carrier;
  const std::size_t N = ck.cutoff;
  auto make = [&](const char* id) {
    LawReport r;
    r.id = id;
    r.cutoff = N;
    return r;
  };
  auto E = [&](const char* role, const std::string& x) { return WitnessArg{role, false, x, c.B.level_of(x)}; };
  auto TE = [&](const char* role, const std::string& r) { return WitnessArg{role, true, r, c.tilde_level(r)}; };

  LawReport tt = make("TTax"), ss = make("SSax"), ts = make("TSax"), st = make("STax"), stid = make("STidax");
  for (std::size_t a = 1; a <= N && a <= c.height(); ++a) {
    for (auto& gt : c.B.at(a)) {
      const CarrierFn* Tgt = ck.T(gt);
      const std::string base = c.B.p(gt);
      for (std::size_t j = 0; a + j <= N; ++j) {
        for (auto& gdt : ck.fiber(base, j + 1)) {
          auto top = ck.at(Tgt, gdt, false);
          if (!top) continue;
          ck.pentagon(tt, {E("GT", gt), E("GDT'", gdt)}, c.B.p(gdt), Tgt, ck.T(*top), ck.T(gdt), Tgt);
        }
        for (auto& s2 : ck.tfiber(base, j + 1)) {
          auto top = ck.at(Tgt, s2, true);
          if (!top) continue;
          ck.pentagon(ts, {E("GT", gt), TE("s'", s2)}, c.del.at(s2), Tgt, ck.S(*top), ck.S(s2), Tgt);
        }
      }
    }
  }
  for (std::size_t a = 1; a <= N && a < c.Bt.size(); ++a) {
    for (auto& s : c.Bt[a]) {
      const CarrierFn* Ss = ck.S(s);
      const std::string& ds = c.del.at(s);
      for (std::size_t j = 0; a + j + 1 <= N; ++j) {
        for (auto& s2 : ck.tfiber(ds, j + 1)) {
          auto top = ck.at(Ss, s2, true);
          if (!top) continue;
          ck.pentagon(ss, {TE("s", s), TE("s'", s2)}, c.del.at(s2), Ss, ck.S(*top), ck.S(s2), Ss);
        }
        for (auto& x : ck.fiber(ds, j + 1)) {
          auto top = ck.at(Ss, x, false);
          if (!top) continue;
          ck.pentagon(st, {TE("s", s), E("GTDT'", x)}, c.B.p(x), Ss, ck.T(*top), ck.T(x), Ss);
        }
      }
      ck.pentagon(stid, {TE("s", s)}, c.B.p(ds), ck.T(ds), Ss, nullptr, nullptr, true);
    }
  }
  return {finish(tt), finish(ss), finish(ts), finish(st), finish(stid)};
}

}  // namespace bsys
