#include "bsys/laws.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "json.hpp"

namespace bsys {

std::string_view to_string(LawStatus s) {
  switch (s) {
    case LawStatus::Pass: return "pass";
    case LawStatus::Fail: return "fail";
    case LawStatus::Vacuous: return "vacuous";
  }
  return "?";
}

const std::vector<std::string>& b0_law_ids() {
  static const std::vector<std::string> ids{"B0.1", "B0.2", "B0.3", "B0.4", "B0.5", "UB0"};
  return ids;
}

const std::vector<std::string>& b_law_ids() {
  static const std::vector<std::string> ids{"TT.a", "TT.b", "SS.a", "SS.b", "TS.a",
                                            "TS.b", "ST.a", "ST.b", "STid.a", "STid.b"};
  return ids;
}

const std::vector<std::string>& unit_law_ids() {
  static const std::vector<std::string> ids{"dT", "dS", "dSid", "SdT.a", "SdT.b"};
  return ids;
}

namespace {

using Args = std::vector<WitnessArg>;
using Emit = std::function<void(const Args&)>;

WitnessArg arg(const char* role, const Elt& x) { return {role, false, x.id, x.level}; }
WitnessArg arg(const char* role, const TElt& r) { return {role, true, r.id, r.level}; }
Elt E(const WitnessArg& a) { return {a.id, a.level}; }
TElt TE(const WitnessArg& a) { return {a.id, a.level}; }

struct Env {
  const BSysView& v;
  std::size_t cutoff;
  std::optional<UnitFn> unit_fn;

  bool has_unit() const { return unit_fn.has_value() || v.unital(); }

  TElt delta(const Elt& x) const {
    if (!unit_fn) return unit(v, x);
    if (x.level == 0) throw Error(ErrorKind::LevelUnderflow, "delta of a level-0 element");
    TElt out = (*unit_fn)(x);
    if (out.level != x.level + 1) throw Error(ErrorKind::InvariantViolation, "delta returned " + describe(out));
    return out;
  }

  std::vector<Elt> B(std::size_t n) const { return v.elements(n); }
  std::vector<TElt> Bt(std::size_t n) const { return n == 0 ? std::vector<TElt>{} : v.telements(n); }
};

using Eval = std::function<std::pair<std::string, std::string>(const Env&, const Args&)>;
using Gen = std::function<void(const Env&, const Emit&)>;

struct LawDef {
  Gen gen;
  Eval eval;
  bool needs_unit = false;
};

// ---- generators -----------------------------------------------------------
// Level bounds below always refer to the quantified inputs.

// Y in B_{i+1}, X in B(ft Y)_k with k >= 1.
void gen_y_x(const Env& e, const Emit& emit) {
  for (std::size_t a = 1; a <= e.cutoff; ++a) {
    for (auto& y : e.B(a)) {
      Elt base = e.v.ft(y);
      for (std::size_t k = 1; a - 1 + k <= e.cutoff; ++k) {
        for (auto& x : e.v.fiber(base, k)) emit({arg("Y", y), arg("X", x)});
      }
    }
  }
}

void gen_y_r(const Env& e, const Emit& emit) {
  for (std::size_t a = 1; a <= e.cutoff; ++a) {
    for (auto& y : e.B(a)) {
      Elt base = e.v.ft(y);
      for (std::size_t k = 1; a - 1 + k <= e.cutoff; ++k) {
        for (auto& r : tilde_fiber(e.v, base, k)) emit({arg("Y", y), arg("r", r)});
      }
    }
  }
}

void gen_s_x(const Env& e, const Emit& emit) {
  for (std::size_t a = 1; a <= e.cutoff; ++a) {
    for (auto& s : e.Bt(a)) {
      Elt base = e.v.boundary(s);
      for (std::size_t k = 1; a + k <= e.cutoff; ++k) {
        for (auto& x : e.v.fiber(base, k)) emit({arg("s", s), arg("X", x)});
      }
    }
  }
}

void gen_s_r(const Env& e, const Emit& emit) {
  for (std::size_t a = 1; a <= e.cutoff; ++a) {
    for (auto& s : e.Bt(a)) {
      Elt base = e.v.boundary(s);
      for (std::size_t k = 1; a + k <= e.cutoff; ++k) {
        for (auto& r : tilde_fiber(e.v, base, k)) emit({arg("s", s), arg("r", r)});
      }
    }
  }
}

// Tail quantifier over R in B(base)_*, k >= 0, or r in B~(base)_*, k >= 1.
void tail(const Env& e, const Elt& base, bool tilde, Args prefix, const Emit& emit) {
  for (std::size_t k = tilde ? 1 : 0; base.level + k <= e.cutoff; ++k) {
    if (tilde) {
      for (auto& r : tilde_fiber(e.v, base, k)) {
        prefix.push_back(arg("r", r));
        emit(prefix);
        prefix.pop_back();
      }
    } else {
      for (auto& x : e.v.fiber(base, k)) {
        prefix.push_back(arg("R", x));
        emit(prefix);
        prefix.pop_back();
      }
    }
  }
}

// GT in B_{i+1}, GDT' in B(ft GT)_{j+1}, then the tail over `tail_base`.
void gen_gt_gdt(const Env& e, const Emit& emit, const std::function<void(const Elt&, const Elt&)>& body) {
  (void)emit;
  for (std::size_t a = 1; a <= e.cutoff; ++a) {
    for (auto& gt : e.B(a)) {
      Elt base = e.v.ft(gt);
      for (std::size_t j = 0; a + j <= e.cutoff; ++j) {
        for (auto& gdt : e.v.fiber(base, j + 1)) body(gt, gdt);
      }
    }
  }
}

// s in B~_{i+1}, then an element or judgement over del(s) of relative level j+1.
void gen_s_over(const Env& e, bool tilde, const std::function<void(const TElt&, const WitnessArg&)>& body) {
  for (std::size_t a = 1; a <= e.cutoff; ++a) {
    for (auto& s : e.Bt(a)) {
      Elt base = e.v.boundary(s);
      for (std::size_t j = 0; a + j + 1 <= e.cutoff; ++j) {
        if (tilde) {
          for (auto& s2 : tilde_fiber(e.v, base, j + 1)) body(s, arg("s'", s2));
        } else {
          for (auto& x : e.v.fiber(base, j + 1)) body(s, arg("GTDT'", x));
        }
      }
    }
  }
}

std::map<std::string, LawDef> build_laws() {
  std::map<std::string, LawDef> L;
  using P = std::pair<std::string, std::string>;

  // ---- typing laws ----
  L["B0.1"] = {[](const Env& e, const Emit& emit) {
                 for (auto& x : e.B(0)) emit({arg("X", x)});
               },
               [](const Env& e, const Args& a) { return P{a[0].id, e.v.pt().id}; }};
  L["B0.2"] = {gen_y_x, [](const Env& e, const Args& a) {
                 Elt y = E(a[0]), x = E(a[1]);
                 std::string lhs = e.v.ft(weaken(e.v, y, x)).id;
                 std::string rhs = x.level > y.level ? weaken(e.v, y, e.v.ft(x)).id : y.id;
                 return P{lhs, rhs};
               }};
  L["B0.3"] = {gen_y_r, [](const Env& e, const Args& a) {
                 Elt y = E(a[0]);
                 TElt r = TE(a[1]);
                 return P{e.v.boundary(weaken_judgement(e.v, y, r)).id, weaken(e.v, y, e.v.boundary(r)).id};
               }};
  L["B0.4"] = {gen_s_x, [](const Env& e, const Args& a) {
                 TElt s = TE(a[0]);
                 Elt x = E(a[1]);
                 std::string lhs = e.v.ft(substitute(e.v, s, x)).id;
                 std::string rhs =
                     x.level > s.level + 1 ? substitute(e.v, s, e.v.ft(x)).id : e.v.ft(e.v.boundary(s)).id;
                 return P{lhs, rhs};
               }};
  L["B0.5"] = {gen_s_r, [](const Env& e, const Args& a) {
                 TElt s = TE(a[0]), r = TE(a[1]);
                 return P{e.v.boundary(substitute_judgement(e.v, s, r)).id, substitute(e.v, s, e.v.boundary(r)).id};
               }};
  L["UB0"] = {[](const Env& e, const Emit& emit) {
                for (std::size_t n = 1; n <= e.cutoff; ++n)
                  for (auto& x : e.B(n)) emit({arg("X", x)});
              },
              [](const Env& e, const Args& a) {
                Elt x = E(a[0]);
                return P{e.v.boundary(e.delta(x)).id, weaken(e.v, x, x).id};
              },
              true};

  // ---- TT ----
  auto gen_tt = [](bool tilde) {
    return [tilde](const Env& e, const Emit& emit) {
      gen_gt_gdt(e, emit, [&](const Elt& gt, const Elt& gdt) {
        tail(e, e.v.ft(gdt), tilde, {arg("GT", gt), arg("GDT'", gdt)}, emit);
      });
    };
  };
  L["TT.a"] = {gen_tt(false), [](const Env& e, const Args& a) {
                 Elt gt = E(a[0]), gdt = E(a[1]), R = E(a[2]);
                 auto& v = e.v;
                 return P{weaken_slice(v, weaken(v, gt, gdt), weaken_slice(v, gt, R)).id,
                          weaken_slice(v, gt, weaken_slice(v, gdt, R)).id};
               }};
  L["TT.b"] = {gen_tt(true), [](const Env& e, const Args& a) {
                 Elt gt = E(a[0]), gdt = E(a[1]);
                 TElt r = TE(a[2]);
                 auto& v = e.v;
                 return P{weaken_judgement(v, weaken(v, gt, gdt), weaken_judgement(v, gt, r)).id,
                          weaken_judgement(v, gt, weaken_judgement(v, gdt, r)).id};
               }};

  // ---- SS ----
  auto gen_ss = [](bool tilde) {
    return [tilde](const Env& e, const Emit& emit) {
      gen_s_over(e, true, [&](const TElt& s, const WitnessArg& s2) {
        tail(e, e.v.boundary(TE(s2)), tilde, {arg("s", s), s2}, emit);
      });
    };
  };
  L["SS.a"] = {gen_ss(false), [](const Env& e, const Args& a) {
                 TElt s = TE(a[0]), s2 = TE(a[1]);
                 Elt R = E(a[2]);
                 auto& v = e.v;
                 return P{substitute_slice(v, substitute_judgement(v, s, s2), substitute_slice(v, s, R)).id,
                          substitute_slice(v, s, substitute_slice(v, s2, R)).id};
               }};
  L["SS.b"] = {gen_ss(true), [](const Env& e, const Args& a) {
                 TElt s = TE(a[0]), s2 = TE(a[1]), r = TE(a[2]);
                 auto& v = e.v;
                 return P{substitute_judgement(v, substitute_judgement(v, s, s2), substitute_judgement(v, s, r)).id,
                          substitute_judgement(v, s, substitute_judgement(v, s2, r)).id};
               }};

  // ---- TS ----
  auto gen_ts = [](bool tilde) {
    return [tilde](const Env& e, const Emit& emit) {
      for (std::size_t a = 1; a <= e.cutoff; ++a) {
        for (auto& gt : e.B(a)) {
          Elt base = e.v.ft(gt);
          for (std::size_t j = 0; a + j <= e.cutoff; ++j) {
            for (auto& s2 : tilde_fiber(e.v, base, j + 1)) {
              tail(e, e.v.boundary(s2), tilde, {arg("GT", gt), arg("s'", s2)}, emit);
            }
          }
        }
      }
    };
  };
  L["TS.a"] = {gen_ts(false), [](const Env& e, const Args& a) {
                 Elt gt = E(a[0]);
                 TElt s2 = TE(a[1]);
                 Elt R = E(a[2]);
                 auto& v = e.v;
                 return P{substitute_slice(v, weaken_judgement(v, gt, s2), weaken_slice(v, gt, R)).id,
                          weaken_slice(v, gt, substitute_slice(v, s2, R)).id};
               }};
  L["TS.b"] = {gen_ts(true), [](const Env& e, const Args& a) {
                 Elt gt = E(a[0]);
                 TElt s2 = TE(a[1]), r = TE(a[2]);
                 auto& v = e.v;
                 return P{substitute_judgement(v, weaken_judgement(v, gt, s2), weaken_judgement(v, gt, r)).id,
                          weaken_judgement(v, gt, substitute_judgement(v, s2, r)).id};
               }};

  // ---- ST ----
  auto gen_st = [](bool tilde) {
    return [tilde](const Env& e, const Emit& emit) {
      gen_s_over(e, false, [&](const TElt& s, const WitnessArg& x) {
        tail(e, e.v.ft(E(x)), tilde, {arg("s", s), x}, emit);
      });
    };
  };
  L["ST.a"] = {gen_st(false), [](const Env& e, const Args& a) {
                 TElt s = TE(a[0]);
                 Elt x = E(a[1]), R = E(a[2]);
                 auto& v = e.v;
                 return P{weaken_slice(v, substitute(v, s, x), substitute_slice(v, s, R)).id,
                          substitute_slice(v, s, weaken_slice(v, x, R)).id};
               }};
  L["ST.b"] = {gen_st(true), [](const Env& e, const Args& a) {
                 TElt s = TE(a[0]);
                 Elt x = E(a[1]);
                 TElt r = TE(a[2]);
                 auto& v = e.v;
                 return P{weaken_judgement(v, substitute(v, s, x), substitute_judgement(v, s, r)).id,
                          substitute_judgement(v, s, weaken_judgement(v, x, r)).id};
               }};

  // ---- STid ----
  auto gen_stid = [](bool tilde) {
    return [tilde](const Env& e, const Emit& emit) {
      for (std::size_t a = 1; a <= e.cutoff; ++a) {
        for (auto& s : e.Bt(a)) tail(e, e.v.ft(e.v.boundary(s)), tilde, {arg("s", s)}, emit);
      }
    };
  };
  L["STid.a"] = {gen_stid(false), [](const Env& e, const Args& a) {
                   TElt s = TE(a[0]);
                   Elt R = E(a[1]);
                   auto& v = e.v;
                   return P{substitute_slice(v, s, weaken_slice(v, v.boundary(s), R)).id, R.id};
                 }};
  L["STid.b"] = {gen_stid(true), [](const Env& e, const Args& a) {
                   TElt s = TE(a[0]), r = TE(a[1]);
                   auto& v = e.v;
                   return P{substitute_judgement(v, s, weaken_judgement(v, v.boundary(s), r)).id, r.id};
                 }};

  // ---- unit laws ----
  L["dT"] = {[](const Env& e, const Emit& emit) {
               gen_gt_gdt(e, emit, [&](const Elt& gt, const Elt& gdt) { emit({arg("GT", gt), arg("GDT'", gdt)}); });
             },
             [](const Env& e, const Args& a) {
               Elt gt = E(a[0]), gdt = E(a[1]);
               return P{weaken_judgement(e.v, gt, e.delta(gdt)).id, e.delta(weaken(e.v, gt, gdt)).id};
             },
             true};
  L["dS"] = {[](const Env& e, const Emit& emit) {
               gen_s_over(e, false, [&](const TElt& s, const WitnessArg& x) { emit({arg("s", s), x}); });
             },
             [](const Env& e, const Args& a) {
               TElt s = TE(a[0]);
               Elt x = E(a[1]);
               return P{substitute_judgement(e.v, s, e.delta(x)).id, e.delta(substitute(e.v, s, x)).id};
             },
             true};
  L["dSid"] = {[](const Env& e, const Emit& emit) {
                 for (std::size_t n = 1; n <= e.cutoff; ++n)
                   for (auto& s : e.Bt(n)) emit({arg("s", s)});
               },
               [](const Env& e, const Args& a) {
                 TElt s = TE(a[0]);
                 return P{substitute_judgement(e.v, s, e.delta(e.v.boundary(s))).id, s.id};
               },
               true};
  auto gen_sdt = [](bool tilde) {
    return [tilde](const Env& e, const Emit& emit) {
      for (std::size_t n = 1; n <= e.cutoff; ++n)
        for (auto& gt : e.B(n)) tail(e, gt, tilde, {arg("GT", gt)}, emit);
    };
  };
  L["SdT.a"] = {gen_sdt(false),
                [](const Env& e, const Args& a) {
                  Elt gt = E(a[0]), R = E(a[1]);
                  return P{substitute_slice(e.v, e.delta(gt), weaken(e.v, gt, R)).id, R.id};
                },
                true};
  L["SdT.b"] = {gen_sdt(true),
                [](const Env& e, const Args& a) {
                  Elt gt = E(a[0]);
                  TElt r = TE(a[1]);
                  return P{substitute_judgement(e.v, e.delta(gt), weaken_judgement(e.v, gt, r)).id, r.id};
                },
                true};
  return L;
}

const std::map<std::string, LawDef>& laws() {
  static const auto L = build_laws();
  return L;
}

const LawDef& law(const std::string& id) {
  auto it = laws().find(id);
  if (it == laws().end()) throw Error(ErrorKind::UnknownElement, "unknown law id " + id);
  return it->second;
}

// Evaluates one instance; nullopt when it leaves the backend capacity.
std::optional<std::pair<std::string, std::string>> evaluate(const LawDef& d, const Env& e, const Args& a) {
  try {
    return d.eval(e, a);
  } catch (const Error& err) {
    if (err.kind() == ErrorKind::OutsideCutoff) return std::nullopt;
    return std::pair<std::string, std::string>{"error: " + std::string(err.what()), "(defined value)"};
  }
}

LawReport run(const std::string& id, const Env& e) {
  const LawDef& d = law(id);
  LawReport rep;
  rep.id = id;
  rep.cutoff = e.cutoff;
  if (d.needs_unit && !e.has_unit()) return rep;
  d.gen(e, [&](const Args& a) {
    auto res = evaluate(d, e, a);
    if (!res) return;
    ++rep.instances;
    if (res->first != res->second && !rep.witness) rep.witness = Witness{a, res->first, res->second};
  });
  if (rep.witness) rep.status = LawStatus::Fail;
  else if (rep.instances > 0) rep.status = LawStatus::Pass;
  return rep;
}

}  // namespace

LawReport check_law(const BSysView& v, const std::string& id, std::size_t cutoff, const std::optional<UnitFn>& unit) {
  return run(id, Env{v, cutoff, unit});
}

std::vector<LawReport> check_b0(const BSysView& v, std::size_t cutoff, const std::optional<UnitFn>& unit) {
  std::vector<LawReport> out;
  for (auto& id : b0_law_ids()) out.push_back(check_law(v, id, cutoff, unit));
  return out;
}

std::vector<LawReport> check_laws(const BSysView& v, std::size_t cutoff, const std::optional<UnitFn>& unit) {
  std::vector<LawReport> out;
  for (auto& id : b_law_ids()) out.push_back(check_law(v, id, cutoff, unit));
  for (auto& id : unit_law_ids()) out.push_back(check_law(v, id, cutoff, unit));
  return out;
}

std::pair<std::string, std::string> replay(const BSysView& v, const std::string& id, const std::vector<WitnessArg>& args,
                                           const std::optional<UnitFn>& unit) {
  Env e{v, 0, unit};
  auto res = evaluate(law(id), e, args);
  if (!res) throw Error(ErrorKind::OutsideCutoff, "witness of " + id + " leaves the backend capacity");
  return *res;
}

bool all_passed(const std::vector<LawReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const LawReport& r) { return r.passed(); });
}

// ---------------------------------------------------------------------------
// Unit search

UnitFn unit_from_table(const BSysView& v, std::map<std::string, std::string> table) {
  (void)v;
  return [table = std::move(table)](const Elt& x) -> TElt {
    auto it = table.find(x.id);
    if (it == table.end()) throw Error(ErrorKind::OutsideCutoff, "delta(" + x.id + ") not tabulated");
    return {it->second, x.level + 1};
  };
}

namespace {

bool holds(const std::function<bool()>& f) {
  try {
    return f();
  } catch (const Error& err) {
    if (err.kind() == ErrorKind::OutsideCutoff) return true;  // instance outside the checked range
    return false;
  }
}

// Laws involving delta at a single element X: dSid and both SdT variants.
bool locally_admissible(const BSysView& v, std::size_t cutoff, const Elt& x, const TElt& c) {
  for (auto& s : v.telements_over(x)) {
    if (!holds([&] { return substitute_judgement(v, s, c) == s; })) return false;
  }
  for (std::size_t k = 0; x.level + k <= cutoff; ++k) {
    for (auto& R : v.fiber(x, k)) {
      if (!holds([&] { return substitute_slice(v, c, weaken(v, x, R)) == R; })) return false;
    }
    if (k == 0) continue;
    for (auto& r : tilde_fiber(v, x, k)) {
      if (!holds([&] { return substitute_judgement(v, c, weaken_judgement(v, x, r)) == r; })) return false;
    }
  }
  return true;
}

}  // namespace

UnitSearch find_unit(const BSysView& v, std::size_t cutoff) {
  UnitSearch out;
  out.cutoff = cutoff;
  if (cutoff < 2) return out;

  std::vector<Elt> dom;
  for (std::size_t n = 1; n + 1 <= cutoff; ++n) {
    auto lv = v.elements(n);
    dom.insert(dom.end(), lv.begin(), lv.end());
  }
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < dom.size(); ++i) index[dom[i].id] = i;

  std::vector<std::vector<TElt>> cand(dom.size());
  for (std::size_t i = 0; i < dom.size(); ++i) {
    Elt diag;
    try {
      diag = weaken(v, dom[i], dom[i]);
    } catch (const Error&) {
      return out;
    }
    for (auto& c : v.telements_over(diag)) {
      if (locally_admissible(v, cutoff, dom[i], c)) cand[i].push_back(c);
    }
  }

  // dT links: T~(GT, delta(A)) = delta(T(GT, A)) with both A and T(GT, A) in the domain.
  struct Link {
    Elt gt;
    std::size_t from;
  };
  std::vector<std::vector<Link>> incoming(dom.size());
  for (std::size_t i = 0; i < dom.size(); ++i) {
    const Elt& a = dom[i];
    for (std::size_t n = 1; n <= a.level; ++n) {
      for (auto& gt : v.elements(n)) {
        if (!weaken_defined(v, gt, a)) continue;
        if (a.level + 1 > cutoff - 1) continue;
        Elt b = weaken(v, gt, a);
        incoming[index.at(b.id)].push_back({gt, i});
      }
    }
  }

  std::vector<TElt> chosen(dom.size());
  std::vector<std::map<std::string, std::string>> solutions;
  std::function<void(std::size_t)> assign = [&](std::size_t i) {
    if (solutions.size() >= 2) return;
    if (i == dom.size()) {
      std::map<std::string, std::string> t;
      for (std::size_t k = 0; k < dom.size(); ++k) t[dom[k].id] = chosen[k].id;
      solutions.push_back(std::move(t));
      return;
    }
    for (auto& c : cand[i]) {
      bool ok = true;
      for (auto& link : incoming[i]) {
        if (!holds([&] { return weaken_judgement(v, link.gt, chosen[link.from]) == c; })) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      chosen[i] = c;
      assign(i + 1);
    }
  };
  assign(0);

  if (solutions.empty()) return out;
  out.table = solutions[0];
  if (solutions.size() > 1) {
    out.outcome = UnitSearch::Outcome::Ambiguous;
    out.other = solutions[1];
    return out;
  }
  out.outcome = UnitSearch::Outcome::Unique;
  out.delta_s = check_law(v, "dS", cutoff, unit_from_table(v, out.table));
  return out;
}

// ---------------------------------------------------------------------------
// Closure

Closure close_subsystem(const BSysView& v, const Generators& gens, std::size_t cutoff, bool with_unit) {
  Closure out{make_terminal(0), false};
  std::set<Elt> B{v.pt()};
  std::set<TElt> Bt;
  for (auto& x : gens.elements) {
    if (!v.contains(x)) throw Error(ErrorKind::UnknownElement, describe(x));
    if (x.level > cutoff) out.truncated = true;
    else B.insert(x);
  }
  for (auto& r : gens.telements) {
    if (!v.contains(r)) throw Error(ErrorKind::UnknownElement, describe(r));
    if (r.level > cutoff) out.truncated = true;
    else Bt.insert(r);
  }

  bool changed = true;
  auto addB = [&](const Elt& x) {
    if (x.level <= cutoff && B.insert(x).second) changed = true;
  };
  auto addBt = [&](const TElt& r) {
    if (r.level <= cutoff && Bt.insert(r).second) changed = true;
  };
  while (changed) {
    changed = false;
    std::vector<Elt> bs(B.begin(), B.end());
    std::vector<TElt> ts(Bt.begin(), Bt.end());
    for (auto& x : bs)
      if (x.level > 0) addB(v.ft(x));
    for (auto& r : ts) addB(v.boundary(r));
    for (auto& y : bs) {
      if (y.level == 0) continue;
      for (auto& x : bs)
        if (x.level + 1 <= cutoff && weaken_defined(v, y, x)) addB(weaken(v, y, x));
      for (auto& r : ts)
        if (r.level + 1 <= cutoff && weaken_judgement_defined(v, y, r)) addBt(weaken_judgement(v, y, r));
      if (with_unit && y.level + 1 <= cutoff) addBt(unit(v, y));
    }
    for (auto& s : ts) {
      for (auto& x : bs)
        if (substitute_defined(v, s, x)) addB(substitute(v, s, x));
      for (auto& r : ts)
        if (substitute_judgement_defined(v, s, r)) addBt(substitute_judgement(v, s, r));
    }
  }

  FinBSysData d;
  d.cutoff = cutoff;
  d.pt = v.pt().id;
  d.B.resize(cutoff + 1);
  d.Bt.resize(cutoff + 1);
  for (auto& x : B) {
    d.B[x.level].push_back(x.id);
    if (x.level > 0) d.ft[x.id] = v.ft(x).id;
  }
  for (auto& r : Bt) {
    d.Bt[r.level].push_back(r.id);
    d.del[r.id] = v.boundary(r).id;
  }
  for (auto& y : B) {
    if (y.level == 0) continue;
    for (auto& x : B)
      if (x.level + 1 <= cutoff && weaken_defined(v, y, x)) d.weaken[{y.id, x.id}] = weaken(v, y, x).id;
    for (auto& r : Bt)
      if (r.level + 1 <= cutoff && weaken_judgement_defined(v, y, r))
        d.weaken_judgement[{y.id, r.id}] = weaken_judgement(v, y, r).id;
  }
  for (auto& s : Bt) {
    for (auto& x : B)
      if (substitute_defined(v, s, x)) d.substitute[{s.id, x.id}] = substitute(v, s, x).id;
    for (auto& r : Bt)
      if (substitute_judgement_defined(v, s, r)) d.substitute_judgement[{s.id, r.id}] = substitute_judgement(v, s, r).id;
  }
  if (with_unit) {
    d.unit.emplace();
    for (auto& x : B)
      if (x.level >= 1 && x.level + 1 <= cutoff) (*d.unit)[x.id] = unit(v, x).id;
  }
  out.system = FinBSys(std::move(d));
  return out;
}

// ---------------------------------------------------------------------------
// Homomorphisms

Hom Hom::identity_on(const BSysView& v, std::size_t cutoff) {
  Hom h;
  for (std::size_t n = 0; n <= cutoff; ++n) {
    for (auto& x : v.elements(n)) h.b[x.id] = x.id;
    if (n > 0)
      for (auto& r : v.telements(n)) h.bt[r.id] = r.id;
  }
  return h;
}

LawReport check_hom(const Hom& h, const BSysView& src, const BSysView& dst, std::size_t cutoff, bool unital,
                    const std::optional<UnitFn>& src_unit, const std::optional<UnitFn>& dst_unit) {
  LawReport rep;
  rep.id = unital ? "HOM.unit" : "HOM";
  rep.cutoff = cutoff;

  auto map_e = [&](const Elt& x) -> Elt {
    auto it = h.b.find(x.id);
    if (it == h.b.end()) throw Error(ErrorKind::UnknownElement, "hom undefined on " + describe(x));
    Elt y{it->second, x.level};
    if (!dst.contains(y)) throw Error(ErrorKind::UnknownElement, "image " + describe(y) + " not in target");
    return y;
  };
  auto map_t = [&](const TElt& r) -> TElt {
    auto it = h.bt.find(r.id);
    if (it == h.bt.end()) throw Error(ErrorKind::UnknownElement, "hom undefined on " + describe(r));
    TElt y{it->second, r.level};
    if (!dst.contains(y)) throw Error(ErrorKind::UnknownElement, "image " + describe(y) + " not in target");
    return y;
  };
  auto check = [&](Args args, const std::function<std::pair<std::string, std::string>()>& f) {
    std::pair<std::string, std::string> res;
    try {
      res = f();
    } catch (const Error& err) {
      if (err.kind() == ErrorKind::OutsideCutoff) return;
      res = {"error: " + std::string(err.what()), "(defined value)"};
    }
    ++rep.instances;
    if (res.first != res.second && !rep.witness) rep.witness = Witness{std::move(args), res.first, res.second};
  };
  auto delta_src = [&](const Elt& x) { return src_unit ? (*src_unit)(x) : unit(src, x); };
  auto delta_dst = [&](const Elt& x) { return dst_unit ? (*dst_unit)(x) : unit(dst, x); };

  check({arg("pt", src.pt())}, [&] { return std::pair{map_e(src.pt()).id, dst.pt().id}; });
  for (std::size_t n = 1; n <= cutoff; ++n) {
    for (auto& x : src.elements(n)) {
      check({arg("X", x)}, [&] { return std::pair{map_e(src.ft(x)).id, dst.ft(map_e(x)).id}; });
    }
    for (auto& r : src.telements(n)) {
      check({arg("r", r)}, [&] { return std::pair{map_e(src.boundary(r)).id, dst.boundary(map_t(r)).id}; });
    }
  }
  Env e{src, cutoff, {}};
  gen_y_x(e, [&](const Args& a) {
    if (a[1].level + 1 > cutoff) return;
    check(a, [&] { return std::pair{map_e(weaken(src, E(a[0]), E(a[1]))).id, weaken(dst, map_e(E(a[0])), map_e(E(a[1]))).id}; });
  });
  gen_y_r(e, [&](const Args& a) {
    if (a[1].level + 1 > cutoff) return;
    check(a, [&] {
      return std::pair{map_t(weaken_judgement(src, E(a[0]), TE(a[1]))).id,
                       weaken_judgement(dst, map_e(E(a[0])), map_t(TE(a[1]))).id};
    });
  });
  gen_s_x(e, [&](const Args& a) {
    check(a, [&] {
      return std::pair{map_e(substitute(src, TE(a[0]), E(a[1]))).id,
                       substitute(dst, map_t(TE(a[0])), map_e(E(a[1]))).id};
    });
  });
  gen_s_r(e, [&](const Args& a) {
    check(a, [&] {
      return std::pair{map_t(substitute_judgement(src, TE(a[0]), TE(a[1]))).id,
                       substitute_judgement(dst, map_t(TE(a[0])), map_t(TE(a[1]))).id};
    });
  });
  if (unital) {
    for (std::size_t n = 1; n + 1 <= cutoff; ++n) {
      for (auto& x : src.elements(n)) {
        check({arg("X", x)}, [&] { return std::pair{map_t(delta_src(x)).id, delta_dst(map_e(x)).id}; });
      }
    }
  }
  if (rep.witness) rep.status = LawStatus::Fail;
  else if (rep.instances > 0) rep.status = LawStatus::Pass;
  return rep;
}

// ---------------------------------------------------------------------------

std::string reports_to_json(const std::vector<LawReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (auto& r : reports) {
    nlohmann::json j{{"id", r.id}, {"instances", r.instances}, {"status", to_string(r.status)}, {"cutoff", r.cutoff}};
    if (r.witness) {
      nlohmann::json args = nlohmann::json::array();
      for (auto& a : r.witness->args) {
        args.push_back({{"role", a.role}, {"kind", a.tilde ? "Bt" : "B"}, {"id", a.id}, {"level", a.level}});
      }
      j["witness"] = {{"args", args}, {"lhs", r.witness->lhs}, {"rhs", r.witness->rhs}};
    }
    arr.push_back(j);
  }
  return arr.dump(2) + "\n";
}

std::string report_line(const LawReport& r) {
  std::string out = r.id + " " + std::string(to_string(r.status)) + " instances=" + std::to_string(r.instances) +
                    " cutoff=" + std::to_string(r.cutoff);
  if (r.witness) {
    out += " witness:";
    for (auto& a : r.witness->args) out += " " + a.role + "=" + a.id;
    out += " lhs=" + r.witness->lhs + " rhs=" + r.witness->rhs;
  }
  return out;
}

}  // namespace bsys
