#include "bsys/csys.hpp"

#include <algorithm>
#include <array>

#include "json.hpp"

namespace bsys {

std::string describe(const Morph& f) {
  std::string out = f.src.id + " -> " + f.dst.id + " [";
  for (std::size_t i = 0; i < f.sections.size(); ++i) {
    if (i) out += ", ";
    out += f.sections[i].id;
  }
  return out + "]";
}

namespace {

bool side_failure(const Error& e) {
  return e.kind() == ErrorKind::SideConditionViolated || e.kind() == ErrorKind::LevelUnderflow ||
         e.kind() == ErrorKind::UnknownElement;
}

// Z_{m,i}: T_n(Y, X) followed by substitution of the first i sections.
Elt pulled_context(const BSysView& v, const Elt& y, const Elt& x, const std::vector<TElt>& sections, std::size_t i) {
  Elt z = weaken_iter(v, y, y.level, x);
  for (std::size_t k = 0; k < i; ++k) z = substitute(v, sections[k], z);
  return z;
}

}  // namespace

bool is_morphism(const BSysView& v, const Elt& y, const Elt& x, const std::vector<TElt>& sections) {
  if (sections.size() != x.level) {
    throw Error(ErrorKind::LevelMismatch, "a morphism into " + describe(x) + " needs " + std::to_string(x.level) +
                                              " sections, got " + std::to_string(sections.size()));
  }
  if (!v.contains(y) || !v.contains(x)) return false;
  for (auto& s : sections) {
    if (s.level != y.level + 1 || !v.contains(s)) return false;
  }
  try {
    for (std::size_t m = 1; m <= x.level; ++m) {
      Elt xm = ft_pow(v, x, x.level - m);
      if (v.boundary(sections[m - 1]) != pulled_context(v, y, xm, sections, m - 1)) return false;
    }
  } catch (const Error& e) {
    if (side_failure(e)) return false;
    throw;
  }
  return true;
}

bool is_morphism(const BSysView& v, const Morph& f) { return is_morphism(v, f.src, f.dst, f.sections); }

Morph projection(const BSysView& v, const Elt& x, std::size_t i) {
  if (!v.unital()) throw Error(ErrorKind::NotUnital, "projections need delta");
  const std::size_t m = x.level;
  if (i > m) throw Error(ErrorKind::LevelUnderflow, "projection past pt");
  Morph p{x, ft_pow(v, x, i), {}};
  for (std::size_t j = 1; j <= m - i; ++j) {
    p.sections.push_back(weaken_judgement_iter(v, x, m - j, unit(v, ft_pow(v, x, m - j))));
  }
  return p;
}

Morph identity(const BSysView& v, const Elt& x) { return projection(v, x, 0); }

TElt pull_section(const BSysView& v, const Morph& f, const TElt& s) {
  Elt x = v.boundary(s);
  if (x.level == 0 || v.ft(x) != f.dst) {
    throw Error(ErrorKind::SideConditionViolated, "pull_section: " + describe(s) + " does not lie over " + describe(f.dst));
  }
  TElt t = weaken_judgement_iter(v, f.src, f.src.level, s);
  for (auto& sec : f.sections) t = substitute_judgement(v, sec, t);
  return t;
}

Morph compose(const BSysView& v, const Morph& g, const Morph& f) {
  if (g.dst != f.src) {
    throw Error(ErrorKind::CompositionMismatch, "cannot compose " + describe(g) + " with " + describe(f));
  }
  Morph out{g.src, f.dst, {}};
  out.sections.reserve(f.sections.size());
  for (auto& s : f.sections) out.sections.push_back(pull_section(v, g, s));
  return out;
}

Elt pull_object(const BSysView& v, const Morph& f, const Elt& x) {
  if (x.level == 0 || v.ft(x) != f.dst) {
    throw Error(ErrorKind::SideConditionViolated, "pull_object: " + describe(x) + " does not lie over " + describe(f.dst));
  }
  return pulled_context(v, f.src, x, f.sections, f.sections.size());
}

namespace {

Morph q_from(const BSysView& v, const Morph& f, const Elt& fx, const Elt& x) {
  Morph q{fx, x, {}};
  for (auto& s : f.sections) q.sections.push_back(weaken_judgement(v, fx, s));
  q.sections.push_back(unit(v, fx));
  return q;
}

}  // namespace

Morph q_morphism(const BSysView& v, const Morph& f, const Elt& x) { return q_from(v, f, pull_object(v, f, x), x); }

// ---------------------------------------------------------------------------
// FinCat

FinCat::Idx FinCat::object_index(const std::string& id) const {
  for (Idx i = 0; i < objects.size(); ++i)
    if (objects[i].id == id) return i;
  throw Error(ErrorKind::UnknownElement, "no object " + id);
}

const std::vector<FinCat::Idx>& FinCat::homs(Idx src, Idx dst) const {
  static const std::vector<Idx> empty;
  auto it = hom.find({src, dst});
  return it == hom.end() ? empty : it->second;
}

FinCat::Idx FinCat::comp(Idx g, Idx f) const {
  auto it = composition.find(key(g, f));
  return it == composition.end() ? none : it->second;
}

namespace {

std::string morph_key(const Elt& src, const Elt& dst, const std::vector<TElt>& sections) {
  std::string k = src.id + "|" + dst.id;
  for (auto& s : sections) k += "|" + s.id;
  return k;
}

[[noreturn]] void not_a_category(const std::string& what) { throw Error(ErrorKind::NotACategory, what); }

}  // namespace

FinCat build_category(const BSysView& v, std::size_t cutoff, const BuildOptions& opts) {
  if (!v.unital()) throw Error(ErrorKind::NotUnital, "build_category needs a unital system");
  // pulling a level-N section back along a level-N source reaches level 2N+1
  if (auto cap = v.capacity(); cap && *cap < 2 * cutoff + 1)
    throw Error(ErrorKind::OutsideCutoff, "category up to level " + std::to_string(cutoff) + " needs a system of height " +
                                              std::to_string(2 * cutoff + 1) + ", input has height " + std::to_string(*cap));
  using Idx = FinCat::Idx;
  FinCat cat;
  cat.cutoff = cutoff;
  std::map<std::string, Idx> obj;
  for (std::size_t n = 0; n <= cutoff; ++n) {
    for (auto& x : v.elements(n)) {
      obj[x.id] = static_cast<Idx>(cat.objects.size());
      cat.objects.push_back(x);
    }
  }
  const Idx nobj = static_cast<Idx>(cat.objects.size());
  std::unordered_map<std::string, Idx> by_key;
  auto add = [&](Morph m) {
    Idx i = static_cast<Idx>(cat.morphisms.size());
    by_key[morph_key(m.src, m.dst, m.sections)] = i;
    cat.morph_src.push_back(obj.at(m.src.id));
    cat.morph_dst.push_back(obj.at(m.dst.id));
    cat.hom[{cat.morph_src.back(), cat.morph_dst.back()}].push_back(i);
    cat.morphisms.push_back(std::move(m));
    return i;
  };
  auto find = [&](const Morph& m) -> Idx {
    auto it = by_key.find(morph_key(m.src, m.dst, m.sections));
    if (it == by_key.end()) not_a_category("morphism " + describe(m) + " missing from the enumeration");
    return it->second;
  };

  // Hom-sets by induction on the target: hom(Y, X) = {(f, s) : f in hom(Y, ft X), del(s) = f^*X}.
  std::size_t candidates = 0;
  for (Idx yi = 0; yi < nobj; ++yi) {
    const Elt& y = cat.objects[yi];
    for (Idx xi = 0; xi < nobj; ++xi) {
      const Elt& x = cat.objects[xi];
      if (x.level == 0) {
        add({y, x, {}});
        continue;
      }
      Idx fxi = obj.at(v.ft(x).id);
      std::vector<Idx> prefixes = cat.homs(yi, fxi);
      for (Idx f : prefixes) {
        const Morph pre = cat.morphisms[f];
        Elt z = pull_object(v, pre, x);
        if (y.level + 1 <= cutoff) cat.pullback[FinCat::key(f, xi)] = obj.at(z.id);
        auto over = v.telements_over(z);
        candidates += over.size();
        if (candidates > opts.budget) {
          throw Error(ErrorKind::CutoffTooLarge, "hom-set enumeration exceeds the budget of " +
                                                     std::to_string(opts.budget) + " candidates");
        }
        for (auto& s : over) {
          Morph m{y, x, pre.sections};
          m.sections.push_back(s);
          add(std::move(m));
        }
      }
    }
  }

  cat.identity.resize(nobj);
  cat.projection.assign(nobj, FinCat::none);
  for (Idx i = 0; i < nobj; ++i) {
    cat.identity[i] = find(identity(v, cat.objects[i]));
    if (cat.objects[i].level >= 1) cat.projection[i] = find(projection(v, cat.objects[i], 1));
  }

  // Composition; pulling one section back along g is shared by many f.
  std::unordered_map<std::string, TElt> pulled;
  for (Idx g = 0; g < cat.morphisms.size(); ++g) {
    const Morph& gm = cat.morphisms[g];
    for (Idx xi = 0; xi < nobj; ++xi) {
      for (Idx f : cat.homs(cat.morph_dst[g], xi)) {
        const Morph& fm = cat.morphisms[f];
        Morph out{gm.src, fm.dst, {}};
        for (auto& s : fm.sections) {
          auto k = std::to_string(g) + "|" + s.id;
          auto it = pulled.find(k);
          if (it == pulled.end()) it = pulled.emplace(k, pull_section(v, gm, s)).first;
          out.sections.push_back(it->second);
        }
        cat.composition[FinCat::key(g, f)] = find(out);
      }
    }
  }

  for (auto& [k, fx] : cat.pullback) {
    Idx f = static_cast<Idx>(k >> 32), xi = static_cast<Idx>(k & 0xffffffffu);
    cat.q[k] = find(q_from(v, cat.morphisms[f], cat.objects[fx], cat.objects[xi]));
  }

  if (opts.verify) {
    auto check = check_category(cat);
    if (check.failure) not_a_category(*check.failure);
  }
  return cat;
}

CategoryCheck check_category(const FinCat& cat) {
  using Idx = FinCat::Idx;
  CategoryCheck out;
  const Idx nobj = static_cast<Idx>(cat.objects.size());
  auto fail = [&](const std::string& what) {
    if (!out.failure) out.failure = what;
  };
  for (Idx f = 0; f < cat.morphisms.size(); ++f) {
    ++out.units;
    if (cat.comp(cat.identity[cat.morph_src[f]], f) != f) fail("id then f != f for " + describe(cat.morphisms[f]));
    if (cat.comp(f, cat.identity[cat.morph_dst[f]]) != f) fail("f then id != f for " + describe(cat.morphisms[f]));
  }
  for (Idx h = 0; h < cat.morphisms.size() && !out.failure; ++h) {
    for (Idx yi = 0; yi < nobj; ++yi) {
      for (Idx g : cat.homs(cat.morph_dst[h], yi)) {
        Idx hg = cat.comp(h, g);
        for (Idx xi = 0; xi < nobj; ++xi) {
          for (Idx f : cat.homs(yi, xi)) {
            ++out.associativity;
            Idx left = cat.comp(hg, f), right = cat.comp(h, cat.comp(g, f));
            if (left == FinCat::none || left != right) {
              fail("associativity fails on " + describe(cat.morphisms[h]) + ", " + describe(cat.morphisms[g]) + ", " +
                   describe(cat.morphisms[f]));
            }
          }
        }
      }
    }
  }
  for (auto& [k, fx] : cat.pullback) {
    ++out.squares;
    Idx f = static_cast<Idx>(k >> 32), xi = static_cast<Idx>(k & 0xffffffffu);
    Idx qf = cat.q.at(k);
    Idx top = cat.comp(qf, cat.projection[xi]);
    Idx bottom = cat.comp(cat.projection[fx], f);
    if (top == FinCat::none || top != bottom) {
      fail("pullback square fails for f = " + describe(cat.morphisms[f]) + ", X = " + cat.objects[xi].id);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// ub_of

namespace {

class Reconstruction {
 public:
  using Idx = FinCat::Idx;

  explicit Reconstruction(const FinCat& cat) : cat_(cat) {
    for (Idx i = 0; i < cat.objects.size(); ++i) index_[cat.objects[i].id] = i;
  }

  Idx ft(Idx x) const { return cat_.morph_dst[cat_.projection[x]]; }
  Idx ft_pow(Idx x, std::size_t j) const {
    while (j--) x = ft(x);
    return x;
  }
  std::size_t level(Idx x) const { return cat_.objects[x].level; }
  Idx idx(const std::string& id) const { return index_.at(id); }

  Idx pullback(Idx f, Idx x) const {
    auto it = cat_.pullback.find(FinCat::key(f, x));
    if (it == cat_.pullback.end()) not_a_category("pullback outside the tables");
    return it->second;
  }
  Idx q(Idx f, Idx x) const {
    auto it = cat_.q.find(FinCat::key(f, x));
    if (it == cat_.q.end()) not_a_category("q outside the tables");
    return it->second;
  }
  Idx comp(Idx g, Idx f) const {
    Idx c = cat_.comp(g, f);
    if (c == FinCat::none) not_a_category("composite outside the tables");
    return c;
  }

  // f^*(X, j) and q(f, X, j) for ft^j(X) = dst(f).
  Idx pull_iter(Idx f, Idx x, std::size_t j) const {
    if (j == 0) return cat_.morph_src[f];
    return pullback(q_iter(f, ft(x), j - 1), x);
  }
  Idx q_iter(Idx f, Idx x, std::size_t j) const {
    if (j == 0) return f;
    return q(q_iter(f, ft(x), j - 1), x);
  }

  // Sections of p_X.
  std::vector<Idx> sections_of(Idx x) const {
    std::vector<Idx> out;
    Idx base = ft(x);
    for (Idx s : cat_.homs(base, x))
      if (comp(s, cat_.projection[x]) == cat_.identity[base]) out.push_back(s);
    return out;
  }

  // The unique t : A -> g^*X with p t = id and q(g, X) t = s g.
  Idx pull_back_section(Idx g, Idx x, Idx s) const {
    Idx a = cat_.morph_src[g];
    Idx gx = pullback(g, x);
    Idx want = comp(g, s);
    Idx qg = q(g, x);
    Idx found = FinCat::none;
    for (Idx t : cat_.homs(a, gx)) {
      if (comp(t, cat_.projection[gx]) != cat_.identity[a] || comp(t, qg) != want) continue;
      if (found != FinCat::none) not_a_category("pulled-back section is not unique");
      found = t;
    }
    if (found == FinCat::none) not_a_category("no pulled-back section");
    return found;
  }

  const std::string& last_section(Idx s) const { return cat_.morphisms[s].sections.back().id; }

 private:
  const FinCat& cat_;
  std::map<std::string, Idx> index_;
};

}  // namespace

FinBSys ub_of(const FinCat& cat) {
  using Idx = FinCat::Idx;
  Reconstruction rc(cat);
  const std::size_t N = cat.cutoff;
  FinBSysData d;
  d.cutoff = N;
  d.B.resize(N + 1);
  d.Bt.resize(N + 1);

  std::vector<std::vector<Idx>> objs(N + 1);
  for (Idx i = 0; i < cat.objects.size(); ++i) {
    const Elt& x = cat.objects[i];
    objs[x.level].push_back(i);
    d.B[x.level].push_back(x.id);
    if (x.level == 0) d.pt = x.id;
    else d.ft[x.id] = cat.objects[rc.ft(i)].id;
  }

  // Judgements over X are the sections of p_X.
  struct Judg {
    Idx section;
    Idx over;
  };
  std::vector<std::vector<Judg>> tl(N + 1);
  for (std::size_t n = 1; n <= N; ++n) {
    for (Idx x : objs[n]) {
      for (Idx s : rc.sections_of(x)) {
        const std::string& id = rc.last_section(s);
        d.Bt[n].push_back(id);
        d.del[id] = cat.objects[x].id;
        tl[n].push_back({s, x});
      }
    }
  }

  auto name = [&](Idx x) { return cat.objects[x].id; };
  for (std::size_t a = 1; a <= N; ++a) {
    for (Idx y : objs[a]) {
      Idx base = rc.ft(y);
      Idx py = cat.projection[y];
      for (std::size_t m = a; m + 1 <= N; ++m) {
        std::size_t j = m + 1 - a;  // ft^j(X) = ft(Y)
        for (Idx x : objs[m]) {
          if (rc.ft_pow(x, j) != base) continue;
          d.weaken[{name(y), name(x)}] = name(rc.pull_iter(py, x, j));
        }
        for (auto& r : tl[m]) {
          if (rc.ft_pow(r.over, j) != base) continue;
          Idx g = rc.q_iter(py, rc.ft(r.over), j - 1);
          d.weaken_judgement[{name(y), rc.last_section(r.section)}] =
              rc.last_section(rc.pull_back_section(g, r.over, r.section));
        }
      }
    }
  }
  for (std::size_t a = 1; a <= N; ++a) {
    for (auto& s : tl[a]) {
      for (std::size_t m = a + 1; m <= N; ++m) {
        std::size_t k = m - a;  // ft^k(X) = del(s)
        for (Idx x : objs[m]) {
          if (rc.ft_pow(x, k) != s.over) continue;
          d.substitute[{rc.last_section(s.section), name(x)}] = name(rc.pull_iter(s.section, x, k));
        }
        for (auto& r : tl[m]) {
          if (rc.ft_pow(r.over, k) != s.over) continue;
          Idx g = rc.q_iter(s.section, rc.ft(r.over), k - 1);
          d.substitute_judgement[{rc.last_section(s.section), rc.last_section(r.section)}] =
              rc.last_section(rc.pull_back_section(g, r.over, r.section));
        }
      }
    }
  }

  // delta(X): the diagonal section of p_X^*(X).
  d.unit.emplace();
  for (std::size_t n = 1; n + 1 <= N; ++n) {
    for (Idx x : objs[n]) {
      Idx px = cat.projection[x];
      Idx diag = rc.pullback(px, x);
      Idx qx = rc.q(px, x);
      Idx found = FinCat::none;
      for (Idx t : cat.homs(x, diag)) {
        if (rc.comp(t, cat.projection[diag]) != cat.identity[x] || rc.comp(t, qx) != cat.identity[x]) continue;
        if (found != FinCat::none) not_a_category("diagonal is not unique");
        found = t;
      }
      if (found == FinCat::none) not_a_category("no diagonal over " + name(x));
      (*d.unit)[name(x)] = rc.last_section(found);
    }
  }
  return FinBSys(std::move(d));
}

std::string fincat_to_json(const FinCat& cat) {
  using nlohmann::json;
  json j;
  j["cutoff"] = cat.cutoff;
  json objs = json::array();
  for (auto& x : cat.objects) objs.push_back({{"id", x.id}, {"level", x.level}});
  j["objects"] = objs;
  json ms = json::array();
  for (std::size_t i = 0; i < cat.morphisms.size(); ++i) {
    const Morph& m = cat.morphisms[i];
    json secs = json::array();
    for (auto& s : m.sections) secs.push_back(s.id);
    ms.push_back({{"index", i}, {"src", m.src.id}, {"dst", m.dst.id}, {"sections", secs}});
  }
  j["morphisms"] = ms;
  j["identity"] = cat.identity;
  std::vector<std::array<FinCat::Idx, 3>> comp;
  comp.reserve(cat.composition.size());
  for (auto& [k, v] : cat.composition) {
    comp.push_back({static_cast<FinCat::Idx>(k >> 32), static_cast<FinCat::Idx>(k & 0xffffffffu), v});
  }
  std::sort(comp.begin(), comp.end());
  j["composition"] = comp;
  return j.dump(2) + "\n";
}

}  // namespace bsys
