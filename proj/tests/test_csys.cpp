#include <set>

#include "bsys/csys.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bsys;
using namespace bsys::testing;

namespace {

ErrorKind kind_of(auto f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error");
  return ErrorKind::ParseError;
}

const Elt T1{"(T)", 1};
const Elt T2{"(T,T)", 2};

}  // namespace

TEST_CASE("is_morphism") {
  TermView r1(r1_description());
  CHECK(is_morphism(r1, T1, r1.pt(), {}));
  CHECK(is_morphism(r1, T1, T1, {{"(T,T;s1(1))", 2}}));
  CHECK(is_morphism(r1, T1, T1, {{"(T,T;1)", 2}}));
  CHECK_FALSE(is_morphism(r1, T1, T1, {{"(T,T,T;s1(1))", 3}}));
  CHECK(kind_of([&] { is_morphism(r1, T1, T1, {}); }) == ErrorKind::LevelMismatch);
  CHECK(kind_of([&] { is_morphism(r1, T1, T2, {{"(T,T;1)", 2}}); }) == ErrorKind::LevelMismatch);

  TermView rc(term_file("rc.json"));
  // the second section lives over S((c,c;1), T((c), (c,1))) = (c,1)
  CHECK(is_morphism(rc, Elt{"(c)", 1}, Elt{"(c,1)", 2}, {{"(c,c;1)", 2}, {"(c,1;1)", 2}}));
  CHECK_FALSE(is_morphism(rc, Elt{"(c)", 1}, Elt{"(c,1)", 2}, {{"(c,c;1)", 2}, {"(c,c;1)", 2}}));
}

TEST_CASE("projections and identities") {
  TermView r1(r1_description());
  CHECK(identity(r1, T1).sections == std::vector<TElt>{{"(T,T;1)", 2}});
  CHECK(identity(r1, T2).sections == std::vector<TElt>{{"(T,T,T;1)", 3}, {"(T,T,T;2)", 3}});
  CHECK(projection(r1, T2, 2).sections.empty());
  CHECK(projection(r1, T2, 2).dst == r1.pt());
  for (std::size_t i = 0; i <= 3; ++i) CHECK(is_morphism(r1, projection(r1, Elt{"(T,T,T)", 3}, i)));
  FinView plain(materialize(r1, 2, false));
  CHECK(kind_of([&] { identity(plain, T1); }) == ErrorKind::NotUnital);
}

TEST_CASE("pulling sections back") {
  TermView r1(r1_description());
  Morph s1{T1, T1, {{"(T,T;s1(1))", 2}}};
  CHECK(pull_section(r1, s1, TElt{"(T,T;s1(1))", 2}) == TElt{"(T,T;s1(1))", 2});
  TermView rc(term_file("rc.json"));
  Morph to_pt{rc.pt(), rc.pt(), {}};
  CHECK(pull_section(rc, to_pt, TElt{"(c;c)", 1}) == TElt{"(c;c)", 1});
  for (std::size_t n = 1; n <= 3; ++n)
    for (auto& s : rc.telements(n)) CHECK(pull_section(rc, identity(rc, rc.ft(rc.boundary(s))), s) == s);
}

TEST_CASE("composition") {
  TermView r1(r1_description());
  Morph s1{T1, T1, {{"(T,T;s1(1))", 2}}};
  CHECK(compose(r1, s1, s1) == s1);
  CHECK(compose(r1, identity(r1, T1), s1) == s1);
  CHECK(compose(r1, s1, identity(r1, T1)) == s1);
  CHECK(kind_of([&] { compose(r1, s1, identity(r1, T2)); }) == ErrorKind::CompositionMismatch);
}

TEST_CASE("pullbacks of objects") {
  TermView rc(term_file("rc.json"));
  for (std::size_t n = 1; n <= 3; ++n)
    for (auto& x : rc.elements(n)) {
      auto id = identity(rc, rc.ft(x));
      CHECK(pull_object(rc, id, x) == x);
      CHECK(q_morphism(rc, id, x) == identity(rc, x));
    }
  TermView r1(r1_description());
  Morph to_pt{r1.pt(), r1.pt(), {}};
  CHECK(pull_object(r1, to_pt, T1) == T1);
}

TEST_CASE("pullback is functorial and squares commute") {
  TermView rc(term_file("rc.json"));
  auto cat = build_category(rc, 2);
  std::size_t checked = 0, squares = 0;
  for (std::size_t xi = 0; xi < cat.objects.size(); ++xi) {
    const Elt& x = cat.objects[xi];
    if (x.level == 0) continue;
    auto fx = cat.object_index(rc.ft(x).id);
    for (auto& [key, fs] : cat.hom) {
      if (key.second != fx) continue;
      for (auto f : fs) {
        const Morph& fm = cat.morphisms[f];
        Elt fstar = pull_object(rc, fm, x);
        if (fstar.level > 2) continue;
        Morph q = q_morphism(rc, fm, x);
        CHECK(is_morphism(rc, q));
        CHECK(compose(rc, q, projection(rc, x, 1)) == compose(rc, projection(rc, fstar, 1), fm));
        ++squares;
        for (auto& [key2, gs] : cat.hom) {
          if (key2.second != key.first) continue;
          for (auto g : gs) {
            const Morph& gm = cat.morphisms[g];
            CHECK(pull_object(rc, compose(rc, gm, fm), x) == pull_object(rc, gm, fstar));
            ++checked;
          }
        }
      }
    }
  }
  CHECK(squares >= 8);
  CHECK(checked > 10);
}

TEST_CASE("category of the terminal system") {
  FinView t(make_terminal(7));
  auto cat = build_category(t, 3);
  CHECK(cat.objects.size() == 4);
  for (FinCat::Idx a = 0; a < 4; ++a)
    for (FinCat::Idx b = 0; b < 4; ++b) CHECK(cat.homs(a, b).size() == 1);
  auto check = check_category(cat);
  CHECK_FALSE(check.failure);
  CHECK(diff_tables(ub_of(cat).data(), materialize(t, 3).data()).empty());
}

TEST_CASE("category of R1 at cutoff 2") {
  TermView r1(r1_description());
  auto cat = build_category(r1, 2);
  auto t = cat.object_index("(T)");
  REQUIRE(t != FinCat::none);
  auto& hom = cat.homs(t, t);
  REQUIRE(hom.size() == 2);
  std::set<std::string> sections;
  for (auto f : hom) sections.insert(cat.morphisms[f].sections.at(0).id);
  CHECK(sections == std::set<std::string>{"(T,T;1)", "(T,T;s1(1))"});
  CHECK_FALSE(check_category(cat).failure);
  for (auto& f : cat.morphisms) {
    CHECK(is_morphism(r1, f));
    if (f.sections.empty()) continue;
    auto prefix = f.sections;
    prefix.pop_back();
    CHECK(is_morphism(r1, f.src, r1.ft(f.dst), prefix));
  }
  auto j = nlohmann::json::parse(fincat_to_json(cat));
  CHECK(j["objects"].size() == cat.objects.size());
}

TEST_CASE("round trip on R2 and Rf") {
  for (auto desc : {r2_description(), term_file("rf.json")}) {
    TermView v(desc);
    auto cat = build_category(v, 2);
    CHECK(diff_tables(ub_of(cat).data(), materialize(v, 2).data()).empty());
  }
}

TEST_CASE("build_category guards") {
  TermView r1(r1_description());
  CHECK(kind_of([&] { build_category(r1, 3, {10, true}); }) == ErrorKind::CutoffTooLarge);
  FinView plain(materialize(r1, 2, false));
  CHECK(kind_of([&] { build_category(plain, 2); }) == ErrorKind::NotUnital);
  FinView low(make_terminal(6));
  CHECK(kind_of([&] { build_category(low, 3); }) == ErrorKind::OutsideCutoff);
}
