#include "bsys/carrier_io.hpp"
#include "bsys/ops.hpp"
#include "doctest.h"

using namespace bsys;

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

TermBSysDescription load_desc(const char* name) {
  return std::get<TermBSysDescription>(load_file(std::string(BSYS_DATA_DIR "/") + name));
}

// Calls f(Y, j, X) for every valid iterated-weakening input with output level <= top.
template <class F>
void for_iter_inputs(const BSysView& v, std::size_t top, std::size_t max_j, F f) {
  for (std::size_t ly = 1; ly < top; ++ly)
    for (auto& y : v.elements(ly))
      for (std::size_t j = 0; j <= std::min(max_j, ly); ++j) {
        Elt g = ft_pow(v, y, j);
        for (std::size_t k = 1; g.level + k + j <= top; ++k)
          for (auto& x : v.fiber(g, k)) f(y, j, x);
      }
}

}  // namespace

TEST_CASE("weakening on the terminal system") {
  FinView t(make_terminal(4));
  for (std::size_t n = 1; n <= 3; ++n)
    for (std::size_t m = n; m + 1 <= 3; ++m) {
      Elt y = t.elements(n)[0], x = t.elements(m)[0];
      REQUIRE(weaken_defined(t, y, x));
      CHECK(weaken(t, y, x) == t.elements(m + 1)[0]);
    }
}

TEST_CASE("ft(T(Y, X)) = Y when l(X) = l(Y)") {
  TermView rc(load_desc("rc.json"));
  for (std::size_t n = 1; n <= 3; ++n)
    for (auto& y : rc.elements(n))
      for (auto& x : rc.fiber(rc.ft(y), 1)) CHECK(rc.ft(weaken(rc, y, x)) == y);
}

TEST_CASE("checked operations report their errors") {
  FinView t(make_terminal(2));
  CHECK(kind_of([&] { weaken(t, Elt{"e2", 2}, Elt{"e2", 2}); }) == ErrorKind::OutsideCutoff);
  CHECK(kind_of([&] { weaken(t, Elt{"zz", 1}, Elt{"e1", 1}); }) == ErrorKind::UnknownElement);
  CHECK(kind_of([&] { weaken(t, Elt{"e2", 2}, Elt{"e1", 1}); }) == ErrorKind::SideConditionViolated);
  CHECK(kind_of([&] { substitute(t, TElt{"t2", 2}, Elt{"e1", 1}); }) == ErrorKind::SideConditionViolated);

  TermView r1(r1_description());
  FinView plain(materialize(r1, 3, false));
  CHECK_FALSE(plain.unital());
  CHECK(kind_of([&] { unit(plain, Elt{"(T)", 1}); }) == ErrorKind::NotUnital);
  FinView with_unit(materialize(r1, 3));
  CHECK(unit(with_unit, Elt{"(T)", 1}) == TElt{"(T,T;1)", 2});
}

TEST_CASE("materialize agrees with the term backend") {
  TermView rf(load_desc("rf.json"));
  FinView m(materialize(rf, 3));
  for (std::size_t n = 1; n <= 3; ++n) {
    CHECK(m.elements(n) == rf.elements(n));
    CHECK(m.telements(n) == rf.telements(n));
  }
  for (std::size_t n = 1; n <= 2; ++n)
    for (auto& y : m.elements(n))
      for (auto& x : m.fiber(m.ft(y), 1)) CHECK(weaken(m, y, x) == weaken(rf, y, x));
}

TEST_CASE("iterated weakening") {
  TermView rc(load_desc("rc.json"));
  std::size_t checked = 0;
  for_iter_inputs(rc, 4, 3, [&](const Elt& y, std::size_t j, const Elt& x) {
    if (j == 0) CHECK(weaken_iter(rc, y, 0, x) == x);
    if (j == 1) CHECK(weaken_iter(rc, y, 1, x) == weaken(rc, y, x));
    Elt whole = weaken_iter(rc, y, j, x);
    CHECK(whole.level == x.level + j);
    for (std::size_t i = 0; i <= j; ++i)
      CHECK(weaken_iter(rc, y, i, weaken_iter(rc, ft_pow(rc, y, i), j - i, x)) == whole);
    ++checked;
  });
  CHECK(checked > 50);
}

TEST_CASE("iterated weakening split identity on R1") {
  TermView r1(r1_description());
  std::size_t checked = 0;
  for_iter_inputs(r1, 4, 2, [&](const Elt& y, std::size_t j, const Elt& x) {
    if (j != 2) return;
    CHECK(weaken_iter(r1, y, 2, x) == weaken_iter(r1, y, 1, weaken_iter(r1, r1.ft(y), 1, x)));
    ++checked;
  });
  CHECK(checked > 0);
}

TEST_CASE("iterated weakening commutes with ft") {
  TermView rc(load_desc("rc.json"));
  std::size_t checked = 0;
  for_iter_inputs(rc, 4, 3, [&](const Elt& y, std::size_t j, const Elt& x) {
    if (x.level < ft_pow(rc, y, j).level + 2) return;
    CHECK(weaken_iter(rc, y, j, rc.ft(x)) == rc.ft(weaken_iter(rc, y, j, x)));
    ++checked;
  });
  CHECK(checked > 20);
}

TEST_CASE("iterated judgement weakening") {
  TermView rc(load_desc("rc.json"));
  for (auto& s : rc.telements(2))
    for (auto& y : rc.fiber(rc.ft(rc.boundary(s)), 1)) {
      CHECK(weaken_judgement_iter(rc, y, 0, s) == s);
      CHECK(weaken_judgement_iter(rc, y, 1, s) == weaken_judgement(rc, y, s));
      CHECK(rc.boundary(weaken_judgement_iter(rc, y, 1, s)) == weaken_iter(rc, y, 1, rc.boundary(s)));
    }
}

TEST_CASE("slice-extended operations") {
  TermView rc(load_desc("rc.json"));
  for (auto& y : rc.elements(2)) CHECK(weaken_slice(rc, y, rc.ft(y)) == y);
  for (auto& s : rc.telements(2)) CHECK(substitute_slice(rc, s, rc.boundary(s)) == rc.ft(rc.boundary(s)));
}

TEST_CASE("operations recovered from the unit") {
  TermView r1(r1_description());
  Elt y{"(T,T)", 2};
  CHECK(derived_weaken(r1, y, r1.ft(y)) == y);
  TElt s{"(T,T;s1(1))", 2};
  CHECK(derived_substitute(r1, s, r1.boundary(s)) == r1.ft(r1.boundary(s)));

  TermView rf(load_desc("rf.json"));
  std::size_t checked = 0;
  for (std::size_t n = 1; n <= 3; ++n)
    for (auto& y : rf.elements(n))
      for (std::size_t k = 1; n + k <= 3; ++k)
        for (auto& x : rf.fiber(rf.ft(y), k)) {
          CHECK(derived_weaken(rf, y, x) == weaken(rf, y, x));
          ++checked;
        }
  for (std::size_t n = 1; n <= 2; ++n)
    for (auto& s : rf.telements(n))
      for (std::size_t k = 1; n + k <= 3; ++k)
        for (auto& x : rf.fiber(rf.boundary(s), k)) {
          CHECK(derived_substitute(rf, s, x) == substitute(rf, s, x));
          ++checked;
        }
  CHECK(checked > 100);
}
