#include "bsys/towerdata.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bsys;
using namespace bsys::testing;

namespace {

// Every carrier function commutes with ft and with the boundary.
void check_commutation(const BData& bd) {
  const BCarrier& c = bd.carrier;
  auto check_fn = [&](const CarrierFn& f) {
    CHECK(f.b.at(f.src_base) == f.dst_base);
    for (auto& [x, y] : f.b) {
      if (x == f.src_base) continue;
      CHECK(c.B.level_of(y) == c.B.level_of(x) + c.B.level_of(f.dst_base) - c.B.level_of(f.src_base));
      CHECK(c.B.p(y) == f.b.at(c.B.p(x)));
    }
    for (auto& [r, s] : f.bt) CHECK(c.del.at(s) == f.b.at(c.del.at(r)));
  };
  for (auto& [y, f] : bd.weaken_fns) {
    CHECK(f.src_base == c.B.p(y));
    CHECK(f.dst_base == y);
    check_fn(f);
  }
  for (auto& [s, f] : bd.subst_fns) {
    CHECK(f.src_base == c.del.at(s));
    CHECK(f.dst_base == c.B.p(c.del.at(s)));
    check_fn(f);
  }
}

}  // namespace

TEST_CASE("terminal system") {
  FinView t(make_terminal(4));
  auto bd = to_bdata(t, 4);
  for (std::size_t n = 0; n <= 4; ++n) CHECK(bd.carrier.B.at(n).size() == 1);
  check_commutation(bd);
  for (auto& r : check_pentagons(bd, 4)) CHECK(r.status == LawStatus::Pass);
  for (std::size_t n = 0; n <= 4; ++n) {
    auto sl = slice_data(bd, bd.carrier.B.at(n)[0]);
    CHECK(sl.carrier.height() == 4 - n);
    for (std::size_t j = 0; j <= sl.carrier.height(); ++j) CHECK(sl.carrier.B.at(j).size() == 1);
    CHECK(all_passed(check_pentagons(sl, sl.cutoff)));
  }
}

TEST_CASE("round trip through carrier functions") {
  for (auto desc : {r1_description(), r2_description(), term_file("rf.json")}) {
    TermView v(desc);
    std::size_t n = desc.module == ModuleKind::Point ? 4 : 3;
    auto bd = to_bdata(v, n);
    check_commutation(bd);
    CHECK(diff_tables(from_bdata(bd).data(), materialize(v, n, false).data()).empty());
  }
}

TEST_CASE("to_bdata rejects a system violating B0.2") {
  auto d = materialize(TermView(term_file("rc.json")), 3).data();
  d.weaken[{"(c)", "(c,1)"}] = "(c,1,1)";
  FinView v{FinBSys(std::move(d))};
  REQUIRE_FALSE(check_law(v, "B0.2", 3).passed());
  try {
    to_bdata(v, 3);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvariantViolation);
  }
}

TEST_CASE("slicing") {
  TermView rc(term_file("rc.json"));
  auto bd = to_bdata(rc, 3);
  SUBCASE("at the base point") {
    auto sl = slice_data(bd, bd.carrier.pt);
    CHECK(sl == bd);
  }
  SUBCASE("iterated") {
    std::size_t checked = 0;
    for (std::size_t i = 1; i <= 2; ++i)
      for (auto& g : bd.carrier.B.at(i)) {
        auto once = slice_data(bd, g);
        for (std::size_t j = 1; j <= once.carrier.height(); ++j)
          for (auto& gd : once.carrier.B.at(j)) {
            CHECK(slice_data(once, gd) == slice_data(bd, gd));
            ++checked;
          }
      }
    CHECK(checked > 10);
  }
  SUBCASE("slices satisfy the pentagons") {
    for (auto& g : bd.carrier.B.at(1)) CHECK(all_passed(check_pentagons(slice_data(bd, g), 2)));
  }
  SUBCASE("unknown base") { CHECK_THROWS_AS(slice_data(bd, "nope"), Error); }
}

TEST_CASE("pentagons agree with the element-level laws on the mutant corpus") {
  auto corpus = load_corpus();
  std::size_t compared = 0;
  for (auto& m : corpus.mutants) {
    CAPTURE(m.family);
    FinView v{FinBSys(mutate(corpus.bases.at(m.base).data(), m))};
    std::size_t n = v.system().cutoff();
    BData bd;
    try {
      bd = to_bdata(v, n);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::InvariantViolation);
      continue;
    }
    for (auto& p : check_pentagons(bd, n)) {
      bool element_passed = true;
      for (auto& id : element_laws_of(p.id)) element_passed = element_passed && check_law(v, id, n).passed();
      CHECK(p.passed() == element_passed);
      ++compared;
    }
  }
  CHECK(compared >= 5 * 8);
}

TEST_CASE("element_laws_of") {
  CHECK(element_laws_of("TTax") == std::vector<std::string>{"TT.a", "TT.b"});
  CHECK(element_laws_of("STidax") == std::vector<std::string>{"STid.a", "STid.b"});
}
