#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <set>

#include "doctest.h"
#include "qhg/ideal.hpp"
#include "qhg/ring.hpp"

using namespace qhg;

// Independent oracle for (Z/3)[t]/(t^2+1) with t -> -t: elements are pairs
// (a,b) meaning a + b t, all arithmetic spelled out by hand.
namespace oracle_f9 {
struct E {
  int a, b;
  bool operator<(const E& o) const { return std::tie(a, b) < std::tie(o.a, o.b); }
  bool operator==(const E& o) const { return a == o.a && b == o.b; }
};
E add(E x, E y) { return {(x.a + y.a) % 3, (x.b + y.b) % 3}; }
E neg(E x) { return {(3 - x.a) % 3, (3 - x.b) % 3}; }
E mul(E x, E y) {
  // (a+bt)(c+dt) = ac + bd t^2 + (ad+bc) t, t^2 = -1 = 2
  int a = (x.a * y.a + 2 * x.b * y.b) % 3;
  int b = (x.a * y.b + x.b * y.a) % 3;
  return {a, b};
}
E conj(E x) { return {x.a, (3 - x.b) % 3}; }
}  // namespace oracle_f9

static RingPtr z4() { return RingCtx::make("Z/4", "trivial", "3"); }

TEST_CASE("presentation parsing and basic arithmetic in Z/4") {
  auto R = z4();
  CHECK(R->order() == 4);
  CHECK(R->one() == 1);
  CHECK(R->add(3, 3) == 2);
  CHECK(R->mul(3, 3) == 1);
  CHECK(R->neg(1) == 3);
  CHECK(R->to_string(2) == "2");
  CHECK(R->parse_element("-1") == 3);
  CHECK(R->is_unit(3));
  CHECK(!R->is_unit(2));
  CHECK(R->inv(3).value() == 3);
  CHECK(R->is_nilpotent(2));
}

TEST_CASE("invalid presentations rejected") {
  CHECK_THROWS_AS(RingCtx::make("Z/1", "trivial", "0"), PresentationInvalid);
  CHECK_THROWS_AS(RingCtx::make("Q/4", "trivial", "1"), PresentationInvalid);
  CHECK_THROWS_AS(RingCtx::make("Z/3[t]/(2t^2+1)", "trivial", "1"),
                  PresentationInvalid);
  // lambda = 2 over Z/4 is not a symmetry: 2*2 = 0 != 1
  CHECK_THROWS_AS(RingCtx::make("Z/4", "trivial", "2"), PresentationInvalid);
}

TEST_CASE("validate_ctx passes for shipped rings") {
  for (auto& [pres, inv, lam] :
       std::vector<std::tuple<std::string, std::string, std::string>>{
           {"Z/4", "trivial", "3"},
           {"Z/4", "trivial", "1"},
           {"Z/2", "trivial", "1"},
           {"Z/5", "trivial", "4"},
           {"Z/6", "trivial", "5"},
           {"Z/9", "trivial", "8"},
           {"Z/3[t]/(t^2+1)", "t->-t", "1"},
           {"Z/3[t]/(t^2+0)", "trivial", "1"},
           {"Z/2 x Z/3", "trivial", "(1,2)"},
       }) {
    auto R = RingCtx::make(pres, inv, lam);
    auto rep = validate_ctx(*R);
    INFO(pres, " -> ", rep.to_string());
    CHECK(rep.pass);
  }
}

TEST_CASE("F9 arithmetic against the independent pair oracle") {
  auto R = RingCtx::make("Z/3[t]/(t^2+1)", "t->-t", "1");
  REQUIRE(R->order() == 9);
  auto enc = [&](oracle_f9::E e) {
    return R->parse_element(std::to_string(e.a) + "+" + std::to_string(e.b) +
                            "t");
  };
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) {
          oracle_f9::E x{a, b}, y{c, d};
          CHECK(R->add(enc(x), enc(y)) == enc(oracle_f9::add(x, y)));
          CHECK(R->mul(enc(x), enc(y)) == enc(oracle_f9::mul(x, y)));
          CHECK(R->conj(enc(x)) == enc(oracle_f9::conj(x)));
        }
}

TEST_CASE("min_lambda / max_lambda examples") {
  SUBCASE("Z/4 trivial lambda=1: min={0}, max={0,2}") {
    auto R = RingCtx::make("Z/4", "trivial", "1");
    CHECK(min_lambda(*R) == std::vector<Elt>{0});
    CHECK(max_lambda(*R) == std::vector<Elt>{0, 2});
  }
  SUBCASE("Z/4 trivial lambda=3: min={0,2}, max=all") {
    auto R = z4();
    CHECK(min_lambda(*R) == std::vector<Elt>{0, 2});
    CHECK(max_lambda(*R) == std::vector<Elt>{0, 1, 2, 3});
  }
  SUBCASE("Z/2: max = {0,1}") {
    auto R = RingCtx::make("Z/2", "trivial", "1");
    CHECK(max_lambda(*R) == std::vector<Elt>{0, 1});
  }
  SUBCASE("F9 with t->-t, lambda=1: min = {0, t, 2t}") {
    auto R = RingCtx::make("Z/3[t]/(t^2+1)", "t->-t", "1");
    // oracle: a - conj(a) = (a+bt) - (a-bt) = 2bt -> {0, t, 2t}
    std::set<Elt> expect{R->parse_element("0"), R->parse_element("1t"),
                         R->parse_element("2t")};
    auto got = min_lambda(*R);
    CHECK(std::set<Elt>(got.begin(), got.end()) == expect);
  }
}

TEST_CASE("close_form_parameter") {
  auto R = z4();
  SUBCASE("empty gens -> min") {
    auto L = close_form_parameter(R, {});
    CHECK(L.elements() == std::vector<Elt>{0, 2});
  }
  SUBCASE("gens={1} -> whole ring (symplectic type)") {
    auto L = close_form_parameter(R, {1});
    CHECK(L.elements() == std::vector<Elt>{0, 1, 2, 3});
  }
  SUBCASE("orthogonal type over lambda=1") {
    auto R1 = RingCtx::make("Z/4", "trivial", "1");
    auto L = close_form_parameter(R1, {});
    CHECK(L.elements() == std::vector<Elt>{0});
  }
  SUBCASE("generator outside max rejected") {
    auto R1 = RingCtx::make("Z/4", "trivial", "1");
    CHECK_THROWS_AS(close_form_parameter(R1, {1}), GeneratorOutOfBounds);
  }
  SUBCASE("idempotent: closing a closed Lambda returns it") {
    auto L = close_form_parameter(R, {1});
    auto L2 = close_form_parameter(R, L.elements());
    CHECK(L.elements() == L2.elements());
  }
}

TEST_CASE("jacobson radical") {
  CHECK(jacobson_radical(z4()).elements() == std::vector<Elt>{0, 2});
  auto R6 = RingCtx::make("Z/6", "trivial", "5");
  CHECK(jacobson_radical(R6).elements() == std::vector<Elt>{0});
  auto Rt = RingCtx::make("Z/3[t]/(t^2+0)", "trivial", "1");
  auto J = jacobson_radical(Rt);
  std::set<Elt> expect{Rt->parse_element("0"), Rt->parse_element("1t"),
                       Rt->parse_element("2t")};
  CHECK(std::set<Elt>(J.elements().begin(), J.elements().end()) == expect);
}

TEST_CASE("maximal ideals and localization") {
  SUBCASE("Z/6 has (2) and (3)") {
    auto R = RingCtx::make("Z/6", "trivial", "5");
    auto ms = maximal_ideals(R);
    REQUIRE(ms.size() == 2);
    std::set<std::set<Elt>> got;
    for (auto& m : ms)
      got.insert(
          std::set<Elt>(m.ideal.elements().begin(), m.ideal.elements().end()));
    std::set<std::set<Elt>> expect{{0, 2, 4}, {0, 3}};
    CHECK(got == expect);
  }
  SUBCASE("Z/4 is local") {
    auto ms = maximal_ideals(z4());
    REQUIRE(ms.size() == 1);
    CHECK(ms[0].ideal.elements() == std::vector<Elt>{0, 2});
  }
  SUBCASE("Z/2 x Z/2 has two maximal ideals") {
    auto R = RingCtx::make("Z/2 x Z/2", "trivial", "(1,1)");
    CHECK(maximal_ideals(R).size() == 2);
  }
  SUBCASE("localize Z/6 at s=2 gives Z/3") {
    auto R = RingCtx::make("Z/6", "trivial", "5");
    auto loc = localize_at(R, 2);
    CHECK(loc.ring->order() == 3);
    CHECK(loc.ring->is_unit(loc.ring->canon(2)));
    // map is a ring hom commuting with involution (full check, tiny ring)
    for (Elt x = 0; x < 6; ++x)
      for (Elt y = 0; y < 6; ++y) {
        CHECK(loc.ring->canon(R->mul(x, y)) ==
              loc.ring->mul(loc.ring->canon(x), loc.ring->canon(y)));
        CHECK(loc.ring->canon(R->add(x, y)) ==
              loc.ring->add(loc.ring->canon(x), loc.ring->canon(y)));
      }
  }
  SUBCASE("localize at a unit is the identity") {
    auto R = z4();
    auto loc = localize_at(R, 1);
    CHECK(loc.ring->order() == 4);
  }
  SUBCASE("localize at nilpotent throws") {
    CHECK_THROWS_AS(localize_at(z4(), 2), NilpotentElement);
  }
  SUBCASE("localize Z/12 at the 2-part maximal ideal gives Z/4") {
    auto R = RingCtx::make("Z/12", "trivial", "11");
    auto ms = maximal_ideals(R);
    bool found4 = false, found3 = false;
    for (auto& m : ms) {
      auto loc = localize_at_maximal(R, m);
      if (loc.ring->order() == 4) found4 = true;
      if (loc.ring->order() == 3) found3 = true;
    }
    CHECK(found4);
    CHECK(found3);
  }
}

TEST_CASE("radical equals intersection of maximal ideals") {
  for (auto pres : {"Z/4", "Z/6", "Z/12", "Z/9"}) {
    auto R = RingCtx::make(pres, "trivial", "1");
    auto J = jacobson_radical(R);
    auto ms = maximal_ideals(R);
    for (Elt x = 0; x < R->order(); ++x) {
      bool in_all = true;
      for (auto& m : ms)
        if (!m.ideal.contains(x)) in_all = false;
      CHECK(J.contains(x) == in_all);
    }
  }
}

TEST_CASE("product of local factors reconstructs the ring") {
  auto R = RingCtx::make("Z/12", "trivial", "1");
  auto ms = maximal_ideals(R);
  std::vector<Localization> locs;
  for (auto& m : ms) locs.push_back(localize_at_maximal(R, m));
  std::set<std::vector<Elt>> images;
  for (Elt x = 0; x < R->order(); ++x) {
    std::vector<Elt> img;
    for (auto& l : locs) img.push_back(l.ring->canon(x));
    images.insert(img);
  }
  CHECK(images.size() == R->order());  // injective => bijective by counting
}

TEST_CASE("ideal witnesses reconstruct membership") {
  auto R = RingCtx::make("Z/6", "trivial", "5");
  Ideal I = Ideal::from_gens(R, {2, 3});
  CHECK(I.is_whole_ring());
  for (Elt x = 0; x < 6; ++x) {
    auto w = I.witness(x);
    REQUIRE(w.has_value());
    Elt acc = R->zero();
    for (size_t i = 0; i < w->size(); ++i)
      acc = R->add(acc, R->mul((*w)[i], I.generators()[i]));
    CHECK(acc == x);
  }
}

TEST_CASE("min/max closed under a -> conj(x) a x (order <= 256 full)") {
  for (auto& [pres, inv, lam] :
       std::vector<std::tuple<std::string, std::string, std::string>>{
           {"Z/4", "trivial", "3"},
           {"Z/9", "trivial", "8"},
           {"Z/3[t]/(t^2+1)", "t->-t", "2"},
       }) {
    auto R = RingCtx::make(pres, inv, lam);
    for (auto& set : {min_lambda(*R), max_lambda(*R)}) {
      std::set<Elt> S(set.begin(), set.end());
      for (Elt a : set)
        for (Elt x = 0; x < R->order(); ++x)
          CHECK(S.count(R->mul(R->mul(R->conj(x), a), x)));
    }
  }
}
