#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "qhg/poly.hpp"

using namespace qhg;

static RingPtr z4() { return RingCtx::make("Z/4", "trivial", "3"); }

TEST_CASE("poly arithmetic basics") {
  auto R = z4();
  Poly x = Poly::var(0, R->one());
  Poly p = padd(*R, pmul(*R, x, x), Poly::constant(1));  // X^2 + 1
  CHECK(p.degree(0) == 2);
  CHECK(p.constant_term() == 1);
  CHECK(poly_to_string(*R, p) == "1+1X^2");
  Poly q = poly_parse(*R, "1+1X^2");
  CHECK(p == q);
  // 3X + 1 at X = 1 -> 0
  Poly l = poly_parse(*R, "1+3X");
  std::array<const Poly*, 3> repl{nullptr, nullptr, nullptr};
  Poly one = Poly::constant(R->one());
  repl[0] = &one;
  CHECK(psubst(*R, l, repl).is_zero());
}

TEST_CASE("spec substitution rules") {
  auto R = z4();
  SUBCASE("X -> 2X on p = X") {
    Poly p = Poly::var(0, R->one());
    Poly two_x = Poly::term(2, 1);
    std::array<const Poly*, 3> repl{&two_x, nullptr, nullptr};
    CHECK(psubst(*R, p, repl) == Poly::term(2, 1));
  }
  SUBCASE("X -> X^3 on X^2+1 gives X^6+1") {
    Poly p = poly_parse(*R, "1+1X^2");
    Poly x3 = Poly::term(R->one(), 3);
    std::array<const Poly*, 3> repl{&x3, nullptr, nullptr};
    CHECK(psubst(*R, p, repl) == poly_parse(*R, "1+1X^6"));
  }
}

TEST_CASE("substitution is a ring homomorphism (random)") {
  auto R = RingCtx::make("Z/6", "trivial", "5");
  std::mt19937_64 rng(7);
  auto rnd_poly = [&](int deg) {
    Poly p;
    for (int i = 0; i <= deg; ++i)
      p.raw().push_back({Poly::Mono{{uint32_t(i), 0, 0}}, Elt(rng() % 6)});
    p.normalize(*R);
    return p;
  };
  for (int it = 0; it < 100; ++it) {
    Poly a = rnd_poly(3), b = rnd_poly(3), s = rnd_poly(2);
    std::array<const Poly*, 3> repl{&s, nullptr, nullptr};
    CHECK(psubst(*R, pmul(*R, a, b), repl) ==
          pmul(*R, psubst(*R, a, repl), psubst(*R, b, repl)));
    CHECK(psubst(*R, padd(*R, a, b), repl) ==
          padd(*R, psubst(*R, a, repl), psubst(*R, b, repl)));
  }
}

TEST_CASE("multivariate: X and T interact correctly") {
  auto R = z4();
  Poly x = Poly::var(0, R->one());
  Poly t = Poly::var(1, R->one());
  Poly xt = pmul(*R, x, t);
  CHECK(xt.degree(0) == 1);
  CHECK(xt.degree(1) == 1);
  // (X+T)^2 = X^2 + 2XT + T^2
  Poly s = padd(*R, x, t);
  Poly s2 = pmul(*R, s, s);
  CHECK(s2.coeff(2, 0) == 1);
  CHECK(s2.coeff(1, 1) == 2);
  CHECK(s2.coeff(0, 2) == 1);
  // substitute T = X: X^2 + 2X^2 + X^2 = 4X^2 = 0 mod 4
  std::array<const Poly*, 3> repl{nullptr, &x, nullptr};
  CHECK(psubst(*R, s2, repl).is_zero());
}

TEST_CASE("poly units") {
  auto R = z4();
  CHECK(poly_is_unit(*R, poly_parse(*R, "1+2X")));
  CHECK(!poly_is_unit(*R, poly_parse(*R, "1+1X")));
  CHECK(!poly_is_unit(*R, poly_parse(*R, "2")));
  Poly u = poly_parse(*R, "3+2X^2");
  Poly ui = poly_inv_unit(*R, u);
  CHECK(pmul(*R, u, ui) == Poly::constant(R->one()));
}

TEST_CASE("divisibility bookkeeping") {
  auto R = z4();
  Poly p = poly_parse(*R, "2X+1X^3");
  CHECK(p.divisible_by(0, 1));
  CHECK(!p.divisible_by(0, 2));
  CHECK(Poly().divisible_by(0, 5));
}
