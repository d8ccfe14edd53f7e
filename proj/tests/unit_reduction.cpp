#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "qhg/reduction.hpp"
#include "test_samplers.hpp"

using namespace qhg;
using namespace qhg_test;

TEST_CASE("unit_in_coset") {
  auto R6 = RingCtx::make("Z/6", "trivial", "5");
  SUBCASE("a = 1, I = 0") {
    Ideal Z = Ideal::from_gens(R6, {});
    CHECK(unit_in_coset(R6, 1, Z) == 1);
  }
  SUBCASE("a = 3, I = (2) over Z/6 gives 5") {
    Ideal I = Ideal::from_gens(R6, {2});
    Elt u = unit_in_coset(R6, 3, I);
    CHECK(R6->is_unit(u));
    CHECK(I.contains(R6->sub(u, 3)));
  }
  SUBCASE("a = 2, I = 0 over Z/4 is not unimodular") {
    auto R4 = RingCtx::make("Z/4", "trivial", "3");
    Ideal Z = Ideal::from_gens(R4, {});
    CHECK_THROWS_AS(unit_in_coset(R4, 2, Z), CosetNotUnimodular);
  }
}

TEST_CASE("idempotent column reduction over semisimple rings") {
  SUBCASE("(0,...,0,1) reduces trivially") {
    auto R = RingCtx::make("Z/2", "trivial", "1");
    auto cr = idempotent_column_reduce(R, {0, 0, 1});
    CHECK(cr.idempotent == R->one());
  }
  SUBCASE("(1,1) over Z/2") {
    auto R = RingCtx::make("Z/2", "trivial", "1");
    auto cr = idempotent_column_reduce(R, {1, 1});
    CHECK(cr.idempotent == 1);
  }
  SUBCASE("partial idempotent over Z/2 x Z/3") {
    auto R = RingCtx::make("Z/2 x Z/3", "trivial", "(1,2)");
    Elt a = R->parse_element("(1,0)");
    auto cr = idempotent_column_reduce(R, {R->zero(), a});
    CHECK(R->mul(cr.idempotent, cr.idempotent) == cr.idempotent);
    CHECK(Ideal::from_gens(R, {cr.idempotent}).elements() ==
          Ideal::from_gens(R, {a}).elements());
  }
  SUBCASE("random columns over semisimple rings") {
    std::mt19937_64 rng(5);
    for (auto& [pres, lam] : std::vector<std::pair<const char*, const char*>>{
             {"Z/5", "1"}, {"Z/6", "1"}, {"Z/2 x Z/3", "(1,1)"}}) {
      auto R = RingCtx::make(pres, "trivial", lam);
      for (int it = 0; it < 30; ++it) {
        int k = 2 + int(rng() % 3);
        std::vector<Elt> col(k);
        for (auto& c : col) c = Elt(rng() % R->order());
        auto cr = idempotent_column_reduce(R, col);
        // certification happens inside; spot-check the idempotent
        CHECK(R->mul(cr.idempotent, cr.idempotent) == cr.idempotent);
      }
    }
  }
}

TEST_CASE("hyperbolic pair word scales a pair of coordinates") {
  auto spec = quad_spec("Z/4", "trivial", "3", {});
  RingSc S = spec->sc();
  ElemWord w = hyperbolic_pair_word(spec, 2, 3, 3);
  Mat D = word_eval(S, w);
  CHECK(D.at(1, 1) == 3);
  CHECK(D.at(2, 2) == 3);  // 3^-1 = 3 mod 4
}

TEST_CASE("make_pivot_unit") {
  std::mt19937_64 rng(7);
  for (auto spec : {quad_spec("Z/4", "trivial", "3", {}),
                    quad_spec("Z/6", "trivial", "5", {1}),
                    quad_spec("Z/5", "trivial", "4", {1}),
                    herm_spec("Z/4", "3", 4)}) {
    RingSc S = spec->sc();
    int n = spec->n();
    {
      VecT<RingSc> v(spec->dim(), S.zero());
      v[n - 1] = S.one();
      ElemWord w = make_pivot_unit(spec, v);
      VecT<RingSc> out = mat_vec(S, word_eval(S, w), v);
      CHECK(S.R->is_unit(out[n - 1]));
    }
    int done = 0;
    for (int it = 0; it < 200 && done < 25; ++it) {
      VecT<RingSc> v(spec->dim());
      for (auto& x : v) x = Elt(rng() % S.R->order());
      if (!is_unimodular(*spec, v)) continue;
      done++;
      ElemWord w = make_pivot_unit(spec, v);
      VecT<RingSc> out = mat_vec(S, word_eval(S, w), v);
      CHECK(S.R->is_unit(out[n - 1]));
    }
    INFO("ring ", spec->ring()->describe());
    CHECK(done >= 15);
  }
}

TEST_CASE("reduce_unimodular_isotropic basics and errors") {
  auto spec = quad_spec("Z/4", "trivial", "3", {});
  RingSc S = spec->sc();
  {
    VecT<RingSc> v(spec->dim(), S.zero());
    v[spec->dim() - 1] = S.one();
    auto cert = reduce_unimodular_isotropic(spec, v);
    CHECK(mat_is_identity(S, word_eval(S, cert.word)));
  }
  VecT<RingSc> bad(spec->dim(), S.zero());
  bad[0] = 2;
  CHECK_THROWS_AS(reduce_unimodular_isotropic(spec, bad), NotUnimodular);
  std::mt19937_64 rng(9);
  bool seen = false;
  for (int it = 0; it < 400 && !seen; ++it) {
    VecT<RingSc> v(spec->dim());
    for (auto& x : v) x = Elt(rng() % 4);
    if (!is_unimodular(*spec, v)) continue;
    if (is_lambda_isotropic(S, *spec, v)) continue;
    CHECK_THROWS_AS(reduce_unimodular_isotropic(spec, v), NotIsotropic);
    seen = true;
  }
  CHECK(seen);
}

TEST_CASE("reduce_unimodular_isotropic random instances") {
  std::mt19937_64 rng(11);
  for (auto spec : {quad_spec("Z/4", "trivial", "3", {}),
                    quad_spec("Z/4", "trivial", "3", {1}),
                    quad_spec("Z/6", "trivial", "5", {1}),
                    quad_spec("Z/5", "trivial", "4", {}),
                    quad_spec("Z/3[t]/(t^2+1)", "t->-t", "1", {}),
                    quad_spec("Z/4", "trivial", "3", {}, 2),  // 2n = 4
                    herm_spec("Z/4", "3", 4), herm_spec("Z/6", "5", 4)}) {
    RingSc S = spec->sc();
    int done = 0;
    for (int it = 0; it < 600 && done < 20; ++it) {
      auto v = sample_unimodular_isotropic(S, spec, rng);
      if (!v) break;
      auto cert = reduce_unimodular_isotropic(spec, *v);
      VecT<RingSc> out = mat_vec(S, word_eval(S, cert.word), *v);
      for (int i = 0; i < spec->dim(); ++i)
        CHECK(out[i] == ((i == spec->dim() - 1) ? S.one() : S.zero()));
      done++;
    }
    INFO("ring ", spec->ring()->describe(), " n=", spec->n());
    CHECK(done >= 10);
  }
}

TEST_CASE("orbit closure: reducing eval(eps) e_2n always succeeds") {
  std::mt19937_64 rng(13);
  auto spec = quad_spec("Z/6", "trivial", "5", {1});
  RingSc S = spec->sc();
  for (int it = 0; it < 15; ++it) {
    ElemWord eps = random_word(spec, 1 + int(rng() % 5), rng);
    VecT<RingSc> e2n(spec->dim(), S.zero());
    e2n[spec->dim() - 1] = S.one();
    VecT<RingSc> v = mat_vec(S, word_eval(S, eps), e2n);
    CHECK_NOTHROW(reduce_unimodular_isotropic(spec, v));
  }
}

TEST_CASE("diagonal_reduce") {
  auto spec = quad_spec("Z/4", "trivial", "3", {1});
  RingSc S = spec->sc();
  Ideal J = jacobson_radical(spec->ring());
  SUBCASE("beta = I") {
    auto cert = diagonal_reduce(spec, mat_identity(S, spec->dim()), J);
    CHECK(cert.word.empty());
  }
  SUBCASE("beta = qe_12(2)") {
    ElemGen g = make_gen(S, *spec, GKind::QE, 1, 2, Elt(2));
    auto cert = diagonal_reduce(spec, gen_matrix(S, *spec, g), J);
    Mat D = mat_mul(S, gen_matrix(S, *spec, g), word_eval(S, cert.word));
    CHECK(mat_is_identity(S, D));
  }
  SUBCASE("rejects matrices not congruent to I") {
    ElemGen g = make_gen(S, *spec, GKind::QE, 1, 2, Elt(1));
    CHECK_THROWS_AS(diagonal_reduce(spec, gen_matrix(S, *spec, g), J),
                    NotCongruentToIdentity);
  }
  SUBCASE("random products of J-argument generators") {
    std::mt19937_64 rng(17);
    for (auto sp : {quad_spec("Z/4", "trivial", "3", {1}),
                    herm_spec("Z/4", "3", 4), herm_spec("Z/8", "7", 4)}) {
      RingSc Ss = sp->sc();
      Ideal Js = jacobson_radical(sp->ring());
      for (int it = 0; it < 12; ++it) {
        Mat beta = mat_identity(Ss, sp->dim());
        int len = 1 + int(rng() % 6);
        for (int k = 0; k < len; ++k) {
          for (int tries = 0; tries < 50; ++tries) {
            ElemGen g = random_gen(Ss, *sp, rng);
            bool all_in_j = true;
            if (kind_is_vector(g.kind)) {
              for (Elt z : g.zeta) all_in_j = all_in_j && Js.contains(z);
              all_in_j = all_in_j && Js.contains(g.zf);
            } else {
              all_in_j = Js.contains(g.arg);
            }
            if (!all_in_j) continue;
            beta = mat_mul(Ss, beta, gen_matrix(Ss, *sp, g));
            break;
          }
        }
        auto cert = diagonal_reduce(sp, beta, Js);
        Mat D = mat_mul(Ss, beta, word_eval(Ss, cert.word));
        for (int a = 0; a < sp->dim(); ++a) {
          CHECK(Js.contains(Ss.sub(D.at(a, a), Ss.one())));
          for (int b = 0; b < sp->dim(); ++b)
            if (a != b) CHECK(D.at(a, b) == Ss.zero());
        }
      }
    }
  }
}

TEST_CASE("elementary membership over semilocal rings") {
  SUBCASE("identity") {
    auto spec = quad_spec("Z/4", "trivial", "3", {1});
    RingSc S = spec->sc();
    auto cert = elementary_membership_semilocal(spec, mat_identity(S, 6));
    CHECK(cert.complete());
  }
  SUBCASE("round trip: random words decompose") {
    std::mt19937_64 rng(19);
    for (auto spec : {quad_spec("Z/4", "trivial", "3", {1}),
                      quad_spec("Z/6", "trivial", "5", {1}),
                      herm_spec("Z/4", "3", 4)}) {
      RingSc S = spec->sc();
      for (int it = 0; it < 8; ++it) {
        ElemWord w = random_word(spec, 1 + int(rng() % 8), rng);
        Mat sigma = word_eval(S, w);
        auto cert = elementary_membership_semilocal(spec, sigma);
        REQUIRE(cert.complete());
        CHECK(mat_eq(S, word_eval(S, cert.word), sigma));
      }
    }
  }
  SUBCASE("hyperbolic unit times elementary decomposes over full Lambda") {
    std::mt19937_64 rng(23);
    auto spec = herm_spec("Z/6", "5", 4);
    RingSc S = spec->sc();
    for (int it = 0; it < 6; ++it) {
      ElemWord w = random_word(spec, 1 + int(rng() % 4), rng);
      Elt u = 5;
      int f = spec->n();  // B-zone hyperbolic plane
      Mat h = mat_identity(S, spec->dim());
      h.at(f - 1, f - 1) = u;
      h.at(spec->n() + f - 1, spec->n() + f - 1) =
          S.R->inv(S.conj(u)).value();
      Mat sigma = mat_mul(S, word_eval(S, w), h);
      auto cert = elementary_membership_semilocal(spec, sigma);
      REQUIRE(cert.complete());
      CHECK(mat_eq(S, word_eval(S, cert.word), sigma));
    }
  }
}
