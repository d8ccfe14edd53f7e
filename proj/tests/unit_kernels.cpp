#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "qhg/ideal.hpp"
#include "qhg/kernels.hpp"
#include "qhg/mat.hpp"

using namespace qhg;
namespace K = qhg::kernels;

TEST_CASE("avx2 matmul matches scalar reference") {
  if (!K::avx2_supported()) return;  // nothing to compare on this host
  std::mt19937_64 rng(11);
  for (uint16_t mod : {2, 3, 4, 5, 6, 8, 9, 12, 4096}) {
    for (int n : {1, 2, 3, 6, 8, 13, 16, 33}) {
      std::vector<uint16_t> A(n * n), B(n * n), C1(n * n), C2(n * n);
      for (auto& v : A) v = uint16_t(rng() % mod);
      for (auto& v : B) v = uint16_t(rng() % mod);
      K::matmul_mod_scalar(C1.data(), A.data(), B.data(), n, mod);
      K::matmul_mod_avx2(C2.data(), A.data(), B.data(), n, mod);
      CHECK(C1 == C2);
    }
  }
}

TEST_CASE("avx2 addscaled matches scalar reference") {
  if (!K::avx2_supported()) return;
  std::mt19937_64 rng(13);
  for (uint16_t mod : {2, 7, 9, 4096}) {
    for (int len : {1, 7, 8, 9, 64, 100}) {
      std::vector<uint16_t> C1(len), C2(len), D(len);
      for (int i = 0; i < len; ++i) {
        C1[i] = uint16_t(rng() % mod);
        D[i] = uint16_t(rng() % mod);
      }
      C2 = C1;
      uint16_t s = uint16_t(rng() % mod);
      K::addscaled_mod_scalar(C1.data(), D.data(), s, len, mod);
      K::addscaled_mod_avx2(C2.data(), D.data(), s, len, mod);
      CHECK(C1 == C2);
    }
  }
}

TEST_CASE("plane-decomposed matrix product matches the ring reference") {
  std::mt19937_64 rng(17);
  for (auto& [pres, inv, lam] :
       std::vector<std::tuple<std::string, std::string, std::string>>{
           {"Z/4", "trivial", "3"},
           {"Z/6", "trivial", "5"},
           {"Z/3[t]/(t^2+1)", "t->-t", "1"},
           {"Z/2 x Z/9", "trivial", "(1,8)"},
       }) {
    RingSc S{RingCtx::make(pres, inv, lam)};
    for (int trial = 0; trial < 20; ++trial) {
      int d = 1 + int(rng() % 9);
      Mat A(d), B(d);
      for (auto& v : A.a) v = Elt(rng() % S.R->order());
      for (auto& v : B.a) v = Elt(rng() % S.R->order());
      Mat ref = mat_mul_ref(S, A, B);
      Mat fast = mat_mul_planes(S, A, B);
      CHECK(mat_eq(S, ref, fast));
      K::force_scalar(true);
      Mat fast_scalar = mat_mul_planes(S, A, B);
      K::force_scalar(false);
      CHECK(mat_eq(S, ref, fast_scalar));
    }
  }
}

TEST_CASE("plane product matches reference over quotient rings") {
  std::mt19937_64 rng(19);
  auto R = RingCtx::make("Z/12", "trivial", "11");
  auto loc = localize_at(R, 3);  // Z/3 side
  RingSc S{loc.ring};
  for (int trial = 0; trial < 20; ++trial) {
    int d = 1 + int(rng() % 7);
    Mat A(d), B(d);
    for (auto& v : A.a) v = Elt(rng() % S.R->order());
    for (auto& v : B.a) v = Elt(rng() % S.R->order());
    CHECK(mat_eq(S, mat_mul_ref(S, A, B), mat_mul_planes(S, A, B)));
  }
}

TEST_CASE("determinant and inverse") {
  RingSc S{RingCtx::make("Z/6", "trivial", "5")};
  std::mt19937_64 rng(23);
  int found = 0;
  for (int trial = 0; trial < 300 && found < 20; ++trial) {
    int d = 2 + int(rng() % 4);
    Mat A(d);
    for (auto& v : A.a) v = Elt(rng() % 6);
    auto inv = mat_inverse(S, A);
    if (!inv) continue;
    found++;
    CHECK(mat_is_identity(S, mat_mul(S, A, *inv)));
    CHECK(mat_is_identity(S, mat_mul(S, *inv, A)));
  }
  CHECK(found >= 10);
}

TEST_CASE("det is multiplicative (sampled)") {
  RingSc S{RingCtx::make("Z/9", "trivial", "8")};
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    int d = 2 + int(rng() % 3);
    Mat A(d), B(d);
    for (auto& v : A.a) v = Elt(rng() % 9);
    for (auto& v : B.a) v = Elt(rng() % 9);
    CHECK(mat_det(S, mat_mul(S, A, B)) ==
          S.mul(mat_det(S, A), mat_det(S, B)));
  }
}
