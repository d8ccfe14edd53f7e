#pragma once

// Shared sampling helpers for the test suites: spec construction shorthands
// and random generators/words/orthogonal vectors.

#include <optional>
#include <random>

#include "qhg/words.hpp"

namespace qhg_test {

using namespace qhg;

inline SpecPtr quad_spec(const std::string& ring, const std::string& inv,
                         const std::string& lambda, std::vector<Elt> gens,
                         int n = 3) {
  auto R = RingCtx::make(ring, inv, lambda);
  return FormSpec::make(Kind::Quadratic, n, R,
                        close_form_parameter(R, gens));
}

// Hermitian spec with r = 1, a_1 = 0 and the full form parameter
// Lambda = R (lambda is expected to be -1 so that max = R).
inline SpecPtr herm_spec(const std::string& ring, const std::string& lambda,
                         int n) {
  auto R = RingCtx::make(ring, "trivial", lambda);
  return FormSpec::make(Kind::Hermitian, n, R, close_form_parameter(R, {1}),
                        {R->zero()});
}

template <class Rng>
ElemGen random_gen(const RingSc& S, const FormSpec& spec, Rng& rng) {
  int n = spec.n(), r = spec.r();
  uint64_t ord = S.R->order();
  for (;;) {
    try {
      if (!spec.hermitian()) {
        int pick = int(rng() % 3);
        int i = 1 + int(rng() % n), j = 1 + int(rng() % n);
        Elt a = Elt(rng() % ord);
        if (pick == 0) {
          if (i == j) continue;
          return make_gen(S, spec, GKind::QE, i, j, a);
        }
        if (pick == 1) return make_gen(S, spec, GKind::QR, i, j, a);
        return make_gen(S, spec, GKind::QL, i, j, a);
      }
      int pick = int(rng() % 5);
      if (pick == 0) {
        int i = r + 1 + int(rng() % (n - r)), j = 1 + int(rng() % n);
        if (i == j) continue;
        return make_gen(S, spec, GKind::HE, i, j, Elt(rng() % ord));
      }
      if (pick == 1) {
        int i = r + 1 + int(rng() % (n - r)),
            j = r + 1 + int(rng() % (n - r));
        return make_gen(S, spec, GKind::HR, i, j, Elt(rng() % ord));
      }
      if (pick == 2) {
        int i = 1 + int(rng() % n), j = 1 + int(rng() % n);
        return make_gen(S, spec, GKind::HL, i, j, Elt(rng() % ord));
      }
      std::vector<Elt> zeta;
      zeta.resize(size_t(r));
      for (auto& z : zeta) z = Elt(rng() % ord);
      return make_vec_gen(S, spec, pick == 3 ? GKind::HM : GKind::HRV,
                          r + 1 + int(rng() % (n - r)), zeta);
    } catch (const ArgNotInLambda&) {
      continue;
    }
  }
}

template <class Rng>
ElemWord random_word(const SpecPtr& spec, int len, Rng& rng) {
  RingSc S = spec->sc();
  ElemWord w;
  w.spec = spec;
  for (int k = 0; k < len; ++k) w.gens.push_back(random_gen(S, *spec, rng));
  return w;
}

// w = eval(eps) w1 with w1[n] = 0 and w1 Lambda-isotropic: exactly the
// vectors for which I + M(v, w) is a group element.
template <class Rng>
std::optional<VecT<RingSc>> sample_orthogonal_w(const RingSc& S,
                                                const SpecPtr& spec,
                                                const ElemWord& eps,
                                                Rng& rng) {
  int d = spec->dim(), n = spec->n();
  uint64_t ord = S.R->order();
  for (int tries = 0; tries < 200; ++tries) {
    VecT<RingSc> w1(d);
    for (auto& x : w1) x = Elt(rng() % ord);
    w1[n - 1] = S.zero();
    if (!is_lambda_isotropic(S, *spec, w1)) continue;
    return mat_vec(S, word_eval(S, eps), w1);
  }
  return std::nullopt;
}

// Random Lambda-isotropic unimodular vector (rejection sampling).
template <class Rng>
std::optional<VecT<RingSc>> sample_unimodular_isotropic(const RingSc& S,
                                                        const SpecPtr& spec,
                                                        Rng& rng) {
  int d = spec->dim();
  uint64_t ord = S.R->order();
  for (int tries = 0; tries < 4000; ++tries) {
    VecT<RingSc> v(d);
    for (auto& x : v) x = Elt(rng() % ord);
    if (!is_lambda_isotropic(S, *spec, v)) continue;
    if (!is_unimodular(*spec, v)) continue;
    return v;
  }
  return std::nullopt;
}

}  // namespace qhg_test
