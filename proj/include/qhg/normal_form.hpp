#pragma once

#include "qhg/words.hpp"

namespace qhg {

struct NotCongruentToIdentity : RingError {
  using RingError::RingError;
};

// One factor of the Lemma-key1 normal form: a constant-argument conjugator
// and a core generator whose every argument vanishes at X = T = U = 0.
struct NormalFormFactor {
  PolyElemWord conj;   // constant in the split variable (may carry T)
  PolyElemGen core;
};

// Factorization w ~ prod conj_t . core_t . conj_t^-1 for a word with
// eval(w)|_{X=0} = I. The split variable is X (var 0); "constant" parts are
// the X = 0 specializations of each argument (polynomials in the other
// variables are allowed in conjugators). Certified by exact polynomial
// matrix evaluation.
std::vector<NormalFormFactor> congruence_normal_form(const PolySc& S,
                                                     const PolyElemWord& w);

// Re-evaluate a normal form (for certification and downstream assembly).
PolyMat normal_form_eval(const PolySc& S, const SpecPtr& spec,
                         const std::vector<NormalFormFactor>& nf);

}  // namespace qhg
