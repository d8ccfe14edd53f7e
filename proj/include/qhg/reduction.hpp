#pragma once

#include "qhg/ideal.hpp"
#include "qhg/key5.hpp"
#include "qhg/words.hpp"

namespace qhg {

struct CosetNotUnimodular : RingError {
  using RingError::RingError;
};
struct LengthTooShort : RingError {
  using RingError::RingError;
};
struct NotUnimodular : RingError {
  using RingError::RingError;
};
struct NotIsotropic : RingError {
  using RingError::RingError;
};
struct UnsupportedSize : RingError {
  using RingError::RingError;
};
struct NotCongruentToIdentity : RingError {
  using RingError::RingError;
};
struct IdealNotInRadical : RingError {
  using RingError::RingError;
};

// GL_k elementary transvection x_i += a x_j (1-based, i != j), used by the
// semisimple column reduction; embedded into the form group by callers.
struct LinGen {
  int i = 0, j = 0;
  Elt a = 0;
};
using LinWord = std::vector<LinGen>;

Mat lin_word_eval(const RingSc& S, const LinWord& w, int k);

// Unit in the coset a + I, constructed through the idempotent decomposition
// of R modulo its radical. Requires Ra + I = R.
Elt unit_in_coset(const RingPtr& R, Elt a, const Ideal& I);

// Semisimple column reduction: eps * col = (0,...,0,e)^t with e idempotent
// generating sum R col_i. R must have zero radical.
struct ColumnReduction {
  LinWord word;
  Elt idempotent;
};
ColumnReduction idempotent_column_reduce(const RingPtr& R,
                                         const std::vector<Elt>& col);

enum class Claim { VectorToE2n, BetaThetaDiagonal, SigmaDecomposed };

struct ReductionCertificate {
  ElemWord word;
  Claim claim{};
  std::optional<Mat> residual;
  std::vector<std::string> trace;
  bool complete() const { return !residual.has_value(); }
};

// Word making coordinate n of eval(word) * v a unit (Lemma swan7 pipeline:
// reduce over R/J, grow the pivot ideal by catalog moves, lift).
ElemWord make_pivot_unit(const SpecPtr& spec, const VecT<RingSc>& v);

// Full transitivity reduction: eval(word) * v = e_2n exactly. v must be
// unimodular and Lambda-isotropic.
ReductionCertificate reduce_unimodular_isotropic(const SpecPtr& spec,
                                                 const VecT<RingSc>& v);

// Lemma sol3a sweep: word theta with beta * eval(theta) diagonal, every
// factor and every d_i congruent to the identity modulo I (I inside J(R)).
ReductionCertificate diagonal_reduce(const SpecPtr& spec, const Mat& beta,
                                     const Ideal& I);

// Peeling factorization of sigma in S into an elementary word; incomplete
// factorizations return the residual block instead of failing.
ReductionCertificate elementary_membership_semilocal(const SpecPtr& spec,
                                                     const Mat& sigma);

// Whitehead word for diag(u @ a, u^-1 @ b, conj-compensated) on a top pair
// a < b <= n, as six E-kind generators; verified at construction.
ElemWord hyperbolic_pair_word(const SpecPtr& spec, int a, int b, Elt u);

}  // namespace qhg
