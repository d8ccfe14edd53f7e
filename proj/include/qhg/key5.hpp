#pragma once

#include "qhg/words.hpp"

namespace qhg {

struct NotOrthogonal : RingError {
  using RingError::RingError;
};
struct ClosingArgNotInLambda : RingError {
  using RingError::RingError;
};

// Short word transporting e_2n to the given basis vector (1-based index in
// 1..2n). Verified by evaluation at construction.
template <class Sc>
WordT<Sc> transport_word(const Sc& S, const SpecPtr& spec, int target);

// Generator as a rank-one M-dyad: g = I + M(e_b1, coef * e_b2).
struct GenDyad {
  int b1 = 0, b2 = 0;  // 1-based basis indices
  // coefficient as a function of the generator argument: coef = factor*arg
  // or factor*conj(arg) (conj flag), solved and verified mechanically
  Elt factor = 0;
  bool conj_arg = false;
};
// Empty when the generator is not a single M-dyad (vector kinds with
// nonzero a-part, diagonal kinds whose solve fails).
std::optional<GenDyad> gen_as_dyad(const RingSc& S, const FormSpec& spec,
                                   GKind kind, int i, int j);

// The Lemma-key5 word: W with eval(W) = I + M(v, w) exactly, where
// v = eval(eps) e_2n and <v,w> = 0, built as eps . (column/row factors in
// w1 = eval(eps)^-1 w coordinates, closing ql_nn/hl_nn) . eps^-1.
template <class Sc>
WordT<Sc> key5_decompose(const Sc& S, const WordT<Sc>& eps,
                         const VecT<Sc>& w);

}  // namespace qhg
