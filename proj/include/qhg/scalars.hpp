#pragma once

#include <optional>
#include <string>

#include "qhg/poly.hpp"
#include "qhg/ring.hpp"

namespace qhg {

// Scalar contexts: the same matrix/word algebra runs over ring elements and
// over polynomials by swapping one of these in.

struct RingSc {
  RingPtr R;
  using V = Elt;
  V zero() const { return R->zero(); }
  V one() const { return R->one(); }
  V add(V a, V b) const { return R->add(a, b); }
  V sub(V a, V b) const { return R->sub(a, b); }
  V mul(V a, V b) const { return R->mul(a, b); }
  V neg(V a) const { return R->neg(a); }
  V conj(V a) const { return R->conj(a); }
  bool is_zero(V a) const { return a == R->zero(); }
  bool eq(V a, V b) const { return a == b; }
  bool is_unit(V a) const { return R->is_unit(a); }
  std::optional<V> inv(V a) const { return R->inv(a); }
  V from_elt(Elt e) const { return e; }
  std::string str(V a) const { return R->to_string(a); }
};

struct PolySc {
  RingPtr R;
  using V = Poly;
  V zero() const { return Poly(); }
  V one() const { return Poly::constant(R->one()); }
  V add(const V& a, const V& b) const { return padd(*R, a, b); }
  V sub(const V& a, const V& b) const { return psub(*R, a, b); }
  V mul(const V& a, const V& b) const { return pmul(*R, a, b); }
  V neg(const V& a) const { return pneg(*R, a); }
  V conj(const V& a) const { return pconj(*R, a); }
  bool is_zero(const V& a) const { return a.is_zero(); }
  bool eq(const V& a, const V& b) const { return a == b; }
  bool is_unit(const V& a) const { return poly_is_unit(*R, a); }
  std::optional<V> inv(const V& a) const {
    if (!poly_is_unit(*R, a)) return std::nullopt;
    return poly_inv_unit(*R, a);
  }
  V from_elt(Elt e) const { return Poly::constant(e); }
  std::string str(const V& a) const { return poly_to_string(*R, a); }
};

}  // namespace qhg
