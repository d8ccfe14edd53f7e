#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qhg/ring.hpp"

namespace qhg {

// Sparse polynomial over a finite ring in up to three variables
// (X = var 0, T = var 1, U = var 2). Exact coefficients, no stored zeros,
// terms kept sorted by exponent for canonical equality.
class Poly {
 public:
  struct Mono {
    std::array<uint32_t, 3> e{0, 0, 0};
    bool operator<(const Mono& o) const { return e < o.e; }
    bool operator==(const Mono& o) const { return e == o.e; }
  };
  using Term = std::pair<Mono, Elt>;

  Poly() = default;

  static Poly constant(Elt c);
  static Poly var(int v, Elt coef_one);  // coef * X_v (pass ring->one())
  static Poly term(Elt c, uint32_t ex, uint32_t et = 0, uint32_t eu = 0);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && terms_[0].first == Mono{});
  }
  // coefficient of X^0 T^0 U^0 (ring zero element is Elt 0 by construction
  // of RingCtx canonical indexing: index 0 is always the zero element)
  Elt constant_term() const;
  Elt coeff(uint32_t ex, uint32_t et = 0, uint32_t eu = 0) const;
  uint32_t degree(int v) const;
  const std::vector<Term>& terms() const { return terms_; }
  bool operator==(const Poly& o) const { return terms_ == o.terms_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  // Every term divisible by X_v^k?
  bool divisible_by(int v, uint32_t k) const;

  // raw access for construction; normalize() sorts and drops zeros
  std::vector<Term>& raw() { return terms_; }
  void normalize(const RingCtx& R);

 private:
  std::vector<Term> terms_;
};

Poly padd(const RingCtx& R, const Poly& a, const Poly& b);
Poly psub(const RingCtx& R, const Poly& a, const Poly& b);
Poly pneg(const RingCtx& R, const Poly& a);
Poly pmul(const RingCtx& R, const Poly& a, const Poly& b);
Poly pscale(const RingCtx& R, Elt c, const Poly& a);
Poly pconj(const RingCtx& R, const Poly& a);  // involution on coefficients
Poly ppow(const RingCtx& R, const Poly& a, uint32_t k);

// Simultaneous substitution: vars with a non-null replacement are replaced.
Poly psubst(const RingCtx& R, const Poly& p,
            const std::array<const Poly*, 3>& repl);

// Map coefficients through a function (e.g. a localization map).
template <class F>
Poly pmap(const RingCtx& target, const Poly& p, F&& f) {
  Poly out;
  for (auto& t : p.terms()) out.raw().push_back({t.first, f(t.second)});
  out.normalize(target);
  return out;
}

// Units of R[X..]: constant term a unit, all other coefficients nilpotent.
bool poly_is_unit(const RingCtx& R, const Poly& p);
Poly poly_inv_unit(const RingCtx& R, const Poly& p);

// Univariate (X-only) canonical coefficient string "c0+c1X+c2X^2".
std::string poly_to_string(const RingCtx& R, const Poly& p);
Poly poly_parse(const RingCtx& R, const std::string& s);

}  // namespace qhg
