#pragma once

#include <memory>
#include <string>

#include "qhg/ideal.hpp"
#include "qhg/mat.hpp"

namespace qhg {

enum class Kind { Quadratic, Hermitian };

struct MembershipFailure : RingError {
  using RingError::RingError;
};

// The data (kind, n, r, a_1..a_r, ring, Lambda) fixing one group
// GQ_2n(R, Lambda) or GH_2n(R, a_1..a_r, Lambda); immutable and shared.
class FormSpec;
using SpecPtr = std::shared_ptr<const FormSpec>;

class FormSpec {
 public:
  // Quadratic: n >= 2 (n = 2 serves the 2n = 4 transitivity branch).
  // Hermitian: r >= 1, a.size() == r, a[0] = 0, all a_i in min^lambda,
  //            n >= r + 3.
  static SpecPtr make(Kind kind, int n, RingPtr R, FormParameter Lambda,
                      std::vector<Elt> a = {});

  Kind kind() const { return kind_; }
  bool hermitian() const { return kind_ == Kind::Hermitian; }
  int n() const { return n_; }
  int r() const { return r_; }
  int dim() const { return 2 * n_; }
  const std::vector<Elt>& a() const { return a_; }
  const RingPtr& ring() const { return R_; }
  const FormParameter& Lambda() const { return Lambda_; }
  const Mat& psi() const { return psi_; }
  RingSc sc() const { return RingSc{R_}; }
  PolySc psc() const { return PolySc{R_}; }
  // 2n >= 6 and (hermitian) n > r: the paper's blanket assumption
  bool meets_blanket() const;
  // rho(i) = n + i for 1-based i in 1..n; all public APIs use 1-based
  // generator indices, matrices are 0-based internally.
  int rho(int i) const { return n_ + i; }

  // Same spec over the image ring (localization/quotient); Lambda and the
  // a_i are pushed through the map.
  SpecPtr map_scalars(const RingPtr& target) const;

  std::string describe() const;

 private:
  FormSpec() = default;
  Kind kind_ = Kind::Quadratic;
  int n_ = 0, r_ = 0;
  std::vector<Elt> a_;
  RingPtr R_;
  FormParameter Lambda_;
  Mat psi_;
};

// psi^q = [[0, lambda I],[I, 0]]; psi^h = [[A, lambda I],[I, 0]],
// A = diag(a_1..a_r) ⊥ I_{n-r}. Asserted invertible.
Mat build_form(const FormSpec& spec);

template <class Sc>
MatT<Sc> psi_as(const Sc& S, const FormSpec& spec) {
  if constexpr (std::is_same_v<Sc, RingSc>) {
    return spec.psi();
  } else {
    return mat_lift(S, spec.psi());
  }
}

struct MemberCheck {
  bool ok = false;
  std::string reason;  // empty when ok
};

// Lambda membership for the two scalar kinds.
inline bool in_lambda(const FormParameter& L, Elt v) { return L.contains(v); }
inline bool in_lambda(const FormParameter& L, const Poly& v) {
  for (auto& t : v.terms())
    if (!L.contains(t.second)) return false;
  return true;
}
inline bool in_lambda_bar(const FormParameter& L, Elt v) {
  return L.contains_bar(v);
}
inline bool in_lambda_bar(const FormParameter& L, const Poly& v) {
  for (auto& t : v.terms())
    if (!L.contains_bar(t.second)) return false;
  return true;
}

// sigma invertible, conj_transpose(sigma) psi sigma = psi, and (quadratic
// only) diagonal entries of conj(gamma)^t alpha and conj(delta)^t beta in
// Lambda. Throws DimensionMismatch on wrong size.
template <class Sc>
MemberCheck is_member(const Sc& S, const FormSpec& spec, const MatT<Sc>& M);

MemberCheck is_special_member(const FormSpec& spec, const Mat& M);

// Stabilization embedding G(2n) -> G(2n+2): inserts a hyperbolic pair fixed
// pointwise at positions n+1 and 2n+2. Requires is_member.
std::pair<SpecPtr, Mat> stabilize(const SpecPtr& spec, const Mat& M);

// Row vector conj(v)^t psi as a Vec (stored as a plain vector).
template <class Sc>
VecT<Sc> vtilde(const Sc& S, const FormSpec& spec, const VecT<Sc>& v);

// <v, w> = vtilde(v) . w
template <class Sc>
typename Sc::V inner(const Sc& S, const FormSpec& spec, const VecT<Sc>& v,
                     const VecT<Sc>& w);

// M(v,w) = v.vtilde(w) - conj(lambda).w.vtilde(v). Both arguments enter
// plainly (conjugation only inside the tildes): this is the reading under
// which M is equivariant, <v,w> = 0 is an invariant hypothesis, and
// I + M(e_2n, w) matches the ql/qe factor cells exactly.
template <class Sc>
MatT<Sc> m_matrix(const Sc& S, const FormSpec& spec, const VecT<Sc>& v,
                  const VecT<Sc>& w);

bool is_unimodular(const FormSpec& spec, const VecT<RingSc>& v);

template <class Sc>
bool is_isotropic(const Sc& S, const FormSpec& spec, const VecT<Sc>& v) {
  return S.is_zero(inner(S, spec, v, v));
}

// Bak-style quadratic value: Q(v) = conj(y)^t x (+ a zeta_f-type solution
// of the A-part for hermitian specs), where v = (x | y) in halves. The
// vectors the transitivity theorem acts on are those with Q(v) meeting
// Lambda ("isotropic vectors of Lambda"); Q(v) in Lambda implies <v,v> = 0.
Elt q_lower_value(const RingSc& S, const FormSpec& spec,
                  const VecT<RingSc>& v);
bool is_lambda_isotropic(const RingSc& S, const FormSpec& spec,
                         const VecT<RingSc>& v);

// --- implementation of templated operations ---

template <class Sc>
MemberCheck is_member(const Sc& S, const FormSpec& spec, const MatT<Sc>& M) {
  if (M.d != spec.dim())
    throw DimensionMismatch("matrix dim " + std::to_string(M.d) +
                            " != " + std::to_string(spec.dim()));
  MatT<Sc> psi = psi_as(S, spec);
  auto det = mat_det(S, M);
  if (!S.is_unit(det)) return {false, "determinant is not a unit"};
  MatT<Sc> lhs = mat_mul(S, mat_conj_transpose(S, M), mat_mul(S, psi, M));
  if (!mat_eq(S, lhs, psi)) {
    for (int i = 0; i < M.d; ++i)
      for (int j = 0; j < M.d; ++j)
        if (!S.eq(lhs.at(i, j), psi.at(i, j)))
          return {false, "form equation fails at (" + std::to_string(i + 1) +
                             "," + std::to_string(j + 1) + ")"};
  }
  if (!spec.hermitian()) {
    int n = spec.n();
    // diagonal entries of conj(gamma)^t alpha and conj(delta)^t beta
    for (int i = 0; i < n; ++i) {
      typename Sc::V ga = S.zero(), db = S.zero();
      for (int k = 0; k < n; ++k) {
        ga = S.add(ga, S.mul(S.conj(M.at(n + k, i)), M.at(k, i)));
        db = S.add(db, S.mul(S.conj(M.at(n + k, n + i)), M.at(k, n + i)));
      }
      if (!in_lambda(spec.Lambda(), ga))
        return {false,
                "diag(conj(gamma) alpha)[" + std::to_string(i + 1) +
                    "] outside Lambda"};
      if (!in_lambda(spec.Lambda(), db))
        return {false,
                "diag(conj(delta) beta)[" + std::to_string(i + 1) +
                    "] outside Lambda"};
    }
  }
  return {true, ""};
}

template <class Sc>
VecT<Sc> vtilde(const Sc& S, const FormSpec& spec, const VecT<Sc>& v) {
  if (int(v.size()) != spec.dim()) throw DimensionMismatch("vtilde size");
  MatT<Sc> psi = psi_as(S, spec);
  VecT<Sc> row(v.size(), S.zero());
  for (int j = 0; j < spec.dim(); ++j)
    for (int i = 0; i < spec.dim(); ++i)
      row[j] = S.add(row[j], S.mul(S.conj(v[i]), psi.at(i, j)));
  return row;
}

template <class Sc>
typename Sc::V inner(const Sc& S, const FormSpec& spec, const VecT<Sc>& v,
                     const VecT<Sc>& w) {
  VecT<Sc> vt = vtilde(S, spec, v);
  typename Sc::V acc = S.zero();
  for (size_t i = 0; i < vt.size(); ++i)
    acc = S.add(acc, S.mul(vt[i], w[i]));
  return acc;
}

template <class Sc>
MatT<Sc> m_matrix(const Sc& S, const FormSpec& spec, const VecT<Sc>& v,
                  const VecT<Sc>& w) {
  if (v.size() != w.size() || int(v.size()) != spec.dim())
    throw DimensionMismatch("m_matrix sizes");
  int d = spec.dim();
  VecT<Sc> wt = vtilde(S, spec, w);
  VecT<Sc> vt = vtilde(S, spec, v);
  MatT<Sc> first = outer(S, v, wt);
  MatT<Sc> second = outer(S, w, vt);
  typename Sc::V lb = S.from_elt(spec.ring()->lambda_bar());
  MatT<Sc> out(d);
  for (size_t i = 0; i < first.a.size(); ++i)
    out.a[i] = S.sub(first.a[i], S.mul(lb, second.a[i]));
  return out;
}

}  // namespace qhg
