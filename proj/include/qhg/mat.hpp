#pragma once

#include <cassert>
#include <sstream>
#include <vector>

#include "qhg/kernels.hpp"
#include "qhg/scalars.hpp"

namespace qhg {

struct DimensionMismatch : RingError {
  using RingError::RingError;
};

template <class Sc>
struct MatT {
  int d = 0;
  std::vector<typename Sc::V> a;
  MatT() = default;
  explicit MatT(int dim) : d(dim), a(size_t(dim) * dim) {}
  typename Sc::V& at(int i, int j) { return a[size_t(i) * d + j]; }
  const typename Sc::V& at(int i, int j) const { return a[size_t(i) * d + j]; }
};

template <class Sc>
using VecT = std::vector<typename Sc::V>;

using Mat = MatT<RingSc>;
using PolyMat = MatT<PolySc>;

template <class Sc>
MatT<Sc> mat_identity(const Sc& S, int d) {
  MatT<Sc> m(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m.at(i, j) = (i == j) ? S.one() : S.zero();
  return m;
}

template <class Sc>
MatT<Sc> mat_zero(const Sc& S, int d) {
  MatT<Sc> m(d);
  for (auto& v : m.a) v = S.zero();
  return m;
}

template <class Sc>
bool mat_eq(const Sc& S, const MatT<Sc>& A, const MatT<Sc>& B) {
  if (A.d != B.d) return false;
  for (size_t i = 0; i < A.a.size(); ++i)
    if (!S.eq(A.a[i], B.a[i])) return false;
  return true;
}

template <class Sc>
bool mat_is_identity(const Sc& S, const MatT<Sc>& A) {
  for (int i = 0; i < A.d; ++i)
    for (int j = 0; j < A.d; ++j)
      if (!S.eq(A.at(i, j), (i == j) ? S.one() : S.zero())) return false;
  return true;
}

template <class Sc>
MatT<Sc> mat_add(const Sc& S, const MatT<Sc>& A, const MatT<Sc>& B) {
  assert(A.d == B.d);
  MatT<Sc> C(A.d);
  for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = S.add(A.a[i], B.a[i]);
  return C;
}

template <class Sc>
MatT<Sc> mat_sub(const Sc& S, const MatT<Sc>& A, const MatT<Sc>& B) {
  assert(A.d == B.d);
  MatT<Sc> C(A.d);
  for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = S.sub(A.a[i], B.a[i]);
  return C;
}

// Reference product: straightforward triple loop over Sc operations. This is
// the ground-truth path the kernel-backed product is tested against.
template <class Sc>
MatT<Sc> mat_mul_ref(const Sc& S, const MatT<Sc>& A, const MatT<Sc>& B) {
  assert(A.d == B.d);
  int d = A.d;
  MatT<Sc> C = mat_zero(S, d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) {
      const auto& aik = A.at(i, k);
      if (S.is_zero(aik)) continue;
      for (int j = 0; j < d; ++j)
        C.at(i, j) = S.add(C.at(i, j), S.mul(aik, B.at(k, j)));
    }
  return C;
}

// Kernel-backed product over residue planes (ring scalars only).
Mat mat_mul_planes(const RingSc& S, const Mat& A, const Mat& B);

template <class Sc>
MatT<Sc> mat_mul(const Sc& S, const MatT<Sc>& A, const MatT<Sc>& B) {
  if constexpr (std::is_same_v<Sc, RingSc>) {
    return mat_mul_planes(S, A, B);
  } else {
    return mat_mul_ref(S, A, B);
  }
}

template <class Sc>
MatT<Sc> mat_conj_transpose(const Sc& S, const MatT<Sc>& A) {
  MatT<Sc> C(A.d);
  for (int i = 0; i < A.d; ++i)
    for (int j = 0; j < A.d; ++j) C.at(i, j) = S.conj(A.at(j, i));
  return C;
}

// Exact determinant by subset dynamic programming (division-free, valid
// over any commutative ring). d <= 20.
template <class Sc>
typename Sc::V mat_det(const Sc& S, const MatT<Sc>& A) {
  int d = A.d;
  if (d == 0) return S.one();
  assert(d <= 20);
  std::vector<typename Sc::V> f(size_t(1) << d, S.zero());
  f[0] = S.one();
  // iterate subsets in increasing popcount via plain order (subset value
  // always greater than its sub-subsets)
  for (uint32_t s = 1; s < (1u << d); ++s) {
    int k = __builtin_popcount(s);
    typename Sc::V acc = S.zero();
    int pos = 0;
    for (int j = 0; j < d; ++j) {
      if (!(s & (1u << j))) continue;
      typename Sc::V term = S.mul(A.at(k - 1, j), f[s & ~(1u << j)]);
      if (((k - 1) + pos) % 2 == 1) term = S.neg(term);
      acc = S.add(acc, term);
      pos++;
    }
    f[s] = acc;
  }
  return f[(1u << d) - 1];
}

// Adjugate-based inverse; empty optional when det is not a unit.
template <class Sc>
std::optional<MatT<Sc>> mat_inverse(const Sc& S, const MatT<Sc>& A) {
  int d = A.d;
  auto det = mat_det(S, A);
  auto dinv = S.inv(det);
  if (!dinv) return std::nullopt;
  MatT<Sc> adj(d);
  if (d == 1) {
    adj.at(0, 0) = S.one();
  } else {
    MatT<Sc> minor(d - 1);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        int mi = 0;
        for (int r = 0; r < d; ++r) {
          if (r == i) continue;
          int mj = 0;
          for (int c = 0; c < d; ++c) {
            if (c == j) continue;
            minor.at(mi, mj) = A.at(r, c);
            mj++;
          }
          mi++;
        }
        auto m = mat_det(S, minor);
        if ((i + j) % 2 == 1) m = S.neg(m);
        adj.at(j, i) = m;
      }
  }
  for (auto& v : adj.a) v = S.mul(*dinv, v);
  return adj;
}

template <class Sc>
VecT<Sc> mat_vec(const Sc& S, const MatT<Sc>& A, const VecT<Sc>& v) {
  assert(int(v.size()) == A.d);
  VecT<Sc> out(A.d, S.zero());
  for (int i = 0; i < A.d; ++i)
    for (int j = 0; j < A.d; ++j)
      out[i] = S.add(out[i], S.mul(A.at(i, j), v[j]));
  return out;
}

// column * row outer product
template <class Sc>
MatT<Sc> outer(const Sc& S, const VecT<Sc>& col, const VecT<Sc>& row) {
  assert(col.size() == row.size());
  MatT<Sc> C(int(col.size()));
  for (size_t i = 0; i < col.size(); ++i)
    for (size_t j = 0; j < row.size(); ++j)
      C.at(int(i), int(j)) = S.mul(col[i], row[j]);
  return C;
}

template <class Sc>
std::string mat_to_string(const Sc& S, const MatT<Sc>& A) {
  std::ostringstream os;
  for (int i = 0; i < A.d; ++i) {
    for (int j = 0; j < A.d; ++j) os << (j ? " " : "") << S.str(A.at(i, j));
    os << "\n";
  }
  return os.str();
}

// Lift a ring matrix into polynomial constants.
PolyMat mat_lift(const PolySc& PS, const Mat& A);
// Evaluate a polynomial matrix: X := x, T := t, U := u (constants).
Mat mat_eval(const RingSc& S, const PolyMat& A, Elt x, Elt t = 0, Elt u = 0);
// Entrywise substitution.
PolyMat mat_subst(const PolySc& PS, const PolyMat& A,
                  const std::array<const Poly*, 3>& repl);
// Map ring matrix entries through a function (e.g. localization map).
template <class F>
Mat mat_map(const RingSc& target, const Mat& A, F&& f) {
  Mat out(A.d);
  for (size_t i = 0; i < A.a.size(); ++i) out.a[i] = f(A.a[i]);
  return out;
}
template <class F>
PolyMat pmat_map(const PolySc& target, const PolyMat& A, F&& f) {
  PolyMat out(A.d);
  for (size_t i = 0; i < A.a.size(); ++i)
    out.a[i] = pmap(*target.R, A.a[i], f);
  return out;
}

}  // namespace qhg
