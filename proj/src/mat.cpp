#include "qhg/mat.hpp"

namespace qhg {

Mat mat_mul_planes(const RingSc& S, const Mat& A, const Mat& B) {
  assert(A.d == B.d);
  const RingCtx& R = *S.R;
  const RingCtx& RT = R.is_quotient() ? *R.root() : R;
  int d = A.d;
  int P = RT.plane_count();
  size_t dd = size_t(d) * d;
  std::vector<std::vector<uint16_t>> Ap(P, std::vector<uint16_t>(dd)),
      Bp(P, std::vector<uint16_t>(dd)), Cp(P, std::vector<uint16_t>(dd));
  std::vector<uint16_t> digits(P);
  for (size_t idx = 0; idx < dd; ++idx) {
    Elt ra = R.is_quotient() ? R.lift(A.a[idx]) : A.a[idx];
    RT.decode_planes(ra, digits.data());
    for (int p = 0; p < P; ++p) Ap[p][idx] = digits[p];
    Elt rb = R.is_quotient() ? R.lift(B.a[idx]) : B.a[idx];
    RT.decode_planes(rb, digits.data());
    for (int p = 0; p < P; ++p) Bp[p][idx] = digits[p];
  }
  std::vector<uint16_t> t1(dd), t2(dd);
  int p = 0;
  for (const RingFactor& f : RT.factors()) {
    uint16_t m = uint16_t(f.mod);
    if (!f.quadratic) {
      kernels::matmul_mod(Cp[p].data(), Ap[p].data(), Bp[p].data(), d, m);
      p += 1;
    } else {
      // (A0 + A1 t)(B0 + B1 t), t^2 = tsq:
      //   C0 = A0 B0 + tsq * A1 B1,  C1 = A0 B1 + A1 B0
      kernels::matmul_mod(Cp[p].data(), Ap[p].data(), Bp[p].data(), d, m);
      kernels::matmul_mod(t1.data(), Ap[p + 1].data(), Bp[p + 1].data(), d, m);
      kernels::addscaled_mod(Cp[p].data(), t1.data(), uint16_t(f.tsq % f.mod),
                             int(dd), m);
      kernels::matmul_mod(Cp[p + 1].data(), Ap[p].data(), Bp[p + 1].data(), d,
                          m);
      kernels::matmul_mod(t2.data(), Ap[p + 1].data(), Bp[p].data(), d, m);
      kernels::addscaled_mod(Cp[p + 1].data(), t2.data(), 1, int(dd), m);
      p += 2;
    }
  }
  Mat C(d);
  for (size_t idx = 0; idx < dd; ++idx) {
    for (int q = 0; q < P; ++q) digits[q] = Cp[q][idx];
    Elt root_elt = RT.encode_planes(digits.data());
    C.a[idx] = R.is_quotient() ? R.canon(root_elt) : root_elt;
  }
  return C;
}

PolyMat mat_lift(const PolySc& PS, const Mat& A) {
  PolyMat out(A.d);
  for (size_t i = 0; i < A.a.size(); ++i) out.a[i] = Poly::constant(A.a[i]);
  return out;
}

Mat mat_eval(const RingSc& S, const PolyMat& A, Elt x, Elt t, Elt u) {
  const RingCtx& R = *S.R;
  Mat out(A.d);
  for (size_t i = 0; i < A.a.size(); ++i) {
    Elt acc = R.zero();
    for (auto& term : A.a[i].terms()) {
      Elt v = term.second;
      v = R.mul(v, R.pow(x, term.first.e[0]));
      v = R.mul(v, R.pow(t, term.first.e[1]));
      v = R.mul(v, R.pow(u, term.first.e[2]));
      acc = R.add(acc, v);
    }
    out.a[i] = acc;
  }
  return out;
}

PolyMat mat_subst(const PolySc& PS, const PolyMat& A,
                  const std::array<const Poly*, 3>& repl) {
  PolyMat out(A.d);
  for (size_t i = 0; i < A.a.size(); ++i)
    out.a[i] = psubst(*PS.R, A.a[i], repl);
  return out;
}

}  // namespace qhg
