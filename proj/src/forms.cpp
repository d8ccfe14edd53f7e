#include "qhg/forms.hpp"

#include <sstream>

namespace qhg {

SpecPtr FormSpec::make(Kind kind, int n, RingPtr R, FormParameter Lambda,
                       std::vector<Elt> a) {
  auto sp = std::shared_ptr<FormSpec>(new FormSpec());
  sp->kind_ = kind;
  sp->n_ = n;
  sp->R_ = std::move(R);
  sp->Lambda_ = std::move(Lambda);
  if (kind == Kind::Quadratic) {
    if (n < 2) throw MembershipFailure("quadratic spec needs n >= 2");
    if (!a.empty()) throw MembershipFailure("quadratic spec takes no a_i");
    sp->r_ = 0;
  } else {
    sp->r_ = int(a.size());
    if (sp->r_ < 1) throw MembershipFailure("hermitian spec needs r >= 1");
    if (n < sp->r_ + 3)
      throw MembershipFailure("hermitian spec needs n >= r + 3");
    if (a[0] != sp->R_->zero())
      throw MembershipFailure("hermitian spec needs a_1 = 0");
    // C = R^r demands the zeta_f identity z + lambda conj(z) = x^bar a x be
    // solvable for every x, i.e. a_i in min^{-lambda} = {c + lambda conj(c)}
    // (the image of that map), not min^lambda as printed.
    const RingCtx& R = *sp->R_;
    std::vector<uint8_t> in_min(R.order(), 0);
    for (Elt c = 0; c < R.order(); ++c)
      in_min[R.add(c, R.mul(R.lambda(), R.conj(c)))] = 1;
    for (Elt ai : a)
      if (!in_min[ai])
        throw MembershipFailure("a_i = " + sp->R_->to_string(ai) +
                                " outside min^{-lambda}");
    sp->a_ = std::move(a);
  }
  sp->psi_ = build_form(*sp);
  return sp;
}

bool FormSpec::meets_blanket() const {
  if (kind_ == Kind::Quadratic) return n_ >= 3;
  return 2 * n_ >= 6 && n_ > r_;
}

SpecPtr FormSpec::map_scalars(const RingPtr& target) const {
  auto push = [&](Elt e) {
    // both quotients of a common root, or target a quotient of R_
    if (target->is_quotient()) {
      Elt root_elt = R_->is_quotient() ? R_->lift(e) : e;
      return target->canon(root_elt);
    }
    return e;
  };
  std::vector<Elt> a2;
  for (Elt ai : a_) a2.push_back(push(ai));
  std::vector<Elt> lam;
  for (Elt e : Lambda_.elements()) lam.push_back(push(e));
  // closure in the image (pushforward of a form parameter is one)
  FormParameter L2 = close_form_parameter(target, [&] {
    std::vector<Elt> mx = max_lambda(*target);
    std::vector<uint8_t> in_max(target->order(), 0);
    for (Elt m : mx) in_max[m] = 1;
    std::vector<Elt> ok;
    for (Elt e : lam)
      if (in_max[e]) ok.push_back(e);
    if (ok.size() != lam.size())
      throw RingError("Lambda image escapes max^lambda");
    return ok;
  }());
  return FormSpec::make(kind_, n_, target, std::move(L2), std::move(a2));
}

std::string FormSpec::describe() const {
  std::ostringstream os;
  os << (hermitian() ? "hermitian" : "quadratic") << " n=" << n_
     << " r=" << r_ << " ring=" << R_->describe()
     << " lambda=" << R_->to_string(R_->lambda());
  return os.str();
}

Mat build_form(const FormSpec& spec) {
  const RingPtr& R = spec.ring();
  RingSc S{R};
  int n = spec.n();
  Mat psi = mat_zero(S, 2 * n);
  for (int i = 0; i < n; ++i) {
    psi.at(i, n + i) = R->lambda();
    psi.at(n + i, i) = R->one();
  }
  if (spec.hermitian()) {
    // A = diag(a_1..a_r) padded by zeros. With identity padding none of the
    // displayed generator families satisfies the form equation, so the
    // hyperbolic complement carries no diagonal part.
    for (int i = 0; i < spec.r(); ++i) psi.at(i, i) = spec.a()[i];
  }
  if (!mat_inverse(S, psi))
    throw MembershipFailure("form matrix is not invertible");
  return psi;
}

MemberCheck is_special_member(const FormSpec& spec, const Mat& M) {
  RingSc S = spec.sc();
  MemberCheck mc = is_member(S, spec, M);
  if (!mc.ok) return mc;
  if (mat_det(S, M) != S.one()) return {false, "determinant != 1"};
  return {true, ""};
}

std::pair<SpecPtr, Mat> stabilize(const SpecPtr& spec, const Mat& M) {
  RingSc S = spec->sc();
  MemberCheck mc = is_member(S, *spec, M);
  if (!mc.ok) throw MembershipFailure("stabilize: " + mc.reason);
  int n = spec->n();
  SpecPtr sp2 = FormSpec::make(spec->kind(), n + 1, spec->ring(),
                               spec->Lambda(), spec->a());
  // index map old -> new: top i -> i, bottom n+j -> (n+1)+j
  auto mapi = [&](int i) { return (i < n) ? i : i + 1; };
  Mat out = mat_identity(S, 2 * (n + 1));
  for (int i = 0; i < 2 * n; ++i)
    for (int j = 0; j < 2 * n; ++j) out.at(mapi(i), mapi(j)) = M.at(i, j);
  MemberCheck mc2 = is_member(S, *sp2, out);
  if (!mc2.ok)
    throw MembershipFailure("stabilized matrix not a member: " + mc2.reason);
  return {sp2, out};
}

bool is_unimodular(const FormSpec& spec, const VecT<RingSc>& v) {
  Ideal I = Ideal::from_gens(spec.ring(), v);
  return I.is_whole_ring();
}

Elt q_lower_value(const RingSc& S, const FormSpec& spec,
                  const VecT<RingSc>& v) {
  int n = spec.n();
  Elt q = S.zero();
  for (int i = 0; i < n; ++i)
    q = S.add(q, S.mul(S.conj(v[n + i]), v[i]));
  return q;
}

bool is_lambda_isotropic(const RingSc& S, const FormSpec& spec,
                         const VecT<RingSc>& v) {
  Elt q = q_lower_value(S, spec, v);
  if (!spec.hermitian()) return spec.Lambda().contains(q);
  // fold the A-part through any solution of w + lambda conj(w) = x^bar A x
  Elt apart = S.zero();
  for (int k = 0; k < spec.r(); ++k)
    apart = S.add(apart, S.mul(S.mul(S.conj(v[k]), spec.a()[k]), v[k]));
  const RingCtx& R = *S.R;
  for (Elt w = 0; w < R.order(); ++w)
    if (R.add(w, R.mul(R.lambda(), R.conj(w))) == apart &&
        spec.Lambda().contains(S.add(q, w)))
      return true;
  return false;
}

}  // namespace qhg
