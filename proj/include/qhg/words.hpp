#pragma once

#include <functional>
#include <vector>

#include "qhg/forms.hpp"

namespace qhg {

struct IndexOutOfRange : RingError {
  using RingError::RingError;
};
struct ArgNotInLambda : RingError {
  using RingError::RingError;
};

// The eight elementary generator families. q* act in GQ, h* in GH;
// hm/hrv are the column kinds hm_i(zeta) and hr_i(zeta).
enum class GKind { QE, QR, QL, HE, HR, HL, HM, HRV };

const char* kind_name(GKind k);
GKind kind_from_name(const std::string& s);
bool kind_is_hermitian(GKind k);
bool kind_is_vector(GKind k);

template <class Sc>
struct GenT {
  GKind kind{};
  int i = 0, j = 0;  // 1-based; j unused for HM/HRV
  typename Sc::V arg{};
  std::vector<typename Sc::V> zeta;  // HM/HRV only, length r
  typename Sc::V zf{};               // HM/HRV only
};

using ElemGen = GenT<RingSc>;
using PolyElemGen = GenT<PolySc>;

template <class Sc>
struct WordT {
  SpecPtr spec;
  std::vector<GenT<Sc>> gens;
  size_t size() const { return gens.size(); }
  bool empty() const { return gens.empty(); }
};

using ElemWord = WordT<RingSc>;
using PolyElemWord = WordT<PolySc>;

// zf solutions of z + lambda*conj(z) = target (least element), used for the
// canonical zeta_f of hm/hrv.
std::optional<Elt> solve_zf(const RingCtx& R, Elt target);
Elt zeta_f_target(const RingSc& S, const FormSpec& spec,
                  const std::vector<Elt>& zeta);
Poly zeta_f_target(const PolySc& S, const FormSpec& spec,
                   const std::vector<Poly>& zeta);
std::optional<Poly> solve_zf_poly(const RingCtx& R, const Poly& target);

// The generator matrix. Throws IndexOutOfRange / ArgNotInLambda on invalid
// parameters and MembershipFailure when the constructed matrix does not
// pass is_member (self-certification).
Mat gen_matrix(const RingSc& S, const FormSpec& spec, const ElemGen& g);
PolyMat gen_matrix(const PolySc& S, const FormSpec& spec,
                   const PolyElemGen& g);

// Checked constructors.
template <class Sc>
GenT<Sc> make_gen(const Sc& S, const FormSpec& spec, GKind kind, int i, int j,
                  typename Sc::V arg);
// zf omitted -> canonical (least) solution of the defining identity.
ElemGen make_vec_gen(const RingSc& S, const FormSpec& spec, GKind kind, int i,
                     std::vector<Elt> zeta, std::optional<Elt> zf = {});
PolyElemGen make_vec_gen(const PolySc& S, const FormSpec& spec, GKind kind,
                         int i, std::vector<Poly> zeta,
                         std::optional<Poly> zf = {});

template <class Sc>
GenT<Sc> gen_inverse(const Sc& S, const FormSpec& spec, const GenT<Sc>& g);

template <class Sc>
MatT<Sc> word_eval(const Sc& S, const WordT<Sc>& w);

template <class Sc>
WordT<Sc> word_inverse(const Sc& S, const WordT<Sc>& w);

template <class Sc>
WordT<Sc> word_concat(WordT<Sc> a, const WordT<Sc>& b);

// g(x+y) = g(x) g(y), exact matrix equality.
bool check_splitting(const RingSc& S, const FormSpec& spec, GKind kind, int i,
                     int j, Elt x, Elt y);
// vector-kind splitting: product recognized as the same kind at zeta1+zeta2
bool check_splitting_vec(const RingSc& S, const FormSpec& spec, GKind kind,
                         int i, const std::vector<Elt>& z1,
                         const std::vector<Elt>& z2);

// Lift a constant-coefficient word into R[X] (or map scalars of a word).
PolyElemWord word_lift(const PolySc& PS, const ElemWord& w);
// Map a word through a ring map (elementwise on arguments), e.g. into a
// localization (f: Elt -> Elt in target) or back along the section.
ElemWord word_map(const SpecPtr& target_spec,
                  const std::function<Elt(Elt)>& f, const ElemWord& w);
PolyElemWord word_map_poly(const SpecPtr& target_spec,
                           const std::function<Elt(Elt)>& f,
                           const PolyElemWord& w);
// Substitute variables in every polynomial argument.
PolyElemWord word_subst(const PolySc& PS, const PolyElemWord& w,
                        const std::array<const Poly*, 3>& repl);
// Specialize a polynomial word at X=x,T=t,U=u to a constant word.
ElemWord word_specialize(const PolyElemWord& w, Elt x, Elt t = 0, Elt u = 0);

// ---- template implementations ----

namespace detail {
template <class Sc>
void add_cell(const Sc& S, MatT<Sc>& M, int row1, int col1,
              typename Sc::V v) {
  M.at(row1 - 1, col1 - 1) = S.add(M.at(row1 - 1, col1 - 1), v);
}

template <class Sc>
MatT<Sc> gen_matrix_impl(const Sc& S, const FormSpec& spec,
                         const GenT<Sc>& g);
}  // namespace detail

template <class Sc>
GenT<Sc> make_gen(const Sc& S, const FormSpec& spec, GKind kind, int i, int j,
                  typename Sc::V arg) {
  GenT<Sc> g;
  g.kind = kind;
  g.i = i;
  g.j = j;
  g.arg = std::move(arg);
  gen_matrix(S, spec, g);  // validates
  return g;
}

// zf candidates compatible with an observed zf-cell value (the cell formula
// sign is resolved during construction, so try both readings).
template <class Sc>
std::vector<typename Sc::V> zf_from_cell(const Sc& S, const FormSpec& spec,
                                         GKind kind,
                                         const typename Sc::V& cell) {
  typename Sc::V zc = cell;
  if (kind == GKind::HRV)
    zc = S.mul(S.from_elt(spec.ring()->lambda_bar()), cell);
  return {S.neg(S.conj(zc)), S.conj(zc)};
}

template <class Sc>
GenT<Sc> gen_inverse(const Sc& S, const FormSpec& spec, const GenT<Sc>& g) {
  GenT<Sc> inv = g;
  if (!kind_is_vector(g.kind)) {
    inv.arg = S.neg(g.arg);
    return inv;
  }
  // negate zeta; zf adjusted so that the product with g is the identity
  for (auto& z : inv.zeta) z = S.neg(z);
  MatT<Sc> M = gen_matrix(S, spec, g);
  auto Minv = mat_inverse(S, M);
  if (!Minv) throw MembershipFailure("vector generator not invertible");
  int n = spec.n();
  typename Sc::V cell = (g.kind == GKind::HM)
                            ? Minv->at(n + g.i - 1, g.i - 1)
                            : Minv->at(g.i - 1, n + g.i - 1);
  for (auto& zf : zf_from_cell(S, spec, g.kind, cell)) {
    inv.zf = zf;
    try {
      if (mat_eq(S, gen_matrix(S, spec, inv), *Minv)) return inv;
    } catch (const RingError&) {
    }
  }
  throw MembershipFailure("vector generator inverse reconstruction failed");
}

template <class Sc>
MatT<Sc> word_eval(const Sc& S, const WordT<Sc>& w) {
  MatT<Sc> acc = mat_identity(S, w.spec->dim());
  for (const auto& g : w.gens)
    acc = mat_mul(S, acc, gen_matrix(S, *w.spec, g));
  return acc;
}

template <class Sc>
WordT<Sc> word_inverse(const Sc& S, const WordT<Sc>& w) {
  WordT<Sc> out;
  out.spec = w.spec;
  for (auto it = w.gens.rbegin(); it != w.gens.rend(); ++it)
    out.gens.push_back(gen_inverse(S, *w.spec, *it));
  return out;
}

template <class Sc>
WordT<Sc> word_concat(WordT<Sc> a, const WordT<Sc>& b) {
  a.gens.insert(a.gens.end(), b.gens.begin(), b.gens.end());
  return a;
}

}  // namespace qhg
