#include "qhg/normal_form.hpp"

namespace qhg {

namespace {

// split a polynomial into (X = 0 part, X-divisible rest)
void split_at_x(const RingCtx& R, const Poly& p, Poly& c, Poly& rest) {
  c = Poly();
  rest = Poly();
  for (auto& t : p.terms()) {
    if (t.first.e[0] == 0)
      c.raw().push_back(t);
    else
      rest.raw().push_back(t);
  }
  c.normalize(R);
  rest.normalize(R);
}

}  // namespace

std::vector<NormalFormFactor> congruence_normal_form(const PolySc& S,
                                                     const PolyElemWord& w) {
  const SpecPtr& spec = w.spec;
  const RingCtx& R = *S.R;
  PolyMat W = word_eval(S, w);
  // eval at X = 0 must be the identity
  Poly zero_poly;
  std::array<const Poly*, 3> at0{&zero_poly, nullptr, nullptr};
  PolyMat W0 = mat_subst(S, W, at0);
  if (!mat_is_identity(S, W0))
    throw NotCongruentToIdentity("word does not evaluate to I at X = 0");

  // split every generator g(arg) = g(arg|_{X=0}) . g(arg - arg|_{X=0});
  // then interleave so the X-divisible cores are conjugated by prefixes of
  // the constant parts
  PolyElemWord consts;
  consts.spec = spec;
  std::vector<PolyElemGen> cores;
  std::vector<size_t> core_prefix;  // number of constant gens before core
  for (const auto& g : w.gens) {
    PolyElemGen gc = g, gx = g;
    if (!kind_is_vector(g.kind)) {
      split_at_x(R, g.arg, gc.arg, gx.arg);
    } else {
      Poly czf, xzf;
      for (size_t k = 0; k < g.zeta.size(); ++k)
        split_at_x(R, g.zeta[k], gc.zeta[k], gx.zeta[k]);
      split_at_x(R, g.zf, czf, xzf);
      // zf for each part: re-solve against the defining identity, then fix
      // the X-part so the product reproduces the original generator
      auto t0 = zeta_f_target(S, *spec, gc.zeta);
      if (S.eq(S.add(czf, S.mul(S.from_elt(R.lambda()), S.conj(czf))), t0)) {
        gc.zf = czf;
      } else {
        auto z = solve_zf_poly(R, t0);
        if (!z) throw RingError("normal form: zeta_f split unsolvable");
        gc.zf = *z;
      }
      PolyMat G = gen_matrix(S, *spec, g);
      PolyMat Gc = gen_matrix(S, *spec, gc);
      auto Gci = mat_inverse(S, Gc);
      if (!Gci) throw RingError("normal form: constant part not invertible");
      PolyMat Gx = mat_mul(S, *Gci, G);
      int nn = spec->n();
      Poly cell = (g.kind == GKind::HM)
                      ? Gx.at(nn + g.i - 1, g.i - 1)
                      : Gx.at(g.i - 1, nn + g.i - 1);
      bool done = false;
      for (auto& zf : zf_from_cell(S, *spec, g.kind, cell)) {
        gx.zf = zf;
        try {
          if (mat_eq(S, gen_matrix(S, *spec, gx), Gx)) {
            done = true;
            break;
          }
        } catch (const RingError&) {
        }
      }
      if (!done)
        throw RingError("normal form: X-part of vector generator is not a "
                        "generator");
    }
    bool core_zero;
    if (!kind_is_vector(g.kind)) {
      core_zero = gx.arg.is_zero();
    } else {
      core_zero = gx.zf.is_zero();
      for (auto& z : gx.zeta) core_zero = core_zero && z.is_zero();
    }
    if (!core_zero) {
      cores.push_back(gx);
      core_prefix.push_back(consts.gens.size() + 1);  // after this const
    }
    // drop identity constant parts
    bool const_zero;
    if (!kind_is_vector(g.kind)) {
      const_zero = gc.arg.is_zero();
    } else {
      const_zero = gc.zf.is_zero();
      for (auto& z : gc.zeta) const_zero = const_zero && z.is_zero();
    }
    if (!const_zero) {
      consts.gens.push_back(gc);
    } else if (!core_zero) {
      core_prefix.back() -= 1;
    }
  }
  // conjugators are prefixes of the constant word
  std::vector<NormalFormFactor> out;
  for (size_t k = 0; k < cores.size(); ++k) {
    NormalFormFactor f;
    f.conj.spec = spec;
    f.conj.gens.assign(consts.gens.begin(),
                       consts.gens.begin() + long(core_prefix[k]));
    f.core = cores[k];
    out.push_back(std::move(f));
  }
  // the constant tail evaluates to the identity (w(0) = I); certify the
  // whole factorization against the input
  PolyMat tail = word_eval(S, consts);
  if (!mat_is_identity(S, tail))
    throw RingError("normal form: constant tail does not collapse");
  PolyMat check = normal_form_eval(S, spec, out);
  if (!mat_eq(S, check, W))
    throw RingError("normal form: certification failed");
  return out;
}

PolyMat normal_form_eval(const PolySc& S, const SpecPtr& spec,
                         const std::vector<NormalFormFactor>& nf) {
  PolyMat acc = mat_identity(S, spec->dim());
  for (const auto& f : nf) {
    PolyMat c = word_eval(S, f.conj);
    auto ci = mat_inverse(S, c);
    if (!ci) throw RingError("normal form conjugator not invertible");
    acc = mat_mul(S, acc,
                  mat_mul(S, c, mat_mul(S, gen_matrix(S, *spec, f.core), *ci)));
  }
  return acc;
}

}  // namespace qhg
