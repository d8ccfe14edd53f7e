#include "qhg/key5.hpp"

#include <algorithm>

namespace qhg {

namespace {

template <class Sc>
void verify_transport(const Sc& S, const SpecPtr& spec, const WordT<Sc>& w,
                      int target) {
  int d = spec->dim();
  VecT<Sc> e2n(d, S.zero());
  e2n[d - 1] = S.one();
  VecT<Sc> got = mat_vec(S, word_eval(S, w), e2n);
  for (int k = 0; k < d; ++k) {
    typename Sc::V want = (k == target - 1) ? S.one() : S.zero();
    if (!S.eq(got[k], want))
      throw RingError("transport word verification failed for target " +
                      std::to_string(target));
  }
}

}  // namespace

template <class Sc>
WordT<Sc> transport_word(const Sc& S, const SpecPtr& spec, int target) {
  int n = spec->n(), r = spec->r();
  WordT<Sc> w;
  w.spec = spec;
  auto one = S.one();
  auto neg1 = S.neg(S.one());
  auto push = [&](GKind k, int i, int j, typename Sc::V arg) {
    GenT<Sc> g;
    g.kind = k;
    g.i = i;
    g.j = j;
    g.arg = std::move(arg);
    gen_matrix(S, *spec, g);
    w.gens.push_back(std::move(g));
  };
  bool herm = spec->hermitian();
  GKind E = herm ? GKind::HE : GKind::QE;
  GKind Rk = herm ? GKind::HR : GKind::QR;
  GKind L = herm ? GKind::HL : GKind::QL;
  if (target == 2 * n) return w;
  if (target <= n) {
    int i = target;
    if (herm && i <= r)
      throw RingError("transport to e_i with i <= r not supported");
    if (i < n) {
      push(Rk, i, n, one);
      push(L, n, i, neg1);
    } else {
      // route through an auxiliary top index
      int x = herm ? r + 1 : 1;
      push(Rk, x, n, one);
      push(L, n, x, neg1);
      push(E, n, x, one);
      push(E, x, n, neg1);
    }
  } else {
    int i = target - n;  // e_rho(i)
    if (i < n) {
      if (!herm || i > r) {
        push(E, n, i, neg1);
        push(E, i, n, one);
      } else {
        // hm-route: he_ni(-1) then hm_n(unit vector at i)
        push(E, n, i, neg1);
        std::vector<typename Sc::V> zeta(size_t(r), S.zero());
        zeta[i - 1] = one;
        w.gens.push_back(
            make_vec_gen(S, *spec, GKind::HM, n, zeta, std::nullopt));
      }
    }
  }
  // moves were listed in the order they act on the vector; evaluation is
  // left-to-right matrix product, so the first-acting move goes last
  std::reverse(w.gens.begin(), w.gens.end());
  verify_transport(S, spec, w, target);
  return w;
}

template WordT<RingSc> transport_word(const RingSc&, const SpecPtr&, int);
template WordT<PolySc> transport_word(const PolySc&, const SpecPtr&, int);

std::optional<GenDyad> gen_as_dyad(const RingSc& S, const FormSpec& spec,
                                   GKind kind, int i, int j) {
  int n = spec.n();
  std::vector<std::pair<int, int>> cands;
  switch (kind) {
    case GKind::QE:
    case GKind::HE:
      cands = {{i, n + j}};
      break;
    case GKind::QR:
    case GKind::HR:
      cands = {{i, j}};
      break;
    case GKind::QL:
    case GKind::HL:
      cands = {{n + i, n + j}};
      break;
    default:
      return std::nullopt;
  }
  const RingCtx& R = *S.R;
  int d = spec.dim();
  for (auto [b1, b2] : cands) {
    for (int conj_flag = 0; conj_flag < 2; ++conj_flag) {
      for (Elt f = 0; f < R.order(); ++f) {
        if (f == R.zero()) continue;
        bool ok = true;
        bool any = false;
        for (Elt arg = 0; arg < R.order() && ok; ++arg) {
          ElemGen g;
          g.kind = kind;
          g.i = i;
          g.j = j;
          g.arg = arg;
          Mat G;
          try {
            G = gen_matrix(S, spec, g);
          } catch (const ArgNotInLambda&) {
            continue;  // diagonal kinds: only Lambda args constructible
          }
          any = true;
          Elt coef = S.mul(f, conj_flag ? S.conj(arg) : arg);
          VecT<RingSc> vb(d, S.zero()), wb(d, S.zero());
          vb[b1 - 1] = S.one();
          wb[b2 - 1] = coef;
          Mat D = mat_add(S, mat_identity(S, d), m_matrix(S, spec, vb, wb));
          if (!mat_eq(S, G, D)) ok = false;
        }
        if (ok && any) {
          GenDyad out;
          out.b1 = b1;
          out.b2 = b2;
          out.factor = f;
          out.conj_arg = conj_flag != 0;
          return out;
        }
      }
    }
  }
  return std::nullopt;
}

template <class Sc>
WordT<Sc> key5_decompose(const Sc& S, const WordT<Sc>& eps,
                         const VecT<Sc>& w) {
  const SpecPtr& spec = eps.spec;
  int n = spec->n(), r = spec->r(), d = spec->dim();
  Elt lam_bar = spec->ring()->lambda_bar();
  MatT<Sc> E = word_eval(S, eps);
  VecT<Sc> e2n(d, S.zero());
  e2n[d - 1] = S.one();
  VecT<Sc> v = mat_vec(S, E, e2n);
  if (!S.is_zero(inner(S, *spec, v, w)))
    throw NotOrthogonal("<v,w> != 0 in key5_decompose");
  MatT<Sc> target = mat_add(S, mat_identity(S, d), m_matrix(S, *spec, v, w));
  WordT<Sc> out;
  out.spec = spec;
  if (mat_is_identity(S, target)) return out;

  WordT<Sc> eps_inv = word_inverse(S, eps);
  VecT<Sc> w1 = mat_vec(S, word_eval(S, eps_inv), w);
  if (!S.is_zero(w1[n - 1]))
    throw NotOrthogonal("w1 has nonzero coordinate n");

  WordT<Sc> factors;
  factors.spec = spec;
  auto lb = S.from_elt(lam_bar);
  bool herm = spec->hermitian();
  for (int i = 1; i <= n - 1; ++i) {
    typename Sc::V c = S.neg(S.mul(lb, w1[n + i - 1]));
    if (S.is_zero(c)) continue;
    GenT<Sc> g;
    g.kind = herm ? GKind::HL : GKind::QL;
    g.i = i;
    g.j = n;
    g.arg = c;
    gen_matrix(S, *spec, g);
    factors.gens.push_back(std::move(g));
  }
  for (int j = (herm ? r + 1 : 1); j <= n - 1; ++j) {
    typename Sc::V c = S.neg(S.mul(lb, w1[j - 1]));
    if (S.is_zero(c)) continue;
    GenT<Sc> g;
    g.kind = herm ? GKind::HE : GKind::QE;
    g.i = j;
    g.j = n;
    g.arg = c;
    gen_matrix(S, *spec, g);
    factors.gens.push_back(std::move(g));
  }
  if (herm) {
    std::vector<typename Sc::V> zeta;
    bool nonzero = false;
    for (int k = 1; k <= r; ++k) {
      typename Sc::V z = S.neg(S.mul(lb, w1[k - 1]));
      if (!S.is_zero(z)) nonzero = true;
      zeta.push_back(std::move(z));
    }
    if (nonzero)
      factors.gens.push_back(
          make_vec_gen(S, *spec, GKind::HM, n, zeta, std::nullopt));
  }
  // closing ql_nn / hl_nn: residual of the built factors against the base
  // target I + M(e_2n, w1)
  MatT<Sc> base =
      mat_add(S, mat_identity(S, d), m_matrix(S, *spec, e2n, w1));
  MatT<Sc> res =
      mat_mul(S, word_eval(S, word_inverse(S, factors)), base);
  // res must be I + q e_{rho(n), n}
  typename Sc::V q = res.at(2 * n - 1, n - 1);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      typename Sc::V want = (a == b) ? S.one() : S.zero();
      if (a == 2 * n - 1 && b == n - 1) continue;
      if (!S.eq(res.at(a, b), want))
        throw RingError("key5 residual is not a closing generator");
    }
  if (!S.is_zero(q)) {
    if (!in_lambda_bar(spec->Lambda(), q))
      throw ClosingArgNotInLambda(
          "closing argument " + S.str(q) + " outside conj(Lambda)");
    GenT<Sc> g;
    g.kind = herm ? GKind::HL : GKind::QL;
    g.i = n;
    g.j = n;
    g.arg = q;
    gen_matrix(S, *spec, g);
    factors.gens.push_back(std::move(g));
  }
  // assemble eps . factors . eps^-1 and certify
  out = eps;
  out = word_concat(std::move(out), factors);
  out = word_concat(std::move(out), eps_inv);
  if (!mat_eq(S, word_eval(S, out), target))
    throw RingError("key5 certification failed");
  return out;
}

template WordT<RingSc> key5_decompose(const RingSc&, const WordT<RingSc>&,
                                      const VecT<RingSc>&);
template WordT<PolySc> key5_decompose(const PolySc&, const WordT<PolySc>&,
                                      const VecT<PolySc>&);

}  // namespace qhg
