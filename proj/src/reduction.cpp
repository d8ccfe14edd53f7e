#include "qhg/reduction.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace qhg {

Mat lin_word_eval(const RingSc& S, const LinWord& w, int k) {
  Mat acc = mat_identity(S, k);
  for (const auto& g : w) {
    Mat G = mat_identity(S, k);
    G.at(g.i - 1, g.j - 1) = S.add(G.at(g.i - 1, g.j - 1), g.a);
    acc = mat_mul(S, acc, G);
  }
  return acc;
}

Elt unit_in_coset(const RingPtr& R, Elt a, const Ideal& I) {
  Ideal total = Ideal::sum(Ideal::from_gens(R, {a}), I);
  if (!total.is_whole_ring())
    throw CosetNotUnimodular("Ra + I is a proper ideal");
  Ideal J = jacobson_radical(R);
  RingSc S{R};
  Elt u = a;
  for (Elt e : primitive_idempotents(*R)) {
    // component of a is zero (mod J) exactly when e*a is in J
    if (!J.contains(R->mul(e, a))) continue;
    bool fixed = false;
    for (Elt x : I.elements()) {
      Elt ex = R->mul(e, x);
      if (J.contains(ex)) continue;
      u = R->add(u, ex);
      fixed = true;
      break;
    }
    if (!fixed)
      throw CosetNotUnimodular("no correction available in a component");
  }
  if (!R->is_unit(u)) throw RingError("unit_in_coset: lift is not a unit");
  // u - a must lie in I by construction
  if (!I.contains(R->sub(u, a)))
    throw RingError("unit_in_coset: correction escaped the ideal");
  return u;
}

ColumnReduction idempotent_column_reduce(const RingPtr& R,
                                         const std::vector<Elt>& col) {
  int k = int(col.size());
  if (k < 2) throw LengthTooShort("column reduction needs length >= 2");
  if (jacobson_radical(R).elements().size() != 1)
    throw RingError("column reduction requires a semisimple ring");
  RingSc S{R};
  Ideal Jcol = Ideal::from_gens(R, col);
  // idempotent generator of the column ideal
  Elt e = R->zero();
  bool found = false;
  for (Elt cand : Jcol.elements()) {
    if (R->mul(cand, cand) != cand) continue;
    if (Ideal::from_gens(R, {cand}).elements() == Jcol.elements()) {
      e = cand;
      found = true;
      break;
    }
  }
  if (!found) throw RingError("column ideal has no idempotent generator");

  // actions applied to the vector in order; the returned word is the
  // reversed list so that lin_word_eval(word) * col = result
  LinWord actions;
  std::vector<Elt> cur = col;
  auto apply = [&](const LinGen& g) {
    cur[g.i - 1] = S.add(cur[g.i - 1], S.mul(g.a, cur[g.j - 1]));
    actions.push_back(g);
  };
  // u e = a_k + i with i in the head ideal (Lemma swan4 through Lemma B)
  std::vector<Elt> head(col.begin(), col.end() - 1);
  Ideal Ihead = Ideal::from_gens(R, head);
  Elt f = R->sub(R->one(), e);
  Ideal Iaug = Ideal::sum(Ihead, Ideal::from_gens(R, {f}));
  Elt u = unit_in_coset(R, col.back(), Iaug);
  Elt ue = R->mul(u, e);
  Elt corr = R->sub(ue, col.back());
  auto wit = Ihead.witness(corr);
  if (!wit) throw RingError("swan4 correction not in the head ideal");
  for (int j = 0; j < k - 1; ++j)
    if ((*wit)[j] != R->zero()) apply({k, j + 1, (*wit)[j]});
  if (cur.back() != ue) throw RingError("swan4 step failed");
  // scale a_k to e through diag(u, u^-1) at (k-1, k) = W(u) W(-1);
  // listed in application order (total action = W(u) W(-1))
  Elt uinv = R->inv(u).value();
  for (const LinGen& g : std::initializer_list<LinGen>{
           {k - 1, k, S.neg(S.one())},
           {k, k - 1, S.one()},
           {k - 1, k, S.neg(S.one())},
           {k - 1, k, u},
           {k, k - 1, S.neg(uinv)},
           {k - 1, k, u}})
    apply(g);
  if (cur.back() != e) throw RingError("whitehead scaling failed");
  // remaining entries are left multiples of e
  Ideal Re = Ideal::from_gens(R, {e});
  for (int j = 0; j < k - 1; ++j) {
    if (cur[j] == R->zero()) continue;
    auto w2 = Re.witness(cur[j]);
    if (!w2) throw RingError("entry not a multiple of the idempotent");
    apply({j + 1, k, S.neg((*w2)[0])});
    if (cur[j] != R->zero()) throw RingError("entry clearing failed");
  }
  // certify
  LinWord word(actions.rbegin(), actions.rend());
  Mat E = lin_word_eval(S, word, k);
  std::vector<Elt> check(k, R->zero());
  for (int i2 = 0; i2 < k; ++i2)
    for (int j2 = 0; j2 < k; ++j2)
      check[i2] = S.add(check[i2], S.mul(E.at(i2, j2), col[j2]));
  for (int i2 = 0; i2 < k - 1; ++i2)
    if (check[i2] != R->zero()) throw RingError("column reduction failed");
  if (check[k - 1] != e) throw RingError("column reduction failed at pivot");
  return {word, e};
}

ElemWord hyperbolic_pair_word(const SpecPtr& spec, int a, int b, Elt u) {
  RingSc S = spec->sc();
  auto ui = S.R->inv(u);
  if (!ui) throw RingError("hyperbolic pair word needs a unit");
  GKind E = spec->hermitian() ? GKind::HE : GKind::QE;
  ElemWord w;
  w.spec = spec;
  auto push = [&](int i, int j, Elt arg) {
    w.gens.push_back(make_gen(S, *spec, E, i, j, arg));
  };
  // W(u) W(-1) with e12 = (a,b), e21 = (b,a)
  push(a, b, u);
  push(b, a, S.neg(*ui));
  push(a, b, u);
  push(a, b, S.neg(S.one()));
  push(b, a, S.one());
  push(a, b, S.neg(S.one()));
  Mat D = word_eval(S, w);
  // expect diag(u @ a, u^-1 @ b) with the conjugate pair below
  Mat expect = mat_identity(S, spec->dim());
  int n = spec->n();
  expect.at(a - 1, a - 1) = u;
  expect.at(b - 1, b - 1) = *ui;
  expect.at(n + a - 1, n + a - 1) = S.R->inv(S.conj(u)).value();
  expect.at(n + b - 1, n + b - 1) = S.conj(u);
  if (!mat_eq(S, D, expect))
    throw RingError("hyperbolic pair word verification failed");
  return w;
}

namespace {

// single catalog move for the pivot-ideal growth loop
struct Move {
  ElemGen gen;
};

std::vector<Elt> top_slice(const FormSpec& spec, const VecT<RingSc>& v) {
  int lo = spec.hermitian() ? spec.r() : 0;  // top positions lo+1..n
  return std::vector<Elt>(v.begin() + lo, v.begin() + spec.n());
}

size_t top_ideal_size(const RingSc& S, const FormSpec& spec,
                      const VecT<RingSc>& v) {
  return Ideal::from_gens(S.R, top_slice(spec, v)).size();
}

std::vector<ElemGen> growth_candidates(const RingSc& S, const FormSpec& spec,
                                       const VecT<RingSc>& v) {
  std::vector<ElemGen> out;
  int n = spec.n(), r = spec.r();
  bool herm = spec.hermitian();
  std::vector<Elt> args{S.one()};
  // a few small arguments beyond 1 for the 2n = 4 corner cases
  if (S.R->order() <= 16)
    for (Elt x = 2; x < S.R->order(); ++x) args.push_back(x);
  auto push = [&](GKind k, int i, int j, Elt a) {
    ElemGen g;
    g.kind = k;
    g.i = i;
    g.j = j;
    g.arg = a;
    try {
      gen_matrix(S, spec, g);
      out.push_back(std::move(g));
    } catch (const RingError&) {
    }
  };
  for (Elt a : args) {
    // inject y_j into the top: qr/hr move families
    for (int i = (herm ? r + 1 : 1); i <= n; ++i)
      for (int j = (herm ? r + 1 : 1); j <= n; ++j)
        push(herm ? GKind::HR : GKind::QR, i, j, a);
    // move top entries across rows
    for (int i = (herm ? r + 1 : 1); i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        if (i != j) push(herm ? GKind::HE : GKind::QE, i, j, a);
    if (herm) {
      // bring y_{<=r} into the top rows
      for (int i = r + 1; i <= n; ++i) {
        std::vector<Elt> zeta;
        zeta.resize(size_t(r), S.zero());
        for (int k2 = 0; k2 < r; ++k2) zeta[k2] = a;
        try {
          out.push_back(make_vec_gen(S, spec, GKind::HRV, i, zeta));
        } catch (const RingError&) {
        }
        try {
          out.push_back(make_vec_gen(S, spec, GKind::HM, i, zeta));
        } catch (const RingError&) {
        }
      }
    }
  }
  return out;
}

}  // namespace

ElemWord make_pivot_unit(const SpecPtr& spec, const VecT<RingSc>& v) {
  RingSc S = spec->sc();
  if (spec->dim() < 4) throw UnsupportedSize("need 2n >= 4");
  if (!is_unimodular(*spec, v)) throw NotUnimodular("pivot: v not unimodular");
  const RingPtr& R = spec->ring();
  Ideal J = jacobson_radical(R);
  RingPtr Rbar = quotient_by_ideal(R, J, "J");
  SpecPtr sbar = spec->map_scalars(Rbar);
  RingSc Sb = sbar->sc();
  auto push_down = [&](Elt x) { return Rbar->canon(x); };
  VecT<RingSc> vb(v.size());
  for (size_t i = 0; i < v.size(); ++i) vb[i] = push_down(v[i]);

  std::vector<ElemGen> actions;  // in application order
  int n = spec->n();
  int lo = spec->hermitian() ? spec->r() : 0;
  int klen = n - lo;
  size_t guard = 0;
  for (;;) {
    if (++guard > 64) throw RingError("pivot loop failed to terminate");
    // reduce the top slice to (0,..,0,e)
    std::vector<Elt> slice = top_slice(*sbar, vb);
    ColumnReduction cr = idempotent_column_reduce(Rbar, slice);
    // cr.word is in evaluation order; apply right-to-left
    for (auto it = cr.word.rbegin(); it != cr.word.rend(); ++it) {
      ElemGen g = make_gen(Sb, *sbar,
                           sbar->hermitian() ? GKind::HE : GKind::QE,
                           it->i + lo, it->j + lo, it->a);
      vb = mat_vec(Sb, gen_matrix(Sb, *sbar, g), vb);
      actions.push_back(std::move(g));
    }
    if (cr.idempotent == Rbar->one()) break;
    // strict growth via a catalog move
    size_t before = top_ideal_size(Sb, *sbar, vb);
    bool grew = false;
    for (auto& g : growth_candidates(Sb, *sbar, vb)) {
      VecT<RingSc> v2 = mat_vec(Sb, gen_matrix(Sb, *sbar, g), vb);
      if (top_ideal_size(Sb, *sbar, v2) > before) {
        vb = std::move(v2);
        actions.push_back(g);
        grew = true;
        break;
      }
    }
    if (!grew)
      throw RingError("pivot ideal cannot grow; vector not reducible");
  }
  (void)klen;
  ElemWord word_bar;
  word_bar.spec = sbar;
  word_bar.gens.assign(actions.rbegin(), actions.rend());
  // lift along the canonical section and re-verify over R
  ElemWord word = word_map(spec, [&](Elt x) { return Rbar->section(x); },
                           word_bar);
  VecT<RingSc> vr = mat_vec(S, word_eval(S, word), v);
  if (!S.R->is_unit(vr[n - 1]))
    throw RingError("pivot lift failed to produce a unit");
  return word;
}

ReductionCertificate reduce_unimodular_isotropic(const SpecPtr& spec,
                                                 const VecT<RingSc>& v) {
  RingSc S = spec->sc();
  int n = spec->n(), r = spec->r(), d = spec->dim();
  if (!is_unimodular(*spec, v)) throw NotUnimodular("reduce: not unimodular");
  if (!is_isotropic(S, *spec, v)) throw NotIsotropic("<v,v> != 0");
  if (!is_lambda_isotropic(S, *spec, v))
    throw NotIsotropic("not an isotropic vector of Lambda");
  ReductionCertificate cert;
  cert.claim = Claim::VectorToE2n;
  ElemWord total;
  total.spec = spec;
  {
    bool already = true;
    for (int i = 0; i < d; ++i)
      if (v[i] != ((i == d - 1) ? S.one() : S.zero())) already = false;
    if (already) {
      cert.word = total;
      return cert;
    }
  }
  VecT<RingSc> cur = v;
  auto apply_word = [&](const ElemWord& w, const char* what) {
    cur = mat_vec(S, word_eval(S, w), cur);
    // certificate words multiply on the left of earlier steps
    ElemWord joined = w;
    joined = word_concat(std::move(joined), total);
    total = std::move(joined);
    cert.trace.push_back(what);
  };
  auto apply_gen = [&](ElemGen g, const char* what) {
    ElemWord w;
    w.spec = spec;
    w.gens.push_back(std::move(g));
    apply_word(w, what);
  };

  // 1. pivot at coordinate n
  apply_word(make_pivot_unit(spec, cur), "pivot");
  // 2. normalize the pivot to 1
  Elt u = cur[n - 1];
  if (u != S.one()) {
    apply_word(hyperbolic_pair_word(spec, n - 1, n, S.R->inv(u).value()),
               "normalize");
  }
  if (cur[n - 1] != S.one()) throw RingError("pivot normalization failed");
  bool herm = spec->hermitian();
  // 3. clear y_1..y_{n-1}
  for (int i = 1; i <= n - 1; ++i)
    if (cur[n + i - 1] != S.zero())
      apply_gen(make_gen(S, *spec, herm ? GKind::HL : GKind::QL, i, n,
                         S.neg(cur[n + i - 1])),
                "clear lower");
  // 4. kill y_n (isotropy pins it into conj(Lambda))
  if (cur[2 * n - 1] != S.zero()) {
    Elt c = S.neg(cur[2 * n - 1]);
    if (!spec->Lambda().contains_bar(c))
      throw NotIsotropic("residual y_n outside conj(Lambda)");
    apply_gen(make_gen(S, *spec, herm ? GKind::HL : GKind::QL, n, n, c),
              "kill y_n");
  }
  // 5. clear the top
  for (int i = (herm ? r + 1 : 1); i <= n - 1; ++i)
    if (cur[i - 1] != S.zero())
      apply_gen(make_gen(S, *spec, herm ? GKind::HE : GKind::QE, i, n,
                         S.neg(cur[i - 1])),
                "clear upper");
  if (herm) {
    bool nz = false;
    std::vector<Elt> zeta;
    zeta.resize(size_t(r));
    for (int k = 1; k <= r; ++k) {
      zeta[k - 1] = S.neg(cur[k - 1]);
      nz = nz || zeta[k - 1] != S.zero();
    }
    if (nz)
      apply_gen(make_vec_gen(S, *spec, GKind::HM, n, zeta), "clear A-top");
    // side effects re-enter the lower half; re-clear
    for (int k = 1; k <= r; ++k)
      if (cur[n + k - 1] != S.zero())
        apply_gen(make_gen(S, *spec, GKind::HL, k, n,
                           S.neg(cur[n + k - 1])),
                  "re-clear lower");
    if (cur[2 * n - 1] != S.zero()) {
      Elt c = S.neg(cur[2 * n - 1]);
      if (!spec->Lambda().contains_bar(c))
        throw NotIsotropic("hermitian residual y_n outside conj(Lambda)");
      apply_gen(make_gen(S, *spec, GKind::HL, n, n, c), "re-kill y_n");
    }
  }
  // 6. transport e_n to e_2n
  {
    ElemWord tau = word_inverse(S, transport_word(S, spec, n));
    apply_word(tau, "transport");
  }
  for (int i = 0; i < d; ++i) {
    Elt want = (i == d - 1) ? S.one() : S.zero();
    if (cur[i] != want) throw RingError("reduction did not reach e_2n");
  }
  Mat E = word_eval(S, total);
  VecT<RingSc> check = mat_vec(S, E, v);
  for (int i = 0; i < d; ++i) {
    Elt want = (i == d - 1) ? S.one() : S.zero();
    if (check[i] != want) throw RingError("certificate re-check failed");
  }
  cert.word = std::move(total);
  return cert;
}

namespace {

// right-multiplication clearing factor with cell (w1, v1) (1-based), using
// the unit diagonal pivot at w1; candidates tried in deterministic order
std::vector<ElemGen> clear_cell_candidates(const RingSc& S,
                                           const FormSpec& spec, int w1,
                                           int v1, Elt arg) {
  std::vector<ElemGen> out;
  int n = spec.n(), r = spec.r();
  bool herm = spec.hermitian();
  auto push = [&](GKind k, int i, int j, Elt a) {
    ElemGen g;
    g.kind = k;
    g.i = i;
    g.j = j;
    g.arg = a;
    try {
      gen_matrix(S, spec, g);
      out.push_back(std::move(g));
    } catch (const RingError&) {
    }
  };
  if (w1 <= n && v1 <= n) {
    if (w1 != v1) push(herm ? GKind::HE : GKind::QE, w1, v1, arg);
    if (herm && w1 <= r) {
      std::vector<Elt> zeta;
      zeta.resize(size_t(r), S.zero());
      zeta[w1 - 1] = arg;
      try {
        out.push_back(make_vec_gen(S, spec, GKind::HM, v1, zeta));
      } catch (const RingError&) {
      }
    }
  } else if (w1 <= n && v1 > n) {
    push(herm ? GKind::HR : GKind::QR, w1, v1 - n, arg);
    if (herm && w1 <= r) {
      std::vector<Elt> zeta;
      zeta.resize(size_t(r), S.zero());
      zeta[w1 - 1] = arg;
      try {
        out.push_back(make_vec_gen(S, spec, GKind::HRV, v1 - n, zeta));
      } catch (const RingError&) {
      }
    }
  } else if (w1 > n && v1 <= n) {
    push(herm ? GKind::HL : GKind::QL, w1 - n, v1, arg);
  } else {
    if (w1 != v1)
      push(herm ? GKind::HE : GKind::QE, v1 - n, w1 - n,
           S.conj(S.neg(arg)));
  }
  return out;
}

}  // namespace

ReductionCertificate diagonal_reduce(const SpecPtr& spec, const Mat& beta,
                                     const Ideal& I) {
  RingSc S = spec->sc();
  int d = spec->dim();
  MemberCheck mc = is_special_member(*spec, beta);
  if (!mc.ok) throw MembershipFailure("diagonal_reduce: " + mc.reason);
  Ideal J = jacobson_radical(spec->ring());
  for (Elt x : I.elements())
    if (!J.contains(x)) throw IdealNotInRadical(I.to_string());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Elt delta = (i == j) ? S.sub(beta.at(i, j), S.one()) : beta.at(i, j);
      if (!I.contains(delta))
        throw NotCongruentToIdentity("entry (" + std::to_string(i + 1) +
                                     "," + std::to_string(j + 1) +
                                     ") not congruent mod I");
    }
  ReductionCertificate cert;
  cert.claim = Claim::BetaThetaDiagonal;
  ElemWord theta;
  theta.spec = spec;
  Mat cur = beta;
  size_t guard = 0;
  for (;;) {
    if (++guard > 512) throw RingError("diagonal sweep failed to converge");
    // find the first off-diagonal nonzero cell
    int w1 = -1, v1 = -1;
    for (int i = 0; i < d && w1 < 0; ++i)
      for (int j = 0; j < d && w1 < 0; ++j)
        if (i != j && cur.at(i, j) != S.zero()) {
          w1 = i + 1;
          v1 = j + 1;
        }
    if (w1 < 0) break;
    Elt dw = cur.at(w1 - 1, w1 - 1);
    auto dwi = S.R->inv(dw);
    if (!dwi) throw RingError("diagonal pivot is not a unit");
    Elt arg = S.neg(S.mul(*dwi, cur.at(w1 - 1, v1 - 1)));
    if (!I.contains(arg))
      throw RingError("clearing factor argument escaped the ideal");
    bool applied = false;
    for (auto& g : clear_cell_candidates(S, *spec, w1, v1, arg)) {
      // every factor must be congruent to the identity modulo I
      Mat G = gen_matrix(S, *spec, g);
      bool cong = true;
      for (int a = 0; a < d && cong; ++a)
        for (int b = 0; b < d && cong; ++b) {
          Elt delta = (a == b) ? S.sub(G.at(a, b), S.one()) : G.at(a, b);
          if (!I.contains(delta)) cong = false;
        }
      if (!cong) continue;
      Mat nxt = mat_mul(S, cur, G);
      if (nxt.at(w1 - 1, v1 - 1) != S.zero()) continue;
      cur = std::move(nxt);
      theta.gens.push_back(g);
      applied = true;
      break;
    }
    if (!applied)
      throw RingError("no clearing factor for cell (" +
                      std::to_string(w1) + "," + std::to_string(v1) + ")");
  }
  // certify: beta * eval(theta) = diag with units congruent to 1 mod I
  Mat D = mat_mul(S, beta, word_eval(S, theta));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j)
      if (i != j && D.at(i, j) != S.zero())
        throw RingError("diagonal_reduce: residual off-diagonal entry");
    if (!S.R->is_unit(D.at(i, i)))
      throw RingError("diagonal_reduce: non-unit diagonal");
    if (!I.contains(S.sub(D.at(i, i), S.one())))
      throw RingError("diagonal_reduce: diagonal not congruent to 1");
  }
  cert.word = std::move(theta);
  cert.residual = D;
  cert.trace.push_back("diagonal sweep complete");
  return cert;
}

namespace {

// BFS over the (f, rho(f)) plane subgroup generated by the diagonal-kind
// generators, searching a word whose plane restriction hits the target and
// which is the identity elsewhere.
std::optional<ElemWord> plane_word(const SpecPtr& spec, int f,
                                   const std::array<Elt, 4>& target) {
  RingSc S = spec->sc();
  const RingPtr& R = spec->ring();
  std::array<Elt, 4> id4{S.one(), R->zero(), R->zero(), S.one()};
  if (target == id4) return ElemWord{spec, {}};
  if (spec->hermitian() && f <= spec->r())
    return std::nullopt;  // no diagonal-kind generators in the A-zone
  GKind upper = spec->hermitian() ? GKind::HR : GKind::QR;
  GKind lower = spec->hermitian() ? GKind::HL : GKind::QL;
  // plane states as 2x2 matrices over R
  struct State {
    std::array<Elt, 4> m;
    int parent;
    int gen;
  };
  std::vector<ElemGen> gens;
  for (Elt a : spec->Lambda().elements()) {
    if (a == R->zero()) continue;
    ElemGen g1;
    g1.kind = upper;
    g1.i = f;
    g1.j = f;
    g1.arg = a;
    gens.push_back(g1);
    ElemGen g2;
    g2.kind = lower;
    g2.i = f;
    g2.j = f;
    g2.arg = R->conj(a);
    gens.push_back(g2);
  }
  if (gens.empty()) return std::nullopt;
  auto mul2 = [&](const std::array<Elt, 4>& A, const std::array<Elt, 4>& B) {
    return std::array<Elt, 4>{
        S.add(S.mul(A[0], B[0]), S.mul(A[1], B[2])),
        S.add(S.mul(A[0], B[1]), S.mul(A[1], B[3])),
        S.add(S.mul(A[2], B[0]), S.mul(A[3], B[2])),
        S.add(S.mul(A[2], B[1]), S.mul(A[3], B[3]))};
  };
  auto plane_of = [&](const ElemGen& g) {
    Mat G = gen_matrix(S, *spec, g);
    int n = spec->n();
    return std::array<Elt, 4>{G.at(f - 1, f - 1), G.at(f - 1, n + f - 1),
                              G.at(n + f - 1, f - 1),
                              G.at(n + f - 1, n + f - 1)};
  };
  std::vector<std::array<Elt, 4>> gen_planes;
  for (auto& g : gens) gen_planes.push_back(plane_of(g));
  std::map<std::array<Elt, 4>, int> seen;
  std::vector<State> states;
  states.push_back({id4, -1, -1});
  seen[states[0].m] = 0;
  std::deque<int> queue{0};
  while (!queue.empty() && states.size() < 200000) {
    int at = queue.front();
    queue.pop_front();
    for (size_t gi = 0; gi < gens.size(); ++gi) {
      auto nm = mul2(states[at].m, gen_planes[gi]);
      if (seen.count(nm)) continue;
      seen[nm] = int(states.size());
      states.push_back({nm, at, int(gi)});
      if (nm == target) {
        ElemWord w;
        w.spec = spec;
        int cur = int(states.size()) - 1;
        std::vector<ElemGen> rev;
        while (states[cur].parent >= 0) {
          rev.push_back(gens[states[cur].gen]);
          cur = states[cur].parent;
        }
        std::reverse(rev.begin(), rev.end());
        w.gens = rev;
        Mat W = word_eval(S, w);
        Mat expect = mat_identity(S, spec->dim());
        int n = spec->n();
        expect.at(f - 1, f - 1) = target[0];
        expect.at(f - 1, n + f - 1) = target[1];
        expect.at(n + f - 1, f - 1) = target[2];
        expect.at(n + f - 1, n + f - 1) = target[3];
        if (!mat_eq(S, W, expect)) return std::nullopt;
        return w;
      }
      queue.push_back(int(states.size()) - 1);
    }
  }
  return std::nullopt;
}

// A-zone plane cell I + a e_{k,rho(k)} (upper) or I + a e_{rho(k),k}
// (lower) as a commutator of vector generators; found by exact scan.
std::optional<ElemWord> aplane_cell_word(const SpecPtr& spec, int k,
                                         bool upper, Elt a) {
  RingSc S = spec->sc();
  int n = spec->n(), r = spec->r();
  Mat target = mat_identity(S, spec->dim());
  if (upper)
    target.at(k - 1, n + k - 1) = a;
  else
    target.at(n + k - 1, k - 1) = a;
  for (int x = r + 1; x <= n; ++x)
    for (Elt z = 0; z < S.R->order(); ++z)
      for (Elt c = 0; c < S.R->order(); ++c) {
        std::vector<Elt> zv;
        zv.resize(size_t(r), S.zero());
        std::vector<Elt> cv = zv;
        zv[k - 1] = z;
        cv[k - 1] = c;
        for (int order = 0; order < 2; ++order) {
          try {
            ElemGen g1 = make_vec_gen(S, *spec,
                                      order ? GKind::HRV : GKind::HM, x, zv);
            ElemGen g2 = make_vec_gen(S, *spec,
                                      order ? GKind::HM : GKind::HRV, x, cv);
            ElemWord w;
            w.spec = spec;
            w.gens = {g1, g2, gen_inverse(S, *spec, g1),
                      gen_inverse(S, *spec, g2)};
            if (mat_eq(S, word_eval(S, w), target)) return w;
          } catch (const RingError&) {
          }
        }
      }
  return std::nullopt;
}

}  // namespace

ReductionCertificate elementary_membership_semilocal(const SpecPtr& spec,
                                                     const Mat& sigma) {
  RingSc S = spec->sc();
  int n = spec->n(), r = spec->r();
  MemberCheck mc = is_special_member(*spec, sigma);
  if (!mc.ok) throw MembershipFailure("membership: " + mc.reason);
  ReductionCertificate cert;
  cert.claim = Claim::SigmaDecomposed;
  ElemWord left;  // eval(left) * sigma * eval(right) = reduced
  left.spec = spec;
  ElemWord right;
  right.spec = spec;
  Mat cur = sigma;
  int floor_k = spec->hermitian() ? r + 3 : 2;
  for (int k = n; k >= floor_k; --k) {
    // sub-spec at rank k, same generators by index locality
    SpecPtr sk = (k == n) ? spec
                          : FormSpec::make(spec->kind(), k, spec->ring(),
                                           spec->Lambda(), spec->a());
    RingSc Sk = sk->sc();
    // live block: rows/cols 1..k, n+1..n+k
    auto live = [&](int i) { return i < k ? i : n + (i - k); };
    Mat blk(2 * k);
    for (int a = 0; a < 2 * k; ++a)
      for (int b = 0; b < 2 * k; ++b)
        blk.at(a, b) = cur.at(live(a), live(b));
    VecT<RingSc> col(2 * k);
    for (int a = 0; a < 2 * k; ++a) col[a] = blk.at(a, 2 * k - 1);
    ReductionCertificate sub = reduce_unimodular_isotropic(sk, col);
    // map the word to the full spec (same kinds and indices)
    ElemWord wfull;
    wfull.spec = spec;
    for (auto& g : sub.word.gens) {
      ElemGen g2 = g;
      gen_matrix(S, *spec, g2);
      wfull.gens.push_back(std::move(g2));
    }
    cur = mat_mul(S, word_eval(S, wfull), cur);
    {
      ElemWord joined = wfull;
      joined = word_concat(std::move(joined), left);
      left = std::move(joined);
    }
    cert.trace.push_back("column rho(" + std::to_string(k) + ") reduced");
    // clear row rho(k) by right factors using the unit pivot
    for (int pass = 0; pass < 8; ++pass) {
      bool dirty = false;
      for (int b = 0; b < 2 * n; ++b) {
        if (b == n + k - 1) continue;
        Elt val = cur.at(n + k - 1, b);
        if (val == S.zero()) continue;
        dirty = true;
        Elt arg = S.neg(val);  // pivot is exactly 1
        bool ok = false;
        for (auto& g : clear_cell_candidates(S, *spec, n + k, b + 1, arg)) {
          Mat G = gen_matrix(S, *spec, g);
          Mat nxt = mat_mul(S, cur, G);
          if (nxt.at(n + k - 1, b) != S.zero()) continue;
          cur = std::move(nxt);
          right = word_concat(std::move(right), ElemWord{spec, {g}});
          ok = true;
          break;
        }
        if (!ok) {
          dirty = false;
          break;
        }
      }
      if (!dirty) break;
    }
    // clear row k and column k similarly (pivot (k,k) should be a unit now)
    for (int pass = 0; pass < 8; ++pass) {
      bool any = false;
      for (int b = 0; b < 2 * n; ++b) {
        if (b == k - 1) continue;
        Elt val = cur.at(k - 1, b);
        if (val == S.zero()) continue;
        auto piv = S.R->inv(cur.at(k - 1, k - 1));
        if (!piv) break;
        Elt arg = S.neg(S.mul(*piv, val));
        for (auto& g : clear_cell_candidates(S, *spec, k, b + 1, arg)) {
          Mat G = gen_matrix(S, *spec, g);
          Mat nxt = mat_mul(S, cur, G);
          if (nxt.at(k - 1, b) != S.zero()) continue;
          cur = std::move(nxt);
          right = word_concat(std::move(right), ElemWord{spec, {g}});
          any = true;
          break;
        }
      }
      if (!any) break;
    }
    // left clearing for the remaining column entries
    for (int pass = 0; pass < 8; ++pass) {
      bool any = false;
      for (int a = 0; a < 2 * n; ++a) {
        for (int piv_col : {k - 1, n + k - 1}) {
          if (a == piv_col) continue;
          Elt val = cur.at(a, piv_col);
          if (val == S.zero()) continue;
          auto pv = S.R->inv(cur.at(piv_col, piv_col));
          if (!pv) continue;
          Elt arg = S.neg(S.mul(val, *pv));
          for (auto& g :
               clear_cell_candidates(S, *spec, a + 1, piv_col + 1, arg)) {
            Mat G = gen_matrix(S, *spec, g);
            Mat nxt = mat_mul(S, G, cur);
            if (nxt.at(a, piv_col) != S.zero()) continue;
            cur = std::move(nxt);
            {
              ElemWord joined;
              joined.spec = spec;
              joined.gens.push_back(g);
              joined = word_concat(std::move(joined), left);
              left = std::move(joined);
            }
            any = true;
            break;
          }
        }
      }
      if (!any) break;
    }
  }
  // floor: try to finish into a product of hyperbolic units and merge them
  // toward a single plane unit with a BFS word
  {
    bool diag = true;
    for (int a = 0; a < 2 * n; ++a)
      for (int b = 0; b < 2 * n; ++b)
        if (a != b && cur.at(a, b) != S.zero()) diag = false;
    if (!diag) {
      // generic cell clearing with unit pivots
      for (int pass = 0; pass < 32; ++pass) {
        bool any = false;
        for (int a = 0; a < 2 * n; ++a)
          for (int b = 0; b < 2 * n; ++b) {
            if (a == b || cur.at(a, b) == S.zero()) continue;
            auto piv = S.R->inv(cur.at(a, a));
            if (!piv) continue;
            Elt arg = S.neg(S.mul(*piv, cur.at(a, b)));
            for (auto& g :
                 clear_cell_candidates(S, *spec, a + 1, b + 1, arg)) {
              Mat G = gen_matrix(S, *spec, g);
              Mat nxt = mat_mul(S, cur, G);
              if (nxt.at(a, b) != S.zero()) continue;
              cur = std::move(nxt);
              right = word_concat(std::move(right), ElemWord{spec, {g}});
              any = true;
              break;
            }
          }
        if (!any) break;
      }
    }
    // residual block-diagonal across hyperbolic planes: clear each plane
    // by a BFS word in its own diagonal-kind subgroup
    {
      bool blockdiag = true;
      for (int a = 0; a < 2 * n && blockdiag; ++a)
        for (int b = 0; b < 2 * n && blockdiag; ++b) {
          int fa = a % n, fb = b % n;
          if (fa != fb && cur.at(a, b) != S.zero()) blockdiag = false;
        }
      if (blockdiag && spec->hermitian()) {
        // clear A-zone plane cells with unit diagonals first
        for (int pass = 0; pass < 8; ++pass) {
          bool any = false;
          for (int f = 1; f <= r; ++f) {
            if (cur.at(f - 1, f - 1) != S.one() ||
                cur.at(n + f - 1, n + f - 1) != S.one())
              continue;
            Elt upperv = cur.at(f - 1, n + f - 1);
            if (upperv != S.zero()) {
              auto w = aplane_cell_word(spec, f, true, S.neg(upperv));
              if (w) {
                cur = mat_mul(S, cur, word_eval(S, *w));
                right = word_concat(std::move(right), *w);
                any = true;
              }
            }
            Elt lowerv = cur.at(n + f - 1, f - 1);
            if (lowerv != S.zero()) {
              auto w = aplane_cell_word(spec, f, false, S.neg(lowerv));
              if (w) {
                cur = mat_mul(S, cur, word_eval(S, *w));
                right = word_concat(std::move(right), *w);
                any = true;
              }
            }
          }
          if (!any) break;
        }
      }
      if (blockdiag) {
        for (int f = 1; f <= n; ++f) {
          std::array<Elt, 4> tgt{
              cur.at(f - 1, f - 1), cur.at(f - 1, n + f - 1),
              cur.at(n + f - 1, f - 1), cur.at(n + f - 1, n + f - 1)};
          std::array<Elt, 4> id4{S.one(), S.zero(), S.zero(), S.one()};
          if (tgt == id4) continue;
          Mat plane = mat_identity(S, spec->dim());
          plane.at(f - 1, f - 1) = tgt[0];
          plane.at(f - 1, n + f - 1) = tgt[1];
          plane.at(n + f - 1, f - 1) = tgt[2];
          plane.at(n + f - 1, n + f - 1) = tgt[3];
          auto pinv = mat_inverse(S, plane);
          if (!pinv) continue;
          std::array<Elt, 4> tinv{pinv->at(f - 1, f - 1),
                                  pinv->at(f - 1, n + f - 1),
                                  pinv->at(n + f - 1, f - 1),
                                  pinv->at(n + f - 1, n + f - 1)};
          auto pw = plane_word(spec, f, tinv);
          if (pw) {
            cur = mat_mul(S, cur, word_eval(S, *pw));
            right = word_concat(std::move(right), *pw);
          }
        }
      }
    }
    diag = true;
    for (int a = 0; a < 2 * n; ++a)
      for (int b = 0; b < 2 * n; ++b)
        if (a != b && cur.at(a, b) != S.zero()) diag = false;
    if (diag) {
      // merge diag(u_1..u_n, ...) into the last plane via pair words
      for (int a = (spec->hermitian() ? r + 1 : 1); a <= n - 1; ++a) {
        Elt ua = cur.at(a - 1, a - 1);
        if (ua == S.one()) continue;
        auto uai = S.R->inv(ua);
        if (!uai) continue;
        try {
          ElemWord wpair = hyperbolic_pair_word(spec, a, n, *uai);
          cur = mat_mul(S, cur, word_eval(S, wpair));
          right = word_concat(std::move(right), wpair);
        } catch (const RingError&) {
        }
      }
      Elt U = cur.at(n - 1, n - 1);
      if (U != S.one()) {
        Elt ui = S.R->inv(U).value();
        auto pw = plane_word(
            spec, n,
            {ui, S.zero(), S.zero(), S.R->inv(S.conj(ui)).value()});
        if (pw) {
          cur = mat_mul(S, cur, word_eval(S, *pw));
          right = word_concat(std::move(right), *pw);
        }
      }
    }
  }
  if (mat_is_identity(S, cur)) {
    // sigma = eval(left)^-1 * eval(right)^-1
    ElemWord total = word_inverse(S, left);
    total = word_concat(std::move(total), word_inverse(S, right));
    if (!mat_eq(S, word_eval(S, total), sigma))
      throw RingError("membership certificate failed re-evaluation");
    cert.word = std::move(total);
    cert.trace.push_back("full decomposition");
  } else {
    cert.residual = cur;
    cert.trace.push_back("residual block remains");
  }
  return cert;
}

}  // namespace qhg
