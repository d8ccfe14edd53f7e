#include "qhg/conj_table.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qhg {

using nlohmann::json;

namespace {

std::string shape_to_sym(const FactorShape& f) {
  std::ostringstream os;
  os << (f.kind == GKind::QE && f.isym == "#" ? "hyp" : kind_name(f.kind))
     << ":" << f.isym << ":" << f.jsym;
  return os.str();
}

json shape_to_json(const FactorShape& f) {
  json j;
  j["kind"] = kind_name(f.kind);
  j["i"] = f.isym;
  j["j"] = f.jsym;
  if (!f.recipe.empty()) j["recipe"] = f.recipe;
  return j;
}

FactorShape shape_from_json(const json& j) {
  FactorShape f;
  f.kind = kind_from_name(j.at("kind").get<std::string>());
  f.isym = j.at("i").get<std::string>();
  f.jsym = j.at("j").get<std::string>();
  f.recipe = j.value("recipe", "");
  return f;
}

}  // namespace

std::string ConjTable::default_path() {
  return std::string(QHG_DATA_DIR) + "/conj_rules.json";
}

ConjTable ConjTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw RingError("cannot open rule table: " + path);
  json j;
  in >> j;
  ConjTable t;
  t.version = j.value("version", 1);
  for (auto& rj : j.at("rules")) {
    ConjRule r;
    r.key = rj.at("key").get<std::string>();
    r.split = rj.value("split", false);
    if (r.split) {
      r.split_u = shape_from_json(rj.at("u"));
      r.split_w = shape_from_json(rj.at("w"));
    }
    if (rj.contains("factors"))
      for (auto& fj : rj.at("factors")) r.factors.push_back(shape_from_json(fj));
    t.add(std::move(r));
  }
  return t;
}

void ConjTable::save(const std::string& path) const {
  json j;
  j["version"] = version;
  j["rules"] = json::array();
  for (auto& [k, r] : rules_) {
    json rj;
    rj["key"] = r.key;
    if (r.split) {
      rj["split"] = true;
      rj["u"] = shape_to_json(r.split_u);
      rj["w"] = shape_to_json(r.split_w);
    }
    if (!r.factors.empty()) {
      rj["factors"] = json::array();
      for (auto& f : r.factors) rj["factors"].push_back(shape_to_json(f));
    }
    j["rules"].push_back(rj);
  }
  std::ofstream out(path);
  out << j.dump(1) << "\n";
}

const ConjRule* ConjTable::find(const std::string& key) const {
  auto it = rules_.find(key);
  return it == rules_.end() ? nullptr : &it->second;
}

void ConjTable::add(ConjRule rule) { rules_[rule.key] = std::move(rule); }

void ConjTable::erase(const std::string& key) { rules_.erase(key); }

std::string conj_case_key(const FormSpec& spec, GKind conj_kind, int p,
                          int q, GKind target_kind, int i, int j) {
  int idx[4] = {p, q, i, j};
  bool used[4] = {true, !kind_is_vector(conj_kind), true,
                  !kind_is_vector(target_kind)};
  std::string pattern, zones;
  std::map<int, char> label;
  char next = 'a';
  for (int t = 0; t < 4; ++t) {
    if (!used[t]) {
      pattern += '.';
      zones += '.';
      continue;
    }
    if (!label.count(idx[t])) label[idx[t]] = next++;
    pattern += label[idx[t]];
    zones += (idx[t] <= spec.r()) ? 'A' : 'B';
  }
  return std::string(kind_name(conj_kind)) + "|" + kind_name(target_kind) +
         "|" + pattern + "|" + zones;
}

namespace {

// generic peel candidates: generators whose primary cell matches a
// non-identity cell of C, plus the hyperbolic 4-factor macro
struct Candidate {
  ElemGen gen;
  bool ok = false;
};

std::vector<ElemGen> peel_candidates(const RingSc& S, const FormSpec& spec,
                                     const Mat& C) {
  std::vector<ElemGen> out;
  int n = spec.n(), r = spec.r();
  bool herm = spec.hermitian();
  auto try_push = [&](GKind k, int i, int j, Elt arg) {
    if (S.is_zero(arg)) return;
    ElemGen g;
    g.kind = k;
    g.i = i;
    g.j = j;
    g.arg = arg;
    try {
      gen_matrix(S, spec, g);
      out.push_back(std::move(g));
    } catch (const RingError&) {
    }
  };
  auto try_push_vec = [&](GKind k, int i) {
    std::vector<Elt> zeta;
    zeta.resize(size_t(r));
    bool nz = false;
    for (int kk = 1; kk <= r; ++kk) {
      Elt v = (k == GKind::HM) ? C.at(kk - 1, i - 1) : C.at(kk - 1, n + i - 1);
      zeta[kk - 1] = v;
      nz = nz || !S.is_zero(v);
    }
    if (!nz) return;
    Elt cell = (k == GKind::HM) ? C.at(n + i - 1, i - 1)
                                : C.at(i - 1, n + i - 1);
    for (Elt zf : zf_from_cell(S, spec, k, cell)) {
      ElemGen g;
      g.kind = k;
      g.i = i;
      g.zeta = zeta;
      g.zf = zf;
      try {
        gen_matrix(S, spec, g);
        out.push_back(std::move(g));
        break;
      } catch (const RingError&) {
      }
    }
  };
  for (int a = 1; a <= 2 * n && out.size() < 10; ++a) {
    for (int b = 1; b <= 2 * n && out.size() < 10; ++b) {
      if (a == b) continue;
      Elt cell = C.at(a - 1, b - 1);
      if (S.is_zero(cell)) continue;
      if (a <= n && b <= n) {
        if (a != b) try_push(herm ? GKind::HE : GKind::QE, a, b, cell);
        if (herm && a <= r) try_push_vec(GKind::HM, b);
      } else if (a <= n && b > n) {
        try_push(herm ? GKind::HR : GKind::QR, a, b - n, cell);
        if (herm && a <= r) try_push_vec(GKind::HRV, b - n);
      } else if (a > n && b <= n) {
        try_push(herm ? GKind::HL : GKind::QL, a - n, b, cell);
      } else {
        if (a != b)
          try_push(herm ? GKind::HE : GKind::QE, b - n, a - n,
                   S.conj(S.neg(cell)));
      }
    }
  }
  return out;
}

bool peel_rec(const RingSc& S, const FormSpec& spec, const Mat& C, int depth,
              std::vector<ElemGen>& acc) {
  if (mat_is_identity(S, C)) return true;
  if (depth == 0) return false;
  for (auto& cand : peel_candidates(S, spec, C)) {
    Mat G = gen_matrix(S, spec, cand);
    Mat Ginv = gen_matrix(S, spec, gen_inverse(S, spec, cand));
    Mat rest = mat_mul(S, Ginv, C);
    acc.push_back(cand);
    if (peel_rec(S, spec, rest, depth - 1, acc)) return true;
    acc.pop_back();
  }
  return false;
}

}  // namespace

namespace conj_detail {
std::optional<std::vector<ElemGen>> peel_generators(const RingSc& S,
                                                    const FormSpec& spec,
                                                    const Mat& C,
                                                    int max_depth) {
  std::vector<ElemGen> acc;
  if (peel_rec(S, spec, C, max_depth, acc)) return acc;
  return std::nullopt;
}
}  // namespace conj_detail

namespace {

int resolve_sym(const std::string& sym, int p, int q, int i, int j,
                int aux) {
  if (sym == "p") return p;
  if (sym == "q") return q;
  if (sym == "i") return i;
  if (sym == "j") return j;
  if (sym == "k") return aux;
  throw RingError("bad index symbol: " + sym);
}

Poly poly_shift_var(const RingCtx& R, const Poly& pexpr, int var,
                    uint32_t m) {
  Poly out;
  for (auto& t : pexpr.terms()) {
    if (t.first.e[var] < m)
      throw InsufficientDivisibility("argument not divisible enough");
    Poly::Mono mo = t.first;
    mo.e[var] -= m;
    out.raw().push_back({mo, t.second});
  }
  out.normalize(R);
  return out;
}

bool poly_gen_div(const PolyElemGen& g, int var, uint32_t m) {
  if (!kind_is_vector(g.kind)) return g.arg.divisible_by(var, m);
  bool ok = g.zf.divisible_by(var, m);
  for (auto& z : g.zeta) ok = ok && z.divisible_by(var, m);
  return ok;
}

// solve the factor shapes against the residual, consuming it left-to-right
bool apply_shapes(const PolySc& S, const FormSpec& spec,
                  const std::vector<FactorShape>& shapes, size_t at,
                  PolyMat residual, int p, int q, int i, int j, int aux,
                  uint32_t m, int var, std::vector<PolyElemGen>& acc) {
  int n = spec.n(), r = spec.r();
  if (at == shapes.size()) return mat_is_identity(S, residual);
  const FactorShape& sh = shapes[at];
  int fi = resolve_sym(sh.isym, p, q, i, j, aux);
  int fj = sh.jsym.empty() ? 0 : resolve_sym(sh.jsym, p, q, i, j, aux);
  if (sh.recipe == "hyp") {
    // hyperbolic plane unit at top index fi: u = inverse of the rho(fi)
    // diagonal entry; expand as four congruence-level plane factors
    // lower(x) upper(y) lower(z) upper(w), y z = u - 1, x = -z u^-1,
    // w = -u^-1 y, with the X_var power split evenly
    const Poly& dlow = residual.at(n + fi - 1, n + fi - 1);
    if (!poly_is_unit(*S.R, dlow)) return false;
    Poly u = poly_inv_unit(*S.R, dlow);
    Poly um1 = psub(*S.R, u, Poly::constant(S.R->one()));
    if (um1.is_zero()) return apply_shapes(S, spec, shapes, at + 1,
                                           std::move(residual), p, q, i, j,
                                           aux, m, var, acc);
    if (!um1.divisible_by(var, 2 * m)) return false;
    Poly y = Poly::term(S.R->one(), var == 0 ? m : 0, var == 1 ? m : 0,
                        var == 2 ? m : 0);
    Poly z = poly_shift_var(*S.R, um1, var, m);
    Poly uinv = dlow;  // u^-1 = the diagonal entry itself
    Poly x = pneg(*S.R, pmul(*S.R, z, uinv));
    Poly wv = pneg(*S.R, pmul(*S.R, uinv, y));
    GKind lower = spec.hermitian() ? GKind::HL : GKind::QL;
    GKind upper = spec.hermitian() ? GKind::HR : GKind::QR;
    std::vector<std::pair<GKind, Poly>> seq{
        {lower, x}, {upper, y}, {lower, z}, {upper, wv}};
    PolyMat rest = residual;
    std::vector<PolyElemGen> four;
    try {
      for (auto& [kk, arg] : seq) {
        PolyElemGen g;
        g.kind = kk;
        g.i = fi;
        g.j = fi;
        g.arg = arg;
        PolyMat G = gen_matrix(S, spec, g);
        auto Gi = mat_inverse(S, G);
        if (!Gi) return false;
        rest = mat_mul(S, *Gi, rest);
        four.push_back(std::move(g));
      }
    } catch (const RingError&) {
      return false;
    }
    for (auto& g : four) acc.push_back(g);
    if (apply_shapes(S, spec, shapes, at + 1, std::move(rest), p, q, i, j,
                     aux, m, var, acc))
      return true;
    acc.resize(acc.size() - four.size());
    return false;
  }
  std::vector<PolyElemGen> cands;
  if (!kind_is_vector(sh.kind)) {
    PolyElemGen g;
    g.kind = sh.kind;
    g.i = fi;
    g.j = fj;
    switch (sh.kind) {
      case GKind::QE:
      case GKind::HE:
        g.arg = residual.at(fi - 1, fj - 1);
        break;
      case GKind::QR:
      case GKind::HR:
        g.arg = residual.at(fi - 1, n + fj - 1);
        break;
      case GKind::QL:
      case GKind::HL:
        g.arg = residual.at(n + fi - 1, fj - 1);
        break;
      default:
        return false;
    }
    cands.push_back(std::move(g));
  } else {
    std::vector<Poly> zeta;
    for (int kk = 1; kk <= r; ++kk)
      zeta.push_back(sh.kind == GKind::HM
                         ? residual.at(kk - 1, fi - 1)
                         : residual.at(kk - 1, n + fi - 1));
    Poly cell = (sh.kind == GKind::HM) ? residual.at(n + fi - 1, fi - 1)
                                       : residual.at(fi - 1, n + fi - 1);
    for (auto& zf : zf_from_cell(S, spec, sh.kind, cell)) {
      PolyElemGen g;
      g.kind = sh.kind;
      g.i = fi;
      g.zeta = zeta;
      g.zf = zf;
      cands.push_back(std::move(g));
    }
  }
  for (auto& g : cands) {
    PolyMat G;
    try {
      G = gen_matrix(S, spec, g);
    } catch (const RingError&) {
      continue;
    }
    auto Gi = mat_inverse(S, G);
    if (!Gi) continue;
    PolyMat rest = mat_mul(S, *Gi, residual);
    acc.push_back(g);
    if (apply_shapes(S, spec, shapes, at + 1, std::move(rest), p, q, i, j,
                     aux, m, var, acc))
      return true;
    acc.pop_back();
  }
  return false;
}

int pick_aux(const FormSpec& spec, std::initializer_list<int> used) {
  for (int k = spec.r() + 1; k <= spec.n(); ++k) {
    bool clash = false;
    for (int u : used) clash = clash || (u == k);
    if (!clash) return k;
  }
  throw RingError("no auxiliary index available (rank too small)");
}

}  // namespace

namespace {

// g h g^-1 as a word with arguments divisible by X_var^m. Commuting and
// direct cases need h's arguments divisible by X_var^m only; the split case
// needs X_var^{2m} (the power halves once at the split).
PolyElemWord absorb_single_impl(const PolySc& S, const SpecPtr& spec,
                                const ConjTable& table, const PolyElemGen& g,
                                const PolyElemGen& h, uint32_t m, int var,
                                bool allow_split = true) {
  if (!poly_gen_div(h, var, m))
    throw InsufficientDivisibility("target argument not divisible by m");
  PolyMat G = gen_matrix(S, *spec, g);
  PolyMat H = gen_matrix(S, *spec, h);
  PolyElemWord out;
  out.spec = spec;
  if (mat_eq(S, mat_mul(S, G, H), mat_mul(S, H, G))) {
    out.gens.push_back(h);
    return out;
  }
  std::string key =
      conj_case_key(*spec, g.kind, g.i, g.j, h.kind, h.i, h.j);
  const ConjRule* rule = table.find(key);
  if (!rule) throw RuleGap("no rewrite rule for case " + key);
  PolyMat Ginv = gen_matrix(S, *spec, gen_inverse(S, *spec, g));
  PolyMat C = mat_mul(S, G, mat_mul(S, H, Ginv));
  if (!rule->split) {
    bool needs_aux = false;
    for (auto& f : rule->factors)
      needs_aux = needs_aux || f.isym == "k" || f.jsym == "k";
    int aux = needs_aux ? pick_aux(*spec, {g.i, g.j, h.i, h.j}) : 0;
    std::vector<PolyElemGen> acc;
    if (!apply_shapes(S, *spec, rule->factors, 0, C, g.i, g.j, h.i, h.j, aux,
                      m, var, acc))
      throw RuleGap("rule " + key +
                    " failed verification against the exact conjugate");
    out.gens = std::move(acc);
  } else {
    // target = [u, w]; conjugate each side (direct cases) and expand
    if (!allow_split)
      throw RuleGap("nested split encountered for case " + key);
    if (!poly_gen_div(h, var, 2 * m))
      throw InsufficientDivisibility("split case needs divisibility by 2m");
    int aux = pick_aux(*spec, {g.i, g.j, h.i, h.j});
    int ui = resolve_sym(rule->split_u.isym, g.i, g.j, h.i, h.j, aux);
    int uj = resolve_sym(rule->split_u.jsym, g.i, g.j, h.i, h.j, aux);
    int wi = resolve_sym(rule->split_w.isym, g.i, g.j, h.i, h.j, aux);
    int wj = resolve_sym(rule->split_w.jsym, g.i, g.j, h.i, h.j, aux);
    if (kind_is_vector(h.kind))
      throw RuleGap("split rule on vector target not supported: " + key);
    PolyElemGen u;
    u.kind = rule->split_u.kind;
    u.i = ui;
    u.j = uj;
    u.arg = Poly::term(S.R->one(), var == 0 ? m : 0, var == 1 ? m : 0,
                       var == 2 ? m : 0);
    PolyElemGen w;
    w.kind = rule->split_w.kind;
    w.i = wi;
    w.j = wj;
    w.arg = poly_shift_var(*S.R, h.arg, var, m);
    PolyMat U = gen_matrix(S, *spec, u);
    PolyMat W = gen_matrix(S, *spec, w);
    PolyElemGen uinv = gen_inverse(S, *spec, u);
    PolyElemGen winv = gen_inverse(S, *spec, w);
    PolyMat comm = mat_mul(
        S, U,
        mat_mul(S, W,
                mat_mul(S, gen_matrix(S, *spec, uinv),
                        gen_matrix(S, *spec, winv))));
    // H = [u, w] . T; trailing factors of T are solved from the residual
    auto commi = mat_inverse(S, comm);
    if (!commi) throw RuleGap("split commutator not invertible");
    PolyMat T = mat_mul(S, *commi, H);
    std::vector<PolyElemGen> trailing;
    if (!apply_shapes(S, *spec, rule->factors, 0, T, g.i, g.j, h.i, h.j, aux,
                      m, var, trailing))
      throw RuleGap("split rule " + key + " does not reproduce the target");
    // g [u,w] T g^-1 factor by factor; sides carry X^m and must hit
    // commute/direct rules only, trailing factors carry X^{2m}
    auto abs_side = [&](const PolyElemGen& side, bool allow) {
      return absorb_single_impl(S, spec, table, g, side, m, var, allow);
    };
    PolyElemWord gu = abs_side(u, false), gw = abs_side(w, false);
    PolyElemWord guv = word_inverse(S, gu), gwv = word_inverse(S, gw);
    out = gu;
    out = word_concat(std::move(out), gw);
    out = word_concat(std::move(out), guv);
    out = word_concat(std::move(out), gwv);
    for (auto& tf : trailing) {
      PolyElemWord piece = abs_side(tf, false);
      out = word_concat(std::move(out), piece);
    }
  }
  PolyMat got = word_eval(S, out);
  if (!mat_eq(S, got, C))
    throw RuleGap("rewrite for " + key + " failed final verification");
  for (auto& f : out.gens)
    if (!poly_gen_div(f, var, m))
      throw RuleGap("rewrite for " + key + " violates divisibility");
  return out;
}

}  // namespace

PolyElemWord conjugate_absorb(const PolySc& S, const ConjTable& table,
                              const PolyElemWord& eps, const PolyElemGen& h,
                              uint32_t m, int var) {
  const SpecPtr& spec = eps.spec;
  uint64_t need = uint64_t(m) << eps.size();
  if (need > (1u << 30))
    throw InsufficientDivisibility("conjugator too long for divisibility");
  if (!poly_gen_div(h, var, uint32_t(need)))
    throw InsufficientDivisibility(
        "target not divisible by 2^len(eps) * m");
  PolyElemWord cur;
  cur.spec = spec;
  cur.gens.push_back(h);
  uint32_t level_m = uint32_t(need);
  // innermost conjugator acts first; each level may halve the divisibility
  for (auto it = eps.gens.rbegin(); it != eps.gens.rend(); ++it) {
    level_m /= 2;
    PolyElemWord next;
    next.spec = spec;
    for (const auto& f : cur.gens) {
      PolyElemWord piece =
          absorb_single_impl(S, spec, table, *it, f, level_m, var);
      next = word_concat(std::move(next), piece);
    }
    cur = std::move(next);
  }
  // final certification against the direct conjugation
  PolyMat E = word_eval(S, eps);
  auto Ei = mat_inverse(S, E);
  if (!Ei) throw RingError("conjugator word not invertible");
  PolyMat expect =
      mat_mul(S, E, mat_mul(S, gen_matrix(S, *spec, h), *Ei));
  if (!mat_eq(S, word_eval(S, cur), expect))
    throw RuleGap("conjugate_absorb failed final certification");
  for (auto& f : cur.gens)
    if (!poly_gen_div(f, var, m))
      throw RuleGap("conjugate_absorb violates divisibility");
  return cur;
}

}  // namespace qhg
