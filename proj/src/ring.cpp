#include "qhg/ring.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <sstream>

namespace qhg {

namespace {

uint32_t umod(long long v, uint32_t m) {
  long long r = v % (long long)m;
  if (r < 0) r += m;
  return uint32_t(r);
}

std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

// Parses one factor: "Z/4" or "Z/3[t]/(t^2+1)" or "Z/3[t]/(t^2-1)".
RingFactor parse_factor(const std::string& in) {
  std::string s = strip(in);
  if (s.rfind("Z/", 0) != 0)
    throw PresentationInvalid("factor must start with Z/: " + s);
  size_t pos = 2;
  size_t end = pos;
  while (end < s.size() && std::isdigit((unsigned char)s[end])) end++;
  if (end == pos) throw PresentationInvalid("missing modulus: " + s);
  RingFactor f;
  f.mod = uint32_t(std::stoul(s.substr(pos, end - pos)));
  if (f.mod < 2) throw PresentationInvalid("modulus < 2 in " + s);
  if (end == s.size()) return f;
  // quadratic extension "[t]/(t^2<+|-><c>)"
  std::string rest = s.substr(end);
  if (rest.rfind("[t]/(t^2", 0) != 0)
    throw PresentationInvalid("bad extension syntax: " + s);
  std::string body = rest.substr(8);
  if (body.empty() || body.back() != ')')
    throw PresentationInvalid("bad extension syntax: " + s);
  body.pop_back();
  f.quadratic = true;
  if (body.empty()) {
    f.tsq = 0;  // t^2 = 0
  } else if (body[0] == '+' || body[0] == '-') {
    long long c = std::stoll(body);
    // modulus polynomial is t^2 + c, so t^2 = -c
    f.tsq = umod(-c, f.mod);
  } else {
    throw PresentationInvalid("polynomial modulus not monic in t^2: " + s);
  }
  return f;
}

}  // namespace

RingPtr RingCtx::make(const std::string& presentation,
                      const std::string& involution,
                      const std::string& lambda) {
  auto R = std::shared_ptr<RingCtx>(new RingCtx());
  R->presentation_ = strip(presentation);
  // split on 'x' separators (product presentation)
  std::vector<std::string> parts;
  {
    std::string cur;
    const std::string& p = R->presentation_;
    for (size_t i = 0; i < p.size(); ++i) {
      if (p[i] == 'x' || p[i] == 'X') {
        // 'x' only splits when surrounded by space or factor boundary
        parts.push_back(cur);
        cur.clear();
      } else {
        cur += p[i];
      }
    }
    parts.push_back(cur);
  }
  for (auto& ps : parts) {
    std::string t = strip(ps);
    if (t.empty()) throw PresentationInvalid("empty factor in " + presentation);
    R->factors_.push_back(parse_factor(t));
  }
  bool conj = false;
  std::string inv = strip(involution);
  if (inv == "t->-t") {
    conj = true;
  } else if (inv == "trivial" || inv.empty()) {
    conj = false;
  } else {
    throw PresentationInvalid("unknown involution: " + involution);
  }
  uint64_t order = 1;
  for (auto& f : R->factors_) {
    f.conj_t = f.quadratic && conj;
    order *= f.size();
    if (order > (1ull << 24))
      throw PresentationInvalid("ring too large: " + presentation);
  }
  R->order_ = order;
  R->finalize();
  R->lambda_ = R->parse_element(lambda);
  // lambda_bar = inverse of lambda must exist; validate_ctx re-checks axioms
  Elt lb = R->conj(R->lambda_);
  if (R->mul(R->lambda_, lb) != R->one_ || R->mul(lb, R->lambda_) != R->one_)
    throw PresentationInvalid("lambda*conj(lambda) != 1 for lambda=" + lambda);
  R->lambda_bar_ = lb;
  return R;
}

RingPtr RingCtx::make_quotient(const RingPtr& base,
                               const std::vector<Elt>& ideal_elements,
                               std::optional<Elt> section_mult,
                               const std::string& tag) {
  // Flatten: quotients are always expressed over the structural root.
  RingPtr root = base->is_quotient() ? base->root() : base;
  std::vector<uint8_t> in_ideal(root->order(), 0);
  if (base->is_quotient()) {
    // pull the ideal (and the base's kernel) back to the root
    for (Elt r = 0; r < root->order(); ++r)
      if (base->canon(r) == base->canon(root->zero())) in_ideal[r] = 1;
    for (Elt e : ideal_elements) in_ideal[base->lift(e)] = 1;
    // additive closure of the union
    bool grew = true;
    std::vector<Elt> members;
    for (Elt r = 0; r < root->order(); ++r)
      if (in_ideal[r]) members.push_back(r);
    while (grew) {
      grew = false;
      std::vector<Elt> cur = members;
      for (Elt a : cur)
        for (Elt b : cur) {
          Elt s = root->add(a, b);
          if (!in_ideal[s]) {
            in_ideal[s] = 1;
            members.push_back(s);
            grew = true;
          }
        }
    }
  } else {
    for (Elt e : ideal_elements) in_ideal[e] = 1;
  }
  if (!in_ideal[root->zero()]) throw RingError("ideal must contain 0");

  auto Q = std::shared_ptr<RingCtx>(new RingCtx());
  Q->root_ = root;
  Q->factors_ = root->factors_;
  Q->radix_ = root->radix_;
  Q->plane_mod_ = root->plane_mod_;
  Q->presentation_ = root->presentation_ + " / " + tag;
  // cosets: canonical rep = least root index in x + I
  std::vector<Elt> ideal;
  for (Elt r = 0; r < root->order(); ++r)
    if (in_ideal[r]) ideal.push_back(r);
  Q->canon_.assign(root->order(), Elt(-1));
  for (Elt x = 0; x < root->order(); ++x) {
    if (Q->canon_[x] != Elt(-1)) continue;
    Elt rep = x;
    std::vector<Elt> coset;
    for (Elt i : ideal) {
      Elt y = root->add(x, i);
      coset.push_back(y);
      if (y < rep) rep = y;
    }
    Elt idx = Elt(Q->reps_.size());
    // rep must itself be unseen; since we scan ascending, rep == x here
    Q->reps_.push_back(rep);
    for (Elt y : coset) Q->canon_[y] = idx;
  }
  Q->order_ = Q->reps_.size();
  Q->zero_ = Q->canon_[root->zero()];
  Q->one_ = Q->canon_[root->one()];
  // involution must preserve the ideal for lambda/conj to descend
  for (Elt i : ideal)
    if (Q->canon_[root->conj(i)] != Q->zero_)
      throw RingError("ideal not stable under involution");
  Q->trivial_invol_ = root->trivial_invol_;
  Q->section_mult_ = section_mult;
  // build tables through the root
  if (Q->order_ <= kTableLimit) {
    Q->tables_ = true;
    uint64_t n = Q->order_;
    Q->add_tab_.resize(n * n);
    Q->mul_tab_.resize(n * n);
    Q->neg_tab_.resize(n);
    Q->conj_tab_.resize(n);
    for (uint64_t a = 0; a < n; ++a) {
      Elt ra = Q->reps_[a];
      Q->neg_tab_[a] = Q->canon_[root->neg(ra)];
      Q->conj_tab_[a] = Q->canon_[root->conj(ra)];
      for (uint64_t b = 0; b < n; ++b) {
        Elt rb = Q->reps_[b];
        Q->add_tab_[a * n + b] = Q->canon_[root->add(ra, rb)];
        Q->mul_tab_[a * n + b] = Q->canon_[root->mul(ra, rb)];
      }
    }
  }
  // unit table
  {
    uint64_t n = Q->order_;
    Q->unit_tab_.assign(n, 0);
    Q->inv_tab_.assign(n, 0);
    for (uint64_t a = 0; a < n; ++a)
      for (uint64_t b = 0; b < n; ++b)
        if (Q->mul(Elt(a), Elt(b)) == Q->one_ &&
            Q->mul(Elt(b), Elt(a)) == Q->one_) {
          Q->unit_tab_[a] = 1;
          Q->inv_tab_[a] = uint16_t(b);
          break;
        }
  }
  Q->lambda_ = Q->canon_[root->lambda_];
  Q->lambda_bar_ = Q->canon_[root->lambda_bar_];
  if (Q->mul(Q->lambda_, Q->lambda_bar_) != Q->one_)
    throw RingError("lambda does not stay a symmetry in quotient");
  return Q;
}

void RingCtx::finalize() {
  radix_.clear();
  uint64_t r = 1;
  for (auto& f : factors_) {
    radix_.push_back(r);
    r *= f.size();
  }
  plane_mod_.clear();
  for (auto& f : factors_) {
    plane_mod_.push_back(f.mod);
    if (f.quadratic) plane_mod_.push_back(f.mod);
  }
  zero_ = 0;
  // one: digit 1 in each factor
  {
    uint64_t v = 0;
    for (size_t i = 0; i < factors_.size(); ++i) v += radix_[i] * 1;
    one_ = Elt(v);
  }
  trivial_invol_ = true;
  for (auto& f : factors_)
    if (f.conj_t) trivial_invol_ = false;

  if (order_ <= kTableLimit) {
    tables_ = true;
    uint64_t n = order_;
    add_tab_.resize(n * n);
    mul_tab_.resize(n * n);
    neg_tab_.resize(n);
    conj_tab_.resize(n);
    for (uint64_t a = 0; a < n; ++a) {
      neg_tab_[a] = uint16_t(raw_neg(Elt(a)));
      conj_tab_[a] = uint16_t(raw_conj(Elt(a)));
      for (uint64_t b = 0; b < n; ++b) {
        add_tab_[a * n + b] = uint16_t(raw_add(Elt(a), Elt(b)));
        mul_tab_[a * n + b] = uint16_t(raw_mul(Elt(a), Elt(b)));
      }
    }
  }
  {
    uint64_t n = order_;
    unit_tab_.assign(n, 0);
    inv_tab_.assign(n, 0);
    for (uint64_t a = 0; a < n; ++a)
      for (uint64_t b = 0; b < n; ++b)
        if (mul(Elt(a), Elt(b)) == one_ && mul(Elt(b), Elt(a)) == one_) {
          unit_tab_[a] = 1;
          inv_tab_[a] = uint16_t(b);
          break;
        }
  }
}

// ---- structural (root) arithmetic ----

Elt RingCtx::raw_add(Elt a, Elt b) const {
  uint64_t out = 0;
  for (size_t i = 0; i < factors_.size(); ++i) {
    const RingFactor& f = factors_[i];
    uint64_t da = (a / radix_[i]) % f.size();
    uint64_t db = (b / radix_[i]) % f.size();
    uint64_t d;
    if (!f.quadratic) {
      d = (da + db) % f.mod;
    } else {
      uint32_t a0 = uint32_t(da % f.mod), a1 = uint32_t(da / f.mod);
      uint32_t b0 = uint32_t(db % f.mod), b1 = uint32_t(db / f.mod);
      d = uint64_t((a0 + b0) % f.mod) + uint64_t(f.mod) * ((a1 + b1) % f.mod);
    }
    out += radix_[i] * d;
  }
  return Elt(out);
}

Elt RingCtx::raw_mul(Elt a, Elt b) const {
  uint64_t out = 0;
  for (size_t i = 0; i < factors_.size(); ++i) {
    const RingFactor& f = factors_[i];
    uint64_t da = (a / radix_[i]) % f.size();
    uint64_t db = (b / radix_[i]) % f.size();
    uint64_t d;
    if (!f.quadratic) {
      d = (da * db) % f.mod;
    } else {
      uint64_t a0 = da % f.mod, a1 = da / f.mod;
      uint64_t b0 = db % f.mod, b1 = db / f.mod;
      // (a0 + a1 t)(b0 + b1 t), t^2 = tsq
      uint64_t c0 = (a0 * b0 + a1 * b1 % f.mod * f.tsq) % f.mod;
      uint64_t c1 = (a0 * b1 + a1 * b0) % f.mod;
      d = c0 + uint64_t(f.mod) * c1;
    }
    out += radix_[i] * d;
  }
  return Elt(out);
}

Elt RingCtx::raw_neg(Elt a) const {
  uint64_t out = 0;
  for (size_t i = 0; i < factors_.size(); ++i) {
    const RingFactor& f = factors_[i];
    uint64_t da = (a / radix_[i]) % f.size();
    uint64_t d;
    if (!f.quadratic) {
      d = (f.mod - da) % f.mod;
    } else {
      uint64_t a0 = da % f.mod, a1 = da / f.mod;
      d = (f.mod - a0) % f.mod + uint64_t(f.mod) * ((f.mod - a1) % f.mod);
    }
    out += radix_[i] * d;
  }
  return Elt(out);
}

Elt RingCtx::raw_conj(Elt a) const {
  uint64_t out = 0;
  for (size_t i = 0; i < factors_.size(); ++i) {
    const RingFactor& f = factors_[i];
    uint64_t da = (a / radix_[i]) % f.size();
    uint64_t d = da;
    if (f.quadratic && f.conj_t) {
      uint64_t a0 = da % f.mod, a1 = da / f.mod;
      d = a0 + uint64_t(f.mod) * ((f.mod - a1) % f.mod);
    }
    out += radix_[i] * d;
  }
  return Elt(out);
}

// ---- public ops ----

Elt RingCtx::add(Elt a, Elt b) const {
  if (tables_) return add_tab_[uint64_t(a) * order_ + b];
  if (root_) return canon_[root_->add(reps_[a], reps_[b])];
  return raw_add(a, b);
}
Elt RingCtx::mul(Elt a, Elt b) const {
  if (tables_) return mul_tab_[uint64_t(a) * order_ + b];
  if (root_) return canon_[root_->mul(reps_[a], reps_[b])];
  return raw_mul(a, b);
}
Elt RingCtx::neg(Elt a) const {
  if (tables_) return neg_tab_[a];
  if (root_) return canon_[root_->neg(reps_[a])];
  return raw_neg(a);
}
Elt RingCtx::sub(Elt a, Elt b) const { return add(a, neg(b)); }
Elt RingCtx::conj(Elt a) const {
  if (tables_) return conj_tab_[a];
  if (root_) return canon_[root_->conj(reps_[a])];
  return raw_conj(a);
}
Elt RingCtx::pow(Elt a, uint64_t k) const {
  Elt r = one_, base = a;
  while (k) {
    if (k & 1) r = mul(r, base);
    base = mul(base, base);
    k >>= 1;
  }
  return r;
}
bool RingCtx::is_unit(Elt a) const { return unit_tab_[a] != 0; }
std::optional<Elt> RingCtx::inv(Elt a) const {
  if (!unit_tab_[a]) return std::nullopt;
  return Elt(inv_tab_[a]);
}
bool RingCtx::is_nilpotent(Elt a) const {
  return nilpotency_index(a).has_value();
}
std::optional<uint32_t> RingCtx::nilpotency_index(Elt a) const {
  Elt x = a;
  for (uint32_t k = 1; k <= 64; ++k) {
    if (x == zero_) return k;
    x = mul(x, a);
  }
  return std::nullopt;
}

Elt RingCtx::section(Elt q) const {
  if (!root_) return q;
  Elt l = reps_[q];
  if (section_mult_) return root_->mul(*section_mult_, l);
  return l;
}

void RingCtx::decode_planes(Elt root_elt, uint16_t* out) const {
  int p = 0;
  for (size_t i = 0; i < factors_.size(); ++i) {
    const RingFactor& f = factors_[i];
    uint64_t d = (root_elt / radix_[i]) % f.size();
    if (!f.quadratic) {
      out[p++] = uint16_t(d);
    } else {
      out[p++] = uint16_t(d % f.mod);
      out[p++] = uint16_t(d / f.mod);
    }
  }
}

Elt RingCtx::encode_planes(const uint16_t* in) const {
  uint64_t out = 0;
  int p = 0;
  for (size_t i = 0; i < factors_.size(); ++i) {
    const RingFactor& f = factors_[i];
    uint64_t d;
    if (!f.quadratic) {
      d = in[p++];
    } else {
      uint64_t a0 = in[p++];
      uint64_t a1 = in[p++];
      d = a0 + uint64_t(f.mod) * a1;
    }
    out += radix_[i] * d;
  }
  return Elt(out);
}

std::vector<Elt> RingCtx::elements() const {
  std::vector<Elt> v(order_);
  for (uint64_t i = 0; i < order_; ++i) v[i] = Elt(i);
  return v;
}

std::string RingCtx::to_string(Elt a) const {
  if (root_) return root_->to_string(reps_[a]);
  std::ostringstream os;
  bool tuple = factors_.size() > 1;
  if (tuple) os << "(";
  for (size_t i = 0; i < factors_.size(); ++i) {
    if (i) os << ",";
    const RingFactor& f = factors_[i];
    uint64_t d = (a / radix_[i]) % f.size();
    if (!f.quadratic) {
      os << d;
    } else {
      os << (d % f.mod) << "+" << (d / f.mod) << "t";
    }
  }
  if (tuple) os << ")";
  return os.str();
}

Elt RingCtx::parse_element(const std::string& in) const {
  if (root_) return canon_[root_->parse_element(in)];
  std::string s = strip(in);
  if (!s.empty() && s.front() == '(' && s.back() == ')')
    s = s.substr(1, s.size() - 2);
  std::vector<std::string> comps;
  {
    std::string cur;
    int depth = 0;
    for (char c : s) {
      if (c == '(') depth++;
      if (c == ')') depth--;
      if (c == ',' && depth == 0) {
        comps.push_back(cur);
        cur.clear();
      } else
        cur += c;
    }
    comps.push_back(cur);
  }
  if (comps.size() != factors_.size())
    throw RingError("element '" + in + "' has " +
                    std::to_string(comps.size()) + " components, ring has " +
                    std::to_string(factors_.size()));
  uint64_t out = 0;
  for (size_t i = 0; i < factors_.size(); ++i) {
    const RingFactor& f = factors_[i];
    std::string c = strip(comps[i]);
    // forms: "3", "2+1t", "2t", "-1"
    long long c0 = 0, c1 = 0;
    size_t pos = 0;
    auto read_term = [&](long long& coef, bool& has_t) {
      long long sign = 1;
      while (pos < c.size() && (c[pos] == '+' || c[pos] == '-')) {
        if (c[pos] == '-') sign = -sign;
        pos++;
      }
      size_t st = pos;
      while (pos < c.size() && std::isdigit((unsigned char)c[pos])) pos++;
      long long v = (pos > st) ? std::stoll(c.substr(st, pos - st)) : 1;
      has_t = false;
      if (pos < c.size() && c[pos] == 't') {
        has_t = true;
        pos++;
      }
      if (pos == st && !has_t) throw RingError("bad element: " + in);
      coef = sign * v;
    };
    while (pos < c.size()) {
      long long coef;
      bool has_t;
      read_term(coef, has_t);
      if (has_t)
        c1 += coef;
      else
        c0 += coef;
    }
    if (c1 != 0 && !f.quadratic)
      throw RingError("t used in non-extension factor: " + in);
    uint64_t d = umod(c0, f.mod);
    if (f.quadratic) d += uint64_t(f.mod) * umod(c1, f.mod);
    out += radix_[i] * d;
  }
  return Elt(out);
}

std::string RingCtx::describe() const { return presentation_; }

// ---- validation ----

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  for (auto& c : checks)
    os << (c.pass ? "PASS " : "FAIL ") << c.name
       << (c.detail.empty() ? "" : " [" + c.detail + "]") << "\n";
  os << (pass ? "RESULT PASS" : "RESULT FAIL") << "\n";
  return os.str();
}

ValidationReport validate_ctx(const RingCtx& R, uint64_t seed) {
  ValidationReport rep;
  uint64_t n = R.order();
  auto check = [&](const std::string& name, bool ok, std::string detail = "") {
    rep.checks.push_back({name, ok, std::move(detail)});
    if (!ok) rep.pass = false;
  };

  // pair axioms: full enumeration up to 4096, sampled above
  std::mt19937_64 rng(seed);
  auto rnd = [&] { return Elt(rng() % n); };
  bool full_pairs = n <= 4096;
  uint64_t pair_samples = full_pairs ? 0 : 10000;

  bool inv_add = true, inv_mul = true, inv_invol = true;
  std::string d1, d2, d3;
  auto test_pair = [&](Elt x, Elt y) {
    if (R.conj(R.sub(x, y)) != R.sub(R.conj(x), R.conj(y))) {
      if (inv_add) d1 = R.to_string(x) + "," + R.to_string(y);
      inv_add = false;
    }
    if (R.conj(R.mul(x, y)) != R.mul(R.conj(y), R.conj(x))) {
      if (inv_mul) d2 = R.to_string(x) + "," + R.to_string(y);
      inv_mul = false;
    }
  };
  if (full_pairs) {
    for (Elt x = 0; x < n; ++x)
      for (Elt y = 0; y < n; ++y) test_pair(x, y);
  } else {
    for (uint64_t i = 0; i < pair_samples; ++i) test_pair(rnd(), rnd());
  }
  for (Elt x = 0; x < n; ++x)
    if (R.conj(R.conj(x)) != x) {
      if (inv_invol) d3 = R.to_string(x);
      inv_invol = false;
    }
  check("involution additive: (x-y)* = x*-y*", inv_add, d1);
  check("involution anti-multiplicative: (xy)* = y*x*", inv_mul, d2);
  check("involution order 2: (x*)* = x", inv_invol, d3);

  // ring axioms on triples: full when small, sampled otherwise
  bool assoc_m = true, assoc_a = true, distrib = true, comm_m = true;
  auto test_triple = [&](Elt x, Elt y, Elt z) {
    if (R.mul(R.mul(x, y), z) != R.mul(x, R.mul(y, z))) assoc_m = false;
    if (R.add(R.add(x, y), z) != R.add(x, R.add(y, z))) assoc_a = false;
    if (R.mul(x, R.add(y, z)) != R.add(R.mul(x, y), R.mul(x, z)))
      distrib = false;
    if (R.mul(x, y) != R.mul(y, x)) comm_m = false;
  };
  if (n <= 256) {
    for (Elt x = 0; x < n; ++x)
      for (Elt y = 0; y < n; ++y)
        for (Elt z = 0; z < n; ++z) test_triple(x, y, z);
  } else {
    for (uint64_t i = 0; i < 10000; ++i) test_triple(rnd(), rnd(), rnd());
  }
  check("multiplication associative", assoc_m);
  check("addition associative", assoc_a);
  check("left distributive", distrib);
  check("multiplication commutative", comm_m);

  bool unital = true;
  for (Elt x = 0; x < n; ++x)
    if (R.mul(R.one(), x) != x || R.mul(x, R.one()) != x) unital = false;
  check("identity element", unital);

  Elt l = R.lambda(), lb = R.conj(R.lambda());
  check("lambda*conj(lambda) = 1", R.mul(l, lb) == R.one());
  check("conj(lambda)*lambda = 1", R.mul(lb, l) == R.one());
  bool sym = true;
  std::string ds;
  for (Elt a = 0; a < n; ++a)
    if (R.mul(R.mul(l, a), lb) != R.conj(R.conj(a))) {
      if (sym) ds = R.to_string(a);
      sym = false;
    }
  check("lambda a conj(lambda) = conj(conj(a))", sym, ds);
  return rep;
}

std::vector<Elt> min_lambda(const RingCtx& R) {
  std::vector<uint8_t> seen(R.order(), 0);
  for (Elt a = 0; a < R.order(); ++a)
    seen[R.sub(a, R.mul(R.lambda(), R.conj(a)))] = 1;
  std::vector<Elt> out;
  for (Elt a = 0; a < R.order(); ++a)
    if (seen[a]) out.push_back(a);
  // additive subgroup sanity
  for (Elt a : out)
    for (Elt b : out)
      if (!seen[R.add(a, b)]) throw RingError("min_lambda not a subgroup");
  return out;
}

std::vector<Elt> max_lambda(const RingCtx& R) {
  std::vector<Elt> out;
  for (Elt a = 0; a < R.order(); ++a)
    if (a == R.neg(R.mul(R.lambda(), R.conj(a)))) out.push_back(a);
  // min ⊆ max
  std::vector<uint8_t> in_max(R.order(), 0);
  for (Elt a : out) in_max[a] = 1;
  for (Elt m : min_lambda(R))
    if (!in_max[m]) throw RingError("min_lambda not contained in max_lambda");
  return out;
}

FormParameter::FormParameter(RingPtr ring, std::vector<Elt> elems)
    : ring_(std::move(ring)), elems_(std::move(elems)) {
  std::sort(elems_.begin(), elems_.end());
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
  member_.assign(ring_->order(), 0);
  for (Elt e : elems_) member_[e] = 1;
}

bool FormParameter::contains_bar(Elt a) const {
  return member_[ring_->conj(a)] != 0;
}

FormParameter close_form_parameter(const RingPtr& R,
                                   const std::vector<Elt>& gens) {
  std::vector<Elt> mx = max_lambda(*R);
  std::vector<uint8_t> in_max(R->order(), 0);
  for (Elt a : mx) in_max[a] = 1;
  for (Elt g : gens)
    if (!in_max[g])
      throw GeneratorOutOfBounds("generator " + R->to_string(g) +
                                 " outside max^lambda");
  std::vector<uint8_t> in(R->order(), 0);
  std::vector<Elt> work;
  auto push = [&](Elt e) {
    if (!in[e]) {
      in[e] = 1;
      work.push_back(e);
    }
  };
  for (Elt m : min_lambda(*R)) push(m);
  for (Elt g : gens) push(g);
  // fixpoint: close under addition and a -> conj(x) a x
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Elt> cur;
    for (Elt a = 0; a < R->order(); ++a)
      if (in[a]) cur.push_back(a);
    size_t before = cur.size();
    for (Elt a : cur) {
      for (Elt b : cur)
        if (!in[R->add(a, b)]) push(R->add(a, b));
      for (Elt x = 0; x < R->order(); ++x) {
        Elt y = R->mul(R->mul(R->conj(x), a), x);
        if (!in[y]) push(y);
      }
    }
    size_t after = 0;
    for (Elt a = 0; a < R->order(); ++a) after += in[a];
    grew = after > before;
  }
  std::vector<Elt> elems;
  for (Elt a = 0; a < R->order(); ++a)
    if (in[a]) elems.push_back(a);
  for (Elt e : elems)
    if (!in_max[e]) throw RingError("closure escaped max^lambda");
  return FormParameter(R, elems);
}

}  // namespace qhg
