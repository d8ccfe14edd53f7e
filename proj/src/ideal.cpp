#include "qhg/ideal.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace qhg {

Ideal Ideal::from_gens(const RingPtr& R, const std::vector<Elt>& gens) {
  Ideal I;
  I.ring_ = R;
  I.gens_ = gens;
  I.member_.assign(R->order(), 0);
  I.step_.assign(R->order(), {0, 0, 0});
  I.member_[R->zero()] = 1;
  std::deque<Elt> queue{R->zero()};
  while (!queue.empty()) {
    Elt x = queue.front();
    queue.pop_front();
    for (uint32_t gi = 0; gi < gens.size(); ++gi) {
      for (Elt r = 0; r < R->order(); ++r) {
        Elt y = R->add(x, R->mul(r, gens[gi]));
        if (!I.member_[y]) {
          I.member_[y] = 1;
          I.step_[y] = {x, r, gi};
          queue.push_back(y);
        }
      }
    }
  }
  for (Elt x = 0; x < R->order(); ++x)
    if (I.member_[x]) I.elements_.push_back(x);
  return I;
}

Ideal Ideal::from_elements(const RingPtr& R, std::vector<Elt> elements,
                           std::vector<Elt> display_gens) {
  Ideal I;
  I.ring_ = R;
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()),
                 elements.end());
  I.elements_ = std::move(elements);
  I.gens_ = std::move(display_gens);
  I.member_.assign(R->order(), 0);
  for (Elt e : I.elements_) I.member_[e] = 1;
  return I;
}

Ideal Ideal::sum(const Ideal& a, const Ideal& b) {
  std::vector<Elt> gens = a.gens_;
  gens.insert(gens.end(), b.gens_.begin(), b.gens_.end());
  return from_gens(a.ring_, gens);
}

std::optional<std::vector<Elt>> Ideal::witness(Elt x) const {
  if (!member_[x] || step_.empty()) return std::nullopt;
  std::vector<Elt> coef(gens_.size(), ring_->zero());
  Elt cur = x;
  // walk the BFS chain back to zero
  size_t guard = ring_->order() + 1;
  while (cur != ring_->zero()) {
    if (guard-- == 0) throw RingError("witness chain loop");
    const Step& s = step_[cur];
    coef[s.gi] = ring_->add(coef[s.gi], s.r);
    cur = s.parent;
  }
  return coef;
}

std::string Ideal::to_string() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < gens_.size(); ++i) {
    if (i) os << ",";
    os << ring_->to_string(gens_[i]);
  }
  os << ")";
  return os.str();
}

namespace {
// Single generator for display purposes, when the ideal is principal.
std::vector<Elt> principal_gens(const RingPtr& R,
                                const std::vector<Elt>& elements) {
  std::vector<uint8_t> target(R->order(), 0);
  for (Elt e : elements) target[e] = 1;
  for (Elt g : elements) {
    if (g == R->zero() && elements.size() > 1) continue;
    size_t count = 0;
    bool ok = true;
    std::vector<uint8_t> seen(R->order(), 0);
    for (Elt r = 0; r < R->order(); ++r) {
      Elt y = R->mul(r, g);
      if (!target[y]) {
        ok = false;
        break;
      }
      if (!seen[y]) {
        seen[y] = 1;
        count++;
      }
    }
    if (ok && count == elements.size()) return {g};
  }
  return elements;
}
}  // namespace

Ideal jacobson_radical(const RingPtr& R) {
  std::vector<Elt> nil;
  for (Elt x = 0; x < R->order(); ++x)
    if (R->is_nilpotent(x)) nil.push_back(x);
  std::vector<uint8_t> in(R->order(), 0);
  for (Elt x : nil) in[x] = 1;
  for (Elt x : nil) {
    if (!in[R->conj(x)])
      throw RingError("radical not stable under involution");
    for (Elt y : nil)
      if (!in[R->add(x, y)]) throw RingError("nilradical not additive");
  }
  Ideal J = Ideal::from_elements(R, nil, principal_gens(R, nil));
  return J;
}

std::vector<Elt> idempotents(const RingCtx& R) {
  std::vector<Elt> out;
  for (Elt x = 0; x < R.order(); ++x)
    if (R.mul(x, x) == x) out.push_back(x);
  return out;
}

std::vector<Elt> primitive_idempotents(const RingCtx& R) {
  std::vector<Elt> all = idempotents(R);
  std::vector<Elt> prim;
  for (Elt e : all) {
    if (e == R.zero()) continue;
    bool atom = true;
    for (Elt f : all) {
      Elt fe = R.mul(f, e);
      if (fe != R.zero() && fe != e) {
        atom = false;
        break;
      }
    }
    if (atom) prim.push_back(e);
  }
  return prim;
}

std::vector<MaximalIdealInfo> maximal_ideals(const RingPtr& R) {
  std::vector<MaximalIdealInfo> out;
  for (Elt e : primitive_idempotents(*R)) {
    // local factor R_e = R/(1-e); maximal ideal = preimage of its non-units
    Elt f = R->sub(R->one(), e);
    Ideal ker = Ideal::from_gens(R, {f});
    RingPtr Q = RingCtx::make_quotient(R, ker.elements(), e,
                                       "(" + R->to_string(f) + ")");
    std::vector<Elt> mel;
    for (Elt x = 0; x < R->order(); ++x)
      if (!Q->is_unit(Q->canon(x))) mel.push_back(x);
    MaximalIdealInfo info;
    info.idempotent = e;
    info.ideal = Ideal::from_elements(R, mel, principal_gens(R, mel));
    out.push_back(std::move(info));
  }
  // deterministic order by idempotent index
  std::sort(out.begin(), out.end(),
            [](const MaximalIdealInfo& a, const MaximalIdealInfo& b) {
              return a.idempotent < b.idempotent;
            });
  return out;
}

RingPtr quotient_by_ideal(const RingPtr& R, const Ideal& I,
                          const std::string& tag) {
  return RingCtx::make_quotient(R, I.elements(), std::nullopt,
                                tag.empty() ? I.to_string() : tag);
}

namespace {
// Idempotent in the multiplicative closure of s (cycle of its powers).
Elt stable_idempotent(const RingPtr& R, Elt s) {
  Elt x = s;
  for (uint64_t k = 1; k <= 2 * R->order() + 2; ++k) {
    if (R->mul(x, x) == x) return x;
    x = R->mul(x, s);
  }
  throw RingError("no idempotent in power cycle");
}
}  // namespace

Localization localize_at(const RingPtr& R, Elt s) {
  if (R->is_nilpotent(s))
    throw NilpotentElement("cannot localize at nilpotent " + R->to_string(s));
  Elt e = stable_idempotent(R, s);
  Elt f = R->sub(R->one(), e);
  Ideal ker = Ideal::from_gens(R, {f});
  RingPtr Q = RingCtx::make_quotient(R, ker.elements(), e,
                                     "loc(" + R->to_string(s) + ")");
  if (!Q->is_unit(Q->canon(s)))
    throw RingError("localization failed to invert s");
  return {Q, e};
}

Localization localize_at_maximal(const RingPtr& R,
                                 const MaximalIdealInfo& m) {
  bool found = false;
  for (auto& mi : maximal_ideals(R))
    if (mi.idempotent == m.idempotent &&
        mi.ideal.elements() == m.ideal.elements())
      found = true;
  if (!found) throw NotMaximal("ideal " + m.ideal.to_string());
  Elt f = R->sub(R->one(), m.idempotent);
  Ideal ker = Ideal::from_gens(R, {f});
  RingPtr Q = RingCtx::make_quotient(R, ker.elements(), m.idempotent,
                                     "at " + m.ideal.to_string());
  if (maximal_ideals(Q).size() != 1)
    throw RingError("localization at maximal ideal is not local");
  return {Q, m.idempotent};
}

Localization localize_at_one_plus(const RingPtr& R, Elt s) {
  // product of all elements of 1+sR; its stable idempotent cuts the factor
  // where every 1+sr is invertible
  Elt prod = R->one();
  for (Elt r = 0; r < R->order(); ++r)
    prod = R->mul(prod, R->add(R->one(), R->mul(s, r)));
  if (R->is_nilpotent(prod))
    throw RingError("1+sR meets the nilradical; cannot localize");
  Elt e = stable_idempotent(R, prod);
  Elt f = R->sub(R->one(), e);
  Ideal ker = Ideal::from_gens(R, {f});
  RingPtr Q = RingCtx::make_quotient(R, ker.elements(), e, "loc(1+sR)");
  for (Elt r = 0; r < R->order(); ++r)
    if (!Q->is_unit(Q->canon(R->add(R->one(), R->mul(s, r)))))
      throw RingError("1+sR not inverted in localization");
  return {Q, e};
}

}  // namespace qhg
