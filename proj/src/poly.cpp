#include "qhg/poly.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace qhg {

Poly Poly::constant(Elt c) {
  Poly p;
  if (c != 0) p.terms_.push_back({Mono{}, c});
  return p;
}

Poly Poly::var(int v, Elt coef_one) {
  Poly p;
  Mono m;
  m.e[v] = 1;
  if (coef_one != 0) p.terms_.push_back({m, coef_one});
  return p;
}

Poly Poly::term(Elt c, uint32_t ex, uint32_t et, uint32_t eu) {
  Poly p;
  Mono m;
  m.e = {ex, et, eu};
  if (c != 0) p.terms_.push_back({m, c});
  return p;
}

Elt Poly::constant_term() const {
  // RingCtx guarantees the zero element has index 0
  if (!terms_.empty() && terms_[0].first == Mono{}) return terms_[0].second;
  return 0;
}

Elt Poly::coeff(uint32_t ex, uint32_t et, uint32_t eu) const {
  Mono m;
  m.e = {ex, et, eu};
  for (auto& t : terms_)
    if (t.first == m) return t.second;
  return 0;
}

uint32_t Poly::degree(int v) const {
  uint32_t d = 0;
  for (auto& t : terms_) d = std::max(d, t.first.e[v]);
  return d;
}

bool Poly::divisible_by(int v, uint32_t k) const {
  for (auto& t : terms_)
    if (t.first.e[v] < k) return false;
  return true;
}

void Poly::normalize(const RingCtx& R) {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  std::vector<Term> out;
  for (auto& t : terms_) {
    if (!out.empty() && out.back().first == t.first)
      out.back().second = R.add(out.back().second, t.second);
    else
      out.push_back(t);
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [&](const Term& t) { return t.second == R.zero(); }),
            out.end());
  terms_ = std::move(out);
}

Poly padd(const RingCtx& R, const Poly& a, const Poly& b) {
  Poly out;
  out.raw() = a.terms();
  for (auto& t : b.terms()) out.raw().push_back(t);
  out.normalize(R);
  return out;
}

Poly psub(const RingCtx& R, const Poly& a, const Poly& b) {
  return padd(R, a, pneg(R, b));
}

Poly pneg(const RingCtx& R, const Poly& a) {
  Poly out;
  for (auto& t : a.terms()) out.raw().push_back({t.first, R.neg(t.second)});
  return out;  // already sorted, no zeros introduced
}

Poly pmul(const RingCtx& R, const Poly& a, const Poly& b) {
  Poly out;
  for (auto& ta : a.terms())
    for (auto& tb : b.terms()) {
      Poly::Mono m;
      for (int v = 0; v < 3; ++v) m.e[v] = ta.first.e[v] + tb.first.e[v];
      out.raw().push_back({m, R.mul(ta.second, tb.second)});
    }
  out.normalize(R);
  return out;
}

Poly pscale(const RingCtx& R, Elt c, const Poly& a) {
  Poly out;
  for (auto& t : a.terms()) out.raw().push_back({t.first, R.mul(c, t.second)});
  out.normalize(R);
  return out;
}

Poly pconj(const RingCtx& R, const Poly& a) {
  Poly out;
  for (auto& t : a.terms()) out.raw().push_back({t.first, R.conj(t.second)});
  out.normalize(R);
  return out;
}

Poly ppow(const RingCtx& R, const Poly& a, uint32_t k) {
  Poly r = Poly::constant(R.one());
  Poly base = a;
  while (k) {
    if (k & 1) r = pmul(R, r, base);
    base = pmul(R, base, base);
    k >>= 1;
  }
  return r;
}

Poly psubst(const RingCtx& R, const Poly& p,
            const std::array<const Poly*, 3>& repl) {
  // memoized powers of each replacement
  std::array<std::map<uint32_t, Poly>, 3> powcache;
  auto power = [&](int v, uint32_t e) -> const Poly& {
    auto it = powcache[v].find(e);
    if (it != powcache[v].end()) return it->second;
    Poly val = ppow(R, *repl[v], e);
    return powcache[v].emplace(e, std::move(val)).first->second;
  };
  Poly out;
  for (auto& t : p.terms()) {
    Poly acc = Poly::constant(t.second);
    Poly::Mono keep{};
    for (int v = 0; v < 3; ++v) {
      if (t.first.e[v] == 0) continue;
      if (repl[v]) {
        acc = pmul(R, acc, power(v, t.first.e[v]));
      } else {
        keep.e[v] = t.first.e[v];
      }
    }
    // shift by kept exponents
    for (auto& at : acc.terms()) {
      Poly::Mono m = at.first;
      for (int v = 0; v < 3; ++v) m.e[v] += keep.e[v];
      out.raw().push_back({m, at.second});
    }
  }
  out.normalize(R);
  return out;
}

bool poly_is_unit(const RingCtx& R, const Poly& p) {
  Elt c = p.constant_term();
  if (!R.is_unit(c)) return false;
  for (auto& t : p.terms())
    if (!(t.first == Poly::Mono{}) && !R.is_nilpotent(t.second)) return false;
  return true;
}

Poly poly_inv_unit(const RingCtx& R, const Poly& p) {
  Elt c = p.constant_term();
  auto ci = R.inv(c);
  if (!ci) throw RingError("poly_inv_unit: constant term not a unit");
  // p = c(1 + n), n nilpotent-coefficient tail: inverse by finite series
  Poly n = pscale(R, *ci, psub(R, p, Poly::constant(c)));
  Poly inv = Poly::constant(R.one());
  Poly pw = Poly::constant(R.one());
  for (int k = 1; k <= 512; ++k) {
    pw = pneg(R, pmul(R, pw, n));
    if (pw.is_zero()) break;
    inv = padd(R, inv, pw);
    if (k == 512) throw RingError("poly_inv_unit: series did not terminate");
  }
  inv = pscale(R, *ci, inv);
  return inv;
}

std::string poly_to_string(const RingCtx& R, const Poly& p) {
  if (p.is_zero()) return R.to_string(R.zero());
  std::ostringstream os;
  bool first = true;
  for (auto& t : p.terms()) {
    if (t.first.e[1] || t.first.e[2])
      throw RingError("poly_to_string: only univariate X supported");
    if (!first) os << "+";
    first = false;
    os << R.to_string(t.second);
    if (t.first.e[0] == 1)
      os << "X";
    else if (t.first.e[0] > 1)
      os << "X^" << t.first.e[0];
  }
  return os.str();
}

Poly poly_parse(const RingCtx& R, const std::string& s) {
  // terms separated by '+' at depth 0 (coefficients may contain parens)
  std::vector<std::string> parts;
  {
    std::string cur;
    int depth = 0;
    for (char c : s) {
      if (c == '(') depth++;
      if (c == ')') depth--;
      if (c == '+' && depth == 0) {
        parts.push_back(cur);
        cur.clear();
      } else
        cur += c;
    }
    parts.push_back(cur);
  }
  Poly out;
  for (auto& part : parts) {
    std::string tstr = part;
    uint32_t ex = 0;
    size_t xpos = tstr.find('X');
    if (xpos != std::string::npos) {
      std::string rest = tstr.substr(xpos + 1);
      tstr = tstr.substr(0, xpos);
      if (rest.empty())
        ex = 1;
      else if (rest[0] == '^')
        ex = uint32_t(std::stoul(rest.substr(1)));
      else
        throw RingError("bad poly term: " + part);
    }
    if (tstr.empty()) tstr = "1";
    Elt c = R.parse_element(tstr);
    out.raw().push_back({Poly::Mono{{ex, 0, 0}}, c});
  }
  out.normalize(R);
  return out;
}

}  // namespace qhg
