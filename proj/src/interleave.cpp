#include "qhg/interleave.hpp"

namespace qhg {

InterleaveResult interleave_rewrite(const RingSc& S,
                                    const std::vector<MatPair>& pairs) {
  InterleaveResult out;
  if (pairs.empty()) return out;
  int d = pairs[0].a.d;
  Mat r = mat_identity(S, d);
  Mat original = mat_identity(S, d);
  for (const auto& p : pairs)
    original = mat_mul(S, original, mat_mul(S, p.a, p.b));
  Mat tail = mat_identity(S, d);
  for (const auto& p : pairs) {
    r = mat_mul(S, r, p.a);  // r_i = a_1 ... a_i
    auto rinv = mat_inverse(S, r);
    if (!rinv) throw RingError("interleave_rewrite: prefix not invertible");
    out.conjugated.push_back(mat_mul(S, mat_mul(S, r, p.b), *rinv));
    tail = mat_mul(S, tail, p.a);
  }
  out.tail = tail;
  // certify: product of conjugated factors times tail equals the original
  Mat check = mat_identity(S, d);
  for (const auto& c : out.conjugated) check = mat_mul(S, check, c);
  check = mat_mul(S, check, tail);
  if (!mat_eq(S, check, original))
    throw RingError("interleave_rewrite: certification failed");
  return out;
}

}  // namespace qhg
