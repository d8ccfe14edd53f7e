#pragma once

#include "qhg/mat.hpp"

namespace qhg {

// Pi a_i b_i = Pi (r_i b_i r_i^-1) . Pi a_i with r_i = a_1...a_i.
struct MatPair {
  Mat a, b;
};
struct InterleaveResult {
  std::vector<Mat> conjugated;
  Mat tail;
};
InterleaveResult interleave_rewrite(const RingSc& S,
                                    const std::vector<MatPair>& pairs);

}  // namespace qhg
