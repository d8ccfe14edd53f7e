#pragma once

#include <map>

#include "qhg/words.hpp"

namespace qhg {

struct RuleGap : RingError {
  using RingError::RingError;
};
struct InsufficientDivisibility : RingError {
  using RingError::RingError;
};

// One output factor shape: generator kind plus index symbols drawn from
// {"p","q","i","j","k"} (k = fresh auxiliary index). Arguments are not
// stored; they are solved from the exact conjugated matrix at application
// time and the whole rewrite is verified by evaluation. recipe == "hyp"
// expands to the four congruence-level plane factors of a hyperbolic unit
// diag(u, conj(u)^-1) read off the residual at the isym plane.
struct FactorShape {
  GKind kind{};
  std::string isym, jsym;
  std::string recipe;  // "" or "hyp"
};

struct ConjRule {
  std::string key;
  bool split = false;
  std::vector<FactorShape> factors;  // direct case: peeling order
  FactorShape split_u, split_w;      // split case: target = [u, w]
};

class ConjTable {
 public:
  static ConjTable load(const std::string& path);
  void save(const std::string& path) const;
  static std::string default_path();

  const ConjRule* find(const std::string& key) const;
  void add(ConjRule rule);
  void erase(const std::string& key);
  size_t size() const { return rules_.size(); }
  int version = 1;

 private:
  std::map<std::string, ConjRule> rules_;
};

// Case key for a single-generator conjugation: kinds, the equality pattern
// of the index tuple (p,q,i,j), and r-zone markers.
std::string conj_case_key(const FormSpec& spec, GKind conj_kind, int p,
                          int q, GKind target_kind, int i, int j);

// eps h eps^-1 for a conjugator word of length c; requires h's arguments
// divisible by X_v^{2^c * m}; output arguments divisible by X_v^m. Every
// rule application is verified by exact evaluation; a corrupted or missing
// rule aborts with RuleGap / verification failure, never a wrong word.
PolyElemWord conjugate_absorb(const PolySc& S, const ConjTable& table,
                              const PolyElemWord& eps, const PolyElemGen& h,
                              uint32_t m, int var);

namespace conj_detail {
// Generic peeler used by the offline rule-derivation tool: expresses a
// near-identity matrix as a short product of generators, if possible.
std::optional<std::vector<ElemGen>> peel_generators(const RingSc& S,
                                                    const FormSpec& spec,
                                                    const Mat& C,
                                                    int max_depth);
}  // namespace conj_detail

}  // namespace qhg
