#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qhg/ring.hpp"

namespace qhg {

// Finitely generated ideal stored extensionally, with enough bookkeeping to
// reconstruct membership witnesses (x = sum r_i * g_i).
class Ideal {
 public:
  Ideal() = default;
  static Ideal from_gens(const RingPtr& R, const std::vector<Elt>& gens);
  // For ideals already known extensionally; no witness chains.
  static Ideal from_elements(const RingPtr& R, std::vector<Elt> elements,
                             std::vector<Elt> display_gens);
  static Ideal sum(const Ideal& a, const Ideal& b);

  bool contains(Elt x) const { return member_[x] != 0; }
  bool is_whole_ring() const { return contains(ring_->one()); }
  bool is_zero() const { return elements_.size() == 1; }
  const std::vector<Elt>& elements() const { return elements_; }
  const std::vector<Elt>& generators() const { return gens_; }
  const RingPtr& ring() const { return ring_; }
  size_t size() const { return elements_.size(); }

  // Coefficients c with x = sum c_i * gens_i, if x is a member.
  std::optional<std::vector<Elt>> witness(Elt x) const;

  std::string to_string() const;

 private:
  RingPtr ring_;
  std::vector<Elt> gens_;
  std::vector<Elt> elements_;
  std::vector<uint8_t> member_;
  // BFS parents: for element x != 0, x = parent + r * gens[gi]
  struct Step {
    Elt parent;
    Elt r;
    uint32_t gi;
  };
  std::vector<Step> step_;  // indexed by element
};

// Nilradical = Jacobson radical for finite commutative rings. Asserts
// stability under the involution.
Ideal jacobson_radical(const RingPtr& R);

// All idempotents (x^2 = x), ascending.
std::vector<Elt> idempotents(const RingCtx& R);
// Atoms of the idempotent Boolean algebra; one per local factor.
std::vector<Elt> primitive_idempotents(const RingCtx& R);

struct MaximalIdealInfo {
  Ideal ideal;
  Elt idempotent;  // primitive idempotent of the attached local factor
};
std::vector<MaximalIdealInfo> maximal_ideals(const RingPtr& R);

struct NotMaximal : RingError {
  using RingError::RingError;
};

// Quotient R/I with least-representative section.
RingPtr quotient_by_ideal(const RingPtr& R, const Ideal& I,
                          const std::string& tag = "");

struct Localization {
  RingPtr ring;     // quotient ring; ring->canon is the localization map
  Elt idempotent;   // e in the base ring with ring = R/(1-e)R
};

// R_s realized as R/(0 : s^infty); throws NilpotentElement if s is
// nilpotent. The image of s is a unit (asserted).
Localization localize_at(const RingPtr& R, Elt s);

// Local factor attached to a maximal ideal.
Localization localize_at_maximal(const RingPtr& R, const MaximalIdealInfo& m);

// Localization at the multiplicative set 1 + sR (used by the commutator
// absorption machinery); every 1+sr becomes a unit.
Localization localize_at_one_plus(const RingPtr& R, Elt s);

}  // namespace qhg
