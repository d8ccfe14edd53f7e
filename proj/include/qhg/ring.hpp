#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qhg {

// Canonical element index into a finite ring, 0 .. order-1.
using Elt = uint32_t;

struct RingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PresentationInvalid : RingError {
  using RingError::RingError;
};
struct NilpotentElement : RingError {
  using RingError::RingError;
};

// One atomic factor of a ring presentation: Z/m, or (Z/m)[t]/(t^2 - tsq).
// Elements of a quadratic factor are a + b*t, encoded as a + m*b.
struct RingFactor {
  uint32_t mod = 0;
  bool quadratic = false;
  uint32_t tsq = 0;      // residue of t^2
  bool conj_t = false;   // involution sends t -> -t
  uint64_t size() const { return quadratic ? uint64_t(mod) * mod : mod; }
};

class RingCtx;
using RingPtr = std::shared_ptr<const RingCtx>;

// A finite commutative ring with involution and a distinguished symmetry
// lambda. Structural rings are products of RingFactors with mixed-radix
// element encoding; quotient rings delegate arithmetic to their structural
// root through a canonicalization table. Immutable after construction.
class RingCtx : public std::enable_shared_from_this<RingCtx> {
 public:
  // presentation: "Z/4", "Z/3[t]/(t^2+1)", "Z/2 x Z/3", ...
  // involution:   "trivial" or "t->-t"
  // lambda:       element string, e.g. "3" or "1+2t" or "(1,2)"
  static RingPtr make(const std::string& presentation,
                      const std::string& involution,
                      const std::string& lambda);

  // Quotient of `base` by the additive span `ideal_elements` (must be an
  // ideal). Returns the quotient ring; elements map through canon().
  // `section_mult`, when set, makes section(x) = section_mult * lift(x)
  // (used for localizations where section_mult is an idempotent).
  static RingPtr make_quotient(const RingPtr& base,
                               const std::vector<Elt>& ideal_elements,
                               std::optional<Elt> section_mult,
                               const std::string& tag);

  uint64_t order() const { return order_; }
  Elt zero() const { return zero_; }
  Elt one() const { return one_; }
  Elt lambda() const { return lambda_; }
  Elt lambda_bar() const { return lambda_bar_; }
  bool trivial_involution() const { return trivial_invol_; }

  Elt add(Elt a, Elt b) const;
  Elt sub(Elt a, Elt b) const;
  Elt neg(Elt a) const;
  Elt mul(Elt a, Elt b) const;
  Elt conj(Elt a) const;  // the involution
  Elt pow(Elt a, uint64_t k) const;

  bool is_unit(Elt a) const;
  std::optional<Elt> inv(Elt a) const;
  bool is_nilpotent(Elt a) const;
  // Least k >= 1 with a^k = 0, or nullopt if a is not nilpotent.
  std::optional<uint32_t> nilpotency_index(Elt a) const;

  std::string to_string(Elt a) const;
  Elt parse_element(const std::string& s) const;

  const std::string& presentation() const { return presentation_; }
  std::string describe() const;

  // --- quotient structure ---
  bool is_quotient() const { return root_ != nullptr; }
  const RingPtr& root() const { return root_; }
  // root element -> quotient element
  Elt canon(Elt root_elt) const { return canon_[root_elt]; }
  // quotient element -> canonical root representative (least index)
  Elt lift(Elt q) const { return reps_[q]; }
  // Section used for word lifting: section_mult * lift (or plain lift).
  Elt section(Elt q) const;

  // --- structural plane access (for the kernels fast path) ---
  // Number of residue planes: one per plain factor, two per quadratic.
  int plane_count() const { return int(plane_mod_.size()); }
  uint32_t plane_mod(int p) const { return plane_mod_[p]; }
  // Decode element a in THIS ring's root encoding into plane residues.
  void decode_planes(Elt root_elt, uint16_t* out) const;
  Elt encode_planes(const uint16_t* in) const;
  const std::vector<RingFactor>& factors() const { return factors_; }

  // All elements, in canonical order 0..order-1 (indices are the elements).
  std::vector<Elt> elements() const;

 private:
  RingCtx() = default;
  void finalize();  // builds tables, lambda_bar, unit flags

  Elt raw_add(Elt a, Elt b) const;
  Elt raw_mul(Elt a, Elt b) const;
  Elt raw_neg(Elt a) const;
  Elt raw_conj(Elt a) const;

  std::string presentation_;
  std::vector<RingFactor> factors_;  // of the root if quotient, else own
  uint64_t order_ = 0;
  Elt zero_ = 0, one_ = 0, lambda_ = 0, lambda_bar_ = 0;
  bool trivial_invol_ = true;

  // quotient data (root_ null for structural rings)
  RingPtr root_;
  std::vector<Elt> reps_;   // quotient index -> root representative
  std::vector<Elt> canon_;  // root index -> quotient index
  std::optional<Elt> section_mult_;

  // cached op tables (order_ <= kTableLimit)
  static constexpr uint64_t kTableLimit = 512;
  bool tables_ = false;
  std::vector<uint16_t> add_tab_, mul_tab_;
  std::vector<uint16_t> neg_tab_, conj_tab_;
  std::vector<uint8_t> unit_tab_;
  std::vector<uint16_t> inv_tab_;

  // plane decomposition of the root encoding
  std::vector<uint32_t> plane_mod_;

  // structural mixed-radix bases per factor
  std::vector<uint64_t> radix_;
};

// Axiom checking report for validate_ctx.
struct AxiomCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};
struct ValidationReport {
  std::vector<AxiomCheck> checks;
  bool pass = true;
  std::string to_string() const;
};

// Checks ring axioms (sampled triples beyond the full-enumeration bound),
// involution axioms, lambda*conj(lambda)=1 and lambda a conj(lambda) =
// conj(conj(a)) for all a.
ValidationReport validate_ctx(const RingCtx& R, uint64_t seed = 1);

// min^lambda(R) = { a - lambda*conj(a) : a in R }, as a sorted element set.
std::vector<Elt> min_lambda(const RingCtx& R);
// max^lambda(R) = { a : a = -lambda*conj(a) }.
std::vector<Elt> max_lambda(const RingCtx& R);

struct GeneratorOutOfBounds : RingError {
  using RingError::RingError;
};

// A form parameter: additive subgroup Lambda with min ⊆ Λ ⊆ max, closed
// under a -> conj(x) a x. Stored extensionally.
class FormParameter {
 public:
  FormParameter() = default;
  FormParameter(RingPtr ring, std::vector<Elt> elems);
  bool contains(Elt a) const { return member_[a] != 0; }
  const std::vector<Elt>& elements() const { return elems_; }
  const RingPtr& ring() const { return ring_; }
  // conj(Lambda) membership
  bool contains_bar(Elt a) const;

 private:
  RingPtr ring_;
  std::vector<Elt> elems_;
  std::vector<uint8_t> member_;
};

// Smallest form parameter containing min^lambda and gens; fixpoint closure.
// Throws GeneratorOutOfBounds if a generator is outside max^lambda.
FormParameter close_form_parameter(const RingPtr& R,
                                   const std::vector<Elt>& gens);

}  // namespace qhg
