#pragma once

// Module Buchberger engine shared by ideal and submodule computations.
// Vectors of R^m are flat term lists keyed by (component, monomial).

#include <cstdint>
#include <vector>

#include "ck/groebner.hpp"
#include "ck/polynomial.hpp"

namespace ck::detail {

struct MTerm {
  std::uint32_t comp;
  Monomial mono;
  Scalar coeff;
};

using MVec = std::vector<MTerm>;

enum class ModuleOrderKind { PositionOverTerm, TermOverPosition };

class Engine {
 public:
  Engine(RingPtr ring, ModuleOrderKind kind) : ring_(std::move(ring)), kind_(kind) {}

  const RingPtr& ring() const { return ring_; }
  const Field& field() const { return ring_->field(); }

  /// Lower component index ranks higher.
  std::strong_ordering compare(std::uint32_t ca, const Monomial& ma, std::uint32_t cb, const Monomial& mb) const;
  std::strong_ordering compare(const MTerm& a, const MTerm& b) const { return compare(a.comp, a.mono, b.comp, b.mono); }

  MVec add(const MVec& a, const MVec& b) const;
  /// a - c*m*b
  MVec sub_scaled(const MVec& a, const Monomial& m, const Scalar& c, const MVec& b) const;
  MVec mul_term(const MVec& a, const Monomial& m, const Scalar& c) const;
  MVec monic(MVec a) const;
  MVec sort_terms(MVec terms) const;

  /// Reduces leading terms only (top) or every term (full).
  MVec reduce(MVec f, const std::vector<const MVec*>& divisors, bool full) const;

  /// Reduced Gröbner basis: monic, interreduced, sorted by descending
  /// leading term. Throws BudgetExceeded after budget.gb_steps S-pairs.
  std::vector<MVec> buchberger(std::vector<MVec> gens, const Budget& budget, std::size_t* steps_out = nullptr) const;

  MVec from_poly(const Polynomial& f, std::uint32_t comp) const;
  MVec from_element(const ModuleElement& v, std::uint32_t offset) const;
  /// Components [offset, offset+rank) as a module element.
  ModuleElement to_element(const MVec& v, std::uint32_t offset, std::size_t rank) const;
  Polynomial to_poly(const MVec& v) const;

 private:
  RingPtr ring_;
  ModuleOrderKind kind_;
};

}  // namespace ck::detail
