#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ck/groebner.hpp"

namespace ck {

/// (I : f) = {g : g f in I}. Computed as (I ∩ (f)) / f. f = 0 gives the
/// unit ideal.
IdealHandle quotient(const IdealHandle& I, const Polynomial& f, const Budget& budget = {});
/// (I : J) as the intersection of (I : g) over generators g of J.
IdealHandle quotient(const IdealHandle& I, const IdealHandle& J, const Budget& budget = {});

/// (I : f^inf) via I + (1 - t f) in k[t, x] and elimination of t.
IdealHandle saturate(const IdealHandle& I, const Polynomial& f, const Budget& budget = {});

/// I ∩ J via t I + (1 - t) J and elimination of t.
IdealHandle intersect(const IdealHandle& I, const IdealHandle& J, const Budget& budget = {});

/// I ∩ k[remaining variables], computed under a block order eliminating
/// `vars`. The result stays in I's ring.
IdealHandle eliminate(const IdealHandle& I, std::span<const std::size_t> vars, const Budget& budget = {});
IdealHandle eliminate(const IdealHandle& I, const std::vector<std::string>& names, const Budget& budget = {});

/// Result of a Rabinowitsch test f ∈ √I.
struct RadicalWitness {
  Polynomial element;
  bool member = false;
  /// Least e <= max_exponent with f^e ∈ I, when found.
  std::optional<unsigned> exponent;
  /// Hash of the reduced basis of I + (1 - t f) in the t-extended ring.
  std::string auxiliary_hash;
};

inline constexpr unsigned kDefaultMaxExponent = 32;

RadicalWitness radical_member(const Polynomial& f, const IdealHandle& I, const Budget& budget = {},
                              unsigned max_exponent = kDefaultMaxExponent);

/// Every generator of each side lies in the radical of the other.
struct RadicalEqualityCertificate {
  IdealHandle left;
  IdealHandle right;
  std::vector<RadicalWitness> left_in_right;
  std::vector<RadicalWitness> right_in_left;
};

/// Names the generator that fails radical membership.
struct RadicalRefutation {
  Polynomial generator;
  bool generator_from_left = true;
  RadicalWitness witness;
};

using RadicalEquality = std::variant<RadicalEqualityCertificate, RadicalRefutation>;

RadicalEquality radical_equal(const IdealHandle& I, const IdealHandle& J, const Budget& budget = {});

/// Re-runs each stored witness: the Rabinowitsch basis hash must match and
/// stored exponents must put the power in the ideal.
bool replay(const RadicalEqualityCertificate& cert, const Budget& budget = {});
bool replay(const RadicalWitness& witness, const IdealHandle& I, const Budget& budget = {});

/// Krull dimension data read off the leading-term ideal.
struct DimensionReport {
  static constexpr const char* kHeightDefinition = "coheight";

  std::vector<Monomial> leading_monomials;
  /// Maximal independent set of variables (indices), of maximum size.
  std::vector<std::size_t> independent_set;
  /// dim(A/I); -1 for the unit ideal.
  int dimension = 0;
  /// dim(A) computed the same way from J0.
  int ambient_dimension = 0;
  /// dim(A) - dim(A/I); for the unit ideal this is dim(A) + 1.
  int height = 0;
  bool unit = false;
};

DimensionReport dimension_height(const IdealHandle& I, const Budget& budget = {});

/// Maximum-size set of variables no leading monomial is supported on.
std::vector<std::size_t> max_independent_set(std::span<const Monomial> leading, std::size_t nvars);

}  // namespace ck
