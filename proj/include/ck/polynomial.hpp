#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ck/field.hpp"
#include "ck/monomial.hpp"

namespace ck {

/// k[x_1..x_n] with a monomial order.
class PolyRing {
 public:
  PolyRing(std::vector<std::string> variables, Field field, MonomialOrder order);

  const std::vector<std::string>& variables() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  const Field& field() const { return field_; }
  const MonomialOrder& order() const { return order_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  bool operator==(const PolyRing& other) const {
    return vars_ == other.vars_ && field_ == other.field_ && order_ == other.order_;
  }

 private:
  std::vector<std::string> vars_;
  Field field_;
  MonomialOrder order_;
};

using RingPtr = std::shared_ptr<const PolyRing>;

RingPtr make_ring(std::vector<std::string> variables, Field field, MonomialOrder order);
/// grevlex convenience.
RingPtr make_ring(std::vector<std::string> variables, Field field = Field::rationals());
bool same_ring(const RingPtr& a, const RingPtr& b);

struct Term {
  Monomial mono;
  Scalar coeff;
};

/// Sparse polynomial: nonzero terms, strictly descending in the ring's order.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  static Polynomial constant(RingPtr ring, const Scalar& c);
  static Polynomial constant(RingPtr ring, long long c);
  static Polynomial variable(RingPtr ring, std::size_t index);
  static Polynomial variable(RingPtr ring, std::string_view name);
  static Polynomial term(RingPtr ring, Monomial mono, const Scalar& c);
  /// Sorts, merges equal monomials and drops zeros.
  static Polynomial from_terms(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const { return ring_; }
  const Field& field() const { return ring_->field(); }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  /// Nonzero constant.
  bool is_unit() const { return terms_.size() == 1 && terms_[0].mono.is_one(); }

  /// Requires !is_zero().
  const Monomial& leading_monomial() const { return terms_.front().mono; }
  const Scalar& leading_coeff() const { return terms_.front().coeff; }
  std::uint32_t total_degree() const;
  bool is_homogeneous() const;
  bool involves(std::size_t var) const;

  Polynomial operator+(const Polynomial& g) const;
  Polynomial operator-(const Polynomial& g) const;
  Polynomial operator*(const Polynomial& g) const;
  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& g) { return *this = *this + g; }
  Polynomial& operator-=(const Polynomial& g) { return *this = *this - g; }
  Polynomial& operator*=(const Polynomial& g) { return *this = *this * g; }

  Polynomial scalar_mul(const Scalar& c) const;
  Polynomial mul_term(const Monomial& m, const Scalar& c) const;
  Polynomial pow(unsigned e) const;
  /// Leading coefficient one (zero stays zero).
  Polynomial monic() const;

  Scalar evaluate(std::span<const Scalar> point) const;

  /// Re-expresses the polynomial in `target`; variable i goes to target
  /// variable var_map[i] (nullopt only allowed for absent variables).
  /// Coefficients are embedded into the target field.
  Polynomial map_to(const RingPtr& target, std::span<const std::optional<std::size_t>> var_map) const;
  /// map_to by matching variable names.
  Polynomial rename_into(const RingPtr& target) const;

  bool operator==(const Polynomial& g) const;

 private:
  void check_ring(const Polynomial& g) const;
  Polynomial combine(const Polynomial& g, bool subtract) const;

  RingPtr ring_;
  std::vector<Term> terms_;
};

/// Canonical text: descending terms, "x^2*y - 3/2*x + 1".
std::string format(const Polynomial& f);
std::string format(const Monomial& m, const PolyRing& ring);
std::string format_list(std::span<const Polynomial> fs);

/// A = k[x]/J0; J0 may be empty.
struct RingSpec {
  RingPtr ring;
  std::vector<Polynomial> base;

  bool is_quotient() const { return !base.empty(); }
  /// Same ambient ring, base ideal enlarged by `extra` (e.g. A/I).
  RingSpec with_base(std::span<const Polynomial> extra) const;
  /// Same base ideal re-expressed over `target` by variable names.
  RingSpec rename_into(const RingPtr& target) const;
  std::string describe() const;
};

struct DivisionResult {
  Polynomial remainder;
  std::vector<Polynomial> quotients;
};

/// Multivariate division: f = sum q_i g_i + r, no term of r divisible by a
/// leading monomial of G. Divisors are tried in list order.
DivisionResult reduce(const Polynomial& f, std::span<const Polynomial> divisors);

/// Exact division by a single polynomial; nullopt if it does not divide.
std::optional<Polynomial> divide_exact(const Polynomial& f, const Polynomial& g);

/// k[new..., old...] with the new variables forming a leading elimination block.
class RingExtension {
 public:
  /// Throws std::invalid_argument on a name clash.
  RingExtension(RingPtr base, const std::vector<std::string>& new_vars);

  const RingPtr& base() const { return base_; }
  const RingPtr& extended() const { return extended_; }
  std::size_t added() const { return added_; }
  /// Index of the i-th new variable in the extended ring.
  std::size_t new_variable(std::size_t i) const { return i; }

  Polynomial embed(const Polynomial& f) const;
  /// Inverse of embed; nullopt if f involves a new variable.
  std::optional<Polynomial> contract(const Polynomial& f) const;

 private:
  RingPtr base_;
  RingPtr extended_;
  std::size_t added_;
};

}  // namespace ck
