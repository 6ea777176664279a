#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <variant>

#include <gmpxx.h>

namespace ck {

/// Element of F_p or F_{p^k}: coefficients of a polynomial in the field
/// generator, low degree first. Only the first `degree()` slots are used.
struct Residue {
  std::array<std::uint64_t, 3> c{};
  bool operator==(const Residue&) const = default;
};

/// Coefficient of a polynomial. Holds an mpq_class over QQ (always
/// canonicalized) and a Residue over finite fields.
using Scalar = std::variant<mpq_class, Residue>;

/// Coefficient field descriptor and arithmetic: QQ, F_p, or F_{p^k} with
/// k <= 3 presented as F_p[a]/(m(a)) for the smallest monic irreducible m.
class Field {
 public:
  enum class Kind { Rational, Finite };

  static Field rationals();
  /// Throws std::invalid_argument unless p is a prime below 2^63.
  static Field prime(std::uint64_t p);
  static Field extension(std::uint64_t p, int degree);

  Kind kind() const { return kind_; }
  bool is_rational() const { return kind_ == Kind::Rational; }
  std::uint64_t characteristic() const { return p_; }
  int degree() const { return degree_; }
  /// Monic modulus, coefficients low to high (degree()+1 entries used).
  const std::array<std::uint64_t, 4>& modulus() const { return modulus_; }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long long v) const;
  Scalar from_integer(const mpz_class& v) const;
  /// Throws std::domain_error when the denominator vanishes in the field.
  Scalar from_rational(const mpq_class& v) const;
  /// Builds an extension element from its coordinates (each reduced mod p).
  Scalar from_coordinates(const std::array<std::uint64_t, 3>& c) const;

  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;
  /// Throws std::domain_error on zero.
  Scalar inv(const Scalar& a) const;
  Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

  bool is_zero(const Scalar& a) const;
  bool is_one(const Scalar& a) const;
  /// True for scalars whose text form needs a leading '-' (QQ negatives only).
  bool is_negative(const Scalar& a) const;

  /// Exact text form: "3", "-3/2", "4" (mod p), "{1,2}" (extension, low first).
  std::string format(const Scalar& a) const;
  /// "QQ", "Fp(5)", "GF(5^2)".
  std::string name() const;

  /// Maps a scalar of `source` into this field (QQ -> F_p, F_p -> F_{p^k}).
  Scalar embed(const Scalar& a, const Field& source) const;

  /// Uniform integer in [-bound, bound] mapped into the field; over an
  /// extension every coordinate is drawn independently.
  Scalar random_small(std::mt19937_64& rng, int bound) const;

  bool operator==(const Field& other) const {
    return kind_ == other.kind_ && p_ == other.p_ && degree_ == other.degree_;
  }

 private:
  Field() = default;
  std::uint64_t reduce_signed(long long v) const;
  Residue mul_residue(const Residue& a, const Residue& b) const;
  Residue inv_residue(const Residue& a) const;

  Kind kind_ = Kind::Rational;
  std::uint64_t p_ = 0;
  int degree_ = 1;
  std::array<std::uint64_t, 4> modulus_{};
};

bool is_prime_u64(std::uint64_t n);

}  // namespace ck
