#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace ck {

/// Exponent vector over a fixed number of variables.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps);

  static Monomial variable(std::size_t nvars, std::size_t index, std::uint32_t power = 1);

  std::size_t size() const { return exps_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<std::uint32_t>& exponents() const { return exps_; }
  std::uint32_t degree() const { return degree_; }
  bool is_one() const { return degree_ == 0; }

  bool divides(const Monomial& other) const;
  /// Requires divides(other): returns other / *this.
  Monomial quotient_of(const Monomial& other) const;
  Monomial operator*(const Monomial& other) const;
  Monomial lcm(const Monomial& other) const;
  bool coprime(const Monomial& other) const;

  bool operator==(const Monomial& other) const { return exps_ == other.exps_; }
  std::size_t hash() const;

 private:
  std::vector<std::uint32_t> exps_;
  std::uint32_t degree_ = 0;
};

/// Product order over a permutation of the variables: the permuted
/// variables are split into consecutive blocks, compared block by block,
/// each block by lex or grevlex.
class MonomialOrder {
 public:
  enum class Kind { Lex, Grevlex };
  struct Block {
    Kind kind;
    std::size_t size;
    bool operator==(const Block&) const = default;
  };

  MonomialOrder() = default;
  MonomialOrder(std::vector<Block> blocks, std::vector<std::size_t> permutation);

  static MonomialOrder lex(std::size_t nvars);
  static MonomialOrder grevlex(std::size_t nvars);
  /// grevlex on the first k variables, then grevlex on the rest.
  static MonomialOrder elimination(std::size_t nvars, std::size_t k);

  std::size_t nvars() const { return perm_.size(); }
  const std::vector<Block>& blocks() const { return blocks_; }
  const std::vector<std::size_t>& permutation() const { return perm_; }

  std::strong_ordering compare(const Monomial& a, const Monomial& b) const;
  bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }

  /// New variables occupy indices [0, k) and form a leading grevlex block;
  /// existing variables shift by k and keep their blocks.
  MonomialOrder prepend_block(std::size_t k) const;

  /// Orders whose block list is [elimination block on `vars`, grevlex rest].
  static MonomialOrder eliminating(std::size_t nvars, const std::vector<std::size_t>& vars);

  /// "lex", "grevlex", "elim(k)" for the user-visible orders, otherwise a
  /// full block/permutation description.
  std::string name() const;

  bool operator==(const MonomialOrder&) const = default;

 private:
  std::vector<Block> blocks_;
  std::vector<std::size_t> perm_;
};

}  // namespace ck
