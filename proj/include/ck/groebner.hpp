#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ck/polynomial.hpp"

namespace ck {

/// Resource limit for a single Gröbner computation (S-pair reductions).
struct Budget {
  std::size_t gb_steps = 10000;
};

/// Reduced Gröbner basis of the ideal generated by `gens` in the ring's own
/// order: monic, interreduced, sorted by descending leading monomial. Zero
/// generators are ignored. Throws BudgetExceeded.
std::vector<Polynomial> groebner_basis(std::span<const Polynomial> gens, const Budget& budget = {});

/// Full reduction against a Gröbner basis (the canonical representative).
Polynomial normal_form(const Polynomial& f, std::span<const Polynomial> basis);

/// Lowercase hex SHA-256 digest.
std::string sha256_hex(std::string_view data);

/// SHA-256 (hex) of the canonical text of a basis together with its ring.
std::string basis_hash(std::span<const Polynomial> basis);

/// Generators of an ideal of A = k[x]/J0 with a write-once basis cache.
class IdealHandle {
 public:
  IdealHandle(RingSpec spec, std::vector<Polynomial> generators);
  static IdealHandle unit(const RingSpec& spec);
  static IdealHandle zero(const RingSpec& spec);

  const RingSpec& spec() const { return spec_; }
  const RingPtr& ring() const { return spec_.ring; }
  const std::vector<Polynomial>& generators() const { return gens_; }

  /// Reduced basis of generators + J0, computed once per order and shared
  /// across copies; safe to call concurrently.
  const std::vector<Polynomial>& groebner(const Budget& budget = {}) const;
  std::string hash(const Budget& budget = {}) const { return basis_hash(groebner(budget)); }

  bool is_unit(const Budget& budget = {}) const;
  /// True when the ideal is zero in A, i.e. contained in J0.
  bool is_zero_in_ring(const Budget& budget = {}) const;

 private:
  struct Cache {
    std::mutex mutex;
    std::map<std::string, std::vector<Polynomial>> bases;
  };

  RingSpec spec_;
  std::vector<Polynomial> gens_;
  std::shared_ptr<Cache> cache_;
};

Polynomial normal_form(const Polynomial& f, const IdealHandle& ideal, const Budget& budget = {});
bool ideal_member(const Polynomial& f, const IdealHandle& ideal, const Budget& budget = {});
/// Equal as ideals of A (same reduced basis).
bool ideal_equal(const IdealHandle& a, const IdealHandle& b, const Budget& budget = {});
/// Every generator of `small` lies in `big`.
bool ideal_contains(const IdealHandle& big, const IdealHandle& small, const Budget& budget = {});

/// Cofactors c with f = sum c_i g_i in A (i.e. modulo J0); nullopt if f is
/// not in the ideal. The identity is re-verified before returning.
std::optional<std::vector<Polynomial>> lift(const Polynomial& f, std::span<const Polynomial> gens, const RingSpec& spec,
                                            const Budget& budget = {});

/// Element of a free module R^m.
struct ModuleElement {
  std::vector<Polynomial> entries;

  std::size_t rank() const { return entries.size(); }
  bool is_zero() const;
  bool operator==(const ModuleElement& other) const { return entries == other.entries; }
  static ModuleElement zero(const RingPtr& ring, std::size_t rank);
  static ModuleElement basis_vector(const RingPtr& ring, std::size_t rank, std::size_t i);
};

std::string format(const ModuleElement& v);

/// Reduced Gröbner basis of a submodule of A^m (position-over-term, lower
/// component index ranks higher). J0-multiples of the basis vectors are
/// included, so membership is membership in A^m.
class ModuleBasis {
 public:
  ModuleBasis(RingSpec spec, std::size_t rank, std::vector<ModuleElement> basis)
      : spec_(std::move(spec)), rank_(rank), basis_(std::move(basis)) {}

  const RingSpec& spec() const { return spec_; }
  std::size_t rank() const { return rank_; }
  const std::vector<ModuleElement>& basis() const { return basis_; }

  ModuleElement reduce(const ModuleElement& v) const;
  bool contains(const ModuleElement& v) const { return reduce(v).is_zero(); }

 private:
  RingSpec spec_;
  std::size_t rank_;
  std::vector<ModuleElement> basis_;
};

ModuleBasis module_gb(const RingSpec& spec, std::size_t rank, std::span<const ModuleElement> gens,
                      const Budget& budget = {});

/// Relations among a tuple of module elements (or polynomials, as rank-1
/// elements): every row r satisfies sum r_i v_i = 0 in A^m.
struct SyzygyMatrix {
  RingSpec spec;
  std::vector<ModuleElement> generators;
  std::vector<ModuleElement> rows;
};

/// Rows generate the whole syzygy module; rows are reduced modulo J0,
/// redundant rows are dropped, and each row is checked by multiplication.
SyzygyMatrix syzygies(const RingSpec& spec, std::span<const ModuleElement> generators, const Budget& budget = {});
SyzygyMatrix syzygies(const RingSpec& spec, std::span<const Polynomial> generators, const Budget& budget = {});

/// Drops generators lying in the submodule spanned by the remaining ones.
std::vector<ModuleElement> trim_generators(const RingSpec& spec, std::size_t rank, std::vector<ModuleElement> gens,
                                           const Budget& budget = {});

/// Same submodule of A^m (mutual containment).
bool module_equal(const RingSpec& spec, std::size_t rank, std::span<const ModuleElement> a,
                  std::span<const ModuleElement> b, const Budget& budget = {});

/// Reduces every entry modulo J0 (normal form against the basis of J0).
ModuleElement reduce_mod_base(const ModuleElement& v, const RingSpec& spec, const Budget& budget = {});
Polynomial reduce_mod_base(const Polynomial& f, const RingSpec& spec, const Budget& budget = {});

}  // namespace ck
