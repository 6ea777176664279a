#pragma once

// Shared helpers for the test binaries: ring shortcuts and random generators.

#include <random>
#include <string>
#include <vector>

#include "ck/groebner.hpp"
#include "ck/polynomial.hpp"
#include "ck/text.hpp"

namespace ck::testing {

inline RingPtr qq(std::vector<std::string> vars) { return make_ring(std::move(vars), Field::rationals()); }

inline RingPtr fp(std::uint64_t p, std::vector<std::string> vars) { return make_ring(std::move(vars), Field::prime(p)); }

inline Polynomial P(const RingPtr& ring, const std::string& text) { return parse_polynomial(ring, text); }

inline std::vector<Polynomial> Ps(const RingPtr& ring, std::initializer_list<const char*> texts) {
  std::vector<Polynomial> out;
  for (const char* t : texts) out.push_back(P(ring, t));
  return out;
}

inline RingSpec plain(const RingPtr& ring) { return RingSpec{ring, {}}; }

inline IdealHandle ideal(const RingPtr& ring, std::initializer_list<const char*> texts) {
  return IdealHandle(plain(ring), Ps(ring, texts));
}

/// Random polynomial with at most `terms` terms, total degree <= max_degree,
/// small integer coefficients.
inline Polynomial random_poly(std::mt19937_64& rng, const RingPtr& ring, unsigned max_degree, int terms,
                              bool homogeneous = false) {
  std::vector<Term> out;
  const auto n = ring->nvars();
  for (int t = 0; t < terms; ++t) {
    std::vector<std::uint32_t> e(n, 0);
    unsigned budget = homogeneous ? max_degree : static_cast<unsigned>(rng() % (max_degree + 1));
    while (budget > 0) {
      e[rng() % n] += 1;
      --budget;
    }
    out.push_back({Monomial(std::move(e)), ring->field().random_small(rng, 3)});
  }
  return Polynomial::from_terms(ring, std::move(out));
}

inline Monomial random_monomial(std::mt19937_64& rng, std::size_t n, unsigned max_exp) {
  std::vector<std::uint32_t> e(n);
  for (auto& x : e) x = static_cast<std::uint32_t>(rng() % (max_exp + 1));
  return Monomial(std::move(e));
}

}  // namespace ck::testing
