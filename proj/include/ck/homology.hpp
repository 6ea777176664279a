#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ck/groebner.hpp"
#include "ck/ideal_ops.hpp"

namespace ck {

/// Dense matrix over a polynomial ring, row-major.
class Matrix {
 public:
  Matrix(RingPtr ring, std::size_t rows, std::size_t cols);

  const RingPtr& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Polynomial& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Polynomial& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix operator*(const Matrix& other) const;
  Matrix transpose() const;
  bool is_zero() const;
  bool operator==(const Matrix& other) const;

  ModuleElement row(std::size_t i) const;
  ModuleElement column(std::size_t j) const;
  static Matrix from_columns(const RingPtr& ring, std::size_t rows, const std::vector<ModuleElement>& columns);
  static Matrix from_rows(const RingPtr& ring, std::size_t cols, const std::vector<ModuleElement>& rows);
  /// Every entry reduced to normal form modulo the spec's base ideal.
  Matrix reduced(const RingSpec& spec, const Budget& budget = {}) const;

 private:
  RingPtr ring_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Polynomial> data_;
};

/// Row-major text: [[a, b], [c, d]] with canonical entries.
std::string format(const Matrix& m);

/// Element of the exterior algebra of R^n; basis e_S is keyed by the bitmask
/// of S.
class ExteriorForm {
 public:
  ExteriorForm(RingPtr ring, std::size_t n);
  static ExteriorForm basis(const RingPtr& ring, std::size_t n, std::uint32_t mask);

  const RingPtr& ring() const { return ring_; }
  std::size_t rank() const { return n_; }
  const std::map<std::uint32_t, Polynomial>& terms() const { return terms_; }
  void add(std::uint32_t mask, const Polynomial& c);
  bool is_zero() const { return terms_.empty(); }
  /// Common degree p of all terms; nullopt for zero or mixed forms.
  std::optional<int> degree() const;

  ExteriorForm operator+(const ExteriorForm& o) const;
  ExteriorForm operator-(const ExteriorForm& o) const;
  ExteriorForm operator*(const Polynomial& c) const;
  bool operator==(const ExteriorForm& o) const { return n_ == o.n_ && terms_ == o.terms_; }

 private:
  RingPtr ring_;
  std::size_t n_;
  std::map<std::uint32_t, Polynomial> terms_;
};

std::string format(const ExteriorForm& w);

ExteriorForm wedge(const ExteriorForm& a, const ExteriorForm& b);

/// Linear functional u on R^n, given by u(e_1), ..., u(e_n).
struct ContractionMap {
  std::vector<Polynomial> values;
};

/// d_u(e_{i_1} ∧ ... ∧ e_{i_p}) = sum_k (-1)^(k+1) u(e_{i_k}) e_{i_1} ∧ .. (omit i_k) .. ∧ e_{i_p}.
/// Throws std::invalid_argument when the form's rank differs from u's.
ExteriorForm koszul_contraction(const ContractionMap& u, const ExteriorForm& w);

/// Index sets of size p in {0..n-1}, as bitmasks, in lexicographic order of
/// the sorted sets.
std::vector<std::uint32_t> exterior_basis(std::size_t n, std::size_t p);

struct KoszulComplex {
  RingPtr ring;
  std::vector<Polynomial> values;
  /// differentials[p - 1] is d_p : Λ^p → Λ^(p-1), of size C(n, p-1) x C(n, p).
  std::vector<Matrix> differentials;
  /// Every composition d_(p-1) d_p multiplied out to the zero matrix.
  bool is_complex = false;

  const Matrix& d(std::size_t p) const { return differentials.at(p - 1); }
};

KoszulComplex koszul_complex(const std::vector<Polynomial>& values);

/// Exactness of 0 → A → A^2 → A for the pair (x, y) over A = k[x]/J0.
struct KoszulExactness {
  bool exact = false;
  /// Nonzero a with a x = 0 in A.
  std::optional<Polynomial> annihilator;
  /// Syzygy of (x, y) outside the span of (-y, x).
  std::optional<ModuleElement> extra_syzygy;
};

KoszulExactness koszul2_exactness(const Polynomial& x, const Polynomial& y, const RingSpec& spec,
                                  const Budget& budget = {});

/// M = coker(R^a → R^b) over the ring of `spec`. Columns of `relations` are
/// the relations; there are b = relations.rows() generators.
struct PresentationMatrix {
  RingSpec spec;
  Matrix relations;

  std::size_t generators() const { return relations.rows(); }
};

/// R^(b_l) → ... → R^(b_1) → R^(b_0) = A, resolving A/I over A.
struct FreeResolution {
  IdealHandle ideal;
  /// maps[k] : R^(b_(k+1)) → R^(b_k); maps[0] is the generator row of I.
  std::vector<Matrix> maps;
  /// b_0 = 1, b_1, ...
  std::vector<std::size_t> ranks;
  /// All consecutive compositions vanish in A and each map is a complete
  /// syzygy computation of the previous one.
  bool verified = false;
  /// The last computed syzygy module was zero, so the resolution is finite.
  bool terminated = false;
  /// Resolutions are built by trimmed syzygies and are not minimized.
  static constexpr bool kMinimal = false;
};

FreeResolution free_resolution(const IdealHandle& I, std::size_t length, const Budget& budget = {});

/// Ext^r_A(A/I, A), presented over A/I.
struct ExtModule {
  std::size_t degree = 0;
  PresentationMatrix presentation;
  /// Fitt_1 of the presentation is the unit ideal of A/I.
  bool locally_cyclic = false;
};

ExtModule ext_module(const IdealHandle& I, std::size_t r, const Budget& budget = {});

/// I/I² over A/I: generators of I, relations their syzygies reduced mod I.
PresentationMatrix conormal_presentation(const IdealHandle& I, const Budget& budget = {});

struct FittingIdealSet {
  PresentationMatrix presentation;
  /// ideals[k] = Fitt_k for k = 0..b.
  std::vector<IdealHandle> ideals;
  /// Fitt_k ⊆ Fitt_(k+1) was checked for every k, and Fitt_b = (1).
  bool chain_verified = false;
};

/// Nonzero (mod base) s x s minors of the presentation matrix, deduplicated.
std::vector<Polynomial> minors(const PresentationMatrix& p, std::size_t s, const Budget& budget = {});

FittingIdealSet fitting_ideals(const PresentationMatrix& p, const Budget& budget = {});

/// M is projective of constant rank r iff Fitt_(r-1) = 0 and Fitt_r = (1).
struct ProjectiveRankCertificate {
  bool certified = false;
  std::size_t rank = 0;
  /// Generators of Fitt_r (the (b-r)-minors) and cofactors with
  /// sum cofactors[i] * minors[i] = 1 in the presentation ring.
  std::vector<Polynomial> minors;
  std::vector<Polynomial> cofactors;
  /// On refutation: which condition failed and a witness minor.
  std::string failure;
  std::optional<Polynomial> witness;
};

ProjectiveRankCertificate projective_rank_certificate(const PresentationMatrix& p, std::size_t r,
                                                      const Budget& budget = {});

/// Recomputes the minors and checks both Fitting conditions from the stored
/// cofactors.
bool replay(const ProjectiveRankCertificate& cert, const PresentationMatrix& p, const Budget& budget = {});

}  // namespace ck
