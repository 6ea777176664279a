#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ck/groebner.hpp"
#include "ck/homology.hpp"
#include "ck/ideal_ops.hpp"

namespace ck {

enum class Verdict { verified, refuted, inconclusive };

const char* to_string(Verdict v);

/// Knobs shared by every randomized search.
struct SearchOptions {
  std::uint64_t seed = 0;
  Budget budget{};
  std::size_t trials = 200;
  /// Defaults to the maximum generator degree + 2.
  std::optional<unsigned> degree_bound;
};

unsigned effective_degree_bound(const IdealHandle& I, const SearchOptions& options);

// ---------------------------------------------------------------------------
// Non-zerodivisors and regular sequences

struct NzdResult {
  bool nzd = false;
  /// g ∈ (B : f) \ B when f is a zero divisor on A/B.
  std::optional<Polynomial> witness;
  /// Hash of the reduced basis of (B : f).
  std::string quotient_hash;
};

NzdResult is_nzd(const Polynomial& f, const IdealHandle& B, const Budget& budget = {});

struct RegSeqStep {
  Polynomial element;
  /// Hash of B + (g_1..g_(k-1)); the quotient by g_k has the same basis.
  std::string prefix_hash;
};

struct RegSeqCertificate {
  IdealHandle base;
  std::vector<Polynomial> sequence;
  std::vector<RegSeqStep> steps;
};

struct RegSeqFailure {
  /// 1-based index of the first element that is a zero divisor.
  std::size_t index = 0;
  Polynomial witness;
};

using RegSeqResult = std::variant<RegSeqCertificate, RegSeqFailure>;

RegSeqResult is_regular_sequence(const std::vector<Polynomial>& seq, const IdealHandle& B, const Budget& budget = {});
bool replay(const RegSeqCertificate& cert, const Budget& budget = {});

// ---------------------------------------------------------------------------
// Regularization of a generating set

struct PerturbationElement {
  /// 0-based position of the generator that was replaced.
  std::size_t position = 0;
  Polynomial lambda;
  /// lambda = sum coefficients[i] * f[sources[i]] over the input generators.
  std::vector<std::size_t> sources;
  std::vector<Polynomial> coefficients;
  std::uint64_t seed = 0;
  std::size_t trial = 0;
};

bool replay(const PerturbationElement& p, const std::vector<Polynomial>& inputs);

struct RegularizationResult {
  Verdict verdict = Verdict::inconclusive;
  std::vector<Polynomial> inputs;
  std::vector<Polynomial> generators;
  std::optional<RegSeqCertificate> certificate;
  std::vector<PerturbationElement> perturbations;
  std::vector<std::string> log;
  std::size_t trials_used = 0;
};

/// Replaces f_k by f_k + lambda with lambda a random combination of the later
/// generators until each is a non-zerodivisor modulo the earlier ones. Throws
/// std::invalid_argument when fs does not generate I.
RegularizationResult regularize_generators(const IdealHandle& I, const std::vector<Polynomial>& fs,
                                           const SearchOptions& options = {});
bool replay(const RegularizationResult& r, const IdealHandle& I, const Budget& budget = {});

// ---------------------------------------------------------------------------
// Conormal and lci

struct ModSquareResult {
  bool generated = false;
  /// A generator of I outside (c) + I^2.
  std::optional<Polynomial> failing_generator;
  std::string hash;
};

/// I = (c_1..c_m) + I^2. Throws std::invalid_argument if some c_i ∉ I.
ModSquareResult mod_square_generation(const IdealHandle& I, const std::vector<Polynomial>& cs,
                                      const Budget& budget = {});

struct LCIProxyCertificate {
  static constexpr const char* kAmbientHypotheses =
      "valid under Cohen-Macaulay ambient + unmixedness (user-asserted)";

  IdealHandle ideal;
  DimensionReport dimension;
  PresentationMatrix conormal;
  ProjectiveRankCertificate rank;
};

struct LCIRefutation {
  DimensionReport dimension;
  ProjectiveRankCertificate failed;
};

using LCIResult = std::variant<LCIProxyCertificate, LCIRefutation>;

LCIResult lci_certificate(const IdealHandle& I, const Budget& budget = {});
bool replay(const LCIProxyCertificate& cert, const Budget& budget = {});

// ---------------------------------------------------------------------------
// Complete intersections

struct CICertificate {
  IdealHandle ideal;
  Polynomial c;
  Polynomial d;
  /// Shared hash of the reduced bases of I and (c, d).
  std::string ideal_hash;
  RegSeqCertificate regular;
};

bool replay(const CICertificate& cert, const Budget& budget = {});

struct CIOutcome {
  Verdict verdict = Verdict::inconclusive;
  std::optional<CICertificate> certificate;
  std::size_t trials_used = 0;
  std::vector<std::string> log;
};

/// Never refutes: failure to find a generating regular pair is reported as
/// inconclusive.
CIOutcome ci_from_free_conormal(const IdealHandle& I, const Polynomial& c, const Polynomial& d,
                                const SearchOptions& options = {});

struct STCICertificate {
  IdealHandle ideal;
  Polynomial f;
  Polynomial g;
  RegSeqCertificate regular;
  RadicalEqualityCertificate radical;
  DimensionReport dimension;
};

struct STCIRefutation {
  /// "height", "regular-sequence" or "radical-equality".
  std::string failed_check;
  int height = 0;
  std::optional<RegSeqFailure> regular;
  std::optional<RadicalRefutation> radical;
};

using STCIResult = std::variant<STCICertificate, STCIRefutation>;

STCIResult stci_verify(const IdealHandle& I, const Polynomial& f, const Polynomial& g, const Budget& budget = {});
bool replay(const STCICertificate& cert, const Budget& budget = {});

struct STCISearchOutcome {
  Verdict verdict = Verdict::inconclusive;
  std::optional<STCICertificate> certificate;
  /// Set when the pair came from the free-conormal route.
  std::optional<CICertificate> ci;
  /// Field the certificate lives over (an extension when F_p stalled).
  std::string field;
  std::size_t trials_used = 0;
  std::vector<std::string> log;
};

STCISearchOutcome stci_search(const IdealHandle& I, const SearchOptions& options = {});

/// Same ideal over another coefficient field (variables and order kept).
IdealHandle change_field(const IdealHandle& I, const Field& field);

// ---------------------------------------------------------------------------
// Local generation at points

struct LocalGenerationReport {
  std::vector<std::vector<Scalar>> points;
  /// I_m = (c)_m at the maximal ideal of each point.
  std::vector<bool> locally_equal;
  bool globally_equal = false;
  /// ((c) : I); its non-vanishing at a point gives local equality there.
  IdealHandle conductor;
};

/// Points must lie on V(I); throws std::invalid_argument otherwise.
LocalGenerationReport local_generation_check(const IdealHandle& I, const std::vector<Polynomial>& cs,
                                             const std::vector<std::vector<Scalar>>& points,
                                             const Budget& budget = {});

/// Points of V(I) with coordinates in [-bound, bound] (all of F_p^n for a
/// prime field of size at most 2*bound+1).
std::vector<std::vector<Scalar>> rational_points(const IdealHandle& I, int bound);

}  // namespace ck
