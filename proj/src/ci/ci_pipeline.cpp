#include "ck/ci_pipeline.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "ck/error.hpp"

namespace ck {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::verified:
      return "verified";
    case Verdict::refuted:
      return "refuted";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

unsigned effective_degree_bound(const IdealHandle& I, const SearchOptions& options) {
  if (options.degree_bound) return *options.degree_bound;
  unsigned d = 0;
  for (const auto& g : I.generators())
    if (!g.is_zero()) d = std::max(d, g.total_degree());
  return d + 2;
}

namespace {

std::vector<Polynomial> nonzero(const std::vector<Polynomial>& fs) {
  std::vector<Polynomial> out;
  for (const auto& f : fs)
    if (!f.is_zero()) out.push_back(f);
  return out;
}

IdealHandle with_extra(const IdealHandle& B, std::span<const Polynomial> extra) {
  auto gens = B.generators();
  gens.insert(gens.end(), extra.begin(), extra.end());
  return IdealHandle(B.spec(), std::move(gens));
}

// Random polynomial with up to `terms` terms of total degree <= max_degree.
Polynomial random_element(std::mt19937_64& rng, const RingPtr& ring, unsigned max_degree, int terms) {
  std::vector<Term> out;
  const auto n = ring->nvars();
  for (int t = 0; t < terms; ++t) {
    std::vector<std::uint32_t> e(n, 0);
    for (auto left = static_cast<unsigned>(rng() % (max_degree + 1)); left > 0; --left) e[rng() % n] += 1;
    out.push_back({Monomial(std::move(e)), ring->field().random_small(rng, 3)});
  }
  return Polynomial::from_terms(ring, std::move(out));
}

Scalar random_nonzero_scalar(std::mt19937_64& rng, const Field& field) {
  while (true) {
    auto c = field.random_small(rng, 3);
    if (!field.is_zero(c)) return c;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Regular sequences

NzdResult is_nzd(const Polynomial& f, const IdealHandle& B, const Budget& budget) {
  NzdResult out;
  const auto Q = quotient(B, f, budget);
  out.quotient_hash = Q.hash(budget);
  out.nzd = out.quotient_hash == B.hash(budget);
  if (!out.nzd) {
    for (const auto& g : Q.generators()) {
      auto r = normal_form(g, B, budget);
      if (!r.is_zero()) {
        out.witness = std::move(r);
        break;
      }
    }
  }
  return out;
}

RegSeqResult is_regular_sequence(const std::vector<Polynomial>& seq, const IdealHandle& B, const Budget& budget) {
  if (seq.empty()) throw std::invalid_argument("regular sequence test needs at least one element");
  RegSeqCertificate cert{B, seq, {}};
  for (std::size_t k = 0; k < seq.size(); ++k) {
    const auto prefix = with_extra(B, std::span(seq).first(k));
    auto r = is_nzd(seq[k], prefix, budget);
    if (!r.nzd) return RegSeqFailure{k + 1, r.witness.value_or(Polynomial::constant(B.ring(), 1))};
    cert.steps.push_back({seq[k], r.quotient_hash});
  }
  return cert;
}

bool replay(const RegSeqCertificate& cert, const Budget& budget) {
  if (cert.steps.size() != cert.sequence.size() || cert.sequence.empty()) return false;
  for (std::size_t k = 0; k < cert.sequence.size(); ++k) {
    if (!(cert.steps[k].element == cert.sequence[k])) return false;
    const auto prefix = with_extra(cert.base, std::span(cert.sequence).first(k));
    const auto h = prefix.hash(budget);
    if (h != cert.steps[k].prefix_hash) return false;
    if (quotient(prefix, cert.sequence[k], budget).hash(budget) != h) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Regularization

bool replay(const PerturbationElement& p, const std::vector<Polynomial>& inputs) {
  if (p.sources.size() != p.coefficients.size() || inputs.empty()) return false;
  Polynomial sum(inputs.front().ring());
  for (std::size_t i = 0; i < p.sources.size(); ++i) {
    if (p.sources[i] <= p.position || p.sources[i] >= inputs.size()) return false;
    sum += p.coefficients[i] * inputs[p.sources[i]];
  }
  return sum == p.lambda;
}

RegularizationResult regularize_generators(const IdealHandle& I, const std::vector<Polynomial>& fs,
                                           const SearchOptions& options) {
  const auto& budget = options.budget;
  if (fs.empty()) throw std::invalid_argument("no generators to regularize");
  if (!ideal_equal(I, IdealHandle(I.spec(), fs), budget))
    throw std::invalid_argument("the given elements do not generate the ideal");
  RegularizationResult out;
  out.inputs = fs;
  out.generators = fs;
  const auto& ring = I.ring();
  const auto& field = ring->field();
  const unsigned D = effective_degree_bound(I, options);
  std::mt19937_64 rng(options.seed);
  const auto zero = IdealHandle::zero(I.spec());
  const std::size_t n = fs.size();
  constexpr std::size_t kScalarTrials = 10;

  for (std::size_t k = 0; k < n; ++k) {
    const auto prefix = with_extra(zero, std::span(out.generators).first(k));
    bool found = false;
    for (std::size_t trial = 0; out.trials_used < options.trials; ++trial) {
      if (trial > 0 && k + 1 == n) break;  // nothing left to perturb with
      ++out.trials_used;
      PerturbationElement pert{k, Polynomial(ring), {}, {}, options.seed, trial};
      if (trial > 0) {
        for (std::size_t j = k + 1; j < n; ++j) {
          Polynomial a(ring);
          if (trial <= kScalarTrials) {
            a = Polynomial::constant(ring, random_nonzero_scalar(rng, field));
          } else {
            const unsigned deg = fs[j].total_degree() >= D ? 0 : D - fs[j].total_degree();
            a = random_element(rng, ring, deg, 2);
          }
          pert.sources.push_back(j);
          pert.coefficients.push_back(a);
          pert.lambda += a * fs[j];
        }
        if (pert.lambda.is_zero()) continue;
      }
      const auto candidate = fs[k] + pert.lambda;
      if (candidate.is_zero()) continue;
      try {
        if (!is_nzd(candidate, prefix, budget).nzd) {
          if (trial == 0) out.log.push_back("position " + std::to_string(k + 1) + ": input is a zero divisor");
          continue;
        }
      } catch (const BudgetExceeded&) {
        out.log.push_back("position " + std::to_string(k + 1) + " trial " + std::to_string(trial) +
                          ": budget exhausted");
        continue;
      }
      out.generators[k] = candidate;
      if (trial > 0) {
        out.log.push_back("position " + std::to_string(k + 1) + ": accepted perturbation at trial " +
                          std::to_string(trial));
        out.perturbations.push_back(std::move(pert));
      }
      found = true;
      break;
    }
    if (!found) {
      out.log.push_back("position " + std::to_string(k + 1) + ": no non-zerodivisor found within the trial budget");
      return out;
    }
  }
  auto reg = is_regular_sequence(out.generators, zero, budget);
  if (!std::holds_alternative<RegSeqCertificate>(reg))
    throw std::logic_error("regularized sequence failed its final check");
  if (!ideal_equal(I, IdealHandle(I.spec(), out.generators), budget))
    throw std::logic_error("regularized sequence changed the ideal");
  out.certificate = std::get<RegSeqCertificate>(std::move(reg));
  out.verdict = Verdict::verified;
  return out;
}

bool replay(const RegularizationResult& r, const IdealHandle& I, const Budget& budget) {
  if (r.verdict != Verdict::verified || !r.certificate) return false;
  if (r.certificate->sequence != r.generators || !replay(*r.certificate, budget)) return false;
  if (!r.certificate->base.generators().empty()) return false;
  if (r.inputs.size() != r.generators.size()) return false;
  if (!ideal_equal(I, IdealHandle(I.spec(), r.inputs), budget)) return false;
  if (!ideal_equal(I, IdealHandle(I.spec(), r.generators), budget)) return false;
  std::vector<Polynomial> rebuilt = r.inputs;
  for (const auto& p : r.perturbations) {
    if (!replay(p, r.inputs)) return false;
    rebuilt[p.position] += p.lambda;
  }
  return rebuilt == r.generators;
}

// ---------------------------------------------------------------------------
// Conormal and lci

ModSquareResult mod_square_generation(const IdealHandle& I, const std::vector<Polynomial>& cs, const Budget& budget) {
  for (const auto& c : cs)
    if (!ideal_member(c, I, budget)) throw std::invalid_argument("element " + format(c) + " is not in the ideal");
  const auto gens = nonzero(I.generators());
  std::vector<Polynomial> all = cs;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i; j < gens.size(); ++j) all.push_back(gens[i] * gens[j]);
  const IdealHandle target(I.spec(), all);
  ModSquareResult out;
  out.hash = target.hash(budget);
  for (const auto& g : gens)
    if (!ideal_member(g, target, budget)) {
      out.failing_generator = g;
      return out;
    }
  out.generated = true;
  return out;
}

LCIResult lci_certificate(const IdealHandle& I, const Budget& budget) {
  auto dim = dimension_height(I, budget);
  if (dim.unit) {
    ProjectiveRankCertificate none;
    none.failure = "unit ideal";
    return LCIRefutation{std::move(dim), std::move(none)};
  }
  auto conormal = conormal_presentation(I, budget);
  auto rank = projective_rank_certificate(conormal, static_cast<std::size_t>(dim.height), budget);
  if (!rank.certified) return LCIRefutation{std::move(dim), std::move(rank)};
  return LCIProxyCertificate{I, std::move(dim), std::move(conormal), std::move(rank)};
}

bool replay(const LCIProxyCertificate& cert, const Budget& budget) {
  const auto dim = dimension_height(cert.ideal, budget);
  if (dim.height != cert.dimension.height || dim.dimension != cert.dimension.dimension) return false;
  if (cert.rank.rank != static_cast<std::size_t>(dim.height)) return false;
  const auto conormal = conormal_presentation(cert.ideal, budget);
  if (!(conormal.relations == cert.conormal.relations)) return false;
  return replay(cert.rank, conormal, budget);
}

// ---------------------------------------------------------------------------
// Complete intersections

bool replay(const CICertificate& cert, const Budget& budget) {
  const IdealHandle pair(cert.ideal.spec(), {cert.c, cert.d});
  if (!ideal_contains(cert.ideal, pair, budget) || !ideal_contains(pair, cert.ideal, budget)) return false;
  if (cert.ideal.hash(budget) != cert.ideal_hash || pair.hash(budget) != cert.ideal_hash) return false;
  if (!cert.regular.base.generators().empty()) return false;
  if (cert.regular.sequence != std::vector<Polynomial>{cert.c, cert.d}) return false;
  return replay(cert.regular, budget);
}

CIOutcome ci_from_free_conormal(const IdealHandle& I, const Polynomial& c, const Polynomial& d,
                                const SearchOptions& options) {
  const auto& budget = options.budget;
  const auto& ring = I.ring();
  CIOutcome out;
  std::mt19937_64 rng(options.seed);
  const unsigned D = effective_degree_bound(I, options);
  const auto gens = nonzero(I.generators());
  std::vector<Polynomial> squares;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i; j < gens.size(); ++j) squares.push_back(gens[i] * gens[j]);
  const auto combination = [&](const std::vector<Polynomial>& pool) {
    Polynomial acc(ring);
    for (const auto& g : pool) {
      if (rng() % 2) continue;
      const unsigned deg = g.total_degree() >= D ? 0 : D - g.total_degree();
      acc += random_element(rng, ring, deg, 1) * g;
    }
    return acc;
  };

  for (std::size_t trial = 0; trial < options.trials; ++trial) {
    ++out.trials_used;
    Polynomial c1 = c, d1 = d;
    if (trial > 0 && trial <= options.trials / 2) {
      c1 += combination(squares);
      d1 += combination(squares);
    } else if (trial > 0) {
      c1 = combination(gens);
      d1 = combination(gens);
    }
    if (c1.is_zero() || d1.is_zero()) continue;
    try {
      if (!ideal_equal(I, IdealHandle(I.spec(), {c1, d1}), budget)) continue;
      SearchOptions inner = options;
      inner.seed = options.seed + trial;
      auto reg = regularize_generators(I, {c1, d1}, inner);
      if (reg.verdict != Verdict::verified) {
        out.log.push_back("trial " + std::to_string(trial) + ": pair generates I but regularization stalled");
        continue;
      }
      const auto& g = reg.generators;
      out.log.push_back("trial " + std::to_string(trial) + ": generating regular pair found");
      out.certificate = CICertificate{I, g[0], g[1], I.hash(budget), *reg.certificate};
      out.verdict = Verdict::verified;
      return out;
    } catch (const BudgetExceeded&) {
      out.log.push_back("trial " + std::to_string(trial) + ": budget exhausted");
    }
  }
  out.log.push_back("no generating regular pair within " + std::to_string(options.trials) + " trials");
  return out;
}

// ---------------------------------------------------------------------------
// Set-theoretic complete intersections

STCIResult stci_verify(const IdealHandle& I, const Polynomial& f, const Polynomial& g, const Budget& budget) {
  auto dim = dimension_height(I, budget);
  if (dim.unit || dim.height != 2) return STCIRefutation{"height", dim.height, std::nullopt, std::nullopt};
  auto reg = is_regular_sequence({f, g}, IdealHandle::zero(I.spec()), budget);
  if (auto* fail = std::get_if<RegSeqFailure>(&reg))
    return STCIRefutation{"regular-sequence", dim.height, *fail, std::nullopt};
  auto rad = radical_equal(I, IdealHandle(I.spec(), {f, g}), budget);
  if (auto* fail = std::get_if<RadicalRefutation>(&rad))
    return STCIRefutation{"radical-equality", dim.height, std::nullopt, *fail};
  return STCICertificate{I, f, g, std::get<RegSeqCertificate>(std::move(reg)),
                         std::get<RadicalEqualityCertificate>(std::move(rad)), std::move(dim)};
}

bool replay(const STCICertificate& cert, const Budget& budget) {
  const auto dim = dimension_height(cert.ideal, budget);
  if (dim.height != 2 || dim.height != cert.dimension.height) return false;
  if (cert.regular.sequence != std::vector<Polynomial>{cert.f, cert.g}) return false;
  if (!cert.regular.base.generators().empty() || !replay(cert.regular, budget)) return false;
  if (cert.radical.left.generators() != cert.ideal.generators()) return false;
  if (cert.radical.right.generators() != std::vector<Polynomial>{cert.f, cert.g}) return false;
  return replay(cert.radical, budget);
}

IdealHandle change_field(const IdealHandle& I, const Field& field) {
  const auto& ring = *I.ring();
  const auto target = make_ring(ring.variables(), field, ring.order());
  std::vector<std::optional<std::size_t>> ids(ring.nvars());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
  const auto move = [&](const std::vector<Polynomial>& fs) {
    std::vector<Polynomial> out;
    for (const auto& f : fs) out.push_back(f.map_to(target, ids));
    return out;
  };
  return IdealHandle(RingSpec{target, move(I.spec().base)}, move(I.generators()));
}

namespace {

/// Vectors in {-1, 0, 1}^m with leading nonzero entry +1, by weight. Empty
/// beyond ten generators, where the enumeration is too large to be useful.
std::vector<std::vector<int>> sign_vectors(std::size_t m) {
  std::vector<std::vector<int>> out;
  if (m > 10) {
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<int> v(m, 0);
      v[i] = 1;
      out.push_back(v);
    }
    return out;
  }
  std::size_t count = 1;
  for (std::size_t i = 0; i < m; ++i) count *= 3;
  for (std::size_t code = 1; code < count; ++code) {
    std::vector<int> v(m);
    std::size_t c = code;
    for (std::size_t i = 0; i < m; ++i, c /= 3) v[i] = c % 3 == 2 ? -1 : static_cast<int>(c % 3);
    const auto lead = std::find_if(v.begin(), v.end(), [](int a) { return a != 0; });
    if (*lead == 1) out.push_back(std::move(v));
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    const auto wa = std::count_if(a.begin(), a.end(), [](int x) { return x != 0; });
    const auto wb = std::count_if(b.begin(), b.end(), [](int x) { return x != 0; });
    return wa < wb;
  });
  return out;
}

void search_over(const IdealHandle& I, const SearchOptions& options, STCISearchOutcome& out) {
  const auto& budget = options.budget;
  const auto& ring = I.ring();
  std::mt19937_64 rng(options.seed);
  const unsigned D = effective_degree_bound(I, options);
  const auto gens = nonzero(I.generators());
  const auto tag = "[" + ring->field().name() + "] ";
  std::size_t used = 0;
  const std::size_t phase1 = std::max<std::size_t>(1, options.trials / 2);

  // Phase 1: conormal bases among +-1 combinations of the generators,
  // sparsest pairs first (plain generator pairs lead). The mod-square screen
  // is cheap and capped on its own; only pairs passing it count as trials.
  const auto try_conormal = [&](const Polynomial& c, const Polynomial& d) -> bool {
    SearchOptions inner = options;
    inner.trials = std::min<std::size_t>(options.trials, 20);
    inner.seed = options.seed + used;
    auto ci = ci_from_free_conormal(I, c, d, inner);
    if (ci.verdict != Verdict::verified) {
      out.log.push_back(tag + "trial " + std::to_string(used) + ": conormal basis found, CI search inconclusive");
      return false;
    }
    auto st = stci_verify(I, ci.certificate->c, ci.certificate->d, budget);
    if (!std::holds_alternative<STCICertificate>(st)) return false;
    out.log.push_back(tag + "trial " + std::to_string(used) + ": complete intersection pair");
    out.ci = std::move(ci.certificate);
    out.certificate = std::get<STCICertificate>(std::move(st));
    return true;
  };
  const auto step = [&](auto&& body) -> bool {
    ++used;
    ++out.trials_used;
    try {
      return body();
    } catch (const BudgetExceeded&) {
      out.log.push_back(tag + "trial " + std::to_string(used) + ": budget exhausted");
      return false;
    }
  };
  const auto vectors = sign_vectors(gens.size());
  const auto combine = [&](const std::vector<int>& v) {
    Polynomial acc(ring);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] == 1) acc += gens[i];
      if (v[i] == -1) acc -= gens[i];
    }
    return acc;
  };
  const auto weight = [](const std::vector<int>& v) {
    return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](int a) { return a != 0; }));
  };
  const std::size_t screen_cap = 50 * options.trials;
  std::size_t screened = 0;
  for (std::size_t total = 2; total <= 2 * gens.size() && used < phase1 && screened < screen_cap; ++total) {
    for (std::size_t i = 0; i < vectors.size() && used < phase1 && screened < screen_cap; ++i) {
      for (std::size_t j = i + 1; j < vectors.size() && used < phase1 && screened < screen_cap; ++j) {
        if (weight(vectors[i]) + weight(vectors[j]) != total) continue;
        ++screened;
        const auto c = combine(vectors[i]);
        const auto d = combine(vectors[j]);
        if (c.is_zero() || d.is_zero()) continue;
        bool basis = false;
        try {
          basis = mod_square_generation(I, {c, d}, budget).generated;
        } catch (const BudgetExceeded&) {
          continue;
        }
        if (basis && step([&] { return try_conormal(c, d); })) return;
      }
    }
  }
  out.log.push_back(tag + "screened " + std::to_string(screened) + " sign pairs for a conormal basis");

  // Phase 2: random I-combinations of degree <= D.
  const auto combination = [&]() {
    Polynomial acc(ring);
    for (const auto& g : gens) {
      const unsigned deg = g.total_degree() >= D ? 0 : D - g.total_degree();
      acc += random_element(rng, ring, deg, 2) * g;
    }
    return acc;
  };
  while (used < options.trials) {
    const auto f = combination();
    const auto g = combination();
    const bool ok = step([&] {
      if (f.is_zero() || g.is_zero()) return false;
      auto st = stci_verify(I, f, g, budget);
      if (!std::holds_alternative<STCICertificate>(st)) return false;
      out.log.push_back(tag + "trial " + std::to_string(used) + ": random pair");
      out.certificate = std::get<STCICertificate>(std::move(st));
      return true;
    });
    if (ok) return;
  }
  out.log.push_back(tag + "no pair within " + std::to_string(options.trials) + " trials");
}

}  // namespace

STCISearchOutcome stci_search(const IdealHandle& I, const SearchOptions& options) {
  STCISearchOutcome out;
  const auto dim = dimension_height(I, options.budget);
  if (dim.unit || dim.height != 2) {
    out.log.push_back("height is " + std::to_string(dim.height) + ", not 2");
    return out;
  }
  const auto& field = I.ring()->field();
  search_over(I, options, out);
  if (!out.certificate && !field.is_rational() && field.degree() == 1) {
    for (int k = 2; k <= 3 && !out.certificate; ++k) {
      const auto ext = Field::extension(field.characteristic(), k);
      out.log.push_back("retrying over " + ext.name());
      search_over(change_field(I, ext), options, out);
    }
  }
  if (out.certificate) {
    out.verdict = Verdict::verified;
    out.field = out.certificate->ideal.ring()->field().name();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Local generation

LocalGenerationReport local_generation_check(const IdealHandle& I, const std::vector<Polynomial>& cs,
                                             const std::vector<std::vector<Scalar>>& points,
                                             const Budget& budget) {
  const auto& field = I.ring()->field();
  const IdealHandle C(I.spec(), cs);
  LocalGenerationReport out{points, {}, ideal_equal(I, C, budget), quotient(C, I, budget)};
  const auto vanishes = [&](const Polynomial& f, const std::vector<Scalar>& pt) {
    return field.is_zero(f.evaluate(pt));
  };
  for (const auto& pt : points) {
    for (const auto& f : I.generators())
      if (!vanishes(f, pt)) throw std::invalid_argument("point is not on V(I)");
    for (const auto& f : I.spec().base)
      if (!vanishes(f, pt)) throw std::invalid_argument("point is not on the ambient variety");
    bool local = false;
    for (const auto& s : out.conductor.generators()) {
      if (vanishes(s, pt)) continue;
      local = ideal_contains(saturate(C, s, budget), I, budget);
      break;
    }
    out.locally_equal.push_back(local);
  }
  return out;
}

std::vector<std::vector<Scalar>> rational_points(const IdealHandle& I, int bound) {
  const auto& field = I.ring()->field();
  const auto n = I.ring()->nvars();
  std::vector<long long> values;
  if (!field.is_rational() && field.degree() == 1 && field.characteristic() <= static_cast<std::uint64_t>(2 * bound + 1)) {
    for (std::uint64_t a = 0; a < field.characteristic(); ++a) values.push_back(static_cast<long long>(a));
  } else {
    for (int a = -bound; a <= bound; ++a) values.push_back(a);
  }
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total *= values.size();
    if (total > 2000000) throw std::invalid_argument("point enumeration too large");
  }
  std::vector<Polynomial> eqs = I.generators();
  eqs.insert(eqs.end(), I.spec().base.begin(), I.spec().base.end());
  std::vector<std::vector<Scalar>> out;
  std::vector<std::size_t> idx(n, 0);
  for (std::size_t count = 0; count < total; ++count) {
    std::vector<Scalar> pt;
    for (std::size_t i = 0; i < n; ++i) pt.push_back(field.from_int(values[idx[i]]));
    if (std::all_of(eqs.begin(), eqs.end(), [&](const Polynomial& f) { return field.is_zero(f.evaluate(pt)); }))
      out.push_back(std::move(pt));
    for (std::size_t i = n; i-- > 0;) {
      if (++idx[i] < values.size()) break;
      idx[i] = 0;
    }
  }
  return out;
}

}  // namespace ck
