#include "ck/groebner.hpp"

#include <openssl/evp.h>

#include <stdexcept>

#include "ck/error.hpp"
#include "engine.hpp"

namespace ck {

using detail::Engine;
using detail::ModuleOrderKind;
using detail::MVec;

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 15];
  }
  return out;
}

namespace {

std::vector<Polynomial> with_base(std::span<const Polynomial> gens, const RingSpec& spec) {
  std::vector<Polynomial> all;
  for (const auto& g : gens) {
    if (!same_ring(g.ring(), spec.ring)) throw RingMismatch();
    if (!g.is_zero()) all.push_back(g);
  }
  for (const auto& j : spec.base)
    if (!j.is_zero()) all.push_back(j);
  return all;
}

}  // namespace

std::vector<Polynomial> groebner_basis(std::span<const Polynomial> gens, const Budget& budget) {
  if (gens.empty()) return {};
  const RingPtr ring = gens.front().ring();
  Engine engine(ring, ModuleOrderKind::PositionOverTerm);
  std::vector<MVec> input;
  for (const auto& g : gens) {
    if (!same_ring(g.ring(), ring)) throw RingMismatch();
    if (!g.is_zero()) input.push_back(engine.from_poly(g, 0));
  }
  std::vector<Polynomial> basis;
  for (const auto& v : engine.buchberger(std::move(input), budget)) basis.push_back(engine.to_poly(v));
  for (const auto& g : gens)
    if (!normal_form(g, basis).is_zero()) throw std::logic_error("Groebner self-check failed: generator " + format(g));
  return basis;
}

Polynomial normal_form(const Polynomial& f, std::span<const Polynomial> basis) {
  if (basis.empty()) return f;
  Engine engine(f.ring(), ModuleOrderKind::PositionOverTerm);
  std::vector<MVec> storage;
  storage.reserve(basis.size());
  for (const auto& g : basis) storage.push_back(engine.from_poly(g, 0));
  std::vector<const MVec*> divisors;
  for (const auto& g : storage) divisors.push_back(&g);
  return engine.to_poly(engine.reduce(engine.from_poly(f, 0), divisors, true));
}

std::string basis_hash(std::span<const Polynomial> basis) {
  std::string text;
  if (!basis.empty()) {
    const auto& ring = *basis.front().ring();
    text = ring.field().name() + "|" + ring.order().name() + "|";
    for (const auto& v : ring.variables()) text += v + ",";
  }
  for (const auto& g : basis) text += "|" + format(g);
  return sha256_hex(text);
}

IdealHandle::IdealHandle(RingSpec spec, std::vector<Polynomial> generators)
    : spec_(std::move(spec)), cache_(std::make_shared<Cache>()) {
  for (auto& g : generators) {
    if (!same_ring(g.ring(), spec_.ring)) throw RingMismatch();
    gens_.push_back(std::move(g));
  }
}

IdealHandle IdealHandle::unit(const RingSpec& spec) { return IdealHandle(spec, {Polynomial::constant(spec.ring, 1)}); }

IdealHandle IdealHandle::zero(const RingSpec& spec) { return IdealHandle(spec, {}); }

const std::vector<Polynomial>& IdealHandle::groebner(const Budget& budget) const {
  const std::string key = spec_.ring->order().name();
  std::lock_guard lock(cache_->mutex);
  auto it = cache_->bases.find(key);
  if (it != cache_->bases.end()) return it->second;
  auto basis = groebner_basis(with_base(gens_, spec_), budget);
  return cache_->bases.emplace(key, std::move(basis)).first->second;
}

bool IdealHandle::is_unit(const Budget& budget) const {
  const auto& g = groebner(budget);
  return g.size() == 1 && g.front().is_unit();
}

bool IdealHandle::is_zero_in_ring(const Budget& budget) const {
  for (const auto& g : gens_)
    if (!reduce_mod_base(g, spec_, budget).is_zero()) return false;
  return true;
}

Polynomial normal_form(const Polynomial& f, const IdealHandle& ideal, const Budget& budget) {
  if (!same_ring(f.ring(), ideal.ring())) throw RingMismatch();
  return normal_form(f, ideal.groebner(budget));
}

bool ideal_member(const Polynomial& f, const IdealHandle& ideal, const Budget& budget) {
  return normal_form(f, ideal, budget).is_zero();
}

bool ideal_contains(const IdealHandle& big, const IdealHandle& small, const Budget& budget) {
  for (const auto& g : small.generators())
    if (!ideal_member(g, big, budget)) return false;
  return true;
}

bool ideal_equal(const IdealHandle& a, const IdealHandle& b, const Budget& budget) {
  return ideal_contains(a, b, budget) && ideal_contains(b, a, budget);
}

Polynomial reduce_mod_base(const Polynomial& f, const RingSpec& spec, const Budget& budget) {
  if (spec.base.empty()) return f;
  return normal_form(f, IdealHandle(spec, {}).groebner(budget));
}

ModuleElement reduce_mod_base(const ModuleElement& v, const RingSpec& spec, const Budget& budget) {
  if (spec.base.empty()) return v;
  const auto basis = IdealHandle(spec, {}).groebner(budget);
  ModuleElement out;
  for (const auto& e : v.entries) out.entries.push_back(normal_form(e, basis));
  return out;
}

std::optional<std::vector<Polynomial>> lift(const Polynomial& f, std::span<const Polynomial> gens, const RingSpec& spec,
                                            const Budget& budget) {
  const RingPtr& ring = spec.ring;
  if (!same_ring(f.ring(), ring)) throw RingMismatch();
  Engine engine(ring, ModuleOrderKind::PositionOverTerm);
  std::vector<MVec> input;
  const auto one = ring->field().one();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    MVec v = engine.from_poly(gens[i], 0);
    v.push_back({static_cast<std::uint32_t>(i + 1), Monomial(ring->nvars()), one});
    input.push_back(engine.sort_terms(std::move(v)));
  }
  for (const auto& j : spec.base) input.push_back(engine.from_poly(j, 0));
  const auto basis = engine.buchberger(std::move(input), budget);
  std::vector<const MVec*> divisors;
  for (const auto& b : basis) divisors.push_back(&b);
  const MVec rest = engine.reduce(engine.from_poly(f, 0), divisors, true);
  for (const auto& t : rest)
    if (t.comp == 0) return std::nullopt;
  const ModuleElement w = engine.to_element(rest, 1, gens.size());
  std::vector<Polynomial> cofactors;
  Polynomial check = f;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    cofactors.push_back(-w.entries[i]);
    check -= cofactors.back() * gens[i];
  }
  if (!reduce_mod_base(check, spec, budget).is_zero()) throw std::logic_error("lift produced a wrong representation");
  return cofactors;
}

bool ModuleElement::is_zero() const {
  for (const auto& e : entries)
    if (!e.is_zero()) return false;
  return true;
}

ModuleElement ModuleElement::zero(const RingPtr& ring, std::size_t rank) {
  return ModuleElement{std::vector<Polynomial>(rank, Polynomial(ring))};
}

ModuleElement ModuleElement::basis_vector(const RingPtr& ring, std::size_t rank, std::size_t i) {
  ModuleElement v = zero(ring, rank);
  v.entries.at(i) = Polynomial::constant(ring, 1);
  return v;
}

std::string format(const ModuleElement& v) { return format_list(v.entries); }

ModuleElement ModuleBasis::reduce(const ModuleElement& v) const {
  if (v.rank() != rank_) throw std::invalid_argument("module element has the wrong rank");
  Engine engine(spec_.ring, ModuleOrderKind::PositionOverTerm);
  std::vector<MVec> storage;
  for (const auto& b : basis_) storage.push_back(engine.from_element(b, 0));
  std::vector<const MVec*> divisors;
  for (const auto& b : storage) divisors.push_back(&b);
  return engine.to_element(engine.reduce(engine.from_element(v, 0), divisors, true), 0, rank_);
}

namespace {

std::vector<MVec> module_input(const Engine& engine, const RingSpec& spec, std::size_t rank,
                               std::span<const ModuleElement> gens, std::uint32_t offset_extra = 0) {
  std::vector<MVec> input;
  for (const auto& g : gens) {
    if (g.rank() != rank) throw std::invalid_argument("module generators of mixed rank");
    input.push_back(engine.from_element(g, offset_extra));
  }
  for (const auto& j : spec.base)
    for (std::size_t k = 0; k < rank; ++k) input.push_back(engine.from_poly(j, static_cast<std::uint32_t>(k + offset_extra)));
  return input;
}

}  // namespace

ModuleBasis module_gb(const RingSpec& spec, std::size_t rank, std::span<const ModuleElement> gens, const Budget& budget) {
  Engine engine(spec.ring, ModuleOrderKind::PositionOverTerm);
  std::vector<ModuleElement> basis;
  for (const auto& v : engine.buchberger(module_input(engine, spec, rank, gens), budget))
    basis.push_back(engine.to_element(v, 0, rank));
  return ModuleBasis(spec, rank, std::move(basis));
}

bool module_equal(const RingSpec& spec, std::size_t rank, std::span<const ModuleElement> a,
                  std::span<const ModuleElement> b, const Budget& budget) {
  const auto ga = module_gb(spec, rank, a, budget);
  const auto gb = module_gb(spec, rank, b, budget);
  for (const auto& v : b)
    if (!ga.contains(v)) return false;
  for (const auto& v : a)
    if (!gb.contains(v)) return false;
  return true;
}

std::vector<ModuleElement> trim_generators(const RingSpec& spec, std::size_t rank, std::vector<ModuleElement> gens,
                                           const Budget& budget) {
  std::vector<ModuleElement> kept;
  for (auto& g : gens) {
    g = reduce_mod_base(g, spec, budget);
    if (g.is_zero()) continue;
    bool duplicate = false;
    for (const auto& k : kept) duplicate = duplicate || k == g;
    if (!duplicate) kept.push_back(std::move(g));
  }
  // Later generators are tried first so the earliest (simplest) survive.
  for (std::size_t i = kept.size(); i-- > 0;) {
    if (kept.size() == 1) break;
    std::vector<ModuleElement> others;
    for (std::size_t j = 0; j < kept.size(); ++j)
      if (j != i) others.push_back(kept[j]);
    if (module_gb(spec, rank, others, budget).contains(kept[i])) kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
  }
  return kept;
}

SyzygyMatrix syzygies(const RingSpec& spec, std::span<const ModuleElement> generators, const Budget& budget) {
  if (generators.empty()) throw std::invalid_argument("syzygies of an empty tuple");
  const std::size_t rank = generators.front().rank();
  const std::size_t count = generators.size();
  Engine engine(spec.ring, ModuleOrderKind::PositionOverTerm);
  const auto one = spec.ring->field().one();
  std::vector<MVec> input;
  for (std::size_t i = 0; i < count; ++i) {
    if (generators[i].rank() != rank) throw std::invalid_argument("syzygy generators of mixed rank");
    MVec v = engine.from_element(generators[i], 0);
    v.push_back({static_cast<std::uint32_t>(rank + i), Monomial(spec.ring->nvars()), one});
    input.push_back(engine.sort_terms(std::move(v)));
  }
  for (const auto& j : spec.base)
    for (std::size_t k = 0; k < rank; ++k) input.push_back(engine.from_poly(j, static_cast<std::uint32_t>(k)));
  std::vector<ModuleElement> rows;
  for (const auto& v : engine.buchberger(std::move(input), budget))
    if (v.front().comp >= rank) rows.push_back(engine.to_element(v, static_cast<std::uint32_t>(rank), count));

  SyzygyMatrix out{spec, std::vector<ModuleElement>(generators.begin(), generators.end()), {}};
  out.rows = trim_generators(spec, count, std::move(rows), budget);
  for (const auto& r : out.rows) {
    ModuleElement sum = ModuleElement::zero(spec.ring, rank);
    for (std::size_t i = 0; i < count; ++i)
      for (std::size_t k = 0; k < rank; ++k) sum.entries[k] += r.entries[i] * generators[i].entries[k];
    if (!reduce_mod_base(sum, spec, budget).is_zero()) throw std::logic_error("syzygy row fails to annihilate the generators");
  }
  return out;
}

SyzygyMatrix syzygies(const RingSpec& spec, std::span<const Polynomial> generators, const Budget& budget) {
  std::vector<ModuleElement> elems;
  for (const auto& g : generators) elems.push_back(ModuleElement{{g}});
  return syzygies(spec, elems, budget);
}

}  // namespace ck
