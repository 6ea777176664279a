#include "ck/ideal_ops.hpp"

#include <stdexcept>

#include "ck/error.hpp"

namespace ck {

namespace {

std::string fresh_name(const PolyRing& ring, const std::string& stem) {
  std::string name = stem;
  for (int k = 1; ring.index_of(name); ++k) name = stem + std::to_string(k);
  return name;
}

std::vector<Polynomial> with_base(const IdealHandle& I) {
  std::vector<Polynomial> out;
  for (const auto& g : I.generators())
    if (!g.is_zero()) out.push_back(g);
  for (const auto& j : I.spec().base) out.push_back(j);
  return out;
}

void check_same(const IdealHandle& I, const IdealHandle& J) {
  if (!same_ring(I.ring(), J.ring())) throw RingMismatch();
}

// Elements of a basis in k[t..., x] that are free of the added variables.
std::vector<Polynomial> contract_basis(const RingExtension& ext, const std::vector<Polynomial>& basis) {
  std::vector<Polynomial> out;
  for (const auto& g : basis)
    if (auto c = ext.contract(g)) out.push_back(std::move(*c));
  return out;
}

}  // namespace

IdealHandle intersect(const IdealHandle& I, const IdealHandle& J, const Budget& budget) {
  check_same(I, J);
  RingExtension ext(I.ring(), {fresh_name(*I.ring(), "_t")});
  const auto t = Polynomial::variable(ext.extended(), 0);
  const auto one_minus_t = Polynomial::constant(ext.extended(), 1) - t;
  std::vector<Polynomial> gens;
  for (const auto& g : with_base(I)) gens.push_back(t * ext.embed(g));
  for (const auto& g : with_base(J)) gens.push_back(one_minus_t * ext.embed(g));
  return IdealHandle(I.spec(), contract_basis(ext, groebner_basis(gens, budget)));
}

IdealHandle quotient(const IdealHandle& I, const Polynomial& f, const Budget& budget) {
  if (!same_ring(f.ring(), I.ring())) throw RingMismatch();
  if (f.is_zero() || ideal_member(f, I, budget)) return IdealHandle::unit(I.spec());
  const RingSpec free_ring{I.ring(), {}};
  const IdealHandle lifted(free_ring, with_base(I));
  const IdealHandle principal(free_ring, {f});
  const IdealHandle meet = intersect(lifted, principal, budget);
  std::vector<Polynomial> gens;
  for (const auto& g : meet.generators()) {
    auto q = divide_exact(g, f);
    if (!q) throw std::logic_error("intersection with (f) produced a non-multiple of f");
    gens.push_back(std::move(*q));
  }
  return IdealHandle(I.spec(), std::move(gens));
}

IdealHandle quotient(const IdealHandle& I, const IdealHandle& J, const Budget& budget) {
  check_same(I, J);
  IdealHandle acc = IdealHandle::unit(I.spec());
  bool first = true;
  for (const auto& g : J.generators()) {
    if (g.is_zero()) continue;
    IdealHandle q = quotient(I, g, budget);
    acc = first ? q : intersect(acc, q, budget);
    first = false;
  }
  return acc;
}

IdealHandle saturate(const IdealHandle& I, const Polynomial& f, const Budget& budget) {
  if (!same_ring(f.ring(), I.ring())) throw RingMismatch();
  if (f.is_zero()) return IdealHandle::unit(I.spec());
  RingExtension ext(I.ring(), {fresh_name(*I.ring(), "_t")});
  const auto t = Polynomial::variable(ext.extended(), 0);
  std::vector<Polynomial> gens;
  for (const auto& g : with_base(I)) gens.push_back(ext.embed(g));
  gens.push_back(Polynomial::constant(ext.extended(), 1) - t * ext.embed(f));
  return IdealHandle(I.spec(), contract_basis(ext, groebner_basis(gens, budget)));
}

IdealHandle eliminate(const IdealHandle& I, std::span<const std::size_t> vars, const Budget& budget) {
  const auto& ring = *I.ring();
  const std::vector<std::size_t> elim(vars.begin(), vars.end());
  const RingPtr blocked = make_ring(ring.variables(), ring.field(), MonomialOrder::eliminating(ring.nvars(), elim));
  std::vector<Polynomial> gens;
  for (const auto& g : with_base(I)) gens.push_back(g.rename_into(blocked));
  std::vector<Polynomial> kept;
  for (const auto& g : groebner_basis(gens, budget)) {
    bool free = true;
    for (auto v : elim) free = free && !g.involves(v);
    if (free) kept.push_back(g.rename_into(I.ring()));
  }
  return IdealHandle(I.spec(), std::move(kept));
}

IdealHandle eliminate(const IdealHandle& I, const std::vector<std::string>& names, const Budget& budget) {
  std::vector<std::size_t> vars;
  for (const auto& n : names) {
    auto idx = I.ring()->index_of(n);
    if (!idx) throw std::invalid_argument("unknown variable " + n);
    vars.push_back(*idx);
  }
  return eliminate(I, vars, budget);
}

namespace {

std::vector<Polynomial> rabinowitsch_basis(const Polynomial& f, const IdealHandle& I, const Budget& budget) {
  RingExtension ext(I.ring(), {fresh_name(*I.ring(), "_t")});
  std::vector<Polynomial> gens;
  for (const auto& g : with_base(I)) gens.push_back(ext.embed(g));
  gens.push_back(Polynomial::constant(ext.extended(), 1) - Polynomial::variable(ext.extended(), 0) * ext.embed(f));
  return groebner_basis(gens, budget);
}

}  // namespace

RadicalWitness radical_member(const Polynomial& f, const IdealHandle& I, const Budget& budget, unsigned max_exponent) {
  if (!same_ring(f.ring(), I.ring())) throw RingMismatch();
  RadicalWitness w;
  w.element = f;
  const auto aux = rabinowitsch_basis(f, I, budget);
  w.auxiliary_hash = basis_hash(aux);
  w.member = aux.size() == 1 && aux.front().is_unit();
  if (!w.member) return w;
  const auto& basis = I.groebner(budget);
  Polynomial power = normal_form(f, basis);
  for (unsigned e = 1; e <= max_exponent; ++e) {
    if (power.is_zero()) {
      w.exponent = e;
      break;
    }
    power = normal_form(power * f, basis);
  }
  return w;
}

bool replay(const RadicalWitness& witness, const IdealHandle& I, const Budget& budget) {
  const auto aux = rabinowitsch_basis(witness.element, I, budget);
  if (basis_hash(aux) != witness.auxiliary_hash) return false;
  const bool member = aux.size() == 1 && aux.front().is_unit();
  if (member != witness.member) return false;
  if (witness.exponent) {
    if (!witness.member || !ideal_member(witness.element.pow(*witness.exponent), I, budget)) return false;
    if (*witness.exponent > 1 && ideal_member(witness.element.pow(*witness.exponent - 1), I, budget)) return false;
  }
  return true;
}

RadicalEquality radical_equal(const IdealHandle& I, const IdealHandle& J, const Budget& budget) {
  check_same(I, J);
  RadicalEqualityCertificate cert{I, J, {}, {}};
  const auto side = [&](const IdealHandle& from, const IdealHandle& into, std::vector<RadicalWitness>& out,
                        bool from_left) -> std::optional<RadicalRefutation> {
    for (const auto& g : from.generators()) {
      auto w = radical_member(g, into, budget);
      if (!w.member) return RadicalRefutation{g, from_left, std::move(w)};
      out.push_back(std::move(w));
    }
    return std::nullopt;
  };
  if (auto r = side(I, J, cert.left_in_right, true)) return *r;
  if (auto r = side(J, I, cert.right_in_left, false)) return *r;
  return cert;
}

bool replay(const RadicalEqualityCertificate& cert, const Budget& budget) {
  if (cert.left_in_right.size() != cert.left.generators().size()) return false;
  if (cert.right_in_left.size() != cert.right.generators().size()) return false;
  for (std::size_t i = 0; i < cert.left_in_right.size(); ++i) {
    const auto& w = cert.left_in_right[i];
    if (!(w.element == cert.left.generators()[i]) || !w.member || !replay(w, cert.right, budget)) return false;
  }
  for (std::size_t i = 0; i < cert.right_in_left.size(); ++i) {
    const auto& w = cert.right_in_left[i];
    if (!(w.element == cert.right.generators()[i]) || !w.member || !replay(w, cert.left, budget)) return false;
  }
  return true;
}

std::vector<std::size_t> max_independent_set(std::span<const Monomial> leading, std::size_t nvars) {
  if (nvars > 24) throw std::invalid_argument("too many variables for independent-set enumeration");
  std::vector<std::uint32_t> supports;
  for (const auto& m : leading) {
    std::uint32_t s = 0;
    for (std::size_t i = 0; i < nvars; ++i)
      if (m[i]) s |= 1u << i;
    supports.push_back(s);
  }
  std::optional<std::uint32_t> best;
  int best_size = -1;
  // Ties go to the subset with the smallest bitmask.
  for (std::uint32_t mask = 0; mask < (1u << nvars); ++mask) {
    const int size = __builtin_popcount(mask);
    if (size <= best_size) continue;
    bool independent = true;
    for (auto s : supports)
      if ((s & ~mask) == 0) {
        independent = false;
        break;
      }
    if (independent) {
      best = mask;
      best_size = size;
    }
  }
  std::vector<std::size_t> out;
  if (!best) return out;
  for (std::size_t i = 0; i < nvars; ++i)
    if (*best & (1u << i)) out.push_back(i);
  return out;
}

namespace {

int dimension_of(const std::vector<Polynomial>& basis, std::size_t nvars, std::vector<Monomial>* leading,
                 std::vector<std::size_t>* independent) {
  if (basis.size() == 1 && basis.front().is_unit()) return -1;
  std::vector<Monomial> lms;
  for (const auto& g : basis) lms.push_back(g.leading_monomial());
  auto set = max_independent_set(lms, nvars);
  const int dim = static_cast<int>(set.size());
  if (leading) *leading = std::move(lms);
  if (independent) *independent = std::move(set);
  return dim;
}

}  // namespace

DimensionReport dimension_height(const IdealHandle& I, const Budget& budget) {
  DimensionReport r;
  const auto n = I.ring()->nvars();
  r.dimension = dimension_of(I.groebner(budget), n, &r.leading_monomials, &r.independent_set);
  r.ambient_dimension = dimension_of(IdealHandle::zero(I.spec()).groebner(budget), n, nullptr, nullptr);
  r.unit = r.dimension < 0;
  if (r.unit) {
    r.leading_monomials = {Monomial(n)};
    r.independent_set.clear();
  }
  r.height = r.ambient_dimension - r.dimension;
  return r;
}

}  // namespace ck
