#include "engine.hpp"

#include <algorithm>

#include "ck/error.hpp"

namespace ck::detail {

std::strong_ordering Engine::compare(std::uint32_t ca, const Monomial& ma, std::uint32_t cb, const Monomial& mb) const {
  if (kind_ == ModuleOrderKind::PositionOverTerm) {
    if (ca != cb) return cb <=> ca;
    return ring_->order().compare(ma, mb);
  }
  const auto c = ring_->order().compare(ma, mb);
  if (c != 0) return c;
  return cb <=> ca;
}

MVec Engine::sort_terms(MVec terms) const {
  std::sort(terms.begin(), terms.end(), [&](const MTerm& a, const MTerm& b) { return compare(a, b) > 0; });
  MVec out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().comp == t.comp && out.back().mono == t.mono) {
      out.back().coeff = field().add(out.back().coeff, t.coeff);
      if (field().is_zero(out.back().coeff)) out.pop_back();
    } else if (!field().is_zero(t.coeff)) {
      out.push_back(std::move(t));
    }
  }
  return out;
}

MVec Engine::add(const MVec& a, const MVec& b) const {
  MVec r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const auto c = compare(a[i], b[j]);
    if (c > 0) {
      r.push_back(a[i++]);
    } else if (c < 0) {
      r.push_back(b[j++]);
    } else {
      auto s = field().add(a[i].coeff, b[j].coeff);
      if (!field().is_zero(s)) r.push_back({a[i].comp, a[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  r.insert(r.end(), a.begin() + static_cast<std::ptrdiff_t>(i), a.end());
  r.insert(r.end(), b.begin() + static_cast<std::ptrdiff_t>(j), b.end());
  return r;
}

MVec Engine::mul_term(const MVec& a, const Monomial& m, const Scalar& c) const {
  MVec r;
  if (field().is_zero(c)) return r;
  r.reserve(a.size());
  for (const auto& t : a) r.push_back({t.comp, t.mono * m, field().mul(t.coeff, c)});
  return r;
}

MVec Engine::sub_scaled(const MVec& a, const Monomial& m, const Scalar& c, const MVec& b) const {
  return add(a, mul_term(b, m, field().neg(c)));
}

MVec Engine::monic(MVec a) const {
  if (a.empty() || field().is_one(a.front().coeff)) return a;
  const Scalar inv = field().inv(a.front().coeff);
  for (auto& t : a) t.coeff = field().mul(t.coeff, inv);
  return a;
}

MVec Engine::reduce(MVec f, const std::vector<const MVec*>& divisors, bool full) const {
  MVec remainder;
  while (!f.empty()) {
    const MTerm& lead = f.front();
    const MVec* hit = nullptr;
    for (const MVec* d : divisors) {
      const MTerm& dl = d->front();
      if (dl.comp == lead.comp && dl.mono.divides(lead.mono)) {
        hit = d;
        break;
      }
    }
    if (hit) {
      const Monomial q = hit->front().mono.quotient_of(lead.mono);
      const Scalar c = field().div(lead.coeff, hit->front().coeff);
      f = sub_scaled(f, q, c, *hit);
    } else if (!full) {
      break;
    } else {
      remainder.push_back(std::move(f.front()));
      f.erase(f.begin());
    }
  }
  if (!full) return f;
  return remainder;
}

namespace {

struct Pair {
  std::size_t i;
  std::size_t j;
  std::uint32_t comp;
  Monomial lcm;
};

}  // namespace

std::vector<MVec> Engine::buchberger(std::vector<MVec> gens, const Budget& budget, std::size_t* steps_out) const {
  std::vector<MVec> basis;
  std::vector<bool> active;
  std::vector<Pair> pairs;
  bool rank_one = true;
  for (const auto& g : gens)
    for (const auto& t : g)
      if (t.comp != 0) rank_one = false;

  const auto lead = [&](std::size_t i) -> const MTerm& { return basis[i].front(); };
  const auto divisors = [&] {
    std::vector<const MVec*> out;
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (active[i]) out.push_back(&basis[i]);
    return out;
  };

  // Gebauer–Möller installation of a new basis element h.
  const auto update = [&](std::size_t h) {
    const MTerm& lh = lead(h);
    struct Cand {
      std::size_t g;
      Monomial lcm;
      bool disjoint;
    };
    std::vector<Cand> cands;
    for (std::size_t g = 0; g < h; ++g) {
      if (!active[g] || lead(g).comp != lh.comp) continue;
      cands.push_back({g, lh.mono.lcm(lead(g).mono), rank_one && lh.mono.coprime(lead(g).mono)});
    }
    std::vector<Cand> kept;
    for (std::size_t a = 0; a < cands.size(); ++a) {
      bool keep = cands[a].disjoint;
      if (!keep) {
        keep = true;
        for (std::size_t b = a + 1; b < cands.size() && keep; ++b)
          if (cands[b].lcm.divides(cands[a].lcm)) keep = false;
        for (std::size_t b = 0; b < kept.size() && keep; ++b)
          if (kept[b].lcm.divides(cands[a].lcm)) keep = false;
      }
      if (keep) kept.push_back(cands[a]);
    }
    std::vector<Pair> next;
    for (auto& p : pairs) {
      bool keep = true;
      if (p.comp == lh.comp && lh.mono.divides(p.lcm)) {
        const Monomial li = lead(p.i).mono.lcm(lh.mono);
        const Monomial lj = lead(p.j).mono.lcm(lh.mono);
        keep = li == p.lcm || lj == p.lcm;
      }
      if (keep) next.push_back(std::move(p));
    }
    for (auto& c : kept)
      if (!c.disjoint) next.push_back({c.g, h, lh.comp, std::move(c.lcm)});
    pairs = std::move(next);
    for (std::size_t g = 0; g < h; ++g)
      if (active[g] && lead(g).comp == lh.comp && lh.mono.divides(lead(g).mono)) active[g] = false;
  };

  const auto install = [&](MVec h) -> bool {
    basis.push_back(monic(std::move(h)));
    active.push_back(true);
    update(basis.size() - 1);
    const MTerm& l = basis.back().front();
    return rank_one && l.mono.is_one();
  };

  bool unit = false;
  for (auto& g : gens) {
    MVec h = reduce(sort_terms(std::move(g)), divisors(), false);
    if (!h.empty() && install(std::move(h))) {
      unit = true;
      break;
    }
  }

  std::size_t steps = 0;
  while (!unit && !pairs.empty()) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < pairs.size(); ++k)
      if (compare(pairs[k].comp, pairs[k].lcm, pairs[best].comp, pairs[best].lcm) < 0) best = k;
    const Pair p = pairs[best];
    pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(best));
    if (steps >= budget.gb_steps) {
      std::size_t live = 0;
      for (bool a : active) live += a;
      throw BudgetExceeded(steps, live, pairs.size() + 1);
    }
    ++steps;
    const MVec s = sub_scaled(mul_term(basis[p.i], lead(p.i).mono.quotient_of(p.lcm), field().one()),
                              lead(p.j).mono.quotient_of(p.lcm), field().one(), basis[p.j]);
    MVec h = reduce(s, divisors(), false);
    if (!h.empty() && install(std::move(h))) unit = true;
  }
  if (steps_out) *steps_out = steps;

  if (unit) {
    MVec one{{0, Monomial(ring_->nvars()), field().one()}};
    return {one};
  }

  std::vector<MVec> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (active[i]) minimal.push_back(std::move(basis[i]));
  std::vector<MVec> reduced;
  reduced.reserve(minimal.size());
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<const MVec*> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(&minimal[j]);
    MVec tail(minimal[i].begin() + 1, minimal[i].end());
    MVec r{minimal[i].front()};
    MVec rt = reduce(std::move(tail), others, true);
    r.insert(r.end(), std::make_move_iterator(rt.begin()), std::make_move_iterator(rt.end()));
    reduced.push_back(monic(std::move(r)));
  }
  std::sort(reduced.begin(), reduced.end(), [&](const MVec& a, const MVec& b) { return compare(a.front(), b.front()) > 0; });
  return reduced;
}

MVec Engine::from_poly(const Polynomial& f, std::uint32_t comp) const {
  if (!same_ring(f.ring(), ring_)) throw RingMismatch();
  MVec out;
  out.reserve(f.size());
  for (const auto& t : f.terms()) out.push_back({comp, t.mono, t.coeff});
  return out;
}

MVec Engine::from_element(const ModuleElement& v, std::uint32_t offset) const {
  MVec out;
  for (std::size_t i = 0; i < v.entries.size(); ++i) {
    if (!same_ring(v.entries[i].ring(), ring_)) throw RingMismatch();
    for (const auto& t : v.entries[i].terms()) out.push_back({static_cast<std::uint32_t>(offset + i), t.mono, t.coeff});
  }
  return sort_terms(std::move(out));
}

ModuleElement Engine::to_element(const MVec& v, std::uint32_t offset, std::size_t rank) const {
  std::vector<std::vector<Term>> parts(rank);
  for (const auto& t : v)
    if (t.comp >= offset && t.comp < offset + rank) parts[t.comp - offset].push_back({t.mono, t.coeff});
  ModuleElement out;
  for (auto& p : parts) out.entries.push_back(Polynomial::from_terms(ring_, std::move(p)));
  return out;
}

Polynomial Engine::to_poly(const MVec& v) const {
  std::vector<Term> terms;
  for (const auto& t : v) terms.push_back({t.mono, t.coeff});
  return Polynomial::from_terms(ring_, std::move(terms));
}

}  // namespace ck::detail
