#include "ck/polynomial.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "ck/error.hpp"

namespace ck {

PolyRing::PolyRing(std::vector<std::string> variables, Field field, MonomialOrder order)
    : vars_(std::move(variables)), field_(std::move(field)), order_(std::move(order)) {
  std::set<std::string> seen(vars_.begin(), vars_.end());
  if (seen.size() != vars_.size()) throw std::invalid_argument("variable names must be distinct");
  if (order_.nvars() != vars_.size()) throw std::invalid_argument("monomial order does not match the variable count");
}

std::optional<std::size_t> PolyRing::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return i;
  return std::nullopt;
}

RingPtr make_ring(std::vector<std::string> variables, Field field, MonomialOrder order) {
  return std::make_shared<const PolyRing>(std::move(variables), std::move(field), std::move(order));
}

RingPtr make_ring(std::vector<std::string> variables, Field field) {
  const auto n = variables.size();
  return make_ring(std::move(variables), std::move(field), MonomialOrder::grevlex(n));
}

bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || (a && b && *a == *b); }

Polynomial Polynomial::constant(RingPtr ring, const Scalar& c) {
  Polynomial p(ring);
  if (!ring->field().is_zero(c)) p.terms_.push_back({Monomial(ring->nvars()), c});
  return p;
}

Polynomial Polynomial::constant(RingPtr ring, long long c) {
  const auto s = ring->field().from_int(c);
  return constant(std::move(ring), s);
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t index) {
  const auto one = ring->field().one();
  Monomial m = Monomial::variable(ring->nvars(), index);
  return term(std::move(ring), std::move(m), one);
}

Polynomial Polynomial::variable(RingPtr ring, std::string_view name) {
  const auto idx = ring->index_of(name);
  if (!idx) throw std::invalid_argument("unknown variable " + std::string(name));
  return variable(std::move(ring), *idx);
}

Polynomial Polynomial::term(RingPtr ring, Monomial mono, const Scalar& c) {
  Polynomial p(ring);
  if (!ring->field().is_zero(c)) p.terms_.push_back({std::move(mono), c});
  return p;
}

Polynomial Polynomial::from_terms(RingPtr ring, std::vector<Term> terms) {
  const auto& order = ring->order();
  const auto& field = ring->field();
  std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) { return order.less(b.mono, a.mono); });
  Polynomial p(std::move(ring));
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff = field.add(p.terms_.back().coeff, t.coeff);
    } else {
      if (!p.terms_.empty() && field.is_zero(p.terms_.back().coeff)) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && field.is_zero(p.terms_.back().coeff)) p.terms_.pop_back();
  return p;
}

std::uint32_t Polynomial::total_degree() const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree());
  return d;
}

bool Polynomial::is_homogeneous() const {
  for (const auto& t : terms_)
    if (t.mono.degree() != terms_.front().mono.degree()) return false;
  return true;
}

bool Polynomial::involves(std::size_t var) const {
  for (const auto& t : terms_)
    if (t.mono[var]) return true;
  return false;
}

void Polynomial::check_ring(const Polynomial& g) const {
  if (!same_ring(ring_, g.ring_)) throw RingMismatch();
}

Polynomial Polynomial::combine(const Polynomial& g, bool subtract) const {
  check_ring(g);
  const auto& order = ring_->order();
  const auto& field = ring_->field();
  Polynomial r(ring_);
  r.terms_.reserve(terms_.size() + g.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < g.terms_.size()) {
    if (j == g.terms_.size()) {
      r.terms_.push_back(terms_[i++]);
      continue;
    }
    if (i == terms_.size()) {
      r.terms_.push_back({g.terms_[j].mono, subtract ? field.neg(g.terms_[j].coeff) : g.terms_[j].coeff});
      ++j;
      continue;
    }
    const auto cmp = order.compare(terms_[i].mono, g.terms_[j].mono);
    if (cmp > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (cmp < 0) {
      r.terms_.push_back({g.terms_[j].mono, subtract ? field.neg(g.terms_[j].coeff) : g.terms_[j].coeff});
      ++j;
    } else {
      auto c = subtract ? field.sub(terms_[i].coeff, g.terms_[j].coeff) : field.add(terms_[i].coeff, g.terms_[j].coeff);
      if (!field.is_zero(c)) r.terms_.push_back({terms_[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  return r;
}

Polynomial Polynomial::operator+(const Polynomial& g) const { return combine(g, false); }
Polynomial Polynomial::operator-(const Polynomial& g) const { return combine(g, true); }

Polynomial Polynomial::operator-() const {
  Polynomial r(ring_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.mono, field().neg(t.coeff)});
  return r;
}

Polynomial Polynomial::mul_term(const Monomial& m, const Scalar& c) const {
  Polynomial r(ring_);
  if (field().is_zero(c)) return r;
  r.terms_.reserve(terms_.size());
  const bool unit = field().is_one(c);
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, unit ? t.coeff : field().mul(t.coeff, c)});
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& g) const {
  check_ring(g);
  const Polynomial& small = terms_.size() <= g.terms_.size() ? *this : g;
  const Polynomial& large = terms_.size() <= g.terms_.size() ? g : *this;
  Polynomial acc(ring_);
  for (const auto& t : small.terms_) acc = acc + large.mul_term(t.mono, t.coeff);
  return acc;
}

Polynomial Polynomial::scalar_mul(const Scalar& c) const { return mul_term(Monomial(ring_->nvars()), c); }

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(ring_, 1);
  Polynomial base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Polynomial Polynomial::monic() const {
  if (is_zero() || field().is_one(leading_coeff())) return *this;
  return scalar_mul(field().inv(leading_coeff()));
}

Scalar Polynomial::evaluate(std::span<const Scalar> point) const {
  if (point.size() != ring_->nvars()) throw std::invalid_argument("evaluation point has the wrong dimension");
  const auto& f = field();
  Scalar acc = f.zero();
  for (const auto& t : terms_) {
    Scalar v = t.coeff;
    for (std::size_t i = 0; i < point.size(); ++i)
      for (std::uint32_t k = 0; k < t.mono[i]; ++k) v = f.mul(v, point[i]);
    acc = f.add(acc, v);
  }
  return acc;
}

Polynomial Polynomial::map_to(const RingPtr& target, std::span<const std::optional<std::size_t>> var_map) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    std::vector<std::uint32_t> e(target->nvars(), 0);
    for (std::size_t i = 0; i < t.mono.size(); ++i) {
      if (!t.mono[i]) continue;
      if (!var_map[i]) throw std::invalid_argument("variable " + ring_->variables()[i] + " has no image");
      e[*var_map[i]] += t.mono[i];
    }
    out.push_back({Monomial(std::move(e)), target->field().embed(t.coeff, field())});
  }
  return from_terms(target, std::move(out));
}

Polynomial Polynomial::rename_into(const RingPtr& target) const {
  if (same_ring(ring_, target)) {
    Polynomial copy = *this;
    copy.ring_ = target;
    return copy;
  }
  std::vector<std::optional<std::size_t>> map;
  for (const auto& v : ring_->variables()) map.push_back(target->index_of(v));
  return map_to(target, map);
}

bool Polynomial::operator==(const Polynomial& g) const {
  if (!same_ring(ring_, g.ring_) || terms_.size() != g.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (!(terms_[i].mono == g.terms_[i].mono) || terms_[i].coeff != g.terms_[i].coeff) return false;
  return true;
}

std::string format(const Monomial& m, const PolyRing& ring) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!m[i]) continue;
    if (!out.empty()) out += '*';
    out += ring.variables()[i];
    if (m[i] > 1) out += '^' + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

std::string format(const Polynomial& f) {
  if (f.is_zero()) return "0";
  const auto& field = f.field();
  std::string out;
  bool first = true;
  for (const auto& t : f.terms()) {
    const bool negative = field.is_negative(t.coeff);
    const Scalar magnitude = negative ? field.neg(t.coeff) : t.coeff;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (t.mono.is_one()) {
      out += field.format(magnitude);
    } else if (field.is_one(magnitude)) {
      out += format(t.mono, *f.ring());
    } else {
      out += field.format(magnitude) + "*" + format(t.mono, *f.ring());
    }
  }
  return out;
}

std::string format_list(std::span<const Polynomial> fs) {
  std::string out = "(";
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (i) out += ", ";
    out += format(fs[i]);
  }
  return out + ")";
}

RingSpec RingSpec::with_base(std::span<const Polynomial> extra) const {
  RingSpec r = *this;
  for (const auto& f : extra) {
    if (!same_ring(f.ring(), ring)) throw RingMismatch();
    if (!f.is_zero()) r.base.push_back(f);
  }
  return r;
}

RingSpec RingSpec::rename_into(const RingPtr& target) const {
  RingSpec r{target, {}};
  for (const auto& f : base) r.base.push_back(f.rename_into(target));
  return r;
}

std::string RingSpec::describe() const {
  std::string out = ring->field().name() + "[";
  for (std::size_t i = 0; i < ring->nvars(); ++i) {
    if (i) out += ",";
    out += ring->variables()[i];
  }
  out += "]";
  if (!base.empty()) out += " / " + format_list(base);
  return out + " order " + ring->order().name();
}

DivisionResult reduce(const Polynomial& f, std::span<const Polynomial> divisors) {
  const auto& ring = f.ring();
  const auto& field = ring->field();
  DivisionResult out{Polynomial(ring), {}};
  std::vector<std::vector<Term>> quotient_terms(divisors.size());
  for (const auto& g : divisors) {
    if (!same_ring(g.ring(), ring)) throw RingMismatch();
    if (g.is_zero()) throw std::invalid_argument("division by the zero polynomial");
  }
  std::vector<Term> remainder;
  Polynomial p = f;
  while (!p.is_zero()) {
    const auto& lm = p.leading_monomial();
    bool divided = false;
    for (std::size_t i = 0; i < divisors.size(); ++i) {
      const auto& g = divisors[i];
      if (!g.leading_monomial().divides(lm)) continue;
      const Monomial q = g.leading_monomial().quotient_of(lm);
      const Scalar c = field.div(p.leading_coeff(), g.leading_coeff());
      quotient_terms[i].push_back({q, c});
      p = p - g.mul_term(q, c);
      divided = true;
      break;
    }
    if (!divided) {
      remainder.push_back(p.terms().front());
      p = p - Polynomial::term(ring, lm, p.leading_coeff());
    }
  }
  out.remainder = Polynomial::from_terms(ring, std::move(remainder));
  for (auto& qt : quotient_terms) out.quotients.push_back(Polynomial::from_terms(ring, std::move(qt)));
  return out;
}

std::optional<Polynomial> divide_exact(const Polynomial& f, const Polynomial& g) {
  const Polynomial divisors[] = {g};
  auto r = reduce(f, divisors);
  if (!r.remainder.is_zero()) return std::nullopt;
  return std::move(r.quotients[0]);
}

RingExtension::RingExtension(RingPtr base, const std::vector<std::string>& new_vars)
    : base_(std::move(base)), added_(new_vars.size()) {
  std::vector<std::string> vars = new_vars;
  for (const auto& v : new_vars)
    if (base_->index_of(v)) throw std::invalid_argument("variable name clash: " + v);
  vars.insert(vars.end(), base_->variables().begin(), base_->variables().end());
  extended_ = make_ring(std::move(vars), base_->field(), base_->order().prepend_block(added_));
}

Polynomial RingExtension::embed(const Polynomial& f) const {
  if (!same_ring(f.ring(), base_)) throw RingMismatch();
  std::vector<std::optional<std::size_t>> map;
  for (std::size_t i = 0; i < base_->nvars(); ++i) map.push_back(i + added_);
  return f.map_to(extended_, map);
}

std::optional<Polynomial> RingExtension::contract(const Polynomial& f) const {
  if (!same_ring(f.ring(), extended_)) throw RingMismatch();
  for (std::size_t i = 0; i < added_; ++i)
    if (f.involves(i)) return std::nullopt;
  std::vector<std::optional<std::size_t>> map(extended_->nvars());
  for (std::size_t i = 0; i < base_->nvars(); ++i) map[i + added_] = i;
  return f.map_to(base_, map);
}

}  // namespace ck
