#include "ck/monomial.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ck {

Monomial::Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {
  degree_ = std::accumulate(exps_.begin(), exps_.end(), std::uint32_t{0});
}

Monomial Monomial::variable(std::size_t nvars, std::size_t index, std::uint32_t power) {
  Monomial m(nvars);
  m.exps_.at(index) = power;
  m.degree_ = power;
  return m;
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

Monomial Monomial::quotient_of(const Monomial& other) const {
  Monomial q(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i) q.exps_[i] = other.exps_[i] - exps_[i];
  q.degree_ = other.degree_ - degree_;
  return q;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = exps_[i] + other.exps_[i];
  r.degree_ = degree_ + other.degree_;
  return r;
}

Monomial Monomial::lcm(const Monomial& other) const {
  Monomial r(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    r.exps_[i] = std::max(exps_[i], other.exps_[i]);
    r.degree_ += r.exps_[i];
  }
  return r;
}

bool Monomial::coprime(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] && other.exps_[i]) return false;
  return true;
}

std::size_t Monomial::hash() const {
  std::size_t h = 1469598103934665603ULL;
  for (auto e : exps_) h = (h ^ e) * 1099511628211ULL;
  return h;
}

MonomialOrder::MonomialOrder(std::vector<Block> blocks, std::vector<std::size_t> permutation)
    : blocks_(std::move(blocks)), perm_(std::move(permutation)) {
  std::size_t total = 0;
  for (const auto& b : blocks_) total += b.size;
  if (total != perm_.size()) throw std::invalid_argument("monomial order blocks do not cover the variables");
  std::vector<std::size_t> sorted = perm_;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != i) throw std::invalid_argument("monomial order permutation is not a permutation");
}

namespace {
std::vector<std::size_t> identity(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  return p;
}
}  // namespace

MonomialOrder MonomialOrder::lex(std::size_t nvars) { return {{{Kind::Lex, nvars}}, identity(nvars)}; }

MonomialOrder MonomialOrder::grevlex(std::size_t nvars) { return {{{Kind::Grevlex, nvars}}, identity(nvars)}; }

MonomialOrder MonomialOrder::elimination(std::size_t nvars, std::size_t k) {
  if (k == 0 || k >= nvars) return grevlex(nvars);
  return {{{Kind::Grevlex, k}, {Kind::Grevlex, nvars - k}}, identity(nvars)};
}

MonomialOrder MonomialOrder::eliminating(std::size_t nvars, const std::vector<std::size_t>& vars) {
  std::vector<std::size_t> perm;
  std::vector<bool> taken(nvars, false);
  for (auto v : vars) {
    if (v >= nvars || taken[v]) throw std::invalid_argument("bad elimination variable");
    taken[v] = true;
    perm.push_back(v);
  }
  for (std::size_t i = 0; i < nvars; ++i)
    if (!taken[i]) perm.push_back(i);
  std::vector<Block> blocks;
  if (!vars.empty()) blocks.push_back({Kind::Grevlex, vars.size()});
  if (nvars > vars.size()) blocks.push_back({Kind::Grevlex, nvars - vars.size()});
  return {std::move(blocks), std::move(perm)};
}

std::strong_ordering MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  std::size_t start = 0;
  for (const auto& block : blocks_) {
    const std::size_t end = start + block.size;
    if (block.kind == Kind::Lex) {
      for (std::size_t r = start; r < end; ++r) {
        const auto v = perm_[r];
        if (a[v] != b[v]) return a[v] <=> b[v];
      }
    } else {
      std::uint64_t da = 0, db = 0;
      for (std::size_t r = start; r < end; ++r) {
        da += a[perm_[r]];
        db += b[perm_[r]];
      }
      if (da != db) return da <=> db;
      for (std::size_t r = end; r-- > start;) {
        const auto v = perm_[r];
        if (a[v] != b[v]) return b[v] <=> a[v];
      }
    }
    start = end;
  }
  return std::strong_ordering::equal;
}

MonomialOrder MonomialOrder::prepend_block(std::size_t k) const {
  std::vector<Block> blocks;
  blocks.push_back({Kind::Grevlex, k});
  blocks.insert(blocks.end(), blocks_.begin(), blocks_.end());
  std::vector<std::size_t> perm = identity(k);
  for (auto v : perm_) perm.push_back(v + k);
  return {std::move(blocks), std::move(perm)};
}

std::string MonomialOrder::name() const {
  const bool plain = perm_ == identity(perm_.size());
  if (plain && blocks_.size() == 1) return blocks_[0].kind == Kind::Lex ? "lex" : "grevlex";
  if (plain && blocks_.size() == 2 && blocks_[0].kind == Kind::Grevlex && blocks_[1].kind == Kind::Grevlex)
    return "elim(" + std::to_string(blocks_[0].size) + ")";
  std::string out = "blocks(";
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (i) out += ",";
    out += (blocks_[i].kind == Kind::Lex ? "lex:" : "grevlex:") + std::to_string(blocks_[i].size);
  }
  out += ";";
  for (std::size_t i = 0; i < perm_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(perm_[i]);
  }
  return out + ")";
}

}  // namespace ck
