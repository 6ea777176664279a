#include "ck/field.hpp"

#include <stdexcept>
#include <vector>

namespace ck {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 addmod(u64 a, u64 b, u64 p) {
  u64 s = a + b;  // p < 2^63 so no overflow
  return s >= p ? s - p : s;
}

u64 submod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 p) {
  if (a % p == 0) throw std::domain_error("division by zero in finite field");
  return powmod(a, p - 2, p);
}

// Dense polynomials over F_p, low degree first, used only to find moduli.
using Dense = std::vector<u64>;

void trim(Dense& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Dense poly_mod(Dense a, const Dense& m, u64 p) {
  trim(a);
  const u64 lead_inv = invmod(m.back(), p);
  while (a.size() >= m.size()) {
    const u64 c = mulmod(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) a[shift + i] = submod(a[shift + i], mulmod(c, m[i], p), p);
    trim(a);
  }
  return a;
}

Dense poly_mulmod(const Dense& a, const Dense& b, const Dense& m, u64 p) {
  if (a.empty() || b.empty()) return {};
  Dense r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = addmod(r[i + j], mulmod(a[i], b[j], p), p);
  return poly_mod(std::move(r), m, p);
}

Dense poly_gcd(Dense a, Dense b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Dense r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Degree <= 3 polynomials are irreducible iff they have no root, i.e.
// gcd(x^p - x, m) = 1.
bool has_no_root(const Dense& m, u64 p) {
  Dense base{0, 1};
  Dense acc{1};
  u64 e = p;
  while (e) {
    if (e & 1) acc = poly_mulmod(acc, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1;
  }
  if (acc.size() < 2) acc.resize(2, 0);
  acc[1] = submod(acc[1], 1, p);
  trim(acc);
  if (acc.empty()) return false;
  return poly_gcd(m, acc, p).size() == 1;
}

std::array<u64, 4> find_modulus(u64 p, int k) {
  std::array<u64, 4> out{};
  if (k == 1) {
    out[1] = 1;
    return out;
  }
  if (k == 2) {
    for (u64 a1 = 0;; ++a1)
      for (u64 a0 = 1; a0 < p; ++a0)
        if (has_no_root({a0, a1, 1}, p)) return {a0, a1, 1, 0};
  }
  for (u64 a2 = 0;; ++a2)
    for (u64 a1 = 0; a1 < p; ++a1)
      for (u64 a0 = 1; a0 < p; ++a0)
        if (has_no_root({a0, a1, a2, 1}, p)) return {a0, a1, a2, 1};
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Field Field::rationals() { return Field{}; }

Field Field::prime(std::uint64_t p) { return extension(p, 1); }

Field Field::extension(std::uint64_t p, int degree) {
  if (p >= (1ULL << 63) || !is_prime_u64(p)) throw std::invalid_argument("characteristic must be a prime below 2^63");
  if (degree < 1 || degree > 3) throw std::invalid_argument("extension degree must be 1, 2 or 3");
  Field f;
  f.kind_ = Kind::Finite;
  f.p_ = p;
  f.degree_ = degree;
  f.modulus_ = find_modulus(p, degree);
  return f;
}

std::uint64_t Field::reduce_signed(long long v) const {
  if (v >= 0) return static_cast<u64>(v) % p_;
  const u64 m = static_cast<u64>(-(v + 1)) % p_;  // avoids overflow at LLONG_MIN
  return submod(p_ - 1, m, p_);
}

Scalar Field::zero() const {
  if (is_rational()) return mpq_class(0);
  return Residue{};
}

Scalar Field::one() const { return from_int(1); }

Scalar Field::from_int(long long v) const {
  if (is_rational()) return mpq_class(static_cast<long>(v));
  Residue r;
  r.c[0] = reduce_signed(v);
  return r;
}

Scalar Field::from_integer(const mpz_class& v) const {
  if (is_rational()) return mpq_class(v);
  Residue r;
  r.c[0] = mpz_fdiv_ui(v.get_mpz_t(), p_);
  return r;
}

Scalar Field::from_rational(const mpq_class& v) const {
  if (is_rational()) return v;
  const u64 num = mpz_fdiv_ui(v.get_num_mpz_t(), p_);
  const u64 den = mpz_fdiv_ui(v.get_den_mpz_t(), p_);
  if (den == 0) throw std::domain_error("denominator vanishes modulo the characteristic");
  Residue r;
  r.c[0] = mulmod(num, invmod(den, p_), p_);
  return r;
}

Scalar Field::from_coordinates(const std::array<std::uint64_t, 3>& c) const {
  if (is_rational()) throw std::logic_error("coordinates only exist over finite fields");
  Residue r;
  for (int i = 0; i < degree_; ++i) r.c[i] = c[i] % p_;
  return r;
}

Scalar Field::add(const Scalar& a, const Scalar& b) const {
  if (is_rational()) return mpq_class(std::get<mpq_class>(a) + std::get<mpq_class>(b));
  const auto& x = std::get<Residue>(a);
  const auto& y = std::get<Residue>(b);
  Residue r;
  for (int i = 0; i < degree_; ++i) r.c[i] = addmod(x.c[i], y.c[i], p_);
  return r;
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const {
  if (is_rational()) return mpq_class(std::get<mpq_class>(a) - std::get<mpq_class>(b));
  const auto& x = std::get<Residue>(a);
  const auto& y = std::get<Residue>(b);
  Residue r;
  for (int i = 0; i < degree_; ++i) r.c[i] = submod(x.c[i], y.c[i], p_);
  return r;
}

Scalar Field::neg(const Scalar& a) const {
  if (is_rational()) return mpq_class(-std::get<mpq_class>(a));
  const auto& x = std::get<Residue>(a);
  Residue r;
  for (int i = 0; i < degree_; ++i) r.c[i] = submod(0, x.c[i], p_);
  return r;
}

Residue Field::mul_residue(const Residue& a, const Residue& b) const {
  if (degree_ == 1) return Residue{{mulmod(a.c[0], b.c[0], p_), 0, 0}};
  std::array<u64, 5> prod{};
  for (int i = 0; i < degree_; ++i)
    for (int j = 0; j < degree_; ++j) prod[i + j] = addmod(prod[i + j], mulmod(a.c[i], b.c[j], p_), p_);
  for (int d = 2 * degree_ - 2; d >= degree_; --d) {
    const u64 c = prod[d];
    if (c == 0) continue;
    prod[d] = 0;
    for (int i = 0; i < degree_; ++i) prod[d - degree_ + i] = submod(prod[d - degree_ + i], mulmod(c, modulus_[i], p_), p_);
  }
  Residue r;
  for (int i = 0; i < degree_; ++i) r.c[i] = prod[i];
  return r;
}

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
  if (is_rational()) return mpq_class(std::get<mpq_class>(a) * std::get<mpq_class>(b));
  return mul_residue(std::get<Residue>(a), std::get<Residue>(b));
}

// Solves (multiplication-by-a) * y = 1 by Gaussian elimination over F_p.
Residue Field::inv_residue(const Residue& a) const {
  if (degree_ == 1) return Residue{{invmod(a.c[0], p_), 0, 0}};
  const int k = degree_;
  std::array<std::array<u64, 4>, 3> m{};
  Residue basis{};
  basis.c[0] = 1;
  for (int j = 0; j < k; ++j) {
    const Residue col = mul_residue(a, basis);
    for (int i = 0; i < k; ++i) m[i][j] = col.c[i];
    Residue shifted{};
    for (int i = 0; i + 1 < 3; ++i) shifted.c[i + 1] = basis.c[i];
    basis = shifted;
  }
  m[0][k] = 1;
  for (int col = 0; col < k; ++col) {
    int pivot = -1;
    for (int r = col; r < k; ++r)
      if (m[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw std::domain_error("division by zero in finite field");
    std::swap(m[pivot], m[col]);
    const u64 inv = invmod(m[col][col], p_);
    for (int c = 0; c <= k; ++c) m[col][c] = mulmod(m[col][c], inv, p_);
    for (int r = 0; r < k; ++r) {
      if (r == col || m[r][col] == 0) continue;
      const u64 f = m[r][col];
      for (int c = 0; c <= k; ++c) m[r][c] = submod(m[r][c], mulmod(f, m[col][c], p_), p_);
    }
  }
  Residue r;
  for (int i = 0; i < k; ++i) r.c[i] = m[i][k];
  return r;
}

Scalar Field::inv(const Scalar& a) const {
  if (is_zero(a)) throw std::domain_error("division by zero");
  if (is_rational()) return mpq_class(1 / std::get<mpq_class>(a));
  return inv_residue(std::get<Residue>(a));
}

bool Field::is_zero(const Scalar& a) const {
  if (is_rational()) return sgn(std::get<mpq_class>(a)) == 0;
  return std::get<Residue>(a) == Residue{};
}

bool Field::is_one(const Scalar& a) const {
  if (is_rational()) return std::get<mpq_class>(a) == 1;
  return std::get<Residue>(a) == Residue{{1, 0, 0}};
}

bool Field::is_negative(const Scalar& a) const {
  return is_rational() && sgn(std::get<mpq_class>(a)) < 0;
}

std::string Field::format(const Scalar& a) const {
  if (is_rational()) return std::get<mpq_class>(a).get_str();
  const auto& r = std::get<Residue>(a);
  if (degree_ == 1) return std::to_string(r.c[0]);
  std::string out = "{";
  for (int i = 0; i < degree_; ++i) {
    if (i) out += ',';
    out += std::to_string(r.c[i]);
  }
  return out + "}";
}

std::string Field::name() const {
  if (is_rational()) return "QQ";
  if (degree_ == 1) return "Fp(" + std::to_string(p_) + ")";
  return "GF(" + std::to_string(p_) + "^" + std::to_string(degree_) + ")";
}

Scalar Field::embed(const Scalar& a, const Field& source) const {
  if (source == *this) return a;
  if (source.is_rational()) return from_rational(std::get<mpq_class>(a));
  if (is_rational() || source.p_ != p_ || source.degree_ != 1)
    throw std::invalid_argument("no embedding from " + source.name() + " into " + name());
  Residue r;
  r.c[0] = std::get<Residue>(a).c[0];
  return r;
}

Scalar Field::random_small(std::mt19937_64& rng, int bound) const {
  const auto draw = [&] { return static_cast<long long>(rng() % static_cast<u64>(2 * bound + 1)) - bound; };
  if (is_rational() || degree_ == 1) return from_int(draw());
  Residue r;
  for (int i = 0; i < degree_; ++i) r.c[i] = reduce_signed(draw());
  return r;
}

}  // namespace ck
