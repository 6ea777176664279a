#include "ck/homology.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <unordered_map>

#include "ck/error.hpp"

namespace ck {

namespace {

std::vector<Polynomial> base_basis(const RingSpec& spec, const Budget& budget) {
  if (spec.base.empty()) return {};
  return IdealHandle(spec, {}).groebner(budget);
}

Polynomial reduce_with(const Polynomial& f, const std::vector<Polynomial>& basis) {
  return basis.empty() ? f : normal_form(f, basis);
}

std::string join(const std::vector<std::string>& parts) {
  std::string out = "[";
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? ", " : "") + parts[i];
  return out + "]";
}

}  // namespace

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(RingPtr ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(rows * cols, Polynomial(ring_)) {}

Matrix Matrix::operator*(const Matrix& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("matrix dimensions do not match");
  if (!same_ring(ring_, other.ring_)) throw RingMismatch();
  Matrix out(ring_, rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const auto& a = at(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < other.cols_; ++j)
        if (!other.at(k, j).is_zero()) out.at(i, j) += a * other.at(k, j);
    }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
  return out;
}

bool Matrix::is_zero() const {
  for (const auto& e : data_)
    if (!e.is_zero()) return false;
  return true;
}

bool Matrix::operator==(const Matrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

ModuleElement Matrix::row(std::size_t i) const {
  ModuleElement v;
  for (std::size_t j = 0; j < cols_; ++j) v.entries.push_back(at(i, j));
  return v;
}

ModuleElement Matrix::column(std::size_t j) const {
  ModuleElement v;
  for (std::size_t i = 0; i < rows_; ++i) v.entries.push_back(at(i, j));
  return v;
}

Matrix Matrix::from_columns(const RingPtr& ring, std::size_t rows, const std::vector<ModuleElement>& columns) {
  Matrix m(ring, rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].rank() != rows) throw std::invalid_argument("column has the wrong length");
    for (std::size_t i = 0; i < rows; ++i) m.at(i, j) = columns[j].entries[i];
  }
  return m;
}

Matrix Matrix::from_rows(const RingPtr& ring, std::size_t cols, const std::vector<ModuleElement>& rows) {
  return from_columns(ring, cols, rows).transpose();
}

Matrix Matrix::reduced(const RingSpec& spec, const Budget& budget) const {
  const auto basis = base_basis(spec, budget);
  Matrix out = *this;
  for (auto& e : out.data_) e = reduce_with(e, basis);
  return out;
}

std::string format(const Matrix& m) {
  std::vector<std::string> rows;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::vector<std::string> cells;
    for (std::size_t j = 0; j < m.cols(); ++j) cells.push_back(format(m.at(i, j)));
    rows.push_back(join(cells));
  }
  return join(rows);
}

// ---------------------------------------------------------------------------
// Exterior algebra

ExteriorForm::ExteriorForm(RingPtr ring, std::size_t n) : ring_(std::move(ring)), n_(n) {
  if (n > 32) throw std::invalid_argument("exterior algebra rank above 32");
}

ExteriorForm ExteriorForm::basis(const RingPtr& ring, std::size_t n, std::uint32_t mask) {
  ExteriorForm w(ring, n);
  w.add(mask, Polynomial::constant(ring, 1));
  return w;
}

void ExteriorForm::add(std::uint32_t mask, const Polynomial& c) {
  if (n_ < 32 && (mask >> n_) != 0) throw std::invalid_argument("basis index outside the exterior algebra");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(mask, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

std::optional<int> ExteriorForm::degree() const {
  std::optional<int> p;
  for (const auto& [mask, c] : terms_) {
    const int d = std::popcount(mask);
    if (p && *p != d) return std::nullopt;
    p = d;
  }
  return p;
}

ExteriorForm ExteriorForm::operator+(const ExteriorForm& o) const {
  if (n_ != o.n_) throw std::invalid_argument("exterior forms of different rank");
  ExteriorForm out = *this;
  for (const auto& [mask, c] : o.terms_) out.add(mask, c);
  return out;
}

ExteriorForm ExteriorForm::operator-(const ExteriorForm& o) const {
  if (n_ != o.n_) throw std::invalid_argument("exterior forms of different rank");
  ExteriorForm out = *this;
  for (const auto& [mask, c] : o.terms_) out.add(mask, -c);
  return out;
}

ExteriorForm ExteriorForm::operator*(const Polynomial& c) const {
  ExteriorForm out(ring_, n_);
  for (const auto& [mask, a] : terms_) out.add(mask, a * c);
  return out;
}

std::string format(const ExteriorForm& w) {
  if (w.is_zero()) return "0";
  std::string out;
  for (const auto& [mask, c] : w.terms()) {
    if (!out.empty()) out += " + ";
    out += "(" + format(c) + ")*";
    if (mask == 0) {
      out += "1";
      continue;
    }
    bool first = true;
    for (std::size_t i = 0; i < w.rank(); ++i)
      if (mask & (1u << i)) {
        out += (first ? "e" : "^e") + std::to_string(i + 1);
        first = false;
      }
  }
  return out;
}

ExteriorForm wedge(const ExteriorForm& a, const ExteriorForm& b) {
  if (a.rank() != b.rank()) throw std::invalid_argument("exterior forms of different rank");
  ExteriorForm out(a.ring(), a.rank());
  for (const auto& [s, c] : a.terms())
    for (const auto& [t, d] : b.terms()) {
      if (s & t) continue;
      // sign of the shuffle: pairs (i in S, j in T) with i > j
      int inversions = 0;
      for (std::uint32_t rest = t; rest; rest &= rest - 1) {
        const std::uint32_t j = std::countr_zero(rest);
        inversions += std::popcount(s >> (j + 1));
      }
      const auto cd = c * d;
      out.add(s | t, inversions % 2 ? -cd : cd);
    }
  return out;
}

ExteriorForm koszul_contraction(const ContractionMap& u, const ExteriorForm& w) {
  if (u.values.size() != w.rank()) throw std::invalid_argument("contraction map and form have different rank");
  ExteriorForm out(w.ring(), w.rank());
  for (const auto& [mask, c] : w.terms()) {
    int k = 0;
    for (std::uint32_t rest = mask; rest; rest &= rest - 1, ++k) {
      const std::uint32_t i = std::countr_zero(rest);
      const auto term = u.values[i] * c;
      out.add(mask & ~(1u << i), k % 2 ? -term : term);
    }
  }
  return out;
}

std::vector<std::uint32_t> exterior_basis(std::size_t n, std::size_t p) {
  std::vector<std::uint32_t> out;
  const auto rec = [&](auto&& self, std::size_t start, std::size_t left, std::uint32_t mask) -> void {
    if (left == 0) {
      out.push_back(mask);
      return;
    }
    for (std::size_t i = start; i + left <= n; ++i) self(self, i + 1, left - 1, mask | (1u << i));
  };
  if (p <= n) rec(rec, 0, p, 0);
  return out;
}

KoszulComplex koszul_complex(const std::vector<Polynomial>& values) {
  if (values.empty()) throw std::invalid_argument("Koszul complex needs at least one element");
  const auto ring = values.front().ring();
  const std::size_t n = values.size();
  KoszulComplex K{ring, values, {}, false};
  const ContractionMap u{values};
  for (std::size_t p = 1; p <= n; ++p) {
    const auto src = exterior_basis(n, p);
    const auto dst = exterior_basis(n, p - 1);
    std::unordered_map<std::uint32_t, std::size_t> row_of;
    for (std::size_t i = 0; i < dst.size(); ++i) row_of[dst[i]] = i;
    Matrix d(ring, dst.size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j) {
      const auto image = koszul_contraction(u, ExteriorForm::basis(ring, n, src[j]));
      for (const auto& [mask, c] : image.terms()) d.at(row_of.at(mask), j) = c;
    }
    K.differentials.push_back(std::move(d));
  }
  K.is_complex = true;
  for (std::size_t p = 2; p <= n; ++p) K.is_complex = K.is_complex && (K.d(p - 1) * K.d(p)).is_zero();
  return K;
}

KoszulExactness koszul2_exactness(const Polynomial& x, const Polynomial& y, const RingSpec& spec,
                                  const Budget& budget) {
  if (!same_ring(x.ring(), spec.ring) || !same_ring(y.ring(), spec.ring)) throw RingMismatch();
  KoszulExactness out;
  const auto ann = quotient(IdealHandle::zero(spec), x, budget);
  const auto basis = base_basis(spec, budget);
  for (const auto& g : ann.generators()) {
    auto r = reduce_with(g, basis);
    if (!r.is_zero()) {
      out.annihilator = std::move(r);
      return out;
    }
  }
  const std::vector<Polynomial> pair{x, y};
  const auto syz = syzygies(spec, pair, budget);
  const std::vector<ModuleElement> koszul{ModuleElement{{-y, x}}};
  const auto span = module_gb(spec, 2, koszul, budget);
  for (const auto& row : syz.rows)
    if (!span.contains(row)) {
      out.extra_syzygy = row;
      return out;
    }
  out.exact = true;
  return out;
}

// ---------------------------------------------------------------------------
// Resolutions and presentations

FreeResolution free_resolution(const IdealHandle& I, std::size_t length, const Budget& budget) {
  const auto& spec = I.spec();
  const auto& ring = I.ring();
  const auto basis = base_basis(spec, budget);
  FreeResolution res{I, {}, {1}, false, false};
  std::vector<ModuleElement> gens;
  for (const auto& g : I.generators()) {
    auto r = reduce_with(g, basis);
    if (!r.is_zero()) gens.push_back(ModuleElement{{std::move(r)}});
  }
  if (gens.empty()) {
    res.ranks.push_back(0);
    res.terminated = res.verified = true;
    return res;
  }
  if (length == 0) return res;
  res.maps.push_back(Matrix::from_columns(ring, 1, gens));
  res.ranks.push_back(gens.size());
  while (true) {
    const auto& last = res.maps.back();
    std::vector<ModuleElement> columns;
    for (std::size_t j = 0; j < last.cols(); ++j) columns.push_back(last.column(j));
    const auto syz = syzygies(spec, columns, budget);
    if (syz.rows.empty()) {
      res.terminated = true;
      break;
    }
    if (res.maps.size() == length) break;
    res.maps.push_back(Matrix::from_columns(ring, last.cols(), syz.rows));
    res.ranks.push_back(syz.rows.size());
  }
  res.verified = true;
  for (std::size_t k = 0; k + 1 < res.maps.size(); ++k)
    res.verified = res.verified && (res.maps[k] * res.maps[k + 1]).reduced(spec, budget).is_zero();
  return res;
}

namespace {

// Drops zero columns, then repeatedly eliminates a generator that some
// relation expresses with a unit coefficient.
PresentationMatrix prune(PresentationMatrix p, const Budget& budget) {
  const auto& field = p.spec.ring->field();
  const auto basis = base_basis(p.spec, budget);
  std::vector<ModuleElement> cols;
  for (std::size_t j = 0; j < p.relations.cols(); ++j) cols.push_back(p.relations.column(j));
  std::size_t rows = p.relations.rows();
  while (true) {
    std::optional<std::pair<std::size_t, std::size_t>> pivot;
    for (std::size_t j = 0; j < cols.size() && !pivot; ++j)
      for (std::size_t i = 0; i < rows && !pivot; ++i) {
        const auto& e = cols[j].entries[i];
        if (!e.is_zero() && e.total_degree() == 0) pivot = {i, j};
      }
    if (!pivot) break;
    const auto [pi, pj] = *pivot;
    const auto inv = field.inv(cols[pj].entries[pi].leading_coeff());
    const auto piv = cols[pj];
    std::vector<ModuleElement> next;
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (j == pj) continue;
      ModuleElement v;
      const auto factor = cols[j].entries[pi].scalar_mul(inv);
      for (std::size_t i = 0; i < rows; ++i) {
        if (i == pi) continue;
        v.entries.push_back(reduce_with(cols[j].entries[i] - factor * piv.entries[i], basis));
      }
      next.push_back(std::move(v));
    }
    cols = std::move(next);
    --rows;
  }
  std::vector<ModuleElement> kept;
  for (auto& c : cols) {
    for (auto& e : c.entries) e = reduce_with(e, basis);
    if (!c.is_zero()) kept.push_back(std::move(c));
  }
  return PresentationMatrix{p.spec, Matrix::from_columns(p.spec.ring, rows, kept)};
}

RingSpec quotient_spec(const IdealHandle& I) {
  std::vector<Polynomial> extra;
  for (const auto& g : I.generators())
    if (!g.is_zero()) extra.push_back(g);
  return I.spec().with_base(extra);
}

}  // namespace

ExtModule ext_module(const IdealHandle& I, std::size_t r, const Budget& budget) {
  const auto& spec = I.spec();
  const auto& ring = I.ring();
  const auto res = free_resolution(I, r + 1, budget);
  const std::size_t b_r = r < res.ranks.size() ? res.ranks[r] : 0;
  const RingSpec over = quotient_spec(I);
  ExtModule out{r, PresentationMatrix{over, Matrix(ring, 0, 0)}, false};
  if (b_r > 0) {
    // ker(d_(r+1)^T): relations among the rows of d_(r+1)
    std::vector<ModuleElement> kernel;
    if (res.maps.size() > r) {
      std::vector<ModuleElement> rows;
      for (std::size_t i = 0; i < res.maps[r].rows(); ++i) rows.push_back(res.maps[r].row(i));
      kernel = syzygies(spec, rows, budget).rows;
    } else {
      for (std::size_t i = 0; i < b_r; ++i) kernel.push_back(ModuleElement::basis_vector(ring, b_r, i));
    }
    // im(d_r^T): the rows of d_r
    std::vector<ModuleElement> image;
    if (r >= 1)
      for (std::size_t i = 0; i < res.maps[r - 1].rows(); ++i) image.push_back(res.maps[r - 1].row(i));
    const std::size_t m = kernel.size();
    if (m > 0) {
      std::vector<ModuleElement> all = kernel;
      all.insert(all.end(), image.begin(), image.end());
      std::vector<ModuleElement> rels;
      const auto relations = syzygies(spec, all, budget);
      for (const auto& row : relations.rows)
        rels.push_back(ModuleElement{std::vector<Polynomial>(row.entries.begin(), row.entries.begin() + m)});
      out.presentation = prune(PresentationMatrix{over, Matrix::from_columns(ring, m, rels)}, budget);
    }
  }
  const auto b = out.presentation.generators();
  out.locally_cyclic =
      b <= 1 || IdealHandle(over, minors(out.presentation, b - 1, budget)).is_unit(budget);
  return out;
}

PresentationMatrix conormal_presentation(const IdealHandle& I, const Budget& budget) {
  const auto& spec = I.spec();
  const auto basis = base_basis(spec, budget);
  std::vector<Polynomial> gens;
  for (const auto& g : I.generators())
    if (!reduce_with(g, basis).is_zero()) gens.push_back(g);
  const RingSpec over = quotient_spec(I);
  const auto over_basis = base_basis(over, budget);
  std::vector<ModuleElement> rels;
  for (auto row : syzygies(spec, gens, budget).rows) {
    for (auto& e : row.entries) e = reduce_with(e, over_basis);
    if (!row.is_zero()) rels.push_back(std::move(row));
  }
  return PresentationMatrix{over, Matrix::from_columns(I.ring(), gens.size(), rels)};
}

// ---------------------------------------------------------------------------
// Fitting ideals

namespace {

constexpr std::size_t kMaxMinorStates = 200000;

std::size_t choose(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

std::vector<Polynomial> minors(const PresentationMatrix& p, std::size_t s, const Budget& budget) {
  const auto& ring = p.spec.ring;
  const Matrix& M = p.relations;
  if (s == 0) return {Polynomial::constant(ring, 1)};
  if (s > M.rows() || s > M.cols()) return {};
  if (M.rows() > 63 || M.cols() > 63) throw std::invalid_argument("presentation too large for minors");
  std::size_t states = 0;
  for (std::size_t t = 1; t <= s; ++t) states += choose(M.rows(), t) * choose(M.cols(), t);
  if (states > kMaxMinorStates) throw Error("minor enumeration exceeds the size limit");

  const auto basis = base_basis(p.spec, budget);
  std::map<std::pair<std::uint64_t, std::uint64_t>, Polynomial> memo;
  const auto det = [&](auto&& self, std::uint64_t rows, std::uint64_t cols) -> Polynomial {
    if (rows == 0) return Polynomial::constant(ring, 1);
    const auto key = std::make_pair(rows, cols);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const auto r0 = static_cast<std::size_t>(std::countr_zero(rows));
    Polynomial acc(ring);
    int k = 0;
    for (std::uint64_t rest = cols; rest; rest &= rest - 1, ++k) {
      const auto j = static_cast<std::size_t>(std::countr_zero(rest));
      const auto& a = M.at(r0, j);
      if (a.is_zero()) continue;
      const auto sub = self(self, rows & (rows - 1), cols & ~(std::uint64_t{1} << j));
      if (sub.is_zero()) continue;
      acc += k % 2 ? -(a * sub) : a * sub;
    }
    acc = reduce_with(acc, basis);
    memo.emplace(key, acc);
    return acc;
  };

  std::vector<Polynomial> out;
  const auto subsets = [](std::size_t n, std::size_t k) {
    std::vector<std::uint64_t> masks;
    const auto rec = [&](auto&& self, std::size_t start, std::size_t left, std::uint64_t mask) -> void {
      if (left == 0) {
        masks.push_back(mask);
        return;
      }
      for (std::size_t i = start; i + left <= n; ++i) self(self, i + 1, left - 1, mask | (std::uint64_t{1} << i));
    };
    rec(rec, 0, k, 0);
    return masks;
  };
  for (auto rows : subsets(M.rows(), s))
    for (auto cols : subsets(M.cols(), s)) {
      auto d = det(det, rows, cols);
      if (d.is_zero()) continue;
      if (std::find(out.begin(), out.end(), d) == out.end()) out.push_back(std::move(d));
    }
  return out;
}

namespace {

// Generators of Fitt_k for any k >= 0.
std::vector<Polynomial> fitting_generators(const PresentationMatrix& p, std::size_t k, const Budget& budget) {
  const auto b = p.generators();
  return minors(p, k >= b ? 0 : b - k, budget);
}

}  // namespace

FittingIdealSet fitting_ideals(const PresentationMatrix& p, const Budget& budget) {
  FittingIdealSet out{p, {}, false};
  const auto b = p.generators();
  for (std::size_t k = 0; k <= b; ++k) out.ideals.emplace_back(p.spec, fitting_generators(p, k, budget));
  bool ok = out.ideals.back().is_unit(budget);
  for (std::size_t k = 0; k < b && ok; ++k) ok = ideal_contains(out.ideals[k + 1], out.ideals[k], budget);
  out.chain_verified = ok;
  return out;
}

ProjectiveRankCertificate projective_rank_certificate(const PresentationMatrix& p, std::size_t r,
                                                      const Budget& budget) {
  ProjectiveRankCertificate cert;
  cert.rank = r;
  if (r > 0) {
    const auto below = fitting_generators(p, r - 1, budget);
    if (!below.empty()) {
      cert.failure = "Fitt_" + std::to_string(r - 1) + " is not zero";
      cert.witness = below.front();
      return cert;
    }
  }
  cert.minors = fitting_generators(p, r, budget);
  auto cofactors = cert.minors.empty()
                       ? std::nullopt
                       : lift(Polynomial::constant(p.spec.ring, 1), cert.minors, p.spec, budget);
  if (!cofactors) {
    cert.failure = "Fitt_" + std::to_string(r) + " is not the unit ideal";
    return cert;
  }
  cert.cofactors = std::move(*cofactors);
  cert.certified = true;
  return cert;
}

bool replay(const ProjectiveRankCertificate& cert, const PresentationMatrix& p, const Budget& budget) {
  if (!cert.certified) return false;
  if (cert.rank > 0 && !fitting_generators(p, cert.rank - 1, budget).empty()) return false;
  if (fitting_generators(p, cert.rank, budget) != cert.minors) return false;
  if (cert.cofactors.size() != cert.minors.size()) return false;
  Polynomial sum = Polynomial::constant(p.spec.ring, -1);
  for (std::size_t i = 0; i < cert.minors.size(); ++i) sum += cert.cofactors[i] * cert.minors[i];
  return reduce_mod_base(sum, p.spec, budget).is_zero();
}

}  // namespace ck
