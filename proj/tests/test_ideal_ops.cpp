#include <doctest.h>

#include <algorithm>

#include "ck/ideal_ops.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace ck;
using namespace ck::testing;

namespace {

IdealHandle skew_lines(const RingPtr& R) { return ideal(R, {"x^2 - x", "x*z", "x*y - y", "y*z"}); }

}  // namespace

TEST_CASE("quotient: examples") {
  auto R = qq({"x", "y"});
  CHECK(ideal_equal(quotient(ideal(R, {"x^2"}), P(R, "x")), ideal(R, {"x"})));
  CHECK(ideal_equal(quotient(ideal(R, {"x*y"}), P(R, "x")), ideal(R, {"y"})));
  RingSpec A{R, Ps(R, {"x*y"})};
  CHECK(ideal_equal(quotient(IdealHandle::zero(A), P(R, "x")), IdealHandle(A, Ps(R, {"y"}))));
  CHECK(quotient(ideal(R, {"x"}), Polynomial(R)).is_unit());
  CHECK(quotient(ideal(R, {"x"}), P(R, "x*y")).is_unit());
}

TEST_CASE("quotient by an ideal") {
  auto R = qq({"x", "y", "z"});
  // ((x,y) ∩ (x-1,z)) : (x) strips the component through the origin
  CHECK(ideal_equal(quotient(skew_lines(R), ideal(R, {"x"})), ideal(R, {"x - 1", "z"})));
  CHECK(ideal_equal(quotient(ideal(R, {"x*y", "x*z"}), ideal(R, {"y", "z"})), ideal(R, {"x"})));
}

TEST_CASE("saturate: examples") {
  auto R = qq({"x", "y", "z"});
  CHECK(ideal_equal(saturate(ideal(R, {"x^2*y"}), P(R, "y")), ideal(R, {"x^2"})));
  CHECK(saturate(ideal(R, {"x"}), P(R, "x")).is_unit());
  CHECK(ideal_equal(saturate(ideal(R, {"x^2 - x", "x*z"}), P(R, "x")), ideal(R, {"x - 1", "z"})));
}

TEST_CASE("intersect: examples") {
  auto R = qq({"x", "y", "z"});
  CHECK(ideal_equal(intersect(ideal(R, {"x"}), ideal(R, {"y"})), ideal(R, {"x*y"})));
  CHECK(ideal_equal(intersect(ideal(R, {"x"}), ideal(R, {"x"})), ideal(R, {"x"})));
  const auto K = intersect(ideal(R, {"x", "y"}), ideal(R, {"x - 1", "z"}));
  CHECK(ideal_equal(K, skew_lines(R)));
  for (const auto& g : K.generators()) {
    CHECK(ideal_member(g, ideal(R, {"x", "y"})));
    CHECK(ideal_member(g, ideal(R, {"x - 1", "z"})));
  }
}

TEST_CASE("eliminate: examples") {
  auto R = qq({"t", "x", "y"});
  CHECK(ideal_equal(eliminate(ideal(R, {"t - x", "t^2 - y"}), std::vector<std::string>{"t"}), ideal(R, {"x^2 - y"})));
  auto S = qq({"x", "y"});
  CHECK(ideal_equal(eliminate(ideal(S, {"x"}), std::vector<std::string>{"y"}), ideal(S, {"x"})));
  auto T = qq({"t", "x"});
  auto e = eliminate(ideal(T, {"t*x - 1"}), std::vector<std::string>{"t"});
  CHECK(e.generators().empty());
  CHECK(e.is_zero_in_ring());
}

TEST_CASE("radical_member: examples") {
  auto R = qq({"x", "y"});
  auto w = radical_member(P(R, "x"), ideal(R, {"x^2"}));
  CHECK(w.member);
  CHECK(w.exponent == 2u);
  CHECK_FALSE(radical_member(P(R, "y"), ideal(R, {"x"})).member);
  auto v = radical_member(P(R, "x + y"), ideal(R, {"(x + y)^3"}));
  CHECK(v.member);
  CHECK(v.exponent == 3u);
  CHECK(replay(v, ideal(R, {"(x + y)^3"})));
  v.exponent = 2;
  CHECK_FALSE(replay(v, ideal(R, {"(x + y)^3"})));
}

TEST_CASE("radical_equal: examples") {
  auto R = qq({"x", "y", "z"});
  auto a = radical_equal(ideal(R, {"x^2"}), ideal(R, {"x"}));
  REQUIRE(std::holds_alternative<RadicalEqualityCertificate>(a));
  CHECK(replay(std::get<RadicalEqualityCertificate>(a)));

  auto b = radical_equal(ideal(R, {"x"}), ideal(R, {"y"}));
  REQUIRE(std::holds_alternative<RadicalRefutation>(b));
  CHECK(std::get<RadicalRefutation>(b).generator == P(R, "x"));
  CHECK(std::get<RadicalRefutation>(b).generator_from_left);

  auto c = radical_equal(ideal(R, {"x^2 - x", "(1 - x)*y + x*z"}), intersect(ideal(R, {"x", "y"}), ideal(R, {"x - 1", "z"})));
  REQUIRE(std::holds_alternative<RadicalEqualityCertificate>(c));
  const auto& cert = std::get<RadicalEqualityCertificate>(c);
  CHECK(replay(cert));
  for (const auto& w : cert.left_in_right) CHECK(w.member);
  for (const auto& w : cert.right_in_left) CHECK(w.member);
  // a tampered hash no longer replays
  auto bad = cert;
  bad.left_in_right[0].auxiliary_hash[0] ^= 1;
  CHECK_FALSE(replay(bad));
}

TEST_CASE("dimension_height: examples") {
  auto R = qq({"x", "y", "z"});
  auto a = dimension_height(ideal(R, {"x"}));
  CHECK(a.dimension == 2);
  CHECK(a.height == 1);
  auto b = dimension_height(ideal(R, {"x", "y"}));
  CHECK(b.dimension == 1);
  CHECK(b.height == 2);
  auto c = dimension_height(skew_lines(R));
  CHECK(c.dimension == 1);
  CHECK(c.height == 2);
  auto u = dimension_height(ideal(R, {"1"}));
  CHECK(u.unit);
  CHECK(u.dimension == -1);
  CHECK(std::string(DimensionReport::kHeightDefinition) == "coheight");
  // a quotient ring: dim A = 3 for k[x,y,z,w]/(w)
  auto S = qq({"x", "y", "z", "w"});
  RingSpec A{S, Ps(S, {"w"})};
  auto d = dimension_height(IdealHandle(A, Ps(S, {"x", "y"})));
  CHECK(d.ambient_dimension == 3);
  CHECK(d.dimension == 1);
  CHECK(d.height == 2);
}

TEST_CASE("quotient contains I and agrees with the bounded annihilator oracle") {
  std::mt19937_64 rng(41);
  int proper = 0;
  for (int trial = 0; trial < 12; ++trial) {
    auto R = fp(5, {"x", "y", "z"});
    std::vector<Polynomial> gens;
    for (int k = 0; k < 2; ++k) gens.push_back(random_poly(rng, R, 2, 2, true));
    // a shared factor makes zero divisors common
    const auto h = random_poly(rng, R, 1, 2, true);
    for (auto& g : gens) g = g * h;
    const auto f = trial % 2 ? random_poly(rng, R, 1, 2, true) : h;
    if (f.is_zero() || std::any_of(gens.begin(), gens.end(), [](auto& g) { return g.is_zero(); })) continue;
    IdealHandle I(plain(R), gens);
    const auto Q = quotient(I, f);
    CHECK(ideal_contains(Q, I));
    for (const auto& q : Q.generators()) CHECK(ideal_member(q * f, I));
    unsigned d = 0;
    for (const auto& q : Q.generators()) d = std::max(d, q.total_degree());
    const auto ann = bounded_annihilator(f, gens, d, d + f.total_degree());
    for (const auto& g : ann) CHECK(ideal_member(g, Q));
    const bool oracle_proper = std::any_of(ann.begin(), ann.end(), [&](const auto& g) { return !ideal_member(g, I); });
    CHECK(oracle_proper == !ideal_equal(Q, I));
    proper += oracle_proper;
  }
  CHECK(proper > 0);
}

TEST_CASE("iterated quotients stabilize at the saturation") {
  auto R = qq({"x", "y", "z"});
  const std::vector<std::pair<IdealHandle, const char*>> cases = {
      {ideal(R, {"x^3*y", "x^2*z"}), "x"},
      {ideal(R, {"x^2 - x", "x*z"}), "x"},
      {ideal(R, {"x*y^2", "y^3*z"}), "y"},
      {ideal(R, {"(x - 1)^2*y", "x*(x - 1)*z"}), "x - 1"}};
  for (const auto& [I, text] : cases) {
    const auto f = P(R, text);
    IdealHandle cur = I;
    for (int k = 0; k < 10; ++k) {
      auto next = quotient(cur, f);
      if (ideal_equal(next, cur)) break;
      cur = next;
    }
    CHECK(ideal_equal(cur, saturate(I, f)));
  }
}

TEST_CASE("radical_member matches point enumeration over F_p") {
  std::mt19937_64 rng(77);
  const std::uint64_t p = 3;
  auto R = fp(p, {"x", "y", "z"});
  const auto field_eqs = Ps(R, {"(x^3 - x)^2", "(y^3 - y)^2", "(z^3 - z)^2"});
  const auto points = all_points(R->field(), 3);
  int members = 0, total = 0;
  for (int trial = 0; trial < 10; ++trial) {
    auto gens = field_eqs;
    for (int k = 0; k < 2; ++k) gens.push_back(random_poly(rng, R, 2, 3).pow(1 + rng() % 2));
    IdealHandle I(plain(R), gens);
    std::vector<std::vector<Scalar>> zeros;
    for (const auto& pt : points)
      if (std::all_of(gens.begin(), gens.end(), [&](const auto& g) { return R->field().is_zero(g.evaluate(pt)); }))
        zeros.push_back(pt);
    for (int q = 0; q < 4; ++q) {
      const auto f = random_poly(rng, R, 2, 3);
      const bool vanishes =
          std::all_of(zeros.begin(), zeros.end(), [&](const auto& pt) { return R->field().is_zero(f.evaluate(pt)); });
      const auto w = radical_member(f, I);
      CHECK(w.member == vanishes);
      if (w.member) CHECK(w.exponent.has_value());
      members += w.member;
      ++total;
    }
  }
  CHECK(members > 0);
  CHECK(members < total);
}

TEST_CASE("radical_equal is reflexive, symmetric and transitive on fixtures") {
  auto R = qq({"x", "y", "z"});
  const std::vector<IdealHandle> fixtures = {
      ideal(R, {"x^2", "y"}), ideal(R, {"x", "y^3"}), ideal(R, {"x*y", "x^2", "y^2"}),
      skew_lines(R), ideal(R, {"x^2 - x", "(1 - x)*y + x*z"}), ideal(R, {"x", "z"}),
  };
  const auto eq = [&](const IdealHandle& a, const IdealHandle& b) {
    return std::holds_alternative<RadicalEqualityCertificate>(radical_equal(a, b));
  };
  for (const auto& a : fixtures) CHECK(eq(a, a));
  for (const auto& a : fixtures)
    for (const auto& b : fixtures) {
      const bool ab = eq(a, b);
      CHECK(ab == eq(b, a));
      for (const auto& c : fixtures)
        if (ab && eq(b, c)) CHECK(eq(a, c));
    }
}

TEST_CASE("dimension_height is invariant under regenerating I and permuting variables") {
  std::mt19937_64 rng(5);
  auto R = qq({"x", "y", "z", "w"});
  const std::vector<IdealHandle> fixtures = {
      ideal(R, {"x*z - y^2", "x^3 - y*z", "x^2*y - z^2"}), ideal(R, {"x^2 - x", "x*z", "x*y - y", "y*z"}),
      ideal(R, {"y - x^2", "z - x^3"}), ideal(R, {"x*y", "z*w"}), ideal(R, {"x", "y", "z", "w - 1"})};
  auto Rp = qq({"w", "z", "x", "y"});
  for (const auto& I : fixtures) {
    const auto base = dimension_height(I);
    CHECK(base.height >= 0);
    auto gens = I.generators();
    gens.push_back(gens[0] * random_poly(rng, R, 1, 2) + gens.back());
    std::shuffle(gens.begin(), gens.end(), rng);
    const auto again = dimension_height(IdealHandle(plain(R), gens));
    CHECK(again.dimension == base.dimension);
    CHECK(again.height == base.height);
    std::vector<Polynomial> moved;
    for (const auto& g : I.generators()) moved.push_back(g.rename_into(Rp));
    const auto permuted = dimension_height(IdealHandle(plain(Rp), moved));
    CHECK(permuted.dimension == base.dimension);
    // the independent set is maximal: adding any variable breaks it
    for (std::size_t v = 0; v < 4; ++v) {
      if (std::find(base.independent_set.begin(), base.independent_set.end(), v) != base.independent_set.end()) continue;
      auto bigger = base.independent_set;
      bigger.push_back(v);
      bool blocked = false;
      for (const auto& m : base.leading_monomials) {
        bool inside = true;
        for (std::size_t i = 0; i < 4; ++i)
          if (m[i] && std::find(bigger.begin(), bigger.end(), i) == bigger.end()) inside = false;
        blocked = blocked || inside;
      }
      CHECK(blocked);
    }
  }
}
