#include <doctest.h>

#include "ck/error.hpp"
#include "support.hpp"

using namespace ck;
using namespace ck::testing;

TEST_CASE("ring_arith: additive inverse and difference of squares") {
  auto R = qq({"x", "y"});
  CHECK((P(R, "x") + P(R, "-x")).is_zero());
  CHECK(P(R, "x+y") * P(R, "x-y") == P(R, "x^2 - y^2"));
  CHECK(format(P(R, "x+y") * P(R, "x-y")) == "x^2 - y^2");
}

TEST_CASE("ring_arith over F5: 2x * 3x = x^2") {
  auto R = fp(5, {"x"});
  CHECK(P(R, "2*x") * P(R, "3*x") == P(R, "x^2"));
  CHECK(format(P(R, "2*x") * P(R, "3*x")) == "x^2");
}

TEST_CASE("ring_arith rejects mixed rings") {
  auto R = qq({"x", "y"});
  auto S = qq({"x", "z"});
  CHECK_THROWS_AS(P(R, "x") + P(S, "x"), RingMismatch);
  CHECK_THROWS_AS(P(R, "x") * P(S, "z"), RingMismatch);
}

TEST_CASE("structurally equal rings interoperate") {
  auto R = qq({"x", "y"});
  auto S = qq({"x", "y"});
  CHECK(P(R, "x") + P(S, "y") == P(R, "x + y"));
}

TEST_CASE("canonical text form") {
  auto R = qq({"x", "y", "z"});
  CHECK(format(P(R, "1 - x*y^2 + 3/2*z")) == "-x*y^2 + 3/2*z + 1");
  CHECK(format(P(R, "0*x")) == "0");
  CHECK(format(P(R, "-x")) == "-x");
  CHECK(format(P(R, "(x - 1)^2")) == "x^2 - 2*x + 1");
  auto G = make_ring({"x"}, Field::extension(5, 2));
  const auto a = P(G, "{0,1}*x");
  CHECK(format(a * a) == "{" + std::to_string((5 - G->field().modulus()[0]) % 5) + "," +
                             std::to_string((5 - G->field().modulus()[1]) % 5) + "}*x^2");
}

TEST_CASE("parser accepts the typographic minus and reports positions") {
  auto R = qq({"x", "y"});
  CHECK(P(R, "x \xE2\x88\x92 y") == P(R, "x - y"));
  try {
    (void)P(R, "x + q");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 5);
  }
  CHECK_THROWS_AS(P(R, "x / y"), ParseError);
  CHECK_THROWS_AS(P(R, "x^9999"), ParseError);
}

TEST_CASE("reduce: examples") {
  auto R = qq({"x", "y"});
  {
    auto d = reduce(P(R, "x^2"), Ps(R, {"x"}));
    CHECK(d.remainder.is_zero());
    CHECK(d.quotients[0] == P(R, "x"));
  }
  {
    auto d = reduce(P(R, "x*y + 1"), Ps(R, {"x"}));
    CHECK(d.remainder == P(R, "1"));
    CHECK(d.quotients[0] == P(R, "y"));
  }
  {
    auto d = reduce(P(R, "x^2*y - x"), Ps(R, {"x*y - 1"}));
    CHECK(d.remainder.is_zero());
    CHECK(d.quotients[0] == P(R, "x"));
  }
}

TEST_CASE("reduce: identity f = sum q_i g_i + r and idempotence on random inputs") {
  std::mt19937_64 rng(7);
  for (auto field : {Field::rationals(), Field::prime(5)}) {
    auto R = make_ring({"x", "y", "z"}, field);
    for (int trial = 0; trial < 60; ++trial) {
      auto f = random_poly(rng, R, 5, 6);
      std::vector<Polynomial> G;
      for (int k = 0; k < 3; ++k) {
        auto g = random_poly(rng, R, 3, 3);
        if (!g.is_zero()) G.push_back(g);
      }
      if (G.empty()) continue;
      auto d = reduce(f, G);
      Polynomial sum = d.remainder;
      for (std::size_t i = 0; i < G.size(); ++i) sum += d.quotients[i] * G[i];
      CHECK(sum == f);
      for (const auto& t : d.remainder.terms())
        for (const auto& g : G) CHECK_FALSE(g.leading_monomial().divides(t.mono));
      CHECK(reduce(d.remainder, G).remainder == d.remainder);
    }
  }
}

TEST_CASE("ring axioms hold exactly on random samples") {
  std::mt19937_64 rng(11);
  for (auto field : {Field::rationals(), Field::prime(7), Field::extension(3, 2)}) {
    auto R = make_ring({"x", "y", "z"}, field);
    for (int trial = 0; trial < 40; ++trial) {
      auto a = random_poly(rng, R, 3, 4);
      auto b = random_poly(rng, R, 3, 4);
      auto c = random_poly(rng, R, 3, 4);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      CHECK(a + b == b + a);
      CHECK((a - a).is_zero());
    }
  }
}

TEST_CASE("monomial order axioms: total, multiplicative, 1 is least") {
  std::mt19937_64 rng(3);
  const std::size_t n = 4;
  const std::vector<MonomialOrder> orders = {
      MonomialOrder::lex(n), MonomialOrder::grevlex(n), MonomialOrder::elimination(n, 2),
      MonomialOrder::eliminating(n, {2}), MonomialOrder::grevlex(n - 1).prepend_block(1)};
  for (const auto& order : orders) {
    for (int trial = 0; trial < 300; ++trial) {
      auto a = random_monomial(rng, n, 3), b = random_monomial(rng, n, 3), c = random_monomial(rng, n, 3);
      const auto ab = order.compare(a, b);
      CHECK((ab == 0) == (a == b));
      CHECK(order.compare(b, a) == (0 <=> ab));
      CHECK(order.compare(a * c, b * c) == ab);
      if (order.less(a, b) && order.less(b, c)) CHECK(order.less(a, c));
      CHECK_FALSE(order.less(a, Monomial(n)));
    }
  }
}

TEST_CASE("extend_ring: elimination block, embedding and round trip") {
  auto R = qq({"x"});
  RingExtension ext(R, {"t"});
  CHECK(ext.extended()->variables() == std::vector<std::string>{"t", "x"});
  const auto f = P(R, "x^2 + 1");
  const auto g = ext.embed(f);
  CHECK(format(g) == "x^2 + 1");
  CHECK(*ext.contract(g) == f);
  // t beats any power of x
  const auto& order = ext.extended()->order();
  CHECK(order.less(Monomial({0, 50}), Monomial({1, 0})));
  CHECK_FALSE(ext.contract(P(ext.extended(), "t*x")).has_value());
  CHECK_THROWS_AS(RingExtension(R, {"x"}), std::invalid_argument);
  // embedding is a ring homomorphism
  const auto h = P(R, "x - 3");
  CHECK(ext.embed(f * h) == ext.embed(f) * ext.embed(h));
}

TEST_CASE("field basics") {
  CHECK_THROWS_AS(Field::prime(6), std::invalid_argument);
  CHECK(is_prime_u64(9223372036854775783ULL));
  auto big = Field::prime(9223372036854775783ULL);
  auto a = big.from_int(-2);
  CHECK(big.is_one(big.mul(a, big.inv(a))));
  auto gf = Field::extension(5, 3);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) {
    auto x = gf.random_small(rng, 2);
    if (gf.is_zero(x)) continue;
    CHECK(gf.is_one(gf.mul(x, gf.inv(x))));
  }
  auto f5 = Field::prime(5);
  CHECK(f5.format(f5.from_rational(mpq_class(1, 2))) == "3");
  CHECK_THROWS_AS(f5.from_rational(mpq_class(1, 5)), std::domain_error);
}
