#include <doctest.h>

#include "cartan/arith.hpp"
#include "oracles.hpp"

using namespace cartan;

TEST_SUITE("arith") {

TEST_CASE("binomials mod p") {
  CHECK(binom_lucas(4, 2, 3) == 0);
  CHECK(binom_lucas(5, 2, 7) == 3);
  CHECK(binom_lucas(2, 5, 7) == 0);
  CHECK(multi_binom({2, 1}, {1, 1}, 3) == 2);
  CHECK(multi_binom({1, 1}, {2, 0}, 3) == 0);
}

TEST_CASE("Lucas agrees with factorial formula") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    for (std::uint64_t a = 0; a <= 200; ++a) {
      for (std::uint64_t b = 0; b <= 200; ++b) {
        REQUIRE_MESSAGE(binom_lucas(a, b, p) == oracle::binom_mod(a, b, p),
                        "a=" << a << " b=" << b << " p=" << p);
      }
    }
  }
}

TEST_CASE("C(delta, alpha) is (-1)^|alpha|") {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    for (const auto& m : {std::vector<std::uint32_t>{1, 1}, {2, 1}, {1, 1, 1}}) {
      const auto params = FieldParams::make(p, m);
      const auto delta = delta_of(params);
      for (const auto& alpha : oracle::all_indices(params)) {
        const auto expected = alpha.degree() % 2 == 0 ? 1u : p - 1;
        REQUIRE(multi_binom(delta, alpha, p) == expected);
      }
    }
  }
}

TEST_CASE("binomial symmetry") {
  for (std::uint32_t p : {3u, 5u}) {
    for (std::uint64_t a = 0; a < 60; ++a) {
      for (std::uint64_t b = 0; b <= a; ++b) CHECK(binom_lucas(a, b, p) == binom_lucas(a, a - b, p));
    }
  }
}

TEST_CASE("multi-index arithmetic") {
  const MultiIndex bound{2, 2};
  CHECK(mi_add({1, 1}, {1, 0}, bound) == MultiIndex{2, 1});
  CHECK_FALSE(mi_add({2, 0}, {1, 0}, bound).has_value());
  CHECK(mi_sub({2, 1}, {1, 1}) == MultiIndex{1, 0});
  CHECK_FALSE(mi_sub({0, 1}, {1, 0}).has_value());
  CHECK(mi_leq({1, 2}, {2, 2}));
  CHECK_FALSE(mi_leq({1, 2}, {2, 1}));
  CHECK(MultiIndex{1, 0} < MultiIndex{0, 1});
  CHECK(MultiIndex{0, 2} < MultiIndex{1, 2});
  CHECK(MultiIndex{2, 1}.to_string() == "(2,1)");
}

TEST_CASE("field parameters") {
  CHECK_THROWS_AS(FieldParams::make(4, {1, 1}), ParameterError);
  CHECK_THROWS_AS(FieldParams::make(3, {}), ParameterError);
  CHECK_THROWS_AS(FieldParams::make(3, {0, 1}), ParameterError);
  const auto params = FieldParams::make(3, {2, 1});
  CHECK(params.truncation(0) == 9);
  CHECK(params.dp_dimension() == 27);
  CHECK(delta_of(params) == MultiIndex{8, 2});
  CHECK_FALSE(params.all_ones());
}

TEST_CASE("prime field and integer helpers") {
  const PrimeField f(7);
  for (std::uint32_t a = 1; a < 7; ++a) CHECK(f.mul(a, f.inv(a)) == 1);
  CHECK(f.from_int(-1) == 6);
  CHECK(f.from_big(BigInt(-15)) == 6);
  CHECK(reduce_mod(BigInt(-3), 3) == 0);
  CHECK(p_adic_valuation(BigInt(75), 5) == 2);
  CHECK(p_adic_valuation(BigInt(-12), 3) == 1);
  CHECK(binom_integer(10, 3) == 120);
  CHECK(multi_factorial({3, 2}) == 12);
  CHECK(multi_binom_integer({4, 2}, {2, 1}) == 12);
  CHECK(is_prime(7919));
  CHECK_FALSE(is_prime(1));
}

}
