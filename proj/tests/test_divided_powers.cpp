#include <doctest.h>

#include <random>

#include "cartan/divided_powers.hpp"
#include "oracles.hpp"

using namespace cartan;

namespace {

using Poly = DPPolynomial<PrimeField>;

Poly random_dp(const FieldParams& params, std::mt19937& rng, std::size_t terms = 4) {
  const PrimeField f(params.p);
  const auto basis = oracle::all_indices(params);
  std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
  std::uniform_int_distribution<std::uint32_t> coef(1, params.p - 1);
  Poly out(params, f);
  for (std::size_t t = 0; t < terms; ++t) out.add_term(basis[pick(rng)], coef(rng));
  return out;
}

Poly mono(const FieldParams& params, const MultiIndex& alpha, std::uint32_t c = 1) {
  return Poly::monomial(params, PrimeField(params.p), alpha, c);
}

}  // namespace

TEST_SUITE("divided_powers") {

TEST_CASE("products of monomials") {
  const auto p3 = FieldParams::make(3, {1, 1});
  CHECK(mono(p3, {1, 0}) * mono(p3, {1, 0}) == mono(p3, {2, 0}, 2));
  CHECK(mono(p3, {1, 0}) * mono(p3, {0, 1}) == mono(p3, {1, 1}));
  CHECK((mono(p3, {2, 0}) * mono(p3, {1, 0})).is_zero());

  const auto p3m2 = FieldParams::make(3, {2});
  CHECK((mono(p3m2, {1}) * mono(p3m2, {2})).is_zero());
  CHECK(mono(p3m2, {3}) * mono(p3m2, {1}) == mono(p3m2, {4}, 1));

  const auto p5 = FieldParams::make(5, {1});
  CHECK(mono(p5, {2}) * mono(p5, {2}) == mono(p5, {4}, 1));
}

TEST_CASE("partial derivatives") {
  const auto params = FieldParams::make(5, {1, 1});
  CHECK(mono(params, {3, 2}).partial(0) == mono(params, {2, 2}));
  CHECK(mono(params, {0, 2}).partial(0).is_zero());
  CHECK_THROWS_AS(mono(params, {1, 1}).partial(2), ParameterError);
}

TEST_CASE("basis enumeration") {
  const auto params = FieldParams::make(3, {1, 2});
  const auto basis = dp_basis(params);
  CHECK(basis.size() == 27);
  CHECK(basis.front() == MultiIndex{0, 0});
  CHECK(basis.back() == MultiIndex{2, 8});
  for (std::size_t i = 1; i < basis.size(); ++i) CHECK(basis[i - 1] < basis[i]);
}

TEST_CASE("out-of-box terms are dropped") {
  const auto params = FieldParams::make(3, {1, 1});
  Poly f(params, PrimeField(3));
  f.add_term({3, 0}, 1);
  CHECK(f.is_zero());
  CHECK_THROWS_AS(f.add_term({1}, 1), ParameterError);
}

TEST_CASE("ring laws on random elements") {
  std::mt19937 rng(7);
  for (const auto& params : {FieldParams::make(3, {1, 1}), FieldParams::make(5, {1, 1}),
                             FieldParams::make(3, {2, 1}), FieldParams::make(2, {1, 1, 1})}) {
    for (int trial = 0; trial < 25; ++trial) {
      const auto a = random_dp(params, rng), b = random_dp(params, rng), c = random_dp(params, rng);
      CHECK(a * b == b * a);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      for (std::size_t i = 0; i < params.n(); ++i) {
        CHECK((a * b).partial(i) == a.partial(i) * b + a * b.partial(i));
        for (std::size_t j = 0; j < params.n(); ++j) {
          CHECK(a.partial(i).partial(j) == a.partial(j).partial(i));
        }
        auto d = a;
        for (std::uint64_t k = 0; k < params.truncation(i); ++k) d = d.partial(i);
        CHECK(d.is_zero());
      }
    }
  }
}

TEST_CASE("integral product reduces to the modular product") {
  const auto params = FieldParams::make(3, {1, 1});
  const IntegerRing z;
  for (const auto& a : dp_basis(params)) {
    for (const auto& b : dp_basis(params)) {
      const auto prod = DPPolynomial<IntegerRing>::monomial(params, z, a, 1) *
                        DPPolynomial<IntegerRing>::monomial(params, z, b, 1);
      CHECK(reduce(prod) == mono(params, a) * mono(params, b));
    }
  }
}

}
