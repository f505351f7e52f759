#include <doctest.h>

#include <algorithm>
#include <random>

#include "cartan/symmetric_algebra.hpp"
#include "oracles.hpp"

using namespace cartan;

namespace {

AlgebraPtr hbar(std::uint32_t p) { return build_algebra(AlgebraKind::Hbar, FieldParams::make(p, {1, 1})); }

ModPoly var(const AlgebraPtr& a, const std::string& label) {
  return ModPoly::variable(a, a->field(), *a->find(label));
}

/// ad(b) on S(L) from the definition: bracket each factor occurrence in turn.
ModPoly ad_oracle(const AlgebraPtr& a, std::uint32_t b, const ModPoly& f) {
  const PrimeField field = a->field();
  ModPoly out(a, field);
  for (const auto& [m, c] : f.terms()) {
    std::vector<std::uint32_t> factors;
    for (auto [k, e] : m) factors.insert(factors.end(), e, k);
    for (std::size_t pos = 0; pos < factors.size(); ++pos) {
      ModPoly rest = ModPoly::constant(a, field, c);
      for (std::size_t q = 0; q < factors.size(); ++q) {
        if (q != pos) rest = rest * ModPoly::variable(a, field, factors[q]);
      }
      ModPoly image(a, field);
      for (const auto& [k, v] : a->bracket_mod(b, factors[pos])) image.add_term({{k, 1}}, v);
      out += rest * image;
    }
  }
  return out;
}

}  // namespace

TEST_SUITE("symmetric_algebra") {

TEST_CASE("ring operations") {
  const auto a = hbar(3);
  const auto u = var(a, "u_{2,2}");
  const auto f = var(a, "u_{1,1}") * u + var(a, "u_{0,1}").scaled(2);
  CHECK((f + f.scaled(2)).is_zero());
  CHECK((f - f).is_zero());
  CHECK(u * u == u.pow(2));
  CHECK((u * u).terms().begin()->first == Monomial{{*a->find("u_{2,2}"), 2}});
  CHECK(ModPoly::constant(a, a->field(), 1) * f == f);
  CHECK(f.homogeneous_degree() == std::nullopt);
  CHECK(u.pow(3).homogeneous_degree() == 3u);
  const auto other = build_algebra(AlgebraKind::H, FieldParams::make(3, {1, 1}));
  CHECK_THROWS_AS(f + ModPoly::constant(other, other->field(), 1), ParameterError);
}

TEST_CASE("text form round trip") {
  const auto a = hbar(5);
  const auto f = parse_polynomial("2*u_{0,1}*u_{2,1} + u_{1,1}^2 - 3*u_{4,4}", a, a->field());
  CHECK(f.size() == 3);
  CHECK(f.coefficient({{*a->find("u_{4,4}"), 1}}) == 2);
  CHECK(parse_polynomial(f.to_text(), a, a->field()) == f);
  CHECK(parse_polynomial("0", a, a->field()).is_zero());
  CHECK_THROWS_AS(parse_polynomial("u_{9,9}", a, a->field()), ParameterError);
  CHECK_THROWS_AS(parse_polynomial("2*", a, a->field()), ParameterError);
}

TEST_CASE("adjoint action examples") {
  const auto w = build_W(FieldParams::make(3, {1}));
  const auto e1 = var(w, "x^(2)d_1");
  const auto xd = *w->find("x^(1)d_1");
  CHECK(ad_action(xd, e1.pow(2)) == e1.pow(2).scaled(2));
  CHECK(ad_action(0, ModPoly::constant(w, w->field(), 1)).is_zero());

  const auto a = hbar(3);
  const auto d = Derivation<PrimeField>::partial(a->params(), a->field(), 0);
  const auto g = var(a, "u_{2,1}");
  CHECK(ad_action(d, g) == ad_action(*a->find("u_{0,1}"), g).scaled(2));
  const auto foreign = Derivation<PrimeField>::field(a->params(), a->field(), {1, 0}, 0, 1);
  CHECK_THROWS_AS(ad_action(foreign, g), NotInSpanError);
}

TEST_CASE("adjoint action agrees with the factor-by-factor definition") {
  std::mt19937 rng(11);
  for (const auto& a : {hbar(3), build_W(FieldParams::make(3, {1, 1})), build_S(FieldParams::make(3, {1, 1}))}) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto f = oracle::random_poly(a, 1 + trial % 3, 4, rng);
      for (std::uint32_t b = 0; b < a->dim(); ++b) REQUIRE(ad_action(b, f) == ad_oracle(a, b, f));
    }
  }
}

TEST_CASE("Leibniz rule") {
  std::mt19937 rng(3);
  const auto a = hbar(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = oracle::random_poly(a, 2, 3, rng);
    const auto g = oracle::random_poly(a, 1 + trial % 2, 3, rng);
    const auto b = static_cast<std::uint32_t>(rng() % a->dim());
    CHECK((ad_action(b, f * g) - ad_action(b, f) * g - f * ad_action(b, g)).is_zero());
  }
}

TEST_CASE("integral action reduces to modular action") {
  std::mt19937 rng(5);
  const auto a = hbar(5);
  const IntegerRing z;
  for (int trial = 0; trial < 20; ++trial) {
    IntPoly f(a, z);
    for (int t = 0; t < 4; ++t) {
      f.add_term({{static_cast<std::uint32_t>(rng() % a->dim()), 1 + static_cast<std::uint32_t>(rng() % 2)}},
                 BigInt(static_cast<int>(rng() % 41) - 20));
    }
    const auto b = static_cast<std::uint32_t>(rng() % a->dim());
    CHECK(reduce(ad_action(b, f)) == ad_action(b, reduce(f)));
    CHECK(reduce(d_delta(f)) == d_delta(reduce(f)));
  }
}

TEST_CASE("d_delta examples") {
  const auto a = hbar(3);
  const auto u = var(a, "u_{2,2}");
  CHECK(d_delta(ModPoly::constant(a, a->field(), 1)).is_zero());
  CHECK(d_delta(u).is_zero());
  const auto expected =
      parse_polynomial("2*u_{0,1}*u_{2,1} + 2*u_{1,0}*u_{1,2} + u_{1,1}^2 + 2*u_{2,0}*u_{0,2}", a, a->field());
  CHECK(d_delta(u.pow(2)) == expected);
  CHECK(d_delta(u.pow(2), 3) == expected);
}

TEST_CASE("d_delta is independent of the order of the factors") {
  std::mt19937 rng(17);
  const auto w = build_W(FieldParams::make(3, {1, 1, 1}));
  const auto delta = delta_of(w->params());
  for (int trial = 0; trial < 6; ++trial) {
    const auto f = oracle::random_poly(w, 2, 3, rng);
    std::vector<std::size_t> order{0, 1, 2};
    const auto base = d_power(delta, f, order);
    std::shuffle(order.begin(), order.end(), rng);
    CHECK(d_power(delta, f, order) == base);
  }
}

TEST_CASE("ad(d_i) is nilpotent and kills the image of d_delta") {
  std::mt19937 rng(23);
  for (const auto& a : {hbar(3), hbar(5)}) {
    const auto f = oracle::random_poly(a, 2, 4, rng);
    for (std::size_t axis = 0; axis < 2; ++axis) {
      CHECK(ad_partial_power(axis, a->params().truncation(axis), f).is_zero());
      CHECK(ad_partial_power(axis, 1, d_delta(f)).is_zero());
    }
  }
}

TEST_CASE("invariance testing") {
  const auto h = build_algebra(AlgebraKind::H, FieldParams::make(3, {1, 1}));
  CHECK(is_invariant(ModPoly::constant(h, h->field(), 1)).is_invariant);
  const auto u11 = var(h, "u_{1,1}");
  const auto report = is_invariant(u11);
  CHECK_FALSE(report.is_invariant);
  REQUIRE(report.witness);
  CHECK(report.witness->second == ad_oracle(h, report.witness->first, u11));
  const auto delta2 =
      parse_polynomial("2*u_{0,1}*u_{2,1} + 2*u_{1,0}*u_{1,2} + u_{1,1}^2 + 2*u_{2,0}*u_{0,2}", h, h->field());
  CHECK(is_invariant(delta2).is_invariant);
}

TEST_CASE("generator criteria") {
  const auto w = build_W(FieldParams::make(3, {1}));
  const auto e1 = var(w, "x^(2)d_1");
  CHECK(check_generator_W(ModPoly(w, w->field())).ok);
  CHECK(check_generator_W(e1.pow(2)).ok);
  const auto bad = check_generator_W(e1);
  CHECK_FALSE(bad.ok);
  CHECK(bad.witness == w->find("x^(1)d_1"));

  const auto a = hbar(3);
  CHECK(check_generator_SH(var(a, "u_{2,2}").pow(2)).ok);
  CHECK(check_generator_SH(ModPoly(a, a->field())).ok);
  const auto fail = check_generator_SH(var(a, "u_{1,1}"));
  CHECK_FALSE(fail.ok);
  REQUIRE(fail.witness);
  CHECK(a->grade(*fail.witness) >= 0);
  CHECK_FALSE(fail.diagnostics.empty());
  CHECK_THROWS_AS(check_generator_SH(e1), ParameterError);
  CHECK_THROWS_AS(check_generator_W(var(a, "u_{1,1}")), ParameterError);
}

TEST_CASE("commutation expansion") {
  std::mt19937 rng(29);
  const auto a = hbar(3);
  const auto field = a->field();
  const auto d1 = Derivation<PrimeField>::partial(a->params(), field, 0);
  const auto u = reduce(a->basis(*a->find("u_{2,2}")).element);
  const auto w = build_W(FieldParams::make(3, {1, 1}));
  const auto top = Derivation<PrimeField>::field(w->params(), field, delta_of(w->params()), 0, 1);
  for (int trial = 0; trial < 5; ++trial) {
    CHECK(commutation_expansion_check(d1, oracle::random_poly(a, 2, 3, rng)));
    CHECK(commutation_expansion_check(u, oracle::random_poly(a, 1 + trial % 2, 3, rng)));
    CHECK(commutation_expansion_check(top, oracle::random_poly(w, 1 + trial % 2, 3, rng)));
  }
}

TEST_CASE("budget") {
  const auto a = hbar(5);
  const auto u = var(a, "u_{4,4}");
  CHECK_THROWS_AS(d_delta(u.pow(4), 1, Budget::with(10, 0)), BudgetExceeded);
  CHECK_NOTHROW(d_delta(u.pow(2), 1, Budget::with(0, 0)));
}

}
