#include <doctest.h>

#include "cartan/lie_algebra.hpp"
#include "oracles.hpp"

using namespace cartan;

namespace {

FieldParams params(std::uint32_t p, std::vector<std::uint32_t> m) { return FieldParams::make(p, m); }

AlgebraPtr h_divided(std::uint32_t p) {
  return build_H(params(p, {1, 1}), HamiltonianStructure::standard(2), BasisScaling::DividedPower);
}

std::vector<std::uint32_t> bracket_vector(const CartanAlgebra& a, std::size_t i, std::size_t j) {
  std::vector<std::uint32_t> v(a.dim(), 0);
  for (const auto& [k, c] : a.bracket_mod(i, j)) v[k] = c;
  return v;
}

/// Σ v_k M(b_k) mod p.
oracle::Matrix combination_matrix(const CartanAlgebra& a, const std::vector<std::uint32_t>& v) {
  const auto p = a.params().p;
  const std::size_t n = a.params().dp_dimension();
  oracle::Matrix out(n, std::vector<std::uint32_t>(n, 0));
  for (std::size_t k = 0; k < a.dim(); ++k) {
    if (!v[k]) continue;
    const auto m = oracle::operator_matrix(reduce(a.basis(k).element));
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) out[r][c] = (out[r][c] + v[k] * m[r][c]) % p;
    }
  }
  return out;
}

void check_jacobi(const CartanAlgebra& a) {
  const PrimeField f(a.params().p);
  const std::size_t d = a.dim();
  auto br = [&](const std::vector<std::uint32_t>& x, std::size_t j) {
    std::vector<std::uint32_t> out(d, 0);
    for (std::size_t i = 0; i < d; ++i) {
      if (!x[i]) continue;
      for (const auto& [k, c] : a.bracket_mod(i, j)) out[k] = f.add(out[k], f.mul(x[i], c));
    }
    return out;
  };
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      for (std::size_t k = j + 1; k < d; ++k) {
        // [[i,j],k] + [[j,k],i] + [[k,i],j]
        auto s = br(bracket_vector(a, i, j), k);
        const auto t = br(bracket_vector(a, j, k), i);
        const auto u = br(bracket_vector(a, k, i), j);
        for (std::size_t q = 0; q < d; ++q) s[q] = f.add(s[q], f.add(t[q], u[q]));
        for (auto x : s) REQUIRE(x == 0);
      }
    }
  }
}

}  // namespace

TEST_SUITE("lie_algebra") {

TEST_CASE("dimensions") {
  CHECK(build_W(params(3, {1}))->dim() == 3);
  CHECK(build_W(params(3, {1, 1}))->dim() == 18);
  CHECK(build_W(params(2, {2, 1}))->dim() == 16);
  CHECK(build_S(params(3, {1, 1}))->dim() == 8);
  CHECK(build_S(params(2, {1, 1, 1}))->dim() == 14);
  CHECK(build_algebra(AlgebraKind::H, params(3, {1, 1}))->dim() == 7);
  CHECK(build_algebra(AlgebraKind::Hbar, params(3, {1, 1}))->dim() == 8);
  CHECK(build_algebra(AlgebraKind::H, params(5, {1, 1}))->dim() == 23);
  CHECK(build_algebra(AlgebraKind::Hbar, params(5, {1, 1}))->dim() == 24);
  CHECK(build_H(params(3, {2, 1}), HamiltonianStructure::standard(2))->dim() == 25);
}

TEST_CASE("labels and grades") {
  const auto w = build_W(params(3, {1, 1}));
  const auto idx = w->find("x^(1,0)d_2");
  REQUIRE(idx);
  CHECK(w->grade(*idx) == 0);
  CHECK(w->top_grade() == 3);
  CHECK(w->grade(0) == -1);

  const auto h = build_algebra(AlgebraKind::H, params(5, {1, 1}));
  CHECK(h->top_grade() == 5);
  CHECK(h->find("u_{4,3}"));
  CHECK_FALSE(h->find("u_{4,4}"));
  const auto hbar = build_algebra(AlgebraKind::Hbar, params(5, {1, 1}));
  CHECK(hbar->label(hbar->dim() - 1) == "u_{4,4}");
  CHECK(hbar->top_grade() == 6);

  const auto hd = h_divided(3);
  CHECK(hd->find("D(1,1)"));
  CHECK(hd->convention_tag() == "H;p=3;m=1,1;pi=(1 2);a=+-;scale=divided");
}

TEST_CASE("worked bracket in H_2 at p=3") {
  // [D(1,1), D(2,0)] = -2 D(2,0) = D(2,0) mod 3; the coefficient is read off
  // the commutator of the operator matrices on K_2(1,1).
  const auto h = h_divided(3);
  const auto a = *h->find("D(1,1)");
  const auto b = *h->find("D(2,0)");
  const auto ma = oracle::operator_matrix(reduce(h->basis(a).element));
  const auto mb = oracle::operator_matrix(reduce(h->basis(b).element));
  const auto comm = oracle::commutator(ma, mb, 3);
  std::vector<std::uint32_t> expected(h->dim(), 0);
  expected[b] = 1;
  CHECK(comm == combination_matrix(*h, expected));
  CHECK(bracket_vector(*h, a, b) == expected);
  for (const auto& [k, c] : h->bracket_int(a, b)) {
    CHECK(k == b);
    CHECK(c == -2);
  }
}

TEST_CASE("partials inside H_2") {
  const auto h = h_divided(3);
  const auto& d1 = h->partial_coordinates(0);
  REQUIRE(d1.size() == 1);
  CHECK(h->label(d1[0].first) == "D(0,1)");
  CHECK(d1[0].second == -1);
  const auto& d2 = h->partial_coordinates(1);
  REQUIRE(d2.size() == 1);
  CHECK(h->label(d2[0].first) == "D(1,0)");
  CHECK(d2[0].second == 1);
}

TEST_CASE("structure constants match operator commutators") {
  for (const auto& a : {h_divided(3), build_algebra(AlgebraKind::Hbar, params(3, {1, 1})),
                        build_W(params(3, {1})), build_S(params(3, {1, 1}))}) {
    for (std::size_t i = 0; i < a->dim(); ++i) {
      const auto mi = oracle::operator_matrix(reduce(a->basis(i).element));
      for (std::size_t j = i + 1; j < a->dim(); ++j) {
        const auto mj = oracle::operator_matrix(reduce(a->basis(j).element));
        REQUIRE(oracle::commutator(mi, mj, a->params().p) ==
                combination_matrix(*a, bracket_vector(*a, i, j)));
      }
    }
  }
}

TEST_CASE("Jacobi, antisymmetry and grading") {
  for (const auto& a : {build_W(params(3, {1, 1})), build_S(params(3, {1, 1})),
                        build_S(params(2, {1, 1, 1})),
                        build_algebra(AlgebraKind::H, params(5, {1, 1})),
                        build_algebra(AlgebraKind::Hbar, params(3, {1, 1})),
                        build_H(params(3, {2, 1}), HamiltonianStructure::standard(2))}) {
    CAPTURE(a->convention_tag());
    check_jacobi(*a);
    const PrimeField f(a->params().p);
    for (std::size_t i = 0; i < a->dim(); ++i) {
      CHECK(a->bracket_mod(i, i).empty());
      for (std::size_t j = 0; j < a->dim(); ++j) {
        const auto ij = bracket_vector(*a, i, j);
        const auto ji = bracket_vector(*a, j, i);
        for (std::size_t k = 0; k < a->dim(); ++k) {
          REQUIRE(ij[k] == f.neg(ji[k]));
          if (ij[k]) REQUIRE(a->grade(k) == a->grade(i) + a->grade(j));
        }
        for (const auto& [k, c] : a->bracket_int(i, j)) {
          REQUIRE(reduce_mod(c, a->params().p) == ij[k]);
        }
      }
    }
  }
}

TEST_CASE("integral structure constants are exact for W, H and Hbar") {
  CHECK(build_W(params(3, {1, 1}))->integral_exact());
  CHECK(build_algebra(AlgebraKind::H, params(5, {1, 1}))->integral_exact());
  CHECK(build_algebra(AlgebraKind::Hbar, params(5, {1, 1}))->integral_exact());
}

TEST_CASE("filtration") {
  const auto h = build_algebra(AlgebraKind::Hbar, params(3, {1, 1}));
  CHECK(h->filtration_basis(-1).size() == h->dim());
  CHECK(h->filtration_basis(0).size() == h->dim() - 2);
  CHECK(h->filtration_basis(h->top_grade()).size() == 1);
  CHECK(h->filtration_basis(h->top_grade() + 1).empty());
  CHECK_THROWS_AS(h->filtration_basis(h->top_grade() + 2), ParameterError);
  CHECK_THROWS_AS(h->filtration_basis(-2), ParameterError);
}

TEST_CASE("decomposition") {
  const auto h = h_divided(3);
  const auto field = h->field();
  // x^(1,0)∂_1 has nonzero divergence, so it is not Hamiltonian.
  const auto d = Derivation<PrimeField>::field(h->params(), field, {1, 0}, 0, 1);
  CHECK_THROWS_AS(h->decompose(d), NotInSpanError);
  const auto idx = *h->find("D(2,1)");
  const auto coords = h->decompose(reduce(h->basis(idx).element).scaled(2));
  for (std::size_t k = 0; k < h->dim(); ++k) CHECK(coords[k] == (k == idx ? 2u : 0u));
}

TEST_CASE("Hamiltonian structures") {
  CHECK_NOTHROW(HamiltonianStructure::from_pairs(4, {{1, 2}, {3, 4}}));
  CHECK_THROWS_AS(HamiltonianStructure::from_pairs(4, {{1, 2}}), ParameterError);
  CHECK_THROWS_AS(HamiltonianStructure::from_pairs(2, {{1, 1}}), ParameterError);
  CHECK_THROWS_AS(HamiltonianStructure::from_pairs(3, {{1, 2}}), ParameterError);
  const auto h4 = build_H(params(2, {1, 1, 1, 1}), HamiltonianStructure::from_pairs(4, {{1, 3}, {2, 4}}));
  CHECK(h4->dim() == 14);
  check_jacobi(*h4);
}

TEST_CASE("invalid requests") {
  CHECK_THROWS_AS(build_algebra(AlgebraKind::S, params(3, {1})), ParameterError);
  CHECK_THROWS_AS(build_H(params(3, {2, 1}), HamiltonianStructure::standard(2), BasisScaling::Monomial),
                  ParameterError);
  CHECK_THROWS_AS(parse_kind("X"), ParameterError);
}

}
