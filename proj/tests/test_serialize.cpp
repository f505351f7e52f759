#include <doctest.h>

#include <filesystem>
#include <random>

#include "cartan/serialize.hpp"
#include "oracles.hpp"

using namespace cartan;

namespace {

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("cartan-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE("serialize") {

TEST_CASE("polynomial round trip") {
  std::mt19937 rng(13);
  const auto a = build_algebra(AlgebraKind::Hbar, FieldParams::make(5, {1, 1}));
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = oracle::random_poly(a, 1 + trial % 4, 6, rng);
    CHECK(deserialize_mod(serialize(f), a) == f);
    CHECK(deserialize_mod(Json::parse(dump(serialize(f))), a) == f);
  }
  const ModPoly zero(a, a->field());
  CHECK(serialize(zero)["terms"].empty());
  CHECK(deserialize_mod(serialize(zero), a).is_zero());

  IntPoly big(a, IntegerRing{});
  big.add_term({{3, 2}}, BigInt("123456789012345678901234567890"));
  big.add_term({{1, 1}}, BigInt(-7));
  CHECK(deserialize_int(serialize(big), a) == big);
}

TEST_CASE("serialization is canonical") {
  const auto a = build_algebra(AlgebraKind::H, FieldParams::make(3, {1, 1}));
  const auto f = parse_polynomial("u_{1,1}^2 + 2*u_{0,1}*u_{2,1}", a, a->field());
  const auto g = parse_polynomial("2*u_{2,1}*u_{0,1} + u_{1,1}^2", a, a->field());
  CHECK(dump(serialize(f)) == dump(serialize(g)));
  const auto doc = serialize(f);
  CHECK(doc["format"] == "cartan-sympoly");
  CHECK(doc["version"] == kFormatVersion);
  CHECK(doc["convention"] == a->convention_tag());
}

TEST_CASE("malformed documents are rejected") {
  const auto a = build_algebra(AlgebraKind::H, FieldParams::make(3, {1, 1}));
  const auto other = build_algebra(AlgebraKind::H, FieldParams::make(5, {1, 1}));
  const auto f = parse_polynomial("u_{1,1}^2", a, a->field());
  auto doc = serialize(f);
  CHECK_THROWS_AS(deserialize_mod(doc, other), FormatError);
  CHECK_THROWS_AS(deserialize_int(doc, a), FormatError);
  auto versioned = doc;
  versioned["version"] = 99;
  CHECK_THROWS_AS(deserialize_mod(versioned, a), FormatError);
  auto unknown = doc;
  unknown["terms"][0]["monomial"][0][0] = "u_{7,7}";
  CHECK_THROWS_AS(deserialize_mod(unknown, a), FormatError);
  auto coefficient = doc;
  coefficient["terms"][0]["coefficient"] = "abc";
  CHECK_THROWS_AS(deserialize_mod(coefficient, a), FormatError);
  CHECK_THROWS_AS(read_json("/nonexistent/cartan.json"), FormatError);
}

TEST_CASE("header rebuilds the algebra") {
  const auto a = build_H(FieldParams::make(3, {1, 1}), HamiltonianStructure::standard(2),
                         BasisScaling::DividedPower);
  const auto rebuilt = algebra_from_header(algebra_header(*a, "modp"));
  CHECK(rebuilt->convention_tag() == a->convention_tag());
  CHECK(rebuilt->dim() == a->dim());
}

TEST_CASE("records and store") {
  const auto pair = build_hamiltonian_pair(FieldParams::make(5, {1, 1}));
  const auto rec = delta_star(4, pair);
  const auto back = deserialize_record(serialize_record(rec), pair);
  CHECK(back.invariant == rec.invariant);
  CHECK(back.generator == rec.generator);
  CHECK(back.lambda == rec.lambda);
  CHECK(back.term_count == rec.term_count);
  CHECK(dump(serialize_record(back)) == dump(serialize_record(rec)));

  const auto store = scratch_dir("store");
  CHECK_FALSE(load_record(store, pair, rec.label));
  save_record(store, rec);
  CHECK(std::filesystem::exists(record_path(store, pair.h->params(), "Delta_4_star")));
  const auto loaded = load_record(store, pair, rec.label);
  REQUIRE(loaded);
  CHECK(loaded->invariant == rec.invariant);
  CHECK(verify_record(*loaded, pair).ok);
  std::filesystem::remove_all(store);
}

TEST_CASE("structure constants document") {
  const auto a = build_algebra(AlgebraKind::Hbar, FieldParams::make(3, {1, 1}));
  const auto doc = serialize_structure_constants(*a);
  CHECK(matches_structure_constants(doc, *a));
  CHECK(matches_structure_constants(Json::parse(dump(doc)), *a));
  auto tampered = doc;
  tampered["constants"][0][3] = "5";
  CHECK_FALSE(matches_structure_constants(tampered, *a));
  const auto b = build_algebra(AlgebraKind::H, FieldParams::make(3, {1, 1}));
  CHECK_FALSE(matches_structure_constants(doc, *b));
}

}
