#include <cstdlib>

#include "cartan/serialize.hpp"

namespace cartan {

std::filesystem::path default_store() {
  if (const char* env = std::getenv("CARTAN_STORE"); env && *env) return env;
  return "cartan-store";
}

namespace {

std::string params_key(const FieldParams& params) {
  std::string key = "p" + std::to_string(params.p) + "_n" + std::to_string(params.n()) + "_m";
  for (std::size_t i = 0; i < params.n(); ++i) key += (i ? "-" : "") + std::to_string(params.m[i]);
  return key;
}

}  // namespace

std::filesystem::path record_path(const std::filesystem::path& store, const FieldParams& params,
                                  const std::string& label) {
  return store / params_key(params) / (label + ".json");
}

std::filesystem::path structure_constants_path(const std::filesystem::path& store,
                                               const CartanAlgebra& algebra) {
  std::string name = "structure_" + to_string(algebra.kind());
  if (algebra.hamiltonian()) {
    name += algebra.scaling() == BasisScaling::Monomial ? "_monomial" : "_divided";
  }
  return store / params_key(algebra.params()) / (name + ".json");
}

void save_record(const std::filesystem::path& store, const InvariantRecord& record) {
  write_json(record_path(store, record.invariant.algebra()->params(), record.label),
             serialize_record(record));
}

std::optional<InvariantRecord> load_record(const std::filesystem::path& store,
                                           const HamiltonianPair& pair, const std::string& label) {
  const auto path = record_path(store, pair.h->params(), label);
  if (!std::filesystem::exists(path)) return std::nullopt;
  return deserialize_record(read_json(path), pair);
}

}  // namespace cartan
