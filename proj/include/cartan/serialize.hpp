// Canonical structured documents for symmetric algebra elements, invariant
// records and structure-constant tables.
#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "cartan/invariants.hpp"
#include "cartan/lie_algebra.hpp"
#include "cartan/symmetric_algebra.hpp"

namespace cartan {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

class FormatError : public Error {
 public:
  using Error::Error;
};

/// {kind, p, n, m, ring, convention, version} for an algebra.
Json algebra_header(const CartanAlgebra& algebra, const std::string& ring);
/// Throws FormatError unless the header describes this algebra.
void check_header(const Json& doc, const CartanAlgebra& algebra);
/// Rebuilds the algebra named in a header.
AlgebraPtr algebra_from_header(const Json& doc);

Json serialize(const IntPoly& f);
Json serialize(const ModPoly& f);
IntPoly deserialize_int(const Json& doc, AlgebraPtr algebra);
ModPoly deserialize_mod(const Json& doc, AlgebraPtr algebra);

Json serialize_record(const InvariantRecord& record);
InvariantRecord deserialize_record(const Json& doc, const HamiltonianPair& pair);

Json serialize_structure_constants(const CartanAlgebra& algebra);
/// True when the document lists exactly the algebra's integral constants.
bool matches_structure_constants(const Json& doc, const CartanAlgebra& algebra);

/// Stable text form of a document (two-space indent, trailing newline).
std::string dump(const Json& doc);
Json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const Json& doc);

// Invariant store: one file per record, keyed by (p, n, m, label).

/// $CARTAN_STORE, or ./cartan-store.
std::filesystem::path default_store();
std::filesystem::path record_path(const std::filesystem::path& store, const FieldParams& params,
                                  const std::string& label);
std::filesystem::path structure_constants_path(const std::filesystem::path& store,
                                               const CartanAlgebra& algebra);
void save_record(const std::filesystem::path& store, const InvariantRecord& record);
std::optional<InvariantRecord> load_record(const std::filesystem::path& store,
                                           const HamiltonianPair& pair, const std::string& label);

}  // namespace cartan
