#include "cartan/serialize.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

namespace cartan {

namespace {

std::string scaling_name(BasisScaling s) {
  return s == BasisScaling::Monomial ? "monomial" : "divided";
}

template <class Ring>
Json serialize_impl(const SymPolynomial<Ring>& f) {
  Json doc = algebra_header(*f.algebra(), Ring::name());
  doc["format"] = "cartan-sympoly";
  struct Entry {
    std::uint64_t degree;
    std::vector<std::pair<std::string, std::uint32_t>> factors;
    Json coefficient;
  };
  std::vector<Entry> entries;
  entries.reserve(f.size());
  for (const auto& [m, c] : f.terms()) {
    Entry e{total_degree(m), {}, {}};
    for (auto [k, exp] : m) e.factors.emplace_back(f.algebra()->label(k), exp);
    std::sort(e.factors.begin(), e.factors.end());
    if constexpr (Ring::is_integral()) {
      if (c >= std::numeric_limits<std::int64_t>::min() && c <= std::numeric_limits<std::int64_t>::max()) {
        e.coefficient = c.template convert_to<std::int64_t>();
      } else {
        e.coefficient = c.str();
      }
    } else {
      e.coefficient = c;
    }
    entries.push_back(std::move(e));
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    return a.factors < b.factors;
  });
  Json terms = Json::array();
  for (auto& e : entries) {
    Json mono = Json::array();
    for (auto& [label, exp] : e.factors) mono.push_back(Json::array({label, exp}));
    terms.push_back(Json{{"monomial", std::move(mono)}, {"coefficient", std::move(e.coefficient)}});
  }
  doc["terms"] = std::move(terms);
  return doc;
}

BigInt coefficient_of(const Json& value) {
  if (value.is_number_integer()) return BigInt(value.get<std::int64_t>());
  if (value.is_string()) {
    try {
      return BigInt(value.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw FormatError("malformed coefficient " + value.dump());
}

template <class Ring>
SymPolynomial<Ring> deserialize_impl(const Json& doc, AlgebraPtr algebra, Ring ring) {
  check_header(doc, *algebra);
  if (doc.value("ring", "") != Ring::name()) {
    throw FormatError("ring mismatch: document has '" + doc.value("ring", "") + "'");
  }
  if (!doc.contains("terms") || !doc["terms"].is_array()) throw FormatError("missing term list");
  SymPolynomial<Ring> out(algebra, ring);
  for (const auto& term : doc["terms"]) {
    if (!term.contains("monomial") || !term.contains("coefficient")) {
      throw FormatError("malformed term " + term.dump());
    }
    Monomial mono;
    for (const auto& factor : term["monomial"]) {
      if (!factor.is_array() || factor.size() != 2 || !factor[0].is_string() ||
          !factor[1].is_number_unsigned()) {
        throw FormatError("malformed factor " + factor.dump());
      }
      const auto label = factor[0].get<std::string>();
      const auto index = algebra->find(label);
      if (!index) throw FormatError("unknown basis label '" + label + "'");
      const auto exp = factor[1].get<std::uint32_t>();
      if (exp == 0) throw FormatError("zero exponent for '" + label + "'");
      mono = multiply_monomials(mono, Monomial{{*index, exp}});
    }
    out.add_term(mono, ring.from_big(coefficient_of(term["coefficient"])));
  }
  return out;
}

}  // namespace

Json algebra_header(const CartanAlgebra& algebra, const std::string& ring) {
  const auto& params = algebra.params();
  Json doc;
  doc["format"] = "";
  doc["version"] = kFormatVersion;
  doc["kind"] = to_string(algebra.kind());
  doc["p"] = params.p;
  doc["n"] = params.n();
  doc["m"] = params.m;
  doc["ring"] = ring;
  doc["convention"] = algebra.convention_tag();
  return doc;
}

void check_header(const Json& doc, const CartanAlgebra& algebra) {
  if (!doc.is_object()) throw FormatError("document is not an object");
  if (doc.value("version", -1) != kFormatVersion) {
    throw FormatError("unsupported format version " + doc.value("version", Json(-1)).dump());
  }
  const auto& params = algebra.params();
  if (doc.value("kind", "") != to_string(algebra.kind()) || doc.value("p", 0u) != params.p ||
      doc.value("m", std::vector<std::uint32_t>{}) != params.m ||
      doc.value("convention", "") != algebra.convention_tag()) {
    throw FormatError("document header does not match algebra " + algebra.convention_tag());
  }
}

AlgebraPtr algebra_from_header(const Json& doc) {
  if (!doc.is_object() || doc.value("version", -1) != kFormatVersion) {
    throw FormatError("unsupported or missing format version");
  }
  try {
    const auto kind = parse_kind(doc.at("kind").get<std::string>());
    const auto params = FieldParams::make(doc.at("p").get<std::uint32_t>(),
                                          doc.at("m").get<std::vector<std::uint32_t>>());
    std::optional<BasisScaling> scaling;
    const auto convention = doc.value("convention", "");
    if (convention.find("scale=monomial") != std::string::npos) scaling = BasisScaling::Monomial;
    if (convention.find("scale=divided") != std::string::npos) scaling = BasisScaling::DividedPower;
    auto algebra = build_algebra(kind, params, std::nullopt, scaling);
    check_header(doc, *algebra);
    return algebra;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed header: ") + e.what());
  }
}

Json serialize(const IntPoly& f) { return serialize_impl(f); }
Json serialize(const ModPoly& f) { return serialize_impl(f); }

IntPoly deserialize_int(const Json& doc, AlgebraPtr algebra) {
  return deserialize_impl(doc, std::move(algebra), IntegerRing{});
}

ModPoly deserialize_mod(const Json& doc, AlgebraPtr algebra) {
  const PrimeField field(algebra->params().p);
  return deserialize_impl(doc, std::move(algebra), field);
}

Json serialize_record(const InvariantRecord& record) {
  Json doc;
  doc["format"] = "cartan-invariant-record";
  doc["version"] = kFormatVersion;
  doc["label"] = record.label;
  doc["power"] = record.power;
  doc["null_result"] = record.null_result;
  doc["term_count"] = record.term_count;
  doc["p_power_m"] = record.p_power_m;
  doc["lambda"] = record.lambda ? Json(*record.lambda) : Json(nullptr);
  doc["generator"] = serialize(record.generator);
  doc["invariant"] = serialize(record.invariant);
  return doc;
}

InvariantRecord deserialize_record(const Json& doc, const HamiltonianPair& pair) {
  if (!doc.is_object() || doc.value("format", "") != "cartan-invariant-record") {
    throw FormatError("not an invariant record");
  }
  if (doc.value("version", -1) != kFormatVersion) throw FormatError("unsupported record version");
  try {
    const auto& gen_doc = doc.at("generator");
    const auto gen_algebra = gen_doc.value("kind", "") == "Hbar" ? pair.hbar : pair.h;
    InvariantRecord record{doc.at("label").get<std::string>(),
                           doc.at("power").get<unsigned>(),
                           deserialize_mod(doc.at("invariant"), pair.h),
                           deserialize_mod(gen_doc, gen_algebra),
                           std::nullopt,
                           doc.at("term_count").get<std::size_t>(),
                           doc.at("p_power_m").get<unsigned>(),
                           doc.at("null_result").get<bool>()};
    if (!doc.at("lambda").is_null()) record.lambda = doc.at("lambda").get<std::int64_t>();
    return record;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed record: ") + e.what());
  }
}

Json serialize_structure_constants(const CartanAlgebra& algebra) {
  Json doc = algebra_header(algebra, "int");
  doc["format"] = "cartan-structure-constants";
  doc["dim"] = algebra.dim();
  doc["integral_exact"] = algebra.integral_exact();
  Json basis = Json::array();
  for (std::size_t i = 0; i < algebra.dim(); ++i) {
    basis.push_back(Json{{"label", algebra.label(i)}, {"grade", algebra.grade(i)}});
  }
  doc["basis"] = std::move(basis);
  Json constants = Json::array();
  for (std::uint32_t i = 0; i < algebra.dim(); ++i) {
    for (std::uint32_t j = i + 1; j < algebra.dim(); ++j) {
      for (const auto& [k, c] : algebra.bracket_int(i, j)) {
        constants.push_back(Json::array({i, j, k, c.str()}));
      }
    }
  }
  doc["constants"] = std::move(constants);
  return doc;
}

bool matches_structure_constants(const Json& doc, const CartanAlgebra& algebra) {
  try {
    check_header(doc, algebra);
  } catch (const FormatError&) {
    return false;
  }
  return doc == serialize_structure_constants(algebra);
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const Json& doc) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << dump(doc);
}

}  // namespace cartan
