// cartan: command line front end for the Cartan-type invariant library.
//
// Exit status: 0 success / verified, 1 verification failed, 2 usage error,
// 3 budget exceeded.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cartan/arith.hpp"
#include "cartan/invariants.hpp"
#include "cartan/lie_algebra.hpp"
#include "cartan/serialize.hpp"
#include "cartan/symmetric_algebra.hpp"

namespace {

using namespace cartan;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

struct JobSpec {
  std::string algebra = "Hbar";
  std::uint32_t p = 3;
  std::optional<std::size_t> n;
  std::string m = "1,1";
  std::vector<unsigned> powers;
  std::string ring = "modp";
  std::string output = "text";
  std::string store;
  std::string input;
  std::string poly;
  std::string pairs;
  std::string scaling;
  std::size_t max_terms = 0;
  double max_seconds = 0;
  unsigned workers = 1;
};

std::vector<std::uint32_t> parse_list(const std::string& text) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      const auto v = std::stoul(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(static_cast<std::uint32_t>(v));
    } catch (const std::exception&) {
      throw ParameterError("malformed list entry '" + item + "'");
    }
  }
  return out;
}

FieldParams params_of(const JobSpec& spec) {
  auto m = parse_list(spec.m);
  if (spec.n) {
    if (m.size() == 1 && *spec.n > 1) m.assign(*spec.n, m.front());
    if (m.size() != *spec.n) throw ParameterError("--m must list n entries");
  }
  return FieldParams::make(spec.p, m);
}

std::optional<HamiltonianStructure> structure_of(const JobSpec& spec, std::size_t n) {
  if (spec.pairs.empty()) {
    if (n > 2) {
      throw ParameterError("Hamiltonian algebras with n > 2 need an explicit --pairs (e.g. 1:2,3:4)");
    }
    return std::nullopt;
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::stringstream ss(spec.pairs);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ParameterError("malformed pair '" + item + "'");
    pairs.emplace_back(std::stoul(item.substr(0, colon)), std::stoul(item.substr(colon + 1)));
  }
  return HamiltonianStructure::from_pairs(n, pairs);
}

std::optional<BasisScaling> scaling_of(const JobSpec& spec) {
  if (spec.scaling.empty()) return std::nullopt;
  if (spec.scaling == "monomial") return BasisScaling::Monomial;
  if (spec.scaling == "divided") return BasisScaling::DividedPower;
  throw ParameterError("--scaling must be monomial or divided");
}

AlgebraPtr algebra_of(const JobSpec& spec) {
  const auto params = params_of(spec);
  const auto kind = parse_kind(spec.algebra);
  std::optional<HamiltonianStructure> hs;
  if (kind == AlgebraKind::H || kind == AlgebraKind::Hbar) hs = structure_of(spec, params.n());
  return build_algebra(kind, params, hs, scaling_of(spec));
}

HamiltonianPair pair_of(const JobSpec& spec) {
  const auto kind = parse_kind(spec.algebra);
  if (kind != AlgebraKind::H && kind != AlgebraKind::Hbar) {
    throw ParameterError("invariant commands need --algebra H or Hbar");
  }
  const auto params = params_of(spec);
  return build_hamiltonian_pair(params, structure_of(spec, params.n()), scaling_of(spec));
}

Budget budget_of(const JobSpec& spec) { return Budget::with(spec.max_terms, spec.max_seconds); }

std::filesystem::path store_of(const JobSpec& spec) {
  return spec.store.empty() ? default_store() : std::filesystem::path(spec.store);
}

void print_record(const InvariantRecord& rec, const JobSpec& spec) {
  if (spec.output == "structured") {
    std::cout << dump(serialize_record(rec));
    return;
  }
  std::cout << "# " << rec.label << " (" << rec.invariant.algebra()->convention_tag() << ")\n";
  if (rec.null_result) {
    std::cout << "# null result: the construction produced zero\n";
    return;
  }
  std::cout << "# terms: " << rec.term_count << "  lambda: "
            << (rec.lambda ? std::to_string(*rec.lambda) : std::string("mixed"))
            << "  p_power_m: " << rec.p_power_m << "\n";
  std::cout << "generator: " << rec.generator.to_text() << "\n";
  std::cout << "invariant: " << rec.invariant.to_text() << "\n";
}

int cmd_basis(const JobSpec& spec) {
  const auto algebra = algebra_of(spec);
  if (spec.output == "structured") {
    Json doc = algebra_header(*algebra, spec.ring);
    doc["format"] = "cartan-basis";
    doc["dim"] = algebra->dim();
    doc["top_grade"] = algebra->top_grade();
    Json basis = Json::array();
    for (std::size_t i = 0; i < algebra->dim(); ++i) {
      basis.push_back(Json{{"index", i}, {"label", algebra->label(i)}, {"grade", algebra->grade(i)}});
    }
    doc["basis"] = std::move(basis);
    std::cout << dump(doc);
    return kOk;
  }
  std::cout << "# " << algebra->convention_tag() << "\n# dim " << algebra->dim() << ", grades -1.."
            << algebra->top_grade() << "\n";
  for (std::size_t i = 0; i < algebra->dim(); ++i) {
    std::cout << i << "\t" << algebra->label(i) << "\t" << algebra->grade(i) << "\n";
  }
  return kOk;
}

int cmd_bracket_table(const JobSpec& spec) {
  const auto algebra = algebra_of(spec);
  const auto doc = serialize_structure_constants(*algebra);
  if (!spec.store.empty() || std::getenv("CARTAN_STORE")) {
    const auto path = structure_constants_path(store_of(spec), *algebra);
    if (std::filesystem::exists(path)) {
      if (!matches_structure_constants(read_json(path), *algebra)) {
        std::cerr << "cached structure constants at " << path << " do not match\n";
        return kFailed;
      }
    } else {
      write_json(path, doc);
    }
  }
  if (spec.output == "structured") {
    std::cout << dump(doc);
    return kOk;
  }
  const bool integral = spec.ring == "int";
  std::cout << "# " << algebra->convention_tag() << " (" << (integral ? "int" : "modp") << ")\n";
  for (std::size_t i = 0; i < algebra->dim(); ++i) {
    for (std::size_t j = i + 1; j < algebra->dim(); ++j) {
      std::string rhs;
      if (integral) {
        for (const auto& [k, c] : algebra->bracket_int(i, j)) {
          rhs += (rhs.empty() ? "" : " + ") + c.str() + "*" + algebra->label(k);
        }
      } else {
        for (const auto& [k, c] : algebra->bracket_mod(i, j)) {
          rhs += (rhs.empty() ? "" : " + ") + std::to_string(c) + "*" + algebra->label(k);
        }
      }
      if (!rhs.empty()) std::cout << "[" << algebra->label(i) << ", " << algebra->label(j) << "] = " << rhs << "\n";
    }
  }
  return kOk;
}

int cmd_invariant_compute(const JobSpec& spec) {
  if (spec.powers.size() != 1) throw ParameterError("invariant-compute needs exactly one --power");
  const unsigned power = spec.powers.front();
  const auto pair = pair_of(spec);
  const auto budget = budget_of(spec);
  if (spec.ring == "int") {
    const auto delta = compute_delta(power, pair, spec.workers, budget);
    if (spec.output == "structured") {
      std::cout << dump(serialize(delta));
    } else {
      std::cout << "# Delta_" << power << " over the integers (" << delta.size() << " terms)\n"
                << delta.to_text() << "\n";
    }
    return kOk;
  }
  const bool use_store = !spec.store.empty() || std::getenv("CARTAN_STORE");
  if (use_store) {
    if (auto stored = load_record(store_of(spec), pair, record_label(power))) {
      const auto check = verify_record(*stored, pair, spec.workers);
      if (!check.ok) {
        for (const auto& p : check.problems) std::cerr << p << "\n";
        return kFailed;
      }
      print_record(*stored, spec);
      return kOk;
    }
  }
  const auto rec = delta_star(power, pair, spec.workers, budget);
  if (use_store) save_record(store_of(spec), rec);
  print_record(rec, spec);
  return kOk;
}

int cmd_invariant_verify(const JobSpec& spec) {
  InvariantRecord rec = [&] {
    if (!spec.input.empty()) {
      const auto doc = read_json(spec.input);
      const auto algebra = algebra_from_header(doc.at("invariant"));
      const auto& params = algebra->params();
      std::optional<HamiltonianStructure> hs;
      if (algebra->hamiltonian()) hs = *algebra->hamiltonian();
      const auto pair = build_hamiltonian_pair(params, hs, algebra->scaling());
      return deserialize_record(doc, pair);
    }
    if (spec.powers.size() != 1) throw ParameterError("invariant-verify needs --input or one --power");
    auto loaded = load_record(store_of(spec), pair_of(spec), record_label(spec.powers.front()));
    if (!loaded) throw ParameterError("no stored record for power " + std::to_string(spec.powers.front()));
    return *loaded;
  }();
  const auto algebra = rec.invariant.algebra();
  std::optional<HamiltonianStructure> hs;
  if (algebra->hamiltonian()) hs = *algebra->hamiltonian();
  const auto pair = build_hamiltonian_pair(algebra->params(), hs, algebra->scaling());
  // Re-read against the freshly built pair so that algebra pointers agree.
  rec = deserialize_record(serialize_record(rec), pair);
  const auto check = verify_record(rec, pair, spec.workers);
  std::cout << rec.label << ": " << rec.invariant.size() << " terms, invariant: "
            << (check.ok ? "yes" : "no") << "\n";
  for (const auto& p : check.problems) std::cerr << p << "\n";
  return check.ok ? kOk : kFailed;
}

int cmd_generator_check(const JobSpec& spec) {
  const auto algebra = algebra_of(spec);
  const PrimeField field(algebra->params().p);
  ModPoly f(algebra, field);
  if (!spec.input.empty()) {
    f = deserialize_mod(read_json(spec.input), algebra);
  } else if (!spec.poly.empty()) {
    f = parse_polynomial(spec.poly, algebra, field);
  } else {
    throw ParameterError("generator-check needs --poly or --input");
  }
  const auto check = algebra->kind() == AlgebraKind::W ? check_generator_W(f) : check_generator_SH(f);
  if (spec.output == "structured") {
    Json doc{{"format", "cartan-generator-check"},
             {"version", kFormatVersion},
             {"generator", check.ok},
             {"diagnostics", check.diagnostics}};
    if (check.witness) doc["witness"] = algebra->label(*check.witness);
    std::cout << dump(doc);
  } else {
    std::cout << "generator: " << (check.ok ? "yes" : "no") << "\n";
    if (check.witness) {
      std::cout << "witness: " << algebra->label(*check.witness) << " (grade "
                << algebra->grade(*check.witness) << ")\n";
    }
    for (const auto& d : check.diagnostics) std::cout << d << "\n";
  }
  if (check.ok) {
    const auto image = d_delta(f, spec.workers, budget_of(spec));
    const auto report = is_invariant(image);
    if (spec.output != "structured") {
      std::cout << "d_delta(F): " << image.size() << " terms, invariant: "
                << (report.is_invariant ? "yes" : "no") << "\n";
    }
  }
  return check.ok ? kOk : kFailed;
}

std::vector<InvariantRecord> records_for(const JobSpec& spec, const HamiltonianPair& pair) {
  std::vector<unsigned> powers = spec.powers;
  if (powers.empty()) {
    for (unsigned i = 2; i <= 2 * (pair.h->params().p - 2); i += 2) powers.push_back(i);
  }
  const bool use_store = !spec.store.empty() || std::getenv("CARTAN_STORE");
  std::vector<InvariantRecord> records;
  for (auto power : powers) {
    std::optional<InvariantRecord> rec;
    if (use_store) rec = load_record(store_of(spec), pair, record_label(power));
    if (!rec) {
      rec = delta_star(power, pair, spec.workers, budget_of(spec));
      if (use_store) save_record(store_of(spec), *rec);
    }
    records.push_back(std::move(*rec));
  }
  return records;
}

int cmd_independence(const JobSpec& spec) {
  const auto pair = pair_of(spec);
  const auto records = records_for(spec, pair);
  const auto report = independence_report(records);
  if (spec.output == "structured") {
    Json doc{{"format", "cartan-independence"},
             {"version", kFormatVersion},
             {"independent", report.independent},
             {"independent_count", report.independent_count},
             {"trace", report.trace}};
    std::cout << dump(doc);
  } else {
    for (const auto& line : report.trace) std::cout << line << "\n";
    std::cout << (report.independent ? "independent" : "dependent") << " ("
              << report.independent_count << " invariants)\n";
  }
  return report.independent ? kOk : kFailed;
}

int cmd_conjecture(const JobSpec& spec) {
  const auto report = conjecture_sweep(spec.p, budget_of(spec), spec.workers);
  if (spec.output == "structured") {
    Json records = Json::array();
    for (const auto& r : report.records) {
      records.push_back(Json{{"label", r.label},
                             {"null_result", r.null_result},
                             {"term_count", r.term_count},
                             {"p_power_m", r.p_power_m},
                             {"lambda", r.lambda ? Json(*r.lambda) : Json(nullptr)}});
    }
    Json doc{{"format", "cartan-conjecture-sweep"},
             {"version", kFormatVersion},
             {"p", report.p},
             {"index", report.index},
             {"partial", report.partial},
             {"message", report.message},
             {"records", records},
             {"verification_problems", report.verification_problems},
             {"rejected", report.rejected},
             {"matches_index", report.matches_index()}};
    if (report.independence) {
      doc["independent_count"] = report.independence->independent_count;
      doc["trace"] = report.independence->trace;
    }
    std::cout << dump(doc);
  } else {
    std::cout << "# conjecture sweep for H_2, p=" << report.p << " (index " << report.index << ")\n";
    for (const auto& r : report.records) {
      std::cout << r.label << ": ";
      if (r.null_result) {
        std::cout << "null result\n";
      } else {
        std::cout << r.term_count << " terms, lambda "
                  << (r.lambda ? std::to_string(*r.lambda) : std::string("mixed")) << ", p_power_m "
                  << r.p_power_m << ", generator " << r.generator.size() << " terms\n";
      }
    }
    for (const auto& p : report.verification_problems) std::cout << "problem: " << p << "\n";
    for (const auto& r : report.rejected) std::cout << "rejected: " << r << "\n";
    if (report.independence) {
      for (const auto& line : report.independence->trace) std::cout << line << "\n";
      std::cout << "independent invariants: " << report.independence->independent_count
                << ", index: " << report.index
                << (report.matches_index() ? " (match)" : " (no match)") << "\n";
    }
    if (report.partial) std::cout << "partial: " << report.message << "\n";
  }
  if (!report.verification_problems.empty()) return kFailed;
  return report.partial ? kBudget : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symmetric invariants of modular Lie algebras of Cartan type"};
  app.require_subcommand(1);
  JobSpec spec;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--algebra", spec.algebra, "Algebra kind: W, S, H or Hbar")
        ->check(CLI::IsMember({"W", "S", "H", "Hbar"}));
    cmd->add_option("--p", spec.p, "Characteristic (prime)");
    cmd->add_option("--n", spec.n, "Number of variables");
    cmd->add_option("--m", spec.m, "Comma separated exponents m_i");
    cmd->add_option("--power", spec.powers, "Power(s) i of u for the Delta series")->delimiter(',');
    cmd->add_option("--ring", spec.ring, "Coefficient ring")->check(CLI::IsMember({"int", "modp"}));
    cmd->add_option("--output", spec.output, "Output format")
        ->check(CLI::IsMember({"text", "structured"}));
    cmd->add_option("--store", spec.store, "Invariant store directory (default $CARTAN_STORE)");
    cmd->add_option("--input", spec.input, "Input document");
    cmd->add_option("--poly", spec.poly, "Polynomial in canonical text form");
    cmd->add_option("--pairs", spec.pairs, "Hamiltonian pairing, e.g. 1:2,3:4");
    cmd->add_option("--scaling", spec.scaling, "Hamiltonian basis scaling: monomial or divided");
    cmd->add_option("--max-terms", spec.max_terms, "Term budget (0 = unlimited)");
    cmd->add_option("--max-seconds", spec.max_seconds, "Time budget in seconds (0 = unlimited)");
    cmd->add_option("--workers", spec.workers, "Worker threads for d_delta")->check(CLI::PositiveNumber);
  };

  struct Command {
    const char* name;
    const char* help;
    int (*run)(const JobSpec&);
  };
  const std::vector<Command> commands = {
      {"basis", "Print the ordered basis with grades", cmd_basis},
      {"bracket-table", "Print or cache the structure constants", cmd_bracket_table},
      {"invariant-compute", "Compute Delta_i (int ring) or the record for Delta_2 / Delta_i*",
       cmd_invariant_compute},
      {"invariant-verify", "Re-verify a stored invariant record", cmd_invariant_verify},
      {"generator-check", "Check the generator criteria for a polynomial", cmd_generator_check},
      {"independence", "Run the independence bookkeeping on the Delta series", cmd_independence},
      {"conjecture", "Sweep Delta_2, Delta_4*, ..., Delta_{2(p-2)}* for H_2", cmd_conjecture},
  };
  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    add_common(sub);
    subs.emplace_back(sub, &c);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    for (auto& [sub, cmd] : subs) {
      if (sub->parsed()) return cmd->run(spec);
    }
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const ParameterError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const FormatError& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}
