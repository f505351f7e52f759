#include "cartan/invariants.hpp"

#include <functional>
#include <map>

namespace cartan {

HamiltonianPair build_hamiltonian_pair(const FieldParams& params,
                                       std::optional<HamiltonianStructure> hs,
                                       std::optional<BasisScaling> scaling) {
  HamiltonianPair pair;
  pair.h = build_algebra(AlgebraKind::H, params, hs, scaling);
  pair.hbar = build_algebra(AlgebraKind::Hbar, params, hs, scaling);
  if (pair.hbar->dim() != pair.h->dim() + 1) throw Error("H and Hbar dimensions are inconsistent");
  for (std::uint32_t k = 0; k < pair.h->dim(); ++k) {
    if (pair.h->label(k) != pair.hbar->label(k)) throw Error("H is not a prefix of Hbar");
  }
  pair.u_index = static_cast<std::uint32_t>(pair.h->dim());
  if (!(pair.hbar->basis(pair.u_index).index == delta_of(params))) {
    throw Error("last basis element of Hbar is not D(delta)");
  }
  return pair;
}

IntPoly compute_delta(unsigned power, const HamiltonianPair& pair, unsigned workers,
                      const Budget& budget) {
  if (power < 2) throw ParameterError("power must be at least 2");
  IntPoly u_power(pair.hbar, IntegerRing{});
  u_power.add_term({{pair.u_index, power}}, 1);
  return d_delta(u_power, workers, budget);
}

PhiResult phi_normalize(const IntPoly& f) {
  if (f.is_zero()) throw ParameterError("phi_normalize of zero");
  const std::uint32_t p = f.algebra()->params().p;
  BigInt g = 0;
  for (const auto& [m, c] : f.terms()) g = boost::multiprecision::gcd(g, c);
  const unsigned m = p_adic_valuation(g, p);
  BigInt divisor = boost::multiprecision::pow(BigInt(p), m);
  const PrimeField field(p);
  ModPoly out(f.algebra(), field);
  for (const auto& [mono, c] : f.terms()) out.add_term(mono, field.from_big(c / divisor));
  return {std::move(out), m};
}

std::string record_label(unsigned power) {
  return power == 2 ? "Delta_2" : "Delta_" + std::to_string(power) + "_star";
}

std::int64_t lambda_value(const CartanAlgebra& algebra, const Monomial& m) {
  if (algebra.kind() != AlgebraKind::H && algebra.kind() != AlgebraKind::Hbar) {
    throw ParameterError("lambda is defined on Hamiltonian algebras");
  }
  const auto top = static_cast<std::int64_t>(delta_of(algebra.params()).degree());
  std::int64_t lambda = 0;
  for (auto [k, e] : m) {
    lambda += (top - static_cast<std::int64_t>(algebra.basis(k).index.degree())) * e;
  }
  return lambda;
}

std::optional<std::int64_t> lambda_homogeneity(const ModPoly& f) {
  std::optional<std::int64_t> common;
  for (const auto& [m, c] : f.terms()) {
    const auto l = lambda_value(*f.algebra(), m);
    if (common && *common != l) return std::nullopt;
    common = l;
  }
  return common;
}

bool is_pth_power(const ModPoly& f) {
  const auto p = f.algebra()->params().p;
  for (const auto& [m, c] : f.terms()) {
    for (auto [k, e] : m) {
      if (e % p != 0) return false;
    }
  }
  return true;
}

InvariantRecord delta_star(unsigned power, const HamiltonianPair& pair, unsigned workers,
                           const Budget& budget) {
  if (power < 2 || power % 2 != 0) throw ParameterError("power must be even and at least 2");
  const PrimeField field(pair.h->params().p);
  const IntPoly delta = compute_delta(power, pair, workers, budget);

  InvariantRecord record{record_label(power), power, ModPoly(pair.h, field), ModPoly(pair.h, field),
                         std::nullopt, 0, 0, false};
  if (power == 2) {
    const ModPoly reduced = reduce(delta);
    record.invariant = restrict_u_zero(reduced, pair);
    if (record.invariant.size() != reduced.size()) {
      throw Error("Delta_2 unexpectedly involves u");
    }
    ModPoly u_squared(pair.hbar, field);
    u_squared.add_term({{pair.u_index, 2}}, field.one());
    record.generator = u_squared;
  } else {
    const IntPoly restricted = restrict_u_zero(delta, pair);
    if (restricted.is_zero()) {
      record.null_result = true;
      return record;
    }
    auto phi = phi_normalize(restricted);
    record.p_power_m = phi.p_power;
    record.generator = std::move(phi.value);
    record.invariant = d_delta(record.generator, workers, budget);
  }
  if (record.invariant.is_zero()) {
    record.null_result = true;
    return record;
  }
  record.term_count = record.invariant.size();
  record.lambda = lambda_homogeneity(record.invariant);
  const auto report = is_invariant(record.invariant);
  if (!report.is_invariant) {
    const auto what = record.label + " is not invariant: ad(" +
                      pair.h->label(report.witness->first) + ") does not annihilate it";
    throw NotInvariantError(what, std::move(record));
  }
  return record;
}

RecordCheck verify_record(const InvariantRecord& record, const HamiltonianPair& pair,
                          unsigned workers) {
  RecordCheck out;
  auto fail = [&](std::string what) {
    out.ok = false;
    out.problems.push_back(record.label + ": " + std::move(what));
  };
  if (record.null_result) {
    if (!record.invariant.is_zero()) fail("null record carries a nonzero invariant");
    return out;
  }
  if (record.invariant.algebra() != pair.h) {
    fail("invariant is not an element of S(H)");
    return out;
  }
  const auto report = is_invariant(record.invariant);
  if (!report.is_invariant) fail("ad(" + pair.h->label(report.witness->first) + ") is nonzero");

  ModPoly image = d_delta(record.generator, workers);
  if (image.algebra() == pair.hbar) {
    const auto restricted = restrict_u_zero(image, pair);
    if (restricted.size() != image.size()) fail("d_delta(generator) involves u");
    image = restricted;
  }
  if (!(image == record.invariant)) fail("invariant differs from d_delta(generator)");
  if (record.term_count != record.invariant.size()) fail("term count mismatch");
  const auto lambda = lambda_homogeneity(record.invariant);
  if (lambda != record.lambda) fail("stored lambda does not match");
  const auto generator_lambda = lambda_homogeneity(record.generator);
  const auto top = static_cast<std::int64_t>(delta_of(pair.h->params()).degree());
  if (!lambda || !generator_lambda || *lambda != *generator_lambda + top) {
    fail("lambda(invariant) != lambda(generator) + |delta|");
  }
  if (is_pth_power(record.invariant)) fail("invariant is a p-th power");
  return out;
}

namespace {

// Sparse F_p row reduction: is target in the span of rows?
bool in_span(const std::vector<ModPoly>& rows, const ModPoly& target) {
  const PrimeField& f = target.ring();
  using Row = std::map<Monomial, std::uint32_t, MonomialLess>;
  std::vector<std::pair<Monomial, Row>> echelon;  // (pivot, row)
  auto reduce_row = [&](Row r) {
    for (const auto& [pivot, row] : echelon) {
      auto it = r.find(pivot);
      if (it == r.end()) continue;
      const auto factor = f.mul(it->second, f.inv(row.at(pivot)));
      for (const auto& [m, c] : row) {
        auto& slot = r[m];
        slot = f.sub(slot, f.mul(factor, c));
        if (slot == 0) r.erase(m);
      }
    }
    return r;
  };
  for (const auto& poly : rows) {
    Row r(poly.terms().begin(), poly.terms().end());
    r = reduce_row(std::move(r));
    if (!r.empty()) {
      auto pivot = r.begin()->first;
      echelon.emplace_back(std::move(pivot), std::move(r));
    }
  }
  Row t(target.terms().begin(), target.terms().end());
  return reduce_row(std::move(t)).empty();
}

void enumerate_products(const std::vector<std::uint64_t>& degrees, std::uint64_t target,
                        std::size_t start, std::vector<unsigned>& current,
                        std::vector<std::vector<unsigned>>& out) {
  if (target == 0) {
    out.push_back(current);
    return;
  }
  for (std::size_t j = start; j < degrees.size(); ++j) {
    if (degrees[j] == 0 || degrees[j] > target) continue;
    ++current[j];
    enumerate_products(degrees, target - degrees[j], j, current, out);
    --current[j];
  }
}

}  // namespace

IndependenceReport independence_report(const std::vector<InvariantRecord>& records) {
  IndependenceReport report;
  std::vector<const InvariantRecord*> accepted;
  std::vector<std::uint64_t> degrees;
  std::vector<std::int64_t> lambdas;
  for (const auto& rec : records) {
    if (rec.null_result) continue;
    if (!accepted.empty() && rec.invariant.algebra() != accepted.front()->invariant.algebra()) {
      throw ParameterError("records live over different algebras");
    }
    const auto degree = rec.invariant.homogeneous_degree();
    const auto lambda = lambda_homogeneity(rec.invariant);
    if (!degree || !lambda) throw ParameterError(rec.label + " is not homogeneous in degree and lambda");

    IndependenceStep step;
    step.label = rec.label;
    step.degree = *degree;
    step.lambda = *lambda;
    report.trace.push_back(rec.label + ": degree " + std::to_string(*degree) + ", lambda " +
                           std::to_string(*lambda));

    std::vector<std::vector<unsigned>> products;
    std::vector<unsigned> current(accepted.size(), 0);
    enumerate_products(degrees, *degree, 0, current, products);
    std::vector<ModPoly> matches;
    for (const auto& exps : products) {
      IndependenceCandidate cand;
      cand.exponents = exps;
      cand.degree = *degree;
      for (std::size_t j = 0; j < exps.size(); ++j) {
        if (!exps[j]) continue;
        if (!cand.description.empty()) cand.description += "*";
        cand.description += accepted[j]->label + (exps[j] > 1 ? "^" + std::to_string(exps[j]) : "");
        cand.lambda += lambdas[j] * exps[j];
      }
      const bool match = cand.lambda == *lambda;
      report.trace.push_back("  candidate " + cand.description + ": lambda " +
                             std::to_string(cand.lambda) +
                             (match ? " (matches)" : " (differs from " + std::to_string(*lambda) + ")"));
      if (match) {
        ModPoly product = ModPoly::constant(rec.invariant.algebra(), rec.invariant.ring(), 1);
        for (std::size_t j = 0; j < exps.size(); ++j) {
          if (exps[j]) product = product * accepted[j]->invariant.pow(exps[j]);
        }
        matches.push_back(std::move(product));
        step.lambda_matches.push_back(cand);
      }
      step.candidates.push_back(std::move(cand));
    }

    if (step.candidates.empty()) {
      report.trace.push_back("  no product of earlier invariants has degree " + std::to_string(*degree));
    } else if (matches.empty()) {
      report.trace.push_back("  no candidate of degree " + std::to_string(*degree) +
                             " has lambda " + std::to_string(*lambda) + ": lambda mismatch");
    } else {
      step.in_span_of_matches = in_span(matches, rec.invariant);
      std::string names;
      for (const auto& c : step.lambda_matches) names += (names.empty() ? "" : ", ") + c.description;
      report.trace.push_back(std::string("  ") + rec.label +
                             (step.in_span_of_matches ? " lies in the span of {"
                                                      : " is not a linear combination of {") +
                             names + "}" + (step.in_span_of_matches ? "" : ": non-proportional"));
    }
    step.independent = !step.in_span_of_matches;
    report.trace.push_back(std::string("  => ") + (step.independent ? "independent" : "dependent"));
    if (step.independent) {
      ++report.independent_count;
      accepted.push_back(&rec);
      degrees.push_back(*degree);
      lambdas.push_back(*lambda);
    } else {
      report.independent = false;
    }
    report.steps.push_back(std::move(step));
  }
  return report;
}

bool SweepReport::matches_index() const {
  return !partial && independence && independence->independent &&
         independence->independent_count == index;
}

SweepReport conjecture_sweep(std::uint32_t p, const Budget& budget, unsigned workers) {
  if (p < 3 || !is_prime(p)) throw ParameterError("conjecture sweep needs an odd prime");
  SweepReport report;
  report.p = p;
  report.index = p - 2;
  const auto pair = build_hamiltonian_pair(FieldParams::make(p, {1, 1}));
  try {
    for (unsigned power = 2; power <= 2 * (p - 2); power += 2) {
      try {
        report.records.push_back(delta_star(power, pair, workers, budget));
      } catch (const NotInvariantError& e) {
        const auto& rec = e.record();
        report.rejected.push_back(std::string(e.what()) + " (p_power_m " +
                                  std::to_string(rec.p_power_m) + ", generator " +
                                  std::to_string(rec.generator.size()) + " terms)");
      }
    }
  } catch (const BudgetExceeded& e) {
    report.partial = true;
    report.message = e.what();
  }
  for (const auto& rec : report.records) {
    auto check = verify_record(rec, pair, workers);
    for (auto& problem : check.problems) report.verification_problems.push_back(std::move(problem));
  }
  try {
    budget.check(0);
    report.independence = independence_report(report.records);
  } catch (const BudgetExceeded& e) {
    report.partial = true;
    if (report.message.empty()) report.message = e.what();
  }
  return report;
}

}  // namespace cartan
