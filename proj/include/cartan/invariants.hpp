// The Δ-series of symmetric invariants of the Hamiltonian algebras:
// Δ_i = d^(δ)(u^i), restriction at u = 0, p-power normalisation φ, the
// starred invariants Δ_i*, the λ-weight and the independence bookkeeping.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cartan/lie_algebra.hpp"
#include "cartan/symmetric_algebra.hpp"

namespace cartan {

/// H_n(m) together with H̄_n(m) = H ⊕ ⟨u⟩, u = D(δ).  The first dim(H) basis
/// elements of H̄ coincide with the basis of H.
struct HamiltonianPair {
  AlgebraPtr h;
  AlgebraPtr hbar;
  std::uint32_t u_index = 0;  // index of u in hbar
};

HamiltonianPair build_hamiltonian_pair(const FieldParams& params,
                                       std::optional<HamiltonianStructure> hs = std::nullopt,
                                       std::optional<BasisScaling> scaling = std::nullopt);

/// Δ_i = d^(δ)(u^i) over the integers, i ≥ 2.
IntPoly compute_delta(unsigned power, const HamiltonianPair& pair, unsigned workers = 1,
                      const Budget& budget = {});

/// Drops every monomial containing u and re-expresses the rest over H.
template <class Ring>
SymPolynomial<Ring> restrict_u_zero(const SymPolynomial<Ring>& f, const HamiltonianPair& pair) {
  if (f.algebra() != pair.hbar) throw ParameterError("restrict_u_zero expects an element of S(Hbar)");
  typename SymPolynomial<Ring>::TermMap terms;
  for (const auto& [m, c] : f.terms()) {
    if (exponent_of(m, pair.u_index) == 0) terms.emplace(m, c);
  }
  SymPolynomial<Ring> out(pair.h, f.ring());
  out.assign(std::move(terms));
  return out;
}

/// Re-expresses an element of S(H) inside S(H̄).
template <class Ring>
SymPolynomial<Ring> embed_in_hbar(const SymPolynomial<Ring>& f, const HamiltonianPair& pair) {
  if (f.algebra() != pair.h) throw ParameterError("embed_in_hbar expects an element of S(H)");
  SymPolynomial<Ring> out(pair.hbar, f.ring());
  out.assign(f.terms());
  return out;
}

struct PhiResult {
  ModPoly value;
  unsigned p_power = 0;  // m: p-adic valuation of the coefficient gcd
};

/// φ(F) = F / p^m mod p, m = v_p(gcd of coefficients).  Throws on zero input.
PhiResult phi_normalize(const IntPoly& f);

struct InvariantRecord {
  std::string label;           // Delta_2, Delta_4_star, ...
  unsigned power = 0;
  ModPoly invariant;           // over H
  ModPoly generator;           // over H (starred) or H̄ (Δ_2: u^2)
  std::optional<std::int64_t> lambda;
  std::size_t term_count = 0;
  unsigned p_power_m = 0;
  bool null_result = false;    // the construction produced zero
};

std::string record_label(unsigned power);

/// Thrown by delta_star when d^(δ) of the normalised restriction is not
/// annihilated by H.  Carries the offending record.
class NotInvariantError : public Error {
 public:
  NotInvariantError(const std::string& what, InvariantRecord record)
      : Error(what), record_(std::move(record)) {}
  const InvariantRecord& record() const { return record_; }

 private:
  InvariantRecord record_;
};

/// Runs the pipeline for Δ_i (i = 2) or Δ_i* (i ≥ 4, even), including
/// invariance verification.  Null results are returned with null_result set.
InvariantRecord delta_star(unsigned power, const HamiltonianPair& pair, unsigned workers = 1,
                           const Budget& budget = {});

struct RecordCheck {
  bool ok = true;
  std::vector<std::string> problems;
};

/// Re-verifies a record from scratch: invariance over the full basis of H,
/// invariant = d^(δ)(generator), term count and λ bookkeeping.
RecordCheck verify_record(const InvariantRecord& record, const HamiltonianPair& pair,
                          unsigned workers = 1);

/// λ(e_k) = |δ| − |α_k| for the basis element indexed by α_k; additive on
/// monomials.
std::int64_t lambda_value(const CartanAlgebra& algebra, const Monomial& m);
/// The common λ of all monomials, or nullopt when mixed (or for zero).
std::optional<std::int64_t> lambda_homogeneity(const ModPoly& f);

/// True if every exponent of every monomial is divisible by p.
bool is_pth_power(const ModPoly& f);

struct IndependenceCandidate {
  std::string description;      // e.g. Delta_2^2
  std::vector<unsigned> exponents;
  std::uint64_t degree = 0;
  std::int64_t lambda = 0;
};

struct IndependenceStep {
  std::string label;
  std::uint64_t degree = 0;
  std::int64_t lambda = 0;
  std::vector<IndependenceCandidate> candidates;
  std::vector<IndependenceCandidate> lambda_matches;
  bool in_span_of_matches = false;
  bool independent = true;
};

struct IndependenceReport {
  bool independent = true;
  std::size_t independent_count = 0;
  std::vector<IndependenceStep> steps;
  std::vector<std::string> trace;
};

/// Records are processed in order; each is compared against all products of
/// earlier records of the same total degree.
IndependenceReport independence_report(const std::vector<InvariantRecord>& records);

struct SweepReport {
  std::uint32_t p = 0;
  std::size_t index = 0;           // external value p − 2
  std::vector<InvariantRecord> records;
  std::vector<std::string> verification_problems;
  std::vector<std::string> rejected;  // candidates whose d^(δ) image is not invariant
  std::optional<IndependenceReport> independence;
  bool partial = false;
  std::string message;
  bool matches_index() const;
};

/// Δ_2, Δ_4*, …, Δ_{2(p−2)}* for H_2 at the given odd prime.
SweepReport conjecture_sweep(std::uint32_t p, const Budget& budget = {}, unsigned workers = 1);

}  // namespace cartan
