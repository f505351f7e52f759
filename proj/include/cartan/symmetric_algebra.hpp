// Sparse symmetric algebra S(L) with the adjoint action, the operator d^(δ),
// invariance testing and the generator criteria.
#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cartan/arith.hpp"
#include "cartan/lie_algebra.hpp"

namespace cartan {

/// Exponent multiset: (basis index, exponent) pairs sorted by index, no zero
/// exponents.
using Monomial = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

std::uint64_t total_degree(const Monomial& m);

/// Total degree, then lexicographic on the exponent list.
struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    const auto da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return a < b;
  }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto [i, e] : m) {
      h ^= (std::size_t{i} << 20) ^ e;
      h *= 1099511628211ull;
    }
    return h;
  }
};

/// Exponent of basis index k in m (0 if absent).
std::uint32_t exponent_of(const Monomial& m, std::uint32_t k);
/// m with the exponent of `from` lowered by one and that of `to` raised by one.
Monomial shift_factor(const Monomial& m, std::uint32_t from, std::uint32_t to);
Monomial multiply_monomials(const Monomial& a, const Monomial& b);

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Resource limits for long expansions; zero / unset means unlimited.
struct Budget {
  std::size_t max_terms = 0;
  std::optional<std::chrono::steady_clock::time_point> deadline;

  static Budget unlimited() { return {}; }
  static Budget with(std::size_t max_terms, double max_seconds);
  void check(std::size_t terms) const;
};

template <class Ring>
class SymPolynomial {
 public:
  using Coeff = typename Ring::value_type;
  using TermMap = std::map<Monomial, Coeff, MonomialLess>;

  SymPolynomial(AlgebraPtr algebra, Ring ring) : algebra_(std::move(algebra)), ring_(std::move(ring)) {
    if constexpr (!Ring::is_integral()) {
      if (ring_.characteristic() != algebra_->params().p) {
        throw ParameterError("coefficient field does not match the algebra's characteristic");
      }
    }
  }

  static SymPolynomial constant(AlgebraPtr algebra, Ring ring, Coeff c) {
    SymPolynomial out(std::move(algebra), std::move(ring));
    out.add_term({}, c);
    return out;
  }
  static SymPolynomial variable(AlgebraPtr algebra, Ring ring, std::uint32_t index) {
    if (index >= algebra->dim()) throw ParameterError("basis index out of range");
    SymPolynomial out(std::move(algebra), ring);
    out.add_term({{index, 1}}, out.ring_.one());
    return out;
  }

  const AlgebraPtr& algebra() const { return algebra_; }
  const Ring& ring() const { return ring_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Coeff coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? ring_.zero() : it->second;
  }

  void add_term(const Monomial& m, const Coeff& c) {
    if (ring_.is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second = ring_.add(it->second, c);
      if (ring_.is_zero(it->second)) terms_.erase(it);
    }
  }

  SymPolynomial& operator+=(const SymPolynomial& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  SymPolynomial& operator-=(const SymPolynomial& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add_term(m, ring_.neg(c));
    return *this;
  }
  friend SymPolynomial operator+(SymPolynomial a, const SymPolynomial& b) { return a += b; }
  friend SymPolynomial operator-(SymPolynomial a, const SymPolynomial& b) { return a -= b; }

  SymPolynomial operator*(const SymPolynomial& o) const {
    check_compatible(o);
    SymPolynomial out(algebra_, ring_);
    for (const auto& [a, ca] : terms_) {
      for (const auto& [b, cb] : o.terms_) out.add_term(multiply_monomials(a, b), ring_.mul(ca, cb));
    }
    return out;
  }

  SymPolynomial scaled(const Coeff& c) const {
    SymPolynomial out(algebra_, ring_);
    for (const auto& [m, v] : terms_) out.add_term(m, ring_.mul(v, c));
    return out;
  }

  SymPolynomial pow(unsigned e) const {
    SymPolynomial out = constant(algebra_, ring_, ring_.one());
    for (unsigned k = 0; k < e; ++k) out = out * *this;
    return out;
  }

  /// Common total degree, or nullopt when mixed; 0 for the zero polynomial.
  std::optional<std::uint64_t> homogeneous_degree() const {
    if (terms_.empty()) return 0;
    const auto d = total_degree(terms_.begin()->first);
    for (const auto& [m, c] : terms_) {
      if (total_degree(m) != d) return std::nullopt;
    }
    return d;
  }

  bool operator==(const SymPolynomial& o) const {
    return algebra_ == o.algebra_ && terms_ == o.terms_;
  }

  /// Canonical text: terms in canonical order, factors by basis index,
  /// coefficients as least nonnegative residues (or signed integers).
  std::string to_text() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
      std::string term;
      const std::string coeff = ring_.to_string(c);
      if (m.empty() || coeff != "1") term = coeff;
      for (auto [k, e] : m) {
        if (!term.empty()) term += "*";
        term += algebra_->label(k);
        if (e > 1) term += "^" + std::to_string(e);
      }
      if (!out.empty()) out += " + ";
      out += term;
    }
    return out;
  }

  /// Splits the term map into at most `parts` polynomials.
  std::vector<SymPolynomial> partition(std::size_t parts) const {
    parts = std::max<std::size_t>(1, std::min(parts, terms_.size()));
    std::vector<SymPolynomial> out(parts, SymPolynomial(algebra_, ring_));
    std::size_t i = 0;
    for (const auto& [m, c] : terms_) out[i++ % parts].terms_.emplace(m, c);
    return out;
  }

  /// Replaces the term map wholesale; used by bulk accumulators.
  void assign(TermMap terms) { terms_ = std::move(terms); }

 private:
  void check_compatible(const SymPolynomial& o) const {
    if (algebra_ != o.algebra_) throw ParameterError("symmetric algebra mismatch");
    if (!(ring_ == o.ring_)) throw ParameterError("coefficient ring mismatch");
  }

  AlgebraPtr algebra_;
  Ring ring_;
  TermMap terms_;
};

using IntPoly = SymPolynomial<IntegerRing>;
using ModPoly = SymPolynomial<PrimeField>;

ModPoly reduce(const IntPoly& f);

/// Parses the canonical text rendering (e.g. "2*u_{0,1}*u_{2,1} + u_{1,1}^2").
template <class Ring>
SymPolynomial<Ring> parse_polynomial(const std::string& text, AlgebraPtr algebra, Ring ring);

// ---------------------------------------------------------------------------
// Adjoint action.

/// Images [b, e_k] for every basis index k, as sparse rows in the ring.
template <class Ring>
using ActionTable = std::vector<SparseVector<typename Ring::value_type>>;

/// Table of the inner derivation ad(Σ_b c_b e_b).
template <class Ring>
ActionTable<Ring> action_table(const CartanAlgebra& algebra, const Ring& ring,
                               const SparseVector<typename Ring::value_type>& element) {
  const std::size_t d = algebra.dim();
  ActionTable<Ring> table(d);
  for (std::uint32_t k = 0; k < d; ++k) {
    std::map<std::uint32_t, typename Ring::value_type> acc;
    for (const auto& [b, cb] : element) {
      for (const auto& [l, c] : algebra.bracket_row(ring, b, k)) {
        auto v = ring.mul(cb, ring.from_big(BigInt(c)));
        auto [it, inserted] = acc.try_emplace(l, v);
        if (!inserted) it->second = ring.add(it->second, v);
      }
    }
    for (auto& [l, v] : acc) {
      if (!ring.is_zero(v)) table[k].emplace_back(l, std::move(v));
    }
  }
  return table;
}

/// Applies the derivation of S(L) that extends the linear map given by the
/// table, monomial by monomial (Leibniz rule).
template <class Ring>
SymPolynomial<Ring> apply_action(const ActionTable<Ring>& table, const SymPolynomial<Ring>& f,
                                 const Budget& budget = {}) {
  const Ring& ring = f.ring();
  std::unordered_map<Monomial, typename Ring::value_type, MonomialHash> acc;
  acc.reserve(f.size() * 2);
  for (const auto& [m, c] : f.terms()) {
    for (const auto& [k, e] : m) {
      const auto& image = table[k];
      if (image.empty()) continue;
      const auto ce = ring.mul(c, ring.from_int(e));
      if (ring.is_zero(ce)) continue;
      for (const auto& [l, v] : image) {
        auto key = shift_factor(m, k, l);
        auto val = ring.mul(ce, v);
        auto [it, inserted] = acc.try_emplace(std::move(key), val);
        if (!inserted) it->second = ring.add(it->second, val);
      }
    }
    budget.check(acc.size());
  }
  typename SymPolynomial<Ring>::TermMap terms;
  for (auto& [m, v] : acc) {
    if (!ring.is_zero(v)) terms.emplace(m, std::move(v));
  }
  SymPolynomial<Ring> out(f.algebra(), ring);
  out.assign(std::move(terms));
  return out;
}

/// ad(e_b)(F).
template <class Ring>
SymPolynomial<Ring> ad_action(std::uint32_t b, const SymPolynomial<Ring>& f) {
  if (b >= f.algebra()->dim()) throw ParameterError("basis index out of range");
  return apply_action(action_table(*f.algebra(), f.ring(), SparseVector<typename Ring::value_type>{
                                                              {b, f.ring().one()}}),
                      f);
}

/// ad(D)(F) for a derivation lying in the algebra; throws NotInSpanError.
template <class Ring>
SymPolynomial<Ring> ad_action(const Derivation<Ring>& d, const SymPolynomial<Ring>& f) {
  const auto coords = f.algebra()->decompose(d);
  SparseVector<typename Ring::value_type> element;
  for (std::uint32_t k = 0; k < coords.size(); ++k) {
    if (!f.ring().is_zero(coords[k])) element.emplace_back(k, coords[k]);
  }
  return apply_action(action_table(*f.algebra(), f.ring(), element), f);
}

/// Table of ad(∂_axis).
template <class Ring>
ActionTable<Ring> partial_table(const CartanAlgebra& algebra, const Ring& ring, std::size_t axis) {
  SparseVector<typename Ring::value_type> element;
  for (const auto& [b, c] : algebra.partial_coordinates(axis)) element.emplace_back(b, ring.from_big(c));
  return action_table(algebra, ring, element);
}

/// ad(∂_axis)^times (F).
template <class Ring>
SymPolynomial<Ring> ad_partial_power(std::size_t axis, std::uint64_t times,
                                     const SymPolynomial<Ring>& f, const Budget& budget = {}) {
  const auto table = partial_table(*f.algebra(), f.ring(), axis);
  SymPolynomial<Ring> out = f;
  for (std::uint64_t t = 0; t < times && !out.is_zero(); ++t) out = apply_action(table, out, budget);
  return out;
}

/// d^(γ)(F) = ∏ ad(∂_i)^{γ_i} (F), applying the axes in the given order.
template <class Ring>
SymPolynomial<Ring> d_power(const MultiIndex& gamma, const SymPolynomial<Ring>& f,
                            const std::vector<std::size_t>& order, const Budget& budget = {}) {
  SymPolynomial<Ring> out = f;
  for (auto axis : order) {
    if (gamma.size() <= axis) throw ParameterError("axis out of range");
    out = ad_partial_power(axis, gamma[axis], out, budget);
  }
  return out;
}

template <class Ring>
SymPolynomial<Ring> d_power(const MultiIndex& gamma, const SymPolynomial<Ring>& f,
                            const Budget& budget = {}) {
  std::vector<std::size_t> order(gamma.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  return d_power(gamma, f, order, budget);
}

/// d^(δ)(F).  With workers > 1 the term map is partitioned and the partial
/// results are summed.
template <class Ring>
SymPolynomial<Ring> d_delta(const SymPolynomial<Ring>& f, unsigned workers = 1,
                            const Budget& budget = {}) {
  const MultiIndex delta = delta_of(f.algebra()->params());
  if (workers <= 1 || f.size() < 2) return d_power(delta, f, budget);
  auto parts = f.partition(workers);
  std::vector<SymPolynomial<Ring>> results(parts.size(), SymPolynomial<Ring>(f.algebra(), f.ring()));
  std::vector<std::exception_ptr> errors(parts.size());
  {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      pool.emplace_back([&, i] {
        try {
          results[i] = d_power(delta, parts[i], budget);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  SymPolynomial<Ring> out(f.algebra(), f.ring());
  for (auto& r : results) out += r;
  return out;
}

// ---------------------------------------------------------------------------
// Invariance and generator criteria.

template <class Ring>
struct InvarianceReport {
  bool is_invariant = true;
  std::optional<std::pair<std::uint32_t, SymPolynomial<Ring>>> witness;
};

/// Checks ad(b)(F) = 0 for every basis element; reports the first failure.
template <class Ring>
InvarianceReport<Ring> is_invariant(const SymPolynomial<Ring>& f) {
  InvarianceReport<Ring> report;
  for (std::uint32_t b = 0; b < f.algebra()->dim(); ++b) {
    auto image = ad_action(b, f);
    if (!image.is_zero()) {
      report.is_invariant = false;
      report.witness.emplace(b, std::move(image));
      return report;
    }
  }
  return report;
}

struct GeneratorCheck {
  bool ok = true;
  std::vector<std::string> diagnostics;
  std::optional<std::uint32_t> witness;  // offending basis index
};

/// 𝓛₁(F) = 0 and ad(x_i∂_j)(F) = −δ_{ij} F, for W-type algebras.
GeneratorCheck check_generator_W(const ModPoly& f);
/// 𝓛₀(F) = 0, for S, H and H̄-type algebras.
GeneratorCheck check_generator_SH(const ModPoly& f);

/// Evaluates both sides of
///   ad(D)(d^(δ)F) = Σ_γ (−1)^{|γ|} C(δ,γ) d^(δ−γ)( ad(d^(γ)D)(F) )
/// where d^(γ)D is the iterated bracket with the ∂_i.
bool commutation_expansion_check(const Derivation<PrimeField>& d, const ModPoly& f);

/// Coordinates of the basis element of W with label x^(ε_i)d_j.
std::optional<std::uint32_t> w_linear_element(const CartanAlgebra& algebra, std::size_t i,
                                              std::size_t j);

}  // namespace cartan
