// The truncated divided power algebra K_n(m).
#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cartan/arith.hpp"

namespace cartan {

/// All α ≤ δ in canonical order (degree, then descending lex).
std::vector<MultiIndex> dp_basis(const FieldParams& params);

namespace detail {

inline PrimeField::value_type binom_in(const PrimeField& ring, const MultiIndex& a,
                                       const MultiIndex& b) {
  return multi_binom(a, b, ring.characteristic());
}

inline BigInt binom_in(const IntegerRing&, const MultiIndex& a, const MultiIndex& b) {
  return multi_binom_integer(a, b);
}

}  // namespace detail

/// Sparse element Σ c_α x^(α) of K_n(m) over a coefficient ring.
///
/// Over the integers the product uses the integer binomial C(α+β, α) and the
/// same truncation at δ; reducing such a product mod p gives the F_p product.
template <class Ring>
class DPPolynomial {
 public:
  using Coeff = typename Ring::value_type;
  using TermMap = std::map<MultiIndex, Coeff>;

  DPPolynomial(FieldParams params, Ring ring)
      : params_(std::move(params)), ring_(std::move(ring)), delta_(delta_of(params_)) {}

  static DPPolynomial monomial(const FieldParams& params, const Ring& ring,
                               const MultiIndex& alpha, Coeff c) {
    DPPolynomial out(params, ring);
    out.add_term(alpha, std::move(c));
    return out;
  }

  const FieldParams& params() const { return params_; }
  const Ring& ring() const { return ring_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Coeff coefficient(const MultiIndex& alpha) const {
    auto it = terms_.find(alpha);
    return it == terms_.end() ? ring_.zero() : it->second;
  }

  /// Adds c·x^(α); silently drops α outside the truncation box.
  void add_term(const MultiIndex& alpha, const Coeff& c) {
    if (alpha.size() != params_.n()) throw ParameterError("multi-index length mismatch");
    if (!mi_leq(alpha, delta_) || ring_.is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(alpha, c);
    if (!inserted) {
      it->second = ring_.add(it->second, c);
      if (ring_.is_zero(it->second)) terms_.erase(it);
    }
  }

  DPPolynomial& operator+=(const DPPolynomial& other) {
    check_compatible(other);
    for (const auto& [alpha, c] : other.terms_) add_term(alpha, c);
    return *this;
  }
  DPPolynomial& operator-=(const DPPolynomial& other) {
    check_compatible(other);
    for (const auto& [alpha, c] : other.terms_) add_term(alpha, ring_.neg(c));
    return *this;
  }
  friend DPPolynomial operator+(DPPolynomial a, const DPPolynomial& b) { return a += b; }
  friend DPPolynomial operator-(DPPolynomial a, const DPPolynomial& b) { return a -= b; }

  DPPolynomial scaled(const Coeff& c) const {
    DPPolynomial out(params_, ring_);
    for (const auto& [alpha, v] : terms_) out.add_term(alpha, ring_.mul(v, c));
    return out;
  }

  /// x^(α) x^(β) = C(α+β, α) x^(α+β), zero past δ.
  DPPolynomial operator*(const DPPolynomial& other) const {
    check_compatible(other);
    DPPolynomial out(params_, ring_);
    for (const auto& [a, ca] : terms_) {
      for (const auto& [b, cb] : other.terms_) {
        auto sum = mi_add(a, b, delta_);
        if (!sum) continue;
        auto binom = detail::binom_in(ring_, *sum, a);
        if (ring_.is_zero(binom)) continue;
        out.add_term(*sum, ring_.mul(binom, ring_.mul(ca, cb)));
      }
    }
    return out;
  }

  /// ∂_i x^(α) = x^(α−ε_i); axis is zero-based.
  DPPolynomial partial(std::size_t axis) const {
    if (axis >= params_.n()) throw ParameterError("axis out of range");
    DPPolynomial out(params_, ring_);
    for (const auto& [alpha, c] : terms_) {
      if (alpha[axis] == 0) continue;
      MultiIndex lowered = alpha;
      --lowered[axis];
      out.add_term(lowered, c);
    }
    return out;
  }

  bool operator==(const DPPolynomial& other) const {
    return params_ == other.params_ && terms_ == other.terms_;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [alpha, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += ring_.to_string(c) + "*x^" + alpha.to_string();
    }
    return out;
  }

 private:
  void check_compatible(const DPPolynomial& other) const {
    if (!(params_ == other.params_)) throw ParameterError("divided power parameter mismatch");
  }

  FieldParams params_;
  Ring ring_;
  MultiIndex delta_;
  TermMap terms_;
};

/// Coefficientwise reduction of an integral divided power polynomial.
DPPolynomial<PrimeField> reduce(const DPPolynomial<IntegerRing>& f);

}  // namespace cartan
