// Lie algebras of Cartan type W, S, H and H̄ = H ⊕ ⟨D(δ)⟩, realised as explicit
// bases of special derivations of K_n(m).
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cartan/arith.hpp"
#include "cartan/divided_powers.hpp"

namespace cartan {

enum class AlgebraKind { W, S, H, Hbar };

std::string to_string(AlgebraKind kind);
AlgebraKind parse_kind(const std::string& text);

/// Normalisation of the Hamiltonian basis.  DividedPower uses D(α) itself;
/// Monomial uses u_α = α!·D(α), the Hamiltonian vector field of the ordinary
/// monomial x^α, and is only available when every α_i < p (m = (1,…,1)).
enum class BasisScaling { DividedPower, Monomial };

class NotInSpanError : public Error {
 public:
  using Error::Error;
};

/// Involution π without fixed points and signs a_{i,πi} = −a_{πi,i}.
/// Indices are zero-based.
struct HamiltonianStructure {
  std::vector<std::size_t> pi;
  std::vector<int> sign;

  /// Pairs (1 2)(3 4)…, a = +1 on the first member of each pair.  For n = 2
  /// this gives D(α) = ∂₁(x^(α))∂₂ − ∂₂(x^(α))∂₁.
  static HamiltonianStructure standard(std::size_t n);
  /// One-based pairs, first member gets sign +1.
  static HamiltonianStructure from_pairs(std::size_t n,
                                         const std::vector<std::pair<std::size_t, std::size_t>>& pairs);
  void validate(std::size_t n) const;
  std::string tag() const;
};

/// D = Σ f_i ∂_i.
template <class Ring>
class Derivation {
 public:
  Derivation(const FieldParams& params, const Ring& ring)
      : coeffs_(params.n(), DPPolynomial<Ring>(params, ring)) {}

  static Derivation partial(const FieldParams& params, const Ring& ring, std::size_t axis) {
    return field(params, ring, MultiIndex(params.n()), axis, ring.one());
  }
  /// c·x^(α)∂_axis
  static Derivation field(const FieldParams& params, const Ring& ring, const MultiIndex& alpha,
                          std::size_t axis, typename Ring::value_type c) {
    Derivation d(params, ring);
    d.coeffs_.at(axis).add_term(alpha, c);
    return d;
  }

  std::size_t n() const { return coeffs_.size(); }
  const FieldParams& params() const { return coeffs_.front().params(); }
  const Ring& ring() const { return coeffs_.front().ring(); }
  const DPPolynomial<Ring>& coeff(std::size_t i) const { return coeffs_.at(i); }
  DPPolynomial<Ring>& coeff(std::size_t i) { return coeffs_.at(i); }

  bool is_zero() const {
    for (const auto& c : coeffs_) {
      if (!c.is_zero()) return false;
    }
    return true;
  }

  Derivation& operator+=(const Derivation& o) {
    for (std::size_t i = 0; i < n(); ++i) coeffs_[i] += o.coeffs_.at(i);
    return *this;
  }
  Derivation& operator-=(const Derivation& o) {
    for (std::size_t i = 0; i < n(); ++i) coeffs_[i] -= o.coeffs_.at(i);
    return *this;
  }
  friend Derivation operator+(Derivation a, const Derivation& b) { return a += b; }
  friend Derivation operator-(Derivation a, const Derivation& b) { return a -= b; }
  Derivation scaled(const typename Ring::value_type& c) const {
    Derivation out = *this;
    for (auto& f : out.coeffs_) f = f.scaled(c);
    return out;
  }

  /// D(f) for a divided power polynomial f.
  DPPolynomial<Ring> apply(const DPPolynomial<Ring>& f) const {
    DPPolynomial<Ring> out(f.params(), f.ring());
    for (std::size_t i = 0; i < n(); ++i) {
      if (coeffs_[i].is_zero()) continue;
      out += coeffs_[i] * f.partial(i);
    }
    return out;
  }

  bool operator==(const Derivation& o) const { return coeffs_ == o.coeffs_; }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < n(); ++i) {
      if (coeffs_[i].is_zero()) continue;
      if (!out.empty()) out += " + ";
      out += "(" + coeffs_[i].to_string() + ")*d_" + std::to_string(i + 1);
    }
    return out.empty() ? "0" : out;
  }

 private:
  std::vector<DPPolynomial<Ring>> coeffs_;
};

/// [D1, D2]: k-th coefficient Σ_i (f_i ∂_i(g_k) − g_i ∂_i(f_k)).
template <class Ring>
Derivation<Ring> bracket(const Derivation<Ring>& a, const Derivation<Ring>& b) {
  if (!(a.params() == b.params())) throw ParameterError("derivation parameter mismatch");
  Derivation<Ring> out(a.params(), a.ring());
  for (std::size_t k = 0; k < a.n(); ++k) {
    out.coeff(k) = a.apply(b.coeff(k)) - b.apply(a.coeff(k));
  }
  return out;
}

Derivation<PrimeField> reduce(const Derivation<IntegerRing>& d);

template <class V>
using SparseVector = std::vector<std::pair<std::uint32_t, V>>;

struct BasisElement {
  std::string label;
  Derivation<IntegerRing> element;  // integral form
  int grade = 0;
  MultiIndex index;                 // α of x^(α)∂_i, D_{i,j}(α) or D(α)
  std::vector<std::size_t> axes;    // {i} for W, {i,j} for S, empty for H
};

/// A constructed algebra with ordered basis, grading and structure constants
/// [b_i, b_j] = Σ_k c_{ij}^k b_k.  Constants are kept both as integers (the
/// integral lift) and reduced mod p.  Immutable once built.
class CartanAlgebra {
 public:
  AlgebraKind kind() const { return kind_; }
  const FieldParams& params() const { return params_; }
  PrimeField field() const { return PrimeField(params_.p); }
  BasisScaling scaling() const { return scaling_; }
  const std::optional<HamiltonianStructure>& hamiltonian() const { return hamiltonian_; }

  std::size_t dim() const { return basis_.size(); }
  const BasisElement& basis(std::size_t i) const { return basis_.at(i); }
  const std::string& label(std::size_t i) const { return basis_.at(i).label; }
  int grade(std::size_t i) const { return basis_.at(i).grade; }
  std::optional<std::uint32_t> find(const std::string& label) const;
  /// Top grade r, computed from the basis.
  int top_grade() const { return top_grade_; }

  /// True when integral constants come from an exact integral decomposition
  /// rather than a lift of the F_p ones.
  bool integral_exact() const { return integral_exact_; }

  const SparseVector<BigInt>& bracket_int(std::size_t i, std::size_t j) const {
    return int_table_.at(i * dim() + j);
  }
  const SparseVector<std::uint32_t>& bracket_mod(std::size_t i, std::size_t j) const {
    return mod_table_.at(i * dim() + j);
  }
  const SparseVector<BigInt>& bracket_row(const IntegerRing&, std::size_t i, std::size_t j) const {
    return bracket_int(i, j);
  }
  const SparseVector<std::uint32_t>& bracket_row(const PrimeField& f, std::size_t i,
                                                  std::size_t j) const {
    if (f.characteristic() != params_.p) throw ParameterError("field characteristic mismatch");
    return bracket_mod(i, j);
  }

  /// Coordinates over F_p; throws NotInSpanError.
  std::vector<std::uint32_t> decompose(const Derivation<PrimeField>& d) const;
  /// Integral coordinates; throws NotInSpanError.
  std::vector<BigInt> decompose(const Derivation<IntegerRing>& d) const;

  /// Basis indices of grade ≥ i; empty for i > r.
  std::vector<std::uint32_t> filtration_basis(int i) const;
  /// Coordinates of ∂_axis.
  const SparseVector<BigInt>& partial_coordinates(std::size_t axis) const {
    return partials_.at(axis);
  }
  /// Index of the basis element D(α) / x^(α)∂_i carrying the given label data.
  std::optional<std::uint32_t> find_index(const MultiIndex& alpha) const;

  /// Key for caches: kind, parameters, sign convention and scaling.
  std::string convention_tag() const;

  // Construction.
  friend std::shared_ptr<const CartanAlgebra> build_W(const FieldParams&);
  friend std::shared_ptr<const CartanAlgebra> build_S(const FieldParams&);
  friend std::shared_ptr<const CartanAlgebra> build_H(const FieldParams&, const HamiltonianStructure&,
                                                      BasisScaling);
  friend std::shared_ptr<const CartanAlgebra> build_Hbar(const FieldParams&,
                                                         const HamiltonianStructure&, BasisScaling);

 private:
  CartanAlgebra(AlgebraKind kind, FieldParams params, BasisScaling scaling,
                std::optional<HamiltonianStructure> hs, std::vector<BasisElement> basis);
  void finalize();

  std::size_t position(std::size_t axis, const MultiIndex& beta) const;
  std::vector<std::uint32_t> dense_mod(const Derivation<PrimeField>& d) const;

  AlgebraKind kind_;
  FieldParams params_;
  BasisScaling scaling_;
  std::optional<HamiltonianStructure> hamiltonian_;
  std::vector<BasisElement> basis_;
  std::unordered_map<std::string, std::uint32_t> by_label_;
  int top_grade_ = -1;
  bool integral_exact_ = false;

  // F_p elimination data: rows in echelon form with their pivot and the
  // combination of basis elements they represent.
  struct EchelonRow {
    std::vector<std::uint32_t> row;
    std::size_t pivot;
    std::vector<std::uint32_t> combination;
  };
  std::vector<EchelonRow> echelon_;
  // Integral pivots: (position, coefficient) per basis element.
  std::vector<std::pair<std::size_t, BigInt>> int_pivots_;

  std::vector<SparseVector<BigInt>> int_table_;
  std::vector<SparseVector<std::uint32_t>> mod_table_;
  std::vector<SparseVector<BigInt>> partials_;
};

using AlgebraPtr = std::shared_ptr<const CartanAlgebra>;

AlgebraPtr build_W(const FieldParams& params);
AlgebraPtr build_S(const FieldParams& params);
AlgebraPtr build_H(const FieldParams& params, const HamiltonianStructure& hs,
                   BasisScaling scaling = BasisScaling::DividedPower);
AlgebraPtr build_Hbar(const FieldParams& params, const HamiltonianStructure& hs,
                      BasisScaling scaling = BasisScaling::DividedPower);

/// Dispatch on kind.  H/H̄ default to the standard structure and to the
/// monomial scaling whenever it is available.
AlgebraPtr build_algebra(AlgebraKind kind, const FieldParams& params,
                         std::optional<HamiltonianStructure> hs = std::nullopt,
                         std::optional<BasisScaling> scaling = std::nullopt);

}  // namespace cartan
