// Prime-field scalars, integer coefficients, Lucas binomials and bounded
// multi-index arithmetic.
#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace cartan {

using BigInt = boost::multiprecision::cpp_int;

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters (non-prime p, bad n, wrong algebra constraints, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

bool is_prime(std::uint64_t value);

/// Characteristic p, number of variables n and the exponent vector m.
struct FieldParams {
  std::uint32_t p = 0;
  std::vector<std::uint32_t> m;

  /// Validates and constructs; throws ParameterError.
  static FieldParams make(std::uint32_t p, std::vector<std::uint32_t> m);

  std::size_t n() const { return m.size(); }
  /// p^{m_i}
  std::uint64_t truncation(std::size_t i) const;
  /// p^{Σ m_i}, the dimension of the divided power algebra.
  std::uint64_t dp_dimension() const;
  bool all_ones() const;
  std::string describe() const;

  bool operator==(const FieldParams&) const = default;
};

/// Exponent vector α ∈ ℤ₊ⁿ.  Ordered by total degree, then by entries in
/// descending lexicographic order, so (1,0) precedes (0,1).
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t n) : entries_(n, 0) {}
  MultiIndex(std::initializer_list<std::uint32_t> values) : entries_(values) {}
  explicit MultiIndex(std::vector<std::uint32_t> values)
      : entries_(std::move(values)) {}

  static MultiIndex unit(std::size_t n, std::size_t i);

  std::size_t size() const { return entries_.size(); }
  std::uint32_t operator[](std::size_t i) const { return entries_[i]; }
  std::uint32_t& operator[](std::size_t i) { return entries_[i]; }
  const std::vector<std::uint32_t>& entries() const { return entries_; }

  /// |α|
  std::uint64_t degree() const;
  bool is_zero() const;
  std::string to_string() const;  // "(2,1)"

  bool operator==(const MultiIndex&) const = default;
  std::strong_ordering operator<=>(const MultiIndex& other) const;

 private:
  std::vector<std::uint32_t> entries_;
};

/// δ = (p^{m_1}−1, …, p^{m_n}−1).
MultiIndex delta_of(const FieldParams& params);

/// C(a,b) mod p via base-p digits; 0 when b > a.
std::uint32_t binom_lucas(std::uint64_t a, std::uint64_t b, std::uint32_t p);
/// ∏ C(α_i, β_i) mod p.
std::uint32_t multi_binom(const MultiIndex& alpha, const MultiIndex& beta,
                          std::uint32_t p);

BigInt binom_integer(std::uint64_t a, std::uint64_t b);
BigInt multi_binom_integer(const MultiIndex& alpha, const MultiIndex& beta);
/// α! = ∏ α_i!
BigInt multi_factorial(const MultiIndex& alpha);

/// α+β, or nullopt when some component exceeds bound.
std::optional<MultiIndex> mi_add(const MultiIndex& alpha, const MultiIndex& beta,
                                 const MultiIndex& bound);
/// α−β, or nullopt when some α_i < β_i.
std::optional<MultiIndex> mi_sub(const MultiIndex& alpha, const MultiIndex& beta);
/// Componentwise α ≤ β.
bool mi_leq(const MultiIndex& alpha, const MultiIndex& beta);

/// The prime field F_p.  Residues are kept in [0, p).
class PrimeField {
 public:
  using value_type = std::uint32_t;

  explicit PrimeField(std::uint32_t p);

  std::uint32_t characteristic() const { return p_; }
  static constexpr bool is_integral() { return false; }
  static const char* name() { return "modp"; }

  value_type zero() const { return 0; }
  value_type one() const { return 1 % p_; }
  value_type from_int(std::int64_t v) const;
  value_type from_big(const BigInt& v) const;
  value_type add(value_type a, value_type b) const {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<value_type>(s >= p_ ? s - p_ : s);
  }
  value_type sub(value_type a, value_type b) const {
    return a >= b ? a - b : static_cast<value_type>(std::uint64_t{a} + p_ - b);
  }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>((std::uint64_t{a} * b) % p_);
  }
  value_type inv(value_type a) const;
  bool is_zero(value_type a) const { return a == 0; }
  std::string to_string(value_type a) const { return std::to_string(a); }

  bool operator==(const PrimeField&) const = default;

 private:
  std::uint32_t p_;
};

/// The ring of integers, arbitrary precision.
class IntegerRing {
 public:
  using value_type = BigInt;

  static constexpr bool is_integral() { return true; }
  static const char* name() { return "int"; }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(std::int64_t v) const { return v; }
  value_type from_big(const BigInt& v) const { return v; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  bool is_zero(const value_type& a) const { return a.is_zero(); }
  std::string to_string(const value_type& a) const { return a.str(); }

  bool operator==(const IntegerRing&) const = default;
};

/// Least nonnegative residue of v mod p.
std::uint32_t reduce_mod(const BigInt& v, std::uint32_t p);
/// p-adic valuation; v must be nonzero.
unsigned p_adic_valuation(BigInt v, std::uint32_t p);

}  // namespace cartan
