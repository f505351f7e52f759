#include "cartan/arith.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace cartan {

bool is_prime(std::uint64_t value) {
  if (value < 2) return false;
  for (std::uint64_t d = 2; d * d <= value; ++d) {
    if (value % d == 0) return false;
  }
  return true;
}

FieldParams FieldParams::make(std::uint32_t p, std::vector<std::uint32_t> m) {
  if (!is_prime(p)) {
    throw ParameterError("characteristic " + std::to_string(p) + " is not prime");
  }
  if (m.empty()) throw ParameterError("need at least one variable (n >= 1)");
  for (auto mi : m) {
    if (mi == 0) throw ParameterError("every m_i must be positive");
  }
  FieldParams out{p, std::move(m)};
  // Guard against index entries that do not fit the 32-bit multi-index.
  for (std::size_t i = 0; i < out.n(); ++i) {
    if (out.truncation(i) > (std::uint64_t{1} << 31)) {
      throw ParameterError("p^m_i too large");
    }
  }
  return out;
}

std::uint64_t FieldParams::truncation(std::size_t i) const {
  std::uint64_t t = 1;
  for (std::uint32_t k = 0; k < m.at(i); ++k) {
    t *= p;
    if (t > (std::uint64_t{1} << 40)) return t;
  }
  return t;
}

std::uint64_t FieldParams::dp_dimension() const {
  std::uint64_t d = 1;
  for (std::size_t i = 0; i < n(); ++i) d *= truncation(i);
  return d;
}

bool FieldParams::all_ones() const {
  return std::all_of(m.begin(), m.end(), [](auto v) { return v == 1; });
}

std::string FieldParams::describe() const {
  std::ostringstream os;
  os << "p=" << p << ", n=" << n() << ", m=(";
  for (std::size_t i = 0; i < m.size(); ++i) os << (i ? "," : "") << m[i];
  os << ")";
  return os.str();
}

MultiIndex MultiIndex::unit(std::size_t n, std::size_t i) {
  MultiIndex e(n);
  e[i] = 1;
  return e;
}

std::uint64_t MultiIndex::degree() const {
  return std::accumulate(entries_.begin(), entries_.end(), std::uint64_t{0});
}

bool MultiIndex::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](auto v) { return v == 0; });
}

std::string MultiIndex::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(entries_[i]);
  }
  return out + ")";
}

std::strong_ordering MultiIndex::operator<=>(const MultiIndex& other) const {
  if (auto c = entries_.size() <=> other.entries_.size(); c != 0) return c;
  if (auto c = degree() <=> other.degree(); c != 0) return c;
  // Larger leading entries first.
  return other.entries_ <=> entries_;
}

MultiIndex delta_of(const FieldParams& params) {
  MultiIndex d(params.n());
  for (std::size_t i = 0; i < params.n(); ++i) {
    d[i] = static_cast<std::uint32_t>(params.truncation(i) - 1);
  }
  return d;
}

namespace {

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

// C(a,b) mod p for a, b < p.
std::uint32_t small_binom(std::uint64_t a, std::uint64_t b, std::uint32_t p) {
  if (b > a) return 0;
  std::uint64_t num = 1, den = 1;
  for (std::uint64_t k = 0; k < b; ++k) {
    num = num * ((a - k) % p) % p;
    den = den * ((k + 1) % p) % p;
  }
  return static_cast<std::uint32_t>(num * pow_mod(den, p - 2, p) % p);
}

}  // namespace

std::uint32_t binom_lucas(std::uint64_t a, std::uint64_t b, std::uint32_t p) {
  if (b > a) return 0;
  std::uint64_t result = 1 % p;
  while (b > 0 || a > 0) {
    const std::uint64_t ad = a % p, bd = b % p;
    if (bd > ad) return 0;
    result = result * small_binom(ad, bd, p) % p;
    a /= p;
    b /= p;
  }
  return static_cast<std::uint32_t>(result);
}

std::uint32_t multi_binom(const MultiIndex& alpha, const MultiIndex& beta,
                          std::uint32_t p) {
  if (alpha.size() != beta.size()) throw ParameterError("multi-index length mismatch");
  std::uint64_t result = 1 % p;
  for (std::size_t i = 0; i < alpha.size() && result != 0; ++i) {
    result = result * binom_lucas(alpha[i], beta[i], p) % p;
  }
  return static_cast<std::uint32_t>(result);
}

BigInt binom_integer(std::uint64_t a, std::uint64_t b) {
  if (b > a) return 0;
  b = std::min(b, a - b);
  BigInt r = 1;
  for (std::uint64_t k = 1; k <= b; ++k) {
    r *= (a - b + k);
    r /= k;
  }
  return r;
}

BigInt multi_binom_integer(const MultiIndex& alpha, const MultiIndex& beta) {
  if (alpha.size() != beta.size()) throw ParameterError("multi-index length mismatch");
  BigInt r = 1;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    r *= binom_integer(alpha[i], beta[i]);
    if (r.is_zero()) break;
  }
  return r;
}

BigInt multi_factorial(const MultiIndex& alpha) {
  BigInt r = 1;
  for (auto a : alpha.entries()) {
    for (std::uint32_t k = 2; k <= a; ++k) r *= k;
  }
  return r;
}

std::optional<MultiIndex> mi_add(const MultiIndex& alpha, const MultiIndex& beta,
                                 const MultiIndex& bound) {
  if (alpha.size() != beta.size() || alpha.size() != bound.size()) {
    throw ParameterError("multi-index length mismatch");
  }
  MultiIndex out(alpha.size());
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    const std::uint64_t s = std::uint64_t{alpha[i]} + beta[i];
    if (s > bound[i]) return std::nullopt;
    out[i] = static_cast<std::uint32_t>(s);
  }
  return out;
}

std::optional<MultiIndex> mi_sub(const MultiIndex& alpha, const MultiIndex& beta) {
  if (alpha.size() != beta.size()) throw ParameterError("multi-index length mismatch");
  MultiIndex out(alpha.size());
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] < beta[i]) return std::nullopt;
    out[i] = alpha[i] - beta[i];
  }
  return out;
}

bool mi_leq(const MultiIndex& alpha, const MultiIndex& beta) {
  if (alpha.size() != beta.size()) throw ParameterError("multi-index length mismatch");
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] > beta[i]) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (!is_prime(p)) throw ParameterError("characteristic " + std::to_string(p) + " is not prime");
}

PrimeField::value_type PrimeField::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<value_type>(r);
}

PrimeField::value_type PrimeField::from_big(const BigInt& v) const {
  return reduce_mod(v, p_);
}

PrimeField::value_type PrimeField::inv(value_type a) const {
  if (a % p_ == 0) throw Error("inverse of zero in F_" + std::to_string(p_));
  return static_cast<value_type>(pow_mod(a, p_ - 2, p_));
}

std::uint32_t reduce_mod(const BigInt& v, std::uint32_t p) {
  BigInt r = v % p;
  if (r < 0) r += p;
  return r.convert_to<std::uint32_t>();
}

unsigned p_adic_valuation(BigInt v, std::uint32_t p) {
  if (v.is_zero()) throw Error("valuation of zero");
  unsigned m = 0;
  while (v % p == 0) {
    v /= p;
    ++m;
  }
  return m;
}

}  // namespace cartan
