#include "cartan/lie_algebra.hpp"

#include <algorithm>
#include <sstream>

namespace cartan {

std::string to_string(AlgebraKind kind) {
  switch (kind) {
    case AlgebraKind::W: return "W";
    case AlgebraKind::S: return "S";
    case AlgebraKind::H: return "H";
    case AlgebraKind::Hbar: return "Hbar";
  }
  return "?";
}

AlgebraKind parse_kind(const std::string& text) {
  if (text == "W") return AlgebraKind::W;
  if (text == "S") return AlgebraKind::S;
  if (text == "H") return AlgebraKind::H;
  if (text == "Hbar") return AlgebraKind::Hbar;
  throw ParameterError("unknown algebra kind '" + text + "' (expected W, S, H or Hbar)");
}

HamiltonianStructure HamiltonianStructure::standard(std::size_t n) {
  if (n == 0 || n % 2 != 0) throw ParameterError("Hamiltonian algebras need even n");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 1; i <= n; i += 2) pairs.emplace_back(i, i + 1);
  return from_pairs(n, pairs);
}

HamiltonianStructure HamiltonianStructure::from_pairs(
    std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  HamiltonianStructure hs;
  hs.pi.assign(n, n);
  hs.sign.assign(n, 0);
  for (auto [a, b] : pairs) {
    if (a < 1 || b < 1 || a > n || b > n) throw ParameterError("pair index out of range");
    hs.pi[a - 1] = b - 1;
    hs.pi[b - 1] = a - 1;
    hs.sign[a - 1] = +1;
    hs.sign[b - 1] = -1;
  }
  hs.validate(n);
  return hs;
}

void HamiltonianStructure::validate(std::size_t n) const {
  if (n % 2 != 0) throw ParameterError("Hamiltonian algebras need even n");
  if (pi.size() != n || sign.size() != n) throw ParameterError("Hamiltonian structure has wrong size");
  for (std::size_t i = 0; i < n; ++i) {
    if (pi[i] >= n) throw ParameterError("pi is not a permutation");
    if (pi[i] == i) throw ParameterError("pi has a fixed point");
    if (pi[pi[i]] != i) throw ParameterError("pi is not an involution");
    if (sign[i] != 1 && sign[i] != -1) throw ParameterError("signs must be +1 or -1");
    if (sign[i] + sign[pi[i]] != 0) throw ParameterError("signs must satisfy a_{i,pi i} = -a_{pi i,i}");
  }
}

std::string HamiltonianStructure::tag() const {
  std::string cycles, signs;
  for (std::size_t i = 0; i < pi.size(); ++i) {
    if (i < pi[i]) cycles += "(" + std::to_string(i + 1) + " " + std::to_string(pi[i] + 1) + ")";
    signs += sign[i] > 0 ? '+' : '-';
  }
  return "pi=" + cycles + ";a=" + signs;
}

Derivation<PrimeField> reduce(const Derivation<IntegerRing>& d) {
  Derivation<PrimeField> out(d.params(), PrimeField(d.params().p));
  for (std::size_t i = 0; i < d.n(); ++i) out.coeff(i) = reduce(d.coeff(i));
  return out;
}

namespace {

struct Reduction {
  std::vector<std::uint32_t> remainder;
  std::vector<std::uint32_t> coefficients;
};

}  // namespace

CartanAlgebra::CartanAlgebra(AlgebraKind kind, FieldParams params, BasisScaling scaling,
                             std::optional<HamiltonianStructure> hs,
                             std::vector<BasisElement> basis)
    : kind_(kind),
      params_(std::move(params)),
      scaling_(scaling),
      hamiltonian_(std::move(hs)),
      basis_(std::move(basis)) {
  finalize();
}

std::size_t CartanAlgebra::position(std::size_t axis, const MultiIndex& beta) const {
  std::size_t rank = 0, stride = 1;
  for (std::size_t i = 0; i < beta.size(); ++i) {
    rank += beta[i] * stride;
    stride *= params_.truncation(i);
  }
  return axis * params_.dp_dimension() + rank;
}

std::vector<std::uint32_t> CartanAlgebra::dense_mod(const Derivation<PrimeField>& d) const {
  std::vector<std::uint32_t> v(params_.n() * params_.dp_dimension(), 0);
  for (std::size_t axis = 0; axis < d.n(); ++axis) {
    for (const auto& [beta, c] : d.coeff(axis).terms()) v[position(axis, beta)] = c;
  }
  return v;
}

namespace {

template <class Rows>
Reduction reduce_against(const Rows& rows, std::vector<std::uint32_t> v, std::size_t dim,
                         const PrimeField& f) {
  Reduction out{std::move(v), std::vector<std::uint32_t>(dim, 0)};
  for (const auto& r : rows) {
    const auto x = out.remainder[r.pivot];
    if (x == 0) continue;
    const auto factor = f.mul(x, f.inv(r.row[r.pivot]));
    for (std::size_t c = 0; c < r.row.size(); ++c) {
      if (r.row[c]) out.remainder[c] = f.sub(out.remainder[c], f.mul(factor, r.row[c]));
    }
    for (std::size_t b = 0; b < dim; ++b) {
      if (r.combination[b]) {
        out.coefficients[b] = f.add(out.coefficients[b], f.mul(factor, r.combination[b]));
      }
    }
  }
  return out;
}

bool all_zero(const std::vector<std::uint32_t>& v) {
  return std::all_of(v.begin(), v.end(), [](auto x) { return x == 0; });
}

}  // namespace

void CartanAlgebra::finalize() {
  const auto f = field();
  const std::size_t d = dim();
  for (std::uint32_t i = 0; i < d; ++i) {
    if (!by_label_.emplace(basis_[i].label, i).second) {
      throw Error("duplicate basis label " + basis_[i].label);
    }
    top_grade_ = std::max(top_grade_, basis_[i].grade);
  }

  // F_p echelon form of the basis.
  for (std::size_t b = 0; b < d; ++b) {
    auto red = reduce_against(echelon_, dense_mod(reduce(basis_[b].element)), d, f);
    auto pivot = std::find_if(red.remainder.begin(), red.remainder.end(),
                              [](auto x) { return x != 0; });
    if (pivot == red.remainder.end()) {
      throw Error("basis element " + basis_[b].label + " is dependent mod p");
    }
    // combination = e_b − Σ factor·comb
    std::vector<std::uint32_t> comb(d, 0);
    for (std::size_t k = 0; k < d; ++k) comb[k] = f.neg(red.coefficients[k]);
    comb[b] = f.add(comb[b], 1);
    const auto pivot_pos = static_cast<std::size_t>(pivot - red.remainder.begin());
    echelon_.push_back({std::move(red.remainder), pivot_pos, std::move(comb)});
  }

  // Integral pivots: a position owned by exactly one basis element.
  std::unordered_map<std::size_t, std::size_t> owners;
  for (const auto& e : basis_) {
    for (std::size_t axis = 0; axis < params_.n(); ++axis) {
      for (const auto& [beta, c] : e.element.coeff(axis).terms()) ++owners[position(axis, beta)];
    }
  }
  integral_exact_ = true;
  for (const auto& e : basis_) {
    std::optional<std::pair<std::size_t, BigInt>> pivot;
    for (std::size_t axis = 0; axis < params_.n() && !pivot; ++axis) {
      for (const auto& [beta, c] : e.element.coeff(axis).terms()) {
        if (owners[position(axis, beta)] == 1) {
          pivot.emplace(position(axis, beta), c);
          break;
        }
      }
    }
    if (!pivot || reduce_mod(pivot->second, params_.p) == 0) {
      integral_exact_ = false;
      int_pivots_.clear();
      break;
    }
    int_pivots_.push_back(*pivot);
  }

  // Structure constants.
  int_table_.assign(d * d, {});
  mod_table_.assign(d * d, {});
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      const auto br = bracket(basis_[i].element, basis_[j].element);
      const auto coords_int = decompose(br);
      const auto coords_mod = decompose(reduce(br));
      SparseVector<BigInt> row_int, neg_int;
      SparseVector<std::uint32_t> row_mod, neg_mod;
      for (std::uint32_t k = 0; k < d; ++k) {
        if (reduce_mod(coords_int[k], params_.p) != coords_mod[k]) {
          throw Error("closure failure: integral and modular brackets disagree for [" +
                      basis_[i].label + ", " + basis_[j].label + "]");
        }
        if (!coords_int[k].is_zero()) {
          row_int.emplace_back(k, coords_int[k]);
          neg_int.emplace_back(k, -coords_int[k]);
        }
        if (coords_mod[k]) {
          row_mod.emplace_back(k, coords_mod[k]);
          neg_mod.emplace_back(k, f.neg(coords_mod[k]));
        }
      }
      int_table_[i * d + j] = std::move(row_int);
      int_table_[j * d + i] = std::move(neg_int);
      mod_table_[i * d + j] = std::move(row_mod);
      mod_table_[j * d + i] = std::move(neg_mod);
    }
  }

  for (std::size_t axis = 0; axis < params_.n(); ++axis) {
    const auto coords = decompose(Derivation<IntegerRing>::partial(params_, IntegerRing{}, axis));
    SparseVector<BigInt> row;
    for (std::uint32_t k = 0; k < d; ++k) {
      if (!coords[k].is_zero()) row.emplace_back(k, coords[k]);
    }
    partials_.push_back(std::move(row));
  }
}

std::optional<std::uint32_t> CartanAlgebra::find(const std::string& label) const {
  auto it = by_label_.find(label);
  if (it == by_label_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::uint32_t> CartanAlgebra::find_index(const MultiIndex& alpha) const {
  for (std::uint32_t i = 0; i < dim(); ++i) {
    if (basis_[i].index == alpha && basis_[i].axes.empty()) return i;
  }
  return std::nullopt;
}

std::vector<std::uint32_t> CartanAlgebra::decompose(const Derivation<PrimeField>& d) const {
  if (!(d.params() == params_)) throw ParameterError("derivation parameter mismatch");
  auto red = reduce_against(echelon_, dense_mod(d), dim(), field());
  if (!all_zero(red.remainder)) {
    throw NotInSpanError("derivation " + d.to_string() + " is not in the span of " +
                         to_string(kind_));
  }
  return red.coefficients;
}

std::vector<BigInt> CartanAlgebra::decompose(const Derivation<IntegerRing>& d) const {
  if (!(d.params() == params_)) throw ParameterError("derivation parameter mismatch");
  std::vector<BigInt> coords(dim());
  if (!integral_exact_) {
    const auto mod = decompose(reduce(d));
    for (std::size_t k = 0; k < dim(); ++k) coords[k] = mod[k];
    return coords;
  }
  std::unordered_map<std::size_t, BigInt> values;
  for (std::size_t axis = 0; axis < params_.n(); ++axis) {
    for (const auto& [beta, c] : d.coeff(axis).terms()) values[position(axis, beta)] = c;
  }
  Derivation<IntegerRing> residual = d;
  for (std::size_t b = 0; b < dim(); ++b) {
    auto it = values.find(int_pivots_[b].first);
    if (it == values.end()) continue;
    const BigInt& pc = int_pivots_[b].second;
    if (it->second % pc != 0) {
      throw NotInSpanError("derivation is not in the integral span (pivot of " +
                           basis_[b].label + ")");
    }
    coords[b] = it->second / pc;
    residual -= basis_[b].element.scaled(coords[b]);
  }
  if (!reduce(residual).is_zero()) {
    throw NotInSpanError("derivation " + d.to_string() + " is not in the span of " +
                         to_string(kind_));
  }
  return coords;
}

std::vector<std::uint32_t> CartanAlgebra::filtration_basis(int i) const {
  if (i < -1 || i > top_grade_ + 1) {
    throw ParameterError("filtration index " + std::to_string(i) + " out of range [-1, " +
                         std::to_string(top_grade_ + 1) + "]");
  }
  std::vector<std::uint32_t> out;
  for (std::uint32_t k = 0; k < dim(); ++k) {
    if (basis_[k].grade >= i) out.push_back(k);
  }
  return out;
}

std::string CartanAlgebra::convention_tag() const {
  std::ostringstream os;
  os << to_string(kind_) << ";p=" << params_.p << ";m=";
  for (std::size_t i = 0; i < params_.n(); ++i) os << (i ? "," : "") << params_.m[i];
  if (hamiltonian_) {
    os << ";" << hamiltonian_->tag() << ";scale="
       << (scaling_ == BasisScaling::Monomial ? "monomial" : "divided");
  }
  return os.str();
}

namespace {

std::string index_text(const MultiIndex& alpha) {
  std::string out;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(alpha[i]);
  }
  return out;
}

// Σ_i a_{i,πi} ∂_i(x^(α)) ∂_{πi}, times scale.
Derivation<IntegerRing> hamiltonian_field(const FieldParams& params, const HamiltonianStructure& hs,
                                          const MultiIndex& alpha, const BigInt& scale) {
  const IntegerRing ring;
  Derivation<IntegerRing> d(params, ring);
  const auto x = DPPolynomial<IntegerRing>::monomial(params, ring, alpha, scale);
  for (std::size_t i = 0; i < params.n(); ++i) {
    auto term = x.partial(i);
    if (hs.sign[i] < 0) term = term.scaled(-1);
    d.coeff(hs.pi[i]) += term;
  }
  return d;
}

std::vector<BasisElement> hamiltonian_basis(const FieldParams& params,
                                            const HamiltonianStructure& hs, BasisScaling scaling,
                                            bool with_top) {
  hs.validate(params.n());
  if (scaling == BasisScaling::Monomial && !params.all_ones()) {
    throw ParameterError("monomial scaling needs m = (1,...,1)");
  }
  const MultiIndex delta = delta_of(params);
  std::vector<BasisElement> basis;
  for (const auto& alpha : dp_basis(params)) {
    if (alpha.is_zero() || (alpha == delta && !with_top)) continue;
    BasisElement e{"", Derivation<IntegerRing>(params, IntegerRing{}), 0, alpha, {}};
    const bool monomial = scaling == BasisScaling::Monomial;
    e.element = hamiltonian_field(params, hs, alpha, monomial ? multi_factorial(alpha) : BigInt(1));
    e.grade = static_cast<int>(alpha.degree()) - 2;
    e.label = monomial ? "u_{" + index_text(alpha) + "}" : "D(" + index_text(alpha) + ")";
    basis.push_back(std::move(e));
  }
  return basis;
}

}  // namespace

AlgebraPtr build_W(const FieldParams& params) {
  std::vector<BasisElement> basis;
  for (const auto& alpha : dp_basis(params)) {
    for (std::size_t i = 0; i < params.n(); ++i) {
      BasisElement e{"x^" + alpha.to_string() + "d_" + std::to_string(i + 1),
                     Derivation<IntegerRing>::field(params, IntegerRing{}, alpha, i, 1),
                     static_cast<int>(alpha.degree()) - 1, alpha, {i}};
      basis.push_back(std::move(e));
    }
  }
  return AlgebraPtr(new CartanAlgebra(AlgebraKind::W, params, BasisScaling::DividedPower,
                                      std::nullopt, std::move(basis)));
}

AlgebraPtr build_S(const FieldParams& params) {
  if (params.n() < 2) throw ParameterError("special algebra S needs n >= 2");
  const PrimeField f(params.p);
  const IntegerRing ring;
  std::vector<BasisElement> basis;
  struct Row {
    std::vector<std::uint32_t> row;
    std::size_t pivot;
    std::vector<std::uint32_t> combination;
  };
  std::vector<Row> echelon;
  const std::size_t width = params.n() * params.dp_dimension();
  auto dense = [&](const Derivation<PrimeField>& d) {
    std::vector<std::uint32_t> v(width, 0);
    for (std::size_t axis = 0; axis < d.n(); ++axis) {
      for (const auto& [beta, c] : d.coeff(axis).terms()) {
        std::size_t rank = 0, stride = 1;
        for (std::size_t k = 0; k < beta.size(); ++k) {
          rank += beta[k] * stride;
          stride *= params.truncation(k);
        }
        v[axis * params.dp_dimension() + rank] = c;
      }
    }
    return v;
  };
  // Spanning set D_{i,j}(α) in order (α, i, j); keep the independent ones.
  for (const auto& alpha : dp_basis(params)) {
    const auto x = DPPolynomial<IntegerRing>::monomial(params, ring, alpha, 1);
    for (std::size_t i = 0; i < params.n(); ++i) {
      for (std::size_t j = i + 1; j < params.n(); ++j) {
        Derivation<IntegerRing> d(params, ring);
        d.coeff(j) += x.partial(i);
        d.coeff(i) -= x.partial(j);
        if (d.is_zero()) continue;
        auto red = reduce_against(echelon, dense(reduce(d)), 0, f);
        auto pivot = std::find_if(red.remainder.begin(), red.remainder.end(),
                                  [](auto v) { return v != 0; });
        if (pivot == red.remainder.end()) continue;
        const auto pivot_pos = static_cast<std::size_t>(pivot - red.remainder.begin());
        echelon.push_back({std::move(red.remainder), pivot_pos, {}});
        basis.push_back({"D_{" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "}" +
                             alpha.to_string(),
                         std::move(d), static_cast<int>(alpha.degree()) - 2, alpha, {i, j}});
      }
    }
  }
  std::stable_sort(basis.begin(), basis.end(),
                   [](const auto& a, const auto& b) { return a.grade < b.grade; });
  return AlgebraPtr(new CartanAlgebra(AlgebraKind::S, params, BasisScaling::DividedPower,
                                      std::nullopt, std::move(basis)));
}

AlgebraPtr build_H(const FieldParams& params, const HamiltonianStructure& hs,
                   BasisScaling scaling) {
  return AlgebraPtr(new CartanAlgebra(AlgebraKind::H, params, scaling, hs,
                                      hamiltonian_basis(params, hs, scaling, false)));
}

AlgebraPtr build_Hbar(const FieldParams& params, const HamiltonianStructure& hs,
                      BasisScaling scaling) {
  return AlgebraPtr(new CartanAlgebra(AlgebraKind::Hbar, params, scaling, hs,
                                      hamiltonian_basis(params, hs, scaling, true)));
}

AlgebraPtr build_algebra(AlgebraKind kind, const FieldParams& params,
                         std::optional<HamiltonianStructure> hs,
                         std::optional<BasisScaling> scaling) {
  switch (kind) {
    case AlgebraKind::W: return build_W(params);
    case AlgebraKind::S: return build_S(params);
    case AlgebraKind::H:
    case AlgebraKind::Hbar: {
      if (params.n() % 2 != 0) throw ParameterError("Hamiltonian algebras need even n");
      const auto structure = hs ? *hs : HamiltonianStructure::standard(params.n());
      const auto scale = scaling ? *scaling
                                 : (params.all_ones() ? BasisScaling::Monomial
                                                      : BasisScaling::DividedPower);
      return kind == AlgebraKind::H ? build_H(params, structure, scale)
                                    : build_Hbar(params, structure, scale);
    }
  }
  throw ParameterError("unknown algebra kind");
}

}  // namespace cartan
