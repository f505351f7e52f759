#include "cartan/symmetric_algebra.hpp"

#include <algorithm>
#include <cctype>
#include <regex>

namespace cartan {

std::uint64_t total_degree(const Monomial& m) {
  std::uint64_t d = 0;
  for (auto [k, e] : m) d += e;
  return d;
}

std::uint32_t exponent_of(const Monomial& m, std::uint32_t k) {
  auto it = std::lower_bound(m.begin(), m.end(), k,
                             [](const auto& pair, std::uint32_t key) { return pair.first < key; });
  return it != m.end() && it->first == k ? it->second : 0;
}

Monomial shift_factor(const Monomial& m, std::uint32_t from, std::uint32_t to) {
  if (from == to) return m;
  Monomial out;
  out.reserve(m.size() + 1);
  bool placed = false;
  for (auto [k, e] : m) {
    if (!placed && to < k) {
      out.emplace_back(to, 1);
      placed = true;
    }
    if (k == to) {
      ++e;
      placed = true;
    }
    if (k == from) {
      if (--e == 0) continue;
    }
    out.emplace_back(k, e);
  }
  if (!placed) out.emplace_back(to, 1);
  return out;
}

Monomial multiply_monomials(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      out.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  return out;
}

Budget Budget::with(std::size_t max_terms, double max_seconds) {
  Budget b;
  b.max_terms = max_terms;
  if (max_seconds > 0) {
    b.deadline = std::chrono::steady_clock::now() +
                 std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                     std::chrono::duration<double>(max_seconds));
  }
  return b;
}

void Budget::check(std::size_t terms) const {
  if (max_terms && terms > max_terms) {
    throw BudgetExceeded("term budget exceeded (" + std::to_string(terms) + " > " +
                         std::to_string(max_terms) + ")");
  }
  if (deadline && std::chrono::steady_clock::now() > *deadline) {
    throw BudgetExceeded("time budget exceeded");
  }
}

ModPoly reduce(const IntPoly& f) {
  const PrimeField field(f.algebra()->params().p);
  ModPoly out(f.algebra(), field);
  for (const auto& [m, c] : f.terms()) out.add_term(m, field.from_big(c));
  return out;
}

namespace {

std::vector<std::string> split_terms(const std::string& text, std::vector<bool>& negative) {
  std::vector<std::string> out;
  std::string current;
  int depth = 0;
  bool neg = false;
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    if (ch == '(' || ch == '{') ++depth;
    if (ch == ')' || ch == '}') --depth;
    if (depth == 0 && (ch == '+' || ch == '-')) {
      if (!current.empty()) {
        out.push_back(current);
        negative.push_back(neg);
        current.clear();
        neg = false;
      }
      if (ch == '-') neg = !neg;
      continue;
    }
    current += ch;
  }
  if (depth != 0) throw ParameterError("unbalanced brackets in polynomial text");
  if (!current.empty()) {
    out.push_back(current);
    negative.push_back(neg);
  }
  return out;
}

std::vector<std::string> split_factors(const std::string& term) {
  std::vector<std::string> out;
  std::string current;
  int depth = 0;
  for (char ch : term) {
    if (ch == '(' || ch == '{') ++depth;
    if (ch == ')' || ch == '}') --depth;
    if (depth == 0 && ch == '*') {
      out.push_back(current);
      current.clear();
      continue;
    }
    current += ch;
  }
  out.push_back(current);
  return out;
}

}  // namespace

template <class Ring>
SymPolynomial<Ring> parse_polynomial(const std::string& text, AlgebraPtr algebra, Ring ring) {
  SymPolynomial<Ring> out(algebra, ring);
  std::vector<bool> negative;
  const auto terms = split_terms(text, negative);
  static const std::regex number(R"(\d+)");
  static const std::regex power(R"((.*)\^(\d+))");
  for (std::size_t t = 0; t < terms.size(); ++t) {
    BigInt coeff = negative[t] ? -1 : 1;
    Monomial mono;
    for (const auto& factor : split_factors(terms[t])) {
      if (factor.empty()) throw ParameterError("empty factor in '" + terms[t] + "'");
      std::smatch match;
      if (std::regex_match(factor, number)) {
        coeff *= BigInt(factor);
        continue;
      }
      std::uint32_t exponent = 1;
      auto index = algebra->find(factor);
      if (!index && std::regex_match(factor, match, power)) {
        index = algebra->find(match[1].str());
        exponent = static_cast<std::uint32_t>(std::stoul(match[2].str()));
      }
      if (!index) throw ParameterError("unknown basis label '" + factor + "'");
      if (exponent == 0) continue;
      mono = multiply_monomials(mono, Monomial{{*index, exponent}});
    }
    out.add_term(mono, ring.from_big(coeff));
  }
  return out;
}

template IntPoly parse_polynomial(const std::string&, AlgebraPtr, IntegerRing);
template ModPoly parse_polynomial(const std::string&, AlgebraPtr, PrimeField);

std::optional<std::uint32_t> w_linear_element(const CartanAlgebra& algebra, std::size_t i,
                                              std::size_t j) {
  const auto alpha = MultiIndex::unit(algebra.params().n(), i);
  return algebra.find("x^" + alpha.to_string() + "d_" + std::to_string(j + 1));
}

GeneratorCheck check_generator_W(const ModPoly& f) {
  const auto& algebra = *f.algebra();
  if (algebra.kind() != AlgebraKind::W) throw ParameterError("check_generator_W needs a W-type algebra");
  GeneratorCheck out;
  if (algebra.top_grade() >= 1) {
    for (auto b : algebra.filtration_basis(1)) {
      if (!ad_action(b, f).is_zero()) {
        out.ok = false;
        out.witness = b;
        out.diagnostics.push_back("ad(" + algebra.label(b) + ")(F) != 0 with " +
                                  algebra.label(b) + " in L_1 filtration");
        return out;
      }
    }
  }
  const std::size_t n = algebra.params().n();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto b = w_linear_element(algebra, i, j);
      if (!b) throw Error("W basis lacks x_i d_j");
      auto image = ad_action(*b, f);
      if (i == j) image += f;  // expect −F
      if (!image.is_zero()) {
        out.ok = false;
        out.witness = *b;
        out.diagnostics.push_back("ad(" + algebra.label(*b) + ")(F) != " +
                                  (i == j ? std::string("-F") : std::string("0")));
        return out;
      }
    }
  }
  return out;
}

GeneratorCheck check_generator_SH(const ModPoly& f) {
  const auto& algebra = *f.algebra();
  if (algebra.kind() == AlgebraKind::W) {
    throw ParameterError("check_generator_SH needs an S, H or Hbar-type algebra");
  }
  GeneratorCheck out;
  for (auto b : algebra.filtration_basis(0)) {
    if (!ad_action(b, f).is_zero()) {
      out.ok = false;
      out.witness = b;
      out.diagnostics.push_back("ad(" + algebra.label(b) + ")(F) != 0 with " + algebra.label(b) +
                                " of grade " + std::to_string(algebra.grade(b)) + " in L_0");
      return out;
    }
  }
  return out;
}

bool commutation_expansion_check(const Derivation<PrimeField>& d, const ModPoly& f) {
  const auto& algebra = *f.algebra();
  const auto& params = algebra.params();
  const PrimeField& field = f.ring();
  const MultiIndex delta = delta_of(params);

  const ModPoly lhs = ad_action(d, d_delta(f));

  ModPoly rhs(f.algebra(), field);
  for (const auto& gamma : dp_basis(params)) {
    const auto binom = multi_binom(delta, gamma, params.p);
    if (binom == 0) continue;
    // d^(γ)D = ad(∂_1)^{γ_1} ⋯ ad(∂_n)^{γ_n} D
    Derivation<PrimeField> dg = d;
    for (std::size_t axis = 0; axis < params.n(); ++axis) {
      const auto partial = Derivation<PrimeField>::partial(params, field, axis);
      for (std::uint32_t t = 0; t < gamma[axis] && !dg.is_zero(); ++t) dg = bracket(partial, dg);
    }
    if (dg.is_zero()) continue;
    const auto rest = *mi_sub(delta, gamma);
    auto term = d_power(rest, ad_action(dg, f));
    auto c = binom;
    if (gamma.degree() % 2 == 1) c = field.neg(c);
    rhs += term.scaled(c);
  }
  return lhs == rhs;
}

}  // namespace cartan
