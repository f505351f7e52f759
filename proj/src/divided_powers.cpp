#include "cartan/divided_powers.hpp"

#include <algorithm>

namespace cartan {

std::vector<MultiIndex> dp_basis(const FieldParams& params) {
  const MultiIndex delta = delta_of(params);
  std::vector<MultiIndex> out;
  out.reserve(params.dp_dimension());
  MultiIndex current(params.n());
  // Odometer over the box 0 <= α <= δ.
  while (true) {
    out.push_back(current);
    std::size_t i = 0;
    for (; i < current.size(); ++i) {
      if (current[i] < delta[i]) {
        ++current[i];
        break;
      }
      current[i] = 0;
    }
    if (i == current.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

DPPolynomial<PrimeField> reduce(const DPPolynomial<IntegerRing>& f) {
  PrimeField field(f.params().p);
  DPPolynomial<PrimeField> out(f.params(), field);
  for (const auto& [alpha, c] : f.terms()) out.add_term(alpha, field.from_big(c));
  return out;
}

}  // namespace cartan
