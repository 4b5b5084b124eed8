#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "stabkit/bitvec.hpp"
#include "stabkit/gf2.hpp"
#include "stabkit/pauli.hpp"

namespace stabkit {

inline BitVec symplectic_row(const PauliOperator& p) {
  return concat(p.x(), p.z());
}

// Symplectic inner product; 1 iff the operators anticommute.
inline bool symplectic_product(const PauliOperator& a,
                               const PauliOperator& b) {
  return dot(a.x(), b.z()) != dot(a.z(), b.x());
}

struct GroupSolution {
  BitVec coeffs;          // one bit per generator
  PauliOperator product;  // exact product of the selected generators,
                          // ascending index order
};

// Express target's x/z pattern over the generators' patterns.  The product
// is computed exactly, so target = i^k * product for some k.
inline std::optional<GroupSolution> solve_in_group(
    const std::vector<PauliOperator>& gens, const PauliOperator& target) {
  std::vector<BitVec> rows;
  rows.reserve(gens.size());
  for (const auto& g : gens) rows.push_back(symplectic_row(g));
  auto coeffs = gf2_solve_combination(rows, symplectic_row(target));
  if (!coeffs) return std::nullopt;
  PauliOperator prod = PauliOperator::identity(target.size());
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (coeffs->get(i)) prod = prod * gens[i];
  return GroupSolution{std::move(*coeffs), std::move(prod)};
}

// Phase exponent k with target = i^k * (product of generators), when the
// pattern lies in the span; k = 0 means exact group membership.
inline std::optional<unsigned> group_phase(
    const std::vector<PauliOperator>& gens, const PauliOperator& target) {
  auto sol = solve_in_group(gens, target);
  if (!sol) return std::nullopt;
  return (target.phase() + 4u - sol->product.phase()) & 3u;
}

}  // namespace stabkit
