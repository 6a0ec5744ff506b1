#pragma once

#include <cstdint>
#include <vector>

#include "stab/schema.hpp"

namespace stab {

// Seeded random generator of bound-linear schemata (indices alpha*n +- i +
// gamma with small constants, iteration bounds of the restricted shapes).
// Deterministic in the seed.
Schema gen_bound_linear(uint64_t seed, int size_budget);

// Shrink candidates: structurally smaller schemata that stay bound-linear
// (drop conjuncts/disjuncts, strip iterations, shrink coefficients).
std::vector<Schema> shrink_bound_linear(const Schema& s);

}  // namespace stab
