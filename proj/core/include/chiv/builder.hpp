// Builds the two sides of the verified identity as formal sums.
//
// Right side: over all subsets I of {1,...,n},  sum (-1)^(|I|+1) x_I,
// one single-factor term per subset, 2^n terms, no cancellation.
//
// Left side, canonical form: over J a subset of {2,...,n} and ascending
// chains A_1 < ... < A_k with A_1 = {1},
//   sum (-1)^(n-k) prod_i ( x_{A_i ^ J} + x_{complement(A_i) ^ J} ).
// The expansion is streamed chain by chain; with zero elimination on,
// each canonicalized product is dropped the moment the oracle calls it
// identically zero. The J values shard the work across threads; results
// do not depend on scheduling because merging is plain coefficient
// addition.
//
// Left side, direct form: over set partitions F of {1,...,n}, block
// permutations fixing the block that contains 1, and all J, with prefix
// unions P_i,
//   1/2 [ (-1)^(len-1) + prod_i ( x_{P_i ^ J} + x_{P_i ^ Jc} - 1 ) ].
// Halves are tracked as doubled integers; the final division checks that
// every coefficient is even. Factorially heavier than the canonical form,
// kept as an independent cross-check for small n.

#pragma once

#include "chiv/algebra.hpp"
#include "chiv/partition.hpp"
#include "chiv/zero_oracle.hpp"

#include <cstdint>
#include <functional>

namespace chiv {

struct BuildStats {
    std::uint64_t raw_monomials = 0;  // expanded products before combining
    std::uint64_t dropped_zero = 0;   // monomials discarded by the oracle
};

// Called during canonical builds: (raw monomials so far, shards finished,
// shard total). Invoked at shard boundaries and every ~1M monomials.
using ProgressFn = std::function<void(std::uint64_t, int, int)>;

FormalSum build_rhs(int n);

// Pre: 1 <= n <= 8. workers = 0 means hardware concurrency.
FormalSum build_lhs_canonical(int n, bool zero_elim, ZeroCache& cache, int workers = 0,
                              BuildStats* stats = nullptr, const ProgressFn& progress = {});

// The canonical-form inner sum at one fixed J (J must avoid element 1).
FormalSum build_inner_sum(int n, const Subset& j, bool zero_elim, ZeroCache& cache,
                          BuildStats* stats = nullptr);

// Pre: 1 <= n <= 6; cost grows factorially.
FormalSum build_lhs_direct(int n);

// Permutation-sum of products of box indicators for disjoint blocks that
// cover the ground set: over permutations of the blocks fixing the first,
// the product over prefix unions P of (1 - x_P - x_{complement(P)}).
FormalSum chi_star(const std::vector<Subset>& blocks);

// Conjectured collapsed form of the inner sum at J (J avoids element 1):
//   ( sum_{A subset of J} (-1)^|A| x_{A + {1}} )
// * ( sum_{J subset of B subset of {2..n}} (-1)^(|B|-|J|-1) x_B )
// plus, exactly when J = {2,...,n},  sum_{A} (-1)^|A| x_{A + {1}}.
FormalSum build_simp_forms(int n, const Subset& j);

} // namespace chiv
