// Set partitions of {1,...,n} under the refinement order, with the Mobius
// function of the lattice in closed form and small dense incidence tables
// for cross-checking it.
//
// Canonical block order: blocks sorted by their least element. Partitions
// are enumerated in restricted-growth-string order, which is deterministic.

#pragma once

#include "chiv/subset.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace chiv {

// Enumeration beyond n = 12 is never needed and (n-1)! would leave int64.
inline constexpr int kMaxPartitionGroundSize = 12;

class SetPartition {
public:
    // Blocks must be disjoint, nonempty, and cover {1,...,n}; any input
    // order is accepted and normalized.
    explicit SetPartition(std::vector<Subset> blocks);

    // Restricted growth string: rgs[0] = 0, rgs[i] <= 1 + max(prefix).
    // rgs[i] is the block label of element i+1.
    static SetPartition from_rgs(std::span<const int> rgs);

    static SetPartition singletons(int n);  // finest
    static SetPartition one_block(int n);   // coarsest

    int ground_size() const { return n_; }
    int length() const { return static_cast<int>(blocks_.size()); }  // number of blocks
    const std::vector<Subset>& blocks() const { return blocks_; }

    // Index of the block containing `element` (1-indexed element).
    int block_of(int element) const;

    bool operator==(const SetPartition&) const = default;

    std::string to_string() const;

private:
    int n_;
    std::vector<Subset> blocks_;
};

// F refines G: every block of F is contained in a block of G.
bool refines(const SetPartition& f, const SetPartition& g);

// Mobius function of the partition lattice. Zero when f does not refine g;
// otherwise the product over blocks G_j of (-1)^(b_j - 1) * (b_j - 1)!
// where b_j counts the blocks of F inside G_j.
std::int64_t mobius(const SetPartition& f, const SetPartition& g);

// Streams all partitions of {1,...,n} in restricted-growth-string order.
void for_each_partition(int n, const std::function<void(const SetPartition&)>& fn);
std::vector<SetPartition> enumerate_partitions(int n);

// Streams the partitions obtained from G by leaving every block alone or
// splitting it into two nonempty parts (any number of blocks may split).
// Includes G itself. Every result refines G and is emitted exactly once.
void for_each_two_refinement(const SetPartition& g,
                             const std::function<void(const SetPartition&)>& fn);
std::vector<SetPartition> enumerate_two_refinements(const SetPartition& g);

// Streams the partitions obtained from F by merging disjoint pairs of
// blocks (a perfect matching on an even-sized selection of blocks; the
// least unpaired selected block is always paired first). Includes F.
void for_each_two_coarser(const SetPartition& f,
                          const std::function<void(const SetPartition&)>& fn);
std::vector<SetPartition> enumerate_two_coarser(const SetPartition& f);

// Dense incidence algebra over all partitions of a small ground set.
// Intended for n <= 5 (Bell(5)^2 = 2704 entries); guarded accordingly.
class PartitionLattice {
public:
    explicit PartitionLattice(int n);

    int n() const { return n_; }
    int size() const { return static_cast<int>(parts_.size()); }
    const SetPartition& at(int i) const { return parts_[i]; }
    int index_of(const SetPartition& p) const;
    bool leq(int i, int j) const { return leq_[i * parts_.size() + j]; }

    using Table = std::vector<std::int64_t>;  // size() * size(), row = lower arg

    Table delta() const;
    Table zeta() const;
    Table mobius_closed_form() const;
    // Recursive definition: mu(x,x) = 1, mu(x,y) = -sum over x <= z < y.
    // Independent of the closed form; used as its oracle.
    Table mobius_recursive() const;

    // (f * g)(x, y) = sum over z in [x, y] of f(x, z) g(z, y).
    Table convolve(const Table& f, const Table& g) const;

private:
    int n_;
    std::vector<SetPartition> parts_;
    std::vector<bool> leq_;
};

} // namespace chiv
