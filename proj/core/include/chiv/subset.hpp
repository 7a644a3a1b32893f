// Subsets of {1,...,n} as single-word bit masks, plus ascending chains.
//
// Conventions fixed here and relied on everywhere else:
//   * elements are 1-indexed; element i lives at bit (i-1)
//   * n is capped at 16 so every subset fits one machine word
//   * enumeration orders are numeric on the mask value, so they are
//     deterministic and independent of platform or thread count

#pragma once

#include <cstdint>
#include <compare>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>
#include <bit>

namespace chiv {

using Mask = std::uint32_t;

inline constexpr int kMaxGroundSize = 16;

// Value type: one subset of {1,...,n}. n is carried so mismatched ground
// sets are caught at the boundary instead of corrupting bit arithmetic.
class Subset {
public:
    Subset() : n_(1), bits_(0) {}

    Subset(Mask bits, int n) : n_(check_n(n)), bits_(bits) {
        if (bits & ~mask_all(n_))
            throw std::invalid_argument("Subset: bits outside ground set");
    }

    static Subset empty(int n) { return Subset(0, n); }
    static Subset full(int n) { return Subset(mask_all(check_n(n)), n); }

    // Elements are 1-indexed.
    static Subset of(std::initializer_list<int> elems, int n) {
        Mask m = 0;
        for (int e : elems) {
            if (e < 1 || e > n) throw std::invalid_argument("Subset: element out of range");
            m |= Mask(1) << (e - 1);
        }
        return Subset(m, n);
    }

    Mask bits() const { return bits_; }
    int ground_size() const { return n_; }

    bool contains(int element) const {
        if (element < 1 || element > n_)
            throw std::invalid_argument("Subset: element out of range");
        return (bits_ >> (element - 1)) & 1u;
    }

    int size() const { return std::popcount(bits_); }
    bool is_empty() const { return bits_ == 0; }
    bool is_full() const { return bits_ == mask_all(n_); }

    Subset complement() const { return Subset(bits_ ^ mask_all(n_), n_); }

    bool subset_of(const Subset& other) const {
        check_same(other);
        return (bits_ & other.bits_) == bits_;
    }
    bool proper_subset_of(const Subset& other) const {
        return subset_of(other) && bits_ != other.bits_;
    }

    friend Subset sym_diff(const Subset& a, const Subset& b) {
        a.check_same(b);
        return Subset(a.bits_ ^ b.bits_, a.n_);
    }
    friend Subset set_union(const Subset& a, const Subset& b) {
        a.check_same(b);
        return Subset(a.bits_ | b.bits_, a.n_);
    }
    friend Subset set_intersect(const Subset& a, const Subset& b) {
        a.check_same(b);
        return Subset(a.bits_ & b.bits_, a.n_);
    }
    friend Subset set_minus(const Subset& a, const Subset& b) {
        a.check_same(b);
        return Subset(a.bits_ & ~b.bits_, a.n_);
    }

    auto operator<=>(const Subset&) const = default;

    // Renders as {1,3,4}; empty set renders as {}.
    std::string to_string() const;

    static Mask mask_all(int n) { return (Mask(1) << n) - 1; }

private:
    static int check_n(int n) {
        if (n < 1 || n > kMaxGroundSize)
            throw std::invalid_argument("Subset: ground size must be in [1,16]");
        return n;
    }
    void check_same(const Subset& other) const {
        if (n_ != other.n_)
            throw std::invalid_argument("Subset: mismatched ground sets");
    }

    int n_;
    Mask bits_;
};

// Strictly ascending chain A_1 < A_2 < ... < A_k under inclusion.
// A chain may start at the empty set; k >= 1.
class Chain {
public:
    explicit Chain(std::vector<Subset> sets) : sets_(std::move(sets)) {
        if (sets_.empty()) throw std::invalid_argument("Chain: must be nonempty");
        for (std::size_t i = 1; i < sets_.size(); ++i)
            if (!sets_[i - 1].proper_subset_of(sets_[i]))
                throw std::invalid_argument("Chain: sets must strictly ascend");
    }

    const std::vector<Subset>& sets() const { return sets_; }
    std::size_t length() const { return sets_.size(); }
    int ground_size() const { return sets_.front().ground_size(); }

    bool operator==(const Chain&) const = default;

private:
    std::vector<Subset> sets_;
};

// Streams every ascending chain that starts at `first` (and, when given,
// ends exactly at `last`) without materializing the chain list. The
// callback receives each chain as a mask vector; masks strictly ascend.
// Order: lexicographic on the mask sequence, shorter prefixes first.
namespace detail {
// `bound` is the largest allowed set. exact = only chains ending at bound
// are emitted; otherwise every prefix is a chain in its own right.
template <typename F>
void extend_chain(std::vector<Mask>& cur, Mask bound, bool exact, F&& fn) {
    const std::vector<Mask>& view = cur;
    if (cur.back() == bound) {
        fn(view);
        return;
    }
    if (!exact) fn(view);
    const Mask room = bound & ~cur.back();
    // submask walk of `room` in ascending numeric order
    Mask s = (0 - room) & room;
    while (true) {
        cur.push_back(cur.back() | s);
        extend_chain(cur, bound, exact, fn);
        cur.pop_back();
        if (s == room) break;
        s = (s - room) & room;
    }
}
} // namespace detail

template <typename F>
void for_each_chain(int n, const Subset& first, std::optional<Subset> last, F&& fn) {
    if (first.ground_size() != n)
        throw std::invalid_argument("for_each_chain: first has wrong ground size");
    const Mask full = Subset::mask_all(n);
    Mask bound = full;
    bool exact = false;
    if (last) {
        if (last->ground_size() != n)
            throw std::invalid_argument("for_each_chain: last has wrong ground size");
        if (!first.subset_of(*last))
            throw std::invalid_argument("for_each_chain: first must be contained in last");
        bound = last->bits();
        exact = true;
    }
    std::vector<Mask> cur{first.bits()};
    cur.reserve(n + 1);
    detail::extend_chain(cur, bound, exact, fn);
}

// Materializing wrapper for tests and small n.
std::vector<Chain> enumerate_chains(int n, const Subset& first, std::optional<Subset> last);

// Families of chains whose signed counts admit closed forms. Every family
// constrains the last set to {1,...,n}.
enum class ChainFamily {
    FirstContainsOne,  // 1 in A_1
    FirstEmpty,        // A_1 = {}
    ContainsSubchain,  // 1 in A_1 and a given chain B appears as a subchain
};

// Brute-force signed count  sum over chains of (-1)^length.
// For ContainsSubchain the subchain must satisfy 1 in B_1.
std::int64_t chain_sign_sum(int n, ChainFamily family, const Chain* subchain = nullptr);

} // namespace chiv
