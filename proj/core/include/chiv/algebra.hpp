// Formal integer combinations of products of threshold indicators.
//
// A generator x_A (one per subset A of {1,...,n}) stands for the indicator
// of  sum_{i in A} u_i - sum_{i not in A} u_i > 1  on the open region
// { u_i > 0, sum u_i < 2 }. Since each generator is idempotent and
// x_A * x_B = x_A whenever A is contained in B, a product is determined
// by the containment-minimal sets among its factors. A Term stores that
// canonical form: a strict antichain of masks, sorted ascending. The empty
// Term is the constant 1.
//
// Coefficients are arbitrary-precision integers; expansion counts overflow
// 32 bits well before the sizes this artifact targets.

#pragma once

#include "chiv/subset.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <iosfwd>
#include <span>
#include <unordered_map>
#include <vector>

namespace chiv {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class Term {
public:
    // Constant 1 (empty product).
    explicit Term(int n);

    // Canonicalizes: drops every set that strictly contains another factor,
    // deduplicates, sorts ascending by mask value.
    static Term product(std::span<const Subset> factors);
    static Term product(int n, std::span<const Mask> factors);

    int ground_size() const { return n_; }
    const std::vector<Mask>& sets() const { return sets_; }
    std::size_t arity() const { return sets_.size(); }
    bool is_unit() const { return sets_.empty(); }

    Subset set_at(std::size_t i) const { return Subset(sets_[i], n_); }

    bool operator==(const Term&) const = default;
    bool operator<(const Term& o) const {
        if (n_ != o.n_) return n_ < o.n_;
        return sets_ < o.sets_;
    }

    std::string to_string() const;

private:
    int n_;
    std::vector<Mask> sets_;
};

struct TermHash {
    std::size_t operator()(const Term& t) const {
        std::uint64_t h = 0x9e3779b97f4a7c15ull ^ static_cast<std::uint64_t>(t.ground_size());
        for (Mask m : t.sets()) {
            h ^= m + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

class FormalSum {
public:
    explicit FormalSum(int n);

    static FormalSum zero(int n) { return FormalSum(n); }
    static FormalSum constant(int n, const Int& c);
    static FormalSum generator(const Subset& a);  // single x_A

    int ground_size() const { return n_; }
    std::size_t term_count() const { return coeffs_.size(); }
    bool is_zero_sum() const { return coeffs_.empty(); }

    // Zero coefficients are erased eagerly; iteration never sees them.
    void add_term(const Term& t, const Int& c);
    Int coeff(const Term& t) const;

    const std::unordered_map<Term, Int, TermHash>& terms() const { return coeffs_; }
    // Deterministic view, sorted by Term ordering.
    std::vector<std::pair<Term, Int>> sorted_terms() const;

    FormalSum& operator+=(const FormalSum& o);
    FormalSum& operator-=(const FormalSum& o);
    FormalSum& scale(const Int& c);

    friend FormalSum operator+(FormalSum a, const FormalSum& b) { return a += b; }
    friend FormalSum operator-(FormalSum a, const FormalSum& b) { return a -= b; }

    // Distributes, multiplying term by term and re-canonicalizing each
    // product. No zero elimination happens here.
    friend FormalSum operator*(const FormalSum& a, const FormalSum& b);

    // Replaces every factor A by the symmetric difference A ^ j, then
    // re-canonicalizes (symmetric difference does not preserve antichains).
    FormalSum apply_sym_diff(const Subset& j) const;

    bool operator==(const FormalSum& o) const;

    std::string to_string() const;

private:
    int n_;
    std::unordered_map<Term, Int, TermHash> coeffs_;
};

// Value of a generator / term / sum at an exact point of the open region.
// The point must have exactly n coordinates. Generator semantics are the
// strict threshold above; no region membership check is made here.
bool generator_value_at(Mask a, int n, std::span<const Rational> u);
bool term_value_at(const Term& t, std::span<const Rational> u);
Int evaluate_at_point(const FormalSum& s, std::span<const Rational> u);

// One JSON object per line: {"coeff":"<decimal>","sets":[m1,...],"n":n}.
// Lines follow the deterministic sorted order.
void dump_jsonl(const FormalSum& s, std::ostream& os);

} // namespace chiv
