// Decides whether two formal sums agree as functions on the open region.
//
// Cancellation route: subtract, then let the zero oracle strike every
// term that vanishes identically. An empty residual proves equality; a
// nonempty one proves nothing by itself, so the verdict is Inconclusive,
// never NotEqual.
//
// Valuation route: a feasible antichain W of nonempty subsets induces the
// ring map  x_A -> [A contains some member of W].  Products of generators
// indexed by a feasible antichain do not vanish, and agreement of the two
// sums under every such map decides equality in the quotient by the ideal
// of identically-zero products. Exhaustive for n <= 5; n = 6 runs under a
// node budget and is labeled non-exhaustive unless the walk completed.

#pragma once

#include "chiv/builder.hpp"

#include <optional>

namespace chiv {

// Refusal of an operation outside its supported range (distinct from a
// malformed argument; the CLI maps this to a usage error).
struct CapabilityError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Strict antichain of nonempty subsets; masks sorted ascending. The empty
// antichain is the valuation sending every generator to 0.
class AntichainValuation {
public:
    AntichainValuation(int n, std::vector<Mask> min_sets);

    int ground_size() const { return n_; }
    const std::vector<Mask>& min_sets() const { return sets_; }

    // x_A value under this valuation.
    bool generator_value(Mask a) const;

    // Product of the generators of the antichain, for oracle queries.
    Term to_term() const;

    bool operator==(const AntichainValuation&) const = default;
    std::string to_string() const;

private:
    int n_;
    std::vector<Mask> sets_;
};

Int evaluate(const FormalSum& s, const AntichainValuation& v);

// Exact interior point whose induced generator pattern is exactly v, or
// nothing when the sign cell is empty. Stronger than feasibility of the
// member product: every maximal mask outside the up-set is additionally
// pinned at or below its threshold. The returned point is rechecked in
// exact arithmetic against all 2^n generators before being handed out.
std::optional<std::vector<Rational>> realize_valuation(const AntichainValuation& v);

struct ValuationEnumeration {
    std::vector<AntichainValuation> valuations;
    bool exhaustive = true;
};

// Depth-first over candidate sets in decreasing-size order; a branch is
// pruned as soon as its product goes identically zero, which is sound
// because adding factors only shrinks the support. budget = 0 is
// unlimited and allowed for n <= 5 only; n = 6 requires a budget; n >= 7
// is refused.
ValuationEnumeration enumerate_feasible_valuations(int n, ZeroCache& cache,
                                                   std::uint64_t budget = 0);

enum class VerdictKind { ProvedEqual, NotEqual, Inconclusive };
const char* to_string(VerdictKind k);

struct ValuationWitness {
    AntichainValuation valuation;
    std::vector<Rational> point;  // interior point realizing the valuation
    Int lhs_value, rhs_value;
};

struct Verdict {
    explicit Verdict(int n_) : n(n_), residual(n_) {}

    int n;
    std::string method;
    VerdictKind kind = VerdictKind::Inconclusive;
    bool exhaustive = true;
    std::optional<ValuationWitness> witness;
    FormalSum residual;  // surviving difference terms (cancellation route)
    BuildStats build;
    std::uint64_t lhs_terms = 0;
    std::uint64_t rhs_terms = 0;
    std::uint64_t valuations_checked = 0;
    std::int64_t elapsed_ms = 0;

    std::uint64_t residual_terms() const { return residual.term_count(); }
};

// One-line JSON, fixed key order; deterministic except elapsed_ms.
std::string verdict_to_json(const Verdict& v);

Verdict verify_by_cancellation(const FormalSum& lhs, const FormalSum& rhs, ZeroCache& cache);

// Evaluates both sums at the given valuations; the first disagreement at
// a realizable valuation wins and carries a realizing point. Disagreement
// at an empty sign cell cannot separate the functions and is skipped.
Verdict compare_by_valuations(const FormalSum& lhs, const FormalSum& rhs,
                              const ValuationEnumeration& vals);

// Builds both sides (zero elimination on; vanishing terms cannot change
// any feasible valuation) and compares. n <= 5 exhaustive, n = 6 sampled,
// larger n refused.
Verdict verify_by_valuations(int n, ZeroCache& cache, int workers = 0);

// Euler-characteristic cross-checks. Both recompute a valuation value by
// counting faces or chains of an order complex and assert agreement with
// the direct evaluation, then return the value.
//
// Right side at v: faces are the subsets missing some member of W.
std::int64_t euler_rhs_check(const AntichainValuation& v);
// Inner sum at fixed J and v: signed chains above {1} inside the solution
// interval family U(J; W).
std::int64_t euler_lhs_inner_check(const Subset& j, const AntichainValuation& v);

// Equality modulo identically-zero products, decided by exhaustive
// feasible valuations (n <= 5). Returns the first separating valuation
// if any.
struct ModZeroResult {
    bool equal = true;
    std::optional<AntichainValuation> separating;
};
ModZeroResult equal_modulo_zero(const FormalSum& a, const FormalSum& b, ZeroCache& cache);

} // namespace chiv
