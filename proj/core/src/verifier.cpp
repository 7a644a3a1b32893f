#include "chiv/verifier.hpp"

#include "chiv/lp.hpp"

#include <algorithm>
#include <chrono>

namespace chiv {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t ms_since(Clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

constexpr std::uint64_t kSampledBudgetN6 = 5000;

} // namespace

AntichainValuation::AntichainValuation(int n, std::vector<Mask> min_sets)
    : n_(n), sets_(std::move(min_sets)) {
    if (n < 1 || n > kMaxGroundSize)
        throw std::invalid_argument("AntichainValuation: ground size must be in [1,16]");
    std::sort(sets_.begin(), sets_.end());
    const Mask all = Subset::mask_all(n);
    for (std::size_t i = 0; i < sets_.size(); ++i) {
        if (sets_[i] == 0) throw std::invalid_argument("AntichainValuation: empty member");
        if (sets_[i] & ~all) throw std::invalid_argument("AntichainValuation: member outside ground set");
        for (std::size_t k = 0; k < i; ++k) {
            const Mask meet = sets_[k] & sets_[i];
            if (meet == sets_[k] || meet == sets_[i])
                throw std::invalid_argument("AntichainValuation: members must be incomparable");
        }
    }
}

bool AntichainValuation::generator_value(Mask a) const {
    for (Mask w : sets_)
        if ((w & a) == w) return true;
    return false;
}

Term AntichainValuation::to_term() const {
    return Term::product(n_, sets_);
}

std::string AntichainValuation::to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < sets_.size(); ++i) {
        if (i) out += ',';
        out += Subset(sets_[i], n_).to_string();
    }
    out += '}';
    return out;
}

Int evaluate(const FormalSum& s, const AntichainValuation& v) {
    if (s.ground_size() != v.ground_size())
        throw std::invalid_argument("evaluate: ground size mismatch");
    Int acc = 0;
    for (const auto& [t, c] : s.terms()) {
        bool all = true;
        for (Mask m : t.sets()) {
            if (!v.generator_value(m)) {
                all = false;
                break;
            }
        }
        if (all) acc += c;
    }
    return acc;
}

std::optional<std::vector<Rational>> realize_valuation(const AntichainValuation& v) {
    const int n = v.ground_size();
    const Mask all = Subset::mask_all(n);

    std::vector<char> up(std::size_t(all) + 1);
    for (Mask a = 0;; ++a) {
        up[a] = v.generator_value(a) ? 1 : 0;
        if (a == all) break;
    }

    // Margin variable t rides along as column n; maximizing it pushes the
    // point strictly inside every inequality that must hold strictly.
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    const auto signed_row = [&](Mask m, int scale) {
        std::vector<Rational> r(n + 1, 0);
        for (int i = 0; i < n; ++i) r[i] = ((m >> i) & 1) ? scale : -scale;
        return r;
    };
    for (Mask m : v.min_sets()) {  // members stay above threshold
        auto r = signed_row(m, 1);
        r[n] = -1;
        rows.push_back(std::move(r));
        rhs.emplace_back(1);
    }
    for (Mask b = 0;; ++b) {  // maximal non-members stay at or below it
        if (!up[b]) {
            bool maximal = true;
            for (int i = 0; i < n && maximal; ++i)
                if (!((b >> i) & 1) && !up[b | (Mask{1} << i)]) maximal = false;
            if (maximal) {
                rows.push_back(signed_row(b, -1));
                rhs.emplace_back(-1);
            }
        }
        if (b == all) break;
    }
    rows.emplace_back(n + 1, Rational(-1));  // total mass short of 2 by t
    rhs.emplace_back(-2);
    for (int i = 0; i < n; ++i) {  // coordinates at least t
        std::vector<Rational> r(n + 1, 0);
        r[i] = 1;
        r[n] = -1;
        rows.push_back(std::move(r));
        rhs.emplace_back(0);
    }
    std::vector<Rational> cost(n + 1, 0);
    cost[n] = -1;  // maximize the margin; t <= 2 keeps this bounded

    const SimplexResult res = solve_min(rows, rhs, cost);
    if (res.status != SimplexResult::Status::Optimal || res.objective >= 0) return std::nullopt;

    std::vector<Rational> u(res.x.begin(), res.x.begin() + n);
    Rational total = 0;
    for (const Rational& x : u) {
        if (x <= 0) throw std::logic_error("realize_valuation: point not interior");
        total += x;
    }
    if (total >= 2) throw std::logic_error("realize_valuation: point not interior");
    for (Mask a = 0;; ++a) {
        if (generator_value_at(a, n, u) != static_cast<bool>(up[a]))
            throw std::logic_error("realize_valuation: induced pattern mismatch");
        if (a == all) break;
    }
    return u;
}

ValuationEnumeration enumerate_feasible_valuations(int n, ZeroCache& cache,
                                                   std::uint64_t budget) {
    if (n < 1) throw std::invalid_argument("enumerate_feasible_valuations: n out of range");
    if (n > 6)
        throw CapabilityError("enumerate_feasible_valuations: supported only for n <= 6");
    if (n == 6 && budget == 0)
        throw CapabilityError("enumerate_feasible_valuations: n = 6 requires a sampling budget");

    std::vector<Mask> cand;
    for (Mask m = 1; m <= Subset::mask_all(n); ++m) cand.push_back(m);
    std::sort(cand.begin(), cand.end(), [](Mask a, Mask b) {
        const int pa = std::popcount(a), pb = std::popcount(b);
        if (pa != pb) return pa > pb;
        return a < b;
    });

    ValuationEnumeration out;
    std::vector<Mask> chosen;
    bool stopped = false;

    auto emit = [&]() -> bool {
        if (budget && out.valuations.size() >= budget) {
            stopped = true;
            return false;
        }
        std::vector<Mask> sorted = chosen;
        out.valuations.emplace_back(n, std::move(sorted));
        return true;
    };

    std::function<void(std::size_t)> dfs = [&](std::size_t from) {
        if (stopped) return;
        for (std::size_t i = from; i < cand.size() && !stopped; ++i) {
            const Mask c = cand[i];
            bool comparable = false;
            for (Mask w : chosen) {
                const Mask meet = w & c;
                if (meet == w || meet == c) {
                    comparable = true;
                    break;
                }
            }
            if (comparable) continue;
            chosen.push_back(c);
            if (!is_zero(Term::product(n, chosen), cache)) {
                if (emit()) dfs(i + 1);
            }
            chosen.pop_back();
        }
    };

    emit();  // the empty antichain is always feasible
    if (!stopped) dfs(0);
    out.exhaustive = !stopped;
    return out;
}

const char* to_string(VerdictKind k) {
    switch (k) {
    case VerdictKind::ProvedEqual: return "ProvedEqual";
    case VerdictKind::NotEqual: return "NotEqual";
    case VerdictKind::Inconclusive: return "Inconclusive";
    }
    return "?";
}

Verdict verify_by_cancellation(const FormalSum& lhs, const FormalSum& rhs, ZeroCache& cache) {
    if (lhs.ground_size() != rhs.ground_size())
        throw std::invalid_argument("verify_by_cancellation: ground size mismatch");
    const auto t0 = Clock::now();
    Verdict v(lhs.ground_size());
    v.method = "cancel";
    v.lhs_terms = lhs.term_count();
    v.rhs_terms = rhs.term_count();

    FormalSum diff = lhs - rhs;
    for (const auto& [t, c] : diff.terms()) {
        if (!is_zero(t, cache)) v.residual.add_term(t, c);
    }
    v.kind = v.residual.is_zero_sum() ? VerdictKind::ProvedEqual : VerdictKind::Inconclusive;
    v.elapsed_ms = ms_since(t0);
    return v;
}

namespace {

// Flat snapshot of a sum for repeated evaluation against many valuations.
struct SumSnapshot {
    std::vector<std::pair<const Term*, const Int*>> items;

    explicit SumSnapshot(const FormalSum& s) {
        items.reserve(s.term_count());
        for (const auto& [t, c] : s.terms()) items.emplace_back(&t, &c);
    }

    Int value(const std::vector<char>& up) const {
        Int acc = 0;
        for (const auto& [t, c] : items) {
            bool all = true;
            for (Mask m : t->sets()) {
                if (!up[m]) {
                    all = false;
                    break;
                }
            }
            if (all) acc += *c;
        }
        return acc;
    }
};

} // namespace

Verdict compare_by_valuations(const FormalSum& lhs, const FormalSum& rhs,
                              const ValuationEnumeration& vals) {
    if (lhs.ground_size() != rhs.ground_size())
        throw std::invalid_argument("compare_by_valuations: ground size mismatch");
    const auto t0 = Clock::now();
    const int n = lhs.ground_size();
    Verdict v(n);
    v.method = "valuations";
    v.lhs_terms = lhs.term_count();
    v.rhs_terms = rhs.term_count();
    v.exhaustive = vals.exhaustive;
    v.valuations_checked = vals.valuations.size();

    const SumSnapshot ls(lhs), rs(rhs);
    const Mask all = Subset::mask_all(n);
    std::vector<char> up(std::size_t(all) + 1);

    for (const AntichainValuation& w : vals.valuations) {
        for (Mask a = 0;; ++a) {
            up[a] = w.generator_value(a) ? 1 : 0;
            if (a == all) break;
        }
        const Int lv = ls.value(up);
        const Int rv = rs.value(up);
        if (lv == rv) continue;
        auto point = realize_valuation(w);
        if (!point) continue;  // empty cell, cannot separate the functions
        v.kind = VerdictKind::NotEqual;
        v.witness = ValuationWitness{w, std::move(*point), lv, rv};
        v.elapsed_ms = ms_since(t0);
        return v;
    }
    v.kind = VerdictKind::ProvedEqual;
    v.elapsed_ms = ms_since(t0);
    return v;
}

Verdict verify_by_valuations(int n, ZeroCache& cache, int workers) {
    if (n > 6)
        throw CapabilityError("verify_by_valuations: supported only for n <= 6");
    const auto t0 = Clock::now();
    BuildStats stats;
    const FormalSum lhs = build_lhs_canonical(n, true, cache, workers, &stats);
    const FormalSum rhs = build_rhs(n);
    const ValuationEnumeration vals =
        enumerate_feasible_valuations(n, cache, n == 6 ? kSampledBudgetN6 : 0);
    Verdict v = compare_by_valuations(lhs, rhs, vals);
    v.build = stats;
    v.elapsed_ms = ms_since(t0);
    return v;
}

std::int64_t euler_rhs_check(const AntichainValuation& v) {
    const int n = v.ground_size();
    const Mask all = Subset::mask_all(n);
    std::int64_t chi = 0;
    for (Mask a = 0;; ++a) {
        for (Mask w : v.min_sets()) {
            if ((a & w) == 0) {  // a avoids w, so a lies in [empty, complement(w)]
                chi += (std::popcount(a) % 2 == 0) ? 1 : -1;
                break;
            }
        }
        if (a == all) break;
    }
    const std::int64_t value = ((n - 1) % 2 == 0 ? 1 : -1) * chi;

    const Int direct = evaluate(build_rhs(n), v);
    if (direct != value)
        throw std::logic_error("euler_rhs_check: face count disagrees with direct evaluation");
    return value;
}

std::int64_t euler_lhs_inner_check(const Subset& j, const AntichainValuation& v) {
    const int n = v.ground_size();
    if (j.ground_size() != n)
        throw std::invalid_argument("euler_lhs_inner_check: ground size mismatch");
    if (j.bits() & 1u)
        throw std::invalid_argument("euler_lhs_inner_check: J must avoid element 1");
    const Mask all = Subset::mask_all(n);
    const Mask jm = j.bits();

    // U = union over members W of two intervals:
    //   [W - J, complement(W) | (W - J)]   (x_{A ^ J} fires)
    //   [W & J, complement(W) | (W & J)]   (x_{complement(A) ^ J} fires)
    std::vector<char> in_u(std::size_t(all) + 1, 0);
    for (Mask w : v.min_sets()) {
        const Mask lo1 = w & ~jm, hi1 = (w ^ all) | lo1;
        const Mask lo2 = w & jm, hi2 = (w ^ all) | lo2;
        for (Mask a = 0;; ++a) {
            if (((a & lo1) == lo1 && (a & ~hi1) == 0) || ((a & lo2) == lo2 && (a & ~hi2) == 0))
                in_u[a] = 1;
            if (a == all) break;
        }
    }

    std::int64_t value = 0;
    const Mask one = 1;
    if (in_u[one]) {
        // signed count of chains (empty included) inside U strictly above {1}
        std::vector<std::int64_t> h(std::size_t(all) + 1, 0);
        std::int64_t total = 1;  // empty chain
        for (Mask x = 0;; ++x) {
            if (in_u[x] && (x & one) && x != one) {
                std::int64_t below = 1;
                for (Mask y = 0; y < x; ++y)
                    if (in_u[y] && (y & one) && y != one && (y & x) == y) below += h[y];
                h[x] = -below;
                total += h[x];
            }
            if (x == all) break;
        }
        value = ((n - 1) % 2 == 0 ? 1 : -1) * total;
    }

    ZeroCache scratch;
    const Int direct = evaluate(build_inner_sum(n, j, false, scratch), v);
    if (direct != value)
        throw std::logic_error("euler_lhs_inner_check: chain count disagrees with direct evaluation");
    return value;
}

ModZeroResult equal_modulo_zero(const FormalSum& a, const FormalSum& b, ZeroCache& cache) {
    if (a.ground_size() != b.ground_size())
        throw std::invalid_argument("equal_modulo_zero: ground size mismatch");
    if (a.ground_size() > 5)
        throw CapabilityError("equal_modulo_zero: exhaustive decision needs n <= 5");
    ModZeroResult out;
    const auto vals = enumerate_feasible_valuations(a.ground_size(), cache, 0);
    for (const AntichainValuation& w : vals.valuations) {
        if (evaluate(a, w) != evaluate(b, w)) {
            if (!realize_valuation(w)) continue;  // empty cell: no witness
            out.equal = false;
            out.separating = w;
            return out;
        }
    }
    return out;
}

namespace {

void json_escape_into(std::string& out, const std::string& s) {
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
}

} // namespace

std::string verdict_to_json(const Verdict& v) {
    std::string out = "{\"n\":" + std::to_string(v.n);
    out += ",\"method\":\"";
    json_escape_into(out, v.method);
    out += "\",\"verdict\":\"";
    out += to_string(v.kind);
    out += "\",\"exhaustive\":";
    out += v.exhaustive ? "true" : "false";
    out += ",\"residual_terms\":" + std::to_string(v.residual_terms());
    out += ",\"witness\":";
    if (!v.witness) {
        out += "null";
    } else {
        out += "{\"valuation\":[";
        const auto& sets = v.witness->valuation.min_sets();
        for (std::size_t i = 0; i < sets.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(sets[i]);
        }
        out += "],\"point\":[";
        for (std::size_t i = 0; i < v.witness->point.size(); ++i) {
            if (i) out += ',';
            out += '"';
            out += v.witness->point[i].str();
            out += '"';
        }
        out += "],\"lhs_value\":\"" + v.witness->lhs_value.str();
        out += "\",\"rhs_value\":\"" + v.witness->rhs_value.str();
        out += "\"}";
    }
    out += ",\"stats\":{\"raw_monomials\":" + std::to_string(v.build.raw_monomials);
    out += ",\"dropped_zero\":" + std::to_string(v.build.dropped_zero);
    out += ",\"lhs_terms\":" + std::to_string(v.lhs_terms);
    out += ",\"rhs_terms\":" + std::to_string(v.rhs_terms);
    out += ",\"valuations_checked\":" + std::to_string(v.valuations_checked);
    out += "},\"elapsed_ms\":" + std::to_string(v.elapsed_ms);
    out += "}";
    return out;
}

} // namespace chiv
