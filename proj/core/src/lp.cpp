#include "chiv/lp.hpp"

#include <stdexcept>

namespace chiv {

namespace {

// Dense tableau in equality form  T x = rhs  with a designated basis.
// Column layout: [0, n) structural, [n, n+m) surplus, [n+m, ...) artificial.
struct Tableau {
    int rows = 0, cols = 0;
    std::vector<std::vector<Rational>> t;  // rows x cols
    std::vector<Rational> rhs;
    std::vector<int> basis;                // basis[r] = basic column of row r
    std::vector<Rational> cost;            // reduced cost row
    Rational objective = 0;                // current objective value

    void pivot(int pr, int pc) {
        const Rational p = t[pr][pc];
        for (int j = 0; j < cols; ++j) t[pr][j] /= p;
        rhs[pr] /= p;
        for (int r = 0; r < rows; ++r) {
            if (r == pr) continue;
            const Rational f = t[r][pc];
            if (f == 0) continue;
            for (int j = 0; j < cols; ++j) t[r][j] -= f * t[pr][j];
            rhs[r] -= f * rhs[pr];
        }
        const Rational fc = cost[pc];
        if (fc != 0) {
            for (int j = 0; j < cols; ++j) cost[j] -= fc * t[pr][j];
            objective -= fc * rhs[pr];
        }
        basis[pr] = pc;
    }

    // Bland: entering = lowest column with negative reduced cost;
    // leaving = min ratio, ties broken by lowest basic column.
    SimplexResult::Status iterate(int col_limit) {
        while (true) {
            int pc = -1;
            for (int j = 0; j < col_limit; ++j)
                if (cost[j] < 0) {
                    pc = j;
                    break;
                }
            if (pc < 0) return SimplexResult::Status::Optimal;
            int pr = -1;
            Rational best;
            for (int r = 0; r < rows; ++r) {
                if (t[r][pc] <= 0) continue;
                const Rational ratio = rhs[r] / t[r][pc];
                if (pr < 0 || ratio < best || (ratio == best && basis[r] < basis[pr])) {
                    pr = r;
                    best = ratio;
                }
            }
            if (pr < 0) return SimplexResult::Status::Unbounded;
            pivot(pr, pc);
        }
    }
};

} // namespace

SimplexResult solve_min(const std::vector<std::vector<Rational>>& a,
                        const std::vector<Rational>& b,
                        const std::vector<Rational>& c) {
    const int m = static_cast<int>(a.size());
    const int n = static_cast<int>(c.size());
    if (static_cast<int>(b.size()) != m)
        throw std::invalid_argument("solve_min: row count mismatch");
    for (const auto& row : a)
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("solve_min: column count mismatch");

    // Equality form  A x - s = b  with rows normalized to rhs >= 0. A row
    // that gets negated carries its surplus with coefficient +1 and that
    // surplus can start basic; other rows need an artificial.
    Tableau tb;
    tb.rows = m;
    std::vector<int> art_of(m, -1);
    int n_art = 0;
    for (int r = 0; r < m; ++r)
        if (b[r] >= 0) ++n_art;
    tb.cols = n + m + n_art;
    tb.t.assign(m, std::vector<Rational>(tb.cols, 0));
    tb.rhs.assign(m, 0);
    tb.basis.assign(m, -1);

    int next_art = n + m;
    for (int r = 0; r < m; ++r) {
        const bool neg = b[r] < 0;
        for (int j = 0; j < n; ++j) tb.t[r][j] = neg ? -a[r][j] : a[r][j];
        tb.t[r][n + r] = neg ? 1 : -1;
        tb.rhs[r] = neg ? -b[r] : b[r];
        if (neg) {
            tb.basis[r] = n + r;
        } else {
            art_of[r] = next_art;
            tb.t[r][next_art] = 1;
            tb.basis[r] = next_art;
            ++next_art;
        }
    }

    // Phase 1: minimize the artificial sum. The cost row starts as the
    // reduced costs of that objective (every artificial is basic, so its
    // own column cancels to zero) and `objective` tracks the negated
    // objective value, matching the pivot update convention.
    tb.cost.assign(tb.cols, 0);
    tb.objective = 0;
    for (int r = 0; r < m; ++r) {
        if (art_of[r] < 0) continue;
        for (int j = 0; j < tb.cols; ++j)
            if (j != art_of[r]) tb.cost[j] -= tb.t[r][j];
        tb.objective -= tb.rhs[r];
    }
    if (tb.iterate(tb.cols) != SimplexResult::Status::Optimal)
        throw std::logic_error("solve_min: phase 1 cannot be unbounded");
    if (tb.objective != 0) {
        SimplexResult res;
        res.status = SimplexResult::Status::Infeasible;
        return res;
    }

    // Drive leftover artificials out of the basis; a row with no real
    // pivot candidate is redundant and pinned at zero, which is harmless
    // because phase 2 never lets an artificial re-enter.
    for (int r = 0; r < m; ++r) {
        if (tb.basis[r] < n + m) continue;
        for (int j = 0; j < n + m; ++j) {
            if (tb.t[r][j] != 0) {
                tb.pivot(r, j);
                break;
            }
        }
    }

    // Phase 2: real costs, artificial columns barred from entering.
    tb.cost.assign(tb.cols, 0);
    tb.objective = 0;
    for (int j = 0; j < n; ++j) tb.cost[j] = c[j];
    for (int r = 0; r < m; ++r) {
        const int bc = tb.basis[r];
        const Rational f = tb.cost[bc];
        if (f == 0) continue;
        for (int j = 0; j < tb.cols; ++j) tb.cost[j] -= f * tb.t[r][j];
        tb.objective -= f * tb.rhs[r];
    }
    const auto st = tb.iterate(n + m);
    SimplexResult res;
    res.status = st;
    if (st != SimplexResult::Status::Optimal) return res;
    res.objective = -tb.objective;
    res.x.assign(n, 0);
    for (int r = 0; r < m; ++r)
        if (tb.basis[r] < n) res.x[tb.basis[r]] = tb.rhs[r];
    return res;
}

} // namespace chiv
