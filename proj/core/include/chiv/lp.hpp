// Exact two-phase primal simplex over arbitrary-precision rationals.
//
// Solves  min c.x  subject to  A x >= b, x >= 0.  Bland's rule on both the
// entering and leaving choices, so the walk terminates without cycling.
// Problem sizes here stay tiny (tens of rows and columns), which makes the
// dense tableau with exact pivots the right tool; no scaling, no floats.

#pragma once

#include "chiv/algebra.hpp"

#include <vector>

namespace chiv {

struct SimplexResult {
    enum class Status { Optimal, Infeasible, Unbounded };
    Status status = Status::Infeasible;
    Rational objective = 0;
    std::vector<Rational> x;  // primal solution, empty unless Optimal
};

SimplexResult solve_min(const std::vector<std::vector<Rational>>& a,
                        const std::vector<Rational>& b,
                        const std::vector<Rational>& c);

} // namespace chiv
