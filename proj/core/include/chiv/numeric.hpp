// Floating-point spot check of the identity for concrete test functions.
//
// Test function i has the triangular transform  max(0, 1 - |u|/d_i)  with
// support radius d_i > 0, sum of radii < 2. Everything is sampled on the
// uniform grid h = 1/grid with `grid` a power of two, so every threshold
// argument lands exactly on a representable dyadic and the jump set of
// the indicators can be handled by the half-at-the-breakpoint convention:
// an indicator contributes 1/2 where its argument is exactly 1. In one
// dimension that makes the trapezoid rule exact for these piecewise
// linear integrands; in higher dimension the error decays like h.
//
// Right side: integral over [0,inf)^n of the alternating indicator sum
// against the product of the n triangle transforms.
// Left side: sum over set partitions F of
//   1/2 integral over R^len of [ mu(F, top) + (-1)^len chi*_len(w) ]
//   times the product of block transforms (convolutions of the member
//   triangles), one coordinate per block.

#pragma once

#include "chiv/algebra.hpp"
#include "chiv/partition.hpp"

#include <string>
#include <vector>

namespace chiv {

struct SupportSpec {
    int n = 1;
    std::vector<Rational> delta;  // one positive radius per element
    int grid = 64;                // samples per unit length, power of two

    void validate() const;  // throws std::invalid_argument
};

// Uniform samples v[k + radius] = f(k / grid), k in [-radius, radius].
struct SampledFn {
    int radius = 0;
    std::vector<double> v;

    double at(int k) const {
        const int idx = k + radius;
        if (idx < 0 || idx >= static_cast<int>(v.size())) return 0.0;
        return v[idx];
    }
};

SampledFn sampled_hat(const Rational& delta, int grid);
// h-scaled discrete convolution of the member triangles of one block.
SampledFn block_hat(const std::vector<Rational>& deltas, int grid);

// Indicator of (1, inf) with value 1/2 exactly at 1.
double soft_threshold(double x);
// Indicator of [-1, 1]: 1 - soft_threshold(x) - soft_threshold(-x).
double soft_box(double x);

double integral_E(const SupportSpec& spec);
double integral_C(const SetPartition& f, const SupportSpec& spec);

struct NumericReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double gap = 0.0;  // lhs - rhs
    std::vector<std::pair<std::string, double>> per_partition;
};

// Left side summed over all partitions (computed concurrently), right
// side once.
NumericReport numeric_check(const SupportSpec& spec);

} // namespace chiv
