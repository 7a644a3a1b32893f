#include "chiv/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>

namespace chiv {

namespace {

double to_double(const Rational& q) {
    return static_cast<double>(boost::multiprecision::numerator(q)) /
           static_cast<double>(boost::multiprecision::denominator(q));
}

int support_radius(const Rational& delta, int grid) {
    // smallest k with k/grid >= delta
    const Rational steps = delta * grid;
    const auto num = boost::multiprecision::numerator(steps);
    const auto den = boost::multiprecision::denominator(steps);
    Int k = num / den;
    if (k * den < num) ++k;
    return static_cast<int>(k);
}

double trap_weight(int k, int lo, int hi) { return (k == lo || k == hi) ? 0.5 : 1.0; }

} // namespace

void SupportSpec::validate() const {
    if (n < 1 || n > 3)
        throw std::invalid_argument("SupportSpec: quadrature is implemented for n <= 3");
    if (static_cast<int>(delta.size()) != n)
        throw std::invalid_argument("SupportSpec: need exactly one radius per element");
    Rational total = 0;
    for (const Rational& d : delta) {
        if (d <= 0) throw std::invalid_argument("SupportSpec: radii must be positive");
        total += d;
    }
    if (total >= 2)
        throw std::invalid_argument("SupportSpec: radii must sum to less than 2");
    if (grid < 2 || grid > 8192 || (grid & (grid - 1)) != 0)
        throw std::invalid_argument("SupportSpec: grid must be a power of two in [2, 8192]");
}

SampledFn sampled_hat(const Rational& delta, int grid) {
    if (delta <= 0) throw std::invalid_argument("sampled_hat: radius must be positive");
    SampledFn f;
    f.radius = support_radius(delta, grid);
    f.v.assign(2 * f.radius + 1, 0.0);
    const double d = to_double(delta);
    const double h = 1.0 / grid;
    for (int k = -f.radius; k <= f.radius; ++k)
        f.v[k + f.radius] = std::max(0.0, 1.0 - std::abs(k * h) / d);
    return f;
}

SampledFn block_hat(const std::vector<Rational>& deltas, int grid) {
    if (deltas.empty()) throw std::invalid_argument("block_hat: empty block");
    SampledFn acc = sampled_hat(deltas.front(), grid);
    const double h = 1.0 / grid;
    for (std::size_t i = 1; i < deltas.size(); ++i) {
        const SampledFn next = sampled_hat(deltas[i], grid);
        SampledFn out;
        out.radius = acc.radius + next.radius;
        out.v.assign(2 * out.radius + 1, 0.0);
        for (int k = -out.radius; k <= out.radius; ++k) {
            double s = 0.0;
            const int jlo = std::max(-acc.radius, k - next.radius);
            const int jhi = std::min(acc.radius, k + next.radius);
            for (int j = jlo; j <= jhi; ++j) s += acc.at(j) * next.at(k - j);
            out.v[k + out.radius] = h * s;
        }
        acc = std::move(out);
    }
    return acc;
}

double soft_threshold(double x) {
    if (x > 1.0) return 1.0;
    if (x == 1.0) return 0.5;
    return 0.0;
}

double soft_box(double x) { return 1.0 - soft_threshold(x) - soft_threshold(-x); }

double integral_E(const SupportSpec& spec) {
    spec.validate();
    const int n = spec.n;
    const double h = 1.0 / spec.grid;
    std::vector<SampledFn> hats;
    std::vector<int> radius;
    for (const Rational& d : spec.delta) {
        hats.push_back(sampled_hat(d, spec.grid));
        radius.push_back(hats.back().radius);
    }

    // Alternating indicator sum at u: sum over subsets I of {0,...,n-1}
    // of (-1)^(|I|+1) * threshold(2 * sum_I u - sum u).
    const int subsets = 1 << n;
    double total = 0.0;
    std::vector<int> k(n, 0);
    while (true) {
        double weight = 1.0;
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            weight *= hats[i].at(k[i]) * trap_weight(k[i], 0, radius[i]);
            s += k[i] * h;
        }
        if (weight != 0.0) {
            double f = 0.0;
            for (int im = 0; im < subsets; ++im) {
                double si = 0.0;
                for (int i = 0; i < n; ++i)
                    if ((im >> i) & 1) si += k[i] * h;
                const double sign = (std::popcount(unsigned(im)) % 2 == 1) ? 1.0 : -1.0;
                f += sign * soft_threshold(2.0 * si - s);
            }
            total += weight * f;
        }
        int i = 0;
        for (; i < n; ++i) {
            if (k[i] < radius[i]) {
                ++k[i];
                break;
            }
            k[i] = 0;
        }
        if (i == n) break;
    }
    return total * std::pow(h, n);
}

double integral_C(const SetPartition& f, const SupportSpec& spec) {
    spec.validate();
    if (f.ground_size() != spec.n)
        throw std::invalid_argument("integral_C: partition ground size mismatch");
    const int len = f.length();
    const double h = 1.0 / spec.grid;

    std::vector<SampledFn> bhats;
    std::vector<int> radius;
    for (const Subset& b : f.blocks()) {
        std::vector<Rational> ds;
        for (int e = 1; e <= spec.n; ++e)
            if (b.contains(e)) ds.push_back(spec.delta[e - 1]);
        bhats.push_back(block_hat(ds, spec.grid));
        radius.push_back(bhats.back().radius);
    }

    // mu(F, coarsest) = (-1)^(len-1) (len-1)!
    double mu = 1.0;
    for (int i = 1; i < len; ++i) mu *= -i;

    // permutations of block indices fixing index 0
    std::vector<std::vector<int>> perms;
    {
        std::vector<int> order(len);
        std::iota(order.begin(), order.end(), 0);
        do {
            perms.push_back(order);
        } while (std::next_permutation(order.begin() + 1, order.end()));
    }

    const double psign = (len % 2 == 0) ? 1.0 : -1.0;
    double total = 0.0;
    std::vector<int> k(len, 0);
    for (int i = 0; i < len; ++i) k[i] = -radius[i];
    while (true) {
        double weight = 1.0;
        double s = 0.0;
        for (int i = 0; i < len; ++i) {
            weight *= bhats[i].at(k[i]) * trap_weight(k[i], -radius[i], radius[i]);
            s += k[i] * h;
        }
        if (weight != 0.0) {
            // chi*: over permutations fixing the first block, the product
            // of boxes at (2 * prefix - total)
            double chi_star_val = 0.0;
            for (const auto& order : perms) {
                double prod = 1.0;
                double prefix = 0.0;
                for (int i = 0; i < len && prod != 0.0; ++i) {
                    prefix += k[order[i]] * h;
                    prod *= soft_box(2.0 * prefix - s);
                }
                chi_star_val += prod;
            }
            total += weight * 0.5 * (mu + psign * chi_star_val);
        }
        int i = 0;
        for (; i < len; ++i) {
            if (k[i] < radius[i]) {
                ++k[i];
                break;
            }
            k[i] = -radius[i];
        }
        if (i == len) break;
    }
    return total * std::pow(h, len);
}

NumericReport numeric_check(const SupportSpec& spec) {
    spec.validate();
    NumericReport rep;
    const std::vector<SetPartition> parts = enumerate_partitions(spec.n);
    std::vector<std::future<double>> jobs;
    jobs.reserve(parts.size());
    for (const SetPartition& p : parts)
        jobs.push_back(std::async(std::launch::async, [&spec, p]() { return integral_C(p, spec); }));
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const double val = jobs[i].get();
        rep.per_partition.emplace_back(parts[i].to_string(), val);
        rep.lhs += val;
    }
    rep.rhs = integral_E(spec);
    rep.gap = rep.lhs - rep.rhs;
    return rep;
}

} // namespace chiv
