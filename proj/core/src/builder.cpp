#include "chiv/builder.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <thread>

namespace chiv {

namespace {

int check_build_n(int n, int cap, const char* who) {
    if (n < 1 || n > cap)
        throw std::invalid_argument(std::string(who) + ": n out of range");
    return n;
}

// Shared bookkeeping for sharded canonical builds.
struct ExpandSink {
    std::atomic<std::uint64_t> raw{0};
    std::atomic<std::uint64_t> dropped{0};
    std::atomic<int> shards_done{0};
    int shards_total = 1;
    const ProgressFn* progress = nullptr;

    void report() const {
        if (progress && *progress)
            (*progress)(raw.load(), shards_done.load(), shards_total);
    }
};

// Expands the inner sum at one J into `out`. Streams chains; never holds
// more than one chain and one monomial buffer.
void expand_inner(int n, Mask jmask, bool zero_elim, ZeroCache& cache, FormalSum& out,
                  ExpandSink& sink) {
    const Mask full = Subset::mask_all(n);
    const Subset one = Subset::of({1}, n);
    std::vector<Mask> opt0, opt1, buf;
    std::uint64_t local_raw = 0;

    for_each_chain(n, one, std::nullopt, [&](const std::vector<Mask>& chain) {
        const int k = static_cast<int>(chain.size());
        opt0.resize(k);
        opt1.resize(k);
        for (int i = 0; i < k; ++i) {
            opt0[i] = chain[i] ^ jmask;
            opt1[i] = opt0[i] ^ full;  // complement(A) ^ J
        }
        const Int sign = ((n - k) % 2 == 0) ? 1 : -1;
        const std::uint64_t combos = std::uint64_t(1) << k;
        for (std::uint64_t g = 0; g < combos; ++g) {
            buf.clear();
            for (int i = 0; i < k; ++i) buf.push_back(((g >> i) & 1u) ? opt1[i] : opt0[i]);
            ++local_raw;
            if ((local_raw & 0xFFFFFu) == 0) {
                sink.raw.fetch_add(local_raw);
                local_raw = 0;
                sink.report();
            }
            const Term t = Term::product(n, buf);
            if (zero_elim && is_zero(t, cache)) {
                sink.dropped.fetch_add(1, std::memory_order_relaxed);
                continue;
            }
            out.add_term(t, sign);
        }
    });
    sink.raw.fetch_add(local_raw);
}

} // namespace

FormalSum build_rhs(int n) {
    check_build_n(n, kMaxGroundSize, "build_rhs");
    FormalSum out(n);
    const Mask full = Subset::mask_all(n);
    for (Mask i = 0; i <= full; ++i) {
        const Mask one_set[1] = {i};
        out.add_term(Term::product(n, one_set), (std::popcount(i) % 2 == 0) ? -1 : 1);
    }
    return out;
}

FormalSum build_inner_sum(int n, const Subset& j, bool zero_elim, ZeroCache& cache,
                          BuildStats* stats) {
    check_build_n(n, 8, "build_inner_sum");
    if (j.ground_size() != n)
        throw std::invalid_argument("build_inner_sum: J has wrong ground size");
    if (j.bits() & 1u)
        throw std::invalid_argument("build_inner_sum: J must avoid element 1");
    FormalSum out(n);
    ExpandSink sink;
    expand_inner(n, j.bits(), zero_elim, cache, out, sink);
    if (stats) {
        stats->raw_monomials += sink.raw.load();
        stats->dropped_zero += sink.dropped.load();
    }
    return out;
}

FormalSum build_lhs_canonical(int n, bool zero_elim, ZeroCache& cache, int workers,
                              BuildStats* stats, const ProgressFn& progress) {
    check_build_n(n, 8, "build_lhs_canonical");
    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;

    std::vector<Mask> shards;  // J ranges over subsets of {2,...,n}
    const Mask jspace = Subset::mask_all(n) & ~Mask(1);
    Mask s = 0;
    while (true) {
        shards.push_back(s);
        if (s == jspace) break;
        s = (s - jspace) & jspace;
    }

    ExpandSink sink;
    sink.shards_total = static_cast<int>(shards.size());
    sink.progress = &progress;
    sink.report();

    FormalSum total(n);
    std::mutex merge_mu;
    std::atomic<std::size_t> next{0};
    workers = std::min<int>(workers, static_cast<int>(shards.size()));

    auto run = [&]() {
        while (true) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= shards.size()) return;
            FormalSum shard_sum(n);
            expand_inner(n, shards[idx], zero_elim, cache, shard_sum, sink);
            sink.shards_done.fetch_add(1);
            {
                std::lock_guard lock(merge_mu);
                total += shard_sum;
            }
            sink.report();
        }
    };

    if (workers == 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(run);
        for (auto& th : pool) th.join();
    }

    if (stats) {
        stats->raw_monomials += sink.raw.load();
        stats->dropped_zero += sink.dropped.load();
    }
    return total;
}

FormalSum build_lhs_direct(int n) {
    check_build_n(n, 6, "build_lhs_direct");
    const Mask full = Subset::mask_all(n);
    FormalSum doubled(n);  // tracks 2x the result; halved at return

    for_each_partition(n, [&](const SetPartition& f) {
        const int len = f.length();
        // blocks are sorted by least element, so index 0 holds element 1
        std::vector<int> order(len);
        std::iota(order.begin(), order.end(), 0);
        do {
            std::vector<Mask> prefix(len);
            Mask acc = 0;
            for (int i = 0; i < len; ++i) {
                acc |= f.blocks()[order[i]].bits();
                prefix[i] = acc;
            }
            for (Mask j = 0;; ++j) {
                FormalSum bracket = FormalSum::constant(n, (len - 1) % 2 == 0 ? 1 : -1);
                FormalSum prod = FormalSum::constant(n, 1);
                for (int i = 0; i < len; ++i) {
                    FormalSum factor(n);
                    const Mask pj = prefix[i] ^ j;
                    const Mask pjc = prefix[i] ^ (j ^ full);
                    const Mask m0[1] = {pj};
                    const Mask m1[1] = {pjc};
                    factor.add_term(Term::product(n, m0), 1);
                    factor.add_term(Term::product(n, m1), 1);
                    factor.add_term(Term(n), -1);
                    prod = prod * factor;
                }
                bracket += prod;
                doubled += bracket;
                if (j == full) break;
            }
        } while (std::next_permutation(order.begin() + 1, order.end()));
    });

    FormalSum out(n);
    for (const auto& [t, c] : doubled.terms()) {
        if (c % 2 != 0)
            throw std::logic_error("build_lhs_direct: odd doubled coefficient");
        out.add_term(t, c / 2);
    }
    return out;
}

FormalSum chi_star(const std::vector<Subset>& blocks) {
    if (blocks.empty()) throw std::invalid_argument("chi_star: no blocks");
    const int n = blocks.front().ground_size();
    Mask seen = 0;
    for (const Subset& b : blocks) {
        if (b.ground_size() != n) throw std::invalid_argument("chi_star: mismatched ground sets");
        if (b.is_empty()) throw std::invalid_argument("chi_star: empty block");
        if (seen & b.bits()) throw std::invalid_argument("chi_star: blocks must be disjoint");
        seen |= b.bits();
    }
    if (seen != Subset::mask_all(n))
        throw std::invalid_argument("chi_star: blocks must cover the ground set");

    const int k = static_cast<int>(blocks.size());
    const Mask full = Subset::mask_all(n);
    FormalSum out(n);
    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    do {
        FormalSum prod = FormalSum::constant(n, 1);
        Mask acc = 0;
        for (int i = 0; i < k; ++i) {
            acc |= blocks[order[i]].bits();
            FormalSum factor = FormalSum::constant(n, 1);
            const Mask m0[1] = {acc};
            const Mask m1[1] = {acc ^ full};
            factor.add_term(Term::product(n, m0), -1);
            factor.add_term(Term::product(n, m1), -1);
            prod = prod * factor;
        }
        out += prod;
    } while (std::next_permutation(order.begin() + 1, order.end()));
    return out;
}

FormalSum build_simp_forms(int n, const Subset& j) {
    check_build_n(n, kMaxGroundSize, "build_simp_forms");
    if (j.ground_size() != n)
        throw std::invalid_argument("build_simp_forms: J has wrong ground size");
    if (j.bits() & 1u)
        throw std::invalid_argument("build_simp_forms: J must avoid element 1");

    const Mask jmask = j.bits();
    const Mask rest = Subset::mask_all(n) & ~Mask(1);  // {2,...,n}

    FormalSum apart(n);
    {
        Mask a = 0;
        while (true) {
            const Mask one_set[1] = {a | Mask(1)};
            apart.add_term(Term::product(n, one_set), (std::popcount(a) % 2 == 0) ? 1 : -1);
            if (a == jmask) break;
            a = (a - jmask) & jmask;
        }
    }

    FormalSum bpart(n);
    {
        const Mask free = rest & ~jmask;
        Mask s = 0;
        while (true) {
            const Mask b = jmask | s;
            const Mask one_set[1] = {b};
            bpart.add_term(Term::product(n, one_set),
                           (std::popcount(s) % 2 == 0) ? -1 : 1);  // (-1)^(|B|-|J|-1)
            if (s == free) break;
            s = (s - free) & free;
        }
    }

    FormalSum out = apart * bpart;
    if (jmask == rest) {
        Mask a = 0;
        while (true) {
            const Mask one_set[1] = {a | Mask(1)};
            out.add_term(Term::product(n, one_set), (std::popcount(a) % 2 == 0) ? 1 : -1);
            if (a == rest) break;
            a = (a - rest) & rest;
        }
    }
    return out;
}

} // namespace chiv
