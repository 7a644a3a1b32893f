#include "chiv/partition.hpp"

#include <algorithm>
#include <array>

namespace chiv {

namespace {

int check_part_n(int n) {
    if (n < 1 || n > kMaxPartitionGroundSize)
        throw std::invalid_argument("SetPartition: ground size must be in [1,12]");
    return n;
}

std::int64_t factorial(int k) {
    std::int64_t r = 1;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
}

} // namespace

SetPartition::SetPartition(std::vector<Subset> blocks) : blocks_(std::move(blocks)) {
    if (blocks_.empty()) throw std::invalid_argument("SetPartition: no blocks");
    n_ = check_part_n(blocks_[0].ground_size());
    Mask seen = 0;
    for (const Subset& b : blocks_) {
        if (b.ground_size() != n_)
            throw std::invalid_argument("SetPartition: mismatched ground sets");
        if (b.is_empty()) throw std::invalid_argument("SetPartition: empty block");
        if (seen & b.bits()) throw std::invalid_argument("SetPartition: overlapping blocks");
        seen |= b.bits();
    }
    if (seen != Subset::mask_all(n_))
        throw std::invalid_argument("SetPartition: blocks must cover the ground set");
    std::sort(blocks_.begin(), blocks_.end(), [](const Subset& a, const Subset& b) {
        return std::countr_zero(a.bits()) < std::countr_zero(b.bits());
    });
}

SetPartition SetPartition::from_rgs(std::span<const int> rgs) {
    const int n = check_part_n(static_cast<int>(rgs.size()));
    int next = 0;
    std::vector<Mask> label_bits;
    for (int i = 0; i < n; ++i) {
        if (rgs[i] < 0 || rgs[i] > next)
            throw std::invalid_argument("SetPartition: not a restricted growth string");
        if (rgs[i] == next) {
            label_bits.push_back(0);
            ++next;
        }
        label_bits[rgs[i]] |= Mask(1) << i;
    }
    std::vector<Subset> blocks;
    blocks.reserve(label_bits.size());
    for (Mask m : label_bits) blocks.emplace_back(m, n);
    return SetPartition(std::move(blocks));
}

SetPartition SetPartition::singletons(int n) {
    check_part_n(n);
    std::vector<Subset> blocks;
    for (int i = 0; i < n; ++i) blocks.emplace_back(Mask(1) << i, n);
    return SetPartition(std::move(blocks));
}

SetPartition SetPartition::one_block(int n) {
    check_part_n(n);
    return SetPartition({Subset::full(n)});
}

int SetPartition::block_of(int element) const {
    for (int i = 0; i < length(); ++i)
        if (blocks_[i].contains(element)) return i;
    throw std::logic_error("SetPartition: element not covered");
}

std::string SetPartition::to_string() const {
    std::string out;
    for (const Subset& b : blocks_) out += b.to_string();
    return out;
}

bool refines(const SetPartition& f, const SetPartition& g) {
    if (f.ground_size() != g.ground_size())
        throw std::invalid_argument("refines: mismatched ground sets");
    for (const Subset& b : f.blocks()) {
        const int e = std::countr_zero(b.bits()) + 1;
        if (!b.subset_of(g.blocks()[g.block_of(e)])) return false;
    }
    return true;
}

std::int64_t mobius(const SetPartition& f, const SetPartition& g) {
    if (!refines(f, g)) return 0;
    std::int64_t result = 1;
    for (const Subset& gb : g.blocks()) {
        int b = 0;
        for (const Subset& fb : f.blocks())
            if (fb.subset_of(gb)) ++b;
        result *= ((b - 1) % 2 == 0 ? 1 : -1) * factorial(b - 1);
    }
    return result;
}

void for_each_partition(int n, const std::function<void(const SetPartition&)>& fn) {
    check_part_n(n);
    std::vector<int> rgs(n, 0);
    // Odometer over restricted growth strings, ascending lexicographic.
    while (true) {
        fn(SetPartition::from_rgs(rgs));
        int i = n - 1;
        for (; i >= 1; --i) {
            int cap = 0;
            for (int j = 0; j < i; ++j) cap = std::max(cap, rgs[j]);
            if (rgs[i] <= cap) break;  // can still grow at position i
        }
        if (i < 1) return;
        ++rgs[i];
        for (int j = i + 1; j < n; ++j) rgs[j] = 0;
    }
}

std::vector<SetPartition> enumerate_partitions(int n) {
    std::vector<SetPartition> out;
    for_each_partition(n, [&](const SetPartition& p) { out.push_back(p); });
    return out;
}

namespace {

void two_refine_rec(const SetPartition& g, std::size_t idx, std::vector<Subset>& acc,
                    const std::function<void(const SetPartition&)>& fn) {
    if (idx == g.blocks().size()) {
        fn(SetPartition(acc));
        return;
    }
    const Subset& blk = g.blocks()[idx];
    // keep the block whole
    acc.push_back(blk);
    two_refine_rec(g, idx + 1, acc, fn);
    acc.pop_back();
    // Unordered splits (H, blk - H): exactly those H containing min(blk)
    // with H proper. H = low | s for s a proper submask of the remainder.
    const Mask bits = blk.bits();
    const Mask low = bits & (0 - bits);
    const Mask rest = bits ^ low;
    const int n = g.ground_size();
    Mask s = 0;  // ascending submask walk of `rest`, excluding rest itself
    while (s != rest) {
        acc.emplace_back(low | s, n);
        acc.emplace_back(bits ^ (low | s), n);
        two_refine_rec(g, idx + 1, acc, fn);
        acc.pop_back();
        acc.pop_back();
        s = (s - rest) & rest;
    }
}

// Enumerates every partial matching on the blocks of F exactly once by
// deciding, for the least undecided block, whether it stays single or
// which later block it merges with.
void two_coarse_rec(const SetPartition& f, const std::vector<int>& avail,
                    std::vector<Subset>& acc,
                    const std::function<void(const SetPartition&)>& fn) {
    if (avail.empty()) {
        fn(SetPartition(acc));
        return;
    }
    const int a = avail[0];
    std::vector<int> rest(avail.begin() + 1, avail.end());
    acc.push_back(f.blocks()[a]);
    two_coarse_rec(f, rest, acc, fn);
    acc.pop_back();
    for (std::size_t j = 0; j < rest.size(); ++j) {
        std::vector<int> next;
        for (std::size_t t = 0; t < rest.size(); ++t)
            if (t != j) next.push_back(rest[t]);
        acc.push_back(set_union(f.blocks()[a], f.blocks()[rest[j]]));
        two_coarse_rec(f, next, acc, fn);
        acc.pop_back();
    }
}

} // namespace

void for_each_two_refinement(const SetPartition& g,
                             const std::function<void(const SetPartition&)>& fn) {
    std::vector<Subset> acc;
    two_refine_rec(g, 0, acc, fn);
}

std::vector<SetPartition> enumerate_two_refinements(const SetPartition& g) {
    std::vector<SetPartition> out;
    for_each_two_refinement(g, [&](const SetPartition& p) { out.push_back(p); });
    return out;
}

void for_each_two_coarser(const SetPartition& f,
                          const std::function<void(const SetPartition&)>& fn) {
    std::vector<int> avail(f.length());
    for (int i = 0; i < f.length(); ++i) avail[i] = i;
    std::vector<Subset> acc;
    two_coarse_rec(f, avail, acc, fn);
}

std::vector<SetPartition> enumerate_two_coarser(const SetPartition& f) {
    std::vector<SetPartition> out;
    for_each_two_coarser(f, [&](const SetPartition& p) { out.push_back(p); });
    return out;
}

PartitionLattice::PartitionLattice(int n) : n_(n) {
    if (n < 1 || n > 5)
        throw std::invalid_argument("PartitionLattice: dense tables are capped at n = 5");
    parts_ = enumerate_partitions(n);
    const std::size_t b = parts_.size();
    leq_.assign(b * b, false);
    for (std::size_t i = 0; i < b; ++i)
        for (std::size_t j = 0; j < b; ++j)
            leq_[i * b + j] = refines(parts_[i], parts_[j]);
}

int PartitionLattice::index_of(const SetPartition& p) const {
    for (int i = 0; i < size(); ++i)
        if (parts_[i] == p) return i;
    throw std::invalid_argument("PartitionLattice: partition not in this lattice");
}

PartitionLattice::Table PartitionLattice::delta() const {
    const int b = size();
    Table t(static_cast<std::size_t>(b) * b, 0);
    for (int i = 0; i < b; ++i) t[static_cast<std::size_t>(i) * b + i] = 1;
    return t;
}

PartitionLattice::Table PartitionLattice::zeta() const {
    const int b = size();
    Table t(static_cast<std::size_t>(b) * b, 0);
    for (int i = 0; i < b; ++i)
        for (int j = 0; j < b; ++j)
            if (leq(i, j)) t[static_cast<std::size_t>(i) * b + j] = 1;
    return t;
}

PartitionLattice::Table PartitionLattice::mobius_closed_form() const {
    const int b = size();
    Table t(static_cast<std::size_t>(b) * b, 0);
    for (int i = 0; i < b; ++i)
        for (int j = 0; j < b; ++j)
            t[static_cast<std::size_t>(i) * b + j] = mobius(parts_[i], parts_[j]);
    return t;
}

PartitionLattice::Table PartitionLattice::mobius_recursive() const {
    const int b = size();
    Table t(static_cast<std::size_t>(b) * b, 0);
    // Memoized recursion; enumeration order is not a linear extension of
    // refinement, so a plain sweep would read unfilled entries.
    std::vector<char> done(t.size(), 0);
    std::function<std::int64_t(int, int)> mu = [&](int x, int y) -> std::int64_t {
        const std::size_t key = static_cast<std::size_t>(x) * b + y;
        if (done[key]) return t[key];
        std::int64_t v = 0;
        if (x == y) {
            v = 1;
        } else if (leq(x, y)) {
            for (int z = 0; z < b; ++z)
                if (z != y && leq(x, z) && leq(z, y)) v -= mu(x, z);
        }
        done[key] = 1;
        t[key] = v;
        return v;
    };
    for (int i = 0; i < b; ++i)
        for (int j = 0; j < b; ++j) mu(i, j);
    return t;
}

PartitionLattice::Table PartitionLattice::convolve(const Table& f, const Table& g) const {
    const int b = size();
    if (f.size() != static_cast<std::size_t>(b) * b || g.size() != f.size())
        throw std::invalid_argument("convolve: table size mismatch");
    Table t(f.size(), 0);
    for (int x = 0; x < b; ++x)
        for (int y = 0; y < b; ++y) {
            if (!leq(x, y)) continue;
            std::int64_t acc = 0;
            for (int z = 0; z < b; ++z)
                if (leq(x, z) && leq(z, y))
                    acc += f[static_cast<std::size_t>(x) * b + z] * g[static_cast<std::size_t>(z) * b + y];
            t[static_cast<std::size_t>(x) * b + y] = acc;
        }
    return t;
}

} // namespace chiv
