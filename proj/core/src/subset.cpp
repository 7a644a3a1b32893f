#include "chiv/subset.hpp"

namespace chiv {

std::string Subset::to_string() const {
    std::string out = "{";
    bool sep = false;
    for (int e = 1; e <= n_; ++e) {
        if (!contains(e)) continue;
        if (sep) out += ',';
        out += std::to_string(e);
        sep = true;
    }
    out += '}';
    return out;
}

std::vector<Chain> enumerate_chains(int n, const Subset& first, std::optional<Subset> last) {
    std::vector<Chain> out;
    for_each_chain(n, first, last, [&](const std::vector<Mask>& masks) {
        std::vector<Subset> sets;
        sets.reserve(masks.size());
        for (Mask m : masks) sets.emplace_back(m, n);
        out.emplace_back(std::move(sets));
    });
    return out;
}

std::int64_t chain_sign_sum(int n, ChainFamily family, const Chain* subchain) {
    if (n < 1 || n > kMaxGroundSize)
        throw std::invalid_argument("chain_sign_sum: n out of range");
    const Subset full = Subset::full(n);
    std::int64_t total = 0;
    auto add_signed = [&](std::size_t len) { total += (len % 2 == 0) ? 1 : -1; };

    switch (family) {
    case ChainFamily::FirstEmpty:
        for_each_chain(n, Subset::empty(n), full,
                       [&](const std::vector<Mask>& c) { add_signed(c.size()); });
        return total;
    case ChainFamily::FirstContainsOne:
        for (Mask f = 1; f <= full.bits(); ++f) {
            if (!(f & 1u)) continue;  // element 1 is bit 0
            for_each_chain(n, Subset(f, n), full,
                           [&](const std::vector<Mask>& c) { add_signed(c.size()); });
        }
        return total;
    case ChainFamily::ContainsSubchain: {
        if (subchain == nullptr)
            throw std::invalid_argument("chain_sign_sum: subchain required");
        if (subchain->ground_size() != n)
            throw std::invalid_argument("chain_sign_sum: subchain has wrong ground size");
        if (!subchain->sets().front().contains(1))
            throw std::invalid_argument("chain_sign_sum: subchain must start with a set containing 1");
        std::vector<Mask> want;
        for (const Subset& s : subchain->sets()) want.push_back(s.bits());
        for (Mask f = 1; f <= full.bits(); ++f) {
            if (!(f & 1u)) continue;
            for_each_chain(n, Subset(f, n), full, [&](const std::vector<Mask>& c) {
                // both sequences ascend, so subchain containment is a merge scan
                std::size_t j = 0;
                for (std::size_t i = 0; i < c.size() && j < want.size(); ++i)
                    if (c[i] == want[j]) ++j;
                if (j == want.size()) add_signed(c.size());
            });
        }
        return total;
    }
    }
    throw std::logic_error("chain_sign_sum: unknown family");
}

} // namespace chiv
