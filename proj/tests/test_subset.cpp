#include "doctest.h"

#include "chiv/subset.hpp"

#include <vector>

using namespace chiv;

TEST_CASE("subset basics") {
    const Subset s = Subset::of({1, 3}, 4);
    CHECK(s.bits() == 0b0101u);
    CHECK(s.size() == 2);
    CHECK(s.contains(1));
    CHECK(!s.contains(2));
    CHECK(s.to_string() == "{1,3}");
    CHECK(Subset::empty(4).to_string() == "{}");
    CHECK(s.complement() == Subset::of({2, 4}, 4));
    CHECK(Subset::full(3).is_full());
    CHECK(Subset::empty(2).is_empty());
    CHECK_THROWS_AS(Subset::of({5}, 4), std::invalid_argument);
    CHECK_THROWS_AS(Subset(0b10000u, 4), std::invalid_argument);
    CHECK_THROWS_AS(Subset(0, 17), std::invalid_argument);
    CHECK_THROWS_AS(Subset::full(2).contains(3), std::invalid_argument);
}

TEST_CASE("set operations") {
    const int n = 4;
    const Subset a = Subset::of({1, 2}, n);
    const Subset b = Subset::of({2, 3}, n);
    CHECK(sym_diff(a, b) == Subset::of({1, 3}, n));
    CHECK(set_union(a, b) == Subset::of({1, 2, 3}, n));
    CHECK(set_intersect(a, b) == Subset::of({2}, n));
    CHECK(set_minus(a, b) == Subset::of({1}, n));
    CHECK(Subset::of({2}, n).subset_of(a));
    CHECK(Subset::of({2}, n).proper_subset_of(a));
    CHECK(!a.proper_subset_of(a));
    CHECK(!a.subset_of(b));
    CHECK_THROWS_AS(sym_diff(a, Subset::of({1}, 3)), std::invalid_argument);
}

TEST_CASE("chain validation") {
    const int n = 3;
    CHECK_THROWS_AS(Chain(std::vector<Subset>{}), std::invalid_argument);
    CHECK_THROWS_AS(Chain({Subset::of({1}, n), Subset::of({2}, n)}), std::invalid_argument);
    CHECK_THROWS_AS(Chain({Subset::of({1}, n), Subset::of({1}, n)}), std::invalid_argument);
    const Chain c({Subset::empty(n), Subset::of({1}, n), Subset::full(n)});
    CHECK(c.length() == 3);
    CHECK(c.ground_size() == n);
}

namespace {

std::size_t count_chains(int n, const Subset& first, std::optional<Subset> last) {
    std::size_t k = 0;
    for_each_chain(n, first, last, [&](const std::vector<Mask>&) { ++k; });
    return k;
}

} // namespace

TEST_CASE("chain enumeration order is the documented one") {
    std::vector<std::vector<Mask>> got;
    for_each_chain(3, Subset::of({1}, 3), std::nullopt,
                   [&](const std::vector<Mask>& c) { got.push_back(c); });
    const std::vector<std::vector<Mask>> want = {{1}, {1, 3}, {1, 3, 7}, {1, 5}, {1, 5, 7}, {1, 7}};
    CHECK(got == want);
}

TEST_CASE("chain counts against hand-counted values") {
    // fixed top {1,...,n}: chains from {1} are ordered set partitions of the rest
    CHECK(count_chains(1, Subset::of({1}, 1), Subset::full(1)) == 1);
    CHECK(count_chains(2, Subset::of({1}, 2), Subset::full(2)) == 1);
    CHECK(count_chains(3, Subset::of({1}, 3), Subset::full(3)) == 3);
    CHECK(count_chains(4, Subset::of({1}, 4), Subset::full(4)) == 13);
    CHECK(count_chains(4, Subset::empty(4), Subset::full(4)) == 75);
    CHECK(count_chains(3, Subset::empty(3), Subset::full(3)) == 13);
    CHECK(count_chains(2, Subset::empty(2), Subset::full(2)) == 3);

    // free upper end
    CHECK(count_chains(1, Subset::of({1}, 1), std::nullopt) == 1);
    CHECK(count_chains(2, Subset::of({1}, 2), std::nullopt) == 2);
    CHECK(count_chains(3, Subset::of({1}, 3), std::nullopt) == 6);
    CHECK(count_chains(4, Subset::of({1}, 4), std::nullopt) == 26);
    CHECK(count_chains(5, Subset::of({1}, 5), std::nullopt) == 150);

    CHECK_THROWS_AS(count_chains(3, Subset::of({2}, 3), Subset::of({1}, 3)),
                    std::invalid_argument);

    const auto materialized = enumerate_chains(3, Subset::of({1}, 3), std::nullopt);
    CHECK(materialized.size() == 6);
    CHECK(materialized.front().length() == 1);
}

TEST_CASE("signed chain counts, small hand cases") {
    CHECK(chain_sign_sum(1, ChainFamily::FirstContainsOne) == -1);
    CHECK(chain_sign_sum(2, ChainFamily::FirstContainsOne) == 0);
    CHECK(chain_sign_sum(3, ChainFamily::FirstContainsOne) == 0);

    CHECK(chain_sign_sum(1, ChainFamily::FirstEmpty) == 1);
    CHECK(chain_sign_sum(2, ChainFamily::FirstEmpty) == -1);
    CHECK(chain_sign_sum(3, ChainFamily::FirstEmpty) == 1);

    const Chain b1({Subset::of({1}, 2)});
    CHECK(chain_sign_sum(2, ChainFamily::ContainsSubchain, &b1) == 1);
    const Chain b2({Subset::of({1, 2}, 2)});
    CHECK(chain_sign_sum(2, ChainFamily::ContainsSubchain, &b2) == 0);
    const Chain b3({Subset::of({1}, 3), Subset::of({1, 3}, 3)});
    CHECK(chain_sign_sum(3, ChainFamily::ContainsSubchain, &b3) == -1);

    const Chain bad({Subset::of({2}, 2)});
    CHECK_THROWS_AS(chain_sign_sum(2, ChainFamily::ContainsSubchain, &bad),
                    std::invalid_argument);
    CHECK_THROWS_AS(chain_sign_sum(2, ChainFamily::ContainsSubchain, nullptr),
                    std::invalid_argument);
    CHECK_THROWS_AS(chain_sign_sum(0, ChainFamily::FirstEmpty), std::invalid_argument);
}
