#include "doctest.h"

#include "chiv/builder.hpp"

#include <tuple>
#include <vector>

using namespace chiv;

namespace {

Term term_of(int n, std::initializer_list<Mask> masks) {
    std::vector<Mask> v(masks);
    return Term::product(n, v);
}

} // namespace

TEST_CASE("right side has one signed generator per subset") {
    const FormalSum rhs = build_rhs(2);
    CHECK(rhs.term_count() == 4);
    CHECK(rhs.coeff(term_of(2, {0b00})) == -1);
    CHECK(rhs.coeff(term_of(2, {0b01})) == 1);
    CHECK(rhs.coeff(term_of(2, {0b10})) == 1);
    CHECK(rhs.coeff(term_of(2, {0b11})) == -1);

    const FormalSum rhs3 = build_rhs(3);
    CHECK(rhs3.term_count() == 8);
    CHECK(rhs3.coeff(term_of(3, {0b111})) == 1);  // odd-sized set enters positively
}

TEST_CASE("canonical left side, no elimination, tiny hand expansions") {
    ZeroCache cache;
    BuildStats s1;
    const FormalSum l1 = build_lhs_canonical(1, false, cache, 1, &s1);
    CHECK(s1.raw_monomials == 2);
    CHECK(s1.dropped_zero == 0);
    CHECK(l1.term_count() == 2);
    CHECK(l1.coeff(term_of(1, {0b0})) == 1);
    CHECK(l1.coeff(term_of(1, {0b1})) == 1);

    BuildStats s2;
    const FormalSum l2 = build_lhs_canonical(2, false, cache, 1, &s2);
    CHECK(s2.raw_monomials == 12);
    CHECK(s2.dropped_zero == 0);
    CHECK(l2.term_count() == 4);
    CHECK(l2.coeff(term_of(2, {0b01})) == 1);
    CHECK(l2.coeff(term_of(2, {0b10})) == 1);
    CHECK(l2.coeff(term_of(2, {0b11})) == -1);
    CHECK(l2.coeff(term_of(2, {0b00})) == 3);

    BuildStats s3;
    const FormalSum l3 = build_lhs_canonical(3, false, cache, 1, &s3);
    CHECK(s3.raw_monomials == 120);
}

TEST_CASE("zero elimination strips exactly the vanishing terms") {
    ZeroCache cache;
    BuildStats s;
    const FormalSum l2 = build_lhs_canonical(2, true, cache, 1, &s);
    CHECK(s.raw_monomials == 12);
    CHECK(s.dropped_zero == 5);
    CHECK(l2.term_count() == 3);
    CHECK(l2.coeff(term_of(2, {0b01})) == 1);
    CHECK(l2.coeff(term_of(2, {0b10})) == 1);
    CHECK(l2.coeff(term_of(2, {0b11})) == -1);
    CHECK(l2.coeff(term_of(2, {0b00})) == 0);
}

TEST_CASE("single-J inner sums") {
    ZeroCache cache;
    const FormalSum inner0 = build_inner_sum(2, Subset::empty(2), false, cache);
    CHECK(inner0.term_count() == 1);
    CHECK(inner0.coeff(term_of(2, {0b00})) == 2);

    const FormalSum inner2 = build_inner_sum(2, Subset::of({2}, 2), false, cache);
    CHECK(inner2.term_count() == 4);
    CHECK(inner2.coeff(term_of(2, {0b01})) == 1);
    CHECK(inner2.coeff(term_of(2, {0b10})) == 1);
    CHECK(inner2.coeff(term_of(2, {0b11})) == -1);
    CHECK(inner2.coeff(term_of(2, {0b00})) == 1);

    CHECK_THROWS_AS(build_inner_sum(2, Subset::of({1}, 2), false, cache),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_inner_sum(3, Subset::of({2}, 2), false, cache),
                    std::invalid_argument);
}

TEST_CASE("direct and canonical forms agree exactly for small n") {
    ZeroCache cache;
    for (int n = 1; n <= 3; ++n) {
        const FormalSum direct = build_lhs_direct(n);
        const FormalSum canonical = build_lhs_canonical(n, false, cache, 1);
        CHECK(direct == canonical);
    }
    CHECK_THROWS_AS(build_lhs_direct(7), std::invalid_argument);
    CHECK_THROWS_AS(build_lhs_canonical(9, false, cache, 1), std::invalid_argument);
}

TEST_CASE("worker count does not change the canonical build") {
    ZeroCache c1, c2;
    const FormalSum a = build_lhs_canonical(4, true, c1, 1);
    const FormalSum b = build_lhs_canonical(4, true, c2, 3);
    CHECK(a == b);
}

TEST_CASE("progress reporting brackets the build") {
    ZeroCache cache;
    std::vector<std::tuple<std::uint64_t, int, int>> calls;
    ProgressFn fn = [&](std::uint64_t raw, int done, int total) {
        calls.emplace_back(raw, done, total);
    };
    (void)build_lhs_canonical(2, false, cache, 1, nullptr, fn);
    REQUIRE(calls.size() >= 2);
    CHECK(calls.front() == std::tuple<std::uint64_t, int, int>{0, 0, 2});
    CHECK(calls.back() == std::tuple<std::uint64_t, int, int>{12, 2, 2});
    for (std::size_t i = 1; i < calls.size(); ++i)
        CHECK(std::get<0>(calls[i - 1]) <= std::get<0>(calls[i]));
}

TEST_CASE("box-product permutation sum") {
    const std::vector<Subset> blocks = {Subset::of({1}, 2), Subset::of({2}, 2)};
    const FormalSum c = chi_star(blocks);
    CHECK(c.term_count() == 3);
    CHECK(c.coeff(Term(2)) == 1);
    CHECK(c.coeff(term_of(2, {0b11})) == -1);
    CHECK(c.coeff(term_of(2, {0b00})) == 1);

    CHECK_THROWS_AS(chi_star({Subset::of({1}, 2)}), std::invalid_argument);
    CHECK_THROWS_AS(chi_star({Subset::of({1, 2}, 2), Subset::of({2}, 2)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(chi_star(std::vector<Subset>{}), std::invalid_argument);
}

TEST_CASE("collapsed inner-sum forms on hand cases") {
    const FormalSum s0 = build_simp_forms(2, Subset::empty(2));
    CHECK(s0.term_count() == 2);
    CHECK(s0.coeff(term_of(2, {0b01, 0b10})) == 1);
    CHECK(s0.coeff(term_of(2, {0b00})) == -1);

    const FormalSum s2 = build_simp_forms(2, Subset::of({2}, 2));
    CHECK(s2.term_count() == 4);
    CHECK(s2.coeff(term_of(2, {0b01})) == 1);
    CHECK(s2.coeff(term_of(2, {0b10})) == 1);
    CHECK(s2.coeff(term_of(2, {0b11})) == -1);
    CHECK(s2.coeff(term_of(2, {0b01, 0b10})) == -1);

    // n = 1: J = {} plays the role of {2,...,n}, so the extra block fires
    const FormalSum s1 = build_simp_forms(1, Subset::empty(1));
    CHECK(s1.coeff(term_of(1, {0b1})) == 1);
    CHECK(s1.coeff(term_of(1, {0b0})) == -1);

    CHECK_THROWS_AS(build_simp_forms(2, Subset::of({1}, 2)), std::invalid_argument);
}
