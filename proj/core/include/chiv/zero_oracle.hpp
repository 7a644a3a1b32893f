// Decides whether a product of threshold indicators vanishes identically
// on the open region { u_i > 0, sum u_i < 2 }.
//
// Two routes, deliberately kept independent:
//   * quick_zero_test: a sufficient counting condition, integer-only.
//     With k >= 2 factors the product vanishes when every element appears
//     in at most 3k/4 of them. One-sided: Unknown is not Nonzero.
//   * lp_zero_test: exact. The product is nonzero iff the linear program
//     min sum x  s.t.  sum_{i in A_j} x_i - sum_{i not in A_j} x_i >= 1,
//     x >= 0  is feasible with optimum < 2. From an optimal point a
//     strictly interior witness is built and checked in exact rationals.
//
// Verdicts from the LP route can be cached; the cache file is a line
// format  n;m1,m2,...;{0|1}  (masks ascending, 1 = vanishes), append-only
// and loaded fully at startup.

#pragma once

#include "chiv/algebra.hpp"

#include <filesystem>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>

namespace chiv {

enum class QuickVerdict { Zero, Unknown };

QuickVerdict quick_zero_test(const Term& t);

struct ZeroLPResult {
    bool zero = false;
    bool feasible = false;
    Rational optimum = 0;             // meaningful only when feasible
    std::vector<Rational> witness;    // nonempty exactly when !zero
};

// Pre: t has at least one factor. The constant term never vanishes and is
// handled by is_zero directly.
ZeroLPResult lp_zero_test(const Term& t);

// Thrown when a cache file fails to parse; carries the 1-based line.
struct CacheCorrupt : std::runtime_error {
    std::size_t line;
    CacheCorrupt(std::size_t line_no, const std::string& what)
        : std::runtime_error(what), line(line_no) {}
};

class ZeroCache {
public:
    ZeroCache() = default;                               // in-memory only
    explicit ZeroCache(const std::filesystem::path& dir);  // load + append

    std::optional<bool> lookup(const Term& t) const;
    void record(const Term& t, bool zero);

    std::size_t entries() const;
    std::size_t zero_entries() const;
    bool persistent() const { return !file_.empty(); }
    const std::filesystem::path& file() const { return file_; }

    static std::string encode(const Term& t, bool zero);
    // Parses one cache line; throws CacheCorrupt on malformed input.
    static std::pair<Term, bool> decode(const std::string& line, std::size_t line_no);

    static constexpr const char* kFileName = "zero-cache.txt";

private:
    mutable std::shared_mutex mu_;
    std::unordered_map<Term, bool, TermHash> map_;
    std::filesystem::path file_;
};

// Quick test first; on Unknown consults the cache, then the LP, recording
// fresh LP verdicts. The constant term is never zero.
bool is_zero(const Term& t, ZeroCache& cache);

} // namespace chiv
