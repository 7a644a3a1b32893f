// chi-verify: command-line front end.
//
// Exit codes: 0 proved equal / success, 1 not equal / check failed,
// 2 inconclusive, 64 usage or capability error, 65 corrupt cache.

#include "chiv/numeric.hpp"
#include "chiv/verifier.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <random>

namespace {

constexpr int kExitProved = 0;
constexpr int kExitNotEqual = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 64;
constexpr int kExitCorruptCache = 65;
constexpr int kExitInternal = 70;

int verdict_exit(chiv::VerdictKind k) {
    switch (k) {
    case chiv::VerdictKind::ProvedEqual: return kExitProved;
    case chiv::VerdictKind::NotEqual: return kExitNotEqual;
    case chiv::VerdictKind::Inconclusive: return kExitInconclusive;
    }
    return kExitInternal;
}

// NotEqual dominates Inconclusive dominates ProvedEqual, regardless of the
// numeric exit codes.
int verdict_severity(chiv::VerdictKind k) {
    switch (k) {
    case chiv::VerdictKind::ProvedEqual: return 0;
    case chiv::VerdictKind::Inconclusive: return 1;
    case chiv::VerdictKind::NotEqual: return 2;
    }
    return 2;
}

std::unique_ptr<chiv::ZeroCache> open_cache(const std::string& dir) {
    if (dir.empty()) return std::make_unique<chiv::ZeroCache>();
    return std::make_unique<chiv::ZeroCache>(std::filesystem::path(dir));
}

chiv::Rational parse_rational(const std::string& s) {
    const auto bad = [&]() { throw std::invalid_argument("cannot parse rational '" + s + "'"); };
    if (s.empty()) bad();
    const auto slash = s.find('/');
    if (slash != std::string::npos) {
        const std::string p = s.substr(0, slash), q = s.substr(slash + 1);
        if (p.empty() || q.empty() ||
            p.find_first_not_of("0123456789") != std::string::npos ||
            q.find_first_not_of("0123456789") != std::string::npos)
            bad();
        const chiv::Rational den{chiv::Int(q)};
        if (den == 0) bad();
        return chiv::Rational(chiv::Int(p)) / den;
    }
    const auto dot = s.find('.');
    if (dot != std::string::npos) {
        const std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
        if ((ip.empty() && fp.empty()) ||
            ip.find_first_not_of("0123456789") != std::string::npos ||
            fp.find_first_not_of("0123456789") != std::string::npos)
            bad();
        chiv::Rational r = ip.empty() ? chiv::Int(0) : chiv::Int(ip);
        chiv::Rational scale = 1;
        for (char c : fp) {
            scale /= 10;
            r += int(c - '0') * scale;
        }
        return r;
    }
    if (s.find_first_not_of("0123456789") != std::string::npos) bad();
    return chiv::Rational(chiv::Int(s));
}

std::vector<chiv::Rational> parse_supports(const std::string& csv) {
    std::vector<chiv::Rational> out;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        auto comma = csv.find(',', pos);
        if (comma == std::string::npos) comma = csv.size();
        out.push_back(parse_rational(csv.substr(pos, comma - pos)));
        pos = comma + 1;
        if (comma == csv.size()) break;
    }
    return out;
}

struct VerifyArgs {
    int n = 0;
    std::string method = "both";
    std::string emit_terms;
};

int run_verify(const VerifyArgs& a, chiv::ZeroCache& cache, int workers) {
    const bool do_cancel = a.method == "cancel" || a.method == "both";
    const bool do_val = a.method == "valuations" || a.method == "both";
    if (do_val && a.n > 6)
        throw chiv::CapabilityError("the valuation method is supported only for n <= 6");

    std::mutex progress_mu;
    chiv::ProgressFn progress = {};
    if (a.n >= 7) {
        progress = [&](std::uint64_t raw, int done, int total) {
            std::lock_guard lock(progress_mu);
            std::cerr << "progress: shards " << done << "/" << total << " raw_monomials=" << raw
                      << std::endl;
        };
    }

    chiv::VerdictKind worst = chiv::VerdictKind::ProvedEqual;
    const auto fold = [&](const chiv::Verdict& v) {
        std::cout << chiv::verdict_to_json(v) << "\n";
        if (verdict_severity(v.kind) > verdict_severity(worst)) worst = v.kind;
    };

    std::optional<chiv::FormalSum> emit_sum;
    if (do_cancel) {
        const auto t0 = std::chrono::steady_clock::now();
        chiv::BuildStats stats;
        const chiv::FormalSum lhs =
            chiv::build_lhs_canonical(a.n, true, cache, workers, &stats, progress);
        const chiv::FormalSum rhs = chiv::build_rhs(a.n);
        chiv::Verdict v = chiv::verify_by_cancellation(lhs, rhs, cache);
        v.build = stats;
        v.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
        emit_sum = v.residual;
        fold(v);
    }
    if (do_val) {
        chiv::Verdict v = chiv::verify_by_valuations(a.n, cache, workers);
        if (!emit_sum) {
            chiv::BuildStats stats;
            emit_sum = chiv::build_lhs_canonical(a.n, true, cache, workers, &stats) -
                       chiv::build_rhs(a.n);
        }
        fold(v);
    }

    if (!a.emit_terms.empty() && emit_sum) {
        std::ofstream out(a.emit_terms);
        if (!out.is_open())
            throw std::invalid_argument("cannot open --emit-terms path '" + a.emit_terms + "'");
        chiv::dump_jsonl(*emit_sum, out);
    }
    return verdict_exit(worst);
}

int run_conjecture(int n, chiv::ZeroCache& cache) {
    if (n > 5)
        throw chiv::CapabilityError("conjecture table needs exhaustive valuations, n <= 5");
    const chiv::Mask rest = chiv::Subset::mask_all(n) & ~chiv::Mask(1);
    bool all_pass = true;
    chiv::Mask j = 0;
    while (true) {
        const chiv::Subset js(j, n);
        const chiv::FormalSum inner = chiv::build_inner_sum(n, js, false, cache);
        const chiv::FormalSum simp = chiv::build_simp_forms(n, js);
        const auto res = chiv::equal_modulo_zero(inner, simp, cache);
        std::cout << "J=" << js.to_string() << " inner_terms=" << inner.term_count()
                  << " simp_terms=" << simp.term_count()
                  << " extra_block=" << (j == rest ? "yes" : "no")
                  << " verdict=" << (res.equal ? "pass" : "FAIL");
        if (!res.equal) std::cout << " separating=" << res.separating->to_string();
        std::cout << "\n";
        all_pass = all_pass && res.equal;
        if (j == rest) break;
        j = (j - rest) & rest;
    }
    std::cout << (all_pass ? "conjecture: all J pass" : "conjecture: FAILED") << "\n";
    return all_pass ? kExitProved : kExitNotEqual;
}

int run_cache_stats(chiv::ZeroCache& cache) {
    std::cout << "file=" << (cache.persistent() ? cache.file().string() : "(memory)")
              << " entries=" << cache.entries() << " zero=" << cache.zero_entries()
              << " nonzero=" << (cache.entries() - cache.zero_entries()) << "\n";
    return kExitProved;
}

int run_cache_warm(int n, chiv::ZeroCache& cache, int workers) {
    const std::size_t before = cache.entries();
    chiv::BuildStats stats;
    (void)chiv::build_lhs_canonical(n, true, cache, workers, &stats);
    std::cout << "warmed n=" << n << " raw_monomials=" << stats.raw_monomials
              << " entries_before=" << before << " entries_after=" << cache.entries() << "\n";
    return kExitProved;
}

int run_cache_verify_integrity(chiv::ZeroCache& cache) {
    if (!cache.persistent())
        throw std::invalid_argument("verify-integrity needs --cache-dir or CHI_VERIFY_CACHE_DIR");
    std::ifstream in(cache.file());
    std::vector<std::pair<chiv::Term, bool>> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        entries.push_back(chiv::ZeroCache::decode(line, line_no));
    }
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    // deterministic 1% sample, at least one entry
    const std::size_t want = entries.empty() ? 0 : std::max<std::size_t>(1, entries.size() / 100);
    std::mt19937_64 rng(0x5eedcafeULL);
    std::shuffle(entries.begin(), entries.end(), rng);
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < want; ++i) {
        const auto& [term, recorded] = entries[i];
        const bool fresh = chiv::lp_zero_test(term).zero;
        if (fresh != recorded) {
            ++mismatches;
            std::cerr << "integrity mismatch: " << chiv::ZeroCache::encode(term, recorded)
                      << " but oracle says " << (fresh ? 1 : 0) << "\n";
        }
    }
    std::cout << "integrity: sampled=" << want << " of " << entries.size()
              << " mismatches=" << mismatches << "\n";
    return mismatches == 0 ? kExitProved : kExitCorruptCache;
}

struct NumericArgs {
    int n = 1;
    std::string supports;
    int grid = 64;
    double tol = -1.0;
};

int run_numeric(const NumericArgs& a) {
    chiv::SupportSpec spec;
    spec.n = a.n;
    spec.delta = parse_supports(a.supports);
    spec.grid = a.grid;
    spec.validate();
    const double tol = a.tol > 0 ? a.tol : 8.0 / a.grid;
    const chiv::NumericReport rep = chiv::numeric_check(spec);
    char buf[160];
    for (const auto& [name, val] : rep.per_partition) {
        std::snprintf(buf, sizeof buf, "partition %s lhs_part=%+.12f", name.c_str(), val);
        std::cout << buf << "\n";
    }
    std::snprintf(buf, sizeof buf, "lhs=%+.12f rhs=%+.12f gap=%+.3e tol=%.3e", rep.lhs, rep.rhs,
                  rep.gap, tol);
    std::cout << buf << "\n";
    return std::abs(rep.gap) <= tol ? kExitProved : kExitNotEqual;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"verifier for an indicator-sum identity over set partitions"};
    app.require_subcommand(1);

    std::string cache_dir;
    if (const char* env = std::getenv("CHI_VERIFY_CACHE_DIR")) cache_dir = env;
    app.add_option("--cache-dir", cache_dir,
                   "directory for the zero-product verdict cache (default: CHI_VERIFY_CACHE_DIR)")
        ->capture_default_str();
    int workers = 0;
    app.add_option("--workers", workers, "worker threads, 0 = hardware concurrency")
        ->check(CLI::Range(0, 256));

    VerifyArgs va;
    CLI::App* verify = app.add_subcommand("verify", "verify the identity for one n");
    verify->fallthrough();
    verify->add_option("--n", va.n, "ground set size")->required()->check(CLI::Range(1, 8));
    verify->add_option("--method", va.method, "cancel, valuations, or both")
        ->check(CLI::IsMember({"cancel", "valuations", "both"}))
        ->capture_default_str();
    verify->add_option("--emit-terms", va.emit_terms, "dump the residual difference as JSON lines");

    int conj_n = 0;
    CLI::App* conjecture =
        app.add_subcommand("conjecture", "check the collapsed form of every inner sum");
    conjecture->fallthrough();
    conjecture->add_option("--n", conj_n, "ground set size")->required()->check(CLI::Range(1, 5));

    CLI::App* cache_cmd = app.add_subcommand("cache", "inspect or maintain the verdict cache");
    cache_cmd->fallthrough();
    cache_cmd->require_subcommand(1);
    CLI::App* cache_stats = cache_cmd->add_subcommand("stats", "entry counts");
    cache_stats->fallthrough();
    int warm_n = 0;
    CLI::App* cache_warm = cache_cmd->add_subcommand("warm", "precompute verdicts for one n");
    cache_warm->fallthrough();
    cache_warm->add_option("--n", warm_n, "ground set size")->required()->check(CLI::Range(1, 8));
    CLI::App* cache_integrity =
        cache_cmd->add_subcommand("verify-integrity", "re-run the oracle on a sample");
    cache_integrity->fallthrough();

    NumericArgs na;
    CLI::App* numeric = app.add_subcommand("numeric-check", "quadrature spot check of the identity");
    numeric->fallthrough();
    numeric->add_option("--n", na.n, "ground set size")->required()->check(CLI::Range(1, 3));
    numeric->add_option("--supports", na.supports, "comma-separated positive radii, e.g. 1/2,3/4")
        ->required();
    numeric->add_option("--grid", na.grid, "samples per unit length (power of two)")
        ->capture_default_str();
    numeric->add_option("--tol", na.tol, "absolute gap tolerance (default 8/grid)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
            e.get_name() == "CallForVersion") {
            return app.exit(e);
        }
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        auto cache = open_cache(cache_dir);
        if (verify->parsed()) return run_verify(va, *cache, workers);
        if (conjecture->parsed()) return run_conjecture(conj_n, *cache);
        if (cache_cmd->parsed()) {
            if (cache_stats->parsed()) return run_cache_stats(*cache);
            if (cache_warm->parsed()) return run_cache_warm(warm_n, *cache, workers);
            if (cache_integrity->parsed()) return run_cache_verify_integrity(*cache);
        }
        if (numeric->parsed()) return run_numeric(na);
        std::cerr << "error: no subcommand\n";
        return kExitUsage;
    } catch (const chiv::CacheCorrupt& e) {
        std::cerr << "error: corrupt cache: " << e.what() << "\n";
        return kExitCorruptCache;
    } catch (const chiv::CapabilityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
