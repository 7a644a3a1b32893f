#include "chiv/zero_oracle.hpp"

#include "chiv/lp.hpp"

#include <fstream>

namespace chiv {

QuickVerdict quick_zero_test(const Term& t) {
    const std::size_t k = t.arity();
    if (k < 2) return QuickVerdict::Unknown;
    const int n = t.ground_size();
    for (int i = 0; i < n; ++i) {
        std::size_t e = 0;
        for (Mask m : t.sets())
            if ((m >> i) & 1u) ++e;
        if (4 * e > 3 * k) return QuickVerdict::Unknown;
    }
    return QuickVerdict::Zero;
}

ZeroLPResult lp_zero_test(const Term& t) {
    if (t.is_unit())
        throw std::invalid_argument("lp_zero_test: constant term has no factor rows");
    const int n = t.ground_size();
    const int k = static_cast<int>(t.arity());

    std::vector<std::vector<Rational>> a(k, std::vector<Rational>(n));
    for (int r = 0; r < k; ++r)
        for (int i = 0; i < n; ++i)
            a[r][i] = ((t.sets()[r] >> i) & 1u) ? 1 : -1;
    const std::vector<Rational> b(k, 1);
    const std::vector<Rational> c(n, 1);

    const SimplexResult lp = solve_min(a, b, c);
    ZeroLPResult out;
    if (lp.status == SimplexResult::Status::Infeasible) {
        out.zero = true;
        return out;
    }
    if (lp.status != SimplexResult::Status::Optimal)
        throw std::logic_error("lp_zero_test: objective is bounded below, optimum expected");
    out.feasible = true;
    out.optimum = lp.objective;
    if (lp.objective >= 2) {
        out.zero = true;
        return out;
    }

    // Build a strictly interior witness from the optimal point x*:
    // scale by 1 + e1 with e1 = (2 - opt) / (2 opt) so rows clear 1 by e1
    // while the total lands at (2 + opt)/2 < 2, then pad every coordinate
    // by d = min(e1, (2 - opt)/2) / (2n). Padding costs each row at most
    // n d <= e1/2 of its clearance and adds at most (2 - opt)/4 to the
    // total, so all three strict inequalities survive.
    const Rational opt = lp.objective;  // feasibility forces opt >= 1
    const Rational e1 = (2 - opt) / (2 * opt);
    const Rational half_gap = (2 - opt) / 2;
    const Rational d = std::min(e1, half_gap) / (2 * n);
    out.witness.assign(n, 0);
    for (int i = 0; i < n; ++i) out.witness[i] = (1 + e1) * lp.x[i] + d;

    // Exact recheck; a violation means the construction above is wrong.
    Rational total = 0;
    for (int i = 0; i < n; ++i) {
        if (out.witness[i] <= 0) throw std::logic_error("lp_zero_test: witness not positive");
        total += out.witness[i];
    }
    if (total >= 2) throw std::logic_error("lp_zero_test: witness leaves the region");
    for (int r = 0; r < k; ++r) {
        Rational row = 0;
        for (int i = 0; i < n; ++i) row += a[r][i] * out.witness[i];
        if (row <= 1) throw std::logic_error("lp_zero_test: witness misses a factor");
    }
    return out;
}

ZeroCache::ZeroCache(const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    file_ = dir / kFileName;
    std::ifstream in(file_);
    if (!in.is_open()) return;  // fresh cache
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto [term, zero] = decode(line, line_no);
        map_.insert_or_assign(term, zero);
    }
}

std::optional<bool> ZeroCache::lookup(const Term& t) const {
    std::shared_lock lock(mu_);
    auto it = map_.find(t);
    if (it == map_.end()) return std::nullopt;
    return it->second;
}

void ZeroCache::record(const Term& t, bool zero) {
    std::unique_lock lock(mu_);
    auto [it, inserted] = map_.insert_or_assign(t, zero);
    (void)it;
    if (inserted && !file_.empty()) {
        std::ofstream out(file_, std::ios::app);
        out << encode(t, zero) << '\n';
    }
}

std::size_t ZeroCache::entries() const {
    std::shared_lock lock(mu_);
    return map_.size();
}

std::size_t ZeroCache::zero_entries() const {
    std::shared_lock lock(mu_);
    std::size_t z = 0;
    for (const auto& [t, v] : map_)
        if (v) ++z;
    return z;
}

std::string ZeroCache::encode(const Term& t, bool zero) {
    std::string out = std::to_string(t.ground_size());
    out += ';';
    for (std::size_t i = 0; i < t.sets().size(); ++i) {
        if (i) out += ',';
        out += std::to_string(t.sets()[i]);
    }
    out += ';';
    out += zero ? '1' : '0';
    return out;
}

std::pair<Term, bool> ZeroCache::decode(const std::string& line, std::size_t line_no) {
    const auto fail = [&](const char* why) -> std::pair<Term, bool> {
        throw CacheCorrupt(line_no, std::string("cache line ") + std::to_string(line_no) + ": " + why);
    };
    const auto semi1 = line.find(';');
    const auto semi2 = line.rfind(';');
    if (semi1 == std::string::npos || semi2 == semi1) return fail("expected two ';' separators");

    const auto parse_u32 = [&](const std::string& s, unsigned long& v) {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) return false;
        try {
            v = std::stoul(s);
        } catch (const std::exception&) {
            return false;
        }
        return true;
    };

    unsigned long n = 0;
    if (!parse_u32(line.substr(0, semi1), n) || n < 1 || n > unsigned(kMaxGroundSize))
        return fail("bad ground size");

    std::vector<Mask> masks;
    const std::string body = line.substr(semi1 + 1, semi2 - semi1 - 1);
    if (body.empty()) return fail("empty mask list");
    std::size_t pos = 0;
    while (pos <= body.size()) {
        auto comma = body.find(',', pos);
        if (comma == std::string::npos) comma = body.size();
        unsigned long m = 0;
        if (!parse_u32(body.substr(pos, comma - pos), m) || m > Subset::mask_all(int(n)))
            return fail("bad mask");
        masks.push_back(static_cast<Mask>(m));
        pos = comma + 1;
        if (comma == body.size()) break;
    }

    const std::string verdict = line.substr(semi2 + 1);
    if (verdict != "0" && verdict != "1") return fail("bad verdict flag");

    const Term t = Term::product(static_cast<int>(n), masks);
    if (t.sets() != masks) return fail("mask list is not canonical");
    return {t, verdict == "1"};
}

bool is_zero(const Term& t, ZeroCache& cache) {
    if (t.is_unit()) return false;
    if (quick_zero_test(t) == QuickVerdict::Zero) return true;
    if (auto hit = cache.lookup(t)) return *hit;
    const bool zero = lp_zero_test(t).zero;
    cache.record(t, zero);
    return zero;
}

} // namespace chiv
